//! Renders a fixture scene to SVG: boundary, viewpoint, visibility polygon,
//! effective critical vertices, and their window segments.
//!
//! ```bash
//! cargo run --example svg_debug
//! ```

use polysight::{compute_effective, corpus, shadow_point, svg, visibility_polygon, Mode, OutputSink};

fn main() {
    let input = corpus::two_notch();
    let mut sink = OutputSink::new();
    visibility_polygon(&input, &mut sink, Mode::StrictPaper).expect("pipeline runs");
    let visibility = sink.into_points();

    let flags = compute_effective(&input, Mode::StrictPaper).unwrap();
    let markers: Vec<_> = flags
        .effective_vertex_indices(&input)
        .unwrap()
        .iter()
        .map(|&i| input.vertex(i))
        .collect();
    let mut windows = Vec::new();
    for &v in &markers {
        if let Some((s, _)) = shadow_point(input.viewpoint(), v, input.edges()).unwrap() {
            windows.push((v, s));
        }
    }

    let scene = svg::SvgScene {
        boundary: input.vertices(),
        viewpoint: input.viewpoint(),
        visibility: &visibility,
        critical_markers: &markers,
        windows: &windows,
    };
    let path = std::env::temp_dir().join("polysight_two_notch.svg");
    std::fs::write(&path, svg::render(&scene)).expect("svg written");
    println!("wrote {}", path.display());
    println!(
        "scene: {} boundary vertices, {} visible points, {} windows",
        input.len(),
        visibility.len(),
        windows.len()
    );
}

//! Walks the flag pipeline stage by stage on a polygon with three notches:
//! one fully visible, one hidden behind the left window, one behind the
//! right window. Shows which sweep clears which bits.
//!
//! ```bash
//! cargo run --example critical_vertices
//! ```

use polysight::effective::{backward_sweep, forward_sweep, merge_effective, EffectiveFlags};
use polysight::{classify_vertex, corpus, oracle, polar_of};

fn main() {
    let input = corpus::shadow_gallery();
    let q = input.viewpoint();

    println!("critical vertices about the viewpoint ({}, {}):", q.x, q.y);
    for i in 0..input.len() {
        let kind = classify_vertex(&input, i).unwrap();
        if kind.is_critical() {
            let v = input.vertex(i);
            let polar = polar_of(q, v).unwrap();
            let visible = oracle::visible_from(&input, v).unwrap();
            println!(
                "  v{i} ({}, {})  angle {:.2} deg  {:?}  visible from q: {visible}",
                v.x,
                v.y,
                polar.theta.to_degrees(),
                kind
            );
        }
    }

    let show = |flags: &EffectiveFlags, label: &str| {
        let idx = flags.effective_vertex_indices(&input).unwrap();
        println!("{label}: flagged vertices {idx:?}");
    };

    let mut flags = EffectiveFlags::all_set(&input).unwrap();
    show(&flags, "\nallocated (all bits set)");
    forward_sweep(&input, &mut flags).unwrap();
    show(&flags, "after forward sweep   ");
    backward_sweep(&input, &mut flags).unwrap();
    show(&flags, "after backward sweep  ");
    merge_effective(&input, &mut flags).unwrap();
    show(&flags, "after merge           ");

    let truth = oracle::visible_critical_indices(&input).unwrap();
    println!("oracle visible criticals: {truth:?}");
}

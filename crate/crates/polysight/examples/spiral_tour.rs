//! The spiral corridor: a single effective critical vertex guards the view
//! down the corridor, so the driver runs its one-chain path.
//!
//! ```bash
//! cargo run --example spiral_tour
//! ```

use polysight::{compute_effective, corpus, oracle, shadow_point, visibility_polygon, Mode, OutputSink};

fn main() {
    for turns in [2usize, 3] {
        let input = corpus::spiral(turns);
        let flags = compute_effective(&input, Mode::Validated).expect("flags agree with the oracle");
        let effective = flags.effective_vertex_indices(&input).unwrap();
        println!("spiral with {turns} turns: n = {}, c = {}, effective = {:?}", input.len(), flags.critical_count(), effective);

        for &i in &effective {
            let v = input.vertex(i);
            let (s, d) = shadow_point(input.viewpoint(), v, input.edges()).unwrap().unwrap();
            println!("  window from ({}, {}) to ({}, {}) at distance {:.3}", v.x, v.y, s.x, s.y, d);
        }

        let mut sink = OutputSink::new();
        visibility_polygon(&input, &mut sink, Mode::StrictPaper).unwrap();
        let expect = oracle::brute_force_visibility(&input).unwrap();
        println!(
            "  visible region has {} corners; matches oracle: {}\n",
            sink.len(),
            oracle::compare_cyclic(sink.points(), &expect, 1e-9)
        );
    }
}

//! Cross-checks the constrained engine against the quadratic oracle on a
//! batch of seeded random polygons.
//!
//! ```bash
//! cargo run --release --example oracle_check [count]
//! ```

use polysight::{corpus, oracle, visibility_polygon, Mode, OutputSink};

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);

    let mut made = 0usize;
    let mut matched = 0usize;
    let mut seed = 0u64;
    while made < count {
        let n = 4 + (seed as usize * 7) % 197;
        seed += 1;
        let Ok(input) = corpus::random_instance(n, seed) else { continue };
        made += 1;

        let mut sink = OutputSink::new();
        let stats = visibility_polygon(&input, &mut sink, Mode::StrictPaper).expect("engine runs");
        let expect = oracle::brute_force_visibility(&input).expect("oracle runs");
        if oracle::compare_cyclic(sink.points(), &expect, 1e-9) {
            matched += 1;
        } else {
            println!("MISMATCH at seed {seed} (n = {n}, c = {})", stats.c);
        }
    }
    println!("{matched}/{made} random instances match the oracle at 1e-9");
}

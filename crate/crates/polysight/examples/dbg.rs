use polysight::*;
use polysight::effective::{forward_sweep, backward_sweep, merge_effective, EffectiveFlags};

fn main() {
    // Find a small instance where the merge (not just the sweeps) must
    // resolve something, and where the final flags equal the oracle.
    let mut found = 0;
    for seed in 0..4000u64 {
        let n = 6 + (seed as usize % 20);
        let Ok(input) = corpus::random_instance(n, seed) else { continue };
        let mut flags = EffectiveFlags::all_set(&input).unwrap();
        forward_sweep(&input, &mut flags).unwrap();
        backward_sweep(&input, &mut flags).unwrap();
        let before: Vec<usize> = flags.effective_vertex_indices(&input).unwrap();
        merge_effective(&input, &mut flags).unwrap();
        let after: Vec<usize> = flags.effective_vertex_indices(&input).unwrap();
        if before != after {
            let truth = oracle::visible_critical_indices(&input).unwrap();
            let mut sorted = after.clone();
            sorted.sort_unstable();
            if sorted == truth && found < 3 {
                found += 1;
                println!("merge-resolving instance: n={n} seed={seed} before={before:?} after={after:?}");
                println!("  q = ({:?}, {:?})", input.viewpoint().x, input.viewpoint().y);
                for v in input.vertices() { println!("    Point::new({:?}, {:?}),", v.x, v.y); }
            }
        }
        if found >= 3 { break; }
    }
}

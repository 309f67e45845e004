//! Shared workload generators for the benchmarks.

use halfscan::rng::derive_rng;
use halfscan::{Color, Halfplane, LabeledPoint, Line, Side};
use rand::Rng;

/// `n` points uniform in the unit square, red with probability `red_frac`.
pub fn uniform_points(n: usize, red_frac: f64, seed: u64) -> Vec<LabeledPoint> {
    let mut rng = derive_rng(seed, "bench-points", n as u64, 0);
    (0..n)
        .map(|_| {
            let c = if rng.gen_bool(red_frac) { Color::Red } else { Color::Blue };
            LabeledPoint::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0), c)
        })
        .collect()
}

/// Halfplanes bounded by lines through the unit square.
pub fn random_queries(count: usize, seed: u64) -> Vec<Halfplane> {
    let mut rng = derive_rng(seed, "bench-queries", count as u64, 0);
    (0..count)
        .map(|_| {
            let (x, y) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            let a: f64 = rng.gen_range(-3.0..3.0);
            let side = if rng.gen_bool(0.5) { Side::Below } else { Side::Above };
            Halfplane::new(Line::new(a, y - a * x), side)
        })
        .collect()
}

use halfscan::reductions::{gen_line_covering, line_cover_exists, scan_line_covering, Ray};
use halfscan::rng::derive_rng;
use halfscan::*;
use rand::Rng as _;

#[test]
fn approx_finds_planted_halfplane() {
    let mut rng = derive_rng(21, "planted", 0, 0);
    let pts: Vec<LabeledPoint> = (0..5000)
        .map(|_| {
            let (x, y) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            let red = rng.gen_bool(if y <= 0.5 { 0.8 } else { 0.2 });
            LabeledPoint::new(x, y, if red { Color::Red } else { Color::Blue })
        })
        .collect();
    let planted = Halfplane::below(0.0, 0.5);
    let gap = mu(&pts, &planted, Color::Red).unwrap() - mu(&pts, &planted, Color::Blue).unwrap();
    assert!(gap > 0.55, "planted gap {gap}");
    let r = approx_max_halfspace(&pts, &PhiSpec::discrepancy(), 0.05, 0.1, ApproxParams::default().with_seed(3)).unwrap();
    assert!(r.value >= gap - 0.05, "approx {} vs planted {gap}", r.value);
}

/// Two Up/Down pairs sharing x: every line cuts at least one ray of each pair.
fn stacked_pairs() -> Vec<Ray> {
    vec![Ray::up(0.0, 0.0), Ray::down(0.0, 1.0), Ray::up(1.0, 0.0), Ray::down(1.0, 1.0)]
}

#[test]
fn impossible_cover_is_rejected() {
    let rays = stacked_pairs();
    assert!(!line_cover_exists(&rays, 1));
    assert!(line_cover_exists(&rays, 2));
    let inst = gen_line_covering(&rays, 1).unwrap();
    let r = scan_line_covering(&inst).unwrap();
    // A line between (0, -shift) and (0, 0) that passes under the envelope at
    // x = 1 nets exactly one red point while cutting two rays, so the scan
    // reports |R| here.
    assert!(r.value < inst.red as f64, "value {} with |R| = {}", r.value, inst.red);
    let inst = gen_line_covering(&rays, 2).unwrap();
    assert_eq!(scan_line_covering(&inst).unwrap().value, inst.red as f64);
}

#[test]
fn k_zero_is_invalid() {
    assert!(matches!(gen_line_covering(&stacked_pairs(), 0), Err(Error::InvalidK { .. })));
}

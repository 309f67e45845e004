//! Candidate halfplanes induced by a small random subset of the input.

use rand::seq::index::sample;

use super::{empty_range, full_range, SideFilter};
use crate::geom::{Halfplane, LabeledPoint, Line, Side};
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CandidateParams {
    /// The subset has `ceil(c_cand / eps)` points.
    pub c_cand: f64,
    pub filter: SideFilter,
    /// Also emit slightly shifted and rotated copies of every pair line so
    /// that ranges containing only one of the two points are represented.
    pub perturb: bool,
}

impl Default for CandidateParams {
    fn default() -> Self {
        Self { c_cand: 2.0, filter: SideFilter::Any, perturb: true }
    }
}

pub fn subset_size(n: usize, eps: f64, c_cand: f64) -> usize {
    ((c_cand / eps).ceil() as usize).clamp(1, n.max(1))
}

pub fn generate_candidates(points: &[LabeledPoint], eps: f64, rng: &mut Rng) -> Vec<Halfplane> {
    generate_candidates_with(points, eps, CandidateParams::default(), rng)
}

pub fn generate_candidates_with(
    points: &[LabeledPoint],
    eps: f64,
    params: CandidateParams,
    rng: &mut Rng,
) -> Vec<Halfplane> {
    let n = points.len();
    if n == 0 {
        return Vec::new();
    }
    let k = subset_size(n, eps, params.c_cand);
    let mut ids: Vec<usize> = if k >= n { (0..n).collect() } else { sample(rng, n, k).into_vec() };
    ids.sort_unstable();
    let x0: Vec<(f64, f64)> = ids.iter().map(|&i| (points[i].x, points[i].y)).collect();

    let extent = points.iter().fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
    let tau = 1e-6 * (1.0 + extent);
    let sigma = 1e-6f64;
    let sides: &[Side] = match params.filter {
        SideFilter::Any => &[Side::Below, Side::Above],
        SideFilter::BelowOnly => &[Side::Below],
        SideFilter::AboveOnly => &[Side::Above],
    };

    let mut out = Vec::with_capacity(k * k * if params.perturb { 7 } else { 1 } + 2 * k + 2);
    let push = |l: Option<Line>, out: &mut Vec<Halfplane>| {
        if let Some(l) = l.filter(Line::is_finite) {
            for &s in sides {
                out.push(Halfplane::new(l, s));
            }
        }
    };
    for i in 0..x0.len() {
        for j in (i + 1)..x0.len() {
            let (p, q) = (x0[i], x0[j]);
            let base = Line::through(p, q);
            push(base, &mut out);
            if !params.perturb {
                continue;
            }
            if let Some(l) = base {
                push(Some(Line::new(l.a, l.b + tau)), &mut out);
                push(Some(Line::new(l.a, l.b - tau)), &mut out);
            }
            let (dx, dy) = (q.0 - p.0, q.1 - p.1);
            for s in [sigma, -sigma] {
                let (c, sn) = (s.cos(), s.sin());
                let (rx, ry) = (dx * c - dy * sn, dx * sn + dy * c);
                push(Line::with_direction(p, rx, ry), &mut out);
                push(Line::with_direction(q, rx, ry), &mut out);
            }
        }
    }
    for &(_, y) in &x0 {
        push(Some(Line::new(0.0, y + tau)), &mut out);
        push(Some(Line::new(0.0, y - tau)), &mut out);
    }
    out.push(full_range(points, params.filter));
    out.push(empty_range(points, params.filter));
    out
}

//! Maximizing `phi(mu_r(h), mu_b(h))` over closed halfplanes.
//!
//! [`exact_max_halfspace`] is an `O(m² log m)` rotational sweep,
//! [`brute_force_scan`] the cubic oracle it is checked against, and
//! [`approx_max_halfspace`] the sampled scanner that reads fractions from two
//! [`CounterIndex`](crate::counter::CounterIndex) structures.
//!
//! Both exact scanners enumerate the same family: every subset of the input
//! cut out by a closed halfplane equals, for some pivot `p`, the points
//! strictly left of a directed line through `p` (in a direction meeting no
//! other input point) together with `p` and its duplicates. For a pivot the
//! directions fall into open angular intervals between critical directions
//! `±(q - p)`; one candidate per interval, plus the empty set.

mod approx;
mod brute;
mod candidates;
mod phi;
mod sweep;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::geom::{Color, Halfplane, LabeledPoint, Line, Side};

pub use approx::{approx_max_halfspace, ApproxParams};
pub use brute::{brute_force_scan, brute_force_scan_with, BRUTE_FORCE_LIMIT};
pub use candidates::{generate_candidates, CandidateParams};
pub use phi::{phi_eval, PhiKind, PhiShape, PhiSpec, KULLDORFF_CLAMP};
pub use sweep::{exact_max_halfspace, exact_max_halfspace_with};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanResult {
    pub best_h: Halfplane,
    pub value: f64,
    pub mu_r: f64,
    pub mu_b: f64,
    pub rounds: usize,
    pub candidates_evaluated: usize,
}

/// Which halfplanes a scan may return.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SideFilter {
    #[default]
    Any,
    BelowOnly,
    AboveOnly,
}

impl SideFilter {
    pub fn allows(self, side: Side) -> bool {
        match self {
            SideFilter::Any => true,
            SideFilter::BelowOnly => side == Side::Below,
            SideFilter::AboveOnly => side == Side::Above,
        }
    }
}

/// Color masses of a dataset.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Totals {
    pub red: f64,
    pub blue: f64,
}

impl Totals {
    pub fn of(points: &[LabeledPoint], spec: &PhiSpec) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut t = Totals { red: 0.0, blue: 0.0 };
        let mut seen = [false; 2];
        for p in points {
            if !p.is_finite() {
                return Err(Error::InvalidParams(format!("non-finite point {p:?}")));
            }
            match p.color {
                Color::Red => {
                    t.red += p.weight;
                    seen[0] = true;
                }
                Color::Blue => {
                    t.blue += p.weight;
                    seen[1] = true;
                }
            }
        }
        if !seen[0] || t.red == 0.0 {
            return Err(Error::EmptyColorClass(Color::Red));
        }
        if spec.needs_both_colors() && (!seen[1] || t.blue == 0.0) {
            return Err(Error::EmptyColorClass(Color::Blue));
        }
        Ok(t)
    }

    pub fn mu(&self, red_in: f64, blue_in: f64) -> (f64, f64) {
        let b = if self.blue == 0.0 { 0.0 } else { blue_in / self.blue };
        (red_in / self.red, b)
    }
}

/// Exact fractions of `h` and the resulting score.
pub(crate) fn evaluate_exact(points: &[LabeledPoint], totals: &Totals, spec: &PhiSpec, h: &Halfplane) -> Result<(f64, f64, f64)> {
    let (mut r, mut b) = (0.0, 0.0);
    for p in points.iter().filter(|p| h.contains(p.x, p.y)) {
        match p.color {
            Color::Red => r += p.weight,
            Color::Blue => b += p.weight,
        }
    }
    let (mu_r, mu_b) = totals.mu(r, b);
    Ok((spec.eval(mu_r, mu_b)?, mu_r, mu_b))
}

#[inline]
pub(crate) fn cross2(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

/// Open angular interval of directions, counter-clockwise from `from` to `to`;
/// `to = None` is the full circle minus `from`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Wedge {
    pub from: (f64, f64),
    pub to: Option<(f64, f64)>,
}

impl Wedge {
    fn span(&self) -> (f64, f64) {
        let start = self.from.1.atan2(self.from.0);
        let gap = match self.to {
            None => TAU,
            Some(to) => {
                let g = cross2(self.from, to).atan2(self.from.0 * to.0 + self.from.1 * to.1);
                if g <= 0.0 {
                    g + TAU
                } else {
                    g
                }
            }
        };
        (start, gap)
    }

    /// A direction inside the wedge whose halfplane side passes the filter,
    /// as an angle; `None` when the filter excludes the whole wedge.
    pub fn pick(&self, filter: SideFilter) -> Option<f64> {
        let (start, gap) = self.span();
        let (lo, hi) = (start, start + gap);
        // left of a direction with dx < 0 is the Below side
        let centers: &[f64] = match filter {
            SideFilter::Any => &[0.0, PI],
            SideFilter::BelowOnly => &[PI],
            SideFilter::AboveOnly => &[0.0],
        };
        let mut best: Option<(f64, f64)> = None;
        for &c in centers {
            for k in -2..=2 {
                let shift = c + TAU * k as f64;
                let a = lo.max(shift - FRAC_PI_2);
                let b = hi.min(shift + FRAC_PI_2);
                let len = b - a;
                if len > 1e-9 && best.is_none_or(|(l, _)| len > l) {
                    best = Some((len, 0.5 * (a + b)));
                }
            }
        }
        best.map(|(_, mid)| mid)
    }
}

/// Closed halfplane realizing "strictly left of direction `theta` through
/// `points[pivot]`, plus the pivot", with the boundary pushed halfway to the
/// nearest excluded point.
pub(crate) fn realize(points: &[LabeledPoint], pivot: usize, theta: f64) -> Halfplane {
    let (dx, dy) = (theta.cos(), theta.sin());
    let p = &points[pivot];
    let s = |q: &LabeledPoint| dx * (q.y - p.y) - dy * (q.x - p.x);
    let mut s_out = f64::NEG_INFINITY;
    let mut s_min = 0.0f64;
    for q in points {
        let v = s(q);
        if v < 0.0 {
            s_out = s_out.max(v);
        }
        s_min = s_min.min(v);
    }
    let c = if s_out.is_finite() { 0.5 * s_out } else { s_min - 1.0 };
    // dx·(y - py) - dy·(x - px) >= c
    let a = dy / dx;
    let b = p.y - a * p.x + c / dx;
    let side = if dx > 0.0 { Side::Above } else { Side::Below };
    Halfplane::new(Line::new(a, b), side)
}

/// A halfplane containing no input point.
pub(crate) fn empty_range(points: &[LabeledPoint], filter: SideFilter) -> Halfplane {
    let lo = points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    match filter {
        SideFilter::AboveOnly => Halfplane::above(0.0, hi + 1.0),
        _ => Halfplane::below(0.0, lo - 1.0),
    }
}

/// A halfplane containing every input point.
pub(crate) fn full_range(points: &[LabeledPoint], filter: SideFilter) -> Halfplane {
    let lo = points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    match filter {
        SideFilter::AboveOnly => Halfplane::above(0.0, lo - 1.0),
        _ => Halfplane::below(0.0, hi + 1.0),
    }
}

/// Best candidate found by an exact scanner.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Best {
    pub value: f64,
    pub ordinal: u64,
    /// `None` for the empty range.
    pub at: Option<(usize, f64)>,
}

impl Best {
    pub fn better(self, other: Best) -> Best {
        if other.value > self.value || (other.value == self.value && other.ordinal < self.ordinal) {
            other
        } else {
            self
        }
    }
}

/// Turns the winning candidate into a [`ScanResult`] with recounted fractions.
pub(crate) fn finish(
    points: &[LabeledPoint],
    totals: &Totals,
    spec: &PhiSpec,
    filter: SideFilter,
    best: Best,
    evaluated: usize,
) -> Result<ScanResult> {
    let h = match best.at {
        Some((pivot, theta)) => realize(points, pivot, theta),
        None => empty_range(points, filter),
    };
    let (value, mu_r, mu_b) = evaluate_exact(points, totals, spec, &h)?;
    Ok(ScanResult { best_h: h, value, mu_r, mu_b, rounds: 1, candidates_evaluated: evaluated })
}

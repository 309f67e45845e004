//! Cubic oracle: one full counting pass per pivot and critical direction.

use rayon::prelude::*;

use super::{cross2, finish, Best, PhiSpec, ScanResult, SideFilter, Totals, Wedge};
use crate::error::{Error, Result};
use crate::geom::{Color, LabeledPoint};

pub const BRUTE_FORCE_LIMIT: usize = 500;

pub fn brute_force_scan(points: &[LabeledPoint], spec: &PhiSpec) -> Result<ScanResult> {
    brute_force_scan_with(points, spec, SideFilter::Any)
}

pub fn brute_force_scan_with(points: &[LabeledPoint], spec: &PhiSpec, filter: SideFilter) -> Result<ScanResult> {
    let m = points.len();
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLargeForOracle { size: m, limit: BRUTE_FORCE_LIMIT });
    }
    let totals = Totals::of(points, spec)?;
    let (mu_r, mu_b) = totals.mu(0.0, 0.0);
    let empty = Best { value: spec.eval(mu_r, mu_b)?, ordinal: 0, at: None };

    let per_pivot: Vec<Result<(Best, usize)>> =
        (0..m).into_par_iter().map(|i| pivot(points, &totals, spec, filter, i)).collect();
    let mut best = empty;
    let mut evaluated = 1;
    for r in per_pivot {
        let (b, n) = r?;
        best = best.better(b);
        evaluated += n;
    }
    finish(points, &totals, spec, filter, best, evaluated)
}

fn pivot(points: &[LabeledPoint], totals: &Totals, spec: &PhiSpec, filter: SideFilter, i: usize) -> Result<(Best, usize)> {
    let p = &points[i];
    let m = points.len();
    let rel = |q: &LabeledPoint| (q.x - p.x, q.y - p.y);
    let mut best: Option<Best> = None;
    let mut evaluated = 0;
    let mut consider = |wedge: Wedge, set: &dyn Fn(&LabeledPoint) -> bool, ordinal: u64| -> Result<()> {
        let Some(theta) = wedge.pick(filter) else { return Ok(()) };
        evaluated += 1;
        let (mut r, mut b) = (0.0, 0.0);
        for q in points.iter().filter(|q| set(q)) {
            match q.color {
                Color::Red => r += q.weight,
                Color::Blue => b += q.weight,
            }
        }
        let (mu_r, mu_b) = totals.mu(r, b);
        let cand = Best { value: spec.eval(mu_r, mu_b)?, ordinal, at: Some((i, theta)) };
        best = Some(match best {
            None => cand,
            Some(b) => b.better(cand),
        });
        Ok(())
    };

    let ordinal_base = 1 + (i as u64) * (2 * m as u64 + 1);
    if points.iter().all(|q| rel(q) == (0.0, 0.0)) {
        consider(Wedge { from: (1.0, 0.0), to: None }, &|_| true, ordinal_base)?;
    }
    for (j, q) in points.iter().enumerate() {
        let v = rel(q);
        if v == (0.0, 0.0) {
            continue;
        }
        for (s, dir) in [v, (-v.0, -v.1)].into_iter().enumerate() {
            // next critical direction counter-clockwise from `dir`
            let mut next: Option<((f64, f64), f64)> = None;
            for o in points {
                let w = rel(o);
                if w == (0.0, 0.0) {
                    continue;
                }
                for cand in [w, (-w.0, -w.1)] {
                    let c = cross2(dir, cand);
                    let d = dir.0 * cand.0 + dir.1 * cand.1;
                    if c == 0.0 && d > 0.0 {
                        continue;
                    }
                    let mut ang = c.atan2(d);
                    if ang <= 0.0 {
                        ang += std::f64::consts::TAU;
                    }
                    if next.is_none_or(|(_, a)| ang < a) {
                        next = Some((cand, ang));
                    }
                }
            }
            let wedge = Wedge { from: dir, to: next.map(|(w, _)| w) };
            // left after an infinitesimal counter-clockwise turn past `dir`
            let inside = |o: &LabeledPoint| {
                let w = rel(o);
                let c = cross2(dir, w);
                c > 0.0 || (c == 0.0 && dir.0 * w.0 + dir.1 * w.1 <= 0.0)
            };
            consider(wedge, &inside, ordinal_base + 1 + 2 * j as u64 + s as u64)?;
        }
    }
    let b = best.unwrap_or(Best { value: f64::NEG_INFINITY, ordinal: u64::MAX, at: None });
    Ok((b, evaluated))
}

//! Rotational sweep over every closed-halfplane range.

use rayon::prelude::*;

use super::{cross2, finish, Best, PhiSpec, ScanResult, SideFilter, Totals, Wedge};
use crate::error::Result;
use crate::geom::{Color, LabeledPoint};

pub fn exact_max_halfspace(points: &[LabeledPoint], spec: &PhiSpec) -> Result<ScanResult> {
    exact_max_halfspace_with(points, spec, SideFilter::Any)
}

pub fn exact_max_halfspace_with(points: &[LabeledPoint], spec: &PhiSpec, filter: SideFilter) -> Result<ScanResult> {
    let totals = Totals::of(points, spec)?;
    let m = points.len();
    let (mu_r, mu_b) = totals.mu(0.0, 0.0);
    let empty = Best { value: spec.eval(mu_r, mu_b)?, ordinal: 0, at: None };

    let per_pivot: Vec<Result<(Best, usize)>> =
        (0..m).into_par_iter().map(|i| sweep_pivot(points, &totals, spec, filter, i)).collect();
    let mut best = empty;
    let mut evaluated = 1;
    for r in per_pivot {
        let (b, n) = r?;
        best = best.better(b);
        evaluated += n;
    }
    finish(points, &totals, spec, filter, best, evaluated)
}

#[inline]
fn upper_half(v: (f64, f64)) -> bool {
    v.1 > 0.0 || (v.1 == 0.0 && v.0 > 0.0)
}

fn angle_key(v: (f64, f64)) -> f64 {
    let a = v.1.atan2(v.0);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

struct Event {
    dir: (f64, f64),
    key: f64,
    red: f64,
    blue: f64,
    enter: bool,
}

fn sweep_pivot(
    points: &[LabeledPoint],
    totals: &Totals,
    spec: &PhiSpec,
    filter: SideFilter,
    i: usize,
) -> Result<(Best, usize)> {
    let p = &points[i];
    let m = points.len();
    let mut base = (0.0, 0.0);
    let mut left = (0.0, 0.0);
    let mut events = Vec::with_capacity(2 * m);
    for q in points {
        let (w_r, w_b) = match q.color {
            Color::Red => (q.weight, 0.0),
            Color::Blue => (0.0, q.weight),
        };
        let v = (q.x - p.x, q.y - p.y);
        if v == (0.0, 0.0) {
            base.0 += w_r;
            base.1 += w_b;
            continue;
        }
        // starting direction is just clockwise of +x
        if upper_half(v) {
            left.0 += w_r;
            left.1 += w_b;
        }
        events.push(Event { dir: v, key: angle_key(v), red: w_r, blue: w_b, enter: false });
        let back = (-v.0, -v.1);
        events.push(Event { dir: back, key: angle_key(back), red: w_r, blue: w_b, enter: true });
    }
    let ordinal_base = 1 + (i as u64) * (2 * m as u64 + 1);

    if events.is_empty() {
        let (mu_r, mu_b) = totals.mu(base.0, base.1);
        let wedge = Wedge { from: (1.0, 0.0), to: None };
        let theta = wedge.pick(filter).expect("full circle passes any filter");
        let b = Best { value: spec.eval(mu_r, mu_b)?, ordinal: ordinal_base, at: Some((i, theta)) };
        return Ok((b, 1));
    }

    events.sort_by(|a, b| a.key.total_cmp(&b.key));
    // groups of equal direction
    let mut starts = vec![0usize];
    for k in 1..events.len() {
        let (a, b) = (events[k - 1].dir, events[k].dir);
        if !(upper_half(a) == upper_half(b) && cross2(a, b) == 0.0) {
            starts.push(k);
        }
    }
    let groups = starts.len();
    let mut best: Option<Best> = None;
    let mut evaluated = 0;
    for g in 0..groups {
        let end = if g + 1 < groups { starts[g + 1] } else { events.len() };
        for e in &events[starts[g]..end] {
            let s = if e.enter { 1.0 } else { -1.0 };
            left.0 += s * e.red;
            left.1 += s * e.blue;
        }
        let next = events[starts[(g + 1) % groups]].dir;
        let wedge = Wedge { from: events[starts[g]].dir, to: if groups == 1 { None } else { Some(next) } };
        let Some(theta) = wedge.pick(filter) else { continue };
        evaluated += 1;
        let (mu_r, mu_b) = totals.mu(left.0 + base.0, left.1 + base.1);
        let cand = Best { value: spec.eval(mu_r, mu_b)?, ordinal: ordinal_base + g as u64, at: Some((i, theta)) };
        best = Some(match best {
            None => cand,
            Some(b) => b.better(cand),
        });
    }
    let b = best.unwrap_or(Best { value: f64::NEG_INFINITY, ordinal: u64::MAX, at: None });
    Ok((b, evaluated))
}

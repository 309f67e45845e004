//! Sampled 1/t-cuttings of a line set restricted to a vertical trapezoid.
//!
//! A random subset of the lines is drawn, the vertical decomposition of its
//! arrangement inside the parent cell is computed with a left-to-right sweep,
//! and every input line is classified against every resulting trapezoid. A
//! draw whose largest conflict list exceeds `ceil(m / t)` is rejected and
//! redrawn, so a returned cutting always satisfies the bound.
//!
//! A line conflicts with a cell when it meets the cell's interior. Lines that
//! only touch the boundary count as below or above.

use std::collections::HashMap;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::geom::Line;
use crate::rng::Rng;

/// Vertical trapezoid `x_lo <= x <= x_hi`, `bottom(x) <= y <= top(x)`.
/// Infinite x bounds and missing top/bottom lines describe unbounded cells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapCell {
    pub x_lo: f64,
    pub x_hi: f64,
    pub bottom: Option<Line>,
    pub top: Option<Line>,
}

impl TrapCell {
    /// The whole plane.
    pub const fn plane() -> Self {
        Self { x_lo: f64::NEG_INFINITY, x_hi: f64::INFINITY, bottom: None, top: None }
    }

    /// Closed containment.
    #[inline]
    pub fn contains(&self, x: f64, y: f64) -> bool {
        if x < self.x_lo || x > self.x_hi {
            return false;
        }
        if let Some(b) = self.bottom {
            if y < b.eval(x) {
                return false;
            }
        }
        if let Some(t) = self.top {
            if y > t.eval(x) {
                return false;
            }
        }
        true
    }

    /// Corners with finite coordinates.
    pub fn corners(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(4);
        for x in [self.x_lo, self.x_hi] {
            if !x.is_finite() {
                continue;
            }
            for l in [self.bottom, self.top].into_iter().flatten() {
                out.push((x, l.eval(x)));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineClass {
    Crosses,
    Below,
    Above,
}

/// Range of the linear function `d` over `[x_lo, x_hi]`, with infinities.
#[inline]
fn linear_range(d: Line, x_lo: f64, x_hi: f64) -> (f64, f64) {
    let at = |x: f64| -> f64 {
        if x.is_finite() {
            d.eval(x)
        } else if d.a == 0.0 {
            d.b
        } else if (d.a > 0.0) == (x > 0.0) {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    };
    let (u, v) = (at(x_lo), at(x_hi));
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Rounding slack for comparing `ln` with a boundary line over `[x_lo, x_hi]`.
fn slack(ln: &Line, other: &Line, x_lo: f64, x_hi: f64) -> f64 {
    let mut mag = ln.b.abs() + other.b.abs();
    for x in [x_lo, x_hi] {
        if x.is_finite() {
            mag = mag.max(ln.b.abs() + other.b.abs() + (ln.a.abs() + other.a.abs()) * x.abs());
        }
    }
    1e-12 * (1.0 + mag)
}

/// Position of `ln` relative to the cell.
///
/// Comparisons carry a small relative slack so that a line meeting a cell
/// only at a computed vertex is not reported as crossing it.
pub fn classify_line(cell: &TrapCell, ln: &Line) -> LineClass {
    if let Some(b) = cell.bottom {
        let (_, hi) = linear_range(Line::new(ln.a - b.a, ln.b - b.b), cell.x_lo, cell.x_hi);
        if hi <= slack(ln, &b, cell.x_lo, cell.x_hi) {
            return LineClass::Below;
        }
    }
    if let Some(t) = cell.top {
        let (lo, _) = linear_range(Line::new(ln.a - t.a, ln.b - t.b), cell.x_lo, cell.x_hi);
        if lo >= -slack(ln, &t, cell.x_lo, cell.x_hi) {
            return LineClass::Above;
        }
    }
    LineClass::Crosses
}

/// Cells of a cutting with per-cell conflict lists (positions in the input
/// line slice) and counts of input lines lying below each cell.
#[derive(Clone, Debug, Default)]
pub struct Cutting {
    pub cells: Vec<TrapCell>,
    pub conflicts: Vec<Vec<usize>>,
    pub below: Vec<usize>,
    /// Number of sampling rounds used, including the accepted one.
    pub attempts: usize,
}

impl Cutting {
    /// Positions of input lines lying entirely below cell `idx`.
    pub fn below_lines(&self, idx: usize, lines: &[Line]) -> Vec<usize> {
        let cell = &self.cells[idx];
        (0..lines.len())
            .filter(|&i| classify_line(cell, &lines[i]) == LineClass::Below)
            .collect()
    }

    pub fn max_conflict(&self) -> usize {
        self.conflicts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// First cell containing the point.
    pub fn locate(&self, x: f64, y: f64) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(x, y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuttingParams {
    /// Sample-size constant: `c_net · t · ln(t·m + 2)` lines are drawn.
    pub c_net: f64,
    pub max_attempts: usize,
}

impl Default for CuttingParams {
    fn default() -> Self {
        Self { c_net: 1.0, max_attempts: 16 }
    }
}

/// Conflict-list bound `ceil(m / t)`.
pub fn conflict_bound(m: usize, t: f64) -> usize {
    let q = m as f64 / t;
    let c = q.ceil();
    // m/t that is integral up to rounding must not round up
    if (q - q.round()).abs() < 1e-9 {
        q.round() as usize
    } else {
        c as usize
    }
}

pub fn build_cutting(parent: &TrapCell, lines: &[Line], t: f64, rng: &mut Rng) -> Result<Cutting> {
    build_cutting_with(parent, lines, t, CuttingParams::default(), rng)
}

pub fn build_cutting_with(
    parent: &TrapCell,
    lines: &[Line],
    t: f64,
    params: CuttingParams,
    rng: &mut Rng,
) -> Result<Cutting> {
    if !(t >= 1.0) {
        return Err(Error::InvalidParams(format!("cutting parameter t = {t} < 1")));
    }
    let m = lines.len();
    if t == 1.0 || m == 0 {
        return Ok(Cutting {
            cells: vec![*parent],
            conflicts: vec![(0..m).collect()],
            below: vec![0],
            attempts: 1,
        });
    }

    let bound = conflict_bound(m, t);
    let (distinct, multiplicity) = dedup_lines(lines);
    let mut size = (params.c_net * t * (t * m as f64 + 2.0).ln()).ceil().max(1.0) as usize;
    let mut worst = 0;
    for attempt in 1..=params.max_attempts {
        let sample = draw_sample(&distinct, size, rng);
        let cells = trapezoids(parent, &sample);
        let (conflicts, below) = classify_all(&cells, &distinct, &multiplicity);
        let max_conflict = conflicts.iter().map(Vec::len).max().unwrap_or(0);
        if max_conflict <= bound {
            return Ok(Cutting { cells, conflicts, below, attempts: attempt });
        }
        worst = max_conflict;
        // a rejected draw was too sparse; grow the next one
        size = size.saturating_mul(2);
    }
    Err(Error::CuttingFailed { attempts: params.max_attempts, worst, bound })
}

/// Distinct lines, and for each one the input positions carrying it.
fn dedup_lines(lines: &[Line]) -> (Vec<Line>, Vec<Vec<usize>>) {
    let mut index: HashMap<(u64, u64), usize> = HashMap::with_capacity(lines.len());
    let mut distinct = Vec::new();
    let mut mult: Vec<Vec<usize>> = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let key = (l.a.to_bits(), l.b.to_bits());
        let slot = *index.entry(key).or_insert_with(|| {
            distinct.push(*l);
            mult.push(Vec::new());
            distinct.len() - 1
        });
        mult[slot].push(i);
    }
    (distinct, mult)
}

fn draw_sample(distinct: &[Line], size: usize, rng: &mut Rng) -> Vec<Line> {
    if size >= distinct.len() {
        return distinct.to_vec();
    }
    let mut picked = vec![false; distinct.len()];
    for _ in 0..size {
        picked[rng.gen_range(0..distinct.len())] = true;
    }
    distinct.iter().zip(picked).filter(|(_, p)| *p).map(|(l, _)| *l).collect()
}

fn classify_all(
    cells: &[TrapCell],
    distinct: &[Line],
    multiplicity: &[Vec<usize>],
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut conflicts = Vec::with_capacity(cells.len());
    let mut below = Vec::with_capacity(cells.len());
    for cell in cells {
        let mut cross = Vec::new();
        let mut under = 0usize;
        for (d, l) in distinct.iter().enumerate() {
            match classify_line(cell, l) {
                LineClass::Crosses => cross.extend_from_slice(&multiplicity[d]),
                LineClass::Below => under += multiplicity[d].len(),
                LineClass::Above => {}
            }
        }
        cross.sort_unstable();
        conflicts.push(cross);
        below.push(under);
    }
    (conflicts, below)
}

/// Sort key of a line far to the left (`dir < 0`) or far to the right.
fn order_at_infinity(l: &Line, m: &Line, dir: f64) -> std::cmp::Ordering {
    // at +inf the smaller slope is lower; at -inf the larger slope is lower
    let by_slope = if dir > 0.0 { l.a.total_cmp(&m.a) } else { m.a.total_cmp(&l.a) };
    by_slope.then(l.b.total_cmp(&m.b))
}

const NONE: u32 = u32::MAX;

/// Vertical decomposition of the arrangement of `sample` inside `parent`.
fn trapezoids(parent: &TrapCell, sample: &[Line]) -> Vec<TrapCell> {
    // arrangement = sample lines plus the parent's boundary lines
    let mut lines: Vec<Line> = Vec::with_capacity(sample.len() + 2);
    let mut bottom_id = NONE;
    let mut top_id = NONE;
    if let Some(b) = parent.bottom {
        bottom_id = lines.len() as u32;
        lines.push(b);
    }
    if let Some(t) = parent.top {
        if Some(t) == parent.bottom {
            top_id = bottom_id;
        } else {
            top_id = lines.len() as u32;
            lines.push(t);
        }
    }
    for l in sample {
        if Some(*l) != parent.bottom && Some(*l) != parent.top {
            lines.push(*l);
        }
    }
    let n = lines.len();

    // crossing events strictly inside the x range
    let mut events: Vec<(f64, u32, u32)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(x) = lines[i].intersect_x(&lines[j]) {
                if x > parent.x_lo && x < parent.x_hi && x.is_finite() {
                    events.push((x, i as u32, j as u32));
                }
            }
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));

    // group near-coincident crossings into one event x
    let mut groups: Vec<(f64, Vec<u32>)> = Vec::new();
    for &(x, i, j) in &events {
        let merge = match groups.last() {
            Some((gx, _)) => x - *gx <= 1e-12 * gx.abs().max(1.0),
            None => false,
        };
        if !merge {
            groups.push((x, Vec::new()));
        }
        let g = &mut groups.last_mut().unwrap().1;
        g.push(i);
        g.push(j);
    }
    for g in &mut groups {
        g.1.sort_unstable();
        g.1.dedup();
    }

    let mut bounds: Vec<f64> = Vec::with_capacity(groups.len() + 2);
    bounds.push(parent.x_lo);
    bounds.extend(groups.iter().map(|g| g.0));
    bounds.push(parent.x_hi);

    let mut cells = Vec::new();
    // open trapezoids: (lower, upper) -> (start x, inside parent)
    let mut open: HashMap<(u32, u32), (f64, bool)> = HashMap::new();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut pos = vec![0usize; n];
    for s in 0..bounds.len() - 1 {
        let (lo, hi) = (bounds[s], bounds[s + 1]);
        if !(lo < hi) {
            continue;
        }
        if lo == f64::NEG_INFINITY {
            order.sort_by(|&i, &j| order_at_infinity(&lines[i as usize], &lines[j as usize], -1.0));
        } else if hi == f64::INFINITY {
            order.sort_by(|&i, &j| order_at_infinity(&lines[i as usize], &lines[j as usize], 1.0));
        } else {
            let mid = 0.5 * (lo + hi);
            order.sort_by(|&i, &j| {
                let (li, lj) = (&lines[i as usize], &lines[j as usize]);
                li.eval(mid).total_cmp(&lj.eval(mid)).then(li.a.total_cmp(&lj.a))
            });
        }
        for (k, &id) in order.iter().enumerate() {
            pos[id as usize] = k;
        }
        let touched: &[u32] = if s == 0 { &[] } else { &groups[s - 1].1 };
        let is_touched = |id: u32| id != NONE && touched.binary_search(&id).is_ok();

        let mut next: HashMap<(u32, u32), (f64, bool)> = HashMap::with_capacity(n + 1);
        for g in 0..=n {
            let lower = if g == 0 { NONE } else { order[g - 1] };
            let upper = if g == n { NONE } else { order[g] };
            let key = (lower, upper);
            let carried = if is_touched(lower) || is_touched(upper) { None } else { open.remove(&key) };
            let entry = match carried {
                Some(e) => e,
                None => {
                    let above_bottom = bottom_id == NONE || (lower != NONE && pos[lower as usize] >= pos[bottom_id as usize]);
                    let below_top = top_id == NONE || (upper != NONE && pos[upper as usize] <= pos[top_id as usize]);
                    (lo, above_bottom && below_top)
                }
            };
            next.insert(key, entry);
        }
        // whatever was not carried over ends at this slab's left edge
        flush(&mut cells, open.drain(), lo, &lines);
        open = next;
    }
    flush(&mut cells, open.drain(), parent.x_hi, &lines);
    cells.sort_by(|a, b| {
        a.x_lo
            .total_cmp(&b.x_lo)
            .then_with(|| key_y(a).total_cmp(&key_y(b)))
    });
    cells
}

fn key_y(c: &TrapCell) -> f64 {
    // representative height used only to make the cell order deterministic
    let x = if c.x_lo.is_finite() {
        if c.x_hi.is_finite() {
            0.5 * (c.x_lo + c.x_hi)
        } else {
            c.x_lo + 1.0
        }
    } else if c.x_hi.is_finite() {
        c.x_hi - 1.0
    } else {
        0.0
    };
    match (c.bottom, c.top) {
        (Some(b), _) => b.eval(x),
        (None, Some(t)) => t.eval(x) - 1.0,
        (None, None) => f64::NEG_INFINITY,
    }
}

fn flush(
    cells: &mut Vec<TrapCell>,
    done: impl Iterator<Item = ((u32, u32), (f64, bool))>,
    end: f64,
    lines: &[Line],
) {
    let mut batch: Vec<TrapCell> = done
        .filter(|(_, (start, inside))| *inside && *start < end)
        .map(|((lower, upper), (start, _))| TrapCell {
            x_lo: start,
            x_hi: end,
            bottom: (lower != NONE).then(|| lines[lower as usize]),
            top: (upper != NONE).then(|| lines[upper as usize]),
        })
        .collect();
    cells.append(&mut batch);
}

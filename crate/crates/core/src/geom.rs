//! Planar primitives: labeled points, non-vertical lines, closed halfplanes,
//! point/line duality and lower envelopes.
//!
//! Duality convention. A line `y = a·x + b` maps to the dual point `(a, -b)`
//! and a point `(u, v)` maps to the dual line `y = u·x - v`. The map reverses
//! the above/below relation:
//!
//! ```text
//! p on or below ℓ   <=>   dual(ℓ) on or below dual(p)
//! ```
//!
//! Every structure in this crate that works in the dual plane relies on that
//! single statement.

use crate::error::{Error, Result};

/// Absolute tolerance for boundary predicates.
pub const EPS_GEOM: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// A planar point with a color class and a weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabeledPoint {
    pub x: f64,
    pub y: f64,
    pub color: Color,
    pub weight: f64,
}

impl LabeledPoint {
    pub fn new(x: f64, y: f64, color: Color) -> Self {
        Self { x, y, color, weight: 1.0 }
    }

    pub fn red(x: f64, y: f64) -> Self {
        Self::new(x, y, Color::Red)
    }

    pub fn blue(x: f64, y: f64) -> Self {
        Self::new(x, y, Color::Blue)
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.weight.is_finite()
    }
}

/// The non-vertical line `y = a·x + b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub a: f64,
    pub b: f64,
}

impl Line {
    pub const fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    /// Line through two points; `None` when they share an x coordinate.
    pub fn through(p: (f64, f64), q: (f64, f64)) -> Option<Self> {
        let dx = q.0 - p.0;
        if dx == 0.0 {
            return None;
        }
        let a = (q.1 - p.1) / dx;
        if !a.is_finite() {
            return None;
        }
        Some(Self { a, b: p.1 - a * p.0 })
    }

    /// Line through `p` with direction `(dx, dy)`; `None` for vertical directions.
    pub fn with_direction(p: (f64, f64), dx: f64, dy: f64) -> Option<Self> {
        if dx == 0.0 {
            return None;
        }
        let a = dy / dx;
        if !a.is_finite() {
            return None;
        }
        Some(Self { a, b: p.1 - a * p.0 })
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.a * x + self.b
    }

    /// x coordinate of the crossing with `other`, if the slopes differ.
    pub fn intersect_x(&self, other: &Line) -> Option<f64> {
        let da = self.a - other.a;
        if da == 0.0 {
            return None;
        }
        Some((other.b - self.b) / da)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Below,
    Above,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        }
    }
}

/// Closed halfplane bounded by a non-vertical line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfplane {
    pub line: Line,
    pub side: Side,
}

impl Halfplane {
    pub const fn new(line: Line, side: Side) -> Self {
        Self { line, side }
    }

    pub const fn below(a: f64, b: f64) -> Self {
        Self { line: Line::new(a, b), side: Side::Below }
    }

    pub const fn above(a: f64, b: f64) -> Self {
        Self { line: Line::new(a, b), side: Side::Above }
    }

    #[inline]
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let ly = self.line.eval(x);
        match self.side {
            Side::Below => y <= ly + EPS_GEOM,
            Side::Above => y >= ly - EPS_GEOM,
        }
    }

    /// The same boundary with the opposite side.
    pub fn complement_side(&self) -> Self {
        Self { line: self.line, side: self.side.flip() }
    }
}

/// Range membership with the closed-boundary convention.
#[inline]
pub fn point_below(p: &LabeledPoint, h: &Halfplane) -> bool {
    h.contains(p.x, p.y)
}

/// A point of the dual plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualPoint {
    pub u: f64,
    pub v: f64,
}

/// A line carrying a (possibly negative) weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedLine {
    pub line: Line,
    pub weight: f64,
}

impl WeightedLine {
    pub fn new(a: f64, b: f64, weight: f64) -> Self {
        Self { line: Line::new(a, b), weight }
    }
}

/// Point/line duality.
pub trait ToDual {
    type Output;
    fn to_dual(&self) -> Self::Output;
}

impl ToDual for Line {
    type Output = DualPoint;
    fn to_dual(&self) -> DualPoint {
        DualPoint { u: self.a, v: -self.b }
    }
}

impl ToDual for DualPoint {
    type Output = Line;
    fn to_dual(&self) -> Line {
        Line::new(self.u, -self.v)
    }
}

impl ToDual for LabeledPoint {
    type Output = Line;
    fn to_dual(&self) -> Line {
        Line::new(self.x, -self.y)
    }
}

/// Sum of weights of `color` points, or `EmptyColorClass` when there are none.
pub fn color_mass(points: &[LabeledPoint], color: Color) -> Result<f64> {
    let mut any = false;
    let mut total = 0.0;
    for p in points.iter().filter(|p| p.color == color) {
        any = true;
        total += p.weight;
    }
    if !any || total == 0.0 {
        return Err(Error::EmptyColorClass(color));
    }
    Ok(total)
}

/// Exact weighted fraction of the `color` class lying in `h`.
pub fn mu(points: &[LabeledPoint], h: &Halfplane, color: Color) -> Result<f64> {
    let total = color_mass(points, color)?;
    let inside: f64 = points
        .iter()
        .filter(|p| p.color == color && point_below(p, h))
        .map(|p| p.weight)
        .sum();
    Ok(inside / total)
}

#[inline]
pub(crate) fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Lower convex chain of a point set, sorted by x.
///
/// Collinear interior vertices are dropped, so consecutive edges turn strictly
/// counter-clockwise. For points sharing an x coordinate only the lowest is a
/// candidate vertex.
pub fn lower_envelope(pts: &[LabeledPoint]) -> Vec<(f64, f64)> {
    let xy: Vec<(f64, f64)> = pts.iter().map(|p| (p.x, p.y)).collect();
    lower_envelope_xy(&xy)
}

pub fn lower_envelope_xy(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| {
        pts[i]
            .0
            .total_cmp(&pts[j].0)
            .then(pts[i].1.total_cmp(&pts[j].1))
            .then(i.cmp(&j))
    });
    let mut chain: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &i in &order {
        let p = pts[i];
        if let Some(last) = chain.last() {
            if last.0 == p.0 {
                // same x, p is not lower
                continue;
            }
        }
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0.0 {
            chain.pop();
        }
        chain.push(p);
    }
    chain
}

/// Height of a lower chain at `x`; `None` outside its x extent.
pub fn envelope_at(chain: &[(f64, f64)], x: f64) -> Option<f64> {
    let first = chain.first()?;
    let last = chain.last()?;
    if x < first.0 || x > last.0 {
        return None;
    }
    if chain.len() == 1 {
        return Some(first.1);
    }
    let k = chain.partition_point(|v| v.0 < x);
    if k < chain.len() && chain[k].0 == x {
        return Some(chain[k].1);
    }
    let (p, q) = (chain[k - 1], chain[k]);
    let t = (x - p.0) / (q.0 - p.0);
    Some(p.1 + t * (q.1 - p.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_below_examples() {
        let h = Halfplane::below(1.0, 1.0);
        assert!(point_below(&LabeledPoint::red(0.0, 0.0), &h));
        assert!(!point_below(&LabeledPoint::red(0.0, 2.0), &h));
        assert!(point_below(&LabeledPoint::red(1.0, 2.0), &h));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(Line::new(2.0, 3.0).to_dual(), DualPoint { u: 2.0, v: -3.0 });
        assert_eq!(LabeledPoint::red(1.0, -4.0).to_dual(), Line::new(1.0, 4.0));
        let l = Line::new(-0.75, 12.5);
        assert_eq!(l.to_dual().to_dual(), l);
    }

    #[test]
    fn envelope_examples() {
        let pts = [LabeledPoint::red(0.0, 0.0), LabeledPoint::red(1.0, -1.0), LabeledPoint::red(2.0, 0.0)];
        assert_eq!(lower_envelope(&pts), vec![(0.0, 0.0), (1.0, -1.0), (2.0, 0.0)]);
        let pts = [LabeledPoint::red(0.0, 0.0), LabeledPoint::red(1.0, 5.0), LabeledPoint::red(2.0, 0.0)];
        assert_eq!(lower_envelope(&pts), vec![(0.0, 0.0), (2.0, 0.0)]);
        assert_eq!(lower_envelope(&[LabeledPoint::red(3.0, 3.0)]), vec![(3.0, 3.0)]);
    }

    #[test]
    fn envelope_height() {
        let chain = [(0.0, 0.0), (1.0, -1.0), (3.0, 1.0)];
        assert_eq!(envelope_at(&chain, 0.5), Some(-0.5));
        assert_eq!(envelope_at(&chain, 1.0), Some(-1.0));
        assert_eq!(envelope_at(&chain, 2.0), Some(0.0));
        assert_eq!(envelope_at(&chain, 3.5), None);
    }

    #[test]
    fn mu_examples() {
        let mut pts = vec![
            LabeledPoint::red(0.0, 0.0),
            LabeledPoint::red(1.0, 0.0),
            LabeledPoint::red(2.0, 0.0),
            LabeledPoint::red(3.0, 5.0),
            LabeledPoint::blue(0.0, 9.0),
        ];
        let h = Halfplane::below(0.0, 1.0);
        assert_eq!(mu(&pts, &h, Color::Red).unwrap(), 0.75);
        assert_eq!(mu(&pts, &Halfplane::below(0.0, 100.0), Color::Red).unwrap(), 1.0);
        assert_eq!(mu(&pts, &Halfplane::below(0.0, -100.0), Color::Red).unwrap(), 0.0);
        pts.retain(|p| p.color == Color::Red);
        assert!(matches!(mu(&pts, &h, Color::Blue), Err(Error::EmptyColorClass(Color::Blue))));
    }
}

//! Double-line gadget: a tripartite graph becomes weighted lines whose
//! heaviest point sits where the three double lines of a triangle cross.
//!
//! Edges `a_i b_j` are horizontal ("blue") double lines at
//! `y = -j - 5n²·i`, edges `a_i c_k` have slope 1 ("red") with offset
//! `-3n·k - 5n²·i`, and edges `b_j c_k` are vertical ("black") at
//! `x = -j + 3n·k`. The whole picture is then rotated clockwise by `theta`
//! so no line is vertical. Each double line is two parallel lines at
//! perpendicular distance `alpha`; the upper one weighs `-(w + w̄)` and the
//! lower one `+(w + w̄)`, so a point gains `w + w̄` exactly when it lies
//! between them.

use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{Line, WeightedLine, EPS_GEOM};
use crate::rng::Rng;

#[derive(Clone, Debug, PartialEq)]
pub struct TripartiteGraph {
    pub n: usize,
    /// `w_ab[i][j]` is the weight of edge `a_i b_j` (0-based).
    pub w_ab: Vec<Vec<f64>>,
    pub w_ac: Vec<Vec<f64>>,
    pub w_bc: Vec<Vec<f64>>,
}

impl TripartiteGraph {
    pub fn new(n: usize, w_ab: Vec<Vec<f64>>, w_ac: Vec<Vec<f64>>, w_bc: Vec<Vec<f64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("graph needs n >= 1".into()));
        }
        for t in [&w_ab, &w_ac, &w_bc] {
            if t.len() != n || t.iter().any(|r| r.len() != n || r.iter().any(|w| !w.is_finite())) {
                return Err(Error::InvalidParams(format!("weight tables must be {n}x{n} and finite")));
            }
        }
        Ok(Self { n, w_ab, w_ac, w_bc })
    }

    /// Integer weights uniform in `[-max_w, max_w]`.
    pub fn random(n: usize, max_w: i64, rng: &mut Rng) -> Self {
        let mut table = || -> Vec<Vec<f64>> {
            (0..n).map(|_| (0..n).map(|_| rng.gen_range(-max_w..=max_w) as f64).collect()).collect()
        };
        let (ab, ac, bc) = (table(), table(), table());
        Self { n, w_ab: ab, w_ac: ac, w_bc: bc }
    }

    pub fn max_abs_weight(&self) -> f64 {
        [&self.w_ab, &self.w_ac, &self.w_bc]
            .iter()
            .flat_map(|t| t.iter().flatten())
            .fold(0.0f64, |m, w| m.max(w.abs()))
    }

    pub fn triangle_weight(&self, i: usize, j: usize, k: usize) -> f64 {
        self.w_ab[i][j] + self.w_ac[i][k] + self.w_bc[j][k]
    }
}

/// Heaviest triangle `(a_i, b_j, c_k)` by exhaustive search.
pub fn brute_force_max_triangle(g: &TripartiteGraph) -> (f64, (usize, usize, usize)) {
    let mut best = (f64::NEG_INFINITY, (0, 0, 0));
    for i in 0..g.n {
        for j in 0..g.n {
            for k in 0..g.n {
                let w = g.triangle_weight(i, j, k);
                if w > best.0 {
                    best = (w, (i, j, k));
                }
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// `a_i b_j`, blue.
    AB,
    /// `a_i c_k`, red.
    AC,
    /// `b_j c_k`, black.
    BC,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GadgetEdge {
    pub class: EdgeClass,
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    /// Center line of the double line, after rotation.
    pub mid: Line,
}

/// `lines[2e]` is the upper and `lines[2e + 1]` the lower line of `edges[e]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetInstance {
    pub n: usize,
    pub lines: Vec<WeightedLine>,
    pub edges: Vec<GadgetEdge>,
    pub alpha: f64,
    pub theta: f64,
    pub w_bar: f64,
}

pub const GADGET_THETA: f64 = 0.02;

pub fn gen_clique_gadget(g: &TripartiteGraph) -> GadgetInstance {
    let n = g.n;
    let nf = n as f64;
    let alpha = 0.1 / (5.0 * nf * nf + 3.0 * nf);
    let theta = GADGET_THETA;
    let w_bar = 2.0 * g.max_abs_weight() + 1.0;
    let (cos, sin) = (theta.cos(), theta.sin());
    let s2 = std::f64::consts::FRAC_1_SQRT_2;

    // line {p : normal · p = c} before rotation, as y = a·x + b after it
    let rotated = |nx: f64, ny: f64, c: f64| -> Line {
        let (rx, ry) = (cos * nx + sin * ny, -sin * nx + cos * ny);
        Line::new(-rx / ry, c / ry)
    };

    let mut lines = Vec::with_capacity(6 * n * n);
    let mut edges = Vec::with_capacity(3 * n * n);
    let mut emit = |class: EdgeClass, u: usize, v: usize, w: f64, nx: f64, ny: f64, c: f64| {
        let d = w + w_bar;
        let a = rotated(nx, ny, c + 0.5 * alpha);
        let b = rotated(nx, ny, c - 0.5 * alpha);
        let (upper, lower) = if a.b > b.b { (a, b) } else { (b, a) };
        lines.push(WeightedLine { line: upper, weight: -d });
        lines.push(WeightedLine { line: lower, weight: d });
        edges.push(GadgetEdge { class, u, v, weight: w, mid: rotated(nx, ny, c) });
    };
    let coord = |t: usize| (t + 1) as f64;
    for i in 0..n {
        for j in 0..n {
            let y = -coord(j) - coord(i) * 5.0 * nf * nf;
            emit(EdgeClass::AB, i, j, g.w_ab[i][j], 0.0, 1.0, y);
        }
    }
    for i in 0..n {
        for k in 0..n {
            let o = -coord(k) * 3.0 * nf - coord(i) * 5.0 * nf * nf;
            // y = x + o  <=>  (-x + y)/sqrt2 = o/sqrt2
            emit(EdgeClass::AC, i, k, g.w_ac[i][k], -s2, s2, o * s2);
        }
    }
    for j in 0..n {
        for k in 0..n {
            let x = -coord(j) + 3.0 * nf * coord(k);
            emit(EdgeClass::BC, j, k, g.w_bc[j][k], 1.0, 0.0, x);
        }
    }
    GadgetInstance { n, lines, edges, alpha, theta, w_bar }
}

/// Total weight of the lines passing on or below `(x, y)`.
pub fn point_weight(lines: &[WeightedLine], x: f64, y: f64) -> f64 {
    let tol = EPS_GEOM * (1.0 + y.abs());
    lines.iter().filter(|l| l.line.eval(x) <= y + tol).map(|l| l.weight).sum()
}

pub const MAX_WEIGHT_POINT_LIMIT: usize = 2000;

/// Point maximizing the weight of the lines on or below it.
///
/// Any set of lines below some point is also the set below a point lying on
/// the highest line of that set, so it suffices to walk along every line and
/// evaluate at each crossing, between consecutive crossings and beyond the
/// outermost ones. The empty set (weight 0) is always available.
pub fn max_weight_point(lines: &[WeightedLine]) -> Result<((f64, f64), f64)> {
    let m = lines.len();
    if m == 0 {
        return Err(Error::EmptyDataset);
    }
    if m > MAX_WEIGHT_POINT_LIMIT {
        return Err(Error::TooLargeForOracle { size: m, limit: MAX_WEIGHT_POINT_LIMIT });
    }
    let per_line: Vec<((f64, f64), f64, usize)> = (0..m)
        .into_par_iter()
        .map(|p| {
            let lp = lines[p].line;
            let mut xs: Vec<f64> = lines.iter().filter_map(|q| lp.intersect_x(&q.line)).filter(|x| x.is_finite()).collect();
            xs.sort_by(f64::total_cmp);
            xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
            let mut probes = Vec::with_capacity(2 * xs.len() + 2);
            match (xs.first(), xs.last()) {
                (Some(&lo), Some(&hi)) => {
                    probes.push(lo - 1.0);
                    probes.push(hi + 1.0);
                }
                _ => probes.push(0.0),
            }
            for (t, &x) in xs.iter().enumerate() {
                probes.push(x);
                if let Some(&nx) = xs.get(t + 1) {
                    probes.push(0.5 * (x + nx));
                }
            }
            let mut best = ((0.0, 0.0), f64::NEG_INFINITY, p);
            for x in probes {
                let y = lp.eval(x);
                let w = point_weight(lines, x, y);
                if w > best.1 {
                    best = ((x, y), w, p);
                }
            }
            best
        })
        .collect();
    let low = lines.iter().map(|l| l.line.eval(0.0)).fold(f64::INFINITY, f64::min);
    let mut best = ((0.0, low - 1.0), 0.0);
    for (pt, w, _) in per_line {
        if w > best.1 {
            best = (pt, w);
        }
    }
    Ok(best)
}

/// Everything `verify_gadget` looks at.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetCheck {
    pub max_weight: f64,
    pub max_triangle: f64,
    pub expected: f64,
    pub max_matches: bool,
    pub intended_triples: usize,
    pub unintended_triples: usize,
    /// Heaviest crossing of two double lines not on a third one.
    pub worst_non_triple: f64,
    pub non_triple_below_half: bool,
    /// Sound variant of the separation: non-triple crossings stay below the
    /// heaviest triple crossing.
    pub non_triple_below_best_triple: bool,
}

impl GadgetCheck {
    pub fn passes(&self) -> bool {
        self.max_matches && self.non_triple_below_half && self.unintended_triples == 0
    }
}

fn cross_point(a: &Line, b: &Line) -> Option<(f64, f64)> {
    let x = a.intersect_x(b)?;
    Some((x, a.eval(x)))
}

fn distance(l: &Line, p: (f64, f64)) -> f64 {
    (l.eval(p.0) - p.1).abs() / (1.0 + l.a * l.a).sqrt()
}

pub fn check_gadget(g: &TripartiteGraph, inst: &GadgetInstance) -> Result<GadgetCheck> {
    let (_, max_weight) = max_weight_point(&inst.lines)?;
    let (max_triangle, _) = brute_force_max_triangle(g);
    let expected = 3.0 * inst.w_bar + max_triangle;
    let tol = inst.alpha / 4.0;
    let class = |c: EdgeClass| inst.edges.iter().filter(move |e| e.class == c);

    let mut intended = 0;
    let mut unintended = 0;
    for blue in class(EdgeClass::AB) {
        for red in class(EdgeClass::AC) {
            let Some(p) = cross_point(&blue.mid, &red.mid) else { continue };
            for black in class(EdgeClass::BC) {
                if distance(&black.mid, p) < tol {
                    // blue (i, j), red (i, k), black (j, k)
                    if blue.u == red.u && blue.v == black.u && red.v == black.v {
                        intended += 1;
                    } else {
                        unintended += 1;
                    }
                }
            }
        }
    }

    let mut worst = f64::NEG_INFINITY;
    let pairs = [(EdgeClass::AB, EdgeClass::AC, EdgeClass::BC), (EdgeClass::AB, EdgeClass::BC, EdgeClass::AC), (EdgeClass::AC, EdgeClass::BC, EdgeClass::AB)];
    for (c1, c2, c3) in pairs {
        for e1 in class(c1) {
            for e2 in class(c2) {
                let Some(p) = cross_point(&e1.mid, &e2.mid) else { continue };
                if class(c3).any(|e3| distance(&e3.mid, p) < tol) {
                    continue;
                }
                worst = worst.max(point_weight(&inst.lines, p.0, p.1));
            }
        }
    }
    let max_matches = (max_weight - expected).abs() <= 1e-6;
    Ok(GadgetCheck {
        max_weight,
        max_triangle,
        expected,
        max_matches,
        intended_triples: intended,
        unintended_triples: unintended,
        worst_non_triple: worst,
        non_triple_below_half: worst < 1.5 * inst.w_bar,
        non_triple_below_best_triple: worst < expected,
    })
}

/// Heaviest point equals `3·w̄ + max triangle`, and every crossing of two
/// double lines off a third scores below `1.5·w̄`.
pub fn verify_gadget(g: &TripartiteGraph, inst: &GadgetInstance) -> bool {
    check_gadget(g, inst).map(|c| c.max_matches && c.non_triple_below_half).unwrap_or(false)
}

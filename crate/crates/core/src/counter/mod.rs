//! Additive-error halfplane range counting over one color class.
//!
//! Points are dualized to lines and a root sample `Ĥ` of those lines is
//! refined level by level: every non-leaf cell gets a `1/t`-cutting of its own
//! line sample, each child remembers how many sampled lines pass entirely
//! below it, and keeps a `1/r` subsample of the lines crossing it. A query
//! walks from the root to the leaf containing the query's dual point and
//! scans the leaf sample.
//!
//! Each sampled line of a node stands for `line_weight` lines of `Ĥ`; the
//! estimate of lines below a cell is carried down as
//! `m̂(child) = m̂(parent) + line_weight(parent) · below(parent sample, child)`.

mod codec;

use std::ops::Range;

use rand::Rng as _;
use rayon::prelude::*;

use crate::cutting::{build_cutting_with, CuttingParams, TrapCell};
use crate::error::{Error, Result};
use crate::geom::{Color, Halfplane, LabeledPoint, Line, Side, ToDual, EPS_GEOM};
use crate::rng::derive_rng;

pub use codec::{decode_index, encode_index, FORMAT_VERSION};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CounterParams {
    pub eps: f64,
    pub delta: f64,
    /// Branching constant of the hierarchy.
    pub r: u32,
    /// Root-sample constant.
    pub c_h: f64,
    /// Nodes whose sample has at most this many lines are leaves.
    pub leaf_cap: usize,
    /// Sample-size constant of the per-cell cuttings.
    pub c_net: f64,
}

impl CounterParams {
    pub fn new(eps: f64, delta: f64) -> Result<Self> {
        let p = Self {
            eps,
            delta,
            r: 4,
            c_h: 0.5,
            leaf_cap: Self::default_leaf_cap(eps),
            c_net: CuttingParams::default().c_net,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn default_leaf_cap(eps: f64) -> usize {
        ((1.0 / eps).log2().ceil() as usize).max(4)
    }

    pub fn with_r(mut self, r: u32) -> Self {
        self.r = r;
        self
    }

    pub fn with_c_h(mut self, c_h: f64) -> Self {
        self.c_h = c_h;
        self
    }

    pub fn with_c_net(mut self, c_net: f64) -> Self {
        self.c_net = c_net;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return bad(format!("eps = {} not in (0, 1)", self.eps));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta = {} not in (0, 1)", self.delta));
        }
        if self.r < 2 {
            return bad(format!("r = {} < 2", self.r));
        }
        if !(self.c_h > 0.0) || !(self.c_net > 0.0) {
            return bad("sample constants must be positive".into());
        }
        if self.leaf_cap == 0 {
            return bad("leaf_cap must be positive".into());
        }
        Ok(())
    }

    /// Number of refinement levels for a root sample of `root_size` lines.
    pub fn levels(&self, root_size: usize) -> usize {
        let ratio = root_size as f64 / self.leaf_cap as f64;
        let l = (0.5 * ratio.ln() / (self.r as f64).ln()).ceil();
        if l.is_finite() && l >= 1.0 {
            l as usize
        } else {
            1
        }
    }

    /// Root-sample size and level count for an input of `n` lines.
    pub fn root_plan(&self, n: usize) -> (usize, usize) {
        let target = self.sample_target(n);
        let size = if target >= n as f64 { n } else { (target as usize).max(1) };
        (size, self.levels(size))
    }

    /// Prescribed root-sample size before capping at `n`.
    ///
    /// The size formula depends on the level count, which depends on the
    /// size; the pair is iterated to a fixed point (it settles in a couple of
    /// rounds since `levels` is logarithmic).
    pub fn sample_target(&self, n: usize) -> f64 {
        let mut size = n;
        let mut want = n as f64;
        for _ in 0..8 {
            let l = self.levels(size) as f64;
            want = (self.c_h * l.powi(3) / (self.eps * self.eps) * (l / self.delta).ln()).ceil().max(1.0);
            let next = if want >= n as f64 { n } else { want as usize };
            if next == size {
                break;
            }
            size = next;
        }
        want
    }

    /// True when a sampled hierarchy cannot meet the accuracy: either the
    /// accuracy is finer than a single point, or the prescribed sample
    /// exceeds the input by more than a full level of branching (`r²`), so
    /// capping it at the input would leave the subsampling error unchecked.
    pub fn needs_exact(&self, n: usize) -> bool {
        let r2 = (self.r as f64).powi(2);
        self.eps * (n as f64) < 1.0 || self.sample_target(n) >= r2 * n as f64
    }
}

/// One cell of the hierarchy.
#[derive(Clone, Debug, PartialEq)]
pub struct CountNode {
    pub level: u32,
    pub cell: TrapCell,
    /// Indices into the root sample; repeats allowed.
    pub sample_ids: Vec<u32>,
    /// Number of root-sample lines represented by one sampled line.
    pub line_weight: f64,
    /// Estimated number of root-sample lines lying below the cell.
    pub m_hat: f64,
    /// Lines of the parent's sample lying below this cell.
    pub below_parent: u32,
    pub first_child: u32,
    pub n_children: u32,
    pub is_leaf: bool,
}

impl CountNode {
    pub fn children(&self) -> Range<usize> {
        let s = self.first_child as usize;
        s..s + self.n_children as usize
    }
}

/// Structure statistics, as reported by the CLI and the bench harness.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IndexStats {
    pub root_sample: usize,
    pub levels: usize,
    pub exact: bool,
    pub nodes: usize,
    pub nodes_per_level: Vec<usize>,
    pub leaves: usize,
    pub max_leaf_sample: usize,
    pub max_children: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CounterIndex {
    pub(crate) nodes: Vec<CountNode>,
    pub(crate) root_sample: Vec<Line>,
    pub(crate) total_mass: f64,
    pub(crate) params: CounterParams,
    pub(crate) levels: usize,
    pub(crate) exact: bool,
}

/// Expands unit and integer weights into repeated dual lines.
fn ingest(points: &[LabeledPoint]) -> Result<Vec<Line>> {
    let mut lines = Vec::with_capacity(points.len());
    for p in points {
        if !p.is_finite() {
            return Err(Error::InvalidParams(format!("non-finite point {p:?}")));
        }
        let w = p.weight;
        if !(w >= 1.0) || w.fract() != 0.0 || w > 1e6 {
            return Err(Error::InvalidParams(format!(
                "counter accepts only positive integer weights, got {w}"
            )));
        }
        let line = p.to_dual();
        for _ in 0..w as usize {
            lines.push(line);
        }
    }
    Ok(lines)
}

/// Builds an index over the `color` points of a mixed dataset.
pub fn build_index_for_color(
    points: &[LabeledPoint],
    color: Color,
    params: CounterParams,
    seed: u64,
) -> Result<CounterIndex> {
    let own: Vec<LabeledPoint> = points.iter().filter(|p| p.color == color).copied().collect();
    if own.is_empty() {
        return Err(Error::EmptyColorClass(color));
    }
    build_index(&own, params, seed)
}

/// Builds the counting hierarchy over all of `points`.
pub fn build_index(points: &[LabeledPoint], params: CounterParams, seed: u64) -> Result<CounterIndex> {
    params.validate()?;
    if points.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let lines = ingest(points)?;
    let n = lines.len();
    let total_mass = n as f64;

    let exact = params.needs_exact(n);
    let (size, levels) = if exact { (n, params.levels(n)) } else { params.root_plan(n) };
    let root_sample: Vec<Line> = if size >= n {
        lines
    } else {
        let mut rng = derive_rng(seed, "root-sample", 0, 0);
        (0..size).map(|_| lines[rng.gen_range(0..n)]).collect()
    };
    let h_hat = root_sample.len();

    let root = CountNode {
        level: 0,
        cell: TrapCell::plane(),
        sample_ids: (0..h_hat as u32).collect(),
        line_weight: 1.0,
        m_hat: 0.0,
        below_parent: 0,
        first_child: 0,
        n_children: 0,
        is_leaf: exact || h_hat <= params.leaf_cap,
    };
    let mut nodes = vec![root];
    let cut_params = CuttingParams { c_net: params.c_net, ..CuttingParams::default() };

    let mut frontier: Vec<usize> = if nodes[0].is_leaf { vec![] } else { vec![0] };
    let mut level = 0usize;
    while !frontier.is_empty() {
        let produced: Vec<Result<Vec<CountNode>>> = frontier
            .par_iter()
            .enumerate()
            .map(|(ordinal, &id)| {
                split_node(&nodes[id], &root_sample, &params, cut_params, levels, seed, ordinal as u64)
            })
            .collect();
        let mut next = Vec::new();
        for (&id, kids) in frontier.iter().zip(produced) {
            let kids = kids?;
            let first = nodes.len();
            nodes[id].first_child = first as u32;
            nodes[id].n_children = kids.len() as u32;
            for (k, kid) in kids.into_iter().enumerate() {
                if !kid.is_leaf {
                    next.push(first + k);
                }
                nodes.push(kid);
            }
        }
        frontier = next;
        level += 1;
        debug_assert!(level <= levels);
    }

    Ok(CounterIndex { nodes, root_sample, total_mass, params, levels, exact })
}

fn split_node(
    node: &CountNode,
    root_sample: &[Line],
    params: &CounterParams,
    cut_params: CuttingParams,
    levels: usize,
    seed: u64,
    ordinal: u64,
) -> Result<Vec<CountNode>> {
    let i = node.level;
    let r = params.r as f64;
    let h_hat = root_sample.len() as f64;
    let local: Vec<Line> = node.sample_ids.iter().map(|&s| root_sample[s as usize]).collect();
    let t = (local.len() as f64 * r.powi(2 * i as i32 + 1) / h_hat).max(1.0);

    let mut rng = derive_rng(seed, "cutting", i as u64, ordinal);
    let cutting = build_cutting_with(&node.cell, &local, t, cut_params, &mut rng)?;

    let mut kids = Vec::with_capacity(cutting.cells.len());
    for (c, cell) in cutting.cells.iter().enumerate() {
        let conflicts = &cutting.conflicts[c];
        let below = cutting.below[c];
        let want = conflicts.len().div_ceil(params.r as usize);
        let mut sample_ids = Vec::with_capacity(want);
        if want > 0 {
            let mut srng = derive_rng(seed, "child-sample", (i as u64) << 32 | c as u64, ordinal);
            for _ in 0..want {
                let pick = conflicts[srng.gen_range(0..conflicts.len())];
                sample_ids.push(node.sample_ids[pick]);
            }
        }
        let line_weight = if want > 0 {
            node.line_weight * conflicts.len() as f64 / want as f64
        } else {
            node.line_weight
        };
        let level = i + 1;
        kids.push(CountNode {
            level,
            cell: *cell,
            is_leaf: want <= params.leaf_cap || level as usize >= levels,
            sample_ids,
            line_weight,
            m_hat: node.m_hat + node.line_weight * below as f64,
            below_parent: below as u32,
            first_child: 0,
            n_children: 0,
        });
    }
    Ok(kids)
}

/// Which lines a leaf scan counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Below {
    Strict,
    OrOn,
}

impl CounterIndex {
    pub fn params(&self) -> &CounterParams {
        &self.params
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn root_sample(&self) -> &[Line] {
        &self.root_sample
    }

    pub fn nodes(&self) -> &[CountNode] {
        &self.nodes
    }

    pub fn root(&self) -> &CountNode {
        &self.nodes[0]
    }

    /// Estimated number of points inside the closed halfplane `h`.
    pub fn query(&self, h: &Halfplane) -> f64 {
        self.query_traced(h).0
    }

    /// Nodes visited by a query (root and leaf included).
    pub fn node_visit_count(&self, h: &Halfplane) -> usize {
        self.query_traced(h).1
    }

    /// Estimate, nodes visited, and number of leaf-sample lines scanned.
    pub fn query_traced(&self, h: &Halfplane) -> (f64, usize, usize) {
        let q = h.line.to_dual();
        let scale = self.total_mass / self.root_sample.len() as f64;
        match h.side {
            // p ∈ h  <=>  dual(p) on or above q
            Side::Below => {
                let (under, visits, scanned) = self.lines_below(q.u, q.v - EPS_GEOM, Below::Strict);
                (self.total_mass - under * scale, visits, scanned)
            }
            Side::Above => {
                let (under, visits, scanned) = self.lines_below(q.u, q.v + EPS_GEOM, Below::OrOn);
                (under * scale, visits, scanned)
            }
        }
    }

    /// Estimated number of root-sample lines below the dual point `(u, v)`.
    fn lines_below(&self, u: f64, v: f64, mode: Below) -> (f64, usize, usize) {
        let mut visits = 1;
        let mut n = &self.nodes[0];
        while !n.is_leaf && n.n_children > 0 {
            n = &self.nodes[self.child_containing(n, u, v)];
            visits += 1;
        }
        let hits = n
            .sample_ids
            .iter()
            .filter(|&&s| {
                let y = self.root_sample[s as usize].eval(u);
                match mode {
                    Below::Strict => y < v,
                    Below::OrOn => y <= v,
                }
            })
            .count();
        (n.m_hat + n.line_weight * hits as f64, visits, n.sample_ids.len())
    }

    /// Leaf whose cell contains the dual point `(u, v)`.
    pub fn locate(&self, u: f64, v: f64) -> usize {
        let mut id = 0;
        while !self.nodes[id].is_leaf && self.nodes[id].n_children > 0 {
            id = self.child_containing(&self.nodes[id], u, v);
        }
        id
    }

    fn child_containing(&self, n: &CountNode, u: f64, v: f64) -> usize {
        let kids = n.children();
        if let Some(k) = kids.clone().find(|&k| self.nodes[k].cell.contains(u, v)) {
            return k;
        }
        // rounding can leave a point in a hairline gap between siblings
        kids.min_by(|&a, &b| {
            violation(&self.nodes[a].cell, u, v).total_cmp(&violation(&self.nodes[b].cell, u, v))
        })
        .expect("internal node without children")
    }

    pub fn stats(&self) -> IndexStats {
        let mut per_level = vec![0usize; self.levels + 1];
        let mut leaves = 0;
        let mut max_leaf = 0;
        let mut max_children = 0;
        for n in &self.nodes {
            let l = n.level as usize;
            if l >= per_level.len() {
                per_level.resize(l + 1, 0);
            }
            per_level[l] += 1;
            max_children = max_children.max(n.n_children as usize);
            if n.is_leaf {
                leaves += 1;
                max_leaf = max_leaf.max(n.sample_ids.len());
            }
        }
        while per_level.len() > 1 && per_level.last() == Some(&0) {
            per_level.pop();
        }
        IndexStats {
            root_sample: self.root_sample.len(),
            levels: self.levels,
            exact: self.exact,
            nodes: self.nodes.len(),
            nodes_per_level: per_level,
            leaves,
            max_leaf_sample: max_leaf,
            max_children,
        }
    }

    /// Nodes whose sample exceeds `|Ĥ| / r^(2i) + 1`.
    pub fn level_size_violations(&self) -> Vec<usize> {
        let h_hat = self.root_sample.len() as f64;
        let r = self.params.r as f64;
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.sample_ids.len() as f64 > h_hat / r.powi(2 * n.level as i32) + 1.0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Recomputes every `m̂` from the stored below-counts and line weights.
    pub fn recompute_m_hat(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.nodes.len()];
        for (id, n) in self.nodes.iter().enumerate() {
            for k in n.children() {
                out[k] = out[id] + n.line_weight * self.nodes[k].below_parent as f64;
            }
        }
        out
    }
}

fn violation(c: &TrapCell, x: f64, y: f64) -> f64 {
    let mut v = 0.0f64;
    v = v.max(c.x_lo - x).max(x - c.x_hi);
    if let Some(b) = c.bottom {
        v = v.max(b.eval(x) - y);
    }
    if let Some(t) = c.top {
        v = v.max(y - t.eval(x));
    }
    v
}

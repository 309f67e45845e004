//! Binary encoding of a [`CounterIndex`].
//!
//! Layout (all integers and reals little-endian):
//!
//! ```text
//! magic "HSCI" | version u32
//! eps f64 | delta f64 | r u32 | c_h f64 | leaf_cap u64 | c_net f64
//! total_mass f64 | levels u64 | exact u8
//! root sample: count u64, then (a f64, b f64) per line
//! node count u64, then node records in preorder:
//!   level u32 | x_lo f64 | x_hi f64 | flags u8 (1 = bottom, 2 = top)
//!   [bottom a, b] [top a, b] | line_weight f64 | m_hat f64
//!   below_parent u32 | is_leaf u8 | n_children u32
//!   sample length u32, then u32 root-sample ids
//! ```

use std::collections::VecDeque;

use super::{CountNode, CounterIndex, CounterParams};
use crate::cutting::TrapCell;
use crate::error::{Error, Result};
use crate::geom::Line;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 4] = b"HSCI";

struct Writer(Vec<u8>);

impl Writer {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn line(&mut self, l: &Line) {
        self.f64(l.a);
        self.f64(l.b);
    }
}

pub fn encode_index(index: &CounterIndex) -> Vec<u8> {
    let mut w = Writer(Vec::with_capacity(64 + index.nodes.len() * 64));
    w.0.extend_from_slice(MAGIC);
    w.u32(FORMAT_VERSION);
    let p = &index.params;
    w.f64(p.eps);
    w.f64(p.delta);
    w.u32(p.r);
    w.f64(p.c_h);
    w.u64(p.leaf_cap as u64);
    w.f64(p.c_net);
    w.f64(index.total_mass);
    w.u64(index.levels as u64);
    w.u8(index.exact as u8);
    w.u64(index.root_sample.len() as u64);
    for l in &index.root_sample {
        w.line(l);
    }
    w.u64(index.nodes.len() as u64);
    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        let n = &index.nodes[id];
        w.u32(n.level);
        w.f64(n.cell.x_lo);
        w.f64(n.cell.x_hi);
        w.u8(n.cell.bottom.is_some() as u8 | (n.cell.top.is_some() as u8) << 1);
        if let Some(b) = &n.cell.bottom {
            w.line(b);
        }
        if let Some(t) = &n.cell.top {
            w.line(t);
        }
        w.f64(n.line_weight);
        w.f64(n.m_hat);
        w.u32(n.below_parent);
        w.u8(n.is_leaf as u8);
        w.u32(n.n_children);
        w.u32(n.sample_ids.len() as u32);
        for &s in &n.sample_ids {
            w.u32(s);
        }
        stack.extend(n.children().rev());
    }
    w.0
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        if self.at + n > self.buf.len() {
            return Err(Error::Decode(format!("truncated at byte {}", self.at)));
        }
        let s = &self.buf[self.at..self.at + n];
        self.at += n;
        Ok(s)
    }
    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn line(&mut self) -> Result<Line> {
        Ok(Line::new(self.f64()?, self.f64()?))
    }
    fn count(&mut self, what: &str) -> Result<usize> {
        let n = self.u64()? as usize;
        // every record is at least 4 bytes
        if n > self.buf.len() {
            return Err(Error::Decode(format!("implausible {what} count {n}")));
        }
        Ok(n)
    }
}

pub fn decode_index(buf: &[u8]) -> Result<CounterIndex> {
    let mut r = Reader { buf, at: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::Decode("bad magic".into()));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::Decode(format!("unsupported version {version}")));
    }
    let params = CounterParams {
        eps: r.f64()?,
        delta: r.f64()?,
        r: r.u32()?,
        c_h: r.f64()?,
        leaf_cap: r.u64()? as usize,
        c_net: r.f64()?,
    };
    let total_mass = r.f64()?;
    let levels = r.u64()? as usize;
    let exact = r.u8()? != 0;
    let n_lines = r.count("line")?;
    let mut root_sample = Vec::with_capacity(n_lines);
    for _ in 0..n_lines {
        root_sample.push(r.line()?);
    }
    let n_nodes = r.count("node")?;

    // preorder records; children of a node are the next subtrees
    let mut pre: Vec<CountNode> = Vec::with_capacity(n_nodes);
    for _ in 0..n_nodes {
        let level = r.u32()?;
        let x_lo = r.f64()?;
        let x_hi = r.f64()?;
        let flags = r.u8()?;
        let bottom = if flags & 1 != 0 { Some(r.line()?) } else { None };
        let top = if flags & 2 != 0 { Some(r.line()?) } else { None };
        let line_weight = r.f64()?;
        let m_hat = r.f64()?;
        let below_parent = r.u32()?;
        let is_leaf = r.u8()? != 0;
        let n_children = r.u32()?;
        let len = r.u32()? as usize;
        if len > buf.len() {
            return Err(Error::Decode(format!("implausible sample length {len}")));
        }
        let mut sample_ids = Vec::with_capacity(len);
        for _ in 0..len {
            let id = r.u32()?;
            if id as usize >= root_sample.len() {
                return Err(Error::Decode(format!("sample id {id} out of range")));
            }
            sample_ids.push(id);
        }
        pre.push(CountNode {
            level,
            cell: TrapCell { x_lo, x_hi, bottom, top },
            sample_ids,
            line_weight,
            m_hat,
            below_parent,
            first_child: 0,
            n_children,
            is_leaf,
        });
    }
    if r.at != buf.len() {
        return Err(Error::Decode(format!("{} trailing bytes", buf.len() - r.at)));
    }

    // children lists in preorder positions
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    let mut stack: Vec<(usize, u32)> = Vec::new();
    for id in 0..n_nodes {
        if id > 0 {
            let top = stack.last_mut().ok_or_else(|| Error::Decode("node outside the tree".into()))?;
            kids[top.0].push(id);
            top.1 -= 1;
        }
        while let Some(&(_, 0)) = stack.last() {
            stack.pop();
        }
        if pre[id].n_children > 0 {
            stack.push((id, pre[id].n_children));
        }
        while let Some(&(_, 0)) = stack.last() {
            stack.pop();
        }
    }
    if !stack.is_empty() || n_nodes == 0 {
        return Err(Error::Decode("child counts do not match the node records".into()));
    }

    // breadth-first layout with contiguous children
    let mut slots: Vec<Option<CountNode>> = pre.into_iter().map(Some).collect();
    let mut nodes = Vec::with_capacity(n_nodes);
    let mut queue = VecDeque::from([0usize]);
    let mut next_free = 1u32;
    while let Some(id) = queue.pop_front() {
        let mut n = slots[id].take().unwrap();
        n.first_child = if kids[id].is_empty() { 0 } else { next_free };
        next_free += kids[id].len() as u32;
        queue.extend(kids[id].iter().copied());
        nodes.push(n);
    }
    Ok(CounterIndex { nodes, root_sample, total_mass, params, levels, exact })
}

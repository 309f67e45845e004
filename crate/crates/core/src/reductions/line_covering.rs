//! Line-Covering: is there a line cutting exactly `k` of the given rays?
//!
//! A non-vertical line `y = l(x)` cuts an upward ray from `(x0, y0)` iff
//! `l(x0) >= y0`, and a downward one iff `l(x0) <= y0`.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::geom::{envelope_at, lower_envelope_xy, LabeledPoint, Line};
use crate::rng::Rng;
use crate::scan::{exact_max_halfspace_with, PhiSpec, ScanResult, SideFilter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RayDir {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ray {
    pub x: f64,
    pub y: f64,
    pub dir: RayDir,
}

impl Ray {
    pub fn up(x: f64, y: f64) -> Self {
        Self { x, y, dir: RayDir::Up }
    }

    pub fn down(x: f64, y: f64) -> Self {
        Self { x, y, dir: RayDir::Down }
    }

    pub fn cut_by(&self, l: &Line) -> bool {
        let v = l.eval(self.x);
        match self.dir {
            RayDir::Up => v >= self.y,
            RayDir::Down => v <= self.y,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineCoverInstance {
    pub points: Vec<LabeledPoint>,
    pub spec: PhiSpec,
    pub red: usize,
    pub blue: usize,
    /// Downward rays whose endpoint lies on the envelope; their red point
    /// was moved down by `shift`.
    pub shifted: Vec<usize>,
    pub shift: f64,
}

pub fn gen_line_covering(rays: &[Ray], k: usize) -> Result<LineCoverInstance> {
    let m = rays.len();
    if k < 1 || k > m / 2 {
        return Err(Error::InvalidK { k, max: m / 2 });
    }
    let ends: Vec<(f64, f64)> = rays.iter().map(|r| (r.x, r.y)).collect();
    let chain = lower_envelope_xy(&ends);
    let extent = ends.iter().fold(0.0f64, |a, p| a.max(p.0.abs()).max(p.1.abs()));
    let shift = 1e-4 * (1.0 + extent);

    let mut points = Vec::with_capacity(2 * m);
    let mut shifted = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        match r.dir {
            RayDir::Up => points.push(LabeledPoint::red(r.x, r.y)),
            RayDir::Down => {
                points.push(LabeledPoint::blue(r.x, r.y));
                let env = envelope_at(&chain, r.x).expect("endpoint lies in the envelope's range");
                let y = if env >= r.y - shift {
                    shifted.push(i);
                    r.y - shift
                } else {
                    env
                };
                points.push(LabeledPoint::red(r.x, y));
            }
        }
    }
    let red = points.iter().filter(|p| p.color == crate::geom::Color::Red).count();
    let blue = points.len() - red;
    Ok(LineCoverInstance { points, spec: PhiSpec::line_cover(k, red, blue), red, blue, shifted, shift })
}

/// Exact scan of a generated instance over halfplanes below a line.
pub fn scan_line_covering(inst: &LineCoverInstance) -> Result<ScanResult> {
    exact_max_halfspace_with(&inst.points, &inst.spec, SideFilter::BelowOnly)
}

/// `true` iff the scan reached `|R|` and the ray checker confirms a line
/// cutting exactly `k` rays.
pub fn verify_line_covering(rays: &[Ray], k: usize, result: &ScanResult) -> bool {
    let red = rays.iter().map(|r| if r.dir == RayDir::Up { 1 } else { 2 }).sum::<usize>();
    (result.value - red as f64).abs() < 1e-9 && line_cover_exists(rays, k)
}

/// Epsilon at which an approximate scan is off by less than half a point.
pub fn exactify(red: usize) -> f64 {
    1.0 / (2.0 * red as f64)
}

pub fn line_cover_exists(rays: &[Ray], k: usize) -> bool {
    achievable_cut_counts(rays).get(k).copied().unwrap_or(false)
}

/// `out[c]` is true iff some non-vertical line cuts exactly `c` rays.
///
/// Every cut pattern of a non-vertical line is realized by a small
/// perturbation of a line through two endpoints: the endpoints on that line
/// are either all kept on it, all pushed to one side, or split at a
/// threshold position along the line (rotation about the threshold), the
/// threshold endpoint itself staying on the line.
pub fn achievable_cut_counts(rays: &[Ray]) -> Vec<bool> {
    let m = rays.len();
    let mut out = vec![false; m + 1];
    if m == 0 {
        out[0] = true;
        return out;
    }
    // a horizontal line through one endpoint when there is no other pair
    if m == 1 {
        out[1] = true;
        out[0] = true;
        return out;
    }
    let mut on: Vec<(f64, RayDir)> = Vec::with_capacity(m);
    for i in 0..m {
        for j in (i + 1)..m {
            let Some(l) = Line::through((rays[i].x, rays[i].y), (rays[j].x, rays[j].y)) else { continue };
            let scale = 1.0 + l.a.abs() + l.b.abs();
            let mut base = 0;
            on.clear();
            for r in rays {
                let d = l.eval(r.x) - r.y;
                if d.abs() <= 1e-12 * (scale + r.x.abs() * l.a.abs() + r.y.abs()) {
                    on.push((r.x, r.dir));
                } else if (d > 0.0) == (r.dir == RayDir::Up) {
                    base += 1;
                }
            }
            on.sort_by(|a, b| a.0.total_cmp(&b.0));
            // cut count of an on-line endpoint pushed above (true) or below the line
            let cut = |dir: RayDir, above: bool| usize::from((dir == RayDir::Down) == above);
            let c = on.len();
            out[base + c] = true;
            for above in [true, false] {
                out[base + on.iter().map(|o| cut(o.1, above)).sum::<usize>()] = true;
            }
            for t in 0..c {
                for left_above in [true, false] {
                    let left: usize = on[..t].iter().map(|o| cut(o.1, left_above)).sum();
                    let right: usize = on[t + 1..].iter().map(|o| cut(o.1, !left_above)).sum();
                    // threshold at endpoint t, which stays on the line
                    out[base + left + 1 + right] = true;
                    // threshold just after endpoint t
                    out[base + left + cut(on[t].1, left_above) + right] = true;
                }
            }
        }
    }
    out
}

/// `m` rays with endpoints uniform in the unit square and random directions.
pub fn random_rays(m: usize, rng: &mut Rng) -> Vec<Ray> {
    (0..m)
        .map(|_| {
            let dir = if rng.gen_bool(0.5) { RayDir::Up } else { RayDir::Down };
            Ray { x: rng.gen_range(0.0..1.0), y: rng.gen_range(0.0..1.0), dir }
        })
        .collect()
}

/// Rays of which a known line cuts exactly `k`; returns the line too.
pub fn planted_rays(m: usize, k: usize, rng: &mut Rng) -> (Vec<Ray>, Line) {
    let l = Line::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.3..0.7));
    let mut rays = Vec::with_capacity(m);
    for i in 0..m {
        let x = rng.gen_range(0.0..1.0);
        let gap = rng.gen_range(0.01..0.3);
        let above = rng.gen_bool(0.5);
        let y = if above { l.eval(x) + gap } else { l.eval(x) - gap };
        // an endpoint above the line is cut iff the ray points down
        let cut = i < k;
        let dir = if above == cut { RayDir::Down } else { RayDir::Up };
        rays.push(Ray { x, y, dir });
    }
    (rays, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn mapping_counts() {
        let up: Vec<Ray> = (0..4).map(|i| Ray::up(i as f64, (i * i) as f64)).collect();
        let inst = gen_line_covering(&up, 2).unwrap();
        assert_eq!((inst.red, inst.blue), (4, 0));
        let two = [Ray::up(0.0, 0.0), Ray::down(1.0, 1.0)];
        let inst = gen_line_covering(&two, 1).unwrap();
        assert_eq!((inst.red, inst.blue), (2, 1));
    }

    #[test]
    fn k_out_of_range() {
        let rays = [Ray::up(0.0, 0.0), Ray::down(1.0, 1.0), Ray::up(2.0, 0.0)];
        assert_eq!(gen_line_covering(&rays, 0), Err(Error::InvalidK { k: 0, max: 1 }));
        assert_eq!(gen_line_covering(&rays, 2), Err(Error::InvalidK { k: 2, max: 1 }));
    }

    #[test]
    fn exactify_values() {
        assert_eq!(exactify(10), 0.05);
        assert_eq!(exactify(1), 0.5);
    }

    #[test]
    fn planted_line_cuts_k() {
        let mut rng = Rng::seed_from_u64(3);
        for k in 1..=5 {
            let (rays, l) = planted_rays(10, k, &mut rng);
            assert_eq!(rays.iter().filter(|r| r.cut_by(&l)).count(), k);
            assert!(line_cover_exists(&rays, k));
        }
    }

    #[test]
    fn checker_against_dense_line_sampling() {
        // every count seen by random lines must be reported achievable
        let mut rng = Rng::seed_from_u64(4);
        for _ in 0..20 {
            let rays = random_rays(8, &mut rng);
            let counts = achievable_cut_counts(&rays);
            for _ in 0..3000 {
                let l = Line::new(rng.gen_range(-5.0..5.0), rng.gen_range(-3.0..3.0));
                let c = rays.iter().filter(|r| r.cut_by(&l)).count();
                assert!(counts[c], "count {c} missed");
            }
        }
    }

    #[test]
    fn envelope_points_lie_below_their_endpoints() {
        let mut rng = Rng::seed_from_u64(5);
        let rays = random_rays(30, &mut rng);
        let inst = gen_line_covering(&rays, 3).unwrap();
        let mut it = inst.points.iter();
        for r in &rays {
            let p = it.next().unwrap();
            if r.dir == RayDir::Down {
                let q = it.next().unwrap();
                assert_eq!(p.x, q.x);
                assert!(q.y < p.y);
            }
        }
    }
}

//! Scoring functions of the red and blue range fractions.

use crate::error::{Error, Result};

/// Inputs of the Kulldorff score are clamped to `[KULLDORFF_CLAMP, 1 - KULLDORFF_CLAMP]`.
pub const KULLDORFF_CLAMP: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiShape {
    Convex,
    Concave,
    Linear,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhiKind {
    /// `|mu_r - mu_b|`
    Discrepancy,
    /// `mu_r - mu_b`
    Signed,
    /// `1 - |(mu_r - mu_b) - f|`
    Balance { f: f64 },
    /// Poisson log-likelihood ratio.
    Kulldorff,
    /// `|R| - | mu_r·|R| - mu_b·|B| - k |`, in counts.
    LineCover { k: f64, red: f64, blue: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiSpec {
    pub name: &'static str,
    pub kind: PhiKind,
    pub lipschitz_c: f64,
    pub shape: PhiShape,
}

impl PhiSpec {
    pub fn discrepancy() -> Self {
        Self { name: "disc", kind: PhiKind::Discrepancy, lipschitz_c: 1.0, shape: PhiShape::Convex }
    }

    pub fn signed() -> Self {
        Self { name: "signed", kind: PhiKind::Signed, lipschitz_c: 1.0, shape: PhiShape::Linear }
    }

    pub fn balance(f: f64) -> Self {
        Self { name: "balance", kind: PhiKind::Balance { f }, lipschitz_c: 1.0, shape: PhiShape::Concave }
    }

    /// Lipschitz constant 9 holds on `[0.1, 0.9]²`.
    pub fn kulldorff() -> Self {
        Self { name: "kulldorff", kind: PhiKind::Kulldorff, lipschitz_c: 9.0, shape: PhiShape::Convex }
    }

    pub fn line_cover(k: usize, red: usize, blue: usize) -> Self {
        Self {
            name: "line-cover",
            kind: PhiKind::LineCover { k: k as f64, red: red as f64, blue: blue as f64 },
            lipschitz_c: red.max(blue).max(1) as f64,
            shape: PhiShape::Concave,
        }
    }

    /// Looks up a built-in by name; `param` is `f` for `balance`.
    pub fn by_name(name: &str, param: Option<f64>) -> Option<Self> {
        match name {
            "disc" | "discrepancy" => Some(Self::discrepancy()),
            "signed" => Some(Self::signed()),
            "balance" => Some(Self::balance(param.unwrap_or(0.3))),
            "kulldorff" => Some(Self::kulldorff()),
            _ => None,
        }
    }

    /// Square `[lo, hi]²` on which `lipschitz_c` is claimed.
    pub fn valid_region(&self) -> (f64, f64) {
        match self.kind {
            PhiKind::Kulldorff => (0.1, 0.9),
            _ => (0.0, 1.0),
        }
    }

    /// Whether the score reads the blue fraction at all when there are no
    /// blue points (only the line-covering score tolerates that).
    pub fn needs_both_colors(&self) -> bool {
        !matches!(self.kind, PhiKind::LineCover { .. })
    }

    pub fn eval(&self, mu_r: f64, mu_b: f64) -> Result<f64> {
        phi_eval(self, mu_r, mu_b)
    }
}

pub fn phi_eval(spec: &PhiSpec, mu_r: f64, mu_b: f64) -> Result<f64> {
    if mu_r.is_nan() || mu_b.is_nan() {
        return Err(Error::InvalidMu(mu_r, mu_b));
    }
    Ok(match spec.kind {
        PhiKind::Discrepancy => (mu_r - mu_b).abs(),
        PhiKind::Signed => mu_r - mu_b,
        PhiKind::Balance { f } => 1.0 - ((mu_r - mu_b) - f).abs(),
        PhiKind::Kulldorff => {
            let r = mu_r.clamp(KULLDORFF_CLAMP, 1.0 - KULLDORFF_CLAMP);
            let b = mu_b.clamp(KULLDORFF_CLAMP, 1.0 - KULLDORFF_CLAMP);
            r * (r / b).ln() + (1.0 - r) * ((1.0 - r) / (1.0 - b)).ln()
        }
        PhiKind::LineCover { k, red, blue } => red - (mu_r * red - mu_b * blue - k).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng as _, SeedableRng};

    #[test]
    fn examples() {
        assert_eq!(phi_eval(&PhiSpec::discrepancy(), 0.5, 0.5).unwrap(), 0.0);
        assert_eq!(phi_eval(&PhiSpec::balance(0.3), 0.3, 0.0).unwrap(), 1.0);
        let k = phi_eval(&PhiSpec::kulldorff(), 0.5, 0.25).unwrap();
        assert!((k - (0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln())).abs() < 1e-15);
        assert!((k - 0.143841036).abs() < 1e-8);
        assert!(matches!(phi_eval(&PhiSpec::discrepancy(), f64::NAN, 0.0), Err(Error::InvalidMu(..))));
    }

    #[test]
    fn kulldorff_poles_are_finite() {
        let s = PhiSpec::kulldorff();
        for (r, b) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
            assert!(phi_eval(&s, r, b).unwrap().is_finite());
        }
    }

    #[test]
    fn line_cover_counts() {
        // 5 red, 2 blue, k = 2: 3 red and 1 blue inside gives |R|
        let s = PhiSpec::line_cover(2, 5, 2);
        assert_eq!(phi_eval(&s, 0.6, 0.5).unwrap(), 5.0);
        assert_eq!(phi_eval(&s, 1.0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn lipschitz_bounds_hold() {
        let mut rng = crate::rng::Rng::seed_from_u64(7);
        for spec in [PhiSpec::discrepancy(), PhiSpec::signed(), PhiSpec::balance(0.3), PhiSpec::kulldorff()] {
            let (lo, hi) = spec.valid_region();
            for _ in 0..10_000 {
                let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(lo..=hi));
                let d = (spec.eval(p[0], p[1]).unwrap() - spec.eval(p[2], p[3]).unwrap()).abs();
                let bound = spec.lipschitz_c * ((p[0] - p[2]).abs() + (p[1] - p[3]).abs());
                assert!(d <= bound + 1e-12, "{} at {p:?}", spec.name);
            }
        }
    }
}

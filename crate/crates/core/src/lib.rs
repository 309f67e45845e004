//! Approximate halfplane range counting and red/blue discrepancy scanning in
//! the plane.
//!
//! * [`counter`] builds the sampled cutting hierarchy that answers
//!   additive-error halfplane counting queries in `O(log 1/eps)` steps.
//! * [`scan`] maximizes a scoring function of the red and blue range
//!   fractions, either approximately (through two counters) or exactly
//!   (rotational sweep, plus a cubic brute force used as an oracle).
//! * [`reductions`] generates and checks the Line-Covering and
//!   max-weight-triangle instances used for hardness experiments.

pub mod counter;
pub mod cutting;
pub mod error;
pub mod geom;
pub mod reductions;
pub mod rng;
pub mod scan;

pub use counter::{build_index, CounterIndex, CounterParams, CountNode, IndexStats};
pub use cutting::{build_cutting, classify_line, Cutting, LineClass, TrapCell};
pub use error::{Error, Result};
pub use geom::{
    lower_envelope, mu, point_below, Color, DualPoint, Halfplane, LabeledPoint, Line, Side, ToDual,
    WeightedLine, EPS_GEOM,
};
pub use scan::{
    approx_max_halfspace, brute_force_scan, exact_max_halfspace, generate_candidates, phi_eval,
    ApproxParams, PhiKind, PhiShape, PhiSpec, ScanResult, SideFilter,
};

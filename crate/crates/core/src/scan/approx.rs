//! Sampled scanner: candidates from a random subset, fractions from counters.

use rayon::prelude::*;

use super::candidates::{generate_candidates_with, subset_size, CandidateParams};
use super::{PhiSpec, ScanResult, SideFilter, Totals};
use crate::counter::{build_index_for_color, CounterIndex, CounterParams};
use crate::error::{Error, Result};
use crate::geom::{Color, Halfplane, LabeledPoint};
use crate::rng::{derive_rng, derive_seed};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxParams {
    pub c_cand: f64,
    /// Branching constant of the counters.
    pub r: u32,
    /// Root-sample constant of the counters.
    pub c_h: f64,
    /// Failure probability allowed to each counter within a round.
    pub counter_delta: f64,
    /// Overrides `ceil(log2(1/delta))`.
    pub rounds: Option<usize>,
    pub filter: SideFilter,
    pub perturb: bool,
    pub seed: u64,
}

impl Default for ApproxParams {
    fn default() -> Self {
        Self {
            c_cand: 2.0,
            r: 4,
            c_h: 0.5,
            counter_delta: 0.25,
            rounds: None,
            filter: SideFilter::Any,
            perturb: true,
            seed: 0,
        }
    }
}

impl ApproxParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub fn rounds_for(delta: f64) -> usize {
    ((1.0 / delta).log2().ceil() as usize).max(1)
}

struct Round {
    value: f64,
    h: Halfplane,
    mu_r: f64,
    mu_b: f64,
    evaluated: usize,
}

pub fn approx_max_halfspace(
    points: &[LabeledPoint],
    spec: &PhiSpec,
    eps: f64,
    delta: f64,
    params: ApproxParams,
) -> Result<ScanResult> {
    if !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParams(format!("eps = {eps}, delta = {delta} must lie in (0, 1)")));
    }
    let totals = Totals::of(points, spec)?;
    let counter_eps = (eps / (4.0 * spec.lipschitz_c)).min(0.5);
    let cp = CounterParams::new(counter_eps, params.counter_delta)?.with_r(params.r).with_c_h(params.c_h);
    let cand = CandidateParams { c_cand: params.c_cand, filter: params.filter, perturb: params.perturb };

    let mut rounds = params.rounds.unwrap_or_else(|| rounds_for(delta));
    let mut best: Option<Round> = None;
    let mut evaluated = 0;
    let mut done = 0;
    while done < rounds {
        let round = done as u64;
        let red = build_index_for_color(points, Color::Red, cp, derive_seed(params.seed, "red-index", round, 0))?;
        let blue = if totals.blue != 0.0 {
            Some(build_index_for_color(points, Color::Blue, cp, derive_seed(params.seed, "blue-index", round, 0))?)
        } else {
            None
        };
        let mut rng = derive_rng(params.seed, "candidates", round, 0);
        let hs = generate_candidates_with(points, eps, cand, &mut rng);
        let r = best_candidate(&hs, spec, &red, blue.as_ref())?;
        evaluated += r.evaluated;
        if best.as_ref().is_none_or(|b| r.value > b.value) {
            best = Some(r);
        }
        done += 1;
        // with every point a candidate source and exact counts, more rounds repeat the same answer
        let deterministic = subset_size(points.len(), eps, params.c_cand) >= points.len()
            && red.is_exact()
            && blue.as_ref().is_none_or(CounterIndex::is_exact);
        if deterministic && params.rounds.is_none() {
            rounds = done;
        }
    }
    let b = best.expect("at least one round");
    Ok(ScanResult { best_h: b.h, value: b.value, mu_r: b.mu_r, mu_b: b.mu_b, rounds: done, candidates_evaluated: evaluated })
}

fn best_candidate(hs: &[Halfplane], spec: &PhiSpec, red: &CounterIndex, blue: Option<&CounterIndex>) -> Result<Round> {
    let frac = |idx: &CounterIndex, h: &Halfplane| (idx.query(h) / idx.total_mass()).clamp(0.0, 1.0);
    let scored: Vec<Result<(f64, usize, f64, f64)>> = hs
        .par_iter()
        .enumerate()
        .map(|(k, h)| {
            let mu_r = frac(red, h);
            let mu_b = blue.map_or(0.0, |b| frac(b, h));
            Ok((spec.eval(mu_r, mu_b)?, k, mu_r, mu_b))
        })
        .collect();
    let mut top: Option<(f64, usize, f64, f64)> = None;
    for s in scored {
        let s = s?;
        if top.is_none_or(|t| s.0 > t.0) {
            top = Some(s);
        }
    }
    let (value, k, mu_r, mu_b) = top.expect("candidate list is never empty");
    Ok(Round { value, h: hs[k], mu_r, mu_b, evaluated: hs.len() })
}

use std::path::{Path, PathBuf};
use std::time::Instant;

use halfscan::counter::encode_index;
use halfscan::reductions::{
    check_gadget, gen_clique_gadget, gen_line_covering, line_cover_exists, planted_rays, random_rays,
    TripartiteGraph, MAX_WEIGHT_POINT_LIMIT,
};
use halfscan::rng::{derive_rng, derive_seed};
use halfscan::scan::{brute_force_scan_with, exact_max_halfspace_with, BRUTE_FORCE_LIMIT};
use halfscan::{
    approx_max_halfspace, build_index, ApproxParams, Color, CounterIndex, CounterParams, Halfplane, LabeledPoint, Line,
    PhiSpec, Side, SideFilter,
};
use log::{debug, info};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::args::{BenchArgs, Cli, CountArgs, CounterOpts, GenArgs, GenKind, Mode, PhiName, ScanArgs, SideArg};
use crate::io::{self, fmt_f64};
use crate::report::{emit, HalfplaneOut, Percentiles, Report, ScanOut, StatsOut, Versions};
use crate::CliError;

fn check_unit(name: &str, v: f64) -> Result<(), CliError> {
    if !(v > 0.0 && v < 1.0) {
        return Err(CliError::Usage(format!("--{name} must lie in (0, 1), got {v}")));
    }
    Ok(())
}

fn counter_params(o: &CounterOpts) -> Result<CounterParams, CliError> {
    check_unit("eps", o.eps)?;
    check_unit("delta", o.delta)?;
    Ok(CounterParams::new(o.eps, o.delta)?.with_r(o.r).with_c_h(o.c_h))
}

fn nanos(t: Instant) -> u64 {
    t.elapsed().as_nanos() as u64
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

// ---------------------------------------------------------------- scan

#[derive(Serialize)]
struct ScanConfig {
    points: String,
    n: usize,
    mode: &'static str,
    phi: &'static str,
    f: Option<f64>,
    k: Option<usize>,
    side: &'static str,
    eps: f64,
    delta: f64,
    r: u32,
    c_h: f64,
    c_cand: f64,
    rounds: Option<usize>,
    seed: u64,
}

#[derive(Serialize)]
struct ScanTimings {
    scan_ns: u64,
}

fn filter_name(f: SideFilter) -> &'static str {
    match f {
        SideFilter::Any => "any",
        SideFilter::BelowOnly => "below",
        SideFilter::AboveOnly => "above",
    }
}

fn count_color(points: &[LabeledPoint], c: Color) -> usize {
    points.iter().filter(|p| p.color == c).count()
}

pub fn scan(cli: &Cli, a: &ScanArgs) -> Result<(), CliError> {
    let points = io::read_points(&a.points)?;
    info!("scan: {} points from {}", points.len(), a.points.display());
    let spec = match a.phi {
        PhiName::Disc => PhiSpec::discrepancy(),
        PhiName::Signed => PhiSpec::signed(),
        PhiName::Balance => PhiSpec::balance(a.f),
        PhiName::Kulldorff => PhiSpec::kulldorff(),
        PhiName::LineCover => {
            let k = a.k.ok_or_else(|| CliError::Usage("--phi line-cover needs --k".into()))?;
            PhiSpec::line_cover(k, count_color(&points, Color::Red), count_color(&points, Color::Blue))
        }
    };
    let filter = match a.side {
        Some(SideArg::Any) => SideFilter::Any,
        Some(SideArg::Below) => SideFilter::BelowOnly,
        Some(SideArg::Above) => SideFilter::AboveOnly,
        None if a.phi == PhiName::LineCover => SideFilter::BelowOnly,
        None => SideFilter::Any,
    };
    let t = Instant::now();
    let (mode, result) = match a.mode {
        Mode::Exact => ("exact", exact_max_halfspace_with(&points, &spec, filter)?),
        Mode::Brute => {
            if points.len() > BRUTE_FORCE_LIMIT {
                return Err(CliError::Guard(format!(
                    "brute force is limited to {BRUTE_FORCE_LIMIT} points, input has {}",
                    points.len()
                )));
            }
            ("brute", brute_force_scan_with(&points, &spec, filter)?)
        }
        Mode::Approx => {
            check_unit("eps", a.counter.eps)?;
            check_unit("delta", a.counter.delta)?;
            let params = ApproxParams {
                c_cand: a.c_cand,
                r: a.counter.r,
                c_h: a.counter.c_h,
                rounds: a.rounds,
                filter,
                seed: derive_seed(cli.seed, "scan", 0, 0),
                ..ApproxParams::default()
            };
            ("approx", approx_max_halfspace(&points, &spec, a.counter.eps, a.counter.delta, params)?)
        }
    };
    let scan_ns = nanos(t);
    debug!("scan finished in {scan_ns} ns");
    let report = Report {
        command: "scan",
        config: ScanConfig {
            points: path_str(&a.points),
            n: points.len(),
            mode,
            phi: spec.name,
            f: (a.phi == PhiName::Balance).then_some(a.f),
            k: a.k,
            side: filter_name(filter),
            eps: a.counter.eps,
            delta: a.counter.delta,
            r: a.counter.r,
            c_h: a.counter.c_h,
            c_cand: a.c_cand,
            rounds: a.rounds,
            seed: cli.seed,
        },
        result: ScanOut::from(&result),
        timings: ScanTimings { scan_ns },
        versions: Versions::default(),
    };
    emit(&report, cli.out.as_deref())
}

// ---------------------------------------------------------------- count

#[derive(Serialize)]
struct CountConfig {
    points: String,
    queries: String,
    color: Option<String>,
    n: usize,
    total_mass: f64,
    eps: f64,
    delta: f64,
    r: u32,
    c_h: f64,
    leaf_cap: usize,
    oracle: bool,
    seed: u64,
}

#[derive(Serialize)]
struct QueryOut {
    halfplane: HalfplaneOut,
    estimate: f64,
    exact: Option<f64>,
    error: Option<f64>,
    visits: usize,
}

#[derive(Serialize)]
struct ErrorSummary {
    max_error: f64,
    mean_error: f64,
    max_error_over_n: f64,
    within_eps: bool,
}

#[derive(Serialize)]
struct CountResult {
    queries: usize,
    max_visits: usize,
    max_leaf_scan: usize,
    stats: StatsOut,
    errors: Option<ErrorSummary>,
    estimates: Option<Vec<QueryOut>>,
}

#[derive(Serialize)]
struct CountTimings {
    build_ns: u64,
    query_ns: Percentiles,
    oracle_ns: Option<u64>,
}

fn exact_mass(points: &[LabeledPoint], h: &Halfplane) -> f64 {
    points.iter().filter(|p| h.contains(p.x, p.y)).map(|p| p.weight).sum()
}

fn build_timed(points: &[LabeledPoint], params: CounterParams, seed: u64) -> Result<(CounterIndex, u64), CliError> {
    let t = Instant::now();
    let idx = build_index(points, params, seed)?;
    Ok((idx, nanos(t)))
}

pub fn count(cli: &Cli, a: &CountArgs) -> Result<(), CliError> {
    let params = counter_params(&a.counter)?;
    let mut points = io::read_points(&a.points)?;
    if let Some(c) = &a.color {
        let color = io::parse_color(c).ok_or_else(|| CliError::Usage(format!("--color must be R or B, got {c}")))?;
        points.retain(|p| p.color == color);
    }
    let queries = io::read_queries(&a.queries)?;
    let (idx, build_ns) = build_timed(&points, params, derive_seed(cli.seed, "count-index", 0, 0))?;
    info!("count: index over {} points, {} levels, {} nodes", points.len(), idx.levels(), idx.nodes().len());
    if let Some(p) = &a.save_index {
        std::fs::write(p, encode_index(&idx)).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }

    let mut times = Vec::with_capacity(queries.len());
    let mut answers = Vec::with_capacity(queries.len());
    for h in &queries {
        let t = Instant::now();
        let traced = idx.query_traced(h);
        times.push(nanos(t));
        answers.push(traced);
    }
    let (oracle, oracle_ns) = if a.oracle {
        let t = Instant::now();
        let exact: Vec<f64> = queries.iter().map(|h| exact_mass(&points, h)).collect();
        (Some(exact), Some(nanos(t)))
    } else {
        (None, None)
    };

    let total = idx.total_mass();
    let errors = oracle.as_ref().map(|ex| {
        let errs: Vec<f64> = answers.iter().zip(ex).map(|(a, e)| (a.0 - e).abs()).collect();
        let max_error = errs.iter().copied().fold(0.0, f64::max);
        let mean_error = if errs.is_empty() { 0.0 } else { errs.iter().sum::<f64>() / errs.len() as f64 };
        ErrorSummary {
            max_error,
            mean_error,
            max_error_over_n: max_error / total,
            within_eps: max_error <= params.eps * total,
        }
    });
    let estimates = a.per_query.then(|| {
        queries
            .iter()
            .zip(&answers)
            .enumerate()
            .map(|(i, (h, ans))| {
                let exact = oracle.as_ref().map(|ex| ex[i]);
                QueryOut {
                    halfplane: h.into(),
                    estimate: ans.0,
                    exact,
                    error: exact.map(|e| (ans.0 - e).abs()),
                    visits: ans.1,
                }
            })
            .collect()
    });
    let report = Report {
        command: "count",
        config: CountConfig {
            points: path_str(&a.points),
            queries: path_str(&a.queries),
            color: a.color.clone(),
            n: points.len(),
            total_mass: total,
            eps: params.eps,
            delta: params.delta,
            r: params.r,
            c_h: params.c_h,
            leaf_cap: params.leaf_cap,
            oracle: a.oracle,
            seed: cli.seed,
        },
        result: CountResult {
            queries: queries.len(),
            max_visits: answers.iter().map(|a| a.1).max().unwrap_or(0),
            max_leaf_scan: answers.iter().map(|a| a.2).max().unwrap_or(0),
            stats: StatsOut::new(&idx.stats(), idx.level_size_violations().len()),
            errors,
            estimates,
        },
        timings: CountTimings { build_ns, query_ns: Percentiles::of(times), oracle_ns },
        versions: Versions::default(),
    };
    emit(&report, cli.out.as_deref())
}

// ---------------------------------------------------------------- gen

#[derive(Serialize)]
struct GenReport<M: Serialize> {
    command: &'static str,
    kind: &'static str,
    seed: u64,
    files: Vec<String>,
    meta: M,
    versions: Versions,
}

fn gen_report<M: Serialize>(cli: &Cli, kind: &'static str, files: Vec<&PathBuf>, meta: M) -> Result<(), CliError> {
    let r = GenReport {
        command: "gen",
        kind,
        seed: cli.seed,
        files: files.into_iter().map(|p| path_str(p)).collect(),
        meta,
        versions: Versions::default(),
    };
    // the data file already took --out; the summary goes to stdout
    emit(&r, None)
}

#[derive(Serialize)]
struct UniformMeta {
    n: usize,
    red: usize,
    blue: usize,
}

#[derive(Serialize)]
struct PlantedMeta {
    n: usize,
    red: usize,
    blue: usize,
    planted: HalfplaneOut,
    mu_r: f64,
    mu_b: f64,
    gap: f64,
}

#[derive(Serialize)]
struct LineCoverMeta {
    m: usize,
    k: usize,
    up: usize,
    down: usize,
    red: usize,
    blue: usize,
    shifted: usize,
    shift: f64,
    planted_line: Option<(f64, f64)>,
    cover_exists: Option<bool>,
}

#[derive(Serialize)]
struct GadgetMeta {
    n: usize,
    lines: usize,
    alpha: f64,
    theta: f64,
    w_bar: f64,
    check: Option<GadgetCheckOut>,
}

#[derive(Serialize)]
struct GadgetCheckOut {
    max_weight: f64,
    max_triangle: f64,
    expected: f64,
    max_matches: bool,
    intended_triples: usize,
    unintended_triples: usize,
    worst_non_triple: f64,
    non_triple_below_half: bool,
    non_triple_below_best_triple: bool,
}

fn require_out(cli: &Cli) -> Result<&PathBuf, CliError> {
    cli.out.as_ref().ok_or_else(|| CliError::Usage("gen needs --out".into()))
}

/// Uniform points; inside a random line through the square's center `s` of the
/// points are red, outside `1 - s`, with `s` raised until the gap is reached.
fn planted(n: usize, gap: f64, seed: u64) -> Result<(Vec<LabeledPoint>, Halfplane, f64, f64), CliError> {
    if !(0.0..1.0).contains(&gap) {
        return Err(CliError::Usage(format!("--gap must lie in [0, 1), got {gap}")));
    }
    if n < 4 {
        return Err(CliError::Usage("planted instances need n >= 4".into()));
    }
    let mut rng = derive_rng(seed, "gen-planted", 0, 0);
    let slope = rng.gen_range(-1.0..1.0);
    let h = Halfplane::new(Line::new(slope, 0.5 - 0.5 * slope), Side::Below);
    let xy: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect();
    let mut inside: Vec<usize> = (0..n).filter(|&i| h.contains(xy[i].0, xy[i].1)).collect();
    let mut outside: Vec<usize> = (0..n).filter(|&i| !h.contains(xy[i].0, xy[i].1)).collect();
    inside.shuffle(&mut rng);
    outside.shuffle(&mut rng);
    let (ni, no) = (inside.len(), outside.len());
    // realized gap for r_in red inside and r_out red outside
    let gap_of = |r_in: usize, r_out: usize| -> Option<f64> {
        let (b_in, b_out) = (ni - r_in, no - r_out);
        if r_in + r_out == 0 || b_in + b_out == 0 {
            return None;
        }
        Some(r_in as f64 / (r_in + r_out) as f64 - b_in as f64 / (b_in + b_out) as f64)
    };
    let mut s = (1.0 + gap) / 2.0;
    let (r_in, r_out, got) = loop {
        let r_in = ((s * ni as f64).round() as usize).min(ni);
        let r_out = (((1.0 - s) * no as f64).round() as usize).min(no);
        match gap_of(r_in, r_out) {
            Some(g) if g >= gap => break (r_in, r_out, g),
            _ if s >= 1.0 => {
                return Err(CliError::Usage(format!("cannot plant gap {gap} with n = {n}")));
            }
            _ => s = (s + 1.0 / n as f64).min(1.0),
        }
    };
    let mut color = vec![Color::Blue; n];
    for &i in inside.iter().take(r_in).chain(outside.iter().take(r_out)) {
        color[i] = Color::Red;
    }
    let points: Vec<LabeledPoint> = xy.iter().zip(&color).map(|(&(x, y), &c)| LabeledPoint::new(x, y, c)).collect();
    let red = (r_in + r_out) as f64;
    let mu_r = r_in as f64 / red;
    Ok((points, h, mu_r, mu_r - got))
}

pub fn gen(cli: &Cli, a: &GenArgs) -> Result<(), CliError> {
    match &a.kind {
        GenKind::Uniform { n, red_frac } => {
            let out = require_out(cli)?;
            if !(0.0..=1.0).contains(red_frac) {
                return Err(CliError::Usage(format!("--red-frac must lie in [0, 1], got {red_frac}")));
            }
            let mut rng = derive_rng(cli.seed, "gen-uniform", 0, 0);
            let points: Vec<LabeledPoint> = (0..*n)
                .map(|_| {
                    let (x, y) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
                    let c = if rng.gen_bool(*red_frac) { Color::Red } else { Color::Blue };
                    LabeledPoint::new(x, y, c)
                })
                .collect();
            io::write_points(out, &points)?;
            let red = count_color(&points, Color::Red);
            gen_report(cli, "uniform", vec![out], UniformMeta { n: *n, red, blue: n - red })
        }
        GenKind::Planted { n, gap } => {
            let out = require_out(cli)?;
            let (points, h, mu_r, mu_b) = planted(*n, *gap, cli.seed)?;
            io::write_points(out, &points)?;
            let red = count_color(&points, Color::Red);
            let meta =
                PlantedMeta { n: *n, red, blue: n - red, planted: (&h).into(), mu_r, mu_b, gap: mu_r - mu_b };
            gen_report(cli, "planted", vec![out], meta)
        }
        GenKind::LineCovering { m, k, planted, points_out } => {
            let out = require_out(cli)?;
            let mut rng = derive_rng(cli.seed, "gen-line-covering", 0, 0);
            let (rays, line) = if *planted {
                if *k > *m {
                    return Err(CliError::Usage(format!("--k {k} exceeds --m {m}")));
                }
                let (r, l) = planted_rays(*m, *k, &mut rng);
                (r, Some((l.a, l.b)))
            } else {
                (random_rays(*m, &mut rng), None)
            };
            let inst = gen_line_covering(&rays, *k)?;
            io::write_rays(out, &rays)?;
            let mut files = vec![out];
            if let Some(p) = points_out {
                io::write_points(p, &inst.points)?;
                files.push(p);
            }
            let up = rays.iter().filter(|r| r.dir == halfscan::reductions::RayDir::Up).count();
            let meta = LineCoverMeta {
                m: *m,
                k: *k,
                up,
                down: m - up,
                red: inst.red,
                blue: inst.blue,
                shifted: inst.shifted.len(),
                shift: inst.shift,
                planted_line: line,
                cover_exists: (*m <= BRUTE_FORCE_LIMIT).then(|| line_cover_exists(&rays, *k)),
            };
            gen_report(cli, "line-covering", files, meta)
        }
        GenKind::CliqueGadget { n, max_w, graph, graph_out, check } => {
            let out = require_out(cli)?;
            let g = match graph {
                Some(p) => io::read_graph(p)?,
                None => {
                    if *n == 0 || *max_w < 0 {
                        return Err(CliError::Usage("--n must be positive and --max-w non-negative".into()));
                    }
                    TripartiteGraph::random(*n, *max_w, &mut derive_rng(cli.seed, "gen-graph", 0, 0))
                }
            };
            let inst = gen_clique_gadget(&g);
            io::write_gadget(out, &inst.lines)?;
            let mut files = vec![out];
            if let Some(p) = graph_out {
                io::write_graph(p, &g)?;
                files.push(p);
            }
            let check = if *check {
                if inst.lines.len() > MAX_WEIGHT_POINT_LIMIT {
                    return Err(CliError::Guard(format!(
                        "max-weight point search is limited to {MAX_WEIGHT_POINT_LIMIT} lines, gadget has {}",
                        inst.lines.len()
                    )));
                }
                let c = check_gadget(&g, &inst)?;
                Some(GadgetCheckOut {
                    max_weight: c.max_weight,
                    max_triangle: c.max_triangle,
                    expected: c.expected,
                    max_matches: c.max_matches,
                    intended_triples: c.intended_triples,
                    unintended_triples: c.unintended_triples,
                    worst_non_triple: c.worst_non_triple,
                    non_triple_below_half: c.non_triple_below_half,
                    non_triple_below_best_triple: c.non_triple_below_best_triple,
                })
            } else {
                None
            };
            let meta = GadgetMeta {
                n: g.n,
                lines: inst.lines.len(),
                alpha: inst.alpha,
                theta: inst.theta,
                w_bar: inst.w_bar,
                check,
            };
            gen_report(cli, "clique-gadget", files, meta)
        }
    }
}

// ---------------------------------------------------------------- bench

#[derive(Serialize)]
struct BenchConfig {
    points: Option<String>,
    n: usize,
    eps: Vec<f64>,
    delta: f64,
    r: u32,
    c_h: f64,
    reps: usize,
    queries: usize,
    seed: u64,
}

#[derive(Serialize)]
struct BenchRow {
    eps: f64,
    rep: usize,
    build_seed: u64,
    levels: usize,
    nodes: usize,
    root_sample: usize,
    exact: bool,
    max_error: f64,
    mean_error: f64,
    max_error_over_n: f64,
    build_ns: u64,
    query_ns: Percentiles,
}

#[derive(Serialize)]
struct BenchResult {
    rows: Vec<BenchRowPayload>,
}

/// The seed-determined part of a row.
#[derive(Serialize)]
struct BenchRowPayload {
    eps: f64,
    rep: usize,
    levels: usize,
    nodes: usize,
    root_sample: usize,
    exact: bool,
    max_error: f64,
    mean_error: f64,
}

#[derive(Serialize)]
struct BenchTimings {
    rows: Vec<BenchTimingRow>,
}

#[derive(Serialize)]
struct BenchTimingRow {
    eps: f64,
    rep: usize,
    build_ns: u64,
    query_ns: Percentiles,
}

fn random_query(rng: &mut impl Rng, lo: (f64, f64), hi: (f64, f64)) -> Halfplane {
    let x = rng.gen_range(lo.0..=hi.0);
    let y = rng.gen_range(lo.1..=hi.1);
    let a: f64 = rng.gen_range(-3.0..3.0);
    let side = if rng.gen_bool(0.5) { Side::Below } else { Side::Above };
    Halfplane::new(Line::new(a, y - a * x), side)
}

pub fn bench(cli: &Cli, a: &BenchArgs) -> Result<(), CliError> {
    check_unit("delta", a.delta)?;
    for &e in &a.eps {
        check_unit("eps", e)?;
    }
    let points = match &a.points {
        Some(p) => io::read_points(p)?,
        None => {
            let mut rng = derive_rng(cli.seed, "bench-points", 0, 0);
            (0..a.n).map(|_| LabeledPoint::red(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect()
        }
    };
    if points.is_empty() {
        return Err(halfscan::Error::EmptyDataset.into());
    }
    let lo = points.iter().fold((f64::INFINITY, f64::INFINITY), |m, p| (m.0.min(p.x), m.1.min(p.y)));
    let hi = points.iter().fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |m, p| (m.0.max(p.x), m.1.max(p.y)));

    let mut rows = Vec::new();
    for (ei, &eps) in a.eps.iter().enumerate() {
        let params = CounterParams::new(eps, a.delta)?.with_r(a.r).with_c_h(a.c_h);
        for rep in 0..a.reps {
            let build_seed = derive_seed(cli.seed, "bench-build", ei as u64, rep as u64);
            let (idx, build_ns) = build_timed(&points, params, build_seed)?;
            let mut rng = derive_rng(cli.seed, "bench-queries", ei as u64, rep as u64);
            let qs: Vec<Halfplane> = (0..a.queries).map(|_| random_query(&mut rng, lo, hi)).collect();
            let mut times = Vec::with_capacity(qs.len());
            let mut max_error = 0.0f64;
            let mut sum_error = 0.0;
            for h in &qs {
                let t = Instant::now();
                let est = idx.query(h);
                times.push(nanos(t));
                let err = (est - exact_mass(&points, h)).abs();
                max_error = max_error.max(err);
                sum_error += err;
            }
            let stats = idx.stats();
            info!("bench eps {eps} rep {rep}: {} nodes, build {build_ns} ns", stats.nodes);
            rows.push(BenchRow {
                eps,
                rep,
                build_seed,
                levels: stats.levels,
                nodes: stats.nodes,
                root_sample: stats.root_sample,
                exact: stats.exact,
                max_error,
                mean_error: if qs.is_empty() { 0.0 } else { sum_error / qs.len() as f64 },
                max_error_over_n: max_error / idx.total_mass(),
                build_ns,
                query_ns: Percentiles::of(times),
            });
        }
    }

    if let Some(path) = &a.csv {
        let header = [
            "eps", "rep", "build_seed", "n", "levels", "nodes", "root_sample", "exact", "max_error", "mean_error",
            "max_error_over_n", "build_ns", "query_ns_p50", "query_ns_p99", "query_ns_mean",
        ];
        let flat: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    fmt_f64(r.eps),
                    r.rep.to_string(),
                    r.build_seed.to_string(),
                    points.len().to_string(),
                    r.levels.to_string(),
                    r.nodes.to_string(),
                    r.root_sample.to_string(),
                    r.exact.to_string(),
                    fmt_f64(r.max_error),
                    fmt_f64(r.mean_error),
                    fmt_f64(r.max_error_over_n),
                    r.build_ns.to_string(),
                    r.query_ns.p50.to_string(),
                    r.query_ns.p99.to_string(),
                    fmt_f64(r.query_ns.mean),
                ]
            })
            .collect();
        io::write_rows(path, &header, &flat)?;
    }

    let report = Report {
        command: "bench",
        config: BenchConfig {
            points: a.points.as_deref().map(path_str),
            n: points.len(),
            eps: a.eps.clone(),
            delta: a.delta,
            r: a.r,
            c_h: a.c_h,
            reps: a.reps,
            queries: a.queries,
            seed: cli.seed,
        },
        result: BenchResult {
            rows: rows
                .iter()
                .map(|r| BenchRowPayload {
                    eps: r.eps,
                    rep: r.rep,
                    levels: r.levels,
                    nodes: r.nodes,
                    root_sample: r.root_sample,
                    exact: r.exact,
                    max_error: r.max_error,
                    mean_error: r.mean_error,
                })
                .collect(),
        },
        timings: BenchTimings {
            rows: rows
                .iter()
                .map(|r| BenchTimingRow { eps: r.eps, rep: r.rep, build_ns: r.build_ns, query_ns: r.query_ns.clone() })
                .collect(),
        },
        versions: Versions::default(),
    };
    emit(&report, cli.out.as_deref())
}

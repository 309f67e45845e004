use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "halfscan", version, about = "Approximate halfplane counting and red/blue discrepancy scanning")]
pub struct Cli {
    /// Worker threads for index builds and candidate evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Run seed; every random stream is derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maximize a score of the red and blue range fractions over halfplanes.
    Scan(ScanArgs),
    /// Build a counting index and answer a file of halfplane queries.
    Count(CountArgs),
    /// Write synthetic instances.
    Gen(GenArgs),
    /// Sweep eps over a grid and time index builds and queries.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CounterOpts {
    /// Additive error, as a fraction of the input size.
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    /// Failure probability.
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Branching constant of the cutting hierarchy.
    #[arg(long, default_value_t = 4)]
    pub r: u32,
    /// Root-sample constant.
    #[arg(long = "c-h", default_value_t = 0.5)]
    pub c_h: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Approx,
    Exact,
    Brute,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiName {
    Disc,
    Signed,
    Balance,
    Kulldorff,
    LineCover,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Any,
    Below,
    Above,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Point CSV (`x,y,color,weight`).
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Approx)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = PhiName::Disc)]
    pub phi: PhiName,
    /// Target offset `f` of the balance score.
    #[arg(long, default_value_t = 0.3)]
    pub f: f64,
    /// Cover size for the line-covering score.
    #[arg(long)]
    pub k: Option<usize>,
    /// Halfplane orientations considered (line-cover defaults to below).
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    #[command(flatten)]
    pub counter: CounterOpts,
    /// Candidate subset constant: the subset has ceil(c_cand/eps) points.
    #[arg(long = "c-cand", default_value_t = 2.0)]
    pub c_cand: f64,
    /// Overrides ceil(log2(1/delta)) repetitions.
    #[arg(long)]
    pub rounds: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Point CSV (`x,y,color,weight`); weights must be positive integers.
    #[arg(long)]
    pub points: PathBuf,
    /// Query CSV (`a,b,side`), side in {below, above}.
    #[arg(long)]
    pub queries: PathBuf,
    /// Only index points of this color (R or B).
    #[arg(long)]
    pub color: Option<String>,
    /// Also compute exact counts and report errors.
    #[arg(long)]
    pub oracle: bool,
    /// List every estimate in the report.
    #[arg(long)]
    pub per_query: bool,
    /// Save the built index in binary form.
    #[arg(long)]
    pub save_index: Option<PathBuf>,
    #[command(flatten)]
    pub counter: CounterOpts,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Uniform points in the unit square with random colors.
    Uniform {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Probability that a point is red.
        #[arg(long, default_value_t = 0.5)]
        red_frac: f64,
    },
    /// Uniform points with a halfplane whose red/blue fractions differ by at least `gap`.
    Planted {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        gap: f64,
    },
    /// Rays (`x,y,dir`) and the corresponding red/blue point instance.
    LineCovering {
        #[arg(long, default_value_t = 20)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Guarantee a line cutting exactly k rays.
        #[arg(long)]
        planted: bool,
        /// Where to write the point instance.
        #[arg(long)]
        points_out: Option<PathBuf>,
    },
    /// Weighted lines (`a,b,weight`) encoding a tripartite graph.
    CliqueGadget {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Edge weights are drawn from [-max_w, max_w].
        #[arg(long, default_value_t = 10)]
        max_w: i64,
        /// Read the graph (`part1,idx1,part2,idx2,weight`) instead of drawing one.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Where to write the graph that was used.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Locate the max-weight point and compare with the max triangle.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Point CSV; uniform points are drawn when absent.
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05")]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 4)]
    pub r: u32,
    #[arg(long = "c-h", default_value_t = 0.5)]
    pub c_h: f64,
    /// Builds per eps value.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    /// Random queries per build.
    #[arg(long, default_value_t = 1000)]
    pub queries: usize,
    /// Flat per-(eps, seed) CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use divlab::Rational;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "divlab", version, about = "Constructions, formulas and exhaustive checks for intersecting families")]
pub struct Cli {
    /// Emit the JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report elapsed_ms as 0 so output is byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Write a run manifest to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named family and write it as JSON.
    Construct(ConstructArgs),
    /// Size, maximum degree and diversity of a family file.
    Measure(MeasureArgs),
    /// Check one bound against a family file.
    Verify(VerifyArgs),
    /// Search for families maximizing C-diversity.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Locate the stability triple and evaluate the stability bounds.
    Stability(StabilityArgs),
    /// Exhaustive checks of the cross-intersecting lemmas.
    #[command(subcommand)]
    Lemma(LemmaCommand),
    /// Run the grid checks listed in a JSON config.
    Sweep(SweepArgs),
    /// Re-run a recorded manifest and compare results.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Star,
    Fi,
    Triangle,
    Uvw,
    UvwStar,
    Lex,
    FanoL,
    FanoLplus,
    ExampleT,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub family: FamilyKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Index for `fi` (3 ≤ i ≤ k+1).
    #[arg(long)]
    pub i: Option<usize>,
    /// Triple `u,v,w` (1-indexed) for `uvw` and `uvw-star`.
    #[arg(long)]
    pub t: Option<String>,
    /// Prefix length for `lex`.
    #[arg(long)]
    pub m: Option<u64>,
    /// Kernels for `example-t`: inline JSON such as `[[4,5],[4,5],[4,5]]` or a file holding it.
    #[arg(long)]
    pub kernels: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub c: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of ekr, hm, frankl, diversity, fw2, fw3, diversity-conj, main, rho-lower.
    #[arg(long)]
    pub theorem: String,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub c: Option<Rational>,
    #[arg(long)]
    pub family: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Maximize |F| - C·Δ(F) over intersecting k-uniform families.
    MaxCdiv(MaxCdivArgs),
}

#[derive(Debug, Args)]
pub struct MaxCdivArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub c: Rational,
    #[arg(long, conflicts_with = "heuristic")]
    pub exact: bool,
    #[arg(long)]
    pub heuristic: bool,
    /// Node budget (exact) or move budget (heuristic).
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, requires = "heuristic")]
    pub seed: Option<u64>,
    /// Empty-start restarts in heuristic mode.
    #[arg(long, requires = "heuristic")]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Allow exact search beyond the default size guard.
    #[arg(long)]
    pub override_guard: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Auto,
    Exhaustive,
    Shortlist,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    pub file: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    #[arg(long, default_value = "auto")]
    pub scan: ScanKind,
    /// Shortlist size for `--scan shortlist`.
    #[arg(long, default_value_t = divlab::search::stability::SHORTLIST)]
    pub shortlist: usize,
}

#[derive(Debug, Subcommand)]
pub enum LemmaCommand {
    /// Exhaustive cross-intersecting check on [m] with ℓ-sets.
    Fk(FkArgs),
    /// Lex families against arbitrary cross-intersecting pairs.
    Hilton(HiltonArgs),
    /// Largest family cross-intersecting the lex prefix of a given size.
    CrossMax(CrossMaxArgs),
    /// Triple-existence conclusion for a maximum-degree point u and a point v.
    Key2(Key2Args),
}

#[derive(Debug, Args)]
pub struct FkArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub override_guard: bool,
}

#[derive(Debug, Args)]
pub struct HiltonArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long, conflicts_with = "trials")]
    pub exhaustive: bool,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CrossMaxArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long)]
    pub size_a: u64,
    /// Compare against the bound for a family containing every a-set meeting [d].
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Key2Args {
    pub file: PathBuf,
    /// 1-indexed.
    #[arg(long)]
    pub u: usize,
    /// 1-indexed.
    #[arg(long)]
    pub v: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub config: PathBuf,
    /// Print the rows as CSV instead of the report.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

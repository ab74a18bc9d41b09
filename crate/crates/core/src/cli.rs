//! The `mcrank` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complete::{chordal_complete_fp, chordal_complete_real, lowrank_fit, sym_lowrank_fit, CompletedEntries, CompletionResult, FitOptions};
use crate::error::{Error, Result};
use crate::ffmat::PrimeField;
use crate::gcr::{build_circulant_certificate, gcr, sgcr, verify_partition_certificate, GcrOptions, GcrReport, VotePolicy};
use crate::io::{pattern_to_json, read_pattern, PartialData};
use crate::pattern::{circulant, crown, cube, cycle, generate, join_family, random_tree, triangular, BipartitePattern, Pattern, DEFAULT_BICLIQUE_BUDGET};
use crate::typical::{cube_typical_sample, gn_report, gn_sgcr_formula, knk1_cross_check, knk1_typical_sample, typical_scan, TypicalSampleReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Everything that makes a run reproducible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub prime: u64,
    pub votes: usize,
    pub policy: VotePolicy,
    pub threads: Option<usize>,
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub format: Format,
    pub biclique_budget: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let fit = FitOptions::default();
        Self {
            seed: 0,
            prime: PrimeField::default().modulus(),
            votes: 3,
            // the command line treats any split vote as a failure
            policy: VotePolicy::Unanimous,
            threads: None,
            restarts: fit.restarts,
            max_iters: fit.max_iters,
            tol: fit.tol,
            format: Format::Json,
            biclique_budget: DEFAULT_BICLIQUE_BUDGET,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidParams {
                family: "config".into(),
                reason: reason.into(),
            })
        };
        if self.votes == 0 || self.restarts == 0 || self.max_iters == 0 || self.biclique_budget == 0 || self.threads == Some(0) {
            return bad("numeric options must be positive");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol must be a positive number");
        }
        PrimeField::new(self.prime)?;
        Ok(())
    }

    pub fn gcr_options(&self) -> Result<GcrOptions> {
        Ok(GcrOptions {
            field: PrimeField::new(self.prime)?,
            policy: self.policy,
            biclique_budget: self.biclique_budget,
            ..GcrOptions::with_master_seed(self.seed, self.votes)
        })
    }

    pub fn fit_options(&self) -> FitOptions {
        FitOptions {
            restarts: self.restarts,
            max_iters: self.max_iters,
            tol: self.tol,
            seed: self.seed,
            stop_on_success: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mcrank", version, about = "Generic and typical completion ranks of partial-matrix patterns")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with RunConfig fields; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, env = "MCRANK_SEED")]
    pub seed: Option<u64>,
    #[arg(long, global = true, env = "MCRANK_PRIME")]
    pub prime: Option<u64>,
    /// Number of random points per rank decision.
    #[arg(long, global = true)]
    pub votes: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Random restarts for the low-rank fitter.
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    /// Relative residual below which a fit counts as a completion.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (a directory for `report`); stdout otherwise.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a member of a named pattern family.
    Gen {
        family: String,
        params: Vec<usize>,
    },
    /// Generic completion rank with bounds and the tangent-space evidence.
    Gcr { pattern: PathBuf },
    /// Check a partition certificate for `gcr = r`.
    Certify {
        pattern: Option<PathBuf>,
        #[arg(long)]
        rank: Option<usize>,
        /// JSON {"rows": [[...], ...], "cols": [[...], ...]}.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Build and check the certificate for G(n, n - k^2/n).
        #[arg(long, num_args = 2, value_names = ["N", "K"], conflicts_with_all = ["pattern", "partition"])]
        circulant: Option<Vec<usize>>,
    },
    /// Complete a partial matrix.
    Complete {
        partial: PathBuf,
        #[arg(long, conflicts_with = "chordal")]
        rank: Option<usize>,
        #[arg(long)]
        chordal: bool,
    },
    /// Monte Carlo over random data on a pattern.
    Sample {
        pattern: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Scan a pattern file at this rank and the one below.
        #[arg(long, conflicts_with_all = ["cube", "knk1", "gn"])]
        rank: Option<usize>,
        /// Cube pattern, classified by its discriminant.
        #[arg(long, conflicts_with_all = ["knk1", "gn", "pattern"])]
        cube: bool,
        /// Full n x n block plus one free diagonal entry.
        #[arg(long, conflicts_with_all = ["gn", "pattern"])]
        knk1: Option<usize>,
        /// Closed-form report for the symmetric join family G_n.
        #[arg(long, conflicts_with = "pattern")]
        gn: Option<usize>,
        /// For --knk1: re-decide this many trials with the optimizer.
        #[arg(long, requires = "knk1")]
        cross_check: Option<usize>,
        /// Also write the per-trial records as CSV.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Reproduce the closed-form rank tables.
    Report {
        #[arg(long, required = true)]
        paper_tables: bool,
        /// Comma-separated subset of the table groups (default: all).
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
    },
}

/// Exit status for an error: 1 for usage and I/O, 2 for mathematical
/// failures, 3 for split randomized decisions.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SeedDisagreement { .. } => 3,
        Error::Certificate(_)
        | Error::EdgeCount { .. }
        | Error::NotChordal
        | Error::VanishingMinor { .. }
        | Error::FitPrecondition(_)
        | Error::InconsistentSystem
        | Error::DegenerateDraw { .. }
        | Error::BudgetExceeded { .. }
        | Error::BoundaryCase(_)
        | Error::InvalidGlue(_) => 2,
        _ => 1,
    }
}

/// A command's result: what to print and the exit status.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn load_config(args: &GlobalArgs) -> Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => toml::from_str(&fs::read_to_string(path)?).map_err(|e| Error::Parse(e.to_string()))?,
        None => RunConfig::default(),
    };
    macro_rules! take {
        ($($f:ident),*) => { $( if let Some(v) = args.$f { cfg.$f = v; } )* };
    }
    take!(seed, prime, votes, restarts, tol, format);
    if args.threads.is_some() {
        cfg.threads = args.threads;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports always serialize") + "\n"
}

fn no_csv(cmd: &str) -> Error {
    Error::InvalidParams {
        family: cmd.into(),
        reason: "csv output is not available for this command".into(),
    }
}

fn usage(cmd: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        family: cmd.into(),
        reason: reason.into(),
    }
}

fn cmd_gen(cfg: &RunConfig, family: &str, params: &[usize]) -> Result<Outcome> {
    let p = generate(family, params, Some(cfg.seed))?;
    Ok(Outcome::ok(match (cfg.format, &p) {
        (Format::Text, Pattern::Bipartite(b)) => b.to_mask_string(),
        (Format::Csv, _) => return Err(no_csv("gen")),
        _ => pattern_to_json(&p),
    }))
}

fn gcr_text(r: &GcrReport, what: &str) -> String {
    let b = &r.bounds;
    let biclique = b.biclique_bound.map_or("budget exceeded".to_string(), |v| v.to_string());
    let mut s = format!("{what} = {}\ndimension bound = {}\nbiclique bound = {biclique}\n", r.gcr, b.dimension_bound);
    if let Some(c) = b.core_mtr_bound {
        s += &format!("max typical rank <= {c} (core)\n");
    }
    if let Some(u) = b.mtr_upper {
        s += &format!("max typical rank <= {u} (2 gcr - 1)\n");
    }
    for t in &r.tangent {
        s += &format!("r = {}: image dimension {}, surjective {}\n", t.r, t.dim_image, t.surjective);
    }
    s
}

fn cmd_gcr(cfg: &RunConfig, path: &Path) -> Result<Outcome> {
    let opts = cfg.gcr_options()?;
    let (report, what) = match read_pattern(path)? {
        Pattern::Bipartite(g) => (gcr(&g, &opts)?, "gcr"),
        Pattern::Symmetric(g) => (sgcr(&g, &opts)?, "sgcr"),
    };
    Ok(Outcome::ok(match cfg.format {
        Format::Json => json(&report),
        Format::Text => gcr_text(&report, what),
        Format::Csv => return Err(no_csv("gcr")),
    }))
}

#[derive(Debug, Deserialize)]
struct PartitionFile {
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
struct CertifyOutput {
    valid: bool,
    gcr: Option<usize>,
    rank: usize,
    row_blocks: Vec<Vec<usize>>,
    col_blocks: Vec<Vec<usize>>,
    violations: Vec<crate::gcr::BlockViolation>,
}

fn cmd_certify(
    cfg: &RunConfig,
    pattern: Option<&Path>,
    rank: Option<usize>,
    partition: Option<&Path>,
    circ: Option<&[usize]>,
) -> Result<Outcome> {
    let (g, r, rows, cols) = match (circ, pattern, partition, rank) {
        (Some(&[n, k]), _, _, _) => {
            let c = build_circulant_certificate(n, k)?;
            (c.pattern(), c.r, c.row_blocks, c.col_blocks)
        }
        (None, Some(p), Some(part), Some(r)) => {
            let g = match read_pattern(p)? {
                Pattern::Bipartite(g) => g,
                Pattern::Symmetric(_) => return Err(usage("certify", "partition certificates are for rectangular patterns")),
            };
            let f: PartitionFile = serde_json::from_str(&fs::read_to_string(part)?)?;
            (g, r, f.rows, f.cols)
        }
        _ => return Err(usage("certify", "give --circulant N K, or a pattern with --rank and --partition")),
    };
    let check = verify_partition_certificate(&g, r, &rows, &cols)?;
    let out = CertifyOutput {
        valid: check.valid,
        gcr: check.valid.then_some(r),
        rank: r,
        row_blocks: rows,
        col_blocks: cols,
        violations: check.violations,
    };
    let text = match cfg.format {
        Format::Json => json(&out),
        Format::Text if out.valid => format!("valid: gcr = {r}\n"),
        Format::Text => format!("invalid: {} block pairs without exactly one unknown entry\n", out.violations.len()),
        Format::Csv => return Err(no_csv("certify")),
    };
    Ok(Outcome {
        text,
        code: if out.valid { 0 } else { 2 },
    })
}

fn fit_completion(m: usize, n: usize, fit: &crate::complete::FitResult, known: impl Iterator<Item = (usize, usize, f64)>) -> CompletionResult {
    let full = fit.matrix(m, n);
    let max_deviation = known.map(|(i, j, v)| (full[(i, j)] - v).abs()).fold(0.0, f64::max);
    CompletionResult {
        rows: m,
        cols: n,
        entries: CompletedEntries::Real {
            data: (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| full[(i, j)]).collect(),
        },
        rank: fit.rank,
        exact_match: None,
        max_deviation: Some(max_deviation),
        method: format!("low-rank fit, residual {:e}", fit.residual),
    }
}

fn cmd_complete(cfg: &RunConfig, path: &Path, rank: Option<usize>, chordal: bool) -> Result<Outcome> {
    let data = PartialData::read(path)?;
    let result = match (data, rank, chordal) {
        (PartialData::Fp(field, x), None, true) => chordal_complete_fp(&x, field, cfg.seed)?,
        (PartialData::Real(x), None, true) => chordal_complete_real(&x, cfg.seed)?,
        (PartialData::Real(x), Some(r), false) => {
            let fit = lowrank_fit(&x, r, &cfg.fit_options())?;
            if !fit.completable {
                return Err(Error::FitPrecondition(format!("no rank-{r} fit found; best residual {:e}", fit.residual)));
            }
            fit_completion(x.pattern().m(), x.pattern().n(), &fit, x.entries())
        }
        (PartialData::SymReal(x), Some(r), false) => {
            let fit = sym_lowrank_fit(&x, r, &cfg.fit_options())?;
            if !fit.completable {
                return Err(Error::FitPrecondition(format!("no symmetric rank-{r} fit found; best residual {:e}", fit.residual)));
            }
            let n = x.pattern().n();
            fit_completion(n, n, &fit, x.entries())
        }
        (_, None, false) => return Err(usage("complete", "give --rank R or --chordal")),
        _ => return Err(usage("complete", "--chordal needs rectangular data; --rank needs real data")),
    };
    Ok(Outcome::ok(match cfg.format {
        Format::Json => json(&result),
        Format::Text => format!("rank {} via {}\n", result.rank, result.method),
        Format::Csv => return Err(no_csv("complete")),
    }))
}

fn report_text(r: &TypicalSampleReport) -> String {
    let mut s = format!("{}: {} trials, seed {}\n", r.pattern, r.trials, r.seed);
    for c in &r.classes {
        s += &format!("rank {}: {} ({:.4}) {:?}\n", c.rank, c.count, c.frequency, c.certificate);
    }
    s + &format!("unclassified: {}\n", r.unclassified)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    cfg: &RunConfig,
    pattern: Option<&Path>,
    trials: usize,
    rank: Option<usize>,
    cube_flag: bool,
    knk1: Option<usize>,
    gn: Option<usize>,
    cross_check: Option<usize>,
    records: Option<&Path>,
) -> Result<Outcome> {
    if let Some(n) = gn {
        let r = gn_report(n, &cfg.gcr_options()?, cfg.seed)?;
        let ok = r.agree && r.typical_count == r.formula_count && r.knk1_witness.passed && r.gn_witness.passed;
        let text = match cfg.format {
            Format::Json => json(&r),
            Format::Text => format!(
                "sgcr(G_{n}) = {} (formula {})\ntypical ranks {:?}, count {}\n",
                r.engine_sgcr, r.formula_sgcr, r.typical_ranks, r.typical_count
            ),
            Format::Csv => return Err(no_csv("sample --gn")),
        };
        return Ok(Outcome {
            text,
            code: if ok { 0 } else { 2 },
        });
    }
    let fit = cfg.fit_options();
    let mut extra = None;
    let report = if cube_flag {
        cube_typical_sample(trials, cfg.seed, &fit)?
    } else if let Some(n) = knk1 {
        if let Some(count) = cross_check {
            extra = Some(knk1_cross_check(n, count, cfg.seed, &fit)?);
        }
        knk1_typical_sample(n, trials, cfg.seed)?
    } else {
        let (Some(p), Some(r)) = (pattern, rank) else {
            return Err(usage("sample", "give --cube, --knk1 N, --gn N, or a pattern with --rank R"));
        };
        let g = read_pattern(p)?;
        let g = g.as_bipartite().ok_or_else(|| usage("sample", "--rank scans need a rectangular pattern"))?;
        typical_scan(g, r, trials, cfg.seed, &fit)?
    };
    if let Some(path) = records {
        report.write_csv(fs::File::create(path)?)?;
    }
    let text = match cfg.format {
        Format::Json => match &extra {
            Some(c) => json(&serde_json::json!({ "report": report, "cross_check": c })),
            None => json(&report),
        },
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
        Format::Text => {
            let mut s = report_text(&report);
            if let Some(c) = &extra {
                s += &format!("optimizer agreement: {}/{}\n", c.agreed, c.checked);
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

/// One line of the closed-form table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub family: String,
    pub params: String,
    pub formula: usize,
    pub engine: usize,
    pub agree: bool,
}

/// Table groups, in output order.
pub const TABLE_GROUPS: &[&str] = &["trees", "cycle", "complete", "triangular", "circulant", "crown", "circulant-divisible", "gn", "hn"];

enum Case {
    Rect(BipartitePattern),
    Sym(usize),
}

fn table_cases(group: &str, seed: u64) -> Result<Vec<(String, String, usize, Case)>> {
    let mut out = Vec::new();
    match group {
        "trees" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for t in 0..20 {
                let m = 1 + t % 8;
                let n = 1 + (t * 5 + 3) % (16 - m).min(8);
                out.push(("tree-random".into(), format!("{m} {n} #{t}"), 1, Case::Rect(random_tree(m, n, &mut rng))));
            }
        }
        "cycle" => out.push(("cycle".into(), "C_6".into(), 2, Case::Rect(cycle(3)))),
        "complete" => {
            for m in 1..=6 {
                for n in 1..=6 {
                    out.push(("complete".into(), format!("{m} {n}"), m.min(n), Case::Rect(BipartitePattern::complete(m, n))));
                }
            }
        }
        "triangular" => {
            for n in 2..=10usize {
                out.push(("triangular".into(), n.to_string(), n.div_ceil(2), Case::Rect(triangular(n))));
            }
        }
        "circulant" => {
            out.push(("circulant".into(), "4 3".into(), 2, Case::Rect(cube())));
            out.push(("circulant".into(), "8 6".into(), 4, Case::Rect(circulant(8, 6))));
        }
        "crown" => {
            for n in 2..=25usize {
                out.push(("crown".into(), n.to_string(), n - n.isqrt(), Case::Rect(crown(n))));
            }
        }
        "circulant-divisible" => {
            for (n, k) in [(4, 2), (8, 4), (9, 3), (16, 4), (16, 8), (18, 6)] {
                let l = n - k * k / n;
                out.push(("circulant".into(), format!("{n} {l}"), n - k, Case::Rect(circulant(n, l))));
            }
        }
        "gn" => {
            for n in 1..=15 {
                out.push(("sym-join-family".into(), n.to_string(), gn_sgcr_formula(n), Case::Sym(n)));
            }
        }
        "hn" => {
            for k in 1..=4 {
                let n = (k * k + k) / 2;
                out.push(("sym-join-family".into(), format!("{n} (k = {k})"), k * k, Case::Sym(n)));
            }
        }
        other => return Err(usage("report", format!("unknown table group `{other}`; known: {}", TABLE_GROUPS.join(", ")))),
    }
    Ok(out)
}

/// Engine values against the closed forms for the selected groups.
pub fn paper_tables(groups: &[&str], opts: &GcrOptions, seed: u64) -> Result<Vec<FamilyRow>> {
    let mut cases = Vec::new();
    for g in groups {
        cases.extend(table_cases(g, seed)?);
    }
    cases
        .into_par_iter()
        .map(|(family, params, formula, case)| {
            let engine = match case {
                Case::Rect(g) => gcr(&g, opts)?.gcr,
                Case::Sym(n) => sgcr(&join_family(n), opts)?.gcr,
            };
            Ok(FamilyRow {
                family,
                params,
                formula,
                engine,
                agree: formula == engine,
            })
        })
        .collect()
}

fn cmd_report(cfg: &RunConfig, families: Option<&[String]>, out: Option<&Path>) -> Result<Outcome> {
    let groups: Vec<&str> = match families {
        Some(list) => list.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect(),
        None => TABLE_GROUPS.to_vec(),
    };
    let rows = paper_tables(&groups, &cfg.gcr_options()?, cfg.seed)?;
    let agree = rows.iter().all(|r| r.agree);
    let dir = out.unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut w = csv::Writer::from_path(dir.join("families.csv"))?;
    w.write_record(["family", "params", "formula value", "engine value", "agree"])?;
    for r in &rows {
        w.write_record([&r.family, &r.params, &r.formula.to_string(), &r.engine.to_string(), &r.agree.to_string()])?;
    }
    w.flush()?;
    let failed = rows.iter().filter(|r| !r.agree).count();
    let text = match cfg.format {
        Format::Json => json(&serde_json::json!({ "rows": rows.len(), "disagreements": failed, "table": dir.join("families.csv") })),
        _ => format!("{} rows, {failed} disagreements, written to {}\n", rows.len(), dir.join("families.csv").display()),
    };
    Ok(Outcome {
        text,
        code: if agree { 0 } else { 2 },
    })
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Outcome> {
    match &cli.command {
        Command::Gen { family, params } => cmd_gen(cfg, family, params),
        Command::Gcr { pattern } => cmd_gcr(cfg, pattern),
        Command::Certify {
            pattern,
            rank,
            partition,
            circulant,
        } => cmd_certify(cfg, pattern.as_deref(), *rank, partition.as_deref(), circulant.as_deref()),
        Command::Complete { partial, rank, chordal } => cmd_complete(cfg, partial, *rank, *chordal),
        Command::Sample {
            pattern,
            trials,
            rank,
            cube,
            knk1,
            gn,
            cross_check,
            records,
        } => cmd_sample(cfg, pattern.as_deref(), *trials, *rank, *cube, *knk1, *gn, *cross_check, records.as_deref()),
        Command::Report { families, .. } => cmd_report(cfg, families.as_deref(), cli.global.out.as_deref()),
    }
}

/// Runs a parsed command line; output goes to `--out` (a directory for
/// `report`) or stdout.
pub fn run(cli: &Cli) -> Result<u8> {
    let cfg = load_config(&cli.global)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| usage("threads", e.to_string()))?;
    let outcome = pool.install(|| dispatch(cli, &cfg))?;
    let to_file = !matches!(cli.command, Command::Report { .. });
    match (&cli.global.out, to_file) {
        (Some(path), true) => fs::write(path, &outcome.text)?,
        _ => std::io::stdout().write_all(outcome.text.as_bytes())?,
    }
    Ok(outcome.code)
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_layers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "seed = 9\nvotes = 5\nformat = \"text\"\n").unwrap();
        let cli = Cli::try_parse_from(["mcrank", "--config", path.to_str().unwrap(), "--votes", "7", "gcr", "x.json"]).unwrap();
        let cfg = load_config(&cli.global).unwrap();
        assert_eq!((cfg.seed, cfg.votes, cfg.format), (9, 7, Format::Text));
        fs::write(&path, "sed = 1\n").unwrap();
        assert!(load_config(&cli.global).is_err());
    }

    #[test]
    fn invalid_config() {
        for bad in [
            RunConfig { prime: 15, ..RunConfig::default() },
            RunConfig { votes: 0, ..RunConfig::default() },
            RunConfig { tol: -1.0, ..RunConfig::default() },
        ] {
            assert!(bad.validate().is_err());
        }
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::SeedDisagreement { rank: 1, yes: 1, no: 1 }), 3);
        assert_eq!(exit_code(&Error::NotChordal), 2);
        assert_eq!(exit_code(&Error::Parse("x".into())), 1);
    }

    #[test]
    fn small_tables_agree() {
        let rows = paper_tables(&["cycle", "triangular", "hn"], &GcrOptions::default(), 0).unwrap();
        assert_eq!(rows.len(), 1 + 9 + 4);
        assert!(rows.iter().all(|r| r.agree), "{rows:?}");
        assert!(paper_tables(&[], &GcrOptions::default(), 0).unwrap().is_empty());
        assert!(paper_tables(&["nope"], &GcrOptions::default(), 0).is_err());
    }
}

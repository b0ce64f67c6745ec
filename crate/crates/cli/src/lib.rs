//! Command implementations behind the `cdfsat` binary.
//!
//! Every command produces an [`Outcome`]: one artifact (JSON, CSV, DOT or
//! DIMACS) for stdout or `--output`, a human-readable summary for stderr,
//! and a status that maps onto the exit code.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cdfsat::cdf::{
    classify, measure_growth, CdfClassification, GrowthError, GrowthFit, GrowthSample, DEFAULT_THETA,
};
use cdfsat::dimacs::{parse_dimacs, DimacsError, DimacsWarning};
use cdfsat::dpll::{dpll_solve, DerivationTrace, Heuristic, NodeKind, SolveResult};
use cdfsat::encode::{
    encode_hamiltonian_cycle, encode_perfect_matching, eulerian_path_exists, parse_edge_list, EncodeError,
    EulerDecision, GraphError,
};
use cdfsat::generate::{generate_random_ksat, GenerateError, KSatParams};
use cdfsat::implication::{build_implication_graph, solve_2sat, NotImplicative, TwoSatOutcome};
use cdfsat::proof::{
    check_derivation, cost_report, eval_truth_table, parse_proposition, CostReport, Derivation, DerivationVerdict,
    ParseError, TooManyAtoms, TruthTable,
};
use cdfsat::semantic::{formula_image, ImageError, DEFAULT_ENUMERATION_CAP};
use cdfsat::{Assignment, CnfFormula};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "cdfsat", version, about = "Structural-complexity analysis of CNF formulas")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Config {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "CDFSAT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Largest variable count for exhaustive enumeration.
    #[arg(long = "cap", global = true, env = "CDFSAT_CAP", default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub enumeration_cap: usize,
    /// Wide-clause coverage at or below which a non-compositional formula is SemiExpCDF.
    #[arg(long, global = true, env = "CDFSAT_THETA", default_value_t = DEFAULT_THETA)]
    pub theta: f64,
    /// DPLL branching rule: lowest-index or most-occurrences.
    #[arg(long, global = true, env = "CDFSAT_HEURISTIC", default_value = "lowest-index")]
    pub heuristic: Heuristic,
    #[arg(long, global = true, value_enum)]
    #[serde(skip)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            theta: DEFAULT_THETA,
            heuristic: Heuristic::default(),
            format: None,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Full layer analysis of a DIMACS file.
    Analyze {
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Semantic growth of a random k-SAT family.
    Growth(GrowthSpec),
    /// Encode a graph problem as DIMACS.
    Encode {
        #[arg(value_enum)]
        problem: EncodeProblem,
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Eulerian-path degree test on a graph.
    Euler {
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Truth table and optional derivation check for a formula.
    Prove {
        formula: String,
        /// JSON list of derivation steps.
        #[arg(long)]
        derivation: Option<PathBuf>,
    },
    /// Implication graph or DPLL trace as DOT.
    ExportDot {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: DotKind,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthSpec {
    /// Clause width.
    #[arg(short = 'k', long = "width")]
    pub width: usize,
    /// Clauses per variable as `p/q` or an integer; m = floor(n * p / q).
    #[arg(long, default_value = "1")]
    pub density: Density,
    /// Variable-disjoint clauses.
    #[arg(long)]
    pub disjoint: bool,
    /// Variable counts: comma-separated values or inclusive ranges
    /// `a..b` / `a..b:step`.
    #[arg(long = "n", value_delimiter = ',', num_args = 0..)]
    #[serde(skip)]
    pub n_items: Vec<NItem>,
}

impl GrowthSpec {
    pub fn n_values(&self) -> Vec<usize> {
        self.n_items.iter().flat_map(|item| item.values()).collect()
    }
}

/// One `--n` item: a single count or an inclusive stepped range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NItem {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

impl NItem {
    pub fn values(self) -> impl Iterator<Item = usize> {
        (self.start..=self.end).step_by(self.step)
    }
}

impl FromStr for NItem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid n value `{s}` (expected N, A..B or A..B:STEP)");
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let Some((start, rest)) = s.split_once("..") else {
            let n = num(s)?;
            return Ok(NItem { start: n, end: n, step: 1 });
        };
        let (end, step) = rest.split_once(':').unwrap_or((rest, "1"));
        let item = NItem {
            start: num(start)?,
            end: num(end)?,
            step: num(step)?,
        };
        if item.step == 0 || item.start > item.end {
            return Err(bad());
        }
        Ok(item)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Density {
    pub numerator: usize,
    pub denominator: usize,
}

impl Density {
    pub fn clauses_for(self, n: usize) -> usize {
        n * self.numerator / self.denominator
    }

    pub fn as_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl std::fmt::Display for Density {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl Serialize for Density {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Density {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid density `{s}`"));
        let (numerator, denominator) = (parse(p)?, parse(q)?);
        if denominator == 0 {
            return Err(format!("invalid density `{s}`: zero denominator"));
        }
        Ok(Density {
            numerator,
            denominator,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EncodeProblem {
    Matching,
    Hamiltonian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DotKind {
    ImplicationGraph,
    Trace,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Dimacs {
        path: PathBuf,
        #[source]
        source: DimacsError,
    },
    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        #[source]
        source: GraphError,
    },
    #[error("{path}: invalid derivation: {source}")]
    Derivation {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("formula: {0}")]
    Proposition(#[from] ParseError),
    #[error(transparent)]
    TooManyAtoms(#[from] TooManyAtoms),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("family member at n = {n}: {source}")]
    Generate {
        n: usize,
        #[source]
        source: GenerateError,
    },
    #[error(transparent)]
    Growth(GrowthError),
    #[error("no implication graph: clause {} ({})", .0.index.map_or(0, |i| i + 1), .0.clause)]
    NotImplicative(NotImplicative),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Some part of the analysis was out of reach; the artifact is partial.
    Partial,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Partial => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub artifact: String,
    pub summary: String,
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub seed: u64,
    pub config: Config,
}

impl Provenance {
    fn new(command: &'static str, input: Option<&Path>, config: &Config) -> Self {
        Provenance {
            tool: "cdfsat",
            version: VERSION,
            command,
            input: input.map(|p| p.display().to_string()),
            seed: config.seed,
            config: config.clone(),
        }
    }
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let config = &cli.config;
    if !(0.0..=1.0).contains(&config.theta) {
        return Err(CliError::Usage(format!("--theta must lie in [0, 1], got {}", config.theta)));
    }
    match &cli.command {
        Command::Analyze { input } => {
            only_format(config, &[Format::Json], "analyze")?;
            analyze(input, config)
        }
        Command::Growth(spec) => growth(spec, config),
        Command::Encode { problem, input } => {
            only_format(config, &[], "encode")?;
            encode(*problem, input, config)
        }
        Command::Euler { input } => {
            only_format(config, &[Format::Json], "euler")?;
            euler(input, config)
        }
        Command::Prove { formula, derivation } => {
            only_format(config, &[Format::Json], "prove")?;
            prove(formula, derivation.as_deref(), config)
        }
        Command::ExportDot { input, kind } => {
            only_format(config, &[Format::Dot], "export-dot")?;
            export_dot(input, *kind, config)
        }
    }
}

fn only_format(config: &Config, allowed: &[Format], command: &str) -> Result<(), CliError> {
    match config.format {
        Some(f) if !allowed.contains(&f) => Err(CliError::Usage(format!(
            "{command} does not support --format {}",
            f.to_possible_value().expect("no skipped variants").get_name()
        ))),
        _ => Ok(()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_formula(path: &Path) -> Result<(CnfFormula, Vec<DimacsWarning>), CliError> {
    let parsed = parse_dimacs(&read(path)?).map_err(|source| CliError::Dimacs {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((parsed.formula, parsed.warnings))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FormulaSummary {
    pub variables: usize,
    pub clauses: usize,
    pub max_width: usize,
    pub width_profile: BTreeMap<usize, usize>,
    /// Clauses per variable as a reduced fraction.
    pub density: Option<String>,
}

impl FormulaSummary {
    pub fn of(f: &CnfFormula) -> Self {
        FormulaSummary {
            variables: f.variable_count(),
            clauses: f.clause_count(),
            max_width: f.max_width(),
            width_profile: f.width_profile(),
            density: f.density().map(|d| d.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase", tag = "status")]
pub enum SemanticSection {
    #[serde(rename = "exact", rename_all = "camelCase")]
    Exact {
        model_count: u128,
        log2_model_count: Option<f64>,
        method: &'static str,
    },
    #[serde(rename = "intractable", rename_all = "camelCase")]
    Intractable { variables: usize, cap: usize, note: String },
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LogicSection {
    pub solver: &'static str,
    pub satisfiable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Assignment>,
    pub heuristic: Heuristic,
    pub branch_count: usize,
    pub backtrack_count: usize,
    pub tree_size: usize,
    pub tree_depth: usize,
    pub conflict_leaves: usize,
    /// Some branch of the search ended in a conflict.
    pub backtracking_required: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub formula: FormulaSummary,
    pub semantic: SemanticSection,
    pub logic: LogicSection,
    pub cdf: CdfClassification,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<DimacsWarning>,
    pub provenance: Provenance,
}

/// Semantic, logical and CDF analysis of one formula.
pub fn analyze_formula(
    formula: &CnfFormula,
    config: &Config,
    input: Option<&Path>,
    warnings: Vec<DimacsWarning>,
) -> (AnalysisReport, Status) {
    let (semantic, status) = match formula_image(formula, config.enumeration_cap) {
        Ok(image) => {
            let count = image.count();
            let method = if formula.variable_count() <= config.enumeration_cap {
                "enumeration"
            } else {
                "disjoint product"
            };
            let section = SemanticSection::Exact {
                model_count: count,
                log2_model_count: (count > 0).then(|| log2(count)),
                method,
            };
            (section, Status::Ok)
        }
        Err(e @ ImageError::Intractable { .. }) | Err(e @ ImageError::CountOverflow { .. }) => (
            SemanticSection::Intractable {
                variables: formula.variable_count(),
                cap: config.enumeration_cap,
                note: e.to_string(),
            },
            Status::Partial,
        ),
    };
    let trace = dpll_solve(formula, config.heuristic);
    let (solver, satisfiable, model) = match solve_2sat(formula) {
        Ok(TwoSatOutcome::Sat { model }) => ("implication-graph scc", true, Some(model)),
        Ok(TwoSatOutcome::Unsat { .. }) => ("implication-graph scc", false, None),
        Err(_) => match &trace.result {
            SolveResult::Sat { model } => ("dpll", true, Some(model.clone())),
            SolveResult::Unsat => ("dpll", false, None),
        },
    };
    let logic = LogicSection {
        solver,
        satisfiable,
        model,
        heuristic: config.heuristic,
        branch_count: trace.branch_count,
        backtrack_count: trace.backtrack_count,
        tree_size: trace.nodes.len(),
        tree_depth: trace.depth(),
        conflict_leaves: trace.count(NodeKind::Conflict),
        backtracking_required: trace.count(NodeKind::Conflict) > 0,
    };
    let report = AnalysisReport {
        formula: FormulaSummary::of(formula),
        semantic,
        logic,
        cdf: classify(formula, None, config.theta),
        warnings,
        provenance: Provenance::new("analyze", input, config),
    };
    (report, status)
}

fn log2(count: u128) -> f64 {
    let bits = 128 - count.leading_zeros();
    if bits <= 53 {
        (count as f64).log2()
    } else {
        let shift = bits - 53;
        ((count >> shift) as f64).log2() + f64::from(shift)
    }
}

fn analyze(input: &Path, config: &Config) -> Result<Outcome, CliError> {
    let (formula, warnings) = load_formula(input)?;
    let (report, status) = analyze_formula(&formula, config, Some(input), warnings);
    Ok(Outcome {
        artifact: to_json(&report),
        summary: summary_table(&report),
        status,
    })
}

/// Plain-text table in the shape of the 2SAT / 3SAT comparison.
pub fn summary_table(report: &AnalysisReport) -> String {
    let semantic = match &report.semantic {
        SemanticSection::Exact { model_count, .. } => format!("{model_count} models"),
        SemanticSection::Intractable { cap, .. } => format!("beyond cap {cap}"),
    };
    let compositional = if report.cdf.compositionality.is_compositional() {
        "compositional"
    } else {
        "non-compositional"
    };
    let rows = [
        ("Variables / clauses", format!("{} / {}", report.formula.variables, report.formula.clauses)),
        ("Max clause width", report.formula.max_width.to_string()),
        ("Semantic image", semantic),
        ("Derivation tree size", report.logic.tree_size.to_string()),
        ("Derivation depth", report.logic.tree_depth.to_string()),
        (
            "Backtracking required",
            if report.logic.backtracking_required { "yes" } else { "no" }.to_string(),
        ),
        ("Solver", format!("{} ({})", report.logic.solver, if report.logic.satisfiable { "SAT" } else { "UNSAT" })),
        ("Logical mapping", compositional.to_string()),
        (
            "CDF class",
            format!(
                "{} (wide coverage {:.3}, theta {})",
                report.cdf.verdict, report.cdf.wide_clause_fraction, report.cdf.theta
            ),
        ),
    ];
    table(&rows)
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$} | {v}");
    }
    out
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthReport {
    pub family: GrowthSpec,
    pub n_values: Vec<usize>,
    pub status: &'static str,
    pub samples: Vec<GrowthSample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<GrowthFit>,
    /// `(2^k - 1)^density`, known exactly for disjoint families.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_base: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub note: &'static str,
    pub provenance: Provenance,
}

/// Seed for the family member with `n` variables.
pub fn member_seed(seed: u64, n: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(n as u64)
}

fn growth(spec: &GrowthSpec, config: &Config) -> Result<Outcome, CliError> {
    only_format(config, &[Format::Csv, Format::Json], "growth")?;
    let n_values = spec.n_values();
    if n_values.is_empty() {
        return Err(CliError::Usage("growth needs at least one --n value".into()));
    }
    if n_values.len() < 3 {
        return Err(CliError::Growth(GrowthError::TooFewSamples(n_values.len())));
    }
    if n_values[0] == 0 || n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Growth(GrowthError::NotIncreasing));
    }
    let params = |n: usize| KSatParams {
        variables: n,
        clauses: spec.density.clauses_for(n),
        width: spec.width,
        seed: member_seed(config.seed, n),
        disjoint: spec.disjoint,
    };
    // reject infeasible specs before any counting
    for &n in &n_values {
        generate_random_ksat(params(n)).map_err(|source| CliError::Generate { n, source })?;
    }
    let result = measure_growth(|n| generate_random_ksat(params(n)), &n_values, config.enumeration_cap);
    let (samples, fit, failure, status) = match result {
        Ok(fit) => (fit.samples.clone(), Some(fit), None, Status::Ok),
        Err(e) => {
            let completed = match &e {
                GrowthError::Intractable { completed, .. } | GrowthError::EmptyImage { completed, .. } => {
                    completed.clone()
                }
                _ => Vec::new(),
            };
            (completed, None, Some(e.to_string()), Status::Partial)
        }
    };
    let expected_base = spec
        .disjoint
        .then(|| (((1u64 << spec.width.min(63)) - 1) as f64).powf(spec.density.as_f64()));
    let report = GrowthReport {
        family: spec.clone(),
        n_values,
        status: if status == Status::Ok { "complete" } else { "partial" },
        samples,
        fit,
        expected_base,
        failure,
        note: "finite-sample least-squares fit, not an asymptotic statement",
        provenance: Provenance::new("growth", None, config),
    };
    let artifact = match config.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&report),
        _ => growth_csv(&report.samples),
    };
    Ok(Outcome {
        artifact,
        summary: growth_summary(&report),
        status,
    })
}

pub fn growth_csv(samples: &[GrowthSample]) -> String {
    let mut out = String::from("n,imageSize,logImageBits\n");
    for s in samples {
        let _ = writeln!(out, "{},{},{}", s.n, s.image_size, s.log_image_bits);
    }
    out
}

fn growth_summary(report: &GrowthReport) -> String {
    let mut rows = vec![
        (
            "Family",
            format!(
                "k = {}, density {}, {}",
                report.family.width,
                report.family.density,
                if report.family.disjoint { "disjoint" } else { "random" }
            ),
        ),
        ("Samples", report.samples.len().to_string()),
    ];
    if let Some(fit) = &report.fit {
        rows.push(("Implied base", format!("{:.4}", fit.implied_base)));
        rows.push(("Preferred model", format!("{:?}", fit.preferred_model).to_lowercase()));
        rows.push((
            "Residuals (exp / poly)",
            format!("{:.3e} / {:.3e}", fit.exponential_residual, fit.polynomial_residual),
        ));
    }
    if let Some(base) = report.expected_base {
        rows.push(("Expected base", format!("{base:.4}")));
    }
    if let Some(failure) = &report.failure {
        rows.push(("Stopped", failure.clone()));
    }
    table(&rows)
}

fn load_graph(path: &Path) -> Result<cdfsat::encode::Graph, CliError> {
    parse_edge_list(&read(path)?).map_err(|source| CliError::Graph {
        path: path.to_path_buf(),
        source,
    })
}

fn encode(problem: EncodeProblem, input: &Path, config: &Config) -> Result<Outcome, CliError> {
    let graph = load_graph(input)?;
    let encoding = match problem {
        EncodeProblem::Matching => encode_perfect_matching(&graph),
        EncodeProblem::Hamiltonian => encode_hamiltonian_cycle(&graph)?,
    };
    let class = classify(&encoding.formula, None, config.theta);
    let profile = encoding
        .formula
        .width_profile()
        .iter()
        .map(|(w, c)| format!("{c} x width {w}"))
        .collect::<Vec<_>>()
        .join(", ");
    let mut rows = vec![
        ("Vertices / edges", format!("{} / {}", graph.vertex_count(), graph.edge_count())),
        (
            "Variables / clauses",
            format!("{} / {}", encoding.formula.variable_count(), encoding.formula.clause_count()),
        ),
        ("Width profile", profile),
        ("CDF class", class.verdict.to_string()),
    ];
    for w in &encoding.warnings {
        rows.push(("Warning", w.to_string()));
    }
    Ok(Outcome {
        artifact: encoding.to_dimacs(),
        summary: table(&rows),
        status: Status::Ok,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EulerReport {
    #[serde(flatten)]
    pub decision: EulerDecision,
    pub provenance: Provenance,
}

fn euler(input: &Path, config: &Config) -> Result<Outcome, CliError> {
    let graph = load_graph(input)?;
    let decision = eulerian_path_exists(&graph);
    let summary = table(&[
        ("Eulerian path", decision.exists.to_string()),
        ("Odd-degree vertices", decision.odd_count.to_string()),
        ("Connected", decision.connected.to_string()),
        ("CNF layer", decision.note.to_string()),
    ]);
    let report = EulerReport {
        decision,
        provenance: Provenance::new("euler", Some(input), config),
    };
    Ok(Outcome {
        artifact: to_json(&report),
        summary,
        status: Status::Ok,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProofSection {
    pub steps: usize,
    #[serde(flatten)]
    pub verdict: DerivationVerdict,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProveReport {
    pub formula: String,
    pub tautology: bool,
    pub truth_table: TruthTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof: Option<ProofSection>,
    pub cost: CostReport,
    pub provenance: Provenance,
}

fn prove(text: &str, derivation_path: Option<&Path>, config: &Config) -> Result<Outcome, CliError> {
    let formula = parse_proposition(text)?;
    let table_ = eval_truth_table(&formula)?;
    let derivation = derivation_path
        .map(|path| {
            Derivation::from_json(&read(path)?).map_err(|source| CliError::Derivation {
                path: path.to_path_buf(),
                source,
            })
        })
        .transpose()?;
    let proof = derivation.as_ref().map(|d| ProofSection {
        steps: d.len(),
        verdict: check_derivation(d, &formula),
    });
    let cost = cost_report(&formula, derivation.as_ref());
    let mut rows = vec![
        ("Formula", formula.to_string()),
        ("Tautology", table_.is_tautology.to_string()),
        ("Semantic cost", format!("{} rows", table_.rows.len())),
    ];
    if let Some(p) = &proof {
        let verdict = match &p.verdict {
            DerivationVerdict::Valid => "valid".to_string(),
            DerivationVerdict::Invalid { step, reason } => format!("invalid at step {step}: {reason}"),
        };
        rows.push(("Syntactic cost", format!("{} steps", p.steps)));
        rows.push(("Derivation", verdict));
    }
    let report = ProveReport {
        formula: formula.to_string(),
        tautology: table_.is_tautology,
        truth_table: table_,
        proof,
        cost,
        provenance: Provenance::new("prove", derivation_path, config),
    };
    Ok(Outcome {
        artifact: to_json(&report),
        summary: table(&rows),
        status: Status::Ok,
    })
}

fn export_dot(input: &Path, kind: DotKind, config: &Config) -> Result<Outcome, CliError> {
    let (formula, _) = load_formula(input)?;
    match kind {
        DotKind::ImplicationGraph => {
            let graph = build_implication_graph(&formula).map_err(CliError::NotImplicative)?;
            Ok(Outcome {
                artifact: graph.to_dot(),
                summary: table(&[
                    ("Literal nodes", graph.node_count().to_string()),
                    ("Implication edges", graph.edge_count().to_string()),
                ]),
                status: Status::Ok,
            })
        }
        DotKind::Trace => {
            let trace: DerivationTrace = dpll_solve(&formula, config.heuristic);
            Ok(Outcome {
                artifact: trace.to_dot(),
                summary: table(&[
                    ("Trace nodes", trace.nodes.len().to_string()),
                    ("Branches / backtracks", format!("{} / {}", trace.branch_count, trace.backtrack_count)),
                    ("Result", if trace.result.is_sat() { "SAT" } else { "UNSAT" }.to_string()),
                ]),
                status: Status::Ok,
            })
        }
    }
}

/// Parses arguments, runs the command, writes the artifact and summary,
/// and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = execute(&cli).and_then(|outcome| {
        match &cli.config.output {
            Some(path) => fs::write(path, &outcome.artifact).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?,
            None => {
                let _ = stdout.write_all(outcome.artifact.as_bytes());
            }
        }
        Ok(outcome)
    });
    match outcome {
        Ok(outcome) => {
            let _ = stderr.write_all(outcome.summary.as_bytes());
            outcome.status.exit_code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

//! Batch commands behind the `orbithom` binary.
//!
//! Each command is a plain function so it can be driven from tests; the
//! binary only parses arguments, prints, and maps errors to exit codes.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::decomposition::width1_decomposition;
use crate::engine::{aggregate, EngineConfig, EngineError, OrbitCountPlan};
use crate::generate::{bounded_degeneracy_graph, seeded_rng};
use crate::graph::{degeneracy_order, load_graph, orient_acyclic, Graph, ParseError};
use crate::oracle::{oracle_tables, OracleError, DEFAULT_BUDGET};
use crate::pattern::{
    acyclic_orientations, automorphism_orbits, isomorphism_classes, licl, lipco_with_orbits,
    merge_pattern, orbit_independent_sets, parse_pattern, Pattern, PatternError, DEFAULT_K_MAX,
};

#[derive(Debug, Parser)]
#[command(
    name = "orbithom",
    version,
    about = "Homomorphism orbit counts on sparse graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report orbits, LICL, LIPCO, merged patterns and the dichotomy verdict.
    Analyze {
        #[arg(long)]
        pattern: PathBuf,
        /// Emit the machine-readable JSON document instead of text.
        #[arg(long)]
        json: bool,
        /// Also dump a width-1 decomposition of every acyclic orientation.
        #[arg(long)]
        decompositions: bool,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: usize,
    },
    /// Count orbit homomorphisms and write them as TSV.
    Count {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: available parallelism).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: usize,
    },
    /// Check the engine against brute force on every pair in a corpus.
    Verify {
        #[arg(long)]
        corpus: PathBuf,
        /// Preflight limit on n^k candidate maps per pair.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: usize,
    },
    /// Time orbit counting on generated bounded-degeneracy graphs.
    Bench {
        #[arg(long)]
        pattern: PathBuf,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        kappa: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Timed repetitions per size; the median is reported.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        runs: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Pattern { path: PathBuf, source: PatternError },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("verification failed: {0} fixture(s) did not match")]
    VerifyFailed(usize),
}

impl CliError {
    /// 0 ok, 1 parse/config, 2 dichotomy refusal, 3 overflow, 4 verify
    /// mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(EngineError::DichotomyViolation { .. }) => 2,
            CliError::Engine(EngineError::ArithmeticOverflow) => 3,
            CliError::VerifyFailed(_) => 4,
            _ => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_pattern(path: &Path, k_max: usize) -> Result<Pattern, CliError> {
    parse_pattern(&read(path)?, k_max).map_err(|source| CliError::Pattern {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    load_graph(&read(path)?).map_err(|source| CliError::Graph {
        path: path.to_path_buf(),
        source,
    })
}

fn config_for(threads: Option<u64>) -> EngineConfig {
    match threads {
        Some(t) => EngineConfig {
            threads: t as usize,
        },
        None => EngineConfig::default(),
    }
}

// ---------------------------------------------------------------------------
// analyze

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "LINEAR")]
    Linear,
    #[serde(rename = "CONJECTURALLY-HARD")]
    ConjecturallyHard,
}

impl Verdict {
    pub fn from_lipco(lipco: usize) -> Verdict {
        if lipco <= 5 {
            Verdict::Linear
        } else {
            Verdict::ConjecturallyHard
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Linear => "LINEAR",
            Verdict::ConjecturallyHard => "CONJECTURALLY-HARD",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MergeReport {
    pub set: Vec<usize>,
    pub sign: i64,
    pub merged_vertex: usize,
    pub merged_edges: Vec<(usize, usize)>,
    pub licl: usize,
    /// Index into the orbit's `classes`.
    pub class: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    /// Sets whose merged patterns are isomorphic.
    pub sets: Vec<Vec<usize>>,
    /// Signed multiplicity.
    pub tally: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub representative: usize,
    pub vertices: Vec<usize>,
    pub merges: Vec<MergeReport>,
    pub classes: Vec<ClassReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternReport {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub orbits: Vec<OrbitReport>,
    pub licl: usize,
    pub lipco: usize,
    pub verdict: Verdict,
    pub orientations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decompositions: Option<Vec<String>>,
}

pub fn analyze_pattern(h: &Pattern, with_decompositions: bool) -> PatternReport {
    let orbits = automorphism_orbits(h);
    let lipco = lipco_with_orbits(h, &orbits);
    let mut orbit_reports = Vec::new();
    for (i, orbit) in orbits.orbits().iter().enumerate() {
        let merged: Vec<_> = orbit_independent_sets(h, orbit)
            .into_iter()
            .map(|s| merge_pattern(h, &s).expect("independent set"))
            .collect();
        let classes = isomorphism_classes(
            &merged
                .iter()
                .map(|m| (m.base.clone(), m.sign))
                .collect::<Vec<_>>(),
        );
        let mut class_of = vec![0; merged.len()];
        for (c, class) in classes.iter().enumerate() {
            for &member in &class.members {
                class_of[member] = c;
            }
        }
        let merges = merged
            .iter()
            .enumerate()
            .map(|(j, m)| MergeReport {
                set: m.source_set.clone(),
                sign: m.sign,
                merged_vertex: m.merged_vertex,
                merged_edges: m.base.edges(),
                licl: licl(&m.base),
                class: class_of[j],
            })
            .collect();
        let classes = classes
            .iter()
            .map(|c| ClassReport {
                sets: c
                    .members
                    .iter()
                    .map(|&j| merged[j].source_set.clone())
                    .collect(),
                tally: c.tally,
            })
            .collect();
        orbit_reports.push(OrbitReport {
            representative: orbits.representative(i),
            vertices: orbit.clone(),
            merges,
            classes,
        });
    }
    let dags = acyclic_orientations(h);
    let decompositions = with_decompositions.then(|| {
        dags.iter()
            .map(|p| {
                let arcs: Vec<String> = p.arcs().iter().map(|(a, b)| format!("{a}->{b}")).collect();
                let body = match width1_decomposition(p) {
                    Ok(t) => t.render(p),
                    Err(e) => format!("{e}\n"),
                };
                format!("orientation [{}]\n{}", arcs.join(" "), body)
            })
            .collect()
    });
    PatternReport {
        vertices: h.vertex_count(),
        edges: h.edges(),
        orbits: orbit_reports,
        licl: licl(h),
        lipco,
        verdict: Verdict::from_lipco(lipco),
        orientations: dags.len(),
        decompositions,
    }
}

pub fn render_report(r: &PatternReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "pattern: {} vertices, {} edges",
        r.vertices,
        r.edges.len()
    );
    let _ = writeln!(out, "orbits: {}", r.orbits.len());
    for o in &r.orbits {
        let _ = writeln!(out, "  orbit {} = {:?}", o.representative, o.vertices);
        for m in &o.merges {
            let _ = writeln!(
                out,
                "    S={:?} sign={:+} h_S={} LICL(H_S)={} class={} edges={:?}",
                m.set, m.sign, m.merged_vertex, m.licl, m.class, m.merged_edges
            );
        }
        for (c, class) in o.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "    class {c}: tally {:+} from {:?}",
                class.tally, class.sets
            );
        }
    }
    let _ = writeln!(out, "LICL: {}", r.licl);
    let _ = writeln!(out, "LIPCO: {}", r.lipco);
    let _ = writeln!(out, "acyclic orientations: {}", r.orientations);
    match r.verdict {
        Verdict::Linear => {
            let _ = writeln!(
                out,
                "verdict: LINEAR (LIPCO <= 5: orbit counts in near-linear time)"
            );
        }
        Verdict::ConjecturallyHard => {
            let _ = writeln!(
                out,
                "verdict: CONJECTURALLY-HARD (LIPCO > 5: no near-linear algorithm under the \
                 triangle detection conjecture)"
            );
        }
    }
    if let Some(ds) = &r.decompositions {
        let _ = writeln!(out, "decompositions:");
        for d in ds {
            out.push_str(d);
        }
    }
    out
}

pub fn cmd_analyze(
    path: &Path,
    json: bool,
    decompositions: bool,
    k_max: usize,
) -> Result<String, CliError> {
    let h = read_pattern(path, k_max)?;
    let report = analyze_pattern(&h, decompositions);
    if json {
        Ok(serde_json::to_string_pretty(&report).expect("report serializes") + "\n")
    } else {
        Ok(render_report(&report))
    }
}

// ---------------------------------------------------------------------------
// count

#[derive(Debug, Clone, Serialize)]
pub struct CountSummary {
    pub vertices: usize,
    pub edges: usize,
    pub kappa: usize,
    pub hom_total: u64,
    /// `(orbit representative, Agg)` per orbit.
    pub aggregates: Vec<(usize, u64)>,
    pub seconds: f64,
}

impl fmt::Display for CountSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} m={} kappa={}",
            self.vertices, self.edges, self.kappa
        )?;
        writeln!(f, "Hom(H,G)={}", self.hom_total)?;
        for (rep, agg) in &self.aggregates {
            writeln!(f, "Agg(orbit {rep})={agg}")?;
        }
        write!(f, "wall time: {:.3}s", self.seconds)
    }
}

/// Orbit counts of `h` on `g` as TSV text, plus a run summary.
pub fn count_tsv(
    h: &Pattern,
    g: &Graph,
    config: &EngineConfig,
) -> Result<(String, CountSummary), CliError> {
    let start = Instant::now();
    let plan = OrbitCountPlan::new(h)?;
    let order = degeneracy_order(g);
    let oriented = orient_acyclic(g, &order);
    let counts = plan.run_oriented(&oriented, config)?;
    let aggregates = (0..counts.table.orbit_count())
        .map(|i| {
            Ok((
                counts.table.representatives()[i],
                aggregate(&counts.table, i)?,
            ))
        })
        .collect::<Result<Vec<_>, EngineError>>()?;
    let summary = CountSummary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        kappa: order.kappa,
        hom_total: counts.hom_total,
        aggregates,
        seconds: start.elapsed().as_secs_f64(),
    };
    Ok((counts.table.to_tsv(), summary))
}

pub fn cmd_count(
    pattern: &Path,
    graph: &Path,
    out: &Path,
    threads: Option<u64>,
    k_max: usize,
) -> Result<CountSummary, CliError> {
    let h = read_pattern(pattern, k_max)?;
    let g = read_graph(graph)?;
    let (tsv, summary) = count_tsv(&h, &g, &config_for(threads))?;
    fs::write(out, tsv).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    Ok(summary)
}

// ---------------------------------------------------------------------------
// verify

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureStatus {
    Pass,
    /// Engine refused the pattern (LIPCO > 5); nothing to compare.
    Refused(String),
    /// The oracle's preflight budget was exceeded.
    OverBudget(String),
    Fail(String),
}

#[derive(Debug, Clone)]
pub struct FixtureResult {
    pub name: String,
    pub status: FixtureStatus,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub fixtures: Vec<FixtureResult>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.fixtures
            .iter()
            .filter(|f| matches!(f.status, FixtureStatus::Fail(_)))
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for f in &self.fixtures {
            let _ = match &f.status {
                FixtureStatus::Pass => writeln!(out, "PASS {}", f.name),
                FixtureStatus::Refused(why) => writeln!(out, "SKIP {} ({why})", f.name),
                FixtureStatus::OverBudget(why) => writeln!(out, "BUDGET {} ({why})", f.name),
                FixtureStatus::Fail(why) => writeln!(out, "FAIL {}: {why}", f.name),
            };
        }
        let _ = writeln!(
            out,
            "{}: {} fixture(s), {} failure(s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.fixtures.len(),
            self.failures()
        );
        out
    }
}

/// Checks one `(pattern, graph)` pair: engine sequential vs parallel, engine
/// vs oracle, and engine vs an optional expected TSV.
pub fn verify_pair(
    h: &Pattern,
    g: &Graph,
    expected_tsv: Option<&str>,
    budget: u64,
) -> FixtureStatus {
    let plan = match OrbitCountPlan::new(h) {
        Ok(plan) => plan,
        Err(e @ EngineError::DichotomyViolation { .. }) => {
            return FixtureStatus::Refused(e.to_string())
        }
        Err(e) => return FixtureStatus::Fail(e.to_string()),
    };
    let seq = match plan.run(g, &EngineConfig::sequential()) {
        Ok(c) => c.table,
        Err(e) => return FixtureStatus::Fail(e.to_string()),
    };
    let threads = EngineConfig::default().threads.max(2);
    match plan.run(g, &EngineConfig { threads }) {
        Ok(c) if c.table == seq => {}
        Ok(_) => {
            return FixtureStatus::Fail(format!("sequential and {threads}-thread runs differ"))
        }
        Err(e) => return FixtureStatus::Fail(e.to_string()),
    }
    if let Some(expected) = expected_tsv {
        let got = seq.to_tsv();
        if let Some((line, (e, a))) = expected
            .lines()
            .zip(got.lines())
            .enumerate()
            .find(|(_, (e, a))| e != a)
        {
            return FixtureStatus::Fail(format!(
                "expected TSV line {}: expected {e:?}, engine produced {a:?}",
                line + 1
            ));
        }
        if expected.lines().count() != got.lines().count() {
            return FixtureStatus::Fail(format!(
                "expected TSV has {} lines, engine produced {}",
                expected.lines().count(),
                got.lines().count()
            ));
        }
    }
    let oracle = match oracle_tables(h, g, budget) {
        Ok(t) => t,
        Err(e @ OracleError::BudgetExceeded { .. }) => {
            return FixtureStatus::OverBudget(e.to_string())
        }
    };
    for (i, row) in seq.rows().iter().enumerate() {
        for (v, (&got, &want)) in row.iter().zip(&oracle.orbit[i]).enumerate() {
            if got != want {
                return FixtureStatus::Fail(format!(
                    "orbit {} vertex {v}: engine {got}, oracle {want}",
                    seq.representatives()[i]
                ));
            }
        }
    }
    FixtureStatus::Pass
}

/// Runs every `<name>.pattern` / `<name>.graph` pair in `dir`. A
/// `<name>.expected` TSV, when present, is compared line by line as well.
pub fn cmd_verify(dir: &Path, budget: u64, k_max: usize) -> Result<VerifyReport, CliError> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "pattern"))
        .filter_map(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    names.sort();

    let mut report = VerifyReport::default();
    if names.is_empty() {
        report
            .warnings
            .push(format!("no *.pattern files in {}", dir.display()));
    }
    for name in names {
        let status = verify_fixture(dir, &name, budget, k_max);
        report.fixtures.push(FixtureResult { name, status });
    }
    Ok(report)
}

fn verify_fixture(dir: &Path, name: &str, budget: u64, k_max: usize) -> FixtureStatus {
    let h = match read_pattern(&dir.join(format!("{name}.pattern")), k_max) {
        Ok(h) => h,
        Err(e) => return FixtureStatus::Fail(e.to_string()),
    };
    let g = match read_graph(&dir.join(format!("{name}.graph"))) {
        Ok(g) => g,
        Err(e) => return FixtureStatus::Fail(e.to_string()),
    };
    let expected_path = dir.join(format!("{name}.expected"));
    let expected = if expected_path.exists() {
        match read(&expected_path) {
            Ok(text) => Some(text),
            Err(e) => return FixtureStatus::Fail(e.to_string()),
        }
    } else {
        None
    };
    verify_pair(&h, &g, expected.as_deref(), budget)
}

// ---------------------------------------------------------------------------
// bench

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    /// Degeneracy of the generated graph.
    pub kappa: usize,
    /// Median over the timed runs.
    pub seconds: f64,
    /// `seconds / previous row's seconds`.
    pub ratio: Option<f64>,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite timings"));
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Graph used for size `n`: seeded from `seed` and `n`, so every run with the
/// same seed sees the same graphs.
pub fn bench_graph(n: usize, kappa: usize, seed: u64) -> Graph {
    let mut rng = seeded_rng(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    bounded_degeneracy_graph(n, kappa, &mut rng)
}

/// Times orientation plus orbit counting (the core of `count`) at each size.
///
/// Repetitions go round-robin over the sizes, so a slow stretch on a busy
/// machine spreads over all sizes instead of skewing one of them.
pub fn bench(
    h: &Pattern,
    sizes: &[usize],
    kappa: usize,
    seed: u64,
    runs: usize,
    config: &EngineConfig,
) -> Result<Vec<BenchRow>, CliError> {
    if kappa == 0 {
        return Err(CliError::Config("--kappa must be at least 1".into()));
    }
    let plan = OrbitCountPlan::new(h)?;
    let graphs: Vec<Graph> = sizes.iter().map(|&n| bench_graph(n, kappa, seed)).collect();
    let mut times = vec![Vec::with_capacity(runs); sizes.len()];
    let mut degeneracy = vec![0; sizes.len()];
    for _ in 0..runs.max(1) {
        for (i, g) in graphs.iter().enumerate() {
            let start = Instant::now();
            let order = degeneracy_order(g);
            let oriented = orient_acyclic(g, &order);
            let counts = plan.run_oriented(&oriented, config)?;
            times[i].push(start.elapsed().as_secs_f64());
            degeneracy[i] = order.kappa;
            std::hint::black_box(counts);
        }
    }
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for (i, g) in graphs.iter().enumerate() {
        let seconds = median(&mut times[i]);
        let ratio = rows.last().map(|prev| seconds / prev.seconds);
        rows.push(BenchRow {
            n: g.vertex_count(),
            m: g.edge_count(),
            kappa: degeneracy[i],
            seconds,
            ratio,
        });
    }
    Ok(rows)
}

pub fn render_bench(rows: &[BenchRow], seed: u64) -> String {
    let mut out = format!("seed {seed}\nn\tm\tkappa\tseconds\tratio\n");
    for r in rows {
        let ratio = r
            .ratio
            .map_or_else(|| "-".to_string(), |x| format!("{x:.2}"));
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{:.4}\t{}",
            r.n, r.m, r.kappa, r.seconds, ratio
        );
    }
    out
}

/// Dispatches a parsed command line and returns what should go to stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze {
            pattern,
            json,
            decompositions,
            k_max,
        } => cmd_analyze(&pattern, json, decompositions, k_max),
        Command::Count {
            pattern,
            graph,
            out,
            threads,
            k_max,
        } => Ok(cmd_count(&pattern, &graph, &out, threads, k_max)?.to_string() + "\n"),
        Command::Verify {
            corpus,
            budget,
            k_max,
        } => {
            let report = cmd_verify(&corpus, budget, k_max)?;
            let text = report.render();
            if report.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::VerifyFailed(report.failures()))
            }
        }
        Command::Bench {
            pattern,
            sizes,
            kappa,
            seed,
            runs,
            threads,
            k_max,
        } => {
            let h = read_pattern(&pattern, k_max)?;
            let rows = bench(&h, &sizes, kappa, seed, runs as usize, &config_for(threads))?;
            Ok(render_bench(&rows, seed))
        }
    }
}

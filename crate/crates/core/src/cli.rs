//! The `bivar` command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::multiplicity::{mult_bivariate, mult_zero_weight};
use crate::oracles::{convolution_mult, freudenthal_diagram, kostka_count};
use crate::root_systems::{AlgebraSpec, Family, Weight};
use crate::weight_tables::{
    build_table, candidate_dominants, freudenthal_table, MultiplicityTable, TableMeta, TableRow,
};
use crate::ENGINE_VERSION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bivar", version, about = "Weight multiplicities of kε₁+lε₂ representations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiplicity of a single weight.
    Mult(MultArgs),
    /// All weights with their multiplicities.
    Table(TableArgs),
    /// Zero-weight multiplicity from the closed form (types B, C, D).
    Zero(AlgebraArgs),
    /// Compare the formulas against the oracles on a grid.
    Verify(VerifyArgs),
    /// Time both engines.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    k: i64,
    #[arg(long, default_value_t = 0)]
    l: i64,
}

impl AlgebraArgs {
    fn spec(&self) -> Result<AlgebraSpec, Error> {
        let spec = AlgebraSpec::new(self.family, self.rank)?;
        if self.l < 0 || self.k < self.l {
            return Err(Error::InvalidHighestWeight { k: self.k, l: self.l });
        }
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct MultArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Comma-separated coordinates (n+1 of them for type A).
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Bivariate,
    Freudenthal,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Bivariate => "bivariate",
            Engine::Freudenthal => "freudenthal",
        }
    }
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long)]
    dominant_only: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, env = "BIVAR_THREADS", default_value_t = 1)]
    parallel: usize,
    #[arg(long, value_enum, default_value = "bivariate")]
    engine: Engine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleChoice {
    Freudenthal,
    Convolution,
    Kostka,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// `families=…;ranks=…;maxsum=…`
    #[arg(long, default_value = "families=A,B,C,D;ranks=2,3;maxsum=4")]
    grid: String,
    #[arg(long, value_enum, default_value = "all")]
    oracle: OracleChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Table1,
    Table2,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    SingleWeight,
    FullTable,
    DominantTable,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::SingleWeight => "single_weight",
            Mode::FullTable => "full_table",
            Mode::DominantTable => "dominant_table",
        }
    }
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    /// Output file; `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
    // custom suite only
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    l: Option<i64>,
    #[arg(long, value_enum, default_value = "full-table")]
    mode: Mode,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Mult(a) => cmd_mult(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Zero(a) => cmd_zero(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_weight(text: &str) -> Result<Weight, Failure> {
    let coords = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::usage(format!("invalid --mu '{text}': {e}")))?;
    Ok(Weight::new(coords))
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::io(e.to_string())
}

fn cmd_mult(a: &MultArgs, out: &mut dyn Write) -> CmdResult {
    let spec = a.algebra.spec()?;
    let mu = parse_weight(&a.mu)?;
    let m = mult_bivariate(&spec, a.algebra.k, a.algebra.l, &mu)?;
    writeln!(out, "{m}").map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_zero(a: &AlgebraArgs, out: &mut dyn Write) -> CmdResult {
    let spec = a.spec()?;
    let m = mult_zero_weight(&spec, a.k, a.l)?;
    writeln!(out, "{m}").map_err(io_err)?;
    Ok(EXIT_OK)
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, Failure> {
    if threads == 0 {
        return Err(Failure::usage("--parallel must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::usage(format!("cannot start {threads} threads: {e}")))
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> CmdResult {
    let spec = a.algebra.spec()?;
    let pool = thread_pool(a.parallel)?;
    let (k, l) = (a.algebra.k, a.algebra.l);
    let table = pool.install(|| match a.engine {
        Engine::Bivariate => build_table(&spec, k, l, a.dominant_only),
        Engine::Freudenthal => freudenthal_table(&spec, k, l, a.dominant_only),
    })?;
    let text = match a.format {
        Format::Json => to_json(&table),
        Format::Csv => to_csv(&table),
    };
    write_output(&a.out, text.as_bytes(), out)?;
    Ok(EXIT_OK)
}

fn write_output(path: &str, bytes: &[u8], out: &mut dyn Write) -> Result<(), Failure> {
    if path == "-" {
        out.write_all(bytes).map_err(io_err)
    } else {
        let path = PathBuf::from(path);
        std::fs::write(&path, bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonRow {
    mu: Vec<i64>,
    mult: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTable {
    family: String,
    rank: usize,
    k: i64,
    l: i64,
    dominant_only: bool,
    rows: Vec<JsonRow>,
    dimension: String,
}

/// Serializes a table. Only the mathematical content is written, so equal
/// tables give identical bytes.
pub fn to_json(table: &MultiplicityTable) -> String {
    let doc = JsonTable {
        family: table.spec.family().to_string(),
        rank: table.spec.rank(),
        k: table.k,
        l: table.l,
        dominant_only: table.dominant_only,
        rows: table
            .rows
            .iter()
            .map(|r| JsonRow {
                mu: r.weight.coords().to_vec(),
                mult: r.mult.to_string(),
            })
            .collect(),
        dimension: table.total_weight_count().to_string(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
    text.push('\n');
    text
}

/// Inverse of [`to_json`]. Metadata is not part of the format and comes
/// back empty.
pub fn from_json(text: &str) -> Result<MultiplicityTable, String> {
    let doc: JsonTable = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let family: Family = doc.family.parse()?;
    let spec = AlgebraSpec::new(family, doc.rank).map_err(|e| e.to_string())?;
    let mut rows = Vec::with_capacity(doc.rows.len());
    for row in doc.rows {
        let mult: BigUint = row.mult.parse().map_err(|e| format!("bad multiplicity '{}': {e}", row.mult))?;
        let weight = Weight::new(row.mu);
        spec.check_length(&weight).map_err(|e| e.to_string())?;
        let mirror = doc.dominant_only
            && family == Family::D
            && weight.coords().last().is_some_and(|&a| a < 0);
        rows.push(TableRow { weight, mult, mirror });
    }
    if rows.windows(2).any(|w| w[0].weight >= w[1].weight) {
        return Err("rows are not strictly sorted".into());
    }
    Ok(MultiplicityTable {
        spec,
        k: doc.k,
        l: doc.l,
        dominant_only: doc.dominant_only,
        rows,
        meta: TableMeta {
            generated_at: 0,
            engine_version: String::new(),
            elapsed: Default::default(),
        },
    })
}

/// `mu_1,…,mu_n,mult` rows, header first.
pub fn to_csv(table: &MultiplicityTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let len = table.spec.dim();
    let mut header: Vec<String> = (1..=len).map(|i| format!("mu_{i}")).collect();
    header.push("mult".into());
    w.write_record(&header).expect("in-memory write");
    for row in &table.rows {
        let mut record: Vec<String> = row.weight.coords().iter().map(|a| a.to_string()).collect();
        record.push(row.mult.to_string());
        w.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Parses the rows written by [`to_csv`].
pub fn rows_from_csv(text: &str) -> Result<Vec<(Weight, BigUint)>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| e.to_string())?.clone();
    let len = headers.len().checked_sub(1).ok_or("empty header")?;
    if headers.get(len) != Some("mult") {
        return Err("last column must be 'mult'".into());
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        let coords = (0..len)
            .map(|i| record[i].parse::<i64>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let mult = record[len].parse::<BigUint>().map_err(|e| e.to_string())?;
        rows.push((Weight::new(coords), mult));
    }
    Ok(rows)
}

struct Grid {
    families: Vec<Family>,
    ranks: Vec<usize>,
    maxsum: i64,
}

fn parse_grid(text: &str) -> Result<Grid, Failure> {
    let mut families = None;
    let mut ranks = None;
    let mut maxsum = None;
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("grid entry '{part}' is not key=value")))?;
        let list = || value.split(',').map(str::trim).filter(|v| !v.is_empty());
        match key.trim() {
            "families" => {
                let parsed = list().map(|v| v.parse::<Family>()).collect::<Result<Vec<_>, _>>();
                families = Some(parsed.map_err(Failure::usage)?);
            }
            "ranks" => {
                let parsed = list().map(|v| v.parse::<usize>()).collect::<Result<Vec<_>, _>>();
                ranks = Some(parsed.map_err(|e| Failure::usage(format!("bad rank list '{value}': {e}")))?);
            }
            "maxsum" => {
                let v = value
                    .trim()
                    .parse::<i64>()
                    .map_err(|e| Failure::usage(format!("bad maxsum '{value}': {e}")))?;
                maxsum = Some(v);
            }
            other => return Err(Failure::usage(format!("unknown grid key '{other}'"))),
        }
    }
    let grid = Grid {
        families: families.unwrap_or_else(|| Family::ALL.to_vec()),
        ranks: ranks.unwrap_or_else(|| vec![2, 3]),
        maxsum: maxsum.unwrap_or(4),
    };
    if grid.maxsum < 0 || grid.families.is_empty() || grid.ranks.is_empty() {
        return Err(Failure::usage("grid is empty"));
    }
    Ok(grid)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let grid = parse_grid(&a.grid)?;
    if a.oracle == OracleChoice::Kostka {
        if let Some(f) = grid.families.iter().find(|&&f| f != Family::A) {
            return Err(Failure::usage(format!(
                "the kostka oracle only applies to type A, grid contains type {f}"
            )));
        }
    }
    let specs: Vec<AlgebraSpec> = grid
        .families
        .iter()
        .flat_map(|&f| grid.ranks.iter().filter_map(move |&n| AlgebraSpec::new(f, n).ok()))
        .collect();
    if specs.is_empty() {
        return Err(Failure::usage("grid contains no valid algebra"));
    }
    let use_oracle = |o: OracleChoice| a.oracle == o || a.oracle == OracleChoice::All;
    let mut report = String::new();
    let mut compared = 0usize;
    let mut mismatches = 0usize;
    let mut check = |spec: &AlgebraSpec, k: i64, l: i64, mu: &Weight, name: &str, lhs: &BigUint, rhs: &BigUint| {
        compared += 1;
        if lhs != rhs {
            mismatches += 1;
            let _ = writeln!(
                report,
                "mismatch: {spec} k={k} l={l} mu={mu} bivariate={lhs} {name}={rhs}"
            );
        }
    };
    for spec in &specs {
        for total in 0..=grid.maxsum {
            for l in 0..=total / 2 {
                let k = total - l;
                let candidates = candidate_dominants(spec, k, l)?;
                let diagram = if use_oracle(OracleChoice::Freudenthal) {
                    Some(freudenthal_diagram(spec, &spec.highest_weight(k, l))?)
                } else {
                    None
                };
                for mu in &candidates {
                    let lhs = mult_bivariate(spec, k, l, mu)?;
                    if let Some(d) = &diagram {
                        check(spec, k, l, mu, "freudenthal", &lhs, &d.get(mu));
                    }
                    if use_oracle(OracleChoice::Convolution) {
                        check(spec, k, l, mu, "convolution", &lhs, &convolution_mult(spec, k, l, mu)?);
                    }
                    if use_oracle(OracleChoice::Kostka) && spec.family() == Family::A {
                        check(spec, k, l, mu, "kostka", &lhs, &kostka_count(&[k, l], mu.coords())?);
                    }
                }
            }
        }
    }
    write!(out, "{report}").map_err(io_err)?;
    writeln!(out, "compared {compared} multiplicities, {mismatches} mismatches").map_err(io_err)?;
    Ok(if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

/// One timing measurement.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub family: String,
    pub rank: usize,
    pub k: i64,
    pub l: i64,
    pub engine: String,
    pub mode: String,
    pub elapsed_s: f64,
    pub rows: usize,
    pub version: String,
    pub host: String,
}

fn host_note() -> String {
    std::env::var("HOSTNAME")
        .ok()
        .or_else(|| std::fs::read_to_string("/etc/hostname").ok())
        .map(|h| h.trim().to_string())
        .filter(|h| !h.is_empty())
        .unwrap_or_else(|| "unknown".into())
}

/// Runs one engine once; returns the produced row count.
fn run_once(spec: &AlgebraSpec, k: i64, l: i64, engine: Engine, mode: Mode) -> Result<usize, Error> {
    match mode {
        Mode::SingleWeight => {
            let mu = Weight::zero(spec.dim());
            let mu = if spec.family() == Family::A {
                candidate_dominants(spec, k, l)?.pop().unwrap_or(mu)
            } else {
                mu
            };
            match engine {
                Engine::Bivariate => {
                    mult_bivariate(spec, k, l, &mu)?;
                }
                Engine::Freudenthal => {
                    freudenthal_diagram(spec, &spec.highest_weight(k, l))?.get(&mu);
                }
            }
            Ok(1)
        }
        Mode::FullTable | Mode::DominantTable => {
            let dominant = mode == Mode::DominantTable;
            let table = match engine {
                Engine::Bivariate => build_table(spec, k, l, dominant)?,
                Engine::Freudenthal => freudenthal_table(spec, k, l, dominant)?,
            };
            Ok(table.rows.len())
        }
    }
}

/// Median wall time over `repeat` runs on a single worker thread.
pub fn bench_point(
    spec: &AlgebraSpec,
    k: i64,
    l: i64,
    engine: Engine,
    mode: Mode,
    repeat: usize,
) -> Result<BenchRecord, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("single-thread pool");
    let mut times = Vec::with_capacity(repeat);
    let mut rows = 0;
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        rows = pool.install(|| run_once(spec, k, l, engine, mode))?;
        times.push(start.elapsed().as_secs_f64());
    }
    times.sort_by(|a, b| a.total_cmp(b));
    Ok(BenchRecord {
        family: spec.family().to_string(),
        rank: spec.rank(),
        k,
        l,
        engine: engine.name().into(),
        mode: mode.name().into(),
        elapsed_s: times[times.len() / 2],
        rows,
        version: ENGINE_VERSION.into(),
        host: host_note(),
    })
}

type BenchPoint = (Family, usize, i64, i64, Mode);

fn suite_points(a: &BenchArgs) -> Result<Vec<BenchPoint>, Failure> {
    match a.suite {
        Suite::Table1 => {
            let mut points = Vec::new();
            for n in 2..=4 {
                for f in [Family::B, Family::C, Family::D] {
                    if n >= f.min_rank() {
                        points.push((f, n, 5, 3, Mode::FullTable));
                    }
                }
            }
            points.push((Family::D, 4, 5, 3, Mode::DominantTable));
            points.push((Family::D, 5, 20, 6, Mode::SingleWeight));
            Ok(points)
        }
        Suite::Table2 => Ok((0..=7).map(|l| (Family::D, 4, 14 - l, l, Mode::FullTable)).collect()),
        Suite::Custom => match (a.family, a.rank, a.k, a.l) {
            (Some(f), Some(n), Some(k), Some(l)) => {
                AlgebraArgs { family: f, rank: n, k, l }.spec()?;
                Ok(vec![(f, n, k, l, a.mode)])
            }
            _ => Err(Failure::usage("--suite custom needs --family, --rank, --k and --l")),
        },
    }
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> CmdResult {
    if a.repeat == 0 {
        return Err(Failure::usage("--repeat must be at least 1"));
    }
    let points = suite_points(a)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for (f, n, k, l, mode) in points {
        let spec = AlgebraSpec::new(f, n)?;
        for engine in [Engine::Bivariate, Engine::Freudenthal] {
            let record = bench_point(&spec, k, l, engine, mode, a.repeat)?;
            w.serialize(record).map_err(|e| Failure::io(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::io(e.to_string()))?;
    write_output(&a.out, &bytes, out)?;
    Ok(EXIT_OK)
}

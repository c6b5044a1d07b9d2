//! Command-line workflows for the `cremona` binary.
//!
//! Every command renders its whole report into a `String` so the output can
//! be compared byte for byte. Matrices are printed as plain rows, scalars as
//! `# key = value` comment lines, which keeps matrix output readable by
//! `--matrix` again.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cremona::cremap::stochastic_degree;
use cremona::glnz::WalkStats;
use cremona::io::parse_matrix;
use cremona::{census, Error, Family, FamilySpec, IntMatrix, MonomialMap, UnimodularMatrix, Walk, WalkConfig};
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_BIRATIONAL: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "cremona", version, about = "Monomial Cremona transformations of P^n")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a log-matrix and report degree and birationality.
    Check(MatrixInput),
    /// Print the inverse map and its degree.
    Invert(MatrixInput),
    /// Read g in GL_n(Z) and print A_g, d(g) and d(g^-1).
    Gln(MatrixInput),
    /// Enumerate every map of degree d on P^n and tally inverse degrees.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
        /// Worker threads, 0 for all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Random walk on GL_n(Z); prints how often each (d, d') pair occurs.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        dmax: i64,
        #[arg(long, default_value_t = WalkConfig::DEFAULT_MAX_MULTIPLE)]
        max_multiple: i64,
    },
    /// Build a named family member and print its predicted inverse degree.
    Family {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: i64,
    },
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// Matrix file (plain rows or {"matrix": [...]}), `-` for stdin.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Input lists one monomial per row instead of per column.
    #[arg(long)]
    pub transpose: bool,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotBirational(_) => EXIT_NOT_BIRATIONAL,
            Error::Overflow(_) | Error::Resource(_) => EXIT_RESOURCE,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
/// Returns the exit code, stdout and stderr.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { (code, text, String::new()) } else { (code, String::new(), text) };
        }
    };
    match run(&cli) {
        Ok(out) => (EXIT_OK, out, String::new()),
        Err(e) => (e.code, String::new(), format!("error: {}\n", e.message)),
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Check(input) => check(&read_input(input)?, json),
        Command::Invert(input) => invert(&read_input(input)?, json),
        Command::Gln(input) => gln(&read_input(input)?, json),
        Command::Enumerate { n, d, jobs } => enumerate(*n, *d, *jobs, json),
        Command::Sample { n, steps, seed, dmax, max_multiple } => {
            let config = WalkConfig {
                n: *n,
                max_multiple: *max_multiple,
                d_max: *dmax,
                steps: *steps,
                seed: *seed,
            };
            sample(config, json)
        }
        Command::Family { family, n, d } => family_report(family, *n, *d, json),
    }
}

fn read_input(input: &MatrixInput) -> Result<IntMatrix, CliError> {
    let text = if input.matrix.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&input.matrix)
    }
    .map_err(|e| CliError {
        code: EXIT_INVALID,
        message: format!("cannot read {}: {e}", input.matrix.display()),
    })?;
    let m = parse_matrix(&text)?;
    Ok(if input.transpose { m.transpose() } else { m })
}

/// Reduces `m`, with a notice when the degree drops.
fn ingest(m: &IntMatrix) -> Result<(MonomialMap, Option<String>), CliError> {
    let raw = stochastic_degree(m)?;
    let f = MonomialMap::from_log_matrix(m.clone())?;
    let notice = (f.degree() != raw)
        .then(|| format!("input columns sum to {raw}; reduced map has degree {}", f.degree()));
    Ok((f, notice))
}

fn push_kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "# {key} = {value}").unwrap();
}

fn push_matrix(out: &mut String, m: &IntMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(i64::to_string).collect();
        writeln!(out, "{}", row.join("\t")).unwrap();
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(m: &IntMatrix, json: bool) -> Result<String, CliError> {
    if let Err(e) = stochastic_degree(m) {
        return Err(CliError {
            code: EXIT_INVALID,
            message: format!("stochastic = no: {e}"),
        });
    }
    let (f, notice) = ingest(m)?;
    let lattice_det = f.lattice_det()?;
    let birational = lattice_det.abs() == 1;
    if json {
        return Ok(to_json(&json!({
            "stochastic": true,
            "n": f.n(),
            "degree": f.degree(),
            "lattice_det": lattice_det,
            "birational": birational,
            "reduced": f.log_matrix(),
            "notice": notice,
        })));
    }
    let mut out = String::new();
    push_kv(&mut out, "stochastic", "yes");
    push_kv(&mut out, "n", f.n());
    push_kv(&mut out, "degree", f.degree());
    push_kv(&mut out, "lattice_det", lattice_det);
    push_kv(&mut out, "birational", yes_no(birational));
    if let Some(n) = notice {
        push_kv(&mut out, "notice", n);
    }
    Ok(out)
}

fn invert(m: &IntMatrix, json: bool) -> Result<String, CliError> {
    let (f, notice) = ingest(m)?;
    let r = f.invert()?;
    if json {
        return Ok(to_json(&json!({
            "degree": f.degree(),
            "inverse": r.inverse.log_matrix(),
            "d_prime": r.inverse_degree,
            "row_minima_numerators": r.row_minima,
            "notice": notice,
        })));
    }
    let mut out = String::new();
    if let Some(n) = notice {
        push_kv(&mut out, "notice", n);
    }
    out.push_str("# inverse log-matrix\n");
    push_matrix(&mut out, r.inverse.log_matrix());
    push_kv(&mut out, "d", f.degree());
    push_kv(&mut out, "d'", r.inverse_degree);
    Ok(out)
}

fn gln(m: &IntMatrix, json: bool) -> Result<String, CliError> {
    let g = UnimodularMatrix::new(m.clone())?;
    let f = g.to_cremona()?;
    let d = g.degree()?;
    let d_inv = g.inverse_degree()?;
    if json {
        return Ok(to_json(&json!({
            "g": g.matrix(),
            "a_g": f.log_matrix(),
            "d": d,
            "d_inverse": d_inv,
        })));
    }
    let mut out = String::new();
    out.push_str("# A_g\n");
    push_matrix(&mut out, f.log_matrix());
    push_kv(&mut out, "d(g)", d);
    push_kv(&mut out, "d(g^-1)", d_inv);
    Ok(out)
}

#[derive(Serialize)]
struct HistogramRow {
    d_prime: i64,
    count: u64,
}

fn enumerate(n: usize, d: i64, jobs: usize, json: bool) -> Result<String, CliError> {
    if d < 2 {
        return Err(CliError {
            code: EXIT_INVALID,
            message: format!("enumerate needs d >= 2, got {d}"),
        });
    }
    let report = census::enumerate(n, d, jobs)?;
    let rows = report.histogram.rows();
    if json {
        let histogram: Vec<HistogramRow> = rows
            .iter()
            .map(|&(d_prime, count)| HistogramRow { d_prime, count })
            .collect();
        return Ok(to_json(&json!({
            "n": report.n,
            "d": report.d,
            "total_combinations": report.total_combinations,
            "surviving": report.surviving,
            "histogram": histogram,
            "gaps": report.gaps,
            "min_d_prime": report.min_d_prime,
            "max_d_prime": report.max_d_prime,
        })));
    }
    let mut out = String::new();
    writeln!(out, "# n = {}, d = {}", report.n, report.d).unwrap();
    out.push_str("# d_prime\tcount\n");
    for (dp, c) in rows {
        writeln!(out, "{dp}\t{c}").unwrap();
    }
    writeln!(out, "# total_combinations\t{}", report.total_combinations).unwrap();
    writeln!(out, "# total\t{}", report.surviving).unwrap();
    let gaps: Vec<String> = report.gaps.iter().map(i64::to_string).collect();
    writeln!(out, "# gaps\t{}", gaps.join(",")).unwrap();
    if let (Some(lo), Some(hi)) = (report.min_d_prime, report.max_d_prime) {
        writeln!(out, "# range\t{lo}\t{hi}").unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct PairRow {
    d: i64,
    d_prime: i64,
    count: u64,
}

fn sample(config: WalkConfig, json: bool) -> Result<String, CliError> {
    let mut walk = Walk::new(config)?;
    let mut occupancy: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for s in walk.by_ref() {
        *occupancy.entry((s.d, s.d_prime)).or_default() += 1;
    }
    let WalkStats { operations, degree_restarts, overflow_restarts } = walk.stats();
    if json {
        let pairs: Vec<PairRow> = occupancy
            .iter()
            .map(|(&(d, d_prime), &count)| PairRow { d, d_prime, count })
            .collect();
        return Ok(to_json(&json!({
            "config": config,
            "samples": config.steps,
            "operations": operations,
            "degree_restarts": degree_restarts,
            "overflow_restarts": overflow_restarts,
            "pairs": pairs,
        })));
    }
    let mut out = String::new();
    writeln!(
        out,
        "# n = {}, steps = {}, seed = {}, dmax = {}, max_multiple = {}",
        config.n, config.steps, config.seed, config.d_max, config.max_multiple
    )
    .unwrap();
    out.push_str("# d\td_prime\tcount\n");
    for ((d, dp), c) in &occupancy {
        writeln!(out, "{d}\t{dp}\t{c}").unwrap();
    }
    writeln!(out, "# samples\t{}", config.steps).unwrap();
    writeln!(out, "# operations\t{operations}").unwrap();
    writeln!(out, "# degree_restarts\t{degree_restarts}").unwrap();
    writeln!(out, "# overflow_restarts\t{overflow_restarts}").unwrap();
    writeln!(out, "# distinct_pairs\t{}", occupancy.len()).unwrap();
    Ok(out)
}

fn family_report(name: &str, n: usize, d: i64, json: bool) -> Result<String, CliError> {
    let family: Family = name.parse()?;
    let spec = FamilySpec::new(family, n, d)?;
    let f = spec.build()?;
    let predicted = spec.predicted_inverse_degree()?;
    let computed = f.invert()?.inverse_degree;
    if json {
        return Ok(to_json(&json!({
            "family": family,
            "n": n,
            "d": f.degree(),
            "log_matrix": f.log_matrix(),
            "predicted_d_prime": predicted,
            "d_prime": computed,
        })));
    }
    let mut out = String::new();
    writeln!(out, "# family = {family}, n = {n}, d = {}", f.degree()).unwrap();
    push_matrix(&mut out, f.log_matrix());
    push_kv(&mut out, "predicted d'", predicted);
    push_kv(&mut out, "d'", computed);
    Ok(out)
}

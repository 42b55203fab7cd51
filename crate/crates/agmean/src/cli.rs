//! Command-line front end. Five subcommands cover the crate's capabilities:
//! `constants` (limit constants per p), `rate-curve` (tabulated rate
//! function), `clt` (normalized-fluctuation experiment), `ldp` (tail
//! estimation against the rate function), and `surface-vs-cone` (measure
//! comparison).
//!
//! Every run is deterministic given its full configuration including the
//! seed. Output begins with '#'-prefixed metadata lines (tool version,
//! subcommand, resolved config echo, seed) followed by a header row and
//! data rows, as CSV or JSON. Floats are written with 17 significant
//! digits so files round-trip exactly. A `--config` file supplies
//! `key=value` defaults for any long flag; explicit flags win.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::experiments::{
    clt_experiment, ldp_naive, ldp_tilted, surface_vs_cone, Estimator, EventSpec, Measure, Side,
};
use crate::ratefn::{clt_sigma, m_p, rate_curve, PParam};
use crate::specfun::{digamma, trigamma};

const TOOL: &str = concat!("agmean ", env!("CARGO_PKG_VERSION"));

#[derive(Parser)]
#[command(name = "agmean", version, about = "Ratio-of-means statistics on l_p spheres and balls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the limit constants and related quantities per p
    Constants(ConstantsArgs),
    /// Tabulate the rate function over a theta range
    RateCurve(RateCurveArgs),
    /// Run the normalized-fluctuation experiment
    Clt(CltArgs),
    /// Estimate tail probabilities against the rate function
    Ldp(LdpArgs),
    /// Compare event probabilities under surface and cone measures
    SurfaceVsCone(SurfaceArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// RNG seed (echoed in the output header)
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// key=value file supplying defaults for any long flag
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Single p value
    #[arg(long)]
    p: Option<f64>,
    /// Comma-separated p values
    #[arg(long)]
    p_list: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct RateCurveArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    p_list: Option<String>,
    /// Lower end of the theta range, in (0, 1)
    #[arg(long)]
    theta_min: Option<f64>,
    /// Upper end of the theta range, in (0, 1)
    #[arg(long)]
    theta_max: Option<f64>,
    /// Number of grid points per p
    #[arg(long)]
    points: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CltArgs {
    #[arg(long)]
    p: Option<f64>,
    /// Dimension of each sampled point
    #[arg(long)]
    n: Option<usize>,
    /// Number of replications
    #[arg(long)]
    reps: Option<usize>,
    /// Sampling measure: ball, cone, or surface
    #[arg(long)]
    measure: Option<String>,
    /// Comma-separated normalized thresholds a
    #[arg(long, allow_hyphen_values = true)]
    a_grid: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct LdpArgs {
    #[arg(long)]
    p: Option<f64>,
    /// Tail threshold theta, in (0, 1)
    #[arg(long)]
    theta: Option<f64>,
    /// Single dimension n
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated dimensions, one output row each
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long)]
    reps: Option<usize>,
    /// Estimator: naive or tilted
    #[arg(long)]
    estimator: Option<String>,
    /// Tail side: upper or lower; inferred from theta when omitted
    #[arg(long)]
    side: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long)]
    reps: Option<usize>,
    /// Event threshold on the ratio; defaults to e^(m_p)
    #[arg(long)]
    theta: Option<f64>,
    /// Event side: upper (ratio >= theta) or lower (ratio <= theta)
    #[arg(long)]
    side: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

/// Entry point for the binary: parses `std::env::args`, runs, maps errors
/// to exit codes (0 success, 2 usage or domain, 3 I/O, 4 internal).
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// In-process driver used by tests: same behavior as the binary minus the
/// process exit.
pub fn try_main<I, S>(argv: I) -> Result<()>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Usage(e.to_string()))?;
    run(cli)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Constants(a) => cmd_constants(a),
        Command::RateCurve(a) => cmd_rate_curve(a),
        Command::Clt(a) => cmd_clt(a),
        Command::Ldp(a) => cmd_ldp(a),
        Command::SurfaceVsCone(a) => cmd_surface_vs_cone(a),
    }
}

// ---------------------------------------------------------------- config

/// Parsed `key=value` config file. Keys use the long flag spelling
/// (`a-grid`, `theta-min`, ...); '#' lines and blank lines are skipped.
#[derive(Default)]
struct FileConfig(BTreeMap<String, String>);

impl FileConfig {
    fn load(path: Option<&PathBuf>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)?;
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Usage(format!(
                    "config line {} is not key=value: '{line}'",
                    lineno + 1
                )));
            };
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Self(map))
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for k in self.0.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::Usage(format!("unknown config key '{k}'")));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(|s| s.as_str())
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("expected a number, got '{s}'")))
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("expected a nonnegative integer, got '{s}'")))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("expected a nonnegative integer, got '{s}'")))
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(parse_f64)
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Usage("empty list".into()));
    }
    Ok(v)
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split(',')
        .map(parse_usize)
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Usage("empty list".into()));
    }
    Ok(v)
}

/// Flag value if present, else the parsed config value, else the default.
fn resolve<T>(
    flag: Option<T>,
    cfg: &FileConfig,
    key: &str,
    default: T,
    parse: impl Fn(&str) -> Result<T>,
) -> Result<T> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match cfg.get(key) {
        Some(s) => parse(s),
        None => Ok(default),
    }
}

/// Single/list flag pairs (`--p`/`--p-list`, `--n`/`--n-list`): an explicit
/// flag beats the config file entirely; within one source, setting both
/// spellings is an error.
#[allow(clippy::too_many_arguments)]
fn resolve_scalar_or_list<T: Clone>(
    single_flag: Option<T>,
    list_flag: Option<String>,
    cfg: &FileConfig,
    single_key: &str,
    list_key: &str,
    default: Vec<T>,
    parse_single: impl Fn(&str) -> Result<T>,
    parse_list: impl Fn(&str) -> Result<Vec<T>>,
) -> Result<Vec<T>> {
    match (single_flag, list_flag) {
        (Some(_), Some(_)) => Err(Error::Usage(format!(
            "--{single_key} conflicts with --{list_key}"
        ))),
        (Some(v), None) => Ok(vec![v]),
        (None, Some(s)) => parse_list(&s),
        (None, None) => match (cfg.get(single_key), cfg.get(list_key)) {
            (Some(_), Some(_)) => Err(Error::Usage(format!(
                "config sets both {single_key} and {list_key}"
            ))),
            (Some(s), None) => Ok(vec![parse_single(s)?]),
            (None, Some(s)) => parse_list(s),
            (None, None) => Ok(default),
        },
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Usage(format!(
                "unknown format '{s}' (expected csv or json)"
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

// ---------------------------------------------------------------- output

enum Cell {
    F(f64),
    I(u64),
    S(String),
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(x) => fmt_f(*x),
            Cell::I(n) => n.to_string(),
            Cell::S(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::F(x) if x.is_finite() => serde_json::Number::from_f64(*x)
                .map(serde_json::Value::Number)
                .expect("finite f64 converts"),
            // JSON has no inf/NaN literals; encode them as strings
            Cell::F(x) => serde_json::Value::String(fmt_f(*x)),
            Cell::I(n) => serde_json::Value::Number((*n).into()),
            Cell::S(s) => serde_json::Value::String(s.clone()),
        }
    }
}

/// Resolved config entries echoed into the metadata header, in key order.
struct ConfigEcho(BTreeMap<&'static str, String>);

impl ConfigEcho {
    fn new() -> Self {
        Self(BTreeMap::new())
    }

    fn put(&mut self, key: &'static str, value: String) -> &mut Self {
        self.0.insert(key, value);
        self
    }

    fn put_f(&mut self, key: &'static str, value: f64) -> &mut Self {
        self.put(key, fmt_f(value))
    }

    fn put_f_list(&mut self, key: &'static str, values: &[f64]) -> &mut Self {
        let joined: Vec<String> = values.iter().map(|v| fmt_f(*v)).collect();
        self.put(key, joined.join(","))
    }

    fn render(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join(" ")
    }
}

struct Table {
    subcommand: &'static str,
    echo: ConfigEcho,
    seed: u64,
    /// Experiment-level scalars and warnings, after the standard lines.
    extra_meta: Vec<(String, String)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn meta_lines(&self) -> Vec<(String, String)> {
        let mut m = vec![
            ("tool".to_string(), TOOL.to_string()),
            ("subcommand".to_string(), self.subcommand.to_string()),
            ("config".to_string(), self.echo.render()),
            ("seed".to_string(), self.seed.to_string()),
        ];
        m.extend(self.extra_meta.iter().cloned());
        m
    }

    fn write_csv(&self, w: &mut dyn Write) -> Result<()> {
        for (k, v) in self.meta_lines() {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, w: &mut dyn Write) -> Result<()> {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .meta_lines()
            .into_iter()
            .map(|(k, v)| (k, serde_json::Value::String(v)))
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({ "meta": meta, "rows": rows });
        serde_json::to_writer_pretty(&mut *w, &doc)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        writeln!(w)?;
        Ok(())
    }

    fn emit(&self, out: Option<&PathBuf>, format: Format) -> Result<()> {
        let mut sink: Box<dyn Write> = match out {
            Some(p) if p.as_os_str() != "-" => Box::new(fs::File::create(p)?),
            _ => Box::new(std::io::stdout().lock()),
        };
        match format {
            Format::Csv => self.write_csv(&mut sink)?,
            Format::Json => self.write_json(&mut sink)?,
        }
        sink.flush()?;
        Ok(())
    }
}

// ------------------------------------------------------------ subcommands

const COMMON_KEYS: [&str; 3] = ["seed", "out", "format"];

fn common_keys<'a>(extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = extra.to_vec();
    v.extend_from_slice(&COMMON_KEYS);
    v
}

struct CommonResolved {
    seed: u64,
    out: Option<PathBuf>,
    format: Format,
}

fn resolve_common(c: &CommonArgs, cfg: &FileConfig) -> Result<CommonResolved> {
    let seed = resolve(c.seed, cfg, "seed", 0, parse_u64)?;
    let out = match &c.out {
        Some(p) => Some(p.clone()),
        None => cfg.get("out").map(PathBuf::from),
    };
    let format = match &c.format {
        Some(s) => Format::parse(s)?,
        None => match cfg.get("format") {
            Some(s) => Format::parse(s)?,
            None => Format::Csv,
        },
    };
    Ok(CommonResolved { seed, out, format })
}

fn cmd_constants(a: ConstantsArgs) -> Result<()> {
    let cfg = FileConfig::load(a.common.config.as_ref())?;
    cfg.check_keys(&common_keys(&["p", "p-list"]))?;
    let p_values = resolve_scalar_or_list(
        a.p,
        a.p_list,
        &cfg,
        "p",
        "p-list",
        vec![1.0, 2.0, 4.0],
        parse_f64,
        parse_f64_list,
    )?;
    let common = resolve_common(&a.common, &cfg)?;

    let mut rows = Vec::new();
    for &pv in &p_values {
        let p = PParam::new(pv)?;
        let m = m_p(p);
        rows.push(vec![
            Cell::F(pv),
            Cell::F(m),
            Cell::F(m.exp()),
            Cell::F(clt_sigma(p)?),
            Cell::F(digamma(1.0 / pv)?),
            Cell::F(trigamma(1.0 / pv)?),
            Cell::F(0.0),
            Cell::F(1.0),
        ]);
    }
    let mut echo = ConfigEcho::new();
    echo.put_f_list("p-list", &p_values);
    echo.put("format", common.format.name().to_string());
    let table = Table {
        subcommand: "constants",
        echo,
        seed: common.seed,
        extra_meta: vec![],
        columns: vec![
            "p",
            "m_p",
            "exp_m_p",
            "clt_sigma",
            "psi_at_inv_p",
            "trigamma_at_inv_p",
            "g_domain_lo",
            "g_domain_hi",
        ],
        rows,
    };
    table.emit(common.out.as_ref(), common.format)
}

fn cmd_rate_curve(a: RateCurveArgs) -> Result<()> {
    let cfg = FileConfig::load(a.common.config.as_ref())?;
    cfg.check_keys(&common_keys(&["p", "p-list", "theta-min", "theta-max", "points"]))?;
    let p_values = resolve_scalar_or_list(
        a.p,
        a.p_list,
        &cfg,
        "p",
        "p-list",
        vec![1.0, 2.0, 10.0],
        parse_f64,
        parse_f64_list,
    )?;
    let theta_min = resolve(a.theta_min, &cfg, "theta-min", 0.05, parse_f64)?;
    let theta_max = resolve(a.theta_max, &cfg, "theta-max", 0.95, parse_f64)?;
    let points = resolve(a.points, &cfg, "points", 181, parse_usize)?;
    let common = resolve_common(&a.common, &cfg)?;

    let mut rows = Vec::new();
    for &pv in &p_values {
        let p = PParam::new(pv)?;
        for pt in rate_curve(p, theta_min, theta_max, points)? {
            rows.push(vec![
                Cell::F(pv),
                Cell::F(pt.theta),
                Cell::F(pt.j_value),
                Cell::F(pt.g_value),
                Cell::F(pt.s_star),
                Cell::F(pt.t_star),
            ]);
        }
    }
    let mut echo = ConfigEcho::new();
    echo.put_f_list("p-list", &p_values);
    echo.put_f("theta-min", theta_min);
    echo.put_f("theta-max", theta_max);
    echo.put("points", points.to_string());
    echo.put("format", common.format.name().to_string());
    let table = Table {
        subcommand: "rate-curve",
        echo,
        seed: common.seed,
        extra_meta: vec![],
        columns: vec!["p", "theta", "j", "g", "s_star", "t_star"],
        rows,
    };
    table.emit(common.out.as_ref(), common.format)
}

const DEFAULT_A_GRID: [f64; 9] = [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0];

fn cmd_clt(a: CltArgs) -> Result<()> {
    let cfg = FileConfig::load(a.common.config.as_ref())?;
    cfg.check_keys(&common_keys(&["p", "n", "reps", "measure", "a-grid"]))?;
    let pv = resolve(a.p, &cfg, "p", 2.0, parse_f64)?;
    let n = resolve(a.n, &cfg, "n", 4000, parse_usize)?;
    let reps = resolve(a.reps, &cfg, "reps", 2000, parse_usize)?;
    let measure: Measure = resolve(
        a.measure,
        &cfg,
        "measure",
        "cone".to_string(),
        |s| Ok(s.to_string()),
    )?
    .parse()?;
    let a_grid = resolve(
        a.a_grid.as_deref().map(parse_f64_list).transpose()?,
        &cfg,
        "a-grid",
        DEFAULT_A_GRID.to_vec(),
        parse_f64_list,
    )?;
    let common = resolve_common(&a.common, &cfg)?;

    let p = PParam::new(pv)?;
    let res = clt_experiment(p, n, reps, measure, &a_grid, common.seed)?;

    let rows = res
        .tails
        .iter()
        .map(|t| {
            vec![
                Cell::F(t.a),
                Cell::F(t.empirical),
                Cell::F(t.limit),
                Cell::F((t.empirical - t.limit).abs()),
                Cell::F(t.std_error),
            ]
        })
        .collect();
    let mut echo = ConfigEcho::new();
    echo.put_f("p", pv);
    echo.put("n", n.to_string());
    echo.put("reps", reps.to_string());
    echo.put("measure", measure.to_string());
    echo.put_f_list("a-grid", &a_grid);
    echo.put("format", common.format.name().to_string());
    let table = Table {
        subcommand: "clt",
        echo,
        seed: common.seed,
        extra_meta: vec![
            ("ks_distance".to_string(), fmt_f(res.ks_distance)),
            ("half_prob".to_string(), fmt_f(res.half_prob)),
        ],
        columns: vec!["a", "empirical_prob", "limit_prob", "abs_diff", "stderr"],
        rows,
    };
    table.emit(common.out.as_ref(), common.format)
}

fn cmd_ldp(a: LdpArgs) -> Result<()> {
    let cfg = FileConfig::load(a.common.config.as_ref())?;
    cfg.check_keys(&common_keys(&[
        "p",
        "theta",
        "n",
        "n-list",
        "reps",
        "estimator",
        "side",
    ]))?;
    let pv = resolve(a.p, &cfg, "p", 2.0, parse_f64)?;
    let theta = resolve(a.theta, &cfg, "theta", 0.7, parse_f64)?;
    let n_values = resolve_scalar_or_list(
        a.n,
        a.n_list,
        &cfg,
        "n",
        "n-list",
        vec![200],
        parse_usize,
        parse_usize_list,
    )?;
    let reps = resolve(a.reps, &cfg, "reps", 100_000, parse_usize)?;
    let estimator: Estimator = resolve(
        a.estimator,
        &cfg,
        "estimator",
        "tilted".to_string(),
        |s| Ok(s.to_string()),
    )?
    .parse()?;
    let p = PParam::new(pv)?;
    let side: Side = match resolve(a.side, &cfg, "side", String::new(), |s| Ok(s.to_string()))? {
        s if s.is_empty() => {
            // infer the tail from the position of theta relative to the
            // limit constant
            if !(theta > 0.0 && theta < 1.0) {
                return Err(Error::Usage(format!("theta must lie in (0, 1), got {theta}")));
            }
            if theta >= m_p(p).exp() {
                Side::Upper
            } else {
                Side::Lower
            }
        }
        s => s.parse()?,
    };
    let common = resolve_common(&a.common, &cfg)?;

    let mut rows = Vec::new();
    let mut extra_meta = Vec::new();
    for (idx, &n) in n_values.iter().enumerate() {
        let seed = common.seed.wrapping_add(idx as u64);
        let r = match estimator {
            Estimator::Naive => ldp_naive(p, theta, n, reps, side, seed)?,
            Estimator::Tilted => ldp_tilted(p, theta, n, reps, side, seed)?,
        };
        let minus = -r.log_prob_per_n;
        let rel_err = (minus - r.j_reference).abs() / r.j_reference;
        if r.feasibility_warning {
            extra_meta.push((
                "warning".to_string(),
                format!(
                    "expected hit count below 50 for naive estimator at n={n} (got {} hits)",
                    r.hits
                ),
            ));
        }
        rows.push(vec![
            Cell::F(theta),
            Cell::S(side.to_string()),
            Cell::I(n as u64),
            Cell::S(estimator.to_string()),
            Cell::F(minus),
            Cell::F(r.j_reference),
            Cell::F(rel_err),
            Cell::F(r.rel_std_error),
        ]);
    }
    let mut echo = ConfigEcho::new();
    echo.put_f("p", pv);
    echo.put_f("theta", theta);
    let n_strs: Vec<String> = n_values.iter().map(|n| n.to_string()).collect();
    echo.put("n-list", n_strs.join(","));
    echo.put("reps", reps.to_string());
    echo.put("estimator", estimator.to_string());
    echo.put("side", side.to_string());
    echo.put("format", common.format.name().to_string());
    let table = Table {
        subcommand: "ldp",
        echo,
        seed: common.seed,
        extra_meta,
        columns: vec![
            "theta",
            "side",
            "n",
            "estimator",
            "minus_log_prob_per_n",
            "j_reference",
            "rel_err",
            "stderr",
        ],
        rows,
    };
    table.emit(common.out.as_ref(), common.format)
}

fn cmd_surface_vs_cone(a: SurfaceArgs) -> Result<()> {
    let cfg = FileConfig::load(a.common.config.as_ref())?;
    cfg.check_keys(&common_keys(&["p", "n", "n-list", "reps", "theta", "side"]))?;
    let pv = resolve(a.p, &cfg, "p", 4.0, parse_f64)?;
    let n_values = resolve_scalar_or_list(
        a.n,
        a.n_list,
        &cfg,
        "n",
        "n-list",
        vec![10, 100, 1000],
        parse_usize,
        parse_usize_list,
    )?;
    let reps = resolve(a.reps, &cfg, "reps", 100_000, parse_usize)?;
    let p = PParam::new(pv)?;
    let theta = resolve(a.theta, &cfg, "theta", m_p(p).exp(), parse_f64)?;
    let side: Side = resolve(a.side, &cfg, "side", "upper".to_string(), |s| Ok(s.to_string()))?
        .parse()?;
    let common = resolve_common(&a.common, &cfg)?;

    let event = match side {
        Side::Upper => EventSpec::RatioAtLeast(theta),
        Side::Lower => EventSpec::RatioAtMost(theta),
    };
    let result = surface_vs_cone(p, &n_values, reps, event, common.seed)?;
    let rows = result
        .iter()
        .map(|r| {
            vec![
                Cell::I(r.n as u64),
                Cell::F(r.cone_prob),
                Cell::F(r.surface_prob),
                Cell::F(r.gap),
                Cell::F(r.cone_std_error),
                Cell::F(r.surface_std_error),
            ]
        })
        .collect();
    let mut echo = ConfigEcho::new();
    echo.put_f("p", pv);
    let n_strs: Vec<String> = n_values.iter().map(|n| n.to_string()).collect();
    echo.put("n-list", n_strs.join(","));
    echo.put("reps", reps.to_string());
    echo.put_f("theta", theta);
    echo.put("side", side.to_string());
    echo.put("format", common.format.name().to_string());
    let table = Table {
        subcommand: "surface-vs-cone",
        echo,
        seed: common.seed,
        extra_meta: vec![],
        columns: vec![
            "n",
            "cone_prob",
            "surface_prob",
            "gap",
            "cone_stderr",
            "surface_stderr",
        ],
        rows,
    };
    table.emit(common.out.as_ref(), common.format)
}

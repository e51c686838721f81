//! Command-line front end: `point`, `sweep`, `figure` and `selftest`.

mod output;
pub mod presets;
pub mod selftest;

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    detect_kinks, detect_regrowth, evaluate_point, qpt_signature, run_sweep, Quantity, SweepAxis, SweepParam,
    SweepResult, SweepSpec,
};
use crate::discord::OptimizerConfig;
use crate::error::Error;
use crate::model::ModelParams;

pub use output::{csv_header, format_number, write_csv, PointOutput, REPORT_COLUMNS, SIGNIFICANT_DIGITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "thermal-discord", version, about = "Thermal discord and entanglement of a two-qubit Heisenberg XYZ chain")]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one parameter point and print a JSON report.
    Point(PointArgs),
    /// Sweep one or two parameters and write a table.
    Sweep(Box<SweepArgs>),
    /// Regenerate the data for a named figure preset.
    Figure(FigureArgs),
    /// Run oracle and invariant checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args, Default)]
struct ModelArgs {
    #[arg(long, allow_negative_numbers = true)]
    jx: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    jy: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    jz: Option<f64>,
    /// Isotropic coupling, sets Jx = Jy = Jz.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["jx", "jy", "jz"])]
    j: Option<f64>,
    /// Magnetic field along z.
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// Temperature in units of the coupling (k_B = 1).
    #[arg(long = "kt", visible_alias = "kT", allow_negative_numbers = true)]
    kt: Option<f64>,
    /// File of `key = value` lines; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Detector {
    Kinks,
    Regrowth,
    Qpt,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Parameter on the first axis: jx, jy, jz, j, jxyz, delta, b or kT.
    #[arg(long)]
    axis: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    axis2: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    from2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    to2: Option<f64>,
    #[arg(long)]
    points2: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Feature detectors to run on the sweep (comma separated).
    #[arg(long, value_enum, value_delimiter = ',')]
    detect: Vec<Detector>,
    /// Quantity the detectors look at.
    #[arg(long)]
    quantity: Option<String>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Preset name.
    name: String,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Also write a gnuplot script.
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
    seed: u64,
    /// Random draws for the cheap checks; the optimizer checks use a fifth of this.
    #[arg(long, default_value_t = 1000)]
    draws: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// Errors from a model evaluation: parameter problems are usage errors.
fn classify(e: Error) -> CliError {
    match e {
        Error::InvalidParams(_) | Error::InvalidSweep(_) => CliError::Usage(e.to_string()),
        other => CliError::Failure(other.to_string()),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_USAGE;
        }
        // Fails only if the pool is already initialized, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = match cli.command {
        Command::Point(a) => point(a),
        Command::Sweep(a) => sweep(*a),
        Command::Figure(a) => figure(a),
        Command::Selftest(a) => run_selftest(a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

/// Flat `key = value` configuration; `#` starts a comment.
fn read_config(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

fn parse_config(text: &str) -> Result<HashMap<String, String>, CliError> {
    let mut map = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", n + 1)))?;
        let key = key.trim().to_ascii_lowercase().replace('_', "-");
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

struct Config(HashMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        Ok(Config(match path {
            Some(p) => read_config(p)?,
            None => HashMap::new(),
        }))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.0
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config: bad value `{v}` for `{key}`")))
            })
            .transpose()
    }

    fn pick<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }
}

/// Resolves couplings and field; kT is returned separately because sweeps over
/// kT do not need it.
fn resolve_model(m: &ModelArgs, cfg: &Config) -> Result<(ModelParams, Option<f64>), CliError> {
    let mut p = ModelParams {
        jx: 0.0,
        jy: 0.0,
        jz: 0.0,
        b: 0.0,
        kt: 1.0,
    };
    let mut j = cfg.get::<f64>("j")?;
    if m.jx.is_some() || m.jy.is_some() || m.jz.is_some() {
        j = None;
    }
    if let Some(j) = m.j.or(j) {
        p.jx = j;
        p.jy = j;
        p.jz = j;
    }
    if let Some(v) = cfg.pick(m.jx, "jx")? {
        p.jx = v;
    }
    if let Some(v) = cfg.pick(m.jy, "jy")? {
        p.jy = v;
    }
    if let Some(v) = cfg.pick(m.jz, "jz")? {
        p.jz = v;
    }
    if let Some(v) = cfg.pick(m.b, "b")? {
        p.b = v;
    }
    let kt = cfg.pick(m.kt, "kt")?;
    Ok((p, kt))
}

fn point(a: PointArgs) -> Result<i32, CliError> {
    let cfg = Config::load(a.model.config.as_deref())?;
    let (mut p, kt) = resolve_model(&a.model, &cfg)?;
    p.kt = kt.ok_or_else(|| CliError::Usage("--kt is required".into()))?;
    p.validate().map_err(usage)?;
    let report = evaluate_point(&p, &OptimizerConfig::default()).map_err(classify)?;
    let json = serde_json::to_string(&PointOutput::new(&p, &report)).map_err(|e| CliError::Failure(e.to_string()))?;
    println!("{json}");
    Ok(EXIT_OK)
}

fn axis_from(
    cfg: &Config,
    param: Option<String>,
    from: Option<f64>,
    to: Option<f64>,
    points: Option<usize>,
    suffix: &str,
) -> Result<Option<SweepAxis>, CliError> {
    let Some(name) = cfg.pick(param, &format!("axis{suffix}"))? else {
        return Ok(None);
    };
    let param: SweepParam = name.parse().map_err(usage)?;
    let missing = |flag: &str| CliError::Usage(format!("--{flag}{suffix} is required with --axis{suffix}"));
    let start = cfg.pick(from, &format!("from{suffix}"))?.ok_or_else(|| missing("from"))?;
    let stop = cfg.pick(to, &format!("to{suffix}"))?.ok_or_else(|| missing("to"))?;
    let count = cfg.pick(points, &format!("points{suffix}"))?.ok_or_else(|| missing("points"))?;
    Ok(Some(SweepAxis::new(param, start, stop, count)))
}

fn parse_quantity(s: &str) -> Result<Quantity, CliError> {
    s.parse().map_err(usage)
}

fn sweep(a: SweepArgs) -> Result<i32, CliError> {
    let cfg = Config::load(a.model.config.as_deref())?;
    let (mut base, kt) = resolve_model(&a.model, &cfg)?;
    let axis1 = axis_from(&cfg, a.axis, a.from, a.to, a.points, "")?
        .ok_or_else(|| CliError::Usage("--axis is required".into()))?;
    let axis2 = axis_from(&cfg, a.axis2, a.from2, a.to2, a.points2, "2")?;
    let sweeps_kt = axis1.param == SweepParam::Kt || axis2.is_some_and(|ax| ax.param == SweepParam::Kt);
    match kt {
        Some(kt) => base.kt = kt,
        None if sweeps_kt => {}
        None => return Err(CliError::Usage("--kt is required unless kT is swept".into())),
    }
    let format = match a.format {
        Some(f) => f,
        None => match cfg.0.get("format").map(String::as_str) {
            None | Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => return Err(CliError::Usage(format!("config: unknown format `{other}`"))),
        },
    };
    let mut detect = a.detect;
    if detect.is_empty() {
        if let Some(list) = cfg.0.get("detect") {
            for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                detect.push(
                    Detector::from_str(item, true)
                        .map_err(|_| CliError::Usage(format!("config: unknown detector `{item}`")))?,
                );
            }
        }
    }
    let quantity = match cfg.pick(a.quantity, "quantity")? {
        Some(q) => parse_quantity(&q)?,
        None => Quantity::Discord,
    };
    let out_path = cfg.pick(a.out, "out")?;

    let mut spec = SweepSpec::new(base, axis1);
    if let Some(axis2) = axis2 {
        spec = spec.with_axis2(axis2);
    }
    spec.validate().map_err(usage)?;
    if !detect.is_empty() && spec.axis2.is_some() {
        return Err(CliError::Usage("detectors need a one-axis sweep".into()));
    }
    if detect.contains(&Detector::Regrowth) && axis1.param != SweepParam::Kt {
        return Err(CliError::Usage("regrowth detection needs --axis kT".into()));
    }
    let result = run_sweep(&spec).map_err(classify)?;

    let mut out: Box<dyn Write> = match &out_path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        Format::Csv => {
            write_csv(&mut out, &result, &spec.base)?;
            write_detectors(&mut out, &result, &detect, quantity)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &result).map_err(|e| CliError::Failure(e.to_string()))?;
            writeln!(out)?;
            if !detect.is_empty() {
                let mut block = Vec::new();
                write_detectors(&mut block, &result, &detect, quantity)?;
                io::stderr().write_all(&block)?;
            }
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn write_detectors<W: Write>(
    out: &mut W,
    result: &SweepResult,
    detect: &[Detector],
    quantity: Quantity,
) -> Result<(), CliError> {
    let q = quantity.name();
    for d in detect {
        match d {
            Detector::Kinks => {
                let kinks = detect_kinks(result, quantity).map_err(|e| CliError::Failure(e.to_string()))?;
                output::write_kinks(out, q, &kinks)?;
            }
            Detector::Regrowth => {
                let r = detect_regrowth(result, quantity).map_err(|e| CliError::Usage(e.to_string()))?;
                output::write_regrowth(out, q, r.as_ref())?;
            }
            Detector::Qpt => {
                output::write_qpt(out, q, result.axis1.param.name(), &qpt_signature(result, quantity))?;
            }
        }
    }
    Ok(())
}

fn figure(a: FigureArgs) -> Result<i32, CliError> {
    let Some(preset) = presets::preset(&a.name) else {
        return Err(CliError::Usage(format!(
            "unknown preset `{}`; available: {}",
            a.name,
            presets::PRESET_NAMES.join(", ")
        )));
    };
    fs::create_dir_all(&a.out_dir)?;
    let mut written = Vec::new();
    for curve in &preset.curves {
        let result = run_sweep(&curve.spec).map_err(classify)?;
        let file = preset.file_name(curve);
        let mut out = BufWriter::new(File::create(a.out_dir.join(&file))?);
        write_csv(&mut out, &result, &curve.spec.base)?;
        out.flush()?;
        println!("{}", a.out_dir.join(&file).display());
        written.push((file, curve.label.clone()));
    }
    if a.gnuplot {
        let first = &preset.curves[0].spec;
        let columns: Vec<&str> = first.quantities.iter().map(|q| report_column(*q)).collect();
        let script = output::gnuplot_script(
            preset.name,
            &written,
            &columns,
            first.axis1.param.name(),
            first.axis2.map(|ax| ax.param.name()),
        );
        let path = a.out_dir.join(format!("{}.gp", preset.name));
        fs::write(&path, script)?;
        println!("{}", path.display());
    }
    Ok(EXIT_OK)
}

fn report_column(q: Quantity) -> &'static str {
    match q {
        Quantity::Discord => "discord",
        Quantity::Classical => "classical_corr",
        Quantity::Mutual => "mutual_info",
        Quantity::Concurrence => "concurrence",
        Quantity::Eof => "eof",
    }
}

fn run_selftest(a: SelftestArgs) -> Result<i32, CliError> {
    let checks = selftest::run_checks(a.seed, a.draws).map_err(|e| CliError::Failure(e.to_string()))?;
    let mut failed = 0;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        failed += usize::from(!c.passed);
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let map = parse_config("# comment\njx = 1.5\n\nkT=0.3  # trailing\naxis = kT\n").unwrap();
        assert_eq!(map["jx"], "1.5");
        assert_eq!(map["kt"], "0.3");
        assert_eq!(map["axis"], "kT");
        assert!(parse_config("jx 1.5").is_err());
    }

    #[test]
    fn flags_override_config() {
        let cfg = Config(parse_config("j = 2\nb = 1\nkt = 0.5").unwrap());
        let m = ModelArgs {
            jz: Some(-1.0),
            kt: Some(0.7),
            ..Default::default()
        };
        let (p, kt) = resolve_model(&m, &cfg).unwrap();
        assert_eq!((p.jx, p.jy, p.jz, p.b), (0.0, 0.0, -1.0, 1.0));
        assert_eq!(kt, Some(0.7));

        let (p, kt) = resolve_model(&ModelArgs::default(), &cfg).unwrap();
        assert_eq!((p.jx, p.jy, p.jz), (2.0, 2.0, 2.0));
        assert_eq!(kt, Some(0.5));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_from(["thermal-discord", "point", "--jx", "1"]), EXIT_USAGE);
        assert_eq!(run_from(["thermal-discord", "point", "--kt", "-1"]), EXIT_USAGE);
        assert_eq!(run_from(["thermal-discord", "point", "--j", "1", "--jx", "2", "--kt", "1"]), EXIT_USAGE);
        assert_eq!(run_from(["thermal-discord", "figure", "nope"]), EXIT_USAGE);
        assert_eq!(run_from(["thermal-discord", "bogus"]), EXIT_USAGE);
    }
}

mod config;
mod table;
mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use stablesect::census::{cache, check_budget, CensusOptions, CensusReport, DEFAULT_CAP, DEFAULT_K};
use stablesect::grothendieck::VarietyProfile;
use stablesect::limits::{Side, Value};
use stablesect::partitions::Partition;
use stablesect::ring::to_f64;
use stablesect::universal::{specialize, universal_formula, Normalization, SignConvention};

use config::{parse_degrees, ConfigFile};
use verify::{Runner, Suite, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "stablesect", version, about = "Stable statistics of smooth hypersurface sections")]
struct Cli {
    /// File of `key = value` lines supplying any option; flags win
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Universal formula for the Schur functor of a partition
    Formula(FormulaArgs),
    /// Exhaustive census of smooth hypersurfaces over F_2 or F_3
    Census(CensusArgs),
    /// Run a named verification suite and print a pass/fail table
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct FormulaArgs {
    /// Partition such as `2,1`
    #[arg(long)]
    sigma: Option<String>,
    /// Dimension of the ambient variety (at least 2)
    #[arg(long)]
    dim: Option<u32>,
    /// `P<n>`, `P1xP1`, `point`, or a profile file; specializes the formula
    #[arg(long)]
    profile: Option<String>,
    /// Field size for the point-count side
    #[arg(long)]
    q: Option<u64>,
    /// `point` (default) or `motivic`
    #[arg(long)]
    side: Option<String>,
    /// `lefschetz` (default) or `unsigned`
    #[arg(long)]
    convention: Option<String>,
    /// `per-smooth` (default) or `per-total`
    #[arg(long)]
    normalization: Option<String>,
    /// Print the formula only, even when a profile is given
    #[arg(long)]
    symbolic: bool,
    /// Also print the prefix expression form
    #[arg(long)]
    expr: bool,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    q: Option<u32>,
    /// Dimension of the projective space
    #[arg(long)]
    n: Option<u32>,
    /// Degree of the forms
    #[arg(long)]
    d: Option<u32>,
    /// Count closed points of degree 1..=K
    #[arg(long = "K")]
    k: Option<u32>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Refuse censuses with more forms than this
    #[arg(long)]
    cap: Option<u128>,
    /// Write the histogram as CSV
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// Cache directory (default: $STABLESECT_CACHE_DIR or a temp dir)
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// poonen, average, independence, fallingmoments, powident, schur-oracle or conf-limit
    #[arg(long)]
    suite: Option<Suite>,
    /// Field sizes, comma separated
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    /// Degrees: `5`, `3,4,5` or `3-5`
    #[arg(long)]
    d: Option<String>,
    #[arg(long = "K")]
    k: Option<u32>,
    /// Truncation of the configuration-space limit
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    cap: Option<u128>,
    /// Write the table as CSV
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool> {
    let file = ConfigFile::load(cli.config.as_deref())?;
    let out = match cli.command {
        Command::Formula(a) => run_formula(a, file)?,
        Command::Census(a) => run_census(a, file)?,
        Command::Verify(a) => run_verify(a, file)?,
    };
    print!("{}", out.text);
    Ok(out.pass)
}

struct Output {
    text: String,
    pass: bool,
}

fn parse_side(s: &str, q: Option<u64>) -> Result<Side> {
    match s {
        // q stays symbolic in the formula body; 0 marks "no field chosen"
        "point" => Ok(Side::Point(q.unwrap_or(0))),
        "motivic" => Ok(Side::Motivic),
        _ => bail!("unknown side {s:?}; expected point or motivic"),
    }
}

fn load_profile(spec: &str) -> Result<VarietyProfile> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(VarietyProfile::load(path)?);
    }
    VarietyProfile::builtin(spec).with_context(|| format!("{spec} is neither a built-in profile nor a file"))
}

fn run_formula(a: FormulaArgs, mut file: ConfigFile) -> Result<Output> {
    let sigma: Option<String> = file.pick("sigma", a.sigma)?;
    let dim: Option<u32> = file.pick("dim", a.dim)?;
    let profile_name: Option<String> = file.pick("profile", a.profile)?;
    let q: Option<u64> = file.pick("q", a.q)?;
    let side_name = file.pick("side", a.side)?.unwrap_or_else(|| "point".to_string());
    let conv_name = file.pick("convention", a.convention)?.unwrap_or_else(|| "lefschetz".to_string());
    let norm_name = file.pick("normalization", a.normalization)?.unwrap_or_else(|| "per-smooth".to_string());
    let symbolic = file.flag("symbolic", a.symbolic)?;
    let expr = file.flag("expr", a.expr)?;
    file.finish()?;

    let sigma = Partition::parse(&sigma.context("--sigma is required")?)?;
    let n = dim.context("--dim is required")?;
    if n < 2 {
        bail!("--dim {n} is unsupported: universal formulas need n >= 2");
    }
    if q.is_some_and(|q| q < 2) {
        bail!("--q must be at least 2");
    }
    let side = parse_side(&side_name, q)?;
    let convention = SignConvention::parse(&conv_name)?;
    let normalization = Normalization::parse(&norm_name)?;
    let profile = match (&profile_name, symbolic) {
        (Some(p), false) => {
            let prof = load_profile(p)?;
            if prof.dim != n {
                bail!("profile {} has dimension {}, not {n}", prof.name, prof.dim);
            }
            if side_name == "point" && q.is_none() {
                bail!("specializing on the point side needs --q");
            }
            Some(prof)
        }
        _ => None,
    };

    let formula = universal_formula(&sigma, n, side, convention, normalization)?;
    let mut text = String::new();
    let parts: Vec<String> = sigma.parts().iter().map(u32::to_string).collect();
    writeln!(
        text,
        "# stablesect formula sigma=({}) dim={n} side={side_name} q={} convention={conv_name} normalization={norm_name} profile={} symbolic={symbolic} expr={expr}",
        parts.join(","),
        q.map_or("none".into(), |q| q.to_string()),
        profile_name.as_deref().unwrap_or("none"),
    )?;
    writeln!(text, "label: {}", formula.label)?;
    writeln!(text, "duality: {}", format!("{:?}", formula.duality).to_lowercase())?;
    writeln!(text, "epsilon: {} [exact]", formula.epsilon)?;
    writeln!(text, "provenance: {}", formula.provenance)?;
    writeln!(text, "formula: {} [exact]", formula.render())?;
    if expr {
        writeln!(text, "expr: {}", formula.to_expr())?;
    }
    if let Some(prof) = profile {
        let value = specialize(&formula, &prof)?;
        let at = match (side, &value) {
            (Side::Point(q), Value::Exact(_)) => format!("{}, q={q}", prof.name),
            _ => prof.name.clone(),
        };
        writeln!(text, "value ({at}): {} [exact]", value.render())?;
    }
    Ok(Output { text, pass: true })
}

fn resolve_cache_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.unwrap_or_else(cache::default_dir)
}

fn census_options(workers: Option<usize>, cap: Option<u128>) -> Result<CensusOptions> {
    if workers == Some(0) {
        bail!("--workers must be at least 1");
    }
    Ok(CensusOptions { workers, cap: cap.unwrap_or(DEFAULT_CAP), ..Default::default() })
}

fn summarize(r: &CensusReport, text: &mut String) -> Result<()> {
    let frac = r.smooth_fraction();
    writeln!(text, "forms: {} [exact]", r.total)?;
    writeln!(text, "smooth: {} [exact]", r.smooth)?;
    writeln!(text, "smooth fraction: {frac} (~{:.6}) [exact]", to_f64(&frac))?;
    if r.smooth > 0 {
        for k in 1..=r.k {
            let m = r.mean_closed_points(k)?;
            writeln!(text, "E[a_{k}]: {m} (~{:.6}) [exact]", to_f64(&m))?;
        }
    }
    writeln!(text, "histogram of (a_1..a_{}) over smooth forms, exact counts:", r.k)?;
    for (a, m) in &r.histogram {
        let key: Vec<String> = a.iter().map(u32::to_string).collect();
        writeln!(text, "  ({}) {m}", key.join(", "))?;
    }
    Ok(())
}

fn run_census(a: CensusArgs, mut file: ConfigFile) -> Result<Output> {
    let q: Option<u32> = file.pick("q", a.q)?;
    let n: Option<u32> = file.pick("n", a.n)?;
    let d: Option<u32> = file.pick("d", a.d)?;
    let k = file.pick("K", a.k)?.unwrap_or(DEFAULT_K);
    let workers = file.pick("workers", a.workers)?;
    let cap = file.pick("cap", a.cap)?;
    let csv: Option<PathBuf> = file.pick("csv", a.csv)?;
    let cache_dir = resolve_cache_dir(file.pick("cache-dir", a.cache_dir)?);
    file.finish()?;

    let q = q.context("--q is required")?;
    let n = n.context("--n is required")?;
    let d = d.context("--d is required")?;
    if q != 2 && q != 3 {
        bail!("census supports q = 2 or 3, got {q}");
    }
    if n == 0 || d == 0 || !(1..=6).contains(&k) {
        bail!("need n >= 1, d >= 1 and 1 <= K <= 6");
    }
    let opts = census_options(workers, cap)?;
    if cache::read(&cache_dir, q, n, d, k).ok().flatten().is_none() {
        check_budget(q, n, d, opts.cap)?;
    }

    let (report, hit) = cache::load_or_run(&cache_dir, q, n, d, k, &opts)
        .with_context(|| format!("census with cache directory {}", cache_dir.display()))?;
    eprintln!("{}", if hit { "loaded from cache" } else { "computed and cached" });

    let mut text = String::new();
    writeln!(
        text,
        "# stablesect census q={q} n={n} d={d} K={k} workers={} cap={} cache-dir={} csv={}",
        workers.map_or("auto".into(), |w| w.to_string()),
        opts.cap,
        cache_dir.display(),
        csv.as_ref().map_or("none".into(), |p| p.display().to_string()),
    )?;
    summarize(&report, &mut text)?;
    writeln!(text, "cache: {}", cache_dir.join(cache::file_name(q, n, d, k)).display())?;
    if let Some(path) = csv {
        std::fs::write(&path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Output { text, pass: true })
}

fn run_verify(a: VerifyArgs, mut file: ConfigFile) -> Result<Output> {
    let suite: Option<Suite> = file.pick("suite", a.suite)?;
    let q: Option<String> = file.pick("q", a.q)?;
    let n: Option<u32> = file.pick("n", a.n)?;
    let d: Option<String> = file.pick("d", a.d)?;
    let k = file.pick("K", a.k)?.unwrap_or(DEFAULT_K);
    let m = file.pick("m", a.m)?.unwrap_or(8);
    let workers = file.pick("workers", a.workers)?;
    let cap = file.pick("cap", a.cap)?;
    let csv: Option<PathBuf> = file.pick("csv", a.csv)?;
    let cache_dir = resolve_cache_dir(file.pick("cache-dir", a.cache_dir)?);
    file.finish()?;

    let suite = suite.context("--suite is required")?;
    let q: Vec<u32> = match q {
        Some(s) => s.split(',').map(|t| t.trim().parse::<u32>()).collect::<Result<_, _>>().context("--q")?,
        None if suite == Suite::PowIdent => vec![2, 3],
        None => vec![2],
    };
    let n = n.unwrap_or(2);
    let opts = census_options(workers, cap)?;
    let degrees = match d {
        Some(s) => parse_degrees(&s)?,
        None if suite == Suite::Poonen => verify::default_degrees(&q, n, opts.cap)?,
        None => vec![5],
    };
    let config = VerifyConfig { suite, q, n, degrees, k, m, opts };
    verify::sanity(&config)?;

    let runner = Runner { config: &config, cache_dir: &cache_dir };
    let table = runner.run()?;
    let mut text = String::new();
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    write!(text, "# stablesect verify suite={} q={}", suite.name(), list(&config.q))?;
    if suite.uses_census() {
        write!(
            text,
            " n={n} d={} K={k} workers={} cap={} cache-dir={}",
            list(&config.degrees),
            workers.map_or("auto".into(), |w| w.to_string()),
            config.opts.cap,
            cache_dir.display()
        )?;
    }
    if suite == Suite::ConfLimit {
        write!(text, " n={n} m={m}")?;
    }
    writeln!(text, " csv={}", csv.as_ref().map_or("none".into(), |p| p.display().to_string()))?;
    write!(text, "{table}")?;
    let pass = table.all_pass();
    if pass {
        writeln!(text, "all {} checks pass", table.rows.len())?;
    } else {
        writeln!(text, "{} of {} checks FAIL", table.failures(), table.rows.len())?;
    }
    if let Some(path) = csv {
        std::fs::write(&path, table.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Output { text, pass })
}

//! Experiment runners behind the `slowent` subcommands.
//!
//! One experiment writes into one output directory: the data files
//! (CSV, UTF-8, comma-separated, header row) plus `manifest.json`, which
//! echoes the command, toolkit version, every parameter as it came off the
//! command line, and derived quantities (resolved proxies, proxy depths,
//! fitted exponents).  Replaying a manifest with [`run_from_manifest`]
//! reproduces the CSV files byte for byte: all estimators are seeded and
//! exact rationals serialize as `"p/q"`, never decimals.  Summary lines
//! (the single line each command prints) may show decimals for humans.

use std::fs;
use std::path::{Path, PathBuf};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arithmetic::{badly_approx_certificate, eta, IrrationalParam};
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, parse_rat, rat_to_f64, Rat};
use crate::iet::{
    self, from_alpha_xi, idoc_check, metric_entropy_estimate, semitop_entropy_estimate,
    IntervalExchange,
};
use crate::rotation_gaps::gap_structure;
use crate::scales::{EntropyEstimate, Scale};
use crate::subshift::{
    complexity_exact_rotation, complexity_windowed, product_complexity, sturmian_word,
};
use crate::suspension::{flow_entropy_estimate, skew_entropy_estimate, StepRoof};

/// Echo of one experiment, written as `manifest.json` next to the data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub command: String,
    pub version: String,
    /// Parameters exactly as parsed from the command line; feeding them
    /// back through [`run_from_manifest`] reproduces the data files.
    pub parameters: Value,
    /// Data file names, relative to the manifest.
    pub outputs: Vec<String>,
    /// Derived quantities: proxies and their depths, certificates, fits.
    pub results: Value,
}

/// What a runner hands back to the front end.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// One human line: key quantity plus fitted exponent where applicable.
    pub summary: String,
    pub manifest: ExperimentManifest,
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn write_csv(dir: &Path, name: &str, header: &str, rows: &[String]) -> Result<()> {
    let mut s = String::with_capacity(header.len() + 1 + rows.iter().map(|r| r.len() + 1).sum::<usize>());
    s.push_str(header);
    s.push('\n');
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    write_atomic(&dir.join(name), s.as_bytes())
}

/// Serialize the parameter struct, write `manifest.json`, assemble the outcome.
fn finish<A: Serialize>(
    dir: &Path,
    command: &str,
    args: &A,
    outputs: Vec<String>,
    results: Value,
    summary: String,
) -> Result<RunOutcome> {
    let manifest = ExperimentManifest {
        command: command.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        parameters: serde_json::to_value(args)
            .map_err(|e| Error::Parse(format!("parameter serialization failed: {e}")))?,
        outputs,
        results,
    };
    let mut body = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Parse(format!("manifest serialization failed: {e}")))?;
    body.push('\n');
    write_atomic(&dir.join("manifest.json"), body.as_bytes())?;
    Ok(RunOutcome { summary, manifest })
}

fn prepare(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

/// Proxy echo shared by every runner that resolves an irrational parameter.
fn proxy_echo(name: &str, p: &IrrationalParam, results: &mut serde_json::Map<String, Value>) {
    results.insert(format!("{name}_proxy"), json!(fmt_rat(p.proxy())));
    results.insert(format!("{name}_error_bound"), json!(fmt_rat(p.error_bound())));
    results.insert(format!("{name}_depth"), json!(p.depth()));
}

fn fit_echo(est: &EntropyEstimate, results: &mut serde_json::Map<String, Value>) {
    results.insert("exponent".into(), json!(est.exponent));
    results.insert("fit".into(), serde_json::to_value(est).unwrap_or(Value::Null));
}

fn fit_line(est: &EntropyEstimate) -> String {
    format!(
        "{} exponent {:.3} (residual {:.3}, {} records)",
        est.scale.name(),
        est.exponent,
        est.fit_residual,
        est.record_subsequence.len()
    )
}

fn parse_scale(s: &str) -> Result<Scale> {
    s.parse()
}

// ---------- cf ----------

/// Convergent table with certified approximation errors.
#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CfArgs {
    /// parameter: continued-fraction spec like "[0;(1)]" or a rational "p/q"
    #[arg(long)]
    pub theta: String,
    /// proxy depth (partial quotients materialized)
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
}

pub fn run_cf(args: &CfArgs, dir: &Path) -> Result<RunOutcome> {
    prepare(dir)?;
    let theta = IrrationalParam::parse(&args.theta, args.depth)?;
    let mut rows = Vec::new();
    for k in 1..=theta.max_convergent_index() {
        let a = theta.cf().digit(k).map_or(String::new(), |a| a.to_string());
        let (p, q) = theta.convergent(k).unwrap();
        let (ev, ee) = match eta(&theta, k) {
            Ok(c) => (fmt_rat(&c.value), fmt_rat(&c.error)),
            Err(_) => (String::new(), String::new()), // past the certified range
        };
        rows.push(format!("{k},{a},{p},{q},{ev},{ee}"));
    }
    write_csv(dir, "cf.csv", "k,a,p,q,eta,eta_error", &rows)?;

    let cert = badly_approx_certificate(theta.cf(), args.depth.max(1))?;
    let mut results = serde_json::Map::new();
    proxy_echo("theta", &theta, &mut results);
    results.insert("max_quotient".into(), json!(cert.max_quotient));
    results.insert("ratio_bound".into(), json!(fmt_rat(&cert.ratio_bound)));
    let summary = format!(
        "theta ~ {:.10} (depth {}, q = {}), max quotient {}, ratio bound {:.3}",
        rat_to_f64(theta.proxy()),
        theta.depth(),
        theta.proxy().denom(),
        cert.max_quotient,
        rat_to_f64(&cert.ratio_bound),
    );
    finish(dir, "cf", args, vec!["cf.csv".into()], Value::Object(results), summary)
}

// ---------- gaps ----------

/// Exact three-gap rows of the rotation orbit, one per orbit length.
#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapsArgs {
    /// rotation number: CF spec or rational "p/q"
    #[arg(long)]
    pub theta: String,
    /// proxy depth for CF specs
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    /// largest orbit length; rows cover 1..=n
    #[arg(long)]
    pub n: u64,
}

pub fn run_gaps(args: &GapsArgs, dir: &Path) -> Result<RunOutcome> {
    prepare(dir)?;
    let theta = IrrationalParam::parse(&args.theta, args.depth)?;
    let mut rows = Vec::with_capacity(args.n as usize);
    let mut last_classes = String::new();
    for n in 1..=args.n {
        let gs = gap_structure(&theta, n)?;
        // cheap exact cross-checks on every emitted row
        assert_eq!(
            gs.small.count + gs.middle.count + gs.large.count,
            n + 1,
            "gap counts must sum to n + 1"
        );
        let total: Rat = [&gs.small, &gs.middle, &gs.large]
            .iter()
            .map(|c| &c.length * Rat::from_integer(c.count.into()))
            .sum();
        assert!(total == Rat::one(), "gap measures must tile the circle");
        rows.push(format!(
            "{n},{},{},{},{},{},{},{},{},{}",
            gs.k,
            gs.m,
            gs.r,
            fmt_rat(&gs.small.length),
            gs.small.count,
            fmt_rat(&gs.middle.length),
            gs.middle.count,
            fmt_rat(&gs.large.length),
            gs.large.count,
        ));
        if n == args.n {
            last_classes = gs
                .classes()
                .iter()
                .map(|(l, c)| format!("{:.5} x{c}", rat_to_f64(l)))
                .collect::<Vec<_>>()
                .join(", ");
        }
    }
    write_csv(
        dir,
        "gaps.csv",
        "n,k,m,r,gap_small,count_small,gap_mid,count_mid,gap_large,count_large",
        &rows,
    )?;
    let mut results = serde_json::Map::new();
    proxy_echo("theta", &theta, &mut results);
    results.insert("rows".into(), json!(args.n));
    let summary = format!("n = {}: {} arcs in classes [{last_classes}]", args.n, args.n + 1);
    finish(dir, "gaps", args, vec!["gaps.csv".into()], Value::Object(results), summary)
}

// ---------- sturmian ----------

/// Factor-complexity table of the rotation coding, with an optional
/// windowed cross-check and word dump.
#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SturmianArgs {
    /// rotation number: CF spec or rational "p/q"
    #[arg(long)]
    pub theta: String,
    /// proxy depth for CF specs
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    /// complexity rows cover 1..=nmax
    #[arg(long, default_value_t = 2000)]
    pub nmax: u64,
    /// cross-check the first `check` rows against windowed counting
    #[arg(long, default_value_t = 0)]
    pub check: u64,
    /// also dump a coded word of this length to word.txt
    #[arg(long, default_value_t = 0)]
    pub word: usize,
}

pub fn run_sturmian(args: &SturmianArgs, dir: &Path) -> Result<RunOutcome> {
    prepare(dir)?;
    let theta = IrrationalParam::parse(&args.theta, args.depth)?;
    let mut rows = Vec::with_capacity(args.nmax as usize);
    let mut all_n_plus_1 = true;
    for n in 1..=args.nmax {
        let p = complexity_exact_rotation(&theta, n)?;
        all_n_plus_1 &= p == n + 1;
        rows.push(format!("{n},{p},rotation"));
    }
    if args.check > 0 {
        // One long sample word; a count is trusted once doubling the
        // window no longer changes it, and it must then match the exact row.
        let len = (32 * (args.check as usize + 1)).max(4096);
        let word = sturmian_word(&theta, &Rat::zero(), len)?;
        for n in 1..=args.check {
            let half = complexity_windowed(&word.symbols[..len / 2], n as usize);
            let full = complexity_windowed(&word.symbols, n as usize);
            if half != full {
                return Err(Error::InsufficientData(format!(
                    "windowed count for n = {n} did not stabilize at window {len}"
                )));
            }
            let exact = complexity_exact_rotation(&theta, n)?;
            assert_eq!(full as u64, exact, "windowed complexity must match the exact count");
            rows.push(format!("{n},{full},windowed"));
        }
    }
    write_csv(dir, "sturmian.csv", "n,p_n,method", &rows)?;

    let mut outputs = vec!["sturmian.csv".into()];
    if args.word > 0 {
        let word = sturmian_word(&theta, &Rat::zero(), args.word)?;
        let mut txt: String = word.symbols.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
        txt.push('\n');
        write_atomic(&dir.join("word.txt"), txt.as_bytes())?;
        outputs.push("word.txt".into());
    }
    let mut results = serde_json::Map::new();
    proxy_echo("theta", &theta, &mut results);
    results.insert("p_n_equals_n_plus_1".into(), json!(all_n_plus_1));
    let summary = if all_n_plus_1 {
        format!("p_n = n + 1 for all n <= {}{}", args.nmax, if args.check > 0 {
            format!(" (windowed check to {} agrees)", args.check)
        } else {
            String::new()
        })
    } else {
        format!("complexity saturates below n + 1 by n = {} (rational parameter)", args.nmax)
    };
    finish(dir, "sturmian", args, outputs, Value::Object(results), summary)
}

// ---------- product ----------

/// Exact complexity of a product of rotation codings on a geometric grid.
#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductArgs {
    /// rotation numbers, one flag per factor
    #[arg(long, required = true)]
    pub theta: Vec<String>,
    /// proxy depth for CF specs
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    #[arg(long, default_value_t = 200)]
    pub nmax: u64,
}

pub fn run_product(args: &ProductArgs, dir: &Path) -> Result<RunOutcome> {
    prepare(dir)?;
    let thetas: Vec<IrrationalParam> = args
        .theta
        .iter()
        .map(|s| IrrationalParam::parse(s, args.depth))
        .collect::<Result<_>>()?;
    let grid = crate::scales::geometric_grid(crate::scales::FIT_GRID_MIN, args.nmax);
    let mut rows = Vec::with_capacity(grid.len());
    let mut counts = Vec::with_capacity(grid.len());
    for &n in &grid {
        let c = product_complexity(&thetas, n)?;
        let cf = c
            .to_string()
            .parse::<f64>()
            .map_err(|_| Error::Resource(format!("count at n = {n} overflows f64")))?;
        counts.push((n, cf));
        rows.push(format!("{n},{c}"));
    }
    write_csv(dir, "product.csv", "n,count", &rows)?;
    let est = crate::scales::exponent_fit(&counts, Scale::Polynomial)?;
    let mut results = serde_json::Map::new();
    for (i, t) in thetas.iter().enumerate() {
        proxy_echo(&format!("theta{i}"), t, &mut results);
    }
    results.insert("factors".into(), json!(thetas.len()));
    fit_echo(&est, &mut results);
    let summary = format!(
        "product of {} codings: count({}) = {}, {}",
        thetas.len(),
        grid.last().unwrap(),
        rows.last().unwrap().split(',').nth(1).unwrap(),
        fit_line(&est)
    );
    finish(dir, "product", args, vec!["product.csv".into()], Value::Object(results), summary)
}

// ---------- iet spec files ----------

/// On-disk exchange description: lengths as exact `"p/q"` strings plus the
/// two orders.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IetSpecFile {
    pub lengths: Vec<String>,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl IetSpecFile {
    pub fn from_exchange(iet: &IntervalExchange) -> Self {
        IetSpecFile {
            lengths: iet.lengths().iter().map(fmt_rat).collect(),
            top: iet.top().to_vec(),
            bottom: iet.bottom().to_vec(),
        }
    }

    pub fn build(&self) -> Result<IntervalExchange> {
        let lengths = self.lengths.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
        IntervalExchange::new(lengths, self.top.clone(), self.bottom.clone())
    }
}

pub fn read_iet_spec(path: &Path) -> Result<IntervalExchange> {
    let text = fs::read_to_string(path)?;
    let spec: IetSpecFile = toml::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    spec.build()
}

pub fn write_iet_spec(iet: &IntervalExchange, path: &Path) -> Result<()> {
    let body = toml::to_string(&IetSpecFile::from_exchange(iet))
        .map_err(|e| Error::Parse(format!("exchange serialization failed: {e}")))?;
    write_atomic(path, body.as_bytes())
}

/// Shared resolution: an explicit spec file wins; otherwise `(alpha, xi)`
/// builds the symmetric 3-interval presentation; otherwise `theta` builds
/// the rotation.
fn resolve_exchange(
    spec: &Option<PathBuf>,
    alpha: &Option<String>,
    xi: &Option<String>,
    theta: &Option<String>,
    depth: usize,
    results: &mut serde_json::Map<String, Value>,
) -> Result<IntervalExchange> {
    if let Some(path) = spec {
        let iet = read_iet_spec(path)?;
        results.insert("spec_file".into(), json!(path.display().to_string()));
        return Ok(iet);
    }
    if let (Some(a), Some(x)) = (alpha, xi) {
        let alpha = IrrationalParam::parse(a, depth)?;
        let xi = IrrationalParam::parse(x, depth)?;
        proxy_echo("alpha", &alpha, results);
        proxy_echo("xi", &xi, results);
        return from_alpha_xi(&alpha, &xi);
    }
    if let Some(t) = theta {
        let theta = IrrationalParam::parse(t, depth)?;
        proxy_echo("theta", &theta, results);
        return IntervalExchange::rotation(&theta);
    }
    Err(Error::Parse(
        "no exchange given: pass --spec FILE, or --alpha and --xi, or --theta".into(),
    ))
}

// ---------- iet ----------

/// Structure report and refinement-growth table of an interval exchange.
#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IetArgs {
    /// TOML exchange description (lengths as "p/q", top/bottom orders)
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// rotation number of the base (with --xi; CF spec or "p/q")
    #[arg(long)]
    pub alpha: Option<String>,
    /// step point of the induced presentation (with --alpha)
    #[arg(long)]
    pub xi: Option<String>,
    /// rotation shortcut: symmetric 2-interval exchange by theta
    #[arg(long)]
    pub theta: Option<String>,
    /// proxy depth for CF specs
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    /// refinement depths cover a geometric grid up to nmax
    #[arg(long, default_value_t = 1000)]
    pub nmax: u64,
    /// orbit horizon for the distinct-orbit certificate
    #[arg(long, default_value_t = 1000)]
    pub horizon: u64,
    /// atom covering: "top" counts all atoms, "semitop" the fewest atoms
    /// filling all but an epsilon-fraction of the interval
    #[arg(long, default_value = "top")]
    pub estimator: String,
    /// mass fraction left uncovered by the semitop estimator
    #[arg(long)]
    pub epsilon: Option<String>,
}

pub fn run_iet(args: &IetArgs, dir: &Path) -> Result<RunOutcome> {
    prepare(dir)?;
    let mut results = serde_json::Map::new();
    let iet = resolve_exchange(&args.spec, &args.alpha, &args.xi, &args.theta, args.depth, &mut results)?;
    write_iet_spec(&iet, &dir.join("iet.toml"))?;

    let idoc = idoc_check(&iet, args.horizon)?;
    results.insert("d".into(), json!(iet.d()));
    results.insert("irreducible".into(), json!(iet.is_irreducible()));
    results.insert("idoc_horizon".into(), json!(args.horizon));
    results.insert("idoc_holds".into(), json!(idoc.holds()));
    if let Some(c) = &idoc.collision {
        results.insert(
            "idoc_collision".into(),
            json!({ "n": c.n, "source": fmt_rat(&c.source), "target": fmt_rat(&c.target) }),
        );
    }

    let (eps_cell, counts, est) = match args.estimator.as_str() {
        "top" => {
            let (counts, est) = iet::top_entropy_estimate(&iet, args.nmax, Scale::Polynomial)?;
            ("0/1".to_string(), counts, est)
        }
        "semitop" => {
            let eps = parse_rat(args.epsilon.as_deref().ok_or_else(|| {
                Error::Parse("--estimator semitop needs --epsilon".into())
            })?)?;
            let (counts, est) = semitop_entropy_estimate(&iet, &eps, args.nmax, Scale::Polynomial)?;
            (fmt_rat(&eps), counts, est)
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown estimator {other:?}: expected top or semitop"
            )))
        }
    };
    let rows: Vec<String> = counts
        .iter()
        .map(|(n, c)| format!("{n},{c},{eps_cell},{}", args.estimator))
        .collect();
    write_csv(dir, "iet.csv", "n,count,epsilon,estimator", &rows)?;
    fit_echo(&est, &mut results);
    let summary = format!(
        "d = {} exchange, irreducible = {}, distinct orbits to {}: {}; {} atoms, {}",
        iet.d(),
        iet.is_irreducible(),
        args.horizon,
        idoc.holds(),
        args.estimator,
        fit_line(&est)
    );
    finish(
        dir,
        "iet",
        args,
        vec!["iet.csv".into(), "iet.toml".into()],
        Value::Object(results),
        summary,
    )
}

// ---------- entropy ----------

/// Monte-Carlo metric slow-entropy estimate under Hamming-ball covering.
#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyArgs {
    /// "iet" or "rotation"
    #[arg(long, default_value = "iet")]
    pub system: String,
    /// TOML exchange description (system = iet)
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// base rotation number (system = iet, with --xi)
    #[arg(long)]
    pub alpha: Option<String>,
    /// step point (system = iet, with --alpha)
    #[arg(long)]
    pub xi: Option<String>,
    /// rotation number (system = rotation)
    #[arg(long)]
    pub theta: Option<String>,
    /// proxy depth for CF specs
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    /// Hamming-ball radius as an exact rational
    #[arg(long)]
    pub epsilon: String,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 2000)]
    pub nmax: u64,
    /// scale family: polynomial, exponential, stretched-exponential, log-polynomial
    #[arg(long, default_value = "polynomial")]
    pub scale: String,
}

pub fn run_entropy(args: &EntropyArgs, dir: &Path) -> Result<RunOutcome> {
    prepare(dir)?;
    let mut results = serde_json::Map::new();
    let iet = match args.system.as_str() {
        "iet" => resolve_exchange(&args.spec, &args.alpha, &args.xi, &None, args.depth, &mut results)?,
        "rotation" => resolve_exchange(&None, &None, &None, &args.theta, args.depth, &mut results)?,
        other => {
            return Err(Error::Parse(format!(
                "unknown system {other:?}: expected iet or rotation"
            )))
        }
    };
    write_iet_spec(&iet, &dir.join("iet.toml"))?;
    let eps = parse_rat(&args.epsilon)?;
    let scale = parse_scale(&args.scale)?;
    let run = metric_entropy_estimate(&iet, &eps, args.samples, args.seed, args.nmax, scale)?;
    let rows: Vec<String> = run
        .counts
        .iter()
        .map(|(n, c)| format!("{n},{c},{},metric", fmt_rat(&eps)))
        .collect();
    write_csv(dir, "entropy.csv", "n,count,epsilon,estimator", &rows)?;
    results.insert("d".into(), json!(iet.d()));
    results.insert("samples".into(), json!(run.m));
    results.insert("seed".into(), json!(run.seed));
    fit_echo(&run.estimate, &mut results);
    let summary = format!(
        "metric covering on {} samples, eps = {}: {}",
        run.m,
        fmt_rat(&eps),
        fit_line(&run.estimate)
    );
    finish(
        dir,
        "entropy",
        args,
        vec!["entropy.csv".into(), "iet.toml".into()],
        Value::Object(results),
        summary,
    )
}

// ---------- suspend ----------

/// Monte-Carlo slow-entropy estimate of the step-roof suspension flow.
#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuspendArgs {
    /// base rotation number: CF spec or "p/q"
    #[arg(long)]
    pub alpha: String,
    /// roof step point: CF spec or "p/q"
    #[arg(long)]
    pub xi: String,
    /// roof height on [0, xi)
    #[arg(long, default_value = "2")]
    pub d1: String,
    /// roof height on [xi, 1)
    #[arg(long, default_value = "1")]
    pub d2: String,
    /// proxy depth for CF specs
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
    /// flow-Hamming ball radius as an exact rational
    #[arg(long, default_value = "1/10")]
    pub epsilon: String,
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// horizons cover a geometric grid up to rmax
    #[arg(long, default_value_t = 500)]
    pub rmax: u64,
    /// cells per unit of the covering grid (default: ceil(20/epsilon))
    #[arg(long)]
    pub grid_k: Option<u64>,
}

pub fn run_suspend(args: &SuspendArgs, dir: &Path) -> Result<RunOutcome> {
    prepare(dir)?;
    let alpha = IrrationalParam::parse(&args.alpha, args.depth)?;
    let xi = IrrationalParam::parse(&args.xi, args.depth)?;
    let roof = StepRoof::new(parse_rat(&args.d1)?, parse_rat(&args.d2)?, xi.proxy().clone())?;
    let eps = parse_rat(&args.epsilon)?;
    let run = flow_entropy_estimate(
        &roof,
        &alpha,
        &eps,
        args.samples,
        args.seed,
        args.rmax,
        args.grid_k,
        Scale::Polynomial,
    )?;
    let rows: Vec<String> = run
        .counts
        .iter()
        .map(|(r, c)| format!("{r},{c},{},{},{}", fmt_rat(&eps), run.k, run.seed))
        .collect();
    write_csv(dir, "suspend.csv", "R,count,epsilon,k,seed", &rows)?;
    let mut results = serde_json::Map::new();
    proxy_echo("alpha", &alpha, &mut results);
    proxy_echo("xi", &xi, &mut results);
    results.insert("roof_area".into(), json!(fmt_rat(&roof.area())));
    results.insert("grid_k".into(), json!(run.k));
    results.insert("samples".into(), json!(run.m));
    results.insert("seed".into(), json!(run.seed));
    fit_echo(&run.estimate, &mut results);
    let summary = format!(
        "flow covering on {} samples, eps = {}, k = {}: {}",
        run.m,
        fmt_rat(&eps),
        run.k,
        fit_line(&run.estimate)
    );
    finish(dir, "suspend", args, vec!["suspend.csv".into()], Value::Object(results), summary)
}

// ---------- skew ----------

/// Monte-Carlo slow-entropy estimate of the affine skew shift
/// `(x, y) -> (x, x + y)` under the square-grid coding.
#[derive(Debug, Clone, clap::Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewArgs {
    /// Hamming-ball radius as an exact rational
    #[arg(long, default_value = "1/10")]
    pub epsilon: String,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 2000)]
    pub nmax: u64,
    /// cells per unit of the coding grid (default: ceil(20/epsilon))
    #[arg(long)]
    pub grid_k: Option<u64>,
}

pub fn run_skew(args: &SkewArgs, dir: &Path) -> Result<RunOutcome> {
    prepare(dir)?;
    let eps = parse_rat(&args.epsilon)?;
    let run = skew_entropy_estimate(
        &eps,
        args.samples,
        args.seed,
        args.nmax,
        args.grid_k,
        Scale::Polynomial,
    )?;
    let rows: Vec<String> = run
        .counts
        .iter()
        .map(|(n, c)| format!("{n},{c},{},{},{}", fmt_rat(&eps), run.k, run.seed))
        .collect();
    write_csv(dir, "skew.csv", "n,count,epsilon,k,seed", &rows)?;
    let mut results = serde_json::Map::new();
    results.insert("grid_k".into(), json!(run.k));
    results.insert("samples".into(), json!(run.m));
    results.insert("seed".into(), json!(run.seed));
    fit_echo(&run.estimate, &mut results);
    let summary = format!(
        "skew covering on {} samples, eps = {}, k = {}: {}",
        run.m,
        fmt_rat(&eps),
        run.k,
        fit_line(&run.estimate)
    );
    finish(dir, "skew", args, vec!["skew.csv".into()], Value::Object(results), summary)
}

// ---------- replay ----------

/// Replay a recorded experiment into `dir`.  Data files come out byte
/// identical to the original run (spec-file paths are recorded verbatim, so
/// replay from the same working directory).
pub fn run_from_manifest(manifest: &ExperimentManifest, dir: &Path) -> Result<RunOutcome> {
    fn args<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
        serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("manifest parameters do not fit the command: {e}")))
    }
    match manifest.command.as_str() {
        "cf" => run_cf(&args(&manifest.parameters)?, dir),
        "gaps" => run_gaps(&args(&manifest.parameters)?, dir),
        "sturmian" => run_sturmian(&args(&manifest.parameters)?, dir),
        "product" => run_product(&args(&manifest.parameters)?, dir),
        "iet" => run_iet(&args(&manifest.parameters)?, dir),
        "entropy" => run_entropy(&args(&manifest.parameters)?, dir),
        "suspend" => run_suspend(&args(&manifest.parameters)?, dir),
        "skew" => run_skew(&args(&manifest.parameters)?, dir),
        other => Err(Error::Parse(format!("unknown command {other:?} in manifest"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(dir: &Path, name: &str) -> Vec<u8> {
        fs::read(dir.join(name)).unwrap()
    }

    #[test]
    fn gaps_manifest_replays_byte_identically() {
        let tmp = tempfile::tempdir().unwrap();
        let a = tmp.path().join("a");
        let b = tmp.path().join("b");
        let args = GapsArgs { theta: "[0;(1)]".into(), depth: 30, n: 60 };
        let out = run_gaps(&args, &a).unwrap();
        assert_eq!(out.manifest.outputs, vec!["gaps.csv".to_string()]);

        let text = fs::read_to_string(a.join("manifest.json")).unwrap();
        let parsed: ExperimentManifest = serde_json::from_str(&text).unwrap();
        run_from_manifest(&parsed, &b).unwrap();
        assert_eq!(read(&a, "gaps.csv"), read(&b, "gaps.csv"));

        let csv = String::from_utf8(read(&a, "gaps.csv")).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,k,m,r,gap_small,count_small,gap_mid,count_mid,gap_large,count_large"
        );
        assert_eq!(csv.lines().count(), 61);
    }

    #[test]
    fn sturmian_runner_checks_and_dumps_the_word() {
        let tmp = tempfile::tempdir().unwrap();
        let args = SturmianArgs {
            theta: "[0;(1)]".into(),
            depth: 30,
            nmax: 120,
            check: 12,
            word: 40,
        };
        let out = run_sturmian(&args, tmp.path()).unwrap();
        assert!(out.summary.contains("p_n = n + 1"));
        let word = fs::read_to_string(tmp.path().join("word.txt")).unwrap();
        assert_eq!(word.trim_end().len(), 40);
        assert!(word.trim_end().bytes().all(|b| b == b'0' || b == b'1'));
        let oracle = sturmian_word(
            &IrrationalParam::parse("[0;(1)]", 30).unwrap(),
            &Rat::zero(),
            40,
        )
        .unwrap();
        let dumped: Vec<u8> = word.trim_end().bytes().map(|b| b - b'0').collect();
        assert_eq!(dumped, oracle.symbols);
    }

    #[test]
    fn iet_spec_file_round_trips_through_toml() {
        let tmp = tempfile::tempdir().unwrap();
        let iet = IntervalExchange::symmetric(vec![
            parse_rat("1/5").unwrap(),
            parse_rat("3/10").unwrap(),
            parse_rat("1/2").unwrap(),
        ])
        .unwrap();
        let path = tmp.path().join("g.toml");
        write_iet_spec(&iet, &path).unwrap();
        let back = read_iet_spec(&path).unwrap();
        assert_eq!(back, iet);

        let args = IetArgs {
            spec: Some(path),
            alpha: None,
            xi: None,
            theta: None,
            depth: 40,
            nmax: 300,
            horizon: 200,
            estimator: "top".into(),
            epsilon: None,
        };
        let out = run_iet(&args, tmp.path()).unwrap();
        let csv = fs::read_to_string(tmp.path().join("iet.csv")).unwrap();
        // rational lengths: distinct orbits, so atoms grow as (d-1)n + 1
        // only while no collision has happened; just pin the format here
        assert_eq!(csv.lines().next().unwrap(), "n,count,epsilon,estimator");
        assert!(csv.lines().nth(1).unwrap().ends_with(",0/1,top"));
        assert!(out.manifest.results.get("idoc_holds").is_some());
    }

    #[test]
    fn entropy_runner_reports_a_bounded_rotation_exponent() {
        let tmp = tempfile::tempdir().unwrap();
        let args = EntropyArgs {
            system: "rotation".into(),
            spec: None,
            alpha: None,
            xi: None,
            theta: Some("[0;(1)]".into()),
            depth: 30,
            epsilon: "1/10".into(),
            samples: 120,
            seed: 9,
            nmax: 3000,
            scale: "polynomial".into(),
        };
        let out = run_entropy(&args, tmp.path()).unwrap();
        let exp = out.manifest.results["exponent"].as_f64().unwrap();
        assert!(exp <= 0.1, "rotation covering exponent {exp} should be near zero");
        let csv = fs::read_to_string(tmp.path().join("entropy.csv")).unwrap();
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",1/10,metric")));
    }

    #[test]
    fn manifest_with_unknown_command_is_rejected() {
        let m = ExperimentManifest {
            command: "explode".into(),
            version: "0".into(),
            parameters: Value::Null,
            outputs: vec![],
            results: Value::Null,
        };
        let tmp = tempfile::tempdir().unwrap();
        assert!(matches!(run_from_manifest(&m, tmp.path()), Err(Error::Parse(_))));
    }
}

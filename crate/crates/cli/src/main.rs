//! `fingap`: command-line front end for the finite-gap toolkit.
//!
//! Exit codes: 0 on success, 1 on a computational failure (a structured
//! JSON error goes to stderr), 2 on a usage error.

mod config;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rug::ops::Pow;
use rug::{Complex, Rational};
use serde_json::{json, Value};

use fingap::a3::{build_a3_operators, commutator_residual, PairVarOp};
use fingap::acceptance;
use fingap::bcn::{bcn_matrix, bcn_spectra, crosscheck_n1, GaugeChoice};
use fingap::elliptic::{ExactRoots, Lattice, Lattice64, LatticeMp};
use fingap::hp::field;
use fingap::monodromy::bethe::bethe_eigen_residual;
use fingap::monodromy::hk::alpha_bethe_offset;
use fingap::monodromy::{bethe_at_energy, hk_example_params, multiplier, sweep, Route, XiNumeric};
use fingap::num::{digits_to_bits, CNum};
use fingap::report::{complex_value, emit, Format};
use fingap::spectral::bands::roots_for_lattice;
use fingap::spectral::{band_edges, spectral_data, Coupling};

use config::FileConfig;

const DEFAULT_PRECISION: u32 = 30;
const DEFAULT_ROOTS: &str = "3,-1,-2";
const PRECISION_ENV: &str = "FINGAP_PRECISION";

#[derive(Parser)]
#[command(
    name = "fingap",
    version,
    about = "Finite-gap spectral data, monodromy and BC_N sectors for Heun's equation in elliptic form"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Exact roots e1,e2,e3 (integers, p/q or finite decimals; must sum to 0) [default: 3,-1,-2]
    #[arg(
        long,
        global = true,
        value_name = "E1,E2,E3",
        allow_hyphen_values = true
    )]
    roots: Option<String>,
    /// Half-periods w1_re,w1_im,w3_re,w3_im instead of roots
    #[arg(
        long,
        global = true,
        value_name = "W1RE,W1IM,W3RE,W3IM",
        conflicts_with = "roots",
        allow_hyphen_values = true
    )]
    periods: Option<String>,
    /// Working precision in decimal digits [default: $FINGAP_PRECISION or 30]
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Tolerance for pass/fail checks
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json or csv (csv only for monodromy sweeps)
    #[arg(long, global = true)]
    format: Option<String>,
    /// TOML file with the same keys as the global flags and `couplings`
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Q(E), a(E), c(E), genus and the coefficients of Xi(x,E)
    Spectral(CouplingArgs),
    /// Band edges (real roots of Q) on a real rectangular lattice
    Bands(CouplingArgs),
    /// Floquet multiplier B(E) along 2*omega_k, at one energy or over a sweep
    Monodromy(MonodromyArgs),
    /// Bethe roots t_j and constant c at a given energy
    Bethe(BetheArgs),
    /// Hermite-Krichever alpha, kappa and multipliers for l = (2,0,0,0)
    Hk(HkArgs),
    /// Matrix and spectrum of the gauged BC_N Hamiltonian on W_d^sym
    Bcn(BcnArgs),
    /// Commutator residuals of the three-particle l = 1 operators
    VerifyA3(A3Args),
    /// Run the acceptance checks
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct CouplingArgs {
    /// l0,l1,l2,l3
    #[arg(long, value_parser = parse_couplings, allow_hyphen_values = true)]
    couplings: Option<Coupling>,
}

#[derive(Args)]
struct MonodromyArgs {
    #[command(flatten)]
    c: CouplingArgs,
    /// ode, integral or bethe
    #[arg(long, default_value = "ode", value_parser = parse_route)]
    route: Route,
    /// Period index: 1 or 3
    #[arg(long, default_value_t = 1, value_parser = parse_k)]
    k: usize,
    /// Energy re,im
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "sweep", conflicts_with = "sweep")]
    energy: Option<Complex64>,
    /// Real sweep start,end,count
    #[arg(long, value_name = "START,END,COUNT", allow_hyphen_values = true)]
    sweep: Option<String>,
    /// Imaginary part of every sweep energy
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    sweep_im: f64,
    /// Base root E0 of Q for the integral route [default: the root of Q nearest to the (first) energy]
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    e0: Option<Complex64>,
}

#[derive(Args)]
struct BetheArgs {
    #[command(flatten)]
    c: CouplingArgs,
    /// Energy re,im
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    energy: Complex64,
    /// Seed for the random restarts
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct HkArgs {
    /// Energy re,im
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    energy: Complex64,
}

#[derive(Args)]
struct BcnArgs {
    #[command(flatten)]
    c: CouplingArgs,
    /// Number of particles N
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Pair coupling l
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Pair exponent a (-l or l+1); with --b selects one gauge
    #[arg(long, requires = "b", allow_hyphen_values = true)]
    a: Option<String>,
    /// Exponents b0,b1,b2,b3 (each -l_i/2 or (l_i+1)/2)
    #[arg(long, requires = "a", allow_hyphen_values = true)]
    b: Option<String>,
    /// Without --a/--b, list every admissible gauge with d up to this bound
    #[arg(long, default_value_t = 2)]
    max_d: u32,
    /// N = 1 only: check that the gauge sectors multiply to Q(E)
    #[arg(long)]
    crosscheck: bool,
}

#[derive(Args)]
struct A3Args {
    /// Number of random sample points
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Criterion numbers to run, comma separated [default: all]
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

/// A usage error: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// A failed pass/fail check whose report was still written: exit code 1.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn parse_couplings(s: &str) -> std::result::Result<Coupling, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let msg = "couplings must be non-negative integers";
    if parts.len() != 4 {
        return Err(format!("{msg}: expected l0,l1,l2,l3"));
    }
    let mut l = [0u32; 4];
    for (slot, p) in l.iter_mut().zip(&parts) {
        *slot = p.parse::<u32>().map_err(|_| msg.to_string())?;
    }
    Ok(Coupling(l))
}

fn parse_k(s: &str) -> std::result::Result<usize, String> {
    match s {
        "1" => Ok(1),
        "3" => Ok(3),
        _ => Err("the period index must be 1 or 3".into()),
    }
}

fn parse_route(s: &str) -> std::result::Result<Route, String> {
    Route::from_str(s).map_err(|e| e.to_string())
}

fn parse_floats(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("{p:?} is not a number"))
        })
        .collect::<std::result::Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers"));
    }
    Ok(v)
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let v = parse_floats(s, 2)?;
    Ok(Complex64::new(v[0], v[1]))
}

/// Integers, `p/q`, or finite decimals such as `-0.25`, all read exactly.
fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{s:?} is not a rational number"));
        }
        let negative = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        let digits = format!("{}{frac}", if int.is_empty() { "0" } else { int });
        let num =
            Rational::from_str(&digits).map_err(|_| format!("{s:?} is not a rational number"))?;
        let den = Rational::from(rug::Integer::from(10).pow(frac.len() as u32));
        let q = num / den;
        return Ok(if negative { -q } else { q });
    }
    Rational::from_str(s).map_err(|_| format!("{s:?} is not a rational number"))
}

fn parse_rationals(s: &str, n: usize) -> std::result::Result<Vec<Rational>, String> {
    let v: Vec<Rational> = s
        .split(',')
        .map(parse_rational)
        .collect::<std::result::Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated values"));
    }
    Ok(v)
}

/// Global settings after merging flags, config file and environment.
struct Settings {
    couplings: Option<Coupling>,
    roots: Option<String>,
    periods: Option<String>,
    precision: u32,
    tol: Option<f64>,
    out: Option<PathBuf>,
    format: Format,
}

impl Settings {
    fn new(g: &Global) -> Result<Self> {
        let file = match &g.config {
            Some(p) => FileConfig::load(p).map_err(usage)?,
            None => FileConfig::default(),
        };
        let precision = match g.precision.or(file.precision) {
            Some(p) => p,
            None => match std::env::var(PRECISION_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("{PRECISION_ENV}={v:?} is not a digit count")))?,
                Err(_) => DEFAULT_PRECISION,
            },
        };
        if precision == 0 {
            return Err(usage("--precision must be positive"));
        }
        let format = g
            .format
            .clone()
            .or(file.format)
            .unwrap_or_else(|| "json".into());
        let format = Format::from_str(&format).map_err(|e| usage(format!("--format: {e}")))?;
        let couplings = match file.couplings {
            Some(c) => {
                Some(parse_couplings(&c).map_err(|e| usage(format!("config couplings: {e}")))?)
            }
            None => None,
        };
        let (roots, periods) = if g.roots.is_some() || g.periods.is_some() {
            (g.roots.clone(), g.periods.clone())
        } else {
            (file.roots, file.periods)
        };
        Ok(Settings {
            couplings,
            roots,
            periods,
            precision,
            tol: g.tol.or(file.tol),
            out: g.out.clone().or(file.out),
            format,
        })
    }

    fn couplings(&self, flag: Option<Coupling>) -> Result<Coupling> {
        flag.or(self.couplings)
            .ok_or_else(|| usage("--couplings is required"))
    }

    fn periods(&self) -> Result<Option<(Complex64, Complex64)>> {
        match &self.periods {
            None => Ok(None),
            Some(s) => {
                let v = parse_floats(s, 4).map_err(|e| usage(format!("--periods: {e}")))?;
                Ok(Some((
                    Complex64::new(v[0], v[1]),
                    Complex64::new(v[2], v[3]),
                )))
            }
        }
    }

    fn exact_roots(&self) -> Result<ExactRoots> {
        if self.periods.is_some() {
            return Ok(roots_for_lattice(&self.lattice_mp()?)?);
        }
        let s = self.roots.as_deref().unwrap_or(DEFAULT_ROOTS);
        let v = parse_rationals(s, 3).map_err(|e| usage(format!("--roots: {e}")))?;
        let [e1, e2, e3]: [Rational; 3] = v.try_into().expect("three values");
        ExactRoots::new(e1, e2, e3).map_err(|e| usage(format!("--roots: {e}")))
    }

    fn lattice64(&self) -> Result<Lattice64> {
        match self.periods()? {
            Some((w1, w3)) => Ok(Lattice64::from_periods_f64(w1, w3)?),
            None => Ok(Lattice::<Complex64>::from_roots(&self.exact_roots()?, 15)?),
        }
    }

    fn lattice_mp(&self) -> Result<LatticeMp> {
        match self.periods()? {
            Some((w1, w3)) => {
                let bits = digits_to_bits(self.precision);
                let lift = |z| <Complex as CNum>::from_c64(bits, z);
                Ok(Lattice::from_periods(lift(w1), lift(w3), self.precision)?)
            }
            None => Ok(Lattice::<Complex>::from_roots(
                &self.exact_roots()?,
                self.precision,
            )?),
        }
    }

    fn write(&self, v: &Value, rows: Option<&[fingap::report::SweepRow]>) -> Result<()> {
        let bytes = emit(v, rows, self.format).map_err(|e| usage(format!("--format: {e}")))?;
        match &self.out {
            Some(p) => {
                std::fs::write(p, bytes).with_context(|| format!("--out {}", p.display()))?
            }
            None => std::io::stdout().write_all(&bytes)?,
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<()> {
    let s = Settings::new(&cli.global)?;
    match cli.command {
        Command::Spectral(a) => {
            let l = s.couplings(a.couplings)?;
            let r = s.exact_roots()?;
            let sd = spectral_data(&field(&r), l)?;
            let mut v = sd.to_json();
            v["roots"] = json!(r
                .e
                .iter()
                .map(fingap::report::rational_str)
                .collect::<Vec<_>>());
            s.write(&v, None)
        }
        Command::Bands(a) => {
            let l = s.couplings(a.couplings)?;
            let lat = s.lattice_mp()?;
            let edges = band_edges(l, &lat)?;
            let d = s.precision as usize;
            let v = json!({
                "couplings": l.0,
                "precision": s.precision,
                "edges": edges.iter().map(|z| complex_value(z, d)).collect::<Vec<_>>(),
                "lattice": lat.to_json(),
            });
            s.write(&v, None)
        }
        Command::Monodromy(a) => monodromy(&s, a),
        Command::Bethe(a) => {
            let l = s.couplings(a.c.couplings)?;
            let lat = s.lattice64()?;
            let sd = spectral_data(&field(&roots_for_lattice(&lat)?), l)?;
            let b = bethe_at_energy(&XiNumeric::new(&sd)?, &lat, a.energy, a.seed)?;
            let probe = Complex64::new(0.3, 0.2) * lat.omega1.norm();
            let mut v = b.to_json();
            v["eigen_residual"] = json!(bethe_eigen_residual(&b, &lat, probe)?);
            s.write(&v, None)
        }
        Command::Hk(a) => {
            let lat = s.lattice64()?;
            let sd = spectral_data(&field(&roots_for_lattice(&lat)?), Coupling([2, 0, 0, 0]))?;
            let hk = hk_example_params(a.energy, &sd, &lat)?;
            let b = bethe_at_energy(&XiNumeric::new(&sd)?, &lat, a.energy, 3)?;
            let mut v = hk.to_json();
            v["bethe_alpha_offset"] = json!(alpha_bethe_offset(&hk, &b, &lat)?);
            s.write(&v, None)
        }
        Command::Bcn(a) => bcn(&s, a),
        Command::VerifyA3(a) => verify_a3(&s, a),
        Command::Selftest(a) => {
            let ids: Vec<u8> = if a.only.is_empty() {
                (1..=8).collect()
            } else {
                a.only
            };
            if let Some(bad) = ids.iter().find(|i| !(1..=8).contains(*i)) {
                return Err(usage(format!("--only: no criterion {bad}")));
            }
            let results: Vec<_> = ids.iter().map(|&i| acceptance::run(i)).collect();
            for r in &results {
                eprintln!("{r}");
            }
            let passed = results.iter().all(|r| r.passed);
            s.write(&json!({"passed": passed, "criteria": results.iter().map(|r| r.to_json()).collect::<Vec<_>>()}), None)?;
            if passed {
                Ok(())
            } else {
                Err(CheckFailed("acceptance checks failed".into()).into())
            }
        }
    }
}

fn monodromy(s: &Settings, a: MonodromyArgs) -> Result<()> {
    let l = s.couplings(a.c.couplings)?;
    let lat = s.lattice64()?;
    let sd = spectral_data(&field(&roots_for_lattice(&lat)?), l)?;
    let energies: Vec<Complex64> = match (&a.energy, &a.sweep) {
        (Some(e), _) => vec![*e],
        (None, Some(sw)) => {
            let v = parse_floats(sw, 3).map_err(|e| usage(format!("--sweep: {e}")))?;
            let n = v[2];
            if n < 1.0 || n.fract() != 0.0 {
                return Err(usage("--sweep: count must be a positive integer"));
            }
            let n = n as usize;
            let step = if n > 1 {
                (v[1] - v[0]) / (n - 1) as f64
            } else {
                0.0
            };
            (0..n)
                .map(|j| Complex64::new(v[0] + step * j as f64, a.sweep_im))
                .collect()
        }
        (None, None) => return Err(usage("one of --energy or --sweep is required")),
    };
    let e0 = match (a.route, a.e0) {
        (Route::Integral, None) => {
            let qs = fingap::algebra::roots::roots(&sd.q, &Complex64::new(0.0, 0.0))?;
            qs.into_iter().min_by(|x, y| {
                (x - energies[0])
                    .norm()
                    .total_cmp(&(y - energies[0]).norm())
            })
        }
        (_, e0) => e0,
    };
    if a.sweep.is_some() {
        let rows = sweep(a.route, &energies, a.k, &sd, &lat, e0)?;
        let v = json!({
            "couplings": l.0,
            "k": a.k,
            "route": a.route.to_string(),
            "rows": rows.iter().map(|r| json!({"E": complex_value(&r.e, 17), "B": complex_value(&r.b, 17)})).collect::<Vec<_>>(),
        });
        s.write(&v, Some(&rows))
    } else {
        let r = multiplier(a.route, energies[0], a.k, &sd, &lat, e0)?;
        s.write(&r.to_json(), None)
    }
}

fn bcn(s: &Settings, a: BcnArgs) -> Result<()> {
    let li = s.couplings(a.c.couplings)?;
    let r = s.exact_roots()?;
    if a.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if a.crosscheck {
        if a.n != 1 {
            return Err(usage("--crosscheck needs --n 1"));
        }
        let sd = spectral_data(&field(&r), li)?;
        return s.write(&crosscheck_n1(li, &r, &sd.q)?.to_json(), None);
    }
    let gauges = match (&a.a, &a.b) {
        (Some(ga), Some(gb)) => {
            let ga = parse_rational(ga).map_err(|e| usage(format!("--a: {e}")))?;
            let gb = parse_rationals(gb, 4).map_err(|e| usage(format!("--b: {e}")))?;
            let gb: [Rational; 4] = gb.try_into().expect("four values");
            vec![GaugeChoice::new(a.l, li, ga, gb).map_err(|e| usage(format!("--a/--b: {e}")))?]
        }
        _ => {
            let mut seen: Vec<GaugeChoice> = Vec::new();
            for g in GaugeChoice::all(a.l, li) {
                if seen.contains(&g) || !g.d(a.n).is_ok_and(|d| d <= a.max_d) {
                    continue;
                }
                seen.push(g);
            }
            seen
        }
    };
    let mut sectors = Vec::with_capacity(gauges.len());
    for g in &gauges {
        let m = bcn_matrix(a.n, a.l, li, g, &r)?;
        let spec = bcn_spectra(&m, s.precision)?;
        sectors.push(m.to_json(&spec));
    }
    let v = if sectors.len() == 1 && a.a.is_some() {
        sectors.remove(0)
    } else {
        json!({ "sectors": sectors })
    };
    s.write(&v, None)
}

fn verify_a3(s: &Settings, a: A3Args) -> Result<()> {
    let tol = s.tol.unwrap_or(acceptance::COMMUTATOR_TOL);
    let r = s.exact_roots()?;
    let lat = Lattice::<Complex>::from_roots(&r, s.precision)?;
    let ops = build_a3_operators(&r);
    let pairs: [(&str, &PairVarOp, &PairVarOp); 7] = [
        ("H,P1", &ops.h, &ops.p1),
        ("H,P3", &ops.h, &ops.p3),
        ("H,I12", &ops.h, &ops.i12),
        ("H,I23", &ops.h, &ops.i23),
        ("H,I31", &ops.h, &ops.i31),
        ("I12,I23", &ops.i12, &ops.i23),
        ("P3,I12", &ops.p3, &ops.i12),
    ];
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    for (name, x, y) in pairs {
        let rep = commutator_residual(name, x, y, &r, &lat, a.samples, a.seed)?;
        if rep.max_residual >= tol {
            failed.push(name);
        }
        reports.push(rep.to_json());
    }
    s.write(
        &json!({"tol": tol, "passed": failed.is_empty(), "commutators": reports}),
        None,
    )?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CheckFailed(format!(
            "residual at or above {tol:e} for {}",
            failed.join(", ")
        ))
        .into())
    }
}

/// Variant name of a library error, for the structured report.
fn error_kind(e: &fingap::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{'])
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(u) = e.downcast_ref::<Usage>() {
                eprintln!("error: {u}");
                return ExitCode::from(2);
            }
            let (kind, message) = match e.downcast_ref::<fingap::Error>() {
                Some(le) => (error_kind(le), le.to_string()),
                None if e.is::<CheckFailed>() => ("CheckFailed".to_string(), e.to_string()),
                None => ("Io".to_string(), format!("{e:#}")),
            };
            eprintln!("{}", json!({"error": {"kind": kind, "message": message}}));
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_rational("7/4").unwrap(), Rational::from((7, 4)));
        assert_eq!(parse_rational(".5").unwrap(), Rational::from((1, 2)));
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn coupling_parsing() {
        assert_eq!(parse_couplings("2,0,0,0").unwrap(), Coupling([2, 0, 0, 0]));
        assert!(parse_couplings("2,0,-1,0")
            .unwrap_err()
            .contains("non-negative integers"));
        assert!(parse_couplings("1,2,3").is_err());
    }

    #[test]
    fn error_kinds() {
        assert_eq!(error_kind(&fingap::Error::SingularP2(0.0)), "SingularP2");
        assert_eq!(error_kind(&fingap::Error::PathPole), "PathPole");
        assert_eq!(
            error_kind(&fingap::Error::Inadmissible {
                alpha: [0; 4],
                couplings: [0; 4]
            }),
            "Inadmissible"
        );
    }
}

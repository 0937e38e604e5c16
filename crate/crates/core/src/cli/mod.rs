//! The `heunherm` command line.

mod config;
mod output;

pub use config::{parse_list, Config};
pub use output::{emit, fmt_sig, render, Cell, Format, Table, CSV_DIGITS, JSON_DIGITS};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bch::{bch_residual, frobenius_eval, BchParams};
use crate::error::{Error, Result};
use crate::expansion::{check_termination, q_polynomial, q_roots, terminated_expansion, Sign};
use crate::n3well::{self, N3Well};
use crate::oracle::{power_start, HalfLine, ShootingConfig};
use crate::schrod::{reduce, PotentialClass, M1};
use crate::specfun::{hermite_fn, HermiteOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Every key a config file may hold.
pub const CONFIG_KEYS: &[&str] = &[
    "format", "out", "gamma", "delta", "eps", "alpha", "q", "z", "z_min", "z_max", "z_n", "method", "sign", "compare", "n",
    "match_q", "m1", "v0", "v1", "v2", "v3", "v4", "sigma", "x0", "energy", "mass", "hbar", "branch_a0", "branch_a2", "well",
    "n_max", "level", "x_min", "x_max", "x_n", "summary", "v2_list", "minima", "a_min", "a_max", "a_n", "pairing",
];

#[derive(Debug, Parser)]
#[command(name = "heunherm", version, about = "Bi-confluent Heun solutions as Hermite-function sums, and a solvable half-line well")]
pub struct Cli {
    /// Flat key-value file; keys are long flag names.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// csv or json [default: csv]
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a Heun solution on a z grid.
    EvalHeun(EvalHeunArgs),
    /// Accessory-parameter roots that terminate the expansion.
    Qroots(QrootsArgs),
    /// Reduce a potential to Heun parameters at one energy.
    Reduce(ReduceArgs),
    /// Bound-state energies of the half-line well.
    Spectrum(SpectrumArgs),
    /// Normalised bound-state wave function on an x grid.
    Wavefunction(WavefunctionArgs),
    /// The well potential for several V2.
    Potential(PotentialArgs),
    /// Exact Hermite function against its transition-layer form.
    Szego(SzegoArgs),
    /// Quick end-to-end checks.
    Selftest,
}

#[derive(Debug, Args)]
pub struct BchFlags {
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalHeunArgs {
    #[command(flatten)]
    pub bch: BchFlags,
    /// Comma-separated z values; overrides the uniform grid.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long)]
    pub z_min: Option<f64>,
    #[arg(long)]
    pub z_max: Option<f64>,
    #[arg(long)]
    pub z_n: Option<usize>,
    /// frobenius or hermite-sum [default: frobenius]
    #[arg(long)]
    pub method: Option<String>,
    /// Branch of the Hermite argument, 1 or -1 [default: 1]
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<i32>,
    /// Also evaluate with the other method and report the scaled difference.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, Args)]
pub struct QrootsArgs {
    /// Termination index N (gamma = -N).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Flag the root within 1e-8 of this q.
    #[arg(long, allow_hyphen_values = true)]
    pub match_q: Option<f64>,
}

#[derive(Debug, Args)]
pub struct WellFlags {
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v2: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// One of -1, -0.5, 0, 0.5, 1 [default: -0.5]
    #[arg(long, allow_hyphen_values = true)]
    pub m1: Option<f64>,
    /// x-representation coefficients V0..V4.
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v4: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub branch_a0: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub branch_a2: Option<i32>,
    /// Use the half-line well built from --v0 and --v2 (m1 = -1/2).
    #[arg(long)]
    pub well: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub well: WellFlags,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Comma-separated subset of oracle, asymptotic, phase [default: oracle,asymptotic]
    #[arg(long)]
    pub compare: Option<String>,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub well: WellFlags,
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub x_n: Option<usize>,
    /// Emit one row of level data instead of the grid.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    /// Comma-separated V2 values [default: 0,3.5,-3.5,5,-5]
    #[arg(long, allow_hyphen_values = true)]
    pub v2_list: Option<String>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub x_n: Option<usize>,
    /// Emit the minimum of each curve instead of the grid.
    #[arg(long)]
    pub minima: bool,
}

#[derive(Debug, Args)]
pub struct SzegoArgs {
    #[arg(long)]
    pub a_min: Option<f64>,
    #[arg(long)]
    pub a_max: Option<f64>,
    #[arg(long)]
    pub a_n: Option<usize>,
    /// v2-pos: H_{a-2}(-sqrt(2a)); v2-neg: H_{a-1}(-sqrt(2(a-2))) [default: v2-pos]
    #[arg(long)]
    pub pairing: Option<String>,
}

/// Parse, run and map the outcome to an exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_DOMAIN
    }
}

/// Run a parsed command; returns the exit code for commands that report
/// failures in their table (selftest).
pub fn execute(cli: &Cli) -> Result<i32> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p, CONFIG_KEYS)?,
        None => Config::default(),
    };
    let format: Format = cfg.string("format", cli.format.clone(), "csv")?.parse()?;
    let out = cfg.opt_string("out", cli.out.as_ref().map(|p| p.display().to_string()))?.map(PathBuf::from);
    let (table, code) = match &cli.command {
        Command::EvalHeun(a) => (cmd_eval_heun(a, &cfg)?, EXIT_OK),
        Command::Qroots(a) => (cmd_qroots(a, &cfg)?, EXIT_OK),
        Command::Reduce(a) => (cmd_reduce(a, &cfg)?, EXIT_OK),
        Command::Spectrum(a) => (cmd_spectrum(a, &cfg)?, EXIT_OK),
        Command::Wavefunction(a) => (cmd_wavefunction(a, &cfg)?, EXIT_OK),
        Command::Potential(a) => (cmd_potential(a, &cfg)?, EXIT_OK),
        Command::Szego(a) => (cmd_szego(a, &cfg)?, EXIT_OK),
        Command::Selftest => {
            let t = cmd_selftest()?;
            let ok = t.rows.iter().all(|r| r.last() == Some(&Cell::Bool(true)));
            (t, if ok { EXIT_OK } else { EXIT_NUMERICAL })
        }
    };
    emit(&table, format, out.as_deref())?;
    Ok(code)
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(lo < hi) {
        return Err(Error::Domain(format!("grid needs lo < hi and at least 2 points, got [{lo}, {hi}] with {n}")));
    }
    Ok((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect())
}

fn well_from(w: &WellFlags, cfg: &Config) -> Result<N3Well> {
    let well = N3Well {
        v0: cfg.f64("v0", w.v0, 0.0)?,
        v2: cfg.f64("v2", w.v2, 5.0)?,
        mass: cfg.f64("mass", w.mass, 1.0)?,
        hbar: cfg.f64("hbar", w.hbar, 1.0)?,
        x0: cfg.f64("x0", w.x0, 0.0)?,
    };
    well.validate()?;
    Ok(well)
}

pub fn cmd_eval_heun(a: &EvalHeunArgs, cfg: &Config) -> Result<Table> {
    let b = &a.bch;
    let params = BchParams::new(
        cfg.f64("gamma", b.gamma, 1.0)?,
        cfg.f64("delta", b.delta, 0.0)?,
        cfg.f64("eps", b.eps, -1.0)?,
        cfg.f64("alpha", b.alpha, 0.0)?,
        cfg.f64("q", b.q, 0.0)?,
    );
    let zs = match cfg.opt_string("z", a.z.clone())? {
        Some(s) => parse_list("z", &s)?,
        None => grid(cfg.f64("z_min", a.z_min, 0.1)?, cfg.f64("z_max", a.z_max, 5.0)?, cfg.usize("z_n", a.z_n, 20)?)?,
    };
    let sign = Sign::try_from(cfg.i32("sign", a.sign, 1)?)?;
    let method = cfg.string("method", a.method.clone(), "frobenius")?;
    let compare = cfg.bool("compare", a.compare)?;

    let frob = |z: f64| -> Result<(f64, f64, f64)> {
        let v = frobenius_eval(params, z)?;
        Ok((v.u, v.du, bch_residual(&params, v.u, v.du, v.ddu, z)?))
    };
    let exp = if method == "hermite-sum" || compare {
        Some(terminated_expansion(params, sign)?.ok_or_else(|| Error::Domain("the Hermite expansion does not terminate for these parameters".into()))?)
    } else {
        None
    };
    let sum = |z: f64| -> Result<(f64, f64, f64)> {
        let e = exp.as_ref().unwrap();
        let v = e.eval_full(z)?;
        Ok((v.u, v.du, bch_residual(&params, v.u, v.du, v.ddu, z)?))
    };
    type Eval<'a> = &'a dyn Fn(f64) -> Result<(f64, f64, f64)>;
    let (primary, other): (Eval, Eval) = match method.as_str() {
        "frobenius" => (&frob, &sum),
        "hermite-sum" => (&sum, &frob),
        m => return Err(Error::Config(format!("unknown method {m:?}"))),
    };
    let rows: Vec<(f64, f64, f64)> = zs.iter().map(|&z| primary(z)).collect::<Result<_>>()?;
    if !compare {
        let mut t = Table::new(&["z", "u", "du", "residual"]);
        for (z, (u, du, r)) in zs.iter().zip(rows) {
            t.push(vec![(*z).into(), u.into(), du.into(), r.into()]);
        }
        return Ok(t);
    }
    let others: Vec<f64> = zs.iter().map(|&z| other(z).map(|v| v.0)).collect::<Result<_>>()?;
    // least-squares scale taking the other solution onto the primary one
    let num: f64 = rows.iter().zip(&others).map(|(p, o)| p.0 * o).sum();
    let den: f64 = others.iter().map(|o| o * o).sum();
    let scale = if den > 0.0 { num / den } else { f64::NAN };
    let mut t = Table::new(&["z", "u", "du", "residual", "u_other_scaled", "diff"]);
    let mut worst = 0.0f64;
    for ((z, (u, du, r)), o) in zs.iter().zip(rows).zip(others) {
        let d = u - scale * o;
        worst = worst.max(d.abs());
        t.push(vec![(*z).into(), u.into(), du.into(), r.into(), (scale * o).into(), d.into()]);
    }
    eprintln!("scale = {scale:e}, max |u - scale*u_other| = {worst:e}");
    Ok(t)
}

pub fn cmd_qroots(a: &QrootsArgs, cfg: &Config) -> Result<Table> {
    let n = cfg.usize("n", a.n, 1)?;
    let delta = cfg.f64("delta", a.delta, 0.0)?;
    let eps = cfg.f64("eps", a.eps, -1.0)?;
    let alpha = cfg.f64("alpha", a.alpha, 0.0)?;
    let target = cfg.opt_f64("match_q", a.match_q)?;
    let roots = q_roots(&q_polynomial(n, delta, eps, alpha)?)?;
    let mut t = Table::new(&["q_re", "q_im", "multiplicity", "terminates", "c_tail", "matches"]);
    for r in &roots.real {
        let term = check_termination(&BchParams::new(-(n as f64), delta, eps, alpha, r.q), Sign::Plus)?;
        let hit = target.is_some_and(|q| (q - r.q).abs() <= 1e-8 * q.abs().max(1.0));
        t.push(vec![
            r.q.into(),
            0.0.into(),
            r.multiplicity.into(),
            term.is_terminating.into(),
            term.c_tail.unwrap_or(f64::NAN).into(),
            hit.into(),
        ]);
    }
    for c in &roots.complex {
        t.push(vec![c.re.into(), c.im.into(), 1usize.into(), false.into(), f64::NAN.into(), false.into()]);
    }
    Ok(t)
}

pub fn cmd_reduce(a: &ReduceArgs, cfg: &Config) -> Result<Table> {
    let mass = cfg.f64("mass", a.mass, 1.0)?;
    let hbar = cfg.f64("hbar", a.hbar, 1.0)?;
    let x0 = cfg.f64("x0", a.x0, 0.0)?;
    let energy = cfg.opt_f64("energy", a.energy)?.ok_or_else(|| Error::Config("--energy is required".into()))?;
    let pc = if cfg.bool("well", a.well)? {
        let w = N3Well { v0: cfg.f64("v0", a.v0, 0.0)?, v2: cfg.f64("v2", a.v2, 5.0)?, mass, hbar, x0 };
        w.validate()?;
        w.to_potential_class()
    } else {
        let m1 = M1::try_from(cfg.f64("m1", a.m1, -0.5)?)?;
        let v = [
            cfg.f64("v0", a.v0, 0.0)?,
            cfg.f64("v1", a.v1, 0.0)?,
            cfg.f64("v2", a.v2, 0.0)?,
            cfg.f64("v3", a.v3, 0.0)?,
            cfg.f64("v4", a.v4, 0.0)?,
        ];
        PotentialClass::from_x_representation(m1, v, cfg.f64("sigma", a.sigma, 1.0)?, x0)
    };
    let red = reduce(&pc, energy, mass, hbar, cfg.i32("branch_a0", a.branch_a0, -1)?, cfg.i32("branch_a2", a.branch_a2, 1)?)?;
    let b = red.bch;
    let eq_res = red.equation_residuals(&pc).iter().fold(0.0f64, |m, r| m.max(r.abs()));
    // relative value of the termination polynomial when γ = −N
    let qpoly = if b.gamma <= 0.0 && (b.gamma - b.gamma.round()).abs() < 1e-9 {
        let p = q_polynomial((-b.gamma.round()) as usize, b.delta, b.eps, b.alpha)?;
        let scale: f64 = p.coeffs.iter().enumerate().map(|(k, c)| (c * b.q.powi(k as i32)).abs()).sum();
        p.eval(b.q) / scale
    } else {
        f64::NAN
    };
    let mut t = Table::new(&[
        "gamma", "delta", "eps", "alpha", "q", "alpha0", "alpha1", "alpha2", "max_equation_residual", "q_poly_residual",
    ]);
    t.push(vec![
        b.gamma.into(),
        b.delta.into(),
        b.eps.into(),
        b.alpha.into(),
        b.q.into(),
        red.a0.into(),
        red.a1.into(),
        red.a2.into(),
        eq_res.into(),
        qpoly.into(),
    ]);
    Ok(t)
}

pub fn cmd_spectrum(a: &SpectrumArgs, cfg: &Config) -> Result<Table> {
    let well = well_from(&a.well, cfg)?;
    let n_max = cfg.usize("n_max", a.n_max, 8)?;
    let compare = cfg.string("compare", a.compare.clone(), "oracle,asymptotic")?;
    let mut want = (false, false, false);
    for c in compare.split(',').map(str::trim).filter(|c| !c.is_empty()) {
        match c {
            "oracle" => want.0 = true,
            "asymptotic" => want.1 = true,
            "phase" => want.2 = true,
            _ => return Err(Error::Config(format!("unknown comparison {c:?}"))),
        }
    }
    let levels = if want.0 { n3well::bound_states(&well, n_max)?.levels } else { n3well::spectrum_roots(&well, n_max)? };
    let mut t = Table::new(&[
        "n", "e_exact", "e_oracle", "oracle_gap", "e_asym", "rel_err_asym", "e_phase", "rel_err_phase", "spectrum_fn_residual",
    ]);
    for l in &levels {
        let e_asym = if want.1 { n3well::asymptotic_energy(&well, l.n)? } else { f64::NAN };
        let e_phase = if want.2 {
            match n3well::phase_equation_solve(&well, l.n) {
                Ok(e) => e,
                Err(Error::Domain(_)) => f64::NAN,
                Err(e) => return Err(e),
            }
        } else {
            f64::NAN
        };
        t.push(vec![
            l.n.into(),
            l.e.into(),
            l.e_oracle.into(),
            l.oracle_gap.into(),
            e_asym.into(),
            ((e_asym - l.e).abs() / l.e.abs()).into(),
            e_phase.into(),
            ((e_phase - l.e).abs() / l.e.abs()).into(),
            l.spectrum_fn_residual.into(),
        ]);
    }
    Ok(t)
}

pub fn cmd_wavefunction(a: &WavefunctionArgs, cfg: &Config) -> Result<Table> {
    let well = well_from(&a.well, cfg)?;
    let level = cfg.usize("level", a.level, 1)?;
    if level == 0 {
        return Err(Error::Domain("level index starts at 1".into()));
    }
    let e = n3well::spectrum_roots(&well, level)?[level - 1].e;
    let st = n3well::energy_state(&well, e, well.bound_s())?;
    let nrm = n3well::normalization(&well, &st)?;
    let x_lo = cfg.f64("x_min", a.x_min, well.x0)?;
    let x_hi = cfg.f64("x_max", a.x_max, nrm.x_cut)?;
    let xs = grid(x_lo, x_hi, cfg.usize("x_n", a.x_n, 401)?)?;
    let psi = n3well::bound_wavefunction(&well, &st, &xs)?;
    let nodes = n3well::count_nodes(&well, &st)?;
    let norm = n3well::norm_check(&well, &st)?;
    if cfg.bool("summary", a.summary)? {
        let mut t = Table::new(&["level", "e", "nodes", "norm", "psi_first", "psi_last", "psi_max"]);
        let big = psi.iter().fold(0.0f64, |m, p| m.max(p.abs()));
        t.push(vec![level.into(), e.into(), nodes.into(), norm.into(), psi[0].into(), psi[psi.len() - 1].into(), big.into()]);
        return Ok(t);
    }
    eprintln!("level {level}: E = {e:e}, nodes = {nodes}, norm = {norm:e}");
    let mut t = Table::new(&["x", "psi"]);
    for (x, p) in xs.iter().zip(psi) {
        t.push(vec![(*x).into(), p.into()]);
    }
    Ok(t)
}

pub fn cmd_potential(a: &PotentialArgs, cfg: &Config) -> Result<Table> {
    let v2s = cfg.f64_list("v2_list", a.v2_list.clone(), &[0.0, 3.5, -3.5, 5.0, -5.0])?;
    let base = N3Well {
        v0: cfg.f64("v0", a.v0, 0.0)?,
        v2: 0.0,
        mass: cfg.f64("mass", a.mass, 1.0)?,
        hbar: cfg.f64("hbar", a.hbar, 1.0)?,
        x0: cfg.f64("x0", a.x0, 0.0)?,
    };
    base.validate()?;
    if cfg.bool("minima", a.minima)? {
        let mut t = Table::new(&["v2", "x_min", "v_min", "slope_at_min"]);
        for &v2 in &v2s {
            let w = N3Well { v2, ..base };
            let (x, v, s) = if v2 == 0.0 {
                (f64::NAN, f64::NAN, f64::NAN)
            } else {
                let (x, v) = n3well::potential_minimum(&w)?;
                (x, v, n3well::potential_slope(&w, x)?)
            };
            t.push(vec![v2.into(), x.into(), v.into(), s.into()]);
        }
        return Ok(t);
    }
    let xs = grid(cfg.f64("x_min", a.x_min, base.x0 + 0.05)?, cfg.f64("x_max", a.x_max, base.x0 + 3.0)?, cfg.usize("x_n", a.x_n, 300)?)?;
    let names: Vec<String> = std::iter::once("x".to_string()).chain(v2s.iter().map(|v| format!("V[v2={v}]"))).collect();
    let mut t = Table { columns: names, rows: vec![] };
    for &x in &xs {
        let mut row = vec![Cell::Num(x)];
        for &v2 in &v2s {
            row.push(n3well::potential_v(&N3Well { v2, ..base }, x)?.into());
        }
        t.push(row);
    }
    Ok(t)
}

pub fn cmd_szego(a: &SzegoArgs, cfg: &Config) -> Result<Table> {
    let pairing = cfg.string("pairing", a.pairing.clone(), "v2-pos")?;
    let order_arg: fn(f64) -> (f64, f64) = match pairing.as_str() {
        "v2-pos" => |a| (a - 2.0, -(2.0 * a).sqrt()),
        "v2-neg" => |a| (a - 1.0, -(2.0 * (a - 2.0)).sqrt()),
        p => return Err(Error::Config(format!("unknown pairing {p:?}"))),
    };
    let xs = grid(cfg.f64("a_min", a.a_min, 2.01)?, cfg.f64("a_max", a.a_max, 14.0)?, cfg.usize("a_n", a.a_n, 600)?)?;
    let mut t = Table::new(&["a", "nu", "w", "exact", "szego"]);
    for aa in xs {
        let (nu, w) = order_arg(aa);
        let exact = hermite_fn(HermiteOrder::new(nu), w)?.value;
        let approx = match n3well::szego_approx(nu, w) {
            Ok(v) => v,
            Err(Error::Domain(_)) => f64::NAN,
            Err(e) => return Err(e),
        };
        t.push(vec![aa.into(), nu.into(), w.into(), exact.into(), approx.into()]);
    }
    Ok(t)
}

pub fn cmd_selftest() -> Result<Table> {
    let mut t = Table::new(&["check", "value", "tolerance", "pass"]);
    let mut add = |name: &str, value: f64, tol: f64| t.push(vec![name.into(), value.into(), tol.into(), (value <= tol).into()]);

    // half-line oscillator: V = 2x², K = 2 → 3, 7, 11
    let v = |x: f64| 2.0 * x * x;
    let start = power_start(1.0, 0.0, 2.0);
    let lv = HalfLine { v: &v, k: 2.0, start: &start }.levels(0.5, 12.0, 3, &ShootingConfig::default())?;
    let err = lv.iter().zip([3.0, 7.0, 11.0]).map(|(l, w)| (l.e - w).abs() / w).fold(0.0f64, f64::max);
    add("oscillator_levels", if lv.len() == 3 { err } else { f64::INFINITY }, 1e-7);

    let roots = q_roots(&q_polynomial(1, 2.0, -1.0, 1.0)?)?;
    let dq = match roots.real.as_slice() {
        [r] if r.multiplicity == 2 => (r.q - 1.0).abs(),
        _ => f64::INFINITY,
    };
    add("double_q_root", dq, 1e-8);

    let well = N3Well::new(0.0, 5.0, 1.0, 1.0);
    let gap = n3well::bound_states(&well, 3)?.levels.iter().map(|l| l.oracle_gap).fold(0.0f64, f64::max);
    add("spectrum_vs_oracle", gap, 1e-6);

    let st = n3well::energy_state(&N3Well::new(0.0, -5.0, 1.0, 1.0), 20.0, 1)?;
    let (a1, a2) = n3well::two_term_reduction(&st);
    let scale = st.c.iter().fold(a1.abs(), |m, c| m.max(c.abs() * st.a * st.a));
    add("a2_identity", a2.abs() / scale, 1e-10);

    let (nu, w) = (1.7, 0.9);
    let h = |n: f64| hermite_fn(HermiteOrder::new(n), w).map(|r| r.value);
    let rec = (h(nu + 1.0)? - 2.0 * w * h(nu)? + 2.0 * nu * h(nu - 1.0)?).abs() / h(nu + 1.0)?.abs();
    add("hermite_recurrence", rec, 1e-9);
    Ok(t)
}

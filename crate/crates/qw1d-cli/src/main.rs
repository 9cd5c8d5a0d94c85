//! Batch front end: every pipeline as a subcommand over a coin file, with
//! deterministic comma-separated output.
//!
//! Exit codes: 0 success, 2 validation, 3 numerical, 4 I/O.

mod tabular;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use qw1d::coin::{gauge_normalize, validate_long_range, verify_gauge};
use qw1d::dispersion::b0_of;
use qw1d::jost::jost_pair;
use qw1d::oracle::{build_finite, half_mass_radius, participation_ratio, spectrum_finite};
use qw1d::resolvent::{default_eval_window, lap_sweep, weighted_norm, ResolventKernel, WeightedNormSpec};
use qw1d::transfer::{essential_band, evolve_u, Boundary, StateVector};
use qw1d::{C64, CoinFile, CoinSequence, CutoffData, Error, Sheet, SheetPoint};

use tabular::{emit, fmt_float, Table};

#[derive(Parser)]
#[command(name = "qw1d", version, about = "1D quantum walk spectral pipelines")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// coin file (TOML)
    #[arg(long)]
    coin: PathBuf,
    /// output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gauge-normalize a general coin and emit the canonical coin file
    Gauge {
        #[command(flatten)]
        common: Common,
    },
    /// Check the long-range hypotheses and report the witnessed quantities
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Jost solutions: per-site profiles at one xi, or a summary over a grid
    Jost {
        #[command(flatten)]
        common: Common,
        /// sheet:re[:im]
        #[arg(long)]
        xi: Option<String>,
        /// sheet:re_min:re_max:count (real xi)
        #[arg(long)]
        xi_grid: Option<String>,
        /// recursion-residual budget
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Resolvent kernel column K(x, 0) over the evaluation window
    Resolvent {
        #[command(flatten)]
        common: Common,
        /// sheet:re[:im]
        #[arg(long)]
        xi: String,
        /// min:max evaluation window
        #[arg(long)]
        window: Option<String>,
    },
    /// Epsilon-ladder limiting-absorption sweep at a real xi
    Lap {
        #[command(flatten)]
        common: Common,
        /// sheet:re
        #[arg(long)]
        xi: String,
        /// start:ratio:count
        #[arg(long, default_value = "0.1:0.25:9")]
        eps_ladder: String,
        /// weight exponent
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// final Cauchy-ratio budget
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Dense ring spectrum with localization statistics
    Oracle {
        #[command(flatten)]
        common: Common,
        /// ring size N
        #[arg(long)]
        ring: usize,
    },
    /// Evolve a delta state on the periodic window and track the norm
    Evolve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence(_)
        | Error::Degenerate { .. }
        | Error::NearSingular { .. }
        | Error::GrowthOverflow { .. }
        | Error::ZeroWronskian { .. }
        | Error::DiagonalizationFailure { .. }
        | Error::BoundaryLeak => 3,
        Error::Io(_) => 4,
        _ => 2,
    }
}

fn parse_xi(s: &str) -> Result<SheetPoint, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Error::Parse(format!("--xi wants sheet:re[:im], got {s}")));
    }
    let sheet = Sheet::from_index(
        parts[0]
            .parse::<u8>()
            .map_err(|e| Error::Parse(e.to_string()))?,
    )?;
    let re: f64 = parts[1].parse().map_err(|_| Error::Parse(format!("bad re {}", parts[1])))?;
    let im: f64 = match parts.get(2) {
        Some(p) => p.parse().map_err(|_| Error::Parse(format!("bad im {p}")))?,
        None => 0.0,
    };
    SheetPoint::new(sheet, C64::new(re, im))
}

fn parse_grid(s: &str) -> Result<(Sheet, f64, f64, usize), Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "--xi-grid wants sheet:re_min:re_max:count, got {s}"
        )));
    }
    let sheet = Sheet::from_index(
        parts[0]
            .parse::<u8>()
            .map_err(|e| Error::Parse(e.to_string()))?,
    )?;
    let lo: f64 = parts[1].parse().map_err(|_| Error::Parse(format!("bad {}", parts[1])))?;
    let hi: f64 = parts[2].parse().map_err(|_| Error::Parse(format!("bad {}", parts[2])))?;
    let n: usize = parts[3].parse().map_err(|_| Error::Parse(format!("bad {}", parts[3])))?;
    if n < 2 || hi <= lo {
        return Err(Error::Parse("grid needs re_min < re_max and count >= 2".into()));
    }
    Ok((sheet, lo, hi, n))
}

fn parse_ladder(s: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "--eps-ladder wants start:ratio:count, got {s}"
        )));
    }
    let start: f64 = parts[0].parse().map_err(|_| Error::Parse(format!("bad {}", parts[0])))?;
    let ratio: f64 = parts[1].parse().map_err(|_| Error::Parse(format!("bad {}", parts[1])))?;
    let count: usize = parts[2].parse().map_err(|_| Error::Parse(format!("bad {}", parts[2])))?;
    if !(start > 0.0 && ratio > 0.0 && ratio < 1.0 && count >= 2) {
        return Err(Error::Parse("ladder needs start > 0, 0 < ratio < 1, count >= 2".into()));
    }
    Ok((0..count).map(|k| start * ratio.powi(k as i32)).collect())
}

fn parse_window(s: &str) -> Result<(i64, i64), Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("--window wants min:max, got {s}")));
    }
    let lo: i64 = parts[0].parse().map_err(|_| Error::Parse(format!("bad {}", parts[0])))?;
    let hi: i64 = parts[1].parse().map_err(|_| Error::Parse(format!("bad {}", parts[1])))?;
    if lo > hi {
        return Err(Error::Parse(format!("empty window {lo}:{hi}")));
    }
    Ok((lo, hi))
}

fn load_sequence(path: &Path) -> Result<CoinSequence, Error> {
    CoinFile::load(path)?.to_sequence()
}

fn cmd_gauge(common: &Common) -> Result<i32, Error> {
    let file = CoinFile::load(&common.coin)?;
    let general = file.to_general()?;
    let result = gauge_normalize(&general, 0.0, 0.0)?;
    let deviation = verify_gauge(&general, &result)?;
    let out_file = CoinFile::from_sequence(&result.alpha_prime);
    let mut text = String::new();
    text.push_str(&format!("# version = {}\n", env!("CARGO_PKG_VERSION")));
    text.push_str(&format!("# coin = {}\n", common.coin.display()));
    text.push_str(&format!("# deviation = {}\n", fmt_float(deviation)));
    text.push_str(&format!(
        "# tail_modulus_mismatch = {}\n",
        fmt_float(
            (result.alpha_prime.alpha_plus().norm() - result.alpha_prime.alpha_minus().norm())
                .abs()
        )
    ));
    text.push_str(&out_file.to_toml()?);
    emit(common.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_validate(common: &Common) -> Result<i32, Error> {
    let seq = load_sequence(&common.coin)?;
    let report = validate_long_range(&seq)?;
    let mut t = Table::new(&[
        "max_unitarity_defect",
        "min_abs_alpha",
        "max_abs_alpha",
        "l1_sum",
        "boundary_gap_plus",
        "boundary_gap_minus",
        "modulus_mismatch",
        "pass",
    ]);
    t.kv("coin", common.coin.display().to_string().as_str());
    let (lo, hi) = seq.window();
    t.kv("window", format!("{lo}:{hi}").as_str());
    t.row(vec![
        report.max_unitarity_defect.into(),
        report.min_abs_alpha.into(),
        report.max_abs_alpha.into(),
        report.l1_sum.into(),
        report.boundary_gap_plus.into(),
        report.boundary_gap_minus.into(),
        report.modulus_mismatch.into(),
        (report.pass as i64).into(),
    ]);
    emit(common.out.as_deref(), &t.render())?;
    Ok(if report.pass { 0 } else { 2 })
}

fn kv_point(t: &mut Table, p: &SheetPoint) {
    t.kv("sheet", p.sheet.index() as i64);
    t.kv("xi_re", p.xi.re);
    t.kv("xi_im", p.xi.im);
}

fn cmd_jost(
    common: &Common,
    xi: Option<&str>,
    grid: Option<&str>,
    tol: f64,
) -> Result<i32, Error> {
    let seq = load_sequence(&common.coin)?;
    let cut = CutoffData::choose(&seq, 0.1)?;
    match (xi, grid) {
        (Some(s), None) => {
            let p = parse_xi(s)?;
            if !p.is_admissible(b0_of(&seq)) {
                return Err(Error::OutOfDomain {
                    bound: 2.0 * b0_of(&seq),
                    detail: "xi outside the admissible strip".into(),
                });
            }
            let pair = jost_pair(&seq, &cut, &p)?;
            let mut t = Table::new(&[
                "x",
                "m_plus_r_re", "m_plus_r_im", "m_plus_l_re", "m_plus_l_im",
                "m_minus_r_re", "m_minus_r_im", "m_minus_l_re", "m_minus_l_im",
                "z_plus_re", "z_plus_im", "z_minus_re", "z_minus_im",
            ]);
            t.kv("coin", common.coin.display().to_string().as_str());
            kv_point(&mut t, &p);
            t.kv("lambda_re", pair.plus.lambda.re);
            t.kv("lambda_im", pair.plus.lambda.im);
            t.kv("wronskian_re", pair.w.re);
            t.kv("wronskian_im", pair.w.im);
            t.kv("wronskian_drift", pair.w_drift);
            t.kv("residual_plus", pair.plus.recursion_residual);
            t.kv("residual_minus", pair.minus.recursion_residual);
            t.kv("terms_plus", pair.plus.report.terms);
            t.kv("terms_minus", pair.minus.report.terms);
            t.kv("tail_plus", pair.plus.tail_deviation);
            t.kv("tail_minus", pair.minus.tail_deviation);
            let (lo, hi) = pair.plus.window();
            let (mlo, mhi) = pair.minus.window();
            for x in lo.max(mlo)..=hi.min(mhi) {
                let mp = pair.plus.m_at(x);
                let mm = pair.minus.m_at(x);
                let zp = pair.plus.z_at(x);
                let zm = pair.minus.z_at(x);
                t.row(vec![
                    x.into(),
                    mp.0.re.into(), mp.0.im.into(), mp.1.re.into(), mp.1.im.into(),
                    mm.0.re.into(), mm.0.im.into(), mm.1.re.into(), mm.1.im.into(),
                    zp.re.into(), zp.im.into(), zm.re.into(), zm.im.into(),
                ]);
            }
            let worst = pair
                .plus
                .recursion_residual
                .max(pair.minus.recursion_residual);
            emit(common.out.as_deref(), &t.render())?;
            if worst > tol {
                return Err(Error::NonConvergence(format!(
                    "recursion residual {worst:.3e} above budget {tol:.3e}"
                )));
            }
            Ok(0)
        }
        (None, Some(s)) => {
            let (sheet, lo, hi, n) = parse_grid(s)?;
            let mut t = Table::new(&[
                "xi_re", "terms_plus", "terms_minus",
                "residual_plus", "residual_minus",
                "tail_plus", "tail_minus",
                "wronskian_re", "wronskian_im", "wronskian_drift",
            ]);
            t.kv("coin", common.coin.display().to_string().as_str());
            t.kv("sheet", sheet.index() as i64);
            t.kv("grid", s);
            let mut worst: f64 = 0.0;
            for k in 0..n {
                let re = lo + (hi - lo) * k as f64 / (n - 1) as f64;
                let p = SheetPoint::real(sheet, re)?;
                if p.is_edge() || !p.is_admissible(b0_of(&seq)) {
                    continue;
                }
                let pair = jost_pair(&seq, &cut, &p)?;
                worst = worst
                    .max(pair.plus.recursion_residual)
                    .max(pair.minus.recursion_residual);
                t.row(vec![
                    re.into(),
                    pair.plus.report.terms.into(),
                    pair.minus.report.terms.into(),
                    pair.plus.recursion_residual.into(),
                    pair.minus.recursion_residual.into(),
                    pair.plus.tail_deviation.into(),
                    pair.minus.tail_deviation.into(),
                    pair.w.re.into(),
                    pair.w.im.into(),
                    pair.w_drift.into(),
                ]);
            }
            emit(common.out.as_deref(), &t.render())?;
            if worst > tol {
                return Err(Error::NonConvergence(format!(
                    "recursion residual {worst:.3e} above budget {tol:.3e}"
                )));
            }
            Ok(0)
        }
        _ => Err(Error::Parse("jost wants exactly one of --xi or --xi-grid".into())),
    }
}

fn cmd_resolvent(common: &Common, xi: &str, window: Option<&str>) -> Result<i32, Error> {
    let seq = load_sequence(&common.coin)?;
    let cut = CutoffData::choose(&seq, 0.1)?;
    let p = parse_xi(xi)?;
    let window = match window {
        Some(w) => parse_window(w)?,
        None => default_eval_window(&seq),
    };
    let k = ResolventKernel::new(&seq, &cut, &p, window)?;
    let mut t = Table::new(&[
        "x",
        "k00_re", "k00_im", "k01_re", "k01_im",
        "k10_re", "k10_im", "k11_re", "k11_im",
    ]);
    t.kv("coin", common.coin.display().to_string().as_str());
    kv_point(&mut t, &p);
    t.kv("lambda_re", k.lambda.re);
    t.kv("lambda_im", k.lambda.im);
    t.kv("window", format!("{}:{}", window.0, window.1).as_str());
    t.kv("w_kernel_re", k.w_kernel.re);
    t.kv("w_kernel_im", k.w_kernel.im);
    for x in window.0..=window.1 {
        let m = k.eval(x, 0);
        t.row(vec![
            x.into(),
            m.0[0][0].re.into(), m.0[0][0].im.into(),
            m.0[0][1].re.into(), m.0[0][1].im.into(),
            m.0[1][0].re.into(), m.0[1][0].im.into(),
            m.0[1][1].re.into(), m.0[1][1].im.into(),
        ]);
    }
    emit(common.out.as_deref(), &t.render())?;
    Ok(0)
}

fn cmd_lap(
    common: &Common,
    xi: &str,
    ladder: &str,
    sigma: f64,
    tol: f64,
) -> Result<i32, Error> {
    let seq = load_sequence(&common.coin)?;
    let cut = CutoffData::choose(&seq, 0.1)?;
    let p = parse_xi(xi)?;
    let eps = parse_ladder(ladder)?;
    let report = lap_sweep(&seq, &cut, &p, &eps, sigma)?;
    let mut t = Table::new(&["eps", "hs_norm", "cauchy_diff"]);
    t.kv("coin", common.coin.display().to_string().as_str());
    kv_point(&mut t, &p);
    t.kv("sigma", sigma);
    t.kv("ladder", ladder);
    t.kv("monotone", report.monotone as i64);
    t.kv("final_ratio", report.final_ratio);
    t.kv("sigma_ok", report.sigma_ok as i64);
    for e in &report.entries {
        t.row(vec![e.eps.into(), e.hs_norm.into(), e.cauchy_diff.into()]);
    }
    emit(common.out.as_deref(), &t.render())?;
    if !report.monotone || report.final_ratio > tol {
        return Err(Error::NonConvergence(format!(
            "ladder monotone {} final ratio {:.3e}",
            report.monotone, report.final_ratio
        )));
    }
    Ok(0)
}

fn cmd_oracle(common: &Common, ring: usize) -> Result<i32, Error> {
    let seq = load_sequence(&common.coin)?;
    let fw = build_finite(&seq, ring)?;
    let spec = spectrum_finite(&fw)?;
    let band = essential_band(seq.rho_inf())?;
    let mut t = Table::new(&["index", "angle", "abs_cos", "in_band", "pr", "half_mass"]);
    t.kv("coin", common.coin.display().to_string().as_str());
    t.kv("ring", ring as i64);
    t.kv("rho_inf", seq.rho_inf());
    t.kv("unimodularity_defect", spec.unimodularity_defect);
    for i in 0..spec.dim {
        let v = spec.eigenvector(i);
        t.row(vec![
            i.into(),
            spec.angles[i].into(),
            spec.angles[i].cos().abs().into(),
            (band.contains(spec.angles[i]) as i64).into(),
            participation_ratio(v).into(),
            half_mass_radius(v).into(),
        ]);
    }
    emit(common.out.as_deref(), &t.render())?;
    Ok(0)
}

fn cmd_evolve(common: &Common, steps: usize) -> Result<i32, Error> {
    let seq = load_sequence(&common.coin)?;
    let (lo, hi) = seq.window();
    let mut state = StateVector::delta(lo, hi, 0, 0)?;
    let mut t = Table::new(&["step", "norm", "weighted_norm_sigma1"]);
    t.kv("coin", common.coin.display().to_string().as_str());
    t.kv("steps", steps as i64);
    let spec = WeightedNormSpec { sigma: 1.0 };
    for step in 0..=steps {
        t.row(vec![
            step.into(),
            state.norm().into(),
            weighted_norm(&state, spec).into(),
        ]);
        if step < steps {
            state = evolve_u(&seq, &state, Boundary::Periodic)?;
        }
    }
    t.kv("final_norm_drift", (state.norm() - 1.0).abs());
    emit(common.out.as_deref(), &t.render())?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.cmd {
        Cmd::Gauge { common } => cmd_gauge(common),
        Cmd::Validate { common } => cmd_validate(common),
        Cmd::Jost { common, xi, xi_grid, tol } => {
            cmd_jost(common, xi.as_deref(), xi_grid.as_deref(), *tol)
        }
        Cmd::Resolvent { common, xi, window } => {
            cmd_resolvent(common, xi, window.as_deref())
        }
        Cmd::Lap { common, xi, eps_ladder, sigma, tol } => {
            cmd_lap(common, xi, eps_ladder, *sigma, *tol)
        }
        Cmd::Oracle { common, ring } => cmd_oracle(common, *ring),
        Cmd::Evolve { common, steps } => cmd_evolve(common, *steps),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

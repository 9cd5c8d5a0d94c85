//! The explicit resolvent kernel assembled from a Jost pair, weighted-norm
//! application, and the limiting-absorption sweep.

use crate::coin::CoinSequence;
use crate::dispersion::{CutoffData, SheetPoint};
use crate::error::{Error, Result};
use crate::jost::{jost_pair, JostPair};
use crate::linalg::{C64, Mat2, Vec2};
use crate::transfer::{j_inverse, j_map, StateVector};

/// K_xi(x, y) tabulated from the two Jost solutions and their Wronskian.
#[derive(Clone, Debug)]
pub struct ResolventKernel {
    pub p: SheetPoint,
    pub pair: JostPair,
    /// det(phi_+ phi_-), the orientation entering the kernel formula
    pub w_kernel: C64,
    pub lambda: C64,
    window: (i64, i64),
    phi_plus: Vec<Vec2>,
    phi_minus: Vec<Vec2>,
}

/// Default evaluation window: the coin window shrunk by 10 sites per side.
pub fn default_eval_window(seq: &CoinSequence) -> (i64, i64) {
    let (lo, hi) = seq.window();
    (lo + 10, hi - 10)
}

impl ResolventKernel {
    pub fn new(
        seq: &CoinSequence,
        cut: &CutoffData,
        p: &SheetPoint,
        window: (i64, i64),
    ) -> Result<ResolventKernel> {
        let pair = jost_pair(seq, cut, p)?;
        let (jlo, jhi) = pair.plus.window();
        if window.0 < jlo || window.1 > jhi || window.0 > window.1 {
            return Err(Error::WindowMismatch(format!(
                "evaluation window [{}, {}] not inside [{jlo}, {jhi}]",
                window.0, window.1
            )));
        }
        let phi_plus: Vec<Vec2> = (jlo..=jhi).map(|x| pair.plus.phi_at(x)).collect();
        let phi_minus: Vec<Vec2> = (jlo..=jhi).map(|x| pair.minus.phi_at(x)).collect();
        let lambda = pair.plus.lambda;
        Ok(ResolventKernel {
            p: *p,
            w_kernel: -pair.w,
            lambda,
            window,
            phi_plus,
            phi_minus,
            pair,
        })
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    fn phi(&self, x: i64) -> (Vec2, Vec2) {
        let (jlo, _) = self.pair.plus.window();
        let k = (x - jlo) as usize;
        (self.phi_plus[k], self.phi_minus[k])
    }

    /// K(x, y) per the explicit kernel formula: outer products of phi_- and
    /// phi_+ masked by the triangular indicator patterns.
    pub fn eval(&self, x: i64, y: i64) -> Mat2 {
        let pre = (-C64::i() * self.lambda).exp() / self.w_kernel;
        let (pp_x, pm_x) = self.phi(x);
        let (pp_y, pm_y) = self.phi(y);
        // phi_-(x) phi_+(y)^T [[0, 1_{x<y}], [1_{x<=y}, 0]]
        //   + phi_+(x) phi_-(y)^T [[0, 1_{x>=y}], [1_{x>y}, 0]];
        // the indicator matrices select which solution feeds each column,
        // so both columns of K(., y) solve the transfer recursion off x = y
        let mut out = Mat2::ZERO;
        if x <= y {
            out.0[0][0] += pm_x.0 * pp_y.1;
            out.0[1][0] += pm_x.1 * pp_y.1;
        }
        if x < y {
            out.0[0][1] += pm_x.0 * pp_y.0;
            out.0[1][1] += pm_x.1 * pp_y.0;
        }
        if x > y {
            out.0[0][0] += pp_x.0 * pm_y.1;
            out.0[1][0] += pp_x.1 * pm_y.1;
        }
        if x >= y {
            out.0[0][1] += pp_x.0 * pm_y.0;
            out.0[1][1] += pp_x.1 * pm_y.0;
        }
        pre * out
    }
}

/// Applies J (U - e^{i lambda}) J^{-1} to a v-space state, reading the state
/// as zero outside its window; output is valid on the interior.
pub fn j_conjugated_defect(seq: &CoinSequence, lambda: C64, v: &StateVector) -> StateVector {
    let u = j_inverse(v).expect("window of at least two sites");
    let (lo, hi) = u.window();
    let phase = (C64::i() * lambda).exp();
    // U = SC with zero padding outside the window
    let coined: Vec<Vec2> = (lo - 1..=hi + 1).map(|x| seq.coin_matrix(x) * u.get(x)).collect();
    let at = |x: i64| -> Vec2 {
        if x < lo - 1 || x > hi + 1 {
            Vec2::ZERO
        } else {
            coined[(x - lo + 1) as usize]
        }
    };
    let mut w = StateVector::zero(lo - 1, hi + 1).expect("nonempty");
    for x in lo - 1..=hi + 1 {
        let shifted = Vec2(at(x - 1).0, at(x + 1).1);
        w.set(x, shifted - phase * u.get(x));
    }
    j_map(&w)
}

/// (U - e^{i lambda})^{-1} u via the kernel: J^{-1} [sum_y K(., y) (J u)(y)].
pub fn apply_resolvent(k: &ResolventKernel, u: &StateVector) -> Result<StateVector> {
    let (lo, hi) = k.window;
    let (ulo, uhi) = u.window();
    if ulo < lo || uhi > hi {
        return Err(Error::WindowMismatch(format!(
            "state window [{ulo}, {uhi}] outside kernel window [{lo}, {hi}]"
        )));
    }
    let v = j_map(u);
    let mut out = StateVector::zero(lo, hi + 1)?;
    let (vlo, vhi) = v.window();
    for x in lo..=hi + 1 {
        let mut acc = Vec2::ZERO;
        for y in vlo.max(lo)..=vhi.min(hi + 1) {
            acc = acc + k.eval(x, y) * v.get(y);
        }
        out.set(x, acc);
    }
    j_inverse(&out)
}

/// Weight exponent sigma for the <x>^{2 sigma} norm.
#[derive(Clone, Copy, Debug)]
pub struct WeightedNormSpec {
    pub sigma: f64,
}

pub fn weighted_norm(u: &StateVector, spec: WeightedNormSpec) -> f64 {
    u.iter()
        .map(|(x, v)| {
            // <x>^{2 sigma} = (1 + x^2)^sigma
            v.norm_sqr() * (1.0 + (x as f64) * (x as f64)).powf(spec.sigma)
        })
        .sum::<f64>()
        .sqrt()
}

fn weight(x: i64, sigma: f64) -> f64 {
    // <x>^{-sigma}
    (1.0 + (x as f64) * (x as f64)).powf(-sigma / 2.0)
}

/// Hilbert-Schmidt norm of <x>^{-sigma} K(x,y) <y>^{-sigma} over the window.
pub fn weighted_hs_norm(k: &ResolventKernel, sigma: f64) -> f64 {
    let (lo, hi) = k.window;
    let mut sum = 0.0;
    for x in lo..=hi {
        let wx = weight(x, sigma);
        for y in lo..=hi {
            let wy = weight(y, sigma);
            let f = k.eval(x, y).norm_frobenius();
            sum += (wx * wy * f) * (wx * wy * f);
        }
    }
    sum.sqrt()
}

#[derive(Clone, Debug)]
pub struct LapEntry {
    pub eps: f64,
    pub hs_norm: f64,
    /// HS norm of the kernel difference against the previous rung
    pub cauchy_diff: f64,
}

#[derive(Clone, Debug)]
pub struct LapReport {
    pub entries: Vec<LapEntry>,
    pub monotone: bool,
    /// final Cauchy difference over final HS norm
    pub final_ratio: f64,
    /// the limiting-absorption hypothesis sigma > 1/2
    pub sigma_ok: bool,
}

/// Runs the epsilon ladder xi + i eps for decreasing eps and reports the
/// Cauchy behavior of the weighted kernel norms.
pub fn lap_sweep(
    seq: &CoinSequence,
    cut: &CutoffData,
    xi_real: &SheetPoint,
    eps_ladder: &[f64],
    sigma: f64,
) -> Result<LapReport> {
    if !xi_real.is_real() || xi_real.is_edge() {
        return Err(Error::OutOfDomain {
            bound: 0.0,
            detail: "LAP sweep needs a real non-edge xi".into(),
        });
    }
    if xi_real.abs_sin() < cut.epsilon {
        return Err(Error::OutOfDomain {
            bound: cut.epsilon,
            detail: format!("|sin xi| = {:.3e} below epsilon", xi_real.abs_sin()),
        });
    }
    if eps_ladder.is_empty() || eps_ladder.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::RangeError("eps ladder must be strictly decreasing".into()));
    }
    let window = default_eval_window(seq);
    let mut entries: Vec<LapEntry> = Vec::new();
    let mut prev: Option<ResolventKernel> = None;
    for &eps in eps_ladder {
        let p = SheetPoint::new(xi_real.sheet, xi_real.xi + C64::new(0.0, eps))?;
        let k = ResolventKernel::new(seq, cut, &p, window)?;
        let hs = weighted_hs_norm(&k, sigma);
        let diff = match &prev {
            None => f64::NAN,
            Some(old) => {
                let (lo, hi) = window;
                let mut sum = 0.0;
                for x in lo..=hi {
                    let wx = weight(x, sigma);
                    for y in lo..=hi {
                        let wy = weight(y, sigma);
                        let f = (k.eval(x, y) - old.eval(x, y)).norm_frobenius();
                        sum += (wx * wy * f) * (wx * wy * f);
                    }
                }
                sum.sqrt()
            }
        };
        entries.push(LapEntry {
            eps,
            hs_norm: hs,
            cauchy_diff: diff,
        });
        prev = Some(k);
    }
    let diffs: Vec<f64> = entries.iter().skip(1).map(|e| e.cauchy_diff).collect();
    let monotone = diffs.windows(2).all(|w| w[1] <= w[0]);
    let final_ratio = match (diffs.last(), entries.last()) {
        (Some(d), Some(e)) if e.hs_norm > 0.0 => d / e.hs_norm,
        _ => f64::NAN,
    };
    Ok(LapReport {
        entries,
        monotone,
        final_ratio,
        sigma_ok: sigma > 0.5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::Sheet;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn decaying_coin() -> (CoinSequence, CutoffData) {
        let seq = CoinSequence::from_rule(-60, 60, c(0.5, 0.0), c(0.5, 0.0), |x| {
            c(0.5 + 0.2 / (1.0 + x.abs() as f64), 0.0)
        })
        .unwrap();
        let cut = CutoffData::choose(&seq, 0.1).unwrap();
        (seq, cut)
    }

    fn kernel(seq: &CoinSequence, cut: &CutoffData, xi: C64) -> ResolventKernel {
        let p = SheetPoint::new(Sheet::One, xi).unwrap();
        ResolventKernel::new(seq, cut, &p, default_eval_window(seq)).unwrap()
    }

    #[test]
    fn delta_identity() {
        let (seq, cut) = decaying_coin();
        let k = kernel(&seq, &cut, c(1.3, 0.05));
        let (lo, hi) = k.window();
        for y in [0, -17, 23] {
            for j in 0..2 {
                // column K(., y) e_j as a v-space state
                let data = (lo..=hi)
                    .map(|x| k.eval(x, y).column(j))
                    .collect::<Vec<_>>();
                let col = StateVector::new(lo, data).unwrap();
                let out = j_conjugated_defect(&seq, k.lambda, &col);
                for x in lo + 3..=hi - 3 {
                    let got = out.get(x);
                    let expect = if x == y {
                        if j == 0 {
                            Vec2(c(1.0, 0.0), c(0.0, 0.0))
                        } else {
                            Vec2(c(0.0, 0.0), c(1.0, 0.0))
                        }
                    } else {
                        Vec2::ZERO
                    };
                    assert!(
                        (got - expect).norm_inf() < 1e-10,
                        "x={x} y={y} j={j}: {:?}",
                        got - expect
                    );
                }
            }
        }
    }

    #[test]
    fn constant_coin_free_resolvent_decay() {
        let seq = CoinSequence::constant(c(FRAC_1_SQRT_2, 0.0), -60, 60).unwrap();
        let cut = CutoffData::choose(&seq, 0.1).unwrap();
        let im = 0.05;
        let k = kernel(&seq, &cut, c(1.3, im));
        // |K(x, y)| ~ e^{-Im xi |x - y|}: log-linear fit of the decay
        let mut pts = Vec::new();
        for d in 5..40 {
            let v = k.eval(d, 0).norm_frobenius();
            if v > 0.0 {
                pts.push((d as f64, v.ln()));
            }
        }
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!(
            (slope + im).abs() < 0.05 * im,
            "slope {slope} vs {}",
            -im
        );
    }

    #[test]
    fn apply_resolvent_solves_system() {
        let (seq, cut) = decaying_coin();
        let k = kernel(&seq, &cut, c(1.3, 0.05));
        let (lo, hi) = k.window();
        let u = StateVector::delta(lo, hi, 4, 0).unwrap();
        let v = apply_resolvent(&k, &u).unwrap();
        // (U - e^{i lambda}) v = u on the interior
        let uu = crate::transfer::evolve_u(&seq, &v, crate::transfer::Boundary::Periodic).unwrap();
        let phase = (C64::i() * k.lambda).exp();
        for x in lo + 5..=hi - 5 {
            let r = uu.get(x) - phase * v.get(x) - u.get(x);
            assert!(r.norm_inf() < 1e-9, "x = {x}: {:.3e}", r.norm_inf());
        }
    }

    #[test]
    fn resolvent_linearity() {
        let (seq, cut) = decaying_coin();
        let k = kernel(&seq, &cut, c(2.0, 0.03));
        let (lo, hi) = k.window();
        let u1 = StateVector::delta(lo, hi, -3, 0).unwrap();
        let u2 = StateVector::delta(lo, hi, 7, 1).unwrap();
        let a = c(0.7, -0.2);
        let mut combo = StateVector::zero(lo, hi).unwrap();
        for x in lo..=hi {
            combo.set(x, a * u1.get(x) + u2.get(x));
        }
        let r1 = apply_resolvent(&k, &u1).unwrap();
        let r2 = apply_resolvent(&k, &u2).unwrap();
        let rc = apply_resolvent(&k, &combo).unwrap();
        for x in lo..hi {
            let d = rc.get(x) - (a * r1.get(x) + r2.get(x));
            assert!(d.norm_inf() < 1e-13 * rc.get(x).norm_inf().max(1.0));
        }
    }

    #[test]
    fn weighted_norm_values() {
        let u = StateVector::delta(-5, 5, 0, 0).unwrap();
        assert!((weighted_norm(&u, WeightedNormSpec { sigma: 0.0 }) - 1.0).abs() < 1e-15);
        let v = StateVector::delta(-5, 5, 3, 1).unwrap();
        let w = weighted_norm(&v, WeightedNormSpec { sigma: 1.0 });
        assert!((w - 10f64.sqrt()).abs() < 1e-14);
        let winv = weighted_norm(&v, WeightedNormSpec { sigma: -1.0 });
        assert!((winv - 1.0 / 10f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn lap_sweep_converges() {
        let (seq, cut) = decaying_coin();
        let p = SheetPoint::real(Sheet::One, 1.4).unwrap();
        let ladder: Vec<f64> = (0..8).map(|k| 1e-1 * 0.25f64.powi(k)).collect();
        let report = lap_sweep(&seq, &cut, &p, &ladder, 1.0).unwrap();
        assert!(report.sigma_ok);
        assert!(report.monotone, "{:?}", report.entries);
        assert!(report.final_ratio < 1e-3, "ratio {}", report.final_ratio);
    }

    #[test]
    fn lap_sweep_rejects_edge() {
        let (seq, cut) = decaying_coin();
        let p = SheetPoint::real(Sheet::One, 0.05).unwrap();
        assert!(lap_sweep(&seq, &cut, &p, &[1e-1, 1e-2], 1.0).is_err());
    }

    #[test]
    fn lap_sweep_flags_small_sigma() {
        let (seq, cut) = decaying_coin();
        let p = SheetPoint::real(Sheet::One, 1.4).unwrap();
        let ladder = [1e-1, 2.5e-2, 6.25e-3];
        let report = lap_sweep(&seq, &cut, &p, &ladder, 0.4).unwrap();
        assert!(!report.sigma_ok);
    }
}

//! Modified plane waves (Jost solutions) via the Neumann fixed point.
//!
//! The solution toward +infinity is built in three stages: a contraction
//! fixed point on [x0, infinity), a backward recursion through the middle,
//! and a second contraction on (-infinity, x1]. The -infinity solution
//! mirrors the construction with the boundary condition at the left end.
//! Constant coin tails make every lattice sum terminate exactly.

use crate::coin::CoinSequence;
use crate::dispersion::{lambda_infty, p_matrix_with_zeta, zeta, CutoffData, SheetPoint};
use crate::error::{Error, Result};
use crate::linalg::{C64, Mat2, Vec2, ONE, ZERO};
use crate::transfer::transfer_matrix;

pub const NEUMANN_TOL: f64 = 1e-13;
pub const NEUMANN_CAP: usize = 200;
pub const WRONSKIAN_FLOOR: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Plus => 1.0,
            Direction::Minus => -1.0,
        }
    }

    pub fn toward_plus(self) -> bool {
        self == Direction::Plus
    }
}

/// nu_dir(xi) = (alpha_dir, rho_inf e^{dir i xi} - e^{i lambda_inf(xi)}).
///
/// The first component carries the coin limit of the matching infinity;
/// for coins with alpha_plus = alpha_minus the two directions share it.
pub fn nu(direction: Direction, seq: &CoinSequence, p: &SheetPoint) -> Result<Vec2> {
    let lambda = lambda_infty(seq, p)?;
    let a = seq.alpha_limit(direction.toward_plus());
    let rho = seq.rho_inf();
    Ok(Vec2(
        a,
        rho * (C64::i() * direction.sign() * p.xi).exp() - (C64::i() * lambda).exp(),
    ))
}

/// Modified phase Z(x, xi) = sum_{y=0}^{x-1} zeta(y, xi), with the mirror
/// convention Z(x) = -sum_{y=x}^{-1} zeta(y) for x <= 0.
pub fn modified_phase(seq: &CoinSequence, cut: &CutoffData, p: &SheetPoint, x: i64) -> Result<C64> {
    let mut z = ZERO;
    if x > 0 {
        for y in 0..x {
            z += zeta(seq, cut, y, p)?;
        }
    } else {
        for y in x..0 {
            z -= zeta(seq, cut, y, p)?;
        }
    }
    Ok(z)
}

/// Precomputed per-site data shared by both construction directions.
struct Tables {
    x_lo: i64,
    lambda: C64,
    /// zeta(x) on [x_lo, x_hi + 1]
    zeta: Vec<C64>,
    /// P-tilde(x) on [x_lo, x_hi + 1]
    p_tilde: Vec<Mat2>,
    /// V(x) = e^{-i zeta(x)} P~(x+1)^{-1} T(x) P~(x) - A(x) on [x_lo, x_hi],
    /// forced to zero outside [window_lo - 1, window_hi]
    v: Vec<Mat2>,
    /// Z(x) on [x_lo, x_hi + 1]
    z: Vec<C64>,
}

impl Tables {
    fn x_hi(&self) -> i64 {
        self.x_lo + self.v.len() as i64 - 1
    }

    fn idx(&self, x: i64) -> usize {
        (x - self.x_lo) as usize
    }

    fn a(&self, x: i64) -> Mat2 {
        let z = self.zeta[self.idx(x)];
        Mat2::diag(ONE, (C64::new(0.0, -2.0) * z).exp())
    }

    fn phase2(&self, x: i64) -> C64 {
        // e^{2 i zeta(x)}, modulus <= 1 since Im zeta >= 0
        (C64::new(0.0, 2.0) * self.zeta[self.idx(x)]).exp()
    }

    fn build(
        seq: &CoinSequence,
        cut: &CutoffData,
        p: &SheetPoint,
        direction: Direction,
    ) -> Result<Tables> {
        let (lo, hi) = seq.window();
        let x_lo = lo - 2;
        let x_hi = hi + 2;
        let n = (x_hi - x_lo + 1) as usize;
        let lambda = lambda_infty(seq, p)?;

        let mut zv = Vec::with_capacity(n + 1);
        for x in x_lo..=x_hi + 1 {
            let z = zeta(seq, cut, x, p)?;
            if z.im < -1e-12 {
                return Err(Error::OutOfDomain {
                    bound: 0.0,
                    detail: format!("Im zeta = {} at x = {x}", z.im),
                });
            }
            zv.push(z);
        }

        let a_inf = seq.alpha_limit(direction.toward_plus());
        let rho_inf = seq.rho_inf();
        let e_l = (C64::i() * lambda).exp();
        let p_inf = Mat2([
            [a_inf, a_inf],
            [
                rho_inf * (C64::i() * p.xi).exp() - e_l,
                rho_inf * (-C64::i() * p.xi).exp() - e_l,
            ],
        ]);
        if p_inf.det().norm() < 1e-10 * a_inf.norm() * rho_inf {
            return Err(Error::Degenerate {
                x: 0,
                det_abs: p_inf.det().norm(),
            });
        }

        let mut p_tilde = Vec::with_capacity(n + 1);
        for x in x_lo..=x_hi + 1 {
            if x.abs() < cut.r_eps {
                p_tilde.push(p_inf);
            } else {
                p_tilde.push(p_matrix_with_zeta(seq, x, p, zv[(x - x_lo) as usize])?);
            }
        }

        let mut v = Vec::with_capacity(n);
        for x in x_lo..=x_hi {
            if x < lo - 1 || x > hi {
                // constant tail: P~ is site-independent and diagonalizes T
                // exactly, so V vanishes identically
                v.push(Mat2::ZERO);
                continue;
            }
            let k = (x - x_lo) as usize;
            let t = transfer_matrix(seq, x, lambda);
            let m = (-C64::i() * zv[k]).exp() * (p_tilde[k + 1].inverse() * t * p_tilde[k]);
            let a = Mat2::diag(ONE, (C64::new(0.0, -2.0) * zv[k]).exp());
            v.push(m - a);
        }

        let mut z = vec![ZERO; n + 1];
        let zero_idx = (0 - x_lo) as usize;
        for k in zero_idx..n {
            z[k + 1] = z[k] + zv[k];
        }
        for k in (0..zero_idx).rev() {
            z[k] = z[k + 1] - zv[k];
        }

        Ok(Tables {
            x_lo,
            lambda,
            zeta: zv,
            p_tilde,
            v,
            z,
        })
    }

    /// Smallest x0 >= r_eps with sum_{y >= x0} ||V(y)|| <= 1/2 and largest
    /// x1 <= -r_eps with sum_{y < x1} ||V(y)|| <= 1/2.
    fn pick_x0_x1(&self, seq: &CoinSequence, cut: &CutoffData) -> Result<(i64, i64)> {
        let (lo, hi) = seq.window();
        let mut tail = 0.0;
        let mut x0 = self.x_hi() + 1;
        for x in (cut.r_eps..=self.x_hi()).rev() {
            tail += self.v[self.idx(x)].norm_inf();
            if tail <= 0.5 {
                x0 = x;
            }
        }
        if x0 > hi {
            return Err(Error::WindowTooSmall(format!(
                "V tail l1 norm stays above 1/2 down to x = {hi}"
            )));
        }
        let mut head = 0.0;
        let mut x1 = self.x_lo - 1;
        for x in self.x_lo..=-cut.r_eps {
            if head <= 0.5 {
                x1 = x;
            }
            head += self.v[self.idx(x)].norm_inf();
        }
        if x1 < lo {
            return Err(Error::WindowTooSmall(format!(
                "V head l1 norm stays above 1/2 up to x = {lo}"
            )));
        }
        Ok((x0, x1))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IterationReport {
    pub terms: usize,
    pub final_increment: f64,
}

/// One Jost solution: the bounded profile m(x), the phase Z(x), and the
/// verification diagnostics computed at build time.
#[derive(Clone, Debug)]
pub struct JostSolution {
    pub direction: Direction,
    pub p: SheetPoint,
    pub lambda: C64,
    x_lo: i64,
    m: Vec<Vec2>,
    z: Vec<C64>,
    /// (r_eps, x0, x1)
    pub cutoffs: (i64, i64, i64),
    pub report: IterationReport,
    /// max_x ||phi(x+1) - T(x) phi(x)|| / max(1, ||phi(x)||)
    pub recursion_residual: f64,
    /// ||m - nu|| at the last window site toward the matching infinity
    pub tail_deviation: f64,
}

impl JostSolution {
    pub fn window(&self) -> (i64, i64) {
        (self.x_lo, self.x_lo + self.m.len() as i64 - 1)
    }

    pub fn m_at(&self, x: i64) -> Vec2 {
        let (lo, hi) = self.window();
        assert!(x >= lo && x <= hi, "site {x} outside [{lo}, {hi}]");
        self.m[(x - lo) as usize]
    }

    pub fn z_at(&self, x: i64) -> C64 {
        let (lo, hi) = self.window();
        assert!(x >= lo && x <= hi, "site {x} outside [{lo}, {hi}]");
        self.z[(x - lo) as usize]
    }

    /// phi(x) = e^{dir i Z(x)} m(x).
    pub fn phi_at(&self, x: i64) -> Vec2 {
        (C64::i() * self.direction.sign() * self.z_at(x)).exp() * self.m_at(x)
    }
}

fn sup_diff(a: &[Vec2], b: &[Vec2]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).norm_inf())
        .fold(0.0, f64::max)
}

/// Builds V(x, xi) with the +infinity P-tilde convention.
pub fn build_v(seq: &CoinSequence, cut: &CutoffData, p: &SheetPoint, x: i64) -> Result<Mat2> {
    let t = Tables::build(seq, cut, p, Direction::Plus)?;
    if x < t.x_lo || x > t.x_hi() {
        return Ok(Mat2::ZERO);
    }
    Ok(t.v[t.idx(x)])
}

/// The contraction thresholds (x0, x1) used by the fixed points.
pub fn choose_x0_x1(seq: &CoinSequence, cut: &CutoffData, p: &SheetPoint) -> Result<(i64, i64)> {
    let t = Tables::build(seq, cut, p, Direction::Plus)?;
    t.pick_x0_x1(seq, cut)
}

/// psi profile for the +infinity solution.
fn solve_psi_plus(t: &Tables, x0: i64, x1: i64) -> Result<(Vec<Vec2>, IterationReport)> {
    let x_lo = t.x_lo;
    let x_hi = t.x_hi();
    let n = (x_hi - x_lo + 1) as usize;
    let mut psi = vec![Vec2(ONE, ZERO); n];
    let idx = |x: i64| (x - x_lo) as usize;

    // Stage 1: psi = (1,0)^T - D psi on [x0, x_hi], geometric by
    // sum ||V|| <= 1/2 there.
    let mut terms = 0;
    let mut increment = f64::INFINITY;
    while increment > NEUMANN_TOL {
        if terms >= NEUMANN_CAP {
            return Err(Error::NonConvergence(format!(
                "Neumann increment {increment:.3e} after {terms} terms"
            )));
        }
        let old: Vec<Vec2> = psi[idx(x0)..].to_vec();
        // suffix sweeps: p1(x) = sum_{y>=x} (V psi)_1(y),
        // s2(x) = e^{2 i zeta(x)} ((V psi)_2(x) + s2(x+1))
        let mut p1 = ZERO;
        let mut s2 = ZERO;
        for x in (x0..=x_hi).rev() {
            let w = t.v[idx(x)] * psi[idx(x)];
            p1 += w.0;
            s2 = t.phase2(x) * (w.1 + s2);
            psi[idx(x)] = Vec2(ONE - p1, -s2);
        }
        increment = sup_diff(&old, &psi[idx(x0)..]);
        terms += 1;
    }

    // Stage 2: backward recursion through the middle. A^{-1} = diag(1,
    // e^{2 i zeta}) has entries of modulus <= 1, so errors do not amplify.
    for x in (x1..x0).rev() {
        let step = t.a(x) + t.v[idx(x)];
        psi[idx(x)] = step.inverse() * psi[idx(x + 1)];
    }

    // Stage 3: E fixed point on [x_lo, x1) with boundary value psi(x1).
    let anchor = psi[idx(x1)];
    let mut terms_e = 0;
    let mut increment_e: f64 = 0.0;
    if x1 > x_lo {
        increment_e = f64::INFINITY;
        while increment_e > NEUMANN_TOL {
            if terms_e >= NEUMANN_CAP {
                return Err(Error::NonConvergence(format!(
                    "E-operator increment {increment_e:.3e} after {terms_e} terms"
                )));
            }
            let old: Vec<Vec2> = psi[..idx(x1)].to_vec();
            let mut p1 = ZERO;
            let mut s2 = ZERO;
            let mut q = ONE;
            for x in (x_lo..x1).rev() {
                let w = t.v[idx(x)] * psi[idx(x)];
                p1 += w.0;
                s2 = t.phase2(x) * (w.1 + s2);
                q = t.phase2(x) * q;
                psi[idx(x)] = Vec2(anchor.0 - p1, q * anchor.1 - s2);
            }
            increment_e = sup_diff(&old, &psi[..idx(x1)]);
            terms_e += 1;
        }
    }

    Ok((
        psi,
        IterationReport {
            terms: terms.max(terms_e),
            final_increment: increment.max(increment_e),
        },
    ))
}

/// psi profile for the -infinity solution: fixed point on (-infinity, x1],
/// then the stable forward recursion upward.
fn solve_psi_minus(t: &Tables, x1: i64) -> Result<(Vec<Vec2>, IterationReport)> {
    let x_lo = t.x_lo;
    let x_hi = t.x_hi();
    let n = (x_hi - x_lo + 1) as usize;
    let mut psi = vec![Vec2(ZERO, ONE); n];
    let idx = |x: i64| (x - x_lo) as usize;

    let mut terms = 0;
    let mut increment = f64::INFINITY;
    while increment > NEUMANN_TOL {
        if terms >= NEUMANN_CAP {
            return Err(Error::NonConvergence(format!(
                "Neumann increment {increment:.3e} after {terms} terms (minus)"
            )));
        }
        let old: Vec<Vec2> = psi[..=idx(x1)].to_vec();
        // prefix sweeps: s1(x) = sum_{y<x} e^{2i sum_{w=y}^{x-1} zeta} (V psi)_1(y),
        // p2(x) = sum_{y<x} e^{2 i zeta(y)} (V psi)_2(y)
        let mut s1 = ZERO;
        let mut p2 = ZERO;
        for x in x_lo..=x1 {
            psi[idx(x)] = Vec2(s1, ONE + p2);
            let w = t.v[idx(x)] * psi[idx(x)];
            s1 = t.phase2(x) * (s1 + w.0);
            p2 += t.phase2(x) * w.1;
        }
        increment = sup_diff(&old, &psi[..=idx(x1)]);
        terms += 1;
    }

    for x in x1..x_hi {
        let step = t.phase2(x) * (t.a(x) + t.v[idx(x)]);
        psi[idx(x + 1)] = step * psi[idx(x)];
    }

    Ok((
        psi,
        IterationReport {
            terms,
            final_increment: increment,
        },
    ))
}

pub fn solve_jost(
    seq: &CoinSequence,
    cut: &CutoffData,
    p: &SheetPoint,
    direction: Direction,
) -> Result<JostSolution> {
    let t = Tables::build(seq, cut, p, direction)?;
    let (x0, x1) = t.pick_x0_x1(seq, cut)?;
    let (psi, report) = match direction {
        Direction::Plus => solve_psi_plus(&t, x0, x1)?,
        Direction::Minus => solve_psi_minus(&t, x1)?,
    };

    let x_lo = t.x_lo;
    let x_hi = t.x_hi();
    let n = (x_hi - x_lo + 1) as usize;
    let m: Vec<Vec2> = (0..n).map(|k| t.p_tilde[k] * psi[k]).collect();
    let z = t.z[..n].to_vec();

    let sol = JostSolution {
        direction,
        p: *p,
        lambda: t.lambda,
        x_lo,
        m,
        z,
        cutoffs: (cut.r_eps, x0, x1),
        report,
        recursion_residual: 0.0,
        tail_deviation: 0.0,
    };

    let mut worst: f64 = 0.0;
    for x in x_lo..x_hi {
        let phi = sol.phi_at(x);
        let next = sol.phi_at(x + 1);
        let r = (next - transfer_matrix(seq, x, t.lambda) * phi).norm_inf();
        worst = worst.max(r / phi.norm_inf().max(1.0));
    }

    let (w_lo, w_hi) = seq.window();
    let edge = match direction {
        Direction::Plus => w_hi,
        Direction::Minus => w_lo,
    };
    let tail = (sol.m_at(edge) - nu(direction, seq, p)?).norm_inf();

    Ok(JostSolution {
        recursion_residual: worst,
        tail_deviation: tail,
        ..sol
    })
}

#[derive(Clone, Debug)]
pub struct JostPair {
    pub plus: JostSolution,
    pub minus: JostSolution,
    /// W = det(phi_-(0) phi_+(0))
    pub w: C64,
    /// max relative deviation of det(phi_-(x) phi_+(x)) from W over the window
    pub w_drift: f64,
}

pub fn jost_pair(seq: &CoinSequence, cut: &CutoffData, p: &SheetPoint) -> Result<JostPair> {
    let plus = solve_jost(seq, cut, p, Direction::Plus)?;
    let minus = solve_jost(seq, cut, p, Direction::Minus)?;
    let det_at = |x: i64| {
        let a = minus.phi_at(x);
        let b = plus.phi_at(x);
        a.0 * b.1 - a.1 * b.0
    };
    let w = det_at(0);
    if w.norm() < WRONSKIAN_FLOOR {
        return Err(Error::ZeroWronskian { w_abs: w.norm() });
    }
    let (lo, hi) = plus.window();
    let (mlo, mhi) = minus.window();
    let mut drift: f64 = 0.0;
    for x in lo.max(mlo)..=hi.min(mhi) {
        drift = drift.max((det_at(x) - w).norm() / w.norm());
    }
    Ok(JostPair {
        plus,
        minus,
        w,
        w_drift: drift,
    })
}

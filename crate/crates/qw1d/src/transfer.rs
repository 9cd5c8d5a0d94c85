//! Transfer matrices, the J coordinate change, Wronskians, direct walk
//! evolution, and the essential-spectrum band.

use crate::coin::CoinSequence;
use crate::error::{Error, Result};
use crate::linalg::{C64, Mat2, Vec2};
use std::f64::consts::PI;

/// Overflow guard for exponentially growing propagated solutions.
pub const GROWTH_GUARD: f64 = 1e150;

/// A finitely supported state on the lattice.
///
/// Stores one C^2 pair per site of the window and reads as zero outside.
/// For walk states the pair is (u_R, u_L) with the right-mover on top; the
/// same container holds J-transformed states v = (u_L(x-1), u_R(x)).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    x_min: i64,
    data: Vec<Vec2>,
}

impl StateVector {
    pub fn new(x_min: i64, data: Vec<Vec2>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyWindow);
        }
        Ok(StateVector { x_min, data })
    }

    pub fn zero(x_min: i64, x_max: i64) -> Result<Self> {
        if x_max < x_min {
            return Err(Error::EmptyWindow);
        }
        let n = (x_max - x_min + 1) as usize;
        StateVector::new(x_min, vec![Vec2::ZERO; n])
    }

    /// Delta state: component 0 is the right-mover, 1 the left-mover.
    pub fn delta(x_min: i64, x_max: i64, x: i64, component: usize) -> Result<Self> {
        let mut s = StateVector::zero(x_min, x_max)?;
        let one = C64::new(1.0, 0.0);
        s.set(
            x,
            if component == 0 {
                Vec2(one, C64::new(0.0, 0.0))
            } else {
                Vec2(C64::new(0.0, 0.0), one)
            },
        );
        Ok(s)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.x_min, self.x_min + self.data.len() as i64 - 1)
    }

    pub fn get(&self, x: i64) -> Vec2 {
        let (lo, hi) = self.window();
        if x < lo || x > hi {
            Vec2::ZERO
        } else {
            self.data[(x - lo) as usize]
        }
    }

    pub fn set(&mut self, x: i64, v: Vec2) {
        let (lo, hi) = self.window();
        assert!(x >= lo && x <= hi, "site {x} outside window [{lo}, {hi}]");
        self.data[(x - lo) as usize] = v;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(Vec2::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Vec2)> + '_ {
        let lo = self.x_min;
        self.data.iter().enumerate().map(move |(k, v)| (lo + k as i64, *v))
    }
}

/// T_lambda(x) = rho(x)^{-1} [[e^{i lambda}, alpha(x)], [conj alpha(x), e^{-i lambda}]].
pub fn transfer_matrix(seq: &CoinSequence, x: i64, lambda: C64) -> Mat2 {
    let a = seq.alpha(x);
    let rho = seq.rho(x);
    let e = (C64::i() * lambda).exp();
    let inv = C64::new(1.0 / rho, 0.0);
    inv * Mat2([[e, a], [a.conj(), e.inv()]])
}

/// J: v(x) = (u_L(x-1), u_R(x)). Output window extends one site right.
pub fn j_map(u: &StateVector) -> StateVector {
    let (lo, hi) = u.window();
    let data = (lo..=hi + 1)
        .map(|x| Vec2(u.get(x - 1).1, u.get(x).0))
        .collect();
    StateVector::new(lo, data).expect("nonempty by construction")
}

/// J^{-1}: u_R(x) = v_2(x), u_L(x) = v_1(x+1). Output window shrinks one
/// site on the right.
pub fn j_inverse(v: &StateVector) -> Result<StateVector> {
    let (lo, hi) = v.window();
    if hi <= lo {
        return Err(Error::WindowMismatch(
            "J inverse needs a window of at least two sites".into(),
        ));
    }
    let data = (lo..hi).map(|x| Vec2(v.get(x).1, v.get(x + 1).0)).collect();
    StateVector::new(lo, data)
}

/// Propagated solution values v(x) of v(x+1) = T_lambda(x) v(x) on a window.
#[derive(Clone, Debug)]
pub struct Trajectory {
    x_min: i64,
    v: Vec<Vec2>,
}

impl Trajectory {
    pub fn window(&self) -> (i64, i64) {
        (self.x_min, self.x_min + self.v.len() as i64 - 1)
    }

    pub fn at(&self, x: i64) -> Vec2 {
        let (lo, hi) = self.window();
        assert!(x >= lo && x <= hi, "site {x} outside trajectory [{lo}, {hi}]");
        self.v[(x - lo) as usize]
    }
}

/// Propagates v0 from x_from to x_to (either direction); backward steps use
/// the exact unimodular inverse. Values are stored for every site between
/// the endpoints inclusive.
pub fn propagate(
    seq: &CoinSequence,
    v0: Vec2,
    x_from: i64,
    x_to: i64,
    lambda: C64,
) -> Result<Trajectory> {
    let lo = x_from.min(x_to);
    let hi = x_from.max(x_to);
    let n = (hi - lo + 1) as usize;
    let mut v = vec![Vec2::ZERO; n];
    let idx = |x: i64| (x - lo) as usize;
    v[idx(x_from)] = v0;
    if x_to >= x_from {
        let mut cur = v0;
        for x in x_from..x_to {
            cur = transfer_matrix(seq, x, lambda) * cur;
            if cur.norm_inf() > GROWTH_GUARD {
                return Err(Error::GrowthOverflow { x: x + 1 });
            }
            v[idx(x + 1)] = cur;
        }
    } else {
        let mut cur = v0;
        for x in (x_to..x_from).rev() {
            cur = transfer_matrix(seq, x, lambda).unimodular_inverse() * cur;
            if cur.norm_inf() > GROWTH_GUARD {
                return Err(Error::GrowthOverflow { x });
            }
            v[idx(x)] = cur;
        }
    }
    Ok(Trajectory { x_min: lo, v })
}

/// det(v1 v2) as columns; x-independent for two solutions at the same lambda.
pub fn wronskian(v1: Vec2, v2: Vec2) -> C64 {
    v1.0 * v2.1 - v1.1 * v2.0
}

/// Boundary handling for evolve_U.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Truncated,
}

/// One step of U = SC on the state's window.
///
/// Periodic mode wraps the shift around the window (exactly unitary);
/// truncated mode requires the support to stay one site inside the window.
pub fn evolve_u(seq: &CoinSequence, u: &StateVector, boundary: Boundary) -> Result<StateVector> {
    let (lo, hi) = u.window();
    let n = (hi - lo + 1) as usize;
    if boundary == Boundary::Truncated {
        if u.get(lo).norm() > 0.0 || u.get(hi).norm() > 0.0 {
            return Err(Error::BoundaryLeak);
        }
    }
    let coined: Vec<Vec2> = (lo..=hi).map(|x| seq.coin_matrix(x) * u.get(x)).collect();
    let wrap = |x: i64| -> usize { (x - lo).rem_euclid(n as i64) as usize };
    let mut out = StateVector::zero(lo, hi)?;
    for x in lo..=hi {
        let right = match boundary {
            Boundary::Periodic => coined[wrap(x - 1)].0,
            Boundary::Truncated => {
                if x - 1 < lo {
                    C64::new(0.0, 0.0)
                } else {
                    coined[(x - 1 - lo) as usize].0
                }
            }
        };
        let left = match boundary {
            Boundary::Periodic => coined[wrap(x + 1)].1,
            Boundary::Truncated => {
                if x + 1 > hi {
                    C64::new(0.0, 0.0)
                } else {
                    coined[(x + 1 - lo) as usize].1
                }
            }
        };
        out.set(x, Vec2(right, left));
    }
    Ok(out)
}

/// Max residual of (U u - e^{i lambda} u)(x) over the window interior.
pub fn eigen_residual(seq: &CoinSequence, u: &StateVector, lambda: C64) -> Result<f64> {
    let (lo, hi) = u.window();
    let uu = evolve_u(seq, u, Boundary::Periodic)?;
    let phase = (C64::i() * lambda).exp();
    let mut worst: f64 = 0.0;
    for x in lo + 1..hi {
        worst = worst.max((uu.get(x) - phase * u.get(x)).norm_inf());
    }
    Ok(worst)
}

/// The essential-spectrum arcs {e^{i lambda} : |cos lambda| <= rho_inf},
/// described by lambda-intervals in [0, 2 pi).
#[derive(Clone, Copy, Debug)]
pub struct EssentialBand {
    pub rho_inf: f64,
    pub arcs: [(f64, f64); 2],
}

impl EssentialBand {
    pub fn contains(&self, lambda: f64) -> bool {
        lambda.cos().abs() <= self.rho_inf + 1e-14
    }

    /// Distance from cos(lambda) to the band in the cos coordinate; 0 inside.
    pub fn cos_margin(&self, lambda: f64) -> f64 {
        (lambda.cos().abs() - self.rho_inf).max(0.0)
    }
}

pub fn essential_band(rho_inf: f64) -> Result<EssentialBand> {
    if !(rho_inf > 0.0 && rho_inf <= 1.0) {
        return Err(Error::RangeError(format!("rho_inf = {rho_inf} not in (0, 1]")));
    }
    let a = rho_inf.acos();
    Ok(EssentialBand {
        rho_inf,
        arcs: [(a, PI - a), (PI + a, 2.0 * PI - a)],
    })
}

//! Coin sequences, long-range validation, and the gauge transformation that
//! reduces a general U(2) coin to the canonical real-diagonal form.

use crate::error::{Error, Result};
use crate::linalg::{C64, Mat2};

pub const UNITARITY_TOL: f64 = 1e-12;
pub const MODULUS_TOL: f64 = 1e-12;

/// One site of a general coin: C(x) = e^{i theta} [[beta, conj(alpha)], [-alpha, conj(beta)]].
#[derive(Clone, Copy, Debug)]
pub struct GeneralCoinPoint {
    pub alpha: C64,
    pub beta: C64,
    pub theta: f64,
}

impl GeneralCoinPoint {
    pub fn validate(&self, x: i64) -> Result<()> {
        let defect = (self.alpha.norm_sqr() + self.beta.norm_sqr() - 1.0).abs();
        if defect > UNITARITY_TOL {
            return Err(Error::NotUnitary { x, defect });
        }
        if self.alpha.norm() >= 1.0 || self.beta.norm() == 0.0 {
            return Err(Error::AlphaOutOfRange {
                x,
                modulus: self.alpha.norm(),
            });
        }
        Ok(())
    }

    pub fn matrix(&self) -> Mat2 {
        let phase = C64::from_polar(1.0, self.theta);
        phase
            * Mat2([
                [self.beta, self.alpha.conj()],
                [-self.alpha, self.beta.conj()],
            ])
    }
}

/// General coin tabulated on a window, with constant tails (theta = 0 there).
#[derive(Clone, Debug)]
pub struct GeneralCoin {
    x_min: i64,
    points: Vec<GeneralCoinPoint>,
    plus_tail: GeneralCoinPoint,
    minus_tail: GeneralCoinPoint,
}

impl GeneralCoin {
    pub fn new(
        x_min: i64,
        points: Vec<GeneralCoinPoint>,
        plus_tail: GeneralCoinPoint,
        minus_tail: GeneralCoinPoint,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyWindow);
        }
        for (k, p) in points.iter().enumerate() {
            p.validate(x_min + k as i64)?;
        }
        plus_tail.validate(x_min + points.len() as i64)?;
        minus_tail.validate(x_min - 1)?;
        Ok(GeneralCoin {
            x_min,
            points,
            plus_tail,
            minus_tail,
        })
    }

    pub fn window(&self) -> (i64, i64) {
        (self.x_min, self.x_min + self.points.len() as i64 - 1)
    }

    pub fn point(&self, x: i64) -> GeneralCoinPoint {
        let (lo, hi) = self.window();
        if x < lo {
            self.minus_tail
        } else if x > hi {
            self.plus_tail
        } else {
            self.points[(x - lo) as usize]
        }
    }

    /// arg beta(x) in (-pi, pi]. Errors when beta vanishes.
    pub fn b(&self, x: i64) -> Result<f64> {
        let beta = self.point(x).beta;
        if beta.norm() == 0.0 {
            return Err(Error::BetaZero { x });
        }
        Ok(beta.arg())
    }
}

/// Canonical coin data: alpha(x) on a window plus constant tails at alpha_pm.
///
/// rho(x) = sqrt(1 - |alpha(x)|^2) is always derived, never stored.
#[derive(Clone, Debug)]
pub struct CoinSequence {
    x_min: i64,
    values: Vec<C64>,
    alpha_plus: C64,
    alpha_minus: C64,
}

impl CoinSequence {
    pub fn new(x_min: i64, values: Vec<C64>, alpha_plus: C64, alpha_minus: C64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyWindow);
        }
        for (k, a) in values.iter().enumerate() {
            let m = a.norm();
            if m <= 0.0 || m >= 1.0 {
                return Err(Error::AlphaOutOfRange {
                    x: x_min + k as i64,
                    modulus: m,
                });
            }
        }
        for a in [alpha_plus, alpha_minus] {
            let m = a.norm();
            if m <= 0.0 || m >= 1.0 {
                return Err(Error::AlphaOutOfRange {
                    x: i64::MAX,
                    modulus: m,
                });
            }
        }
        let mismatch = (alpha_plus.norm() - alpha_minus.norm()).abs();
        if mismatch > MODULUS_TOL {
            return Err(Error::ModulusMismatch { mismatch });
        }
        Ok(CoinSequence {
            x_min,
            values,
            alpha_plus,
            alpha_minus,
        })
    }

    /// Constant coin alpha(x) = a on the given window.
    pub fn constant(a: C64, x_min: i64, x_max: i64) -> Result<Self> {
        let n = (x_max - x_min + 1).max(0) as usize;
        CoinSequence::new(x_min, vec![a; n], a, a)
    }

    /// Builds from a closed-form rule on [x_min, x_max].
    pub fn from_rule(
        x_min: i64,
        x_max: i64,
        alpha_plus: C64,
        alpha_minus: C64,
        rule: impl Fn(i64) -> C64,
    ) -> Result<Self> {
        let values = (x_min..=x_max).map(rule).collect();
        CoinSequence::new(x_min, values, alpha_plus, alpha_minus)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.x_min, self.x_min + self.values.len() as i64 - 1)
    }

    /// alpha(x); constant at alpha_pm outside the window.
    pub fn alpha(&self, x: i64) -> C64 {
        let (lo, hi) = self.window();
        if x < lo {
            self.alpha_minus
        } else if x > hi {
            self.alpha_plus
        } else {
            self.values[(x - lo) as usize]
        }
    }

    pub fn rho(&self, x: i64) -> f64 {
        (1.0 - self.alpha(x).norm_sqr()).sqrt()
    }

    pub fn alpha_plus(&self) -> C64 {
        self.alpha_plus
    }

    pub fn alpha_minus(&self) -> C64 {
        self.alpha_minus
    }

    /// Asymptotic limit toward the requested infinity.
    pub fn alpha_limit(&self, toward_plus: bool) -> C64 {
        if toward_plus {
            self.alpha_plus
        } else {
            self.alpha_minus
        }
    }

    pub fn rho_inf(&self) -> f64 {
        (1.0 - self.alpha_plus.norm_sqr()).sqrt()
    }

    /// Canonical coin matrix C_{alpha(x)}.
    pub fn coin_matrix(&self, x: i64) -> Mat2 {
        let a = self.alpha(x);
        let rho = self.rho(x);
        Mat2([
            [C64::new(rho, 0.0), a.conj()],
            [-a, C64::new(rho, 0.0)],
        ])
    }

    /// Total l1 variation over Z; the constant tails contribute only the two
    /// boundary jumps, so the sum is exactly finite.
    pub fn l1_variation(&self) -> f64 {
        let (lo, hi) = self.window();
        let mut sum = 0.0;
        for x in lo..hi {
            sum += (self.alpha(x + 1) - self.alpha(x)).norm();
        }
        sum + (self.alpha_plus - self.alpha(hi)).norm() + (self.alpha(lo) - self.alpha_minus).norm()
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub max_unitarity_defect: f64,
    pub min_abs_alpha: f64,
    pub max_abs_alpha: f64,
    pub l1_sum: f64,
    pub boundary_gap_plus: f64,
    pub boundary_gap_minus: f64,
    pub modulus_mismatch: f64,
    pub pass: bool,
}

/// Checks the long-range hypotheses on a tabulated coin and reports the
/// witnessed quantities.
pub fn validate_long_range(seq: &CoinSequence) -> Result<ValidationReport> {
    let (lo, hi) = seq.window();
    let mut max_defect: f64 = 0.0;
    let mut min_abs = f64::INFINITY;
    let mut max_abs: f64 = 0.0;
    for x in lo..=hi {
        let c = seq.coin_matrix(x);
        let defect = (c * c.adjoint() - Mat2::IDENTITY).norm_max();
        max_defect = max_defect.max(defect);
        let m = seq.alpha(x).norm();
        min_abs = min_abs.min(m);
        max_abs = max_abs.max(m);
    }
    let mismatch = (seq.alpha_plus().norm() - seq.alpha_minus().norm()).abs();
    let report = ValidationReport {
        max_unitarity_defect: max_defect,
        min_abs_alpha: min_abs,
        max_abs_alpha: max_abs,
        l1_sum: seq.l1_variation(),
        boundary_gap_plus: (seq.alpha(hi) - seq.alpha_plus()).norm(),
        boundary_gap_minus: (seq.alpha(lo) - seq.alpha_minus()).norm(),
        modulus_mismatch: mismatch,
        pass: max_defect <= UNITARITY_TOL
            && min_abs > 0.0
            && max_abs < 1.0
            && mismatch <= MODULUS_TOL,
    };
    Ok(report)
}

/// Returns (alpha_plus, alpha_minus), asserting modulus equality.
pub fn tail_limits(seq: &CoinSequence) -> Result<(C64, C64)> {
    let mismatch = (seq.alpha_plus().norm() - seq.alpha_minus().norm()).abs();
    if mismatch > MODULUS_TOL {
        return Err(Error::ModulusMismatch { mismatch });
    }
    Ok((seq.alpha_plus(), seq.alpha_minus()))
}

/// Output of the gauge transformation. The angle tables cover
/// [x_min - 1, x_max + 1] so the conjugated coin can be assembled on the
/// full window.
#[derive(Clone, Debug)]
pub struct GaugeResult {
    pub x_lo: i64,
    pub g: Vec<f64>,
    pub h: Vec<f64>,
    pub theta_prime: Vec<f64>,
    pub alpha_prime: CoinSequence,
}

impl GaugeResult {
    fn idx(&self, x: i64) -> usize {
        (x - self.x_lo) as usize
    }

    pub fn g_at(&self, x: i64) -> f64 {
        self.g[self.idx(x)]
    }

    pub fn h_at(&self, x: i64) -> f64 {
        self.h[self.idx(x)]
    }

    pub fn theta_prime_at(&self, x: i64) -> f64 {
        self.theta_prime[self.idx(x)]
    }
}

/// Diagonal gauge removing the theta and arg-beta phases:
/// g(x+1) = g(x) - theta(x) - b(x), h(x-1) = h(x) - theta(x) + b(x),
/// theta'(x) = -g(x) + b(x) + h(x), alpha'(x) = e^{i theta'(x)} alpha(x).
pub fn gauge_normalize(general: &GeneralCoin, g0: f64, h0: f64) -> Result<GaugeResult> {
    let (lo, hi) = general.window();
    let x_lo = lo - 1;
    let x_hi = hi + 1;
    let len = (x_hi - x_lo + 1) as usize;
    let idx = |x: i64| (x - x_lo) as usize;

    let mut g = vec![0.0; len];
    let mut h = vec![0.0; len];
    g[idx(0)] = g0;
    h[idx(0)] = h0;
    // forward from 0
    for x in 0..x_hi {
        let p = general.point(x);
        g[idx(x + 1)] = g[idx(x)] - p.theta - general.b(x)?;
    }
    for x in 0..x_hi {
        let p = general.point(x + 1);
        h[idx(x + 1)] = h[idx(x)] + p.theta - general.b(x + 1)?;
    }
    // backward from 0
    for x in (x_lo..0).rev() {
        let p = general.point(x);
        g[idx(x)] = g[idx(x + 1)] + p.theta + general.b(x)?;
        let q = general.point(x + 1);
        h[idx(x)] = h[idx(x + 1)] - q.theta + general.b(x + 1)?;
    }

    let mut theta_prime = vec![0.0; len];
    for x in x_lo..=x_hi {
        theta_prime[idx(x)] = -g[idx(x)] + general.b(x)? + h[idx(x)];
    }

    let phase = |x: i64| C64::from_polar(1.0, theta_prime[idx(x)]);
    let values: Vec<C64> = (lo..=hi)
        .map(|x| phase(x) * general.point(x).alpha)
        .collect();
    let alpha_prime = CoinSequence::new(
        lo,
        values,
        phase(x_hi) * general.point(x_hi).alpha,
        phase(x_lo) * general.point(x_lo).alpha,
    )?;

    Ok(GaugeResult {
        x_lo,
        g,
        h,
        theta_prime,
        alpha_prime,
    })
}

/// Max entrywise deviation between the gauge-conjugated coin and the
/// canonical coin C_{alpha'(x)}, over the window of `general`.
pub fn verify_gauge(general: &GeneralCoin, result: &GaugeResult) -> Result<f64> {
    let (lo, hi) = general.window();
    if result.x_lo != lo - 1 || result.alpha_prime.window() != (lo, hi) {
        return Err(Error::WindowMismatch(
            "gauge result does not cover the coin window".into(),
        ));
    }
    let mut worst: f64 = 0.0;
    for x in lo..=hi {
        let p = general.point(x);
        let b = general.b(x)?;
        let beta_abs = p.beta.norm();
        let e = |angle: f64| C64::from_polar(1.0, angle);
        // conjugated coin entries, assembled exactly as in the S C~ computation
        let conjugated = Mat2([
            [
                e(result.g_at(x + 1) + p.theta + b - result.g_at(x)) * beta_abs,
                e(result.g_at(x + 1) + p.theta - result.h_at(x)) * p.alpha.conj(),
            ],
            [
                -e(result.h_at(x - 1) + p.theta - result.g_at(x)) * p.alpha,
                e(result.h_at(x - 1) + p.theta - b - result.h_at(x)) * beta_abs,
            ],
        ]);
        let a_prime = result.alpha_prime.alpha(x);
        let canonical = Mat2([
            [C64::new(beta_abs, 0.0), a_prime.conj()],
            [-a_prime, C64::new(beta_abs, 0.0)],
        ]);
        worst = worst.max((conjugated - canonical).norm_max());
    }
    Ok(worst)
}

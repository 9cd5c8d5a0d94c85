//! Two-sheet dispersion maps: the branched complex Arccos, lambda/xi
//! conversions, the site-dependent modified frequency zeta, and the
//! transfer-matrix diagonalizer P.

use crate::coin::CoinSequence;
use crate::error::{Error, Result};
use crate::linalg::{C64, Mat2};
use std::f64::consts::PI;

const TAU: f64 = 2.0 * PI;

/// Sheet index of the two-sheet domain; fixes the sign (-1)^{j-1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    One,
    Two,
}

impl Sheet {
    pub fn sign(self) -> f64 {
        match self {
            Sheet::One => 1.0,
            Sheet::Two => -1.0,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Sheet::One => 1,
            Sheet::Two => 2,
        }
    }

    pub fn from_index(j: u8) -> Result<Sheet> {
        match j {
            1 => Ok(Sheet::One),
            2 => Ok(Sheet::Two),
            _ => Err(Error::RangeError(format!("sheet index {j} not in {{1,2}}"))),
        }
    }
}

fn wrap_angle(t: f64) -> f64 {
    let mut r = t.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

/// A point (sheet, xi) with Re xi reduced to (-pi, pi] and Im xi >= 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SheetPoint {
    pub sheet: Sheet,
    pub xi: C64,
}

impl SheetPoint {
    pub fn new(sheet: Sheet, xi: C64) -> Result<SheetPoint> {
        if xi.im < -1e-12 {
            return Err(Error::OutOfDomain {
                bound: 0.0,
                detail: format!("Im xi = {} < 0", xi.im),
            });
        }
        let im = xi.im.max(0.0);
        Ok(SheetPoint {
            sheet,
            xi: C64::new(wrap_angle(xi.re), im),
        })
    }

    pub fn real(sheet: Sheet, re: f64) -> Result<SheetPoint> {
        SheetPoint::new(sheet, C64::new(re, 0.0))
    }

    pub fn is_real(&self) -> bool {
        self.xi.im == 0.0
    }

    /// True when xi lies on the edge set {0, pi} of either sheet.
    pub fn is_edge(&self) -> bool {
        self.is_real() && self.on_edge_column(1e-12)
    }

    fn on_edge_column(&self, tol: f64) -> bool {
        self.xi.re.abs() <= tol || (self.xi.re.abs() - PI).abs() <= tol
    }

    /// Membership in the working domain: the open strip 0 < Im xi < 2 b0
    /// (with Im xi > b0 above the columns Re xi = 0, pi), together with the
    /// real axis minus the edge set.
    pub fn is_admissible(&self, b0: f64) -> bool {
        if self.is_real() {
            return !self.is_edge();
        }
        if self.xi.im >= 2.0 * b0 {
            return false;
        }
        if self.on_edge_column(1e-9) {
            return self.xi.im > b0;
        }
        true
    }

    pub fn abs_sin(&self) -> f64 {
        self.xi.sin().norm()
    }
}

/// Analytic extension of Arccos restricted to (-1, 1).
///
/// Maps the open upper half plane into {0 < Re < pi, Im < 0} and the lower
/// half plane into {0 < Re < pi, Im > 0}; real inputs with |z| > 1 lie on
/// the branch cut and are rejected.
pub fn arccos_branched(z: C64) -> Result<C64> {
    if z.im == 0.0 {
        if z.re == 1.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if z.re == -1.0 {
            return Ok(C64::new(PI, 0.0));
        }
        if z.re.abs() > 1.0 {
            return Err(Error::BranchCut(z.re));
        }
        return Ok(C64::new(z.re.acos(), 0.0));
    }
    Ok(z.acos())
}

/// Strip half-height: cosh(b_alpha) = 1 / rho.
pub fn b_alpha(alpha: C64) -> Result<f64> {
    let m = alpha.norm();
    if m <= 0.0 || m >= 1.0 {
        return Err(Error::AlphaOutOfRange {
            x: i64::MAX,
            modulus: m,
        });
    }
    let rho = (1.0 - m * m).sqrt();
    Ok((1.0 / rho).acosh())
}

/// Working strip bound b0 = b_{alpha_pm} / 8 for a coin sequence.
pub fn b0_of(seq: &CoinSequence) -> f64 {
    b_alpha(seq.alpha_plus()).expect("coin invariants guarantee 0 < |alpha_pm| < 1") / 8.0
}

/// lambda_alpha(xi) = (-1)^{j-1} Arccos(rho cos xi).
pub fn lambda_alpha(alpha: C64, p: &SheetPoint) -> Result<C64> {
    let bound = b_alpha(alpha)?;
    if p.xi.im >= bound {
        return Err(Error::StripViolation {
            im: p.xi.im,
            bound,
        });
    }
    let rho = (1.0 - alpha.norm_sqr()).sqrt();
    let arc = arccos_branched(rho * p.xi.cos())?;
    Ok(p.sheet.sign() * arc)
}

/// lambda_infty: the dispersion map of the asymptotic coin.
pub fn lambda_infty(seq: &CoinSequence, p: &SheetPoint) -> Result<C64> {
    lambda_alpha(seq.alpha_plus(), p)
}

/// Inverse of lambda_alpha on the given sheet: solves rho cos xi = cos lambda
/// with Im xi >= 0, then Newton-polishes the residual.
pub fn xi_alpha(alpha: C64, lambda: C64, sheet: Sheet) -> Result<SheetPoint> {
    let m = alpha.norm();
    if m <= 0.0 || m >= 1.0 {
        return Err(Error::AlphaOutOfRange {
            x: i64::MAX,
            modulus: m,
        });
    }
    let rho = (1.0 - m * m).sqrt();
    let w = sheet.sign() * lambda;
    let target = w.cos();
    let z = target / rho;

    let mut xi = if z.im == 0.0 && z.re >= 1.0 {
        // spectral gap: cos xi = cosh(Im xi) on the column Re xi = 0
        C64::new(0.0, z.re.acosh())
    } else if z.im == 0.0 && z.re <= -1.0 {
        C64::new(PI, (-z.re).acosh())
    } else {
        arccos_branched(z)?
    };
    if xi.im < 0.0 {
        xi = -xi;
    }

    // Newton polish on f(xi) = rho cos xi - cos w.
    for _ in 0..3 {
        let sin = xi.sin();
        if sin.norm() < 1e-14 {
            break;
        }
        let f = rho * xi.cos() - target;
        xi += f / (rho * sin);
    }
    let residual = (rho * xi.cos() - target).norm();
    if residual > 1e-12 * (1.0 + target.norm()) {
        return Err(Error::NonConvergence(format!(
            "xi_alpha residual {residual:.3e}"
        )));
    }
    let bound = b_alpha(alpha)?;
    if xi.im >= bound + 1e-12 {
        return Err(Error::OutOfDomain {
            bound,
            detail: format!("Im xi = {}", xi.im),
        });
    }
    SheetPoint::new(sheet, xi)
}

/// Cutoff radii for the modified frequency: zeta switches to
/// xi_{alpha(x)} at |x| >= r0, and |sin zeta| >= epsilon/2 holds for
/// |x| >= r_eps on admissible xi with |sin xi| >= epsilon.
#[derive(Clone, Copy, Debug)]
pub struct CutoffData {
    pub r0: i64,
    pub r_eps: i64,
    pub epsilon: f64,
}

impl CutoffData {
    /// Default selection: r0 from the |alpha(x) - alpha_pm| threshold at a
    /// quarter of the distance from |alpha_pm| to {0, 1}; r_eps from a
    /// xi-grid check of |sin zeta| >= epsilon / 2.
    pub fn choose(seq: &CoinSequence, epsilon: f64) -> Result<CutoffData> {
        let a = seq.alpha_plus().norm();
        let delta = 0.25 * a.min(1.0 - a);
        let r0 = choose_r0(seq, delta)?;
        let r_eps = choose_r_eps(seq, epsilon, r0)?;
        Ok(CutoffData { r0, r_eps, epsilon })
    }
}

/// Smallest r >= 1 with |alpha(x) - alpha_pm| < delta for every |x| >= r.
pub fn choose_r0(seq: &CoinSequence, delta: f64) -> Result<i64> {
    let (lo, hi) = seq.window();
    let extent = (-lo).min(hi);
    if extent < 1 {
        return Err(Error::WindowTooSmall(
            "window does not straddle the origin".into(),
        ));
    }
    let mut r0 = 1;
    for x in lo..=hi {
        if x == 0 {
            continue;
        }
        let limit = seq.alpha_limit(x > 0);
        if (seq.alpha(x) - limit).norm() >= delta {
            r0 = r0.max(x.abs() + 1);
        }
    }
    if r0 > extent {
        return Err(Error::WindowTooSmall(format!(
            "no r <= {extent} satisfies the alpha threshold {delta:.3e}"
        )));
    }
    Ok(r0)
}

fn test_grid(seq: &CoinSequence, epsilon: f64) -> Vec<SheetPoint> {
    let b0 = b0_of(seq);
    let mut grid = Vec::new();
    for sheet in [Sheet::One, Sheet::Two] {
        for k in 0..32 {
            let re = -PI + TAU * (k as f64 + 0.5) / 32.0;
            for im in [0.0, 0.5 * b0, 1.5 * b0] {
                if let Ok(p) = SheetPoint::new(sheet, C64::new(re, im)) {
                    if p.is_admissible(b0) && p.abs_sin() >= epsilon {
                        grid.push(p);
                    }
                }
            }
        }
    }
    grid
}

/// Smallest r >= r0 such that |sin zeta(x, xi)| >= epsilon / 2 for all
/// |x| >= r over a grid of admissible xi with |sin xi| >= epsilon.
pub fn choose_r_eps(seq: &CoinSequence, epsilon: f64, r0: i64) -> Result<i64> {
    let (lo, hi) = seq.window();
    let extent = (-lo).min(hi);
    let grid = test_grid(seq, epsilon);
    let cut = CutoffData {
        r0,
        r_eps: r0,
        epsilon,
    };
    let site_ok = |x: i64| -> bool {
        grid.iter().all(|p| match zeta(seq, &cut, x, p) {
            Ok(z) => z.sin().norm() >= epsilon / 2.0,
            Err(_) => false,
        })
    };
    let mut r_eps = r0;
    for x in lo..=hi {
        if x.abs() >= r0 && !site_ok(x) {
            r_eps = r_eps.max(x.abs() + 1);
        }
    }
    if r_eps > extent {
        return Err(Error::WindowTooSmall(format!(
            "no r <= {extent} keeps |sin zeta| >= {:.3e}",
            epsilon / 2.0
        )));
    }
    Ok(r_eps)
}

fn torus_dist(a: C64, b: C64) -> f64 {
    wrap_angle(a.re - b.re).hypot(a.im - b.im)
}

/// Modified frequency: xi_{alpha(x)}(lambda_infty(xi)) for |x| >= r0 and xi
/// itself for |x| < r0. Im zeta >= 0 always.
pub fn zeta(seq: &CoinSequence, cut: &CutoffData, x: i64, p: &SheetPoint) -> Result<C64> {
    if x.abs() < cut.r0 {
        return Ok(p.xi);
    }
    let (lo, hi) = seq.window();
    if x < lo || x > hi {
        // constant tail: xi_{alpha_pm} inverts lambda_infty exactly, since
        // both depend on |alpha_pm| only
        return Ok(p.xi);
    }
    let lambda = lambda_infty(seq, p)?;
    let c = xi_alpha(seq.alpha(x), lambda, p.sheet)?.xi;
    // xi_alpha returns the Im >= 0 representative with Re in [0, pi]; the
    // true branch is the candidate (+-c mod 2pi) continuous with xi.
    let cand = if torus_dist(c, p.xi) <= torus_dist(-c, p.xi) {
        c
    } else {
        -c
    };
    if cand.im < -1e-12 {
        return Err(Error::OutOfDomain {
            bound: 0.0,
            detail: format!("Im zeta = {} < 0 at x = {x}", cand.im),
        });
    }
    Ok(C64::new(wrap_angle(cand.re), cand.im.max(0.0)))
}

/// Transfer matrix at the spectral parameter lambda_infty(xi).
pub fn t_matrix(seq: &CoinSequence, x: i64, p: &SheetPoint) -> Result<Mat2> {
    let lambda = lambda_infty(seq, p)?;
    Ok(crate::transfer::transfer_matrix(seq, x, lambda))
}

/// Eigenvector matrix of T(x, xi):
/// P = [[alpha, alpha], [rho e^{i zeta} - e^{i lambda}, rho e^{-i zeta} - e^{i lambda}]].
pub fn p_matrix(seq: &CoinSequence, cut: &CutoffData, x: i64, p: &SheetPoint) -> Result<Mat2> {
    let z = zeta(seq, cut, x, p)?;
    p_matrix_with_zeta(seq, x, p, z)
}

pub(crate) fn p_matrix_with_zeta(
    seq: &CoinSequence,
    x: i64,
    p: &SheetPoint,
    z: C64,
) -> Result<Mat2> {
    let lambda = lambda_infty(seq, p)?;
    let a = seq.alpha(x);
    let rho = seq.rho(x);
    let e_l = (C64::i() * lambda).exp();
    let col = |s: f64| rho * (C64::i() * s * z).exp() - e_l;
    let mat = Mat2([[a, a], [col(1.0), col(-1.0)]]);
    let det_abs = mat.det().norm();
    if det_abs < 1e-10 * a.norm() * rho {
        return Err(Error::Degenerate { x, det_abs });
    }
    Ok(mat)
}

/// Closed form of det P: -2 i alpha rho sin zeta.
pub fn p_det_closed_form(seq: &CoinSequence, cut: &CutoffData, x: i64, p: &SheetPoint) -> Result<C64> {
    let z = zeta(seq, cut, x, p)?;
    let a = seq.alpha(x);
    let rho = seq.rho(x);
    Ok(C64::new(0.0, -2.0) * a * rho * z.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn arccos_real_values() {
        assert!((arccos_branched(c(0.0, 0.0)).unwrap() - c(PI / 2.0, 0.0)).norm() < 1e-15);
        assert_eq!(arccos_branched(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(arccos_branched(c(-1.0, 0.0)).unwrap(), c(PI, 0.0));
        assert!(matches!(
            arccos_branched(c(1.5, 0.0)),
            Err(Error::BranchCut(_))
        ));
    }

    #[test]
    fn arccos_halfplane_mapping_and_roundtrip() {
        let z = c(0.3, 0.4);
        let w = arccos_branched(z).unwrap();
        assert!(w.re > 0.0 && w.re < PI);
        assert!(w.im < 0.0);
        assert!((w.cos() - z).norm() < 1e-14);
        let z2 = c(0.3, -0.4);
        let w2 = arccos_branched(z2).unwrap();
        assert!(w2.im > 0.0);
        assert!((w2.cos() - z2).norm() < 1e-14);
    }

    #[test]
    fn b_alpha_value() {
        let b = b_alpha(c(FRAC_1_SQRT_2, 0.0)).unwrap();
        assert!((b - 2f64.sqrt().acosh()).abs() < 1e-15);
        assert!((b - 0.881374).abs() < 1e-6);
        // depends on |alpha| only
        let b2 = b_alpha(C64::from_polar(FRAC_1_SQRT_2, 1.1)).unwrap();
        assert!((b - b2).abs() < 1e-15);
    }

    #[test]
    fn lambda_alpha_at_pi_over_2() {
        let alpha = c(FRAC_1_SQRT_2, 0.0);
        let p1 = SheetPoint::real(Sheet::One, PI / 2.0).unwrap();
        let l1 = lambda_alpha(alpha, &p1).unwrap();
        assert!((l1 - c(PI / 2.0, 0.0)).norm() < 1e-15);
        let p2 = SheetPoint::real(Sheet::Two, PI / 2.0).unwrap();
        let l2 = lambda_alpha(alpha, &p2).unwrap();
        assert!((l2 + c(PI / 2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dispersion_residual_complex() {
        let alpha = c(0.6, 0.0);
        let p = SheetPoint::new(Sheet::One, c(1.0, 0.1)).unwrap();
        let l = lambda_alpha(alpha, &p).unwrap();
        let residual = (0.8 * p.xi.cos() - l.cos()).norm();
        assert!(residual < 1e-14, "residual {residual:.3e}");
    }

    #[test]
    fn strip_violation() {
        let alpha = c(0.6, 0.0);
        let b = b_alpha(alpha).unwrap();
        let p = SheetPoint::new(Sheet::One, c(1.0, b + 0.01)).unwrap();
        assert!(matches!(
            lambda_alpha(alpha, &p),
            Err(Error::StripViolation { .. })
        ));
    }

    #[test]
    fn xi_alpha_cos_zero() {
        let p = xi_alpha(c(0.6, 0.0), c(PI / 2.0, 0.0), Sheet::One).unwrap();
        assert!((p.xi - c(PI / 2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn xi_alpha_in_gap_solves_cosh() {
        // lambda = 0.1 real, |cos lambda| > rho = 0.8: xi = i tau with
        // cosh tau = cos(0.1) / 0.8
        let p = xi_alpha(c(0.6, 0.0), c(0.1, 0.0), Sheet::One).unwrap();
        let tau = ((0.1f64).cos() / 0.8).acosh();
        assert!((p.xi - c(0.0, tau)).norm() < 1e-13);
    }

    #[test]
    fn xi_lambda_roundtrip_grid() {
        let alpha = c(0.6, 0.2);
        let b = b_alpha(alpha).unwrap();
        for sheet in [Sheet::One, Sheet::Two] {
            for k in 1..20 {
                for im in [0.0, 0.2 * b, 0.6 * b] {
                    let re = PI * k as f64 / 20.0;
                    let p = SheetPoint::new(sheet, c(re, im)).unwrap();
                    let l = lambda_alpha(alpha, &p).unwrap();
                    let q = xi_alpha(alpha, l, sheet).unwrap();
                    assert!(
                        (q.xi - p.xi).norm() < 1e-12,
                        "sheet {sheet:?} re {re} im {im}: {} vs {}",
                        q.xi,
                        p.xi
                    );
                    let l2 = lambda_alpha(alpha, &q).unwrap();
                    assert!((l2 - l).norm() < 1e-12);
                }
            }
        }
    }

    fn decaying_coin() -> CoinSequence {
        let a_inf = c(0.5, 0.0);
        CoinSequence::from_rule(-100, 100, a_inf, a_inf, |x| {
            c(0.5 + 0.2 / (1.0 + x.abs() as f64), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn choose_r0_matches_threshold() {
        let seq = decaying_coin();
        // 0.2 / (1 + |x|) < 0.05 first holds for |x| >= 4
        assert_eq!(choose_r0(&seq, 0.05).unwrap(), 4);
    }

    #[test]
    fn choose_r0_constant_coin() {
        let seq = CoinSequence::constant(c(FRAC_1_SQRT_2, 0.0), -10, 10).unwrap();
        assert_eq!(choose_r0(&seq, 1e-6).unwrap(), 1);
    }

    #[test]
    fn choose_r0_window_too_small() {
        let a_inf = c(0.5, 0.0);
        let seq = CoinSequence::from_rule(-10, 10, a_inf, a_inf, |x| {
            c(0.5 + 0.3 / (1.0 + 0.01 * x.abs() as f64), 0.0)
        })
        .unwrap();
        assert!(matches!(
            choose_r0(&seq, 0.05),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn zeta_constant_coin_is_identity() {
        let seq = CoinSequence::constant(c(FRAC_1_SQRT_2, 0.0), -20, 20).unwrap();
        let cut = CutoffData::choose(&seq, 0.1).unwrap();
        for re in [-2.0, -0.7, 0.9, 2.5] {
            let p = SheetPoint::new(Sheet::One, c(re, 0.03)).unwrap();
            for x in [-15, -3, 0, 7, 18, 40] {
                let z = zeta(&seq, &cut, x, &p).unwrap();
                assert!((z - p.xi).norm() < 1e-13, "x {x} re {re}");
            }
        }
    }

    #[test]
    fn zeta_inside_r0_is_xi() {
        let seq = decaying_coin();
        let cut = CutoffData { r0: 5, r_eps: 5, epsilon: 0.1 };
        let p = SheetPoint::new(Sheet::Two, c(1.3, 0.02)).unwrap();
        assert_eq!(zeta(&seq, &cut, 2, &p).unwrap(), p.xi);
        assert_eq!(zeta(&seq, &cut, -4, &p).unwrap(), p.xi);
    }

    #[test]
    fn zeta_eigenvalue_residual() {
        // e^{+-i zeta} are the eigenvalues of T(x, xi) for |x| >= r0
        let seq = decaying_coin();
        let cut = CutoffData::choose(&seq, 0.1).unwrap();
        let p = SheetPoint::new(Sheet::One, c(1.9, 0.05)).unwrap();
        for x in [cut.r0, 17, -64, 100] {
            if x.abs() < cut.r0 {
                continue;
            }
            let z = zeta(&seq, &cut, x, &p).unwrap();
            let t = t_matrix(&seq, x, &p).unwrap();
            for s in [1.0, -1.0] {
                let mu = (C64::i() * s * z).exp();
                // characteristic polynomial residual: mu^2 - tr mu + 1
                let r = (mu * mu - t.trace() * mu + C64::new(1.0, 0.0)).norm();
                assert!(r < 1e-12, "x {x} s {s}: {r:.3e}");
            }
        }
    }

    #[test]
    fn zeta_conjugation_symmetry() {
        let seq = decaying_coin();
        let cut = CutoffData::choose(&seq, 0.1).unwrap();
        for sheet in [Sheet::One, Sheet::Two] {
            for re in [-2.6, -1.2, 0.8, 2.1] {
                let p = SheetPoint::new(sheet, c(re, 0.04)).unwrap();
                let q = SheetPoint::new(sheet, c(-re, 0.04)).unwrap();
                for x in [8, 31, -50] {
                    let z1 = zeta(&seq, &cut, x, &p).unwrap();
                    let z2 = zeta(&seq, &cut, x, &q).unwrap();
                    assert!((z2 + z1.conj()).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn p_matrix_det_and_diagonalization() {
        let seq = decaying_coin();
        let cut = CutoffData::choose(&seq, 0.1).unwrap();
        let p = SheetPoint::new(Sheet::One, c(1.1, 0.03)).unwrap();
        for x in [cut.r_eps, 25, -90] {
            let mat = p_matrix(&seq, &cut, x, &p).unwrap();
            let closed = p_det_closed_form(&seq, &cut, x, &p).unwrap();
            assert!((mat.det() - closed).norm() < 1e-13);
            let z = zeta(&seq, &cut, x, &p).unwrap();
            let t = t_matrix(&seq, x, &p).unwrap();
            let d = mat.inverse() * t * mat;
            let expect = Mat2::diag((C64::i() * z).exp(), (-C64::i() * z).exp());
            assert!((d - expect).norm_max() < 1e-12);
        }
    }

    #[test]
    fn p_matrix_degenerate_near_edge() {
        let seq = CoinSequence::constant(c(FRAC_1_SQRT_2, 0.0), -20, 20).unwrap();
        let cut = CutoffData { r0: 1, r_eps: 1, epsilon: 1e-9 };
        let p = SheetPoint::real(Sheet::One, 1e-9).unwrap();
        assert!(matches!(
            p_matrix(&seq, &cut, 5, &p),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn admissibility_predicates() {
        let b0 = 0.1;
        let edge = SheetPoint::real(Sheet::One, 0.0).unwrap();
        assert!(edge.is_edge() && !edge.is_admissible(b0));
        let real = SheetPoint::real(Sheet::Two, 1.0).unwrap();
        assert!(real.is_admissible(b0));
        let low_col = SheetPoint::new(Sheet::One, c(0.0, 0.05)).unwrap();
        assert!(!low_col.is_admissible(b0));
        let high_col = SheetPoint::new(Sheet::One, c(0.0, 0.15)).unwrap();
        assert!(high_col.is_admissible(b0));
        let too_high = SheetPoint::new(Sheet::One, c(1.0, 0.3)).unwrap();
        assert!(!too_high.is_admissible(b0));
    }
}

//! Brute-force finite-lattice ground truth: a dense periodic-ring model of
//! U = SC, direct resolvent solves, full diagonalization, and the
//! embedded-eigenvalue probe.

mod lapack;

use crate::coin::CoinSequence;
use crate::error::{Error, Result};
use crate::linalg::{C64, Vec2};
use crate::transfer::{essential_band, EssentialBand, StateVector};

pub const NEAR_SINGULAR_TOL: f64 = 1e-10;
pub const DENSE_BUDGET: usize = 2048;

/// Dense U = SC on a periodic ring of N sites (2N x 2N, column-major).
///
/// Ring site k in [0, N) carries lattice coordinate x = k - N/2; state index
/// 2k is the right-mover, 2k + 1 the left-mover.
#[derive(Clone)]
pub struct FiniteWalk {
    n_sites: usize,
    u: Vec<C64>,
    rho_inf: f64,
}

fn col_major_idx(dim: usize, row: usize, col: usize) -> usize {
    col * dim + row
}

impl FiniteWalk {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        2 * self.n_sites
    }

    pub fn site_to_x(&self, k: usize) -> i64 {
        k as i64 - (self.n_sites / 2) as i64
    }

    pub fn x_to_site(&self, x: i64) -> usize {
        (x + (self.n_sites / 2) as i64).rem_euclid(self.n_sites as i64) as usize
    }

    pub fn matrix(&self) -> &[C64] {
        &self.u
    }

    /// Dense matrix-vector product U v.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let dim = self.dim();
        assert_eq!(v.len(), dim);
        let mut out = vec![C64::new(0.0, 0.0); dim];
        for col in 0..dim {
            let vc = v[col];
            if vc.norm_sqr() == 0.0 {
                continue;
            }
            let base = col * dim;
            for row in 0..dim {
                out[row] += self.u[base + row] * vc;
            }
        }
        out
    }

    /// Packs a StateVector on the ring coordinates into a dense vector.
    pub fn pack(&self, s: &StateVector) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); self.dim()];
        for (x, val) in s.iter() {
            let k = self.x_to_site(x);
            v[2 * k] += val.0;
            v[2 * k + 1] += val.1;
        }
        v
    }

    pub fn unpack(&self, v: &[C64]) -> StateVector {
        let n = self.n_sites;
        let data = (0..n).map(|k| Vec2(v[2 * k], v[2 * k + 1])).collect();
        StateVector::new(-((n / 2) as i64), data).expect("nonempty")
    }

    pub fn band(&self) -> EssentialBand {
        essential_band(self.rho_inf).expect("rho_inf validated at build")
    }
}

/// Builds the dense ring walk; the coin wraps the window (tail values fill
/// the rest of the ring).
pub fn build_finite(seq: &CoinSequence, n: usize) -> Result<FiniteWalk> {
    if n < 8 || n % 2 != 0 {
        return Err(Error::SizeError(n));
    }
    let dim = 2 * n;
    let mut u = vec![C64::new(0.0, 0.0); dim * dim];
    let half = (n / 2) as i64;
    for k in 0..n {
        let x = k as i64 - half;
        let c = seq.coin_matrix(x);
        // (S C u)_R(k + 1) takes the R row of C at site k,
        // (S C u)_L(k - 1) takes the L row
        let up = (k + 1) % n;
        let down = (k + n - 1) % n;
        u[col_major_idx(dim, 2 * up, 2 * k)] = c[(0, 0)];
        u[col_major_idx(dim, 2 * up, 2 * k + 1)] = c[(0, 1)];
        u[col_major_idx(dim, 2 * down + 1, 2 * k)] = c[(1, 0)];
        u[col_major_idx(dim, 2 * down + 1, 2 * k + 1)] = c[(1, 1)];
    }
    Ok(FiniteWalk {
        n_sites: n,
        u,
        rho_inf: seq.rho_inf(),
    })
}

/// A cached LU factorization of (U - e^{i lambda}), with the smallest
/// singular value checked up front.
pub struct FiniteResolvent {
    dim: usize,
    lu: Vec<C64>,
    ipiv: Vec<i32>,
    pub lambda: C64,
    pub sigma_min: f64,
}

impl FiniteWalk {
    pub fn resolvent(&self, lambda: C64) -> Result<FiniteResolvent> {
        let dim = self.dim();
        let phase = (C64::i() * lambda).exp();
        let mut a = self.u.clone();
        for k in 0..dim {
            a[col_major_idx(dim, k, k)] -= phase;
        }
        let s = lapack::singular_values(a.clone(), dim)?;
        let sigma_min = s.last().copied().unwrap_or(0.0);
        if sigma_min < NEAR_SINGULAR_TOL {
            return Err(Error::NearSingular { sigma_min });
        }
        let ipiv = lapack::lu_factor(&mut a, dim)?;
        Ok(FiniteResolvent {
            dim,
            lu: a,
            ipiv,
            lambda,
            sigma_min,
        })
    }
}

impl FiniteResolvent {
    pub fn solve(&self, rhs: &[C64]) -> Result<Vec<C64>> {
        assert_eq!(rhs.len(), self.dim);
        let mut b = rhs.to_vec();
        lapack::lu_solve(&self.lu, &self.ipiv, &mut b, self.dim)?;
        Ok(b)
    }

    /// Column of (U - e^{i lambda})^{-1} for a delta at ring site y_site.
    pub fn solve_delta(&self, y_site: usize, component: usize) -> Result<Vec<C64>> {
        let mut b = vec![C64::new(0.0, 0.0); self.dim];
        b[2 * y_site + component] = C64::new(1.0, 0.0);
        self.solve(&b)
    }
}

/// Direct dense solve of (U - e^{i lambda}) v = delta_{(y, component)}.
pub fn direct_resolvent(
    fw: &FiniteWalk,
    lambda: C64,
    y: i64,
    component: usize,
) -> Result<Vec<C64>> {
    fw.resolvent(lambda)?.solve_delta(fw.x_to_site(y), component)
}

/// Full spectrum sorted by eigenvalue angle in [0, 2 pi).
pub struct Spectrum {
    pub dim: usize,
    /// unimodular eigenvalues, sorted by arc position
    pub eigenvalues: Vec<C64>,
    /// angles in [0, 2 pi), same order
    pub angles: Vec<f64>,
    vectors: Vec<C64>,
    /// max | |eigenvalue| - 1 |
    pub unimodularity_defect: f64,
}

impl Spectrum {
    pub fn eigenvector(&self, i: usize) -> &[C64] {
        &self.vectors[i * self.dim..(i + 1) * self.dim]
    }
}

pub fn spectrum_finite(fw: &FiniteWalk) -> Result<Spectrum> {
    let dim = fw.dim();
    if fw.n_sites() > DENSE_BUDGET {
        return Err(Error::SizeError(fw.n_sites()));
    }
    let (w, vr) = lapack::eig(fw.u.clone(), dim)?;
    let mut order: Vec<usize> = (0..dim).collect();
    let angle = |z: C64| z.arg().rem_euclid(2.0 * std::f64::consts::PI);
    order.sort_by(|&i, &j| angle(w[i]).partial_cmp(&angle(w[j])).unwrap());
    let mut eigenvalues = Vec::with_capacity(dim);
    let mut angles = Vec::with_capacity(dim);
    let mut vectors = vec![C64::new(0.0, 0.0); dim * dim];
    let mut defect: f64 = 0.0;
    for (slot, &i) in order.iter().enumerate() {
        eigenvalues.push(w[i]);
        angles.push(angle(w[i]));
        defect = defect.max((w[i].norm() - 1.0).abs());
        vectors[slot * dim..(slot + 1) * dim].copy_from_slice(&vr[i * dim..(i + 1) * dim]);
    }
    Ok(Spectrum {
        dim,
        eigenvalues,
        angles,
        vectors,
        unimodularity_defect: defect,
    })
}

/// Per-site weights ||v(k)||^2 of a packed eigenvector.
fn site_weights(v: &[C64]) -> Vec<f64> {
    v.chunks_exact(2)
        .map(|c| c[0].norm_sqr() + c[1].norm_sqr())
        .collect()
}

/// Participation ratio (sum s)^2 / sum s^2 of the site weights; N for a
/// perfectly flat state, O(1) for a localized one.
pub fn participation_ratio(v: &[C64]) -> f64 {
    let s = site_weights(v);
    let total: f64 = s.iter().sum();
    let quart: f64 = s.iter().map(|w| w * w).sum();
    total * total / quart
}

/// Smallest radius around the heaviest site containing half the mass
/// (ring distance).
pub fn half_mass_radius(v: &[C64]) -> usize {
    let s = site_weights(v);
    let n = s.len();
    let total: f64 = s.iter().sum();
    let center = s
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut acc = s[center];
    let mut r = 0;
    while acc < 0.5 * total && r < n / 2 {
        r += 1;
        acc += s[(center + r) % n];
        if 2 * r < n {
            acc += s[(center + n - r) % n];
        }
    }
    r
}

#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub n: usize,
    pub in_band_count: usize,
    pub min_pr: f64,
    pub mean_pr: f64,
    pub max_half_mass: usize,
    pub outside_band_fraction: f64,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub delta_band: f64,
    pub rows: Vec<ProbeRow>,
}

/// Diagonalizes the walk at each ring size and summarizes the localization
/// statistics of eigenvectors whose angle lies in the band interior,
/// at angular distance >= delta_band from the band edges.
pub fn embedded_probe(seq: &CoinSequence, n_list: &[usize], delta_band: f64) -> Result<ProbeReport> {
    if delta_band <= 0.0 {
        return Err(Error::RangeError(format!("delta_band = {delta_band}")));
    }
    let band = essential_band(seq.rho_inf())?;
    let mut rows = Vec::new();
    for &n in n_list {
        let fw = build_finite(seq, n)?;
        let spec = spectrum_finite(&fw)?;
        let mut min_pr = f64::INFINITY;
        let mut sum_pr = 0.0;
        let mut count = 0usize;
        let mut max_hm = 0usize;
        let mut outside = 0usize;
        for i in 0..spec.dim {
            let lam = spec.angles[i];
            if !band.contains(lam) {
                outside += 1;
                continue;
            }
            let edge_dist = band
                .arcs
                .iter()
                .flat_map(|(a, b)| [a, b])
                .map(|e| (lam - e).abs())
                .fold(f64::INFINITY, f64::min);
            if edge_dist < delta_band {
                continue;
            }
            let v = spec.eigenvector(i);
            let pr = participation_ratio(v);
            min_pr = min_pr.min(pr);
            sum_pr += pr;
            count += 1;
            max_hm = max_hm.max(half_mass_radius(v));
        }
        rows.push(ProbeRow {
            n,
            in_band_count: count,
            min_pr,
            mean_pr: if count > 0 { sum_pr / count as f64 } else { f64::NAN },
            max_half_mass: max_hm,
            outside_band_fraction: outside as f64 / spec.dim as f64,
        });
    }
    Ok(ProbeReport {
        delta_band,
        rows,
    })
}

//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coin window is empty")]
    EmptyWindow,
    #[error("|alpha| = {modulus} at x = {x} is outside (0, 1)")]
    AlphaOutOfRange { x: i64, modulus: f64 },
    #[error("beta(x) = 0 at x = {x}; arg beta is undefined")]
    BetaZero { x: i64 },
    #[error("coin point at x = {x} is not unitary (defect {defect:.3e})")]
    NotUnitary { x: i64, defect: f64 },
    #[error("||alpha_+| - |alpha_-|| = {mismatch:.3e} exceeds tolerance")]
    ModulusMismatch { mismatch: f64 },
    #[error("windows do not match: {0}")]
    WindowMismatch(String),
    #[error("real input {0} with |z| > 1 lies on the Arccos branch cut")]
    BranchCut(f64),
    #[error("Im xi = {im} is outside the strip [0, {bound})")]
    StripViolation { im: f64, bound: f64 },
    #[error("no preimage with Im xi in [0, {bound}): {detail}")]
    OutOfDomain { bound: f64, detail: String },
    #[error("iteration failed to converge: {0}")]
    NonConvergence(String),
    #[error("diagonalizer is degenerate: |det P| = {det_abs:.3e} at x = {x}")]
    Degenerate { x: i64, det_abs: f64 },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("solution norm exceeded overflow guard at x = {x}")]
    GrowthOverflow { x: i64 },
    #[error("state support touches the truncated window boundary")]
    BoundaryLeak,
    #[error("Wronskian is numerically zero (|W| = {w_abs:.3e})")]
    ZeroWronskian { w_abs: f64 },
    #[error("ring size {0} must be even and at least 8")]
    SizeError(usize),
    #[error("({u} - e^(i lambda)) is near-singular (smallest singular value {sigma_min:.3e})", u = "U_N")]
    NearSingular { sigma_min: f64 },
    #[error("dense diagonalization failed (LAPACK info = {info})")]
    DiagonalizationFailure { info: i32 },
    #[error("parameter out of range: {0}")]
    RangeError(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

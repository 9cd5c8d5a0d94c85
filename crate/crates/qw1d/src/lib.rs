//! Spectral toolkit for one-dimensional quantum walks with long-range coins.

pub mod coin;
pub mod coinfile;
pub mod dispersion;
pub mod error;
pub mod jost;
pub mod linalg;
pub mod oracle;
pub mod resolvent;
pub mod transfer;

pub use coin::{CoinSequence, GaugeResult, GeneralCoin, GeneralCoinPoint};
pub use coinfile::{CoinFile, LoadedCoin};
pub use dispersion::{CutoffData, Sheet, SheetPoint};
pub use error::{Error, Result};
pub use jost::{Direction, JostPair, JostSolution};
pub use linalg::{C64, Mat2, Vec2};
pub use oracle::{FiniteResolvent, FiniteWalk, ProbeReport, Spectrum};
pub use resolvent::{LapReport, ResolventKernel, WeightedNormSpec};
pub use transfer::StateVector;

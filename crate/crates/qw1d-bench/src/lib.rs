//! Shared fixtures for the pipeline benchmarks.

use qw1d::{C64, CoinSequence, CutoffData};

pub fn long_range_coin() -> (CoinSequence, CutoffData) {
    let seq = CoinSequence::from_rule(
        -200,
        200,
        C64::new(0.5, 0.0),
        C64::new(0.5, 0.0),
        |x| C64::new(0.5 + 0.2 / (1.0 + x.abs() as f64), 0.0),
    )
    .unwrap();
    let cut = CutoffData::choose(&seq, 0.1).unwrap();
    (seq, cut)
}

//! TOML coin files: window, tail limits, and either tabulated values or a
//! named closed-form rule. Optional theta / beta-phase blocks turn the file
//! into a general coin that must go through gauge normalization first.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coin::{CoinSequence, GeneralCoin, GeneralCoinPoint};
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Complex-valued site rule for alpha.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum ComplexRule {
    /// alpha(x) = value
    Constant { value: [f64; 2] },
    /// alpha(x) = base + amplitude / (1 + |x|)
    InverseDecay { base: [f64; 2], amplitude: [f64; 2] },
    /// alpha(x) = base + amplitude for |x| <= radius, base otherwise
    Step {
        base: [f64; 2],
        amplitude: [f64; 2],
        radius: i64,
    },
    /// alpha tabulated over the window, one [re, im] pair per site
    Values { values: Vec<[f64; 2]> },
}

/// Real-valued site rule for theta and the beta phase.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum RealRule {
    Constant { value: f64 },
    InverseDecay { base: f64, amplitude: f64 },
    Step { base: f64, amplitude: f64, radius: i64 },
    Values { values: Vec<f64> },
}

fn to_c(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

impl ComplexRule {
    fn eval(&self, x: i64, window: (i64, i64)) -> Result<C64> {
        Ok(match self {
            ComplexRule::Constant { value } => to_c(*value),
            ComplexRule::InverseDecay { base, amplitude } => {
                to_c(*base) + to_c(*amplitude) / C64::new(1.0 + x.abs() as f64, 0.0)
            }
            ComplexRule::Step {
                base,
                amplitude,
                radius,
            } => {
                if x.abs() <= *radius {
                    to_c(*base) + to_c(*amplitude)
                } else {
                    to_c(*base)
                }
            }
            ComplexRule::Values { values } => {
                let n = (window.1 - window.0 + 1) as usize;
                if values.len() != n {
                    return Err(Error::Parse(format!(
                        "values rule has {} entries, window needs {n}",
                        values.len()
                    )));
                }
                to_c(values[(x - window.0) as usize])
            }
        })
    }
}

impl RealRule {
    fn eval(&self, x: i64, window: (i64, i64)) -> Result<f64> {
        Ok(match self {
            RealRule::Constant { value } => *value,
            RealRule::InverseDecay { base, amplitude } => {
                base + amplitude / (1.0 + x.abs() as f64)
            }
            RealRule::Step {
                base,
                amplitude,
                radius,
            } => {
                if x.abs() <= *radius {
                    base + amplitude
                } else {
                    *base
                }
            }
            RealRule::Values { values } => {
                let n = (window.1 - window.0 + 1) as usize;
                if values.len() != n {
                    return Err(Error::Parse(format!(
                        "values rule has {} entries, window needs {n}",
                        values.len()
                    )));
                }
                values[(x - window.0) as usize]
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoinFile {
    pub window: [i64; 2],
    pub alpha_plus: [f64; 2],
    pub alpha_minus: [f64; 2],
    pub alpha: ComplexRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<RealRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_phase: Option<RealRule>,
}

/// What a coin file describes: a canonical sequence, or a general coin that
/// still carries phases.
pub enum LoadedCoin {
    Canonical(CoinSequence),
    General(GeneralCoin),
}

impl CoinFile {
    pub fn parse(text: &str) -> Result<CoinFile> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<CoinFile> {
        CoinFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn is_general(&self) -> bool {
        self.theta.is_some() || self.beta_phase.is_some()
    }

    pub fn window(&self) -> (i64, i64) {
        (self.window[0], self.window[1])
    }

    fn alpha_values(&self) -> Result<Vec<C64>> {
        let w = self.window();
        if w.1 < w.0 {
            return Err(Error::EmptyWindow);
        }
        (w.0..=w.1).map(|x| self.alpha.eval(x, w)).collect()
    }

    pub fn to_sequence(&self) -> Result<CoinSequence> {
        if self.is_general() {
            return Err(Error::Parse(
                "coin file carries theta/beta-phase data; gauge-normalize it first".into(),
            ));
        }
        CoinSequence::new(
            self.window[0],
            self.alpha_values()?,
            to_c(self.alpha_plus),
            to_c(self.alpha_minus),
        )
    }

    pub fn to_general(&self) -> Result<GeneralCoin> {
        let w = self.window();
        let alphas = self.alpha_values()?;
        let point = |x: i64, alpha: C64| -> Result<GeneralCoinPoint> {
            let rho_sq = 1.0 - alpha.norm_sqr();
            if rho_sq <= 0.0 {
                return Err(Error::AlphaOutOfRange {
                    x,
                    modulus: alpha.norm(),
                });
            }
            let phase = match &self.beta_phase {
                Some(rule) => rule.eval(x, w)?,
                None => 0.0,
            };
            let theta = match &self.theta {
                Some(rule) => rule.eval(x, w)?,
                None => 0.0,
            };
            Ok(GeneralCoinPoint {
                alpha,
                beta: C64::from_polar(rho_sq.sqrt(), phase),
                theta,
            })
        };
        let points = (w.0..=w.1)
            .zip(alphas)
            .map(|(x, a)| point(x, a))
            .collect::<Result<Vec<_>>>()?;
        let tail = |a: [f64; 2], x: i64| -> Result<GeneralCoinPoint> {
            let alpha = to_c(a);
            let rho_sq = 1.0 - alpha.norm_sqr();
            if rho_sq <= 0.0 {
                return Err(Error::AlphaOutOfRange {
                    x,
                    modulus: alpha.norm(),
                });
            }
            Ok(GeneralCoinPoint {
                alpha,
                beta: C64::new(rho_sq.sqrt(), 0.0),
                theta: 0.0,
            })
        };
        GeneralCoin::new(
            w.0,
            points,
            tail(self.alpha_plus, w.1 + 1)?,
            tail(self.alpha_minus, w.0 - 1)?,
        )
    }

    pub fn to_coin(&self) -> Result<LoadedCoin> {
        if self.is_general() {
            Ok(LoadedCoin::General(self.to_general()?))
        } else {
            Ok(LoadedCoin::Canonical(self.to_sequence()?))
        }
    }

    /// Tabulates a canonical sequence back into file form (values rule).
    pub fn from_sequence(seq: &CoinSequence) -> CoinFile {
        let (lo, hi) = seq.window();
        let values = (lo..=hi)
            .map(|x| {
                let a = seq.alpha(x);
                [a.re, a.im]
            })
            .collect();
        CoinFile {
            window: [lo, hi],
            alpha_plus: [seq.alpha_plus().re, seq.alpha_plus().im],
            alpha_minus: [seq.alpha_minus().re, seq.alpha_minus().im],
            alpha: ComplexRule::Values { values },
            theta: None,
            beta_phase: None,
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_toml()?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C3_FILE: &str = r#"
window = [-200, 200]
alpha_plus = [0.5, 0.0]
alpha_minus = [0.5, 0.0]

[alpha]
rule = "inverse-decay"
base = [0.5, 0.0]
amplitude = [0.2, 0.0]
"#;

    #[test]
    fn parses_inverse_decay() {
        let f = CoinFile::parse(C3_FILE).unwrap();
        assert!(!f.is_general());
        let seq = f.to_sequence().unwrap();
        assert_eq!(seq.window(), (-200, 200));
        assert!((seq.alpha(0).re - 0.7).abs() < 1e-15);
        assert!((seq.alpha(4).re - (0.5 + 0.2 / 5.0)).abs() < 1e-15);
        assert!((seq.alpha(300).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn general_file_refuses_sequence_and_builds_general() {
        let text = format!(
            "{C3_FILE}\n[theta]\nrule = \"inverse-decay\"\nbase = 0.0\namplitude = 0.3\n"
        );
        let f = CoinFile::parse(&text).unwrap();
        assert!(f.is_general());
        assert!(matches!(f.to_sequence(), Err(Error::Parse(_))));
        let g = f.to_general().unwrap();
        assert!((g.point(0).theta - 0.3).abs() < 1e-15);
        assert!((g.point(250).theta - 0.0).abs() < 1e-15);
        let rho = (1.0f64 - 0.49).sqrt();
        assert!((g.point(0).beta.re - rho).abs() < 1e-15);
    }

    #[test]
    fn sequence_roundtrip_through_values() {
        let f = CoinFile::parse(C3_FILE).unwrap();
        let seq = f.to_sequence().unwrap();
        let back = CoinFile::from_sequence(&seq);
        let toml = back.to_toml().unwrap();
        let reparsed = CoinFile::parse(&toml).unwrap().to_sequence().unwrap();
        for x in -201..=201 {
            assert_eq!(seq.alpha(x), reparsed.alpha(x), "x = {x}");
        }
    }

    #[test]
    fn values_rule_length_checked() {
        let text = r#"
window = [0, 3]
alpha_plus = [0.5, 0.0]
alpha_minus = [0.5, 0.0]

[alpha]
rule = "values"
values = [[0.5, 0.0], [0.6, 0.0]]
"#;
        let f = CoinFile::parse(text).unwrap();
        assert!(matches!(f.to_sequence(), Err(Error::Parse(_))));
    }

    #[test]
    fn malformed_file_is_parse_error() {
        assert!(matches!(
            CoinFile::parse("window = \"oops\""),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn step_rule() {
        let text = r#"
window = [-10, 10]
alpha_plus = [0.5, 0.0]
alpha_minus = [0.5, 0.0]

[alpha]
rule = "step"
base = [0.5, 0.0]
amplitude = [0.3, 0.0]
radius = 3
"#;
        let seq = CoinFile::parse(text).unwrap().to_sequence().unwrap();
        assert!((seq.alpha(3).re - 0.8).abs() < 1e-15);
        assert!((seq.alpha(4).re - 0.5).abs() < 1e-15);
    }
}

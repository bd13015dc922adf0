//! Flat `key = value` scenario files.
//!
//! ```text
//! # complex gains as "re im"
//! h12 = 0.5054 -0.1449
//! h21 = -0.0878 1.0534
//! z1 = 0.1187 -0.2135
//! z2 = 0.1268 0.2882
//! eps = 0.02          # or all six of eps11 eps12 eps21 eps22 eps1 eps2
//! p1_db = 3           # or p1 = <linear>
//! p2_db = 3
//! n0 = 1
//! grid_k = 40         # optional solver overrides
//! ```
//!
//! `h11` and `h22` are optional and default to zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{db_to_linear, ChannelSet, Complex, ErrorBounds, ModelError, Scenario, SolverConfig};

const GAIN_KEYS: [&str; 6] = ["h11", "h12", "h21", "h22", "z1", "z2"];
const EPS_KEYS: [&str; 6] = ["eps11", "eps12", "eps21", "eps22", "eps1", "eps2"];
const SOLVER_KEYS: [&str; 6] = [
    "grid_k",
    "grid_l",
    "zeta",
    "feas_tol",
    "oracle_power_grid",
    "oracle_error_grid",
];
const OTHER_KEYS: [&str; 6] = ["eps", "p1", "p2", "p1_db", "p2_db", "n0"];

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key '{key}'")]
    Duplicate { line: usize, key: String },
    #[error("missing key '{0}'")]
    Missing(String),
    #[error("{0}")]
    Conflict(String),
    #[error("invalid scenario: {0}")]
    Invalid(#[from] ModelError),
}

/// A parsed scenario file: the problem instance plus solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioFile {
    pub scenario: Scenario,
    pub config: SolverConfig,
}

struct Entry {
    line: usize,
    value: String,
}

fn known(key: &str) -> bool {
    GAIN_KEYS.contains(&key) || EPS_KEYS.contains(&key) || SOLVER_KEYS.contains(&key) || OTHER_KEYS.contains(&key)
}

fn parse_real(key: &str, e: &Entry) -> Result<f64, ConfigError> {
    e.value.trim().parse::<f64>().map_err(|_| ConfigError::Syntax {
        line: e.line,
        msg: format!("'{key}' expects a real number, got '{}'", e.value),
    })
}

fn parse_count(key: &str, e: &Entry) -> Result<usize, ConfigError> {
    e.value.trim().parse::<usize>().map_err(|_| ConfigError::Syntax {
        line: e.line,
        msg: format!("'{key}' expects a positive integer, got '{}'", e.value),
    })
}

fn parse_complex(key: &str, e: &Entry) -> Result<Complex, ConfigError> {
    let parts: Vec<&str> = e.value.split_whitespace().collect();
    let bad = || ConfigError::Syntax {
        line: e.line,
        msg: format!("'{key}' expects two reals 're im', got '{}'", e.value),
    };
    if parts.len() != 2 {
        return Err(bad());
    }
    let re = parts[0].parse::<f64>().map_err(|_| bad())?;
    let im = parts[1].parse::<f64>().map_err(|_| bad())?;
    Ok(Complex::new(re, im))
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map: BTreeMap<String, Entry> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((k, v)) = body.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line,
                    msg: format!("expected 'key = value', got '{body}'"),
                });
            };
            let key = k.trim().to_string();
            if !known(&key) {
                return Err(ConfigError::UnknownKey { line, key });
            }
            if map.contains_key(&key) {
                return Err(ConfigError::Duplicate { line, key });
            }
            map.insert(
                key,
                Entry {
                    line,
                    value: v.trim().to_string(),
                },
            );
        }

        let gain = |key: &str| -> Result<Complex, ConfigError> {
            match map.get(key) {
                Some(e) => parse_complex(key, e),
                None if key == "h11" || key == "h22" => Ok(Complex::new(0.0, 0.0)),
                None => Err(ConfigError::Missing(key.into())),
            }
        };
        let channels = ChannelSet {
            h11: gain("h11")?,
            h12: gain("h12")?,
            h21: gain("h21")?,
            h22: gain("h22")?,
            z1: gain("z1")?,
            z2: gain("z2")?,
        };

        let present: Vec<&str> = EPS_KEYS.iter().copied().filter(|k| map.contains_key(*k)).collect();
        let errors = match (map.get("eps"), present.len()) {
            (Some(e), 0) => ErrorBounds::uniform(parse_real("eps", e)?),
            (Some(_), _) => {
                return Err(ConfigError::Conflict(
                    "give either 'eps' or the six per-link bounds, not both".into(),
                ))
            }
            (None, 6) => {
                let v = |k: &str| parse_real(k, &map[k]);
                ErrorBounds {
                    eps11: v("eps11")?,
                    eps12: v("eps12")?,
                    eps21: v("eps21")?,
                    eps22: v("eps22")?,
                    eps1: v("eps1")?,
                    eps2: v("eps2")?,
                }
            }
            (None, 0) => return Err(ConfigError::Missing("eps".into())),
            (None, _) => {
                let missing: Vec<&str> = EPS_KEYS.iter().copied().filter(|k| !present.contains(k)).collect();
                return Err(ConfigError::Missing(missing.join(", ")));
            }
        };

        let budget = |lin: &str, db: &str| -> Result<f64, ConfigError> {
            match (map.get(lin), map.get(db)) {
                (Some(e), None) => parse_real(lin, e),
                (None, Some(e)) => Ok(db_to_linear(parse_real(db, e)?)),
                (Some(_), Some(_)) => Err(ConfigError::Conflict(format!(
                    "give either '{lin}' or '{db}', not both"
                ))),
                (None, None) => Err(ConfigError::Missing(format!("{lin} (or {db})"))),
            }
        };
        let p1 = budget("p1", "p1_db")?;
        let p2 = budget("p2", "p2_db")?;
        let n0 = match map.get("n0") {
            Some(e) => parse_real("n0", e)?,
            None => return Err(ConfigError::Missing("n0".into())),
        };

        let mut config = SolverConfig::default();
        for key in SOLVER_KEYS {
            let Some(e) = map.get(key) else { continue };
            match key {
                "grid_k" => config.grid_k = parse_count(key, e)?,
                "grid_l" => config.grid_l = parse_count(key, e)?,
                "zeta" => config.zeta = parse_real(key, e)?,
                "feas_tol" => config.feas_tol = parse_real(key, e)?,
                "oracle_power_grid" => config.oracle_power_grid = parse_count(key, e)?,
                _ => config.oracle_error_grid = parse_count(key, e)?,
            }
        }

        let scenario = Scenario {
            channels,
            errors,
            p1,
            p2,
            n0,
        }
        .validate()?;
        let config = config.validate()?;
        Ok(Self { scenario, config })
    }

    /// Serializes with linear budgets and shortest round-trip floats, so
    /// parsing the text back yields an identical value.
    pub fn to_text(&self) -> String {
        let s = &self.scenario;
        let ch = &s.channels;
        let mut out = String::new();
        for (k, g) in GAIN_KEYS.iter().zip([ch.h11, ch.h12, ch.h21, ch.h22, ch.z1, ch.z2]) {
            let _ = writeln!(out, "{k} = {:?} {:?}", g.re, g.im);
        }
        match s.errors.as_uniform() {
            Some(e) => {
                let _ = writeln!(out, "eps = {e:?}");
            }
            None => {
                for (k, v) in s.errors.named() {
                    let _ = writeln!(out, "{k} = {v:?}");
                }
            }
        }
        let c = &self.config;
        let _ = writeln!(out, "p1 = {:?}", s.p1);
        let _ = writeln!(out, "p2 = {:?}", s.p2);
        let _ = writeln!(out, "n0 = {:?}", s.n0);
        let _ = writeln!(out, "grid_k = {}", c.grid_k);
        let _ = writeln!(out, "grid_l = {}", c.grid_l);
        let _ = writeln!(out, "zeta = {:?}", c.zeta);
        let _ = writeln!(out, "feas_tol = {:?}", c.feas_tol);
        let _ = writeln!(out, "oracle_power_grid = {}", c.oracle_power_grid);
        let _ = writeln!(out, "oracle_error_grid = {}", c.oracle_error_grid);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const REFERENCE: &str = "\
# reference scenario
h12 = 0.5054 -0.1449
h21 = -0.0878 1.0534
z1 = 0.1187 -0.2135
z2 = 0.1268 0.2882
eps = 0.02
p1_db = 3
p2_db = 3
n0 = 1
";

    #[test]
    fn parses_reference() {
        let f = ScenarioFile::parse(REFERENCE).unwrap();
        assert_eq!(f.scenario, Scenario::reference(3.0, 0.02));
        assert_eq!(f.config, SolverConfig::default());
    }

    #[test]
    fn six_bounds_and_overrides() {
        let text = REFERENCE.replace(
            "eps = 0.02",
            "eps11 = 0.1\neps12 = 0.2\neps21 = 0.3\neps22 = 0.4\neps1 = 0.5\neps2 = 0.6\ngrid_k = 7 # comment\nzeta = 1e-4",
        );
        let f = ScenarioFile::parse(&text).unwrap();
        assert_eq!(f.scenario.errors.eps21, 0.3);
        assert_eq!(f.scenario.errors.eps2, 0.6);
        assert_eq!(f.config.grid_k, 7);
        assert_eq!(f.config.zeta, 1e-4);
    }

    #[test]
    fn rejects_mixed_error_forms() {
        let text = format!("{REFERENCE}eps1 = 0.1\n");
        assert!(matches!(ScenarioFile::parse(&text), Err(ConfigError::Conflict(_))));
        let text = REFERENCE.replace("eps = 0.02", "eps1 = 0.1");
        assert!(matches!(ScenarioFile::parse(&text), Err(ConfigError::Missing(_))));
        let text = REFERENCE.replace("eps = 0.02\n", "");
        assert_eq!(ScenarioFile::parse(&text), Err(ConfigError::Missing("eps".into())));
    }

    #[test]
    fn reports_errors_with_lines() {
        assert_eq!(
            ScenarioFile::parse("h12 = 1\n"),
            Err(ConfigError::Syntax {
                line: 1,
                msg: "'h12' expects two reals 're im', got '1'".into()
            })
        );
        assert!(matches!(
            ScenarioFile::parse(&format!("{REFERENCE}bogus = 3\n")),
            Err(ConfigError::UnknownKey { line: 10, .. })
        ));
        assert!(matches!(
            ScenarioFile::parse(&format!("{REFERENCE}n0 = 3\n")),
            Err(ConfigError::Duplicate { line: 10, .. })
        ));
        assert!(matches!(
            ScenarioFile::parse(&format!("{REFERENCE}p1 = 3\n")),
            Err(ConfigError::Conflict(_))
        ));
        let bad = REFERENCE.replace("n0 = 1", "n0 = 0");
        let err = ScenarioFile::parse(&bad).unwrap_err();
        assert!(err.to_string().contains("noise power must be positive"));
    }

    proptest! {
        #[test]
        fn text_round_trip(eps in prop::array::uniform6(0.0..0.3f64), db in -5.0..12.0f64,
                           n0 in 0.01..4.0f64, k in 1usize..80, uniform in any::<bool>()) {
            let mut s = Scenario::reference(db, 0.0);
            s.n0 = n0;
            s.errors = if uniform {
                ErrorBounds::uniform(eps[0])
            } else {
                ErrorBounds { eps11: eps[0], eps12: eps[1], eps21: eps[2], eps22: eps[3], eps1: eps[4], eps2: eps[5] }
            };
            let f = ScenarioFile { scenario: s, config: SolverConfig::default().with_grid(k, k + 1) };
            prop_assert_eq!(ScenarioFile::parse(&f.to_text()).unwrap(), f);
        }
    }
}

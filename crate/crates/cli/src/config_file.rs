//! TOML configuration files.
//!
//! ```toml
//! factors = [1, 2]
//! prime = 32003
//! seed = 0
//! labels = ["P1Q1", "P2Q2"]
//! points = [
//!     [[1, 1], [1, 0, 0]],
//!     [[1, 2], [0, 1, 0]],
//! ]
//! ```
//!
//! Coordinates are integers, reduced into the working field on load.

use std::fmt;
use std::path::Path;

use mpacm::algebra::Field;
use mpacm::{ConfigError, Configuration, IntConfig};
use serde::{Deserialize, Serialize};
use toml::Spanned;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    factors: Spanned<Vec<i64>>,
    points: Spanned<Vec<Spanned<Vec<Vec<i64>>>>>,
    prime: Option<Spanned<i64>>,
    seed: Option<u64>,
    labels: Option<Spanned<Vec<String>>>,
}

#[derive(Serialize)]
struct OutFile<'a> {
    factors: &'a [usize],
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadError {
    /// Unreadable file or malformed TOML.
    Syntax { line: Option<usize>, message: String },
    /// Well-formed TOML describing an invalid configuration.
    Invalid { line: usize, message: String },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Syntax { line: Some(l), message } => write!(f, "line {l}: {message}"),
            LoadError::Syntax { line: None, message } => f.write_str(message),
            LoadError::Invalid { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigFile {
    pub dims: Vec<usize>,
    pub points: Vec<Vec<Vec<i64>>>,
    pub prime: Option<u32>,
    pub seed: Option<u64>,
    pub labels: Option<Vec<String>>,
    factors_line: usize,
    points_line: usize,
    point_lines: Vec<usize>,
}

fn line_of(text: &str, offset: usize) -> usize {
    1 + text.as_bytes()[..offset.min(text.len())]
        .iter()
        .filter(|&&b| b == b'\n')
        .count()
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|e| LoadError::Syntax {
            line: None,
            message: format!("{}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let raw: RawFile = toml::from_str(text).map_err(|e| LoadError::Syntax {
            line: e.span().map(|s| line_of(text, s.start)),
            message: e.message().trim().to_string(),
        })?;
        let line = |s: std::ops::Range<usize>| line_of(text, s.start);
        let factors_line = line(raw.factors.span());
        let dims = raw
            .factors
            .get_ref()
            .iter()
            .map(|&a| usize::try_from(a).ok().filter(|&a| a > 0))
            .collect::<Option<Vec<usize>>>()
            .filter(|d| !d.is_empty())
            .ok_or_else(|| LoadError::Invalid {
                line: factors_line,
                message: format!("factors must be positive integers, got {:?}", raw.factors.get_ref()),
            })?;
        let prime = match raw.prime {
            None => None,
            Some(p) => Some(
                u32::try_from(*p.get_ref())
                    .ok()
                    .filter(|&q| mpacm::algebra::PrimeField::new(q).is_ok())
                    .ok_or_else(|| LoadError::Invalid {
                        line: line(p.span()),
                        message: format!("{} is not a prime below 2^31", p.get_ref()),
                    })?,
            ),
        };
        let points_line = line(raw.points.span());
        let point_lines: Vec<usize> = raw.points.get_ref().iter().map(|p| line(p.span())).collect();
        let points: Vec<Vec<Vec<i64>>> = raw.points.into_inner().into_iter().map(Spanned::into_inner).collect();
        let labels = match raw.labels {
            None => None,
            Some(l) if l.get_ref().len() != points.len() => {
                return Err(LoadError::Invalid {
                    line: line(l.span()),
                    message: format!("{} labels for {} points", l.get_ref().len(), points.len()),
                })
            }
            Some(l) => Some(l.into_inner()),
        };
        let file = ConfigFile {
            dims,
            points,
            prime,
            seed: raw.seed,
            labels,
            factors_line,
            points_line,
            point_lines,
        };
        file.check_lengths()?;
        Ok(file)
    }

    fn check_lengths(&self) -> Result<(), LoadError> {
        for (k, p) in self.points.iter().enumerate() {
            let err = |message: String| LoadError::Invalid {
                line: self.point_lines[k],
                message: format!("point {}: {message}", k + 1),
            };
            if p.len() != self.dims.len() {
                return Err(err(format!("{} coordinate tuples, expected {}", p.len(), self.dims.len())));
            }
            for (i, (c, &a)) in p.iter().zip(&self.dims).enumerate() {
                if c.len() != a + 1 {
                    return Err(err(format!(
                        "factor {} has {} coordinates, expected {}",
                        i + 1,
                        c.len(),
                        a + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_int_config(ic: &IntConfig) -> Self {
        ConfigFile {
            dims: ic.dims.clone(),
            points: ic.points.clone(),
            prime: None,
            seed: None,
            labels: None,
            factors_line: 1,
            points_line: 1,
            point_lines: vec![1; ic.points.len()],
        }
    }

    pub fn int_config(&self) -> IntConfig {
        IntConfig {
            dims: self.dims.clone(),
            points: self.points.clone(),
        }
    }

    /// Reduces the coordinates into `field`, attributing errors to lines.
    pub fn realize<F: Field>(&self, field: &F) -> Result<Configuration<F>, LoadError> {
        self.int_config().realize(field).map_err(|e| self.locate(e))
    }

    fn locate(&self, e: ConfigError) -> LoadError {
        let point_line = |k: usize| self.point_lines.get(k).copied().unwrap_or(self.points_line);
        let line = match &e {
            ConfigError::WrongFactorCount { point, .. }
            | ConfigError::CoordinateLength { point, .. }
            | ConfigError::ZeroPoint { point, .. }
            | ConfigError::DuplicatePoint { point, .. } => point_line(*point),
            ConfigError::Empty => self.points_line,
            _ => self.factors_line,
        };
        let message = match e {
            ConfigError::ZeroPoint { point, factor } => {
                format!("point {}, factor {}: all coordinates vanish in the field", point + 1, factor + 1)
            }
            ConfigError::DuplicatePoint { point, first } => {
                format!("point {} duplicates point {}", point + 1, first + 1)
            }
            other => other.to_string(),
        };
        LoadError::Invalid { line, message }
    }

    pub fn to_toml(&self) -> String {
        let out = OutFile {
            factors: &self.dims,
            prime: self.prime,
            seed: self.seed,
            labels: self.labels.as_deref(),
        };
        let mut text = toml::to_string(&out).expect("plain data serializes");
        text.push_str("points = [\n");
        for p in &self.points {
            let value = toml::Value::try_from(p).expect("integer arrays convert");
            text.push_str(&format!("    {value},\n"));
        }
        text.push_str("]\n");
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mpacm::algebra::PrimeField;

    const GOOD: &str = "factors = [1, 2]\nseed = 7\npoints = [\n  [[1, 1], [1, 0, 0]],\n  [[1, 2], [0, 1, 0]],\n]\n";

    #[test]
    fn parses_and_realizes() {
        let f = ConfigFile::parse(GOOD).unwrap();
        assert_eq!(f.dims, vec![1, 2]);
        assert_eq!(f.seed, Some(7));
        assert_eq!(f.point_lines, vec![4, 5]);
        assert_eq!(f.realize(&PrimeField::default()).unwrap().len(), 2);
    }

    #[test]
    fn wrong_tuple_length_reports_its_line() {
        let text = GOOD.replace("[0, 1, 0]", "[0, 1]");
        match ConfigFile::parse(&text) {
            Err(LoadError::Invalid { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicates_after_reduction_are_rejected() {
        let text = GOOD.replace("[[1, 2], [0, 1, 0]]", "[[2, 2], [2, 0, 0]]");
        let f = ConfigFile::parse(&text).unwrap();
        match f.realize(&PrimeField::default()) {
            Err(LoadError::Invalid { line, message }) => {
                assert_eq!(line, 5);
                assert!(message.contains("duplicates point 1"));
            }
            other => panic!("{other:?}"),
        }
        let vanishing = GOOD.replace("[0, 1, 0]", "[0, 32003, 0]");
        assert!(ConfigFile::parse(&vanishing).unwrap().realize(&PrimeField::default()).is_err());
    }

    #[test]
    fn syntax_errors_are_separate() {
        assert!(matches!(ConfigFile::parse("factors = [1,"), Err(LoadError::Syntax { .. })));
        assert!(matches!(
            ConfigFile::parse("factors = [1]\npoints = []\ncolour = 3\n"),
            Err(LoadError::Syntax { line: Some(3), .. })
        ));
        assert!(matches!(ConfigFile::parse("factors = [0]\npoints = []\n"), Err(LoadError::Invalid { line: 1, .. })));
        assert!(matches!(
            ConfigFile::parse("factors = [1]\nprime = 32004\npoints = []\n"),
            Err(LoadError::Invalid { line: 2, .. })
        ));
    }

    #[test]
    fn round_trips_through_toml() {
        let mut f = ConfigFile::parse(GOOD).unwrap();
        f.labels = Some(vec!["a".into(), "b".into()]);
        let again = ConfigFile::parse(&f.to_toml()).unwrap();
        assert_eq!((again.dims, again.points, again.seed, again.labels), (f.dims, f.points, f.seed, f.labels));
    }
}

//! Parameter literals, value sets and sweep points.

use std::fmt;

use qsum_core::Exponent;
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse `{0}` as an integer or a/b rational")]
    BadNumber(String),
    #[error("range `{0}` is empty")]
    EmptyRange(String),
    #[error("bad range `{0}`: {1}")]
    BadRange(String, String),
    #[error("parameter {0} must be an integer, got {1}")]
    NotInteger(&'static str, Val),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("parameter --{0} is not used by `{1}`")]
    UnusedParameter(String, String),
    #[error("{0}")]
    Invalid(String),
}

/// A parameter value: an exact rational, the `inf` sentinel or a name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Num(Exponent),
    Inf,
    Name(String),
}

impl From<i64> for Val {
    fn from(x: i64) -> Self {
        Val::Num(Exponent::from_integer(x))
    }
}

impl From<Exponent> for Val {
    fn from(x: Exponent) -> Self {
        Val::Num(x)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Num(x) => write!(f, "{x}"),
            Val::Inf => f.write_str("inf"),
            Val::Name(s) => f.write_str(s),
        }
    }
}

impl Val {
    pub fn to_json(&self) -> Value {
        match self {
            Val::Num(x) if x.is_integer() => Value::from(x.to_integer()),
            other => Value::from(other.to_string()),
        }
    }
}

/// Parses `7`, `-3`, `1/2` or `-5/4`.
pub fn parse_rational(s: &str) -> Result<Exponent, ConfigError> {
    let bad = || ConfigError::BadNumber(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Exponent::new(n, d))
        }
        None => Ok(Exponent::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_single(s: &str) -> Result<Val, ConfigError> {
    if s == "inf" {
        Ok(Val::Inf)
    } else if s.starts_with(|c: char| c.is_ascii_alphabetic()) {
        Ok(Val::Name(s.to_string()))
    } else {
        parse_rational(s).map(Val::Num)
    }
}

/// Parses a value set: `v`, `v1,v2,...`, `lo..hi` (inclusive, step 1) or
/// `lo..hi:step`. Literals may be rationals `a/b`, `inf` or names.
/// An empty set is an error.
pub fn parse_values(s: &str) -> Result<Vec<Val>, ConfigError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((lo, rest)) = part.split_once("..") else {
            out.push(parse_single(part)?);
            continue;
        };
        let rest = rest.strip_prefix('=').unwrap_or(rest);
        let (hi, step) = match rest.split_once(':') {
            Some((h, st)) => (h, parse_rational(st)?),
            None => (rest, Exponent::from_integer(1)),
        };
        if step <= Exponent::from_integer(0) {
            return Err(ConfigError::BadRange(part.to_string(), "step must be positive".into()));
        }
        let (lo, hi) = (parse_rational(lo)?, parse_rational(hi)?);
        if lo > hi {
            return Err(ConfigError::EmptyRange(part.to_string()));
        }
        let mut x = lo;
        while x <= hi {
            out.push(Val::Num(x));
            x += step;
        }
    }
    if out.is_empty() {
        return Err(ConfigError::EmptyRange(s.to_string()));
    }
    Ok(out)
}

/// One parameter point of a sweep, keys in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Point(pub Vec<(&'static str, Val)>);

impl Point {
    pub fn with(mut self, key: &'static str, v: impl Into<Val>) -> Self {
        self.0.push((key, v.into()));
        self
    }

    pub fn val(&self, key: &'static str) -> Result<&Val, ConfigError> {
        self.0
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v)
            .ok_or_else(|| ConfigError::Invalid(format!("missing parameter {key}")))
    }

    pub fn rat(&self, key: &'static str) -> Result<Exponent, ConfigError> {
        match self.val(key)? {
            Val::Num(x) => Ok(*x),
            other => Err(ConfigError::NotInteger(key, other.clone())),
        }
    }

    pub fn int(&self, key: &'static str) -> Result<i64, ConfigError> {
        let x = self.rat(key)?;
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(ConfigError::NotInteger(key, Val::Num(x)))
        }
    }

    /// Integer value, or `None` for `inf`.
    pub fn int_or_inf(&self, key: &'static str) -> Result<Option<i64>, ConfigError> {
        match self.val(key)? {
            Val::Inf => Ok(None),
            _ => self.int(key).map(Some),
        }
    }

    pub fn name(&self, key: &'static str) -> Result<&str, ConfigError> {
        match self.val(key)? {
            Val::Name(s) => Ok(s),
            other => Err(ConfigError::Invalid(format!("parameter {key} must be a name, got {other}"))),
        }
    }

    pub fn to_json(&self) -> Map<String, Value> {
        self.0.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Cartesian product of named value sets, last key varying fastest.
pub fn cartesian(axes: &[(&'static str, Vec<Val>)]) -> Vec<Point> {
    let mut out = vec![Point::default()];
    for (key, values) in axes {
        out = out
            .into_iter()
            .flat_map(|p| values.iter().map(move |v| p.clone().with(key, v.clone())))
            .collect();
    }
    out
}

//! Building sweeps from families and overrides, and running them with
//! ordered output.

use std::io::{self, Write};
use std::time::Instant;

use qsum_core::Truncation;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::families::{find, Ctx, Family, Kind};
use crate::params::{parse_rational, parse_values, ConfigError, Point, Val};
use crate::report::{IdentityReport, Summary};

/// Options that shape a sweep but are not grid axes.
#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub trunc: Option<String>,
    pub include_exceptional: bool,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

pub struct Sweep {
    pub family: &'static Family,
    pub points: Vec<Point>,
    pub ctx: Ctx,
}

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 1;

fn check_kind(key: &'static str, kind: Kind, values: &[Val]) -> Result<(), ConfigError> {
    for v in values {
        let ok = match (kind, v) {
            (Kind::Int, Val::Num(x)) | (Kind::IntOrInf, Val::Num(x)) => x.is_integer(),
            (Kind::IntOrInf, Val::Inf) | (Kind::Rational, Val::Num(_)) => true,
            (Kind::Name(names), Val::Name(s)) => names.contains(&s.as_str()),
            _ => false,
        };
        if !ok {
            return Err(ConfigError::Invalid(format!("--{key} does not accept `{v}`")));
        }
    }
    Ok(())
}

/// Resolves the grid of `id` with the given `(key, value-set)` overrides.
pub fn prepare(id: &str, overrides: &[(String, String)], opts: &SweepOptions) -> Result<Sweep, ConfigError> {
    let family = find(id)?;
    for (key, _) in overrides {
        if family.axis(key).is_none() {
            return Err(ConfigError::UnusedParameter(key.clone(), id.to_string()));
        }
    }
    let mut axes = Vec::with_capacity(family.axes.len());
    for axis in family.axes {
        let text = overrides.iter().rev().find(|(k, _)| k == axis.key).map_or(axis.default, |(_, v)| v.as_str());
        let values = parse_values(text)?;
        check_kind(axis.key, axis.kind, &values)?;
        axes.push((axis.key, values));
    }
    let trunc = match (&opts.trunc, family.default_trunc) {
        (Some(t), _) => Some(parse_rational(t)?),
        (None, Some(d)) => Some(d.into()),
        (None, None) => None,
    };
    let trunc = trunc
        .map(Truncation::new)
        .transpose()
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let ctx = Ctx {
        trunc,
        include_exceptional: opts.include_exceptional,
        samples: opts.samples.unwrap_or(DEFAULT_SAMPLES),
        seed: opts.seed.unwrap_or(DEFAULT_SEED),
    };
    let points = (family.expand)(&axes, &ctx)?;
    if points.is_empty() {
        return Err(ConfigError::Invalid(format!("the grid for `{id}` has no points")));
    }
    Ok(Sweep { family, points, ctx })
}

fn evaluate(sweep: &Sweep, p: &Point, timing: bool) -> Option<IdentityReport> {
    let start = Instant::now();
    let checked = sweep.family.evaluate(p, &sweep.ctx)?;
    let elapsed = if timing { start.elapsed().as_millis() as u64 } else { 0 };
    let mut params = p.to_json();
    for (k, v) in checked.extra {
        params.insert(k.to_string(), v.to_json());
    }
    let d = sweep.ctx.trunc.map(|t| t.degree_cap());
    Some(IdentityReport::new(sweep.family.id, params, checked.outcome, d, elapsed))
}

/// Evaluates the points in parallel on `pool` and hands reports to `sink` in
/// grid order, one chunk at a time.
pub fn run<F>(sweep: &Sweep, pool: &ThreadPool, timing: bool, mut sink: F) -> io::Result<Summary>
where
    F: FnMut(&IdentityReport) -> io::Result<()>,
{
    let start = Instant::now();
    let mut summary = Summary::new(sweep.family.id);
    let chunk = 64 * pool.current_num_threads().max(1);
    for block in sweep.points.chunks(chunk) {
        let reports: Vec<Option<IdentityReport>> = pool.install(|| block.par_iter().map(|p| evaluate(sweep, p, timing)).collect());
        for r in reports.into_iter().flatten() {
            summary.add(r.verdict);
            sink(&r)?;
        }
    }
    if timing {
        summary.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    Ok(summary)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Writes reports and summaries as JSON lines or text.
pub struct Emitter {
    out: Box<dyn Write>,
    format: Format,
    color: bool,
}

impl Emitter {
    pub fn new(out: Box<dyn Write>, format: Format, color: bool) -> Self {
        Emitter { out, format, color }
    }

    pub fn report(&mut self, r: &IdentityReport) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(r).map_err(io::Error::other)?),
            Format::Text => writeln!(self.out, "{}", r.to_text(self.color)),
        }
    }

    pub fn summary(&mut self, s: &Summary) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(s).map_err(io::Error::other)?),
            Format::Text => writeln!(self.out, "{}", s.to_text()),
        }
    }

    pub fn raw(&mut self, line: &str) -> io::Result<()> {
        writeln!(self.out, "{line}")
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

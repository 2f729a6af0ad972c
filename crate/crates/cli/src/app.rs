//! Command-line parsing and the four subcommands.

use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qsum_core::burge::{build_tree, burge_xn, closed_form, verify_node, Bounds, BurgeParams, Labels, MAX_TREE_DEPTH};
use qsum_core::multinom::{abf_config_sum, t_multinomial, MultinomialQuery};
use qsum_core::qbinom::{qbin_modified, qbin_standard};
use qsum_core::qpoly::euler_inverse_truncated;
use qsum_core::saalschutz::{gensum_lhs, SaalschutzParams};
use qsum_core::series::{product_side, string_fermionic, string_lp, string_spinon, ProductKind, StringFunctionQuery};
use qsum_core::{QPoly, Truncation};
use rayon::ThreadPoolBuilder;
use serde_json::json;

use crate::families::FAMILIES;
use crate::params::{parse_rational, parse_values, ConfigError, Point, Val};
use crate::report::Summary;
use crate::suite::{SUITE, SUITE_VERSION};
use crate::sweep::{prepare, run, Emitter, Format, SweepOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qsum", version, about = "Exact verification of q-series identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep one identity over a parameter grid.
    Verify {
        /// Identity id, see `qsum list`.
        identity: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Report exceptional points of qs2 as skipped, with both sides.
        #[arg(long)]
        include_exceptional: bool,
        /// Number of sampled tuples for sampled identities (0 = full grid).
        #[arg(long)]
        samples: Option<usize>,
        /// Seed of the sampler.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build a Burge tree and verify nodes with known closed forms.
    Tree {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long = "N", default_value_t = 1)]
        level: usize,
        #[arg(long, default_value_t = 0)]
        sigma: u8,
        /// Largest M and L of the verification grid (default 8 at N = 1, else 5).
        #[arg(long)]
        max: Option<i64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print one polynomial.
    Eval {
        /// One of: qbin, tmultinomial, burge, closed, gensum, abf, product, string, partitions.
        what: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, allow_hyphen_values = true)]
        trunc: Option<String>,
        /// Variant: standard|modified for qbin, spinon|fermionic|lp for string.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Run every embedded acceptance grid.
    Suite {
        /// Only run these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List identity ids with their axes and default grids.
    List,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Truncation degree D for series identities.
    #[arg(long, allow_hyphen_values = true)]
    pub trunc: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write reports here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report elapsed_ms as 0 so output is byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

macro_rules! grid_args {
    ($($field:ident => $flag:literal),* $(,)?) => {
        /// Value sets for grid axes: `v`, `v1,v2`, `lo..hi` or `lo..hi:step`; rationals as `a/b`.
        #[derive(Args, Debug, Default)]
        pub struct GridArgs {
            $(
                #[arg(long = $flag, allow_hyphen_values = true)]
                pub $field: Option<String>,
            )*
        }

        impl GridArgs {
            pub fn pairs(&self) -> Vec<(String, String)> {
                let mut out = Vec::new();
                $(
                    if let Some(v) = &self.$field {
                        out.push(($flag.to_string(), v.clone()));
                    }
                )*
                out
            }
        }
    };
}

grid_args! {
    big_n => "N", sigma => "sigma", ell => "ell", big_m => "M", big_l => "L",
    l1 => "L1", l2 => "L2", m1 => "M1", m2 => "M2", m12 => "M12",
    m => "m", n => "n", a => "a", b => "b", c => "c", d => "d", e => "e", f => "f", g => "g",
    p => "p", pp => "pp", r => "r", s => "s", which => "which", depth => "depth", vmax => "vmax",
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

#[derive(Debug)]
enum Failure {
    Config(ConfigError),
    Io(io::Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Config(ConfigError::Invalid(msg.into()))
}

fn emitter(o: &OutputArgs) -> Result<Emitter, Failure> {
    let color_allowed = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    let (out, tty): (Box<dyn Write>, bool) = match &o.out {
        Some(path) => (Box::new(BufWriter::new(File::create(path)?)), false),
        None => (Box::new(BufWriter::new(io::stdout())), io::stdout().is_terminal()),
    };
    Ok(Emitter::new(out, o.format, color_allowed && tty && o.format == Format::Text))
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| invalid(e.to_string()))
}

/// Exit code for a finished sweep: 0 iff every verdict is equal or skipped.
pub fn exit_code(s: &Summary) -> i32 {
    if s.all_ok() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn execute(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Verify { identity, grid, output, include_exceptional, samples, seed } => {
            let opts = SweepOptions { trunc: output.trunc.clone(), include_exceptional, samples, seed };
            let sweep = prepare(&identity, &grid.pairs(), &opts)?;
            let pool = pool(output.jobs)?;
            let mut em = emitter(&output)?;
            let summary = run(&sweep, &pool, !output.no_timing, |r| em.report(r))?;
            em.summary(&summary)?;
            em.flush()?;
            Ok(exit_code(&summary))
        }
        Command::Suite { criterion, output } => {
            if output.trunc.is_some() {
                return Err(invalid("the suite fixes its own truncations; drop --trunc"));
            }
            let entries: Vec<_> = SUITE.iter().filter(|e| criterion.is_empty() || criterion.contains(&e.criterion)).collect();
            if entries.is_empty() {
                return Err(invalid("no suite entries match --criterion"));
            }
            let sweeps = entries.iter().map(|e| e.prepare()).collect::<Result<Vec<_>, _>>()?;
            let pool = pool(output.jobs)?;
            let mut em = emitter(&output)?;
            let mut total = Summary::new(&format!("suite-v{SUITE_VERSION}"));
            for sweep in &sweeps {
                let s = run(sweep, &pool, !output.no_timing, |r| em.report(r))?;
                em.summary(&s)?;
                total.merge(&s);
            }
            em.summary(&total)?;
            em.flush()?;
            Ok(exit_code(&total))
        }
        Command::Tree { depth, level, sigma, max, output } => tree(depth, level, sigma, max, &output),
        Command::Eval { what, grid, trunc, variant } => {
            let poly = eval(&what, &grid, trunc.as_deref(), variant.as_deref())?;
            println!("{poly}");
            Ok(EXIT_OK)
        }
        Command::List => {
            for f in FAMILIES {
                let axes: Vec<String> = f.axes.iter().map(|a| format!("--{} {}", a.key, a.default)).collect();
                let d = f.default_trunc.map(|d| format!(" --trunc {d}")).unwrap_or_default();
                println!("{:<20} {}\n{:<20} {}{}", f.id, f.about, "", axes.join(" "), d);
            }
            Ok(EXIT_OK)
        }
    }
}

fn tree(depth: usize, level: usize, sigma: u8, max: Option<i64>, output: &OutputArgs) -> Result<i32, Failure> {
    if depth > MAX_TREE_DEPTH {
        return Err(invalid(format!("tree depth {depth} exceeds the cap {MAX_TREE_DEPTH}")));
    }
    let mut nodes = build_tree(depth, level, sigma).map_err(|e| invalid(e.to_string()))?;
    let max = max.unwrap_or(if level == 1 { 8 } else { 5 });
    let mut failed = false;
    for node in &mut nodes {
        node.verified = match verify_node(node, max, max) {
            Ok(v) => v,
            Err(_) => Some(false),
        };
        failed |= node.verified == Some(false);
    }
    let mut em = emitter(output)?;
    match output.format {
        Format::Json => {
            let doc = json!({"depth": depth, "N": level, "sigma": sigma, "grid_max": max, "nodes": nodes});
            em.raw(&doc.to_string())?;
        }
        Format::Text => {
            for (i, n) in nodes.iter().enumerate() {
                let parent = n.parent.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
                let verified = match n.verified {
                    Some(true) => "verified",
                    Some(false) => "MISMATCH",
                    None => "no closed form",
                };
                em.raw(&format!("{i:>3} {} N={} sigma={} from {parent} via {:?}: {verified}", n.node_labels(), n.level(), n.sigma(), n.tag))?;
            }
        }
    }
    em.flush()?;
    Ok(if failed { EXIT_MISMATCH } else { EXIT_OK })
}

/// Reads a single value of `key` from the grid arguments.
fn single(grid: &GridArgs, key: &'static str, default: Option<&str>) -> Result<Val, Failure> {
    let pairs = grid.pairs();
    let text = pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).or(default);
    let text = text.ok_or_else(|| invalid(format!("missing --{key}")))?;
    let mut vals = parse_values(text)?;
    if vals.len() != 1 {
        return Err(invalid(format!("--{key} needs a single value here")));
    }
    Ok(vals.remove(0))
}

fn eval(what: &str, grid: &GridArgs, trunc: Option<&str>, variant: Option<&str>) -> Result<QPoly, Failure> {
    let mut p = Point::default();
    let mut need = |key: &'static str, default: Option<&str>| -> Result<(), Failure> {
        p = std::mem::take(&mut p).with(key, single(grid, key, default)?);
        Ok(())
    };
    let d = || -> Result<Truncation, Failure> {
        let t = parse_rational(trunc.ok_or_else(|| invalid("missing --trunc"))?)?;
        Truncation::new(t).map_err(|e| invalid(e.to_string()))
    };
    let core = |e: qsum_core::Error| invalid(e.to_string());
    match what {
        "qbin" => {
            need("m", None)?;
            need("n", None)?;
            let (m, n) = (p.int("m")?, p.int("n")?);
            match variant.unwrap_or("standard") {
                "standard" => Ok(qbin_standard(m, n)),
                "modified" => Ok(qbin_modified(m, n)),
                v => Err(invalid(format!("unknown variant `{v}`"))),
            }
        }
        "tmultinomial" => {
            for k in ["N", "L", "a"] {
                need(k, None)?;
            }
            need("n", Some("0"))?;
            let n = usize::try_from(p.int("n")?).map_err(|_| invalid("n must be nonnegative"))?;
            let q = MultinomialQuery::new(p.int("N")?.max(0) as usize, p.int("L")?, p.rat("a")?, n).map_err(core)?;
            t_multinomial(&q).map_err(core)
        }
        "burge" => {
            for k in ["p", "pp", "r", "s", "M1", "L1", "M2", "L2"] {
                need(k, None)?;
            }
            need("N", Some("1"))?;
            need("sigma", Some("0"))?;
            let labels = Labels::new(p.int("p")?, p.int("pp")?, p.int("r")?, p.int("s")?);
            let b = Bounds::new(p.int("M1")?, p.rat("L1")?, p.int("M2")?, p.rat("L2")?);
            let bp = BurgeParams::new(labels, p.int("N")?.max(0) as usize, p.int("sigma")?.clamp(0, 255) as u8, b).map_err(core)?;
            burge_xn(&bp).map_err(core)
        }
        "closed" => {
            for k in ["p", "pp", "r", "s", "M", "L"] {
                need(k, None)?;
            }
            need("N", Some("1"))?;
            need("sigma", Some("0"))?;
            let labels = Labels::new(p.int("p")?, p.int("pp")?, p.int("r")?, p.int("s")?);
            closed_form(labels, p.int("N")?.max(0) as usize, p.int("sigma")?.clamp(0, 255) as u8, p.int("M")?, p.rat("L")?).map_err(core)
        }
        "gensum" => {
            for k in ["N", "ell", "M", "L1", "L2"] {
                need(k, None)?;
            }
            need("sigma", Some("0"))?;
            let sp = SaalschutzParams::new(
                p.int("N")?.max(0) as usize,
                p.int("sigma")?.clamp(0, 255) as u8,
                p.int("ell")?,
                p.int("M")?,
                p.rat("L1")?,
                p.rat("L2")?,
            )
            .map_err(core)?;
            gensum_lhs(&sp).map_err(core)
        }
        "abf" => {
            for k in ["p", "s", "L"] {
                need(k, None)?;
            }
            Ok(abf_config_sum(p.int("p")?, p.int("s")?, p.int("L")?))
        }
        "product" => {
            need("which", None)?;
            let kind = match p.name("which")? {
                "ising" => ProductKind::Ising,
                "rr" => ProductKind::RogersRamanujan,
                "slater" => ProductKind::Slater,
                other => return Err(invalid(format!("unknown product `{other}`"))),
            };
            Ok(product_side(kind, &d()?))
        }
        "string" => {
            for k in ["N", "m", "ell"] {
                need(k, None)?;
            }
            need("sigma", Some("0"))?;
            let sq = StringFunctionQuery::new(p.int("N")?.max(0) as usize, p.int("m")?, p.int("ell")?, p.int("sigma")?.clamp(0, 255) as u8, d()?)
                .map_err(core)?;
            match variant.unwrap_or("spinon") {
                "spinon" => Ok(string_spinon(&sq)),
                "fermionic" => string_fermionic(&sq).map_err(core),
                "lp" => string_lp(&sq).map_err(core),
                v => Err(invalid(format!("unknown variant `{v}`"))),
            }
        }
        "partitions" => Ok(euler_inverse_truncated(&d()?)),
        other => Err(Failure::Config(ConfigError::UnknownIdentity(other.to_string()))),
    }
}

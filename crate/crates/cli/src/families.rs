//! The registry of identity families that `verify` and `suite` sweep over.

use std::collections::BTreeSet;

use qsum_core::burge::{
    build_tree, burge_x, burge_xn, closed_form, parent_labels, transform_traf1, transform_traf2, Bounds, BurgeParams,
    Direction, Labels, Sufficiency,
};
use qsum_core::lattice::{box_points, enumerate_admissible, restriction_holds, CartanData};
use qsum_core::multinom::{
    classical_multinomial, config_limit_lhs, config_limit_rhs, difference_sides, t_multinomial, tnew_rhs,
    MultinomialQuery,
};
use qsum_core::qpoly::euler_inverse_truncated;
use qsum_core::saalschutz::{
    gensum_lhs, gensum_rhs, qcv_lhs, qcv_rhs, qs2_exceptional, qs2_lhs, qs2_rhs, sears_lhs, sears_rhs,
    ClassicParams, SaalschutzParams, SearsParams,
};
use qsum_core::series::{
    durfee_sides, limlm_sides, partition_numbers, product_side, string_fermionic, string_lp,
    string_prefactor_ratio, string_spinon, sum_side, BaileyPairQuery, ProductKind, StringFunctionQuery,
};
use qsum_core::{Error as CoreError, Exponent, QPoly, Truncation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::params::{cartesian, ConfigError, Point, Val};
use crate::report::Outcome;

/// Value type accepted by an axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Int,
    Rational,
    IntOrInf,
    Name(&'static [&'static str]),
}

/// One named parameter axis with its default value set.
#[derive(Clone, Copy, Debug)]
pub struct Axis {
    pub key: &'static str,
    pub kind: Kind,
    pub default: &'static str,
}

const fn int(key: &'static str, default: &'static str) -> Axis {
    Axis { key, kind: Kind::Int, default }
}

const fn rat(key: &'static str, default: &'static str) -> Axis {
    Axis { key, kind: Kind::Rational, default }
}

/// Settings shared by every point of a sweep.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub trunc: Option<Truncation>,
    pub include_exceptional: bool,
    pub samples: usize,
    pub seed: u64,
}

/// Outcome of one point plus values derived while checking it.
#[derive(Clone, Debug)]
pub struct Checked {
    pub outcome: Outcome,
    pub extra: Vec<(&'static str, Val)>,
}

impl From<Outcome> for Checked {
    fn from(outcome: Outcome) -> Self {
        Checked { outcome, extra: Vec::new() }
    }
}

/// Why a check stopped early.
#[derive(Debug)]
pub enum Fail {
    Core(CoreError),
    Config(ConfigError),
}

impl From<CoreError> for Fail {
    fn from(e: CoreError) -> Self {
        Fail::Core(e)
    }
}

impl From<ConfigError> for Fail {
    fn from(e: ConfigError) -> Self {
        Fail::Config(e)
    }
}

/// `Ok(None)` drops the point from the sweep (outside the identity's domain).
pub type CheckResult = Result<Option<Checked>, Fail>;

type Axes = [(&'static str, Vec<Val>)];
pub type ExpandFn = fn(&Axes, &Ctx) -> Result<Vec<Point>, ConfigError>;

pub struct Family {
    pub id: &'static str,
    pub about: &'static str,
    pub axes: &'static [Axis],
    pub default_trunc: Option<i64>,
    pub expand: ExpandFn,
    pub check: fn(&Point, &Ctx) -> CheckResult,
}

impl Family {
    /// Runs the check, turning precondition failures into skips and
    /// every other failure into an error outcome.
    pub fn evaluate(&self, p: &Point, ctx: &Ctx) -> Option<Checked> {
        match (self.check)(p, ctx) {
            Ok(c) => c,
            Err(Fail::Core(
                CoreError::InvalidParams(_) | CoreError::UnbalancedParameters { .. } | CoreError::SufficiencyViolated,
            )) => Some(Outcome::Skipped { sides: None }.into()),
            Err(Fail::Core(e)) => Some(Outcome::Error(e.to_string()).into()),
            Err(Fail::Config(e)) => Some(Outcome::Error(e.to_string()).into()),
        }
    }

    pub fn axis(&self, key: &str) -> Option<&Axis> {
        self.axes.iter().find(|a| a.key == key)
    }
}

fn done(o: Outcome) -> CheckResult {
    Ok(Some(o.into()))
}

fn level(p: &Point, key: &'static str) -> Result<usize, ConfigError> {
    let n = p.int(key)?;
    if n < 1 {
        return Err(ConfigError::Invalid(format!("{key} must be at least 1, got {n}")));
    }
    Ok(n as usize)
}

fn bit(p: &Point, key: &'static str) -> Result<u8, ConfigError> {
    match p.int(key)? {
        0 => Ok(0),
        1 => Ok(1),
        x => Err(ConfigError::Invalid(format!("{key} must be 0 or 1, got {x}"))),
    }
}

fn trunc(ctx: &Ctx) -> Result<Truncation, ConfigError> {
    ctx.trunc.ok_or_else(|| ConfigError::Invalid("this identity needs --trunc".into()))
}

fn labels(p: &Point) -> Result<Labels, ConfigError> {
    Ok(Labels::new(p.int("p")?, p.int("pp")?, p.int("r")?, p.int("s")?))
}

fn default_expand(axes: &Axes, _: &Ctx) -> Result<Vec<Point>, ConfigError> {
    Ok(cartesian(axes))
}

fn values<'a>(axes: &'a Axes, key: &str) -> &'a [Val] {
    axes.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_slice()).unwrap_or(&[])
}

fn ints(axes: &Axes, key: &'static str) -> Result<Vec<i64>, ConfigError> {
    values(axes, key).iter().map(|v| Point::default().with(key, v.clone()).int(key)).collect()
}

fn rats(axes: &Axes, key: &'static str) -> Result<Vec<Exponent>, ConfigError> {
    values(axes, key).iter().map(|v| Point::default().with(key, v.clone()).rat(key)).collect()
}

// ---- q-Saalschütz family ----

fn check_gensum(p: &Point, _: &Ctx) -> CheckResult {
    let sp = SaalschutzParams::new(level(p, "N")?, bit(p, "sigma")?, p.int("ell")?, p.int("M")?, p.rat("L1")?, p.rat("L2")?);
    let Ok(sp) = sp else {
        return Ok(None);
    };
    if sp.m < 0 {
        return Ok(None);
    }
    done(Outcome::compare(gensum_lhs(&sp)?, gensum_rhs(&sp)?))
}

fn check_qs2(p: &Point, ctx: &Ctx) -> CheckResult {
    let cp = ClassicParams::new(p.int("L1")?, p.int("L2")?, p.int("M")?, p.int("ell")?);
    if qs2_exceptional(&cp) {
        if !ctx.include_exceptional {
            return Ok(None);
        }
        return done(Outcome::Skipped { sides: Some((qs2_lhs(&cp), qs2_rhs(&cp))) });
    }
    done(Outcome::compare(qs2_lhs(&cp), qs2_rhs(&cp)))
}

fn check_qcv(p: &Point, _: &Ctx) -> CheckResult {
    let cp = ClassicParams::new(p.int("L1")?, p.int("L2")?, 0, p.int("ell")?);
    done(Outcome::compare(qcv_lhs(&cp), qcv_rhs(&cp)))
}

const SEARS_KEYS: [&str; 7] = ["a", "b", "c", "d", "e", "f", "g"];

/// With `samples > 0`, draws that many balanced tuples (f follows from the
/// others); otherwise keeps the balanced points of the full product.
fn expand_sears(axes: &Axes, ctx: &Ctx) -> Result<Vec<Point>, ConfigError> {
    let sets: Vec<Vec<i64>> = SEARS_KEYS.iter().map(|k| ints(axes, k)).collect::<Result<_, _>>()?;
    let point = |t: [i64; 7]| {
        SEARS_KEYS.iter().zip(t).fold(Point::default(), |p, (k, v)| p.with(k, v))
    };
    if ctx.samples == 0 {
        return Ok(cartesian(axes)
            .into_iter()
            .filter(|p| {
                let v: Vec<i64> = SEARS_KEYS.iter().map(|k| p.int(k).unwrap_or(0)).collect();
                v[0] + v[1] == v[2] + v[3] + v[5]
            })
            .collect());
    }
    let f_set: BTreeSet<i64> = sets[5].iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut out = Vec::with_capacity(ctx.samples);
    let mut seen = BTreeSet::new();
    let mut attempts = 0usize;
    while out.len() < ctx.samples {
        attempts += 1;
        if attempts > 1000 * ctx.samples.max(1) {
            return Err(ConfigError::Invalid("could not draw enough distinct balanced Sears tuples from these sets".into()));
        }
        let pick = |i: usize, rng: &mut ChaCha8Rng| *sets[i].choose(rng).expect("nonempty set");
        let (a, b, c, d, e, g) = (pick(0, &mut rng), pick(1, &mut rng), pick(2, &mut rng), pick(3, &mut rng), pick(4, &mut rng), pick(6, &mut rng));
        let f = a + b - c - d;
        if f_set.contains(&f) && seen.insert([a, b, c, d, e, f, g]) {
            out.push(point([a, b, c, d, e, f, g]));
        }
    }
    Ok(out)
}

fn check_sears(p: &Point, _: &Ctx) -> CheckResult {
    let v: Vec<i64> = SEARS_KEYS.iter().map(|k| p.int(k)).collect::<Result<_, _>>()?;
    let sp = SearsParams::new(v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
    done(Outcome::compare(sears_lhs(&sp)?, sears_rhs(&sp)?))
}

// ---- Burge polynomials ----

fn sigma_ok(level: i64, sigma: i64) -> bool {
    sigma == 0 || (sigma == 1 && level % 2 == 0)
}

fn l_values(axes: &Axes, sigma: u8) -> Result<Vec<Exponent>, ConfigError> {
    Ok(rats(axes, "L")?
        .into_iter()
        .filter(|l| {
            let twice = *l * Exponent::from_integer(2);
            *l >= Exponent::from_integer(0) && twice.is_integer() && (twice.to_integer() + sigma as i64) % 2 == 0
        })
        .collect())
}

fn depths(axes: &Axes) -> Result<Vec<usize>, ConfigError> {
    ints(axes, "depth")?
        .into_iter()
        .map(|d| usize::try_from(d).map_err(|_| ConfigError::Invalid(format!("depth must be nonnegative, got {d}"))))
        .collect()
}

fn tree_err(e: CoreError) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

fn burge_point(l: Labels, n: i64, sigma: i64, m: i64, big_l: Exponent) -> Point {
    Point::default()
        .with("p", l.p)
        .with("pp", l.pp)
        .with("r", l.r)
        .with("s", l.s)
        .with("N", n)
        .with("sigma", sigma)
        .with("M", m)
        .with("L", big_l)
}

/// Nodes with a closed form at level `N` in the tree of the given depth.
fn expand_closed(axes: &Axes, _: &Ctx) -> Result<Vec<Point>, ConfigError> {
    let mut out = Vec::new();
    for depth in depths(axes)? {
        for n in ints(axes, "N")? {
            for sigma in ints(axes, "sigma")? {
                if n < 1 || !sigma_ok(n, sigma) {
                    continue;
                }
                let tree = build_tree(depth, n as usize, sigma as u8).map_err(tree_err)?;
                let mut seen = BTreeSet::new();
                for node in tree.iter().filter(|x| x.level() == n as usize && x.closed_form().is_some()) {
                    if !seen.insert(node.node_labels()) {
                        continue;
                    }
                    for m in ints(axes, "M")? {
                        for l in l_values(axes, sigma as u8)? {
                            out.push(burge_point(node.node_labels(), n, sigma, m, l));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_closed(p: &Point, _: &Ctx) -> CheckResult {
    let (lab, n, sigma, m, l) = (labels(p)?, level(p, "N")?, bit(p, "sigma")?, p.int("M")?, p.rat("L")?);
    let bp = BurgeParams::new(lab, n, sigma, Bounds::symmetric(m, l))?;
    done(Outcome::compare(burge_xn(&bp)?, closed_form(lab, n, sigma, m, l)?))
}

/// Level-1 children whose transforms make up the tree of the given depth.
fn expand_transform(axes: &Axes, _: &Ctx) -> Result<Vec<Point>, ConfigError> {
    let mut out = Vec::new();
    for depth in depths(axes)? {
        if depth == 0 {
            continue;
        }
        let tree = build_tree(depth - 1, 1, 0).map_err(tree_err)?;
        let mut seen = BTreeSet::new();
        for child in tree.iter().map(|x| x.node_labels()) {
            if !seen.insert(child) {
                continue;
            }
            for n in ints(axes, "N")? {
                for sigma in ints(axes, "sigma")? {
                    if n < 1 || !sigma_ok(n, sigma) {
                        continue;
                    }
                    for m in ints(axes, "M")? {
                        for l in l_values(axes, sigma as u8)? {
                            out.push(burge_point(child, n, sigma, m, l));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_transform(p: &Point, dir: Direction) -> CheckResult {
    let (child, n, sigma, m, l) = (labels(p)?, level(p, "N")?, bit(p, "sigma")?, p.int("M")?, p.rat("L")?);
    let b = Bounds::symmetric(m, l);
    let via = match dir {
        Direction::First => transform_traf1(child, n, sigma, m, l, Sufficiency::Require)?,
        Direction::Second => transform_traf2(child, n, sigma, m, l, Sufficiency::Require)?,
    };
    let parent = parent_labels(dir, child, n, &b)?;
    let direct = burge_xn(&BurgeParams::new(parent, n, sigma, b)?)?;
    let mut c: Checked = Outcome::compare(via, direct).into();
    c.extra = vec![("parent", Val::Name(parent.to_string()))];
    Ok(Some(c))
}

fn check_traf1(p: &Point, _: &Ctx) -> CheckResult {
    check_transform(p, Direction::First)
}

fn check_traf2(p: &Point, _: &Ctx) -> CheckResult {
    check_transform(p, Direction::Second)
}

fn check_symmetry(p: &Point, _: &Ctx) -> CheckResult {
    let l = labels(p)?;
    if l.p < 1 || l.pp <= l.p {
        return Ok(None);
    }
    let (m1, l1, m2, l2) = (p.int("M1")?, p.int("L1")?, p.int("M2")?, p.int("L2")?);
    let image = Labels::new(l.pp, l.p, l.s - (l1 - l2), l.r + (m1 - m2));
    done(Outcome::compare(burge_x(l, m1, l1, m2, l2), burge_x(image, l1, m1, l2, m2)))
}

fn check_config_limit(p: &Point, ctx: &Ctx) -> CheckResult {
    let d = trunc(ctx)?;
    let (lab, n, m12, l) = (labels(p)?, level(p, "N")?, p.int("M12")?, p.int("L")?);
    if lab.p < 1 || lab.pp <= lab.p || l < 0 {
        return Ok(None);
    }
    let (lhs, m2) = match config_limit_lhs(lab, n, m12, l, &d) {
        Err(CoreError::InvalidParams(_)) => return Ok(None),
        r => r?,
    };
    let rhs = config_limit_rhs(lab, n, m12, l)?.truncate(&d);
    let mut c: Checked = Outcome::compare(lhs, rhs).into();
    c.extra = vec![("M2_stable", Val::from(m2))];
    Ok(Some(c))
}

// ---- q-multinomials ----

fn check_tnew(p: &Point, _: &Ctx) -> CheckResult {
    let (n, l, ell) = (level(p, "N")?, p.int("L")?, p.int("ell")?);
    let nl = n as i64 * l;
    if l < 0 || ell.abs() > nl || (ell - nl) % 2 != 0 {
        return Ok(None);
    }
    let lhs = t_multinomial(&MultinomialQuery::new(n, l, Exponent::new(ell, 2), 0)?)?;
    done(Outcome::compare(lhs, tnew_rhs(n, l, ell, l.rem_euclid(2) as u8)?))
}

fn check_classical(p: &Point, _: &Ctx) -> CheckResult {
    let (n, l, a, idx) = (level(p, "N")?, p.int("L")?, p.rat("a")?, p.int("n")?);
    let Ok(q) = MultinomialQuery::new(n, l, a, usize::try_from(idx).unwrap_or(usize::MAX)) else {
        return Ok(None);
    };
    let lhs = QPoly::constant(t_multinomial(&q)?.coefficient_sum());
    done(Outcome::compare(lhs, QPoly::constant(classical_multinomial(n, l, a))))
}

fn check_difference(p: &Point, _: &Ctx) -> CheckResult {
    let (n, idx, l, ell) = (level(p, "N")?, p.int("n")?, p.int("L")?, p.int("ell")?);
    let Ok(idx) = usize::try_from(idx) else {
        return Ok(None);
    };
    let sides = match difference_sides(n, l, ell, idx) {
        Err(CoreError::InvalidParams(_)) => return Ok(None),
        r => r?,
    };
    let same = sides.f == sides.g;
    let mut c: Checked = Outcome::compare(sides.lhs, sides.rhs).into();
    c.extra = vec![("f_equals_g", Val::Name(same.to_string()))];
    Ok(Some(c))
}

// ---- truncated series ----

fn check_durfee(p: &Point, ctx: &Ctx) -> CheckResult {
    let (a, b) = durfee_sides(p.int("ell")?, &trunc(ctx)?)?;
    done(Outcome::compare(a, b))
}

fn check_limlm(p: &Point, ctx: &Ctx) -> CheckResult {
    let (n, sigma, ell) = (level(p, "N")?, bit(p, "sigma")?, p.int("ell")?);
    if (ell + sigma as i64 * n as i64) % 2 != 0 || !sigma_ok(n as i64, sigma as i64) {
        return Ok(None);
    }
    let (a, b) = limlm_sides(n, ell, sigma, &trunc(ctx)?)?;
    done(Outcome::compare(a, b))
}

fn check_bailey(p: &Point, ctx: &Ctx) -> CheckResult {
    let (n, sigma, ell, m) = (level(p, "N")?, bit(p, "sigma")?, p.int("ell")?, p.int_or_inf("M")?);
    if (ell + sigma as i64 * n as i64) % 2 != 0 || !sigma_ok(n as i64, sigma as i64) {
        return Ok(None);
    }
    let bq = BaileyPairQuery::new(n, ell, m, sigma, trunc(ctx)?)?;
    for l in 0..=bq.l_max() {
        let (g, gd) = (bq.gamma(l)?, bq.gamma_from_delta(l)?);
        if g != gd {
            let mut c: Checked = Outcome::compare(g, gd).into();
            c.extra = vec![("first_bad_L", Val::from(l))];
            return Ok(Some(c));
        }
    }
    let mut c: Checked = Outcome::Equal.into();
    c.extra = vec![("L_max", Val::from(bq.l_max()))];
    Ok(Some(c))
}

fn product_kind(name: &str) -> Result<ProductKind, ConfigError> {
    match name {
        "ising" => Ok(ProductKind::Ising),
        "rr" => Ok(ProductKind::RogersRamanujan),
        "slater" => Ok(ProductKind::Slater),
        other => Err(ConfigError::Invalid(format!("unknown product `{other}`"))),
    }
}

fn check_product(p: &Point, ctx: &Ctx) -> CheckResult {
    let which = product_kind(p.name("which")?)?;
    let d = trunc(ctx)?;
    done(Outcome::compare(sum_side(which, &d), product_side(which, &d)))
}

/// Spinon against fermionic form, and against the closed form when `ell = sigma N`.
fn check_string(p: &Point, ctx: &Ctx) -> CheckResult {
    let (n, ell, m, sigma) = (level(p, "N")?, p.int("ell")?, p.int("m")?, bit(p, "sigma")?);
    if sigma == 1 && ell != n as i64 {
        return Ok(None);
    }
    let Ok(sq) = StringFunctionQuery::new(n, m, ell, sigma, trunc(ctx)?) else {
        return Ok(None);
    };
    let spinon = string_spinon(&sq);
    let fermionic = string_fermionic(&sq)?;
    let extra = vec![("prefactor_ratio", Val::Num(string_prefactor_ratio(&sq)))];
    let outcome = if spinon != fermionic {
        Outcome::compare(spinon, fermionic)
    } else if ell == sigma as i64 * n as i64 {
        Outcome::compare(fermionic, string_lp(&sq)?)
    } else {
        Outcome::Equal
    };
    Ok(Some(Checked { outcome, extra }))
}

// ---- oracles ----

fn check_partitions(_: &Point, ctx: &Ctx) -> CheckResult {
    let d = trunc(ctx)?;
    let cap = d.degree_cap().floor().to_integer().max(0) as usize;
    let dp = partition_numbers(cap);
    let oracle = QPoly::from_terms(dp.into_iter().enumerate().map(|(k, c)| (Exponent::from_integer(k as i64), c)));
    done(Outcome::compare(euler_inverse_truncated(&d), oracle))
}

/// Admissible solutions of every source vector in `[0, vmax]^{N-1}` and every
/// offset in `(1/2N)Z / Z`, against a scan of the box `0 <= n_k <= N(|v|_1 + 1)`.
fn check_lattice(p: &Point, _: &Ctx) -> CheckResult {
    let (n, vmax) = (level(p, "N")?, p.int("vmax")?);
    if vmax < 0 {
        return Ok(None);
    }
    let c = CartanData::a_type(n)?;
    let (mut fast, mut scan) = (0i64, 0i64);
    let mut differ = false;
    for v in box_points(c.rank(), 0, vmax) {
        for t in 0..2 * n as i64 {
            let offset = Exponent::new(t, 2 * n as i64);
            let got: Vec<Vec<i64>> = enumerate_admissible(&c, &v, offset, true, None)?.into_iter().map(|s| s.n_vec).collect();
            let l1: i64 = v.iter().sum();
            let want: Vec<Vec<i64>> = box_points(c.rank(), 0, n as i64 * (l1 + 1))
                .into_iter()
                .filter(|nv| restriction_holds(&c, nv, offset))
                .filter(|nv| {
                    let rhs: Vec<i64> = v.iter().zip(nv).map(|(a, b)| a - 2 * b).collect();
                    c.cinv_apply(&rhs).iter().all(|x| x.is_integer() && *x >= Exponent::from_integer(0))
                })
                .collect();
            fast += got.len() as i64;
            scan += want.len() as i64;
            differ |= got != want;
        }
    }
    let mut c: Checked = if differ {
        Outcome::Mismatch { lhs: QPoly::constant(fast), rhs: QPoly::constant(scan) }.into()
    } else {
        Outcome::Equal.into()
    };
    c.extra = vec![("solutions", Val::from(fast))];
    Ok(Some(c))
}

const LEVEL_AXES: [Axis; 2] = [int("N", "1..3"), int("sigma", "0..1")];

pub static FAMILIES: &[Family] = &[
    Family {
        id: "gensum",
        about: "level-N q-Saalschütz sum with Cartan-lattice inner sums",
        axes: &[int("N", "1..4"), int("sigma", "0..1"), int("ell", "-4..4"), int("M", "0..6"), rat("L1", "0..5:1/2"), rat("L2", "0..5:1/2")],
        default_trunc: None,
        expand: default_expand,
        check: check_gensum,
    },
    Family {
        id: "qs2",
        about: "classic q-Saalschütz sum in binomial form",
        axes: &[int("L1", "-6..6"), int("L2", "-6..6"), int("M", "-6..6"), int("ell", "-6..6")],
        default_trunc: None,
        expand: default_expand,
        check: check_qs2,
    },
    Family {
        id: "qcv",
        about: "q-Chu-Vandermonde sum",
        axes: &[int("L1", "0..6"), int("L2", "0..6"), int("ell", "-6..6")],
        default_trunc: None,
        expand: default_expand,
        check: check_qcv,
    },
    Family {
        id: "sears",
        about: "Sears transform of a balanced sum (sampled with --samples, --seed)",
        axes: &[int("a", "-6..8"), int("b", "-6..8"), int("c", "-6..8"), int("d", "-6..8"), int("e", "-6..8"), int("f", "-6..8"), int("g", "-6..8")],
        default_trunc: None,
        expand: expand_sears,
        check: check_sears,
    },
    Family {
        id: "burge.closed",
        about: "tree nodes against their closed forms at symmetric bounds",
        axes: &[int("depth", "3"), LEVEL_AXES[0], LEVEL_AXES[1], int("M", "0..5"), rat("L", "0..5:1/2")],
        default_trunc: None,
        expand: expand_closed,
        check: check_closed,
    },
    Family {
        id: "burge.traf1",
        about: "first transform of each tree node against the direct sum",
        axes: &[int("depth", "3"), LEVEL_AXES[0], LEVEL_AXES[1], int("M", "0..5"), rat("L", "0..5:1/2")],
        default_trunc: None,
        expand: expand_transform,
        check: check_traf1,
    },
    Family {
        id: "burge.traf2",
        about: "second transform of each tree node against the direct sum",
        axes: &[int("depth", "3"), LEVEL_AXES[0], LEVEL_AXES[1], int("M", "0..5"), rat("L", "0..5:1/2")],
        default_trunc: None,
        expand: expand_transform,
        check: check_traf2,
    },
    Family {
        id: "burge.symmetry",
        about: "level-1 duality (p,p',r,s) <-> (p',p,s-L12,r+M12)",
        axes: &[int("p", "1..3"), int("pp", "2..5"), int("r", "-2..3"), int("s", "-2..3"), int("M1", "0..2"), int("L1", "0..2"), int("M2", "0..2"), int("L2", "0..2")],
        default_trunc: None,
        expand: default_expand,
        check: check_symmetry,
    },
    Family {
        id: "burge.config_limit",
        about: "(q)_L-normalized polynomials against bilateral q-multinomial sums as M2 grows",
        axes: &[int("p", "2..3"), int("pp", "3..8"), int("r", "1"), int("s", "1..2"), int("N", "1..2"), int("M12", "-1..1"), int("L", "0..4")],
        default_trunc: Some(10),
        expand: default_expand,
        check: check_config_limit,
    },
    Family {
        id: "multinom.tnew",
        about: "T_0(L, ell/2) as a Cartan-lattice sum",
        axes: &[int("N", "2..4"), int("L", "0..8"), int("ell", "-32..32")],
        default_trunc: None,
        expand: default_expand,
        check: check_tnew,
    },
    Family {
        id: "multinom.classical",
        about: "q = 1 values of T_n(L, a) against classical multinomials",
        axes: &[int("N", "1..4"), int("L", "0..6"), rat("a", "-12..12:1/2"), int("n", "0..3")],
        default_trunc: None,
        expand: default_expand,
        check: check_classical,
    },
    Family {
        id: "multinom.difference",
        about: "difference identity for 1 <= n < N-1",
        axes: &[int("N", "3..4"), int("n", "1..2"), int("L", "0..6"), int("ell", "-26..26")],
        default_trunc: None,
        expand: default_expand,
        check: check_difference,
    },
    Family {
        id: "series.durfee",
        about: "Durfee rectangle identity",
        axes: &[int("ell", "0..3")],
        default_trunc: Some(25),
        expand: default_expand,
        check: check_durfee,
    },
    Family {
        id: "series.limlm",
        about: "infinite limit of the level-N q-Saalschütz sum",
        axes: &[LEVEL_AXES[0], LEVEL_AXES[1], int("ell", "0..4")],
        default_trunc: Some(25),
        expand: default_expand,
        check: check_limlm,
    },
    Family {
        id: "series.bailey",
        about: "level-N conjugate Bailey pairs",
        axes: &[LEVEL_AXES[0], LEVEL_AXES[1], int("ell", "0..2"), Axis { key: "M", kind: Kind::IntOrInf, default: "3,5,inf" }],
        default_trunc: Some(25),
        expand: default_expand,
        check: check_bailey,
    },
    Family {
        id: "series.product",
        about: "Ising, Rogers-Ramanujan and Slater sum sides against their products",
        axes: &[Axis { key: "which", kind: Kind::Name(&["ising", "rr", "slater"]), default: "ising,rr,slater" }],
        default_trunc: Some(30),
        expand: default_expand,
        check: check_product,
    },
    Family {
        id: "series.string",
        about: "string functions: spinon, fermionic and closed forms",
        axes: &[LEVEL_AXES[0], int("ell", "0..3"), int("m", "-4..4"), int("sigma", "0..1")],
        default_trunc: Some(20),
        expand: default_expand,
        check: check_string,
    },
    Family {
        id: "oracle.partitions",
        about: "1/(q)_inf against the partition-number recurrence",
        axes: &[],
        default_trunc: Some(50),
        expand: default_expand,
        check: check_partitions,
    },
    Family {
        id: "oracle.lattice",
        about: "admissible-solution enumeration against a brute-force box scan",
        axes: &[int("N", "1..4"), int("vmax", "3")],
        default_trunc: None,
        expand: default_expand,
        check: check_lattice,
    },
];

pub fn find(id: &str) -> Result<&'static Family, ConfigError> {
    FAMILIES.iter().find(|f| f.id == id).ok_or_else(|| ConfigError::UnknownIdentity(id.to_string()))
}

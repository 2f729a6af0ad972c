//! Burge polynomials `X_{r,s}^{(p,p')}` and their level-N generalization,
//! the Burge transforms and their level-N versions, sufficiency predicates,
//! the Burge tree and the closed forms attached to its nodes.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::lattice::{for_each_admissible, CartanData};
use crate::qbinom::{binom, binom_exact, binom_product};
use crate::qpoly::{Exponent, QPoly};
use crate::saalschutz::end_vector;

fn int(x: i64) -> Exponent {
    Exponent::from_integer(x)
}

fn half(x: i64) -> Exponent {
    Exponent::new(x, 2)
}

fn as_int(x: Exponent, what: &str) -> Result<i64> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        invalid(format!("{what} = {x} is not an integer"))
    }
}

/// The label tuple `(p, p', r, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labels {
    pub p: i64,
    pub pp: i64,
    pub r: i64,
    pub s: i64,
}

impl Labels {
    pub const fn new(p: i64, pp: i64, r: i64, s: i64) -> Self {
        Labels { p, pp, r, s }
    }
}

impl fmt::Display for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.pp, self.r, self.s)
    }
}

/// The bounds `(M1, L1, M2, L2)`; `L1`, `L2` may be half-integers at level N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub m1: i64,
    pub l1: Exponent,
    pub m2: i64,
    pub l2: Exponent,
}

impl Bounds {
    pub fn new(m1: i64, l1: Exponent, m2: i64, l2: Exponent) -> Self {
        Bounds { m1, l1, m2, l2 }
    }

    pub fn ints(m1: i64, l1: i64, m2: i64, l2: i64) -> Self {
        Bounds::new(m1, int(l1), m2, int(l2))
    }

    /// `(M, L, M, L)`.
    pub fn symmetric(m: i64, l: Exponent) -> Self {
        Bounds::new(m, l, m, l)
    }

    pub fn m12(&self) -> i64 {
        self.m1 - self.m2
    }

    pub fn l12(&self) -> Exponent {
        self.l1 - self.l2
    }

    pub fn is_symmetric(&self) -> bool {
        self.m1 == self.m2 && self.l1 == self.l2
    }
}

/// A Burge polynomial instance `X_{r,s,sigma}^{(p,p'),N}(M1,L1,M2,L2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BurgeParams {
    pub labels: Labels,
    pub level: usize,
    pub sigma: u8,
    pub bounds: Bounds,
}

impl BurgeParams {
    pub fn new(labels: Labels, level: usize, sigma: u8, bounds: Bounds) -> Result<Self> {
        let bp = BurgeParams { labels, level, sigma, bounds };
        bp.validate()?;
        Ok(bp)
    }

    /// Level-1 instance; `sigma` is the parity of `M12`.
    pub fn level_one(labels: Labels, m1: i64, l1: i64, m2: i64, l2: i64) -> Self {
        BurgeParams {
            labels,
            level: 1,
            sigma: (m1 - m2).rem_euclid(2) as u8,
            bounds: Bounds::ints(m1, l1, m2, l2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let Labels { p, pp, r, s } = self.labels;
        let n = self.level as i64;
        if n < 1 {
            return invalid("N must be at least 1");
        }
        if p < 1 || pp < 1 {
            return invalid("p and p' must be positive");
        }
        if self.sigma > 1 {
            return invalid("sigma must be 0 or 1");
        }
        if (pp - p) % n != 0 || (r - s) % n != 0 {
            return invalid("(p'-p)/N and (r-s)/N must be integers");
        }
        let m12 = self.bounds.m12();
        if (m12 + self.sigma as i64 * n) % 2 != 0 {
            return invalid("M12 + sigma*N must be even");
        }
        let shift = half(m12 + self.sigma as i64);
        if !(self.bounds.l1 + shift).is_integer() || !(self.bounds.l2 + shift).is_integer() {
            return invalid("L1 + (M12+sigma)/2 and L2 + (M12+sigma)/2 must be integers");
        }
        Ok(())
    }
}

/// Range of `j` where both bottom entries `M1+pj+t` and `M2-pj-t` are
/// nonnegative for `t = 0` or `t = r`.
fn j_support(p: i64, r: i64, m1: i64, m2: i64) -> (i64, i64) {
    let lo = Integer::div_ceil(&-m1, &p).min(Integer::div_ceil(&(-m1 - r), &p));
    let hi = Integer::div_floor(&m2, &p).max(Integer::div_floor(&(m2 - r), &p));
    (lo, hi)
}

/// The level-1 polynomial by its bilateral j-sum.
pub fn burge_x(labels: Labels, m1: i64, l1: i64, m2: i64, l2: i64) -> QPoly {
    let Labels { p, pp, r, s } = labels;
    let m12 = m1 - m2;
    let (lo, hi) = j_support(p, r, m1, m2);
    let mut acc = QPoly::zero();
    for j in lo..=hi {
        let a = binom(m1 + l1 - (pp - p) * j, m1 + p * j);
        if !a.is_zero() {
            let b = binom(m2 + l2 + (pp - p) * j, m2 - p * j);
            if !b.is_zero() {
                acc += (&a * &b).shift(int(j * (p * pp * j + pp * (m12 + r) - p * s)));
            }
        }
        let c = binom(m1 + l1 - (pp - p) * j + r - s, m1 + p * j + r);
        if !c.is_zero() {
            let d = binom(m2 + l2 + (pp - p) * j - r + s, m2 - p * j - r);
            if !d.is_zero() {
                acc -= (&c * &d).shift(int((p * j + m12 + r) * (pp * j + s)));
            }
        }
    }
    acc
}

/// `X(p,p',r,s; M1,L1,M2,L2) = X(p',p, s-L12, r+M12; L1,M1,L2,M2)`.
pub fn burge_symmetry_check(labels: Labels, m1: i64, l1: i64, m2: i64, l2: i64) -> bool {
    let Labels { p, pp, r, s } = labels;
    let image = Labels::new(pp, p, s - (l1 - l2), r + (m1 - m2));
    burge_x(labels, m1, l1, m2, l2) == burge_x(image, l1, m1, l2, m2)
}

static SKIPPED_TERMS: AtomicU64 = AtomicU64::new(0);

/// Number of `(j, eta)` terms of the level-N sum skipped so far because a
/// binomial entry came out non-integral.
pub fn skipped_term_count() -> u64 {
    SKIPPED_TERMS.load(Ordering::Relaxed)
}

/// The level-N polynomial. At `N = 1` it coincides with [`burge_x`].
pub fn burge_xn(bp: &BurgeParams) -> Result<QPoly> {
    bp.validate()?;
    let Labels { p, pp, r, s } = bp.labels;
    let Bounds { m1, l1, m2, l2 } = bp.bounds;
    let n_lvl = bp.level as i64;
    if n_lvl == 1 {
        return Ok(burge_x(bp.labels, m1, as_int(l1, "L1")?, m2, as_int(l2, "L2")?));
    }
    let c = CartanData::a_type(bp.level)?;
    let m12 = m1 - m2;
    let sg = bp.sigma as i64;
    let (lo, hi) = j_support(p, r, m1, m2);
    let mut acc = QPoly::zero();
    for j in lo..=hi {
        for positive in [true, false] {
            let t = if positive { 0 } else { r };
            let a = m1 + p * j + t;
            let b = m2 - p * j - t;
            if a < 0 || b < 0 {
                continue;
            }
            let (pre, sh) = if positive {
                (
                    Exponent::new(j * (p * pp * j + pp * (m12 + r) - p * s), n_lvl),
                    Exponent::new((pp - p) * j, n_lvl),
                )
            } else {
                (
                    Exponent::new((p * j + m12 + r) * (pp * j + s), n_lvl),
                    Exponent::new((pp - p) * j - r + s, n_lvl),
                )
            };
            let v = end_vector(c.rank(), a, b);
            let offset = Exponent::new(m12 + 2 * p * j + 2 * t + sg * n_lvl, 2 * n_lvl);
            let mut part = QPoly::zero();
            for_each_admissible(&c, &v, offset, |eta, mu| {
                let top1 = int(m1) + l1 - sh - half(b - mu[0]);
                let top2 = int(m2) + l2 + sh - half(a - mu[mu.len() - 1]);
                if !top1.is_integer() || !top2.is_integer() {
                    SKIPPED_TERMS.fetch_add(1, Ordering::Relaxed);
                    return;
                }
                let x = binom(top1.to_integer(), a);
                if x.is_zero() {
                    return;
                }
                let y = binom(top2.to_integer(), b);
                if y.is_zero() {
                    return;
                }
                part += (&(&x * &y) * &binom_product(mu, eta)).shift(c.form(eta, eta));
            });
            if part.is_zero() {
                continue;
            }
            let part = part.shift(pre);
            if positive {
                acc += part;
            } else {
                acc -= part;
            }
        }
    }
    Ok(acc)
}

/// Which of the two transforms: the first keeps `p`
/// (`(p,p',r,s) -> (p, p+Np', r, r+Ns)`), the second swaps roles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    First,
    Second,
}

/// Whether to gate a transform on its sufficiency predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sufficiency {
    Require,
    Ignore,
}

/// Labels of the parent produced from `child` by the transform.
pub fn parent_labels(dir: Direction, child: Labels, level: usize, bounds: &Bounds) -> Result<Labels> {
    let n = level as i64;
    let Labels { p, pp, r, s } = child;
    Ok(match dir {
        Direction::First => Labels::new(p, p + n * pp, r, r + n * s),
        Direction::Second => {
            let m12 = bounds.m12();
            let l12 = as_int(bounds.l12(), "L12")?;
            Labels::new(pp, n * p + pp, s - m12, n * (r + l12 + m12) + s - m12)
        }
    })
}

fn floor_div(a: Exponent, b: Exponent) -> i64 {
    (a / b).floor().to_integer()
}

fn sym_pair(c: Labels, n: i64, l: Exponent) -> bool {
    let Labels { p, pp, r, s } = c;
    let den_left = int(pp) + Exponent::new(p, n);
    floor_div(l + int(s) + Exponent::new(r, n), den_left) <= floor_div(l - int(r) + int(s), int(pp - p))
}

/// `floor((L+s+r/N)/(p'+p/N)) <= floor((L-r+s)/(p'-p))` together with its
/// `r = s = 0` version. Needs `p' > p`.
pub fn sufficiency_sym(child: Labels, level: usize, l: Exponent) -> Result<bool> {
    if child.pp <= child.p {
        return invalid("sufficiency predicates need p' > p");
    }
    let n = level as i64;
    let zero = Labels::new(child.p, child.pp, 0, 0);
    Ok(sym_pair(child, n, l) && sym_pair(zero, n, l))
}

fn gen_pair(c: Labels, n: i64, m12: i64, l1: Exponent, l2: Exponent, swapped: bool) -> bool {
    let Labels { p, pp, r, s } = c;
    let den_left = int(pp) + Exponent::new(p, n);
    let corr = Exponent::new(m12 * (n - 1), 2 * n);
    let (left1, left2) = if swapped { (l2, l1) } else { (l1, l2) };
    let first = floor_div(left1 + if swapped { -corr } else { corr } - int(s) - Exponent::new(r, n), den_left)
        <= floor_div(l1 + int(m12 + r - s), int(pp - p));
    let second = floor_div(left2 + if swapped { corr } else { -corr } + int(s) + Exponent::new(r, n), den_left)
        <= floor_div(l2 - int(m12 + r - s), int(pp - p));
    first && second
}

/// Predicate for the first transform with general bounds (and its `r = s = 0` version).
pub fn sufficiency_first(child: Labels, level: usize, bounds: &Bounds) -> Result<bool> {
    general_sufficiency(child, level, bounds, false)
}

/// Predicate for the second transform with general bounds (and its `r = s = 0` version).
pub fn sufficiency_second(child: Labels, level: usize, bounds: &Bounds) -> Result<bool> {
    general_sufficiency(child, level, bounds, true)
}

fn general_sufficiency(child: Labels, level: usize, b: &Bounds, swapped: bool) -> Result<bool> {
    if child.pp <= child.p {
        return invalid("sufficiency predicates need p' > p");
    }
    let n = level as i64;
    let zero = Labels::new(child.p, child.pp, 0, 0);
    Ok(gen_pair(child, n, b.m12(), b.l1, b.l2, swapped) && gen_pair(zero, n, b.m12(), b.l1, b.l2, swapped))
}

/// The predicate that guards the given transform at the given bounds.
/// Symmetric bounds at level 1 need nothing.
pub fn transform_is_sufficient(dir: Direction, child: Labels, level: usize, bounds: &Bounds) -> Result<bool> {
    if bounds.is_symmetric() {
        if level == 1 {
            return Ok(true);
        }
        return sufficiency_sym(child, level, bounds.l1);
    }
    match dir {
        Direction::First => sufficiency_first(child, level, bounds),
        Direction::Second => sufficiency_second(child, level, bounds),
    }
}

/// Right-hand side of a (level-N) Burge transform applied to a level-1 child.
///
/// `child_eval(M1, L1, M2, L2)` evaluates the child polynomial. The i-sum runs
/// over `ceil(-M12/2) <= i <= M2`: above `M2` the prefactor vanishes, below the
/// lower end the child has `M1+M2 < 0` (first) or `L1+L2 < 0` (second), and a
/// level-1 polynomial vanishes in both cases.
pub fn transform<F>(
    dir: Direction,
    child: Labels,
    level: usize,
    sigma: u8,
    bounds: &Bounds,
    policy: Sufficiency,
    mut child_eval: F,
) -> Result<QPoly>
where
    F: FnMut(i64, i64, i64, i64) -> Result<QPoly>,
{
    let parent = parent_labels(dir, child, level, bounds)?;
    BurgeParams::new(parent, level, sigma, *bounds)?;
    if policy == Sufficiency::Require && !transform_is_sufficient(dir, child, level, bounds).unwrap_or(false) {
        return Err(Error::SufficiencyViolated);
    }
    let c = CartanData::a_type(level)?;
    let n_lvl = level as i64;
    let Bounds { m1, l1, m2, l2 } = *bounds;
    let m12 = m1 - m2;
    let lsum = as_int(l1 + l2, "L1 + L2")?;
    let mut acc = QPoly::zero();
    for i in Integer::div_ceil(&-m12, &2)..=m2 {
        let pre = binom(lsum + m2 - i, m2 - i);
        if pre.is_zero() {
            continue;
        }
        let v = end_vector(c.rank(), 2 * i + m12, 0);
        let offset = Exponent::new(2 * i + m12 + sigma as i64 * n_lvl, 2 * n_lvl);
        let mut sols = Vec::new();
        for_each_admissible(&c, &v, offset, |n, m| sols.push((n.to_vec(), m.to_vec())));
        let mut inner = QPoly::zero();
        for (n, m) in sols {
            let hm = half(m.first().copied().unwrap_or(0));
            let a = as_int(l1 - int(i) + hm, "child bound")?;
            let b = as_int(l2 - int(m12 + i) + hm, "child bound")?;
            let x = match dir {
                Direction::First => child_eval(i + m12, a, i, b)?,
                Direction::Second => child_eval(a, i + m12, b, i)?,
            };
            if x.is_zero() {
                continue;
            }
            inner += (&x * &binom_product(&m, &n)).shift(c.form(&n, &n));
        }
        if !inner.is_zero() {
            acc += (&pre * &inner).shift(Exponent::new(i * (i + m12), n_lvl));
        }
    }
    Ok(acc)
}

fn burge_child(labels: Labels) -> impl FnMut(i64, i64, i64, i64) -> Result<QPoly> {
    move |m1, l1, m2, l2| Ok(burge_x(labels, m1, l1, m2, l2))
}

/// Level-1 transform `X_{r,r+s}^{(p,p+p')}` from `X_{r,s}^{(p,p')}`.
pub fn transform_bt(child: Labels, bounds: &Bounds, policy: Sufficiency) -> Result<QPoly> {
    let sigma = bounds.m12().rem_euclid(2) as u8;
    transform(Direction::First, child, 1, sigma, bounds, policy, burge_child(child))
}

/// Level-1 transform `X_{s-M12,r+s+L12}^{(p',p+p')}` from `X_{r,s}^{(p,p')}`.
pub fn transform_bt2(child: Labels, bounds: &Bounds, policy: Sufficiency) -> Result<QPoly> {
    let sigma = bounds.m12().rem_euclid(2) as u8;
    transform(Direction::Second, child, 1, sigma, bounds, policy, burge_child(child))
}

/// Level-N first transform with general bounds.
pub fn transform_burgetrafo_n(
    child: Labels,
    level: usize,
    sigma: u8,
    bounds: &Bounds,
    policy: Sufficiency,
) -> Result<QPoly> {
    transform(Direction::First, child, level, sigma, bounds, policy, burge_child(child))
}

/// Level-N second transform with general bounds.
pub fn transform_trafo(child: Labels, level: usize, sigma: u8, bounds: &Bounds, policy: Sufficiency) -> Result<QPoly> {
    transform(Direction::Second, child, level, sigma, bounds, policy, burge_child(child))
}

/// Level-N first transform at symmetric bounds `(M, L, M, L)`.
pub fn transform_traf1(child: Labels, level: usize, sigma: u8, m: i64, l: Exponent, policy: Sufficiency) -> Result<QPoly> {
    transform_burgetrafo_n(child, level, sigma, &Bounds::symmetric(m, l), policy)
}

/// Level-N second transform at symmetric bounds `(M, L, M, L)`.
pub fn transform_traf2(child: Labels, level: usize, sigma: u8, m: i64, l: Exponent, policy: Sufficiency) -> Result<QPoly> {
    transform_trafo(child, level, sigma, &Bounds::symmetric(m, l), policy)
}

/// Nodes with a known explicit sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClosedForm {
    /// `X_{0,1}^{(1,2)}(M,L) = delta_{L,0}`.
    Initial,
    /// `X_{0,1}^{(1,3)}`.
    Nn,
    /// `X_{1,1}^{(2,3)}`.
    Euler,
    /// `X_{1,1}^{(3,4)}`.
    Ising,
    /// `X_{1,2}^{(2,5)}`.
    RogersRamanujan,
    /// `X_{0,N,sigma}^{(1,2N+1),N}`.
    Tadpole,
    /// `X_{1,1,sigma}^{(2,N+2),N}`.
    EulerLevelN,
    /// `X_{1,1,sigma}^{(3,N+3),N}`.
    ALevelN,
    /// `X_{1,N+1,sigma}^{(2,3N+2),N}` for `N >= 3`.
    RogersRamanujanLevelN,
    /// `X_{1,3,sigma}^{(2,8),2}`.
    SlaterLevel2,
}

/// The closed form attached to labels at the given level, if any.
pub fn recognize(labels: Labels, level: usize) -> Option<ClosedForm> {
    let n = level as i64;
    let Labels { p, pp, r, s } = labels;
    if n == 1 {
        return match (p, pp, r, s) {
            (1, 2, 0, 1) => Some(ClosedForm::Initial),
            (1, 3, 0, 1) => Some(ClosedForm::Nn),
            (2, 3, 1, 1) => Some(ClosedForm::Euler),
            (3, 4, 1, 1) => Some(ClosedForm::Ising),
            (2, 5, 1, 2) => Some(ClosedForm::RogersRamanujan),
            _ => None,
        };
    }
    if labels == Labels::new(1, 2 * n + 1, 0, n) {
        Some(ClosedForm::Tadpole)
    } else if labels == Labels::new(2, n + 2, 1, 1) {
        Some(ClosedForm::EulerLevelN)
    } else if labels == Labels::new(3, n + 3, 1, 1) {
        Some(ClosedForm::ALevelN)
    } else if n == 2 && labels == Labels::new(2, 8, 1, 3) {
        Some(ClosedForm::SlaterLevel2)
    } else if labels == Labels::new(2, 3 * n + 2, 1, n + 1) {
        Some(ClosedForm::RogersRamanujanLevelN)
    } else {
        None
    }
}

/// Explicit value of a recognized node at symmetric bounds `(M, L, M, L)`.
pub fn closed_form(labels: Labels, level: usize, sigma: u8, m: i64, l: Exponent) -> Result<QPoly> {
    let form = recognize(labels, level).ok_or_else(|| Error::UnknownClosedForm(format!("{labels} at level {level}")))?;
    evaluate_closed_form(form, level, sigma, m, l)
}

/// Evaluates one of the explicit sums.
pub fn evaluate_closed_form(form: ClosedForm, level: usize, sigma: u8, m: i64, l: Exponent) -> Result<QPoly> {
    let n = level as i64;
    if sigma > 1 || (sigma == 1 && n % 2 == 1) {
        return invalid("sigma = 1 needs an even level");
    }
    if !(l + half(sigma as i64)).is_integer() || l < Exponent::zero() || m < 0 {
        return invalid("need M >= 0, L >= 0 and L + sigma/2 integral");
    }
    let two_l = (l * int(2)).to_integer();
    match form {
        ClosedForm::Initial => Ok(if l.is_zero() { QPoly::one() } else { QPoly::zero() }),
        ClosedForm::Nn => {
            let li = as_int(l, "L")?;
            Ok(binom(li + m, 2 * li).shift(int(li * li)))
        }
        ClosedForm::Euler => Ok(binom(two_l + m, two_l)),
        ClosedForm::EulerLevelN => Ok(if sigma == 0 { binom(two_l + m, two_l) } else { QPoly::zero() }),
        ClosedForm::Ising => {
            let li = as_int(l, "L")?;
            let mut acc = QPoly::zero();
            for k in (0..=li).step_by(2) {
                let t = binom(two_l + m - k / 2, two_l) * binom(li, k);
                acc += t.shift(half(k * k));
            }
            Ok(acc)
        }
        ClosedForm::RogersRamanujan => {
            let li = as_int(l, "L")?;
            let mut acc = QPoly::zero();
            for k in 0..=li {
                acc += (binom(two_l + m - k, two_l) * binom(two_l - k, k)).shift(int(k * k));
            }
            Ok(acc)
        }
        ClosedForm::Tadpole => tadpole_sum(level, sigma, m, l),
        ClosedForm::ALevelN => a_level_sum(level, sigma, m, l),
        ClosedForm::SlaterLevel2 => {
            let mut acc = QPoly::zero();
            for i in 0..=m {
                for k in 0..=i {
                    if (k + i + sigma as i64) % 2 != 0 {
                        continue;
                    }
                    let t = binom(two_l + m - i, two_l) * binom(i, k) * binom(two_l - k, i);
                    acc += t.shift(half(i * i + k * k));
                }
            }
            Ok(acc)
        }
        ClosedForm::RogersRamanujanLevelN => {
            let c = CartanData::a_type(level)?;
            let mut acc = QPoly::zero();
            for i in 0..=m {
                let pre = binom(two_l + m - i, two_l);
                let v = end_vector(c.rank(), 2 * i, 0);
                let offset = Exponent::new(2 * i + sigma as i64 * n, 2 * n);
                let mut inner = QPoly::zero();
                for_each_admissible(&c, &v, offset, |nv, mv| {
                    let b = binom(two_l - i + mv[0], i);
                    if !b.is_zero() {
                        inner += (&b * &binom_product(mv, nv)).shift(c.form(nv, nv));
                    }
                });
                acc += (&pre * &inner).shift(Exponent::new(i * i, n));
            }
            Ok(acc)
        }
    }
}

/// Calls `f(m, n)` for all `0 <= m <= bound` with `n = (v - C m)/2` integral and
/// nonnegative, where `C` is the Cartan-type matrix of `cart`.
fn for_each_m_system<F: FnMut(&[i64], &[i64])>(cart: &CartanData, v: &[i64], bound: &[i64], mut f: F) {
    let r = cart.rank();
    let mut m = vec![0i64; r];
    loop {
        let cm = cart.c_apply(&m);
        let twice_n: Vec<i64> = v.iter().zip(&cm).map(|(a, b)| a - b).collect();
        if twice_n.iter().all(|x| *x >= 0 && x % 2 == 0) {
            let n: Vec<i64> = twice_n.iter().map(|x| x / 2).collect();
            f(&m, &n);
        }
        let mut k = 0;
        loop {
            if k == r {
                return;
            }
            if m[k] < bound[k] {
                m[k] += 1;
                break;
            }
            m[k] = 0;
            k += 1;
        }
    }
}

/// Parity rule shared by the tadpole and A_N sums: at odd level every entry is
/// even; at even level entries at 0-based positions `first_sigma, first_sigma+2, ...`
/// are congruent to sigma and the others are even.
fn parity_ok(m: &[i64], level: i64, sigma: i64, first_sigma: usize) -> bool {
    m.iter().enumerate().all(|(k, x)| {
        if level % 2 == 1 {
            x % 2 == 0
        } else if k % 2 == first_sigma {
            (x - sigma).rem_euclid(2) == 0
        } else {
            x % 2 == 0
        }
    })
}

fn tadpole_sum(level: usize, sigma: u8, m_cap: i64, l: Exponent) -> Result<QPoly> {
    let t = CartanData::tadpole(level)?;
    let n = level as i64;
    let two_l = (l * int(2)).to_integer();
    let r = t.rank();
    let bound: Vec<i64> = (0..r).map(|j| two_l * (n - 1 - j as i64)).collect();
    let v = end_vector(r, two_l, 0);
    let mut acc = QPoly::zero();
    let mut err = None;
    for_each_m_system(&t, &v, &bound, |m, nv| {
        if !parity_ok(m, n, sigma as i64, 0) {
            return;
        }
        let m1 = m.first().copied().unwrap_or(0);
        let top = l + int(m_cap) - half(m1);
        let b = match binom_exact(top, int(two_l)) {
            Ok(b) => b,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        if b.is_zero() {
            return;
        }
        let tm: i64 = m.iter().zip(t.c_apply(m)).map(|(a, b)| a * b).sum();
        acc += (&b * &binom_product(nv, m)).shift(l * l + Exponent::new(tm, 4));
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

fn a_level_sum(level: usize, sigma: u8, m_cap: i64, l: Exponent) -> Result<QPoly> {
    // rank N, i.e. A_N
    let c = CartanData::a_type(level + 1)?;
    let n = level as i64;
    let two_l = (l * int(2)).to_integer();
    let r = c.rank();
    let bound = vec![two_l; r];
    let v = end_vector(r, two_l, 0);
    let mut acc = QPoly::zero();
    for_each_m_system(&c, &v, &bound, |m, nv| {
        if !parity_ok(m, n, sigma as i64, 1) {
            return;
        }
        let top = 2 * two_l + 2 * m_cap - m[0];
        if top % 2 != 0 {
            return;
        }
        let b = binom(top / 2, two_l);
        if b.is_zero() {
            return;
        }
        let cm: i64 = m.iter().zip(c.c_apply(m)).map(|(a, b)| a * b).sum();
        acc += (&b * &binom_product(nv, m)).shift(Exponent::new(cm, 4));
    });
    Ok(acc)
}

/// How a tree node was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformTag {
    Root,
    Bt,
    Bt2,
    Traf1,
    Traf2,
}

/// One node of a Burge tree. Serializes as
/// `{labels: [p,p',r,s,N,sigma], parent_index, transform_tag, verified}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    #[serde(serialize_with = "ser_labels")]
    pub labels: (Labels, usize, u8),
    #[serde(rename = "parent_index")]
    pub parent: Option<usize>,
    #[serde(rename = "transform_tag")]
    pub tag: TransformTag,
    #[serde(skip)]
    pub depth: usize,
    pub verified: Option<bool>,
}

fn ser_labels<S: serde::Serializer>(x: &(Labels, usize, u8), s: S) -> std::result::Result<S::Ok, S::Error> {
    let (l, n, sg) = *x;
    serde::Serialize::serialize(&[l.p, l.pp, l.r, l.s, n as i64, sg as i64], s)
}

impl TreeNode {
    pub fn node_labels(&self) -> Labels {
        self.labels.0
    }

    pub fn level(&self) -> usize {
        self.labels.1
    }

    pub fn sigma(&self) -> u8 {
        self.labels.2
    }

    pub fn closed_form(&self) -> Option<ClosedForm> {
        recognize(self.node_labels(), self.level())
    }
}

/// Largest depth accepted by [`build_tree`].
pub const MAX_TREE_DEPTH: usize = 6;

/// Breadth-first Burge tree from `X_{0,1}^{(1,2)}`. At level 1 both level-1
/// transforms are iterated `depth` times. At level `N > 1` the level-1 tree of
/// depth `depth - 1` carries the two level-N transforms as leaves.
/// Nodes come back unverified; see [`verify_node`].
pub fn build_tree(depth: usize, level: usize, sigma: u8) -> Result<Vec<TreeNode>> {
    if depth > MAX_TREE_DEPTH {
        return invalid(format!("tree depth {depth} exceeds the cap {MAX_TREE_DEPTH}"));
    }
    if level == 0 {
        return invalid("N must be at least 1");
    }
    if sigma > 1 || (sigma == 1 && level % 2 == 1) {
        return invalid("sigma = 1 needs an even level");
    }
    let root = Labels::new(1, 2, 0, 1);
    let mut nodes = vec![TreeNode {
        labels: (root, 1, 0),
        parent: None,
        tag: TransformTag::Root,
        depth: 0,
        verified: None,
    }];
    let backbone = if level == 1 { depth } else { depth.saturating_sub(1) };
    let sym = Bounds::symmetric(0, Exponent::zero());
    let mut frontier = vec![0usize];
    for d in 1..=backbone {
        let mut next = Vec::new();
        for &idx in &frontier {
            let child = nodes[idx].node_labels();
            for (dir, tag) in [(Direction::First, TransformTag::Bt), (Direction::Second, TransformTag::Bt2)] {
                let labels = parent_labels(dir, child, 1, &sym)?;
                nodes.push(TreeNode {
                    labels: (labels, 1, 0),
                    parent: Some(idx),
                    tag,
                    depth: d,
                    verified: None,
                });
                next.push(nodes.len() - 1);
            }
        }
        frontier = next;
    }
    if level > 1 && depth > 0 {
        let level_one: Vec<usize> = (0..nodes.len()).collect();
        for idx in level_one {
            let child = nodes[idx].node_labels();
            let d = nodes[idx].depth + 1;
            for (dir, tag) in [(Direction::First, TransformTag::Traf1), (Direction::Second, TransformTag::Traf2)] {
                let labels = parent_labels(dir, child, level, &sym)?;
                nodes.push(TreeNode {
                    labels: (labels, level, sigma),
                    parent: Some(idx),
                    tag,
                    depth: d,
                    verified: None,
                });
            }
        }
    }
    Ok(nodes)
}

/// Values of `L >= 0` up to `max_l` compatible with `sigma` at symmetric bounds.
pub fn l_grid(sigma: u8, max_l: i64) -> Vec<Exponent> {
    (0..=2 * max_l)
        .filter(|t| (t + sigma as i64) % 2 == 0)
        .map(|t| Exponent::new(t, 2))
        .collect()
}

/// Compares the node's polynomial with its closed form on `0 <= M, L <= max`.
/// `None` when no closed form is known.
pub fn verify_node(node: &TreeNode, max_m: i64, max_l: i64) -> Result<Option<bool>> {
    let Some(form) = node.closed_form() else {
        return Ok(None);
    };
    let (labels, level, sigma) = node.labels;
    for m in 0..=max_m {
        for l in l_grid(sigma, max_l) {
            let bp = BurgeParams::new(labels, level, sigma, Bounds::symmetric(m, l))?;
            if burge_xn(&bp)? != evaluate_closed_form(form, level, sigma, m, l)? {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}

//! q-Saalschütz type sums: the classic binomial form, q-Chu–Vandermonde, the
//! Sears transform for balanced sums, and the level-N generalization with
//! Cartan-lattice inner sums.

use crate::error::{invalid, Error, Result};
use crate::lattice::{for_each_admissible, CartanData};
use crate::qbinom::{binom, binom_exact, binom_modified, binom_product};
use crate::qpoly::{qpoch, Exponent, QPoly};

/// Integer parameters of the classic sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassicParams {
    pub l1: i64,
    pub l2: i64,
    pub m: i64,
    pub ell: i64,
}

impl ClassicParams {
    pub fn new(l1: i64, l2: i64, m: i64, ell: i64) -> Self {
        ClassicParams { l1, l2, m, ell }
    }
}

fn q_int(e: i64) -> Exponent {
    Exponent::from_integer(e)
}

/// `sum_{i=0}^{M} q^{i(i+l)} [L1+L2+M-i over M-i] [L1 over i+l] [L2 over i]`.
pub fn qs2_lhs(p: &ClassicParams) -> QPoly {
    let mut acc = QPoly::zero();
    for i in 0..=p.m {
        let a = binom(p.l1, i + p.ell);
        if a.is_zero() {
            continue;
        }
        let b = binom(p.l2, i);
        if b.is_zero() {
            continue;
        }
        let c = binom(p.l1 + p.l2 + p.m - i, p.m - i);
        acc += (&(&a * &b) * &c).shift(q_int(i * (i + p.ell)));
    }
    acc
}

/// `[L1+M over M+l] [L2+M+l over M]`.
pub fn qs2_rhs(p: &ClassicParams) -> QPoly {
    binom(p.l1 + p.m, p.m + p.ell) * binom(p.l2 + p.m + p.ell, p.m)
}

/// The parameter region where the classic sum fails:
/// `-L1 <= -l <= L2 < 0 <= M` or `-L2 <= l <= L1 < 0 <= M+l`.
pub fn qs2_exceptional(p: &ClassicParams) -> bool {
    let ClassicParams { l1, l2, m, ell } = *p;
    (-l1 <= -ell && -ell <= l2 && l2 < 0 && 0 <= m)
        || (-l2 <= ell && ell <= l1 && l1 < 0 && 0 <= m + ell)
}

/// `sum_{i=0}^{L2} q^{i(i+l)} [L1 over i+l] [L2 over i]`.
pub fn qcv_lhs(p: &ClassicParams) -> QPoly {
    let mut acc = QPoly::zero();
    for i in 0..=p.l2 {
        let a = binom(p.l1, i + p.ell);
        if a.is_zero() {
            continue;
        }
        acc += (&a * &binom(p.l2, i)).shift(q_int(i * (i + p.ell)));
    }
    acc
}

/// `[L1+L2 over L1-l]`.
pub fn qcv_rhs(p: &ClassicParams) -> QPoly {
    binom(p.l1 + p.l2, p.l1 - p.ell)
}

/// Integer parameters of the Sears transform; balanced when `a+b = c+d+f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearsParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
    pub g: i64,
}

impl SearsParams {
    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64, g: i64) -> Self {
        SearsParams { a, b, c, d, e, f, g }
    }

    pub fn is_balanced(&self) -> bool {
        self.a + self.b == self.c + self.d + self.f
    }

    fn check(&self) -> Result<()> {
        if self.is_balanced() {
            Ok(())
        } else {
            Err(Error::UnbalancedParameters {
                lhs: self.a + self.b,
                rhs: self.c + self.d + self.f,
            })
        }
    }
}

/// `sum_i q^{i(i-a+e+g)} [i+a over a] [b-i over c-i] [d over i+e] [f over i+g]`
/// with modified binomials. A modified binomial vanishes for a negative bottom
/// entry, so `i` runs over `max(-e,-g) <= i <= c`.
pub fn sears_lhs(p: &SearsParams) -> Result<QPoly> {
    p.check()?;
    let SearsParams { a, b, c, d, e, f, g } = *p;
    let mut acc = QPoly::zero();
    for i in (-e).max(-g)..=c {
        let factors = [
            binom_modified(i + a, a),
            binom_modified(b - i, c - i),
            binom_modified(d, i + e),
            binom_modified(f, i + g),
        ];
        if let Some(t) = product_nonzero(&factors) {
            acc += t.shift(q_int(i * (i - a + e + g)));
        }
    }
    Ok(acc)
}

/// `sum_i q^{i(i-a+e+g)} [a-g over a-g-i] [b-d+e over c-i] [c+d-i over c+e] [i+f over i+g]`
/// with modified binomials, over `-g <= i <= min(a-g, c)`.
pub fn sears_rhs(p: &SearsParams) -> Result<QPoly> {
    p.check()?;
    let SearsParams { a, b, c, d, e, f, g } = *p;
    let mut acc = QPoly::zero();
    for i in -g..=(a - g).min(c) {
        let factors = [
            binom_modified(a - g, a - g - i),
            binom_modified(b - d + e, c - i),
            binom_modified(c + d - i, c + e),
            binom_modified(i + f, i + g),
        ];
        if let Some(t) = product_nonzero(&factors) {
            acc += t.shift(q_int(i * (i - a + e + g)));
        }
    }
    Ok(acc)
}

fn product_nonzero(factors: &[QPoly]) -> Option<QPoly> {
    if factors.iter().any(QPoly::is_zero) {
        return None;
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = &acc * f;
    }
    Some(acc)
}

/// Parameters of the level-N sum. `L1`, `L2` are half-integers when
/// `l + sigma` is odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SaalschutzParams {
    pub level: usize,
    pub sigma: u8,
    pub ell: i64,
    pub m: i64,
    pub l1: Exponent,
    pub l2: Exponent,
}

impl SaalschutzParams {
    pub fn new(level: usize, sigma: u8, ell: i64, m: i64, l1: Exponent, l2: Exponent) -> Result<Self> {
        let p = SaalschutzParams { level, sigma, ell, m, l1, l2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.level as i64;
        if n < 1 {
            return invalid("N must be at least 1");
        }
        if self.sigma > 1 {
            return invalid("sigma must be 0 or 1");
        }
        if (self.ell + self.sigma as i64 * n) % 2 != 0 {
            return invalid("l + sigma*N must be even");
        }
        if self.l1 < Exponent::from_integer(0) || self.l2 < Exponent::from_integer(0) {
            return invalid("L1 and L2 must be nonnegative");
        }
        let half = Exponent::new(self.ell + self.sigma as i64, 2);
        if !(self.l1 + half).is_integer() || !(self.l2 + half).is_integer() {
            return invalid("L1 + (l+sigma)/2 and L2 + (l+sigma)/2 must be integers");
        }
        Ok(())
    }

    /// Parameters of the mirrored instance `(L2, L1, M+l, -l)`.
    pub fn mirrored(&self) -> SaalschutzParams {
        SaalschutzParams {
            level: self.level,
            sigma: self.sigma,
            ell: -self.ell,
            m: self.m + self.ell,
            l1: self.l2,
            l2: self.l1,
        }
    }
}

fn half(x: i64) -> Exponent {
    Exponent::new(x, 2)
}

/// Vector `a e_1 + b e_{N-1}` of length `N-1` (the two add up when `N = 2`).
pub(crate) fn end_vector(rank: usize, a: i64, b: i64) -> Vec<i64> {
    let mut v = vec![0; rank];
    if rank > 0 {
        v[0] += a;
        v[rank - 1] += b;
    }
    v
}

/// Outer i-sum with the inner lattice sum over `n`.
pub fn gensum_lhs(p: &SaalschutzParams) -> Result<QPoly> {
    p.validate()?;
    let c = CartanData::a_type(p.level)?;
    let n_lvl = p.level as i64;
    let (ell, m_cap) = (p.ell, p.m);
    let mut acc = QPoly::zero();
    for i in 0..=m_cap {
        let pre = binom_exact(p.l1 + p.l2 + q_int(m_cap - i), q_int(m_cap - i))?;
        if pre.is_zero() {
            continue;
        }
        let v = end_vector(c.rank(), 2 * i + ell, 0);
        let offset = Exponent::new(2 * i + ell + p.sigma as i64 * n_lvl, 2 * n_lvl);
        let mut inner = QPoly::zero();
        let mut err = None;
        for_each_admissible(&c, &v, offset, |n, m| {
            let m1 = m.first().copied().unwrap_or(0);
            let b1 = binom_exact(p.l1 + half(m1), q_int(i + ell));
            let b2 = binom_exact(p.l2 + half(m1), q_int(i));
            match (b1, b2) {
                (Ok(b1), Ok(b2)) => {
                    if b1.is_zero() || b2.is_zero() {
                        return;
                    }
                    let t = &(&b1 * &b2) * &binom_product(m, n);
                    inner += t.shift(c.form(n, n));
                }
                (Err(e), _) | (_, Err(e)) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if !inner.is_zero() {
            acc += (&pre * &inner).shift(Exponent::new(i * (i + ell), n_lvl));
        }
    }
    Ok(acc)
}

/// Lattice sum over `eta` with source `(M+l) e_1 + M e_{N-1}`. At `N = 1`
/// this uses `mu_1 = M` and `mu_0 = M + l`.
pub fn gensum_rhs(p: &SaalschutzParams) -> Result<QPoly> {
    p.validate()?;
    let (ell, m_cap) = (p.ell, p.m);
    if m_cap < 0 || m_cap + ell < 0 {
        return Ok(QPoly::zero());
    }
    let c = CartanData::a_type(p.level)?;
    let n_lvl = p.level as i64;
    let v = end_vector(c.rank(), m_cap + ell, m_cap);
    let offset = Exponent::new(ell + p.sigma as i64 * n_lvl, 2 * n_lvl);
    let mut acc = QPoly::zero();
    let mut err = None;
    for_each_admissible(&c, &v, offset, |eta, mu| {
        let (mu_first, mu_last) = if mu.is_empty() {
            (m_cap, m_cap + ell)
        } else {
            (mu[0], mu[mu.len() - 1])
        };
        let b1 = binom_exact(p.l1 + half(m_cap + mu_first), q_int(m_cap + ell));
        let b2 = binom_exact(p.l2 + half(m_cap + ell + mu_last), q_int(m_cap));
        match (b1, b2) {
            (Ok(b1), Ok(b2)) => {
                if b1.is_zero() || b2.is_zero() {
                    return;
                }
                let t = &(&b1 * &b2) * &binom_product(mu, eta);
                acc += t.shift(c.form(eta, eta));
            }
            (Err(e), _) | (_, Err(e)) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// Checks `sum_{i=0}^{M} q^{i(i+l)} / ((q)_{M-i} (q)_i (q)_{i+l}) = 1/((q)_M (q)_{M+l})`
/// after multiplying through by `(q)_M (q)_{M+l}`.
pub fn cbp_n1_check(m: i64, ell: i64) -> Result<bool> {
    if m < 0 || m + ell < 0 {
        return invalid("need M >= 0 and M + l >= 0");
    }
    let num = qpoch(1, m as usize) * qpoch(1, (m + ell) as usize);
    let mut acc = QPoly::zero();
    for i in 0..=m {
        if i + ell < 0 {
            continue;
        }
        let den = qpoch(1, (m - i) as usize) * qpoch(1, i as usize) * qpoch(1, (i + ell) as usize);
        acc += num.exact_div(&den)?.shift(q_int(i * (i + ell)));
    }
    Ok(acc.is_one())
}

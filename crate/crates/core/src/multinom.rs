//! q-multinomial coefficients `T_n^{(N)}(L,a)`, their decomposition as a
//! Cartan-lattice sum, the `n >= 1` difference identity, ABF configuration
//! sums and the configuration-sum limit of the level-N Burge polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::burge::{burge_xn, Bounds, BurgeParams, Labels};
use crate::error::{invalid, Error, Result};
use crate::lattice::{for_each_admissible, CartanData};
use crate::qbinom::{binom, binom_exact, binom_product};
use crate::qpoly::{qpoch, Exponent, QPoly, Truncation};
use crate::saalschutz::end_vector;

fn int(x: i64) -> Exponent {
    Exponent::from_integer(x)
}

/// Arguments of `T_n^{(N)}(L,a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultinomialQuery {
    pub level: usize,
    pub l: i64,
    pub a: Exponent,
    pub n_index: usize,
}

impl MultinomialQuery {
    pub fn new(level: usize, l: i64, a: Exponent, n_index: usize) -> Result<Self> {
        let q = MultinomialQuery { level, l, a, n_index };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.level == 0 {
            return invalid("N must be at least 1");
        }
        if self.l < 0 {
            return invalid("L must be nonnegative");
        }
        if self.n_index >= self.level {
            return invalid(format!("n = {} outside 0..N-1", self.n_index));
        }
        let two_a = self.a * int(2);
        let nl = self.level as i64 * self.l;
        if !two_a.is_integer() || two_a.to_integer().abs() > nl || (two_a.to_integer() - nl) % 2 != 0 {
            return invalid(format!("2a = {two_a} not in {{-NL, -NL+2, ..., NL}}"));
        }
        Ok(())
    }
}

/// Calls `f(eta)` for every `eta >= 0` in `Z^dim` with entry sum at most `cap`.
fn for_each_bounded<F: FnMut(&[i64])>(dim: usize, cap: i64, f: &mut F) {
    fn rec<F: FnMut(&[i64])>(eta: &mut Vec<i64>, dim: usize, left: i64, f: &mut F) {
        if eta.len() == dim {
            f(eta);
            return;
        }
        for x in 0..=left {
            eta.push(x);
            rec(eta, dim, left - x, f);
            eta.pop();
        }
    }
    rec(&mut Vec::with_capacity(dim), dim, cap, f);
}

/// `T_n^{(N)}(L,a)` from its defining eta-sum. Each term is the quotient
/// `(q)_L / ((q)_A (q)_B (q)_eta)` by exact division.
pub fn t_multinomial(q: &MultinomialQuery) -> Result<QPoly> {
    q.validate()?;
    let c = CartanData::a_type(q.level)?;
    let n = q.level as i64;
    let half_l = Exponent::new(q.l, 2);
    let a_n = q.a / int(n);
    let e_n = c.unit(q.n_index);
    let numer = qpoch(1, q.l as usize);
    let mut acc = QPoly::zero();
    let mut err = None;
    // A + B + |eta| = L, so the entry sum of eta is at most L
    for_each_bounded(c.rank(), q.l, &mut |eta| {
        if err.is_some() {
            return;
        }
        let (first, last) = if eta.is_empty() {
            (Exponent::zero(), Exponent::zero())
        } else {
            (c.cinv_component(0, eta), c.cinv_component(c.rank() - 1, eta))
        };
        if !(half_l + a_n + first).is_integer() {
            return;
        }
        let big_a = half_l - a_n - first;
        let big_b = half_l + a_n - last;
        if big_a < Exponent::zero() || big_b < Exponent::zero() {
            return;
        }
        let mut den = &qpoch(1, big_a.to_integer() as usize) * &qpoch(1, big_b.to_integer() as usize);
        for &h in eta {
            den = &den * &qpoch(1, h as usize);
        }
        let shifted: Vec<i64> = eta.iter().zip(&e_n).map(|(x, e)| x - e).collect();
        match numer.exact_div(&den) {
            Ok(t) => acc += t.shift(c.form(eta, &shifted)),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// `T_n^{(N)}(L,a)`, or zero when `|2a| > NL`.
fn t_or_zero(level: usize, l: i64, a: Exponent, n_index: usize) -> Result<QPoly> {
    if (a * int(2)).abs() > int(level as i64 * l) {
        return Ok(QPoly::zero());
    }
    t_multinomial(&MultinomialQuery::new(level, l, a, n_index)?)
}

/// Coefficient of `x^{a+NL/2}` in `(1 + x + ... + x^N)^L`.
pub fn classical_multinomial(level: usize, l: i64, a: Exponent) -> BigInt {
    let n = level;
    let mut row = vec![BigInt::one()];
    for _ in 0..l.max(0) {
        let mut next = vec![BigInt::zero(); row.len() + n];
        for (i, c) in row.iter().enumerate() {
            for slot in &mut next[i..=i + n] {
                *slot += c;
            }
        }
        row = next;
    }
    let idx = a + Exponent::new(n as i64 * l, 2);
    if !idx.is_integer() || idx < Exponent::zero() || idx.to_integer() as usize >= row.len() {
        return BigInt::zero();
    }
    row[idx.to_integer() as usize].clone()
}

/// Right-hand side of the lattice decomposition of `T_0^{(N)}(L, ell/2)`.
/// `sigma` must agree with the parity of `L`.
pub fn tnew_rhs(level: usize, l: i64, ell: i64, sigma: u8) -> Result<QPoly> {
    if level == 0 || l < 0 {
        return invalid("need N >= 1 and L >= 0");
    }
    if (l - sigma as i64) % 2 != 0 {
        return invalid("sigma must be congruent to L mod 2");
    }
    let n = level as i64;
    if ell.abs() > n * l || (ell - n * l) % 2 != 0 {
        return invalid("ell must lie in {-NL, -NL+2, ..., NL}");
    }
    let c = CartanData::a_type(level)?;
    let mut acc = QPoly::zero();
    // m_1 <= (N-1)(2i+ell)/N forces i <= (NL - ell)/2 for the second binomial
    for i in 0.max(-ell)..=Integer::div_floor(&(n * l - ell), &2) {
        let v = end_vector(c.rank(), 2 * i + ell, 0);
        let offset = Exponent::new(l, 2) + Exponent::new(2 * i + ell, 2 * n);
        let mut inner = QPoly::zero();
        let mut err = None;
        for_each_admissible(&c, &v, offset, |nv, mv| {
            let m1 = mv.first().copied().unwrap_or(0);
            let b = binom_exact(Exponent::new(l + ell + m1, 2), int(i + ell))
                .and_then(|x| Ok((x, binom_exact(Exponent::new(l - ell + m1, 2), int(i))?)));
            match b {
                Ok((x, y)) if !x.is_zero() && !y.is_zero() => {
                    inner += (&(&x * &y) * &binom_product(mv, nv)).shift(c.form(nv, nv));
                }
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        acc += inner.shift(Exponent::new(i * (i + ell), n));
    }
    Ok(acc)
}

/// `tnew_rhs` against `T_0^{(N)}(L, ell/2)`.
pub fn tnew_check(level: usize, l: i64, ell: i64) -> Result<bool> {
    let sigma = l.rem_euclid(2) as u8;
    let lhs = t_multinomial(&MultinomialQuery::new(level, l, Exponent::new(ell, 2), 0)?)?;
    Ok(lhs == tnew_rhs(level, l, ell, sigma)?)
}

/// Both sides of the `1 <= n < N-1` difference identity together with the
/// unsubtracted pieces `f(L,ell) = T_n(L,(n-ell)/2)` and `g(L,ell)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSides {
    pub lhs: QPoly,
    pub rhs: QPoly,
    pub f: QPoly,
    pub g: QPoly,
}

impl DifferenceSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides of
/// `T_n(L,(n-ell)/2) - q^{(ell+1)/N} T_n(L,(n+ell+2)/2)` as a lattice sum with
/// system `m + n = (I m + (2i+ell) e_1 + e_{N-n})/2`.
pub fn difference_sides(level: usize, l: i64, ell: i64, n_index: usize) -> Result<DifferenceSides> {
    if level < 3 || n_index == 0 || n_index >= level - 1 {
        return invalid(format!("need 1 <= n < N-1, got n = {n_index}, N = {level}"));
    }
    if l < 0 {
        return invalid("L must be nonnegative");
    }
    let n = level as i64;
    let ni = n_index as i64;
    if (ni - ell - n * l) % 2 != 0 {
        return invalid("n - ell must have the parity of NL");
    }
    let f = t_or_zero(level, l, Exponent::new(ni - ell, 2), n_index)?;
    let f2 = t_or_zero(level, l, Exponent::new(ni + ell + 2, 2), n_index)?;
    let lhs = &f - &f2.shift(Exponent::new(ell + 1, n));

    let c = CartanData::a_type(level)?;
    let e = c.unit(level - n_index);
    let (mut rhs, mut g) = (QPoly::zero(), QPoly::zero());
    // m_1 <= (N-1)(2i+ell)/N + 1 bounds i by (N(L+1) - ell)/2
    for i in 0.max(-ell - 1)..=Integer::div_floor(&(n * (l + 1) - ell), &2) + 1 {
        let mut v = end_vector(c.rank(), 2 * i + ell, 0);
        for (x, y) in v.iter_mut().zip(&e) {
            *x += y;
        }
        let offset = Exponent::new(l, 2) + Exponent::new(2 * i + ell - ni, 2 * n);
        let (mut inner, mut inner_g) = (QPoly::zero(), QPoly::zero());
        let mut err = None;
        for_each_admissible(&c, &v, offset, |nv, mv| {
            let m1 = mv[0];
            let pair = |top_a: i64, bot_a: i64, top_b: i64, bot_b: i64| -> Result<QPoly> {
                let x = binom_exact(Exponent::new(top_a, 2), int(bot_a))?;
                if x.is_zero() {
                    return Ok(x);
                }
                Ok(&x * &binom_exact(Exponent::new(top_b, 2), int(bot_b))?)
            };
            let r = pair(l + ell + m1, i + ell, l - ell + m1, i).and_then(|first| {
                let second = pair(l + ell + 2 + m1, i + ell + 1, l - ell - 2 + m1, i - 1)?;
                Ok((first, second))
            });
            match r {
                Ok((first, second)) => {
                    if first.is_zero() && second.is_zero() {
                        return;
                    }
                    let shifted: Vec<i64> = nv.iter().zip(&e).map(|(a, b)| a - b).collect();
                    let w = binom_product(mv, nv).shift(c.form(nv, &shifted));
                    inner_g += &w * &first;
                    inner += &w * &(&first - &second);
                }
                Err(x) => err = Some(x),
            }
        });
        if let Some(x) = err {
            return Err(x);
        }
        let pre = Exponent::new(i * (i + ell), n);
        rhs += inner.shift(pre);
        g += inner_g.shift(pre);
    }
    Ok(DifferenceSides { lhs, rhs, f, g })
}

/// Verdict of the difference identity at one point.
pub fn difference_identity_check(level: usize, l: i64, ell: i64, n_index: usize) -> Result<bool> {
    Ok(difference_sides(level, l, ell, n_index)?.holds())
}

/// ABF configuration sum
/// `X_s^p(L) = sum_j q^{j(pj+s)} ([L; (L-s+1)/2 - pj] - [L; (L-s-1)/2 - pj])`.
pub fn abf_config_sum(p: i64, s: i64, l: i64) -> QPoly {
    if p < 1 || l < 0 || (l - s + 1) % 2 != 0 {
        return QPoly::zero();
    }
    let hi_bottom = (l - s + 1) / 2;
    let lo_bottom = (l - s - 1) / 2;
    // a bottom b - pj lies in [0, L] only for these j
    let j_lo = Integer::div_ceil(&(lo_bottom - l), &p);
    let j_hi = Integer::div_floor(&hi_bottom, &p);
    let mut acc = QPoly::zero();
    for j in j_lo..=j_hi {
        let t = binom(l, hi_bottom - p * j) - binom(l, lo_bottom - p * j);
        if !t.is_zero() {
            acc += t.shift(int(j * (p * j + s)));
        }
    }
    acc
}

/// Bounds `(L1, L2)` and `sigma` attached to `L` in the configuration-sum limit.
pub fn config_limit_bounds(labels: Labels, level: usize, m12: i64, l: i64) -> Result<(Exponent, Exponent, u8)> {
    let n = level as i64;
    if n < 1 || (labels.r - labels.s) % n != 0 {
        return invalid("(r-s)/N must be an integer");
    }
    let rs = (labels.r - labels.s) / n;
    let sigma = (l - rs).rem_euclid(2) as u8;
    if (m12 + sigma as i64 * n) % 2 != 0 {
        return invalid("M12 + sigma*N must be even for this L");
    }
    Ok((Exponent::new(l - m12 - rs, 2), Exponent::new(l + m12 + rs, 2), sigma))
}

/// The bilateral `T_0` difference that the normalized polynomials approach.
pub fn config_limit_rhs(labels: Labels, level: usize, m12: i64, l: i64) -> Result<QPoly> {
    let Labels { p, pp, r, s } = labels;
    let n = level as i64;
    let nl = n * l;
    let mut acc = QPoly::zero();
    // T_0(L,a) vanishes for |2a| > NL
    let j_lo = Integer::div_floor(&(-nl - r - m12 - s), &(2 * pp)) - 1;
    let j_hi = Integer::div_ceil(&(nl - r - m12 + s), &(2 * pp)) + 1;
    for j in j_lo..=j_hi {
        let a_plus = Exponent::new(r + m12 - s, 2) + int(pp * j);
        let a_minus = Exponent::new(r + m12 + s, 2) + int(pp * j);
        let t = t_or_zero(level, l, a_plus, 0)?;
        if !t.is_zero() {
            acc += t.shift(Exponent::new(j * (p * pp * j + pp * (m12 + r) - p * s), n));
        }
        let t = t_or_zero(level, l, a_minus, 0)?;
        if !t.is_zero() {
            acc -= t.shift(Exponent::new((p * j + m12 + r) * (pp * j + s), n));
        }
    }
    Ok(acc)
}

/// `(q)_L X(M2 + M12, L1, M2, L2)` truncated at `trunc`.
pub fn config_limit_lhs_at(labels: Labels, level: usize, m12: i64, l: i64, m2: i64, trunc: &Truncation) -> Result<QPoly> {
    let (l1, l2, sigma) = config_limit_bounds(labels, level, m12, l)?;
    let bp = BurgeParams::new(labels, level, sigma, Bounds::new(m2 + m12, l1, m2, l2))?;
    Ok(burge_xn(&bp)?.mul_truncated(&qpoch(1, l as usize), trunc))
}

/// Largest `M2` tried before giving up on stabilization.
pub const STABILIZATION_CAP: i64 = 40;

/// Normalized polynomial at the first `M2` after which two further steps
/// leave the truncation unchanged. Returns the value and that `M2`.
pub fn config_limit_lhs(labels: Labels, level: usize, m12: i64, l: i64, trunc: &Truncation) -> Result<(QPoly, i64)> {
    let start = 0.max(-m12);
    let mut prev = config_limit_lhs_at(labels, level, m12, l, start, trunc)?;
    let mut run = 0;
    for m2 in start + 1..=STABILIZATION_CAP {
        let cur = config_limit_lhs_at(labels, level, m12, l, m2, trunc)?;
        if cur == prev {
            run += 1;
            if run == 2 {
                return Ok((cur, m2 - 2));
            }
        } else {
            run = 0;
        }
        prev = cur;
    }
    Err(Error::StabilizationFailure(STABILIZATION_CAP))
}

/// Compares the stabilized normalized polynomials with [`config_limit_rhs`] up to `trunc`.
pub fn config_limit_check(labels: Labels, level: usize, m12: i64, l: i64, trunc: &Truncation) -> Result<bool> {
    let (lhs, _) = config_limit_lhs(labels, level, m12, l, trunc)?;
    Ok(lhs.truncated_eq(&config_limit_rhs(labels, level, m12, l)?, trunc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(x: i64) -> Exponent {
        Exponent::new(x, 2)
    }

    #[test]
    fn level_one_is_binomial() {
        for l in 0..6 {
            for two_a in (-l..=l).step_by(2) {
                let t = t_multinomial(&MultinomialQuery::new(1, l, half(two_a), 0).unwrap()).unwrap();
                assert_eq!(t, binom(l, (l - two_a) / 2));
            }
        }
    }

    #[test]
    fn trinomial_middle() {
        let t = t_multinomial(&MultinomialQuery::new(2, 1, int(0), 0).unwrap()).unwrap();
        // coefficient of x in 1 + x + x^2
        assert_eq!(t.coefficient_sum(), BigInt::one());
        assert_eq!(t, QPoly::q_pow(half(1)));
        assert!(t.has_nonnegative_coeffs());
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_multinomial(1, 4, int(0)), BigInt::from(6));
        assert_eq!(classical_multinomial(2, 2, int(0)), BigInt::from(3));
        assert_eq!(classical_multinomial(3, 3, half(9)), BigInt::one());
    }

    #[test]
    fn bad_queries() {
        assert!(MultinomialQuery::new(2, 1, half(1), 0).is_err());
        assert!(MultinomialQuery::new(2, 1, int(2), 0).is_err());
        assert!(MultinomialQuery::new(2, 1, int(0), 2).is_err());
        assert!(difference_sides(3, 2, 0, 0).is_err());
        assert!(difference_sides(3, 2, 0, 2).is_err());
    }

    #[test]
    fn tnew_small() {
        assert_eq!(tnew_rhs(2, 0, 0, 0).unwrap(), QPoly::one());
        for n in 2..=3 {
            for l in 0..=4 {
                for ell in (-(n as i64) * l..=n as i64 * l).step_by(2) {
                    assert!(tnew_check(n, l, ell).unwrap(), "N={n} L={l} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn abf_examples() {
        assert_eq!(abf_config_sum(4, 1, 0), QPoly::one());
        assert!(abf_config_sum(4, 3, 0).is_zero());
        assert!(abf_config_sum(4, 8, 2).is_zero());
        // j = 0 only: [2;1] - [2;0] = q + q^0 - 1
        assert_eq!(abf_config_sum(4, 1, 2), QPoly::q_pow(int(1)));
    }
}

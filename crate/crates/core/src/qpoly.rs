//! Sparse Laurent polynomials in `q` with rational exponents and big-integer
//! coefficients. The same type doubles as a truncated power series.
//!
//! A value is stored on an exponent lattice `(1/den)Z`: every term is
//! `c * q^(k/den)`. The representation is canonical (terms sorted by `k`, no
//! zero coefficients, `den` minimal), so structural equality is mathematical
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational exponent of `q`.
pub type Exponent = Ratio<i64>;

/// Degree cap for truncated series: only terms with exponent `<= cap` are kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    degree_cap: Exponent,
}

impl Truncation {
    pub fn new(degree_cap: Exponent) -> Result<Self> {
        if degree_cap < Exponent::zero() {
            return Err(Error::NegativeTruncation(degree_cap.to_string()));
        }
        Ok(Truncation { degree_cap })
    }

    pub fn integer(degree: i64) -> Result<Self> {
        Self::new(Exponent::from_integer(degree))
    }

    pub fn degree_cap(&self) -> Exponent {
        self.degree_cap
    }

    pub fn keeps(&self, exponent: Exponent) -> bool {
        exponent <= self.degree_cap
    }

    /// Cap for a factor that will later be multiplied by `q^shift`.
    /// `None` when nothing of the factor can survive.
    pub fn before_shift(&self, shift: Exponent) -> Option<Truncation> {
        let cap = self.degree_cap - shift;
        (cap >= Exponent::zero()).then_some(Truncation { degree_cap: cap })
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree_cap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    den: i64,
    terms: Vec<(i64, BigInt)>,
}

impl Default for QPoly {
    fn default() -> Self {
        QPoly::zero()
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / a.gcd(&b) * b
}

fn floor_scaled(cap: Exponent, den: i64) -> i64 {
    (cap * Exponent::from_integer(den)).floor().to_integer()
}

fn fits_i128(a: &[(i64, &BigInt)], b: &[(i64, &BigInt)]) -> Option<(Vec<i128>, Vec<i128>)> {
    let small = |xs: &[(i64, &BigInt)]| -> Option<(Vec<i128>, u64)> {
        let mut bits = 0;
        let mut out = Vec::with_capacity(xs.len());
        for (_, c) in xs {
            let v = c.to_i64()?;
            bits = bits.max(64 - v.unsigned_abs().leading_zeros() as u64);
            out.push(v as i128);
        }
        Some((out, bits))
    };
    let (va, ba) = small(a)?;
    let (vb, bb) = small(b)?;
    let len_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64;
    (ba + bb + len_bits <= 125).then_some((va, vb))
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { den: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(Exponent::zero(), c)
    }

    /// `c * q^e`.
    pub fn monomial(e: Exponent, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            den: *e.denom(),
            terms: vec![(*e.numer(), c)],
        }
    }

    /// `q^e`.
    pub fn q_pow(e: Exponent) -> Self {
        Self::monomial(e, 1)
    }

    /// `q^k` for an integer exponent.
    pub fn q_int(k: i64) -> Self {
        Self::q_pow(Exponent::from_integer(k))
    }

    /// Dense integer coefficients `c[0] + c[1] q + c[2] q^2 + ...`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, c.clone().into()))
            .collect();
        Self::from_lattice(1, terms)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(Exponent, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let den = terms.iter().fold(1, |d, (e, _)| lcm(d, *e.denom()));
        let scaled = terms
            .into_iter()
            .map(|(e, c)| (e.numer() * (den / e.denom()), c))
            .collect();
        Self::from_lattice(den, scaled)
    }

    /// Builds from unsorted lattice terms, merging duplicates and reducing.
    pub(crate) fn from_lattice(den: i64, mut terms: Vec<(i64, BigInt)>) -> Self {
        terms.sort_by_key(|(k, _)| *k);
        let mut merged: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match merged.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Self::reduced(den, merged)
    }

    /// Takes sorted, merged, zero-free terms and reduces the lattice.
    fn reduced(den: i64, mut terms: Vec<(i64, BigInt)>) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let g = terms.iter().fold(den, |g, (k, _)| g.gcd(k));
        if g > 1 {
            for (k, _) in terms.iter_mut() {
                *k /= g;
            }
        }
        QPoly { den: den / g, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Denominator of the exponent lattice.
    pub fn lattice_denominator(&self) -> i64 {
        self.den
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(move |(k, c)| (Exponent::new(*k, self.den), c))
    }

    pub fn coeff(&self, e: Exponent) -> BigInt {
        let scaled = e * Exponent::from_integer(self.den);
        if !scaled.is_integer() {
            return BigInt::zero();
        }
        let k = scaled.to_integer();
        match self.terms.binary_search_by_key(&k, |(k, _)| *k) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn lowest_exponent(&self) -> Option<Exponent> {
        self.terms.first().map(|(k, _)| Exponent::new(*k, self.den))
    }

    pub fn highest_exponent(&self) -> Option<Exponent> {
        self.terms.last().map(|(k, _)| Exponent::new(*k, self.den))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    fn scaled(&self, den: i64) -> Vec<(i64, &BigInt)> {
        let f = den / self.den;
        self.terms.iter().map(|(k, c)| (k * f, c)).collect()
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: Exponent) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let den = lcm(self.den, *e.denom());
        let off = e.numer() * (den / e.denom());
        let f = den / self.den;
        let terms = self.terms.iter().map(|(k, c)| (k * f + off, c.clone())).collect();
        Self::reduced(den, terms)
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            den: self.den,
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    fn merge(&self, other: &QPoly, negate_other: bool) -> QPoly {
        let den = lcm(self.den, other.den);
        let a = self.scaled(den);
        let b = other.scaled(den);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let take_b = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push((a[i].0, a[i].1.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, take_b(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { a[i].1 - b[j].1 } else { a[i].1 + b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::reduced(den, out)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, false)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            den: self.den,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    /// Exact product, optionally truncated.
    pub fn mul(&self, other: &QPoly, trunc: Option<&Truncation>) -> QPoly {
        self.mul_capped(other, trunc.map(|t| t.degree_cap()))
    }

    pub fn mul_truncated(&self, other: &QPoly, trunc: &Truncation) -> QPoly {
        self.mul_capped(other, Some(trunc.degree_cap()))
    }

    fn mul_capped(&self, other: &QPoly, cap: Option<Exponent>) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let den = lcm(self.den, other.den);
        let a = self.scaled(den);
        let b = other.scaled(den);
        let lo = a[0].0 + b[0].0;
        let mut hi = a[a.len() - 1].0 + b[b.len() - 1].0;
        if let Some(cap) = cap {
            hi = hi.min(floor_scaled(cap, den));
        }
        if lo > hi {
            return QPoly::zero();
        }
        let span = (hi - lo + 1) as usize;
        let dense = span <= 8 * a.len() * b.len() + 1024;

        if let Some((va, vb)) = fits_i128(&a, &b) {
            if dense {
                let mut acc = vec![0i128; span];
                for (i, (ka, _)) in a.iter().enumerate() {
                    for (j, (kb, _)) in b.iter().enumerate() {
                        let k = ka + kb;
                        if k > hi {
                            break;
                        }
                        acc[(k - lo) as usize] += va[i] * vb[j];
                    }
                }
                let terms = acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(i, c)| (lo + i as i64, BigInt::from(c)))
                    .collect();
                return Self::reduced(den, terms);
            }
            let mut acc: BTreeMap<i64, i128> = BTreeMap::new();
            for (i, (ka, _)) in a.iter().enumerate() {
                for (j, (kb, _)) in b.iter().enumerate() {
                    let k = ka + kb;
                    if k > hi {
                        break;
                    }
                    *acc.entry(k).or_insert(0) += va[i] * vb[j];
                }
            }
            let terms = acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| (k, BigInt::from(c)))
                .collect();
            return Self::reduced(den, terms);
        }

        if dense {
            let mut acc = vec![BigInt::zero(); span];
            for (ka, ca) in &a {
                for (kb, cb) in &b {
                    let k = ka + kb;
                    if k > hi {
                        break;
                    }
                    acc[(k - lo) as usize] += *ca * *cb;
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect();
            return Self::reduced(den, terms);
        }
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let k = ka + kb;
                if k > hi {
                    break;
                }
                *acc.entry(k).or_default() += *ca * *cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::reduced(den, terms)
    }

    /// `self * (1 - q^e)`.
    pub fn mul_one_minus_q_pow(&self, e: Exponent) -> QPoly {
        self.sub(&self.shift(e))
    }

    pub fn truncate(&self, trunc: &Truncation) -> QPoly {
        let kmax = floor_scaled(trunc.degree_cap(), self.den);
        let terms: Vec<_> = self.terms.iter().take_while(|(k, _)| *k <= kmax).cloned().collect();
        Self::reduced(self.den, terms)
    }

    /// Equality of all terms with exponent `<= cap`.
    pub fn truncated_eq(&self, other: &QPoly, trunc: &Truncation) -> bool {
        self.truncate(trunc) == other.truncate(trunc)
    }

    /// Exact quotient in the Laurent ring; fails unless the remainder is zero.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        let den = lcm(self.den, divisor.den);
        let num = self.scaled(den);
        let dv = divisor.scaled(den);
        let (d_lo, d_lead) = (dv[0].0, dv[0].1);
        let d_span = dv[dv.len() - 1].0 - d_lo;
        let n_lo = num[0].0;
        let n_hi = num[num.len() - 1].0;
        if n_hi - n_lo < d_span {
            return Err(Error::NonExactDivision);
        }
        let mut rem = vec![BigInt::zero(); (n_hi - n_lo + 1) as usize];
        for (k, c) in &num {
            rem[(k - n_lo) as usize] = (*c).clone();
        }
        let mut quotient = Vec::new();
        for pos in 0..=((n_hi - n_lo - d_span) as usize) {
            if rem[pos].is_zero() {
                continue;
            }
            let (q, r) = rem[pos].div_rem(d_lead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision);
            }
            for (k, c) in &dv {
                let idx = pos + (k - d_lo) as usize;
                rem[idx] -= &q * *c;
            }
            quotient.push((n_lo + pos as i64 - d_lo, q));
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(Self::reduced(den, quotient))
    }

    /// Power-series inverse up to the truncation degree.
    pub fn invert_truncated(&self, trunc: &Truncation) -> Result<QPoly> {
        let c0 = match self.terms.first() {
            Some((0, c)) if c.abs().is_one() => c.clone(),
            _ => return Err(Error::NonUnitConstantTerm),
        };
        let den = self.den;
        let kmax = floor_scaled(trunc.degree_cap(), den);
        let mut r: Vec<BigInt> = vec![BigInt::zero(); (kmax + 1) as usize];
        r[0] = c0.clone();
        for k in 1..=kmax {
            let mut s = BigInt::zero();
            for (pk, pc) in self.terms.iter().skip(1) {
                if *pk > k {
                    break;
                }
                let prev = &r[(k - pk) as usize];
                if !prev.is_zero() {
                    s += pc * prev;
                }
            }
            r[k as usize] = -(s * &c0);
        }
        let terms = r
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c))
            .collect();
        Ok(Self::reduced(den, terms))
    }

    /// Sum of coefficients, i.e. the value at `q = 1` of an ordinary polynomial.
    pub fn eval_at_one(&self) -> Result<BigInt> {
        if self.den != 1 || self.terms.first().is_some_and(|(k, _)| *k < 0) {
            return Err(Error::NonPolynomial);
        }
        Ok(self.coefficient_sum())
    }

    /// Sum of all coefficients, the value at `q = 1` for any exponents.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }
}

/// `(q^shift; q)_len = (1 - q^shift)(1 - q^(shift+1)) ... (1 - q^(shift+len-1))`.
pub fn qpoch(shift: i64, len: usize) -> QPoly {
    let mut acc = QPoly::one();
    for k in 0..len as i64 {
        acc = acc.mul_one_minus_q_pow(Exponent::from_integer(shift + k));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `(-q; q^2)_n = (1 + q)(1 + q^3) ... (1 + q^(2n-1))`.
pub fn qpoch_signed_base2(n: usize) -> QPoly {
    let mut acc = QPoly::one();
    for k in 0..n as i64 {
        acc = QPoly::add(&acc, &acc.shift(Exponent::from_integer(2 * k + 1)));
    }
    acc
}

/// `1/(q)_inf` truncated, i.e. the partition generating function.
pub fn euler_inverse_truncated(trunc: &Truncation) -> QPoly {
    let d = trunc.degree_cap().floor().to_integer().max(0);
    qpoch(1, d as usize)
        .invert_truncated(trunc)
        .expect("(q)_D has constant term 1")
}

/// Truncated `1/(q^shift; q)_len` for `shift >= 1`.
pub fn qpoch_inverse_truncated(shift: i64, len: usize, trunc: &Truncation) -> QPoly {
    assert!(shift >= 1 || len == 0, "1/(q^{shift};q)_{len} is not a power series");
    let d = trunc.degree_cap().floor().to_integer().max(0);
    // factors with exponent above the cap do not affect the truncation
    let useful = ((d - shift + 1).max(0) as usize).min(len);
    qpoch(shift, useful)
        .invert_truncated(trunc)
        .expect("constant term 1")
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                $body(self, rhs)
            }
        }
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<QPoly> for &QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &QPoly, b: &QPoly| QPoly::add(a, b));
forward_binop!(Sub, sub, |a: &QPoly, b: &QPoly| QPoly::sub(a, b));
forward_binop!(Mul, mul, |a: &QPoly, b: &QPoly| QPoly::mul(a, b, None));

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::neg(&self)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::neg(self)
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        *self = QPoly::add(self, rhs);
    }
}

impl AddAssign<QPoly> for QPoly {
    fn add_assign(&mut self, rhs: QPoly) {
        *self = QPoly::add(self, &rhs);
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        *self = QPoly::sub(self, rhs);
    }
}

impl SubAssign<QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: QPoly) {
        *self = QPoly::sub(self, &rhs);
    }
}

impl Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a QPoly> for QPoly {
    fn sum<I: Iterator<Item = &'a QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

fn fmt_power(e: Exponent) -> String {
    if e.is_one() {
        "q".to_string()
    } else if e.is_integer() {
        format!("q^{}", e.numer())
    } else {
        format!("q^({}/{})", e.numer(), e.denom())
    }
}

/// Canonical text: ascending exponents, `c*q^(a/b)` terms joined by ` + ` or ` - `.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", fmt_power(e))?;
            } else {
                write!(f, "{mag}*{}", fmt_power(e))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_coeffs(cs)
    }

    #[test]
    fn add_cancels_to_canonical_form() {
        let a = p(&[1, 1]);
        let b = QPoly::monomial(r(1, 1), -1);
        assert_eq!(a + b, QPoly::one());
        assert_eq!(QPoly::zero() + p(&[3, 0, 2]), p(&[3, 0, 2]));
        let h = QPoly::q_pow(r(1, 2));
        assert_eq!(&h + &h, QPoly::monomial(r(1, 2), 2));
    }

    #[test]
    fn half_exponents_collapse_back_to_integer_lattice() {
        let h = QPoly::q_pow(r(1, 2));
        let prod = &h * &h;
        assert_eq!(prod, QPoly::q_int(1));
        assert_eq!(prod.lattice_denominator(), 1);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(&[1, 1]) * p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(QPoly::q_int(-2) * QPoly::q_int(2), QPoly::one());
        assert_eq!(p(&[1, 1, 1]) * p(&[1, 0, 1]), p(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn truncated_mul_drops_high_terms() {
        let t = Truncation::integer(2).unwrap();
        let got = p(&[1, 1, 1]).mul_truncated(&p(&[1, 0, 1]), &t);
        assert_eq!(got, p(&[1, 1, 2]));
    }

    #[test]
    fn big_coefficients_take_the_bigint_path() {
        let big = BigInt::from(i64::MAX) * BigInt::from(4);
        let a = QPoly::constant(big.clone()) + QPoly::q_int(1);
        let sq = &a * &a;
        assert_eq!(sq.coeff(r(0, 1)), &big * &big);
        assert_eq!(sq.coeff(r(1, 1)), &big * 2);
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(qpoch(1, 2), p(&[1, -1, -1, 1]));
        assert!(qpoch(0, 1).is_zero());
        assert_eq!(qpoch(-2, 1), QPoly::one() - QPoly::q_int(-2));
        assert_eq!(qpoch(5, 0), QPoly::one());
    }

    #[test]
    fn signed_base2_pochhammer() {
        assert_eq!(qpoch_signed_base2(0), QPoly::one());
        assert_eq!(qpoch_signed_base2(1), p(&[1, 1]));
        assert_eq!(qpoch_signed_base2(2), p(&[1, 1, 0, 1, 1]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[1, 0, -1]).exact_div(&p(&[1, -1])).unwrap(), p(&[1, 1]));
        let x = p(&[2, 0, 5, -1]);
        assert_eq!(x.exact_div(&x).unwrap(), QPoly::one());
        assert_eq!(p(&[1, -1, -1, 1]).exact_div(&p(&[1, 0, -1])).unwrap(), p(&[1, -1]));
        assert_eq!(p(&[1, 1]).exact_div(&p(&[1, 0, 1])), Err(Error::NonExactDivision));
        assert_eq!(p(&[1]).exact_div(&QPoly::zero()), Err(Error::DivisionByZero));
        // Laurent quotient
        let lq = QPoly::q_int(-3) * p(&[1, 2, 1]);
        assert_eq!(lq.exact_div(&p(&[1, 1])).unwrap(), QPoly::q_int(-3) * p(&[1, 1]));
    }

    #[test]
    fn series_inversion() {
        let t3 = Truncation::integer(3).unwrap();
        assert_eq!(p(&[1, -1]).invert_truncated(&t3).unwrap(), p(&[1, 1, 1, 1]));
        assert_eq!(QPoly::one().invert_truncated(&t3).unwrap(), QPoly::one());
        let t4 = Truncation::integer(4).unwrap();
        assert_eq!(qpoch(1, 3).invert_truncated(&t4).unwrap(), p(&[1, 1, 2, 3, 4]));
        assert_eq!(p(&[2, 1]).invert_truncated(&t3), Err(Error::NonUnitConstantTerm));
        assert_eq!(p(&[0, 1]).invert_truncated(&t3), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn euler_inverse_small() {
        assert_eq!(euler_inverse_truncated(&Truncation::integer(3).unwrap()), p(&[1, 1, 2, 3]));
        assert_eq!(euler_inverse_truncated(&Truncation::integer(0).unwrap()), QPoly::one());
        assert_eq!(euler_inverse_truncated(&Truncation::integer(5).unwrap()), p(&[1, 1, 2, 3, 5, 7]));
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(p(&[1, 1, 1]).eval_at_one().unwrap(), BigInt::from(3));
        assert_eq!(QPoly::zero().eval_at_one().unwrap(), BigInt::zero());
        assert_eq!(p(&[1, 1, 2, 1, 1]).eval_at_one().unwrap(), BigInt::from(6));
        assert_eq!(QPoly::q_pow(r(1, 2)).eval_at_one(), Err(Error::NonPolynomial));
        assert_eq!(QPoly::q_int(-1).eval_at_one(), Err(Error::NonPolynomial));
        assert_eq!(qpoch(1, 4).eval_at_one().unwrap(), BigInt::zero());
    }

    #[test]
    fn negative_truncation_rejected() {
        assert!(matches!(Truncation::integer(-1), Err(Error::NegativeTruncation(_))));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, 1, 2, 1, 1]).to_string(), "1 + q + 2*q^2 + q^3 + q^4");
        assert_eq!(QPoly::zero().to_string(), "0");
        let x = QPoly::monomial(r(-1, 2), -3) + QPoly::constant(2) - QPoly::q_int(-2);
        assert_eq!(x.to_string(), "-q^-2 - 3*q^(-1/2) + 2");
        assert_eq!(QPoly::monomial(r(3, 4), 5).to_string(), "5*q^(3/4)");
    }

    #[test]
    fn shift_and_coeff() {
        let x = p(&[1, 2]).shift(r(1, 3));
        assert_eq!(x.coeff(r(4, 3)), BigInt::from(2));
        assert_eq!(x.coeff(r(1, 1)), BigInt::zero());
        assert_eq!(x.lowest_exponent(), Some(r(1, 3)));
    }
}

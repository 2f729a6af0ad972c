//! Truncated q-series: the Durfee rectangle identity, conjugate Bailey pairs,
//! the double limit of the level-N q-Saalschütz sum, three routes to the
//! A1 string functions and the product sides of the tree identities.

use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::lattice::{enumerate_by_form, for_each_admissible, CartanData};
use crate::multinom::abf_config_sum;
use crate::qbinom::binom_product;
use crate::qpoly::{euler_inverse_truncated, qpoch, qpoch_inverse_truncated, qpoch_signed_base2, Exponent, QPoly, Truncation};
use crate::saalschutz::end_vector;

fn int(x: i64) -> Exponent {
    Exponent::from_integer(x)
}

/// `p * S` correct up to `trunc`, where `series(cap)` returns the power series
/// `S` truncated at `cap`.
fn times_series<F: FnOnce(&Truncation) -> QPoly>(p: &QPoly, trunc: &Truncation, series: F) -> QPoly {
    let Some(low) = p.lowest_exponent() else {
        return QPoly::zero();
    };
    match trunc.before_shift(low) {
        Some(cap) => p.mul_truncated(&series(&cap), trunc),
        None => QPoly::zero(),
    }
}

/// `1/((q)_a (q)_b)` truncated; zero when either index is negative.
fn inv_qfact_pair(a: i64, b: i64, trunc: &Truncation) -> QPoly {
    if a < 0 || b < 0 {
        return QPoly::zero();
    }
    qpoch_inverse_truncated(1, a as usize, trunc).mul_truncated(&qpoch_inverse_truncated(1, b as usize, trunc), trunc)
}

/// `1/(q)_eta = prod_k 1/(q)_{eta_k}` truncated.
fn inv_qfact_vec(eta: &[i64], trunc: &Truncation) -> QPoly {
    let mut acc = QPoly::one();
    for &h in eta {
        acc = acc.mul_truncated(&qpoch_inverse_truncated(1, h as usize, trunc), trunc);
    }
    acc
}

/// `sum_eta q^{eta C^{-1} eta} / (q)_eta` over admissible `eta`, truncated.
fn eta_series(c: &CartanData, offset: Exponent, trunc: &Truncation) -> QPoly {
    let mut acc = QPoly::zero();
    for eta in enumerate_by_form(c, offset, trunc.degree_cap()) {
        let e = c.form(&eta, &eta);
        if let Some(cap) = trunc.before_shift(e) {
            acc += inv_qfact_vec(&eta, &cap).shift(e);
        }
    }
    acc.truncate(trunc)
}

/// `sum_n q^{n C^{-1} n} [m+n; n]` over the admissible solutions of `m = C^{-1}(v - 2n)`.
fn mn_sum(c: &CartanData, v: &[i64], offset: Exponent) -> QPoly {
    let mut acc = QPoly::zero();
    for_each_admissible(c, v, offset, |n, m| {
        acc += binom_product(m, n).shift(c.form(n, n));
    });
    acc
}

/// Both sides of `sum_i q^{i(i+ell)} / ((q)_i (q)_{i+ell}) = 1/(q)_inf`.
pub fn durfee_sides(ell: i64, trunc: &Truncation) -> Result<(QPoly, QPoly)> {
    if ell < 0 {
        return invalid("ell must be nonnegative");
    }
    let cap = trunc.degree_cap();
    let mut lhs = QPoly::zero();
    let mut i = 0;
    while int(i * (i + ell)) <= cap {
        let e = int(i * (i + ell));
        if let Some(t) = trunc.before_shift(e) {
            lhs += inv_qfact_pair(i, i + ell, &t).shift(e);
        }
        i += 1;
    }
    Ok((lhs.truncate(trunc), euler_inverse_truncated(trunc)))
}

pub fn durfee_check(ell: i64, trunc: &Truncation) -> Result<bool> {
    let (a, b) = durfee_sides(ell, trunc)?;
    Ok(a == b)
}

fn check_level_sigma(level: usize, sigma: u8) -> Result<CartanData> {
    if sigma > 1 {
        return invalid("sigma must be 0 or 1");
    }
    CartanData::a_type(level)
}

/// Both sides of the `L1, L2, M -> inf` limit of the level-N q-Saalschütz sum.
pub fn limlm_sides(level: usize, ell: i64, sigma: u8, trunc: &Truncation) -> Result<(QPoly, QPoly)> {
    let c = check_level_sigma(level, sigma)?;
    let n = level as i64;
    if (ell + sigma as i64 * n) % 2 != 0 {
        return invalid("ell + sigma*N must be even");
    }
    let cap = trunc.degree_cap();
    let mut lhs = QPoly::zero();
    let mut i = 0.max(-ell);
    // every other factor has nonnegative exponents
    while Exponent::new(i * (i + ell), n) <= cap {
        let v = end_vector(c.rank(), 2 * i + ell, 0);
        let inner = mn_sum(&c, &v, Exponent::new(2 * i + ell + sigma as i64 * n, 2 * n));
        let term = inner.shift(Exponent::new(i * (i + ell), n));
        lhs += times_series(&term, trunc, |t| inv_qfact_pair(i, i + ell, t));
        i += 1;
    }
    let eta = eta_series(&c, Exponent::new(ell + sigma as i64 * n, 2 * n), trunc);
    let rhs = eta.mul_truncated(&euler_inverse_truncated(trunc), trunc);
    Ok((lhs.truncate(trunc), rhs))
}

pub fn limlm_check(level: usize, ell: i64, sigma: u8, trunc: &Truncation) -> Result<bool> {
    let (a, b) = limlm_sides(level, ell, sigma, trunc)?;
    Ok(a == b)
}

/// Parameters of a level-N conjugate Bailey pair with `a = q^ell`.
/// `m = None` stands for `M = inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaileyPairQuery {
    pub level: usize,
    pub ell: i64,
    pub m: Option<i64>,
    pub sigma: u8,
    pub trunc: Truncation,
}

impl BaileyPairQuery {
    pub fn new(level: usize, ell: i64, m: Option<i64>, sigma: u8, trunc: Truncation) -> Result<Self> {
        check_level_sigma(level, sigma)?;
        if ell < 0 {
            return invalid("ell must be nonnegative");
        }
        if m.is_some_and(|m| m < 0) {
            return invalid("M must be nonnegative");
        }
        if (ell + sigma as i64 * level as i64) % 2 != 0 {
            return invalid("ell + sigma*N must be even");
        }
        Ok(BaileyPairQuery { level, ell, m, sigma, trunc })
    }

    fn offset(&self, l: i64) -> Exponent {
        let n = self.level as i64;
        Exponent::new(2 * l + self.ell + self.sigma as i64 * n, 2 * n)
    }

    fn prefactor(&self, l: i64) -> Exponent {
        Exponent::new(self.ell * l + l * l, self.level as i64)
    }

    /// Largest `L` whose terms can reach the truncation.
    pub fn l_max(&self) -> i64 {
        let mut l = 0;
        while self.prefactor(l + 1) <= self.trunc.degree_cap() && self.m.is_none_or(|m| l < m) {
            l += 1;
        }
        l
    }

    /// `delta_L`, truncated.
    pub fn delta(&self, l: i64) -> Result<QPoly> {
        let c = CartanData::a_type(self.level)?;
        if self.m.is_some_and(|m| l > m) {
            return Ok(QPoly::zero());
        }
        let v = end_vector(c.rank(), 2 * l + self.ell, 0);
        let term = mn_sum(&c, &v, self.offset(l)).shift(self.prefactor(l));
        Ok(times_series(&term, &self.trunc, |t| match self.m {
            Some(m) => qpoch_inverse_truncated(1, (m - l) as usize, t),
            None => euler_inverse_truncated(t),
        }))
    }

    /// `gamma_L`, truncated.
    pub fn gamma(&self, l: i64) -> Result<QPoly> {
        let c = CartanData::a_type(self.level)?;
        let pre = self.prefactor(l);
        let Some(inner_cap) = self.trunc.before_shift(pre) else {
            return Ok(QPoly::zero());
        };
        let inner = match self.m {
            Some(m) if l > m => return Ok(QPoly::zero()),
            Some(m) => {
                let v = end_vector(c.rank(), m + l + self.ell, m - l);
                let s = mn_sum(&c, &v, self.offset(l));
                times_series(&s, &inner_cap, |t| {
                    qpoch_inverse_truncated(1, (m - l) as usize, t)
                        .mul_truncated(&qpoch_inverse_truncated(self.ell + 1, (m + l) as usize, t), t)
                })
            }
            None => {
                let s = eta_series(&c, self.offset(l), &inner_cap);
                let tail = euler_inverse_truncated(&inner_cap)
                    .mul_truncated(&qpoch_inverse_truncated(self.ell + 1, inner_cap.degree_cap().to_integer() as usize + 1, &inner_cap), &inner_cap);
                s.mul_truncated(&tail, &inner_cap)
            }
        };
        Ok(inner.shift(pre).truncate(&self.trunc))
    }

    /// `sum_{r >= L} delta_r / ((q)_{r-L} (q^{ell+1})_{r+L})`, truncated.
    pub fn gamma_from_delta(&self, l: i64) -> Result<QPoly> {
        let mut acc = QPoly::zero();
        let mut r = l;
        loop {
            if self.m.is_some_and(|m| r > m) || self.prefactor(r) > self.trunc.degree_cap() {
                break;
            }
            let d = self.delta(r)?;
            acc += times_series(&d, &self.trunc, |t| {
                qpoch_inverse_truncated(1, (r - l) as usize, t)
                    .mul_truncated(&qpoch_inverse_truncated(self.ell + 1, (r + l) as usize, t), t)
            });
            r += 1;
        }
        Ok(acc.truncate(&self.trunc))
    }
}

/// Checks the conjugate Bailey pair relation for every `L <= l_max`.
pub fn conjugate_pair_check(bq: &BaileyPairQuery) -> Result<bool> {
    for l in 0..=bq.l_max() {
        if bq.gamma(l)? != bq.gamma_from_delta(l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A level-N A1 string function `C^N_{m,ell}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StringFunctionQuery {
    pub level: usize,
    pub m: i64,
    pub ell: i64,
    pub sigma: u8,
    pub trunc: Truncation,
}

impl StringFunctionQuery {
    pub fn new(level: usize, m: i64, ell: i64, sigma: u8, trunc: Truncation) -> Result<Self> {
        check_level_sigma(level, sigma)?;
        if ell < 0 || ell > level as i64 {
            return invalid("need 0 <= ell <= N");
        }
        if (m - ell) % 2 != 0 {
            return invalid("m must be congruent to ell mod 2");
        }
        Ok(StringFunctionQuery { level, m, ell, sigma, trunc })
    }

    fn n(&self) -> i64 {
        self.level as i64
    }
}

/// Exponent of the spinon-form prefactor.
pub fn spinon_prefactor(sq: &StringFunctionQuery) -> Exponent {
    let n = sq.n();
    Exponent::new((sq.ell + 1).pow(2), 4 * (n + 2)) - Exponent::new(sq.m * sq.m, 4 * n) - Exponent::new(1, 8)
}

/// Exponent of the fermionic-form prefactor.
pub fn fermionic_prefactor(sq: &StringFunctionQuery) -> Exponent {
    let n = sq.n();
    Exponent::new((sq.ell + 1).pow(2), 4 * (n + 2)) - Exponent::new(sq.ell * sq.ell, 4 * n) - Exponent::new(1, 8)
}

/// Ratio `q^{(ell^2 - m^2)/(4N)}` between the two sum parts' prefactors.
pub fn string_prefactor_ratio(sq: &StringFunctionQuery) -> Exponent {
    spinon_prefactor(sq) - fermionic_prefactor(sq)
}

/// Spinon form: the prefactor times `sum_i X^{N+2}_{ell+1}(2i+m) / ((q)_i (q)_{i+m})`.
pub fn string_spinon(sq: &StringFunctionQuery) -> QPoly {
    let pre = spinon_prefactor(sq);
    let Some(cap) = sq.trunc.before_shift(pre) else {
        return QPoly::zero();
    };
    let (p, s) = (sq.n() + 2, sq.ell + 1);
    let mut acc = QPoly::zero();
    let mut i = 0.max(-sq.m);
    // X_s^p(L) has no terms below (L - s + 1)/2
    while Exponent::new(2 * i + sq.m - s + 1, 2) <= cap.degree_cap() {
        let x = abf_config_sum(p, s, 2 * i + sq.m);
        acc += times_series(&x, &cap, |t| inv_qfact_pair(i, i + sq.m, t));
        i += 1;
    }
    acc.shift(pre).truncate(&sq.trunc)
}

/// Fermionic form: the prefactor times
/// `sum_i q^{i(i+m)/N} / ((q)_i (q)_{i+m}) sum_n q^{n C^{-1}(n - e_ell)} [m+n; n]`.
pub fn string_fermionic(sq: &StringFunctionQuery) -> Result<QPoly> {
    let c = CartanData::a_type(sq.level)?;
    let n = sq.n();
    let pre = fermionic_prefactor(sq);
    let Some(cap) = sq.trunc.before_shift(pre) else {
        return Ok(QPoly::zero());
    };
    let e = c.unit(sq.ell as usize);
    // n C^{-1} (n - e) >= -C^{-1}_{ll}/4 >= -N/16
    let slack = Exponent::new(n, 16);
    let mut acc = QPoly::zero();
    let mut i = 0.max(-sq.m);
    while Exponent::new(i * (i + sq.m), n) - slack <= cap.degree_cap() {
        let mut v = end_vector(c.rank(), 2 * i + sq.m, 0);
        for (x, y) in v.iter_mut().zip(&e) {
            *x += y;
        }
        let mut inner = QPoly::zero();
        for_each_admissible(&c, &v, Exponent::new(2 * i + sq.m + sq.ell, 2 * n), |nv, mv| {
            let shifted: Vec<i64> = nv.iter().zip(&e).map(|(a, b)| a - b).collect();
            inner += binom_product(mv, nv).shift(c.form(nv, &shifted));
        });
        let term = inner.shift(Exponent::new(i * (i + sq.m), n));
        acc += times_series(&term, &cap, |t| inv_qfact_pair(i, i + sq.m, t));
        i += 1;
    }
    Ok(acc.shift(pre).truncate(&sq.trunc))
}

/// Closed form for `ell = sigma N`:
/// `q^{1/(4(N+2)) - 1/8} / (q)_inf sum_eta q^{eta C^{-1} eta} / (q)_eta`.
pub fn string_lp(sq: &StringFunctionQuery) -> Result<QPoly> {
    let n = sq.n();
    if sq.ell != sq.sigma as i64 * n {
        return invalid("the closed form needs ell = sigma*N");
    }
    let c = CartanData::a_type(sq.level)?;
    let pre = Exponent::new(1, 4 * (n + 2)) - Exponent::new(1, 8);
    let Some(cap) = sq.trunc.before_shift(pre) else {
        return Ok(QPoly::zero());
    };
    let eta = eta_series(&c, Exponent::new(sq.m + sq.sigma as i64 * n, 2 * n), &cap);
    Ok(eta.mul_truncated(&euler_inverse_truncated(&cap), &cap).shift(pre))
}

/// The three tree identities with infinite-product sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Ising,
    RogersRamanujan,
    Slater,
}

/// `prod (1 - q^e)` over the listed exponents.
fn prod_one_minus(exps: impl IntoIterator<Item = i64>) -> QPoly {
    let mut acc = QPoly::one();
    for e in exps {
        acc = acc.mul_one_minus_q_pow(int(e));
    }
    acc
}

fn residues(modulus: i64, rs: &[i64], d: i64) -> impl Iterator<Item = i64> + '_ {
    (0..=d / modulus + 1).flat_map(move |j| rs.iter().map(move |r| modulus * j + r)).filter(move |e| *e >= 1 && *e <= d)
}

/// The infinite product, truncated.
pub fn product_side(which: ProductKind, trunc: &Truncation) -> QPoly {
    let d = trunc.degree_cap().floor().to_integer().max(0);
    let denominator = |rs: &[i64], modulus: i64| prod_one_minus(residues(modulus, rs, d).collect::<Vec<_>>());
    match which {
        ProductKind::RogersRamanujan => denominator(&[1, 4], 5).invert_truncated(trunc).expect("unit constant term"),
        ProductKind::Slater => denominator(&[1, 4, 7], 8).invert_truncated(trunc).expect("unit constant term"),
        ProductKind::Ising => {
            let mut num = QPoly::one();
            for e in residues(8, &[3, 5], d) {
                num = QPoly::add(&num, &num.shift(int(e))).truncate(trunc);
            }
            let num = num.mul_truncated(&prod_one_minus(residues(8, &[0], d)), trunc);
            let den = prod_one_minus(residues(2, &[0], d));
            num.mul_truncated(&den.invert_truncated(trunc).expect("unit constant term"), trunc)
        }
    }
}

/// The corresponding fermionic sum, truncated.
pub fn sum_side(which: ProductKind, trunc: &Truncation) -> QPoly {
    let d = trunc.degree_cap().floor().to_integer().max(0);
    let mut acc = QPoly::zero();
    match which {
        ProductKind::Ising => {
            let mut m = 0;
            while m * m <= 2 * d {
                let e = Exponent::new(m * m, 2);
                if let Some(t) = trunc.before_shift(e) {
                    acc += qpoch_inverse_truncated(1, m as usize, &t).shift(e);
                }
                m += 2;
            }
        }
        ProductKind::RogersRamanujan => {
            let mut k = 0;
            while k * k <= d {
                let t = trunc.before_shift(int(k * k)).expect("within cap");
                acc += qpoch_inverse_truncated(1, k as usize, &t).shift(int(k * k));
                k += 1;
            }
        }
        ProductKind::Slater => {
            let mut k = 0;
            while k * k <= d {
                let t = trunc.before_shift(int(k * k)).expect("within cap");
                // (q^2; q^2)_k
                let den = prod_one_minus((1..=k).map(|j| 2 * j)).invert_truncated(&t).expect("unit constant term");
                acc += qpoch_signed_base2(k as usize).mul_truncated(&den, &t).shift(int(k * k));
                k += 1;
            }
        }
    }
    acc.truncate(trunc)
}

pub fn product_check(which: ProductKind, trunc: &Truncation) -> bool {
    product_side(which, trunc) == sum_side(which, trunc)
}

/// Partition numbers `p(0..=d)` by the standard coin-change recurrence.
pub fn partition_numbers(d: usize) -> Vec<num_bigint::BigInt> {
    let mut p = vec![num_bigint::BigInt::zero(); d + 1];
    p[0] = 1.into();
    for part in 1..=d {
        for k in part..=d {
            let prev = p[k - part].clone();
            p[k] += prev;
        }
    }
    p
}

/// `(q)_inf` truncated, as a polynomial.
pub fn euler_truncated(trunc: &Truncation) -> QPoly {
    let d = trunc.degree_cap().floor().to_integer().max(0);
    qpoch(1, d as usize).truncate(trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(d: i64) -> Truncation {
        Truncation::integer(d).unwrap()
    }

    #[test]
    fn durfee_examples() {
        let (a, b) = durfee_sides(0, &tr(3)).unwrap();
        assert_eq!(a, QPoly::from_coeffs(&[1, 1, 2, 3]));
        assert_eq!(a, b);
        assert_eq!(durfee_sides(0, &tr(0)).unwrap().0, QPoly::one());
        assert!(durfee_check(2, &tr(10)).unwrap());
    }

    #[test]
    fn limlm_examples() {
        assert!(limlm_check(1, 0, 0, &tr(12)).unwrap());
        assert!(limlm_check(2, 0, 0, &tr(12)).unwrap());
        assert!(limlm_check(3, 1, 1, &tr(10)).unwrap());
        assert!(limlm_sides(2, 1, 0, &tr(5)).is_err());
    }

    #[test]
    fn bailey_examples() {
        let q = BaileyPairQuery::new(1, 0, Some(3), 0, tr(12)).unwrap();
        assert!(conjugate_pair_check(&q).unwrap());
        let q = BaileyPairQuery::new(2, 0, Some(4), 0, tr(10)).unwrap();
        assert!(conjugate_pair_check(&q).unwrap());
        assert!(q.gamma(5).unwrap().is_zero());
        assert!(q.delta(5).unwrap().is_zero());
        let q = BaileyPairQuery::new(2, 0, None, 0, tr(8)).unwrap();
        assert!(conjugate_pair_check(&q).unwrap());
    }

    #[test]
    fn string_routes() {
        let sq = StringFunctionQuery::new(1, 0, 0, 0, tr(10)).unwrap();
        let lp = string_lp(&sq).unwrap();
        let pre = Exponent::new(1, 12) - Exponent::new(1, 8);
        assert_eq!(lp, euler_inverse_truncated(&tr(10).before_shift(pre).unwrap()).shift(pre));
        assert_eq!(string_fermionic(&sq).unwrap(), lp);
        assert_eq!(string_spinon(&sq), lp);
        let sq = StringFunctionQuery::new(2, 1, 1, 0, tr(8)).unwrap();
        assert_eq!(string_spinon(&sq), string_fermionic(&sq).unwrap());
        assert_eq!(string_prefactor_ratio(&sq), int(0));
        assert!(StringFunctionQuery::new(2, 0, 1, 0, tr(8)).is_err());
    }

    #[test]
    fn products() {
        assert_eq!(product_side(ProductKind::RogersRamanujan, &tr(4)), QPoly::from_coeffs(&[1, 1, 1, 1, 2]));
        for k in [ProductKind::Ising, ProductKind::RogersRamanujan, ProductKind::Slater] {
            assert_eq!(product_side(k, &tr(0)), QPoly::one());
            assert!(product_check(k, &tr(12)), "{k:?}");
        }
    }

    #[test]
    fn partitions() {
        let p = partition_numbers(10);
        assert_eq!(p[10], 42.into());
    }
}

//! Gaussian binomials, standard and modified, with a shared memo table.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qpoly::{Exponent, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `(q)_{m+n} / ((q)_m (q)_n)` for `m, n >= 0`, zero otherwise.
    Standard,
    /// `(q^{n+1})_m / (q)_m` for `m >= 0` and any `n`, zero for `m < 0`.
    Modified,
}

/// Memo of `[top over bottom]` values keyed by `(top, bottom, variant)`.
#[derive(Debug, Default)]
pub struct QBinomTable {
    cache: RwLock<HashMap<(i64, i64, Variant), QPoly>>,
    disabled: bool,
}

impl QBinomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table that never stores anything.
    pub fn uncached() -> Self {
        QBinomTable {
            cache: RwLock::default(),
            disabled: true,
        }
    }

    pub fn global() -> &'static QBinomTable {
        static TABLE: OnceLock<QBinomTable> = OnceLock::new();
        TABLE.get_or_init(QBinomTable::new)
    }

    pub fn len(&self) -> usize {
        self.cache.read().map(|c| c.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `[top over bottom]` in the requested variant.
    pub fn get(&self, top: i64, bottom: i64, variant: Variant) -> QPoly {
        let m = bottom;
        let n = top - bottom;
        let trivial = match variant {
            Variant::Standard => m < 0 || n < 0,
            Variant::Modified => m < 0 || (n < 0 && top >= 0),
        };
        if trivial {
            return QPoly::zero();
        }
        if m == 0 {
            return QPoly::one();
        }
        let key = match variant {
            // both variants agree on the standard range; share entries
            Variant::Modified if n >= 0 => (top, bottom, Variant::Standard),
            _ => (top, bottom, variant),
        };
        if !self.disabled {
            if let Some(p) = self.cache.read().ok().and_then(|c| c.get(&key).cloned()) {
                return p;
            }
        }
        let value = match key.2 {
            Variant::Standard => gaussian(top, bottom.min(top - bottom)),
            Variant::Modified => {
                // m >= 0 and m + n < 0: (-1)^m q^{m(2n+m+1)/2} [-n-1 over m]
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let shift = Exponent::from_integer(m * (2 * n + m + 1) / 2);
                let base = self.get(-n - 1, m, Variant::Standard);
                base.shift(shift).scale(&BigInt::from(sign))
            }
        };
        if !self.disabled {
            if let Ok(mut c) = self.cache.write() {
                c.entry(key).or_insert_with(|| value.clone());
            }
        }
        value
    }
}

/// `[a over b]` for `0 <= b <= a` built as the running product of
/// `(1 - q^{a-b+k}) / (1 - q^k)`; every partial product is a polynomial.
fn gaussian(a: i64, b: i64) -> QPoly {
    let deg = (b * (a - b)) as usize;
    let mut c: Vec<BigInt> = vec![BigInt::zero(); deg + b as usize + 1];
    c[0] = BigInt::from(1);
    let mut cur = 0usize;
    for k in 1..=b {
        let t = (a - b + k) as usize;
        let k = k as usize;
        // multiply by 1 - q^t
        for j in (t..=cur + t).rev() {
            let v = c[j - t].clone();
            c[j] -= v;
        }
        cur += t;
        // divide by 1 - q^k
        for j in k..=cur {
            let v = c[j - k].clone();
            c[j] += v;
        }
        cur -= k;
        debug_assert!(c[cur + 1..=cur + k].iter().all(|x| x.is_zero()));
    }
    QPoly::from_coeffs(&c[..=cur])
}

/// `[top over bottom]` with the standard definition.
pub fn binom(top: i64, bottom: i64) -> QPoly {
    QBinomTable::global().get(top, bottom, Variant::Standard)
}

/// `[top over bottom]` with the modified definition.
pub fn binom_modified(top: i64, bottom: i64) -> QPoly {
    QBinomTable::global().get(top, bottom, Variant::Modified)
}

/// Standard binomial with rational entries that must be integers.
pub fn binom_exact(top: Exponent, bottom: Exponent) -> Result<QPoly> {
    if !top.is_integer() || !bottom.is_integer() {
        return Err(Error::InvalidParams(format!(
            "non-integral q-binomial entries [{top} over {bottom}]"
        )));
    }
    Ok(binom(top.to_integer(), bottom.to_integer()))
}

/// `[m+n over m]`, standard definition.
pub fn qbin_standard(m: i64, n: i64) -> QPoly {
    binom(m + n, m)
}

/// `[m+n over m]`, modified definition.
pub fn qbin_modified(m: i64, n: i64) -> QPoly {
    binom_modified(m + n, m)
}

/// `prod_j [m_j + n_j over m_j]`; empty product is 1.
pub fn qbin_vector(pairs: &[(i64, i64)], variant: Variant) -> QPoly {
    let mut acc = QPoly::one();
    for &(m, n) in pairs {
        let f = match variant {
            Variant::Standard => qbin_standard(m, n),
            Variant::Modified => qbin_modified(m, n),
        };
        if f.is_zero() {
            return QPoly::zero();
        }
        if !f.is_one() {
            acc = &acc * &f;
        }
    }
    acc
}

/// `prod_j [m_j + n_j over n_j]` for the `(m,n)`-systems, standard definition.
pub fn binom_product(m: &[i64], n: &[i64]) -> QPoly {
    let pairs: Vec<(i64, i64)> = m.iter().zip(n).map(|(&mi, &ni)| (mi, ni)).collect();
    qbin_vector(&pairs, Variant::Standard)
}

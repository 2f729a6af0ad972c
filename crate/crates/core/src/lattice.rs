//! Cartan data for `A_{N-1}` and the tadpole graph, and the linear
//! `(m,n)`-systems `m + n = (I m + v)/2` built from them.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::Exponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanKind {
    A,
    Tadpole,
}

/// Cartan matrix `C`, incidence matrix `I = 2 - C` and the exact inverse of `C`.
/// Level `N` gives rank `N - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    level: usize,
    kind: CartanKind,
    c: Vec<Vec<i64>>,
    inc: Vec<Vec<i64>>,
    cinv: Vec<Vec<Exponent>>,
    cinv_den: i64,
    cinv_num: Vec<Vec<i64>>,
}

/// One candidate `n` of an `(m,n)`-system together with its dependent `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSolution {
    pub n_vec: Vec<i64>,
    pub m_vec: Vec<Exponent>,
    pub source_vector: Vec<i64>,
    pub admissible: bool,
}

impl SystemSolution {
    /// `m` as integers, if every entry is integral.
    pub fn m_integral(&self) -> Option<Vec<i64>> {
        self.m_vec
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }
}

fn invert(c: &[Vec<i64>]) -> Vec<Vec<Exponent>> {
    let r = c.len();
    let mut a: Vec<Vec<Exponent>> = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v: Vec<Exponent> = row.iter().map(|&x| Exponent::from_integer(x)).collect();
            v.extend((0..r).map(|j| if i == j { Exponent::one() } else { Exponent::zero() }));
            v
        })
        .collect();
    for col in 0..r {
        let piv = (col..r).find(|&i| !a[i][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let inv = Exponent::one() / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for i in 0..r {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[r..].to_vec()).collect()
}

/// Builds the Cartan data of the given kind at level `N >= 1`.
pub fn cartan(level: usize, kind: CartanKind) -> Result<CartanData> {
    if level == 0 {
        return Err(Error::InvalidParams("level N must be at least 1".into()));
    }
    let r = level - 1;
    let mut inc = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            if i.abs_diff(j) == 1 {
                inc[i][j] = 1;
            }
        }
    }
    if kind == CartanKind::Tadpole && r > 0 {
        inc[0][0] = 1;
    }
    let c: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { 2 - inc[i][j] } else { -inc[i][j] }).collect())
        .collect();
    let cinv = invert(&c);
    let cinv_den = cinv.iter().flatten().fold(1i64, |d, x| d.lcm(x.denom()));
    let cinv_num = cinv
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (cinv_den / x.denom())).collect())
        .collect();
    Ok(CartanData {
        level,
        kind,
        c,
        inc,
        cinv,
        cinv_den,
        cinv_num,
    })
}

impl CartanData {
    pub fn a_type(level: usize) -> Result<Self> {
        cartan(level, CartanKind::A)
    }

    pub fn tadpole(level: usize) -> Result<Self> {
        cartan(level, CartanKind::Tadpole)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn rank(&self) -> usize {
        self.level - 1
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn incidence(&self) -> &[Vec<i64>] {
        &self.inc
    }

    pub fn inverse(&self) -> &[Vec<Exponent>] {
        &self.cinv
    }

    /// `C^{-1} x`.
    pub fn cinv_apply(&self, x: &[i64]) -> Vec<Exponent> {
        self.cinv_num
            .iter()
            .map(|row| Exponent::new(dot(row, x), self.cinv_den))
            .collect()
    }

    /// `(C^{-1} x)_k`, 0-based `k`.
    pub fn cinv_component(&self, k: usize, x: &[i64]) -> Exponent {
        Exponent::new(dot(&self.cinv_num[k], x), self.cinv_den)
    }

    /// `x C^{-1} y`; zero at rank 0.
    pub fn form(&self, x: &[i64], y: &[i64]) -> Exponent {
        let mut acc = 0i64;
        for (i, xi) in x.iter().enumerate() {
            if *xi != 0 {
                acc += xi * dot(&self.cinv_num[i], y);
            }
        }
        Exponent::new(acc, self.cinv_den)
    }

    /// `C x` with integer entries.
    pub fn c_apply(&self, x: &[i64]) -> Vec<i64> {
        self.c.iter().map(|row| dot(row, x)).collect()
    }

    /// Unit vector `e_k` (1-based) of the rank; `e_0` and `e_N` are zero.
    pub fn unit(&self, k: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        if (1..self.level).contains(&k) {
            e[k - 1] = 1;
        }
        e
    }

    fn check_len(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::InvalidParams(format!(
                "vector of length {} for rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `offset + (C^{-1} n)_1` is an integer. Rank 0 reduces to `offset` integral.
pub fn restriction_holds(c: &CartanData, n_vec: &[i64], offset: Exponent) -> bool {
    if c.rank() == 0 {
        return offset.is_integer();
    }
    (offset + c.cinv_component(0, n_vec)).is_integer()
}

/// Solves `m = C^{-1}(v - 2n)`.
pub fn solve_system(c: &CartanData, n_vec: &[i64], v: &[i64]) -> Result<SystemSolution> {
    c.check_len(n_vec)?;
    c.check_len(v)?;
    let rhs: Vec<i64> = v.iter().zip(n_vec).map(|(vi, ni)| vi - 2 * ni).collect();
    let m_vec = c.cinv_apply(&rhs);
    let admissible = m_vec.iter().all(|x| x.is_integer());
    Ok(SystemSolution {
        n_vec: n_vec.to_vec(),
        m_vec,
        source_vector: v.to_vec(),
        admissible,
    })
}

/// Calls `f(n, m)` for every `n >= 0` with integral `m = C^{-1}(v - 2n) >= 0`
/// and `offset + (C^{-1} n)_1` integral, in lexicographic order of `n`.
///
/// Search box: `m_k >= 0` forces `2 C^{-1}_kk n_k <= (C^{-1} v)_k <= C^{-1}_kk |v^+|_1`
/// because every entry of a row of `C^{-1}` is positive and at most the diagonal one.
pub fn for_each_admissible<F>(c: &CartanData, v: &[i64], offset: Exponent, mut f: F)
where
    F: FnMut(&[i64], &[i64]),
{
    let r = c.rank();
    if r == 0 {
        if offset.is_integer() {
            f(&[], &[]);
        }
        return;
    }
    let den = c.cinv_den;
    let cv: Vec<i64> = c.cinv_num.iter().map(|row| dot(row, v)).collect();
    if cv.iter().any(|x| *x < 0) {
        return;
    }
    let vplus: i64 = v.iter().filter(|x| **x > 0).sum();
    let bound = vplus / 2;
    // offset + (C^{-1}n)_1 in Z  <=>  off_num + row0.n == 0 mod off_den
    let off_den = den.lcm(offset.denom());
    let off_num = offset.numer() * (off_den / offset.denom());
    let row_scale = off_den / den;

    let mut n = vec![0i64; r];
    let mut used = vec![0i64; r];
    let mut m = vec![0i64; r];
    recurse(c, 0, bound, &cv, &mut n, &mut used, &mut m, off_num, off_den, row_scale, &mut f);
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: FnMut(&[i64], &[i64])>(
    c: &CartanData,
    depth: usize,
    bound: i64,
    cv: &[i64],
    n: &mut Vec<i64>,
    used: &mut Vec<i64>,
    m: &mut Vec<i64>,
    off_num: i64,
    off_den: i64,
    row_scale: i64,
    f: &mut F,
) {
    let r = n.len();
    if depth == r {
        let res = off_num + row_scale * used[0] / 2;
        if res.rem_euclid(off_den) != 0 {
            return;
        }
        for k in 0..r {
            let num = cv[k] - used[k];
            if num % c.cinv_den != 0 {
                return;
            }
            m[k] = num / c.cinv_den;
        }
        f(n, m);
        return;
    }
    for x in 0..=bound {
        // used_k = sum_j cinv_num[k][j] * 2 n_j; all rows must stay within cv
        let mut ok = true;
        for k in 0..r {
            let add = 2 * c.cinv_num[k][depth] * x;
            if used[k] + add > cv[k] {
                ok = false;
            }
        }
        if !ok {
            break;
        }
        for k in 0..r {
            used[k] += 2 * c.cinv_num[k][depth] * x;
        }
        n[depth] = x;
        recurse(c, depth + 1, bound, cv, n, used, m, off_num, off_den, row_scale, f);
        for k in 0..r {
            used[k] -= 2 * c.cinv_num[k][depth] * x;
        }
    }
    n[depth] = 0;
}

/// All admissible solutions of the system with source `v`.
///
/// With `require_nonneg` the domain is `n >= 0, m >= 0` (finite). Without it an
/// explicit `bound` on `|n_k|` is needed and only integrality and the restriction
/// are imposed.
pub fn enumerate_admissible(
    c: &CartanData,
    v: &[i64],
    offset: Exponent,
    require_nonneg: bool,
    bound: Option<i64>,
) -> Result<Vec<SystemSolution>> {
    c.check_len(v)?;
    let mut out = Vec::new();
    if require_nonneg {
        for_each_admissible(c, v, offset, |n, m| {
            if bound.is_none_or(|b| n.iter().all(|x| *x <= b)) {
                out.push(SystemSolution {
                    n_vec: n.to_vec(),
                    m_vec: m.iter().map(|&x| Exponent::from_integer(x)).collect(),
                    source_vector: v.to_vec(),
                    admissible: true,
                });
            }
        });
        return Ok(out);
    }
    let b = bound.ok_or(Error::UnboundedDomain)?;
    for n in box_points(c.rank(), -b, b) {
        if !restriction_holds(c, &n, offset) {
            continue;
        }
        let sol = solve_system(c, &n, v)?;
        if sol.admissible {
            out.push(sol);
        }
    }
    Ok(out)
}

/// Every integer point of `[lo, hi]^dim` in lexicographic order.
pub fn box_points(dim: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// All `eta >= 0` with `offset + (C^{-1} eta)_1` integral and
/// `eta C^{-1} eta <= cap`. Uses `eta C^{-1} eta >= C^{-1}_kk eta_k^2`.
pub fn enumerate_by_form(c: &CartanData, offset: Exponent, cap: Exponent) -> Vec<Vec<i64>> {
    let r = c.rank();
    if r == 0 {
        return if offset.is_integer() { vec![vec![]] } else { vec![] };
    }
    if cap < Exponent::zero() {
        return vec![];
    }
    let bounds: Vec<i64> = (0..r)
        .map(|k| {
            let lim = cap / c.cinv[k][k];
            let mut b = 0i64;
            while Exponent::from_integer((b + 1) * (b + 1)) <= lim {
                b += 1;
            }
            b
        })
        .collect();
    let mut out = Vec::new();
    let mut eta = vec![0i64; r];
    form_recurse(c, 0, &bounds, &mut eta, offset, cap, &mut out);
    out
}

fn form_recurse(
    c: &CartanData,
    depth: usize,
    bounds: &[i64],
    eta: &mut Vec<i64>,
    offset: Exponent,
    cap: Exponent,
    out: &mut Vec<Vec<i64>>,
) {
    if depth == eta.len() {
        if c.form(eta, eta) <= cap && restriction_holds(c, eta, offset) {
            out.push(eta.clone());
        }
        return;
    }
    for x in 0..=bounds[depth] {
        eta[depth] = x;
        // the form is monotone in each coordinate on the nonnegative cone
        if c.form(eta, eta) > cap {
            break;
        }
        form_recurse(c, depth + 1, bounds, eta, offset, cap, out);
    }
    eta[depth] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    #[test]
    fn small_inverses() {
        let c3 = CartanData::a_type(3).unwrap();
        assert_eq!(c3.inverse(), &[vec![r(2, 3), r(1, 3)], vec![r(1, 3), r(2, 3)]]);
        let c2 = CartanData::a_type(2).unwrap();
        assert_eq!(c2.matrix(), &[vec![2]]);
        assert_eq!(c2.inverse(), &[vec![r(1, 2)]]);
        let c1 = CartanData::a_type(1).unwrap();
        assert_eq!(c1.rank(), 0);
        assert_eq!(c1.form(&[], &[]), r(0, 1));
        assert!(cartan(0, CartanKind::A).is_err());
    }

    #[test]
    fn tadpole_matrices() {
        let t = CartanData::tadpole(4).unwrap();
        assert_eq!(t.incidence(), &[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(t.matrix(), &[vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.inverse()[i][j], r(3 - i.max(j) as i64, 1));
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let c1 = CartanData::a_type(1).unwrap();
        assert!(restriction_holds(&c1, &[], r(2, 1)));
        assert!(!restriction_holds(&c1, &[], r(1, 2)));
        let c2 = CartanData::a_type(2).unwrap();
        assert!(!restriction_holds(&c2, &[1], r(1, 4)));
        let c3 = CartanData::a_type(3).unwrap();
        assert!(restriction_holds(&c3, &[1, 1], r(0, 1)));
    }

    #[test]
    fn solve_examples() {
        let c2 = CartanData::a_type(2).unwrap();
        let s = solve_system(&c2, &[0], &[2]).unwrap();
        assert_eq!(s.m_integral(), Some(vec![1]));
        let s = solve_system(&c2, &[1], &[2]).unwrap();
        assert_eq!(s.m_integral(), Some(vec![0]));
        let c3 = CartanData::a_type(3).unwrap();
        let s = solve_system(&c3, &[1, 0], &[3, 0]).unwrap();
        assert_eq!(s.m_vec, vec![r(2, 3), r(1, 3)]);
        assert!(!s.admissible);
    }

    #[test]
    fn enumerate_examples() {
        let c1 = CartanData::a_type(1).unwrap();
        assert_eq!(enumerate_admissible(&c1, &[], r(0, 1), true, None).unwrap().len(), 1);
        assert!(enumerate_admissible(&c1, &[], r(1, 2), true, None).unwrap().is_empty());
        // N=2, v=(2): n=0 gives m=1, n=1 gives m=0; offset 1/2 demands n odd
        let c2 = CartanData::a_type(2).unwrap();
        let sols = enumerate_admissible(&c2, &[2], r(1, 2), true, None).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].n_vec, vec![1]);
        assert_eq!(sols[0].m_integral(), Some(vec![0]));
        let sols = enumerate_admissible(&c2, &[0], r(1, 2), true, None).unwrap();
        assert!(sols.is_empty());
        assert_eq!(
            enumerate_admissible(&c2, &[2], r(0, 1), false, None),
            Err(Error::UnboundedDomain)
        );
    }

    #[test]
    fn form_enumeration_respects_cap() {
        let c3 = CartanData::a_type(3).unwrap();
        let pts = enumerate_by_form(&c3, r(0, 1), r(2, 1));
        for p in &pts {
            assert!(c3.form(p, p) <= r(2, 1));
            assert!(restriction_holds(&c3, p, r(0, 1)));
        }
        assert!(pts.contains(&vec![0, 0]));
        assert!(pts.contains(&vec![1, 1]));
        assert!(!pts.contains(&vec![1, 0]));
    }
}

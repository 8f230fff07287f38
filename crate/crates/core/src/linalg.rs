//! Exact arithmetic helpers: rationals, small dense solves, sparse ranks and
//! Smith normal forms over the integers.
//!
//! Nothing in this crate touches floating point. Ranks of the (possibly large)
//! sparse matrices produced by hom complexes are computed by fraction-free
//! column elimination on integers, first in `i128` with overflow checks and,
//! if any intermediate overflows, again over arbitrary-precision integers.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Result, TcccError};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a JSON-style integer string into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || TcccError::Input(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Canonical `"p/q"` (or `"p"` for integers) rendering.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn is_integral(q: &Rational) -> bool {
    q.is_integer()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Solves the square system `a * x = b` exactly. Returns `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    det
}

/// Rank of a small dense rational matrix given as rows.
pub fn rank_dense(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].recip();
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..ncols {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the kernel of a dense rational matrix (rows given), as column vectors.
pub fn kernel_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..ncols {
                    let sub = &f * &m[r][c];
                    m[i][c] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// A sparse column: strictly increasing row indices with nonzero entries.
pub type SparseColumn<T> = Vec<(usize, T)>;

trait ElimInt: Clone + PartialEq + Sized {
    fn is_nil(&self) -> bool;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn checked_sub(&self, o: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl ElimInt for i128 {
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        i128::checked_mul(*self, *o)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        i128::checked_sub(*self, *o)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl ElimInt for BigInt {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// `a * x - b * y` on sparse columns, then divided by the content.
fn combine<T: ElimInt>(x: &[(usize, T)], a: &T, y: &[(usize, T)], b: &T) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, x[i].1.checked_mul(a)?));
            i += 1;
        } else if take_y {
            out.push((y[j].0, y[j].1.checked_mul(b)?.checked_neg()?));
            j += 1;
        } else {
            let v = x[i].1.checked_mul(a)?.checked_sub(&y[j].1.checked_mul(b)?)?;
            if !v.is_nil() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    if let Some(first) = out.first() {
        let mut g = first.1.clone();
        for (_, v) in &out[1..] {
            if g.is_unit() {
                break;
            }
            g = g.gcd(v);
        }
        if !g.is_unit() && !g.is_nil() {
            for (_, v) in out.iter_mut() {
                *v = v.div_exact(&g);
            }
        }
    }
    Some(out)
}

fn sparse_rank_generic<T: ElimInt>(cols: Vec<Vec<(usize, T)>>, nrows: usize) -> Option<usize> {
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; nrows];
    let mut reduced: Vec<Vec<(usize, T)>> = Vec::new();
    for mut col in cols {
        loop {
            let Some((low, lv)) = col.last().cloned() else { break };
            match pivot_of_row[low] {
                Some(p) => {
                    let pv = reduced[p].last().unwrap().1.clone();
                    let g = pv.gcd(&lv);
                    let a = pv.div_exact(&g);
                    let b = lv.div_exact(&g);
                    col = combine(&col, &a, &reduced[p], &b)?;
                }
                None => {
                    pivot_of_row[low] = Some(reduced.len());
                    reduced.push(col);
                    break;
                }
            }
        }
    }
    Some(reduced.len())
}

/// Exact rank of a sparse integer matrix given by columns.
pub fn sparse_rank_int(cols: &[SparseColumn<i64>], nrows: usize) -> usize {
    let small: Vec<Vec<(usize, i128)>> =
        cols.iter().map(|c| c.iter().map(|&(r, v)| (r, v as i128)).collect()).collect();
    if let Some(r) = sparse_rank_generic(small, nrows) {
        return r;
    }
    let big: Vec<Vec<(usize, BigInt)>> =
        cols.iter().map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect()).collect();
    sparse_rank_generic(big, nrows).expect("bigint elimination cannot overflow")
}

/// Exact rank of a sparse rational matrix given by columns. Each column is
/// scaled by the lcm of its denominators, which preserves rank.
pub fn sparse_rank(cols: &[SparseColumn<Rational>], nrows: usize) -> usize {
    let mut all_small = true;
    let big: Vec<Vec<(usize, BigInt)>> = cols
        .iter()
        .map(|c| {
            let l = c.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            c.iter()
                .map(|(r, v)| {
                    let x = v.numer() * (&l / v.denom());
                    if x.to_i64().is_none() {
                        all_small = false;
                    }
                    (*r, x)
                })
                .collect()
        })
        .collect();
    if all_small {
        let small: Vec<SparseColumn<i64>> = big
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, v.to_i64().unwrap())).collect())
            .collect();
        return sparse_rank_int(&small, nrows);
    }
    sparse_rank_generic(big, nrows).expect("bigint elimination cannot overflow")
}

/// Smith normal form `left * a * right = diag` of an integer matrix.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub left: Vec<Vec<BigInt>>,
    pub diag: Vec<BigInt>,
    pub right: Vec<Vec<BigInt>>,
    pub rows: usize,
    pub cols: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn smith_normal_form(a: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let rows = a.len();
    let mut m = a.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let k = rows.min(cols);
    for t in 0..k {
        // Pick the smallest nonzero entry in the remaining block as pivot.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(m, left, right, rows, cols);
            };
            m.swap(t, pi);
            left.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in right.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let s = &q * &m[t][j];
                        m[i][j] -= s;
                    }
                    for j in 0..rows {
                        let s = &q * &left[t][j];
                        left[i][j] -= s;
                    }
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for i in 0..rows {
                        let s = &q * &m[i][t];
                        m[i][j] -= s;
                    }
                    for i in 0..cols {
                        let s = &q * &right[i][t];
                        right[i][j] -= s;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility condition on the remaining block.
            let mut fixed = true;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        for c in 0..cols {
                            let v = m[i][c].clone();
                            m[t][c] += v;
                        }
                        for c in 0..rows {
                            let v = left[i][c].clone();
                            left[t][c] += v;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if m[t][t].sign() == Sign::Minus {
            for c in 0..cols {
                m[t][c] = -m[t][c].clone();
            }
            for c in 0..rows {
                left[t][c] = -left[t][c].clone();
            }
        }
    }
    finish(m, left, right, rows, cols)
}

fn finish(
    m: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
) -> SmithForm {
    let diag = (0..rows.min(cols)).map(|i| m[i][i].clone()).collect();
    SmithForm { left, diag, right, rows, cols }
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn mat_vec_int(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).fold(BigInt::zero(), |acc, (x, br)| acc + x * &br[j]))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(-2)), "-2");
    }

    #[test]
    fn floor_handles_negatives() {
        assert_eq!(floor_int(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(floor_int(&rat(1, 2)), BigInt::from(0));
        assert_eq!(floor_int(&int(-3)), BigInt::from(-3));
    }

    #[test]
    fn solve_and_det() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert_eq!(determinant(&a), int(5));
        assert!(solve(&[vec![int(1), int(2)], vec![int(2), int(4)]], &[int(0), int(1)]).is_none());
    }

    #[test]
    fn sparse_rank_matches_dense() {
        // rows: [1 1 0], [0 1 1], [1 2 1] -> rank 2
        let cols: Vec<SparseColumn<Rational>> = vec![
            vec![(0, int(1)), (2, int(1))],
            vec![(0, int(1)), (1, int(1)), (2, int(2))],
            vec![(1, int(1)), (2, int(1))],
        ];
        assert_eq!(sparse_rank(&cols, 3), 2);
        let dense = vec![
            vec![int(1), int(1), int(0)],
            vec![int(0), int(1), int(1)],
            vec![int(1), int(2), int(1)],
        ];
        assert_eq!(rank_dense(&dense), 2);
    }

    #[test]
    fn sparse_rank_survives_overflow() {
        let huge = i64::MAX / 3;
        let cols: Vec<SparseColumn<i64>> =
            vec![vec![(0, huge), (1, huge - 1)], vec![(0, huge - 1), (1, huge)], vec![(0, 7), (1, 7)]];
        assert_eq!(sparse_rank_int(&cols, 2), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let rows = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert!(dot(r, v).is_zero());
            }
        }
    }

    #[test]
    fn smith_form_reconstructs() {
        let a = bi(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a, 3);
        let d = mul(&mul(&s.left, &a), &s.right);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(d[i][j].is_zero());
                }
            }
        }
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }
}

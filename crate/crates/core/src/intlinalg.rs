//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! The only nontrivial routine here is [`snf`], a Smith normal form with
//! both unimodular transforms tracked. Everything else is the matrix
//! plumbing it needs.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of anything convertible to `BigInt`.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<T, R>(rows: &[R]) -> Self
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMat {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn diagonal<T: Clone + Into<BigInt>>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Diagonal entries `a[i][i]` for `i < min(rows, cols)`.
    pub fn diag(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows, "hcat: row count mismatch");
        let mut m = IntMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols, "vcat: column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (i, x)| acc + x * &self[(i, j)])
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = k * &self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += delta;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = k * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += delta;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMat {
    type Output = IntMat;
    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "matrix product: dimension mismatch");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Output of [`snf`]: `s = u * a * v` with `u`, `v` unimodular and `s`
/// diagonal, non-negative, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMat,
    pub s: IntMat,
    pub v: IntMat,
    /// Inverse of `u`, tracked alongside it.
    pub u_inv: IntMat,
}

impl SnfResult {
    /// The diagonal of `s` (length `min(rows, cols)`), zeros included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s.diag()
    }

    pub fn rank(&self) -> usize {
        self.s.diag().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Row/column reduction pivoting on the entry of least absolute value in
/// the remaining block. Deterministic: ties are broken by the first
/// position in row-major order.
pub fn snf(a: &IntMat) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMat::identity(m);
    let mut u_inv = IntMat::identity(m);
    let mut v = IntMat::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_nonzero(&s, t) else {
                // Remaining block is zero.
                return finish(u, s, v, u_inv);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let k = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &k);
                u.add_row_multiple(i, t, &k);
                u_inv.add_col_multiple(t, i, &-&k);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let k = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &k);
                v.add_col_multiple(j, t, &k);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // Pivot row and column are clear; enforce divisibility on the rest.
            let pivot = s[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-&one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    finish(u, s, v, u_inv)
}

fn finish(u: IntMat, s: IntMat, v: IntMat, u_inv: IntMat) -> SnfResult {
    debug_assert!(s.is_diagonal());
    SnfResult { u, s, v, u_inv }
}

fn min_abs_nonzero(s: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => x.abs() < s[(bi, bj)].abs(),
            };
            if better {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Whether `x` lies in the lattice spanned by the columns of `gens`.
pub fn column_lattice_contains(gens: &IntMat, x: &[BigInt]) -> bool {
    assert_eq!(gens.rows(), x.len());
    let r = snf(gens);
    // gens = u^{-1} s v^{-1}, so x is in the span iff u x is in the span of s.
    let ux: Vec<BigInt> = (0..r.u.rows())
        .map(|i| (0..x.len()).fold(BigInt::zero(), |acc, j| acc + &r.u[(i, j)] * &x[j]))
        .collect();
    let d = r.invariant_factors();
    ux.iter().enumerate().all(|(i, y)| match d.get(i) {
        Some(di) if !di.is_zero() => y.is_multiple_of(di),
        _ => y.is_zero(),
    })
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(a: &IntMat) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::Domain(format!(
            "determinant of a non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap_rows(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    Ok(sign * &m[(n - 1, n - 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn check(a: &IntMat) -> SnfResult {
        let r = snf(a);
        assert_eq!(&(&r.u * a) * &r.v, r.s, "s != u a v for\n{a}");
        assert!(det(&r.u).unwrap().abs().is_one());
        assert!(det(&r.v).unwrap().abs().is_one());
        assert_eq!(&r.u * &r.u_inv, IntMat::identity(a.rows()));
        let d = r.invariant_factors();
        for w in d.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(w[1].is_multiple_of(&w[0]), "chain broken: {d:?}");
        }
        r
    }

    #[test]
    fn diag_2_3() {
        let r = check(&IntMat::diagonal(&[2, 3]));
        assert_eq!(r.invariant_factors(), vec![big(1), big(6)]);
    }

    #[test]
    fn zero_matrix() {
        let r = check(&IntMat::zeros(3, 4));
        assert_eq!(r.s, IntMat::zeros(3, 4));
        assert_eq!(r.u, IntMat::identity(3));
        assert_eq!(r.v, IntMat::identity(4));
    }

    #[test]
    fn empty_dimensions() {
        let r = check(&IntMat::zeros(0, 3));
        assert_eq!(r.s.rows(), 0);
        let r = check(&IntMat::zeros(2, 0));
        assert_eq!(r.u, IntMat::identity(2));
    }

    #[test]
    fn rectangular_and_negative() {
        let a = IntMat::from_rows(&[[-4, 6, 2], [8, -12, 10]]);
        let r = check(&a);
        // gcd of entries is 2, gcd of 2x2 minors (0, -56, 84) is 28.
        assert_eq!(r.invariant_factors(), vec![big(2), big(14)]);
    }

    #[test]
    fn worked_example_row_one_at_q3() {
        // X from the A1 row, class [6], with q = 3.
        let q = 3i64;
        let x = IntMat::from_rows(&[
            [q - 1, 0, q, q, q, q],
            [0, -q - 1, -q, -q, -q, -q],
            [0, q, -1, 0, 0, 0],
            [0, 0, q, -1, 0, 0],
            [0, 0, 0, q, -1, 0],
            [0, 0, 0, 0, q, -1],
        ]);
        let r = check(&x);
        let nontrivial: Vec<_> = r
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        assert_eq!(nontrivial, vec![big(2), big(364)]);
    }

    #[test]
    fn lattice_membership() {
        let gens = IntMat::from_rows(&[[2, 0], [0, 3], [0, 0]]);
        assert!(column_lattice_contains(&gens, &[big(4), big(-3), big(0)]));
        assert!(!column_lattice_contains(&gens, &[big(1), big(0), big(0)]));
        assert!(!column_lattice_contains(&gens, &[big(0), big(0), big(1)]));
    }

    #[test]
    fn det_basics() {
        assert_eq!(det(&IntMat::identity(7)).unwrap(), big(1));
        let m = IntMat::diagonal(&[2; 7]);
        assert_eq!(det(&m).unwrap(), big(128));
        let swap = IntMat::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(det(&swap).unwrap(), big(-1));
        let singular = IntMat::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(det(&singular).unwrap(), big(0));
        assert!(det(&IntMat::zeros(2, 3)).is_err());
    }

    #[test]
    fn snf_idempotent_on_its_output() {
        let a = IntMat::from_rows(&[[6, 4, 0], [2, 8, 14], [0, 10, 4]]);
        let r = check(&a);
        assert_eq!(snf(&r.s).s, r.s);
    }
}

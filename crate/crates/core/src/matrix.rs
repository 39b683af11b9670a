//! Dense integer matrices with exact (fraction-free) linear algebra.
//!
//! Everything here is over arbitrary-precision integers: determinants come
//! from the Bareiss one-step fraction-free elimination (all intermediate
//! divisions are exact), rank from the same elimination, and the Smith normal
//! form from row/column gcd reduction with unimodular transforms carried
//! along and checked on exit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix.  `rows * cols` entries; either dimension may be
/// zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must match dimensions");
        Self { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Builds from machine integers, row by row.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &a * other.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let data = self.data.iter().map(|a| a * k).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Determinant by Bareiss fraction-free elimination.  Panics on a
    /// non-square matrix; the 0x0 determinant is 1.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "bareiss division must be exact");
                    *m.at_mut(i, j) = q;
                }
                *m.at_mut(i, k) = BigInt::zero();
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }

    /// Rank over the rationals, by fraction-free elimination with full
    /// pivoting.
    pub fn rational_rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        while rank < m.rows.min(m.cols) {
            let pivot = (rank..m.rows)
                .flat_map(|i| (rank..m.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m.at(i, j).is_zero());
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            m.swap_rows(rank, pi);
            m.swap_cols(rank, pj);
            for i in rank + 1..m.rows {
                for j in rank + 1..m.cols {
                    let num = m.at(rank, rank) * m.at(i, j) - m.at(i, rank) * m.at(rank, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    *m.at_mut(i, j) = q;
                }
                *m.at_mut(i, rank) = BigInt::zero();
            }
            prev = m.at(rank, rank).clone();
            rank += 1;
        }
        rank
    }

    /// Smith normal form `U * A * V = D` with unimodular `U`, `V` and
    /// `D` diagonal, nonnegative, each entry dividing the next.  The
    /// transforms are multiplied back through and checked before returning.
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut d = self.clone();
        let mut u = Self::identity(self.rows);
        let mut v = Self::identity(self.cols);
        let n = self.rows.min(self.cols);
        for k in 0..n {
            loop {
                let pivot = (k..d.rows)
                    .flat_map(|i| (k..d.cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !d.at(i, j).is_zero())
                    .min_by_key(|&(i, j)| d.at(i, j).abs());
                let (pi, pj) = match pivot {
                    Some(p) => p,
                    None => break,
                };
                if pi != k {
                    d.swap_rows(k, pi);
                    u.swap_rows(k, pi);
                }
                if pj != k {
                    d.swap_cols(k, pj);
                    v.swap_cols(k, pj);
                }
                let mut dirty = false;
                for i in k + 1..d.rows {
                    let q = div_nearest(d.at(i, k), d.at(k, k));
                    if !q.is_zero() {
                        d.row_axpy(i, k, &-&q);
                        u.row_axpy(i, k, &-&q);
                    }
                    if !d.at(i, k).is_zero() {
                        dirty = true;
                    }
                }
                for j in k + 1..d.cols {
                    let q = div_nearest(d.at(k, j), d.at(k, k));
                    if !q.is_zero() {
                        d.col_axpy(j, k, &-&q);
                        v.col_axpy(j, k, &-&q);
                    }
                    if !d.at(k, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // pivot must divide the rest of the block; if not, fold the
                // offending row in and restart the pivot hunt
                let offender = (k + 1..d.rows)
                    .flat_map(|i| (k + 1..d.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !d.at(i, j).is_multiple_of(d.at(k, k)));
                match offender {
                    Some((i, _)) => {
                        d.row_axpy(k, i, &BigInt::one());
                        u.row_axpy(k, i, &BigInt::one());
                    }
                    None => break,
                }
            }
        }
        for k in 0..n {
            if d.at(k, k).is_negative() {
                d.scale_row(k, &-BigInt::one());
                u.scale_row(k, &-BigInt::one());
            }
        }
        let diag: Vec<BigInt> = (0..n).map(|k| d.at(k, k).clone()).collect();
        let form = SmithForm { diag, u, v };
        form.validate(self);
        form
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

    /// row[i] += q * row[k]
    fn row_axpy(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let add = q * self.at(k, j);
            *self.at_mut(i, j) += add;
        }
    }

    /// col[j] += q * col[k]
    fn col_axpy(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let add = q * self.at(i, k);
            *self.at_mut(i, j) += add;
        }
    }

    fn scale_row(&mut self, i: usize, k: &BigInt) {
        for j in 0..self.cols {
            let x = self.at(i, j) * k;
            *self.at_mut(i, j) = x;
        }
    }
}

/// Rounded division, remainder magnitude at most half the divisor: keeps the
/// Smith reduction entries small.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    if &r * 2i32 > b.abs() {
        q += 1;
    }
    q
}

/// Result of [`IntMatrix::smith_normal_form`]: `u * a * v` is diagonal with
/// the entries of `diag`, which are nonnegative and form a divisibility
/// chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    fn validate(&self, a: &IntMatrix) {
        let prod = self.u.mul(a).mul(&self.v);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let expect = if i == j && i < self.diag.len() {
                    self.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod.at(i, j), &expect, "transform product must be diagonal");
            }
        }
        for w in self.diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain violated");
            } else {
                assert!(w[1].is_zero(), "zeros must trail");
            }
        }
        assert!(self.u.det().abs().is_one(), "row transform must be unimodular");
        assert!(self.v.det().abs().is_one(), "column transform must be unimodular");
    }

    /// Nonzero diagonal entries, i.e. the invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

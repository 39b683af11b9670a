//! Matrices over the Laurent ring `Z[t, t^-1]`.
//!
//! The determinant uses Bareiss elimination: every intermediate entry is a
//! minor of the original matrix, so the division by the previous pivot is
//! exact in the ring and no fractions ever appear.  Minor enumeration feeds
//! gcd-of-minors and elementary-ideal computations downstream.

use std::fmt;

use crate::poly::LaurentPoly;

/// Row-major matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<LaurentPoly>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must match dimensions");
        Self { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }

    /// The submatrix picking `rows` then `cols`, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.at(i, j).clone());
            }
        }
        Self { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn delete_column(&self, j: usize) -> Self {
        assert!(j < self.cols);
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &keep)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        })
    }

    /// Determinant by fraction-free elimination; panics on non-square input.
    /// The empty determinant is 1.
    pub fn det(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = m.at(k, j).clone();
                            *m.at_mut(k, j) = m.at(i, j).clone();
                            *m.at_mut(i, j) = tmp;
                        }
                        negate = !negate;
                    }
                    None => return LaurentPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m
                        .at(k, k)
                        .mul(m.at(i, j))
                        .sub(&m.at(i, k).mul(m.at(k, j)));
                    let q = num
                        .exact_div(&prev)
                        .expect("bareiss division must be exact");
                    *m.at_mut(i, j) = q;
                }
                *m.at_mut(i, k) = LaurentPoly::zero();
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        if negate {
            d.neg()
        } else {
            d
        }
    }

    /// All `k x k` minor determinants, row sets and column sets enumerated in
    /// lexicographic order.  `k = 0` yields the single empty minor 1.
    pub fn minors(&self, k: usize) -> Vec<LaurentPoly> {
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        let row_sets = combinations(self.rows, k);
        let col_sets = combinations(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.submatrix(rs, cs).det());
            }
        }
        out
    }

    /// Unit-normalized gcd of all `k x k` minors; zero when there are none
    /// or all vanish.
    pub fn minor_gcd(&self, k: usize) -> LaurentPoly {
        self.minors(k)
            .iter()
            .fold(LaurentPoly::zero(), |acc, m| acc.gcd(m))
    }
}

/// All k-element subsets of `0..n`, each ascending, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for i in start..=n.saturating_sub(needed) {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut current, &mut out);
    }
    out
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

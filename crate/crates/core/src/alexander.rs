//! Alexander invariants: module presentations from Seifert matrices, the
//! two-parameter winding-number family of diagonal presentations, the
//! polynomial itself, and elementary ideals.
//!
//! Routes into an [`AlexanderPresentation`]:
//! * a Seifert matrix `V` gives the square presentation `V - tV^T`;
//! * the diagonal family `[[wt -/+ 1, 0], [0, t -/+ w]]` parameterized by a
//!   winding number and two independent sign choices;
//! * the Fox-calculus route (see [`crate::fox::module_matrix`]) for group
//!   presentations.
//!
//! `delta` is the unit-normalized gcd of maximal minors; `elementary_ideal`
//! canonicalizes the ideal of `(n-k)`-minors, the complete invariant used
//! to tell a cyclic module from a direct sum in the rank-one cases treated
//! here.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::ideal::IntIdealBasis;
use crate::matrix::IntMatrix;
use crate::poly::LaurentPoly;
use crate::polymat::PolyMatrix;
use crate::table::KnotRecord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("seifert matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("seifert matrix must have even dimension, got {0}")]
    OddDimension(usize),
    #[error("V - V^T has determinant {0}, need a unimodular intersection form")]
    NotUnimodular(BigInt),
}

/// Linking form of a spanning surface: square `2g x 2g` integer matrix
/// whose antisymmetrization `V - V^T` is unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self, AlexanderError> {
        if v.rows() != v.cols() {
            return Err(AlexanderError::NotSquare { rows: v.rows(), cols: v.cols() });
        }
        if v.rows() % 2 != 0 {
            return Err(AlexanderError::OddDimension(v.rows()));
        }
        let det = v.sub(&v.transpose()).det();
        if !det.abs().is_one() {
            return Err(AlexanderError::NotUnimodular(det));
        }
        Ok(Self { v })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, AlexanderError> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn genus(&self) -> usize {
        self.v.rows() / 2
    }

    /// The square presentation matrix `V - tV^T`.
    pub fn alexander_presentation(&self) -> AlexanderPresentation {
        let n = self.v.rows();
        let t = LaurentPoly::term(1, 1);
        let m = PolyMatrix::from_fn(n, n, |i, j| {
            LaurentPoly::constant(self.v.at(i, j).clone())
                .sub(&t.scaled(self.v.at(j, i))) // transpose entry times t
        });
        AlexanderPresentation::new(m)
    }
}

/// Presentation matrix of a module over `Z[t, t^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPresentation {
    m: PolyMatrix,
}

impl AlexanderPresentation {
    pub fn new(m: PolyMatrix) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.m
    }

    /// Unit-normalized gcd of the maximal minors; the determinant in the
    /// square case, and 1 for an empty matrix.
    pub fn delta(&self) -> LaurentPoly {
        let k = self.m.rows().min(self.m.cols());
        self.m.minor_gcd(k).normalize_unit()
    }

    /// Canonical basis of the ideal of `(n-k)`-minors, where `n` is the
    /// number of module generators (columns).  Larger `k` gives a larger
    /// ideal; `k >= n` gives the unit ideal, and `n - k` exceeding the row
    /// count gives the zero ideal.
    pub fn elementary_ideal(&self, k: usize) -> IntIdealBasis {
        let n = self.m.cols();
        if k >= n {
            return IntIdealBasis::canonicalize(&[LaurentPoly::one()]);
        }
        let size = n - k;
        let minors = self.m.minors(size);
        IntIdealBasis::canonicalize(&minors)
    }

    /// Whether `delta(1) = ±1` — a necessary condition for coming from a
    /// knot.
    pub fn delta_at_one_is_unit(&self) -> bool {
        self.delta().eval(&BigInt::one()).abs().is_one()
    }

    /// Entries as display strings, row-major rows: the JSON shape for
    /// polynomial matrices.
    pub fn rows_of_strings(&self) -> Vec<Vec<String>> {
        (0..self.m.rows())
            .map(|i| (0..self.m.cols()).map(|j| self.m.at(i, j).to_string()).collect())
            .collect()
    }
}

/// The two-parameter family of diagonal presentations: winding number `w`
/// and two independent unit signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindingFamily {
    pub w: i64,
    /// sign of the unit in the first entry: `wt - 1` for `-1`, `wt + 1`
    /// for `+1`
    pub sign1: i8,
    /// sign of the `w` term in the second entry: `t - w` for `-1`,
    /// `t + w` for `+1`
    pub sign2: i8,
}

impl WindingFamily {
    pub fn new(w: i64, sign1: i8, sign2: i8) -> Self {
        assert!(w >= 0, "winding number is nonnegative");
        assert!(sign1 == 1 || sign1 == -1);
        assert!(sign2 == 1 || sign2 == -1);
        Self { w, sign1, sign2 }
    }

    /// The presentation `[[wt + s1, 0], [0, t + s2 w]]`.
    pub fn family_matrix(&self) -> AlexanderPresentation {
        let e1 = LaurentPoly::term(self.w, 1).add(&LaurentPoly::constant(self.sign1 as i64));
        let e2 = LaurentPoly::term(1, 1).add(&LaurentPoly::constant(self.sign2 as i64 * self.w));
        let zero = LaurentPoly::zero();
        AlexanderPresentation::new(PolyMatrix::new(
            2,
            2,
            vec![e1, zero.clone(), zero, e2],
        ))
    }
}

/// Necessary condition for fibredness, checked against the record's own
/// Seifert matrix: the polynomial is monic at both ends and its degree is
/// twice the stated genus.  Necessary only — a cross-check on curated
/// fibredness flags, not a decision procedure.
pub fn fibred_necessary(r: &KnotRecord) -> bool {
    let v = r.seifert().expect("fibredness check needs a curated seifert matrix");
    let delta = v.alexander_presentation().delta();
    if delta.is_zero() {
        return false;
    }
    let deg = delta.degree().unwrap() - delta.low_degree().unwrap();
    let monic = delta.leading_coeff().abs().is_one() && delta.trailing_coeff().abs().is_one();
    monic && deg == 2 * r.genus() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn seifert(rows: &[Vec<i64>]) -> SeifertMatrix {
        SeifertMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn classic_seifert_deltas() {
        let trefoil = seifert(&[vec![-1, 1], vec![0, -1]]);
        assert_eq!(trefoil.alexander_presentation().delta(), p("t^2-t+1"));
        let figure8 = seifert(&[vec![1, 1], vec![0, -1]]);
        assert_eq!(figure8.alexander_presentation().delta(), p("t^2-3t+1"));
        let split = seifert(&[vec![3, 2], vec![1, 0]]);
        assert_eq!(split.alexander_presentation().delta(), p("2t^2-5t+2"));
    }

    #[test]
    fn empty_seifert_matrix_is_unknot() {
        let unknot = SeifertMatrix::new(IntMatrix::zero(0, 0)).unwrap();
        assert_eq!(unknot.genus(), 0);
        assert_eq!(unknot.alexander_presentation().delta(), p("1"));
    }

    #[test]
    fn seifert_validation() {
        assert!(matches!(
            SeifertMatrix::new(IntMatrix::zero(2, 3)),
            Err(AlexanderError::NotSquare { .. })
        ));
        assert!(matches!(
            SeifertMatrix::new(IntMatrix::zero(3, 3)),
            Err(AlexanderError::OddDimension(3))
        ));
        assert!(matches!(
            SeifertMatrix::new(IntMatrix::zero(2, 2)),
            Err(AlexanderError::NotUnimodular(_))
        ));
    }

    #[test]
    fn family_matrix_values() {
        let w2 = WindingFamily::new(2, -1, -1).family_matrix();
        assert_eq!(w2.delta(), p("2t^2-5t+2"));
        assert!(w2.delta_at_one_is_unit());

        for s1 in [-1i8, 1] {
            for s2 in [-1i8, 1] {
                let w0 = WindingFamily::new(0, s1, s2).family_matrix();
                assert_eq!(w0.delta(), p("1"), "w=0 collapses to the unit");
                assert!(w0.delta_at_one_is_unit());
            }
        }

        for s1 in [-1i8, 1] {
            for s2 in [-1i8, 1] {
                let w3 = WindingFamily::new(3, s1, s2).family_matrix();
                assert!(!w3.delta_at_one_is_unit(), "w=3, signs {s1},{s2}");
            }
        }
    }

    #[test]
    fn family_signs_match_direct_evaluation() {
        // delta(1) must equal (w + s1)(1 + s2 w) and the unit cases are
        // exactly w=0 (any signs) and w=2 with both signs minus
        for w in 0..6i64 {
            for s1 in [-1i8, 1] {
                for s2 in [-1i8, 1] {
                    let d = WindingFamily::new(w, s1, s2).family_matrix().delta();
                    let expect = BigInt::from(w + s1 as i64) * BigInt::from(1 + s2 as i64 * w);
                    assert_eq!(d.eval(&BigInt::one()).abs(), expect.abs(), "w={w} {s1} {s2}");
                    let admissible = expect.abs().is_one();
                    let predicted = w == 0 || (w == 2 && s1 == -1 && s2 == -1);
                    assert_eq!(admissible, predicted, "w={w} {s1} {s2}");
                }
            }
        }
        // the two admissible polynomial values
        assert_eq!(WindingFamily::new(0, 1, -1).family_matrix().delta(), p("1"));
        assert_eq!(
            WindingFamily::new(2, -1, -1).family_matrix().delta(),
            p("2t^2-5t+2")
        );
    }

    #[test]
    fn delta_of_identity_and_zero() {
        let id = AlexanderPresentation::new(PolyMatrix::from_fn(3, 3, |i, j| {
            if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }
        }));
        assert_eq!(id.delta(), p("1"));
        let z = AlexanderPresentation::new(PolyMatrix::zero(2, 2));
        assert!(z.delta().is_zero());
    }

    #[test]
    fn elementary_ideal_cases() {
        let w2 = WindingFamily::new(2, -1, -1).family_matrix();
        let e0 = w2.elementary_ideal(0);
        assert_eq!(e0.gens(), &[p("2t^2-5t+2")]);
        let e1 = w2.elementary_ideal(1);
        assert_eq!(e1.gens(), &[p("3"), p("t+1")]);
        assert!(!e1.contains_one());
        let e2 = w2.elementary_ideal(2);
        assert!(e2.contains_one());

        // cyclic presentation of the same polynomial: E1 is the unit ideal
        let cyclic = AlexanderPresentation::new(PolyMatrix::new(
            2,
            2,
            vec![p("1"), p("0"), p("0"), p("2t^2-5t+2")],
        ));
        assert_eq!(cyclic.delta(), p("2t^2-5t+2"));
        assert!(cyclic.elementary_ideal(1).contains_one());
    }

    #[test]
    fn elementary_ideals_ascend() {
        let m = AlexanderPresentation::new(PolyMatrix::new(
            2,
            2,
            vec![p("t-2"), p("1-t"), p("3"), p("2t-1")],
        ));
        let e0 = m.elementary_ideal(0);
        let e1 = m.elementary_ideal(1);
        let e2 = m.elementary_ideal(2);
        assert!(e1.contains_ideal(&e0));
        assert!(e2.contains_ideal(&e1));
    }

    #[test]
    fn delta_symmetry_for_seifert_inputs() {
        for rows in [
            vec![vec![-1, 1], vec![0, -1]],
            vec![vec![1, 1], vec![0, -1]],
            vec![vec![3, 2], vec![1, 0]],
            vec![vec![1, 1], vec![0, 2]],
        ] {
            let d = seifert(&rows).alexander_presentation().delta();
            let reversed = d.reversed().normalize_unit();
            assert_eq!(d.normalize_unit(), reversed, "rows {rows:?}");
            assert!(d.eval(&BigInt::one()).abs().is_one());
        }
    }
}

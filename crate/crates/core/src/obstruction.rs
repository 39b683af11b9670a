//! Homological obstruction to embedding an infinite cyclic cover into a
//! compact manifold, with the block-tower growth bounds that drive it and
//! a small rational-homology engine for cellular inputs.
//!
//! The cover is exhausted by towers `P_m` of `m` fundamental blocks glued
//! along copies of a surface `S`; first-homology growth of the tower is
//! linear in `m` with slope `beta1(X) - beta1(S) + chi(boundary M)`, while
//! any compact target caps `beta1`.  A positive slope therefore rules the
//! embedding out.  Inputs are Betti/Euler summaries — attested directly or
//! computed from chain complexes via [`betti`].

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("{0}")]
    BadMatrix(String),
    #[error("d{outer} has {cols} columns but d{inner} has {rows} rows")]
    DimensionMismatch { outer: usize, inner: usize, cols: usize, rows: usize },
    #[error("d{outer} o d{inner} != 0: boundaries of boundaries must vanish")]
    NotAComplex { outer: usize, inner: usize },
    #[error("{field} must be nonnegative, got {value}")]
    NegativeBetti { field: &'static str, value: i64 },
    #[error("chi of a closed surface is even, got {0}")]
    OddChi(i64),
    #[error("closed manifold with boundary data: {0}")]
    ClosedWithBoundary(String),
}

/// Betti/Euler summary the obstruction reads: `X` is the fundamental
/// block of the cover, `S` the gluing surface, `M` the candidate compact
/// target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionInput {
    /// first Betti number of the block, over the rationals
    #[serde(rename = "beta1_X")]
    pub beta1_x: i64,
    /// first Betti number of the gluing surface
    #[serde(rename = "beta1_S")]
    pub beta1_s: i64,
    /// Euler characteristic of the target's boundary
    pub chi_boundary: i64,
    /// component count of the surface's intersection with the boundary
    #[serde(rename = "beta0_S_boundary")]
    pub beta0_s_boundary: i64,
    /// whether the target has boundary at all
    pub has_boundary: bool,
    /// attested flag: the surface meets every boundary component in a
    /// homologically nontrivial curve class
    pub boundary_class_nonzero: bool,
}

impl ObstructionInput {
    pub fn new(
        beta1_x: i64,
        beta1_s: i64,
        chi_boundary: i64,
        beta0_s_boundary: i64,
        has_boundary: bool,
        boundary_class_nonzero: bool,
    ) -> Result<Self, ObstructionError> {
        let input = Self {
            beta1_x,
            beta1_s,
            chi_boundary,
            beta0_s_boundary,
            has_boundary,
            boundary_class_nonzero,
        };
        input.validate()?;
        Ok(input)
    }

    /// Betti inputs nonnegative; chi even; a closed target carries no
    /// boundary data.
    pub fn validate(&self) -> Result<(), ObstructionError> {
        for (field, value) in [
            ("beta1_X", self.beta1_x),
            ("beta1_S", self.beta1_s),
            ("beta0_S_boundary", self.beta0_s_boundary),
        ] {
            if value < 0 {
                return Err(ObstructionError::NegativeBetti { field, value });
            }
        }
        if self.chi_boundary % 2 != 0 {
            return Err(ObstructionError::OddChi(self.chi_boundary));
        }
        if !self.has_boundary {
            if self.chi_boundary != 0 {
                return Err(ObstructionError::ClosedWithBoundary(format!(
                    "chi_boundary = {}",
                    self.chi_boundary
                )));
            }
            if self.beta0_s_boundary != 0 {
                return Err(ObstructionError::ClosedWithBoundary(format!(
                    "beta0_S_boundary = {}",
                    self.beta0_s_boundary
                )));
            }
        }
        Ok(())
    }

    /// Builds the summary from cellular data for the block and the
    /// surface.
    pub fn from_complexes(
        x: &ChainComplex,
        s: &ChainComplex,
        chi_boundary: i64,
        beta0_s_boundary: i64,
        has_boundary: bool,
        boundary_class_nonzero: bool,
    ) -> Result<Self, ObstructionError> {
        Self::new(
            betti(x, 1),
            betti(s, 1),
            chi_boundary,
            beta0_s_boundary,
            has_boundary,
            boundary_class_nonzero,
        )
    }
}

/// Chain complex `C3 -> C2 -> C1 -> C0` with integer boundary maps
/// (`d_i` maps `C_i` to `C_{i-1}`), validated so that consecutive maps
/// compose to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    d1: IntMatrix,
    d2: IntMatrix,
    d3: IntMatrix,
}

fn is_zero_matrix(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.at(i, j).is_zero()))
}

impl ChainComplex {
    pub fn new(d1: IntMatrix, d2: IntMatrix, d3: IntMatrix) -> Result<Self, ObstructionError> {
        for (outer, inner, a, b) in [(1usize, 2usize, &d1, &d2), (2, 3, &d2, &d3)] {
            if a.cols() != b.rows() {
                return Err(ObstructionError::DimensionMismatch {
                    outer,
                    inner,
                    cols: a.cols(),
                    rows: b.rows(),
                });
            }
            if !is_zero_matrix(&a.mul(b)) {
                return Err(ObstructionError::NotAComplex { outer, inner });
            }
        }
        Ok(Self { d1, d2, d3 })
    }

    /// Builds from rows of integers, `[d1, d2, d3]`.  An empty matrix
    /// stands for "no cells at the source level" and is fitted to the
    /// right dimensions.
    pub fn from_rows(
        d1: &[Vec<i64>],
        d2: &[Vec<i64>],
        d3: &[Vec<i64>],
    ) -> Result<Self, ObstructionError> {
        for (name, rows) in [("d1", d1), ("d2", d2), ("d3", d3)] {
            if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
                return Err(ObstructionError::BadMatrix(format!("{name} has ragged rows")));
            }
        }
        let d1 = IntMatrix::from_i64(d1);
        let mut d2 = IntMatrix::from_i64(d2);
        if d2.rows() == 0 && d2.cols() == 0 {
            d2 = IntMatrix::zero(d1.cols(), 0);
        }
        let mut d3 = IntMatrix::from_i64(d3);
        if d3.rows() == 0 && d3.cols() == 0 {
            d3 = IntMatrix::zero(d2.cols(), 0);
        }
        Self::new(d1, d2, d3)
    }

    /// Cell count in dimension `i` (zero above 3).
    pub fn cells(&self, i: usize) -> usize {
        match i {
            0 => self.d1.rows(),
            1 => self.d1.cols(),
            2 => self.d2.cols(),
            3 => self.d3.cols(),
            _ => 0,
        }
    }

    fn boundary_rank(&self, i: usize) -> i64 {
        match i {
            1 => self.d1.rational_rank() as i64,
            2 => self.d2.rational_rank() as i64,
            3 => self.d3.rational_rank() as i64,
            _ => 0,
        }
    }

    /// Rational Betti number: `dim ker d_i - rank d_{i+1}`.
    pub fn betti(&self, i: usize) -> i64 {
        if i > 3 {
            return 0;
        }
        let kernel = self.cells(i) as i64 - self.boundary_rank(i);
        kernel - self.boundary_rank(i + 1)
    }

    /// Block sum with another complex: homology of a disjoint union.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        Self {
            d1: block_diag(&self.d1, &other.d1),
            d2: block_diag(&self.d2, &other.d2),
            d3: block_diag(&self.d3, &other.d3),
        }
    }
}

impl<'de> Deserialize<'de> for ChainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [d1, d2, d3]: [Vec<Vec<i64>>; 3] = Deserialize::deserialize(deserializer)?;
        Self::from_rows(&d1, &d2, &d3).map_err(serde::de::Error::custom)
    }
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            *out.at_mut(i, j) = a.at(i, j).clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            *out.at_mut(a.rows() + i, a.cols() + j) = b.at(i, j).clone();
        }
    }
    out
}

/// Rational Betti number of a validated complex.
pub fn betti(c: &ChainComplex, i: usize) -> i64 {
    c.betti(i)
}

/// Tower bounds at block count `m`, all affine in `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub m: i64,
    /// `m*beta1(X) - (m-1)*beta1(S)`
    #[serde(rename = "lower_beta1_Pm")]
    pub lower_beta1_pm: i64,
    /// `2*beta0(boundary P_m) + 2*(beta1(S)-1) - m*chi(boundary M)`
    #[serde(rename = "beta1_boundary_Pm")]
    pub beta1_boundary_pm: i64,
    /// `2*(1-beta1(S)) + m*chi(boundary M)`
    #[serde(rename = "chi_boundary_Pm")]
    pub chi_boundary_pm: i64,
    /// `m*(beta1(X) - beta1(S) + chi(boundary M)) + C`
    #[serde(rename = "final_lower_bound_beta1_Y")]
    pub final_lower_bound_beta1_y: i64,
    /// `C = 2 - beta1(S) - 6*beta0(S n boundary M)` at the default
    /// boundary-component bound
    #[serde(rename = "constant_C")]
    pub constant_c: i64,
}

impl GrowthBound {
    /// Growth rate of the final bound in `m`.
    pub fn slope(&self, input: &ObstructionInput) -> i64 {
        input.beta1_x - input.beta1_s + input.chi_boundary
    }
}

/// Tower bounds with the default boundary-component count
/// `beta0(boundary P_m) = 2*beta0(S n boundary M)`, valid for every `m`.
pub fn growth_bounds(input: &ObstructionInput, m: i64) -> GrowthBound {
    growth_bounds_with_boundary_count(input, m, 2 * input.beta0_s_boundary)
}

/// Tower bounds with an explicit component count for the tower boundary;
/// a smaller count only strengthens (raises) the final bound.
pub fn growth_bounds_with_boundary_count(
    input: &ObstructionInput,
    m: i64,
    beta0_boundary_pm: i64,
) -> GrowthBound {
    assert!(m >= 1, "tower needs at least one block");
    let x = input.beta1_x;
    let s = input.beta1_s;
    let chi = input.chi_boundary;
    let lower_beta1_pm = m * x - (m - 1) * s;
    let chi_boundary_pm = 2 * (1 - s) + m * chi;
    let beta1_boundary_pm = 2 * beta0_boundary_pm + 2 * (s - 1) - m * chi;
    // beta1 of a compact target dominates beta1(P_m) minus the boundary
    // correction terms
    let final_lower_bound_beta1_y = lower_beta1_pm - beta1_boundary_pm - beta0_boundary_pm;
    let constant_c = final_lower_bound_beta1_y - m * (x - s + chi);
    GrowthBound {
        m,
        lower_beta1_pm,
        beta1_boundary_pm,
        chi_boundary_pm,
        final_lower_bound_beta1_y,
        constant_c,
    }
}

/// Verdict of the embedding obstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ObstructionVerdict {
    /// the cover embeds in no compact manifold of the attested kind
    Nonembeddable,
    /// the growth slope is not positive; the obstruction is silent
    Inconclusive,
}

impl std::fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ObstructionVerdict::Nonembeddable => "NONEMBEDDABLE",
            ObstructionVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Applies the obstruction: with boundary, fires iff the attested curve
/// classes are nonzero and `beta1(X) > beta1(S) - chi(boundary M)`;
/// closed, fires iff `beta1(X) > beta1(S)`.
pub fn check_obstruction(
    input: &ObstructionInput,
) -> Result<ObstructionVerdict, ObstructionError> {
    input.validate()?;
    let fires = if input.has_boundary {
        input.boundary_class_nonzero && input.beta1_x > input.beta1_s - input.chi_boundary
    } else {
        input.beta1_x > input.beta1_s
    };
    Ok(if fires { ObstructionVerdict::Nonembeddable } else { ObstructionVerdict::Inconclusive })
}

/// Exactness bookkeeping: in an exact sequence `A -> B -> C`, the outer
/// dimensions dominate the middle one.  Arguments are the two outer
/// dimensions, then the middle.
pub fn dim_inequality(dim_a: i64, dim_c: i64, dim_b: i64) -> bool {
    dim_a + dim_c >= dim_b
}

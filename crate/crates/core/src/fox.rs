//! Fox free differential calculus.
//!
//! Derivatives of free-group words live in the integral group ring of the
//! free group ([`FreeRingElt`]); specializing each generator to a power of
//! `t` through an abelianization map turns a presentation's matrix of
//! derivatives into a matrix over `Z[t, t^-1]` — the input for every
//! polynomial invariant downstream.
//!
//! The defining rules: `d(g)/dg = 1`, `d(h)/dg = 0` for `h != g`,
//! `d(g^-1)/dg = -g^-1`, and the product rule `d(uv) = du + u dv`.  They
//! pin down the closed form used here: each occurrence of `g^+1` at prefix
//! `u` contributes `+u`, each occurrence of `g^-1` at prefix `u`
//! contributes `-u g^-1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::group::{AbelianizationMap, GroupError, GroupPresentation, Word};
use crate::poly::LaurentPoly;
use crate::polymat::PolyMatrix;

/// Finite integer combination of free-group words: an element of the group
/// ring `Z[F]`.  No stored coefficient is zero; the empty map is 0.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeRingElt {
    terms: BTreeMap<Word, BigInt>,
}

impl FreeRingElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::identity())
    }

    pub fn word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Ring product: words concatenate (with free reduction), coefficients
    /// multiply.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// Image under generator ↦ t^image: each word maps to t raised to its
    /// total image.
    pub fn abelianized(&self, ab: &AbelianizationMap) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (w, c) in &self.terms {
            out = out.add(&LaurentPoly::term(c.clone(), ab.word_image(w)));
        }
        out
    }
}

impl fmt::Display for FreeRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if w.is_identity() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "[{w}]")?;
            } else {
                write!(f, "{c}[{w}]")?;
            }
        }
        Ok(())
    }
}

/// The Fox derivative of `w` with respect to generator `g`.
pub fn fox_derivative(w: &Word, g: &str) -> FreeRingElt {
    let mut out = FreeRingElt::zero();
    let mut prefix = Word::identity();
    for (sym, exp) in w.letters() {
        if sym == g {
            if *exp == 1 {
                out.add_term(prefix.clone(), BigInt::one());
            } else {
                let inv = Word::from_letters([(sym.clone(), -1)]);
                out.add_term(prefix.concat(&inv), -BigInt::one());
            }
        }
        prefix = prefix.concat(&Word::from_letters([(sym.clone(), *exp)]));
    }
    out
}

/// The fundamental identity `sum_g dw/dg (g - 1) = w - 1`, evaluated in the
/// group ring; exposed for property tests.
pub fn fundamental_identity_holds(w: &Word, gens: &[String]) -> bool {
    let mut lhs = FreeRingElt::zero();
    for g in gens {
        let factor = FreeRingElt::word(Word::generator(g)).sub(&FreeRingElt::one());
        lhs = lhs.add(&fox_derivative(w, g).mul(&factor));
    }
    let rhs = FreeRingElt::word(w.clone()).sub(&FreeRingElt::one());
    lhs == rhs
}

/// The full Fox matrix of a presentation under the abelianization: rows are
/// relators, columns generators, entries abelianized derivatives.
pub fn alexander_matrix_fox(
    p: &GroupPresentation,
    ab: &AbelianizationMap,
) -> Result<PolyMatrix, GroupError> {
    for r in p.relators() {
        if ab.word_image(r) != 0 {
            return Err(GroupError::InconsistentAbelianization(r.to_string()));
        }
    }
    let rels = p.relators();
    let gens = p.generators();
    Ok(PolyMatrix::from_fn(rels.len(), gens.len(), |i, j| {
        fox_derivative(&rels[i], &gens[j]).abelianized(ab)
    }))
}

/// The Fox matrix with the column of one weight-`±1` generator removed: a
/// presentation matrix of the associated module over `Z[t, t^-1]`.  Picks
/// the first generator whose abelianization image is `±1` (for a
/// one-relator-per-crossing presentation any column qualifies; for an HNN
/// presentation it is the stable letter).
pub fn module_matrix(
    p: &GroupPresentation,
    ab: &AbelianizationMap,
) -> Result<PolyMatrix, GroupError> {
    let full = alexander_matrix_fox(p, ab)?;
    let col = p
        .generators()
        .iter()
        .position(|g| ab.image(g).abs() == 1)
        .ok_or_else(|| GroupError::NotInfiniteCyclic(ab.h1_rank()))?;
    Ok(full.delete_column(col))
}

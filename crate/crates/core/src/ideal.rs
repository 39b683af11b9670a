//! Ideals of `Z[t, 1/t]` given by finite generating sets, with a canonical
//! basis.
//!
//! Laurent units `±t^k` are quotiented out of every element the moment it
//! appears ([`LaurentPoly::normalize_unit`]), so representatives live in the
//! ordinary polynomial ring with nonzero constant term.  Canonicalization
//! runs a completion on the generators:
//!
//! * equal-leading-term pairs are combined through the extended gcd of their
//!   leading coefficients (and leading terms cancelled against each other),
//! * constant terms are cancelled pairwise, and any `t`-power factor of the
//!   result is divided out — this is where invertibility of `t` enters, and
//!   skipping it would compute the strictly smaller `Z[t]` ideal,
//! * higher-degree elements are reduced by `t`-multiples of lower-degree ones,
//!
//! until the set is confluent, then the surviving staircase is fully reduced:
//! one generator per occurring degree, positive minimal leading coefficient,
//! every lower coefficient in its least nonnegative residue.  Two generating
//! sets span the same ideal exactly when they canonicalize identically, and
//! membership is decided by reduction to zero against the canonical set.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::LaurentPoly;

/// Canonical generating set of an ideal in `Z[t]`.
///
/// Generators are stored in ascending degree, each with positive leading
/// coefficient; the empty basis is the zero ideal.  Built by
/// [`IntIdealBasis::canonicalize`]; structural equality is ideal equality.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntIdealBasis {
    gens: Vec<LaurentPoly>,
}

impl IntIdealBasis {
    /// Canonicalizes the ideal generated by `gens` (unit-normalizing each
    /// generator first).  `{2t-1, t-2}` becomes `{3, t+1}`; `{1}` stays `{1}`;
    /// `{0}` becomes the empty basis.
    pub fn canonicalize(gens: &[LaurentPoly]) -> Self {
        let mut set: Vec<LaurentPoly> = gens
            .iter()
            .map(|g| g.normalize_unit())
            .filter(|g| !g.is_zero())
            .collect();
        for _ in 0..64 {
            let completed = complete(set.clone());
            let reduced = inter_reduce(completed);
            if reduced == set {
                return Self { gens: set };
            }
            set = reduced;
        }
        panic!("ideal canonicalization failed to stabilize");
    }

    pub fn gens(&self) -> &[LaurentPoly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether the ideal is all of `Z[t]`.
    pub fn contains_one(&self) -> bool {
        self.gens.first().map(|g| g == &LaurentPoly::one()).unwrap_or(false)
    }

    /// Membership test by reduction against the canonical basis.
    pub fn contains(&self, p: &LaurentPoly) -> bool {
        reduce(&p.normalize_unit(), &self.gens).is_zero()
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }
}

fn sort_key(p: &LaurentPoly) -> (i64, BigInt) {
    (p.degree().unwrap_or(i64::MIN), p.leading_coeff().abs())
}

fn sign_normalized(p: LaurentPoly) -> LaurentPoly {
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Buchberger-style completion: every s-, g- and trailing combination of
/// every pair of basis elements reduces to zero against the final set.
/// Every element is stripped of `t`-power factors before use, so the basis
/// generates the full Laurent ideal, not just its `Z[t]` trace.
fn complete(start: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    let mut basis: Vec<LaurentPoly> = Vec::new();
    let mut queue = start;
    let mut rounds = 0usize;
    while let Some(next) = queue.pop() {
        rounds += 1;
        assert!(rounds < 100_000, "ideal completion failed to stabilize");
        let r = reduce(&next, &basis);
        if r.is_zero() {
            continue;
        }
        if r.low_degree().unwrap() > 0 {
            // a monomial factor is a unit; strip it and reconsider
            queue.push(r.normalize_unit());
            continue;
        }
        let r = sign_normalized(r);
        for b in &basis {
            queue.push(s_combination(&r, b));
            queue.push(trailing_combination(&r, b).normalize_unit());
            if let Some(g) = g_combination(&r, b) {
                queue.push(g);
            }
        }
        basis.push(r);
    }
    basis
}

/// Reduces each element against all the others until nothing changes, then
/// puts every tail coefficient into its canonical residue class.
fn inter_reduce(mut set: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    loop {
        set.sort_by_key(sort_key);
        let mut out: Vec<LaurentPoly> = Vec::new();
        let mut changed = false;
        for (i, p) in set.iter().enumerate() {
            let others: Vec<LaurentPoly> = out
                .iter()
                .chain(set.iter().skip(i + 1))
                .cloned()
                .collect();
            let r = reduce(p, &others).normalize_unit();
            if r.is_zero() {
                changed = true;
                continue;
            }
            if r != *p {
                changed = true;
            }
            out.push(r);
        }
        set = out;
        if !changed {
            break;
        }
    }
    // canonical tails
    loop {
        let mut changed = false;
        for i in 0..set.len() {
            let others: Vec<LaurentPoly> = set
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, b)| b.clone())
                .collect();
            // a canonical tail can zero the constant term; stripping the
            // freed monomial factor changes degree, and the outer
            // fixpoint loop re-completes
            let r = tail_reduce(&set[i], &others).normalize_unit();
            if r != set[i] {
                set[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    set.sort_by_key(sort_key);
    set
}

/// Head reduction: while some basis element has degree `<= deg p` and a
/// nonzero floor quotient into the leading coefficient, subtract the matching
/// shifted multiple.  The measure `(deg, |lc|)` strictly drops at each step,
/// and the leading coefficient left at any degree is a least nonnegative
/// residue.
fn reduce(p: &LaurentPoly, basis: &[LaurentPoly]) -> LaurentPoly {
    let mut r = p.clone();
    'outer: while let Some(rdeg) = r.degree() {
        for b in basis {
            let bdeg = b.degree().unwrap();
            if bdeg > rdeg {
                continue;
            }
            let (q, _) = r.leading_coeff().div_mod_floor(&b.leading_coeff());
            if q.is_zero() {
                continue;
            }
            r = r.sub(&b.shifted(rdeg - bdeg).scaled(&q));
            continue 'outer;
        }
        break;
    }
    r
}

/// Cancels the leading terms of `a` and `b` (the classical s-polynomial,
/// specialised to a single variable): with `g = gcd(lc a, lc b)` and
/// `deg a >= deg b`, returns `(lc b / g) a - (lc a / g) t^(deg a - deg b) b`.
fn s_combination(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (hi, lo) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    let dh = hi.degree().unwrap();
    let dl = lo.degree().unwrap();
    let lh = hi.leading_coeff();
    let ll = lo.leading_coeff();
    let g = lh.gcd(&ll);
    hi.scaled(&(&ll / &g)).sub(&lo.shifted(dh - dl).scaled(&(&lh / &g)))
}

/// Cancels the constant terms of two stripped elements: with
/// `g = gcd(a(0), b(0))`, returns `(b(0)/g) a - (a(0)/g) b`, which is
/// divisible by `t`.  Stripping that factor is what realizes quotients by
/// the unit `t`; pairwise constant-term syzygies generate all of them.
fn trailing_combination(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let ca = a.trailing_coeff();
    let cb = b.trailing_coeff();
    let g = ca.gcd(&cb);
    a.scaled(&(&cb / &g)).sub(&b.scaled(&(&ca / &g)))
}

/// Realizes `gcd(lc a, lc b)` as a leading coefficient at the higher degree
/// (the Bezout combination); `None` when one leading coefficient already
/// divides the other, in which case plain reduction covers the pair.
fn g_combination(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (hi, lo) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    let dh = hi.degree().unwrap();
    let dl = lo.degree().unwrap();
    let lh = hi.leading_coeff();
    let ll = lo.leading_coeff();
    let e = lh.extended_gcd(&ll);
    if e.gcd == lh.abs() || e.gcd == ll.abs() {
        return None;
    }
    Some(hi.scaled(&e.x).add(&lo.shifted(dh - dl).scaled(&e.y)))
}

/// Puts every coefficient strictly below the degree of `p` into its least
/// nonnegative residue modulo the tightest applicable leading coefficient.
fn tail_reduce(p: &LaurentPoly, others: &[LaurentPoly]) -> LaurentPoly {
    let mut r = p.clone();
    let deg = match r.degree() {
        Some(d) => d,
        None => return r,
    };
    let mut j = deg - 1;
    while j >= 0 {
        let modulus = others
            .iter()
            .filter(|b| b.degree().unwrap() <= j)
            .max_by_key(|b| b.degree().unwrap());
        if let Some(b) = modulus {
            let bdeg = b.degree().unwrap();
            let (q, _) = r.coeff(j).div_mod_floor(&b.leading_coeff());
            if !q.is_zero() {
                r = r.sub(&b.shifted(j - bdeg).scaled(&q));
            }
        }
        j -= 1;
    }
    r
}

impl fmt::Display for IntIdealBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn ideal(gens: &[&str]) -> IntIdealBasis {
        let gens: Vec<LaurentPoly> = gens.iter().map(|s| p(s)).collect();
        IntIdealBasis::canonicalize(&gens)
    }

    #[test]
    fn module_ideal_of_the_split_form() {
        // 2(t-2) - (2t-1) = -3 and (t-2) + 3 = t+1, so {3, t+1} sits inside
        // the span; conversely 3 and t+1 reduce both originals to zero.
        let combo = p("t-2").scaled(&2.into()).sub(&p("2t-1"));
        assert_eq!(combo, p("-3"));
        assert_eq!(p("t-2").add(&p("3")), p("t+1"));

        let i = ideal(&["2t-1", "t-2"]);
        assert_eq!(i.gens(), &[p("3"), p("t+1")]);
        assert!(i.contains(&p("2t-1")));
        assert!(i.contains(&p("t-2")));
        assert!(!i.contains_one());
    }

    #[test]
    fn unit_and_zero_ideals() {
        assert_eq!(ideal(&["1"]).gens(), &[p("1")]);
        assert!(ideal(&["1"]).contains_one());
        assert!(ideal(&["0"]).is_zero_ideal());
        assert!(ideal(&["t^5"]).contains_one(), "t^5 is a unit after normalization");
        assert!(ideal(&["2t-1", "t"]).contains_one(), "t normalizes to 1");
    }

    #[test]
    fn generator_order_and_units_do_not_matter() {
        let a = ideal(&["2t-1", "t-2"]);
        let b = ideal(&["t-2", "2t-1"]);
        let c = ideal(&["-2t^3+t^2", "t^-1-2t^-2"]);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn idempotent_on_canonical_output() {
        let i = ideal(&["2t-1", "t-2", "3t+3"]);
        let again = IntIdealBasis::canonicalize(i.gens());
        assert_eq!(i, again);
    }

    #[test]
    fn unit_t_saturation() {
        // 2(t+2) - 4 = 2t, and t is a unit, so 2 lies in the ideal; then
        // (t+2) - 2 = t gives 1
        assert!(ideal(&["t+2", "4"]).contains_one());
        // 2(t^2+t+1) - (2t+2) = 2t^2 puts 2 in the span
        let i = ideal(&["6", "2t+2", "t^2+t+1"]);
        assert_eq!(i.gens(), &[p("2"), p("t^2+t+1")]);
        assert_eq!(ideal(&["t^2+t+1", "6", "2t+2"]), i);
    }

    #[test]
    fn containment_chain() {
        let small = ideal(&["2t^2-5t+2"]);
        let big = ideal(&["2t-1", "t-2"]);
        assert!(big.contains_ideal(&small));
        assert!(!small.contains_ideal(&big));
    }

    #[test]
    fn random_combinations_are_members() {
        let gens = [p("2t-1"), p("t^2-2"), p("6")];
        let i = IntIdealBasis::canonicalize(&gens);
        // fixed exhaustive-ish sweep of small combinations c0 g0 t^k0 + ...
        for c in [-3i64, -1, 0, 1, 2] {
            for k in 0..3i64 {
                for c2 in [-2i64, 0, 5] {
                    let combo = gens[0]
                        .scaled(&c.into())
                        .shifted(k)
                        .add(&gens[1].scaled(&c2.into()))
                        .add(&gens[2].shifted((c2.rem_euclid(3)) as i64));
                    assert!(i.contains(&combo), "combination must reduce to zero");
                }
            }
        }
    }

    #[test]
    fn mixed_degree_staircase() {
        let i = ideal(&["6", "2t+2", "t^2+t+1"]);
        for g in i.gens() {
            assert!(g.leading_coeff() > BigInt::zero());
        }
        // the set is confluent: every pairwise combination reduces to zero
        for a in i.gens() {
            for b in i.gens() {
                assert!(i.contains(&s_combination(a, b)));
            }
        }
        assert_eq!(IntIdealBasis::canonicalize(i.gens()), i);
    }
}

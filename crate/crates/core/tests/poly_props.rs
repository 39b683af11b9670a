//! Algebraic laws of the polynomial layer under randomized inputs.

use num_bigint::BigInt;
use proptest::prelude::*;

use knotcover::poly::LaurentPoly;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -9i64..=9), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(), |acc, (e, c)| acc.add(&LaurentPoly::term(c, e)))
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn addition_commutes(a in poly(), b in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn multiplication_commutes_and_associates(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn degree_of_product_adds(a in nonzero_poly(), b in nonzero_poly()) {
        let product = a.mul(&b);
        prop_assert_eq!(
            product.degree().unwrap(),
            a.degree().unwrap() + b.degree().unwrap()
        );
        prop_assert_eq!(
            product.low_degree().unwrap(),
            a.low_degree().unwrap() + b.low_degree().unwrap()
        );
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        let product = a.mul(&b);
        prop_assert_eq!(product.exact_div(&b), Some(a));
    }

    #[test]
    fn gcd_divides_both_and_is_canonical(a in poly(), b in poly()) {
        let g = a.gcd(&b);
        if a.is_zero() && b.is_zero() {
            prop_assert!(g.is_zero());
        } else {
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
            prop_assert_eq!(g.clone(), g.normalize_unit());
        }
    }

    #[test]
    fn unit_normalization_is_idempotent_and_unit_invariant(p in poly(), k in -4i64..=4, flip in any::<bool>()) {
        let n = p.normalize_unit();
        prop_assert_eq!(n.clone(), n.normalize_unit());
        let moved = if flip { p.shifted(k).neg() } else { p.shifted(k) };
        prop_assert_eq!(moved.normalize_unit(), n.clone());
        prop_assert!(moved.eq_up_to_unit(&p));
    }

    #[test]
    fn reversal_is_an_involution(p in poly()) {
        prop_assert_eq!(p.reversed().reversed(), p);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), x in -5i64..=5) {
        // shift into plain polynomials first: evaluation needs
        // nonnegative exponents
        let a = match a.low_degree() {
            Some(low) if low < 0 => a.shifted(-low),
            _ => a,
        };
        let b = match b.low_degree() {
            Some(low) if low < 0 => b.shifted(-low),
            _ => b,
        };
        let x = BigInt::from(x);
        prop_assert_eq!(a.add(&b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!(a.mul(&b).eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn content_scales_multiplicatively(p in nonzero_poly(), s in 1i64..=9) {
        let scaled = p.scaled(&BigInt::from(s));
        prop_assert_eq!(scaled.content(), p.content() * s);
    }
}

//! Acceptance gate: nine end-to-end checks, one test each, covering the
//! certificate for 9_46, the table scans, the winding-number
//! classification, the filling homology, the cover obstruction, and the
//! randomized property suites.  Each prints a single PASS line.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use knotcover::alexander::{AlexanderPresentation, WindingFamily};
use knotcover::diagram::PlanarDiagram;
use knotcover::fox::{self, fundamental_identity_holds};
use knotcover::group::{AbelianizationMap, GroupPresentation, Word};
use knotcover::ideal::IntIdealBasis;
use knotcover::matrix::IntMatrix;
use knotcover::obstruction::{
    check_obstruction, growth_bounds, ObstructionInput, ObstructionVerdict,
};
use knotcover::poly::LaurentPoly;
use knotcover::screen::{crowell_check, scan_table, screen_genus1, Status};
use knotcover::table::{self, KnotRecord};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn word(text: &str) -> Word {
    text.parse().unwrap()
}

/// The cover group of the certificate knot: free on a, b, stable letter t.
fn cover_presentation() -> GroupPresentation {
    let base = GroupPresentation::free(&["a", "b"]);
    let pairs = vec![
        (word("a"), word("a b a b^-1")),
        (word("b a b a^-1"), word("b")),
    ];
    GroupPresentation::hnn_extension(&base, &pairs, "t").unwrap()
}

/// Same group presented on c, d with stable letter s.
fn exterior_presentation() -> GroupPresentation {
    let base = GroupPresentation::free(&["c", "d"]);
    let pairs = vec![
        (word("c"), word("c d c d^-1")),
        (word("d c d c^-1"), word("d")),
    ];
    GroupPresentation::hnn_extension(&base, &pairs, "s").unwrap()
}

fn delta_of(p: &GroupPresentation) -> LaurentPoly {
    let ab = AbelianizationMap::infinite_cyclic(p).unwrap();
    let m = fox::module_matrix(p, &ab).unwrap();
    m.minor_gcd(m.cols())
}

fn split_delta() -> LaurentPoly {
    "2t^2-5t+2".parse().unwrap()
}

fn bundled_946_diagram() -> PlanarDiagram {
    let records = table::bundled_table();
    let record = table::find(&records, "9_46").unwrap();
    PlanarDiagram::from_dt(record.dt_code().unwrap()).unwrap()
}

fn genus_one_nonfibred(records: &[KnotRecord]) -> Vec<&KnotRecord> {
    records.iter().filter(|r| r.genus() == 1 && !r.fibred()).collect()
}

#[test]
fn c1_three_alexander_routes_agree_for_9_46() {
    let start = Instant::now();
    let via_hnn = delta_of(&cover_presentation());
    let via_diagram = delta_of(&GroupPresentation::wirtinger(&bundled_946_diagram()));
    let via_family = WindingFamily::new(2, -1, -1).family_matrix().delta();
    let expected = split_delta();
    assert!(via_hnn.eq_up_to_unit(&expected), "stable-letter route gave {via_hnn}");
    assert!(via_diagram.eq_up_to_unit(&expected), "diagram route gave {via_diagram}");
    assert!(via_family.eq_up_to_unit(&expected), "family route gave {via_family}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "routes took {elapsed:?}");
    println!("PASS 1/9: three Alexander routes for 9_46 agree on 2t^2-5t+2 in {elapsed:?}");
}

#[test]
fn c2_first_elementary_ideal_separates_9_46_from_6_1() {
    let module = {
        let p = cover_presentation();
        let ab = AbelianizationMap::infinite_cyclic(&p).unwrap();
        fox::module_matrix(&p, &ab).unwrap()
    };
    let e1 = AlexanderPresentation::new(module).elementary_ideal(1);
    let expected = vec![LaurentPoly::constant(3), "t+1".parse().unwrap()];
    assert_eq!(e1.gens(), expected.as_slice(), "9_46 basis is {e1}");
    assert!(!e1.contains_one());

    let records = table::bundled_table();
    let six_one = table::find(&records, "6_1").unwrap();
    let e1_six = six_one
        .seifert()
        .unwrap()
        .alexander_presentation()
        .elementary_ideal(1);
    assert!(e1_six.contains_one(), "6_1 basis is {e1_six}");

    assert_eq!(screen_genus1(six_one).unwrap().status, Status::No);
    let nine46 = table::find(&records, "9_46").unwrap();
    assert_eq!(screen_genus1(nine46).unwrap().status, Status::YesDieConstruction);
    println!("PASS 2/9: e1 = {{3, t+1}} misses 1 for 9_46, contains 1 for 6_1; verdicts split");
}

#[test]
fn c3_bundled_scan_leaves_exactly_9_46() {
    let start = Instant::now();
    let records = table::bundled_table();
    let report = scan_table(&records);
    let non_no: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| e.status != Status::No)
        .map(|e| e.name.as_str())
        .collect();
    assert_eq!(non_no, ["9_46"]);
    assert_eq!(report.unique_survivor(), Some("9_46"));
    assert_eq!(report.entries.len(), genus_one_nonfibred(&records).len());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "scan took {elapsed:?}");
    println!("PASS 3/9: bundled scan leaves 9_46 as the unique survivor in {elapsed:?}");
}

#[test]
fn c4_alternating_knots_all_excluded_and_crosschecked() {
    let records = table::bundled_table();
    let mut excluded_by_determinant = 0usize;
    let mut deferred = Vec::new();
    for r in genus_one_nonfibred(&records).into_iter().filter(|r| r.alternating()) {
        let verdict = screen_genus1(r).unwrap();
        assert_eq!(verdict.status, Status::No, "{} not excluded", r.name());
        match crowell_check(r).unwrap() {
            Some(_) => excluded_by_determinant += 1,
            None => {
                // determinant 9 at small crossing number is the one
                // pattern the evaluation cannot settle; the module rule
                // must have fired instead
                let delta = r.seifert().unwrap().alexander_presentation().delta();
                let det = delta.eval(&BigInt::from(-1)).abs();
                assert_eq!(det, BigInt::from(9), "{}", r.name());
                assert!(r.crossing_number() <= 9, "{}", r.name());
                assert!(
                    verdict.reasons.iter().any(|reason| reason.rule == "module-class"),
                    "{} lacks a module exclusion",
                    r.name()
                );
                deferred.push(r.name().to_string());
            }
        }
    }
    assert!(excluded_by_determinant > 0);
    assert_eq!(deferred, ["6_1"]);
    println!(
        "PASS 4/9: all alternating genus-1 non-fibred knots are NO; determinant check \
         settles {excluded_by_determinant}, module rule settles 6_1"
    );
}

#[test]
fn c5_winding_number_classification() {
    let mut admissible_w = Vec::new();
    let mut admissible_deltas: Vec<LaurentPoly> = Vec::new();
    for w in 0..=20 {
        let mut any = false;
        for sign1 in [-1i8, 1] {
            for sign2 in [-1i8, 1] {
                let delta = WindingFamily::new(w, sign1, sign2).family_matrix().delta();
                let at_one = delta.eval(&BigInt::one());
                if at_one.abs().is_one() {
                    any = true;
                    if !admissible_deltas.iter().any(|d| d.eq_up_to_unit(&delta)) {
                        admissible_deltas.push(delta);
                    }
                }
            }
        }
        if any {
            admissible_w.push(w);
        }
    }
    assert_eq!(admissible_w, [0, 2]);
    admissible_deltas.sort_by_key(|d| d.degree());
    assert_eq!(admissible_deltas.len(), 2);
    assert!(admissible_deltas[0].eq_up_to_unit(&LaurentPoly::one()));
    assert!(admissible_deltas[1].eq_up_to_unit(&split_delta()));
    println!("PASS 5/9: unit evaluation at 1 holds iff w is 0 or 2; deltas are 1 and 2t^2-5t+2");
}

#[test]
fn c6_renaming_matches_only_the_right_dictionary() {
    let cover = cover_presentation();
    let exterior = exterior_presentation();
    let correct: BTreeMap<String, String> = [("a", "c"), ("b", "d"), ("t", "s")]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    assert!(cover.identical_up_to_renaming(&exterior, &correct).unwrap());

    // only five wrong bijections exist on three letters, so random draws
    // repeat; ten draws still exercise the failure path ten times
    let mut rng = rng(0x946);
    let mut tested = 0;
    while tested < 10 {
        let mut values = ["c", "d", "s"];
        values.shuffle(&mut rng);
        let dict: BTreeMap<String, String> = ["a", "b", "t"]
            .iter()
            .zip(values.iter())
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        if dict == correct {
            continue;
        }
        assert!(
            !cover.identical_up_to_renaming(&exterior, &dict).unwrap(),
            "{dict:?} unexpectedly matches"
        );
        tested += 1;
    }
    println!("PASS 6/9: presentations match under a->c b->d t->s and under no perturbed dictionary");
}

#[test]
fn c7_killing_the_stable_letter_trivializes_homology() {
    let filled = cover_presentation().kill_generator("t");
    let (rank, torsion) = filled.h1();
    assert_eq!(rank, 0);
    assert!(torsion.is_empty());
    println!("PASS 7/9: filling the stable letter gives trivial first homology");
}

fn random_valid_input(rng: &mut ChaCha8Rng) -> ObstructionInput {
    let has_boundary = rng.gen();
    let (chi, beta0) = if has_boundary {
        (2 * rng.gen_range(-3..=1), rng.gen_range(0..=4))
    } else {
        (0, 0)
    };
    ObstructionInput::new(
        rng.gen_range(0..=10),
        rng.gen_range(0..=10),
        chi,
        beta0,
        has_boundary,
        rng.gen(),
    )
    .unwrap()
}

#[test]
fn c8_obstruction_engine_matches_the_inequality() {
    let mut rng = rng(0x51);
    for _ in 0..10_000 {
        let input = random_valid_input(&mut rng);
        let fires = if input.has_boundary {
            input.boundary_class_nonzero && input.beta1_x > input.beta1_s - input.chi_boundary
        } else {
            input.beta1_x > input.beta1_s
        };
        let want = if fires {
            ObstructionVerdict::Nonembeddable
        } else {
            ObstructionVerdict::Inconclusive
        };
        assert_eq!(check_obstruction(&input).unwrap(), want, "{input:?}");
    }

    // the final bound is affine in the tower level with the stated slope
    // and constant
    for _ in 0..200 {
        let input = random_valid_input(&mut rng);
        let constant = 2 - input.beta1_s - 6 * input.beta0_s_boundary;
        let slope = input.beta1_x - input.beta1_s + input.chi_boundary;
        let mut previous = None;
        for m in 1..=6 {
            let bound = growth_bounds(&input, m);
            assert_eq!(bound.constant_c, constant);
            assert_eq!(bound.slope(&input), slope);
            assert_eq!(bound.final_lower_bound_beta1_y, m * slope + constant);
            if let Some(prev) = previous {
                assert_eq!(bound.final_lower_bound_beta1_y - prev, slope);
            }
            previous = Some(bound.final_lower_bound_beta1_y);
        }
    }

    // knot-exterior shape: torus boundary, block no bigger than the
    // surface; the criterion can never fire
    for _ in 0..1_000 {
        let beta1_s = rng.gen_range(1..=8);
        let input = ObstructionInput::new(
            rng.gen_range(0..=beta1_s),
            beta1_s,
            0,
            rng.gen_range(1..=3),
            true,
            rng.gen(),
        )
        .unwrap();
        assert_eq!(check_obstruction(&input).unwrap(), ObstructionVerdict::Inconclusive);
    }
    println!("PASS 8/9: obstruction fires exactly on the strict inequality; bounds affine; knot exteriors inconclusive");
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[String]) -> Word {
    let len = rng.gen_range(0..=12);
    Word::from_letters((0..len).map(|_| {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        (g, if rng.gen() { 1i8 } else { -1 })
    }))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
    IntMatrix::new(rows, cols, entries)
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for exp in 0..=3 {
        let coeff = rng.gen_range(-4i64..=4);
        p = p.add(&LaurentPoly::term(coeff, exp));
    }
    p
}

#[test]
fn c9_randomized_property_suites() {
    let gens: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let mut rng = rng(0xf0c5);
    for _ in 0..10_000 {
        let w = random_word(&mut rng, &gens);
        assert!(fundamental_identity_holds(&w, &gens), "identity fails on {w}");
    }

    for _ in 0..1_000 {
        let a = random_matrix(&mut rng);
        let snf = a.smith_normal_form();
        assert!(snf.u.det().abs().is_one());
        assert!(snf.v.det().abs().is_one());
        let product = snf.u.mul(&a).mul(&snf.v);
        for i in 0..product.rows() {
            for j in 0..product.cols() {
                let want = if i == j && i < snf.diag.len() {
                    snf.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(product.at(i, j), &want);
            }
        }
        let factors = snf.invariant_factors();
        for pair in factors.windows(2) {
            assert!((&pair[1] % &pair[0]).is_zero(), "{factors:?}");
        }
        assert_eq!(snf.rank(), a.rational_rank());
    }

    for _ in 0..1_000 {
        let count = rng.gen_range(1..=4);
        let mut gens: Vec<LaurentPoly> = (0..count).map(|_| random_poly(&mut rng)).collect();
        let basis = IntIdealBasis::canonicalize(&gens);
        assert_eq!(IntIdealBasis::canonicalize(basis.gens()), basis);
        gens.shuffle(&mut rng);
        assert_eq!(IntIdealBasis::canonicalize(&gens), basis);
        for g in &gens {
            assert!(basis.contains(g), "{basis} misses {g}");
        }
    }

    let mut checked = 0usize;
    for r in table::bundled_table() {
        let Some(v) = r.seifert() else { continue };
        let delta = v.alexander_presentation().delta();
        assert!(delta.eq_up_to_unit(&delta.reversed()), "{}: {delta}", r.name());
        assert!(delta.eval(&BigInt::one()).abs().is_one(), "{}: {delta}", r.name());
        checked += 1;
    }
    assert!(checked >= 15);
    println!("PASS 9/9: Fox identity x10^4, Smith form x10^3, ideal bases x10^3, {checked} symmetric deltas");
}

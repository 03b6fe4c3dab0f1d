use picss::abelian::AbelianGroupType;
use picss::cohomology::{cyclic_cohomology, unit_group_module, CyclicModule};
use picss::cosimp::{betap0_report, verify_first_unstable, FirstUnstableExample};
use picss::field::ExtensionField;
use picss::reps;
use picss::ring::{Elem, FiniteRing, RingSpec};
use picss::trunclog;
use picss::zmod::Ambient;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gen(r: &FiniteRing, name: &str) -> Elem {
    let j = r.basis_names().iter().position(|b| b == name).unwrap_or_else(|| panic!("no basis element {name}"));
    r.basis(j)
}

/// `a·1 + b·x + c·x²` from integer coefficients.
fn poly(r: &FiniteRing, x: &Elem, coeffs: &[i64]) -> Elem {
    let mut acc = r.zero();
    let mut pw = r.one();
    for &c in coeffs {
        acc = r.add(&acc, &r.scale(&pw, c));
        pw = r.mul(&pw, x);
    }
    acc
}

#[test]
fn exp_and_log_by_hand_at_three() {
    // exp(x) = 1 + x + x²/2, log(1+x) = x − x²/2; 1/2 = 2 in F_3.
    let r = FiniteRing::new(&RingSpec::monomial(3, 1, &["x"], 3)).unwrap();
    let x = gen(&r, "x");
    assert_eq!(trunclog::trunc_exp(&r, 3, &x).unwrap(), poly(&r, &x, &[1, 1, 2]));
    let u = r.add(&r.one(), &x);
    assert_eq!(trunclog::trunc_log(&r, 3, &u).unwrap(), poly(&r, &x, &[0, 1, 1]));
}

#[test]
fn sigma_is_the_binomial_remainder() {
    // Σ_{i+j=3, i,j≤2} x^i y^j/(i! j!) = (x²y + xy²)/2.
    let r = FiniteRing::new(&RingSpec::monomial(3, 1, &["x", "y"], 5)).unwrap();
    let (x, y) = (gen(&r, "x"), gen(&r, "y"));
    let x2y = r.mul(&r.mul(&x, &x), &y);
    let xy2 = r.mul(&x, &r.mul(&y, &y));
    let want = r.scale(&r.add(&x2y, &xy2), 2);
    assert_eq!(trunclog::sigma(&r, 3, &[x, y]).unwrap(), want);
}

#[test]
fn exp_is_a_homomorphism_below_p() {
    let r = FiniteRing::new(&RingSpec::monomial(5, 1, &["x", "y"], 3)).unwrap();
    let (x, y) = (gen(&r, "x"), gen(&r, "y"));
    let lhs = trunclog::trunc_exp(&r, 5, &r.add(&x, &y)).unwrap();
    let rhs = r.mul(&trunclog::trunc_exp(&r, 5, &x).unwrap(), &trunclog::trunc_exp(&r, 5, &y).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn identity_suite_for_small_primes() {
    for p in [2u32, 3, 5] {
        let r = FiniteRing::new(&RingSpec::monomial(p, 1, &["x", "y"], p + 1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for res in trunclog::verify_identities(&r, p as u64, 100, &mut rng).unwrap() {
            assert!(res.passed(), "p={p} {}: {:?}", res.identity, res.counterexample);
            assert_eq!(res.trials, 100);
        }
    }
}

#[test]
fn bijection_on_every_small_ring() {
    let specs = [
        RingSpec::monomial(3, 1, &["x"], 3),
        RingSpec::monomial(3, 1, &["x", "y"], 2),
        RingSpec::monomial(3, 2, &["x"], 2),
        RingSpec::monomial(2, 1, &["x", "y"], 2),
        RingSpec::monomial(5, 1, &["x"], 3),
        RingSpec::cyclotomic(3, 2),
    ];
    for spec in specs {
        let r = FiniteRing::new(&spec).unwrap();
        let p = spec.p() as u64;
        assert!(r.order() <= trunclog::MAX_EXHAUSTIVE_RING_ORDER);
        let b = trunclog::verify_exp_log_bijection(&r, p).unwrap();
        assert_eq!((b.inverse_failures, b.homomorphism_failures), (0, 0), "{spec:?}");
        assert_eq!(b.ideal_order, r.maximal_ideal().order());
    }
}

#[test]
fn bijection_refuses_large_or_non_nilpotent_rings() {
    let r = FiniteRing::new(&RingSpec::monomial(3, 1, &["x"], 4)).unwrap();
    assert_eq!(trunclog::verify_exp_log_bijection(&r, 3).unwrap_err().kind(), "precondition");
    let r = FiniteRing::new(&RingSpec::monomial(3, 1, &["x", "y", "z", "w", "v", "u"], 2)).unwrap();
    assert_eq!(trunclog::verify_exp_log_bijection(&r, 3).unwrap_err().kind(), "too-large");
}

#[test]
fn trivial_action_cohomology_closed_form() {
    // H⁰ = M, H^odd = M[m], H^even = M/mM for the trivial action of C_m.
    let amb = Ambient::new(3, vec![2, 1]);
    for (m, h1, h2) in [(3, vec![3, 3], vec![3, 3]), (9, vec![3, 9], vec![3, 9]), (2, vec![], vec![])] {
        let hs = cyclic_cohomology(&CyclicModule::trivial(&amb, m), 0..=4).unwrap();
        assert_eq!(hs[0].group_type(), AbelianGroupType::from_factors([9, 3]));
        for h in &hs[1..] {
            let want = if h.degree % 2 == 1 { &h1 } else { &h2 };
            assert_eq!(h.group_type(), AbelianGroupType::from_factors(want.iter().copied()), "m={m} H^{}", h.degree);
        }
    }
}

#[test]
fn unit_groups_of_worked_examples() {
    let r = FiniteRing::new(&RingSpec::monomial(3, 1, &["x"], 4)).unwrap();
    let u = unit_group_module(&r, None, 3, 1, 4).unwrap();
    assert_eq!(u.table.group_type(), AbelianGroupType::from_factors([3, 9]));
    let r = FiniteRing::new(&RingSpec::cyclotomic(3, 4)).unwrap();
    let u = unit_group_module(&r, None, 3, 1, 4).unwrap();
    assert_eq!(u.table.group_type(), AbelianGroupType::from_factors([3, 3, 3]));
}

#[test]
fn jordan_types_match_closed_form() {
    for p in [3u32, 5] {
        let rows = reps::af_check(p, (p * p) as usize).unwrap();
        assert_eq!(rows.len(), (p * p) as usize + 1);
        for row in rows {
            assert!(row.ok, "p={p} i={}: {} vs {}", row.i, row.computed, row.expected);
            assert_eq!(row.dim, reps::sym_dim(p as usize - 1, row.i));
        }
    }
}

#[test]
fn sym_dim_is_a_binomial() {
    for d in 1..6 {
        for i in 0..8 {
            assert_eq!(reps::sym_dim(d, i) as u64, reps::binomial((d + i - 1) as u64, i as u64));
        }
    }
}

#[test]
fn presentation_matches_brute_force_cohomology() {
    for p in [3u32, 5] {
        let f = ExtensionField::new(p, 1).unwrap();
        for c in reps::check_presentation(p, &f, 2 * p as usize, 3).unwrap() {
            assert_eq!(c.computed_dim, c.predicted_dim, "p={p} j={} s={}", c.j, c.s);
        }
    }
}

#[test]
fn first_unstable_examples() {
    let r = verify_first_unstable(FirstUnstableExample::parse("truncated").unwrap(), 3, 3).unwrap();
    assert_eq!(r.unit_group, "Z/3+Z/9");
    assert!(r.all_additive_zero);
    assert!(r.tautological.multiplicative_d.iter().any(|&c| c != 0));
    assert!(r.identity_holds && r.classes.iter().all(|c| c.identity_holds));

    let r = verify_first_unstable(FirstUnstableExample::parse("cyclotomic").unwrap(), 3, 3).unwrap();
    assert_eq!(r.unit_group, "Z/3+Z/3+Z/3");
    assert_eq!(r.additive_group, "Z/3+Z/9");
    assert!(r.tautological.additive_d.iter().any(|&c| c != 0));
    assert!(r.tautological.multiplicative_d.iter().all(|&c| c == 0));
    assert!(r.identity_holds && r.classes.iter().all(|c| c.identity_holds));
}

#[test]
fn unknown_example_is_invalid_input() {
    assert_eq!(FirstUnstableExample::parse("600").unwrap_err().kind(), "invalid-input");
}

#[test]
fn beta_p0_in_degree_one() {
    let r = betap0_report(3, 1, 2).unwrap();
    assert_eq!(r.sym_cohomology, "Z/3");
    assert!(r.beta_nonzero && r.phi_nonzero && r.phi_cocycle);
    assert_eq!(r.phi_semilinear, Some(true));
}

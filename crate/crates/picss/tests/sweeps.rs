use picss::abelian::AbelianGroupType;
use picss::hfpss::{self, EcFate, Group, Rule, Setup, Sweep};

#[test]
fn e_c_sits_in_additive_stem_minus_one() {
    for p in [3u32, 5] {
        let setup = Setup::new(p, Group::Cp).unwrap();
        for c in 1..=20 {
            let m = setup.e_c(c).unwrap();
            let (s, t) = setup.bidegree(&m);
            assert_eq!((t - s, s), (-1, 2 * (p as i64) * c as i64 - 1), "e_{c}");
        }
    }
    let setup = Setup::new(3, Group::Maximal).unwrap();
    let present: Vec<u64> = (1..=20).filter(|&c| setup.e_c(c).is_some()).collect();
    assert_eq!(present, (1..=20).filter(|c| c % 4 == 1).collect::<Vec<_>>());
}

#[test]
fn e_c_fates_for_cp() {
    for p in [3u32, 5] {
        let rep = hfpss::ec_analysis(p, 20).unwrap();
        assert!(rep.ok, "p={p}");
        assert_eq!(rep.classes.len(), 20);
        let first = &rep.classes[0];
        assert_eq!(first.fate, EcFate::BoundedByKernel);
        assert_eq!(first.rule, Some(Rule::FirstUnstable));
        assert_eq!(first.bound, Some(p as u64));
        for c in &rep.classes[1..] {
            assert!(matches!(c.fate, EcFate::KilledAsTarget | EcFate::SupportsDifferential), "e_{}: {:?}", c.c, c.fate);
            assert!(matches!(c.rule, Some(Rule::ImportGeneral | Rule::ImportDiagonal)), "e_{}: {:?}", c.c, c.rule);
            assert!(!c.citation.is_empty());
        }
        let sweep = rep.kernel_sweep.unwrap();
        assert_eq!(sweep.max_order, p as u64);
        let q = (p as usize).pow(p - 1);
        assert_eq!(sweep.cases, (q - 1) * q);
    }
}

#[test]
fn e_c_fates_for_maximal_group() {
    let rep = hfpss::ec_analysis_for(3, Group::Maximal, 20).unwrap();
    assert!(rep.ok);
}

#[test]
fn exhaustive_sweep_at_three() {
    let rep = hfpss::picard_order_sweep(3, Group::Cp, Sweep::Exhaustive).unwrap();
    assert_eq!(rep.runs, 144);
    assert_eq!(rep.orders, vec![18]);
    assert!(rep.all_cyclic);
    assert_eq!(rep.verdict, "Z/18 cyclic");
}

#[test]
fn sampled_sweeps_are_seeded() {
    let setup = Setup::new(5, Group::Cp).unwrap();
    let a = hfpss::parameter_sweep(&setup, Sweep::Sampled { count: 40, seed: 7 });
    let b = hfpss::parameter_sweep(&setup, Sweep::Sampled { count: 40, seed: 7 });
    let c = hfpss::parameter_sweep(&setup, Sweep::Sampled { count: 40, seed: 8 });
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.iter().all(|p| p.validate(&setup).is_ok()));
}

#[test]
fn algebraic_picard_at_three_for_every_pair() {
    let e1 = hfpss::algebraic_e1(3, 6, 3).unwrap();
    assert!(e1.checks.iter().all(|c| c.computed_dim == c.predicted_dim));
    let f = &e1.field;
    let mut n = 0;
    for xi in f.units().collect::<Vec<_>>() {
        for xp in f.elements().collect::<Vec<_>>() {
            let rep = hfpss::algebraic_picard_with(&e1, xi, xp).unwrap();
            assert_eq!(rep.result, AbelianGroupType::cyclic(3), "xi={xi} xi'={xp}");
            n += 1;
        }
    }
    assert_eq!(n, 72);
}

#[test]
fn maximal_group_order() {
    let rep = hfpss::picard_order(3, Group::Maximal, None).unwrap();
    assert_eq!(rep.order, 72);
    let bounds: Vec<u64> = rep.ledger.iter().map(|e| e.bound).collect();
    assert_eq!(bounds[..2], [2, 12]);
    assert!(bounds[2..].iter().all(|&b| b <= 3));
}

#[test]
fn bad_parameters_are_rejected() {
    let setup = Setup::new(3, Group::Cp).unwrap();
    let bad = hfpss::PicardParams { xi: 0, xi_prime: 1, zeta: 1 };
    assert_eq!(bad.validate(&setup).unwrap_err().kind(), "invalid-input");
    let bad = hfpss::PicardParams { xi: 1, xi_prime: 1, zeta: 3 };
    assert_eq!(bad.validate(&setup).unwrap_err().kind(), "invalid-input");
    assert_eq!(Setup::new(4, Group::Cp).unwrap_err().kind(), "precondition");
}

mod common;

use common::{ClosedForm, Mono};
use picss::hfpss::{run_additive, Derivation, Group, Setup, Window};

fn engine(p: u32, group: Group, w: Window) -> (Setup, picss::hfpss::AdditiveSS) {
    let setup = Setup::new(p, group).unwrap();
    let ss = run_additive(&setup, w).unwrap();
    (setup, ss)
}

fn oracle_for(p: u32, group: Group) -> ClosedForm {
    ClosedForm::new(p as i64, group == Group::Cp)
}

/// Every cell of an exact region has the closed-form fate and differential.
fn compare(p: u32, group: Group, w: Window) {
    let (_, ss) = engine(p, group, w);
    let cf = oracle_for(p, group);
    let exact = ss.smax();
    assert!(exact >= cf.vanishing_line(), "exact region too small");
    let mut checked = 0;
    for ((s, t), m) in ss.cells_in_window() {
        if s > exact {
            continue;
        }
        let om = cf.at(s, t).expect("oracle cell");
        assert_eq!((om.a, om.b, om.d), (m.a, m.b as i64, m.d), "monomial at ({s},{t})");
        assert_eq!(ss.is_permanent((s, t)), cf.permanent(om), "fate of {m:?} at ({s},{t})");
        let d = ss.differential_from((s, t));
        match cf.outgoing(om) {
            None => assert!(d.is_none(), "unexpected differential from {m:?}: {d:?}"),
            Some(od) => {
                let d = d.unwrap_or_else(|| panic!("missing d_{} from {m:?}", od.r));
                assert_eq!(d.r as i64, od.r);
                assert_eq!(d.to, od.to);
                assert_eq!((d.target.a, d.target.b as i64, d.target.d), (od.target.a, od.target.b, od.target.d));
                assert_eq!(d.coefficient as i64, od.coefficient, "coefficient of d_{} on {m:?}", od.r);
            }
        }
        checked += 1;
    }
    assert!(checked > 50);
}

#[test]
fn cp_three_matches_closed_form() {
    compare(3, Group::Cp, Window::new(20, -2, 40).unwrap());
}

#[test]
fn cp_five_matches_closed_form() {
    compare(5, Group::Cp, Window::new(40, -2, 60).unwrap());
}

#[test]
fn maximal_three_matches_closed_form() {
    compare(3, Group::Maximal, Window::new(20, -2, 80).unwrap());
}

#[test]
fn only_two_nontrivial_pages() {
    for (p, g) in [(3, Group::Cp), (5, Group::Cp), (3, Group::Maximal)] {
        let (setup, ss) = engine(p, g, setup_window(p, g));
        assert_eq!(ss.nontrivial_pages(), &[setup.first_page(), setup.second_page()][..]);
    }
}

fn setup_window(p: u32, g: Group) -> Window {
    Setup::new(p, g).unwrap().default_window()
}

#[test]
fn generating_differentials_are_axioms() {
    let (setup, ss) = engine(3, Group::Cp, Window::new(20, -2, 20).unwrap());
    for ax in setup.axioms() {
        let pos = setup.bidegree(&ax.source);
        let d = ss.differential_from(pos).unwrap();
        assert_eq!(d.derivation, Derivation::Axiom);
        assert_eq!(d.target, ax.target);
    }
}

#[test]
fn einf_at_three_over_one_period() {
    // Hand list for C_3: squares in stems 0 and 18, one F_9 line at each other position.
    let cf = ClosedForm::new(3, true);
    let mut found: Vec<(i64, i64)> = Vec::new();
    for stem in 0..=cf.period() {
        for s in 0..=cf.vanishing_line() {
            if cf.at(s, s + stem).is_some_and(|m| cf.permanent(m)) {
                found.push((stem, s));
            }
        }
    }
    found.sort();
    let expected = vec![(0, 0), (1, 3), (2, 4), (3, 1), (4, 8), (9, 1), (10, 2), (12, 6), (13, 3), (18, 0)];
    assert_eq!(found, expected);
    let (_, ss) = engine(3, Group::Cp, Window::new(12, 0, 18).unwrap());
    let page = ss.infinity_page();
    let mut got: Vec<(i64, i64)> = page.cells.iter().map(|c| (c.t - c.s, c.s)).collect();
    got.sort();
    assert_eq!(got, expected);
}

#[test]
fn einf_minimal_period_is_full_period() {
    for (p, cp) in [(3, true), (5, true), (3, false)] {
        let cf = ClosedForm::new(p, cp);
        assert_eq!(cf.minimal_einf_period(), cf.period());
    }
    let setup = Setup::new(5, Group::Cp).unwrap();
    let rep = picss::hfpss::periodicity_check(&setup).unwrap();
    assert!(rep.ok && rep.generator_permanent);
    assert_eq!(rep.minimal_period, ClosedForm::new(5, true).minimal_einf_period());
    assert_eq!(rep.generator_stem, 50);
}

#[test]
fn nothing_survives_above_the_vanishing_line() {
    for (p, cp) in [(3, true), (5, true), (3, false)] {
        let cf = ClosedForm::new(p, cp);
        for s in cf.vanishing_line() + 1..cf.vanishing_line() + 12 {
            for stem in 0..cf.period() {
                assert!(!cf.at(s, s + stem).is_some_and(|m| cf.permanent(m)));
            }
        }
    }
}

#[test]
fn closed_form_first_differential_at_three() {
    let cf = ClosedForm::new(3, true);
    let d = cf.outgoing(Mono { a: 0, b: 0, d: 1 }).unwrap();
    assert_eq!((d.r, d.target), (5, Mono { a: 1, b: 2, d: -3 }));
    let d = cf.outgoing(Mono { a: 1, b: 0, d: 8 }).unwrap();
    assert_eq!((d.r, d.target), (9, Mono { a: 0, b: 5, d: 0 }));
}

use std::sync::OnceLock;

use picss::chart::{self, ChartDocument, Indexing};
use picss::field::ExtensionField;
use picss::hfpss::{self, AdditiveSS, Group, MonomialClass, PicardContext, PicardParams, Setup, Window};
use proptest::prelude::*;

fn additive_three() -> &'static AdditiveSS {
    static SS: OnceLock<AdditiveSS> = OnceLock::new();
    SS.get_or_init(|| {
        let setup = Setup::new(3, Group::Cp).unwrap();
        hfpss::run_additive(&setup, Window::new(24, -20, 60).unwrap()).unwrap()
    })
}

fn picard_three() -> &'static PicardContext {
    static CTX: OnceLock<PicardContext> = OnceLock::new();
    CTX.get_or_init(|| PicardContext::new(3, Group::Cp).unwrap())
}

fn f625() -> &'static ExtensionField {
    static F: OnceLock<ExtensionField> = OnceLock::new();
    F.get_or_init(|| ExtensionField::new(5, 4).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn bidegree_is_linear_and_invertible(a in 0u8..2, b in 0u32..40, d in -30i64..30, p in prop::sample::select(vec![3u32, 5])) {
        for g in [Group::Cp, Group::Maximal] {
            let setup = Setup::new(p, g).unwrap();
            let m = MonomialClass::new(a, b, d);
            let (s, t) = setup.bidegree(&m);
            let (p, n) = (p as i64, p as i64 - 1);
            prop_assert_eq!(s, a as i64 + 2 * b as i64);
            prop_assert_eq!(t, 2 * n * a as i64 + 2 * p * n * b as i64 + setup.unit_t() * d);
            prop_assert_eq!(setup.monomial_at(s, t), Some(m));
        }
    }

    #[test]
    fn differentials_have_page_slope(s in 0i64..20, stem in -10i64..50) {
        let ss = additive_three();
        let pos = (s, s + stem);
        if let Some(d) = ss.differential_from(pos) {
            let r = d.r as i64;
            prop_assert_eq!(d.to, (s + r, s + stem + r - 1));
            prop_assert_eq!(ss.setup().bidegree(&d.source), d.from);
            prop_assert_eq!(ss.setup().bidegree(&d.target), d.to);
            let back = ss.differential_to(d.to).unwrap();
            prop_assert_eq!(back.from, d.from);
        }
    }

    #[test]
    fn periodicity_generator_acts(s in 0i64..18, stem in -10i64..30) {
        let ss = additive_three();
        let per = ss.setup().period();
        let a = ss.differential_from((s, s + stem));
        let b = ss.differential_from((s, s + stem + per));
        prop_assert_eq!(a.is_some(), b.is_some());
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!((a.r, a.to.0, a.to.1 + per, a.coefficient), (b.r, b.to.0, b.to.1, b.coefficient));
        }
        prop_assert_eq!(ss.is_permanent((s, s + stem)), ss.is_permanent((s, s + stem + per)));
    }

    #[test]
    fn beta_multiplication_commutes_with_differentials(s in 0i64..10, stem in -10i64..40) {
        // β is a permanent cycle, so d(βx) = β d(x) while both ends are exact.
        let ss = additive_three();
        let setup = ss.setup();
        let Some(m) = ss.cell((s, s + stem)) else { return Ok(()) };
        let beta = MonomialClass::new(0, 1, 0);
        let bm = m.mul(&beta).unwrap();
        let d = ss.differential_from(setup.bidegree(&m));
        let bd = ss.differential_from(setup.bidegree(&bm));
        if let Some(d) = d {
            let target = d.target.mul(&beta);
            if let (Some(bd), Some(target)) = (bd.as_ref(), target) {
                if bd.r == d.r {
                    prop_assert_eq!(bd.target, target);
                    prop_assert_eq!(bd.coefficient, d.coefficient);
                }
            }
            // βx can only die sooner if β d(x) is already zero on the page.
            prop_assert!(bd.is_some() || ss.differential_to(setup.bidegree(&bm)).is_some() || d.to.0 + 2 > ss.smax());
        }
    }

    #[test]
    fn semilinear_kernel_is_at_most_p(xi in 1u32..625, eta in 0u32..625) {
        let k = hfpss::semilinear_kernel(f625(), xi, eta).unwrap();
        prop_assert!(k.order <= 5);
        for &a in &k.elements {
            let f = f625();
            prop_assert_eq!(f.add(f.mul(a, xi), f.mul(f.frobenius(a), eta)), 0);
        }
    }

    #[test]
    fn picard_order_is_parameter_independent(xi in 1u32..9, xi_prime in 0u32..9, zeta in 1u32..3) {
        let rep = picard_three().run(PicardParams { xi, xi_prime, zeta }).unwrap();
        prop_assert_eq!(rep.order, 18);
        prop_assert!(rep.cyclic);
        prop_assert!(rep.ledger.iter().all(|e| e.bound <= 3 || e.s == 0));
    }

    #[test]
    fn window_parse_roundtrip(smax in 0i64..500, lo in -200i64..200, w in 0i64..400) {
        let text = format!("{smax},{lo},{}", lo + w);
        let win = Window::parse(&text).unwrap();
        prop_assert_eq!(win, Window::new(smax, lo, lo + w).unwrap());
    }

    #[test]
    fn hex_encoding_roundtrip(a in 0u32..625) {
        let f = f625();
        let hex = format!("{a:x}");
        prop_assert_eq!(f.parse_hex(&hex).unwrap(), a);
    }
}

#[test]
fn chart_json_is_byte_identical_and_roundtrips() {
    let builders: [fn() -> ChartDocument; 3] = [
        || chart::picard_chart(3, Group::Cp, None, None, Indexing::Adams).unwrap(),
        || chart::algebraic_chart(3).unwrap(),
        || chart::additive_einf_chart(3, Indexing::Adams).unwrap(),
    ];
    for build in builders {
        let doc = build();
        assert_eq!(doc.to_json(), build().to_json());
        let back = ChartDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.to_json(), doc.to_json());
        assert!(chart::diff_documents(&back, &doc).is_empty());
        assert_eq!(doc.to_svg(), back.to_svg());
    }
}

#[test]
fn diff_names_extra_differential_and_multiplicity() {
    let doc = chart::picard_chart(3, Group::Cp, None, None, Indexing::Adams).unwrap();
    let mut golden = doc.clone();
    let removed = golden.arrows.remove(0);
    let diffs = chart::diff_documents(&doc, &golden);
    assert_eq!(diffs.len(), 1);
    assert!(diffs[0].contains("extra differential"));
    assert!(diffs[0].contains(&format!("page {}", removed.page)));
    let mut golden = doc.clone();
    let cell = golden.cells.iter_mut().find(|c| c.group == "F_9").unwrap();
    cell.group = "Z/3".into();
    let diffs = chart::diff_documents(&doc, &golden);
    assert_eq!(diffs.len(), 1);
    assert!(diffs[0].contains("F_9") && diffs[0].contains("Z/3"), "{}", diffs[0]);
}

#[test]
fn cohomological_indexing_keeps_arrow_slopes() {
    for ix in [Indexing::Adams, Indexing::Cohomological] {
        chart::picard_chart(3, Group::Cp, None, None, ix).unwrap().validate().unwrap();
        chart::additive_chart(3, Group::Cp, None, ix).unwrap().validate().unwrap();
    }
}

#[test]
fn parallel_and_sequential_maps_agree() {
    let xs: Vec<u64> = (0..500).collect();
    let f = |x: &u64| x.wrapping_mul(2654435761) % 1009;
    assert_eq!(picss::par::map_seq(&xs, f), picss::par::map(&xs, f));
}

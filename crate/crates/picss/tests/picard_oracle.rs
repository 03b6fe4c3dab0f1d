mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;

use common::{kernel_order_closed_form, simulate_picard, Arrow, ClosedForm, PicardSim};
use picss::chart::{self, ArrowStyle, ChartDocument, Glyph, Indexing};
use picss::hfpss::{self, Group, PicardContext, PicardParams, Rule, Setup, Window};

fn rule_tag(r: Rule) -> &'static str {
    match r {
        Rule::ImportGeneral => "import-general",
        Rule::ImportDiagonal => "import-diagonal",
        Rule::FirstUnstable => "first-unstable",
        _ => "other",
    }
}

fn h1_order(p: u32, group: Group) -> u64 {
    match group {
        Group::Cp => p as u64,
        Group::Maximal => (p * (p - 1) * (p - 1)) as u64,
    }
}

fn simulate(p: u32, group: Group, w: Window, params: PicardParams) -> (ClosedForm, PicardSim) {
    let cf = ClosedForm::new(p as i64, group == Group::Cp);
    let setup = Setup::new(p, group).unwrap();
    let kernel = kernel_order_closed_form(setup.field(), params.xi, params.eta(&setup));
    let sim = simulate_picard(&cf, h1_order(p, group), kernel, (w.smax, w.stem_min, w.stem_max));
    (cf, sim)
}

fn in_window(w: &Window, c: (i64, i64)) -> bool {
    w.contains(c.0, c.1)
}

/// Determined and undetermined differentials inside the window agree with the simulation.
fn compare_differentials(p: u32, group: Group, w: Window) {
    let setup = Setup::new(p, group).unwrap();
    let params = PicardParams::default_for(&setup);
    let ctx = PicardContext::with_window(setup, w).unwrap();
    let pic = ctx.picard_ss(params, w).unwrap();
    let (_, sim) = simulate(p, group, w, params);
    let got: BTreeSet<Arrow> = pic
        .differentials()
        .into_iter()
        .map(|d| Arrow { r: d.r as i64, from: d.from, to: d.to, rule: rule_tag(d.rule) })
        .collect();
    let want: BTreeSet<Arrow> =
        sim.arrows.iter().filter(|a| in_window(&w, a.from) && in_window(&w, a.to)).cloned().collect();
    assert_eq!(got, want);
    let got_u: BTreeSet<_> = pic
        .unknowns()
        .into_iter()
        .filter(|u| in_window(&w, u.from) && in_window(&w, u.to))
        .map(|u| (u.r as i64, u.from, u.to))
        .collect();
    let want_u: BTreeSet<_> = sim
        .unknown
        .iter()
        .filter(|a| in_window(&w, a.from) && in_window(&w, a.to))
        .map(|a| (a.r, a.from, a.to))
        .collect();
    assert_eq!(got_u, want_u);
    for (&c, cell) in sim.fin.iter().filter(|(c, _)| in_window(&w, **c)) {
        assert_eq!(pic.e_infinity_at(c.0, c.1).map(|g| g.order()), Some(cell.order), "E_inf at {c:?}");
    }
}

#[test]
fn cp_three_differentials_match_simulation() {
    compare_differentials(3, Group::Cp, Setup::new(3, Group::Cp).unwrap().default_window());
}

#[test]
fn cp_five_differentials_match_simulation() {
    compare_differentials(5, Group::Cp, Window::new(40, -2, 60).unwrap());
}

#[test]
fn maximal_three_differentials_match_simulation() {
    compare_differentials(3, Group::Maximal, Setup::new(3, Group::Maximal).unwrap().default_window());
}

fn oracle_ledger(p: u32, group: Group) -> (Vec<(i64, u64)>, u64, u64) {
    let setup = Setup::new(p, group).unwrap();
    let params = PicardParams::default_for(&setup);
    let smax = 2 * p as i64 * (2 * p as i64 + 1);
    let (cf, sim) = simulate(p, group, Window::new(smax, -1, 1).unwrap(), params);
    let ledger = sim.zero_stem_bounds(p as u64, smax);
    let upper = ledger.iter().map(|e| e.1).product();
    (ledger, upper, cf.minimal_einf_period() as u64)
}

#[test]
fn zero_stem_ledger_matches_oracle() {
    for (p, g, bounds, order) in
        [(3, Group::Cp, vec![2, 3, 3], 18), (5, Group::Cp, vec![2, 5, 5], 50), (3, Group::Maximal, vec![2, 12, 3], 72)]
    {
        let (ledger, upper, lower) = oracle_ledger(p, g);
        assert_eq!(ledger.iter().map(|e| e.1).collect::<Vec<_>>(), bounds, "oracle ledger p={p} {g:?}");
        assert_eq!((upper, lower), (order, order));
        let rep = hfpss::picard_order(p, g, None).unwrap();
        let got: Vec<(i64, u64)> = rep.ledger.iter().map(|e| (e.s, e.bound)).collect();
        assert_eq!(got, ledger);
        assert_eq!((rep.upper_bound, rep.lower_bound, rep.order), (order, order, order));
        assert!(rep.cyclic);
        assert_eq!(rep.verdict, format!("Z/{order} cyclic"));
    }
}

#[test]
fn first_unstable_cell_at_three() {
    let (_, sim) = simulate(3, Group::Cp, Setup::new(3, Group::Cp).unwrap().default_window(), PicardParams {
        xi: 1,
        xi_prime: 2,
        zeta: 1,
    });
    let fu: Vec<_> = sim.arrows.iter().filter(|a| a.rule == "first-unstable").collect();
    assert_eq!(fu.len(), 1);
    assert_eq!((fu[0].r, fu[0].from, fu[0].to), (9, (5, 5), (14, 13)));
}

#[test]
fn kernel_matches_root_count() {
    for (p, n) in [(3, 2), (5, 4)] {
        let f = picss::field::ExtensionField::new(p, n).unwrap();
        let step = if p == 5 { 7 } else { 1 };
        for xi in f.units().step_by(step) {
            for eta in f.elements().step_by(step) {
                let k = hfpss::semilinear_kernel(&f, xi, eta).unwrap();
                assert_eq!(k.order, kernel_order_closed_form(&f, xi, eta), "xi={xi} eta={eta}");
                let brute = f
                    .elements()
                    .filter(|&a| f.add(f.mul(a, xi), f.mul(f.pow(a, p as u64), eta)) == 0)
                    .count() as u64;
                assert_eq!(k.order, brute);
            }
        }
    }
}

#[test]
fn kernel_sweep_distribution_at_three() {
    // a^2 = -ξ/η has two roots for half the ratios in F_9^×, so η ≠ 0 splits 32/32.
    let f = picss::field::ExtensionField::new(3, 2).unwrap();
    let sw = hfpss::kernel_sweep(&f).unwrap();
    assert_eq!(sw.cases, 72);
    assert_eq!(sw.max_order, 3);
    assert_eq!(sw.orders.get(&3), Some(&32));
    assert_eq!(sw.orders.get(&1), Some(&40));
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../picss-cli/tests/golden")
}

const GOLDENS: [&str; 4] = ["additive_einf_cp_p3", "picard_cp_p3", "algebraic_p3", "picard_max_p3"];

fn engine_chart(name: &str) -> ChartDocument {
    match name {
        "additive_einf_cp_p3" => chart::additive_einf_chart(3, Indexing::Adams),
        "picard_cp_p3" => chart::picard_chart(3, Group::Cp, None, None, Indexing::Adams),
        "algebraic_p3" => chart::algebraic_chart(3),
        "picard_max_p3" => chart::picard_chart(3, Group::Maximal, None, None, Indexing::Adams),
        _ => unreachable!(),
    }
    .unwrap()
}

/// Checks a chart document against the oracles; returns the problems found.
fn oracle_check(name: &str, doc: &ChartDocument) -> Vec<String> {
    let mut bad = Vec::new();
    let mut expect = |ok: bool, msg: String| {
        if !ok {
            bad.push(msg)
        }
    };
    let cells: BTreeSet<(i64, i64)> = doc.cells.iter().map(|c| (c.x, c.y)).collect();
    match name {
        "additive_einf_cp_p3" => {
            let cf = ClosedForm::new(3, true);
            let mut want = BTreeSet::new();
            for stem in 0..=cf.period() {
                for s in 0..=cf.vanishing_line() + 1 {
                    if cf.at(s, s + stem).is_some_and(|m| cf.permanent(m)) {
                        want.insert((stem, s));
                    }
                }
            }
            expect(cells == want, format!("E_inf cells {cells:?} vs oracle {want:?}"));
            for c in &doc.cells {
                // F_9 lines have rank two.
                let g = if c.y == 0 { Glyph::Square } else { Glyph::CircledDot };
                expect(c.glyphs == vec![g], format!("glyph at ({}, {})", c.x, c.y));
            }
            expect(doc.arrows.is_empty(), "E_inf chart has arrows".into());
        }
        "picard_cp_p3" | "picard_max_p3" => {
            let group = if name == "picard_cp_p3" { Group::Cp } else { Group::Maximal };
            let setup = Setup::new(3, group).unwrap();
            let w = setup.default_window();
            let (_, sim) = simulate(3, group, w, PicardParams::default_for(&setup));
            let place = |c: (i64, i64)| (c.1 - c.0, c.0);
            let want: BTreeSet<(i64, i64)> = sim.e2.keys().filter(|c| in_window(&w, **c)).map(|&c| place(c)).collect();
            expect(cells == want, format!("Picard E_2 cells differ: {} vs oracle {}", cells.len(), want.len()));
            let arrows = |style: ArrowStyle| -> BTreeSet<(usize, (i64, i64), (i64, i64))> {
                doc.arrows.iter().filter(|a| a.style == style).map(|a| (a.page, a.from, a.to)).collect()
            };
            let pick = |v: &[Arrow], f: &dyn Fn(&Arrow) -> bool| -> BTreeSet<(usize, (i64, i64), (i64, i64))> {
                v.iter()
                    .filter(|a| f(a) && in_window(&w, a.from) && in_window(&w, a.to))
                    .map(|a| (a.r as usize, place(a.from), place(a.to)))
                    .collect()
            };
            expect(arrows(ArrowStyle::Solid) == pick(&sim.arrows, &|a| a.rule != "first-unstable"), "solid arrows".into());
            expect(arrows(ArrowStyle::Highlight) == pick(&sim.arrows, &|a| a.rule == "first-unstable"), "highlighted arrows".into());
            expect(arrows(ArrowStyle::Unknown) == pick(&sim.unknown, &|_| true), "unknown arrows".into());
        }
        "algebraic_p3" => {
            let f = picss::field::ExtensionField::new(3, 1).unwrap();
            let rho = picss::reps::reduced_regular_rep(3, &f).unwrap();
            let mut want = BTreeSet::new();
            for j in 0..=6usize {
                let sym = rho.sym_power(j).unwrap();
                for h in picss::reps::rep_cohomology(&sym, 0..=4).unwrap() {
                    if !h.group_type().is_trivial() {
                        want.insert((j as i64, h.degree as i64));
                    }
                }
            }
            expect(cells == want, format!("algebraic E_1 cells {cells:?} vs brute force {want:?}"));
        }
        _ => unreachable!(),
    }
    let _ = doc.validate().map_err(|e| bad.push(e.to_string()));
    bad
}

#[test]
fn engine_charts_pass_oracle_checks() {
    for name in GOLDENS {
        let problems = oracle_check(name, &engine_chart(name));
        assert!(problems.is_empty(), "{name}: {problems:?}");
    }
}

#[test]
fn frozen_goldens_pass_oracle_checks() {
    for name in GOLDENS {
        let path = golden_dir().join(format!("{name}.json"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let doc = ChartDocument::from_json(&text).unwrap();
        let problems = oracle_check(name, &doc);
        assert!(problems.is_empty(), "{name}: {problems:?}");
        assert!(chart::diff_documents(&engine_chart(name), &doc).is_empty(), "{name} drifted from its golden");
    }
}

/// Rewrites the chart goldens after the oracle checks pass.
#[test]
#[ignore]
fn bless_goldens() {
    std::fs::create_dir_all(golden_dir()).unwrap();
    for name in GOLDENS {
        let doc = engine_chart(name);
        let problems = oracle_check(name, &doc);
        assert!(problems.is_empty(), "{name}: {problems:?}");
        std::fs::write(golden_dir().join(format!("{name}.json")), doc.to_json() + "\n").unwrap();
    }
}

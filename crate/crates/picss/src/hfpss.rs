//! Symbolic homotopy fixed point and Picard spectral sequences at height
//! `n = p − 1`.
//!
//! Modulo transfers the additive `E₂` page is `F[α, β, u^{±1}]/(α²)` with
//! `|α| = (1, 2n)`, `|β| = (2, 2pn)` and either `u = δ`, `|δ| = (0, 2p)`,
//! `F = F_{p^n}` (the group `C_p`) or `u = Δ`, `|Δ| = (0, 2pn²)`, `F = F_p`
//! (the maximal finite subgroup). Each bidegree holds at most one monomial, so
//! every cell is an `F`-line and every differential is zero or an isomorphism
//! up to a nonzero scalar. Scalars are tracked modulo `p` only so that
//! different Leibniz derivations of the same differential can be compared.
//!
//! Bidegrees are `(s, t)` with `d_r : (s, t) → (s + r, t + r − 1)`; the stem is
//! `t − s`.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::AbelianGroupType;
use crate::error::{invalid, precondition, Error, Result};
use crate::field::{is_prime, ExtensionField, Fe};
use crate::filtss::{DiffSummary, EntrySummary, PageSummary};
use crate::par;
use crate::reps::{self, PresentationCheck};

/// Extra stems computed on each side of a requested window.
pub const MARGIN_STEM: i64 = 4;

/// Default RNG seed for sampled parameter sweeps.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Cp,
    Maximal,
}

impl Group {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cp" | "c_p" => Ok(Group::Cp),
            "max" | "maximal" => Ok(Group::Maximal),
            other => Err(Error::Unsupported(format!("group tag {other:?} (expected cp or max)"))),
        }
    }
    pub fn tag(self) -> &'static str {
        match self {
            Group::Cp => "cp",
            Group::Maximal => "max",
        }
    }
}

/// `α^a β^b u^d` with `a ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialClass {
    pub a: u8,
    pub b: u32,
    pub d: i64,
}

impl MonomialClass {
    pub const ONE: MonomialClass = MonomialClass { a: 0, b: 0, d: 0 };

    pub fn new(a: u8, b: u32, d: i64) -> Self {
        assert!(a <= 1, "α² = 0");
        MonomialClass { a, b, d }
    }
    pub fn unit_power(d: i64) -> Self {
        MonomialClass { a: 0, b: 0, d }
    }
    /// Product; `None` when it contains `α²`.
    pub fn mul(&self, o: &MonomialClass) -> Option<MonomialClass> {
        if self.a + o.a > 1 {
            return None;
        }
        Some(MonomialClass { a: self.a + o.a, b: self.b + o.b, d: self.d + o.d })
    }
    /// `(−1)^{t−s}`; only `α` has odd stem.
    fn sign(&self) -> i64 {
        if self.a == 1 {
            -1
        } else {
            1
        }
    }
    pub fn name(&self, unit: &str) -> String {
        let mut out = String::new();
        if self.a == 1 {
            out.push('α');
        }
        match self.b {
            0 => {}
            1 => out.push('β'),
            b => out.push_str(&format!("β^{b}")),
        }
        match self.d {
            0 => {}
            1 => out.push_str(unit),
            d => out.push_str(&format!("{unit}^{d}")),
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// A rule `d_page(source) ≐ target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Axiom {
    pub page: usize,
    pub source: MonomialClass,
    pub target: MonomialClass,
}

/// A rectangular range of bidegrees: `0 ≤ s ≤ smax`, `stem_min ≤ t − s ≤ stem_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub smax: i64,
    pub stem_min: i64,
    pub stem_max: i64,
}

impl Window {
    pub const MAX_EXTENT: i64 = 100_000;

    pub fn new(smax: i64, stem_min: i64, stem_max: i64) -> Result<Self> {
        if smax < 0 || stem_min > stem_max {
            return invalid(format!("bad window s ≤ {smax}, stems {stem_min}..{stem_max}"));
        }
        if smax > Self::MAX_EXTENT || stem_max - stem_min > Self::MAX_EXTENT {
            return Err(Error::TooLarge(format!("window s ≤ {smax}, stems {stem_min}..{stem_max}")));
        }
        Ok(Window { smax, stem_min, stem_max })
    }
    /// Parses `S,TMIN,TMAX` (maximal filtration, stem range).
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return invalid(format!("window {s:?} is not S,TMIN,TMAX"));
        }
        let v: Vec<i64> = parts
            .iter()
            .map(|x| x.parse::<i64>().map_err(|e| Error::InvalidInput(format!("window {s:?}: {e}"))))
            .collect::<Result<_>>()?;
        Window::new(v[0], v[1], v[2])
    }
    pub fn contains(&self, s: i64, t: i64) -> bool {
        s >= 0 && s <= self.smax && (self.stem_min..=self.stem_max).contains(&(t - s))
    }
    pub fn expand(&self, ds: i64, dstem: i64) -> Window {
        Window { smax: self.smax + ds, stem_min: self.stem_min - dstem, stem_max: self.stem_max + dstem }
    }
    pub fn shift_stems(&self, k: i64) -> Window {
        Window { smax: self.smax, stem_min: self.stem_min + k, stem_max: self.stem_max + k }
    }
    pub fn covers(&self, o: &Window) -> bool {
        self.smax >= o.smax && self.stem_min <= o.stem_min && self.stem_max >= o.stem_max
    }
}

fn ceil_div(x: i64, y: i64) -> i64 {
    -((-x).div_euclid(y))
}

/// Grading data and differential axioms for one group at one prime.
#[derive(Clone, Debug)]
pub struct Setup {
    p: u32,
    n: u32,
    group: Group,
    field: ExtensionField,
}

impl Setup {
    pub fn new(p: u32, group: Group) -> Result<Self> {
        if p < 3 || !is_prime(p as u64) {
            return precondition(format!("p = {p} must be an odd prime"));
        }
        let n = p - 1;
        let field = match group {
            Group::Cp => ExtensionField::new(p, n)?,
            Group::Maximal => ExtensionField::new(p, 1)?,
        };
        let s = Setup { p, n, group, field };
        for ax in s.axioms() {
            let (s0, t0) = s.bidegree(&ax.source);
            let r = ax.page as i64;
            if s.bidegree(&ax.target) != (s0 + r, t0 + r - 1) {
                return Err(Error::Internal(format!(
                    "axiom d_{} on {} has inconsistent bidegree",
                    ax.page,
                    s.name(&ax.source)
                )));
            }
        }
        Ok(s)
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn group(&self) -> Group {
        self.group
    }
    /// Coefficient field of a cell.
    pub fn field(&self) -> &ExtensionField {
        &self.field
    }
    fn pi(&self) -> i64 {
        self.p as i64
    }
    fn ni(&self) -> i64 {
        self.n as i64
    }
    pub fn unit_symbol(&self) -> &'static str {
        match self.group {
            Group::Cp => "δ",
            Group::Maximal => "Δ",
        }
    }
    /// Internal degree of `u`.
    pub fn unit_t(&self) -> i64 {
        match self.group {
            Group::Cp => 2 * self.pi(),
            Group::Maximal => 2 * self.pi() * self.ni() * self.ni(),
        }
    }
    pub fn bidegree(&self, m: &MonomialClass) -> (i64, i64) {
        let (a, b) = (m.a as i64, m.b as i64);
        let (p, n) = (self.pi(), self.ni());
        (a + 2 * b, 2 * n * a + 2 * p * n * b + self.unit_t() * m.d)
    }
    pub fn monomial_at(&self, s: i64, t: i64) -> Option<MonomialClass> {
        if s < 0 {
            return None;
        }
        let a = (s % 2) as u8;
        let b = (s / 2) as u32;
        let (_, t0) = self.bidegree(&MonomialClass { a, b, d: 0 });
        let rem = t - t0;
        (rem % self.unit_t() == 0).then(|| MonomialClass { a, b, d: rem / self.unit_t() })
    }
    pub fn name(&self, m: &MonomialClass) -> String {
        m.name(self.unit_symbol())
    }
    /// Additive group of one cell.
    pub fn cell_type(&self) -> AbelianGroupType {
        AbelianGroupType::from_factors(std::iter::repeat(self.p as u64).take(self.field.n() as usize))
    }
    pub fn field_name(&self) -> String {
        if self.field.n() == 1 {
            format!("Z/{}", self.p)
        } else {
            format!("F_{}", self.field.order())
        }
    }
    pub fn integral_name(&self) -> String {
        format!("W(F_{})", self.field.order())
    }
    pub fn first_page(&self) -> usize {
        2 * self.p as usize - 1
    }
    pub fn second_page(&self) -> usize {
        2 * (self.n * self.n) as usize + 1
    }
    /// Pages carrying the generating differentials. On every other page the
    /// differentials Leibniz leaves undetermined are taken to vanish.
    pub fn is_axiom_page(&self, r: usize) -> bool {
        r == self.first_page() || r == self.second_page()
    }
    /// Generating differentials; `α`, `β` are permanent.
    pub fn axioms(&self) -> Vec<Axiom> {
        let (p, n) = (self.p, self.n as i64);
        match self.group {
            Group::Cp => vec![
                Axiom {
                    page: self.first_page(),
                    source: MonomialClass::unit_power(1),
                    target: MonomialClass::new(1, p - 1, 1 - n * n),
                },
                Axiom {
                    page: self.second_page(),
                    source: MonomialClass::new(1, 0, n * n * n),
                    target: MonomialClass::new(0, (n * n + 1) as u32, 0),
                },
            ],
            Group::Maximal => vec![
                Axiom {
                    page: self.first_page(),
                    source: MonomialClass::unit_power(1),
                    target: MonomialClass::new(1, p - 1, 0),
                },
                // restriction of the C_p rule along Δ = δ^{n²}
                Axiom {
                    page: self.second_page(),
                    source: MonomialClass::new(1, 0, n),
                    target: MonomialClass::new(0, (n * n + 1) as u32, 0),
                },
            ],
        }
    }
    /// Stem of the periodicity generator `u^p`.
    pub fn period(&self) -> i64 {
        self.pi() * self.unit_t()
    }
    pub fn default_window(&self) -> Window {
        let (p, n) = (self.pi(), self.ni());
        let width = match self.group {
            Group::Cp => 2 * p * p,
            Group::Maximal => 2 * p * p * n * n,
        };
        Window { smax: 2 * p * p + 2 * n * n, stem_min: -2, stem_max: width }
    }
    /// The zero-stem class `e_c` (Picard grading), if its `u`-exponent is integral.
    pub fn e_c(&self, c: u64) -> Option<MonomialClass> {
        if c == 0 {
            return None;
        }
        let (p, n, c) = (self.pi(), self.ni(), c as i64);
        let b = (p * c - 1) as u32;
        match self.group {
            Group::Cp => Some(MonomialClass::new(1, b, n - 1 - c * (p * n - 1))),
            Group::Maximal => {
                let num = c * (1 - p * n) + n - 1;
                (num % (n * n) == 0).then(|| MonomialClass::new(1, b, num / (n * n)))
            }
        }
    }
    /// Cross-check against the closed-form descriptions of the two nonzero
    /// pages. `None` when the formula says nothing about `(r, m)`.
    pub fn explicit_target(&self, r: usize, m: &MonomialClass) -> Option<Option<MonomialClass>> {
        let (p, n) = (self.pi(), self.ni());
        if r == self.first_page() && m.a == 0 {
            if m.d.rem_euclid(p) == 0 {
                return Some(None);
            }
            let d = match self.group {
                Group::Cp => m.d - n * n,
                Group::Maximal => m.d - 1,
            };
            return Some(Some(MonomialClass::new(1, m.b + self.p - 1, d)));
        }
        if r == self.second_page() && m.a == 1 && m.d.rem_euclid(p) == p - 1 {
            let d = match self.group {
                Group::Cp => m.d - n * n * n,
                Group::Maximal => m.d + 1 - p,
            };
            return Some(Some(MonomialClass::new(0, m.b + (n * n + 1) as u32, d)));
        }
        None
    }
}

fn monomials_in(setup: &Setup, w: &Window, out: &mut BTreeMap<(i64, i64), MonomialClass>) {
    let tu = setup.unit_t();
    for s in 0..=w.smax {
        let a = (s % 2) as u8;
        let b = (s / 2) as u32;
        let (_, t0) = setup.bidegree(&MonomialClass { a, b, d: 0 });
        let stem0 = t0 - s;
        let dlo = ceil_div(w.stem_min - stem0, tu);
        let dhi = (w.stem_max - stem0).div_euclid(tu);
        for d in dlo..=dhi {
            let m = MonomialClass { a, b, d };
            out.insert(setup.bidegree(&m), m);
        }
    }
}

fn shift(pos: (i64, i64), r: usize) -> (i64, i64) {
    (pos.0 + r as i64, pos.1 + r as i64 - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Derivation {
    Axiom,
    Leibniz,
}

/// A nonzero additive differential `d_r(source) = coefficient · target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditiveDifferential {
    pub r: usize,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub source: MonomialClass,
    pub target: MonomialClass,
    pub coefficient: u32,
    pub derivation: Derivation,
}

type Term = Option<(i64, MonomialClass)>;

fn add_terms(x: Term, y: Term) -> Result<Term> {
    match (x, y) {
        (None, t) | (t, None) => Ok(t),
        (Some((c1, m1)), Some((c2, m2))) => {
            if m1 != m2 {
                return Err(Error::Internal(format!("Leibniz terms land on different monomials {m1:?}, {m2:?}")));
            }
            Ok(Some((c1 + c2, m1)))
        }
    }
}

fn times(t: Term, m: &MonomialClass, sign: i64) -> Term {
    let (c, w) = t?;
    Some((sign * c, w.mul(m)?))
}

/// `d(x · u^j) = (−1)^{|x|} j x u^{j−1} d(u)` for a cycle `x`.
fn power_rule(x: &MonomialClass, j: i64, k: i64, du: Term) -> Term {
    if j == 0 {
        return None;
    }
    let (cu, w) = du?;
    let m = x.mul(&MonomialClass::unit_power(k * (j - 1)))?.mul(&w)?;
    Some((x.sign() * j * cu, m))
}

/// Same value as [`power_rule`] computed through `x u^j = (x u^{j₁}) · u^{j−j₁}`.
fn split_rule(x: &MonomialClass, j: i64, k: i64, du: Term) -> Result<Term> {
    let j1 = j / 2;
    let x1 = x.mul(&MonomialClass::unit_power(k * j1)).expect("unit powers are even");
    let left = times(power_rule(x, j1, k, du), &MonomialClass::unit_power(k * (j - j1)), 1);
    let right = times(power_rule(&MonomialClass::ONE, j - j1, k, du), &x1, x1.sign());
    add_terms(left, right)
}

/// `d(g · β^b u^j) = d(g) β^b u^j + (−1)^{|g|} g β^b d(u^j)`.
fn product_rule(g: &MonomialClass, dg: Term, b: u32, j: i64, k: i64, du: Term) -> Result<Term> {
    let rest = MonomialClass::new(0, b, k * j);
    let left = times(dg, &rest, 1);
    let gb = g.mul(&MonomialClass::new(0, b, 0)).expect("β is even");
    let right = times(power_rule(&MonomialClass::ONE, j, k, du), &gb, g.sign());
    add_terms(left, right)
}

struct PageData<'a> {
    r: usize,
    k: i64,
    du: Term,
    axioms: Vec<(MonomialClass, Term)>,
    alive: &'a BTreeMap<(i64, i64), MonomialClass>,
    /// Cells with `s + reach ≤ smax` have exact status on this page.
    reach: i64,
    smax: i64,
}

fn derive_cell(setup: &Setup, pd: &PageData, pos: (i64, i64), m: &MonomialClass) -> Result<Option<AdditiveDifferential>> {
    let p = setup.pi();
    let tpos = shift(pos, pd.r);
    let target_alive = tpos.0 + pd.reach <= pd.smax && pd.alive.contains_key(&setup.canonical(tpos).0);
    let mut values: Vec<Term> = Vec::new();
    let mut is_axiom = false;
    let cycle_part = MonomialClass::new(m.a, m.b, 0);
    if let Some((_, v)) = pd.axioms.iter().find(|(g, _)| setup.canonical_monomial(g) == *m) {
        values.push(*v);
        is_axiom = true;
    }
    if m.d % pd.k == 0 {
        let j = m.d / pd.k;
        values.push(power_rule(&cycle_part, j, pd.k, pd.du));
        values.push(split_rule(&cycle_part, j, pd.k, pd.du)?);
    }
    for (g, dg) in &pd.axioms {
        if g.a == m.a && m.b >= g.b && (m.d - g.d) % pd.k == 0 {
            values.push(product_rule(g, *dg, m.b - g.b, (m.d - g.d) / pd.k, pd.k, pd.du)?);
        }
    }
    let normalized: Vec<Option<(u32, MonomialClass)>> = values
        .into_iter()
        .map(|v| {
            let (c, y) = v?;
            let c = c.rem_euclid(p);
            let y = setup.canonical_monomial(&y);
            (c != 0 && pd.alive.get(&setup.bidegree(&y)) == Some(&y)).then_some((c as u32, y))
        })
        .collect();
    let Some(first) = normalized.first().copied() else {
        if target_alive && setup.is_axiom_page(pd.r) {
            return Err(Error::Undetermined(format!(
                "d_{} on {} at {:?}: no derivation and the target {:?} is present",
                pd.r,
                setup.name(m),
                pos,
                tpos
            )));
        }
        return Ok(None);
    };
    for v in &normalized[1..] {
        let agree = match (first, v) {
            (None, None) => true,
            (Some((_, y1)), Some((_, y2))) => y1 == *y2,
            _ => false,
        };
        if !agree {
            return Err(Error::Internal(format!(
                "Leibniz inconsistency for d_{} on {}: {:?} vs {:?}",
                pd.r,
                setup.name(m),
                first,
                v
            )));
        }
    }
    Ok(first.map(|(c, y)| AdditiveDifferential {
        r: pd.r,
        from: pos,
        to: setup.bidegree(&y),
        source: *m,
        target: y,
        coefficient: c,
        derivation: if is_axiom { Derivation::Axiom } else { Derivation::Leibniz },
    }))
}

/// The additive spectral sequence with all pages through `E_∞`.
///
/// Multiplication by the permanent unit `u^p` is an automorphism of every page,
/// so the computation runs on the cylinder `0 ≤ stem < period`; cells below
/// `smax` of the computed region are exact.
#[derive(Clone, Debug)]
pub struct AdditiveSS {
    setup: Setup,
    window: Window,
    smax: i64,
    reach: i64,
    cells: BTreeMap<(i64, i64), MonomialClass>,
    death: BTreeMap<(i64, i64), usize>,
    from: BTreeMap<(i64, i64), AdditiveDifferential>,
    to: BTreeMap<(i64, i64), (i64, i64)>,
    pages: Vec<usize>,
}

/// Builds the symbolic `E₂` page over `window`.
pub fn build_e2(p: u32, group: Group, window: Option<Window>) -> Result<BigradedPage> {
    let setup = Setup::new(p, group)?;
    let w = window.unwrap_or_else(|| setup.default_window());
    let mut cells = BTreeMap::new();
    monomials_in(&setup, &w, &mut cells);
    let cells = cells.iter().map(|(&(s, t), m)| additive_cell(&setup, s, t, m, false)).collect();
    Ok(BigradedPage { page: "2".into(), cells, differentials: Vec::new() })
}

fn additive_cell(setup: &Setup, s: i64, t: i64, m: &MonomialClass, integral: bool) -> PageCell {
    let (kind, group_name) = if integral {
        (CellKind::Integral, setup.integral_name())
    } else {
        (CellKind::FieldLine, setup.field_name())
    };
    PageCell { s, t, group: setup.cell_type(), group_name, kind, label: setup.name(m), transfer: s == 0 }
}

impl Setup {
    /// Number of periods between `pos` and its representative with `0 ≤ stem < period`.
    fn period_offset(&self, pos: (i64, i64)) -> i64 {
        (pos.1 - pos.0).div_euclid(self.period())
    }
    fn canonical(&self, pos: (i64, i64)) -> ((i64, i64), i64) {
        let k = self.period_offset(pos);
        ((pos.0, pos.1 - k * self.period()), k)
    }
    fn canonical_monomial(&self, m: &MonomialClass) -> MonomialClass {
        let (s, t) = self.bidegree(m);
        let k = self.period_offset((s, t));
        MonomialClass { d: m.d - k * self.pi(), ..*m }
    }
}

/// `d` moved so that its source sits at `pos`; stored ends are canonical independently.
fn place(setup: &Setup, d: &AdditiveDifferential, pos: (i64, i64)) -> AdditiveDifferential {
    let to = shift(pos, d.r);
    let ks = setup.period_offset(pos) - setup.period_offset(d.from);
    let kt = setup.period_offset(to) - setup.period_offset(d.to);
    AdditiveDifferential {
        from: pos,
        to,
        source: MonomialClass { d: d.source.d + ks * setup.pi(), ..d.source },
        target: MonomialClass { d: d.target.d + kt * setup.pi(), ..d.target },
        ..d.clone()
    }
}

/// Runs the additive spectral sequence from the axioms by Leibniz propagation.
pub fn run_additive(setup: &Setup, window: Window) -> Result<AdditiveSS> {
    let rmax = setup.second_page() as i64;
    let mut top = window.smax;
    for ax in setup.axioms() {
        top = top.max(setup.bidegree(&ax.target).0);
    }
    let smax = top + 2 * (rmax + 1);
    let mut cells = BTreeMap::new();
    monomials_in(setup, &Window { smax, stem_min: 0, stem_max: setup.period() - 1 }, &mut cells);
    let mut alive = cells.clone();
    let mut ss = AdditiveSS {
        setup: setup.clone(),
        window,
        smax,
        reach: 0,
        cells,
        death: BTreeMap::new(),
        from: BTreeMap::new(),
        to: BTreeMap::new(),
        pages: Vec::new(),
    };
    let p = setup.pi();
    let tu = setup.unit_t();
    let mut reach = 0;
    for r in 2..=setup.second_page() {
        let k = (1..=p)
            .find(|k| alive.contains_key(&setup.canonical((0, k * tu)).0))
            .ok_or_else(|| Error::Internal(format!("no power of {} survives to E_{r}", setup.unit_symbol())))?;
        let u = MonomialClass::unit_power(k);
        let mut axioms = Vec::new();
        for ax in setup.axioms().into_iter().filter(|a| a.page == r) {
            for m in [ax.source, ax.target] {
                let c = setup.canonical_monomial(&m);
                if alive.get(&setup.bidegree(&c)) != Some(&c) {
                    return Err(Error::Internal(format!("axiom class {} is not on E_{r}", setup.name(&m))));
                }
            }
            axioms.push((ax.source, Some((1i64, ax.target))));
        }
        let du = match axioms.iter().find(|(g, _)| *g == u) {
            Some((_, v)) => *v,
            None if alive.contains_key(&setup.canonical(shift((0, k * tu), r)).0) => {
                return Err(Error::Undetermined(format!("d_{r} on {}", setup.name(&u))));
            }
            None => None,
        };
        let pd = PageData { r, k, du, axioms, alive: &alive, reach, smax };
        let entries: Vec<((i64, i64), MonomialClass)> = alive.iter().map(|(&k, &v)| (k, v)).collect();
        let results = par::map(&entries, |(pos, m)| -> Result<Option<AdditiveDifferential>> {
            let d = derive_cell(setup, &pd, *pos, m)?;
            if let Some(expected) = setup.explicit_target(r, m) {
                let ok = match (&expected, &d) {
                    (Some(y), Some(d)) => d.target == setup.canonical_monomial(y),
                    (Some(y), None) => {
                        let c = setup.canonical_monomial(y);
                        setup.bidegree(&c).0 > smax || alive.get(&setup.bidegree(&c)) != Some(&c)
                    }
                    (None, Some(_)) => false,
                    (None, None) => true,
                };
                if !ok {
                    return Err(Error::Internal(format!(
                        "d_{r} on {} disagrees with the closed form: derived {:?}, expected {:?}",
                        setup.name(m),
                        d.map(|d| setup.name(&d.target)),
                        expected.map(|y| setup.name(&y))
                    )));
                }
            }
            Ok(d)
        });
        let diffs: Vec<AdditiveDifferential> =
            results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
        if diffs.is_empty() {
            continue;
        }
        let sources: BTreeSet<_> = diffs.iter().map(|d| d.from).collect();
        let mut targets = BTreeSet::new();
        for d in &diffs {
            if sources.contains(&d.to) {
                return Err(Error::Internal(format!("d_{r} ∘ d_{r} ≠ 0 through {:?}", d.to)));
            }
            if !targets.insert(d.to) {
                return Err(Error::Internal(format!("two sources hit {:?} on E_{r}", d.to)));
            }
        }
        for d in diffs {
            alive.remove(&d.from);
            alive.remove(&d.to);
            ss.death.insert(d.from, r);
            ss.death.insert(d.to, r);
            ss.to.insert(d.to, d.from);
            ss.from.insert(d.from, d);
        }
        ss.pages.push(r);
        reach += r as i64;
    }
    if top + reach > smax {
        return Err(Error::Internal(format!("margin {} is below the page reach {reach}", smax - top)));
    }
    // horizontal vanishing line: later differentials leave the nonzero region
    let line = setup.second_page() as i64;
    if let Some((pos, m)) = alive.iter().find(|((s, _), _)| *s > line && *s + reach <= smax) {
        return Err(Error::Verification(format!(
            "{} at {pos:?} survives past E_{} above the line s = {line}",
            setup.name(m),
            line
        )));
    }
    ss.reach = reach;
    Ok(ss)
}

impl AdditiveSS {
    pub fn setup(&self) -> &Setup {
        &self.setup
    }
    pub fn window(&self) -> &Window {
        &self.window
    }
    /// Largest filtration with exact `E_∞` status.
    pub fn smax(&self) -> i64 {
        self.smax - self.reach
    }
    pub fn cell(&self, pos: (i64, i64)) -> Option<MonomialClass> {
        let (c, k) = self.setup.canonical(pos);
        self.cells.get(&c).map(|m| MonomialClass { d: m.d + k * self.setup.pi(), ..*m })
    }
    /// Whether the cell at `pos` is nonzero on `E_r`.
    pub fn alive_at(&self, pos: (i64, i64), r: usize) -> bool {
        let (c, _) = self.setup.canonical(pos);
        self.cells.contains_key(&c) && self.death.get(&c).map_or(true, |&d| d >= r)
    }
    pub fn is_permanent(&self, pos: (i64, i64)) -> bool {
        let (c, _) = self.setup.canonical(pos);
        self.cells.contains_key(&c) && !self.death.contains_key(&c)
    }
    pub fn differential_from(&self, pos: (i64, i64)) -> Option<AdditiveDifferential> {
        let (c, _) = self.setup.canonical(pos);
        self.from.get(&c).map(|d| place(&self.setup, d, pos))
    }
    pub fn differential_to(&self, pos: (i64, i64)) -> Option<AdditiveDifferential> {
        let (c, _) = self.setup.canonical(pos);
        let d = self.from.get(self.to.get(&c)?)?;
        let r = d.r as i64;
        Some(place(&self.setup, d, (pos.0 - r, pos.1 - r + 1)))
    }
    /// Pages carrying a nonzero differential anywhere.
    pub fn nontrivial_pages(&self) -> &[usize] {
        &self.pages
    }
    pub fn cells_in_window(&self) -> Vec<((i64, i64), MonomialClass)> {
        let mut out = BTreeMap::new();
        monomials_in(&self.setup, &self.window, &mut out);
        out.into_iter().collect()
    }
    /// Nonzero differentials with both ends in the window, ordered by page then source.
    pub fn differentials(&self) -> Vec<AdditiveDifferential> {
        let mut v: Vec<_> = self
            .cells_in_window()
            .into_iter()
            .filter_map(|(pos, _)| self.differential_from(pos))
            .filter(|d| self.window.contains(d.to.0, d.to.1))
            .collect();
        v.sort_by_key(|d| (d.r, d.from));
        v
    }
    fn arrow(&self, d: &AdditiveDifferential) -> PageArrow {
        PageArrow {
            r: d.r,
            from: d.from,
            to: d.to,
            rule: match d.derivation {
                Derivation::Axiom => Rule::Axiom,
                Derivation::Leibniz => Rule::Leibniz,
            },
            matrix: vec![vec![d.coefficient as u64]],
            kernel: None,
            note: format!("{} -> {}", self.setup.name(&d.source), self.setup.name(&d.target)),
        }
    }
    /// `E_r` restricted to the window, with the `d_r` differentials.
    pub fn page(&self, r: usize) -> BigradedPage {
        let cells = self
            .cells_in_window()
            .iter()
            .filter(|(pos, _)| self.alive_at(*pos, r))
            .map(|((s, t), m)| additive_cell(&self.setup, *s, *t, m, false))
            .collect();
        let differentials = self.differentials().iter().filter(|d| d.r == r).map(|d| self.arrow(d)).collect();
        BigradedPage { page: r.to_string(), cells, differentials }
    }
    pub fn e2_page(&self) -> BigradedPage {
        self.page(2)
    }
    /// `E₂` cells with every differential of the spectral sequence.
    pub fn chart_page(&self) -> BigradedPage {
        let mut page = self.page(2);
        page.page = "all".into();
        page.differentials = self.differentials().iter().map(|d| self.arrow(d)).collect();
        page
    }
    pub fn infinity_page(&self) -> BigradedPage {
        let cells = self
            .cells_in_window()
            .iter()
            .filter(|(pos, _)| self.is_permanent(*pos))
            .map(|((s, t), m)| additive_cell(&self.setup, *s, *t, m, *s == 0))
            .collect();
        BigradedPage { page: "inf".into(), cells, differentials: Vec::new() }
    }
    /// `E₂`, each page with a nonzero differential in the window, and `E_∞`.
    pub fn pages(&self) -> Vec<BigradedPage> {
        let mut out = vec![self.e2_page()];
        let mut rs: Vec<usize> = self.differentials().iter().map(|d| d.r).collect();
        rs.sort_unstable();
        rs.dedup();
        for r in rs {
            if r != 2 {
                out.push(self.page(r));
            }
        }
        out.push(self.infinity_page());
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    /// A line over the coefficient field.
    FieldLine,
    /// A permanent `s = 0` class lifting to the Witt vectors.
    Integral,
    /// Any other finite abelian group.
    Group,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageCell {
    pub s: i64,
    pub t: i64,
    pub group: AbelianGroupType,
    pub group_name: String,
    pub kind: CellKind,
    pub label: String,
    /// An inert transfer summand is attached (only at `s = 0`).
    pub transfer: bool,
}

impl PageCell {
    pub fn stem(&self) -> i64 {
        self.t - self.s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Axiom,
    Leibniz,
    /// Equal to the additive differential for `r ≤ t − 1`.
    ImportGeneral,
    /// Equal to the additive differential for `r ≤ (p − 1)(t − 1)` on `s = t`.
    ImportDiagonal,
    /// Additive differential plus a Frobenius-semilinear term at `r = (p − 1)(t − 1) + 1`.
    FirstUnstable,
    /// Determined by the two generating differentials of the algebraic spectral sequence.
    Algebraic,
    Unknown,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::Leibniz => "Leibniz propagation",
            Rule::ImportGeneral => "imported: 2 <= r <= t-1",
            Rule::ImportDiagonal => "imported on the t = s column: r <= (p-1)(t-1)",
            Rule::FirstUnstable => "first unstable: additive + zeta * semilinear term",
            Rule::Algebraic => "algebraic axiom with Leibniz propagation",
            Rule::Unknown => "outside all import ranges",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageArrow {
    pub r: usize,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub rule: Rule,
    /// `[[c]]` for an `F`-linear map `c·(target)`; the `F_p`-matrix otherwise.
    pub matrix: Vec<Vec<u64>>,
    /// Surviving subgroup of the source when the map is not injective.
    pub kernel: Option<AbelianGroupType>,
    pub note: String,
}

/// One page of a spectral sequence: cells keyed by `(s, t)` and its differentials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedPage {
    pub page: String,
    pub cells: Vec<PageCell>,
    pub differentials: Vec<PageArrow>,
}

impl BigradedPage {
    pub fn cell(&self, s: i64, t: i64) -> Option<&PageCell> {
        self.cells.iter().find(|c| c.s == s && c.t == t)
    }
    /// The shared page JSON schema.
    pub fn summary(&self) -> PageSummary {
        PageSummary {
            page: self.page.clone(),
            entries: self
                .cells
                .iter()
                .map(|c| EntrySummary {
                    i: c.s as usize,
                    j: c.t,
                    ty: c.group.factors().to_vec(),
                    gens: vec![c.label.clone()],
                })
                .collect(),
            differentials: self
                .differentials
                .iter()
                .map(|d| DiffSummary { from: (d.from.0 as usize, d.from.1), to: (d.to.0 as usize, d.to.1), matrix: d.matrix.clone() })
                .collect(),
        }
    }
}

/// `{a ∈ F : aξ + a^p η = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemilinearKernel {
    pub elements: Vec<Fe>,
    pub order: u64,
    pub group: AbelianGroupType,
    /// `F_p`-matrix of `a ↦ aξ + a^p η` in the power basis, row-major.
    pub matrix: Vec<Vec<u64>>,
}

pub fn semilinear_kernel(field: &ExtensionField, xi: Fe, eta: Fe) -> Result<SemilinearKernel> {
    if xi == 0 {
        return precondition("ξ must be nonzero");
    }
    if xi >= field.order() || eta >= field.order() {
        return invalid("scalar outside the field");
    }
    let map = |a: Fe| field.add(field.mul(a, xi), field.mul(field.frobenius(a), eta));
    let elements: Vec<Fe> = field.elements().filter(|&a| map(a) == 0).collect();
    let order = elements.len() as u64;
    let p = field.p() as u64;
    let mut e = 0;
    while p.pow(e) < order {
        e += 1;
    }
    if p.pow(e) != order {
        return Err(Error::Internal(format!("kernel of order {order} is not a p-group")));
    }
    let n = field.n() as usize;
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            field.coeffs(map(field.from_coeffs(&c)))
        })
        .collect();
    let matrix = (0..n).map(|i| (0..n).map(|j| cols[j][i] as u64).collect()).collect();
    Ok(SemilinearKernel { elements, order, group: AbelianGroupType::from_exponents(p, std::iter::repeat(1).take(e as usize)), matrix })
}

/// Exhaustive sweep of kernel orders over `ξ ∈ F^×`, `η ∈ F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelSweep {
    pub field: String,
    pub cases: usize,
    pub max_order: u64,
    pub orders: BTreeMap<u64, usize>,
}

pub fn kernel_sweep(field: &ExtensionField) -> Result<KernelSweep> {
    let units: Vec<Fe> = field.units().collect();
    let per_xi = par::map(&units, |&xi| -> Result<BTreeMap<u64, usize>> {
        let mut m = BTreeMap::new();
        for eta in field.elements() {
            *m.entry(semilinear_kernel(field, xi, eta)?.order).or_insert(0) += 1;
        }
        Ok(m)
    });
    let mut orders = BTreeMap::new();
    for m in per_xi {
        for (o, c) in m? {
            *orders.entry(o).or_insert(0) += c;
        }
    }
    Ok(KernelSweep {
        field: format!("F_{}", field.order()),
        cases: orders.values().sum(),
        max_order: orders.keys().copied().max().unwrap_or(0),
        orders,
    })
}

/// Unknown scalars of the Picard spectral sequence: `d(e₁) = ξ f`,
/// the semilinear operation sends `e₁` to `ξ′ f`, and `ζ` weights it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PicardParams {
    pub xi: Fe,
    pub xi_prime: Fe,
    pub zeta: u32,
}

impl PicardParams {
    /// `ξ = 1`, `ξ′ = −1`, `ζ = 1`, for which the kernel is the prime field.
    pub fn default_for(setup: &Setup) -> Self {
        PicardParams { xi: 1, xi_prime: setup.field().from_int(-1), zeta: 1 }
    }
    pub fn validate(&self, setup: &Setup) -> Result<()> {
        let q = setup.field().order();
        if self.xi == 0 || self.xi >= q {
            return invalid(format!("ξ = {:#x} must be a unit of F_{q}", self.xi));
        }
        if self.xi_prime >= q {
            return invalid(format!("ξ′ = {:#x} is not in F_{q}", self.xi_prime));
        }
        if self.zeta == 0 || self.zeta >= setup.p() {
            return invalid(format!("ζ = {} must be a unit of F_{}", self.zeta, setup.p()));
        }
        Ok(())
    }
    /// `η = ζ ξ′`.
    pub fn eta(&self, setup: &Setup) -> Fe {
        setup.field().mul(self.zeta, self.xi_prime)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnknownDifferential {
    pub r: usize,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardDifferential {
    pub r: usize,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub rule: Rule,
    pub coefficient: Option<u32>,
    pub source_after: AbelianGroupType,
    pub target_after: AbelianGroupType,
    pub matrix: Vec<Vec<u64>>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Origin {
    Additive,
    Pi0Units,
    AlgebraicH1,
}

#[derive(Clone, Debug)]
struct PicState {
    group: AbelianGroupType,
    full: bool,
    origin: Origin,
    label: String,
}

/// Picard spectral sequence derived from an additive one.
#[derive(Clone, Debug)]
pub struct PicardSS {
    setup: Setup,
    params: PicardParams,
    window: Window,
    h1: AbelianGroupType,
    h1_basis: String,
    e2: BTreeMap<(i64, i64), PicState>,
    fin: BTreeMap<(i64, i64), PicState>,
    differentials: Vec<PicardDifferential>,
    unknowns: Vec<UnknownDifferential>,
    kernel: Option<SemilinearKernel>,
    unstable_cells: BTreeSet<(i64, i64)>,
    unknown_cells: BTreeSet<(i64, i64)>,
}

enum Action {
    Kill { x: (i64, i64), y: (i64, i64), r: usize, rule: Rule, coefficient: u32 },
    Semilinear { x: (i64, i64), y: (i64, i64), r: usize },
    Unknown(UnknownDifferential),
}

/// Additive window needed to run the Picard spectral sequence on `window`.
pub fn additive_window_for(setup: &Setup, window: &Window) -> Window {
    picard_region(setup, window).shift_stems(-1)
}

/// Picard cells tracked for `window`: its targets and sources lie inside.
fn picard_region(setup: &Setup, window: &Window) -> Window {
    window.expand(2 * (setup.second_page() as i64 + 1), 1)
}

/// Transports the additive pages to Picard grading, importing differentials
/// where a comparison rule applies and recording every other possibility.
pub fn picardify(
    additive: &AdditiveSS,
    params: PicardParams,
    h1: AbelianGroupType,
    h1_basis: &str,
    window: Window,
) -> Result<PicardSS> {
    let setup = additive.setup().clone();
    params.validate(&setup)?;
    if additive.smax() < additive_window_for(&setup, &window).smax {
        return precondition("additive region does not cover the Picard window with margins");
    }
    let p = setup.pi();
    let mut state: BTreeMap<(i64, i64), PicState> = BTreeMap::new();
    let mut monomials = BTreeMap::new();
    let region = picard_region(&setup, &window);
    monomials_in(&setup, &region.shift_stems(-1), &mut monomials);
    for (&(s, t), m) in monomials.iter() {
        if t >= 1 && region.contains(s, t + 1) {
            state.insert(
                (s, t + 1),
                PicState { group: setup.cell_type(), full: true, origin: Origin::Additive, label: setup.name(m) },
            );
        }
    }
    state.insert((0, 0), PicState { group: AbelianGroupType::cyclic(2), full: false, origin: Origin::Pi0Units, label: "±1".into() });
    state.insert((1, 1), PicState { group: h1.clone(), full: false, origin: Origin::AlgebraicH1, label: "H1(E0^x)".into() });
    let e2 = state.clone();
    let rmax = state.keys().map(|k| k.0).max().unwrap_or(0) as usize + 1;
    let mut out = PicardSS {
        setup: setup.clone(),
        params,
        window,
        h1,
        h1_basis: h1_basis.to_string(),
        e2,
        fin: BTreeMap::new(),
        differentials: Vec::new(),
        unknowns: Vec::new(),
        kernel: None,
        unstable_cells: BTreeSet::new(),
        unknown_cells: BTreeSet::new(),
    };
    for r in 2..=rmax {
        let mut actions = Vec::new();
        for (&x, xs) in state.iter() {
            if xs.group.is_trivial() {
                continue;
            }
            let y = shift(x, r);
            let Some(ys) = state.get(&y).filter(|c| !c.group.is_trivial()) else { continue };
            let unknown = |reason: &str| Action::Unknown(UnknownDifferential { r, from: x, to: y, reason: reason.into() });
            if xs.origin != Origin::Additive {
                actions.push(unknown("no additive counterpart for t <= 1"));
                continue;
            }
            if !xs.full || !ys.full {
                actions.push(unknown("cell already reduced by a non-linear differential"));
                continue;
            }
            let (xa, ya) = ((x.0, x.1 - 1), (y.0, y.1 - 1));
            if !additive.alive_at(xa, r) || !additive.alive_at(ya, r) {
                actions.push(unknown("additive page differs at an end"));
                continue;
            }
            let dadd = additive.differential_from(xa).filter(|d| d.r == r);
            let t = x.1;
            let diag = x.0 == x.1;
            let r64 = r as i64;
            let rule = if r64 <= t - 1 {
                Rule::ImportGeneral
            } else if diag && r64 <= (p - 1) * (t - 1) {
                Rule::ImportDiagonal
            } else if diag && r64 == (p - 1) * (t - 1) + 1 && setup.group() == Group::Cp {
                Rule::FirstUnstable
            } else {
                Rule::Unknown
            };
            match (rule, dadd) {
                (Rule::ImportGeneral | Rule::ImportDiagonal, Some(d)) => {
                    actions.push(Action::Kill { x, y, r, rule, coefficient: d.coefficient })
                }
                (Rule::ImportGeneral | Rule::ImportDiagonal, None) => {}
                (Rule::FirstUnstable, Some(_)) => actions.push(Action::Semilinear { x, y, r }),
                (Rule::FirstUnstable, None) => actions.push(unknown("additive term vanishes, semilinear term undetermined")),
                _ => actions.push(unknown("outside all import ranges")),
            }
        }
        let mut touched: BTreeSet<(i64, i64)> = BTreeSet::new();
        for a in &actions {
            if let Action::Kill { x, y, .. } | Action::Semilinear { x, y, .. } = a {
                if !touched.insert(*x) || !touched.insert(*y) {
                    return Err(Error::Internal(format!("two Picard differentials on E_{r} share a cell at {x:?}/{y:?}")));
                }
            }
        }
        for a in actions {
            match a {
                Action::Kill { x, y, r, rule, coefficient } => {
                    for c in [x, y] {
                        state.get_mut(&c).expect("cell").group = AbelianGroupType::trivial();
                    }
                    out.differentials.push(PicardDifferential {
                        r,
                        from: x,
                        to: y,
                        rule,
                        coefficient: Some(coefficient),
                        source_after: AbelianGroupType::trivial(),
                        target_after: AbelianGroupType::trivial(),
                        matrix: vec![vec![coefficient as u64]],
                        note: format!("{} -> {}", state[&x].label, state[&y].label),
                    });
                }
                Action::Semilinear { x, y, r } => {
                    let k = semilinear_kernel(setup.field(), params.xi, params.eta(&setup))?;
                    for c in [x, y] {
                        let st = state.get_mut(&c).expect("cell");
                        st.group = k.group.clone();
                        st.full = false;
                        out.unstable_cells.insert(c);
                    }
                    out.differentials.push(PicardDifferential {
                        r,
                        from: x,
                        to: y,
                        rule: Rule::FirstUnstable,
                        coefficient: None,
                        source_after: k.group.clone(),
                        target_after: k.group.clone(),
                        matrix: k.matrix.clone(),
                        note: format!("{} -> {}, kernel {}", state[&x].label, state[&y].label, k.group),
                    });
                    out.kernel = Some(k);
                }
                Action::Unknown(u) => {
                    out.unknown_cells.insert(u.from);
                    out.unknown_cells.insert(u.to);
                    out.unknowns.push(u);
                }
            }
        }
    }
    out.fin = state;
    Ok(out)
}

/// One row of the zero-stem ledger: an upper bound for one `E_∞` cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub s: i64,
    pub t: i64,
    pub label: String,
    pub e_infinity: String,
    pub bound: u64,
    pub basis: String,
}

impl PicardSS {
    pub fn setup(&self) -> &Setup {
        &self.setup
    }
    pub fn params(&self) -> &PicardParams {
        &self.params
    }
    pub fn window(&self) -> &Window {
        &self.window
    }
    pub fn kernel(&self) -> Option<&SemilinearKernel> {
        self.kernel.as_ref()
    }
    fn in_window(&self, c: (i64, i64)) -> bool {
        self.window.contains(c.0, c.1)
    }
    pub fn differentials(&self) -> Vec<&PicardDifferential> {
        self.differentials.iter().filter(|d| self.in_window(d.from) && self.in_window(d.to)).collect()
    }
    /// Undetermined differentials with an end in the window.
    pub fn unknowns(&self) -> Vec<&UnknownDifferential> {
        self.unknowns.iter().filter(|u| self.in_window(u.from) || self.in_window(u.to)).collect()
    }
    /// Order of the `E_∞` cell at `(s, t)`, treating unknown differentials as zero.
    pub fn e_infinity_at(&self, s: i64, t: i64) -> Option<&AbelianGroupType> {
        self.fin.get(&(s, t)).map(|c| &c.group)
    }
    pub fn touched_by_unknown(&self, c: (i64, i64)) -> bool {
        self.unknown_cells.contains(&c)
    }
    pub fn touched_by_first_unstable(&self, c: (i64, i64)) -> bool {
        self.unstable_cells.contains(&c)
    }
    fn cell(&self, pos: (i64, i64), st: &PicState, infinity: bool) -> PageCell {
        let (kind, group_name) = match st.origin {
            Origin::Additive if st.full && infinity && pos.0 == 0 => (CellKind::Integral, self.setup.integral_name()),
            Origin::Additive if st.full => (CellKind::FieldLine, self.setup.field_name()),
            _ => (CellKind::Group, st.group.to_string()),
        };
        PageCell { s: pos.0, t: pos.1, group: st.group.clone(), group_name, kind, label: st.label.clone(), transfer: pos.0 == 0 && st.origin == Origin::Additive }
    }
    fn arrows(&self) -> Vec<PageArrow> {
        self.differentials()
            .into_iter()
            .map(|d| PageArrow {
                r: d.r,
                from: d.from,
                to: d.to,
                rule: d.rule,
                matrix: d.matrix.clone(),
                kernel: (d.rule == Rule::FirstUnstable).then(|| d.source_after.clone()),
                note: d.note.clone(),
            })
            .collect()
    }
    pub fn e2_page(&self) -> BigradedPage {
        let cells = self.e2.iter().filter(|(&c, _)| self.in_window(c)).map(|(&c, st)| self.cell(c, st, false)).collect();
        BigradedPage { page: "2".into(), cells, differentials: Vec::new() }
    }
    /// `E₂` cells with every determined differential.
    pub fn chart_page(&self) -> BigradedPage {
        let mut page = self.e2_page();
        page.page = "all".into();
        page.differentials = self.arrows();
        page
    }
    pub fn infinity_page(&self) -> BigradedPage {
        let cells = self
            .fin
            .iter()
            .filter(|(&c, st)| self.in_window(c) && !st.group.is_trivial())
            .map(|(&c, st)| self.cell(c, st, true))
            .collect();
        BigradedPage { page: "inf".into(), cells, differentials: Vec::new() }
    }
    pub fn pages(&self) -> Vec<BigradedPage> {
        let mut e2 = self.e2_page();
        e2.differentials = self.arrows();
        vec![e2, self.infinity_page()]
    }
    /// Upper bounds for every nonzero zero-stem `E_∞` cell in the window.
    pub fn zero_stem_ledger(&self) -> Result<Vec<LedgerEntry>> {
        let p = self.setup.p() as u64;
        let mut out = Vec::new();
        for (&c, st) in self.fin.iter() {
            if c.0 != c.1 || !self.in_window(c) || (st.group.is_trivial() && !self.touched_by_first_unstable(c)) {
                continue;
            }
            let (bound, basis) = match st.origin {
                Origin::Pi0Units => (2, "H^0(G; Z/2)".to_string()),
                Origin::AlgebraicH1 => (self.h1.order(), self.h1_basis.clone()),
                Origin::Additive if self.touched_by_first_unstable(c) => {
                    let k = self.kernel.as_ref().ok_or_else(|| Error::Internal("missing kernel".into()))?;
                    if k.order > p {
                        return Err(Error::Verification(format!("semilinear kernel of order {} exceeds p", k.order)));
                    }
                    (p, format!("semilinear kernel bound (kernel here {})", k.group))
                }
                Origin::Additive if self.touched_by_unknown(c) => {
                    (st.group.order(), "cell order; a differential here is undetermined".to_string())
                }
                Origin::Additive => (st.group.order(), "E_inf".to_string()),
            };
            out.push(LedgerEntry { s: c.0, t: c.1, label: st.label.clone(), e_infinity: st.group.to_string(), bound, basis });
        }
        Ok(out)
    }
}

/// Permanence of the periodicity generator and the minimal period of `E_∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityReport {
    pub group: Group,
    pub generator: String,
    pub generator_stem: i64,
    pub generator_permanent: bool,
    /// `(k, permanent)` for `u^k`, `0 < k < p`.
    pub lower_powers: Vec<(i64, bool)>,
    pub invariant_under_generator: bool,
    /// Least `P > 0` with the stemwise `E_∞` invariants `P`-periodic on the window.
    pub minimal_period: i64,
    pub ok: bool,
}

/// Runs the additive spectral sequence over two periods and checks periodicity.
pub fn periodicity_check(setup: &Setup) -> Result<PeriodicityReport> {
    let n = setup.ni();
    let window = Window::new(2 * n * n + 4, 0, 2 * setup.period())?;
    periodicity_check_ss(&run_additive(setup, window)?)
}

pub fn periodicity_check_ss(ss: &AdditiveSS) -> Result<PeriodicityReport> {
    let setup = ss.setup();
    let period = setup.period();
    let tu = setup.unit_t();
    let w = ss.window();
    if w.stem_min > 0 || w.stem_max < 2 * period {
        return precondition("periodicity check needs stems 0..2·period");
    }
    let gen = (0, period);
    let generator_permanent = ss.is_permanent(gen);
    let lower_powers: Vec<(i64, bool)> = (1..setup.pi()).map(|k| (k, ss.is_permanent((0, k * tu)))).collect();
    let inf = ss.infinity_page();
    let alive: BTreeSet<(i64, i64)> = inf.cells.iter().map(|c| (c.s, c.t)).collect();
    let mut invariant = true;
    for &(s, t) in &alive {
        if t - s < period && !alive.contains(&(s, t + period)) {
            invariant = false;
        }
    }
    for &(s, t) in &alive {
        if t - s >= period && t - s <= 2 * period && !alive.contains(&(s, t - period)) {
            invariant = false;
        }
    }
    // stemwise invariant: (rank of the s = 0 part, log_p of the finite part)
    let mut sig: BTreeMap<i64, (u32, u32)> = BTreeMap::new();
    for c in &inf.cells {
        let e = sig.entry(c.stem()).or_default();
        if c.s == 0 {
            e.0 += 1;
        } else {
            e.1 += setup.field().n();
        }
    }
    let sig_at = |m: i64| sig.get(&m).copied().unwrap_or_default();
    let minimal_period = (1..=period)
        .find(|&q| (0..period).all(|m| sig_at(m) == sig_at(m + q)))
        .ok_or_else(|| Error::Verification("E_inf invariants are not periodic in the window".into()))?;
    let ok = generator_permanent && lower_powers.iter().all(|&(_, perm)| !perm) && invariant && minimal_period == period;
    Ok(PeriodicityReport {
        group: setup.group(),
        generator: setup.name(&MonomialClass::unit_power(setup.pi())),
        generator_stem: period,
        generator_permanent,
        lower_powers,
        invariant_under_generator: invariant,
        minimal_period,
        ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EcFate {
    KilledAsTarget,
    SupportsDifferential,
    BoundedByKernel,
    BoundedByCellOrder,
    Survives,
    Absent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ECClass {
    pub c: u64,
    pub monomial: Option<String>,
    pub s: i64,
    pub t_add: i64,
    pub fate: EcFate,
    pub page: Option<usize>,
    pub partner: Option<String>,
    pub rule: Option<Rule>,
    pub citation: String,
    pub bound: Option<u64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EcAnalysis {
    pub p: u32,
    pub group: Group,
    pub cmax: u64,
    pub classes: Vec<ECClass>,
    pub kernel_sweep: Option<KernelSweep>,
    pub ok: bool,
}

/// Fates of `e_c`, `1 ≤ c ≤ cmax`, for `C_p`.
pub fn ec_analysis(p: u32, cmax: u64) -> Result<EcAnalysis> {
    ec_analysis_for(p, Group::Cp, cmax)
}

pub fn ec_analysis_for(p: u32, group: Group, cmax: u64) -> Result<EcAnalysis> {
    if cmax < 2 {
        return precondition("cmax must be at least 2");
    }
    let setup = Setup::new(p, group)?;
    let window = Window::new(2 * setup.pi() * cmax as i64, -1, 1)?;
    let additive = run_additive(&setup, additive_window_for(&setup, &window))?;
    let params = PicardParams::default_for(&setup);
    let pic = picardify(&additive, params, AbelianGroupType::trivial(), "not used", window)?;
    let sweep = match group {
        Group::Cp => Some(kernel_sweep(setup.field())?),
        Group::Maximal => None,
    };
    let pp = p as u64;
    let mut classes = Vec::new();
    for c in 1..=cmax {
        let Some(m) = setup.e_c(c) else {
            classes.push(ECClass {
                c,
                monomial: None,
                s: 2 * setup.pi() * c as i64 - 1,
                t_add: 2 * setup.pi() * c as i64 - 2,
                fate: EcFate::Absent,
                page: None,
                partner: None,
                rule: None,
                citation: "exponent of the unit is not integral".into(),
                bound: None,
                ok: true,
            });
            continue;
        };
        let (s, t_add) = setup.bidegree(&m);
        if (s, t_add) != (2 * setup.pi() * c as i64 - 1, 2 * setup.pi() * c as i64 - 2) {
            return Err(Error::Internal(format!("e_{c} has bidegree ({s}, {t_add})")));
        }
        let pos = (s, t_add + 1);
        let incoming = pic.differentials.iter().find(|d| d.to == pos);
        let outgoing = pic.differentials.iter().find(|d| d.from == pos);
        let (fate, page, partner, rule, citation, bound) = if let Some(d) = incoming.filter(|d| d.rule != Rule::FirstUnstable) {
            let t = d.from.1;
            (EcFate::KilledAsTarget, Some(d.r), Some(d.note.clone()), Some(d.rule), format!("{}: r = {} <= t - 1 = {}", d.rule.describe(), d.r, t - 1), None)
        } else if let Some(d) = outgoing {
            match d.rule {
                Rule::FirstUnstable => {
                    let sw = sweep.as_ref().ok_or_else(|| Error::Internal("no kernel sweep".into()))?;
                    (
                        EcFate::BoundedByKernel,
                        Some(d.r),
                        Some(d.note.clone()),
                        Some(d.rule),
                        format!("{}; kernel order <= {} over all {} (xi, eta)", d.rule.describe(), sw.max_order, sw.cases),
                        Some(sw.max_order),
                    )
                }
                rule => (EcFate::SupportsDifferential, Some(d.r), Some(d.note.clone()), Some(rule), format!("{}: r = {} <= t - 1 = {}", rule.describe(), d.r, pos.1 - 1), None),
            }
        } else if pic.touched_by_unknown(pos) {
            (EcFate::BoundedByCellOrder, None, None, Some(Rule::Unknown), format!("undetermined differential; bounded by the cell order {}", setup.cell_type()), Some(setup.cell_type().order()))
        } else {
            (EcFate::Survives, None, None, None, "no differential".into(), None)
        };
        let ok = if c == 1 {
            matches!(fate, EcFate::BoundedByKernel | EcFate::BoundedByCellOrder) && bound.is_some_and(|b| b <= pp)
        } else {
            matches!(fate, EcFate::KilledAsTarget | EcFate::SupportsDifferential)
        };
        classes.push(ECClass { c, monomial: Some(setup.name(&m)), s, t_add, fate, page, partner, rule, citation, bound, ok });
    }
    let ok = classes.iter().all(|c| c.ok);
    Ok(EcAnalysis { p, group, cmax, classes, kernel_sweep: sweep, ok })
}

/// `E₁ = H^s(C_p; Sym^j ρ̄)` (degree 0 modulo transfers), computed from the representations.
#[derive(Clone, Debug)]
pub struct AlgebraicE1 {
    pub p: u32,
    pub field: ExtensionField,
    pub jmax: usize,
    pub smax: usize,
    pub checks: Vec<PresentationCheck>,
    dims: BTreeMap<(usize, usize), usize>,
}

pub fn algebraic_e1(p: u32, jmax: usize, smax: usize) -> Result<AlgebraicE1> {
    if p < 3 || !is_prime(p as u64) {
        return precondition(format!("p = {p} must be an odd prime"));
    }
    let field = ExtensionField::new(p, p - 1)?;
    // ρ̄ is defined over F_p, so dimensions over F_q agree with those over F_p
    let checks = reps::check_presentation(p, &ExtensionField::new(p, 1)?, jmax, smax)?;
    if let Some(c) = checks.iter().find(|c| c.computed_dim != c.predicted_dim) {
        return Err(Error::Verification(format!(
            "H^{}(Sym^{} ρ̄) has dimension {} but the presentation predicts {}",
            c.s, c.j, c.computed_dim, c.predicted_dim
        )));
    }
    let dims = checks.iter().map(|c| ((c.s, c.j), c.computed_dim)).collect();
    Ok(AlgebraicE1 { p, field, jmax, smax, checks, dims })
}

fn power(x: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => x.to_string(),
        e => format!("{x}^{e}"),
    }
}

impl AlgebraicE1 {
    pub fn dim(&self, s: usize, j: usize) -> usize {
        self.dims.get(&(s, j)).copied().unwrap_or(0)
    }
    /// Monomial name in `a, b, u, v, v′` for the class at `(s, j)`.
    pub fn class_name(&self, s: usize, j: usize) -> String {
        let p = self.p as usize;
        let (m, e) = (j / p, j % p);
        let k = s / 2;
        let parts: Vec<String> = match e {
            0 => vec![if s % 2 == 1 { "a".into() } else { String::new() }, power("b", k), power("u", m)],
            _ => vec![power("b", k), if s % 2 == 0 { "v".into() } else { "v'".into() }, power("u", m)],
        };
        let name: Vec<String> = parts.into_iter().filter(|x| !x.is_empty()).collect();
        if name.is_empty() {
            "1".into()
        } else {
            name.join(" ")
        }
    }
    /// `d₁(a b^k u^m) = b^{k+1} v u^m` and `d_{p−1}(b^k v′ u^m) = b^{k+1} u^{m+1}`.
    /// `u`, `b`, `v` are permanent; the target of each rule must be present.
    pub fn differentials(&self) -> Result<Vec<PageArrow>> {
        let p = self.p as usize;
        let mut dead: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut out = Vec::new();
        for (r, residue) in [(1usize, 0usize), (p - 1, 1)] {
            for s in (1..self.smax).step_by(2) {
                for j in (0..=self.jmax).filter(|j| j % p == residue) {
                    let (ts, tj) = (s + 1, j + r);
                    if self.dim(s, j) == 0 || tj > self.jmax || dead.contains(&(s, j)) {
                        continue;
                    }
                    if self.dim(ts, tj) == 0 || dead.contains(&(ts, tj)) {
                        return Err(Error::Internal(format!("target of d_{r} on {} is missing", self.class_name(s, j))));
                    }
                    dead.insert((s, j));
                    dead.insert((ts, tj));
                    out.push(PageArrow {
                        r,
                        from: (s as i64, j as i64),
                        to: (ts as i64, tj as i64),
                        rule: Rule::Algebraic,
                        matrix: vec![vec![1]],
                        kernel: None,
                        note: format!("{} -> {}", self.class_name(s, j), self.class_name(ts, tj)),
                    });
                }
            }
        }
        Ok(out)
    }
    /// `E₁` with all differentials, `t` holding the filtration `j`.
    pub fn chart_page(&self) -> Result<BigradedPage> {
        let q = self.field.order();
        let cells = self
            .dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&(s, j), &d)| PageCell {
                s: s as i64,
                t: j as i64,
                group: AbelianGroupType::from_exponents(self.p as u64, std::iter::repeat(1).take(d * self.field.n() as usize)),
                group_name: format!("F_{q}"),
                kind: CellKind::FieldLine,
                label: self.class_name(s, j),
                transfer: s == 0,
            })
            .collect();
        Ok(BigradedPage { page: "1".into(), cells, differentials: self.differentials()? })
    }
}

/// One possible contribution to `H¹(C_p; 1 + 𝔪)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraicContribution {
    pub j: usize,
    pub class: String,
    pub fate: String,
    /// Upper bound on the order of the contribution; 0 when outside the computed range.
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraicPicardReport {
    pub p: u32,
    pub xi: Fe,
    pub xi_prime: Fe,
    pub presentation_matches: bool,
    pub contributions: Vec<AlgebraicContribution>,
    pub kernel_order: u64,
    pub upper_bound: u64,
    pub lower_bound: u64,
    pub result: AbelianGroupType,
    /// Whether this `(ξ, ξ′)` attains the bound, as the lower bound forces.
    pub consistent_with_lower_bound: bool,
}

/// Differentials with source filtration `j` and length `k` agree additively and
/// multiplicatively when the target stays below `p·j`.
fn algebraic_import(p: usize, j: usize, k: usize) -> bool {
    j >= 1 && j + k < p * j
}

pub fn algebraic_picard(p: u32, xi: Fe, xi_prime: Fe) -> Result<AlgebraicPicardReport> {
    let e1 = algebraic_e1(p, 2 * p as usize, 3)?;
    algebraic_picard_with(&e1, xi, xi_prime)
}

/// Multiplicative filtration spectral sequence for `H¹(C_p; 1 + 𝔪)`: the `j = 0`
/// row is removed, imported differentials kill every class but `v′`, and
/// `d_{p−1,×}(e v′) = (eξ − e^p ξ′) b u`. The lower bound `p` comes from `ω`.
pub fn algebraic_picard_with(e1: &AlgebraicE1, xi: Fe, xi_prime: Fe) -> Result<AlgebraicPicardReport> {
    let p = e1.p as usize;
    let f = &e1.field;
    if xi == 0 {
        return precondition("ξ must be nonzero");
    }
    if xi >= f.order() || xi_prime >= f.order() {
        return invalid("scalar outside the field");
    }
    let arrows = e1.differentials()?;
    let mut contributions = Vec::new();
    let mut kernel_order = 0;
    for j in 1..=e1.jmax {
        if e1.dim(1, j) == 0 {
            continue;
        }
        let class = e1.class_name(1, j);
        let d = arrows.iter().find(|a| a.from == (1, j as i64));
        let (fate, bound) = match d {
            Some(a) if algebraic_import(p, j, a.r) => (format!("imported d_{} -> {}", a.r, e1.class_name(2, j + a.r)), 1),
            Some(a) => {
                let k = semilinear_kernel(f, xi, f.neg(xi_prime))?;
                kernel_order = k.order;
                if k.order > p as u64 {
                    return Err(Error::Verification(format!("semilinear kernel of order {} exceeds p", k.order)));
                }
                (format!("twisted d_{},x with kernel {}", a.r, k.group), p as u64)
            }
            None if j + p - 1 > e1.jmax => ("differential leaves the computed range".into(), 0),
            None => return Err(Error::Internal(format!("{class} supports no differential"))),
        };
        contributions.push(AlgebraicContribution { j, class, fate, bound });
    }
    // both families a·u^m and v′·u^m (m ≥ 1) must be represented
    for j in [p, p + 1] {
        if !contributions.iter().any(|c| c.j == j && c.bound > 0) {
            return precondition(format!("E1 range j <= {} does not determine the class at j = {j}", e1.jmax));
        }
    }
    let upper_bound: u64 = contributions.iter().filter(|c| c.bound > 0).map(|c| c.bound).product();
    let lower_bound = p as u64;
    if upper_bound != lower_bound {
        return Err(Error::Verification(format!("algebraic Picard bounds {lower_bound} <= |H1| <= {upper_bound}")));
    }
    Ok(AlgebraicPicardReport {
        p: e1.p,
        xi,
        xi_prime,
        presentation_matches: true,
        contributions,
        kernel_order,
        upper_bound,
        lower_bound,
        result: AbelianGroupType::cyclic(lower_bound),
        consistent_with_lower_bound: kernel_order == p as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardOrderReport {
    pub p: u32,
    pub group: Group,
    pub params: PicardParams,
    pub ledger: Vec<LedgerEntry>,
    pub upper_bound: u64,
    pub lower_bound: u64,
    pub order: u64,
    pub cyclic: bool,
    pub verdict: String,
    pub kernel_order: Option<u64>,
    pub parameters_consistent: bool,
    pub zero_stem_unknowns: usize,
}

/// Shared, parameter-independent inputs of the Picard order computation.
#[derive(Clone, Debug)]
pub struct PicardContext {
    setup: Setup,
    window: Window,
    additive: AdditiveSS,
    periodicity: PeriodicityReport,
    algebraic: Option<AlgebraicE1>,
}

impl PicardContext {
    /// Zero-stem window covering `e_c` for `c ≤ 2p`.
    pub fn new(p: u32, group: Group) -> Result<Self> {
        let setup = Setup::new(p, group)?;
        let window = Window::new(2 * setup.pi() * (2 * setup.pi() + 1), -1, 1)?;
        Self::with_window(setup, window)
    }
    pub fn with_window(setup: Setup, window: Window) -> Result<Self> {
        let additive = run_additive(&setup, additive_window_for(&setup, &window))?;
        let periodicity = periodicity_check(&setup)?;
        let algebraic = match setup.group() {
            Group::Cp => Some(algebraic_e1(setup.p(), 2 * setup.p() as usize, 3)?),
            Group::Maximal => None,
        };
        Ok(PicardContext { setup, window, additive, periodicity, algebraic })
    }
    pub fn setup(&self) -> &Setup {
        &self.setup
    }
    pub fn periodicity(&self) -> &PeriodicityReport {
        &self.periodicity
    }
    pub fn additive(&self) -> &AdditiveSS {
        &self.additive
    }
    /// `H¹(G; E₀^×)`: computed for `C_p`, the group order `pn²` for the maximal group.
    pub fn h1(&self, params: &PicardParams) -> Result<(AbelianGroupType, String)> {
        match &self.algebraic {
            Some(e1) => {
                let xi_prime = params.xi_prime;
                let rep = algebraic_picard_with(e1, params.xi, xi_prime)?;
                Ok((rep.result, "algebraic H^1 via the m-adic spectral sequence".into()))
            }
            None => {
                let (p, n) = (self.setup.p() as u64, self.setup.n() as u64);
                Ok((AbelianGroupType::cyclic(p * n * n), "axiom |H^1(G; E0^x)| = pn^2".into()))
            }
        }
    }
    pub fn picard_ss(&self, params: PicardParams, window: Window) -> Result<PicardSS> {
        let (h1, basis) = self.h1(&params)?;
        picardify(&self.additive, params, h1, &basis, window)
    }
    pub fn run(&self, params: PicardParams) -> Result<PicardOrderReport> {
        let pic = self.picard_ss(params, self.window)?;
        let ledger = pic.zero_stem_ledger()?;
        let upper_bound: u64 = ledger.iter().map(|e| e.bound).product();
        if !self.periodicity.generator_permanent {
            return Err(Error::Verification("periodicity generator is not permanent".into()));
        }
        let lower_bound = self.periodicity.minimal_period as u64;
        let p = self.setup.p() as u64;
        let zero_stem_unknowns = pic.unknowns().iter().filter(|u| u.from.0 == u.from.1 || u.to.0 == u.to.1).count();
        if upper_bound != lower_bound {
            let bounds: Vec<String> = ledger.iter().map(|e| e.bound.to_string()).collect();
            return Err(Error::Verification(format!(
                "bounds fail to match: lower {lower_bound}, upper {upper_bound} = {}",
                bounds.join("*")
            )));
        }
        let kernel_order = pic.kernel().map(|k| k.order);
        Ok(PicardOrderReport {
            p: self.setup.p(),
            group: self.setup.group(),
            params,
            ledger,
            upper_bound,
            lower_bound,
            order: lower_bound,
            cyclic: true,
            verdict: format!("Z/{lower_bound} cyclic"),
            kernel_order,
            parameters_consistent: kernel_order.map_or(true, |k| k == p),
            zero_stem_unknowns,
        })
    }
}

pub fn picard_order(p: u32, group: Group, params: Option<PicardParams>) -> Result<PicardOrderReport> {
    let ctx = PicardContext::new(p, group)?;
    let params = params.unwrap_or_else(|| PicardParams::default_for(ctx.setup()));
    ctx.run(params)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// Parameter points `(ξ, ξ′, ζ)` in their domains.
pub fn parameter_sweep(setup: &Setup, sweep: Sweep) -> Vec<PicardParams> {
    let q = setup.field().order();
    let p = setup.p();
    match sweep {
        Sweep::Exhaustive => {
            let mut v = Vec::new();
            for xi in 1..q {
                for xi_prime in 0..q {
                    for zeta in 1..p {
                        v.push(PicardParams { xi, xi_prime, zeta });
                    }
                }
            }
            v
        }
        Sweep::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| PicardParams { xi: rng.gen_range(1..q), xi_prime: rng.gen_range(0..q), zeta: rng.gen_range(1..p) })
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub p: u32,
    pub group: Group,
    pub runs: usize,
    pub orders: Vec<u64>,
    pub all_cyclic: bool,
    /// Parameter points whose kernel is smaller than `p`; the lower bound rules them out.
    pub excluded_parameters: usize,
    pub verdict: String,
}

pub fn picard_order_sweep(p: u32, group: Group, sweep: Sweep) -> Result<SweepReport> {
    let ctx = PicardContext::new(p, group)?;
    let params = parameter_sweep(ctx.setup(), sweep);
    let reports = par::map(&params, |&pp| ctx.run(pp)).into_iter().collect::<Result<Vec<_>>>()?;
    let orders: BTreeSet<u64> = reports.iter().map(|r| r.order).collect();
    let orders: Vec<u64> = orders.into_iter().collect();
    let all_cyclic = reports.iter().all(|r| r.cyclic);
    let verdict = match orders.as_slice() {
        [o] if all_cyclic => format!("Z/{o} cyclic"),
        _ => format!("parameter-dependent orders {orders:?}"),
    };
    Ok(SweepReport {
        p,
        group,
        runs: reports.len(),
        orders,
        all_cyclic,
        excluded_parameters: reports.iter().filter(|r| !r.parameters_consistent).count(),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_bidegrees_at_three() {
        let s = Setup::new(3, Group::Cp).unwrap();
        assert_eq!(s.bidegree(&MonomialClass::new(1, 0, 0)), (1, 4));
        assert_eq!(s.bidegree(&MonomialClass::new(0, 1, 0)), (2, 12));
        assert_eq!(s.bidegree(&MonomialClass::new(0, 0, 1)), (0, 6));
        let m = Setup::new(3, Group::Maximal).unwrap();
        assert_eq!(m.bidegree(&MonomialClass::new(0, 0, 1)), (0, 24));
    }

    #[test]
    fn exterior_relation() {
        let a = MonomialClass::new(1, 2, -1);
        assert_eq!(a.mul(&MonomialClass::new(1, 0, 3)), None);
    }

    #[test]
    fn monomial_lookup_inverts_bidegree() {
        let s = Setup::new(5, Group::Cp).unwrap();
        for m in [MonomialClass::new(1, 7, -40), MonomialClass::new(0, 3, 11)] {
            let (a, b) = s.bidegree(&m);
            assert_eq!(s.monomial_at(a, b), Some(m));
        }
    }

    #[test]
    fn first_differentials_at_three() {
        let s = Setup::new(3, Group::Cp).unwrap();
        let ss = run_additive(&s, Window::new(12, -2, 20).unwrap()).unwrap();
        let d = ss.differential_from((0, 6)).unwrap();
        assert_eq!(d.r, 5);
        assert_eq!(s.name(&d.target), "αβ^2δ^-3");
        let ad8 = MonomialClass::new(1, 0, 8);
        let d = ss.differential_from(s.bidegree(&ad8)).unwrap();
        assert_eq!(d.r, 9);
        assert_eq!(s.name(&d.target), "β^5");
        assert!(ss.is_permanent((0, 18)));
        assert!(!ss.is_permanent((0, 6)) && !ss.is_permanent((0, 12)));
    }

    #[test]
    fn semilinear_kernel_examples() {
        let f = ExtensionField::new(3, 2).unwrap();
        assert_eq!(semilinear_kernel(&f, 1, f.from_int(-1)).unwrap().order, 3);
        assert_eq!(semilinear_kernel(&f, 1, 0).unwrap().order, 1);
        assert!(semilinear_kernel(&f, 0, 1).is_err());
    }

    #[test]
    fn picard_orders_at_three() {
        let r = picard_order(3, Group::Cp, None).unwrap();
        assert_eq!(r.order, 18);
        let bounds: Vec<u64> = r.ledger.iter().map(|e| e.bound).collect();
        assert_eq!(bounds, vec![2, 3, 3]);
        let m = picard_order(3, Group::Maximal, None).unwrap();
        assert_eq!(m.order, 72);
    }
}

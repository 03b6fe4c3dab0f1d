//! Spectral sequence of a finitely filtered cochain complex of finite abelian
//! `p`-groups, computed page by page from subquotient formulas:
//!
//! `Z_r^{i,j} = F^j C^i ∩ d^{-1}(F^{j+r} C^{i+1})`,
//! `E_r^{i,j} = Z_r^{i,j} / (Z_{r−1}^{i,j+1} + d Z_{r−1}^{i−1,j−r+1})`,
//! `d_r : E_r^{i,j} → E_r^{i+1,j+r}`.
//!
//! The top degree of a truncated complex has no outgoing differential; its
//! entries are formed with `Z = F^j` and are only used as targets. Values of
//! `d_r` landing there are still faithful (a class vanishes there iff it
//! vanishes in the true page), but the groups themselves are not reported.

use crate::abelian::AbelianGroupType;
use crate::cohomology::CyclicModule;
use crate::error::{invalid, Error, Result};
use crate::par;
use crate::zmod::{Ambient, Hom, Submodule, Subquotient};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct FilteredComplex {
    groups: Vec<Ambient>,
    d: Vec<Hom>,
    /// `filt[i][j − jmin]` for `j ∈ jmin..=jmax+1`; the last entry is zero.
    filt: Vec<Vec<Submodule>>,
    jmin: i64,
    jmax: i64,
}

impl FilteredComplex {
    /// `filt[i]` lists `F^{jmin} C^i ⊇ ⋯ ⊇ F^{jmax} C^i`; `F^{jmin}` must be all of `C^i`.
    pub fn new(groups: Vec<Ambient>, d: Vec<Hom>, filt: Vec<Vec<Submodule>>, jmin: i64) -> Result<Self> {
        if groups.is_empty() || d.len() + 1 != groups.len() || filt.len() != groups.len() {
            return invalid("filtered complex shape mismatch");
        }
        let len = filt[0].len();
        if len == 0 || filt.iter().any(|f| f.len() != len) {
            return invalid("filtration lengths differ between degrees");
        }
        let jmax = jmin + len as i64 - 1;
        let mut full = Vec::with_capacity(groups.len());
        for (i, mut f) in filt.into_iter().enumerate() {
            if f[0] != Submodule::full(&groups[i]) {
                return invalid(format!("F^{jmin} C^{i} is not the whole group"));
            }
            for w in f.windows(2) {
                if !w[1].is_subset(&w[0]) {
                    return invalid(format!("filtration of C^{i} is not decreasing"));
                }
            }
            f.push(Submodule::zero(&groups[i]));
            full.push(f);
        }
        for (i, di) in d.iter().enumerate() {
            if di.src != groups[i] || di.tgt != groups[i + 1] {
                return invalid(format!("differential {i} has wrong domain"));
            }
            if i + 1 < d.len() && !d[i + 1].compose(di).is_zero() {
                return Err(Error::Verification(format!("d∘d ≠ 0 in degree {i}")));
            }
            for j in 0..full[i].len() {
                if !di.image(&full[i][j]).is_subset(&full[i + 1][j]) {
                    return invalid(format!("d does not preserve F^{} in degree {i}", jmin + j as i64));
                }
            }
        }
        Ok(FilteredComplex { groups, d, filt: full, jmin, jmax })
    }

    /// Periodic-resolution complex of a filtered `C_m`-module in degrees `0..=top`.
    pub fn periodic(module: &CyclicModule, filtration: Vec<Submodule>, jmin: i64, top: usize) -> Result<Self> {
        for s in &filtration {
            if !module.is_stable(s) {
                return invalid("filtration step is not g-stable");
            }
        }
        let groups = vec![module.ambient().clone(); top + 1];
        let d = (0..top).map(|i| module.periodic_differential(i)).collect();
        FilteredComplex::new(groups, d, vec![filtration; top + 1], jmin)
    }

    pub fn top(&self) -> usize {
        self.groups.len() - 1
    }
    pub fn jmin(&self) -> i64 {
        self.jmin
    }
    pub fn jmax(&self) -> i64 {
        self.jmax
    }
    pub fn group(&self, i: usize) -> &Ambient {
        &self.groups[i]
    }
    pub fn differential(&self, i: usize) -> &Hom {
        &self.d[i]
    }
    /// `F^j C^i` for any integer `j`.
    pub fn f(&self, i: usize, j: i64) -> &Submodule {
        let idx = (j - self.jmin).clamp(0, self.filt[i].len() as i64 - 1) as usize;
        &self.filt[i][idx]
    }
    /// `H^i` of the unfiltered complex (`i < top`).
    pub fn cohomology(&self, i: usize) -> Result<Subquotient> {
        let z = self.d[i].kernel();
        let b = if i == 0 { Submodule::zero(&self.groups[0]) } else { self.d[i - 1].image_all() };
        Subquotient::new(&z, &b)
    }
}

/// One page: entries `E_r^{i,j}` and the differential `d_r` on each.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    pub entries: BTreeMap<(usize, i64), Subquotient>,
    /// `d_r` on generators of `E_r^{i,j}`, as coordinates in `E_r^{i+1,j+r}`.
    pub diffs: BTreeMap<(usize, i64), Vec<Vec<u64>>>,
}

impl Page {
    pub fn entry(&self, i: usize, j: i64) -> Option<&Subquotient> {
        self.entries.get(&(i, j))
    }
    pub fn group_type(&self, i: usize, j: i64) -> AbelianGroupType {
        self.entry(i, j).map(|e| e.group_type()).unwrap_or_default()
    }
    pub fn differential_is_zero(&self, i: usize, j: i64) -> bool {
        self.diffs.get(&(i, j)).map_or(true, |m| m.iter().all(|v| v.iter().all(|&c| c == 0)))
    }
}

#[derive(Clone, Debug)]
pub struct SpectralSequence {
    complex: FilteredComplex,
    /// `dinv[i][k − jmin] = d^{-1}(F^k C^{i+1})` for `i < top`.
    dinv: Vec<Vec<Submodule>>,
    pub pages: Vec<Page>,
    pub infinity: Page,
}

impl SpectralSequence {
    pub fn new(complex: FilteredComplex) -> Result<Self> {
        let top = complex.top();
        let nk = complex.filt[0].len();
        let jobs: Vec<(usize, usize)> = (0..top).flat_map(|i| (0..nk).map(move |k| (i, k))).collect();
        let pre = par::map(&jobs, |&(i, k)| complex.d[i].preimage(&complex.filt[i + 1][k]));
        let mut dinv = vec![Vec::with_capacity(nk); top];
        for ((i, _), s) in jobs.into_iter().zip(pre) {
            dinv[i].push(s);
        }
        let mut ss = SpectralSequence { complex, dinv, pages: Vec::new(), infinity: empty_page(0) };
        let r_last = (ss.complex.jmax - ss.complex.jmin + 1) as usize;
        for r in 1..=r_last {
            let page = ss.compute_page(r, true)?;
            ss.pages.push(page);
        }
        ss.infinity = ss.compute_page(r_last + 1, false)?;
        Ok(ss)
    }

    pub fn complex(&self) -> &FilteredComplex {
        &self.complex
    }
    /// Degrees whose entries are genuine pages.
    pub fn valid_degrees(&self) -> std::ops::Range<usize> {
        0..self.complex.top()
    }
    pub fn page(&self, r: usize) -> Option<&Page> {
        if r == 0 {
            return None;
        }
        self.pages.get(r - 1).or(if r > self.pages.len() { Some(&self.infinity) } else { None })
    }
    pub fn last_page_index(&self) -> usize {
        self.pages.len()
    }

    /// `Z_r^{i,j}`; `r = 0` gives `F^j C^i`.
    pub fn z(&self, r: usize, i: usize, j: i64) -> Submodule {
        let c = &self.complex;
        let f = c.f(i, j);
        if i == c.top() || r == 0 {
            return f.clone();
        }
        let k = ((j + r as i64) - c.jmin).clamp(0, c.filt[0].len() as i64 - 1) as usize;
        f.intersect(&self.dinv[i][k])
    }
    /// Denominator `Z_{r−1}^{i,j+1} + d Z_{r−1}^{i−1,j−r+1}`.
    pub fn boundary(&self, r: usize, i: usize, j: i64) -> Submodule {
        let mut b = self.z(r - 1, i, j + 1);
        if i > 0 {
            let src = self.z(r - 1, i - 1, j - r as i64 + 1);
            b = b.sum(&self.complex.d[i - 1].image(&src));
        }
        b
    }
    pub fn entry_at(&self, r: usize, i: usize, j: i64) -> Result<Subquotient> {
        Subquotient::new(&self.z(r, i, j), &self.boundary(r, i, j))
    }

    fn compute_page(&self, r: usize, with_diffs: bool) -> Result<Page> {
        let c = &self.complex;
        let keys: Vec<(usize, i64)> =
            (0..=c.top()).flat_map(|i| (c.jmin..=c.jmax).map(move |j| (i, j))).collect();
        let groups = par::map(&keys, |&(i, j)| self.entry_at(r, i, j));
        let mut entries = BTreeMap::new();
        for (k, g) in keys.iter().zip(groups) {
            entries.insert(*k, g?);
        }
        let mut diffs = BTreeMap::new();
        if with_diffs {
            let src_keys: Vec<(usize, i64)> = keys.iter().copied().filter(|&(i, _)| i < c.top()).collect();
            let mats = par::map(&src_keys, |&(i, j)| -> Result<Vec<Vec<u64>>> {
                let src = &entries[&(i, j)];
                let tj = j + r as i64;
                let Some(tgt) = entries.get(&(i + 1, tj)) else {
                    return Ok(vec![Vec::new(); src.rank()]);
                };
                src.gens().iter().map(|g| tgt.coords(&c.d[i].apply(g))).collect()
            });
            for (k, m) in src_keys.into_iter().zip(mats) {
                diffs.insert(k, m?);
            }
        }
        Ok(Page { r, entries, diffs })
    }

    /// `d_r` of a representative `x ∈ Z_r^{i,j}`, as coordinates in `E_r^{i+1,j+r}`.
    pub fn apply_differential(&self, r: usize, i: usize, j: i64, x: &[u64]) -> Result<Vec<u64>> {
        if !self.z(r, i, j).contains(x) {
            return Err(Error::Internal(format!("element is not in Z_{r}^{{{i},{j}}}")));
        }
        let tj = j + r as i64;
        if tj > self.complex.jmax {
            return Ok(Vec::new());
        }
        let tgt = self.entry_at(r, i + 1, tj)?;
        tgt.coords(&self.complex.d[i].apply(x))
    }

    /// `Π_j |E_∞^{i,j}|` against `|H^i|` of the unfiltered complex.
    pub fn euler_check(&self, i: usize) -> Result<bool> {
        let h = self.complex.cohomology(i)?;
        let prod: u32 = (self.complex.jmin..=self.complex.jmax)
            .map(|j| self.infinity.entries[&(i, j)].log_order())
            .sum();
        Ok(prod == h.log_order())
    }

    /// Summary of every page for reports and JSON export.
    pub fn summary(&self, degrees: std::ops::Range<usize>) -> Vec<PageSummary> {
        let mut out: Vec<PageSummary> = self.pages.iter().map(|p| summarize(p, &degrees, false)).collect();
        out.push(summarize(&self.infinity, &degrees, true));
        out
    }
}

fn empty_page(r: usize) -> Page {
    Page { r, entries: BTreeMap::new(), diffs: BTreeMap::new() }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EntrySummary {
    pub i: usize,
    pub j: i64,
    #[serde(rename = "type")]
    pub ty: Vec<u64>,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DiffSummary {
    pub from: (usize, i64),
    pub to: (usize, i64),
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PageSummary {
    pub page: String,
    pub entries: Vec<EntrySummary>,
    pub differentials: Vec<DiffSummary>,
}

fn summarize(p: &Page, degrees: &std::ops::Range<usize>, inf: bool) -> PageSummary {
    let mut entries = Vec::new();
    let mut differentials = Vec::new();
    for (&(i, j), e) in &p.entries {
        if !degrees.contains(&i) || e.is_trivial() {
            continue;
        }
        let gens = (0..e.rank()).map(|k| format!("x{i}_{j}_{k}")).collect();
        entries.push(EntrySummary { i, j, ty: e.group_type().factors().to_vec(), gens });
        if let Some(m) = p.diffs.get(&(i, j)) {
            if m.iter().any(|v| v.iter().any(|&c| c != 0)) {
                differentials.push(DiffSummary { from: (i, j), to: (i + 1, j + p.r as i64), matrix: m.clone() });
            }
        }
    }
    PageSummary { page: if inf { "inf".into() } else { p.r.to_string() }, entries, differentials }
}

/// Result of comparing two spectral sequences of the same shape.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComparisonReport {
    /// Pages `E_r` whose entries agree in isomorphism type everywhere compared.
    pub pages_agree_through: usize,
    /// First `r` for which `d_r` differs in rank somewhere, if any.
    pub first_differential_divergence: Option<usize>,
    pub details: Vec<String>,
}

fn diff_rank_type(p: &Page, i: usize, j: i64) -> AbelianGroupType {
    let Some(m) = p.diffs.get(&(i, j)) else { return AbelianGroupType::trivial() };
    let Some(tgt) = p.entries.get(&(i + 1, j + p.r as i64)) else { return AbelianGroupType::trivial() };
    let amb = tgt.coord_ambient();
    let img = Submodule::span(&amb, m.iter().cloned());
    img.quotient_type(&Submodule::zero(&amb)).unwrap_or_default()
}

/// Compares entry types on pages `1..=max_page` and differential image types for
/// `d_r`, `r ≤ max_page`, over the given degrees and filtrations.
pub fn compare_ss(
    a: &SpectralSequence,
    b: &SpectralSequence,
    degrees: std::ops::Range<usize>,
    filtrations: std::ops::RangeInclusive<i64>,
    max_page: usize,
) -> ComparisonReport {
    let mut details = Vec::new();
    let mut pages_agree_through = 0;
    let mut first_div = None;
    for r in 1..=max_page {
        let (Some(pa), Some(pb)) = (a.page(r), b.page(r)) else { break };
        let mut ok = true;
        for i in degrees.clone() {
            for j in filtrations.clone() {
                let (ta, tb) = (pa.group_type(i, j), pb.group_type(i, j));
                if ta != tb {
                    ok = false;
                    details.push(format!("E_{r}^{{{i},{j}}}: {ta} vs {tb}"));
                }
            }
        }
        if !ok {
            break;
        }
        pages_agree_through = r;
        if first_div.is_none() {
            for i in degrees.clone() {
                for j in filtrations.clone() {
                    let (da, db) = (diff_rank_type(pa, i, j), diff_rank_type(pb, i, j));
                    if da != db {
                        first_div.get_or_insert(r);
                        details.push(format!("d_{r} on E_{r}^{{{i},{j}}}: image {da} vs {db}"));
                    }
                }
            }
        }
    }
    ComparisonReport { pages_agree_through, first_differential_divergence: first_div, details }
}

/// Checks that norm classes `N(F^j M)` are killed by every `d_r` in degree 0.
pub fn transfers_are_permanent(ss: &SpectralSequence, module: &CyclicModule) -> Result<bool> {
    let n = module.norm();
    let c = ss.complex();
    for page in &ss.pages {
        for j in c.jmin()..=c.jmax() {
            let z = ss.z(page.r, 0, j);
            for x in c.f(0, j).gens() {
                let t = n.apply(&x);
                if !z.contains(&t) {
                    return Ok(false);
                }
                let img = ss.apply_differential(page.r, 0, j, &t)?;
                if img.iter().any(|&v| v != 0) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

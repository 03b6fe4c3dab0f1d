//! Cosimplicial modules, their total complexes and spectral sequences, and the
//! operations `φ` and `βP⁰` relating additive and multiplicative differentials.
//!
//! Models are built over `Z` from simplicial sets (the bar construction of
//! `C_p`, and `Δ^k/∂Δ^k`) and then tensored with a finite coefficient group.

use crate::abelian::{AbelianGroupType, DlogTable};
use crate::cohomology::unit_group_module;
use crate::error::{invalid, Error, Result};
use crate::field::{ExtensionField, Fe};
use crate::filtss::{compare_ss, ComparisonReport, FilteredComplex, SpectralSequence};
use crate::reps::{sym_dim, sym_monomials};
use crate::ring::{Elem, FiniteRing, RingSpec};
use crate::trunclog::{mu, trunc_exp};
use crate::zmod::{Ambient, Hom, Submodule, Subquotient};
use serde::Serialize;
use std::collections::HashMap;

pub const MAX_SYM_LEVEL_DIM: usize = 10_000;
/// Largest `p^N` for cochains on the bar construction.
pub const MAX_BAR_POINTS: usize = 81;

/// Integer matrix stored by sparse columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl IntMat {
    fn normalized(rows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (i, v) in c {
                    *acc.entry(i).or_default() += v;
                }
                let mut v: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, x)| x != 0).collect();
                v.sort_unstable();
                v
            })
            .collect();
        IntMat { rows, cols }
    }
    pub fn identity(n: usize) -> Self {
        IntMat { rows: n, cols: (0..n).map(|i| vec![(i, 1)]).collect() }
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rows];
        for (j, &x) in v.iter().enumerate() {
            if x != 0 {
                for &(i, c) in &self.cols[j] {
                    out[i] += c * x;
                }
            }
        }
        out
    }
    /// `self ∘ other`.
    pub fn compose(&self, other: &IntMat) -> IntMat {
        let cols = other
            .cols
            .iter()
            .map(|c| c.iter().flat_map(|&(k, x)| self.cols[k].iter().map(move |&(i, y)| (i, x * y))).collect())
            .collect();
        IntMat::normalized(self.rows, cols)
    }
    fn combine(terms: &[(i64, &IntMat)]) -> IntMat {
        let rows = terms[0].1.rows;
        let n = terms[0].1.ncols();
        let cols = (0..n)
            .map(|j| terms.iter().flat_map(|&(s, m)| m.cols[j].iter().map(move |&(i, c)| (i, s * c))).collect())
            .collect();
        IntMat::normalized(rows, cols)
    }
    /// `self ⊗ id_A` from `A^{cols}` to `A^{rows}`.
    pub fn tensor(&self, a: &Ambient) -> Result<Hom> {
        let k = a.dim();
        let src = a.power(self.ncols());
        let tgt = a.power(self.rows);
        let mut cols = Vec::with_capacity(self.ncols() * k);
        for col in &self.cols {
            for b in 0..k {
                let mut v = vec![0i64; self.rows * k];
                for &(i, c) in col {
                    v[i * k + b] += c;
                }
                cols.push(tgt.from_ints(&v));
            }
        }
        Hom::new(src, tgt, cols)
    }
}

/// Cosimplicial free `Z`-module truncated at level `N`.
/// `cofaces[m][i] : level m → m+1` (`i ≤ m+1`), `codegens[m][j] : level m+1 → m` (`j ≤ m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralCosimplicial {
    dims: Vec<usize>,
    cofaces: Vec<Vec<IntMat>>,
    codegens: Vec<Vec<IntMat>>,
}

type FaceFn<'a> = &'a dyn Fn(usize, usize, usize) -> Option<usize>;

impl IntegralCosimplicial {
    pub fn new(dims: Vec<usize>, cofaces: Vec<Vec<IntMat>>, codegens: Vec<Vec<IntMat>>) -> Result<Self> {
        let c = IntegralCosimplicial { dims, cofaces, codegens };
        c.check_identities()?;
        Ok(c)
    }

    /// Reduced cochains on a pointed simplicial set: `face(m, i, x)` and
    /// `degen(m, j, x)` act on `m`-simplices, `None` is the basepoint.
    fn cochains_of(sizes: Vec<usize>, face: FaceFn<'_>, degen: FaceFn<'_>) -> Result<Self> {
        let top = sizes.len() - 1;
        let mut cofaces = Vec::with_capacity(top);
        let mut codegens = Vec::with_capacity(top);
        for m in 0..top {
            let faces = (0..=m + 1)
                .map(|i| {
                    let mut cols = vec![Vec::new(); sizes[m]];
                    for x in 0..sizes[m + 1] {
                        if let Some(y) = face(m + 1, i, x) {
                            cols[y].push((x, 1));
                        }
                    }
                    IntMat::normalized(sizes[m + 1], cols)
                })
                .collect();
            let degens = (0..=m)
                .map(|j| {
                    let mut cols = vec![Vec::new(); sizes[m + 1]];
                    for x in 0..sizes[m] {
                        if let Some(y) = degen(m, j, x) {
                            cols[y].push((x, 1));
                        }
                    }
                    IntMat::normalized(sizes[m], cols)
                })
                .collect();
            cofaces.push(faces);
            codegens.push(degens);
        }
        Self::new(sizes, cofaces, codegens)
    }

    /// Cochains on the bar construction of `C_p` in levels `0..=n`; points of
    /// level `m` are tuples `(a_1, …, a_m)` indexed by `Σ a_k p^{k−1}`.
    pub fn bar_cochains(p: usize, n: usize) -> Result<Self> {
        if p.pow(n as u32) > MAX_BAR_POINTS {
            return Err(Error::TooLarge(format!("bar construction level {n} has {p}^{n} points")));
        }
        let decode = |m: usize, x: usize| -> Vec<usize> { (0..m).map(|k| x / p.pow(k as u32) % p).collect() };
        let encode = |t: &[usize]| -> usize { t.iter().rev().fold(0, |acc, &a| acc * p + a) };
        let face = |m: usize, i: usize, x: usize| -> Option<usize> {
            let t = decode(m, x);
            let mut out = Vec::with_capacity(m - 1);
            if i == 0 {
                out.extend_from_slice(&t[1..]);
            } else if i == m {
                out.extend_from_slice(&t[..m - 1]);
            } else {
                out.extend_from_slice(&t[..i - 1]);
                out.push((t[i - 1] + t[i]) % p);
                out.extend_from_slice(&t[i + 1..]);
            }
            Some(encode(&out))
        };
        let degen = |m: usize, j: usize, x: usize| -> Option<usize> {
            let mut t = decode(m, x);
            t.insert(j, 0);
            Some(encode(&t))
        };
        let sizes = (0..=n).map(|m| p.pow(m as u32)).collect();
        Self::cochains_of(sizes, &face, &degen)
    }

    /// Reduced cochains on `Δ^k/∂Δ^k`: the Dold–Kan model of `Z[−k]`.
    /// Level `m` has basis the monotone surjections `[m] → [k]`.
    pub fn sphere_cochains(k: usize, n: usize) -> Result<Self> {
        let levels: Vec<Vec<Vec<usize>>> = (0..=n + 1).map(|m| surjections(m, k)).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        let face = |m: usize, i: usize, x: usize| -> Option<usize> {
            let mut s = levels[m][x].clone();
            s.remove(i);
            index[m - 1].get(&s).copied()
        };
        let degen = |m: usize, j: usize, x: usize| -> Option<usize> {
            let mut s = levels[m][x].clone();
            s.insert(j, s[j]);
            index[m + 1].get(&s).copied()
        };
        let sizes = levels[..=n].iter().map(|l| l.len()).collect();
        Self::cochains_of(sizes, &face, &degen)
    }

    pub fn levels(&self) -> usize {
        self.dims.len()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn coface(&self, m: usize, i: usize) -> &IntMat {
        &self.cofaces[m][i]
    }
    /// `Σ (−1)^i ∂^i : level m → m+1`.
    pub fn differential(&self, m: usize) -> IntMat {
        let terms: Vec<(i64, &IntMat)> =
            self.cofaces[m].iter().enumerate().map(|(i, f)| (if i % 2 == 0 { 1 } else { -1 }, f)).collect();
        IntMat::combine(&terms)
    }

    fn check_identities(&self) -> Result<()> {
        let n = self.dims.len();
        if self.cofaces.len() + 1 != n || self.codegens.len() + 1 != n {
            return invalid("cosimplicial data has inconsistent level count");
        }
        let fail = |s: String| Err(Error::Verification(format!("cosimplicial identity fails: {s}")));
        for m in 0..n - 1 {
            if self.cofaces[m].len() != m + 2 || self.codegens[m].len() != m + 1 {
                return invalid(format!("wrong number of operators at level {m}"));
            }
        }
        // ∂^j ∂^i = ∂^i ∂^{j−1}, i < j
        for m in 0..n.saturating_sub(2) {
            for j in 0..=m + 2 {
                for i in 0..j {
                    let a = self.cofaces[m + 1][j].compose(&self.cofaces[m][i]);
                    let b = self.cofaces[m + 1][i].compose(&self.cofaces[m][j - 1]);
                    if a != b {
                        return fail(format!("d^{j}d^{i} at level {m}"));
                    }
                }
            }
        }
        // s^j ∂^i on level m → m (through m+1)
        for m in 1..n - 1 {
            for j in 0..=m {
                for i in 0..=m + 1 {
                    let lhs = self.codegens[m][j].compose(&self.cofaces[m][i]);
                    let rhs = if i < j {
                        self.cofaces[m - 1][i].compose(&self.codegens[m - 1][j - 1])
                    } else if i == j || i == j + 1 {
                        IntMat::identity(self.dims[m])
                    } else {
                        self.cofaces[m - 1][i - 1].compose(&self.codegens[m - 1][j])
                    };
                    if lhs != rhs {
                        return fail(format!("s^{j}d^{i} at level {m}"));
                    }
                }
            }
        }
        for j in 0..1.min(n - 1) {
            for i in 0..=1 {
                if self.codegens[0][j].compose(&self.cofaces[0][i]) != IntMat::identity(self.dims[0]) {
                    return fail(format!("s^{j}d^{i} at level 0"));
                }
            }
        }
        // s^j s^i = s^i s^{j+1}, i ≤ j
        for m in 0..n.saturating_sub(2) {
            for j in 0..=m {
                for i in 0..=j {
                    let a = self.codegens[m][j].compose(&self.codegens[m + 1][i]);
                    let b = self.codegens[m][i].compose(&self.codegens[m + 1][j + 1]);
                    if a != b {
                        return fail(format!("s^{j}s^{i} at level {m}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Levelwise direct sum.
    pub fn direct_sum(&self, other: &IntegralCosimplicial) -> Result<Self> {
        if self.levels() != other.levels() {
            return invalid("direct sum of cosimplicial modules with different level counts");
        }
        let sum = |a: &IntMat, b: &IntMat| -> IntMat {
            let mut cols = a.cols.clone();
            cols.extend(b.cols.iter().map(|c| c.iter().map(|&(i, x)| (i + a.rows, x)).collect()));
            IntMat { rows: a.rows + b.rows, cols }
        };
        let zip = |x: &[Vec<IntMat>], y: &[Vec<IntMat>]| -> Vec<Vec<IntMat>> {
            x.iter().zip(y).map(|(u, v)| u.iter().zip(v).map(|(a, b)| sum(a, b)).collect()).collect()
        };
        Self::new(
            self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            zip(&self.cofaces, &other.cofaces),
            zip(&self.codegens, &other.codegens),
        )
    }

    /// Levelwise `Sym^k`, monomial bases in lexicographic order.
    pub fn sym(&self, k: usize) -> Result<Self> {
        let dims: Vec<usize> = self.dims.iter().map(|&d| sym_dim(d, k)).collect();
        if let Some(&d) = dims.iter().find(|&&d| d > MAX_SYM_LEVEL_DIM) {
            return Err(Error::TooLarge(format!("Sym^{k} level of dimension {d}")));
        }
        let map = |m: &IntMat, src_dim: usize| sym_of_map(m, src_dim, k);
        let cofaces = self
            .cofaces
            .iter()
            .enumerate()
            .map(|(lvl, fs)| fs.iter().map(|f| map(f, self.dims[lvl])).collect())
            .collect();
        let codegens = self
            .codegens
            .iter()
            .enumerate()
            .map(|(lvl, fs)| fs.iter().map(|f| map(f, self.dims[lvl + 1])).collect())
            .collect();
        Self::new(dims, cofaces, codegens)
    }

    /// Tensor with a finite coefficient group.
    pub fn tensor(&self, a: &Ambient) -> Result<CosimplicialModule> {
        let t = |fs: &Vec<IntMat>| fs.iter().map(|f| f.tensor(a)).collect::<Result<Vec<_>>>();
        CosimplicialModule::new(
            self.dims.iter().map(|&d| a.power(d)).collect(),
            self.cofaces.iter().map(t).collect::<Result<_>>()?,
            self.codegens.iter().map(t).collect::<Result<_>>()?,
        )
    }
}

/// Monotone surjections `[m] → [k]` in lexicographic order.
fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, m: usize, k: usize) {
        if cur.len() == m + 1 {
            if *cur.last().unwrap() == k {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        for v in [last, last + 1] {
            if v <= k && k - v <= m - cur.len() {
                cur.push(v);
                rec(out, cur, m, k);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(&mut out, &mut vec![0], m, k);
    }
    out
}

type IntPoly = HashMap<Vec<u16>, i64>;

fn ipoly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (ma, &ca) in a {
        for (mb, &cb) in b {
            let m: Vec<u16> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn ipoly_linear(col: &[(usize, i64)], d: usize) -> IntPoly {
    col.iter()
        .map(|&(i, c)| {
            let mut m = vec![0u16; d];
            m[i] = 1;
            (m, c)
        })
        .collect()
}

fn sym_of_map(f: &IntMat, src_dim: usize, k: usize) -> IntMat {
    let tgt = f.rows;
    let basis_t = sym_monomials(tgt, k);
    let index: HashMap<&Vec<u16>, usize> = basis_t.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let lin: Vec<IntPoly> = f.cols.iter().map(|c| ipoly_linear(c, tgt)).collect();
    let cols = sym_monomials(src_dim, k)
        .iter()
        .map(|m| {
            let mut acc: IntPoly = HashMap::from([(vec![0u16; tgt], 1)]);
            for (v, &a) in m.iter().enumerate() {
                for _ in 0..a {
                    acc = ipoly_mul(&acc, &lin[v]);
                }
            }
            acc.into_iter().map(|(mono, c)| (index[&mono], c)).collect()
        })
        .collect();
    IntMat::normalized(sym_dim(tgt, k), cols)
}

/// Cosimplicial finite abelian `p`-group truncated at level `N`.
#[derive(Clone, Debug)]
pub struct CosimplicialModule {
    levels: Vec<Ambient>,
    cofaces: Vec<Vec<Hom>>,
    codegens: Vec<Vec<Hom>>,
}

impl CosimplicialModule {
    pub fn new(levels: Vec<Ambient>, cofaces: Vec<Vec<Hom>>, codegens: Vec<Vec<Hom>>) -> Result<Self> {
        let c = CosimplicialModule { levels, cofaces, codegens };
        c.check_identities()?;
        Ok(c)
    }
    fn check_identities(&self) -> Result<()> {
        let n = self.levels.len();
        if self.cofaces.len() + 1 != n || self.codegens.len() + 1 != n {
            return invalid("cosimplicial data has inconsistent level count");
        }
        let fail = |s: String| Err(Error::Verification(format!("cosimplicial identity fails: {s}")));
        for m in 0..n.saturating_sub(2) {
            for j in 0..=m + 2 {
                for i in 0..j {
                    if self.cofaces[m + 1][j].compose(&self.cofaces[m][i])
                        != self.cofaces[m + 1][i].compose(&self.cofaces[m][j - 1])
                    {
                        return fail(format!("d^{j}d^{i} at level {m}"));
                    }
                }
            }
        }
        for m in 0..n - 1 {
            for j in 0..=m {
                for i in [j, j + 1] {
                    if self.codegens[m][j].compose(&self.cofaces[m][i]) != Hom::identity(&self.levels[m]) {
                        return fail(format!("s^{j}d^{i} at level {m}"));
                    }
                }
            }
        }
        Ok(())
    }
    pub fn levels(&self) -> usize {
        self.levels.len()
    }
    pub fn level(&self, m: usize) -> &Ambient {
        &self.levels[m]
    }
    pub fn coface(&self, m: usize, i: usize) -> &Hom {
        &self.cofaces[m][i]
    }
    pub fn differential(&self, m: usize) -> Hom {
        let mut acc = Hom::zero(&self.levels[m], &self.levels[m + 1]);
        for (i, f) in self.cofaces[m].iter().enumerate() {
            acc = acc.add(&f.scale(if i % 2 == 0 { 1 } else { -1 }));
        }
        acc
    }
    pub fn cocycles(&self, m: usize) -> Submodule {
        self.differential(m).kernel()
    }
    pub fn coboundaries(&self, m: usize) -> Submodule {
        if m == 0 {
            Submodule::zero(&self.levels[0])
        } else {
            self.differential(m - 1).image_all()
        }
    }
    /// `H^m` of the total complex; requires level `m+1`.
    pub fn cohomology(&self, m: usize) -> Result<Subquotient> {
        if m + 1 >= self.levels.len() {
            return invalid(format!("H^{m} needs level {}", m + 1));
        }
        Subquotient::new(&self.cocycles(m), &self.coboundaries(m))
    }
    /// Filtered total complex in degrees `0..=top`; `filt[m]` starts with the whole level.
    pub fn filtered(&self, filt: Vec<Vec<Submodule>>, jmin: i64) -> Result<FilteredComplex> {
        let top = filt.len() - 1;
        if top >= self.levels.len() {
            return invalid("filtration given beyond the last level");
        }
        let d = (0..top).map(|m| self.differential(m)).collect();
        FilteredComplex::new(self.levels[..=top].to_vec(), d, filt, jmin)
    }
}

/// Models of `F_q` concentrated in the degrees of `H^*`, up to level `n`.
/// A cochain complex over a field is quasi-isomorphic to its cohomology, so the
/// model is the direct sum of sphere cochains, one per basis vector of `H^k`.
pub fn dold_kan(cohomology_dims: &[usize], n: usize) -> Result<IntegralCosimplicial> {
    let mut acc: Option<IntegralCosimplicial> = None;
    for (k, &h) in cohomology_dims.iter().enumerate() {
        for _ in 0..h {
            let s = IntegralCosimplicial::sphere_cochains(k, n)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.direct_sum(&s)?,
            });
        }
    }
    acc.map_or_else(|| IntegralCosimplicial::sphere_cochains(n + 1, n), Ok)
}

/// `F_q` as an `F_p`-module.
pub fn field_ambient(f: &ExtensionField) -> Ambient {
    Ambient::uniform(f.p() as u64, 1, f.n() as usize)
}

/// Flattens a vector over `F_q` into `F_p` coordinates.
pub fn flatten(f: &ExtensionField, v: &[Fe]) -> Vec<u64> {
    v.iter().flat_map(|&x| f.coeffs(x).into_iter().map(|c| c as u64)).collect()
}

pub fn unflatten(f: &ExtensionField, v: &[u64]) -> Vec<Fe> {
    let n = f.n() as usize;
    v.chunks(n).map(|c| f.from_coeffs(&c.iter().map(|&x| x as u32).collect::<Vec<_>>())).collect()
}

/// A model `P^•` over `Z` together with its reductions `P ⊗ F_q` and `Sym^p P ⊗ F_q`.
#[derive(Clone, Debug)]
pub struct SymModel {
    pub p: u32,
    pub field: ExtensionField,
    pub integral: IntegralCosimplicial,
    pub integral_sym: IntegralCosimplicial,
    pub module: CosimplicialModule,
    pub sym: CosimplicialModule,
}

impl SymModel {
    pub fn new(integral: IntegralCosimplicial, field: &ExtensionField) -> Result<Self> {
        let p = field.p();
        let amb = field_ambient(field);
        let integral_sym = integral.sym(p as usize)?;
        Ok(SymModel {
            p,
            field: field.clone(),
            module: integral.tensor(&amb)?,
            sym: integral_sym.tensor(&amb)?,
            integral,
            integral_sym,
        })
    }

    /// `φ(x) = μ_p(∂^0 x, …, ∂^{i+1} x) ∈ Sym^p P^{i+1}` for a cocycle `x ∈ P^i`.
    pub fn phi(&self, i: usize, x: &[u64]) -> Result<Vec<u64>> {
        if i + 1 >= self.module.levels() {
            return invalid(format!("φ in degree {i} needs level {}", i + 1));
        }
        if !self.module.cocycles(i).contains(x) {
            return Err(Error::Precondition(format!("input is not a cocycle in degree {i}")));
        }
        let d = self.integral.dims()[i + 1];
        let n = self.field.n() as usize;
        let p = self.p as usize;
        if d == 0 {
            return Ok(Vec::new());
        }
        let names: Vec<String> = (0..d).map(|v| format!("e{v}")).collect();
        let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = FiniteRing::new(&RingSpec::monomial(self.p, n as u32, &names_ref, self.p + 1))?;
        let ring_index: HashMap<Vec<u16>, usize> = ring
            .monomial_exponents()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.iter().map(|&a| a as u16).collect(), i))
            .collect();
        let linear = |v: &[u64]| -> Elem {
            let mut e = ring.zero();
            for var in 0..d {
                let mut m = vec![0u16; d];
                m[var] = 1;
                let base = ring_index[&m] * n;
                for a in 0..n {
                    e[base + a] = v[var * n + a];
                }
            }
            e
        };
        let ys: Vec<Elem> = (0..=i + 1).map(|k| linear(&self.module.coface(i, k).apply(x))).collect();
        let val = mu(&ring, self.p as u64, &ys)?;
        let mut out = Vec::with_capacity(sym_dim(d, p) * n);
        for m in sym_monomials(d, p) {
            let base = ring_index[&m] * n;
            out.extend_from_slice(&val[base..base + n]);
        }
        Ok(out)
    }

    /// Bockstein of the Frobenius `x ↦ x^p`, computed through the integral model.
    pub fn beta_p0(&self, i: usize, x: &[u64]) -> Result<Vec<u64>> {
        if self.field.n() != 1 {
            return Err(Error::Unsupported("βP⁰ needs a Witt-vector lift for n > 1".into()));
        }
        if i + 1 >= self.module.levels() {
            return invalid(format!("βP⁰ in degree {i} needs level {}", i + 1));
        }
        if !self.module.cocycles(i).contains(x) {
            return Err(Error::Precondition(format!("input is not a cocycle in degree {i}")));
        }
        let p = self.p as usize;
        let d = self.integral.dims()[i];
        let lift = ipoly_linear(&x.iter().enumerate().map(|(v, &c)| (v, c as i64)).collect::<Vec<_>>(), d);
        let mut pw: IntPoly = HashMap::from([(vec![0u16; d], 1)]);
        for _ in 0..p {
            pw = ipoly_mul(&pw, &lift);
        }
        let v: Vec<i64> = sym_monomials(d, p).iter().map(|m| pw.get(m).copied().unwrap_or(0)).collect();
        let w = self.integral_sym.differential(i).apply(&v);
        let pi = p as i64;
        if w.iter().any(|c| c % pi != 0) {
            return Err(Error::Verification("lifted Frobenius image is not a cocycle mod p".into()));
        }
        Ok(w.iter().map(|c| (c / pi).rem_euclid(pi) as u64).collect())
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BetaP0Report {
    pub p: u32,
    pub k: usize,
    pub field: String,
    pub level_dims: Vec<usize>,
    pub sym_level_dims: Vec<usize>,
    pub sym_cohomology: String,
    pub beta_nonzero: bool,
    pub phi_nonzero: bool,
    /// `λ` with `[φ(ι)] = λ[βP⁰ι]`.
    pub scalar: Option<u64>,
    pub phi_cocycle: bool,
    pub phi_semilinear: Option<bool>,
}

/// `φ` and `βP⁰` on the tautological class of the Dold–Kan model of `F_p[−k]`;
/// Frobenius semilinearity of `φ` is checked over `F_{p^n}` when `n > 1`.
pub fn betap0_report(p: u32, k: usize, n: u32) -> Result<BetaP0Report> {
    if k == 0 {
        return invalid("βP⁰ vanishes in degree 0; take k ≥ 1");
    }
    let levels = k + 2;
    let fp = ExtensionField::new(p, 1)?;
    let model = SymModel::new(IntegralCosimplicial::sphere_cochains(k, levels)?, &fp)?;
    let iota = vec![1u64; 1];
    let h = model.sym.cohomology(k + 1)?;
    let beta = model.beta_p0(k, &iota)?;
    let phi = model.phi(k, &iota)?;
    let phi_cocycle = model.sym.cocycles(k + 1).contains(&phi);
    let bc = h.coords(&beta)?;
    let pc = h.coords(&phi)?;
    let scalar = if h.rank() == 1 && bc[0] != 0 {
        let inv = (1..p as u64).find(|&t| t * bc[0] % p as u64 == 1).unwrap();
        Some(pc[0] * inv % p as u64)
    } else {
        None
    };
    let phi_semilinear = if n > 1 {
        let fq = ExtensionField::new(p, n)?;
        let mq = SymModel::new(model.integral.clone(), &fq)?;
        let base = unflatten(&fq, &mq.phi(k, &flatten(&fq, &[1]))?);
        let mut ok = true;
        for e in fq.elements() {
            let lhs = mq.phi(k, &flatten(&fq, &[e]))?;
            let ep = fq.pow(e, p as u64);
            let rhs: Vec<Fe> = base.iter().map(|&c| fq.mul(ep, c)).collect();
            ok &= lhs == flatten(&fq, &rhs);
        }
        Some(ok)
    } else {
        None
    };
    Ok(BetaP0Report {
        p,
        k,
        field: format!("F_{}", (p as u64).pow(n.max(1))),
        level_dims: model.integral.dims().to_vec(),
        sym_level_dims: model.integral_sym.dims().to_vec(),
        sym_cohomology: h.group_type().to_string(),
        beta_nonzero: !h.is_zero_class(&beta),
        phi_nonzero: !h.is_zero_class(&phi),
        scalar,
        phi_cocycle,
        phi_semilinear,
    })
}

/// The worked examples of a first unstable differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FirstUnstableExample {
    /// `F_p[x]/x^{p+1}`, class `ι·x`.
    Truncated,
    /// `Z[ζ_p]/(1−ζ_p)^{p+1}`, class `ι·(1−ζ_p)`.
    Cyclotomic,
}

impl FirstUnstableExample {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "truncated" => Ok(Self::Truncated),
            "cyclotomic" => Ok(Self::Cyclotomic),
            _ => invalid(format!("unknown example {s:?}; expected truncated or cyclotomic")),
        }
    }
    pub fn ring_spec(self, p: u32) -> RingSpec {
        match self {
            Self::Truncated => RingSpec::monomial(p, 1, &["x"], p + 1),
            Self::Cyclotomic => RingSpec::cyclotomic(p, p + 1),
        }
    }
    pub fn label(self) -> &'static str {
        match self {
            Self::Truncated => "truncated",
            Self::Cyclotomic => "cyclotomic",
        }
    }
}

/// `𝔪`-valued cochains on the bar construction of `C_p`, additively and
/// multiplicatively (`1+𝔪` in discrete-log coordinates), with `𝔪`-adic filtrations.
#[derive(Clone, Debug)]
pub struct CochainsOnBC {
    pub p: usize,
    pub ring: FiniteRing,
    pub bar: IntegralCosimplicial,
    pub add_table: DlogTable<Elem>,
    pub mul_table: DlogTable<Elem>,
    pub additive: CosimplicialModule,
    pub multiplicative: CosimplicialModule,
    add_filt: Vec<Submodule>,
    mul_filt: Vec<Submodule>,
}

impl CochainsOnBC {
    pub fn new(ring: FiniteRing, p: usize, levels: usize) -> Result<Self> {
        let nil = ring.nilpotency();
        if nil > p + 1 {
            return Err(Error::Precondition(format!("𝔪^{} ≠ 0", p + 1)));
        }
        let canon = |x: &[u64]| ring.ideal_power(nil).reduce(x);
        let m_elems: Vec<Elem> = ring.ideal_elements(1).into_iter().map(|x| canon(&x)).collect();
        let add_table = DlogTable::new(ring.p(), &m_elems, &ring.zero(), |a, b| canon(&ring.add(a, b)))?;
        let mul_table = unit_group_module(&ring, None, 1, 1, nil)?.table;
        let filt_of = |table: &DlogTable<Elem>| -> Vec<Submodule> {
            (1..=nil.max(2) - 1)
                .map(|j| {
                    let gens = ring.ideal_elements(j).into_iter().map(|x| table.log(&canon(&x)).cloned().unwrap());
                    Submodule::span(table.ambient(), gens.collect::<Vec<_>>())
                })
                .collect()
        };
        let add_filt = filt_of(&add_table);
        let mul_filt = filt_of(&mul_table);
        let bar = IntegralCosimplicial::bar_cochains(p, levels)?;
        Ok(CochainsOnBC {
            p,
            additive: bar.tensor(add_table.ambient())?,
            multiplicative: bar.tensor(mul_table.ambient())?,
            bar,
            ring,
            add_table,
            mul_table,
            add_filt,
            mul_filt,
        })
    }

    fn canon(&self, x: &[u64]) -> Elem {
        self.ring.ideal_power(self.ring.nilpotency()).reduce(x)
    }
    fn points(&self, m: usize) -> usize {
        self.bar.dims()[m]
    }
    /// Ring values of an additive cochain, one per point.
    pub fn add_values(&self, m: usize, c: &[u64]) -> Vec<Elem> {
        let k = self.add_table.ambient().dim();
        (0..self.points(m))
            .map(|x| {
                let mut acc = self.ring.zero();
                for (b, &coef) in self.add_table.basis().iter().zip(&c[x * k..(x + 1) * k]) {
                    acc = self.ring.add(&acc, &self.ring.scale(b, coef as i64));
                }
                self.canon(&acc)
            })
            .collect()
    }
    pub fn add_cochain(&self, vals: &[Elem]) -> Result<Vec<u64>> {
        self.cochain(&self.add_table, vals)
    }
    /// Multiplicative cochain with values `1 + vals[x]`.
    pub fn mul_cochain(&self, vals: &[Elem]) -> Result<Vec<u64>> {
        self.cochain(&self.mul_table, vals)
    }
    fn cochain(&self, t: &DlogTable<Elem>, vals: &[Elem]) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for v in vals {
            let l = t.log(&self.canon(v)).ok_or_else(|| Error::Internal("value outside the ideal".into()))?;
            out.extend_from_slice(l);
        }
        Ok(out)
    }
    fn filtration(&self, filt: &[Submodule], amb: &Ambient, m: usize) -> Vec<Submodule> {
        let k = amb.dim();
        let lvl = amb.power(self.points(m));
        filt.iter()
            .map(|s| {
                let mut gens = Vec::new();
                for x in 0..self.points(m) {
                    for g in s.gens() {
                        let mut v = lvl.zero();
                        v[x * k..(x + 1) * k].copy_from_slice(&g);
                        gens.push(v);
                    }
                }
                Submodule::span(&lvl, gens)
            })
            .collect()
    }
    pub fn additive_ss(&self, top: usize) -> Result<SpectralSequence> {
        let f = (0..=top).map(|m| self.filtration(&self.add_filt, self.add_table.ambient(), m)).collect();
        SpectralSequence::new(self.additive.filtered(f, 1)?)
    }
    pub fn multiplicative_ss(&self, top: usize) -> Result<SpectralSequence> {
        let f = (0..=top).map(|m| self.filtration(&self.mul_filt, self.mul_table.ambient(), m)).collect();
        SpectralSequence::new(self.multiplicative.filtered(f, 1)?)
    }
    /// Pointwise `μ_p(∂^0 x, …, ∂^{i+1} x)` for an additive `i`-cochain.
    pub fn phi_values(&self, i: usize, x: &[u64]) -> Result<Vec<Elem>> {
        let faces: Vec<Vec<Elem>> =
            (0..=i + 1).map(|k| self.add_values(i + 1, &self.additive.coface(i, k).apply(x))).collect();
        (0..self.points(i + 1))
            .map(|pt| {
                let ys: Vec<Elem> = faces.iter().map(|f| f[pt].clone()).collect();
                mu(&self.ring, self.p as u64, &ys).map(|v| self.canon(&v))
            })
            .collect()
    }
    /// The tautological 1-cochain `g^a ↦ a·c`.
    pub fn tautological(&self, c: &[u64]) -> Result<Vec<u64>> {
        let vals: Vec<Elem> = (0..self.p).map(|a| self.canon(&self.ring.scale(c, a as i64))).collect();
        self.add_cochain(&vals)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassCheck {
    pub degree: usize,
    pub class: Vec<u64>,
    pub additive_d: Vec<u64>,
    pub multiplicative_d: Vec<u64>,
    pub phi: Vec<u64>,
    /// `d_{p−1,×}[exp x] = [T(d x + φ(x))]` in the multiplicative page.
    pub identity_holds: bool,
    /// The same identity on cochains, before passing to classes.
    pub cochain_identity_holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FirstUnstableReport {
    pub example: String,
    pub p: usize,
    pub ring: String,
    pub additive_group: String,
    pub unit_group: String,
    pub unit_quotient: String,
    pub comparison: ComparisonReport,
    pub classes: Vec<ClassCheck>,
    pub tautological: ClassCheck,
    pub all_additive_zero: bool,
    pub identity_holds: bool,
}

fn all_coords(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &o in orders {
        out = out.into_iter().flat_map(|v| (0..o).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

/// Compares `d_{p−1,×}` with `d_{p−1} + φ` on every `E_{p−1}^{i,1}` class, `i ≤ max_degree`.
pub fn verify_first_unstable(example: FirstUnstableExample, p: usize, max_degree: usize) -> Result<FirstUnstableReport> {
    let spec = example.ring_spec(p as u32);
    let ring = FiniteRing::new(&spec)?;
    let top = max_degree + 1;
    let data = CochainsOnBC::new(ring, p, top)?;
    let add = data.additive_ss(top)?;
    let mul = data.multiplicative_ss(top)?;
    let r = p - 1;
    let jt = p as i64;
    let comparison = compare_ss(&add, &mul, 0..top, 1..=p as i64, r);
    let check = |i: usize, x: &[u64]| -> Result<ClassCheck> {
        let class = add.entry_at(r, i, 1)?.coords(x)?;
        let additive_d = add.apply_differential(r, i, 1, x)?;
        let vals = data.add_values(i, x);
        let exp_vals: Vec<Elem> = vals
            .iter()
            .map(|v| trunc_exp(&data.ring, p as u64, v).map(|e| data.ring.sub(&e, &data.ring.one())))
            .collect::<Result<_>>()?;
        let ex = data.mul_cochain(&exp_vals)?;
        let multiplicative_d = mul.apply_differential(r, i, 1, &ex)?;
        let phi_vals = data.phi_values(i, x)?;
        let dx_vals = data.add_values(i + 1, &data.additive.differential(i).apply(x));
        let sum: Vec<Elem> = dx_vals.iter().zip(&phi_vals).map(|(a, b)| data.ring.add(a, b)).collect();
        let t_sum = data.mul_cochain(&sum)?;
        let tgt = mul.entry_at(r, i + 1, jt)?;
        let rhs = tgt.coords(&t_sum)?;
        let phi = tgt.coords(&data.mul_cochain(&phi_vals)?)?;
        Ok(ClassCheck {
            degree: i,
            class,
            identity_holds: rhs == multiplicative_d,
            cochain_identity_holds: data.multiplicative.differential(i).apply(&ex) == t_sum,
            additive_d,
            multiplicative_d,
            phi,
        })
    };
    let mut classes = Vec::new();
    for i in 0..=max_degree {
        let e = add.entry_at(r, i, 1)?;
        for coords in all_coords(e.orders()) {
            classes.push(check(i, &e.element(&coords))?);
        }
    }
    // x, resp. π = 1 − ζ_p
    let c = data.ring.basis(1);
    let tautological = check(1, &data.tautological(&c)?)?;
    let nil = data.ring.nilpotency();
    let unit_quotient = unit_group_module(&data.ring, None, 1, 1, p.min(nil))?.table.group_type();
    Ok(FirstUnstableReport {
        example: example.label().into(),
        p,
        ring: match &spec {
            RingSpec::Monomial { .. } => format!("F_{p}[x]/x^{}", p + 1),
            RingSpec::Cyclotomic { .. } => format!("Z[zeta_{p}]/(1-zeta_{p})^{}", p + 1),
        },
        additive_group: data.add_table.group_type().to_string(),
        unit_group: data.mul_table.group_type().to_string(),
        unit_quotient: unit_quotient.to_string(),
        comparison,
        all_additive_zero: classes.iter().all(|c| c.additive_d.iter().all(|&v| v == 0)),
        identity_holds: classes.iter().all(|c| c.identity_holds && c.cochain_identity_holds)
            && tautological.identity_holds,
        classes,
        tautological,
    })
}

/// `H^m` of the total complex of `P ⊗ A`.
pub fn cohomology_type(m: &CosimplicialModule, i: usize) -> Result<AbelianGroupType> {
    Ok(m.cohomology(i)?.group_type())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_levels_count_surjections() {
        let s = IntegralCosimplicial::sphere_cochains(1, 4).unwrap();
        assert_eq!(s.dims(), &[0, 1, 2, 3, 4]);
        assert_eq!(s.sym(3).unwrap().dims(), &[0, 1, 4, 10, 20]);
    }

    #[test]
    fn bar_cochains_compute_group_cohomology() {
        let b = IntegralCosimplicial::bar_cochains(3, 3).unwrap();
        let m = b.tensor(&Ambient::uniform(3, 1, 1)).unwrap();
        for i in 0..3 {
            assert_eq!(m.cohomology(i).unwrap().log_order(), 1);
        }
    }
}

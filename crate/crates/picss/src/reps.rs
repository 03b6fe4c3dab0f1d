//! Representations of `C_p` over `F_{p^n}`: the reduced regular
//! representation, its symmetric powers, Jordan types, and cohomology.

use crate::cohomology::{cyclic_cohomology, CohomologyGroup, CyclicModule};
use crate::error::{invalid, Error, Result};
use crate::fqlin::{power_ranks_fp, FqMat, SparseColumns};
use crate::field::{ExtensionField, Fe};
use crate::zmod::{Ambient, Hom, Submodule, Subquotient};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

pub const MAX_SYM_DIM: usize = 5000;

/// A representation of `C_p = ⟨g⟩`; `g` is stored by sparse columns.
#[derive(Clone, Debug)]
pub struct CpRep {
    field: ExtensionField,
    dim: usize,
    g: Vec<Vec<(usize, Fe)>>,
}

/// Multiset of Jordan block sizes, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JordanType(pub Vec<usize>);

impl JordanType {
    pub fn dim(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn count(&self, size: usize) -> usize {
        self.0.iter().filter(|&&b| b == size).count()
    }
    /// Blocks of size `< p`.
    pub fn non_free(&self, p: usize) -> Vec<usize> {
        self.0.iter().copied().filter(|&b| b < p).collect()
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut sizes: Vec<usize> = self.0.clone();
        sizes.dedup();
        for s in sizes {
            let c = self.count(s);
            parts.push(if c == 1 { s.to_string() } else { format!("{s}x{c}") });
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn sym_monomials(d: usize, deg: usize) -> Vec<Vec<u16>> {
    fn rec(out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>, i: usize, left: usize) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a as u16;
            rec(out, cur, i + 1, left - a);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut vec![0; d], 0, deg);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `dim Sym^i` of a `d`-dimensional space.
pub fn sym_dim(d: usize, i: usize) -> usize {
    if d == 0 {
        return (i == 0) as usize;
    }
    binomial((i + d - 1) as u64, (d - 1) as u64) as usize
}

type Poly = HashMap<Vec<u16>, Fe>;

fn poly_mul(f: &ExtensionField, a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = HashMap::with_capacity(a.len() * b.len().min(64));
    for (ma, &ca) in a {
        for (mb, &cb) in b {
            let m: Vec<u16> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = out.entry(m).or_insert(0);
            *e = f.add(*e, f.mul(ca, cb));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn poly_pow(f: &ExtensionField, a: &Poly, k: usize, d: usize) -> Poly {
    let mut acc: Poly = HashMap::from([(vec![0u16; d], 1)]);
    for _ in 0..k {
        acc = poly_mul(f, &acc, a);
    }
    acc
}

impl CpRep {
    /// `g` given by dense columns over the field.
    pub fn from_columns(field: &ExtensionField, cols: Vec<Vec<Fe>>) -> Result<Self> {
        let dim = cols.len();
        if cols.iter().any(|c| c.len() != dim) {
            return invalid("action matrix is not square");
        }
        let g = cols
            .into_iter()
            .map(|c| c.into_iter().enumerate().filter(|(_, x)| *x != 0).collect())
            .collect();
        let rep = CpRep { field: field.clone(), dim, g };
        rep.jordan_type()?;
        Ok(rep)
    }
    pub fn field(&self) -> &ExtensionField {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn p(&self) -> usize {
        self.field.p() as usize
    }
    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![0; self.dim];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(i, c) in &self.g[j] {
                out[i] = f.add(out[i], f.mul(x, c));
            }
        }
        out
    }
    pub fn dense(&self) -> FqMat {
        let mut m = FqMat::zero(self.dim, self.dim);
        for (j, col) in self.g.iter().enumerate() {
            for &(i, c) in col {
                m.set(i, j, c);
            }
        }
        m
    }
    pub fn direct_sum(&self, other: &CpRep) -> CpRep {
        let mut g = self.g.clone();
        for col in &other.g {
            g.push(col.iter().map(|&(i, c)| (i + self.dim, c)).collect());
        }
        CpRep { field: self.field.clone(), dim: self.dim + other.dim, g }
    }
    fn over_prime_field(&self) -> bool {
        let p = self.field.p();
        self.g.iter().all(|c| c.iter().all(|&(_, x)| x < p))
    }

    /// `rank (g−1)^k` for `k = 1..=p`.
    pub fn power_ranks(&self) -> Vec<usize> {
        let p = self.p();
        let f = &self.field;
        if self.over_prime_field() {
            let cols: SparseColumns = (0..self.dim)
                .map(|j| {
                    let mut col: Vec<(usize, u8)> = Vec::new();
                    let mut diag_done = false;
                    for &(i, c) in &self.g[j] {
                        let v = if i == j {
                            diag_done = true;
                            f.sub(c, 1)
                        } else {
                            c
                        };
                        if v != 0 {
                            col.push((i, v as u8));
                        }
                    }
                    if !diag_done {
                        col.push((j, (p - 1) as u8));
                    }
                    col
                })
                .collect();
            if let Some(r) = power_ranks_fp(p as u32, &cols, self.dim, p) {
                return r;
            }
        }
        let n = self.dense().sub(f, &FqMat::identity(self.dim));
        let mut acc = FqMat::identity(self.dim);
        (0..p)
            .map(|_| {
                acc = n.mul(f, &acc);
                acc.rank(f)
            })
            .collect()
    }

    /// Jordan type from the ranks of `(g−1)^k`; fails unless `(g−1)^p = 0`.
    pub fn jordan_type(&self) -> Result<JordanType> {
        let p = self.p();
        let ranks = self.power_ranks();
        if ranks.get(p - 1).copied().unwrap_or(0) != 0 {
            return Err(Error::InvalidInput("g is not unipotent of order dividing p".into()));
        }
        let r = |k: usize| if k == 0 { self.dim } else { ranks.get(k - 1).copied().unwrap_or(0) };
        let mut blocks = Vec::new();
        for size in 1..=p {
            let at_least = r(size - 1) - r(size);
            let at_least_next = r(size) - r(size + 1);
            for _ in 0..at_least - at_least_next {
                blocks.push(size);
            }
        }
        Ok(JordanType(blocks))
    }

    /// `Sym^i` with the monomial basis in lexicographic order.
    pub fn sym_power(&self, i: usize) -> Result<CpRep> {
        let d = self.dim;
        let dim = sym_dim(d, i);
        if dim > MAX_SYM_DIM {
            return Err(Error::TooLarge(format!("Sym^{i} of a {d}-dimensional representation has dimension {dim}")));
        }
        let f = &self.field;
        let basis = sym_monomials(d, i);
        let index: HashMap<&Vec<u16>, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let images: Vec<Poly> = (0..d)
            .map(|k| {
                self.g[k]
                    .iter()
                    .map(|&(l, c)| {
                        let mut m = vec![0u16; d];
                        m[l] = 1;
                        (m, c)
                    })
                    .collect()
            })
            .collect();
        let mut pow_cache: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut g = Vec::with_capacity(dim);
        for m in &basis {
            let mut acc: Poly = HashMap::from([(vec![0u16; d], 1)]);
            for (k, &a) in m.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let pk = pow_cache.entry((k, a)).or_insert_with(|| poly_pow(f, &images[k], a as usize, d)).clone();
                acc = poly_mul(f, &acc, &pk);
            }
            let mut col: Vec<(usize, Fe)> = acc.into_iter().map(|(mono, c)| (index[&mono], c)).collect();
            col.sort_unstable();
            g.push(col);
        }
        Ok(CpRep { field: f.clone(), dim, g })
    }

    /// The underlying `F_p`-module with its `C_p`-action.
    pub fn to_cyclic_module(&self) -> Result<CyclicModule> {
        let f = &self.field;
        let n = f.n() as usize;
        let p = f.p() as u64;
        let amb = Ambient::uniform(p, 1, self.dim * n);
        let mut cols = Vec::with_capacity(self.dim * n);
        for j in 0..self.dim {
            for a in 0..n {
                let ya = f.from_coeffs(&unit(n, a));
                let mut v = vec![0u64; self.dim * n];
                for &(i, c) in &self.g[j] {
                    for (b, &cb) in f.coeffs(f.mul(ya, c)).iter().enumerate() {
                        v[i * n + b] = cb as u64;
                    }
                }
                cols.push(v);
            }
        }
        CyclicModule::new(p, Hom::new(amb.clone(), amb, cols)?)
    }
    /// Encodes a field vector as an `F_p`-coordinate vector of [`CpRep::to_cyclic_module`].
    pub fn flatten(&self, v: &[Fe]) -> Vec<u64> {
        v.iter().flat_map(|&x| self.field.coeffs(x).into_iter().map(|c| c as u64)).collect()
    }
}

fn unit(n: usize, a: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[a] = 1;
    v
}

/// `ρ̄`: basis `ε_1..ε_{p−1}`, `g ε_i = ε_{i+1}`, `ε_p = −(ε_1+⋯+ε_{p−1})`.
pub fn reduced_regular_rep(p: u32, field: &ExtensionField) -> Result<CpRep> {
    if field.p() != p {
        return invalid(format!("field characteristic {} differs from p = {p}", field.p()));
    }
    let d = (p - 1) as usize;
    let minus_one = field.neg(1);
    let mut cols = vec![vec![0; d]; d];
    for (i, col) in cols.iter_mut().enumerate() {
        if i + 1 < d {
            col[i + 1] = 1;
        } else {
            col.iter_mut().for_each(|x| *x = minus_one);
        }
    }
    CpRep::from_columns(field, cols)
}

/// The regular representation `k[C_p]`.
pub fn regular_rep(p: u32, field: &ExtensionField) -> Result<CpRep> {
    let d = p as usize;
    let cols = (0..d).map(|i| unit(d, (i + 1) % d).into_iter().collect()).collect();
    CpRep::from_columns(field, cols)
}

/// Predicted Jordan type of `Sym^i ρ̄`: non-free part `{1}`, `{p−1}` or empty by
/// the residue of `i` mod `p`, free rank from the dimension.
pub fn af_expected(i: usize, p: usize) -> Result<JordanType> {
    let dim = sym_dim(p - 1, i);
    let non_free: Vec<usize> = match i % p {
        0 => vec![1],
        1 => vec![p - 1],
        _ => Vec::new(),
    };
    let rest = dim - non_free.iter().sum::<usize>();
    if rest % p != 0 {
        return Err(Error::Internal(format!("dimension {dim} of Sym^{i} leaves a non-multiple of {p}")));
    }
    let mut blocks = non_free;
    blocks.extend(std::iter::repeat(p).take(rest / p));
    blocks.sort_unstable();
    Ok(JordanType(blocks))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AfRow {
    pub i: usize,
    pub dim: usize,
    pub computed: String,
    pub expected: String,
    pub ok: bool,
}

/// Compares `jordan_type(Sym^i ρ̄)` with [`af_expected`] for `i ≤ max_i`.
/// The representation is defined over `F_p`, so ranks are computed there.
pub fn af_check(p: u32, max_i: usize) -> Result<Vec<AfRow>> {
    let f = ExtensionField::new(p, 1)?;
    let rho = reduced_regular_rep(p, &f)?;
    let idx: Vec<usize> = (0..=max_i).collect();
    let rows = crate::par::map(&idx, |&i| -> Result<AfRow> {
        let s = rho.sym_power(i)?;
        let jt = s.jordan_type()?;
        let ex = af_expected(i, p as usize)?;
        Ok(AfRow { i, dim: s.dim(), computed: jt.to_string(), expected: ex.to_string(), ok: jt == ex })
    });
    rows.into_iter().collect()
}

/// `(ε_1⋯ε_p)^k ∈ Sym^{pk} ρ̄` in the monomial basis.
pub fn norm_invariant(k: usize, p: u32, field: &ExtensionField) -> Result<Vec<Fe>> {
    let d = (p - 1) as usize;
    let f = field;
    let mut last: Poly = HashMap::new();
    for l in 0..d {
        let mut m = vec![0u16; d];
        m[l] = 1;
        last.insert(m, f.neg(1));
    }
    let mut prod: Poly = HashMap::from([(vec![k as u16; d], 1)]);
    prod = poly_mul(f, &prod, &poly_pow(f, &last, k, d));
    let basis = sym_monomials(d, p as usize * k);
    Ok(basis.iter().map(|m| prod.get(m).copied().unwrap_or(0)).collect())
}

/// `Ĥ⁰ = ker(g−1)/im(N)` of a cyclic module.
pub fn tate_h0(m: &CyclicModule) -> Result<Subquotient> {
    Subquotient::new(&m.g_minus_one().kernel(), &m.norm().image_all())
}

/// Cohomology of a representation; degree 0 is reported modulo transfers.
pub fn rep_cohomology(rep: &CpRep, degrees: std::ops::RangeInclusive<usize>) -> Result<Vec<CohomologyGroup>> {
    let m = rep.to_cyclic_module()?;
    let mut out = cyclic_cohomology(&m, degrees)?;
    for g in out.iter_mut() {
        if g.degree == 0 {
            g.group = tate_h0(&m)?;
        }
    }
    Ok(out)
}

/// Dimension over `F_q` of `H^s(C_p, Sym^j ρ̄)` (degree 0 mod transfers) read off
/// from the presentation `H^*(C_p,F_q)[u,v,v′]/(v² = v′² = vv′ = 0, av = 0, bv = av′)`,
/// `|u| = (0, p)`, `|v| = (0, 1)`, `|v′| = (1, 1)`, `|a| = (1, 0)`, `|b| = (2, 0)`.
pub fn presentation_dim(p: usize, j: usize, s: usize) -> usize {
    let mut basis: Vec<(usize, &str)> = Vec::new();
    // internal degree pk: u^k a^ε b^m
    if j % p == 0 {
        basis.push((s, if s % 2 == 0 { "u^k b^m" } else { "u^k a b^m" }));
    }
    // internal degree pk+1: v b^m (even s), v′ b^m (odd s); a v = 0 and a v′ = b v
    if j % p == 1 && p > 1 {
        basis.push((s, if s % 2 == 0 { "u^k v b^m" } else { "u^k v' b^m" }));
    }
    basis.len()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PresentationCheck {
    pub j: usize,
    pub s: usize,
    pub computed_dim: usize,
    pub predicted_dim: usize,
}

/// Computes `H^s(C_p, Sym^j ρ̄)` honestly and compares with [`presentation_dim`].
pub fn check_presentation(p: u32, field: &ExtensionField, jmax: usize, smax: usize) -> Result<Vec<PresentationCheck>> {
    let rho = reduced_regular_rep(p, field)?;
    let n = field.n();
    let mut out = Vec::new();
    for j in 0..=jmax {
        let s_rep = rho.sym_power(j)?;
        let h = rep_cohomology(&s_rep, 0..=smax)?;
        for g in h {
            let lo = g.group.log_order();
            if lo % n != 0 {
                return Err(Error::Verification(format!("H^{}(Sym^{j}) is not an F_q-vector space", g.degree)));
            }
            out.push(PresentationCheck {
                j,
                s: g.degree,
                computed_dim: (lo / n) as usize,
                predicted_dim: presentation_dim(p as usize, j, g.degree),
            });
        }
    }
    Ok(out)
}

/// Whether `(ε_1⋯ε_p)^k` spans `Ĥ⁰(Sym^{pk} ρ̄)` over `F_q`.
pub fn norm_invariant_generates(k: usize, p: u32, field: &ExtensionField) -> Result<bool> {
    let rho = reduced_regular_rep(p, field)?;
    let s = rho.sym_power(p as usize * k)?;
    let m = s.to_cyclic_module()?;
    let h0 = tate_h0(&m)?;
    let v = norm_invariant(k, p, field)?;
    let flat = s.flatten(&v);
    if !h0.top().contains(&flat) || h0.is_zero_class(&flat) {
        return Ok(false);
    }
    // F_q-span of the class
    let gens: Vec<Vec<u64>> = field
        .elements()
        .map(|c| s.flatten(&v.iter().map(|&x| field.mul(c, x)).collect::<Vec<_>>()))
        .collect();
    let span = Submodule::span(m.ambient(), gens).sum(h0.bottom());
    Ok(Subquotient::new(&span, h0.bottom())?.log_order() == h0.log_order())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_symmetric_powers() {
        let f = ExtensionField::new(3, 1).unwrap();
        let rho = reduced_regular_rep(3, &f).unwrap();
        assert_eq!(rho.jordan_type().unwrap(), JordanType(vec![2]));
        assert_eq!(rho.sym_power(3).unwrap().jordan_type().unwrap(), JordanType(vec![1, 3]));
        assert_eq!(rho.sym_power(4).unwrap().jordan_type().unwrap(), JordanType(vec![2, 3]));
    }
}

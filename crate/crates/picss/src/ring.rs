//! Finite commutative rings with a distinguished nilpotent ideal.
//!
//! A ring is a finite abelian `p`-group `⊕ Z/p^{e_j} b_j` with structure
//! constants `b_i b_j`. Supported presentations are monomial truncations over
//! `F_{p^n}` or `Z/p^k`, and `Z[ζ_p]/𝔪^m` in the basis `π^j`, `π = 1 − ζ_p`.

use crate::error::{invalid, Error, Result};
use crate::field::{ExtensionField, Fe};
use crate::zmod::{Ambient, Submodule};
use serde::{Deserialize, Serialize};

/// JSON description of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    /// `base[vars]/(monomials of total degree ≥ truncation)`, base `F_{p^n}` or `Z/p^k`.
    Monomial {
        p: u32,
        #[serde(default = "one")]
        n: u32,
        vars: Vec<String>,
        truncation: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
    },
    /// `Z[x]/(x^{p−1}+⋯+1)` modulo `𝔪^{idealPower}`, `𝔪 = (1 − x)`.
    Cyclotomic {
        p: u32,
        #[serde(rename = "idealPower")]
        ideal_power: u32,
    },
}

fn one() -> u32 {
    1
}

impl RingSpec {
    pub fn monomial(p: u32, n: u32, vars: &[&str], truncation: u32) -> Self {
        RingSpec::Monomial { p, n, vars: vars.iter().map(|s| s.to_string()).collect(), truncation, k: None }
    }
    pub fn cyclotomic(p: u32, ideal_power: u32) -> Self {
        RingSpec::Cyclotomic { p, ideal_power }
    }
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("ring spec: {e}")))
    }
    pub fn p(&self) -> u32 {
        match self {
            RingSpec::Monomial { p, .. } | RingSpec::Cyclotomic { p, .. } => *p,
        }
    }
}

pub type Elem = Vec<u64>;

#[derive(Clone, Debug)]
pub struct FiniteRing {
    spec: RingSpec,
    p: u64,
    amb: Ambient,
    one: Elem,
    /// `table[i * dim + j]` = sparse `b_i b_j`.
    table: Vec<Vec<(usize, u64)>>,
    names: Vec<String>,
    field: Option<ExtensionField>,
    /// `powers[k] = 𝔪^k`, ending with the zero ideal.
    powers: Vec<Submodule>,
    /// Exponent vectors of the monomial basis; empty for cyclotomic rings.
    monos: Vec<Vec<u32>>,
}

fn monomials(nvars: usize, trunc: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..trunc {
        let mut cur = vec![0u32; nvars];
        fill(&mut out, &mut cur, 0, deg);
    }
    out
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if i == cur.len() - 1 {
        cur[i] = left;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    for a in (0..=left).rev() {
        cur[i] = a;
        fill(out, cur, i + 1, left - a);
    }
    cur[i] = 0;
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn mono_name(vars: &[String], e: &[u32]) -> String {
    let mut s = String::new();
    for (v, &k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{k}")),
        }
    }
    s
}

impl FiniteRing {
    pub fn new(spec: &RingSpec) -> Result<Self> {
        match spec {
            RingSpec::Monomial { p, n, vars, truncation, k } => {
                Self::monomial(spec.clone(), *p, *n, vars, *truncation, *k)
            }
            RingSpec::Cyclotomic { p, ideal_power } => Self::cyclotomic(spec.clone(), *p, *ideal_power),
        }
    }

    fn monomial(spec: RingSpec, p: u32, n: u32, vars: &[String], trunc: u32, k: Option<u32>) -> Result<Self> {
        if trunc == 0 {
            return invalid("truncation degree must be positive");
        }
        if k.is_some() && n != 1 {
            return Err(Error::Unsupported("Z/p^k base requires n = 1".into()));
        }
        let field = ExtensionField::new(p, n)?;
        let kk = k.unwrap_or(1).max(1);
        let monos = monomials(vars.len(), trunc);
        let nm = monos.len();
        let nb = nm * n as usize;
        if nb > 4096 {
            return Err(Error::TooLarge(format!("ring of additive rank {nb}")));
        }
        let amb = Ambient::uniform(p as u64, kk, nb);
        let index = |e: &[u32]| monos.iter().position(|m| m == e);
        let mut table = vec![Vec::new(); nb * nb];
        for (i, mi) in monos.iter().enumerate() {
            for (j, mj) in monos.iter().enumerate() {
                let prod: Vec<u32> = mi.iter().zip(mj).map(|(a, b)| a + b).collect();
                let Some(t) = index(&prod) else { continue };
                for a in 0..n as usize {
                    for b in 0..n as usize {
                        let ya = field.from_coeffs(&unit_vec(n as usize, a));
                        let yb = field.from_coeffs(&unit_vec(n as usize, b));
                        let c = field.coeffs(field.mul(ya, yb));
                        let entry = &mut table[(i * n as usize + a) * nb + j * n as usize + b];
                        for (d, &cd) in c.iter().enumerate() {
                            if cd != 0 {
                                entry.push((t * n as usize + d, cd as u64));
                            }
                        }
                    }
                }
            }
        }
        let mut one = amb.zero();
        one[0] = 1;
        let mut names = Vec::with_capacity(nb);
        for m in &monos {
            for a in 0..n {
                let mn = mono_name(vars, m);
                let y = match a {
                    0 => String::new(),
                    1 => "y".into(),
                    _ => format!("y^{a}"),
                };
                let nm = format!("{y}{mn}");
                names.push(if nm.is_empty() { "1".into() } else { nm });
            }
        }
        let gens: Vec<Elem> = (0..nb).filter(|&b| b / n as usize != 0).map(|b| amb.unit(b)).collect();
        let mut ring = FiniteRing {
            spec,
            p: p as u64,
            amb,
            one,
            table,
            names,
            field: (k.is_none()).then_some(field),
            powers: Vec::new(),
            monos,
        };
        ring.set_ideal(gens)?;
        Ok(ring)
    }

    fn cyclotomic(spec: RingSpec, p: u32, m: u32) -> Result<Self> {
        if !crate::field::is_prime(p as u64) || p < 3 {
            return Err(Error::Unsupported("cyclotomic rings need an odd prime".into()));
        }
        if m == 0 {
            return invalid("ideal power must be positive");
        }
        let d = (p - 1) as usize;
        let (q, r) = (m / (p - 1), (m % (p - 1)) as usize);
        let exps: Vec<u32> = (0..d).map(|j| if j < r { q + 1 } else { q }).collect();
        let emax = q + 1;
        let big = (p as u64).pow(emax);
        // π^{p−1} = −Σ_{k=1}^{p−1} (−1)^{k−1} C(p,k) π^{k−1}
        let rel: Vec<u64> = (1..p as u64)
            .map(|k| {
                let c = binom(p as u64, k) % big;
                let signed = if k % 2 == 1 { big - c } else { c };
                signed % big
            })
            .collect();
        // power coefficients π^k for k < 2d−1
        let mut pows: Vec<Vec<u64>> = Vec::new();
        for k in 0..(2 * d - 1) {
            let v = if k < d {
                unit_vec(d, k).into_iter().map(|x| x as u64).collect()
            } else {
                let prev: &Vec<u64> = &pows[k - 1];
                let mut v = vec![0u64; d];
                for j in 0..d - 1 {
                    v[j + 1] = prev[j];
                }
                let top = prev[d - 1];
                for j in 0..d {
                    v[j] = (v[j] + top * rel[j]) % big;
                }
                v
            };
            pows.push(v);
        }
        let amb = Ambient::new(p as u64, exps);
        let mut table = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut v = pows[i + j].clone();
                amb.reduce(&mut v);
                table[i * d + j] = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(t, &c)| (t, c)).collect();
            }
        }
        let mut one = amb.zero();
        amb.add_assign_scaled(&mut one, &amb.unit(0), 1);
        let names = (0..d)
            .map(|j| match j {
                0 => "1".to_string(),
                1 => "pi".to_string(),
                _ => format!("pi^{j}"),
            })
            .collect();
        let mut pe = amb.zero();
        pe[0] = p as u64 % amb.coord_modulus(0).max(1);
        let mut gens = vec![pe];
        gens.extend((1..d).map(|j| amb.unit(j)));
        let mut ring = FiniteRing { spec, p: p as u64, amb, one, table, names, field: None, powers: Vec::new(), monos: Vec::new() };
        ring.set_ideal(gens)?;
        Ok(ring)
    }

    fn set_ideal(&mut self, gens: Vec<Elem>) -> Result<()> {
        let m = self.ideal_generated(&gens);
        let mut powers = vec![Submodule::full(&self.amb), m.clone()];
        while !powers.last().unwrap().is_zero() {
            let prev = powers.last().unwrap();
            if powers.len() > self.amb.log_order() as usize + 2 {
                return Err(Error::InvalidInput("distinguished ideal is not nilpotent".into()));
            }
            let mut prods = Vec::new();
            for x in prev.gens() {
                for y in m.gens() {
                    prods.push(self.mul(&x, &y));
                }
            }
            let next = Submodule::span(&self.amb, prods);
            if next == *prev {
                return Err(Error::InvalidInput("distinguished ideal is not nilpotent".into()));
            }
            powers.push(next);
        }
        self.powers = powers;
        Ok(())
    }

    pub fn ideal_generated(&self, gens: &[Elem]) -> Submodule {
        let mut all = Vec::new();
        for g in gens {
            for b in 0..self.amb.dim() {
                all.push(self.mul(g, &self.amb.unit(b)));
            }
        }
        Submodule::span(&self.amb, all)
    }

    /// Exponents of monomial `m`; basis index `m·n + a` is `y^a` times it.
    pub fn monomial_exponents(&self) -> &[Vec<u32>] {
        &self.monos
    }
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }
    pub fn dim(&self) -> usize {
        self.amb.dim()
    }
    /// `|R|`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.amb.log_order())
    }
    /// The coefficient field when the base is `F_{p^n}`.
    pub fn field(&self) -> Option<&ExtensionField> {
        self.field.as_ref()
    }
    pub fn basis_names(&self) -> &[String] {
        &self.names
    }
    pub fn zero(&self) -> Elem {
        self.amb.zero()
    }
    pub fn one(&self) -> Elem {
        self.one.clone()
    }
    pub fn basis(&self, j: usize) -> Elem {
        self.amb.unit(j)
    }
    pub fn from_int(&self, k: i64) -> Elem {
        self.amb.scale(&self.one, k)
    }
    /// Embeds a coefficient-field scalar.
    pub fn scalar(&self, c: Fe) -> Result<Elem> {
        let f = self.field.as_ref().ok_or_else(|| Error::Unsupported("ring has no coefficient field".into()))?;
        let mut v = self.zero();
        for (a, &ca) in f.coeffs(c).iter().enumerate() {
            v[a] = ca as u64;
        }
        Ok(v)
    }
    pub fn add(&self, a: &[u64], b: &[u64]) -> Elem {
        self.amb.add(a, b)
    }
    pub fn sub(&self, a: &[u64], b: &[u64]) -> Elem {
        self.amb.sub(a, b)
    }
    pub fn neg(&self, a: &[u64]) -> Elem {
        self.amb.neg(a)
    }
    pub fn scale(&self, a: &[u64], k: i64) -> Elem {
        self.amb.scale(a, k)
    }
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Elem {
        let d = self.dim();
        let mut acc = vec![0u64; d];
        let big = self.p.pow(self.amb.exponent());
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = (ai * bj) % big;
                for &(t, s) in &self.table[i * d + j] {
                    acc[t] = (acc[t] + c * s) % big;
                }
            }
        }
        self.amb.reduce(&mut acc);
        acc
    }
    pub fn pow(&self, a: &[u64], k: u64) -> Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }
    pub fn is_zero(&self, a: &[u64]) -> bool {
        Ambient::is_zero(a)
    }
    /// `𝔪^k` (`k = 0` gives the whole ring).
    pub fn ideal_power(&self, k: usize) -> &Submodule {
        self.powers.get(k).unwrap_or_else(|| self.powers.last().unwrap())
    }
    pub fn maximal_ideal(&self) -> &Submodule {
        self.ideal_power(1)
    }
    /// Least `k` with `𝔪^k = 0`.
    pub fn nilpotency(&self) -> usize {
        self.powers.len() - 1
    }
    pub fn in_ideal(&self, a: &[u64]) -> bool {
        self.maximal_ideal().contains(a)
    }
    /// Largest `k` with `a ∈ 𝔪^k` (`nilpotency()` for zero).
    pub fn m_adic_valuation(&self, a: &[u64]) -> usize {
        (0..=self.nilpotency()).rev().find(|&k| self.ideal_power(k).contains(a)).unwrap_or(0)
    }
    /// `dim_{F_p}` of `𝔪^j/𝔪^{j+1}` as a log-order.
    pub fn graded_log_order(&self, j: usize) -> u32 {
        self.ideal_power(j).log_order() - self.ideal_power(j + 1).log_order()
    }
    /// Multiplicative inverse of a unit (`None` for nonunits).
    pub fn inverse(&self, a: &[u64]) -> Option<Elem> {
        if self.in_ideal(a) {
            return None;
        }
        // a = c(1 − x) with c a residue-field lift; Newton iteration on b ↦ b(2 − ab)
        let mut b = self.residue_inverse_lift(a)?;
        for _ in 0..=self.nilpotency() + self.amb.exponent() as usize + 1 {
            let ab = self.mul(a, &b);
            b = self.mul(&b, &self.sub(&self.from_int(2), &ab));
        }
        (self.mul(a, &b) == self.one()).then_some(b)
    }
    fn residue_inverse_lift(&self, a: &[u64]) -> Option<Elem> {
        match &self.field {
            Some(f) => {
                let c = self.residue(a);
                Some(self.scalar(f.inv(c)?).ok()?)
            }
            None => {
                let c0 = a[0] % self.p;
                let inv = (1..self.p).find(|&i| (i * c0) % self.p == 1)?;
                Some(self.from_int(inv as i64))
            }
        }
    }
    /// Residue class in `R/𝔪` (as a coefficient-field element, or in `F_p`).
    pub fn residue(&self, a: &[u64]) -> Fe {
        match &self.field {
            Some(f) => {
                let n = f.n() as usize;
                let c: Vec<u32> = a[..n].iter().map(|&x| (x % self.p) as u32).collect();
                f.from_coeffs(&c)
            }
            None => (a[0] % self.p) as Fe,
        }
    }
    /// Enumerates all elements (small rings only).
    pub fn elements(&self) -> Vec<Elem> {
        self.amb.elements()
    }
    /// Enumerates `I` for an ideal given as a submodule.
    pub fn ideal_elements(&self, k: usize) -> Vec<Elem> {
        self.ideal_power(k).elements()
    }
    pub fn format(&self, a: &[u64]) -> String {
        let mut terms = Vec::new();
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let nm = &self.names[j];
            terms.push(match (c, nm.as_str()) {
                (_, "1") => c.to_string(),
                (1, _) => nm.clone(),
                _ => format!("{c}{nm}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn unit_vec(n: usize, a: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[a] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_ring_sizes() {
        let r = FiniteRing::new(&RingSpec::monomial(3, 1, &["x"], 4)).unwrap();
        assert_eq!(r.order(), 81);
        assert_eq!(r.maximal_ideal().order(), 27);
        assert_eq!(r.nilpotency(), 4);
    }

    #[test]
    fn cyclotomic_p_in_m_squared() {
        let r = FiniteRing::new(&RingSpec::cyclotomic(3, 4)).unwrap();
        let three = r.from_int(3);
        assert!(r.ideal_power(2).contains(&three));
        assert!(!r.ideal_power(3).contains(&three));
        assert_eq!(r.nilpotency(), 4);
    }

    #[test]
    fn ring_spec_json_roundtrip() {
        let s = RingSpec::parse(r#"{"kind":"monomial","p":3,"n":1,"vars":["x"],"truncation":4}"#).unwrap();
        assert_eq!(s, RingSpec::monomial(3, 1, &["x"], 4));
        let c = RingSpec::parse(r#"{"kind":"cyclotomic","p":3,"idealPower":4}"#).unwrap();
        assert_eq!(c, RingSpec::cyclotomic(3, 4));
    }
}

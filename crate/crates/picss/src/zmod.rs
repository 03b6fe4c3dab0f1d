//! Finite abelian `l`-groups `A = ⊕ Z/l^{e_j}` and their subgroups.
//!
//! Vectors are coordinate lists reduced into `[0, l^{e_j})`. A subgroup is
//! stored as a Howell basis over `Z/l^E` (`E = max e_j`) of its preimage in
//! `(Z/l^E)^N`, so it always contains the relations `l^{e_j} b_j`. Reduction
//! against a Howell basis yields canonical coset representatives.

use crate::abelian::AbelianGroupType;
use crate::error::{Error, Result};

fn valuation(x: u64, l: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    let mut y = x;
    while y % l == 0 {
        y /= l;
        v += 1;
    }
    v
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (m as i128, a as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    debug_assert_eq!(r, 1, "{a} not a unit mod {m}");
    t.rem_euclid(m as i128) as u64
}

/// The ambient group `⊕ Z/l^{e_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    l: u64,
    exps: Vec<u32>,
    e: u32,
    modulus: u64,
}

impl Ambient {
    pub fn new(l: u64, exps: Vec<u32>) -> Self {
        let e = exps.iter().copied().max().unwrap_or(1).max(1);
        let modulus = l.pow(e);
        assert!(modulus < (1u64 << 31), "modulus {l}^{e} too large");
        Ambient { l, exps, e, modulus }
    }
    /// `(Z/l^e)^n`.
    pub fn uniform(l: u64, e: u32, n: usize) -> Self {
        Self::new(l, vec![e; n])
    }
    pub fn l(&self) -> u64 {
        self.l
    }
    pub fn dim(&self) -> usize {
        self.exps.len()
    }
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
    pub fn exponent(&self) -> u32 {
        self.e
    }
    /// `log_l |A|`.
    pub fn log_order(&self) -> u32 {
        self.exps.iter().sum()
    }
    pub fn coord_modulus(&self, j: usize) -> u64 {
        self.l.pow(self.exps[j])
    }
    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }
    pub fn unit(&self, j: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[j] = 1 % self.coord_modulus(j);
        v
    }
    pub fn reduce(&self, v: &mut [u64]) {
        for (j, x) in v.iter_mut().enumerate() {
            *x %= self.coord_modulus(j);
        }
    }
    pub fn from_ints(&self, v: &[i64]) -> Vec<u64> {
        v.iter()
            .enumerate()
            .map(|(j, &x)| x.rem_euclid(self.coord_modulus(j) as i64) as u64)
            .collect()
    }
    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(j, (x, y))| (x + y) % self.coord_modulus(j))
            .collect()
    }
    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(j, (x, y))| {
                let m = self.coord_modulus(j);
                (x + m - y % m) % m
            })
            .collect()
    }
    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        self.sub(&self.zero(), a)
    }
    pub fn scale(&self, a: &[u64], c: i64) -> Vec<u64> {
        a.iter()
            .enumerate()
            .map(|(j, &x)| {
                let m = self.coord_modulus(j);
                (x * (c.rem_euclid(m as i64) as u64)) % m
            })
            .collect()
    }
    pub fn add_assign_scaled(&self, acc: &mut [u64], a: &[u64], c: u64) {
        for (j, (x, y)) in acc.iter_mut().zip(a).enumerate() {
            let m = self.coord_modulus(j);
            *x = (*x + (y * (c % m)) % m) % m;
        }
    }
    pub fn is_zero(v: &[u64]) -> bool {
        v.iter().all(|&x| x == 0)
    }
    /// Additive order of a vector.
    pub fn order_of(&self, v: &[u64]) -> u64 {
        let mut o = 1;
        for (j, &x) in v.iter().enumerate() {
            let ej = self.exps[j];
            let vx = valuation(x, self.l, ej);
            o = o.max(self.l.pow(ej - vx.min(ej)));
        }
        o
    }
    /// Direct sum of ambients.
    pub fn concat(parts: &[&Ambient]) -> Ambient {
        let l = parts.first().map(|a| a.l).unwrap_or(2);
        let mut exps = Vec::new();
        for a in parts {
            assert_eq!(a.l, l);
            exps.extend_from_slice(&a.exps);
        }
        Ambient::new(l, exps)
    }
    /// `k` copies of `self`.
    pub fn power(&self, k: usize) -> Ambient {
        let mut exps = Vec::with_capacity(self.dim() * k);
        for _ in 0..k {
            exps.extend_from_slice(&self.exps);
        }
        Ambient::new(self.l, exps)
    }
    fn relations(&self, e: u32) -> Vec<Vec<u64>> {
        let m = self.l.pow(e);
        (0..self.dim())
            .filter(|&j| self.exps[j] < e)
            .map(|j| {
                let mut v = vec![0; self.dim()];
                v[j] = self.l.pow(self.exps[j]) % m;
                v
            })
            .collect()
    }
    /// Enumerates every element (use only for small groups).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![self.zero()];
        for j in 0..self.dim() {
            let m = self.coord_modulus(j);
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for v in &out {
                for c in 0..m {
                    let mut w = v.clone();
                    w[j] = c;
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    pivot: usize,
    val: u32,
    v: Vec<u64>,
}

/// Howell basis over `Z/l^e` of the span of `gens`.
fn howell(l: u64, e: u32, n: usize, gens: Vec<Vec<u64>>) -> Vec<Row> {
    let m = l.pow(e);
    let mut work: Vec<Vec<u64>> = gens
        .into_iter()
        .map(|mut g| {
            g.iter_mut().for_each(|x| *x %= m);
            g
        })
        .filter(|g| !Ambient::is_zero(g))
        .collect();
    let mut rows: Vec<Row> = Vec::new();
    for col in 0..n {
        if work.is_empty() {
            break;
        }
        let mut best: Option<(usize, u32)> = None;
        for (k, w) in work.iter().enumerate() {
            let v = valuation(w[col], l, e);
            if v < e && best.map_or(true, |(_, bv)| v < bv) {
                best = Some((k, v));
                if v == 0 {
                    break;
                }
            }
        }
        let Some((k, v)) = best else { continue };
        let mut piv = work.swap_remove(k);
        let lv = l.pow(v);
        let unit = unit_fix(piv[col] / lv, m);
        for x in piv.iter_mut() {
            *x = (*x * unit) % m;
        }
        debug_assert_eq!(piv[col], lv);
        for w in work.iter_mut() {
            if w[col] != 0 {
                let c = w[col] / lv;
                for (x, y) in w.iter_mut().zip(&piv) {
                    *x = (*x + m - (c * y) % m) % m;
                }
            }
        }
        if v > 0 {
            let s = l.pow(e - v);
            let extra: Vec<u64> = piv.iter().map(|x| (x * s) % m).collect();
            if !Ambient::is_zero(&extra) {
                work.push(extra);
            }
        }
        work.retain(|w| !Ambient::is_zero(w));
        rows.push(Row { pivot: col, val: v, v: piv });
    }
    // back-substitution: entries above pivots reduced into [0, l^val)
    for i in (0..rows.len()).rev() {
        for k in i + 1..rows.len() {
            let (c, lv) = (rows[k].pivot, l.pow(rows[k].val));
            let q = rows[i].v[c] / lv;
            if q != 0 {
                let rk = rows[k].v.clone();
                for (x, y) in rows[i].v.iter_mut().zip(&rk) {
                    *x = (*x + m - (q * y) % m) % m;
                }
            }
        }
    }
    rows
}

/// Inverse of `u` modulo `m`; `u` is prime to `l`.
fn unit_fix(u: u64, m: u64) -> u64 {
    inv_mod(u % m, m)
}

/// Reduces `x` against Howell rows; returns remainder and quotients.
fn reduce_rows(rows: &[Row], l: u64, e: u32, x: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let m = l.pow(e);
    let mut r: Vec<u64> = x.iter().map(|v| v % m).collect();
    let mut qs = vec![0; rows.len()];
    for (i, row) in rows.iter().enumerate() {
        let lv = l.pow(row.val);
        let q = r[row.pivot] / lv;
        if q != 0 {
            qs[i] = q;
            for (a, b) in r.iter_mut().zip(&row.v) {
                *a = (*a + m - (q * b) % m) % m;
            }
        }
    }
    (r, qs)
}

/// A subgroup of an [`Ambient`].
#[derive(Clone, Debug)]
pub struct Submodule {
    amb: Ambient,
    rows: Vec<Row>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.amb == other.amb && self.rows == other.rows
    }
}
impl Eq for Submodule {}

impl Submodule {
    pub fn span(amb: &Ambient, gens: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut all: Vec<Vec<u64>> = gens.into_iter().collect();
        all.extend(amb.relations(amb.e));
        let rows = howell(amb.l, amb.e, amb.dim(), all);
        Submodule { amb: amb.clone(), rows }
    }
    pub fn zero(amb: &Ambient) -> Self {
        Self::span(amb, std::iter::empty())
    }
    pub fn full(amb: &Ambient) -> Self {
        Self::span(amb, (0..amb.dim()).map(|j| amb.unit(j)))
    }
    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }
    /// Canonical representative of `x` modulo this subgroup.
    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        let mut r = reduce_rows(&self.rows, self.amb.l, self.amb.e, x).0;
        self.amb.reduce(&mut r);
        r
    }
    pub fn contains(&self, x: &[u64]) -> bool {
        Ambient::is_zero(&self.reduce(x))
    }
    /// `log_l |S|`.
    pub fn log_order(&self) -> u32 {
        let total: u32 = self.rows.iter().map(|r| self.amb.e - r.val).sum();
        total - (self.amb.dim() as u32 * self.amb.e - self.amb.log_order())
    }
    pub fn order(&self) -> u64 {
        self.amb.l.pow(self.log_order())
    }
    pub fn is_zero(&self) -> bool {
        self.log_order() == 0
    }
    /// Generators (Howell rows that are nonzero in the ambient).
    pub fn gens(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut v = r.v.clone();
                self.amb.reduce(&mut v);
                v
            })
            .filter(|v| !Ambient::is_zero(v))
            .collect()
    }
    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.gens().iter().all(|g| other.contains(g))
    }
    pub fn sum(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.amb, other.amb);
        Submodule::span(&self.amb, self.gens().into_iter().chain(other.gens()))
    }
    pub fn intersect(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.amb, other.amb);
        let n = self.amb.dim();
        let e = self.amb.e;
        let mut rows = Vec::new();
        for g in self.gens() {
            let mut r = g.clone();
            r.extend_from_slice(&g);
            rows.push(r);
        }
        for g in other.gens().into_iter().chain(self.amb.relations(e)) {
            let mut r = g;
            r.extend(std::iter::repeat(0).take(n));
            rows.push(r);
        }
        let h = howell(self.amb.l, e, 2 * n, rows);
        let gens = h.into_iter().filter(|r| r.pivot >= n).map(|r| r.v[n..].to_vec());
        Submodule::span(&self.amb, gens)
    }
    /// Elements of small subgroups.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let gens = self.gens();
        let mut seen = std::collections::HashSet::new();
        let mut out = vec![self.amb.zero()];
        seen.insert(self.amb.zero());
        let mut i = 0;
        while i < out.len() {
            let x = out[i].clone();
            for g in &gens {
                let y = self.amb.add(&x, g);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }
    /// Abelian group type of `self / sub`.
    pub fn quotient_type(&self, sub: &Submodule) -> Result<AbelianGroupType> {
        Ok(Subquotient::new(self, sub)?.group_type())
    }
}

/// A homomorphism between ambients, stored by the images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub src: Ambient,
    pub tgt: Ambient,
    pub cols: Vec<Vec<u64>>,
}

impl Hom {
    pub fn new(src: Ambient, tgt: Ambient, mut cols: Vec<Vec<u64>>) -> Result<Self> {
        if cols.len() != src.dim() || cols.iter().any(|c| c.len() != tgt.dim()) {
            return Err(Error::Internal("homomorphism shape mismatch".into()));
        }
        for c in cols.iter_mut() {
            tgt.reduce(c);
        }
        let h = Hom { src, tgt, cols };
        for j in 0..h.src.dim() {
            let ord = h.src.coord_modulus(j);
            let img = h.tgt.scale(&h.cols[j], ord as i64);
            if !Ambient::is_zero(&img) {
                return Err(Error::Internal(format!("basis vector {j} of order {ord} has image of larger order")));
            }
        }
        Ok(h)
    }
    pub fn from_fn(src: &Ambient, tgt: &Ambient, f: impl Fn(&[u64]) -> Vec<u64>) -> Result<Self> {
        let cols = (0..src.dim()).map(|j| f(&src.unit(j))).collect();
        Hom::new(src.clone(), tgt.clone(), cols)
    }
    pub fn zero(src: &Ambient, tgt: &Ambient) -> Self {
        Hom { src: src.clone(), tgt: tgt.clone(), cols: vec![tgt.zero(); src.dim()] }
    }
    pub fn identity(a: &Ambient) -> Self {
        Hom { src: a.clone(), tgt: a.clone(), cols: (0..a.dim()).map(|j| a.unit(j)).collect() }
    }
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut acc = self.tgt.zero();
        for (j, &c) in x.iter().enumerate() {
            if c != 0 {
                self.tgt.add_assign_scaled(&mut acc, &self.cols[j], c);
            }
        }
        acc
    }
    /// `self ∘ other`.
    pub fn compose(&self, other: &Hom) -> Hom {
        assert_eq!(other.tgt, self.src);
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Hom { src: other.src.clone(), tgt: self.tgt.clone(), cols }
    }
    pub fn add(&self, other: &Hom) -> Hom {
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| self.tgt.add(a, b)).collect();
        Hom { src: self.src.clone(), tgt: self.tgt.clone(), cols }
    }
    pub fn scale(&self, c: i64) -> Hom {
        let cols = self.cols.iter().map(|a| self.tgt.scale(a, c)).collect();
        Hom { src: self.src.clone(), tgt: self.tgt.clone(), cols }
    }
    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| Ambient::is_zero(c))
    }
    pub fn image(&self, s: &Submodule) -> Submodule {
        Submodule::span(&self.tgt, s.gens().iter().map(|g| self.apply(g)))
    }
    pub fn image_all(&self) -> Submodule {
        Submodule::span(&self.tgt, self.cols.iter().cloned())
    }
    /// `{x : self(x) ∈ t}`.
    pub fn preimage(&self, t: &Submodule) -> Submodule {
        assert_eq!(t.amb, self.tgt);
        let (nt, ns) = (self.tgt.dim(), self.src.dim());
        let e = self.src.e.max(self.tgt.e);
        let mut rows = Vec::with_capacity(ns + t.rows.len());
        for j in 0..ns {
            let mut r = self.cols[j].clone();
            r.extend(self.src.unit(j));
            rows.push(r);
        }
        for g in t.gens().into_iter().chain(self.tgt.relations(e)) {
            let mut r = g;
            r.extend(std::iter::repeat(0).take(ns));
            rows.push(r);
        }
        let h = howell(self.src.l, e, nt + ns, rows);
        let gens = h.into_iter().filter(|r| r.pivot >= nt).map(|r| r.v[nt..].to_vec());
        Submodule::span(&self.src, gens)
    }
    pub fn kernel(&self) -> Submodule {
        self.preimage(&Submodule::zero(&self.tgt))
    }
}

/// Smith form data of a relation matrix over `Z/l^e`.
struct Smith {
    diag_val: Vec<u32>,
    q: Vec<Vec<u64>>,
    qinv: Vec<Vec<u64>>,
}

fn smith(l: u64, e: u32, mut a: Vec<Vec<u64>>, r: usize) -> Smith {
    let m = l.pow(e);
    let rows = a.len();
    let mut q: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect();
    let mut qinv = q.clone();
    let mut diag_val = vec![e; r];
    let mut t = 0;
    while t < rows.min(r) {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in t..rows {
            for j in t..r {
                let v = valuation(a[i][j], l, e);
                if v < e && best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((bi, bj, v)) = best else { break };
        a.swap(t, bi);
        if bj != t {
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in q.iter_mut() {
                row.swap(t, bj);
            }
            qinv.swap(t, bj);
        }
        let lv = l.pow(v);
        let unit = unit_fix(a[t][t] / lv, m);
        for x in a[t].iter_mut() {
            *x = (*x * unit) % m;
        }
        for i in 0..rows {
            if i != t && a[i][t] != 0 {
                let c = a[i][t] / lv;
                let at = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&at) {
                    *x = (*x + m - (c * y) % m) % m;
                }
            }
        }
        for j in 0..r {
            if j != t && a[t][j] != 0 {
                let c = a[t][j] / lv;
                for row in a.iter_mut() {
                    let y = row[t];
                    row[j] = (row[j] + m - (c * y) % m) % m;
                }
                for row in q.iter_mut() {
                    let y = row[t];
                    row[j] = (row[j] + m - (c * y) % m) % m;
                }
                let qj = qinv[j].clone();
                for (x, y) in qinv[t].iter_mut().zip(&qj) {
                    *x = (*x + c * y) % m;
                }
            }
        }
        diag_val[t] = v;
        t += 1;
    }
    Smith { diag_val, q, qinv }
}

/// The subquotient `top / bottom` with an invariant-factor basis.
#[derive(Clone, Debug)]
pub struct Subquotient {
    top: Submodule,
    bottom: Submodule,
    top_rows: Vec<Row>,
    /// `Q` restricted to kept columns: coordinates = quotient-coefficients · Q.
    q_cols: Vec<Vec<u64>>,
    gens: Vec<Vec<u64>>,
    orders: Vec<u64>,
}

impl Subquotient {
    pub fn new(top: &Submodule, bottom: &Submodule) -> Result<Self> {
        if top.amb != bottom.amb {
            return Err(Error::Internal("subquotient of different ambients".into()));
        }
        if !bottom.is_subset(top) {
            return Err(Error::Internal("subquotient bottom not contained in top".into()));
        }
        let amb = &top.amb;
        let (l, e) = (amb.l, amb.e);
        let m = l.pow(e);
        let top_rows = top.rows.clone();
        let r = top_rows.len();
        // relations among the Howell rows of `top` modulo `bottom`
        let free = Ambient::uniform(l, e, r);
        let cols = top_rows
            .iter()
            .map(|row| {
                let mut v = row.v.clone();
                amb.reduce(&mut v);
                v
            })
            .collect();
        let incl = Hom { src: free.clone(), tgt: amb.clone(), cols };
        let rel = incl.preimage(bottom);
        let rel_rows: Vec<Vec<u64>> = rel.rows.iter().map(|row| row.v.clone()).collect();
        let sm = smith(l, e, rel_rows, r);
        let mut keep: Vec<usize> = (0..r).filter(|&j| sm.diag_val[j] > 0).collect();
        keep.sort_by_key(|&j| (sm.diag_val[j], j));
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        let mut q_cols = Vec::new();
        for &j in &keep {
            let mut g = amb.zero();
            for i in 0..r {
                let c = sm.qinv[j][i];
                if c != 0 {
                    for (x, y) in g.iter_mut().zip(&top_rows[i].v) {
                        *x = (*x + (c * y) % m) % m;
                    }
                }
            }
            amb.reduce(&mut g);
            let g = bottom.reduce(&g);
            gens.push(g);
            orders.push(l.pow(sm.diag_val[j]));
            q_cols.push((0..r).map(|i| sm.q[i][j]).collect());
        }
        Ok(Subquotient { top: top.clone(), bottom: bottom.clone(), top_rows, q_cols, gens, orders })
    }
    pub fn top(&self) -> &Submodule {
        &self.top
    }
    pub fn bottom(&self) -> &Submodule {
        &self.bottom
    }
    /// Representatives of the invariant-factor generators.
    pub fn gens(&self) -> &[Vec<u64>] {
        &self.gens
    }
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }
    pub fn rank(&self) -> usize {
        self.gens.len()
    }
    pub fn log_order(&self) -> u32 {
        self.top.log_order() - self.bottom.log_order()
    }
    /// `⊕ Z/orders[k]`, the group in which [`Subquotient::coords`] live.
    pub fn coord_ambient(&self) -> Ambient {
        let l = self.top.amb.l;
        let exps = self.orders.iter().map(|&o| valuation(o, l, 64)).collect();
        Ambient::new(l, exps)
    }
    pub fn group_type(&self) -> AbelianGroupType {
        AbelianGroupType::from_factors(self.orders.clone())
    }
    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }
    /// Coordinates of `x ∈ top` in the generator basis.
    pub fn coords(&self, x: &[u64]) -> Result<Vec<u64>> {
        let amb = &self.top.amb;
        let (rem, qs) = reduce_rows(&self.top_rows, amb.l, amb.e, x);
        let mut rem = rem;
        amb.reduce(&mut rem);
        if !Ambient::is_zero(&rem) {
            return Err(Error::Internal("element not in subquotient top".into()));
        }
        let m = amb.l.pow(amb.e);
        Ok(self
            .q_cols
            .iter()
            .zip(&self.orders)
            .map(|(col, &ord)| {
                let s = qs.iter().zip(col).fold(0u64, |acc, (a, b)| (acc + (a * b) % m) % m);
                s % ord
            })
            .collect())
    }
    pub fn is_zero_class(&self, x: &[u64]) -> bool {
        self.bottom.contains(x)
    }
    /// Representative of the class with the given coordinates.
    pub fn element(&self, coords: &[u64]) -> Vec<u64> {
        let amb = &self.top.amb;
        let mut acc = amb.zero();
        for (g, &c) in self.gens.iter().zip(coords) {
            amb.add_assign_scaled(&mut acc, g, c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn howell_membership_mixed_orders() {
        let a = Ambient::new(3, vec![2, 1]);
        let s = Submodule::span(&a, vec![vec![3, 1]]);
        assert_eq!(s.order(), 3);
        assert!(s.contains(&[6, 2]));
        assert!(!s.contains(&[3, 0]));
        assert_eq!(Submodule::full(&a).order(), 27);
    }

    #[test]
    fn subquotient_cyclic_of_order_nine() {
        let a = Ambient::new(3, vec![2, 1]);
        let full = Submodule::full(&a);
        let sq = Subquotient::new(&full, &Submodule::span(&a, vec![vec![0, 1]])).unwrap();
        assert_eq!(sq.orders(), &[9]);
        let c = sq.coords(&[4, 2]).unwrap();
        let back = sq.element(&c);
        assert!(sq.is_zero_class(&a.sub(&back, &[4, 2])));
    }
}

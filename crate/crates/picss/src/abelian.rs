//! Finite abelian groups: invariant factors, order-profile classification,
//! integer Smith normal form, and discrete logarithms in enumerated groups.

use crate::error::{invalid, Error, Result};
use crate::zmod::Ambient;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

/// Invariant factors `d_1 | d_2 | ... | d_r`, each `> 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct AbelianGroupType {
    factors: Vec<u64>,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl AbelianGroupType {
    pub fn trivial() -> Self {
        Self::default()
    }
    /// Normalizes an arbitrary list of cyclic orders (a direct sum) to invariant factors.
    pub fn from_factors(orders: impl IntoIterator<Item = u64>) -> Self {
        let mut primary: HashMap<u64, Vec<u64>> = HashMap::new();
        for d in orders {
            for (q, e) in factor(d) {
                primary.entry(q).or_default().push(q.pow(e));
            }
        }
        let mut comps: Vec<Vec<u64>> = primary
            .into_values()
            .map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            })
            .collect();
        let r = comps.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; r];
        for c in comps.iter_mut() {
            for (k, &x) in c.iter().enumerate() {
                factors[k] *= x;
            }
        }
        factors.reverse();
        AbelianGroupType { factors }
    }
    /// `(Z/p)^{λ}` for a partition of exponents.
    pub fn from_exponents(p: u64, exps: impl IntoIterator<Item = u32>) -> Self {
        Self::from_factors(exps.into_iter().filter(|&e| e > 0).map(|e| p.pow(e)))
    }
    pub fn cyclic(n: u64) -> Self {
        Self::from_factors([n])
    }
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        Self::from_factors(self.factors.iter().chain(&other.factors).copied())
    }
    /// Elementary divisors (prime-power cyclic orders), sorted ascending.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|&d| factor(d).into_iter().map(|(q, e)| q.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for AbelianGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

pub const MAX_ENUMERATED_ORDER: usize = 1_000_000;

/// Classifies a finite abelian `p`-group given by enumeration by counting
/// elements of order dividing `p^k`.
pub fn classify_p_group<T, F>(elements: &[T], identity: &T, op: F) -> Result<AbelianGroupType>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let n = elements.len();
    if n == 0 {
        return invalid("empty group");
    }
    if n > MAX_ENUMERATED_ORDER {
        return Err(Error::TooLarge(format!("group of order {n}")));
    }
    let fs = factor(n as u64);
    if fs.len() > 1 {
        return invalid(format!("order {n} is not a prime power"));
    }
    if n == 1 {
        return Ok(AbelianGroupType::trivial());
    }
    let (p, e) = fs[0];
    // commutativity on a deterministic sample
    let step = (n / 64).max(1);
    for a in elements.iter().step_by(step) {
        for b in elements.iter().step_by(step.max(7)) {
            if op(a, b) != op(b, a) {
                return invalid("operation is not commutative");
            }
        }
    }
    let pow = |x: &T, k: u64| -> T {
        let mut acc = identity.clone();
        for _ in 0..k {
            acc = op(&acc, x);
        }
        acc
    };
    // ord_log[x] = log_p of the order of x
    let mut counts = vec![0usize; e as usize + 1];
    for x in elements {
        let mut y = x.clone();
        let mut k = 0usize;
        while &y != identity {
            y = pow(&y, p);
            k += 1;
            if k > e as usize {
                return Err(Error::InvalidInput("element order exceeds group order".into()));
            }
        }
        counts[k] += 1;
    }
    // s_k = log_p #{x : x^{p^k} = 1}
    let mut cum = 0usize;
    let mut s = Vec::with_capacity(e as usize + 1);
    for &c in &counts {
        cum += c;
        let mut t = cum;
        let mut l = 0u32;
        while t > 1 {
            if t % p as usize != 0 {
                return Err(Error::InvalidInput("order profile is not that of an abelian p-group".into()));
            }
            t /= p as usize;
            l += 1;
        }
        s.push(l);
    }
    // #{i : λ_i ≥ k} = s_k − s_{k−1}
    let atleast: Vec<u32> = (1..s.len()).map(|k| s[k] - s[k - 1]).collect();
    let mut exps = Vec::new();
    for k in 1..=atleast.len() {
        let here = atleast[k - 1] - atleast.get(k).copied().unwrap_or(0);
        for _ in 0..here {
            exps.push(k as u32);
        }
    }
    let ty = AbelianGroupType::from_exponents(p, exps);
    if ty.order() != n as u64 {
        return Err(Error::InvalidInput("order profile is inconsistent".into()));
    }
    Ok(ty)
}

/// Cokernel of an integer relation matrix: `Z^ngens / rowspan(rows)`.
/// Returns `None` when the cokernel is infinite.
pub fn from_relations(ngens: usize, rows: &[Vec<i64>]) -> Result<Option<AbelianGroupType>> {
    if rows.iter().any(|r| r.len() != ngens) {
        return invalid("relation row length mismatch");
    }
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let diag = integer_smith_diagonal(&mut a, ngens);
    if diag.len() < ngens || diag.iter().any(|&d| d == 0) {
        return Ok(None);
    }
    let orders = diag.into_iter().filter(|&d| d > 1).map(|d| d as u64);
    Ok(Some(AbelianGroupType::from_factors(orders)))
}

fn integer_smith_diagonal(a: &mut Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    let at = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&at) {
                        *x -= q * y;
                    }
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut() {
                        let y = row[t];
                        row[j] -= q * y;
                    }
                }
                if a[t][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block
                let pivot = a[t][t];
                let mut fix = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if a[i][j] % pivot != 0 {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        let ai = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(&ai) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// A basis and discrete-logarithm table for an enumerated abelian `p`-group.
#[derive(Clone, Debug)]
pub struct DlogTable<T: Clone + Eq + Hash> {
    basis: Vec<T>,
    ambient: Ambient,
    log: HashMap<T, Vec<u64>>,
    elems: Vec<T>,
}

impl<T: Clone + Eq + Hash> DlogTable<T> {
    /// Builds the table from the full element list.
    pub fn new<F>(p: u64, elements: &[T], identity: &T, op: F) -> Result<Self>
    where
        F: Fn(&T, &T) -> T,
    {
        let pow = |x: &T, k: u64| -> T {
            let mut acc = identity.clone();
            for _ in 0..k {
                acc = op(&acc, x);
            }
            acc
        };
        let mut h: Vec<T> = vec![identity.clone()];
        let mut hset: HashMap<T, Vec<u64>> = HashMap::from([(identity.clone(), Vec::new())]);
        let mut basis: Vec<T> = Vec::new();
        let mut exps: Vec<u32> = Vec::new();
        while h.len() < elements.len() {
            // order of each element modulo H
            let mut best: Option<(T, u32)> = None;
            for g in elements {
                let mut y = g.clone();
                let mut k = 0u32;
                while !hset.contains_key(&y) {
                    y = pow(&y, p);
                    k += 1;
                }
                if best.as_ref().map_or(true, |(_, bk)| k > *bk) {
                    best = Some((g.clone(), k));
                }
            }
            let (g, k) = best.ok_or_else(|| Error::Internal("empty group".into()))?;
            let pk = p.pow(k);
            let target = pow(&g, pk);
            let hprime = h
                .iter()
                .find(|x| pow(x, pk) == target)
                .cloned()
                .ok_or_else(|| Error::Internal("no complement lift found".into()))?;
            let hinv = h.iter().find(|x| op(x, &hprime) == *identity).cloned().unwrap();
            let g2 = op(&g, &hinv);
            // extend H by <g2>
            let old = h.clone();
            let mut newh = old.clone();
            let mut cur = g2.clone();
            for c in 1..pk {
                for x in &old {
                    let y = op(x, &cur);
                    let mut coords = hset[x].clone();
                    coords.push(c);
                    hset.insert(y.clone(), coords);
                    newh.push(y);
                }
                cur = op(&cur, &g2);
            }
            for x in &old {
                hset.get_mut(x).unwrap().push(0);
            }
            h = newh;
            basis.push(g2);
            exps.push(k);
            if h.len() > elements.len() {
                return Err(Error::Internal("discrete-log basis overcounts".into()));
            }
        }
        let ambient = Ambient::new(p, exps);
        if p.pow(ambient.log_order()) != elements.len() as u64 {
            return Err(Error::Internal("discrete-log order mismatch".into()));
        }
        Ok(DlogTable { basis, ambient, log: hset, elems: elements.to_vec() })
    }
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }
    pub fn basis(&self) -> &[T] {
        &self.basis
    }
    pub fn elements(&self) -> &[T] {
        &self.elems
    }
    pub fn log(&self, x: &T) -> Option<&Vec<u64>> {
        self.log.get(x)
    }
    pub fn group_type(&self) -> AbelianGroupType {
        AbelianGroupType::from_exponents(self.ambient.l(), self.ambient.exps().iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_normalization() {
        assert_eq!(AbelianGroupType::from_factors([4, 3]).factors(), &[12]);
        assert_eq!(AbelianGroupType::from_factors([3, 9, 1]).factors(), &[3, 9]);
        assert_eq!(AbelianGroupType::from_factors([2, 4, 3]).factors(), &[2, 12]);
    }

    #[test]
    fn relation_matrix_cokernel() {
        let t = from_relations(2, &[vec![2, 4], vec![6, 8]]).unwrap().unwrap();
        assert_eq!(t.factors(), &[2, 4]);
        assert_eq!(from_relations(2, &[vec![1, 0]]).unwrap(), None);
    }
}

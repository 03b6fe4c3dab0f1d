//! Dense linear algebra over `F_q`, plus a fast echelon kernel over small
//! prime fields used for large rank computations.

use crate::field::{ExtensionField, Fe};

/// Dense matrix over `F_q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl FqMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FqMat { rows, cols, data: vec![0; rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }
    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[Vec<Fe>]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }
    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn mul(&self, f: &ExtensionField, other: &FqMat) -> FqMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FqMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }
    pub fn apply(&self, f: &ExtensionField, v: &[Fe]) -> Vec<Fe> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, k| f.add(acc, f.mul(self.get(i, k), v[k]))))
            .collect()
    }
    pub fn sub(&self, f: &ExtensionField, other: &FqMat) -> FqMat {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FqMat { rows: self.rows, cols: self.cols, data }
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: &ExtensionField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            for j in 0..self.cols {
                self.data.swap(pr * self.cols + j, r * self.cols + j);
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in 0..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..self.rows {
                if i != r {
                    let fac = self.get(i, c);
                    if fac != 0 {
                        for j in 0..self.cols {
                            let v = f.sub(self.get(i, j), f.mul(fac, self.get(r, j)));
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
    pub fn rank(&self, f: &ExtensionField) -> usize {
        self.clone().rref(f).len()
    }
    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn kernel(&self, f: &ExtensionField) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0; self.cols];
                x[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(m.get(r, fc));
                }
                x
            })
            .collect()
    }
}

/// Incremental row echelon basis over `F_P` with byte-sized entries.
#[derive(Clone, Debug)]
pub struct EchelonFp<const P: u8> {
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl<const P: u8> EchelonFp<P> {
    const INV: [u8; 256] = {
        let mut t = [0u8; 256];
        let mut a = 1u16;
        while a < P as u16 {
            let mut b = 1u16;
            while b < P as u16 {
                if (a * b) % P as u16 == 1 {
                    t[a as usize] = b as u8;
                }
                b += 1;
            }
            a += 1;
        }
        t
    };

    pub fn new(n: usize) -> Self {
        EchelonFp { n, rows: Vec::new(), pivots: Vec::new() }
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }
    /// Reduces `v` in place against the basis.
    fn reduce(&self, v: &mut [u8]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x == 0 {
                continue;
            }
            let m = P - x;
            for (a, &b) in v[c..].iter_mut().zip(&row[c..]) {
                let t = *a as u16 + m as u16 * b as u16;
                *a = (t % P as u16) as u8;
            }
        }
    }
    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else { return false };
        let inv = Self::INV[v[c] as usize];
        for a in v[c..].iter_mut() {
            *a = ((*a as u16 * inv as u16) % P as u16) as u8;
        }
        // pivots stay sorted; rows are zero left of their pivot
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, v);
        true
    }
}

/// Sparse matrix over a small prime field by columns: `cols[j] = [(row, value)]`.
pub type SparseColumns = Vec<Vec<(usize, u8)>>;

fn apply_sparse<const P: u8>(cols: &SparseColumns, n: usize, v: &[u8]) -> Vec<u8> {
    let mut acc = vec![0u16; n];
    for (j, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for &(i, c) in &cols[j] {
            acc[i] = (acc[i] + x as u16 * c as u16) % P as u16;
        }
    }
    acc.into_iter().map(|a| a as u8).collect()
}

fn rank_chain_p<const P: u8>(cols: &SparseColumns, n: usize, kmax: usize) -> Vec<usize> {
    let mut ranks = Vec::with_capacity(kmax);
    let mut cur: Vec<Vec<u8>> = (0..n)
        .map(|j| {
            let mut v = vec![0u8; n];
            for &(i, c) in &cols[j] {
                v[i] = c % P;
            }
            v
        })
        .collect();
    for _ in 0..kmax {
        let mut ech = EchelonFp::<P>::new(n);
        for v in cur {
            ech.insert(v);
            if ech.rank() == n {
                break;
            }
        }
        ranks.push(ech.rank());
        if ech.rank() == 0 {
            break;
        }
        cur = ech.rows().iter().map(|b| apply_sparse::<P>(cols, n, b)).collect();
    }
    while ranks.len() < kmax {
        ranks.push(0);
    }
    ranks
}

/// `rank(N^k)` for `k = 1..=kmax`, `N` given by sparse columns over `F_p`.
/// Returns `None` for primes without a fast path.
pub fn power_ranks_fp(p: u32, cols: &SparseColumns, n: usize, kmax: usize) -> Option<Vec<usize>> {
    Some(match p {
        2 => rank_chain_p::<2>(cols, n, kmax),
        3 => rank_chain_p::<3>(cols, n, kmax),
        5 => rank_chain_p::<5>(cols, n, kmax),
        7 => rank_chain_p::<7>(cols, n, kmax),
        11 => rank_chain_p::<11>(cols, n, kmax),
        13 => rank_chain_p::<13>(cols, n, kmax),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_rank_over_f5() {
        let mut e = EchelonFp::<5>::new(3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(!e.insert(vec![2, 4, 1]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(!e.insert(vec![1, 3, 4]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kernel_over_f9() {
        let f = ExtensionField::new(3, 2).unwrap();
        let m = FqMat::from_columns(1, &[vec![1], vec![1]]);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 1);
        assert_eq!(m.apply(&f, &k[0]), vec![0]);
    }
}

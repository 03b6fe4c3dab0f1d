//! Prime and extension fields `F_{p^n}`.
//!
//! An element is encoded by the integer `sum c_i p^i`, where `c_i` is the
//! coefficient of `y^i` in its reduced representative of `F_p[y]/(f)`.
//! The modulus `f` is the monic irreducible polynomial of degree `n` whose
//! coefficient vector `(c_{n-1}, ..., c_0)` is lexicographically least,
//! equivalently the one with the smallest encoding `sum c_i p^i`.

use crate::error::{invalid, Error, Result};
use std::fmt;

/// Field element handle; only meaningful together with its field.
pub type Fe = u32;

pub const MAX_FIELD_ORDER: u32 = 1024;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone)]
pub struct ExtensionField {
    p: u32,
    n: u32,
    q: u32,
    /// Low coefficients `c_0..c_{n-1}` of the monic modulus.
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {}", self.p, self.n, self.modulus_string())
    }
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}
impl Eq for ExtensionField {}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    // b monic, coefficients low to high
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * bc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    let mut k = code;
    for _ in 0..deg {
        c.push(k % p);
        k /= p;
    }
    c.push(1);
    c
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = (f.len() - 1) as u32;
    for d in 1..=n / 2 {
        for code in 0..p.pow(d) {
            let g = monic_from_code(code, d, p);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl ExtensionField {
    /// Builds `F_{p^n}` with the deterministic lexicographically least modulus.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return invalid(format!("{p} is not prime"));
        }
        if n == 0 {
            return invalid("extension degree must be positive");
        }
        let q = (p as u64).checked_pow(n).filter(|&q| q <= MAX_FIELD_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::TooLarge(format!(
                "field order {p}^{n} exceeds {MAX_FIELD_ORDER}"
            )));
        };
        let q = q as u32;
        let modulus = (0..p.pow(n))
            .map(|code| monic_from_code(code, n, p))
            .find(|f| n == 1 || is_irreducible(f, p))
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {n} over F_{p}")))?;
        let low = modulus[..n as usize].to_vec();
        let mut fld = ExtensionField {
            p,
            n,
            q,
            modulus: low,
            add: vec![0; (q * q) as usize],
            mul: vec![0; (q * q) as usize],
            neg: vec![0; q as usize],
            inv: vec![0; q as usize],
            frob: vec![0; q as usize],
        };
        fld.build_tables(&modulus);
        Ok(fld)
    }

    fn build_tables(&mut self, modulus: &[u32]) {
        let (p, q) = (self.p, self.q);
        let coeffs: Vec<Vec<u32>> = (0..q).map(|a| self.coeffs(a)).collect();
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = coeffs[a as usize]
                    .iter()
                    .zip(&coeffs[b as usize])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                self.add[(a * q + b) as usize] = self.encode(&s) as u16;
                let mut prod = vec![0u32; 2 * self.n as usize];
                for (i, x) in coeffs[a as usize].iter().enumerate() {
                    for (j, y) in coeffs[b as usize].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = poly_rem(&prod, modulus, p);
                self.mul[(a * q + b) as usize] = self.encode(&r) as u16;
            }
        }
        for a in 0..q {
            let na: Vec<u32> = coeffs[a as usize].iter().map(|&c| (p - c) % p).collect();
            self.neg[a as usize] = self.encode(&na) as u16;
            if a != 0 {
                let inv = (1..q).find(|&b| self.mul(a, b) == 1).unwrap_or(0);
                self.inv[a as usize] = inv as u16;
            }
        }
        for a in 0..q {
            let f = self.pow(a, p as u64);
            self.frob[a as usize] = f as u16;
        }
    }

    fn encode(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients low to high including the leading 1.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn modulus_string(&self) -> String {
        let m = self.modulus();
        let mut terms = Vec::new();
        for (i, &c) in m.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => format!("{c}"),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join("+")
    }

    /// Coefficients `c_0..c_{n-1}` of an element.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut k = a;
        (0..self.n)
            .map(|_| {
                let c = k % self.p;
                k /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fe {
        let mut v: Vec<u32> = c.iter().map(|&x| x % self.p).collect();
        v.resize(self.n as usize, 0);
        self.encode(&v)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> Fe {
        k.rem_euclid(self.p as i64) as Fe
    }

    /// Inverse of `from_int` on the prime subfield.
    pub fn to_prime(&self, a: Fe) -> Option<u32> {
        (a < self.p).then_some(a)
    }

    /// The class of `y` (a generator of the field over `F_p`); `None` if `n = 1`.
    pub fn gen(&self) -> Option<Fe> {
        (self.n > 1).then_some(self.p)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[(a * self.q + b) as usize] as Fe
    }
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize] as Fe
    }
    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[(a * self.q + b) as usize] as Fe
    }
    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != 0).then(|| self.inv[a as usize] as Fe)
    }
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    /// `x -> x^p`.
    #[inline]
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.frob[a as usize] as Fe
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q
    }
    pub fn units(&self) -> impl Iterator<Item = Fe> {
        1..self.q
    }

    pub fn mult_order(&self, a: Fe) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Smallest encoding generating the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        self.units()
            .find(|&a| self.mult_order(a) == Some(self.q - 1))
            .expect("finite field has a primitive element")
    }

    /// Order of the Frobenius as an automorphism (computed, not assumed).
    pub fn frobenius_order(&self) -> u32 {
        let mut k = 1;
        let mut cur: Vec<Fe> = self.elements().map(|a| self.frobenius(a)).collect();
        while cur.iter().enumerate().any(|(i, &x)| x != i as Fe) {
            cur = cur.iter().map(|&x| self.frobenius(x)).collect();
            k += 1;
        }
        k
    }

    /// Human-readable polynomial form in `y`.
    pub fn name(&self, a: Fe) -> String {
        if self.n == 1 {
            return a.to_string();
        }
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            terms.push(match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "y".into(),
                (1, _) => format!("{ci}y"),
                (_, 1) => format!("y^{i}"),
                _ => format!("{ci}y^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Parses the hexadecimal encoding used on the command line.
    pub fn parse_hex(&self, s: &str) -> Result<Fe> {
        let t = s.trim().trim_start_matches("0x");
        let v = u32::from_str_radix(t, 16).map_err(|e| Error::InvalidInput(format!("{s}: {e}")))?;
        if v >= self.q {
            return invalid(format!("{s} is not an element of a field of order {}", self.q));
        }
        Ok(v)
    }
}

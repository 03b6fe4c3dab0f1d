//! The `p`-truncated exponential and logarithm on a nilpotent ideal and the
//! discrepancy polynomials `σ_p`, `μ_p`.
//!
//! `σ_p` is evaluated through its multinomial expansion
//! `Σ x_1^{j_1}⋯x_k^{j_k}/(j_1!⋯j_k!)` over `j_1+⋯+j_k = p`, `j_i ≤ p−1`, which
//! involves only the invertible factorials `0!, …, (p−1)!`.

use crate::error::{invalid, precondition, Error, Result};
use crate::ring::{Elem, FiniteRing};
use rand::Rng;
use serde::Serialize;

/// Inverse of `k!` in `Z/p^E` for `k < p` (the ring has characteristic a power of `ring.p()`).
fn inv_factorial(ring: &FiniteRing, p: u64, k: u64) -> Result<i64> {
    let l = ring.p();
    let big = l.pow(ring.ambient().exponent()) as i128;
    let f: i128 = (1..=k as i128).product::<i128>().rem_euclid(big);
    if (f as u64) % l == 0 {
        return Err(Error::Precondition(format!("{k}! is not invertible in a ring of residue characteristic {l} (p = {p})")));
    }
    let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, big, f);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    Ok(t.rem_euclid(big) as i64)
}

fn check_in_ideal(ring: &FiniteRing, x: &[u64]) -> Result<()> {
    if !ring.in_ideal(x) {
        return invalid(format!("{} is not in the distinguished ideal", ring.format(x)));
    }
    Ok(())
}

/// `exp_p(x) = Σ_{i<p} x^i/i!`.
pub fn trunc_exp(ring: &FiniteRing, p: u64, x: &[u64]) -> Result<Elem> {
    check_in_ideal(ring, x)?;
    let mut acc = ring.one();
    let mut pw = ring.one();
    for i in 1..p {
        pw = ring.mul(&pw, x);
        let c = inv_factorial(ring, p, i)?;
        acc = ring.add(&acc, &ring.scale(&pw, c));
    }
    Ok(acc)
}

/// `log_p(u) = Σ_{k=1}^{p−1} (−1)^{k−1}(u−1)^k/k`.
pub fn trunc_log(ring: &FiniteRing, p: u64, u: &[u64]) -> Result<Elem> {
    let x = ring.sub(u, &ring.one());
    if !ring.in_ideal(&x) {
        return invalid(format!("{} is not in 1+m", ring.format(u)));
    }
    let mut acc = ring.zero();
    let mut pw = ring.one();
    for k in 1..p {
        pw = ring.mul(&pw, &x);
        // 1/k = (k−1)!/k!
        let c = inv_factorial(ring, p, k)? * (1..k as i64).product::<i64>();
        let c = if k % 2 == 1 { c } else { -c };
        acc = ring.add(&acc, &ring.scale(&pw, c));
    }
    Ok(acc)
}

/// Multi-indices `j ∈ [0, p−1]^k` with `Σ j = p`.
fn admissible_indices(k: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; k];
    fn rec(out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>, i: usize, left: u64, p: u64) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest_cap = (cur.len() - i - 1) as u64 * (p - 1);
        for j in 0..=left.min(p - 1) {
            if left - j > rest_cap {
                continue;
            }
            cur[i] = j;
            rec(out, cur, i + 1, left - j, p);
        }
        cur[i] = 0;
    }
    if k > 0 {
        rec(&mut out, &mut cur, 0, p, p);
    }
    out
}

/// `σ_p(x_1, …, x_k)`; zero for fewer than two arguments.
pub fn sigma(ring: &FiniteRing, p: u64, xs: &[Elem]) -> Result<Elem> {
    for x in xs {
        check_in_ideal(ring, x)?;
    }
    let mut acc = ring.zero();
    if xs.len() < 2 {
        return Ok(acc);
    }
    let mut powers: Vec<Vec<Elem>> = Vec::with_capacity(xs.len());
    for x in xs {
        let mut v = vec![ring.one()];
        for _ in 1..p {
            let next = ring.mul(v.last().unwrap(), x);
            v.push(next);
        }
        powers.push(v);
    }
    let invf: Vec<i64> = (0..p).map(|k| inv_factorial(ring, p, k)).collect::<Result<_>>()?;
    for j in admissible_indices(xs.len(), p) {
        let mut term = ring.one();
        let mut coeff: i64 = 1;
        let big = ring.p().pow(ring.ambient().exponent()) as i64;
        for (i, &ji) in j.iter().enumerate() {
            if ji > 0 {
                term = ring.mul(&term, &powers[i][ji as usize]);
            }
            coeff = ((coeff as i128 * invf[ji as usize] as i128).rem_euclid(big as i128)) as i64;
        }
        acc = ring.add(&acc, &ring.scale(&term, coeff));
    }
    Ok(acc)
}

/// `μ_p(y_0, …, y_m) = σ_p(y_0, −y_1, …, (−1)^m y_m) − Σ_{i odd} σ_p(y_i, −y_i)`.
pub fn mu(ring: &FiniteRing, p: u64, ys: &[Elem]) -> Result<Elem> {
    let alt: Vec<Elem> = ys
        .iter()
        .enumerate()
        .map(|(i, y)| if i % 2 == 0 { y.clone() } else { ring.neg(y) })
        .collect();
    let mut acc = sigma(ring, p, &alt)?;
    for (i, y) in ys.iter().enumerate() {
        if i % 2 == 1 {
            let c = sigma(ring, p, &[y.clone(), ring.neg(y)])?;
            acc = ring.sub(&acc, &c);
        }
    }
    Ok(acc)
}

/// Checks that the ideal generated by `xs` has vanishing `(p+1)`-st power.
fn check_nilpotent_span(ring: &FiniteRing, p: u64, xs: &[Elem]) -> Result<()> {
    let i = ring.ideal_generated(xs);
    let mut pw = i.clone();
    for _ in 1..=p {
        let mut prods = Vec::new();
        for a in pw.gens() {
            for b in i.gens() {
                prods.push(ring.mul(&a, &b));
            }
        }
        pw = crate::zmod::Submodule::span(ring.ambient(), prods);
    }
    if !pw.is_zero() {
        return precondition(format!("ideal generated by the inputs has nonzero power {}", p + 1));
    }
    Ok(())
}

/// `∏ exp_p(x_i) − exp_p(Σ x_i) − σ_p(x_1, …, x_k)`; zero when `I^{p+1} = 0`.
pub fn exp_sum_discrepancy(ring: &FiniteRing, p: u64, xs: &[Elem]) -> Result<Elem> {
    check_nilpotent_span(ring, p, xs)?;
    let mut prod = ring.one();
    let mut sum = ring.zero();
    for x in xs {
        prod = ring.mul(&prod, &trunc_exp(ring, p, x)?);
        sum = ring.add(&sum, x);
    }
    let lhs = ring.sub(&prod, &trunc_exp(ring, p, &sum)?);
    Ok(ring.sub(&lhs, &sigma(ring, p, xs)?))
}

/// `exp_p(y)exp_p(−y) − 1 − σ_p(y, −y)`.
pub fn inverse_discrepancy(ring: &FiniteRing, p: u64, y: &[u64]) -> Result<Elem> {
    let y = y.to_vec();
    let ny = ring.neg(&y);
    check_nilpotent_span(ring, p, &[y.clone()])?;
    let prod = ring.mul(&trunc_exp(ring, p, &y)?, &trunc_exp(ring, p, &ny)?);
    let rhs = ring.add(&ring.one(), &sigma(ring, p, &[y, ny])?);
    Ok(ring.sub(&prod, &rhs))
}

/// `exp_p(Σ(−1)^i y_i) / ∏ exp_p(y_i)^{(−1)^i} − (1 − μ_p(y_0, …, y_m))`.
pub fn alternating_discrepancy(ring: &FiniteRing, p: u64, ys: &[Elem]) -> Result<Elem> {
    check_nilpotent_span(ring, p, ys)?;
    let mut alt = ring.zero();
    let mut ratio = ring.one();
    for (i, y) in ys.iter().enumerate() {
        let e = trunc_exp(ring, p, y)?;
        if i % 2 == 0 {
            alt = ring.add(&alt, y);
            let inv = ring.inverse(&e).ok_or_else(|| Error::Internal("exp_p(y) is not a unit".into()))?;
            ratio = ring.mul(&ratio, &inv);
        } else {
            alt = ring.sub(&alt, y);
            ratio = ring.mul(&ratio, &e);
        }
    }
    let lhs = ring.mul(&trunc_exp(ring, p, &alt)?, &ratio);
    let rhs = ring.sub(&ring.one(), &mu(ring, p, ys)?);
    Ok(ring.sub(&lhs, &rhs))
}

/// Uniform random element of `𝔪^k`.
pub fn random_ideal_element<R: Rng>(ring: &FiniteRing, k: usize, rng: &mut R) -> Elem {
    let amb = ring.ambient();
    let mut acc = ring.zero();
    for g in ring.ideal_power(k).gens() {
        let c = rng.gen_range(0..amb.order_of(&g));
        amb.add_assign_scaled(&mut acc, &g, c);
    }
    acc
}

/// Outcome of one identity family over a batch of inputs.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityResult {
    pub identity: String,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl IdentityResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn run_family<R: Rng>(
    name: &str,
    ring: &FiniteRing,
    trials: usize,
    arity: usize,
    rng: &mut R,
    f: impl Fn(&[Elem]) -> Result<Elem>,
) -> Result<IdentityResult> {
    let mut failures = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let xs: Vec<Elem> = (0..arity).map(|_| random_ideal_element(ring, 1, rng)).collect();
        let d = f(&xs)?;
        if !ring.is_zero(&d) {
            failures += 1;
            if counterexample.is_none() {
                let args: Vec<String> = xs.iter().map(|x| ring.format(x)).collect();
                counterexample = Some(format!("inputs [{}] discrepancy {}", args.join(", "), ring.format(&d)));
            }
        }
    }
    Ok(IdentityResult { identity: name.to_string(), trials, failures, counterexample })
}

/// Random-input checks of the three discrepancy identities.
pub fn verify_identities<R: Rng>(ring: &FiniteRing, p: u64, trials: usize, rng: &mut R) -> Result<Vec<IdentityResult>> {
    let arity = if p == 2 { 2 } else { 3 };
    Ok(vec![
        run_family("exp-sum", ring, trials, arity, rng, |xs| exp_sum_discrepancy(ring, p, xs))?,
        run_family("inverse", ring, trials, 1, rng, |xs| inverse_discrepancy(ring, p, &xs[0]))?,
        run_family("alternating", ring, trials, arity + 1, rng, |xs| alternating_discrepancy(ring, p, xs))?,
    ])
}

/// Exhaustive check that `exp_p`, `log_p` are inverse group isomorphisms
/// `𝔪 ≅ 1+𝔪` when `𝔪^p = 0`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BijectionReport {
    pub ideal_order: u64,
    pub inverse_failures: usize,
    pub homomorphism_failures: usize,
}

pub const MAX_EXHAUSTIVE_RING_ORDER: u64 = 243;

pub fn verify_exp_log_bijection(ring: &FiniteRing, p: u64) -> Result<BijectionReport> {
    if !ring.ideal_power(p as usize).is_zero() {
        return precondition(format!("m^{p} is not zero"));
    }
    if ring.order() > MAX_EXHAUSTIVE_RING_ORDER {
        return Err(Error::TooLarge(format!("ring of order {} for exhaustive check", ring.order())));
    }
    let m = ring.ideal_elements(1);
    let mut inverse_failures = 0;
    let mut exps = Vec::with_capacity(m.len());
    for x in &m {
        let e = trunc_exp(ring, p, x)?;
        let back = trunc_log(ring, p, &e)?;
        let u = ring.add(&ring.one(), x);
        let forth = trunc_exp(ring, p, &trunc_log(ring, p, &u)?)?;
        if back != *x || forth != u {
            inverse_failures += 1;
        }
        exps.push(e);
    }
    let mut homomorphism_failures = 0;
    for (i, x) in m.iter().enumerate() {
        for (j, y) in m.iter().enumerate() {
            let lhs = trunc_exp(ring, p, &ring.add(x, y))?;
            if lhs != ring.mul(&exps[i], &exps[j]) {
                homomorphism_failures += 1;
            }
        }
    }
    Ok(BijectionReport { ideal_order: m.len() as u64, inverse_failures, homomorphism_failures })
}

/// Exhaustive check that `exp_p` induces a homomorphism `𝔪/𝔪^k → (1+𝔪)/(1+𝔪^k)`
/// and that it is `1+x ↦ x` on each graded piece. Returns the number of failures.
pub fn verify_graded_homomorphism(ring: &FiniteRing, p: u64, k: usize) -> Result<usize> {
    let m = ring.ideal_elements(1);
    let mk = ring.ideal_power(k);
    let mut failures = 0;
    let exps: Vec<Elem> = m.iter().map(|x| trunc_exp(ring, p, x)).collect::<Result<_>>()?;
    for (i, x) in m.iter().enumerate() {
        // exp(x) ≡ 1 + x mod m^{v+1} where v is the m-adic valuation of x
        let v = ring.m_adic_valuation(x);
        let d = ring.sub(&exps[i], &ring.add(&ring.one(), x));
        if !ring.ideal_power(v + 1).contains(&d) {
            failures += 1;
        }
        for (j, y) in m.iter().enumerate() {
            let prod = ring.mul(&exps[i], &exps[j]);
            let sum = trunc_exp(ring, p, &ring.add(x, y))?;
            let inv = ring.inverse(&sum).ok_or_else(|| Error::Internal("exp is not a unit".into()))?;
            let q = ring.sub(&ring.mul(&prod, &inv), &ring.one());
            if !mk.contains(&q) {
                failures += 1;
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn admissible_index_counts() {
        assert!(admissible_indices(1, 3).is_empty());
        assert_eq!(admissible_indices(2, 3).len(), 2);
        assert_eq!(admissible_indices(3, 3).len(), 7);
    }

    #[test]
    fn exp_of_x_over_f3() {
        let r = FiniteRing::new(&RingSpec::monomial(3, 1, &["x"], 4)).unwrap();
        let x = r.basis(1);
        assert_eq!(r.format(&trunc_exp(&r, 3, &x).unwrap()), "1+x+2x^2");
    }
}

//! Cohomology of a cyclic group `C_m = ⟨g⟩` with coefficients in a finite
//! module, computed from the 2-periodic resolution
//! `M --(g−1)--> M --N--> M --(g−1)--> ⋯`, `N = 1 + g + ⋯ + g^{m−1}`.

use crate::abelian::{AbelianGroupType, DlogTable};
use crate::error::{invalid, Error, Result};
use crate::ring::{Elem, FiniteRing};
use crate::zmod::{Ambient, Hom, Submodule, Subquotient};

/// A finite abelian group with an automorphism `g` of order dividing `m`.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    amb: Ambient,
    order: u64,
    g: Hom,
}

impl CyclicModule {
    pub fn new(order: u64, g: Hom) -> Result<Self> {
        if g.src != g.tgt {
            return invalid("action must be an endomorphism");
        }
        if order == 0 {
            return invalid("group order must be positive");
        }
        let mut acc = Hom::identity(&g.src);
        for _ in 0..order {
            acc = g.compose(&acc);
        }
        if acc != Hom::identity(&g.src) {
            return invalid(format!("g^{order} is not the identity"));
        }
        Ok(CyclicModule { amb: g.src.clone(), order, g })
    }
    pub fn trivial(amb: &Ambient, order: u64) -> Self {
        CyclicModule { amb: amb.clone(), order, g: Hom::identity(amb) }
    }
    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn g(&self) -> &Hom {
        &self.g
    }
    pub fn g_power(&self, k: u64) -> Hom {
        let mut acc = Hom::identity(&self.amb);
        for _ in 0..k % self.order {
            acc = self.g.compose(&acc);
        }
        acc
    }
    pub fn g_minus_one(&self) -> Hom {
        self.g.add(&Hom::identity(&self.amb).scale(-1))
    }
    pub fn norm(&self) -> Hom {
        let mut acc = Hom::zero(&self.amb, &self.amb);
        let mut gk = Hom::identity(&self.amb);
        for _ in 0..self.order {
            acc = acc.add(&gk);
            gk = self.g.compose(&gk);
        }
        acc
    }
    /// `D = Σ_i i·g^i`, satisfying `(g−1)D = m − N`.
    pub fn d_operator(&self) -> Hom {
        let mut acc = Hom::zero(&self.amb, &self.amb);
        let mut gk = Hom::identity(&self.amb);
        for i in 0..self.order {
            acc = acc.add(&gk.scale(i as i64));
            gk = self.g.compose(&gk);
        }
        acc
    }
    /// Differential of the periodic complex leaving degree `i`.
    pub fn periodic_differential(&self, i: usize) -> Hom {
        if i % 2 == 0 {
            self.g_minus_one()
        } else {
            self.norm()
        }
    }
    /// Restriction to `g`-stable subgroup data: whether `s` is `g`-stable.
    pub fn is_stable(&self, s: &Submodule) -> bool {
        s.gens().iter().all(|x| s.contains(&self.g.apply(x)))
    }
    /// Direct sum of modules for the same group.
    pub fn direct_sum(&self, other: &CyclicModule) -> Result<CyclicModule> {
        if self.order != other.order {
            return invalid("direct sum of modules for different groups");
        }
        let amb = Ambient::concat(&[&self.amb, &other.amb]);
        let (n1, n2) = (self.amb.dim(), other.amb.dim());
        let mut cols = Vec::with_capacity(n1 + n2);
        for c in &self.g.cols {
            let mut v = c.clone();
            v.extend(std::iter::repeat(0).take(n2));
            cols.push(v);
        }
        for c in &other.g.cols {
            let mut v = vec![0; n1];
            v.extend_from_slice(c);
            cols.push(v);
        }
        CyclicModule::new(self.order, Hom::new(amb.clone(), amb, cols)?)
    }
}

/// `H^i(C_m; M)` as a subquotient of `M` with representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub group: Subquotient,
}

impl CohomologyGroup {
    pub fn group_type(&self) -> AbelianGroupType {
        self.group.group_type()
    }
    pub fn reps(&self) -> &[Vec<u64>] {
        self.group.gens()
    }
}

/// Cocycles and coboundaries of the periodic complex in degree `i`.
pub fn cocycles_coboundaries(m: &CyclicModule, i: usize) -> (Submodule, Submodule) {
    let z = m.periodic_differential(i).kernel();
    let b = if i == 0 {
        Submodule::zero(&m.amb)
    } else {
        m.periodic_differential(i - 1).image_all()
    };
    (z, b)
}

pub fn cyclic_cohomology(m: &CyclicModule, degrees: std::ops::RangeInclusive<usize>) -> Result<Vec<CohomologyGroup>> {
    let mut out = Vec::new();
    for i in degrees {
        let (z, b) = cocycles_coboundaries(m, i);
        out.push(CohomologyGroup { degree: i, group: Subquotient::new(&z, &b)? });
    }
    Ok(out)
}

/// Representative of `b ∪ x` for `x ∈ H^i` (trivial-coefficient `b ∈ H²(C_m; Z)`).
pub fn cup_b(_m: &CyclicModule, _i: usize, x: &[u64]) -> Vec<u64> {
    x.to_vec()
}

/// Representative of `a ∪ x` for `x ∈ H^i`, `a ∈ H¹(C_m; Z/m)`; requires `mM = 0`.
pub fn cup_a(m: &CyclicModule, i: usize, x: &[u64]) -> Vec<u64> {
    if i % 2 == 0 {
        x.to_vec()
    } else {
        m.d_operator().apply(x)
    }
}

/// `(1+𝔪^j)/(1+𝔪^k)` as a cyclic module, with its discrete-log table.
#[derive(Clone, Debug)]
pub struct UnitGroupModule {
    pub module: CyclicModule,
    pub table: DlogTable<Elem>,
    pub j: usize,
    pub k: usize,
}

pub const MAX_UNIT_GROUP_ORDER: usize = 6561;

fn mod_power(ring: &FiniteRing, k: usize, x: &[u64]) -> Elem {
    ring.ideal_power(k).reduce(x)
}

/// Builds the multiplicative module `(1+𝔪^j)/(1+𝔪^k)`; elements `1+x` are stored as `x`.
/// `action` is a ring automorphism (on the additive basis) of order dividing `order`.
pub fn unit_group_module(ring: &FiniteRing, action: Option<&Hom>, order: u64, j: usize, k: usize) -> Result<UnitGroupModule> {
    if j == 0 {
        return invalid("unit filtration starts at j = 1");
    }
    if j >= k {
        return invalid(format!("need j < k, got j = {j}, k = {k}"));
    }
    let mj = ring.ideal_power(j);
    if let Some(s) = action {
        if !ring.maximal_ideal().gens().iter().all(|x| ring.maximal_ideal().contains(&s.apply(x))) {
            return invalid("action does not preserve the ideal");
        }
    }
    let log_size = mj.log_order() - mj.intersect(ring.ideal_power(k)).log_order();
    if ring.p().pow(log_size) as usize > MAX_UNIT_GROUP_ORDER {
        return Err(Error::TooLarge(format!("unit group of order {}^{log_size}", ring.p())));
    }
    let mut elems: Vec<Elem> = mj.elements().into_iter().map(|x| mod_power(ring, k, &x)).collect();
    elems.sort();
    elems.dedup();
    let op = |a: &Elem, b: &Elem| -> Elem {
        let s = ring.add(&ring.add(a, b), &ring.mul(a, b));
        mod_power(ring, k, &s)
    };
    let table = DlogTable::new(ring.p(), &elems, &ring.zero(), op)?;
    let amb = table.ambient().clone();
    let g = match action {
        None => Hom::identity(&amb),
        Some(s) => {
            let cols = table
                .basis()
                .iter()
                .map(|b| {
                    let img = mod_power(ring, k, &s.apply(b));
                    table.log(&img).cloned().ok_or_else(|| Error::Internal("action image outside group".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let g = Hom::new(amb.clone(), amb.clone(), cols)?;
            for x in table.elements() {
                let img = mod_power(ring, k, &s.apply(x));
                if table.log(&img) != Some(&g.apply(table.log(x).unwrap())) {
                    return invalid("action is not multiplicative on 1+m");
                }
            }
            g
        }
    };
    Ok(UnitGroupModule { module: CyclicModule::new(order, g)?, table, j, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_representation_is_acyclic() {
        let amb = Ambient::uniform(3, 1, 3);
        let g = Hom::new(amb.clone(), amb.clone(), vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        let m = CyclicModule::new(3, g).unwrap();
        let h = cyclic_cohomology(&m, 0..=4).unwrap();
        assert_eq!(h[0].group_type().order(), 3);
        assert!(h[1..].iter().all(|c| c.group_type().is_trivial()));
    }
}

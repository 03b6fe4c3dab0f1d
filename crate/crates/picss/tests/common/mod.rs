//! Closed-form oracles, written without the Leibniz engine.
//!
//! The additive `E₂` is `F[α, β, u^{±1}]/(α²)` with two families of
//! differentials, each a single multiplicative formula in the exponents.
//! The Picard simulation re-applies the comparison rules to that data.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mono {
    pub a: u8,
    pub b: i64,
    pub d: i64,
}

#[derive(Clone, Copy, Debug)]
pub struct ClosedForm {
    pub p: i64,
    pub n: i64,
    pub cp: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diff {
    pub r: i64,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub target: Mono,
    pub coefficient: i64,
}

impl ClosedForm {
    pub fn new(p: i64, cp: bool) -> Self {
        ClosedForm { p, n: p - 1, cp }
    }
    pub fn unit_t(&self) -> i64 {
        if self.cp {
            2 * self.p
        } else {
            2 * self.p * self.n * self.n
        }
    }
    pub fn period(&self) -> i64 {
        self.p * self.unit_t()
    }
    /// Filtration bound above which nothing survives.
    pub fn vanishing_line(&self) -> i64 {
        2 * self.n * self.n + 1
    }
    pub fn first(&self) -> i64 {
        2 * self.p - 1
    }
    pub fn second(&self) -> i64 {
        2 * self.n * self.n + 1
    }
    /// Cells of one field line each.
    pub fn cell_order(&self) -> u64 {
        if self.cp {
            (self.p as u64).pow(self.n as u32)
        } else {
            self.p as u64
        }
    }
    pub fn bidegree(&self, m: Mono) -> (i64, i64) {
        let (p, n) = (self.p, self.n);
        (m.a as i64 + 2 * m.b, 2 * n * m.a as i64 + 2 * p * n * m.b + self.unit_t() * m.d)
    }
    pub fn at(&self, s: i64, t: i64) -> Option<Mono> {
        if s < 0 {
            return None;
        }
        let (a, b) = ((s % 2) as u8, s / 2);
        let rem = t - (2 * self.n * a as i64 + 2 * self.p * self.n * b);
        (rem.rem_euclid(self.unit_t()) == 0).then_some(Mono { a, b, d: rem / self.unit_t() })
    }
    fn first_shift(&self) -> i64 {
        if self.cp {
            self.n * self.n
        } else {
            1
        }
    }
    fn second_source_exp(&self) -> i64 {
        if self.cp {
            self.n * self.n * self.n
        } else {
            self.n
        }
    }
    /// The differential leaving `m`, if any.
    pub fn outgoing(&self, m: Mono) -> Option<Diff> {
        let p = self.p;
        let (target, r, coefficient) = if m.a == 0 && m.d.rem_euclid(p) != 0 {
            (Mono { a: 1, b: m.b + p - 1, d: m.d - self.first_shift() }, self.first(), m.d.rem_euclid(p))
        } else if m.a == 1 && m.d.rem_euclid(p) == p - 1 {
            (Mono { a: 0, b: m.b + self.n * self.n + 1, d: m.d - self.second_source_exp() }, self.second(), 1)
        } else {
            return None;
        };
        let from = self.bidegree(m);
        Some(Diff { r, from, to: self.bidegree(target), target, coefficient })
    }
    /// Page on which `m` is hit, if any.
    pub fn hit_on(&self, m: Mono) -> Option<i64> {
        let p = self.p;
        if m.a == 1 && m.b >= p - 1 && m.d.rem_euclid(p) != p - 1 {
            Some(self.first())
        } else if m.a == 0 && m.d.rem_euclid(p) == 0 && m.b > self.n * self.n {
            Some(self.second())
        } else {
            None
        }
    }
    pub fn death(&self, m: Mono) -> Option<i64> {
        self.outgoing(m).map(|d| d.r).or_else(|| self.hit_on(m))
    }
    pub fn permanent(&self, m: Mono) -> bool {
        self.death(m).is_none()
    }
    /// Whether the class at `(s, t)` is nonzero on `E_r`.
    pub fn alive_at(&self, pos: (i64, i64), r: i64) -> bool {
        self.at(pos.0, pos.1).is_some_and(|m| self.death(m).map_or(true, |d| d >= r))
    }
    /// Stem signature of `E_∞`: sorted filtrations, negative for integral classes.
    pub fn einf_signature(&self, stem: i64) -> Vec<i64> {
        (0..=self.vanishing_line())
            .filter_map(|s| self.at(s, s + stem).filter(|m| self.permanent(*m)).map(|_| if s == 0 { -1 } else { s }))
            .collect()
    }
    /// Smallest positive `P` with `E_∞` invariant under shifting stems by `P`.
    pub fn minimal_einf_period(&self) -> i64 {
        let full = self.period();
        (1..=full)
            .filter(|q| full % q == 0)
            .find(|&q| (0..full).all(|x| self.einf_signature(x) == self.einf_signature(x + q)))
            .expect("full period works")
    }
}

/// Number of `a ∈ F_q` with `aξ + a^p η = 0`, by counting roots of `a^{p-1} = -ξ/η`.
pub fn kernel_order_closed_form(f: &picss::field::ExtensionField, xi: u32, eta: u32) -> u64 {
    if eta == 0 {
        return 1;
    }
    let p = f.p() as u64;
    let c = f.mul(f.neg(xi), f.inv(eta).expect("unit"));
    let q = f.order() as u64;
    if f.pow(c, (q - 1) / (p - 1)) == 1 {
        p
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Additive,
    Special,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub order: u64,
    pub full: bool,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub r: i64,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub rule: &'static str,
}

/// Picard spectral sequence re-derived from the closed-form additive data.
pub struct PicardSim {
    pub e2: BTreeMap<(i64, i64), Cell>,
    pub fin: BTreeMap<(i64, i64), Cell>,
    pub arrows: Vec<Arrow>,
    pub unknown: Vec<Arrow>,
    pub unstable: BTreeSet<(i64, i64)>,
    pub touched_unknown: BTreeSet<(i64, i64)>,
}

/// `window` is `(smax, stem_min, stem_max)` in Picard grading.
pub fn simulate_picard(cf: &ClosedForm, h1: u64, kernel: u64, window: (i64, i64, i64)) -> PicardSim {
    let (smax, lo, hi) = (window.0 + 2 * (cf.second() + 1), window.1 - 1, window.2 + 1);
    let mut state = BTreeMap::new();
    for s in 0..=smax {
        for stem in lo..=hi {
            let t = stem + s;
            if t >= 2 && cf.at(s, t - 1).is_some() {
                state.insert((s, t), Cell { order: cf.cell_order(), full: true, origin: Origin::Additive });
            }
        }
    }
    state.insert((0, 0), Cell { order: 2, full: false, origin: Origin::Special });
    state.insert((1, 1), Cell { order: h1, full: false, origin: Origin::Special });
    let e2 = state.clone();
    let mut sim = PicardSim {
        e2,
        fin: BTreeMap::new(),
        arrows: Vec::new(),
        unknown: Vec::new(),
        unstable: BTreeSet::new(),
        touched_unknown: BTreeSet::new(),
    };
    let p = cf.p;
    for r in 2..=smax + 1 {
        let mut kills = Vec::new();
        let mut semis = Vec::new();
        for (&x, xc) in state.iter().filter(|(_, c)| c.order > 1) {
            let y = (x.0 + r, x.1 + r - 1);
            let Some(yc) = state.get(&y).filter(|c| c.order > 1) else { continue };
            let unknown = Arrow { r, from: x, to: y, rule: "unknown" };
            if xc.origin == Origin::Special || !xc.full || !yc.full {
                sim.unknown.push(unknown);
                continue;
            }
            let (xa, ya) = ((x.0, x.1 - 1), (y.0, y.1 - 1));
            if !cf.alive_at(xa, r) || !cf.alive_at(ya, r) {
                sim.unknown.push(unknown);
                continue;
            }
            let has_additive = cf.at(xa.0, xa.1).and_then(|m| cf.outgoing(m)).is_some_and(|d| d.r == r && d.to == ya);
            let t = x.1;
            let diag = x.0 == x.1;
            if r <= t - 1 || (diag && r <= (p - 1) * (t - 1)) {
                if has_additive {
                    let rule = if r <= t - 1 { "import-general" } else { "import-diagonal" };
                    kills.push(Arrow { r, from: x, to: y, rule });
                }
            } else if diag && r == (p - 1) * (t - 1) + 1 && cf.cp && has_additive {
                semis.push(Arrow { r, from: x, to: y, rule: "first-unstable" });
            } else {
                sim.unknown.push(unknown);
            }
        }
        for a in sim.unknown.iter().filter(|a| a.r == r) {
            sim.touched_unknown.insert(a.from);
            sim.touched_unknown.insert(a.to);
        }
        for a in kills {
            for c in [a.from, a.to] {
                state.get_mut(&c).unwrap().order = 1;
            }
            sim.arrows.push(a);
        }
        for a in semis {
            for c in [a.from, a.to] {
                let cell = state.get_mut(&c).unwrap();
                cell.order = kernel;
                cell.full = false;
                sim.unstable.insert(c);
            }
            sim.arrows.push(a);
        }
    }
    sim.fin = state;
    sim
}

impl PicardSim {
    /// Bounds for the nonzero zero-stem cells, in order of filtration.
    pub fn zero_stem_bounds(&self, p: u64, smax: i64) -> Vec<(i64, u64)> {
        self.fin
            .iter()
            .filter(|(&(s, t), c)| s == t && s <= smax && (c.order > 1 || self.unstable.contains(&(s, t))))
            .map(|(&(s, t), c)| {
                let bound = if c.origin == Origin::Special {
                    self.e2[&(s, t)].order
                } else if self.unstable.contains(&(s, t)) {
                    p
                } else {
                    c.order
                };
                (s, bound)
            })
            .collect()
    }
}

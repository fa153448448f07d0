//! Enriched cycles: finitely generated abelian groups attached to prime components.

use crate::error::{Error, Result};
use crate::poly::{Ideal, Poly, PolyRing};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_m` with `d_1 | d_2 | ... | d_m`, every `d_i >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbGroup {
    pub rank: u64,
    pub torsion: Vec<u64>,
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Invariant factors of `⊕ Z/c_i` for arbitrary orders `c_i` (orders 0 and 1 are skipped).
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &c in orders {
        if c < 2 {
            continue;
        }
        for (p, pk) in prime_powers(c) {
            by_prime.entry(p).or_default().push(pk);
        }
    }
    let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, pk) in powers.iter().enumerate() {
            // largest powers go to the last invariant factor
            out[len - 1 - i] *= pk;
        }
    }
    out
}

impl AbGroup {
    pub fn zero() -> AbGroup {
        AbGroup::default()
    }

    pub fn free(rank: u64) -> AbGroup {
        AbGroup { rank, torsion: Vec::new() }
    }

    /// Canonical form from a rank and any list of cyclic orders.
    pub fn new(rank: u64, cyclic: &[u64]) -> AbGroup {
        AbGroup { rank, torsion: invariant_factors(cyclic) }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn dsum(&self, other: &AbGroup) -> AbGroup {
        let mut t = self.torsion.clone();
        t.extend_from_slice(&other.torsion);
        AbGroup::new(self.rank + other.rank, &t)
    }

    pub fn tensor(&self, other: &AbGroup) -> AbGroup {
        let mut t = Vec::new();
        for _ in 0..other.rank {
            t.extend_from_slice(&self.torsion);
        }
        for _ in 0..self.rank {
            t.extend_from_slice(&other.torsion);
        }
        for a in &self.torsion {
            for b in &other.torsion {
                t.push(a.gcd(b));
            }
        }
        AbGroup::new(self.rank * other.rank, &t)
    }

    /// Elementary divisors (prime powers), sorted.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut v: Vec<u64> =
            self.torsion.iter().flat_map(|&d| prime_powers(d).into_iter().map(|(_, pk)| pk)).collect();
        v.sort_unstable();
        v
    }

    /// `self` is isomorphic to a direct summand of `other`.
    pub fn le(&self, other: &AbGroup) -> bool {
        if self.rank > other.rank {
            return false;
        }
        let mut rest = other.elementary_divisors();
        for d in self.elementary_divisors() {
            match rest.iter().position(|&e| e == d) {
                Some(i) => {
                    rest.remove(i);
                }
                None => return false,
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        json!({ "rank": self.rank, "torsion": self.torsion })
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl std::str::FromStr for AbGroup {
    type Err = Error;

    /// Accepts `0`, `Z`, `Z^3`, `Z/2`, and `+`-separated sums of these.
    fn from_str(s: &str) -> Result<AbGroup> {
        let bad = || Error::Parse(format!("not an abelian group: {:?}", s));
        let mut rank = 0;
        let mut cyclic = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "0" {
                continue;
            }
            let rest = part.strip_prefix('Z').ok_or_else(bad)?.trim();
            if rest.is_empty() {
                rank += 1;
            } else if let Some(e) = rest.strip_prefix('^') {
                rank += e.trim().parse::<u64>().map_err(|_| bad())?;
            } else if let Some(d) = rest.strip_prefix('/') {
                let d: u64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    rank += 1;
                } else {
                    cyclic.push(d);
                }
            } else {
                return Err(bad());
            }
        }
        Ok(AbGroup::new(rank, &cyclic))
    }
}

/// Integer-coefficient cycle keyed by the reduced basis of each component.
pub type OrdCycle = BTreeMap<Vec<Poly>, i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub module: AbGroup,
    pub certified: bool,
}

/// `∑ E_V [V]` with `V` a prime ideal stored by its reduced grevlex basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedCycle {
    nvars: usize,
    terms: BTreeMap<Vec<Poly>, Term>,
}

impl EnrichedCycle {
    pub fn new(nvars: usize) -> EnrichedCycle {
        EnrichedCycle { nvars, terms: BTreeMap::new() }
    }

    pub fn single(prime: &Ideal, module: AbGroup, certified: bool) -> EnrichedCycle {
        let mut c = EnrichedCycle::new(prime.nvars());
        c.add_term(prime, module, certified);
        c
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Add `module [prime]`; the prime is canonicalized.
    pub fn add_term(&mut self, prime: &Ideal, module: AbGroup, certified: bool) {
        assert_eq!(prime.nvars(), self.nvars, "ring mismatch");
        self.add_key(prime.reduced(), module, certified);
    }

    fn add_key(&mut self, key: Vec<Poly>, module: AbGroup, certified: bool) {
        if module.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(t) => {
                t.module = t.module.dsum(&module);
                t.certified &= certified;
            }
            None => {
                self.terms.insert(key, Term { module, certified });
            }
        }
    }

    /// Components as `(prime, coefficient, certified)` in canonical order.
    pub fn components(&self) -> Vec<(Ideal, &AbGroup, bool)> {
        self.terms
            .iter()
            .map(|(k, t)| (Ideal::new(self.nvars, k.clone()), &t.module, t.certified))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Poly>, &Term)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, prime: &Ideal) -> AbGroup {
        self.terms.get(&prime.reduced()).map(|t| t.module.clone()).unwrap_or_default()
    }

    pub fn all_certified(&self) -> bool {
        self.terms.values().all(|t| t.certified)
    }

    pub fn add(&self, other: &EnrichedCycle) -> Result<EnrichedCycle> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        let mut out = self.clone();
        for (k, t) in &other.terms {
            out.add_key(k.clone(), t.module.clone(), t.certified);
        }
        Ok(out)
    }

    pub fn scale(&self, q: &AbGroup) -> EnrichedCycle {
        let mut out = EnrichedCycle::new(self.nvars);
        for (k, t) in &self.terms {
            out.add_key(k.clone(), q.tensor(&t.module), t.certified);
        }
        out
    }

    pub fn ord(&self) -> OrdCycle {
        self.terms
            .iter()
            .filter(|(_, t)| t.module.rank > 0)
            .map(|(k, t)| (k.clone(), t.module.rank as i64))
            .collect()
    }

    /// `D ⩽ E`: some enriched cycle `P` has `D + P = E`.
    pub fn le(&self, other: &EnrichedCycle) -> bool {
        self.terms.iter().all(|(k, t)| match other.terms.get(k) {
            Some(u) => t.module.le(&u.module),
            None => false,
        })
    }

    /// Same cycle with every component mapped through `f`; images are re-canonicalized and merged.
    pub fn map_components<F>(&self, nvars: usize, mut f: F) -> EnrichedCycle
    where
        F: FnMut(&Ideal) -> Ideal,
    {
        let mut out = EnrichedCycle::new(nvars);
        for (p, m, c) in self.components() {
            out.add_term(&f(&p), m.clone(), c);
        }
        out
    }

    pub fn to_json(&self, ring: &PolyRing) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, t)| {
                    json!({
                        "ideal": display_gens(ring, k),
                        "module": t.module.to_json(),
                        "certified": t.certified,
                    })
                })
                .collect(),
        )
    }

    /// One `coefficient[V(...)]` line per component.
    pub fn fmt_lines(&self, ring: &PolyRing) -> Vec<String> {
        self.terms
            .iter()
            .map(|(k, t)| {
                let mark = if t.certified { "" } else { "  (uncertified prime)" };
                format!("({})[V({})]{}", t.module, display_gens(ring, k).join(", "), mark)
            })
            .collect()
    }
}

/// Generators for display: lowest leading monomial last, so variables appear in ring order.
pub fn display_gens(ring: &PolyRing, gens: &[Poly]) -> Vec<String> {
    gens.iter().rev().map(|g| ring.fmt(g)).collect()
}

/// `E^k` indexed by degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEnrichedCycle {
    nvars: usize,
    degrees: BTreeMap<i64, EnrichedCycle>,
}

impl GradedEnrichedCycle {
    pub fn new(nvars: usize) -> GradedEnrichedCycle {
        GradedEnrichedCycle { nvars, degrees: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn insert(&mut self, k: i64, c: EnrichedCycle) {
        assert_eq!(c.nvars(), self.nvars, "ring mismatch");
        if c.is_empty() {
            self.degrees.remove(&k);
            return;
        }
        self.degrees.insert(k, c);
    }

    /// Add `c` into degree `k`.
    pub fn accumulate(&mut self, k: i64, c: &EnrichedCycle) {
        let cur = self.degree(k);
        let sum = cur.add(c).expect("ring mismatch");
        self.insert(k, sum);
    }

    pub fn degree(&self, k: i64) -> EnrichedCycle {
        self.degrees.get(&k).cloned().unwrap_or_else(|| EnrichedCycle::new(self.nvars))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.degrees.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &EnrichedCycle)> {
        self.degrees.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn add(&self, other: &GradedEnrichedCycle) -> Result<GradedEnrichedCycle> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        let mut out = self.clone();
        for (k, c) in &other.degrees {
            out.accumulate(*k, c);
        }
        Ok(out)
    }

    pub fn scale(&self, q: &AbGroup) -> GradedEnrichedCycle {
        let mut out = GradedEnrichedCycle::new(self.nvars);
        for (k, c) in &self.degrees {
            out.insert(*k, c.scale(q));
        }
        out
    }

    /// `(E[k])^i = E^{i+k}`.
    pub fn shift(&self, k: i64) -> GradedEnrichedCycle {
        GradedEnrichedCycle {
            nvars: self.nvars,
            degrees: self.degrees.iter().map(|(i, c)| (i - k, c.clone())).collect(),
        }
    }

    /// `∑_i (-1)^i [E^i]^ord`.
    pub fn ord(&self) -> OrdCycle {
        let mut out = OrdCycle::new();
        for (k, c) in &self.degrees {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            for (key, r) in c.ord() {
                *out.entry(key).or_insert(0) += sign * r;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn le(&self, other: &GradedEnrichedCycle) -> bool {
        self.degrees.iter().all(|(k, c)| c.le(&other.degree(*k)))
    }

    /// Union of component ideals over all degrees.
    pub fn support_keys(&self) -> BTreeSet<Vec<Poly>> {
        self.degrees.values().flat_map(|c| c.terms.keys().cloned()).collect()
    }

    pub fn to_json(&self, ring: &PolyRing) -> Value {
        let mut m = serde_json::Map::new();
        for (k, c) in &self.degrees {
            m.insert(k.to_string(), c.to_json(ring));
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_normalization() {
        assert_eq!(AbGroup::new(0, &[2, 4]).torsion, vec![2, 4]);
        assert_eq!(AbGroup::new(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(AbGroup::new(0, &[4, 6]).torsion, vec![2, 12]);
        assert_eq!(AbGroup::new(1, &[1, 0]).torsion, Vec::<u64>::new());
    }

    #[test]
    fn dsum_and_tensor() {
        assert_eq!(AbGroup::free(2).dsum(&AbGroup::free(1)), AbGroup::free(3));
        assert_eq!(AbGroup::zero().dsum(&AbGroup::new(1, &[3])), AbGroup::new(1, &[3]));
        let z4 = AbGroup::new(0, &[4]);
        let z6 = AbGroup::new(0, &[6]);
        assert_eq!(z4.tensor(&z6), AbGroup::new(0, &[2]));
        assert_eq!(z4.tensor(&AbGroup::free(1)), z4);
        assert_eq!(AbGroup::free(3).tensor(&AbGroup::free(2)), AbGroup::free(6));
    }

    #[test]
    fn parse_groups() {
        assert_eq!("Z^3".parse::<AbGroup>().unwrap(), AbGroup::free(3));
        assert_eq!("0".parse::<AbGroup>().unwrap(), AbGroup::zero());
        assert_eq!("Z + Z/2 + Z/3".parse::<AbGroup>().unwrap(), AbGroup::new(1, &[6]));
        assert_eq!(AbGroup::new(2, &[4]).to_string().parse::<AbGroup>().unwrap(), AbGroup::new(2, &[4]));
        assert!("Q".parse::<AbGroup>().is_err());
    }

    #[test]
    fn summand_order() {
        assert!(AbGroup::free(1).le(&AbGroup::free(2)));
        assert!(!AbGroup::new(0, &[4]).le(&AbGroup::new(0, &[2])));
        assert!(AbGroup::new(0, &[2]).le(&AbGroup::new(0, &[6])));
        assert!(!AbGroup::new(0, &[2]).le(&AbGroup::new(0, &[4])));
    }

    #[test]
    fn cycle_arithmetic() {
        let x = Ideal::new(2, vec![Poly::var(2, 0)]);
        let y = Ideal::new(2, vec![Poly::var(2, 1)]);
        let a = EnrichedCycle::single(&x, AbGroup::free(1), true);
        let b = EnrichedCycle::single(&y, AbGroup::free(1), true);
        assert_eq!(a.add(&a).unwrap().coefficient(&x), AbGroup::free(2));
        assert_eq!(a.add(&b).unwrap().len(), 2);
        assert_eq!(a.add(&EnrichedCycle::new(2)).unwrap(), a);
        let two = a.scale(&AbGroup::free(2));
        assert_eq!(two.scale(&AbGroup::new(0, &[2])).coefficient(&x), AbGroup::new(0, &[2, 2]));
        assert!(a.le(&two) && !two.le(&a));

        let mut g = GradedEnrichedCycle::new(2);
        g.insert(1, a.clone());
        assert_eq!(g.ord().values().copied().collect::<Vec<_>>(), vec![-1]);
        assert_eq!(g.shift(3).shift(-3), g);
        assert_eq!(g.shift(1).degrees(), vec![0]);
    }
}

use super::groebner::GBasis;
use super::mono::{self, Mono, MonomialOrder};
use super::polynomial::{Poly, Q};
use num_traits::{One, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

/// Polynomial ideal with a lazily cached reduced grevlex Groebner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Poly>,
    gb: OnceLock<Arc<GBasis>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<Poly>) -> Ideal {
        for g in &gens {
            assert_eq!(g.nvars(), nvars, "ring mismatch");
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { nvars, gens, gb: OnceLock::new() }
    }

    pub fn zero(nvars: usize) -> Ideal {
        Ideal::new(nvars, Vec::new())
    }

    pub fn unit(nvars: usize) -> Ideal {
        Ideal::new(nvars, vec![Poly::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn gb(&self) -> &GBasis {
        self.gb
            .get_or_init(|| Arc::new(GBasis::compute(self.nvars, &self.gens, MonomialOrder::GrevLex)))
    }

    pub fn gb_in(&self, ord: MonomialOrder) -> GBasis {
        if ord == MonomialOrder::GrevLex {
            return self.gb().clone();
        }
        GBasis::compute(self.nvars, &self.gens, ord)
    }

    /// Reduced grevlex basis; canonical for the ideal.
    pub fn reduced(&self) -> Vec<Poly> {
        self.gb().polys()
    }

    /// Same ideal with the reduced basis as generators.
    pub fn canonical(&self) -> Ideal {
        let gens = self.reduced();
        let out = Ideal { nvars: self.nvars, gens, gb: OnceLock::new() };
        let _ = out.gb.set(Arc::new(self.gb().clone()));
        out
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.gb().normal_form(p)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        assert_eq!(p.nvars(), self.nvars, "ring mismatch");
        self.gb().reduces_to_zero(p)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same(&self, other: &Ideal) -> bool {
        self.nvars == other.nvars && self.reduced() == other.reduced()
    }

    pub fn with(&self, more: &[Poly]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(more.iter().cloned());
        Ideal::new(self.nvars, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        self.with(&other.gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(self.nvars, gens)
    }

    /// `I ∩ Q[remaining variables]`, kept in the same ring.
    pub fn eliminate(&self, drop: &[usize]) -> Ideal {
        if drop.is_empty() {
            return self.clone();
        }
        let mask = mono::mask_of(drop);
        let gb = self.gb_in(MonomialOrder::Block(mask));
        let gens = gb
            .polys()
            .into_iter()
            .filter(|p| p.terms().iter().all(|(m, _)| !mono::uses_mask(m, mask)))
            .collect();
        Ideal::new(self.nvars, gens)
    }

    /// Eliminate every variable at index `>= k`, returning an ideal in the first `k` variables.
    pub fn project(&self, k: usize) -> Ideal {
        let drop: Vec<usize> = (k..self.nvars).collect();
        let e = self.eliminate(&drop);
        let map: Vec<Option<usize>> = (0..self.nvars).map(|i| if i < k { Some(i) } else { None }).collect();
        Ideal::new(k, e.gens.iter().map(|g| g.remap(k, &map)).collect())
    }

    /// Embed into a ring with extra trailing variables.
    pub fn extend(&self, nvars: usize) -> Ideal {
        Ideal::new(nvars, self.gens.iter().map(|g| g.extend(nvars)).collect())
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(self.nvars);
        }
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let n = self.nvars;
        let t = Poly::var(n + 1, n);
        let one_minus_t = &Poly::one(n + 1) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.extend(n + 1));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.extend(n + 1));
        }
        let big = Ideal::new(n + 1, gens);
        big.project(n)
    }

    pub fn colon(&self, g: &Poly) -> Ideal {
        assert!(!g.is_zero(), "colon by the zero polynomial");
        if g.is_constant() {
            return self.clone();
        }
        if self.contains(g) {
            return Ideal::unit(self.nvars);
        }
        let principal = Ideal::new(self.nvars, vec![g.clone()]);
        let inter = self.intersect(&principal);
        let gens = inter
            .gens
            .iter()
            .map(|h| h.exact_div(g).expect("intersection with (g) is divisible by g"))
            .collect();
        Ideal::new(self.nvars, gens)
    }

    /// `I : g^∞` by iterated colon until two successive ideals agree.
    pub fn saturate(&self, g: &Poly) -> Ideal {
        assert!(!g.is_zero(), "saturation by the zero polynomial");
        let mut cur = self.canonical();
        loop {
            let next = cur.colon(g).canonical();
            if next.same(&cur) {
                return cur;
            }
            cur = next;
        }
    }

    /// `I : J^∞ = ⋂_g I : g^∞`.
    pub fn saturate_ideal(&self, j: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for g in j.reduced() {
            let s = self.saturate(&g);
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s),
            });
        }
        acc.unwrap_or_else(|| self.clone())
    }

    pub fn radical_contains(&self, p: &Poly) -> bool {
        if p.is_zero() || self.contains(p) {
            return true;
        }
        let n = self.nvars;
        let t = Poly::var(n + 1, n);
        let rab = &Poly::one(n + 1) - &(&t * &p.extend(n + 1));
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.extend(n + 1)).collect();
        gens.push(rab);
        Ideal::new(n + 1, gens).is_unit()
    }

    pub fn radical_contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.radical_contains(g))
    }

    /// Largest set of variables independent modulo the leading-term ideal.
    pub fn independent_set(&self) -> Option<Vec<usize>> {
        if self.is_unit() {
            return None;
        }
        let lms = self.gb().lead_monomials();
        Some(max_independent(self.nvars, &lms))
    }

    /// Krull dimension of the quotient ring; −1 for the unit ideal.
    pub fn dim(&self) -> i64 {
        match self.independent_set() {
            None => -1,
            Some(s) => s.len() as i64,
        }
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.dim() == 0
    }

    /// Standard monomials of a zero-dimensional ideal, or `None` if positive-dimensional.
    pub fn standard_monomials(&self) -> Option<Vec<Mono>> {
        let gb = self.gb();
        if gb.is_unit() {
            return Some(Vec::new());
        }
        let lms = gb.lead_monomials();
        standard_monomials_of(self.nvars, &lms)
    }

    pub fn vdim(&self) -> Option<usize> {
        self.standard_monomials().map(|v| v.len())
    }
}

pub(crate) fn standard_monomials_of(nvars: usize, lms: &[Mono]) -> Option<Vec<Mono>> {
    for v in 0..nvars {
        let pure = lms.iter().any(|m| m[v] > 0 && m.iter().enumerate().all(|(i, &e)| i == v || e == 0));
        if !pure {
            return None;
        }
    }
    let start = mono::one(nvars);
    if lms.iter().any(|l| mono::divides(l, &start)) {
        return Some(Vec::new());
    }
    let mut seen: HashSet<Mono> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(m) = queue.pop_front() {
        out.push(m.clone());
        for v in 0..nvars {
            let mut next = m.clone();
            next[v] += 1;
            if seen.contains(&next) || lms.iter().any(|l| mono::divides(l, &next)) {
                continue;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    out.sort_by(|a, b| MonomialOrder::GrevLex.cmp(a, b));
    Some(out)
}

fn max_independent(nvars: usize, lms: &[Mono]) -> Vec<usize> {
    // supports as bitmasks; S is independent iff no support is a subset of S
    let supports: Vec<u64> = lms
        .iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1u64 << i))
        })
        .collect();
    let mut best: u64 = 0;
    let mut best_len = 0usize;
    fn rec(i: usize, n: usize, cur: u64, len: usize, sup: &[u64], best: &mut u64, best_len: &mut usize) {
        if len + (n - i) <= *best_len {
            return;
        }
        if i == n {
            *best = cur;
            *best_len = len;
            return;
        }
        let with = cur | (1u64 << i);
        if !sup.iter().any(|s| s & !with == 0) {
            rec(i + 1, n, with, len + 1, sup, best, best_len);
        }
        rec(i + 1, n, cur, len, sup, best, best_len);
    }
    rec(0, nvars, 0, 0, &supports, &mut best, &mut best_len);
    (0..nvars).filter(|i| (best >> i) & 1 == 1).collect()
}

/// Quotient algebra R/J of a zero-dimensional ideal, with a monomial basis.
pub struct QuotientAlgebra {
    pub basis: Vec<Mono>,
    index: HashMap<Mono, usize>,
    gb: GBasis,
}

impl QuotientAlgebra {
    pub fn new(j: &Ideal) -> Option<QuotientAlgebra> {
        let basis = j.standard_monomials()?;
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Some(QuotientAlgebra { basis, index, gb: j.gb().clone() })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the normal form of `p`.
    pub fn coords(&self, p: &Poly) -> Vec<Q> {
        let nf = self.gb.normal_form(p);
        let mut v = vec![Q::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Matrix (column per basis element) of multiplication by `p`.
    pub fn mult_matrix(&self, p: &Poly) -> Vec<Vec<Q>> {
        let n = p.nvars();
        self.basis
            .iter()
            .map(|b| {
                let prod = p.mul_term(b, &Q::one());
                debug_assert_eq!(prod.nvars(), n);
                self.coords(&prod)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
        let n: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        Ideal::new(n.len(), gens.iter().map(|g| parse_poly(g, &n).unwrap()).collect())
    }

    fn p(names: &[&str], s: &str) -> Poly {
        let n: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        parse_poly(s, &n).unwrap()
    }

    const V: [&str; 3] = ["x", "y", "w"];

    #[test]
    fn eliminate_substitution() {
        let i = ideal(&V, &["w - x^2", "y - w"]);
        let e = i.eliminate(&[2]);
        assert!(e.same(&ideal(&V, &["y - x^2"])));
    }

    #[test]
    fn colon_and_saturate() {
        let i = ideal(&V, &["x^2"]);
        assert!(i.colon(&p(&V, "x")).same(&ideal(&V, &["x"])));
        let j = ideal(&V, &["x", "y"]);
        assert!(j.colon(&p(&V, "y")).is_unit());
        let k = ideal(&V, &["x*y"]);
        assert!(k.saturate(&p(&V, "x")).same(&ideal(&V, &["y"])));
        let c = ideal(&["y", "w0", "w1"], &["w0", "w1", "y^2"]);
        let yy = p(&["y", "w0", "w1"], "y");
        assert!(c.colon(&yy).same(&ideal(&["y", "w0", "w1"], &["w0", "w1", "y"])));
        assert!(c.saturate(&yy).is_unit());
        assert!(k.saturate(&Poly::one(3)).same(&k));
    }

    #[test]
    fn dimensions() {
        assert_eq!(ideal(&["x", "y"], &["x", "y"]).dim(), 0);
        assert_eq!(ideal(&["u", "x", "y", "z"], &["u^2+x^3", "y", "z"]).dim(), 1);
        assert_eq!(Ideal::zero(5).dim(), 5);
        assert_eq!(Ideal::unit(2).dim(), -1);
        assert_eq!(ideal(&["x", "y"], &["x^2", "x*y", "y^3"]).vdim(), Some(4));
    }

    #[test]
    fn intersection_and_radical() {
        let a = ideal(&V, &["x"]);
        let b = ideal(&V, &["y"]);
        assert!(a.intersect(&b).same(&ideal(&V, &["x*y"])));
        let c = ideal(&V, &["x^3", "y"]);
        assert!(c.radical_contains(&p(&V, "x")));
        assert!(!c.radical_contains(&p(&V, "w")));
    }

    #[test]
    fn membership_examples() {
        let r = ["x", "y", "w0", "w1"];
        let i = ideal(&r, &["w0", "w1", "y"]);
        assert!(!i.contains(&p(&r, "w0 - 2*x")));
        assert!(ideal(&r, &["y"]).contains(&p(&r, "y^2")));
    }
}

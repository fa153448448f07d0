use super::mono::{self, Mono, MonomialOrder};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Sparse polynomial over Q. Terms are kept sorted by descending grevlex, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Mono, Q)>,
}

const CANON: MonomialOrder = MonomialOrder::GrevLex;

pub(crate) fn merge_add(
    a: &[(Mono, Q)],
    b: &[(Mono, Q)],
    ord: MonomialOrder,
) -> Vec<(Mono, Q)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ord.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn normalize_terms(terms: Vec<(Mono, Q)>, ord: MonomialOrder) -> Vec<(Mono, Q)> {
    let mut acc: HashMap<Mono, Q> = HashMap::with_capacity(terms.len());
    for (m, c) in terms {
        if c.is_zero() {
            continue;
        }
        *acc.entry(m).or_insert_with(Q::zero) += c;
    }
    let mut v: Vec<(Mono, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|x, y| ord.cmp(&y.0, &x.0));
    v
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(mono::one(nvars), c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, q(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly { nvars, terms: vec![(mono::var(nvars, i), Q::one())] }
    }

    pub fn monomial(nvars: usize, m: Mono, c: Q) -> Self {
        debug_assert_eq!(m.len(), nvars);
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Mono, Q)>) -> Self {
        Poly { nvars, terms: normalize_terms(terms, CANON) }
    }

    /// Trusts that `terms` are already sorted descending in grevlex with no zeros.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Mono, Q)>) -> Self {
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Q)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && mono::is_one(&self.terms[0].0))
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.terms.is_empty() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Leading term in grevlex.
    pub fn lead(&self) -> Option<&(Mono, Q)> {
        self.terms.first()
    }

    pub fn lead_in(&self, ord: MonomialOrder) -> Option<&(Mono, Q)> {
        self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| mono::degree(m) as i64).max().unwrap_or(-1)
    }

    pub fn degree_in(&self, v: usize) -> i64 {
        self.terms.iter().map(|(m, _)| m[v] as i64).max().unwrap_or(-1)
    }

    pub fn vars_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    pub fn var_list(&self) -> Vec<usize> {
        self.vars_used()
            .iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_linear(&self) -> bool {
        self.total_degree() <= 1
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &[u32], c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (mono::mul(t, m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[v] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[v] -= 1;
                (m2, c * q(m[v] as i64))
            })
            .collect();
        Poly::from_terms(self.nvars, terms)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `x_v := val`.
    pub fn eval_var(&self, v: usize, val: &Q) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2[v];
                m2[v] = 0;
                (m2, c * num_traits::pow(val.clone(), e as usize))
            })
            .collect();
        Poly::from_terms(self.nvars, terms)
    }

    /// Substitute `x_v := s`.
    pub fn substitute(&self, v: usize, s: &Poly) -> Poly {
        let coeffs = self.coefficients_in(v);
        let mut acc = Poly::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * s) + c;
        }
        acc
    }

    /// Simultaneous substitution `x_i := images[i]`; images may live in another ring.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut acc: Vec<(Mono, Q)> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc.extend(t.terms);
        }
        Poly::from_terms(target, acc)
    }

    /// Coefficients `c_k` with `self = sum_k c_k x_v^k`, each free of `x_v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_in(v);
        if d < 0 {
            return Vec::new();
        }
        let mut buckets: Vec<Vec<(Mono, Q)>> = vec![Vec::new(); d as usize + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[v] as usize;
            m2[v] = 0;
            buckets[e].push((m2, c.clone()));
        }
        buckets.into_iter().map(|t| Poly::from_terms(self.nvars, t)).collect()
    }

    /// Embed into a ring with more variables appended at the end.
    pub fn extend(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.resize(nvars, 0);
                (m2, c.clone())
            })
            .collect();
        Poly::from_terms(nvars, terms)
    }

    /// Move variable `i` to position `map[i]` in a ring of `nvars` variables.
    /// Variables mapped to `None` must not occur.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = mono::one(nvars);
                for (i, &e) in m.iter().enumerate() {
                    if e > 0 {
                        let j = map[i].expect("remap drops a variable that occurs");
                        m2[j] += e;
                    }
                }
                (m2, c.clone())
            })
            .collect();
        Poly::from_terms(nvars, terms)
    }

    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Integer coefficients with content one and positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        let mut factor = Q::new(den, g);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn content_monomial(&self) -> Mono {
        let mut m: Mono = match self.terms.first() {
            Some((m, _)) => m.clone(),
            None => return mono::one(self.nvars),
        };
        for (t, _) in &self.terms[1..] {
            for (a, b) in m.iter_mut().zip(t.iter()) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn div_monomial(&self, m: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (mono::div(t, m), c.clone())).collect(),
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| mono::degree(m) == d).cloned().collect(),
        }
    }

    /// Exact division; returns `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        let (lm, lc) = other.terms[0].clone();
        let mut rem = self.terms.clone();
        let mut quo: Vec<(Mono, Q)> = Vec::new();
        while let Some((m, c)) = rem.first().cloned() {
            if !mono::divides(&lm, &m) {
                return None;
            }
            let qm = mono::div(&m, &lm);
            let qc = &c / &lc;
            let sub = other.mul_term(&qm, &(-&qc));
            rem = merge_add(&rem, &sub.terms, CANON);
            quo.push((qm, qc));
        }
        Some(Poly::from_terms(self.nvars, quo))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            if factors.is_empty() {
                s.push_str(&coef);
            } else {
                if !a.is_one() {
                    s.push_str(&coef);
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        Poly { nvars: self.nvars, terms: merge_add(&self.terms, &rhs.terms, CANON) }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut acc: HashMap<Mono, Q> = HashMap::with_capacity(self.len() * rhs.len());
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *acc.entry(mono::mul(a, b)).or_insert_with(Q::zero) += x * y;
            }
        }
        let mut v: Vec<(Mono, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|x, y| CANON.cmp(&y.0, &x.0));
        Poly { nvars: self.nvars, terms: v }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn arithmetic_and_derivative() {
        let f = &x(0).pow(2) + &x(1).pow(3);
        assert_eq!(f.derivative(1), x(1).pow(2).scale(&q(3)));
        assert_eq!(f.derivative(0), x(0).scale(&q(2)));
        let g = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(g, &x(0).pow(2) - &x(1).pow(2));
        assert!(Poly::int(2, 7).derivative(0).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &a * &a;
        assert_eq!(b.exact_div(&a), Some(a.clone()));
        assert_eq!(b.exact_div(&x(0)), None);
    }

    #[test]
    fn substitution() {
        // (x + y)^2 with x := y gives 4y^2
        let f = (&x(0) + &x(1)).pow(2);
        assert_eq!(f.substitute(0, &x(1)), x(1).pow(2).scale(&q(4)));
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let f = (&x(0).scale(&q(-4)) + &Poly::int(2, 6)).scale(&Q::new(1.into(), 3.into()));
        assert_eq!(f.primitive(), &x(0).scale(&q(2)) - &Poly::int(2, 3));
    }
}

//! Factorization of multivariate polynomials over Q.
//!
//! Squarefree input is made monic in a main variable by a random shear, specialized to a
//! univariate image, factored there, and lifted back by Hensel lifting in the other variables.

pub mod uni;

use super::ideal::Ideal;
use super::mono::{self, Mono};
use super::polynomial::{q, Poly, Q};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use uni::QPoly;

/// `p = unit * prod f_i^{e_i}` with each `f_i` primitive over Z, positive grevlex leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn expand(&self, nvars: usize) -> Poly {
        let mut acc = Poly::constant(nvars, self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

thread_local! {
    static CACHE: RefCell<HashMap<Poly, Factorization>> = RefCell::new(HashMap::new());
}

pub fn factor(p: &Poly) -> Factorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    if let Some(f) = CACHE.with(|c| c.borrow().get(p).cloned()) {
        return f;
    }
    let f = factor_uncached(p);
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 20_000 {
            c.clear();
        }
        c.insert(p.clone(), f.clone());
    });
    f
}

pub fn is_irreducible(p: &Poly) -> bool {
    !p.is_constant() && factor(p).is_irreducible()
}

/// Distinct irreducible factors.
pub fn irreducible_factors(p: &Poly) -> Vec<Poly> {
    factor(p).factors.into_iter().map(|(f, _)| f).collect()
}

fn factor_uncached(p: &Poly) -> Factorization {
    let n = p.nvars();
    let prim = p.primitive();
    let unit = p.terms()[0].1.clone() / prim.terms()[0].1.clone();
    let mut factors: BTreeMap<Poly, u32> = BTreeMap::new();
    let content = prim.content_monomial();
    for (i, &e) in content.iter().enumerate() {
        if e > 0 {
            *factors.entry(Poly::var(n, i)).or_insert(0) += e;
        }
    }
    let rest = prim.div_monomial(&content);
    if !rest.is_constant() {
        let vars = rest.var_list();
        let distinct = if vars.len() == 1 {
            univariate_distinct(&rest, vars[0])
        } else {
            multivariate_distinct(&rest)
        };
        for f in distinct {
            let mut e = 0;
            let mut cur = rest.clone();
            while let Some(qq) = cur.exact_div(&f) {
                cur = qq;
                e += 1;
            }
            debug_assert!(e > 0);
            *factors.entry(f).or_insert(0) += e;
        }
    }
    Factorization { unit, factors: factors.into_iter().collect() }
}

fn to_dense(p: &Poly, v: usize) -> QPoly {
    let d = p.degree_in(v).max(0) as usize;
    let mut out = vec![Q::zero(); d + 1];
    for (m, c) in p.terms() {
        out[m[v] as usize] += c;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn from_dense(a: &[Q], nvars: usize, v: usize) -> Poly {
    let terms = a
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let mut m = mono::one(nvars);
            m[v] = i as u32;
            (m, c.clone())
        })
        .collect();
    Poly::from_terms(nvars, terms)
}

fn univariate_distinct(p: &Poly, v: usize) -> Vec<Poly> {
    let dense = to_dense(p, v);
    uni::factor_q(&dense)
        .into_iter()
        .map(|(z, _)| from_dense(&uni::zpoly_to_q(&z), p.nvars(), v).primitive())
        .collect()
}

/// Multivariate gcd via the generator of `(a) ∩ (b)`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars();
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let inter = Ideal::new(n, vec![a.clone()]).intersect(&Ideal::new(n, vec![b.clone()]));
    let lcm = inter.reduced();
    assert_eq!(lcm.len(), 1, "intersection of principal ideals is principal");
    (a * b).exact_div(&lcm[0]).expect("lcm divides the product").primitive()
}

/// Shear `x_i -> x_i + s_i x_v` for the listed variables.
fn shear(p: &Poly, v: usize, s: &[(usize, Q)], inverse: bool) -> Poly {
    let n = p.nvars();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    for (i, si) in s {
        let c = if inverse { -si.clone() } else { si.clone() };
        images[*i] = &images[*i] + &Poly::var(n, v).scale(&c);
    }
    p.compose(&images)
}

fn translate(p: &Poly, shifts: &[(usize, Q)], inverse: bool) -> Poly {
    let n = p.nvars();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    for (i, a) in shifts {
        let c = if inverse { -a.clone() } else { a.clone() };
        images[*i] = &images[*i] + &Poly::constant(n, c);
    }
    p.compose(&images)
}

/// Degree in the variables other than `v`.
fn ydeg(m: &[u32], v: usize) -> u32 {
    m.iter().enumerate().filter(|(i, _)| *i != v).map(|(_, e)| *e).sum()
}

fn multivariate_distinct(p: &Poly) -> Vec<Poly> {
    let n = p.nvars();
    let vars = p.var_list();
    let v = vars[0];
    let others: Vec<usize> = vars[1..].to_vec();
    let d = p.total_degree() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7 ^ (p.len() as u64) ^ ((d as u64) << 20));

    // shear so that p is monic in v of degree d
    let mut attempt = 0;
    let (sh, pp) = loop {
        let s: Vec<(usize, Q)> = others
            .iter()
            .map(|&i| (i, if attempt == 0 { Q::zero() } else { q(rng.gen_range(-3..=3)) }))
            .collect();
        let cand = shear(p, v, &s, false);
        if cand.degree_in(v) == d as i64 {
            break (s, cand);
        }
        attempt += 1;
        assert!(attempt < 200, "could not make polynomial monic by shearing");
    };
    let lc = pp.coefficients_in(v).last().unwrap().constant_value().unwrap();
    let pp = pp.scale(&lc.recip());

    let mut sqfree = pp.clone();
    let mut point: Option<Vec<(usize, Q)>> = None;
    for round in 0..2 {
        for k in 0..12 {
            let radius = 3 + 4 * k as i64;
            let a: Vec<(usize, Q)> = others.iter().map(|&i| (i, q(rng.gen_range(-radius..=radius)))).collect();
            let mut img = sqfree.clone();
            for (i, val) in &a {
                img = img.eval_var(*i, val);
            }
            let dense = to_dense(&img, v);
            if uni::q_is_squarefree(&dense) {
                point = Some(a);
                break;
            }
        }
        if point.is_some() || round == 1 {
            break;
        }
        // not squarefree: divide out gcd(p, dp/dv)
        let g = gcd(&sqfree, &sqfree.derivative(v));
        if !g.is_constant() {
            sqfree = sqfree.exact_div(&g).expect("gcd divides");
            let lcs = sqfree.coefficients_in(v).last().unwrap().constant_value().unwrap();
            sqfree = sqfree.scale(&lcs.recip());
        }
    }
    let point = point.expect("no squarefree specialization found");

    let found = lift_and_recombine(&sqfree, v, &point);
    found
        .into_iter()
        .map(|f| shear(&f, v, &sh, true).primitive())
        .filter(|f| !f.is_constant())
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Vec::new(), |mut acc: Vec<Poly>, f| {
            if !acc.contains(&f) {
                acc.push(f);
            }
            acc
        })
        .into_iter()
        .inspect(|f| {
            debug_assert_eq!(f.nvars(), n);
        })
        .collect()
}

/// `p` monic squarefree in `v`; `point` a specialization of the other variables with squarefree image.
fn lift_and_recombine(p: &Poly, v: usize, point: &[(usize, Q)]) -> Vec<Poly> {
    let n = p.nvars();
    let mut img = p.clone();
    for (i, val) in point {
        img = img.eval_var(*i, val);
    }
    let dense = to_dense(&img, v);
    let uf: Vec<QPoly> = uni::factor_q(&dense)
        .into_iter()
        .map(|(z, _)| uni::q_monic(&uni::zpoly_to_q(&z)))
        .collect();
    if uf.len() == 1 {
        return vec![p.clone()];
    }
    // move the specialization point to the origin
    let shifted = translate(p, point, false);
    let r = uf.len();
    let total: u32 = shifted.terms().iter().map(|(m, _)| ydeg(m, v)).max().unwrap_or(0);

    // Bezout: t_i * prod_{j != i} f_j = 1 mod f_i
    let mut ts: Vec<QPoly> = Vec::with_capacity(r);
    for i in 0..r {
        let mut other: QPoly = vec![Q::one()];
        for (j, f) in uf.iter().enumerate() {
            if j != i {
                other = uni::q_mul(&other, f);
            }
        }
        let (_, s, _) = uni::q_ext_gcd(&uni::q_divrem(&other, &uf[i]).1, &uf[i]);
        ts.push(s);
    }
    let mut lifted: Vec<Poly> = uf.iter().map(|f| from_dense(f, n, v)).collect();
    for k in 1..=total {
        let mut prod = Poly::one(n);
        for f in &lifted {
            prod = &prod * f;
        }
        let err = &shifted - &prod;
        if err.is_zero() {
            break;
        }
        // group the degree-k part of the error by its monomial in the other variables
        let mut groups: BTreeMap<Mono, Vec<(u32, Q)>> = BTreeMap::new();
        for (m, c) in err.terms() {
            if ydeg(m, v) != k {
                continue;
            }
            let mut key = m.clone();
            let e = key[v];
            key[v] = 0;
            groups.entry(key).or_default().push((e, c.clone()));
        }
        for (key, coeffs) in groups {
            let deg = coeffs.iter().map(|(e, _)| *e).max().unwrap() as usize;
            let mut e_mu = vec![Q::zero(); deg + 1];
            for (e, c) in coeffs {
                e_mu[e as usize] += c;
            }
            for i in 0..r {
                let delta = uni::q_divrem(&uni::q_mul(&ts[i], &e_mu), &uf[i]).1;
                if delta.is_empty() {
                    continue;
                }
                let dp = from_dense(&delta, n, v).mul_term(&key, &Q::one());
                lifted[i] = &lifted[i] + &dp;
            }
        }
    }
    let truncate = |f: &Poly| -> Poly {
        Poly::from_terms(n, f.terms().iter().filter(|(m, _)| ydeg(m, v) <= total).cloned().collect())
    };

    let mut remaining: Vec<usize> = (0..r).collect();
    let mut rest = shifted.clone();
    let mut found: Vec<Poly> = Vec::new();
    let mut k = 1;
    while 2 * k <= remaining.len() {
        let mut hit = false;
        for sub in index_subsets(remaining.len(), k) {
            let mut cand = Poly::one(n);
            for &s in &sub {
                cand = truncate(&(&cand * &lifted[remaining[s]]));
            }
            if let Some(quo) = rest.exact_div(&cand) {
                found.push(cand);
                rest = quo;
                let chosen: Vec<usize> = sub.iter().map(|&s| remaining[s]).collect();
                remaining.retain(|i| !chosen.contains(i));
                hit = true;
                break;
            }
        }
        if !hit {
            k += 1;
        }
    }
    if !rest.is_constant() {
        found.push(rest);
    }
    found.iter().map(|f| translate(f, point, true)).collect()
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn names() -> Vec<String> {
        ["u", "x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &names()).unwrap()
    }

    fn check(s: &str, expected_factors: usize) -> Factorization {
        let f = p(s);
        let fac = factor(&f);
        assert_eq!(fac.expand(4), f, "factorization of {} does not multiply back", s);
        assert_eq!(fac.factors.len(), expected_factors, "{}: {:?}", s, fac);
        fac
    }

    #[test]
    fn bivariate() {
        check("x*y", 2);
        check("x^2 - y^2", 2);
        check("u^2 + x^3", 1);
        check("u^3 + x^2", 1);
        check("(u^2+x^3)*x", 2);
        check("x^2 + y^2", 1);
        check("x^4 - y^4", 3);
    }

    #[test]
    fn with_multiplicity() {
        let f = check("(u^2+x^3)^3*x^2*(x+y)", 3);
        assert!(f.factors.iter().any(|(g, e)| *g == p("u^2+x^3") && *e == 3));
        check("3*(x*y - z^2)^2", 1);
    }

    #[test]
    fn trivariate() {
        check("(x+y+z)*(x*y+z^2+1)", 2);
        check("x*y*z + x^3 + y^3 + z^3", 1);
        check("(u - x*y)*(u + x*y)*(u^2 + z)", 3);
    }

    #[test]
    fn gcd_basic() {
        let a = p("(x+y)^2*(x-z)");
        let b = p("(x+y)*(x-z)^3*u");
        assert_eq!(gcd(&a, &b), p("(x+y)*(x-z)").primitive());
    }
}

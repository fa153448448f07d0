//! Minimal primes over Q.
//!
//! Linear variables are substituted away, reducible generators split the ideal into branches,
//! and what remains is handled over the field of fractions of a maximal independent set `U`:
//! `√I = √(I : h^∞) ∩ √(I + h)`, where `I : h^∞` is decomposed through the minimal polynomial
//! of a random linear form over `Q(U)`.

use super::factor;
use super::ideal::Ideal;
use super::mono::{self, MonomialOrder};
use super::polynomial::{q, Poly, Q};
use crate::error::{Error, Result};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct Component {
    /// Prime ideal with its reduced basis as generators.
    pub prime: Ideal,
    /// Primality established by a certificate (linear, linear plus one irreducible,
    /// or a field test over the independent variables).
    pub certified: bool,
}

pub fn minimal_primes(i: &Ideal) -> Result<Vec<Component>> {
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0);
    let found = rec(i, &mut rng, 0);
    let mut out: Vec<Component> = minimize(found)
        .into_iter()
        .map(|(p, c)| Component { prime: p.canonical(), certified: c })
        .collect();
    out.sort_by_key(|a| a.prime.reduced());
    Ok(out)
}

/// Drop duplicates and primes containing another prime of the list.
fn minimize(list: Vec<(Ideal, bool)>) -> Vec<(Ideal, bool)> {
    let mut uniq: Vec<(Ideal, bool)> = Vec::new();
    for (p, c) in list {
        if let Some(pos) = uniq.iter().position(|(u, _)| u.same(&p)) {
            uniq[pos].1 |= c;
        } else {
            uniq.push((p, c));
        }
    }
    let keep: Vec<bool> = (0..uniq.len())
        .map(|i| {
            !(0..uniq.len()).any(|j| j != i && uniq[i].0.contains_ideal(&uniq[j].0))
        })
        .collect();
    uniq.into_iter().zip(keep).filter(|(_, k)| *k).map(|(x, _)| x).collect()
}

/// A generator `c*v + r` with `c` constant and `r` free of `v`.
fn find_linear(gens: &[Poly]) -> Option<(usize, usize, Poly)> {
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&k| gens[k].len());
    for k in order {
        let g = &gens[k];
        for v in g.var_list().into_iter().rev() {
            if g.degree_in(v) != 1 {
                continue;
            }
            let cs = g.coefficients_in(v);
            if let Some(c) = cs[1].constant_value() {
                let expr = cs[0].scale(&(-c.recip()));
                return Some((k, v, expr));
            }
        }
    }
    None
}

fn rec(i: &Ideal, rng: &mut ChaCha8Rng, depth: usize) -> Vec<(Ideal, bool)> {
    assert!(depth < 200, "decomposition recursion too deep");
    if i.is_unit() {
        return Vec::new();
    }
    let n = i.nvars();
    let gens = i.reduced();
    if gens.is_empty() {
        return vec![(Ideal::zero(n), true)];
    }
    if let Some((k, v, expr)) = find_linear(&gens) {
        let rest: Vec<Poly> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g.substitute(v, &expr))
            .collect();
        let lin = &Poly::var(n, v) - &expr;
        return rec(&Ideal::new(n, rest), rng, depth + 1)
            .into_iter()
            .map(|(p, c)| (p.with(std::slice::from_ref(&lin)).canonical(), c))
            .collect();
    }
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&k| (gens[k].total_degree(), gens[k].len()));
    for &k in &order {
        let fac = factor::factor(&gens[k]);
        if fac.is_irreducible() {
            continue;
        }
        let distinct: Vec<Poly> = fac.factors.iter().map(|(f, _)| f.clone()).collect();
        if distinct.len() == 1 {
            let mut g2 = gens.clone();
            g2[k] = distinct[0].clone();
            return rec(&Ideal::new(n, g2), rng, depth + 1);
        }
        let mut all = Vec::new();
        for f in distinct {
            let mut g2 = gens.clone();
            g2[k] = f;
            all.extend(rec(&Ideal::new(n, g2), rng, depth + 1));
        }
        return minimize(all);
    }
    if gens.len() == 1 {
        return vec![(i.canonical(), true)];
    }
    general(i, rng, depth)
}

/// Leading coefficients with respect to the `x` block of a block-order basis.
fn block_leading_coefficients(b: &super::groebner::GBasis, xmask: u64) -> Vec<Poly> {
    let n = b.nvars();
    b.ordered_terms()
        .iter()
        .map(|terms| {
            let lead = &terms[0].0;
            let lead_x: Vec<u32> = lead
                .iter()
                .enumerate()
                .map(|(i, &e)| if (xmask >> i) & 1 == 1 { e } else { 0 })
                .collect();
            let coeff_terms = terms
                .iter()
                .filter(|(m, _)| {
                    m.iter()
                        .enumerate()
                        .all(|(i, &e)| (xmask >> i) & 1 == 0 || e == lead_x[i])
                })
                .map(|(m, c)| {
                    let mm: mono::Mono =
                        m.iter().enumerate().map(|(i, &e)| if (xmask >> i) & 1 == 1 { 0 } else { e }).collect();
                    (mm, c.clone())
                })
                .collect();
            Poly::from_terms(n, coeff_terms)
        })
        .collect()
}

/// Product of the distinct irreducible factors of the non-constant block leading coefficients.
fn saturating_element(b: &super::groebner::GBasis, xmask: u64) -> Poly {
    let n = b.nvars();
    let mut seen: Vec<Poly> = Vec::new();
    for c in block_leading_coefficients(b, xmask) {
        if c.is_constant() {
            continue;
        }
        for f in factor::irreducible_factors(&c) {
            if !seen.contains(&f) {
                seen.push(f);
            }
        }
    }
    seen.iter().fold(Poly::one(n), |acc, f| &acc * f)
}

fn x_mask(n: usize, u: &[usize]) -> u64 {
    let x: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
    mono::mask_of(&x)
}

/// Dimension of `Q(U)[X]/J` from a block basis.
fn dim_over_u(b: &super::groebner::GBasis, xmask: u64) -> Option<usize> {
    let n = b.nvars();
    let lms: Vec<mono::Mono> = b
        .lead_monomials()
        .into_iter()
        .map(|m| m.iter().enumerate().map(|(i, &e)| if (xmask >> i) & 1 == 1 { e } else { 0 }).collect())
        .collect();
    // restrict to x variables by treating u exponents as zero; u variables get a pure power 1
    let mut with_u = lms.clone();
    for v in 0..n {
        if (xmask >> v) & 1 == 0 {
            with_u.push(mono::var(n, v));
        }
    }
    super::ideal::standard_monomials_of(n, &with_u).map(|s| s.len())
}

fn general(i: &Ideal, rng: &mut ChaCha8Rng, depth: usize) -> Vec<(Ideal, bool)> {
    let n = i.nvars();
    let u = i.independent_set().expect("proper ideal");
    let xmask = x_mask(n, &u);
    let b = i.gb_in(MonomialOrder::Block(xmask));
    let h = saturating_element(&b, xmask);
    let mut out = Vec::new();
    let j = if h.is_constant() { i.canonical() } else { i.saturate(&h) };
    out.extend(decompose_over_u(&j, &u, rng, depth));
    if !h.is_constant() {
        out.extend(rec(&i.with(&[h]), rng, depth + 1));
    }
    minimize(out)
}

/// `j` has all associated primes independent of `u` and is zero-dimensional over `Q(U)`.
fn decompose_over_u(j: &Ideal, u: &[usize], rng: &mut ChaCha8Rng, depth: usize) -> Vec<(Ideal, bool)> {
    let n = j.nvars();
    if j.is_unit() {
        return Vec::new();
    }
    let xmask = x_mask(n, u);
    let xs: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
    let b = j.gb_in(MonomialOrder::Block(xmask));
    let Some(d) = dim_over_u(&b, xmask) else {
        return vec![(j.canonical(), false)];
    };
    if d == 0 {
        return Vec::new();
    }
    for attempt in 0..4 {
        let radius = 3 + 5 * attempt;
        let coeffs: Vec<(usize, Q)> = xs.iter().map(|&x| (x, q(rng.gen_range(-radius..=radius)))).collect();
        if coeffs.iter().all(|(_, c)| c.is_zero()) {
            continue;
        }
        let t = coeffs.iter().fold(Poly::zero(n), |acc, (x, c)| &acc + &Poly::var(n, *x).scale(c));
        let m = eliminant(j, &xs, &t);
        let Some(m) = m else { continue };
        let fac = factor::factor(&m);
        let tdeg = |f: &Poly| f.degree_in(n);
        let with_t: Vec<(Poly, u32)> = fac.factors.iter().filter(|(f, _)| tdeg(f) > 0).cloned().collect();
        let sub_t = |f: &Poly| -> Poly {
            // substitute T := t, back in the original ring
            let mut images: Vec<Poly> = (0..n).map(|v| Poly::var(n, v)).collect();
            images.push(t.clone());
            f.compose(&images)
        };
        if with_t.iter().any(|(_, e)| *e > 1) {
            // not radical: add the squarefree part of the eliminant
            let sqf = with_t.iter().fold(Poly::one(n + 1), |acc, (f, _)| &acc * f);
            let bigger = j.with(&[sub_t(&sqf)]);
            return rec(&bigger, rng, depth + 1);
        }
        let total: i64 = with_t.iter().map(|(f, _)| tdeg(f)).sum();
        if total as usize != d {
            continue;
        }
        if with_t.len() == 1 {
            return vec![(j.canonical(), true)];
        }
        let mut out = Vec::new();
        for (f, _) in &with_t {
            let k = j.with(&[sub_t(f)]);
            let kb = k.gb_in(MonomialOrder::Block(xmask));
            let hk = saturating_element(&kb, xmask);
            let p = if hk.is_constant() { k.canonical() } else { k.saturate(&hk) };
            if !p.is_unit() {
                out.push((p.canonical(), true));
            }
        }
        return out;
    }
    // no separating form found: add squarefree eliminants variable by variable
    let mut extra = Vec::new();
    for &x in &xs {
        let drop: Vec<usize> = xs.iter().copied().filter(|&y| y != x).collect();
        let e = j.eliminate(&drop);
        for g in e.reduced() {
            if g.degree_in(x) > 0 {
                let fac = factor::factor(&g);
                let sq = fac.factors.iter().fold(Poly::one(n), |acc, (f, _)| &acc * f);
                if !j.contains(&sq) {
                    extra.push(sq);
                }
            }
        }
    }
    if extra.is_empty() {
        vec![(j.canonical(), false)]
    } else {
        rec(&j.with(&extra), rng, depth + 1)
    }
}

/// Generator of `(J + (T - t)) ∩ Q[U, T]`, with `T` appended as the last variable.
fn eliminant(j: &Ideal, xs: &[usize], t: &Poly) -> Option<Poly> {
    let n = j.nvars();
    let tv = Poly::var(n + 1, n);
    let big = j.extend(n + 1).with(&[&tv - &t.extend(n + 1)]);
    let e = big.eliminate(xs);
    let gens = e.reduced();
    let with_t: Vec<Poly> = gens.into_iter().filter(|g| g.degree_in(n) > 0).collect();
    // the eliminant ideal is principal for a saturated J; take the lowest T-degree element
    with_t.into_iter().min_by_key(|g| (g.degree_in(n), g.len()))
}

/// Primality certificate for a prime produced elsewhere (e.g. supplied by a user).
pub fn certify(p: &Ideal) -> bool {
    match minimal_primes(p) {
        Ok(c) => c.len() == 1 && c[0].certified && c[0].prime.same(p),
        Err(_) => false,
    }
}

//! Univariate factorization over Q (Zassenhaus).

use crate::poly::polynomial::Q;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
pub type ZPoly = Vec<BigInt>;
/// Dense rational polynomial, lowest degree first, no trailing zeros.
pub type QPoly = Vec<Q>;
type MPoly = Vec<u64>;

fn trim_q(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn trim_z(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn trim_m(p: &mut MPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn deg<T>(p: &[T]) -> i64 {
    p.len() as i64 - 1
}

// ---- rational dense arithmetic ----

pub fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(&mut out);
    out
}

pub fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) - b.get(i).cloned().unwrap_or_else(Q::zero))
        .collect();
    trim_q(&mut out);
    out
}

pub fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    trim_q(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lc = b.last().unwrap().clone();
    let mut quo = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lc;
        for (i, y) in b.iter().enumerate() {
            r[i + shift] -= &c * y;
        }
        quo[shift] = c;
        r.pop();
        trim_q(&mut r);
    }
    trim_q(&mut quo);
    (quo, r)
}

pub fn q_monic(a: &QPoly) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => a.iter().map(|c| c / lc).collect(),
    }
}

pub fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim_q(&mut x);
    trim_q(&mut y);
    while !y.is_empty() {
        let (_, r) = q_divrem(&x, &y);
        x = y;
        y = r;
    }
    q_monic(&x)
}

/// Returns (g, s, t) with s*a + t*b = g monic.
pub fn q_ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![Q::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Q::one()]);
    while !r1.is_empty() {
        let (qq, r) = q_divrem(&r0, &r1);
        let s2 = q_sub(&s0, &q_mul(&qq, &s1));
        let t2 = q_sub(&t0, &q_mul(&qq, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lc = r0.last().cloned().unwrap_or_else(Q::one);
    let sc = |p: &QPoly| p.iter().map(|c| c / &lc).collect::<QPoly>();
    (sc(&r0), sc(&s0), sc(&t0))
}

pub fn q_derivative(a: &QPoly) -> QPoly {
    let mut out: QPoly = a.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(BigInt::from(i))).collect();
    trim_q(&mut out);
    out
}

pub fn q_is_squarefree(a: &QPoly) -> bool {
    deg(&q_gcd(a, &q_derivative(a))) == 0
}

/// Clear denominators and content; leading coefficient positive.
pub fn primitive_z(a: &QPoly) -> ZPoly {
    let mut den = BigInt::one();
    for c in a {
        den = den.lcm(c.denom());
    }
    let mut z: ZPoly = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    trim_z(&mut z);
    let mut g = BigInt::zero();
    for c in &z {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return z;
    }
    if z.last().unwrap().is_negative() {
        g = -g;
    }
    z.iter().map(|c| c / &g).collect()
}

fn z_to_q(a: &ZPoly) -> QPoly {
    a.iter().map(|c| Q::from_integer(c.clone())).collect()
}

// ---- arithmetic modulo a small prime ----

fn m_reduce(a: &ZPoly, p: u64) -> MPoly {
    let pb = BigInt::from(p);
    let mut out: MPoly = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    trim_m(&mut out);
    out
}

fn m_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (p as i128, a as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    assert_eq!(r, 1, "not invertible mod p");
    (t.rem_euclid(p as i128)) as u64
}

fn m_mul(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim_m(&mut out);
    out
}

fn m_sub(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let n = a.len().max(b.len());
    let mut out: MPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim_m(&mut out);
    out
}

fn m_divrem(a: &MPoly, b: &MPoly, p: u64) -> (MPoly, MPoly) {
    assert!(!b.is_empty());
    let mut r = a.clone();
    trim_m(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = m_inv(*b.last().unwrap(), p);
    let mut quo = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * inv % p;
        for (i, y) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - c * y % p) % p;
        }
        quo[shift] = c;
        r.pop();
        trim_m(&mut r);
    }
    trim_m(&mut quo);
    (quo, r)
}

fn m_rem(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    m_divrem(a, b, p).1
}

fn m_monic(a: &MPoly, p: u64) -> MPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = m_inv(lc, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

fn m_gcd(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = m_rem(&x, &y, p);
        x = y;
        y = r;
    }
    m_monic(&x, p)
}

fn m_ext_gcd(a: &MPoly, b: &MPoly, p: u64) -> (MPoly, MPoly, MPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (MPoly, MPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (MPoly, MPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (qq, r) = m_divrem(&r0, &r1, p);
        let s2 = m_sub(&s0, &m_mul(&qq, &s1, p), p);
        let t2 = m_sub(&t0, &m_mul(&qq, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = m_inv(*r0.last().unwrap(), p);
    let sc = |v: &MPoly| {
        let mut o: MPoly = v.iter().map(|c| c * inv % p).collect();
        trim_m(&mut o);
        o
    };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn m_powmod(base: &MPoly, exp: &BigUint, modulus: &MPoly, p: u64) -> MPoly {
    let mut result: MPoly = vec![1];
    let b = m_rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        result = m_rem(&m_mul(&result, &result, p), modulus, p);
        if exp.bit(i) {
            result = m_rem(&m_mul(&result, &b, p), modulus, p);
        }
    }
    result
}

fn m_derivative(a: &MPoly, p: u64) -> MPoly {
    let mut out: MPoly = a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect();
    trim_m(&mut out);
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &MPoly, p: u64) -> Vec<(MPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: MPoly = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1usize;
    let pe = BigUint::from(p);
    while deg(&rest) >= 2 * i as i64 {
        h = m_powmod(&h, &pe, &rest, p);
        let g = m_gcd(&m_sub(&h, &x, p), &rest, p);
        if deg(&g) > 0 {
            out.push((g.clone(), i));
            rest = m_divrem(&rest, &g, p).0;
            h = m_rem(&h, &rest, p);
        }
        i += 1;
    }
    if deg(&rest) > 0 {
        let d = deg(&rest) as usize;
        out.push((rest, d));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus), p odd.
fn edf(f: &MPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<MPoly> {
    let n = deg(f) as usize;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: MPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim_m(&mut a);
        if deg(&a) < 1 {
            continue;
        }
        let g = m_gcd(&a, f, p);
        let g = if deg(&g) > 0 && deg(&g) < n as i64 {
            g
        } else {
            let b = m_powmod(&a, &e, f, p);
            m_gcd(&m_sub(&b, &vec![1], p), f, p)
        };
        if deg(&g) > 0 && deg(&g) < n as i64 {
            let h = m_divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&m_monic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &MPoly, p: u64, rng: &mut ChaCha8Rng) -> Vec<MPoly> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

// ---- integer helpers ----

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(&mut out);
    out
}

fn symmetric_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim_z(&mut out);
    out
}

/// Exact division over Z by a monic divisor.
fn z_div_monic(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let mut r = a.clone();
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut quo = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().clone();
        for (i, y) in b.iter().enumerate() {
            r[i + shift] -= &c * y;
        }
        quo[shift] = c;
        r.pop();
        trim_z(&mut r);
        if r.is_empty() {
            break;
        }
    }
    if r.is_empty() {
        trim_z(&mut quo);
        Some(quo)
    } else {
        None
    }
}

fn hensel_lift(g: &ZPoly, factors: &[MPoly], p: u64, bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let r = factors.len();
    // Bezout data: t_i * prod_{j != i} f_j = 1 mod f_i
    let mut ts = Vec::with_capacity(r);
    for i in 0..r {
        let mut other: MPoly = vec![1];
        for (j, f) in factors.iter().enumerate() {
            if j != i {
                other = m_mul(&other, f, p);
            }
        }
        let (_, s, _) = m_ext_gcd(&m_rem(&other, &factors[i], p), &factors[i], p);
        ts.push(s);
    }
    let mut lifted: Vec<ZPoly> = factors.iter().map(|f| f.iter().map(|&c| BigInt::from(c)).collect()).collect();
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while &pk <= bound {
        let mut prod: ZPoly = vec![BigInt::one()];
        for f in &lifted {
            prod = z_mul(&prod, f);
        }
        let n = g.len().max(prod.len());
        let diff: ZPoly = (0..n)
            .map(|i| g.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default())
            .collect();
        if diff.iter().all(|c| c.is_zero()) {
            break;
        }
        let e: ZPoly = diff.iter().map(|c| c / &pk).collect();
        let em = m_reduce(&e, p);
        for i in 0..r {
            let delta = m_rem(&m_mul(&ts[i], &em, p), &factors[i], p);
            for (k, c) in delta.iter().enumerate() {
                lifted[i][k] += &pk * BigInt::from(*c);
            }
        }
        pk *= &pb;
    }
    let lifted = lifted.iter().map(|f| symmetric_mod(f, &pk)).collect();
    (lifted, pk)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Factor a monic squarefree integer polynomial of degree >= 2.
fn factor_monic_squarefree(g: &ZPoly, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let n = deg(g) as usize;
    // choose among a few good primes the one with fewest modular factors
    let mut best: Option<(u64, Vec<MPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let gm = m_reduce(g, p);
        if deg(&gm) != n as i64 {
            continue;
        }
        let dm = m_derivative(&gm, p);
        if deg(&m_gcd(&gm, &dm, p)) != 0 {
            continue;
        }
        let fs = factor_mod_p(&gm, p, rng);
        if fs.len() == 1 {
            return vec![g.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, fs) = best.expect("no suitable prime for a squarefree polynomial");
    // coefficient bound for factors of g
    let maxc = g.iter().map(|c| c.abs()).max().unwrap();
    let sqrt = BigInt::from(((n + 1) as f64).sqrt().ceil() as u64);
    let bound = (BigInt::one() << n) * sqrt * maxc * 2;
    let (lifted, pk) = hensel_lift(g, &fs, p, &bound);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut rest = g.clone();
    let mut found = Vec::new();
    let mut k = 1;
    while 2 * k <= remaining.len() {
        let mut hit = false;
        for sub in subsets(remaining.len(), k) {
            let mut cand: ZPoly = vec![BigInt::one()];
            for &s in &sub {
                cand = z_mul(&cand, &lifted[remaining[s]]);
            }
            let cand = symmetric_mod(&cand, &pk);
            if let Some(quo) = z_div_monic(&rest, &cand) {
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
    if deg(&rest) > 0 {
        found.push(rest);
    }
    found
}

fn factor_squarefree_primitive(f: &ZPoly, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let n = deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    // g(y) = lc^(n-1) f(y / lc) is monic
    let nu = n as usize;
    let g: ZPoly = (0..=nu)
        .map(|i| {
            if i == nu {
                BigInt::one()
            } else {
                &f[i] * num_traits::pow(lc.clone(), nu - 1 - i)
            }
        })
        .collect();
    let factors = factor_monic_squarefree(&g, rng);
    factors
        .iter()
        .map(|h| {
            // h(lc * x), then primitive part
            let sub: QPoly = h
                .iter()
                .enumerate()
                .map(|(i, c)| Q::from_integer(c * num_traits::pow(lc.clone(), i)))
                .collect();
            primitive_z(&sub)
        })
        .collect()
}

/// Squarefree decomposition (Yun): returns monic `a_i` with `f = lc * prod a_i^i`.
pub fn squarefree_decomposition(f: &QPoly) -> Vec<(QPoly, usize)> {
    let f = q_monic(f);
    let mut out = Vec::new();
    if deg(&f) <= 0 {
        return out;
    }
    let df = q_derivative(&f);
    let mut a = q_gcd(&f, &df);
    let mut b = q_divrem(&f, &a).0;
    let mut c = q_divrem(&df, &a).0;
    let mut d = q_sub(&c, &q_derivative(&b));
    let mut i = 1;
    while deg(&b) > 0 {
        a = q_gcd(&b, &d);
        if deg(&a) > 0 {
            out.push((a.clone(), i));
        }
        b = q_divrem(&b, &a).0;
        c = q_divrem(&d, &a).0;
        d = q_sub(&c, &q_derivative(&b));
        i += 1;
    }
    out
}

/// Irreducible factors over Q as primitive integer polynomials with multiplicities.
pub fn factor_q(f: &QPoly) -> Vec<(ZPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (a, mult) in squarefree_decomposition(f) {
        let z = primitive_z(&a);
        for h in factor_squarefree_primitive(&z, &mut rng) {
            out.push((h, mult));
        }
    }
    out.sort();
    out
}

pub fn zpoly_to_q(a: &ZPoly) -> QPoly {
    z_to_q(a)
}

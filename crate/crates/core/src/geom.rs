//! Intersections with hypersurfaces, multiplicities, conormal spaces and push-forwards.

use crate::cycles::{AbGroup, EnrichedCycle};
use crate::error::{Error, Result};
use crate::poly::decompose::{minimal_primes, Component};
use crate::poly::factor;
use crate::poly::ideal::QuotientAlgebra;
use crate::poly::linalg::{self, Matrix};
use crate::poly::{Ideal, Poly, PolyRing, Q};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Multiplicity of one result component together with the slice seeds that produced it
/// (empty when the linear route was used).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityRecord {
    pub component: Ideal,
    pub multiplicity: u64,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct IntersectionResult {
    pub cycle: EnrichedCycle,
    pub records: Vec<MultiplicityRecord>,
    pub proper: bool,
    pub warnings: Vec<String>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point_in(i: &Ideal, p: &[Q]) -> bool {
    i.gens().iter().all(|g| g.eval(p).is_zero())
}

/// Generators of the maximal ideal of a rational point.
pub fn point_ideal(p: &[Q]) -> Ideal {
    let n = p.len();
    Ideal::new(n, (0..n).map(|i| &Poly::var(n, i) - &Poly::constant(n, p[i].clone())).collect())
}

/// Local dimension at `p`: the largest dimension of a minimal prime through `p`, −1 if none.
pub fn dim_at(i: &Ideal, p: &[Q]) -> Result<i64> {
    if i.with(point_ideal(p).gens()).is_unit() {
        return Ok(-1);
    }
    let comps = minimal_primes(i)?;
    Ok(comps
        .iter()
        .filter(|c| point_in(&c.prime, p))
        .map(|c| c.prime.dim())
        .max()
        .unwrap_or(-1))
}

/// Reduced basis entries are all of degree one.
pub fn is_linear_ideal(i: &Ideal) -> bool {
    !i.is_unit() && i.reduced().iter().all(|g| g.total_degree() == 1)
}

/// Random affine form with integer coefficients in `[-50, 50]`.
pub fn random_affine(nvars: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::int(nvars, rng.gen_range(-50..=50));
    for v in 0..nvars {
        let c: i64 = rng.gen_range(-50..=50);
        if c != 0 {
            p = &p + &Poly::var(nvars, v).scale(&Q::from_integer(c.into()));
        }
    }
    p
}

/// Components of `P + (g)` with the restriction order of `g`, for a linear prime `P`.
fn linear_components(p: &Ideal, g: &Poly) -> Vec<(Ideal, u64)> {
    let nf = p.normal_form(g);
    if nf.is_constant() {
        return Vec::new();
    }
    factor::factor(&nf)
        .factors
        .into_iter()
        .map(|(f, e)| (p.with(&[f]).canonical(), e as u64))
        .collect()
}

fn witness(other: &Ideal, w: &Ideal) -> Poly {
    other
        .reduced()
        .into_iter()
        .find(|g| !w.contains(g))
        .expect("minimal primes are pairwise non-contained")
}

/// Length of `(R/P)_W / g` by generic slicing.
///
/// `others` are the remaining minimal primes of `P + (g)`; they are removed by saturation
/// so that only the points of `W` survive the slice.
pub fn multiplicity_by_slicing(
    p: &Ideal,
    g: &Poly,
    w: &Ideal,
    others: &[Ideal],
    seed: u64,
) -> Result<(u64, Vec<u64>)> {
    let n = p.nvars();
    let d = w.dim();
    if d < 0 {
        return Err(Error::Internal("slicing along the unit ideal".into()));
    }
    let h = others.iter().fold(Poly::one(n), |acc, o| &acc * &witness(o, w));
    let base = p.with(std::slice::from_ref(g));
    let mut master = rng(seed);
    let mut seeds = Vec::new();
    let mut agreed: Option<u64> = None;
    let mut attempts = 0;
    while attempts < 3 {
        attempts += 1;
        let mut values = Vec::new();
        for _ in 0..2 {
            let s: u64 = master.gen();
            seeds.push(s);
            values.push(slice_once(&base, w, &h, d as usize, s)?);
        }
        if let (Some(a), Some(b)) = (values[0], values[1]) {
            if a == b {
                agreed = Some(a);
                break;
            }
        }
    }
    match agreed {
        Some(m) => Ok((m, seeds)),
        None => Err(Error::NonGenericSlice(format!("slices disagree after {} attempts", attempts))),
    }
}

fn slice_once(base: &Ideal, w: &Ideal, h: &Poly, d: usize, seed: u64) -> Result<Option<u64>> {
    let n = base.nvars();
    let mut r = rng(seed);
    let forms: Vec<Poly> = (0..d).map(|_| random_affine(n, &mut r)).collect();
    let mut cut = base.with(&forms);
    let mut wl = w.with(&forms);
    // a slice may meet W on another component; drop those points on both sides
    if !h.is_constant() {
        cut = cut.saturate(h);
        wl = wl.saturate(h);
    }
    let (Some(num), Some(den)) = (cut.vdim(), wl.vdim()) else {
        return Ok(None);
    };
    if den == 0 {
        return Ok(None);
    }
    if num % den != 0 {
        return Err(Error::Internal(format!("slice length {} not divisible by degree {}", num, den)));
    }
    Ok(Some((num / den) as u64))
}

/// Intersection multiplicity of `V(P)` and `V(g)` along the component `V(W)`.
pub fn multiplicity_along(p: &Ideal, g: &Poly, w: &Ideal, seed: u64) -> Result<u64> {
    if p.contains(g) {
        return Err(Error::Input("hypersurface contains the component".into()));
    }
    if is_linear_ideal(p) {
        if let Some((_, e)) = linear_components(p, g).into_iter().find(|(c, _)| c.same(w)) {
            return Ok(e);
        }
    }
    let comps = minimal_primes(&p.with(std::slice::from_ref(g)))?;
    if !comps.iter().any(|c| c.prime.same(w)) {
        return Err(Error::Input("W is not a minimal prime of P + (g)".into()));
    }
    let others: Vec<Ideal> = comps.into_iter().map(|c| c.prime).filter(|c| !c.same(w)).collect();
    multiplicity_by_slicing(p, g, w, &others, seed).map(|(m, _)| m)
}

/// `E ⊙ V(g)`, component by component.
pub fn intersect_hypersurface(
    ring: &PolyRing,
    e: &EnrichedCycle,
    g: &Poly,
    seed: u64,
) -> Result<IntersectionResult> {
    let n = e.nvars();
    let mut out = EnrichedCycle::new(n);
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    let mut master = rng(seed);
    for (p, a, cert) in e.components() {
        if p.contains(g) {
            return Err(Error::Improper {
                hypersurface: ring.fmt(g),
                component: ring.fmt_variety(&p),
            });
        }
        if !cert {
            warnings.push(format!("uncertified prime {}", ring.fmt_variety(&p)));
        }
        if is_linear_ideal(&p) {
            for (w, m) in linear_components(&p, g) {
                out.add_term(&w, a.tensor(&AbGroup::free(m)), cert);
                records.push(MultiplicityRecord { component: w, multiplicity: m, seeds: Vec::new() });
            }
            continue;
        }
        let sum = p.with(std::slice::from_ref(g));
        if sum.is_unit() {
            continue;
        }
        let comps: Vec<Component> = minimal_primes(&sum)?;
        for (i, c) in comps.iter().enumerate() {
            if !c.certified {
                warnings.push(format!("uncertified prime {}", ring.fmt_variety(&c.prime)));
            }
            let others: Vec<Ideal> =
                comps.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.prime.clone()).collect();
            let s: u64 = master.gen();
            let (m, seeds) = multiplicity_by_slicing(&p, g, &c.prime, &others, s)?;
            out.add_term(&c.prime, a.tensor(&AbGroup::free(m)), cert && c.certified);
            records.push(MultiplicityRecord { component: c.prime.clone(), multiplicity: m, seeds });
        }
    }
    Ok(IntersectionResult { cycle: out, records, proper: true, warnings })
}

/// `dim_Q R/(J + m_p^k)` at stabilization, computed inside the finite algebra `R/J`.
pub fn local_multiplicity_at_point(j: &Ideal, p: &[Q]) -> Result<u64> {
    if p.len() != j.nvars() {
        return Err(Error::Input("point has the wrong number of coordinates".into()));
    }
    if j.is_unit() || j.with(point_ideal(p).gens()).is_unit() {
        return Ok(0);
    }
    let alg = QuotientAlgebra::new(j)
        .ok_or_else(|| Error::Input("local multiplicity needs a zero-dimensional ideal".into()))?;
    let n = j.nvars();
    let dim = alg.dim();
    let shifted: Vec<Matrix> = (0..n)
        .map(|i| {
            let lin = &Poly::var(n, i) - &Poly::constant(n, p[i].clone());
            // rows of the transpose: images of basis vectors
            linalg::transpose(&alg.mult_matrix(&lin))
        })
        .collect();
    // m_p^k A as a row-reduced spanning set
    let mut span: Matrix = (0..dim)
        .map(|i| (0..dim).map(|k| if i == k { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mut prev = dim + 1;
    loop {
        let cur = span.len();
        if cur == prev || cur == 0 {
            return Ok((dim - cur) as u64);
        }
        prev = cur;
        let mut next: Matrix = Vec::new();
        for m in &shifted {
            for v in &span {
                // row vector v times the matrix whose rows are images
                let mut img = vec![Q::zero(); dim];
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (t, x) in m[k].iter().enumerate() {
                        if !x.is_zero() {
                            img[t] += c * x;
                        }
                    }
                }
                next.push(img);
            }
        }
        linalg::rref(&mut next);
        span = next;
    }
}

/// Integer row vector of a linear polynomial's coefficients over the first `k` variables.
fn linear_row(g: &Poly, k: usize) -> Vec<Q> {
    let mut row = vec![Q::zero(); k];
    for (m, c) in g.terms() {
        if let Some(v) = m.iter().position(|&e| e == 1) {
            if v < k {
                row[v] = c.clone();
            }
        }
    }
    row
}

/// Covectors in the span of `rows`: `Σ v_i w_i` for `v` in the kernel of `rows`.
fn span_constraints(ring: &PolyRing, rows: &Matrix) -> Vec<Poly> {
    let nb = ring.nbase();
    let n = ring.nvars();
    let kernel = if rows.is_empty() {
        (0..nb).map(|i| (0..nb).map(|k| if i == k { Q::one() } else { Q::zero() }).collect()).collect()
    } else {
        linalg::nullspace(rows, nb)
    };
    kernel
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(n);
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    p = &p + &Poly::var(n, ring.w(i)).scale(c);
                }
            }
            p.primitive()
        })
        .collect()
}

/// All `k × k` minors of `m` that use the last row.
fn minors_with_last_row(m: &[Vec<Poly>], k: usize, nvars: usize) -> Vec<Poly> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    if k == 0 || k > rows || k > cols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rsub in subsets(rows - 1, k - 1) {
        let mut rs = rsub;
        rs.push(rows - 1);
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            let d = poly_det(&sub, nvars);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn minors(m: &[Vec<Poly>], k: usize, nvars: usize) -> Vec<Poly> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    if k == 0 || k > rows || k > cols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            let d = poly_det(&sub, nvars);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first row.
fn poly_det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let k = m.len();
    if k == 0 {
        return Poly::one(nvars);
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][c] * &poly_det(&minor, nvars);
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn jacobian(gens: &[Poly], nb: usize) -> Vec<Vec<Poly>> {
    gens.iter().map(|g| (0..nb).map(|v| g.derivative(v)).collect()).collect()
}

fn w_row(ring: &PolyRing) -> Vec<Poly> {
    (0..ring.nbase()).map(|i| ring.var(ring.w(i))).collect()
}

/// Components of `V(I + minors)` not contained in `V(bad)`.
fn components_off(sum: &Ideal, bad: &[Poly]) -> Result<Vec<Component>> {
    let comps = minimal_primes(sum)?;
    Ok(comps.into_iter().filter(|c| !bad.iter().all(|b| c.prime.contains(b))).collect())
}

fn intersect_all(n: usize, comps: &[Component]) -> Ideal {
    comps
        .iter()
        .map(|c| c.prime.clone())
        .reduce(|a, b| a.intersect(&b))
        .unwrap_or_else(|| Ideal::unit(n))
}

/// Prime components of the closure of the conormal to the smooth part of `V(I)`.
/// `I` lives in the base ring of `ring`.
pub fn conormal_components(ring: &PolyRing, i: &Ideal) -> Result<Vec<Component>> {
    let nb = ring.nbase();
    let n = ring.nvars();
    if i.nvars() != nb {
        return Err(Error::RingMismatch("conormal input must live in the base ring".into()));
    }
    if i.is_unit() {
        return Err(Error::Input("conormal of the empty set".into()));
    }
    let lifted: Vec<Poly> = i.reduced().iter().map(|g| ring.from_base(g)).collect();
    if is_linear_ideal(i) || i.is_zero() {
        let rows: Matrix = i.reduced().iter().map(|g| linear_row(g, nb)).collect();
        let mut gens = lifted;
        gens.extend(span_constraints(ring, &rows));
        let prime = Ideal::new(n, gens).canonical();
        return Ok(vec![Component { prime, certified: true }]);
    }
    let codim = nb as i64 - i.dim();
    let jac = jacobian(&lifted, nb);
    let mut bordered = jac.clone();
    bordered.push(w_row(ring));
    let mut gens = lifted.clone();
    gens.extend(minors_with_last_row(&bordered, codim as usize + 1, n));
    let sing = minors(&jac, codim as usize, n);
    components_off(&Ideal::new(n, gens), &sing)
}

pub fn conormal_ideal(ring: &PolyRing, i: &Ideal) -> Result<Ideal> {
    let comps = conormal_components(ring, i)?;
    Ok(intersect_all(ring.nvars(), &comps))
}

/// `f` is constant on the irreducible set `V(P)`.
pub fn constant_on(p: &Ideal, f: &Poly) -> bool {
    p.normal_form(f).is_constant()
}

/// Components of the closure of `{(x, ω) : x ∈ S, ω(T_x S ∩ ker d_x f) = 0}` over the part of
/// `S` where `S` is smooth and `f|S` is a submersion.
pub fn relative_conormal_components(ring: &PolyRing, i: &Ideal, f: &Poly) -> Result<Vec<Component>> {
    let nb = ring.nbase();
    let n = ring.nvars();
    if i.is_unit() {
        return Err(Error::Input("relative conormal of the empty set".into()));
    }
    for c in minimal_primes(i)? {
        if constant_on(&c.prime, f) {
            return Err(Error::Input(format!(
                "f is constant on the component {} (excluded from the relative conormal)",
                ring.base_ring().fmt_variety(&c.prime)
            )));
        }
    }
    let lifted: Vec<Poly> = i.reduced().iter().map(|g| ring.from_base(g)).collect();
    let fl = ring.from_base(f);
    if (is_linear_ideal(i) || i.is_zero()) && f.total_degree() <= 1 {
        let mut rows: Matrix = i.reduced().iter().map(|g| linear_row(g, nb)).collect();
        rows.push(linear_row(f, nb));
        let mut gens = lifted;
        gens.extend(span_constraints(ring, &rows));
        let prime = Ideal::new(n, gens).canonical();
        return Ok(vec![Component { prime, certified: true }]);
    }
    let codim = (nb as i64 - i.dim()) as usize;
    let jac = jacobian(&lifted, nb);
    let mut with_df = jac.clone();
    with_df.push((0..nb).map(|v| fl.derivative(v)).collect());
    let mut bordered = with_df.clone();
    bordered.push(w_row(ring));
    let mut gens = lifted;
    gens.extend(minors_with_last_row(&bordered, codim + 2, n));
    let mut bad = minors(&jac, codim, n);
    let crit = minors_with_last_row(&with_df, codim + 1, n);
    // the bad locus is the union of the singular and critical loci
    let mut union = Vec::new();
    if bad.is_empty() {
        union = crit;
    } else if crit.is_empty() {
        union = std::mem::take(&mut bad);
    } else {
        for a in &bad {
            for b in &crit {
                union.push(a * b);
            }
        }
    }
    components_off(&Ideal::new(n, gens), &union)
}

pub fn relative_conormal_ideal(ring: &PolyRing, i: &Ideal, f: &Poly) -> Result<Ideal> {
    let comps = relative_conormal_components(ring, i, f)?;
    Ok(intersect_all(ring.nvars(), &comps))
}

/// Generators `w_i - ∂f/∂z_i` of the graph of `df` in the cotangent ring.
pub fn graph_generators(ring: &PolyRing, f: &Poly) -> Vec<Poly> {
    let fl = ring.from_base(f);
    (0..ring.nbase()).map(|i| &ring.var(ring.w(i)) - &fl.derivative(i)).collect()
}

/// Push a cycle on the graph of `df` down to the base ring.
pub fn graph_pushforward(ring: &PolyRing, e: &EnrichedCycle, f: &Poly) -> Result<EnrichedCycle> {
    let graph = graph_generators(ring, f);
    let nb = ring.nbase();
    let mut out = EnrichedCycle::new(nb);
    for (p, a, c) in e.components() {
        if !graph.iter().all(|g| p.contains(g)) {
            return Err(Error::Input(format!("component {} is not contained in the graph of df", ring.fmt_variety(&p))));
        }
        out.add_term(&p.project(nb), a.clone(), c);
    }
    Ok(out)
}

/// Exceptional divisor of the blow-up of `V(P)` along `(g_0, ..., g_d)`.
///
/// Works in `ring + u_0..u_d` (returned ideals have `P.nvars() + d + 1` variables). The
/// affine cone over the blow-up is used, so components carry the `u` directions.
#[derive(Clone, Debug)]
pub struct Exceptional {
    pub rees: Ideal,
    pub components: Vec<(Ideal, u64)>,
}

pub fn blowup_exceptional(p: &Ideal, g: &[Poly], seed: u64) -> Result<Exceptional> {
    let n = p.nvars();
    if g.iter().all(|x| p.contains(x)) {
        return Err(Error::Input("blow-up undefined on component: center contains it".into()));
    }
    let d1 = g.len();
    let big = n + d1 + 1;
    let t = Poly::var(big, n + d1);
    let mut gens: Vec<Poly> = p.gens().iter().map(|x| x.extend(big)).collect();
    for (i, gi) in g.iter().enumerate() {
        gens.push(&Poly::var(big, n + i) - &(&t * &gi.extend(big)));
    }
    let mut rees = Ideal::new(big, gens).project(n + d1);
    let m = n + d1;
    let center: Vec<Poly> = g.iter().map(|x| x.extend(m)).collect();
    for c in &center {
        if !c.is_zero() {
            rees = rees.saturate(c);
        }
    }
    let ex = rees.with(&center);
    let mut components = Vec::new();
    if ex.is_unit() {
        return Ok(Exceptional { rees, components });
    }
    let mut master = rng(seed);
    for c in minimal_primes(&ex)? {
        let w = c.prime;
        let chart = (0..d1)
            .find(|&i| !w.contains(&Poly::var(m, n + i)) && !center[i].is_zero())
            .ok_or_else(|| Error::Internal("exceptional component inside every chart boundary".into()))?;
        let mult = multiplicity_along(&rees, &center[chart], &w, master.gen())?;
        components.push((w, mult));
    }
    Ok(Exceptional { rees, components })
}

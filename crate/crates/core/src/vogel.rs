//! The Pi/Delta process against the graph of `df`, Le-Vogel cycles and modules, the
//! polar (`f ≡ 0`) specialization, Theta sets, and the iterated nearby/vanishing oracle.

use crate::cycles::{AbGroup, EnrichedCycle, GradedEnrichedCycle};
use crate::error::{Error, Result};
use crate::gecc::{self, StratumSpec};
use crate::geom::{self, point_in};
use crate::poly::decompose::minimal_primes;
use crate::poly::{Ideal, Poly, PolyRing, Q};
use rand::Rng;
use std::collections::BTreeMap;

pub fn im_df(ring: &PolyRing, f: &Poly) -> Ideal {
    Ideal::new(ring.nvars(), geom::graph_generators(ring, f))
}

#[derive(Clone, Debug)]
pub struct VogelDecomposition {
    pub degree: i64,
    /// `pi[j]` for `0 <= j <= n+1`.
    pub pi: Vec<EnrichedCycle>,
    /// `delta[j]` for `0 <= j <= n`.
    pub delta: Vec<EnrichedCycle>,
    /// Components of the input already inside the graph.
    pub dropped: Vec<Ideal>,
    pub log: Vec<String>,
    pub seed: u64,
}

fn inside(p: &Ideal, gens: &[Poly]) -> bool {
    gens.iter().all(|g| p.contains(g))
}

// The process only describes cycles near V(im df); components missing it are discarded.
fn near_graph(ring: &PolyRing, c: &EnrichedCycle, graph: &[Poly], log: &mut Vec<String>) -> EnrichedCycle {
    let mut out = EnrichedCycle::new(c.nvars());
    for (p, a, cert) in c.components() {
        if p.with(graph).is_unit() {
            log.push(format!("discarded {}: disjoint from the graph of df", ring.fmt_variety(&p)));
        } else {
            out.add_term(&p, a.clone(), cert);
        }
    }
    out
}

/// `Π^{j+1} ⊙ V(w_j - ∂f/∂z_j) = Π^j + Δ^j` for `j = n, ..., 0`.
pub fn vogel_decompose(
    ring: &PolyRing,
    g_k: &EnrichedCycle,
    degree: i64,
    f: &Poly,
    seed: u64,
) -> Result<VogelDecomposition> {
    let nb = ring.nbase();
    let n = ring.nvars();
    let graph = geom::graph_generators(ring, f);
    let mut top = EnrichedCycle::new(n);
    let mut dropped = Vec::new();
    let mut log = Vec::new();
    for (p, a, c) in g_k.components() {
        if p.dim() != nb as i64 {
            return Err(Error::Input(format!(
                "component {} has dimension {}, expected {}",
                ring.fmt_variety(&p),
                p.dim(),
                nb
            )));
        }
        if inside(&p, &graph) {
            log.push(format!("dropped {}: contained in the graph of df", ring.fmt_variety(&p)));
            dropped.push(p);
        } else {
            top.add_term(&p, a.clone(), c);
        }
    }
    let mut pi = vec![EnrichedCycle::new(n); nb];
    let mut delta = vec![EnrichedCycle::new(n); nb];
    pi.push(top);
    let mut master = geom::rng(seed);
    for j in (0..nb).rev() {
        let h = &graph[j];
        pi[j + 1] = near_graph(ring, &pi[j + 1], &graph, &mut log);
        let res = geom::intersect_hypersurface(ring, &pi[j + 1], h, master.gen()).map_err(|e| match e {
            Error::Improper { component, .. } => Error::Genericity {
                stage: j,
                component,
                reason: format!("improper intersection with V({})", ring.fmt(h)),
            },
            other => other,
        })?;
        log.extend(res.warnings);
        let mut pj = EnrichedCycle::new(n);
        let mut dj = EnrichedCycle::new(n);
        for (p, a, c) in res.cycle.components() {
            if p.dim() != j as i64 {
                return Err(Error::Internal(format!("component {} is not {}-dimensional", ring.fmt_variety(&p), j)));
            }
            if inside(&p, &graph) {
                dj.add_term(&p, a.clone(), c);
            } else {
                pj.add_term(&p, a.clone(), c);
            }
        }
        pi[j] = pj;
        delta[j] = dj;
    }
    Ok(VogelDecomposition { degree, pi, delta, dropped, log, seed })
}

/// `Λ^j = η_*(Δ^j)`.
pub fn levo_cycles(ring: &PolyRing, d: &VogelDecomposition, f: &Poly) -> Result<Vec<EnrichedCycle>> {
    d.delta.iter().map(|c| geom::graph_pushforward(ring, c, f)).collect()
}

fn through(c: &EnrichedCycle, p: &[Q]) -> EnrichedCycle {
    let mut out = EnrichedCycle::new(c.nvars());
    for (prime, a, cert) in c.components() {
        if point_in(&prime, p) {
            out.add_term(&prime, a.clone(), cert);
        }
    }
    out
}

fn coordinate(nb: usize, i: usize, p: &[Q]) -> Poly {
    &Poly::var(nb, i) - &Poly::constant(nb, p[i].clone())
}

/// `λ^j = (V(z_0 - p_0, ..., z_{j-1} - p_{j-1}) ⊙ Λ^j)_p` for one degree.
pub fn levo_modules(base: &PolyRing, lambda: &[EnrichedCycle], p: &[Q], seed: u64) -> Result<Vec<AbGroup>> {
    let nb = base.nvars();
    let mut master = geom::rng(seed);
    let mut out = Vec::new();
    for (j, lam) in lambda.iter().enumerate() {
        let mut cyc = through(lam, p);
        if j == 0 {
            let sum = cyc.components().into_iter().fold(AbGroup::zero(), |acc, (_, a, _)| acc.dsum(a));
            out.push(sum);
            continue;
        }
        for i in 0..j - 1 {
            let h = coordinate(nb, i, p);
            let res = geom::intersect_hypersurface(base, &cyc, &h, master.gen()).map_err(|e| match e {
                Error::Improper { component, .. } => Error::Genericity {
                    stage: j,
                    component,
                    reason: format!("slice V({}) is improper", base.fmt(&h)),
                },
                other => other,
            })?;
            cyc = through(&res.cycle, p);
        }
        let h = coordinate(nb, j - 1, p);
        let mut acc = AbGroup::zero();
        for (prime, a, _) in cyc.components() {
            if prime.contains(&h) {
                return Err(Error::Genericity {
                    stage: j,
                    component: base.fmt_variety(&prime),
                    reason: format!("slice V({}) is improper", base.fmt(&h)),
                });
            }
            let local = gecc::localize_at(&prime.with(std::slice::from_ref(&h)), p).map_err(|_| Error::Genericity {
                stage: j,
                component: base.fmt_variety(&prime),
                reason: "slice is positive-dimensional at the point".into(),
            })?;
            if let Some(local) = local {
                let m = geom::local_multiplicity_at_point(&local, p)?;
                acc = acc.dsum(&a.tensor(&AbGroup::free(m)));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Everything computed for one degree `k`.
#[derive(Clone, Debug)]
pub struct DegreeResult {
    pub decomposition: VogelDecomposition,
    pub lambda: Vec<EnrichedCycle>,
    pub modules: Vec<AbGroup>,
}

#[derive(Clone, Debug)]
pub struct LevoResult {
    pub degrees: BTreeMap<i64, DegreeResult>,
    /// Local dimension at `p` of the critical locus `⋃ η(|Δ^j|)`.
    pub d: i64,
}

impl LevoResult {
    /// `k ↦ [λ^0, ..., λ^n]`.
    pub fn module_table(&self) -> BTreeMap<i64, Vec<AbGroup>> {
        self.degrees.iter().map(|(k, r)| (*k, r.modules.clone())).collect()
    }
}

/// Vogel process, push-forward and slicing for every degree of `g`.
pub fn levo(ring: &PolyRing, g: &GradedEnrichedCycle, f: &Poly, p: &[Q], seed: u64) -> Result<LevoResult> {
    let base = ring.base_ring();
    let mut degrees = BTreeMap::new();
    let mut master = geom::rng(seed);
    let mut d = -1;
    for (k, c) in g.iter() {
        let s: u64 = master.gen();
        let decomposition = vogel_decompose(ring, c, *k, f, s)?;
        let lambda = levo_cycles(ring, &decomposition, f)?;
        for lam in &lambda {
            for (prime, _, _) in lam.components() {
                if point_in(&prime, p) {
                    d = d.max(prime.dim());
                }
            }
        }
        let modules = levo_modules(&base, &lambda, p, master.gen())?;
        degrees.insert(*k, DegreeResult { decomposition, lambda, modules });
    }
    Ok(LevoResult { degrees, d })
}

/// Characteristic polar cycles `Γ^j` and modules `γ^j`: the process with `f ≡ 0`.
pub fn polar_package(ring: &PolyRing, g: &GradedEnrichedCycle, p: &[Q], seed: u64) -> Result<LevoResult> {
    levo(ring, g, &Poly::zero(ring.nbase()), p, seed)
}

/// `γ^j` in degree `k` by iterating nearby cycles along `z_0, ..., z_{j-1}` and taking the
/// vanishing-cycle stalk along `z_j`.
pub fn polar_modules_iterative(
    ring: &PolyRing,
    strata: &[StratumSpec],
    p: &[Q],
    j: usize,
    k: i64,
    seed: u64,
) -> Result<AbGroup> {
    let nb = ring.nbase();
    let mut log = Vec::new();
    let mut g = gecc::build_gecc(ring, &gecc::SheafSpec::Strata(strata.to_vec()), &mut log)?;
    let mut master = geom::rng(seed);
    for i in 0..j {
        let cur = gecc::strata_of(ring, &g);
        g = gecc::nearby_gecc(ring, &cur, &coordinate(nb, i, p), master.gen(), &mut log)?;
        if g.is_empty() {
            return Ok(AbGroup::zero());
        }
    }
    let stalk = gecc::isolated_vanishing_stalk(ring, &g, &coordinate(nb, j, p), p).map_err(|e| match e {
        Error::Unsupported(_) => Error::Genericity {
            stage: j,
            component: String::new(),
            reason: "coordinates not isolating for oracle".into(),
        },
        other => other,
    })?;
    Ok(stalk.get(&k).cloned().unwrap_or_default())
}

#[derive(Clone, Debug)]
pub struct ThetaSets {
    pub theta: Vec<Ideal>,
    /// The `m`-dimensional components of `theta`.
    pub gamma: Vec<Ideal>,
}

/// `Θ^m = ν(|P(G)| ∩ (U × P^m × {0}))`.
pub fn theta_sets(ring: &PolyRing, g: &GradedEnrichedCycle, m: usize) -> Result<ThetaSets> {
    let nb = ring.nbase();
    if m >= nb {
        return Err(Error::Input(format!("m must be below {}", nb)));
    }
    let tail: Vec<Poly> = (m + 1..nb).map(|i| ring.var(ring.w(i))).collect();
    let zero_section: Vec<Poly> = (0..nb).map(|i| ring.var(ring.w(i))).collect();
    let mut found = Vec::new();
    for key in g.support_keys() {
        let j = Ideal::new(ring.nvars(), key).with(&tail);
        if j.is_unit() {
            continue;
        }
        for c in minimal_primes(&j)? {
            if !inside(&c.prime, &zero_section) {
                found.push(c.prime.project(nb));
            }
        }
    }
    let theta = gecc::minimize(found);
    let gamma = theta.iter().filter(|t| t.dim() == m as i64).cloned().collect();
    Ok(ThetaSets { theta, gamma })
}

/// `⋃_j |Δ^j| = |Π^{n+1}| ∩ V(im df)` at the level of radicals.
pub fn set_identity_holds(ring: &PolyRing, d: &VogelDecomposition, f: &Poly) -> Result<bool> {
    let graph = geom::graph_generators(ring, f);
    let lhs: Vec<Ideal> =
        d.delta.iter().flat_map(|c| c.components().into_iter().map(|(p, _, _)| p)).collect();
    let mut rhs = Vec::new();
    for (p, _, _) in d.pi[ring.nbase()].components() {
        let j = p.with(&graph);
        if j.is_unit() {
            continue;
        }
        rhs.extend(minimal_primes(&j)?.into_iter().map(|c| c.prime));
    }
    let a: Vec<Vec<Poly>> = gecc::minimize(lhs).iter().map(|i| i.reduced()).collect();
    let b: Vec<Vec<Poly>> = gecc::minimize(rhs).iter().map(|i| i.reduced()).collect();
    Ok(a == b)
}

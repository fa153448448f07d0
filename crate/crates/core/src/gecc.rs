//! Graded enriched characteristic cycles from stratification data, nearby-cycle cycles,
//! point stalks of vanishing cycles, and critical loci.

use crate::cycles::{AbGroup, EnrichedCycle, GradedEnrichedCycle};
use crate::error::{Error, Result};
use crate::geom::{self, point_in, point_ideal};
use crate::poly::decompose::{self, minimal_primes};
use crate::poly::{Ideal, Poly, PolyRing, Q};
use num_traits::Zero;
use rand::Rng;
use std::collections::BTreeMap;

/// One stratum: closure ideal in the base ring, optional trusted conormal in the cotangent
/// ring, and the Morse modules `k ↦ H^{k-d}(N, L)` (supplied, never computed).
#[derive(Clone, Debug)]
pub struct StratumSpec {
    pub closure: Ideal,
    pub conormal: Option<Ideal>,
    pub dim: i64,
    pub morse: BTreeMap<i64, AbGroup>,
}

impl StratumSpec {
    pub fn new(closure: Ideal, morse: BTreeMap<i64, AbGroup>) -> StratumSpec {
        let dim = closure.dim();
        StratumSpec { closure, conormal: None, dim, morse }
    }

    pub fn is_visible(&self) -> bool {
        self.morse.values().any(|m| !m.is_zero())
    }
}

#[derive(Clone, Debug)]
pub enum SheafSpec {
    Strata(Vec<StratumSpec>),
    Direct(GradedEnrichedCycle),
}

/// Drop duplicates and ideals containing another ideal of the list.
pub fn minimize(list: Vec<Ideal>) -> Vec<Ideal> {
    let uniq = dedupe(list);
    let keep: Vec<bool> = (0..uniq.len())
        .map(|i| !(0..uniq.len()).any(|j| j != i && uniq[i].contains_ideal(&uniq[j])))
        .collect();
    uniq.into_iter().zip(keep).filter(|(_, k)| *k).map(|(x, _)| x).collect()
}

pub fn dedupe(list: Vec<Ideal>) -> Vec<Ideal> {
    let mut by_key: BTreeMap<Vec<Poly>, Ideal> = BTreeMap::new();
    for i in list {
        by_key.entry(i.reduced()).or_insert_with(|| i.canonical());
    }
    by_key.into_values().collect()
}

fn stratum_components(ring: &PolyRing, s: &StratumSpec) -> Result<Vec<(Ideal, bool)>> {
    if let Some(c) = &s.conormal {
        if c.nvars() != ring.nvars() {
            return Err(Error::RingMismatch("conormal must live in the cotangent ring".into()));
        }
        return Ok(vec![(c.canonical(), decompose::certify(c))]);
    }
    Ok(geom::conormal_components(ring, &s.closure)?
        .into_iter()
        .map(|c| (c.prime, c.certified))
        .collect())
}

/// `gecc^k = ∑_α H^{k-d_α}(N_α, L_α) [conormal of S_α]`.
pub fn build_gecc(ring: &PolyRing, spec: &SheafSpec, log: &mut Vec<String>) -> Result<GradedEnrichedCycle> {
    let strata = match spec {
        SheafSpec::Direct(g) => return Ok(g.clone()),
        SheafSpec::Strata(s) => s,
    };
    let n = ring.nvars();
    let mut out = GradedEnrichedCycle::new(n);
    let mut seen: Vec<Vec<Poly>> = Vec::new();
    for s in strata {
        if s.closure.dim() != s.dim {
            return Err(Error::Input(format!(
                "stratum {} declared of dimension {} but has dimension {}",
                ring.base_ring().fmt_variety(&s.closure),
                s.dim,
                s.closure.dim()
            )));
        }
        if !s.is_visible() {
            continue;
        }
        for (c, cert) in stratum_components(ring, s)? {
            let key = c.reduced();
            if seen.contains(&key) {
                return Err(Error::Input(format!("two strata share the conormal {}", ring.fmt_variety(&c))));
            }
            seen.push(key);
            if !cert {
                log.push(format!("conormal {} is not a certified prime", ring.fmt_variety(&c)));
            }
            for (k, m) in &s.morse {
                out.accumulate(*k, &EnrichedCycle::single(&c, m.clone(), cert));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SupportSummary {
    pub per_degree: BTreeMap<i64, Vec<Ideal>>,
    /// Projections of all components.
    pub essential: Vec<Ideal>,
    /// Irreducible components of the support.
    pub support: Vec<Ideal>,
}

pub fn support_of_gecc(ring: &PolyRing, g: &GradedEnrichedCycle) -> SupportSummary {
    let nb = ring.nbase();
    let mut per_degree = BTreeMap::new();
    let mut all = Vec::new();
    for (k, c) in g.iter() {
        let proj: Vec<Ideal> = c.components().into_iter().map(|(p, _, _)| p.project(nb)).collect();
        all.extend(proj.iter().cloned());
        per_degree.insert(*k, dedupe(proj));
    }
    let essential = dedupe(all);
    let support = minimize(essential.clone());
    SupportSummary { per_degree, essential, support }
}

/// Turn a conic Lagrangian cycle back into strata: each component is the conormal of its
/// projection, carrying its coefficient as the Morse module.
pub fn strata_of(ring: &PolyRing, g: &GradedEnrichedCycle) -> Vec<StratumSpec> {
    let nb = ring.nbase();
    let mut by_key: BTreeMap<Vec<Poly>, StratumSpec> = BTreeMap::new();
    for (k, c) in g.iter() {
        for (p, m, _) in c.components() {
            let entry = by_key.entry(p.reduced()).or_insert_with(|| {
                let closure = p.project(nb).canonical();
                let dim = closure.dim();
                StratumSpec { closure, conormal: Some(p.clone()), dim, morse: BTreeMap::new() }
            });
            entry.morse.insert(*k, m.clone());
        }
    }
    by_key.into_values().collect()
}

/// `gecc^k(ψ_f[-1]F) = (T*_{f,F} U)^k ⊙ V(f)`.
pub fn nearby_gecc(
    ring: &PolyRing,
    strata: &[StratumSpec],
    f: &Poly,
    seed: u64,
    log: &mut Vec<String>,
) -> Result<GradedEnrichedCycle> {
    let n = ring.nvars();
    let fl = ring.from_base(f);
    let mut rel = GradedEnrichedCycle::new(n);
    for s in strata.iter().filter(|s| s.is_visible()) {
        let comps = minimal_primes(&s.closure)?;
        if comps.iter().all(|c| geom::constant_on(&c.prime, f)) {
            log.push(format!("f constant on {}, skipped", ring.base_ring().fmt_variety(&s.closure)));
            continue;
        }
        for c in comps {
            if geom::constant_on(&c.prime, f) {
                continue;
            }
            for rc in geom::relative_conormal_components(ring, &c.prime, f)? {
                for (k, m) in &s.morse {
                    rel.accumulate(*k, &EnrichedCycle::single(&rc.prime, m.clone(), rc.certified && c.certified));
                }
            }
        }
    }
    let mut out = GradedEnrichedCycle::new(n);
    let mut master = geom::rng(seed);
    for (k, c) in rel.iter() {
        let res = geom::intersect_hypersurface(ring, c, &fl, master.gen())?;
        log.extend(res.warnings);
        out.insert(*k, res.cycle);
    }
    Ok(out)
}

/// `(p, d_p f)` in the cotangent ring.
pub fn covector_point(ring: &PolyRing, f: &Poly, p: &[Q]) -> Vec<Q> {
    let mut q: Vec<Q> = p.to_vec();
    for i in 0..ring.nbase() {
        q.push(f.derivative(i).eval(p));
    }
    q
}

/// Localize `J` at the rational point `q`: saturate away every minimal prime missing `q`.
/// Fails if a component through `q` is positive-dimensional.
pub fn localize_at(j: &Ideal, q: &[Q]) -> Result<Option<Ideal>> {
    if j.with(point_ideal(q).gens()).is_unit() {
        return Ok(None);
    }
    let comps = minimal_primes(j)?;
    let mut h = Poly::one(j.nvars());
    for c in &comps {
        if point_in(&c.prime, q) {
            if c.prime.dim() > 0 {
                return Err(Error::Unsupported(
                    "intersection is positive-dimensional at the point; use the Vogel route".into(),
                ));
            }
        } else {
            let w = c.prime.reduced().into_iter().find(|g| !g.eval(q).is_zero()).expect("point off the prime");
            h = &h * &w;
        }
    }
    Ok(Some(if h.is_constant() { j.clone() } else { j.saturate(&h) }))
}

/// `H^k(φ_{f-v}[-1]F)_p ≅ (gecc^k(F) ⊙ im df)_{(p, d_p f)}` for an isolated point.
pub fn isolated_vanishing_stalk(
    ring: &PolyRing,
    g: &GradedEnrichedCycle,
    f: &Poly,
    p: &[Q],
) -> Result<BTreeMap<i64, AbGroup>> {
    let graph = geom::graph_generators(ring, f);
    let q = covector_point(ring, f, p);
    let mut out = BTreeMap::new();
    for (k, c) in g.iter() {
        let mut acc = AbGroup::zero();
        for (prime, a, _) in c.components() {
            let j = prime.with(&graph);
            if let Some(local) = localize_at(&j, &q)? {
                let m = geom::local_multiplicity_at_point(&local, &q)?;
                acc = acc.dsum(&a.tensor(&AbGroup::free(m)));
            }
        }
        if !acc.is_zero() {
            out.insert(*k, acc);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CriticalComponent {
    pub ideal: Ideal,
    /// Value of `f` on the component when constant.
    pub value: Option<Q>,
}

/// `η(|G| ∩ im df)`, as irreducible components with their critical values.
pub fn critical_locus(ring: &PolyRing, g: &GradedEnrichedCycle, f: &Poly) -> Result<Vec<CriticalComponent>> {
    let graph = geom::graph_generators(ring, f);
    let nb = ring.nbase();
    let mut found = Vec::new();
    for key in g.support_keys() {
        let j = Ideal::new(ring.nvars(), key).with(&graph);
        if j.is_unit() {
            continue;
        }
        for c in minimal_primes(&j)? {
            found.push(c.prime.project(nb));
        }
    }
    Ok(minimize(found)
        .into_iter()
        .map(|ideal| {
            let nf = ideal.normal_form(f);
            let value = nf.constant_value();
            CriticalComponent { ideal, value }
        })
        .collect())
}

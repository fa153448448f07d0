//! Genericity certificates, essential transversality, the a_f exceptional-divisor check,
//! Zawatsky complex shapes and Euler sums.

use crate::cycles::AbGroup;
use crate::error::{Error, Result};
use crate::geom::{self, dim_at, point_ideal};
use crate::poly::decompose::minimal_primes;
use crate::poly::{Ideal, Poly, PolyRing, Q};
use crate::vogel::LevoResult;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertStatus {
    Certified,
    ProperUncertified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub stage: usize,
    pub component: String,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct GenericityCertificate {
    pub status: CertStatus,
    /// Local dimension at `p` of the critical locus (−1 when `p` is not on it).
    pub d: i64,
    pub failure: Option<Failure>,
    pub log: Vec<String>,
}

impl GenericityCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status,
            "d": self.d,
            "failure": self.failure.as_ref().map(|f| json!({
                "stage": f.stage, "component": f.component, "reason": f.reason
            })),
            "log": self.log,
        })
    }
}

fn failed(stage: usize, component: String, reason: String, log: Vec<String>) -> GenericityCertificate {
    GenericityCertificate {
        status: CertStatus::Failed,
        d: -1,
        failure: Some(Failure { stage, component, reason }),
        log,
    }
}

/// Certify that the coordinates isolate `p`: every `Λ^j` through `p`, cut by the first `j`
/// coordinate hyperplanes, is at most zero-dimensional at `p`. Certification needs `d <= 2`.
pub fn isolating_certificate(base: &PolyRing, run: &Result<LevoResult>, p: &[Q]) -> GenericityCertificate {
    let res = match run {
        Ok(r) => r,
        Err(Error::Genericity { stage, component, reason }) => {
            return failed(*stage, component.clone(), reason.clone(), vec![format!("run failed at stage {}", stage)]);
        }
        Err(e) => return failed(0, String::new(), e.to_string(), vec!["run did not complete".into()]),
    };
    let nb = base.nvars();
    let mut log = Vec::new();
    for (k, dr) in &res.degrees {
        for (j, lam) in dr.lambda.iter().enumerate() {
            let cut: Vec<Poly> =
                (0..j).map(|i| &Poly::var(nb, i) - &Poly::constant(nb, p[i].clone())).collect();
            for (prime, _, _) in lam.components() {
                if !geom::point_in(&prime, p) {
                    continue;
                }
                let dim = match dim_at(&prime.with(&cut), p) {
                    Ok(d) => d,
                    Err(e) => return failed(j, base.fmt_variety(&prime), e.to_string(), log),
                };
                if dim > 0 {
                    let reason = format!("slice by the first {} coordinates has dimension {} at p", j, dim);
                    return failed(j, base.fmt_variety(&prime), reason, log);
                }
                log.push(format!("k={} j={} {}: sliced dimension {}", k, j, base.fmt_variety(&prime), dim));
            }
        }
    }
    let status = if res.d <= 2 { CertStatus::Certified } else { CertStatus::ProperUncertified };
    if status == CertStatus::ProperUncertified {
        log.push(format!("d = {} exceeds 2; slicing was proper but isolation is not certified", res.d));
    }
    GenericityCertificate { status, d: res.d, failure: None, log }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversality {
    /// `per_i[i]` for `0 <= i <= n`.
    pub per_i: Vec<bool>,
    pub passes: bool,
}

/// Essential transversality of the coordinate flag at `p` to the stratum with conormal `c`.
pub fn essential_transversality(ring: &PolyRing, c: &Ideal, p: &[Q]) -> Result<Transversality> {
    let nb = ring.nbase();
    let zero: Vec<Poly> = ring.w_indices().into_iter().map(|i| ring.var(i)).collect();
    let mut per_i = Vec::new();
    for i in 0..nb {
        let mut more: Vec<Poly> = (i + 1..nb).map(|k| ring.var(ring.w(k))).collect();
        more.extend((0..i).map(|k| ring.from_base(&(&Poly::var(nb, k) - &Poly::constant(nb, p[k].clone())))));
        let j = c.with(&more);
        let mut ok = true;
        if !j.is_unit() {
            for comp in minimal_primes(&j)? {
                if zero.iter().all(|w| comp.prime.contains(w)) {
                    continue;
                }
                if dim_at(&comp.prime.project(nb), p)? > 0 {
                    ok = false;
                    break;
                }
            }
        }
        per_i.push(ok);
    }
    let passes = per_i.iter().all(|b| *b);
    Ok(Transversality { per_i, passes })
}

/// Certificate from essential transversality to every `V(f)` stratum of an a_f partition,
/// valid whatever `d` is.
pub fn transversality_certificate(ring: &PolyRing, conormals: &[Ideal], p: &[Q]) -> Result<GenericityCertificate> {
    let mut log = Vec::new();
    for (s, c) in conormals.iter().enumerate() {
        let t = essential_transversality(ring, c, p)?;
        if let Some(i) = t.per_i.iter().position(|b| !b) {
            let reason = format!("not essentially transverse at i = {}", i);
            return Ok(failed(i, ring.fmt_variety(c), reason, log));
        }
        log.push(format!("stratum {} transverse", s));
    }
    Ok(GenericityCertificate { status: CertStatus::Certified, d: -1, failure: None, log })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfVerdict {
    pub whitney_a: bool,
    pub differential: bool,
    pub exceptional: bool,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Experimental a_f check for `(Y_reg, N)` at `x`, via Whitney a), `d_x f ∈ T*_N`, and
/// containment of the exceptional fibre of the blow-up along the graph in `P(T*_N)`.
pub fn af_exceptional_containment(
    ring: &PolyRing,
    y: &Ideal,
    n_ideal: &Ideal,
    f: &Poly,
    x: &[Q],
    seed: u64,
) -> Result<AfVerdict> {
    let nb = ring.nbase();
    let nv = ring.nvars();
    let at_x: Vec<Poly> = point_ideal(x).gens().iter().map(|g| ring.from_base(g)).collect();
    let con_n = geom::conormal_ideal(ring, n_ideal)?;
    // linear forms in w cutting out the fibre of T*_N over x
    let mut images: Vec<Poly> = x.iter().map(|c| Poly::constant(nv, c.clone())).collect();
    images.extend((0..nb).map(|i| ring.var(ring.w(i))));
    let fibre_n: Vec<Poly> = con_n.reduced().iter().map(|g| g.compose(&images)).filter(|g| !g.is_zero()).collect();

    let con_y = geom::conormal_ideal(ring, y)?;
    let fibre_y = con_y.with(&at_x);
    let whitney_a = fibre_n.iter().all(|g| fibre_y.radical_contains(g));

    let mut dfx: Vec<Q> = x.to_vec();
    dfx.extend((0..nb).map(|i| f.derivative(i).eval(x)));
    let differential = fibre_n.iter().all(|g| g.eval(&dfx) == Q::from_integer(0.into()));

    let graph = geom::graph_generators(ring, f);
    let ex = geom::blowup_exceptional(&con_y, &graph, seed)?;
    let big = nv + nb;
    let mut to_u: Vec<Poly> = x.iter().map(|c| Poly::constant(big, c.clone())).collect();
    to_u.extend((0..nb).map(|i| Poly::var(big, nv + i)));
    let target: Vec<Poly> = fibre_n.iter().map(|g| g.compose(&to_u)).collect();
    let at_x_big: Vec<Poly> = at_x.iter().map(|g| g.extend(big)).collect();
    let w_vars: Vec<usize> = ring.w_indices();
    let mut exceptional = true;
    let mut witness = None;
    for (w, _) in &ex.components {
        let fib = w.with(&at_x_big).eliminate(&w_vars);
        if fib.is_unit() {
            continue;
        }
        if let Some(g) = target.iter().find(|g| !fib.radical_contains(g)) {
            exceptional = false;
            witness = Some(format!("exceptional fibre escapes the conormal of N: {} does not vanish", ring_fmt_u(ring, g)));
            break;
        }
    }
    if !whitney_a && witness.is_none() {
        witness = Some("Whitney a) fails".into());
    }
    if !differential && witness.is_none() {
        witness = Some("d_x f is not conormal to N".into());
    }
    Ok(AfVerdict { whitney_a, differential, exceptional, holds: whitney_a && differential && exceptional, witness })
}

fn ring_fmt_u(ring: &PolyRing, g: &Poly) -> String {
    let mut names = ring.names();
    names.extend((0..ring.nbase()).map(|i| format!("T{}", i)));
    g.fmt_with(&names)
}

#[derive(Clone, Debug)]
pub struct ZawatskyComplex {
    pub degree: i64,
    pub d: i64,
    /// `λ^d, ..., λ^0`; `λ^j` sits in cohomological degree `−j`.
    pub modules: Vec<AbGroup>,
    pub constraints: Vec<String>,
    /// `∑_j (−1)^{j+k} rk λ^j`.
    pub alternating_sum: i64,
}

impl ZawatskyComplex {
    pub fn display(&self) -> String {
        let shown: Vec<String> =
            self.modules.iter().skip_while(|m| m.is_zero()).map(|m| m.to_string()).collect();
        if shown.is_empty() {
            return "0".into();
        }
        format!("0 -> {} -> 0", shown.join(" -> "))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "d": self.d,
            "modules": self.modules.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
            "display": self.display(),
            "constraints": self.constraints,
            "alternating_sum": self.alternating_sum,
        })
    }
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Shape and rank constraints of `0 → λ^d → ... → λ^0 → 0` in degree `k`; `lams[j] = λ^j`.
pub fn zawatsky_complex(degree: i64, lams: &[AbGroup], d: i64) -> ZawatskyComplex {
    let top = d.min(lams.len() as i64 - 1);
    let modules: Vec<AbGroup> = if top < 0 { Vec::new() } else { (0..=top as usize).rev().map(|j| lams[j].clone()).collect() };
    let alternating_sum: i64 =
        lams.iter().enumerate().map(|(j, m)| sign(j as i64 + degree) * m.rank as i64).sum();
    let mut constraints = Vec::new();
    let nonzero: Vec<usize> = (0..lams.len()).filter(|&j| !lams[j].is_zero()).collect();
    if nonzero.is_empty() {
        constraints.push(format!("degree {}: every stalk cohomology group vanishes", degree));
    } else if nonzero.len() == 1 {
        let j = nonzero[0];
        constraints.push(format!("H^{} ≅ {}, all other groups vanish", -(j as i64), lams[j]));
    } else {
        for &j in &nonzero {
            constraints.push(format!("H^{} has rank at most {}", -(j as i64), lams[j].rank));
        }
        if top >= 0 && lams[top as usize].is_free() {
            constraints.push(format!(
                "H^{} is free of rank at most {}",
                -top,
                lams[top as usize].rank
            ));
        }
    }
    ZawatskyComplex { degree, d, modules, constraints, alternating_sum }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    /// `∑_{j,k} (−1)^{j+k} rk λ^j` in degree `k`.
    pub raw: i64,
    /// `−raw`: the reduced Euler characteristic of the Milnor fibre for a constant sheaf.
    pub milnor_reduced: i64,
    pub matches: Option<bool>,
}

/// Compare the signed rank sum against `expected` (in the raw convention) when supplied.
pub fn euler_check(table: &BTreeMap<i64, Vec<AbGroup>>, expected: Option<i64>) -> EulerCheck {
    let raw: i64 = table
        .iter()
        .flat_map(|(k, lams)| lams.iter().enumerate().map(move |(j, m)| sign(j as i64 + k) * m.rank as i64))
        .sum();
    EulerCheck { raw, milnor_reduced: -raw, matches: expected.map(|e| e == raw) }
}

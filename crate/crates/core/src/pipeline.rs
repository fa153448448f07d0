//! Job configuration, coordinate changes, the end-to-end run and its report.

use crate::cycles::{display_gens, AbGroup, EnrichedCycle, GradedEnrichedCycle};
use crate::diagnostics::{self, CertStatus, EulerCheck, GenericityCertificate};
use crate::error::{Error, Result};
use crate::gecc::{self, SheafSpec, StratumSpec};
use crate::geom;
use crate::poly::linalg::{self, Matrix};
use crate::poly::{Ideal, Poly, PolyRing, Q};
use crate::vogel::{self, LevoResult};
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumConfig {
    /// Generators of the closure, in the base variables.
    pub closure: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<i64>,
    /// Degree ↦ Morse module, e.g. `{"2": "Z"}`.
    pub morse: BTreeMap<String, String>,
    /// Trusted conormal generators in base and `w` variables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conormal: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub ideal: Vec<String>,
    pub module: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinates {
    /// New coordinate `i` is old coordinate `permutation[i]`.
    Permutation(Vec<usize>),
    /// New coordinates `M z`.
    Matrix(Vec<Vec<i64>>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<StratumConfig>>,
    /// Degree ↦ terms, given directly in the cotangent ring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gecc: Option<BTreeMap<String, Vec<TermConfig>>>,
    /// Shorthand for a single stratum covering affine space.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub constant_sheaf: bool,
    /// Missing means `f ≡ 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    /// Rational coordinates as strings; missing means the origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Coordinates>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Expected value of the signed rank sum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_euler: Option<i64>,
}

pub fn parse_config(text: &str) -> Result<JobConfig> {
    let cfg: JobConfig = serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {}", e)))?;
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &JobConfig) -> Result<()> {
    let n = cfg.variables.len();
    if n == 0 {
        return Err(Error::Input("field 'variables': at least one variable is required".into()));
    }
    let modes = cfg.strata.is_some() as u8 + cfg.gecc.is_some() as u8 + cfg.constant_sheaf as u8;
    if modes != 1 {
        return Err(Error::Input("exactly one of 'strata', 'gecc', 'constant_sheaf' must be given".into()));
    }
    if let Some(p) = &cfg.point {
        if p.len() != n {
            return Err(Error::Input(format!("field 'point': expected {} coordinates, got {}", n, p.len())));
        }
    }
    coordinate_matrix(cfg)?;
    Ok(())
}

fn to_q(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect()
}

/// The integer matrix `M` of the coordinate change `z' = M z`, checked invertible.
pub fn coordinate_matrix(cfg: &JobConfig) -> Result<Vec<Vec<i64>>> {
    let n = cfg.variables.len();
    let m = match &cfg.coordinates {
        None => (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect(),
        Some(Coordinates::Permutation(perm)) => {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::Input(format!("field 'coordinates.permutation': not a permutation of 0..{}", n)));
            }
            perm.iter().map(|&src| (0..n).map(|j| (j == src) as i64).collect()).collect()
        }
        Some(Coordinates::Matrix(m)) => {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::Input(format!("field 'coordinates.matrix': expected {}x{}", n, n)));
            }
            m.clone()
        }
    };
    if linalg::det(&to_q(&m)).is_zero() {
        return Err(Error::Input("field 'coordinates': matrix is not invertible".into()));
    }
    Ok(m)
}

/// Compose the coordinate order with a seeded random invertible matrix, entries in `[-5, 5]`.
pub fn randomize_coordinates(cfg: &JobConfig, seed: u64) -> Result<JobConfig> {
    let n = cfg.variables.len();
    let old = coordinate_matrix(cfg)?;
    let mut rng = geom::rng(seed);
    let r = loop {
        let r: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        if !linalg::det(&to_q(&r)).is_zero() {
            break r;
        }
    };
    let prod: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| r[i][k] * old[k][j]).sum()).collect()).collect();
    let mut out = cfg.clone();
    out.coordinates = Some(Coordinates::Matrix(prod));
    Ok(out)
}

/// A configuration resolved into rings and polynomials in the chosen coordinates.
#[derive(Clone, Debug)]
pub struct Job {
    pub ring: PolyRing,
    pub spec: SheafSpec,
    pub f: Poly,
    pub point: Vec<Q>,
    pub matrix: Vec<Vec<i64>>,
    pub seed: u64,
}

fn fresh_names(old: &[String]) -> Vec<String> {
    let n = old.len();
    for prefix in ["c", "c_", "cc"] {
        let names: Vec<String> = (0..n).map(|i| format!("{}{}", prefix, i)).collect();
        if names.iter().all(|x| !old.contains(x)) {
            return names;
        }
    }
    (0..n).map(|i| format!("coord{}", i)).collect()
}

struct Change {
    base: Vec<Poly>,
    cot: Vec<Poly>,
}

impl Change {
    fn new(m: &[Vec<i64>]) -> Result<Change> {
        let n = m.len();
        let inv = linalg::inverse(&to_q(m)).ok_or_else(|| Error::Input("coordinate matrix is singular".into()))?;
        let lin = |nv: usize, row: &dyn Fn(usize) -> Q, off: usize| {
            (0..n).fold(Poly::zero(nv), |acc, k| &acc + &(&Poly::var(nv, off + k) * &Poly::constant(nv, row(k))))
        };
        let base: Vec<Poly> = (0..n).map(|j| lin(n, &|k| inv[j][k].clone(), 0)).collect();
        let mut cot: Vec<Poly> = (0..n).map(|j| lin(2 * n, &|k| inv[j][k].clone(), 0)).collect();
        cot.extend((0..n).map(|j| lin(2 * n, &|k| Q::from_integer(m[k][j].into()), n)));
        Ok(Change { base, cot })
    }

    fn base(&self, p: &Poly) -> Poly {
        p.compose(&self.base)
    }

    fn cot(&self, i: &Ideal) -> Ideal {
        Ideal::new(self.cot.len(), i.gens().iter().map(|g| g.compose(&self.cot)).collect())
    }
}

fn parse_point(cfg: &JobConfig) -> Result<Vec<Q>> {
    match &cfg.point {
        None => Ok(vec![Q::zero(); cfg.variables.len()]),
        Some(v) => v
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.trim().parse::<Q>().map_err(|_| Error::Input(format!("field 'point[{}]': not a rational: {:?}", i, s)))
            })
            .collect(),
    }
}

fn parse_morse(field: &str, m: &BTreeMap<String, String>) -> Result<BTreeMap<i64, AbGroup>> {
    m.iter()
        .map(|(k, v)| {
            let k: i64 = k.parse().map_err(|_| Error::Input(format!("field '{}': degree {:?} is not an integer", field, k)))?;
            Ok((k, v.parse()?))
        })
        .collect()
}

pub fn resolve(cfg: &JobConfig) -> Result<Job> {
    validate(cfg)?;
    let old = PolyRing::cotangent_of(cfg.variables.clone())?;
    let old_base = old.base_ring();
    let n = cfg.variables.len();
    let matrix = coordinate_matrix(cfg)?;
    let names = match &cfg.coordinates {
        None => cfg.variables.clone(),
        Some(Coordinates::Permutation(perm)) => perm.iter().map(|&i| cfg.variables[i].clone()).collect(),
        Some(Coordinates::Matrix(_)) => fresh_names(&cfg.variables),
    };
    let ring = PolyRing::cotangent_of(names)?;
    let ch = Change::new(&matrix)?;
    let f = match &cfg.f {
        None => Poly::zero(n),
        Some(s) => ch.base(&old_base.parse(s).map_err(|e| Error::Input(format!("field 'f': {}", e)))?),
    };
    let p0 = parse_point(cfg)?;
    let point = linalg::mat_vec(&to_q(&matrix), &p0);
    let spec = if cfg.constant_sheaf {
        SheafSpec::Strata(vec![StratumSpec::new(
            Ideal::zero(n),
            BTreeMap::from([(n as i64, AbGroup::free(1))]),
        )])
    } else if let Some(strata) = &cfg.strata {
        let mut out = Vec::new();
        for (i, s) in strata.iter().enumerate() {
            let field = format!("strata[{}]", i);
            let closure = old_base
                .parse_ideal(&s.closure)
                .map_err(|e| Error::Input(format!("field '{}.closure': {}", field, e)))?;
            let closure = Ideal::new(n, closure.gens().iter().map(|g| ch.base(g)).collect());
            let mut st = StratumSpec::new(closure, parse_morse(&format!("{}.morse", field), &s.morse)?);
            if let Some(d) = s.dim {
                st.dim = d;
            }
            if let Some(c) = &s.conormal {
                let c = old.parse_ideal(c).map_err(|e| Error::Input(format!("field '{}.conormal': {}", field, e)))?;
                st.conormal = Some(ch.cot(&c));
            }
            out.push(st);
        }
        SheafSpec::Strata(out)
    } else {
        let mut g = GradedEnrichedCycle::new(2 * n);
        for (k, terms) in cfg.gecc.as_ref().expect("validated") {
            let kk: i64 = k.parse().map_err(|_| Error::Input(format!("field 'gecc': degree {:?} is not an integer", k)))?;
            for (i, t) in terms.iter().enumerate() {
                let field = format!("gecc.{}[{}]", k, i);
                let id = old.parse_ideal(&t.ideal).map_err(|e| Error::Input(format!("field '{}.ideal': {}", field, e)))?;
                let id = ch.cot(&id);
                let module: AbGroup = t.module.parse()?;
                let cert = crate::poly::decompose::certify(&id);
                g.accumulate(kk, &EnrichedCycle::single(&id, module, cert));
            }
        }
        SheafSpec::Direct(g)
    };
    Ok(Job { ring, spec, f, point, matrix, seed: cfg.seed.unwrap_or(0) })
}

/// Everything a run produced; `json` is deterministic given the configuration and seed.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: CertStatus,
    pub certificate: GenericityCertificate,
    pub lambda: BTreeMap<i64, Vec<AbGroup>>,
    pub euler: Option<EulerCheck>,
    pub critical_locus: Vec<String>,
    pub d: i64,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            CertStatus::Certified => 0,
            CertStatus::ProperUncertified => 2,
            CertStatus::Failed => 3,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
            Format::Text => format!("{}elapsed: {} ms\n", self.text, self.elapsed_ms),
        }
    }
}

fn fmt_q(x: &Q) -> String {
    x.to_string()
}

fn ideal_json(ring: &PolyRing, i: &Ideal) -> Value {
    json!(display_gens(ring, &i.reduced()))
}

fn cycles_json(ring: &PolyRing, v: &[EnrichedCycle]) -> Value {
    Value::Array(v.iter().map(|c| c.to_json(ring)).collect())
}

fn modules_json(v: &[AbGroup]) -> Value {
    Value::Array(v.iter().map(|m| json!(m.to_string())).collect())
}

fn indent(out: &mut String, lines: &[String]) {
    if lines.is_empty() {
        out.push_str("    0\n");
    }
    for l in lines {
        out.push_str("    ");
        out.push_str(l);
        out.push('\n');
    }
}

/// GECC and supports only.
pub fn gecc_report(job: &Job) -> Result<(Value, String)> {
    let ring = &job.ring;
    let base = ring.base_ring();
    let mut log = Vec::new();
    let g = gecc::build_gecc(ring, &job.spec, &mut log)?;
    let s = gecc::support_of_gecc(ring, &g);
    let mut text = String::new();
    for (k, c) in g.iter() {
        text.push_str(&format!("gecc^{}:\n", k));
        indent(&mut text, &c.fmt_lines(ring));
    }
    text.push_str("support:\n");
    indent(&mut text, &s.support.iter().map(|i| base.fmt_variety(i)).collect::<Vec<_>>());
    let per_degree: BTreeMap<String, Value> = s
        .per_degree
        .iter()
        .map(|(k, v)| (k.to_string(), Value::Array(v.iter().map(|i| ideal_json(&base, i)).collect())))
        .collect();
    let json = json!({
        "coordinates": ring.base_names(),
        "gecc": g.to_json(ring),
        "support": s.support.iter().map(|i| ideal_json(&base, i)).collect::<Vec<_>>(),
        "essential": s.essential.iter().map(|i| ideal_json(&base, i)).collect::<Vec<_>>(),
        "support_per_degree": per_degree,
        "warnings": log,
    });
    Ok((json, text))
}

/// Transversality of the coordinates to every stratum, plus the isolating certificate.
pub fn check_report(job: &Job) -> Result<(Value, String, GenericityCertificate)> {
    let ring = &job.ring;
    let base = ring.base_ring();
    let mut log = Vec::new();
    let g = gecc::build_gecc(ring, &job.spec, &mut log)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for key in g.support_keys() {
        let c = Ideal::new(ring.nvars(), key);
        let t = diagnostics::essential_transversality(ring, &c, &job.point)?;
        let name = base.fmt_variety(&c.project(ring.nbase()));
        text.push_str(&format!("transversality {}: {:?} -> {}\n", name, t.per_i, if t.passes { "pass" } else { "fail" }));
        rows.push(json!({ "stratum": name, "per_i": t.per_i, "passes": t.passes }));
    }
    let run = vogel::levo(ring, &g, &job.f, &job.point, job.seed);
    let cert = diagnostics::isolating_certificate(&base, &run, &job.point);
    text.push_str(&certificate_text(&cert));
    let json = json!({
        "coordinates": ring.base_names(),
        "transversality": rows,
        "certificate": cert.to_json(),
        "warnings": log,
    });
    Ok((json, text, cert))
}

fn certificate_text(c: &GenericityCertificate) -> String {
    let status = serde_json::to_value(c.status).expect("serializable");
    let mut s = format!("certificate: {} (d = {})\n", status.as_str().unwrap_or(""), c.d);
    if let Some(f) = &c.failure {
        s.push_str(&format!("  failed at j = {}: {} [{}]\n", f.stage, f.reason, f.component));
    }
    s
}

fn config_echo(cfg: &JobConfig, job: &Job) -> Value {
    json!({
        "variables": cfg.variables,
        "f": cfg.f.clone().unwrap_or_else(|| "0".into()),
        "point": cfg.point.clone().unwrap_or_else(|| vec!["0".into(); cfg.variables.len()]),
        "seed": job.seed,
        "coordinate_matrix": job.matrix,
    })
}

struct Attempt {
    seed: u64,
    matrix: Vec<Vec<i64>>,
    status: CertStatus,
}

/// Run once with the configured coordinates and, while the certificate fails, up to
/// `retries` more times under seeded random coordinate changes.
pub fn run_pipeline(cfg: &JobConfig, retries: u32) -> Result<Report> {
    let start = Instant::now();
    let mut attempts = Vec::new();
    let mut current = cfg.clone();
    let seed = cfg.seed.unwrap_or(0);
    let mut report = run_once(&current)?;
    for i in 1..=retries {
        if report.status != CertStatus::Failed {
            break;
        }
        attempts.push(Attempt { seed: current.seed.unwrap_or(0), matrix: coordinate_matrix(&current)?, status: report.status });
        let s = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64);
        current = randomize_coordinates(cfg, s)?;
        current.seed = Some(s);
        report = run_once(&current)?;
    }
    if !attempts.is_empty() {
        let log: Vec<Value> = attempts
            .iter()
            .map(|a| json!({ "seed": a.seed, "coordinate_matrix": a.matrix, "status": a.status }))
            .collect();
        report.json["retries"] = Value::Array(log);
        report.text.push_str(&format!("retries: {} earlier attempt(s) failed\n", attempts.len()));
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn run_once(cfg: &JobConfig) -> Result<Report> {
    let job = resolve(cfg)?;
    let ring = &job.ring;
    let base = ring.base_ring();
    let nb = ring.nbase();
    let p = &job.point;
    let mut warnings = Vec::new();
    let g = gecc::build_gecc(ring, &job.spec, &mut warnings)?;
    let support = gecc::support_of_gecc(ring, &g);
    let crit = gecc::critical_locus(ring, &g, &job.f)?;
    let run = vogel::levo(ring, &g, &job.f, p, job.seed);
    let cert = diagnostics::isolating_certificate(&base, &run, p);

    let mut text = String::new();
    text.push_str(&format!("coordinates: {}\n", ring.base_names().join(", ")));
    text.push_str(&format!("f = {}\n", base.fmt(&job.f)));
    text.push_str(&format!("p = ({})\n", p.iter().map(fmt_q).collect::<Vec<_>>().join(", ")));
    for (k, c) in g.iter() {
        text.push_str(&format!("gecc^{}:\n", k));
        indent(&mut text, &c.fmt_lines(ring));
    }
    let crit_names: Vec<String> = crit.iter().map(|c| base.fmt_variety(&c.ideal)).collect();
    text.push_str("critical locus:\n");
    indent(
        &mut text,
        &crit
            .iter()
            .map(|c| match &c.value {
                Some(v) => format!("{} (f = {})", base.fmt_variety(&c.ideal), v),
                None => base.fmt_variety(&c.ideal),
            })
            .collect::<Vec<_>>(),
    );

    let mut json = json!({
        "config": config_echo(cfg, &job),
        "coordinates": ring.base_names(),
        "gecc": g.to_json(ring),
        "support": support.support.iter().map(|i| ideal_json(&base, i)).collect::<Vec<_>>(),
        "critical_locus": crit.iter().map(|c| json!({
            "ideal": ideal_json(&base, &c.ideal),
            "value": c.value.as_ref().map(fmt_q),
        })).collect::<Vec<_>>(),
    });

    let mut lambda = BTreeMap::new();
    let mut euler = None;
    let mut d = cert.d;
    match &run {
        Ok(res) => {
            d = res.d;
            lambda = res.module_table();
            json["degrees"] = degrees_json(ring, &job.f, res, &mut text, &mut warnings)?;
            let lt: BTreeMap<String, Value> = lambda.iter().map(|(k, v)| (k.to_string(), modules_json(v))).collect();
            json["lambda"] = json!(lt);
            let e = diagnostics::euler_check(&lambda, cfg.expected_euler);
            text.push_str(&format!("signed rank sum: {} (reduced Milnor fibre Euler characteristic {})\n", e.raw, e.milnor_reduced));
            json["euler"] = json!({ "raw": e.raw, "milnor_reduced": e.milnor_reduced, "matches_expected": e.matches });
            let zs: Vec<Value> =
                lambda.iter().map(|(k, v)| diagnostics::zawatsky_complex(*k, v, res.d).to_json()).collect();
            for (k, v) in &lambda {
                let z = diagnostics::zawatsky_complex(*k, v, res.d);
                text.push_str(&format!("zawatsky degree {}: {}\n", k, z.display()));
                for c in &z.constraints {
                    text.push_str(&format!("    {}\n", c));
                }
            }
            json["zawatsky"] = Value::Array(zs);
            euler = Some(e);
            if res.d <= 0 {
                json["stalk_oracle"] = stalk_oracle(ring, &g, &job.f, p, &lambda)?;
            }
        }
        Err(Error::Genericity { .. }) => {}
        Err(e) => return Err(e.clone()),
    }

    let mut thetas = Vec::new();
    for m in 0..nb {
        let t = vogel::theta_sets(ring, &g, m)?;
        thetas.push(json!({
            "m": m,
            "theta": t.theta.iter().map(|i| ideal_json(&base, i)).collect::<Vec<_>>(),
            "gamma": t.gamma.iter().map(|i| ideal_json(&base, i)).collect::<Vec<_>>(),
        }));
    }
    json["theta"] = Value::Array(thetas);
    json["certificate"] = cert.to_json();
    text.push_str(&certificate_text(&cert));
    if !warnings.is_empty() {
        text.push_str("warnings:\n");
        indent(&mut text, &warnings);
    }
    json["warnings"] = json!(warnings);
    json["status"] = serde_json::to_value(cert.status).expect("serializable");
    Ok(Report {
        json,
        text,
        status: cert.status,
        certificate: cert,
        lambda,
        euler,
        critical_locus: crit_names,
        d,
        elapsed_ms: 0,
    })
}

fn stalk_oracle(
    ring: &PolyRing,
    g: &GradedEnrichedCycle,
    f: &Poly,
    p: &[Q],
    lambda: &BTreeMap<i64, Vec<AbGroup>>,
) -> Result<Value> {
    let stalk = gecc::isolated_vanishing_stalk(ring, g, f, p)?;
    let agrees = lambda.iter().all(|(k, v)| stalk.get(k).cloned().unwrap_or_default() == v[0])
        && stalk.keys().all(|k| lambda.contains_key(k));
    let m: BTreeMap<String, String> = stalk.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    Ok(json!({ "stalk": m, "agrees_with_lambda0": agrees }))
}

fn degrees_json(
    ring: &PolyRing,
    f: &Poly,
    res: &LevoResult,
    text: &mut String,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    let base = ring.base_ring();
    let mut out = serde_json::Map::new();
    for (k, dr) in &res.degrees {
        let dec = &dr.decomposition;
        if !vogel::set_identity_holds(ring, dec, f)? {
            return Err(Error::Internal(format!("degree {}: Delta supports differ from |G| ∩ im df", k)));
        }
        warnings.extend(dec.log.iter().map(|l| format!("degree {}: {}", k, l)));
        text.push_str(&format!("degree {}:\n", k));
        for (j, c) in dec.pi.iter().enumerate().rev() {
            if !c.is_empty() {
                text.push_str(&format!("  Pi^{}:\n", j));
                indent(text, &c.fmt_lines(ring));
            }
        }
        for (j, c) in dec.delta.iter().enumerate().rev() {
            if !c.is_empty() {
                text.push_str(&format!("  Delta^{}:\n", j));
                indent(text, &c.fmt_lines(ring));
            }
        }
        for (j, c) in dr.lambda.iter().enumerate().rev() {
            if !c.is_empty() {
                text.push_str(&format!("  Lambda^{}:\n", j));
                indent(text, &c.fmt_lines(&base));
            }
        }
        let mods: Vec<String> =
            dr.modules.iter().enumerate().map(|(j, m)| format!("lambda^{} = {}", j, m)).collect();
        text.push_str(&format!("  {}\n", mods.join(", ")));
        out.insert(
            k.to_string(),
            json!({
                "pi": cycles_json(ring, &dec.pi),
                "delta": cycles_json(ring, &dec.delta),
                "dropped": dec.dropped.iter().map(|i| ideal_json(ring, i)).collect::<Vec<_>>(),
                "lambda_cycles": cycles_json(&base, &dr.lambda),
                "modules": modules_json(&dr.modules),
                "set_identity": true,
                "seed": dec.seed,
            }),
        );
    }
    Ok(Value::Object(out))
}

//! Ready-made inputs: constant sheaves on affine space and the two-planes family
//! `X = V(u,x) ∪ V(y,z)` with `f = (u^α + x^β)^τ + y^γ + z^δ`.

use crate::cycles::{AbGroup, EnrichedCycle, GradedEnrichedCycle};
use crate::gecc::StratumSpec;
use crate::poly::{Ideal, Poly, PolyRing};
use std::collections::BTreeMap;

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// The zero section with `Z` in degree `n + 1`.
pub fn constant_sheaf(ring: &PolyRing) -> GradedEnrichedCycle {
    let zero = Ideal::new(ring.nvars(), ring.w_indices().into_iter().map(|i| ring.var(i)).collect());
    let mut g = GradedEnrichedCycle::new(ring.nvars());
    g.insert(ring.nbase() as i64, EnrichedCycle::single(&zero, AbGroup::free(1), true));
    g
}

/// One stratum on all of affine space with `Z` in degree `n + 1`.
pub fn constant_strata(ring: &PolyRing) -> Vec<StratumSpec> {
    vec![StratumSpec::new(Ideal::zero(ring.nbase()), BTreeMap::from([(ring.nbase() as i64, AbGroup::free(1))]))]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoPlanes {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
    pub tau: u32,
}

impl TwoPlanes {
    pub fn new(alpha: u32, beta: u32, gamma: u32, delta: u32, tau: u32) -> TwoPlanes {
        TwoPlanes { alpha, beta, gamma, delta, tau }
    }

    pub fn ring() -> PolyRing {
        PolyRing::cotangent_of(names(&["u", "x", "y", "z"])).expect("valid names")
    }

    pub fn f_text(&self) -> String {
        format!("(u^{} + x^{})^{} + y^{} + z^{}", self.alpha, self.beta, self.tau, self.gamma, self.delta)
    }

    pub fn f(&self, ring: &PolyRing) -> Poly {
        ring.base_ring().parse(&self.f_text()).expect("valid polynomial")
    }

    /// The origin in degree 1, the two planes in degree 2.
    pub fn strata(ring: &PolyRing) -> Vec<StratumSpec> {
        let b = ring.base_ring();
        let id = |g: &[&str]| b.parse_ideal(&names(g)).expect("valid ideal");
        vec![
            StratumSpec::new(id(&["u", "x", "y", "z"]), BTreeMap::from([(1, AbGroup::free(1))])),
            StratumSpec::new(id(&["u", "x"]), BTreeMap::from([(2, AbGroup::free(1))])),
            StratumSpec::new(id(&["y", "z"]), BTreeMap::from([(2, AbGroup::free(1))])),
        ]
    }

    /// `²λ¹`
    pub fn lambda_2_1(&self) -> u64 {
        (self.beta * (self.tau - 1)) as u64
    }

    /// `²λ⁰`
    pub fn lambda_2_0(&self) -> u64 {
        let (a, b, g, d, t) = self.params();
        ((d - 1) * (g - 1) + (b - 1) * (a * t - 1)) as u64
    }

    /// Reduced Euler characteristic of the Milnor fibre.
    pub fn reduced_euler(&self) -> i64 {
        let (a, b, g, d, t) = self.params();
        -a * b * t + b * t + a * t - g * d + g + d - 1
    }

    fn params(&self) -> (i64, i64, i64, i64, i64) {
        (self.alpha as i64, self.beta as i64, self.gamma as i64, self.delta as i64, self.tau as i64)
    }
}

use super::ideal::Ideal;
use super::parse::parse_poly;
use super::polynomial::Poly;
use crate::error::{Error, Result};
use std::collections::HashSet;

/// Variable names: base coordinates `z_0..z_n`, optional cotangent coordinates `w_0..w_n`,
/// then optional auxiliary variables. Polynomials index variables in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    base: Vec<String>,
    cotangent: Vec<String>,
    aux: Vec<String>,
}

impl PolyRing {
    pub fn new(base: Vec<String>, cotangent: Vec<String>) -> Result<PolyRing> {
        Self::with_aux(base, cotangent, Vec::new())
    }

    pub fn with_aux(base: Vec<String>, cotangent: Vec<String>, aux: Vec<String>) -> Result<PolyRing> {
        if !cotangent.is_empty() && cotangent.len() != base.len() {
            return Err(Error::Input("cotangent variables must match base variables".into()));
        }
        let mut seen = HashSet::new();
        for v in base.iter().chain(&cotangent).chain(&aux) {
            if !seen.insert(v.clone()) {
                return Err(Error::Input(format!("duplicate variable name '{}'", v)));
            }
        }
        if seen.len() > 60 {
            return Err(Error::Input("too many variables".into()));
        }
        Ok(PolyRing { base, cotangent, aux })
    }

    pub fn base_only(base: Vec<String>) -> Result<PolyRing> {
        Self::new(base, Vec::new())
    }

    /// Base variables plus cotangent variables named `w0..wn`.
    pub fn cotangent_of(base: Vec<String>) -> Result<PolyRing> {
        let cot = (0..base.len()).map(|i| format!("w{}", i)).collect();
        Self::new(base, cot)
    }

    pub fn nvars(&self) -> usize {
        self.base.len() + self.cotangent.len() + self.aux.len()
    }

    pub fn nbase(&self) -> usize {
        self.base.len()
    }

    pub fn has_cotangent(&self) -> bool {
        !self.cotangent.is_empty()
    }

    pub fn base_names(&self) -> &[String] {
        &self.base
    }

    pub fn names(&self) -> Vec<String> {
        self.base.iter().chain(&self.cotangent).chain(&self.aux).cloned().collect()
    }

    /// Index of cotangent variable `w_i`.
    pub fn w(&self, i: usize) -> usize {
        assert!(self.has_cotangent());
        self.base.len() + i
    }

    pub fn w_indices(&self) -> Vec<usize> {
        (0..self.cotangent.len()).map(|i| self.base.len() + i).collect()
    }

    pub fn aux_indices(&self) -> Vec<usize> {
        let s = self.base.len() + self.cotangent.len();
        (s..s + self.aux.len()).collect()
    }

    pub fn base_ring(&self) -> PolyRing {
        PolyRing { base: self.base.clone(), cotangent: Vec::new(), aux: Vec::new() }
    }

    pub fn cot_ring(&self) -> PolyRing {
        PolyRing { base: self.base.clone(), cotangent: self.cotangent.clone(), aux: Vec::new() }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        parse_poly(s, &self.names())
    }

    pub fn parse_ideal(&self, gens: &[String]) -> Result<Ideal> {
        let polys = gens.iter().map(|g| self.parse(g)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self.nvars(), polys))
    }

    pub fn fmt(&self, p: &Poly) -> String {
        p.fmt_with(&self.names())
    }

    pub fn fmt_gens(&self, gens: &[Poly]) -> Vec<String> {
        gens.iter().map(|g| self.fmt(g)).collect()
    }

    /// `V(g_1, ..., g_k)` display of the reduced basis.
    pub fn fmt_variety(&self, i: &Ideal) -> String {
        format!("V({})", self.fmt_gens(&i.reduced()).join(", "))
    }

    /// Lift a base-ring polynomial into this ring.
    pub fn from_base(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.nbase());
        p.extend(self.nvars())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_indices() {
        let r = PolyRing::cotangent_of(vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(r.nvars(), 4);
        assert_eq!(r.w(1), 3);
        assert_eq!(r.index_of("w0"), Some(2));
        assert!(PolyRing::new(vec!["x".into(), "x".into()], vec![]).is_err());
        let p = r.parse("w1 - 3*y^2").unwrap();
        assert_eq!(r.fmt(&p), "-3*y^2 + w1");
    }
}

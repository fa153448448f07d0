//! Buchberger's algorithm with the Gebauer-Moeller pair update (product and chain criteria).

use super::mono::{self, Mono, MonomialOrder};
use super::polynomial::{merge_add, Poly, Q};
use num_traits::One;

/// Terms sorted descending in the basis order.
type OPoly = Vec<(Mono, Q)>;

#[derive(Clone, Debug)]
pub struct GBasis {
    nvars: usize,
    ord: MonomialOrder,
    elems: Vec<OPoly>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

fn to_ordered(p: &Poly, ord: MonomialOrder) -> OPoly {
    if ord == MonomialOrder::GrevLex {
        return p.terms().to_vec();
    }
    let mut t = p.terms().to_vec();
    t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    t
}

fn make_monic(p: &mut OPoly) {
    if let Some((_, c)) = p.first() {
        if !c.is_one() {
            let inv = c.recip();
            for (_, a) in p.iter_mut() {
                *a *= &inv;
            }
        }
    }
}

fn scaled_shift(p: &[(Mono, Q)], m: &[u32], c: &Q) -> OPoly {
    p.iter().map(|(t, a)| (mono::mul(t, m), a * c)).collect()
}

struct Engine {
    ord: MonomialOrder,
    polys: Vec<OPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn lm(&self, i: usize) -> &Mono {
        &self.polys[i][0].0
    }

    fn find_divisor(&self, m: &[u32], skip: Option<usize>) -> Option<usize> {
        (0..self.polys.len()).find(|&i| {
            self.active[i] && Some(i) != skip && mono::divides(self.lm(i), m)
        })
    }

    fn reduce(&self, p: OPoly, skip: Option<usize>) -> OPoly {
        let ord = self.ord;
        let mut p = p;
        let mut start = 0;
        let mut r: OPoly = Vec::new();
        while start < p.len() {
            let (m, c) = (&p[start].0, &p[start].1);
            match self.find_divisor(m, skip) {
                Some(g) => {
                    let gp = &self.polys[g];
                    let qm = mono::div(m, &gp[0].0);
                    let factor = -(c / &gp[0].1);
                    let sub = scaled_shift(&gp[1..], &qm, &factor);
                    p = merge_add(&p[start + 1..], &sub, ord);
                    start = 0;
                }
                None => {
                    r.push(p[start].clone());
                    start += 1;
                }
            }
        }
        r
    }

    fn spoly(&self, i: usize, j: usize, lcm: &[u32]) -> OPoly {
        let (a, b) = (&self.polys[i], &self.polys[j]);
        let ma = mono::div(lcm, &a[0].0);
        let mb = mono::div(lcm, &b[0].0);
        let ta = scaled_shift(&a[1..], &ma, &Q::one());
        let tb = scaled_shift(&b[1..], &mb, &-Q::one());
        merge_add(&ta, &tb, self.ord)
    }

    fn update(&mut self, h: OPoly) {
        let hidx = self.polys.len();
        let lm_h = h[0].0.clone();
        self.polys.push(h);
        self.active.push(true);

        let mut c: Vec<(usize, Mono)> = (0..hidx)
            .filter(|&g| self.active[g])
            .map(|g| (g, mono::lcm(&lm_h, self.lm(g))))
            .collect();
        let mut d: Vec<(usize, Mono)> = Vec::new();
        while let Some((g1, l1)) = c.pop() {
            let keep = mono::coprime(&lm_h, self.lm(g1))
                || (!c.iter().any(|(_, l2)| mono::divides(l2, &l1))
                    && !d.iter().any(|(_, l2)| mono::divides(l2, &l1)));
            if keep {
                d.push((g1, l1));
            }
        }
        let e: Vec<(usize, Mono)> = d
            .into_iter()
            .filter(|(g, _)| !mono::coprime(&lm_h, self.lm(*g)))
            .collect();

        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let drop = mono::divides(&lm_h, &p.lcm)
                && mono::lcm(self.lm(p.i), &lm_h) != p.lcm
                && mono::lcm(&lm_h, self.lm(p.j)) != p.lcm;
            if !drop {
                self.pairs.push(p);
            }
        }
        for (g, l) in e {
            self.pairs.push(Pair { i: g, j: hidx, lcm: l });
        }
        for g in 0..hidx {
            if self.active[g] && mono::divides(&lm_h, &self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if ord.cmp(&self.pairs[k].lcm, &self.pairs[best].lcm) == std::cmp::Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

impl GBasis {
    pub fn compute(nvars: usize, gens: &[Poly], ord: MonomialOrder) -> GBasis {
        let mut inputs: Vec<OPoly> = gens
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                assert_eq!(p.nvars(), nvars, "ring mismatch");
                to_ordered(p, ord)
            })
            .collect();
        if inputs.iter().any(|p| p.len() == 1 && mono::is_one(&p[0].0)) {
            return GBasis::unit(nvars, ord);
        }
        inputs.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));
        let mut eng = Engine { ord, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
        for f in inputs {
            let mut h = eng.reduce(f, None);
            if h.is_empty() {
                continue;
            }
            if mono::is_one(&h[0].0) {
                return GBasis::unit(nvars, ord);
            }
            make_monic(&mut h);
            eng.update(h);
        }
        while let Some(pair) = eng.select() {
            let s = eng.spoly(pair.i, pair.j, &pair.lcm);
            let mut h = eng.reduce(s, None);
            if h.is_empty() {
                continue;
            }
            if mono::is_one(&h[0].0) {
                return GBasis::unit(nvars, ord);
            }
            make_monic(&mut h);
            eng.update(h);
        }
        // interreduce the minimal basis
        let idx: Vec<usize> = (0..eng.polys.len()).filter(|&i| eng.active[i]).collect();
        let mut elems: Vec<OPoly> = Vec::with_capacity(idx.len());
        for &i in &idx {
            let p = eng.polys[i].clone();
            let head = p[0].clone();
            let tail = eng.reduce(p[1..].to_vec(), Some(i));
            let mut full = vec![head];
            full.extend(tail);
            make_monic(&mut full);
            elems.push(full);
        }
        elems.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
        GBasis { nvars, ord, elems }
    }

    fn unit(nvars: usize, ord: MonomialOrder) -> GBasis {
        GBasis { nvars, ord, elems: vec![vec![(mono::one(nvars), Q::one())]] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.ord
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && mono::is_one(&self.elems[0][0].0)
    }

    pub fn lead_monomials(&self) -> Vec<Mono> {
        self.elems.iter().map(|p| p[0].0.clone()).collect()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.elems
            .iter()
            .map(|p| {
                if self.ord == MonomialOrder::GrevLex {
                    Poly::from_sorted(self.nvars, p.clone())
                } else {
                    Poly::from_terms(self.nvars, p.clone())
                }
            })
            .collect()
    }

    /// Each element with its terms in basis order (leading term first).
    pub fn ordered_terms(&self) -> &[Vec<(Mono, Q)>] {
        &self.elems
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.nvars, "ring mismatch");
        if p.is_zero() {
            return p.clone();
        }
        let eng = Engine {
            ord: self.ord,
            polys: self.elems.clone(),
            active: vec![true; self.elems.len()],
            pairs: Vec::new(),
        };
        let r = eng.reduce(to_ordered(p, self.ord), None);
        Poly::from_terms(self.nvars, r)
    }

    pub fn reduces_to_zero(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Check every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let eng = Engine {
            ord: self.ord,
            polys: self.elems.clone(),
            active: vec![true; self.elems.len()],
            pairs: Vec::new(),
        };
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let l = mono::lcm(&self.elems[i][0].0, &self.elems[j][0].0);
                let s = eng.spoly(i, j, &l);
                if !eng.reduce(s, None).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn lex_example() {
        // variables ordered w > y > x for lex
        let n = names(&["w", "y", "x"]);
        let gens = vec![parse_poly("y - x^2", &n).unwrap(), parse_poly("w - y", &n).unwrap()];
        let gb = GBasis::compute(3, &gens, MonomialOrder::Lex);
        let polys = gb.polys();
        assert!(polys.contains(&parse_poly("w - x^2", &n).unwrap()));
        assert!(polys.contains(&parse_poly("y - x^2", &n).unwrap()));
        assert!(gb.is_groebner());
    }

    #[test]
    fn linear_is_fixed() {
        let n = names(&["x", "y"]);
        let gens = vec![parse_poly("x", &n).unwrap(), parse_poly("y", &n).unwrap()];
        let gb = GBasis::compute(2, &gens, MonomialOrder::GrevLex);
        assert_eq!(gb.len(), 2);
    }

    #[test]
    fn cyclic3() {
        let n = names(&["x", "y", "z"]);
        let gens: Vec<Poly> = ["x+y+z", "x*y+y*z+z*x", "x*y*z-1"]
            .iter()
            .map(|s| parse_poly(s, &n).unwrap())
            .collect();
        let gb = GBasis::compute(3, &gens, MonomialOrder::GrevLex);
        assert!(gb.is_groebner());
        for g in &gens {
            assert!(gb.reduces_to_zero(g));
        }
        // the cyclic-3 quotient has dimension 6
        let lex = GBasis::compute(3, &gens, MonomialOrder::Lex);
        assert!(lex.polys().contains(&parse_poly("z^3 - 1", &n).unwrap()));
    }

    #[test]
    fn unit_detection() {
        let n = names(&["x"]);
        let gens = vec![parse_poly("x", &n).unwrap(), parse_poly("x - 1", &n).unwrap()];
        assert!(GBasis::compute(1, &gens, MonomialOrder::GrevLex).is_unit());
    }
}

//! Property suites shared by the `properties` and `acceptance` targets.

use levo::corpus::{constant_sheaf, names, TwoPlanes};
use levo::cycles::{AbGroup, EnrichedCycle, OrdCycle};
use levo::gecc::{build_gecc, SheafSpec};
use levo::geom::{constant_on, intersect_hypersurface, multiplicity_along, multiplicity_by_slicing};
use levo::poly::decompose::minimal_primes;
use levo::poly::factor::factor;
use levo::poly::{q, Ideal, Poly, PolyRing};
use levo::vogel::{levo, set_identity_holds};
use levo::Error;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

pub const CASES: u32 = 200;

pub fn config(seed: u64) -> Config {
    Config { cases: CASES, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn run<S: Strategy>(
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config(seed)).run(&strategy, test).map_err(|e| e.to_string())
}

fn group() -> impl Strategy<Value = AbGroup> {
    (0u64..4, prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 6, 9]), 0..3))
        .prop_map(|(r, t)| AbGroup::new(r, &t))
}

fn pool() -> Vec<Ideal> {
    let r = PolyRing::base_only(names(&["x", "y", "z"])).unwrap();
    [vec!["x"], vec!["y"], vec!["x", "y"], vec!["x - z", "y + 2*z"], vec!["z^2 - x*y"]]
        .iter()
        .map(|g| r.parse_ideal(&names(g)).unwrap())
        .collect()
}

fn cycle() -> impl Strategy<Value = EnrichedCycle> {
    prop::collection::vec((0usize..5, group()), 0..5).prop_map(|terms| {
        let p = pool();
        let mut c = EnrichedCycle::new(3);
        for (i, m) in terms {
            c.add_term(&p[i], m, true);
        }
        c
    })
}

fn ord_le(a: &OrdCycle, b: &OrdCycle) -> bool {
    a.iter().all(|(k, v)| b.get(k).is_some_and(|w| v <= w))
}

pub fn partial_order_axioms() -> Result<(), String> {
    run(11, (cycle(), cycle(), cycle()), |(a, b, c)| {
        prop_assert!(a.le(&a));
        let ab = a.add(&b).unwrap();
        let abc = ab.add(&c).unwrap();
        prop_assert!(a.le(&ab));
        prop_assert!(ab.le(&abc));
        prop_assert!(a.le(&abc));
        prop_assert!(ord_le(&a.ord(), &ab.ord()));
        if a.le(&b) && b.le(&a) {
            prop_assert_eq!(&a, &b);
        }
        if b.is_empty() {
            prop_assert_eq!(&ab, &a);
        } else if ab.le(&a) {
            // a proper sum can only fall below a when every added term is zero
            prop_assert!(b.iter().all(|(_, t)| t.module.is_zero()));
        }
        Ok(())
    })
}

pub fn ord_of_scaled_cycle() -> Result<(), String> {
    run(12, (cycle(), group()), |(e, g)| {
        let scaled = e.scale(&g).ord();
        let expected: OrdCycle = e
            .ord()
            .into_iter()
            .map(|(k, v)| (k, v * g.rank as i64))
            .filter(|(_, v)| *v != 0)
            .collect();
        prop_assert_eq!(scaled, expected);
        Ok(())
    })
}

pub fn group_ring_axioms() -> Result<(), String> {
    run(13, (group(), group(), group()), |(a, b, c)| {
        prop_assert_eq!(a.dsum(&b), b.dsum(&a));
        prop_assert_eq!(a.dsum(&b).dsum(&c), a.dsum(&b.dsum(&c)));
        prop_assert_eq!(a.dsum(&AbGroup::zero()), a.clone());
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        prop_assert_eq!(a.tensor(&AbGroup::free(1)), a.clone());
        prop_assert!(a.tensor(&AbGroup::zero()).is_zero());
        prop_assert_eq!(a.tensor(&b.dsum(&c)), a.tensor(&b).dsum(&a.tensor(&c)));
        prop_assert!(a.le(&a.dsum(&b)));
        Ok(())
    })
}

fn linear_form(c: &[i64]) -> Poly {
    let n = 3;
    let mut p = Poly::constant(n, q(c[3]));
    for (i, &ci) in c.iter().take(n).enumerate() {
        p = &p + &(&Poly::var(n, i) * &Poly::constant(n, q(ci)));
    }
    p
}

fn linear_cycle() -> impl Strategy<Value = EnrichedCycle> {
    prop::collection::vec((prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..3), group()), 1..4)
        .prop_map(|terms| {
            let mut c = EnrichedCycle::new(3);
            for (forms, m) in terms {
                let i = Ideal::new(3, forms.iter().map(|f| linear_form(f)).collect());
                if !i.is_unit() && !i.is_zero() {
                    c.add_term(&i.canonical(), m, true);
                }
            }
            c
        })
}

fn total(c: &EnrichedCycle) -> AbGroup {
    c.components().into_iter().fold(AbGroup::zero(), |acc, (_, m, _)| acc.dsum(m))
}

pub fn conservation_under_perturbed_slices() -> Result<(), String> {
    let strategy = (linear_cycle(), prop::collection::vec(-4i64..=4, 4), 1i64..5, any::<u64>());
    run(14, strategy, |(e, h, shift, seed)| {
        let r = PolyRing::base_only(names(&["x", "y", "z"])).unwrap();
        let g = linear_form(&h);
        let mut moved = h.clone();
        moved[3] += shift;
        let g2 = linear_form(&moved);
        prop_assume!(!g.is_constant());
        // the hyperplane must not be constant along any component
        prop_assume!(e.components().iter().all(|(p, _, _)| !constant_on(p, &g)));
        let a = intersect_hypersurface(&r, &e, &g, seed).unwrap();
        let b = intersect_hypersurface(&r, &e, &g2, seed).unwrap();
        prop_assert_eq!(total(&a.cycle), total(&b.cycle));
        Ok(())
    })
}

pub fn multiplicity_is_slice_independent() -> Result<(), String> {
    let strategy = (prop::collection::vec((0usize..5, 1u32..4), 1..3), any::<u64>(), any::<u64>());
    run(15, strategy, |(picks, s1, s2)| {
        let r = PolyRing::base_only(names(&["x", "y"])).unwrap();
        let pool = ["x", "y - 1", "x + y", "y^2 - x^3", "x^2 + y^2 - 1"];
        let mut g = Poly::one(2);
        let mut used = Vec::new();
        for (i, e) in picks {
            if used.contains(&i) {
                continue;
            }
            used.push(i);
            g = &g * &r.parse(pool[i]).unwrap().pow(e);
        }
        let zero = Ideal::zero(2);
        let comps: Vec<Ideal> =
            minimal_primes(&Ideal::new(2, vec![g.clone()])).unwrap().into_iter().map(|c| c.prime).collect();
        let fac = factor(&g);
        for w in &comps {
            let others: Vec<Ideal> = comps.iter().filter(|c| !c.same(w)).cloned().collect();
            let (a, _) = multiplicity_by_slicing(&zero, &g, w, &others, s1).unwrap();
            let (b, _) = multiplicity_by_slicing(&zero, &g, w, &others, s2).unwrap();
            prop_assert_eq!(a, b);
            let exp = fac.factors.iter().find(|(f, _)| w.contains(f)).map(|(_, e)| *e as u64).unwrap();
            prop_assert_eq!(a, exp);
            prop_assert_eq!(multiplicity_along(&zero, &g, w, s1).unwrap(), exp);
        }
        Ok(())
    })
}

fn random_f() -> impl Strategy<Value = String> {
    prop::collection::vec((1i64..4, 0u32..4, 0u32..4), 1..4).prop_map(|terms| {
        terms.iter().map(|(c, a, b)| format!("{}*x^{}*y^{}", c, a, b)).collect::<Vec<_>>().join(" + ")
    })
}

pub fn vogel_set_identity_on_planar_runs() -> Result<(), String> {
    run(16, (random_f(), any::<u64>()), |(f, seed)| {
        let r = PolyRing::cotangent_of(names(&["x", "y"])).unwrap();
        let f = r.base_ring().parse(&f).unwrap();
        let g = constant_sheaf(&r);
        match levo(&r, &g, &f, &[q(0), q(0)], seed) {
            Ok(res) => {
                for dr in res.degrees.values() {
                    prop_assert!(set_identity_holds(&r, &dr.decomposition, &f).unwrap());
                }
            }
            Err(Error::Genericity { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
        Ok(())
    })
}

pub fn vogel_set_identity_on_two_planes() -> Result<(), String> {
    let strategy = (2u32..4, 2u32..4, 2u32..5, 2u32..5, 2u32..4, any::<u64>());
    run(17, strategy, |(a, b, c, d, t, seed)| {
        let fam = TwoPlanes::new(a, b, c, d, t);
        let r = TwoPlanes::ring();
        let g = build_gecc(&r, &SheafSpec::Strata(TwoPlanes::strata(&r)), &mut Vec::new()).unwrap();
        let f = fam.f(&r);
        let res = levo(&r, &g, &f, &[q(0), q(0), q(0), q(0)], seed).unwrap();
        for dr in res.degrees.values() {
            prop_assert!(set_identity_holds(&r, &dr.decomposition, &f).unwrap());
        }
        let t = res.module_table();
        prop_assert_eq!(t[&2][1].rank, fam.lambda_2_1());
        prop_assert_eq!(t[&2][0].rank, fam.lambda_2_0());
        Ok(())
    })
}

// only the acceptance target walks the table
#[allow(dead_code)]
pub type Suite = (&'static str, fn() -> Result<(), String>);

#[allow(dead_code)]
pub const SUITES: &[Suite] = &[
    ("cycle partial order", partial_order_axioms),
    ("ord of scaled cycles", ord_of_scaled_cycle),
    ("group ring axioms", group_ring_axioms),
    ("conservation under perturbed slices", conservation_under_perturbed_slices),
    ("multiplicity slice independence", multiplicity_is_slice_independent),
    ("set identity, planar runs", vogel_set_identity_on_planar_runs),
    ("set identity, two planes", vogel_set_identity_on_two_planes),
];

use levo::corpus::{constant_sheaf, names, TwoPlanes};
use levo::cycles::{AbGroup, EnrichedCycle, GradedEnrichedCycle};
use levo::gecc::{build_gecc, SheafSpec, StratumSpec};
use levo::poly::{q, Ideal, Poly, PolyRing, Q};
use levo::vogel::*;
use levo::Error;
use std::collections::BTreeMap;

fn ideal(r: &PolyRing, gens: &[&str]) -> Ideal {
    r.parse_ideal(&names(gens)).unwrap()
}

fn origin(n: usize) -> Vec<Q> {
    vec![q(0); n]
}

fn plane(order: &[&str]) -> PolyRing {
    PolyRing::cotangent_of(names(order)).unwrap()
}

fn two_planes_gecc(r: &PolyRing) -> GradedEnrichedCycle {
    build_gecc(r, &SheafSpec::Strata(TwoPlanes::strata(r)), &mut Vec::new()).unwrap()
}

#[test]
fn graph_ideals() {
    let r = plane(&["x", "y"]);
    let f = r.base_ring().parse("x^2 + y^3").unwrap();
    assert!(im_df(&r, &f).same(&ideal(&r, &["w0 - 2*x", "w1 - 3*y^2"])));
    assert!(im_df(&r, &Poly::zero(2)).same(&ideal(&r, &["w0", "w1"])));
    let r4 = TwoPlanes::ring();
    let fam = TwoPlanes::new(2, 3, 2, 2, 2);
    let g = im_df(&r4, &fam.f(&r4));
    assert_eq!(g.gens().len(), 4);
    assert!(g.contains(&r4.parse("w0 - 4*(u^2 + x^3)*u").unwrap()));
    assert!(g.contains(&r4.parse("w1 - 6*(u^2 + x^3)*x^2").unwrap()));
}

#[test]
fn two_planes_decomposition() {
    let r = TwoPlanes::ring();
    let b = r.base_ring();
    let g = two_planes_gecc(&r);
    for fam in [TwoPlanes::new(2, 2, 2, 2, 2), TwoPlanes::new(2, 3, 2, 2, 3)] {
        let f = fam.f(&r);
        let d2 = vogel_decompose(&r, &g.degree(2), 2, &f, 7).unwrap();
        let curve = format!("u^{} + x^{}", fam.alpha, fam.beta);
        let delta1 = ideal(&r, &["y", "z", "w0", "w1", "w2", "w3", &curve]);
        assert_eq!(d2.delta[1].len(), 1);
        assert_eq!(d2.delta[1].coefficient(&delta1), AbGroup::free((fam.tau - 1) as u64));
        let pt = ideal(&r, &["u", "x", "y", "z", "w0", "w1", "w2", "w3"]);
        assert_eq!(d2.delta[0].coefficient(&pt), AbGroup::free(fam.lambda_2_0()));
        assert!(d2.delta[2].is_empty() && d2.delta[3].is_empty());
        assert_eq!(
            d2.pi[3].coefficient(&ideal(&r, &["u", "x", "w2", "w3", "z"])),
            AbGroup::free((fam.delta - 1) as u64)
        );
        assert_eq!(d2.pi[3].coefficient(&ideal(&r, &["y", "z", "w0", "w1", "w3"])), AbGroup::free(1));
        assert!(set_identity_holds(&r, &d2, &f).unwrap());

        let d1 = vogel_decompose(&r, &g.degree(1), 1, &f, 7).unwrap();
        assert_eq!(d1.delta[0].coefficient(&pt), AbGroup::free(1));
        assert!((1..4).all(|j| d1.delta[j].is_empty()));

        let lam = levo_cycles(&r, &d2, &f).unwrap();
        assert_eq!(
            lam[1].coefficient(&ideal(&b, &[&curve, "y", "z"])),
            AbGroup::free((fam.tau - 1) as u64)
        );
        let lam1 = levo_cycles(&r, &d1, &f).unwrap();
        assert_eq!(lam1[0].coefficient(&ideal(&b, &["u", "x", "y", "z"])), AbGroup::free(1));

        let res = levo(&r, &g, &f, &origin(4), 11).unwrap();
        assert_eq!(res.d, 1);
        let t = res.module_table();
        assert_eq!(t[&1], vec![AbGroup::free(1), AbGroup::zero(), AbGroup::zero(), AbGroup::zero()]);
        assert_eq!(
            t[&2],
            vec![AbGroup::free(fam.lambda_2_0()), AbGroup::free(fam.lambda_2_1()), AbGroup::zero(), AbGroup::zero()]
        );
    }
}

#[test]
fn classical_examples() {
    let r = plane(&["x", "y"]);
    let b = r.base_ring();
    let g = constant_sheaf(&r);
    let y2 = b.parse("y^2").unwrap();
    let d = vogel_decompose(&r, &g.degree(2), 2, &y2, 1).unwrap();
    assert_eq!(d.delta[1].coefficient(&ideal(&r, &["w0", "w1", "y"])), AbGroup::free(1));
    assert!(d.pi[1].is_empty() && d.delta[0].is_empty());
    let lam = levo_cycles(&r, &d, &y2).unwrap();
    assert_eq!(lam[1].coefficient(&ideal(&b, &["y"])), AbGroup::free(1));
    let res = levo(&r, &g, &y2, &origin(2), 1).unwrap();
    assert_eq!(res.module_table()[&2], vec![AbGroup::zero(), AbGroup::free(1)]);

    let cusp = b.parse("x^2 + y^3").unwrap();
    let res = levo(&r, &g, &cusp, &origin(2), 1).unwrap();
    assert_eq!(res.module_table()[&2], vec![AbGroup::free(2), AbGroup::zero()]);
    assert_eq!(res.d, 0);

    let lin = b.parse("x").unwrap();
    let res = levo(&r, &g, &lin, &origin(2), 1).unwrap();
    assert!(res.module_table()[&2].iter().all(AbGroup::is_zero));
    assert_eq!(res.d, -1);
}

#[test]
fn dropped_and_rejected_components() {
    let r = plane(&["x", "y"]);
    let zero = ideal(&r, &["w0", "w1"]);
    let e = EnrichedCycle::single(&zero, AbGroup::free(1), true);
    let d = vogel_decompose(&r, &e, 0, &Poly::zero(2), 1).unwrap();
    assert_eq!(d.dropped.len(), 1);
    assert!(d.pi[2].is_empty());
    let thin = EnrichedCycle::single(&ideal(&r, &["x", "y", "w0"]), AbGroup::free(1), true);
    assert!(matches!(vogel_decompose(&r, &thin, 0, &Poly::zero(2), 1), Err(Error::Input(_))));
}

#[test]
fn polar_line() {
    // with y first, V(x) is transverse to the first coordinate hyperplane
    let r = plane(&["y", "x"]);
    let b = r.base_ring();
    let line = ideal(&r, &["x", "w0"]);
    let mut g = GradedEnrichedCycle::new(4);
    g.insert(1, EnrichedCycle::single(&line, AbGroup::free(1), true));
    let res = polar_package(&r, &g, &origin(2), 3).unwrap();
    let dr = &res.degrees[&1];
    assert_eq!(dr.lambda[1].coefficient(&ideal(&b, &["x"])), AbGroup::free(1));
    assert_eq!(dr.modules, vec![AbGroup::zero(), AbGroup::free(1)]);

    let strata = vec![StratumSpec::new(ideal(&b, &["x"]), BTreeMap::from([(1, AbGroup::free(1))]))];
    for j in 0..2 {
        let it = polar_modules_iterative(&r, &strata, &origin(2), j, 1, 5).unwrap();
        assert_eq!(it, dr.modules[j]);
    }
    assert!(polar_modules_iterative(&r, &strata, &origin(2), 1, 4, 5).unwrap().is_zero());

    // point stratum
    let pt = vec![StratumSpec::new(ideal(&b, &["x", "y"]), BTreeMap::from([(0, AbGroup::free(3))]))];
    let g = build_gecc(&r, &SheafSpec::Strata(pt.clone()), &mut Vec::new()).unwrap();
    let res = polar_package(&r, &g, &origin(2), 3).unwrap();
    assert_eq!(res.module_table()[&0], vec![AbGroup::free(3), AbGroup::zero()]);
    assert_eq!(polar_modules_iterative(&r, &pt, &origin(2), 0, 0, 1).unwrap(), AbGroup::free(3));
    assert!(polar_modules_iterative(&r, &pt, &origin(2), 1, 0, 1).unwrap().is_zero());
}

#[test]
fn polar_line_in_bad_order() {
    // with x first, the slice V(x) contains the line
    let r = plane(&["x", "y"]);
    let mut g = GradedEnrichedCycle::new(4);
    g.insert(1, EnrichedCycle::single(&ideal(&r, &["x", "w1"]), AbGroup::free(1), true));
    match polar_package(&r, &g, &origin(2), 3) {
        Err(Error::Genericity { stage, .. }) => assert_eq!(stage, 1),
        other => panic!("expected a genericity failure, got {:?}", other.map(|r| r.d)),
    }
}

#[test]
fn theta() {
    let r = plane(&["x", "y"]);
    let b = r.base_ring();
    let mut g = GradedEnrichedCycle::new(4);
    g.insert(1, EnrichedCycle::single(&ideal(&r, &["x", "w1"]), AbGroup::free(1), true));
    let t = theta_sets(&r, &g, 0).unwrap();
    assert_eq!(t.theta.len(), 1);
    assert!(t.theta[0].same(&ideal(&b, &["x"])));
    assert!(t.gamma.is_empty());
    let t = theta_sets(&r, &g, 1).unwrap();
    assert!(t.theta[0].same(&ideal(&b, &["x"])));
    assert_eq!(t.gamma.len(), 1);
    assert!(theta_sets(&r, &g, 2).is_err());

    let r4 = TwoPlanes::ring();
    let b4 = r4.base_ring();
    let curve = ideal(&b4, &["u^2 + x^3", "y", "z"]);
    let con = levo::geom::conormal_ideal(&r4, &curve).unwrap();
    let mut g = GradedEnrichedCycle::new(8);
    g.insert(2, EnrichedCycle::single(&con, AbGroup::free(1), true));
    let t = theta_sets(&r4, &g, 1).unwrap();
    assert_eq!(t.gamma.len(), 1);
    assert!(t.gamma[0].same(&curve));
}

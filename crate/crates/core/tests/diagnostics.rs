use levo::corpus::{constant_sheaf, names, TwoPlanes};
use levo::cycles::{AbGroup, GradedEnrichedCycle};
use levo::diagnostics::*;
use levo::gecc::{build_gecc, SheafSpec};
use levo::pipeline::{parse_config, randomize_coordinates, resolve, run_pipeline};
use levo::poly::{q, Ideal, PolyRing, Q};
use levo::vogel::levo;
use std::collections::BTreeMap;

fn ideal(r: &PolyRing, gens: &[&str]) -> Ideal {
    r.parse_ideal(&names(gens)).unwrap()
}

fn origin(n: usize) -> Vec<Q> {
    vec![q(0); n]
}

fn two_planes(fam: TwoPlanes) -> (PolyRing, GradedEnrichedCycle, levo::poly::Poly) {
    let r = TwoPlanes::ring();
    let g = build_gecc(&r, &SheafSpec::Strata(TwoPlanes::strata(&r)), &mut Vec::new()).unwrap();
    let f = fam.f(&r);
    (r, g, f)
}

#[test]
fn certificates() {
    let (r, g, f) = two_planes(TwoPlanes::new(2, 2, 2, 2, 2));
    let run = levo(&r, &g, &f, &origin(4), 1);
    let c = isolating_certificate(&r.base_ring(), &run, &origin(4));
    assert_eq!(c.status, CertStatus::Certified);
    assert_eq!(c.d, 1);

    let p = PolyRing::cotangent_of(names(&["x", "y"])).unwrap();
    let cusp = p.base_ring().parse("x^2 + y^3").unwrap();
    let run = levo(&p, &constant_sheaf(&p), &cusp, &origin(2), 1);
    let c = isolating_certificate(&p.base_ring(), &run, &origin(2));
    assert_eq!((c.status, c.d), (CertStatus::Certified, 0));

    // critical locus of dimension 3 in four variables: proper, not certified
    let r4 = PolyRing::cotangent_of(names(&["a", "b", "c", "y"])).unwrap();
    let f = r4.base_ring().parse("y^2").unwrap();
    let run = levo(&r4, &constant_sheaf(&r4), &f, &origin(4), 1);
    let c = isolating_certificate(&r4.base_ring(), &run, &origin(4));
    assert_eq!((c.status, c.d), (CertStatus::ProperUncertified, 3));
}

#[test]
fn bad_coordinates_fail_then_randomize() {
    let cfg = parse_config(r#"{"variables": ["x", "y", "t"], "constant_sheaf": true, "f": "(x*y)^2", "seed": 3}"#)
        .unwrap();
    let job = resolve(&cfg).unwrap();
    let run = levo(&job.ring, &build_gecc(&job.ring, &job.spec, &mut Vec::new()).unwrap(), &job.f, &job.point, 3);
    let c = isolating_certificate(&job.ring.base_ring(), &run, &job.point);
    assert_eq!(c.status, CertStatus::Failed);
    assert!(c.failure.is_some());

    let flipped = run_pipeline(&randomize_coordinates(&cfg, 2).unwrap(), 0).unwrap();
    assert_eq!(flipped.status, CertStatus::Certified);
    assert_eq!(flipped.d, 2);
}

#[test]
fn transversality_verdicts() {
    let r = TwoPlanes::ring();
    let t = essential_transversality(&r, &ideal(&r, &["u", "x", "w2", "w3"]), &origin(4)).unwrap();
    assert!(!t.passes);
    assert!(!t.per_i[0]);
    let t = essential_transversality(&r, &ideal(&r, &["y", "z", "w0", "w1"]), &origin(4)).unwrap();
    assert!(t.passes);
    assert_eq!(t.per_i.len(), 4);
    let t = essential_transversality(&r, &ideal(&r, &["u", "x", "y", "z"]), &origin(4)).unwrap();
    assert!(t.passes);

    let c = transversality_certificate(&r, &[ideal(&r, &["u", "x", "y", "z"])], &origin(4)).unwrap();
    assert_eq!(c.status, CertStatus::Certified);
    let c = transversality_certificate(&r, &[ideal(&r, &["u", "x", "w2", "w3"])], &origin(4)).unwrap();
    assert_eq!(c.status, CertStatus::Failed);
}

#[test]
fn af_condition() {
    let r = PolyRing::cotangent_of(names(&["x", "y"])).unwrap();
    let b = r.base_ring();
    let plane = Ideal::zero(2);
    let v = af_exceptional_containment(&r, &plane, &ideal(&b, &["y"]), &b.parse("y^2").unwrap(), &origin(2), 1)
        .unwrap();
    assert!(v.holds, "{:?}", v);
    let v = af_exceptional_containment(&r, &plane, &ideal(&b, &["x", "y"]), &b.parse("x^2 + y^3").unwrap(), &origin(2), 1)
        .unwrap();
    assert!(v.holds, "{:?}", v);
    let v = af_exceptional_containment(&r, &plane, &ideal(&b, &["y"]), &b.parse("x").unwrap(), &origin(2), 1).unwrap();
    assert!(!v.differential);
    assert!(!v.holds);
    // the cusp singular point is not a_f-regular over a line through it
    let v = af_exceptional_containment(&r, &plane, &ideal(&b, &["y"]), &b.parse("x^2 + y^3").unwrap(), &origin(2), 1)
        .unwrap();
    assert!(!v.exceptional);
}

#[test]
fn zawatsky_shapes() {
    let fam = TwoPlanes::new(2, 2, 2, 2, 2);
    let lams = vec![AbGroup::free(fam.lambda_2_0()), AbGroup::free(fam.lambda_2_1()), AbGroup::zero(), AbGroup::zero()];
    let z = zawatsky_complex(2, &lams, 1);
    assert_eq!(z.modules, vec![AbGroup::free(2), AbGroup::free(4)]);
    assert_eq!(z.display(), "0 -> Z^2 -> Z^4 -> 0");
    assert!(z.constraints.iter().any(|c| c == "H^-1 is free of rank at most 2"));
    assert_eq!(z.alternating_sum, 4 - 2);

    let z = zawatsky_complex(1, &[AbGroup::free(1), AbGroup::zero(), AbGroup::zero(), AbGroup::zero()], 1);
    assert_eq!(z.display(), "0 -> Z -> 0");
    assert!(z.constraints[0].starts_with("H^0 ≅ Z"));

    let z = zawatsky_complex(0, &[AbGroup::zero(), AbGroup::zero()], -1);
    assert!(z.modules.is_empty());
    assert_eq!(z.alternating_sum, 0);
}

#[test]
fn euler_sums() {
    for fam in [TwoPlanes::new(2, 2, 2, 2, 2), TwoPlanes::new(2, 3, 2, 2, 3), TwoPlanes::new(3, 2, 4, 5, 2)] {
        let (r, g, f) = two_planes(fam);
        let res = levo(&r, &g, &f, &origin(4), 1).unwrap();
        let e = euler_check(&res.module_table(), Some(-fam.reduced_euler()));
        assert_eq!(e.milnor_reduced, fam.reduced_euler());
        assert_eq!(e.matches, Some(true));
        let z: i64 = res.module_table().iter().map(|(k, v)| zawatsky_complex(*k, v, res.d).alternating_sum).sum();
        assert_eq!(z, e.raw);
    }
    let cusp = BTreeMap::from([(2, vec![AbGroup::free(2), AbGroup::zero()])]);
    assert_eq!(euler_check(&cusp, None).raw, 2);
    assert_eq!(euler_check(&BTreeMap::new(), Some(0)).matches, Some(true));
}

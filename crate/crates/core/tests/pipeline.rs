use levo::cycles::AbGroup;
use levo::diagnostics::CertStatus;
use levo::pipeline::*;
use levo::poly::q;
use levo::Error;

fn two_planes_config() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../jobs/two_planes_2_2_2_2_2.json")).unwrap()
}

#[test]
fn parse_examples() {
    let cfg = parse_config(&two_planes_config()).unwrap();
    assert_eq!(cfg.strata.as_ref().unwrap().len(), 3);

    let polar = parse_config(r#"{"variables": ["x", "y"], "constant_sheaf": true}"#).unwrap();
    let job = resolve(&polar).unwrap();
    assert!(job.f.is_zero());

    let bad = parse_config(r#"{"variables": ["x", "y"], "constant_sheaf": true, "coordinates": {"matrix": [[1, 1], [1, 1]]}}"#);
    assert!(matches!(bad, Err(Error::Input(_))));
    let short = parse_config(r#"{"variables": ["x", "y"], "constant_sheaf": true, "point": ["0"]}"#);
    assert!(matches!(short, Err(Error::Input(_))));
    let both = parse_config(r#"{"variables": ["x"], "constant_sheaf": true, "strata": []}"#);
    assert!(both.is_err());
    let unknown = parse_config(r#"{"variables": ["x"], "constant_sheaf": true, "colour": 1}"#);
    match unknown {
        Err(Error::Parse(m)) => assert!(m.contains("line 1")),
        other => panic!("{:?}", other),
    }
}

#[test]
fn coordinate_changes() {
    let cfg = parse_config(r#"{"variables": ["x", "y"], "constant_sheaf": true, "f": "x^2 + y^3", "point": ["1", "2"],
        "coordinates": {"permutation": [1, 0]}}"#)
    .unwrap();
    let job = resolve(&cfg).unwrap();
    assert_eq!(job.ring.base_names(), &["y".to_string(), "x".to_string()]);
    assert_eq!(job.point, vec![q(2), q(1)]);
    assert_eq!(job.f, job.ring.base_ring().parse("x^2 + y^3").unwrap());

    let cfg = parse_config(r#"{"variables": ["x", "y"], "constant_sheaf": true, "f": "x", "point": ["1", "1"],
        "coordinates": {"matrix": [[1, 1], [0, 1]]}}"#)
    .unwrap();
    let job = resolve(&cfg).unwrap();
    // c0 = x + y, c1 = y, so x = c0 - c1
    assert_eq!(job.f, job.ring.base_ring().parse("c0 - c1").unwrap());
    assert_eq!(job.point, vec![q(2), q(1)]);
}

#[test]
fn explicit_conormals_follow_the_coordinates() {
    let cfg = parse_config(r#"{"variables": ["x", "y"], "gecc": {"1": [{"ideal": ["x", "w1"], "module": "Z"}]},
        "coordinates": {"matrix": [[1, 1], [0, 1]]}}"#)
    .unwrap();
    let job = resolve(&cfg).unwrap();
    let levo::gecc::SheafSpec::Direct(g) = &job.spec else { panic!() };
    let r = &job.ring;
    let expected = r.parse_ideal(&["c0 - c1".to_string(), "w1 + w0".to_string()]).unwrap();
    assert_eq!(g.degree(1).coefficient(&expected), AbGroup::free(1));
}

#[test]
fn randomization_is_seeded() {
    let cfg = parse_config(&two_planes_config()).unwrap();
    let a = randomize_coordinates(&cfg, 17).unwrap();
    let b = randomize_coordinates(&cfg, 17).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, randomize_coordinates(&cfg, 18).unwrap());
    assert!(coordinate_matrix(&a).is_ok());
}

#[test]
fn reports() {
    let cfg = parse_config(&two_planes_config()).unwrap();
    let r = run_pipeline(&cfg, 0).unwrap();
    assert_eq!(r.status, CertStatus::Certified);
    assert_eq!(r.exit_code(), 0);
    assert_eq!(r.lambda[&2][1], AbGroup::free(2));
    assert_eq!(r.lambda[&2][0], AbGroup::free(4));
    assert_eq!(r.lambda[&1][0], AbGroup::free(1));
    assert_eq!(r.critical_locus, vec!["V(z, y, u^2 + x^2)".to_string()]);
    assert!(r.json.get("elapsed_ms").is_none());
    let again = run_pipeline(&cfg, 0).unwrap();
    assert_eq!(r.render(Format::Json), again.render(Format::Json));
    assert!(r.render(Format::Text).contains("(Z)[V(u^2 + x^2, y, z)]"));

    let y2 = parse_config(r#"{"variables": ["x", "y"], "constant_sheaf": true, "f": "y^2"}"#).unwrap();
    let r = run_pipeline(&y2, 0).unwrap();
    assert_eq!(r.lambda[&2], vec![AbGroup::zero(), AbGroup::free(1)]);

    let lin = parse_config(r#"{"variables": ["x", "y"], "constant_sheaf": true, "f": "x"}"#).unwrap();
    let r = run_pipeline(&lin, 0).unwrap();
    assert!(r.lambda[&2].iter().all(AbGroup::is_zero));
    assert!(r.critical_locus.is_empty());

    let cusp = parse_config(r#"{"variables": ["x", "y"], "constant_sheaf": true, "f": "x^2 + y^3"}"#).unwrap();
    let r = run_pipeline(&cusp, 0).unwrap();
    assert_eq!(r.json["stalk_oracle"]["agrees_with_lambda0"], true);
}

#[test]
fn coordinate_free_outputs_survive_randomization() {
    let cfg = parse_config(r#"{"variables": ["x", "y", "t"], "constant_sheaf": true, "f": "(x*y)^2", "seed": 3}"#)
        .unwrap();
    let mut seen = Vec::new();
    for s in [2, 5, 6] {
        let r = run_pipeline(&randomize_coordinates(&cfg, s).unwrap(), 0).unwrap();
        assert_eq!(r.status, CertStatus::Certified);
        let ranks: Vec<u64> = r.lambda[&3].iter().map(|m| m.rank).collect();
        seen.push((r.d, r.euler.unwrap().raw, ranks, r.critical_locus.len()));
    }
    assert!(seen.windows(2).all(|w| w[0] == w[1]), "{:?}", seen);
}

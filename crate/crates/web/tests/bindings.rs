use levo_web::{certify, milnor, two_planes};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn two_planes_family() {
    let v = parse(two_planes(2, 3, 2, 2, 3));
    assert_eq!(v["modules"]["2"], serde_json::json!(["Z^11", "Z^6", "0", "0"]));
    assert_eq!(v["modules"]["1"][0], "Z");
    assert_eq!(v["euler"]["milnor_reduced"], v["euler"]["closed_form"]);
    assert_eq!(v["euler"]["matches"], true);
    assert!(parse(two_planes(1, 2, 2, 2, 2))["error"].is_string());
}

#[test]
fn milnor_numbers() {
    let v = parse(milnor("x, y", "x^3 + y^3"));
    assert_eq!(v["milnor_number"], 4);
    assert_eq!(v["certificate"], "certified");
    let v = parse(milnor("x y", "y^2"));
    assert!(v["milnor_number"].is_null());
    assert_eq!(v["modules"]["2"], serde_json::json!(["0", "Z"]));
    assert!(parse(milnor("x", "x +"))["error"].is_string());
}

#[test]
fn certificates() {
    let job = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../jobs/two_planes_2_2_2_2_2.json")).unwrap();
    let v = parse(certify(&job));
    assert_eq!(v["certificate"]["status"], "certified");
    assert!(v["text"].as_str().unwrap().contains("certificate: certified"));
    let bad = r#"{"variables": ["x", "y", "t"], "constant_sheaf": true, "f": "(x*y)^2"}"#;
    assert_eq!(parse(certify(bad))["certificate"]["status"], "failed");
    assert!(parse(certify("{"))["error"].is_string());
}

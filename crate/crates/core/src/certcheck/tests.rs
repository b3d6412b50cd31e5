use super::json::{from_json_str, to_json_string};
use super::*;
use crate::polyring::Limits;

const DUAL: &str = r#"{
  "schema_version": 1,
  "ring": "QQ[x]/(x^2)",
  "objects": [
    {"id": "k", "gens": 1, "relations": [["x"]]},
    {"id": "R", "gens": 1, "relations": []}
  ],
  "generators": {"ring": false, "summands": ["k"]},
  "steps": [
    {"kind": "AXIOM", "object": "k"},
    {"kind": "SES", "object": "R", "x": "k", "y": "R", "z": "k",
     "alpha": [["x"]], "beta": [["1"]]}
  ],
  "root": "R"
}"#;

fn dual() -> Certificate {
    from_json_str(DUAL, Limits::default()).unwrap()
}

#[test]
fn dual_numbers_ses_certificate_checks() {
    let c = dual();
    let v = check_certificate(&c).unwrap();
    assert!(v.ok, "{v:?}");
    let st = certificate_stats(&c);
    assert_eq!((st.depth, st.steps, st.triangle_count), (1, 2, 1));
}

#[test]
fn tampered_projection_is_not_surjective() {
    let c = from_json_str(&DUAL.replace(r#""beta": [["1"]]"#, r#""beta": [["x"]]"#), Limits::default()).unwrap();
    let v = check_certificate(&c).unwrap();
    assert!(!v.ok);
    assert_eq!(v.fail_step, Some(1));
    assert!(v.reason.unwrap().contains("not surjective"));
}

#[test]
fn ill_defined_map_is_reported() {
    let c = from_json_str(&DUAL.replace(r#""alpha": [["x"]]"#, r#""alpha": [["1"]]"#), Limits::default()).unwrap();
    let v = check_certificate(&c).unwrap();
    assert_eq!(v.fail_step, Some(1));
    assert!(v.reason.unwrap().contains("alpha is not well defined"));
}

#[test]
fn axiom_only_certificate_has_depth_zero() {
    let c = from_json_str(
        r#"{"schema_version": 1, "ring": "QQ[x]/(x^2)",
            "objects": [{"id": "k", "gens": 1, "relations": [["x"]]}],
            "generators": {"ring": false, "summands": ["k"]},
            "steps": [{"kind": "AXIOM", "object": "k"}], "root": "k"}"#,
        Limits::default(),
    )
    .unwrap();
    assert!(check_certificate(&c).unwrap().ok);
    let st = certificate_stats(&c);
    assert_eq!((st.depth, st.steps), (0, 1));
}

#[test]
fn free_axiom_needs_declared_ring() {
    let c = from_json_str(
        r#"{"schema_version": 1, "ring": "QQ[x]/(x^2)",
            "objects": [{"id": "k", "gens": 1, "relations": [["x"]]}, {"id": "F", "gens": 2, "relations": []}],
            "generators": {"ring": false, "summands": ["k"]},
            "steps": [{"kind": "AXIOM", "object": "F"}], "root": "F"}"#,
        Limits::default(),
    )
    .unwrap();
    let v = check_certificate(&c).unwrap();
    assert_eq!(v.fail_step, Some(0));
}

#[test]
fn json_round_trip_preserves_verdict() {
    let c = dual();
    let again = from_json_str(&to_json_string(&c), Limits::default()).unwrap();
    assert!(check_certificate(&again).unwrap().ok);
    assert_eq!(again.objects.len(), 2);
}

#[test]
fn unknown_reference_is_an_error() {
    let bad = DUAL.replace(r#""root": "R""#, r#""root": "Q""#);
    assert!(matches!(from_json_str(&bad, Limits::default()), Err(Error::Invalid(_))));
}

#[test]
fn use_before_establishment_fails() {
    let swapped = DUAL.replace(
        r#"{"kind": "AXIOM", "object": "k"},
    {"kind": "SES""#,
        r#"{"kind": "SES""#,
    )
    .replace(r#""beta": [["1"]]}"#, r#""beta": [["1"]]}, {"kind": "AXIOM", "object": "k"}"#);
    let c = from_json_str(&swapped, Limits::default()).unwrap();
    let v = check_certificate(&c).unwrap();
    assert_eq!(v.fail_step, Some(0));
    assert!(v.reason.unwrap().contains("before it is established"));
}

#[test]
fn summand_and_iso_steps() {
    // k is a summand of k ⊕ R, and R ⊕ k ≅ k ⊕ R by the swap.
    let c = from_json_str(
        r#"{"schema_version": 1, "ring": "QQ[x]/(x^2)",
            "objects": [
              {"id": "S", "gens": 2, "relations": [["x", "0"]]},
              {"id": "T", "gens": 2, "relations": [["0", "x"]]},
              {"id": "k", "gens": 1, "relations": [["x"]]}
            ],
            "generators": {"ring": false, "summands": ["S"]},
            "steps": [
              {"kind": "AXIOM", "object": "S"},
              {"kind": "ISO", "object": "T", "other": "S",
               "forward": [["0", "1"], ["1", "0"]], "backward": [["0", "1"], ["1", "0"]]},
              {"kind": "SUMMAND", "object": "k", "ambient": "T",
               "section": [["0"], ["1"]], "retraction": [["0", "1"]]}
            ],
            "root": "k"}"#,
        Limits::default(),
    )
    .unwrap();
    let v = check_certificate(&c).unwrap();
    assert!(v.ok, "{v:?}");
}

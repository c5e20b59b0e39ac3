mod common;

use dg_triangular::fixtures::{negative_controls, shipped};
use dg_triangular::format::{emit, parse};
use dg_triangular::linalg::Field;
use dg_triangular::Error;

use common::fixture_dir;

#[test]
fn shipped_files_match_builders() {
    for (stem, doc) in shipped(Field::Rationals).unwrap() {
        let on_disk = std::fs::read_to_string(fixture_dir().join(format!("{stem}.json"))).unwrap();
        assert_eq!(on_disk, emit(&doc).unwrap(), "{stem} is stale; rerun the export_fixtures example");
    }
    for nc in negative_controls(Field::Rationals) {
        let on_disk = std::fs::read_to_string(fixture_dir().join("negative").join(format!("{}.json", nc.file))).unwrap();
        assert_eq!(on_disk, emit(&nc.document).unwrap(), "{} is stale", nc.file);
    }
}

#[test]
fn emission_is_canonical() {
    for (stem, doc) in shipped(Field::Rationals).unwrap().into_iter().chain(shipped(Field::Prime(5)).unwrap()) {
        let once = emit(&doc).unwrap();
        let twice = emit(&parse(&once).unwrap()).unwrap();
        assert_eq!(once, twice, "{stem}");
    }
}

#[test]
fn finite_field_entries_are_reduced_integers() {
    let doc = shipped(Field::Prime(5)).unwrap().remove(0).1;
    let text = emit(&doc).unwrap();
    assert!(text.contains("\"Fp\": 5"));
    assert!(!text.contains('/'));
    assert!(!text.contains("-1"));
}

#[test]
fn rationals_omit_unit_denominators() {
    let text = std::fs::read_to_string(fixture_dir().join("kkk.json")).unwrap();
    assert!(!text.contains("/1\""));
    let doc = parse(&text.replace("\"1\"\n", "\"3/3\"\n")).unwrap();
    assert_eq!(emit(&doc).unwrap(), text);
}

fn parse_error(text: &str) -> (String, String) {
    match parse(text) {
        Err(Error::Parse { path, message }) => (path, message),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn malformed_json_is_located() {
    let (_, message) = parse_error("{\"field\": \"Q\",");
    assert!(!message.is_empty());
}

#[test]
fn unknown_keys_are_rejected_with_a_path() {
    let (path, message) = parse_error(r#"{"field": "Q", "categories": [{"name": "C", "objects": ["x"], "colour": 1}]}"#);
    assert!(path.starts_with("categories[0]"), "{path}");
    assert!(message.contains("colour"), "{message}");
}

#[test]
fn bad_scalars_are_rejected() {
    let text = r#"{"field": {"Fp": 5}, "categories": [{"name": "C", "objects": ["x"],
        "homs": [{"source": "x", "target": "x", "dims": {"0": 1}}],
        "identities": {"x": ["7"]}}]}"#;
    assert!(matches!(parse(text), Err(Error::Parse { .. })));
    let text = text.replace("\"7\"", "\"1/0\"");
    assert!(matches!(parse(&text), Err(Error::Parse { .. }) | Err(Error::DivisionByZero)));
}

#[test]
fn composite_fields_must_be_prime() {
    assert!(parse(r#"{"field": {"Fp": 6}}"#).is_err());
}

#[test]
fn unknown_names_are_structural() {
    let text = r#"{"field": "Q", "categories": [{"name": "C", "objects": ["x"],
        "homs": [{"source": "x", "target": "y", "dims": {"0": 1}}]}]}"#;
    assert!(parse(text).is_err());
}

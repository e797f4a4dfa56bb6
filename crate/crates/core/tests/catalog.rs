use std::path::Path;

use pwcheck_core::{run_case, CaseCatalog, CaseError, CatalogError, Report};

const OG6_SOURCE: &str = include_str!("../catalog/og6-genus2-sl2.toml");

fn with_og6(text: String) -> Result<CaseCatalog, CatalogError> {
    CaseCatalog::from_sources([("og6.toml".to_string(), text)])
}

#[test]
fn directory_catalog_matches_builtin() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
    let loaded = CaseCatalog::load(&dir).unwrap();
    let builtin = CaseCatalog::builtin().unwrap();
    assert_eq!(loaded.names().collect::<Vec<_>>(), builtin.names().collect::<Vec<_>>());
    let a = run_case(&loaded, "og6-genus2-sl2", None).unwrap();
    let b = run_case(&builtin, "og6-genus2-sl2", None).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let cat = CaseCatalog::builtin().unwrap();
    for name in ["og6-genus2-sl2", "genus1"] {
        let a = run_case(&cat, name, None).unwrap();
        let b = run_case(&cat, name, None).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_markdown(), b.to_markdown());
        assert_eq!(Report::from_json(&a.to_json()).unwrap(), a);
        let names: Vec<&str> = a.checks.iter().map(|c| c.name.as_str()).collect();
        assert!(names.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn empty_report_is_a_valid_document() {
    let cat = CaseCatalog::builtin().unwrap();
    let r = run_case(&cat, "genus1", Some("no such check")).unwrap();
    assert_eq!(r.summary.total, 0);
    assert!(r.all_pass());
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    assert!(r.to_markdown().starts_with("# Case `genus1`"));
}

#[test]
fn unknown_case_is_reported() {
    let cat = CaseCatalog::builtin().unwrap();
    assert!(matches!(run_case(&cat, "nonexistent", None), Err(CaseError::UnknownCase(n)) if n == "nonexistent"));
}

#[test]
fn codim_disagreeing_with_weights_is_rejected() {
    let text = OG6_SOURCE.replacen("lagrangian_weights = [1, 1, 1]", "lagrangian_weights = [-1, 1, 1]", 1);
    let err = with_og6(text).unwrap_err();
    assert!(matches!(err, CatalogError::Validation { .. }), "{err}");
    assert!(err.to_string().contains("codim"), "{err}");
}

#[test]
fn inconsistent_characters_are_rejected() {
    let text = OG6_SOURCE.replacen("order = 16", "order = 5", 1);
    assert!(matches!(with_og6(text), Err(CatalogError::Validation { .. })));
}

#[test]
fn ill_posed_rings_are_rejected() {
    let text = OG6_SOURCE.replacen("\"E^2 = -32*f\"", "\"E^2 = -32*zeta\"", 1);
    assert!(matches!(with_og6(text), Err(CatalogError::Validation { .. })));
}

#[test]
fn wrong_expectations_fail_without_erroring() {
    let text = OG6_SOURCE.replacen("integer = -16", "integer = -15", 1);
    let cat = with_og6(text).unwrap();
    let r = run_case(&cat, "og6-genus2-sl2", Some("chow")).unwrap();
    assert!(!r.all_pass());
    assert_eq!(r.summary.failed, 1);
}

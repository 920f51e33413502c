use loctwist::app::{run, Command, RunConfig, CHECK_GROUPS};
use loctwist::Field;

#[test]
fn every_check_group_passes_over_both_fields() {
    let config = RunConfig {
        fields: vec![Field::Rational, Field::prime(5).unwrap()],
        ..RunConfig::default()
    };
    let report = run(&Command::Verify, &config).unwrap();
    let failures: Vec<String> = report
        .failures()
        .map(|c| format!("{} / {}: {}", c.group, c.name, c.witness.clone().unwrap_or_default()))
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
    for group in CHECK_GROUPS {
        assert!(report.checks.iter().any(|c| c.group == *group), "no checks in {group}");
    }
}

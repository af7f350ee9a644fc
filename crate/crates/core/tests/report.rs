use durrmeyer_lab::experiment::{run, ExperimentKind, ExperimentSpec};
use durrmeyer_lab::report::{format_significant, parse_csv, ReportMetadata};
use proptest::prelude::*;

fn small_spec(kind: ExperimentKind) -> ExperimentSpec {
    ExperimentSpec {
        points: 21,
        ..ExperimentSpec::defaults(kind)
    }
}

#[test]
fn zero_function_on_two_points() {
    let spec = ExperimentSpec {
        function: "zero".into(),
        ns: vec![1],
        points: 2,
        ..ExperimentSpec::defaults(ExperimentKind::Custom)
    };
    let report = run(&spec).unwrap();
    let csv = report.to_csv();
    let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data, vec!["x,g,S_1", "0,0,0", "4,0,0"]);
    assert!(csv.lines().any(|l| l == "# 1,1,0,0"));
}

#[test]
fn header_lists_each_n() {
    let report = run(&small_spec(ExperimentKind::Figure1)).unwrap();
    assert_eq!(report.csv_header(), "x,g,S_25,S_50,S_100");
}

#[test]
fn csv_round_trip_and_metadata_echo() {
    let dir = tempfile::tempdir().unwrap();
    let spec = ExperimentSpec {
        csv: Some(dir.path().join("out.csv")),
        ..small_spec(ExperimentKind::Figure1)
    };
    let report = run(&spec).unwrap();
    let text = std::fs::read_to_string(dir.path().join("out.csv")).unwrap();
    let table = parse_csv(&text).unwrap();
    assert_eq!(table.rows.len(), report.rows.len());
    for (parsed, row) in table.rows.iter().zip(&report.rows) {
        let expected: Vec<f64> = [row.x, row.g]
            .into_iter()
            .chain(row.values.iter().copied())
            .collect();
        for (a, b) in parsed.iter().zip(&expected) {
            assert!((a - b).abs() <= 5e-12 * b.abs(), "{a} vs {b}");
        }
    }
    let meta = text
        .lines()
        .find_map(|l| l.strip_prefix("# metadata: "))
        .expect("metadata line");
    let meta: ReportMetadata = serde_json::from_str(meta).unwrap();
    assert_eq!(meta.spec, spec);
}

#[test]
fn svg_structure_and_determinism() {
    let report = run(&small_spec(ExperimentKind::Figure1)).unwrap();
    let a = report.to_svg().unwrap();
    let b = report.to_svg().unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(a.trim_end().ends_with("</svg>"));
    assert_eq!(a.matches("<polyline").count(), 4);
    assert_eq!(a.matches("stroke=\"blue\"").count(), 2);
    assert!(!a.contains("href"));
}

#[test]
fn svg_needs_two_rows() {
    let mut report = run(&small_spec(ExperimentKind::Custom)).unwrap();
    report.rows.truncate(1);
    assert!(report.to_svg().is_err());
}

#[test]
fn rows_and_columns_follow_the_grid() {
    let report = run(&small_spec(ExperimentKind::Figure2)).unwrap();
    assert_eq!(report.rows.len(), 21);
    assert!(report.rows.iter().all(|r| r.values.len() == 5));
    assert_eq!(report.summary.len(), 5);
}

#[test]
fn unwritable_path_is_an_io_error() {
    let report = run(&small_spec(ExperimentKind::Custom)).unwrap();
    let err = report
        .emit_csv(std::path::Path::new("/nonexistent-dir/out.csv"))
        .unwrap_err();
    assert!(err.to_string().contains("/nonexistent-dir/out.csv"));
}

proptest! {
    #[test]
    fn formatted_values_keep_twelve_digits(v in prop::num::f64::NORMAL) {
        let back: f64 = format_significant(v).parse().unwrap();
        prop_assert!(((back - v) / v).abs() <= 5e-12);
    }
}

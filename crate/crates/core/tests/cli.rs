use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn certify_moments_passes_and_reports_the_recurrence_gap() {
    let o = lab(&["certify", "moments", "--verbose"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("u Θ_2 = 2*x + 2*x/u vs 2*x + 2/u"), "{text}");
    assert!(text.contains("0 failed"));
    assert!(text.contains("Θ_3 = 12*x/u^2 + 6/u^3"), "{text}");
}

#[test]
fn certify_korovkin_reports_the_formulas() {
    let o = lab(&["certify", "korovkin"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("vs formula 1.602000e-1"));
}

#[test]
fn run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let svg = dir.path().join("f.svg");
    let o = lab(&[
        "run",
        "figure1",
        "--points",
        "11",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("figure1 for exp\nn,u,sup_error,mean_error\n25,25,"));
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap().lines().next(),
        Some("x,g,S_25,S_50,S_100")
    );
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn run_accepts_sequence_and_quadrature_flags() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("u.txt");
    std::fs::write(&table, "1 4 9 16").unwrap();
    let seq = format!("table:{}", table.display());
    let o = lab(&[
        "run",
        "custom",
        "--function",
        "t^2",
        "--n",
        "2,4",
        "--sequence",
        &seq,
        "--points",
        "5",
        "--quad-order",
        "8",
        "--fixed",
        "--tol",
        "1e-12",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\n4,16,"));
    let o = lab(&[
        "run",
        "voronovskaya",
        "--n",
        "16,32,64",
        "--points",
        "3",
        "--sequence",
        "power:1",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("log-log slope -"));
}

#[test]
fn configuration_errors_name_the_field() {
    for (args, field) in [
        (vec!["run", "custom", "--function", "nope"], "function"),
        (vec!["run", "figure1", "--n", "50,25"], "`n`"),
        (vec!["run", "figure1", "--points", "1"], "points"),
        (vec!["run", "figure1", "--xmax", "-1"], "xmax"),
        (vec!["run", "figure1", "--sequence", "cubic"], "sequence"),
        (vec!["run", "figure1", "--quad-order", "1"], "quad-order"),
        (vec!["run", "plot"], "kind"),
        (vec!["certify", "theorem9"], "theorem"),
    ] {
        let o = lab(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(field), "{args:?}: {err}");
    }
}

#[test]
fn divergence_is_reported() {
    let o = lab(&[
        "run",
        "custom",
        "--function",
        "exp",
        "--n",
        "1,2",
        "--points",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diverges"));
}

//! End-to-end runs of the `btl` binary.

use std::path::Path;
use std::process::{Command, Output};

use btl::cli::{Report, ReportBody};

fn btl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btl"))
        .args(args)
        .env("BTL_MAX_THREADS", "2")
        .output()
        .expect("run btl")
}

fn write_domain(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(out: &Output) -> Report {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn exact_ball_report() {
    let dir = tempfile::tempdir().unwrap();
    let ball = write_domain(
        dir.path(),
        "ball.json",
        r#"{"kind": "ball", "params": {"dimension": 3, "radius": 1.0}}"#,
    );
    let r = report(&btl(&["exact", "--domain", &ball, "--delta", "1"]));
    let ReportBody::Exact(e) = r.body else {
        panic!("wrong body")
    };
    let s1 = 1f64.sinh();
    let expected = 4.0 * std::f64::consts::PI * s1 / (1f64.cosh() - s1);
    assert!((e.rows[0].rigidity - expected).abs() < 1e-12 * expected);
}

#[test]
fn sweep_csv_has_one_row_per_delta() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_domain(
        dir.path(),
        "sq.json",
        r#"{"kind": "rectangle", "params": {"half_lengths": [1, 1]}}"#,
    );
    let out = btl(&[
        "sweep",
        "--domain",
        &square,
        "--deltas",
        "0.4,0.2,0.1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "delta,rigidity,delta_sq_t,limit,gap");
    assert_eq!(lines.len(), 4);
    let limit: f64 = lines[1].split(',').nth(3).unwrap().parse().unwrap();
    assert_eq!(limit, 16.0);
}

#[test]
fn solve_writes_to_out_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write_domain(
        dir.path(),
        "poly.json",
        r#"{"kind": "polygon", "params": {"vertices": [[0, 0], [2, 0], [2.5, 1], [0.5, 1.5]]}}"#,
    );
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = btl(&[
            "solve",
            "--domain",
            &poly,
            "--level",
            "3",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let (ta, tb) = (
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap(),
    );
    assert_eq!(ta, tb);
    let r: Report = serde_json::from_str(&ta).unwrap();
    let ReportBody::Solve(rows) = r.body else {
        panic!("wrong body")
    };
    assert!(rows[0].summary.solver_residual <= 1e-10);
    assert!(rows[0].exact_rigidity.is_none());
}

#[test]
fn nodal_csv() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_domain(
        dir.path(),
        "sq.json",
        r#"{"kind": "rectangle", "params": {"half_lengths": [1, 1]}}"#,
    );
    let out = btl(&[
        "solve", "--domain", &square, "--level", "1", "--deltas", "0.5,1", "--format", "csv",
        "--nodal",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "x,y,u_delta_0.5,u_delta_1");
    assert_eq!(text.lines().count(), 1 + 13);
}

#[test]
fn bounds_on_disk_pass() {
    let dir = tempfile::tempdir().unwrap();
    let disk = write_domain(
        dir.path(),
        "disk.json",
        r#"{"kind": "disk", "params": {"radius": 1.0}}"#,
    );
    let out = btl(&[
        "bounds", "--domain", &disk, "--deltas", "0.5,2", "--level", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(!r.failed());
    let ReportBody::Bounds(reports) = r.body else {
        panic!("wrong body")
    };
    assert_eq!(reports.len(), 2);
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let annulus = write_domain(
        dir.path(),
        "annulus.json",
        r#"{"kind": "annulus", "params": {"inner_radius": 1, "outer_radius": 2}}"#,
    );
    let bad = write_domain(
        dir.path(),
        "bad.json",
        r#"{"kind": "disk", "params": {"radius": 0}}"#,
    );
    let garbage = write_domain(dir.path(), "garbage.json", "not json");
    for args in [
        vec!["geom", "--domain", &annulus],
        vec!["exact", "--domain", &bad],
        vec!["exact", "--domain", &garbage],
        vec!["solve", "--domain", &annulus, "--level", "9"],
        vec!["solve", "--domain", &annulus, "--delta", "-1"],
        vec!["exact", "--domain", "/nonexistent/domain.json"],
        vec!["frobnicate", "--domain", &annulus],
    ] {
        let out = btl(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn failed_verdicts_exit_with_one() {
    use btl::bounds::{BoundVerdict, Provenance, Relation};
    use btl::cli::{DomainInput, Format};
    // a report cannot fail on valid inputs, so build one by hand
    let dir = tempfile::tempdir().unwrap();
    let square = write_domain(
        dir.path(),
        "sq.json",
        r#"{"kind": "rectangle", "params": {"half_lengths": [1, 1]}}"#,
    );
    let mut r = report(&btl(&["bounds", "--domain", &square, "--level", "1"]));
    let ReportBody::Bounds(reports) = &mut r.body else {
        panic!("wrong body")
    };
    reports[0].verdicts.push(BoundVerdict::new(
        "x",
        "x",
        (2.0, Provenance::Exact),
        Relation::Le,
        (1.0, Provenance::Exact),
    ));
    assert!(r.failed());
    assert!(matches!(r.domain, DomainInput::Planar(_)));
    assert!(r.render(Format::Csv).unwrap().contains(",fail,"));
}

#[test]
fn geom_reports_polygon_summary() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_domain(
        dir.path(),
        "sq.json",
        r#"{"kind": "rectangle", "params": {"half_lengths": [1, 1]}}"#,
    );
    let r = report(&btl(&["geom", "--domain", &square]));
    let ReportBody::Geom(s) = r.body else {
        panic!("wrong body")
    };
    assert!((s.inradius - 1.0).abs() < 1e-12);
    assert!((s.circumradius - 2f64.sqrt()).abs() < 1e-12);
    assert!((s.proximal_radius - 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn sample_domains_parse_and_run() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../domains");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let domain = btl::cli::DomainInput::load(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let command = match domain {
            btl::cli::DomainInput::Exact(_) => "exact",
            btl::cli::DomainInput::Planar(_) => "bounds",
        };
        let out = btl(&[command, "--domain", path.to_str().unwrap(), "--level", "1"]);
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
        seen += 1;
    }
    assert_eq!(seen, 9);
}

use std::process::{Command, Output};

fn ffec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_line_for_83() {
    let o = ffec(&["--paper-curve", "-p", "83", "--paper-table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.trim_end().ends_with("2(t) + (t+2) + (1/t)")));
}

#[test]
fn table_for_all_primes() {
    let o = ffec(&["--paper-curve", "--primes", "2..100", "--paper-table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.trim() == "2  3(t) + (t+1)"));
    assert!(out.lines().any(|l| l.trim() == "3  3(t) + (t+1)"));
    assert!(out.contains("PASS: 25 of 25"));
}

#[test]
fn json_reports_for_all_primes() {
    let o = ffec(&["--paper-curve", "--primes", "2..100", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 25);
    for r in reports {
        assert_eq!(r["sha"], 1, "{}", r["prime"]);
        assert_eq!(r["torsion"], 1);
        assert_eq!(r["conductor"]["degree"], 4);
        for key in ["delta_factored", "j", "height", "isotrivial", "places", "l_degree", "rank_geom", "certificates"] {
            assert!(r.get(key).is_some(), "{key}");
        }
        for place in r["places"].as_array().unwrap() {
            for key in ["place", "kodaira", "v_delta", "m_geom", "tamagawa", "f"] {
                assert!(place.get(key).is_some(), "{key}");
            }
        }
    }
    let p47 = reports.iter().find(|r| r["prime"] == 47).unwrap();
    assert_eq!(p47["rank_geom"], "not-computed(isotrivial)");
    assert_eq!(p47["isotrivial"], true);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = ffec(&["--paper-curve", "--primes", "2..60", "--format", "json", "--jobs", "1"]);
    let b = ffec(&["--paper-curve", "--primes", "2..60", "--format", "json", "--jobs", "4"]);
    let c = ffec(&["--paper-curve", "--primes", "2..60", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn constant_curve_is_isotrivial() {
    let o = ffec(&["-p", "5", "--a1", "0", "--a2", "0", "--a3", "0", "--a4", "0", "--a6", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["isotrivial"], true);
    assert_eq!(v[0]["rank_geom"], "not-computed(isotrivial)");
    assert!(v[0]["places"].as_array().unwrap().is_empty());
}

#[test]
fn custom_curve_text_report() {
    let o = ffec(&["-p", "7", "--a4", "-t", "--a6", "t^2+1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("p = 7\n"));
    assert!(out.contains("conductor"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["-p", "4", "--paper-curve"][..],
        &["--paper-curve", "--primes", "2..20000"],
        &["--paper-curve", "--primes", "10..2"],
        &["--paper-curve"],
        &["-p", "5", "--a6", "t^^"],
        &["-p", "5"],
        &["-p", "5", "--paper-table"],
        &["--paper-curve", "-p", "5", "--format", "xml"],
        &["--paper-curve", "-p", "5", "--jobs", "0"],
    ] {
        let o = ffec(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

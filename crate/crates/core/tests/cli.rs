use revarith::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("revarith")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn gates_lists_the_catalog() {
    let (code, out, _) = invoke(&["gates"]);
    assert_eq!(code, EXIT_OK);
    for name in ["NOT", "FG", "TOF", "PG", "TR"] {
        assert!(out.contains(name), "{out}");
    }
}

#[test]
fn truth_table_of_feynman_has_four_rows() {
    let (code, out, _) = invoke(&["truth", "FG", "--tsv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 5, "{out}");
}

#[test]
fn unknown_things_are_usage_errors() {
    assert_eq!(invoke(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["truth", "XYZ"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["verify", "--design", "4", "--width", "4"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["verify", "--design", "3", "--width", "13", "--exhaustive"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["compare"]).0, EXIT_USAGE);
}

#[test]
fn verify_reports_vector_count() {
    let (code, out, _) = invoke(&["verify", "--design", "1", "--width", "8", "--exhaustive", "--jobs", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("131072"), "{out}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["compare", "--paper"][..],
        &["compare", "--paper", "--tsv"],
        &["metrics", "--design", "2", "--width", "8"],
        &["decompose", "F"],
        &["verify", "--design", "2", "--width", "12", "--samples", "500", "--seed", "9"],
    ] {
        let first = invoke(args);
        assert_eq!(first.0, EXIT_OK, "{args:?}: {}", first.2);
        assert_eq!(first, invoke(args), "{args:?}");
    }
}

#[test]
fn compare_tsv_has_one_row_per_record() {
    let (code, out, _) = invoke(&["compare", "--paper", "--tsv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().all(|l| l.contains('\t') || l.is_empty()), "{out}");
    assert!(out.lines().filter(|l| !l.is_empty()).count() >= 16, "{out}");
}

#[test]
fn build_sim_and_equiv_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let (d2, d3, r3) = (path("d2.revnet"), path("d3.revnet"), path("r3.revnet"));

    for (design, file) in [("2", &d2), ("3", &d3)] {
        let (code, _, err) = invoke(&["build", "--design", design, "--unit", "full", "--out", file]);
        assert_eq!(code, EXIT_OK, "{err}");
    }
    let (code, _, _) = invoke(&["build", "--design", "3", "--width", "4", "--out", &r3]);
    assert_eq!(code, EXIT_OK);

    // 0101 - 0011 = 0010, no borrow.
    let set = "A0=1,A1=0,A2=1,A3=0,B0=1,B1=1,B2=0,B3=0";
    let (code, out, err) = invoke(&["sim", "--file", &r3, "--set", set, "--mode", "sub"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("S_D1=1") && out.contains("S_D0=0") && out.contains("C_B4=0"), "{out}");

    // Both units add at opposite ctrl values, so raw comparison differs.
    let (code, _, _) = invoke(&["equiv", &d2, &d3]);
    assert_eq!(code, EXIT_FAILURE);
    let (code, _, _) = invoke(&["equiv", &d3, &d3]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = invoke(&["equiv", &d3, &r3]);
    assert_eq!(code, EXIT_USAGE);

    std::fs::write(&d2, "not a netlist\n").unwrap();
    let (code, _, err) = invoke(&["equiv", &d2, &d3]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1"), "{err}");
}

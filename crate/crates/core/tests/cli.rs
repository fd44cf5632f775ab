use wysiwyg::cli::run_captured;

fn run(args: &[&str]) -> (i32, String, String) {
    run_captured(std::iter::once("wysiwyg").chain(args.iter().copied()))
}

#[test]
fn documented_examples() {
    assert_eq!(run(&["coeff", "--mode", "psi", "--elem", "A", "--delta-exact"]).1, "1");
    assert_eq!(run(&["mul", "--g", "A", "--h", "A^-1"]).1, "./.");
    assert_eq!(run(&["coeff", "--mode", "psi", "--elem", "D", "--delta", "2.0"]).1, "0.5");
    assert_eq!(
        run(&["coeff", "--elem", "((.,.),(.,.))/(.,((.,.),.))", "--delta-exact"]).1,
        "(δ^2-3)/(δ^2-2)"
    );
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["coeff", "--elem", "A^x", "--delta", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("position"), "{err}");
    assert_eq!(run(&["coeff", "--elem", "A", "--delta", "2", "--delta-exact"]).0, 1);
    assert_eq!(run(&["coeff", "--elem", "A"]).0, 1);
    let (code, _, err) = run(&["coeff", "--elem", "A^200", "--delta", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("reached 202"), "{err}");
}

#[test]
fn csv_is_stable_across_job_counts() {
    let a = run(&["an-decay", "--delta-exact", "--n-max", "6", "--out", "csv", "--jobs", "1"]);
    let b = run(&["an-decay", "--delta-exact", "--n-max", "6", "--out", "csv", "--jobs", "4"]);
    assert_eq!(a, b);
    let lines: Vec<&str> = a.1.lines().collect();
    assert_eq!(lines[0], "n,mode,exact,numeric,terms,millis");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("1,omega,(δ^2-3)/(δ^2-2),,"));
}

#[test]
fn json_output_parses() {
    let (code, out, _) = run(&["lemma43", "--g", "D", "--h", "B", "--n-max", "4", "--delta", "2", "--out", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert!(v["threshold"].is_u64());
}

#[test]
fn thin_wrapper_over_library() {
    use wysiwyg::thompson::FElement;
    let g: FElement = "A B^2".parse().unwrap();
    let h: FElement = "D".parse().unwrap();
    assert_eq!(run(&["mul", "--g", "A B^2", "--h", "D"]).1, g.multiply(&h).to_string());
    assert_eq!(run(&["inv", "--g", "A B^2"]).1, g.inverse().to_string());
    let e = wysiwyg::wysiwyg::Engine::numeric(2.0);
    let c = e.coeff(wysiwyg::Vacuum::Omega, &g).unwrap();
    assert_eq!(run(&["coeff", "--mode", "omega", "--elem", "A B^2", "--delta", "2"]).1, c.to_string());
}

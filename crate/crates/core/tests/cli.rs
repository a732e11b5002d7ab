use probderange::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use probderange::rational::{format_rational, parse_rational};
use probderange::verify::Record;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["probderange"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_values(out: &str, key: &str) -> Vec<String> {
    out.lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            v[key].as_str().unwrap().to_string()
        })
        .collect()
}

#[test]
fn table_degenerate_derangements() {
    let (code, out, _) = call(&["table", "--family", "d_prob", "--dist", "constant:1", "--lambda", "1/3", "--x", "0", "--n", "4"]);
    assert_eq!(code, EXIT_PASS);
    let values = json_values(&out, "value");
    assert_eq!(values.len(), 5);
    assert_eq!(values[2], "4/3");
}

#[test]
fn table_r_derangement_vanishes_below_r() {
    let (code, out, _) = call(&["table", "--family", "d_prob_r", "--r", "2", "--dist", "gamma:1,1", "--lambda", "1/2", "--n", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(json_values(&out, "value"), vec!["0", "0"]);
}

#[test]
fn table_euler() {
    let (code, out, _) = call(&["table", "--family", "euler_prob", "--dist", "constant:1", "--lambda", "1", "--n", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(json_values(&out, "value")[1], "-1/2");
}

#[test]
fn table_missing_parameters_are_usage_errors() {
    let (code, _, err) = call(&["table", "--family", "d_prob_r", "--lambda", "1", "--n", "3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--r"));
    let (code, _, _) = call(&["table", "--family", "d_deg", "--n", "3"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = call(&["table", "--family", "nope", "--lambda", "1", "--n", "3"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = call(&["table", "--family", "d_prob", "--dist", "cauchy:1", "--lambda", "1", "--n", "3"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn series_examples() {
    let (code, out, _) = call(&["series", "--gf", "d_prob", "--dist", "constant:1", "--lambda", "1", "--x", "0", "--order", "4"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(json_values(&out, "value"), vec!["1", "0", "1", "0", "1"]);

    let (_, out, _) = call(&["series", "--gf", "fubini_prob", "--x", "0", "--lambda", "1/2", "--dist", "poisson:1", "--order", "3"]);
    assert_eq!(json_values(&out, "value"), vec!["1", "0", "0", "0"]);

    let (_, out, _) = call(&["series", "--gf", "euler_prob", "--dist", "constant:1", "--lambda", "1", "--order", "2"]);
    assert_eq!(json_values(&out, "value"), vec!["1", "-1/2", "1/4"]);
}

#[test]
fn series_rejects_zero_lambda() {
    let (code, _, err) = call(&["series", "--gf", "d_prob", "--lambda", "0", "--order", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("table"));
}

#[test]
fn csv_table_has_header() {
    let (_, out, _) = call(&["table", "--family", "d", "--x", "1/2", "--n", "2", "--format", "csv"]);
    assert_eq!(out, "family,n,value\nd,0,1\nd,1,1/2\nd,2,5/4\n");
}

#[test]
fn verify_precondition_is_configuration_error() {
    let (code, _, err) = call(&["verify", "--theorem", "2.13", "--dist", "bernoulli:1/2", "--nmax", "3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("Gamma(1,1)"));
}

#[test]
fn verify_unknown_theorem() {
    let (code, _, _) = call(&["verify", "--theorem", "2.14"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn verify_full_suite_passes_and_is_deterministic() {
    let args = ["verify", "--theorem", "all", "--nmax", "10", "--samples", "3", "--seed", "42"];
    let (code, out, err) = call(&args);
    assert_eq!(code, EXIT_PASS, "{err}");
    let theorems: std::collections::BTreeSet<String> = json_values(&out, "theorem").into_iter().collect();
    assert_eq!(theorems.len(), 13);
    assert!(err.contains("13/13 theorems pass"));
    let (_, sequential, _) = call(&[&args[..], &["--sequential"]].concat());
    assert_eq!(out, sequential);

    // every rational field parses back to the same value
    for line in out.lines() {
        let rec: Record = serde_json::from_str(line).unwrap();
        for field in [&rec.lambda, &rec.x] {
            assert_eq!(&format_rational(&parse_rational(field).unwrap()), field);
        }
        if rec.mode == probderange::verify::Mode::Exact {
            for field in [&rec.lhs, &rec.rhs, &rec.residual] {
                assert_eq!(&format_rational(&parse_rational(field).unwrap()), field);
            }
        }
        let back = serde_json::to_string(&rec).unwrap();
        assert_eq!(back, line);
    }
}

#[test]
fn verify_abel_records() {
    let (code, out, _) = call(&["verify", "--theorem", "2.6", "--nmax", "4", "--samples", "1"]);
    assert_eq!(code, EXIT_PASS);
    let abel: Vec<Record> = out
        .lines()
        .map(|l| serde_json::from_str::<Record>(l).unwrap())
        .filter(|r| r.form == "abel")
        .collect();
    assert_eq!(abel.len(), 5);
    for r in abel {
        assert!(r.pass);
        assert_eq!(r.tolerance, "1.00e-6");
        assert!(r.residual.parse::<f64>().unwrap() <= 1e-6);
    }
}

#[test]
fn verify_csv_and_exhaustive() {
    let (code, out, _) = call(&["verify", "--theorem", "2.10", "--exhaustive", "--nmax", "2", "--format", "csv"]);
    assert_eq!(code, EXIT_PASS);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), Record::HEADER.join(","));
    // 9 grid points, 3 values of n, 2 forms
    assert_eq!(lines.count(), 9 * 3 * 2);
}

#[test]
fn exit_code_constants() {
    assert_eq!((EXIT_PASS, EXIT_FAIL, EXIT_USAGE), (0, 1, 2));
}

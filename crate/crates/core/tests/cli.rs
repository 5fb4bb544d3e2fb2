mod common;

use std::io::Write;
use std::process::{Command, Output};

use combined_matrix::harness::{PropertyReport, Verdict};
use combined_matrix::Matrix;
use common::*;

fn combmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combmat"))
        .args(args)
        .output()
        .expect("combmat runs")
}

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_matrix(body: &str) -> tempfile_path::TempPath {
    tempfile_path::TempPath::new(body)
}

mod tempfile_path {
    use super::*;
    use std::path::PathBuf;
    use std::sync::atomic::{AtomicUsize, Ordering};

    static NEXT: AtomicUsize = AtomicUsize::new(0);

    pub struct TempPath(pub PathBuf);

    impl TempPath {
        pub fn new(body: &str) -> Self {
            let n = NEXT.fetch_add(1, Ordering::Relaxed);
            let path = std::env::temp_dir().join(format!("combmat-cli-{}-{n}.mat", std::process::id()));
            std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
            TempPath(path)
        }

        pub fn as_str(&self) -> &str {
            self.0.to_str().unwrap()
        }
    }

    impl Drop for TempPath {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }
}

#[test]
fn combined_output_reparses_to_oracle_value() {
    let out = combmat(&["combined", &data("orthogonal3.mat")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# det A = 1\n"));
    assert!(text.contains("# C(A) = 1/9·[[4,4,1],[1,4,4],[4,1,4]]\n"));
    assert_eq!(Matrix::parse(&text).unwrap(), orthogonal3_combined());
}

#[test]
fn combined_accepts_json_input() {
    let f = temp_matrix(&Matrix::from_ints(&[[1, 2], [3, 4]]).to_json());
    let out = combmat(&["combined", f.as_str()]);
    assert!(out.status.success());
    assert_eq!(
        Matrix::parse(&stdout(&out)).unwrap(),
        oracle_combined(&Matrix::from_ints(&[[1, 2], [3, 4]]))
    );
}

#[test]
fn singular_input_is_a_runtime_failure() {
    let out = combmat(&["combined", &data("singular2.mat")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("singular"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let f = temp_matrix("# header\n2 2\n1 2\n3 x\n");
    let out = combmat(&["combined", f.as_str()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let f = temp_matrix("2 2\n1 2/0\n3 4\n");
    let out = combmat(&["combined", f.as_str()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = combmat(&["combined", "/nonexistent/combmat.mat"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reverse_rotates() {
    let out = combmat(&["reverse", &data("gl2.mat")]);
    assert!(out.status.success());
    assert_eq!(Matrix::parse(&stdout(&out)).unwrap(), Matrix::from_ints(&[[4, 3], [2, 1]]));
}

#[test]
fn charpoly_reports_quotient_and_tag() {
    let out = combmat(&["charpoly", &data("orthogonal3.mat")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("quotient: λ^2 - (1/3)λ + 1/9"), "{text}");
    assert!(text.contains("rational roots: 1\n"), "{text}");
    assert!(text.contains("galois: order_2"), "{text}");
}

#[test]
fn eigen2_reports_closed_forms() {
    let out = combmat(&["eigen2", &data("gl2.mat")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("eigenvalues: 1, -5"), "{text}");
    assert!(text.contains("galois: identity"), "{text}");
    assert!(text.contains("P^-1 = 1/2·[[1,1],[-1,1]]"), "{text}");
}

#[test]
fn eigen2_rejects_other_sizes() {
    let out = combmat(&["eigen2", &data("orthogonal3.mat")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sample_is_deterministic_and_certified() {
    let args = ["sample", "--group", "orthogonal", "--dim", "3", "--seed", "11", "--det-sign", "-1"];
    let (a, b) = (combmat(&args), combmat(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let q = Matrix::parse(&stdout(&a)).unwrap();
    assert_eq!(dot_matmul(&q, &q.transpose()), Matrix::identity(3));
    assert_eq!(laplace_det(&q), combined_matrix::Rational::from_integer(-1));
}

#[test]
fn sample_json_round_trips() {
    let out = combmat(&["sample", "--group", "special_linear_integer", "--dim", "3", "--seed", "2", "--json"]);
    assert!(out.status.success());
    let m = Matrix::parse_json(&stdout(&out)).unwrap();
    assert!(m.is_integral());
    assert!(laplace_det(&m).is_one());
}

#[test]
fn sample_rejects_unknown_group() {
    let out = combmat(&["sample", "--group", "symplectic", "--dim", "2", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_single_suite_text() {
    let out = combmat(&["check", "--suite", "cofactor_form", "--trials", "5", "--dims", "2..3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("cofactor_form"));
    assert!(text.contains("1 suites: 1 pass, 0 gap_documented, 0 fail"));
}

#[test]
fn check_json_is_parseable() {
    let out = combmat(&["check", "--suite", "all", "--trials", "3", "--json"]);
    assert!(out.status.success());
    let reports: Vec<PropertyReport> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.len(), combined_matrix::harness::suite_names().len());
    assert!(reports.iter().all(|r| r.verdict != Verdict::Fail));
}

#[test]
fn unknown_suite_lists_registered_names() {
    let out = combmat(&["check", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cofactor_form"));
}

#[test]
fn bad_dimension_range_is_a_usage_error() {
    let out = combmat(&["check", "--dims", "5..2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suites_lists_registry() {
    let out = combmat(&["suites"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), combined_matrix::harness::suite_names().len());
}

//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use combined_matrix::harness::{run_named, PropertyReport, RunConfig, Verdict};
use combined_matrix::{charpoly, sample, Group, Matrix, SampleSpec};
use common::*;

type Outcome = Result<String, String>;

fn combmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combmat"))
        .args(args)
        .output()
        .expect("combmat runs")
}

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn config(trials: u64, dims: std::ops::RangeInclusive<usize>) -> RunConfig {
    RunConfig { trials, dims, ..RunConfig::default() }
}

fn run_suites(names: &[&str], cfg: &RunConfig) -> Result<Vec<PropertyReport>, String> {
    let mut out = Vec::new();
    for name in names {
        let r = run_named(name, cfg).map_err(|e| format!("{name}: {e}"))?;
        if r.verdict != Verdict::Pass {
            return Err(r.summary());
        }
        out.push(r);
    }
    Ok(out)
}

fn orthogonal_example() -> Outcome {
    let start = Instant::now();
    let out = combmat(&["combined", &data("orthogonal3.mat")]);
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let expected = "1/9·[[4,4,1],[1,4,4],[4,1,4]]";
    if !out.status.success() {
        return Err(format!("exit {:?}", out.status.code()));
    }
    if !stdout.lines().any(|l| l == format!("# C(A) = {expected}")) {
        return Err(format!("output did not contain {expected}:\n{stdout}"));
    }
    let parsed = Matrix::parse(&stdout).map_err(|e| e.to_string())?;
    if parsed != orthogonal3_combined() {
        return Err(format!("matrix body {} differs", parsed.to_compact()));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{expected} in {} ms", elapsed.as_millis()))
}

fn nonsingular_suite() -> Outcome {
    let start = Instant::now();
    let names = ["cofactor_form", "trace_form", "fixed_vector", "galois_bound", "reversing_commute"];
    run_suites(&names, &config(500, 2..=5))?;
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("5 suites x 500 trials x n=2..5 in {:.1} s", elapsed.as_secs_f64()))
}

fn triangular_orthogonal_suite() -> Outcome {
    run_suites(&["triangular_identity", "triangular_morphism"], &config(500, 1..=6))?;
    run_suites(&["orthogonal_shortcut"], &config(200, 2..=5))?;
    Ok("500 trials per n=1..6 (upper, lower, diagonal); 200 orthogonal per n=2..5, det ±1".into())
}

fn gl2_suite() -> Outcome {
    let names = ["gl2_closed_forms", "gl2_galois_identity", "diagonalization_2x2", "matrix_function_2x2"];
    run_suites(&names, &config(1000, 2..=2))?;
    Ok("4 suites x 1000 trials".into())
}

fn sl2_suite() -> Outcome {
    run_suites(&["sl2_closed_forms"], &config(1000, 2..=2))?;
    Ok("1000 trials, det +1 and -1 each".into())
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        for seed in 0..200 {
            let a = sample(&SampleSpec::new(Group::GeneralLinear, n, 1000 * n as u64 + seed))
                .map_err(|e| e.to_string())?;
            let fl = charpoly(&a).map_err(|e| e.to_string())?;
            if fl != laplace_charpoly(&a) {
                return Err(format!("charpoly mismatch on {}", a.to_compact()));
            }
            let adj = a.inverse_adjugate().map_err(|e| e.to_string())?;
            let elim = a.inverse_elimination().map_err(|e| e.to_string())?;
            if adj != elim {
                return Err(format!("inverse mismatch on {}", a.to_compact()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} matrices, n=1..4"))
}

fn gap_documentation() -> Outcome {
    let out = combmat(&["check", "--suite", "hadamard_group_claim", "--json"]);
    if !out.status.success() {
        return Err(format!("exit {:?}", out.status.code()));
    }
    let reports: Vec<PropertyReport> =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let r = reports.first().ok_or("no report")?;
    if r.verdict != Verdict::GapDocumented {
        return Err(format!("verdict {}", r.verdict));
    }
    let cex = r.counterexample.as_ref().ok_or("no counterexample")?;
    let [a, b] = cex.inputs.as_slice() else {
        return Err("expected two inputs".into());
    };
    if laplace_det(a).is_zero() || laplace_det(b).is_zero() {
        return Err("counterexample input is singular".into());
    }
    if !laplace_det(&a.hadamard(b).map_err(|e| e.to_string())?).is_zero() {
        return Err("Hadamard product is not singular".into());
    }
    Ok(format!("n={}: A={} B={} det(A∘B)=0", cex.dim, a.to_compact(), b.to_compact()))
}

fn strip_timing(bytes: &[u8]) -> Result<String, String> {
    let mut reports: Vec<serde_json::Value> =
        serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    for r in &mut reports {
        r.as_object_mut().ok_or("report is not an object")?.remove("millis");
    }
    serde_json::to_string(&reports).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let args = ["check", "--suite", "all", "--seed", "7", "--json"];
    let (a, b) = (combmat(&args), combmat(&args));
    if !a.status.success() || !b.status.success() {
        return Err(format!("exit {:?} / {:?}", a.status.code(), b.status.code()));
    }
    let (sa, sb) = (strip_timing(&a.stdout)?, strip_timing(&b.stdout)?);
    if sa != sb {
        return Err("reports differ".into());
    }
    Ok(format!("{} bytes identical modulo millis", sa.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("3x3 orthogonal example", orthogonal_example),
        ("nonsingular identities, n=2..5", nonsingular_suite),
        ("triangular and orthogonal identities", triangular_orthogonal_suite),
        ("GL2 closed forms", gl2_suite),
        ("det ±1 closed forms", sl2_suite),
        ("oracle equivalence", oracle_equivalence),
        ("Hadamard gap documentation", gap_documentation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

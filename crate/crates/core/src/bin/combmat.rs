use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use combined_matrix::harness::{self, DimRange, PropertyReport, RunConfig, Verdict};
use combined_matrix::sampler::DEFAULT_BOUND;
use combined_matrix::spectra::{charpoly, deflate_at_one, galois_tag, rational_roots};
use combined_matrix::{combined, combined2_closed_form, DetSign, Error, Group, Matrix, SampleSpec};

#[derive(Parser)]
#[command(name = "combmat", version, about = "Exact combined matrices C(A) = A ∘ A^-T over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print C(A) and det A.
    Combined { file: PathBuf },
    /// Print the reversed (180° rotated) matrix R(A).
    Reverse { file: PathBuf },
    /// Characteristic polynomial of C(A), its quotient by (λ-1), rational roots and Galois tag.
    Charpoly {
        file: PathBuf,
        /// Analyse the matrix in the file itself instead of its combined matrix.
        #[arg(long)]
        raw: bool,
    },
    /// Closed-form spectral report for a nonsingular 2x2 matrix.
    Eigen2 { file: PathBuf },
    /// Draw a seeded random element of a matrix group.
    Sample {
        #[arg(long)]
        group: Group,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        /// Elementary factors for special_linear_integer (default 2·dim).
        #[arg(long)]
        steps: Option<usize>,
        /// Determinant sign for special_linear_integer and orthogonal.
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_sign)]
        det_sign: DetSign,
        #[arg(long)]
        json: bool,
    },
    /// Run property suites and report one line (or JSON object) per suite.
    Check {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Trials per dimension.
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value = "2..5")]
        dims: DimRange,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// List the registered property suites.
    Suites,
}

fn parse_sign(s: &str) -> Result<DetSign, String> {
    match s {
        "1" | "+1" | "+" => Ok(DetSign::Plus),
        "-1" | "-" | "\u{2212}1" => Ok(DetSign::Minus),
        _ => Err(format!("expected 1 or -1, got {s:?}")),
    }
}

/// Errors mapped onto exit codes: usage and input problems are 2, everything
/// else (singular input, failed suites) is 1.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidSpec(_) | Error::UnknownSuite { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Matrix::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_charpoly(a: &Matrix, raw: bool) -> Result<String, Failure> {
    let m = if raw { a.clone() } else { combined(a)?.combined };
    let p = charpoly(&m)?;
    let mut out = format!("# {}\n", if raw { "input matrix" } else { "C(A)" });
    out += &format!("charpoly: {}\n", p.render());
    let tag = match deflate_at_one(&p) {
        Ok(q) => {
            out += &format!("quotient: {}\n", q.render());
            galois_tag(&q)
        }
        Err(e) => {
            out += &format!("quotient: none ({e})\n");
            combined_matrix::GaloisTag::Undetermined
        }
    };
    let roots: Vec<String> = rational_roots(&p)?
        .iter()
        .map(|(r, m)| if *m == 1 { r.to_string() } else { format!("{r} (x{m})") })
        .collect();
    out += &format!("rational roots: {}\n", if roots.is_empty() { "none".into() } else { roots.join(", ") });
    out += &format!("galois: {tag}\n");
    Ok(out)
}

fn cmd_eigen2(a: &Matrix) -> Result<String, Failure> {
    let cf = combined2_closed_form(a)?;
    let c = combined(a)?;
    let (l1, l2) = &cf.eigenvalues;
    let mut out = format!("# det A = {}\n", c.det_source);
    out += &format!("C(A) = {}\n", c.combined.to_factored());
    out += &format!("charpoly: {}\n", cf.report.charpoly.render());
    out += &format!("trace: {}\n", cf.trace);
    out += &format!("det C(A): {}\n", cf.det_combined);
    out += &format!("eigenvalues: {l1}, {l2}\n");
    out += &format!("eigenvectors: (1,1) for {l1}; (1,-1) for {l2}\n");
    out += &format!("galois: {}\n", cf.report.galois_tag);
    out += &format!("P = {}\n", cf.p.to_factored());
    out += &format!("D = {}\n", cf.d.to_compact());
    out += &format!("P^-1 = {}\n", cf.p_inv.to_factored());
    Ok(out)
}

fn render_reports(reports: &[PropertyReport], json: bool) -> String {
    if json {
        let lines: Vec<String> = reports
            .iter()
            .map(|r| serde_json::to_string(r).expect("report serializes"))
            .collect();
        return format!("[\n{}\n]\n", lines.join(",\n"));
    }
    let mut out: String = reports.iter().map(|r| r.summary() + "\n").collect();
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    out += &format!(
        "{} suites: {} pass, {} gap_documented, {} fail\n",
        reports.len(),
        count(Verdict::Pass),
        count(Verdict::GapDocumented),
        count(Verdict::Fail)
    );
    out
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let out = match cli.command {
        Command::Combined { file } => combined(&read_matrix(&file)?)?.to_string(),
        Command::Reverse { file } => {
            format!("# R(A)\n{}", read_matrix(&file)?.reversing()?.to_text())
        }
        Command::Charpoly { file, raw } => cmd_charpoly(&read_matrix(&file)?, raw)?,
        Command::Eigen2 { file } => cmd_eigen2(&read_matrix(&file)?)?,
        Command::Sample {
            group,
            dim,
            seed,
            bound,
            steps,
            det_sign,
            json,
        } => {
            let mut spec = SampleSpec::new(group, dim, seed)
                .with_bound(bound)
                .with_det_sign(det_sign);
            if let Some(k) = steps {
                spec = spec.with_steps(k);
            }
            let m = combined_matrix::sample(&spec)?;
            if json {
                m.to_json() + "\n"
            } else {
                m.to_text()
            }
        }
        Command::Check {
            suite,
            trials,
            dims,
            seed,
            bound,
            steps,
            json,
        } => {
            let cfg = RunConfig {
                trials,
                dims: dims.0,
                seed,
                bound,
                steps,
            };
            let reports = if suite == "all" {
                harness::run_all(&cfg)?
            } else {
                vec![harness::run_named(&suite, &cfg)?]
            };
            let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
            return Ok((render_reports(&reports, json), !failed));
        }
        Command::Suites => harness::registry()
            .iter()
            .map(|s| format!("{:<28} {}\n", s.name, s.claim))
            .collect(),
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

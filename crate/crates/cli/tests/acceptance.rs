//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Run with `cargo test -p jacobi-flow-cli --test acceptance`.

use std::cell::OnceCell;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use jacobi_flow::{FlowParams, Result, VerifyReport};
use jacobi_flow_cli::suite::{
    charlier_identities, exact_combinatorics, generating_functions, guarded, integral_vs_series,
    kappa_zero_reduction, map_inversion, moment_sanity, residue_oracle, reversion_oracle,
    INTEGRAL_POINTS,
};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> VerifyReport + 'a>);

const KAPPAS: [f64; 3] = [0.3, 0.5, 0.7];
const TIMES: [f64; 3] = [0.5, 1.0, 2.5];

fn grid() -> Vec<FlowParams> {
    KAPPAS
        .iter()
        .flat_map(|&k| {
            TIMES
                .iter()
                .map(move |&t| FlowParams::new(k, t).expect("grid point is valid"))
        })
        .collect()
}

fn collect(name: &str, runs: impl IntoIterator<Item = Result<VerifyReport>>) -> VerifyReport {
    let mut r = VerifyReport::new();
    for run in runs {
        r.extend(guarded(name, || run));
    }
    r
}

fn only(report: &VerifyReport, names: &[&str]) -> VerifyReport {
    VerifyReport {
        entries: report
            .entries
            .iter()
            .filter(|e| names.contains(&e.name.as_str()))
            .cloned()
            .collect(),
    }
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .expect("sweep directory exists")
        .map(|e| {
            let e = e.expect("directory entry");
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).expect("sweep file is readable"),
            )
        })
        .collect();
    files.sort();
    files
}

/// Two sweeps with different thread counts must produce identical files.
fn sweep_determinism() -> VerifyReport {
    let mut r = VerifyReport::new();
    let root = tempfile::tempdir().expect("temporary directory");
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let dir = root.path().join(format!("jobs{jobs}"));
        let status = Command::new(env!("CARGO_BIN_EXE_jacobi-flow"))
            .args([
                "sweep",
                "--kappa",
                "0,0.3,-0.5",
                "--t",
                "0.5,1,2.5",
                "--n",
                "16",
                "--jobs",
                jobs,
            ])
            .arg("--out")
            .arg(&dir)
            .output()
            .expect("jacobi-flow binary runs");
        r.push(
            jacobi_flow::CheckEntry::new(
                "sweep_exit_status",
                status.status.code().unwrap_or(-1) as f64,
                0.0,
            )
            .with("jobs", jobs),
        );
        outputs.push(read_dir_sorted(&dir));
    }
    let differing = if outputs[0].len() != outputs[1].len() {
        outputs[0].len().max(outputs[1].len())
    } else {
        outputs[0]
            .iter()
            .zip(&outputs[1])
            .filter(|(a, b)| a != b)
            .count()
    };
    r.push(
        jacobi_flow::CheckEntry::new("sweep_byte_identical", differing as f64, 0.0)
            .with("files", outputs[0].len()),
    );
    r
}

fn main() -> ExitCode {
    let start = Instant::now();
    // criteria 4 and 9 read different entries of the same integral runs
    let integral = OnceCell::new();
    let integral_runs = || {
        integral.get_or_init(|| {
            collect(
                "integral_vs_series",
                grid()
                    .iter()
                    .map(|p| integral_vs_series(p, &INTEGRAL_POINTS)),
            )
        })
    };

    let criteria: Vec<Criterion> = vec![
        (
            "kappa = 0 reduction to the Herglotz coefficients",
            Box::new(|| {
                collect(
                    "kappa_zero_reduction",
                    TIMES.iter().map(|&t| kappa_zero_reduction(t, 16, 1e-10)),
                )
            }),
        ),
        (
            "closed form matches Newton reversion of Phi",
            Box::new(|| {
                collect(
                    "reversion_oracle",
                    grid().iter().map(|p| reversion_oracle(p, 12, 1e-9)),
                )
            }),
        ),
        (
            "contour residues match exact P_k^(m)",
            Box::new(|| {
                collect(
                    "residue_oracle",
                    [0.3, 0.6, 0.9]
                        .iter()
                        .map(|&k| residue_oracle(&FlowParams::new(k, 1.0)?, 12, 8, 1e-10)),
                )
            }),
        ),
        (
            "contour integral matches the M series; both forms agree",
            Box::new(|| {
                only(
                    integral_runs(),
                    &["integral_vs_series", "proposition_vs_corollary"],
                )
            }),
        ),
        (
            "generating-function identities",
            Box::new(|| {
                let mut r = collect(
                    "generating_functions",
                    TIMES.iter().map(|&t| generating_functions(t)),
                );
                r.extend(guarded("charlier", || charlier_identities(15)));
                r
            }),
        ),
        (
            "exact binomial transform and inverse weights",
            Box::new(|| guarded("combinatorics", || exact_combinatorics(30))),
        ),
        (
            "xi inverts K on |y| <= 0.9",
            Box::new(|| {
                collect(
                    "map_inversion",
                    TIMES.iter().map(|&t| map_inversion(t, 1e-11)),
                )
            }),
        ),
        (
            "moment expansion at time zero",
            Box::new(|| {
                collect(
                    "moment_expansion",
                    [0.0, 0.3, 0.5, 0.7, -0.4]
                        .iter()
                        .map(|&k| moment_sanity(&FlowParams::new(k, 1.0)?, 16)),
                )
            }),
        ),
        (
            "kernel denominator stays away from zero on contours",
            Box::new(|| only(integral_runs(), &["nonvanishing_denominator"])),
        ),
        (
            "sweep output independent of thread count",
            Box::new(sweep_determinism),
        ),
    ];

    let mut failed = 0;
    for (idx, (title, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let report = run();
        let pass = report.pass() && !report.entries.is_empty();
        println!(
            "criterion {}: {} {title} ({} checks, worst residual/tol {:.3e}, {:.2?})",
            idx + 1,
            if pass { "PASS" } else { "FAIL" },
            report.entries.len(),
            report.worst_ratio(),
            t0.elapsed()
        );
        if !pass {
            failed += 1;
            for e in report.failures() {
                println!("    {e}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

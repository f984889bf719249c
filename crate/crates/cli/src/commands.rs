//! The subcommands, as functions from parsed arguments to rendered output.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;

use jacobi_flow::contour::{m_integral, m_integral_on, IntegralForm};
use jacobi_flow::flow::CoefficientTable;
use jacobi_flow::maps::{DiscPoint, HerglotzK};
use jacobi_flow::powerseries::MAX_ORDER;
use jacobi_flow::{rel_err, FlowParams, VerifyReport};

use crate::error::{CliError, CliResult};
use crate::suite::{self, Level};
use crate::table::{fmt_float, Cell, Format, Table, TableRow};

pub const COEFF_COLUMNS: [&str; 5] = ["a_n", "b_n", "S_n", "phi_inv", "M"];

fn check_order(n_max: usize) -> CliResult<()> {
    if !(1..=MAX_ORDER).contains(&n_max) {
        return Err(CliError::Usage(format!(
            "n must be in 1..={MAX_ORDER}, got {n_max}"
        )));
    }
    Ok(())
}

fn params_of(p: &FlowParams) -> Vec<(String, f64)> {
    vec![("kappa".into(), p.kappa()), ("t".into(), p.t())]
}

/// Rows `n = 1..=n_max` of `a_n`, `b_n`, `S_n`, the `Phi^{-1}` coefficient and
/// the `M` coefficient.
pub fn cmd_coeffs(p: &FlowParams, n_max: usize) -> CliResult<Table> {
    check_order(n_max)?;
    // M needs at least order 2; the extra row is simply not printed
    let table = CoefficientTable::new(p, n_max.max(2))?;
    let m = table.m_series()?;
    let mut out = Table::new(
        params_of(p),
        COEFF_COLUMNS.iter().map(|s| s.to_string()).collect(),
    );
    for n in 1..=n_max {
        out.push(TableRow {
            n,
            values: vec![
                Cell::Real(table.a(n)),
                Cell::Real(table.b(n)),
                Cell::Real(table.s(n)),
                Cell::Real(table.phi_inv(n)),
                Cell::Real(m.derivative.coeff(n).re),
            ],
        })?;
    }
    Ok(out)
}

pub fn cmd_verify(p: &FlowParams, level: Level) -> VerifyReport {
    suite::verify(p, level)
}

/// `M(z)` from the integral representation, with the contour radius, the
/// number of quadrature samples and the residual between the two forms.
///
/// At `kappa = 0` the closed form is used and radius, samples and residual
/// are reported as zero.
pub fn cmd_integral(p: &FlowParams, z: Complex64, form: IntegralForm) -> CliResult<Table> {
    let zp = DiscPoint::new(z)?;
    let main = m_integral(p, zp, form)?;
    let (radius, forms_residual) = match main.contour {
        Some(c) => {
            let other = match form {
                IntegralForm::Corollary => IntegralForm::Proposition,
                IntegralForm::Proposition => IntegralForm::Corollary,
            };
            let herglotz = HerglotzK::new(p.t())?;
            let alt = m_integral_on(p, zp, other, &c, &herglotz)?;
            (c.radius, rel_err(alt.value, main.value))
        }
        None => (0.0, 0.0),
    };
    let mut out = Table::new(
        params_of(p),
        ["z", "M", "radius", "samples", "forms_residual"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    out.push(TableRow {
        n: 0,
        values: vec![
            Cell::Complex(z),
            Cell::Complex(main.value),
            Cell::Real(radius),
            Cell::Real(main.samples as f64),
            Cell::Real(forms_residual),
        ],
    })?;
    Ok(out)
}

/// One grid point of a sweep, in manifest order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub kappa: f64,
    pub t: f64,
}

/// The `kappa`-major grid with repeated points dropped; returns the grid and
/// the dropped points.
pub fn sweep_grid(kappas: &[f64], ts: &[f64]) -> (Vec<SweepPoint>, Vec<SweepPoint>) {
    let mut seen = HashSet::new();
    let mut grid = Vec::new();
    let mut dups = Vec::new();
    for &kappa in kappas {
        for &t in ts {
            let pt = SweepPoint { kappa, t };
            // -0.0 and 0.0 describe the same point
            if seen.insert(((kappa + 0.0).to_bits(), (t + 0.0).to_bits())) {
                grid.push(pt);
            } else {
                dups.push(pt);
            }
        }
    }
    (grid, dups)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub manifest: PathBuf,
    pub tables: Vec<PathBuf>,
    pub duplicates: Vec<SweepPoint>,
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// One coefficient table per grid point plus `manifest.csv`, all under `out_dir`.
///
/// Grid points are computed on a pool of `jobs` threads (0 picks the rayon
/// default); files are written afterwards in manifest order, so the output
/// does not depend on the degree of parallelism.
pub fn cmd_sweep(
    kappas: &[f64],
    ts: &[f64],
    n_max: usize,
    format: Format,
    out_dir: &Path,
    jobs: usize,
) -> CliResult<SweepOutcome> {
    if kappas.is_empty() || ts.is_empty() {
        return Err(CliError::Usage(
            "sweep needs at least one kappa and one t".into(),
        ));
    }
    check_order(n_max)?;
    let (grid, duplicates) = sweep_grid(kappas, ts);
    let params = grid
        .iter()
        .map(|pt| FlowParams::new(pt.kappa, pt.t))
        .collect::<jacobi_flow::Result<Vec<_>>>()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} worker threads: {e}")))?;
    let tables: Vec<CliResult<Table>> =
        pool.install(|| params.par_iter().map(|p| cmd_coeffs(p, n_max)).collect());

    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut manifest = String::from("index,kappa,t,n_max,file\n");
    let mut paths = Vec::with_capacity(tables.len());
    for (idx, (pt, table)) in grid.iter().zip(tables).enumerate() {
        let name = format!("table_{idx:03}.{}", format.extension());
        let path = out_dir.join(&name);
        write_file(&path, &table?.render(format))?;
        manifest.push_str(&format!(
            "{idx},{},{},{n_max},{name}\n",
            fmt_float(pt.kappa),
            fmt_float(pt.t)
        ));
        paths.push(path);
    }
    let manifest_path = out_dir.join("manifest.csv");
    write_file(&manifest_path, &manifest)?;
    Ok(SweepOutcome {
        manifest: manifest_path,
        tables: paths,
        duplicates,
    })
}

/// Writes `text` to `out`, or to stdout when `out` is `None`.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_table_has_requested_rows() {
        let p = FlowParams::new(0.5, 1.0).unwrap();
        let t = cmd_coeffs(&p, 8).unwrap();
        assert_eq!(t.rows().len(), 8);
        assert_eq!(t.rows()[0].n, 1);
        assert!(cmd_coeffs(&p, 0).is_err());
        assert!(cmd_coeffs(&p, MAX_ORDER + 1).is_err());
        assert_eq!(cmd_coeffs(&p, 1).unwrap().rows().len(), 1);
    }

    #[test]
    fn kappa_zero_columns_collapse_to_laguerre_sums() {
        use jacobi_flow::specfun::{binomial, laguerre_real};
        let t = 1.0;
        let p = FlowParams::new(0.0, t).unwrap();
        let table = cmd_coeffs(&p, 4).unwrap();
        let herglotz = |k: usize| {
            let kf = k as f64;
            2.0 * (-kf * t).exp() * laguerre_real(k as u32 - 1, 1.0, 2.0 * kf * t)
        };
        for row in table.rows() {
            let n = row.n;
            let (Cell::Real(b), Cell::Real(s)) = (row.values[1], row.values[2]) else {
                panic!()
            };
            let want_b: f64 = (1..=n)
                .map(|k| {
                    binomial(2 * n as u64, (n - k) as i64)
                        .to_string()
                        .parse::<f64>()
                        .unwrap()
                        * herglotz(k)
                })
                .sum();
            assert!(((b - want_b) / want_b).abs() < 1e-12, "b, n={n}");
            assert!(((s - herglotz(n)) / herglotz(n)).abs() < 1e-12, "S, n={n}");
        }
    }

    #[test]
    fn grid_drops_duplicates_in_order() {
        let (grid, dups) = sweep_grid(&[0.5, 0.3, 0.5], &[1.0, 2.0]);
        assert_eq!(grid.len(), 4);
        assert_eq!(dups.len(), 2);
        assert_eq!(grid[1], SweepPoint { kappa: 0.5, t: 2.0 });
        assert_eq!(sweep_grid(&[0.0, -0.0], &[1.0]).0.len(), 1);
    }

    #[test]
    fn integral_at_origin_is_zero() {
        let p = FlowParams::new(0.5, 1.0).unwrap();
        let t = cmd_integral(&p, Complex64::new(0.0, 0.0), IntegralForm::Corollary).unwrap();
        let Cell::Complex(m) = t.rows()[0].values[1] else {
            panic!()
        };
        assert!(m.norm() < 1e-14);
    }
}

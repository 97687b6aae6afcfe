use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use super::{svg, CliError, Command, Family, RunConfig};
use crate::eigenbox::{
    degenerate_modes, even_mode, odd_mode, operator_over_eigenvalue, EigenMode, Parity,
};
use crate::operators::{ComplexSamples, Grid1D, RieszOperator};
use crate::paraxial::{
    norm_large_z, norm_small_z, norm_z, project_initial, solve_field, SlabConfig,
};
use crate::special::{mittag_leffler, sin_pi, MLParams};
use crate::verify::{render_summary, run_all};

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Shortest decimal that parses back to the same `f64`.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
    w.write_record(header).map_err(|e| io_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

/// `r_j/L` on the exact dyadic lattice.
fn unit_point(j: usize, n: usize) -> f64 {
    2.0 * j as f64 / n as f64 - 1.0
}

/// Prints one CSV row for `E_{γ,δ}(z)`.
pub fn emit_mlf(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let Command::Mlf { gamma, delta, z } = cfg.command else {
        return Err(CliError::Usage("not an mlf run".into()));
    };
    let p = MLParams::new(gamma, delta)?;
    let r = mittag_leffler(p, z)?;
    let regime = format!("{:?}", r.regime).to_lowercase();
    writeln!(
        out,
        "gamma,delta,z_re,z_im,re,im,est_abs_error,regime\n{},{},{},{},{},{},{},{}",
        num(gamma),
        num(delta),
        num(z.re),
        num(z.im),
        num(r.value.re),
        num(r.value.im),
        num(r.est_abs_error),
        regime
    )
    .map_err(|e| CliError::Io(e.to_string()))
}

fn family_modes(family: Family, modes: usize, grid: Grid1D, beta: f64) -> Result<Vec<EigenMode>, CliError> {
    let mut list = Vec::new();
    match family {
        Family::Odd => {
            for m in 1..=modes {
                list.push(odd_mode(m, grid, beta)?);
            }
        }
        Family::Even => {
            for m in 0..modes {
                list.push(even_mode(m, grid, beta)?);
            }
        }
        Family::Degenerate => {
            for m in 1..=modes {
                let (c, s) = degenerate_modes(m, grid, beta)?;
                list.push(c);
                list.push(s);
            }
        }
    }
    Ok(list)
}

fn mode_stem(family: Family, mode: &EigenMode) -> String {
    match mode.parity {
        Parity::ShiftedCos | Parity::ShiftedSin => {
            format!("eig_degenerate_m{}_{}", mode.m, mode.parity.label())
        }
        _ => format!("eig_{}_m{}", family_name(family), mode.m),
    }
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Odd => "odd",
        Family::Even => "even",
        Family::Degenerate => "degenerate",
    }
}

/// Writes per-mode tables `r,psi_analytic,psi_operator_over_e,diff`, a
/// summary `m,eigenvalue,residual` and, on request, one SVG per mode.
///
/// For the degenerate family each index has two tables and the summary
/// residual is the worse of the pair.
pub fn emit_eig(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let Command::Eig { family, modes, svg: want_svg } = cfg.command else {
        return Err(CliError::Usage("not an eig run".into()));
    };
    let grid = cfg.grid();
    let n = grid.n_points();
    let op = RieszOperator::new(grid, cfg.beta)?;
    prepare_dir(&cfg.output_path)?;

    let mut files = Vec::new();
    let mut summary: Vec<(usize, f64, f64)> = Vec::new();
    for mode in family_modes(family, modes, grid, cfg.beta)? {
        let scaled = operator_over_eigenvalue(&op, &mode.samples, mode.eigenvalue)?;
        let analytic: Vec<f64> = mode.samples.values().iter().map(|v| v.re).collect();
        let spectral: Vec<f64> = scaled.values().iter().map(|v| v.re).collect();
        let residual = crate::eigenbox::eigen_residual_with(&op, &mode.samples, mode.eigenvalue)?;

        let stem = mode_stem(family, &mode);
        let path = cfg.output_path.join(format!("{stem}.csv"));
        let rows = (0..n).map(|j| {
            vec![
                num(cfg.half_width * unit_point(j, n)),
                num(analytic[j]),
                num(spectral[j]),
                num(spectral[j] - analytic[j]),
            ]
        });
        write_csv(&path, &["r", "psi_analytic", "psi_operator_over_e", "diff"], rows)?;
        files.push(path);

        if want_svg {
            let path = cfg.output_path.join(format!("{stem}.svg"));
            let text = svg::mode_plot(&stem, cfg.half_width, &analytic, &spectral);
            fs::write(&path, text).map_err(|e| io_err(&path, e))?;
            files.push(path);
        }

        match summary.last_mut() {
            Some(last) if last.0 == mode.m && family == Family::Degenerate => {
                last.2 = last.2.max(residual);
            }
            _ => summary.push((mode.m, mode.eigenvalue, residual)),
        }
    }

    let path = cfg.output_path.join(format!("eig_{}_summary.csv", family_name(family)));
    let rows = summary.iter().map(|(m, e, r)| vec![m.to_string(), num(*e), num(*r)]);
    write_csv(&path, &["m", "eigenvalue", "residual"], rows)?;
    files.push(path);
    Ok(files)
}

fn read_profile(path: &Path, grid: Grid1D) -> Result<ComplexSamples, CliError> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| io_err(path, e))?;
    let headers = rdr.headers().map_err(|e| io_err(path, e))?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let re_col = col("re")
        .ok_or_else(|| CliError::Usage(format!("{}: needs a 're' column", path.display())))?;
    let im_col = col("im");
    let mut values = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| io_err(path, e))?;
        let field = |c: usize| -> Result<f64, CliError> {
            let s = rec.get(c).unwrap_or("").trim();
            s.parse::<f64>().map_err(|_| {
                CliError::Usage(format!("{}: row {}: '{s}' is not a number", path.display(), i + 1))
            })
        };
        let im = match im_col {
            Some(c) => field(c)?,
            None => 0.0,
        };
        values.push(Complex64::new(field(re_col)?, im));
    }
    if values.len() != grid.n_points() {
        return Err(CliError::Usage(format!(
            "{}: expected {} rows, found {}",
            path.display(),
            grid.n_points(),
            values.len()
        )));
    }
    Ok(ComplexSamples::new(grid, values)?)
}

fn sampled(grid: Grid1D, shape: impl Fn(f64) -> f64) -> ComplexSamples {
    let n = grid.n_points();
    let values = (0..n).map(|j| Complex64::new(shape(unit_point(j, n)), 0.0)).collect();
    ComplexSamples::new(grid, values).expect("one sample per grid point")
}

/// Builds `u0` from `mode:K`, `triangle`, `odd-gauss`, `gauss` or `file:PATH`.
/// Shapes are given in the unit variable `r/L`.
pub(crate) fn initial_profile(spec: &str, cfg: &RunConfig) -> Result<ComplexSamples, CliError> {
    let grid = cfg.grid();
    let gauss = |u: f64, c: f64| (-((u - c) / 0.1).powi(2)).exp();
    if let Some(k) = spec.strip_prefix("mode:") {
        let k: usize = k
            .parse()
            .map_err(|_| CliError::Usage(format!("bad mode index in '{spec}'")))?;
        if k == 0 || k > cfg.mode_cutoff {
            return Err(CliError::Usage(format!(
                "mode index must lie in [1, {}], got {k}",
                cfg.mode_cutoff
            )));
        }
        let kf = k as f64;
        return Ok(sampled(grid, |u| sin_pi(kf * u)));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return read_profile(Path::new(path), grid);
    }
    match spec {
        "triangle" => Ok(sampled(grid, |u| u.signum() * (1.0 - (2.0 * u.abs() - 1.0).abs()))),
        "odd-gauss" => Ok(sampled(grid, |u| gauss(u, 0.5) - gauss(u, -0.5))),
        "gauss" => Ok(sampled(grid, |u| gauss(u, 0.0))),
        _ => Err(CliError::Usage(format!(
            "unknown initial condition '{spec}' (expected mode:K, triangle, odd-gauss, gauss or file:PATH)"
        ))),
    }
}

/// Writes `field_NNN.csv` (`r,re_u,im_u,abs2_u`) for the `NNN`-th entry of the
/// z list, and `norm.csv` (`z,norm,norm_small_z,norm_large_z`) for the
/// dominant mode.
pub fn emit_evolve(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let Command::Evolve { u0 } = &cfg.command else {
        return Err(CliError::Usage("not an evolve run".into()));
    };
    let slab = SlabConfig::new(
        cfg.half_width,
        cfg.wavenumber,
        cfg.omega_beta,
        cfg.orders(),
        cfg.mode_cutoff,
    )?;
    let u0 = initial_profile(u0, cfg)?;
    let expansion = project_initial(&u0, &slab)?;
    let fields = solve_field(&slab, &expansion, &cfg.z_list)?;

    prepare_dir(&cfg.output_path)?;
    let n = cfg.n_grid;
    let mut files = Vec::new();
    for (i, field) in fields.iter().enumerate() {
        let path = cfg.output_path.join(format!("field_{i:03}.csv"));
        let rows = field.values().iter().enumerate().map(|(j, u)| {
            vec![num(cfg.half_width * unit_point(j, n)), num(u.re), num(u.im), num(u.norm_sqr())]
        });
        write_csv(&path, &["r", "re_u", "im_u", "abs2_u"], rows)?;
        files.push(path);
    }

    let d = expansion.dominant_mode();
    let env = slab.envelope(d, expansion.coeffs()[d - 1])?;
    let mut rows = Vec::with_capacity(cfg.z_list.len());
    for &z in &cfg.z_list {
        rows.push(vec![
            num(z),
            num(norm_z(&env, z)?),
            num(norm_small_z(&env, z)),
            num(norm_large_z(&env, z)),
        ]);
    }
    let path = cfg.output_path.join("norm.csv");
    write_csv(&path, &["z", "norm", "norm_small_z", "norm_large_z"], rows)?;
    files.push(path);
    Ok(files)
}

/// Prints the criterion summary; fails when any criterion is red.
pub fn run_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let reports = run_all(&cfg.verify_options());
    out.write_all(render_summary(&reports).as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))?;
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

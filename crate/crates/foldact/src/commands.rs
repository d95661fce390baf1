//! Command implementations. Each writes its report to `out`, warnings to
//! `err`, and any data file to the path it was given.

use std::fs;
use std::io::Write;
use std::path::Path;

use foldact_core::bending::{calibrate_alpha, pressure_grid, solve_equilibrium};
use foldact_core::material::{
    energy_gradient_plane_strain, fit_mooney_rivlin, invariants_plane_strain, invariants_uniaxial,
    nominal_stress_uniaxial, strain_energy_density,
};
use foldact_core::vel::{backbone_shape, conformity_score, optimize_mask};
use foldact_core::{BendingState, ContourProfile, SegmentMask};

use crate::cli::{Command, ConformArgs};
use crate::config::{load_config, load_material, write_material};
use crate::formats::{self, sig9};
use crate::CliError;

fn io(e: std::io::Error) -> CliError {
    CliError::input(format!("write failed: {e}"))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

/// Two-column `name value` table with aligned values.
fn table(out: &mut dyn Write, rows: &[(&str, String)]) -> Result<(), CliError> {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    for (name, value) in rows {
        writeln!(out, "{name:<width$}  {value}").map_err(io)?;
    }
    Ok(())
}

pub fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::FitMaterial { input, out: path } => fit_material(input, path, out, err),
        Command::Eval { material, stretch } => eval(material, *stretch, out),
        Command::Solve { config, pressure } => solve(config, *pressure, out),
        Command::Sweep {
            config,
            pmin,
            pmax,
            step,
            out: path,
        } => sweep(config, *pmin, *pmax, *step, path.as_deref(), out),
        Command::CalibrateAlpha {
            config,
            data,
            alpha_min,
            alpha_max,
        } => calibrate(config, data, *alpha_min, *alpha_max, out),
        Command::Shape {
            config,
            pressure,
            mask,
            out: path,
        } => shape(config, *pressure, mask, path.as_deref(), out),
        Command::Conform(args) => conform(args, out),
    }
}

fn fit_material(
    input: &Path,
    path: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let data = formats::read_stress_strain(input)?;
    let report = fit_mooney_rivlin(&data)?;
    write_material(path, &report.model)?;
    let m = &report.model;
    table(
        out,
        &[
            ("c10_mpa", sig9(m.c10())),
            ("c01_mpa", sig9(m.c01())),
            ("c11_mpa", sig9(m.c11())),
            ("c20_mpa", sig9(m.c20())),
            ("c02_mpa", sig9(m.c02())),
            ("d_per_mpa", sig9(m.d())),
            ("samples", report.samples.to_string()),
            ("residual_norm_mpa", sig9(report.residual_norm)),
            ("condition_number", sig9(report.condition_number)),
        ],
    )?;
    if let Some(stretch) = report.negative_slope_at {
        writeln!(
            err,
            "warning: fitted stress decreases with stretch near lambda = {}",
            sig9(stretch)
        )
        .map_err(io)?;
    }
    Ok(())
}

fn eval(material: &Path, stretch: f64, out: &mut dyn Write) -> Result<(), CliError> {
    let model = load_material(material)?;
    let uni = invariants_uniaxial(stretch)?;
    let plane = invariants_plane_strain(stretch)?;
    table(
        out,
        &[
            ("stretch", sig9(stretch)),
            ("uniaxial_i1", sig9(uni.i1)),
            ("uniaxial_i2", sig9(uni.i2)),
            ("uniaxial_energy_mpa", sig9(strain_energy_density(&model, uni))),
            ("nominal_stress_mpa", sig9(nominal_stress_uniaxial(&model, stretch)?)),
            ("plane_strain_i1", sig9(plane.i1)),
            ("plane_strain_i2", sig9(plane.i2)),
            ("plane_strain_energy_mpa", sig9(strain_energy_density(&model, plane))),
            (
                "plane_strain_gradient_mpa",
                sig9(energy_gradient_plane_strain(&model, stretch)?),
            ),
        ],
    )
}

fn state_rows(s: &BendingState) -> Vec<(&'static str, String)> {
    vec![
        ("pressure_kpa", sig9(s.pressure_kpa)),
        ("theta_deg", sig9(s.theta_deg())),
        ("theta_rad", sig9(s.theta)),
        ("phi_deg", sig9(s.phi.to_degrees())),
        ("phi_rad", sig9(s.phi)),
        ("lambda", sig9(s.lambda_star)),
        ("radius_mm", sig9(s.radius)),
        ("residual", sig9(s.residual)),
    ]
}

fn solve(config: &Path, pressure: f64, out: &mut dyn Write) -> Result<(), CliError> {
    let setup = load_config(config)?;
    let state = solve_equilibrium(&setup.actuator, pressure)?;
    table(out, &state_rows(&state))
}

fn sweep_table(states: &[BendingState], out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(
        out,
        "{:>12}  {:>12}  {:>12}  {:>14}",
        "pressure_kpa", "theta_deg", "lambda", "residual"
    )
    .map_err(io)?;
    for s in states {
        writeln!(
            out,
            "{:>12}  {:>12}  {:>12}  {:>14}",
            sig9(s.pressure_kpa),
            sig9(s.theta_deg()),
            sig9(s.lambda_star),
            sig9(s.residual)
        )
        .map_err(io)?;
    }
    Ok(())
}

/// Solves each pressure in turn. On failure the states solved so far are
/// still written before the error is returned.
fn sweep(
    config: &Path,
    pmin: f64,
    pmax: f64,
    step: f64,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let setup = load_config(config)?;
    let grid = pressure_grid(pmin, pmax, step)?;
    let mut states = Vec::with_capacity(grid.len());
    let mut failure = None;
    for p in grid {
        match solve_equilibrium(&setup.actuator, p) {
            Ok(s) => states.push(s),
            Err(e) => {
                let mut e = CliError::from(e);
                e.message = format!(
                    "at {} kPa: {}; output holds {} solved pressures",
                    sig9(p),
                    e.message,
                    states.len()
                );
                failure = Some(e);
                break;
            }
        }
    }
    match path {
        Some(p) => write_file(p, &formats::sweep_csv(&states))?,
        None => sweep_table(&states, out)?,
    }
    failure.map_or(Ok(()), Err)
}

fn calibrate(
    config: &Path,
    data: &Path,
    alpha_min: f64,
    alpha_max: f64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let setup = load_config(config)?;
    let points = formats::read_angles(data)?;
    let cal = calibrate_alpha(&setup.actuator, &points, alpha_min, alpha_max)?;
    table(
        out,
        &[
            ("alpha", sig9(cal.alpha)),
            ("max_relative_error_pct", sig9(100.0 * cal.max_relative_error)),
            ("points", points.len().to_string()),
        ],
    )
}

fn parse_mask(bits: &str, n_folds: usize) -> Result<SegmentMask, CliError> {
    let mask = SegmentMask::parse(bits)?;
    if mask.len() != n_folds {
        return Err(CliError::input(format!(
            "mask `{bits}` has {} folds but the actuator has {n_folds}",
            mask.len()
        )));
    }
    Ok(mask)
}

fn shape(
    config: &Path,
    pressure: f64,
    bits: &str,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let setup = load_config(config)?;
    let mask = parse_mask(bits, setup.actuator.n_folds)?;
    let state = solve_equilibrium(&setup.actuator, pressure)?;
    let shape = backbone_shape(&setup.actuator, &state, &mask, setup.pitch)?;
    let csv = formats::shape_csv(&shape);
    match path {
        Some(p) => write_file(p, &csv),
        None => out.write_all(csv.as_bytes()).map_err(io),
    }
}

fn conform(args: &ConformArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let setup = load_config(&args.config)?;
    let contour = ContourProfile::new(formats::read_contour(&args.contour)?)?;
    let mask = match &args.mask {
        Some(bits) => Some(parse_mask(bits, setup.actuator.n_folds)?),
        None => None,
    };
    let state = solve_equilibrium(&setup.actuator, args.pressure)?;
    let (mask, score) = match mask {
        Some(mask) => {
            let shape = backbone_shape(&setup.actuator, &state, &mask, setup.pitch)?;
            let score = conformity_score(&shape, &contour, args.epsilon)?;
            (mask, score)
        }
        None => optimize_mask(&setup.actuator, &state, &contour, setup.pitch, args.epsilon)?,
    };
    table(
        out,
        &[
            ("mode", if args.optimize { "optimize" } else { "score" }.to_string()),
            ("mask", mask.to_string()),
            ("active_folds", mask.active_count().to_string()),
            ("theta_deg", sig9(mask.active_count() as f64 * state.phi.to_degrees())),
            ("contact_ratio", format!("{:.3}", score.contact_ratio)),
            ("rms_distance_mm", sig9(score.rms_distance)),
            ("epsilon_mm", sig9(args.epsilon)),
            ("stations", score.stations.to_string()),
        ],
    )
}

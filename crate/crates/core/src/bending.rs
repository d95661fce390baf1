//! Pressure to bending-angle model.
//!
//! Each fold is an equivalent connector whose expanding wall stretches by
//! `lambda`. Pressure `P` acting on area `A` at lever arm `(H1 - h_e)/2`
//! releases work at the constant rate
//!
//! ```text
//! dW_air/dl = P A (H1 - h_e)/2 * x_e/h_ee
//! ```
//!
//! while the walls store energy `V_tt * W(l)` under plane strain. The
//! equilibrium stretch balances the two gradients; the fold then turns by
//! `phi = x_e/h_ee * (l - 1)` and the finger by `theta = n * phi`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result, Violation};
use crate::geometry::{equivalent_connector, ConnectorGeometry, EquivalentConnector};
use crate::material::{energy_gradient_plane_strain, MooneyRivlinModel};

pub const DEFAULT_LAMBDA_MAX: f64 = 2.5;

/// Default residual tolerance as a fraction of `P * A * H1` (N*mm).
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

/// Geometric scan points used to certify the bracket before bisection.
const SCAN_POINTS: usize = 64;

const MAX_SWEEP_POINTS: usize = 1_000_000;

/// kPa to MPa.
pub fn kpa_to_mpa(p: f64) -> f64 {
    p * 1e-3
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActuatorConfig {
    pub geometry: ConnectorGeometry,
    /// Finger depth, mm.
    pub depth: f64,
    pub material: MooneyRivlinModel,
    pub n_folds: usize,
    /// Pressurised cross-section area `A`, mm^2.
    pub area: f64,
    /// Upper bound of the stretch search interval.
    pub lambda_max: f64,
    /// Absolute residual tolerance in N*mm; `None` selects
    /// [`DEFAULT_RELATIVE_TOL`] times `P * A * H1`.
    pub solver_tol: Option<f64>,
    /// Replaces the centroid-derived `h_ee` when set.
    pub h_ee_override: Option<f64>,
}

/// Equilibrium of the actuator at one pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BendingState {
    pub pressure_kpa: f64,
    pub lambda_star: f64,
    /// Angle per fold, rad.
    pub phi: f64,
    /// Total bending angle, rad.
    pub theta: f64,
    /// `|strain gradient - air gradient|` at `lambda_star`, N*mm.
    pub residual: f64,
    /// Bend radius of one connector, mm; infinite when straight.
    pub radius: f64,
}

impl BendingState {
    pub fn theta_deg(&self) -> f64 {
        self.theta * 180.0 / PI
    }
}

/// Measured bending angle at a pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePoint {
    pub pressure_kpa: f64,
    pub angle_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub alpha: f64,
    /// Largest `|predicted - measured| / |measured|` over the data.
    pub max_relative_error: f64,
}

impl ActuatorConfig {
    /// Config with default solver settings.
    pub fn new(
        geometry: ConnectorGeometry,
        depth: f64,
        material: MooneyRivlinModel,
        n_folds: usize,
        area: f64,
    ) -> Self {
        ActuatorConfig {
            geometry,
            depth,
            material,
            n_folds,
            area,
            lambda_max: DEFAULT_LAMBDA_MAX,
            solver_tol: None,
            h_ee_override: None,
        }
    }

    /// Validates the config and reduces the fold to its equivalent
    /// connector, applying `h_ee_override`.
    pub fn connector(&self) -> Result<EquivalentConnector> {
        let mut bad = Vec::new();
        if self.n_folds < 1 {
            bad.push(Violation::new("n_folds", "must be at least 1"));
        }
        if !(self.area.is_finite() && self.area > 0.0) {
            bad.push(Violation::new("area", format!("must be positive (got {})", self.area)));
        }
        if !(self.lambda_max.is_finite() && self.lambda_max > 1.0) {
            bad.push(Violation::new(
                "lambda_max",
                format!("must exceed 1 (got {})", self.lambda_max),
            ));
        }
        if let Some(tol) = self.solver_tol {
            if !(tol.is_finite() && tol > 0.0) {
                bad.push(Violation::new("solver_tol", format!("must be positive (got {tol})")));
            }
        }
        let conn = match equivalent_connector(&self.geometry, self.depth) {
            Ok(c) => Some(c),
            Err(Error::Validation(v)) => {
                bad.extend(v);
                None
            }
            Err(e) => return Err(e),
        };
        let mut conn = match conn {
            Some(c) if bad.is_empty() => c,
            _ => return Err(Error::Validation(bad)),
        };
        if let Some(h) = self.h_ee_override {
            if !(h.is_finite() && h > 0.0 && h <= self.geometry.section_height) {
                bad.push(Violation::new(
                    "h_ee_override",
                    format!("must lie in (0, H1] (got {h})"),
                ));
            }
            conn.h_ee = h;
        }
        if !(self.geometry.section_height > conn.h_e) {
            bad.push(Violation::new(
                "alpha",
                format!(
                    "equivalent height h_e = {} leaves no moment arm below H1 = {}",
                    conn.h_e, self.geometry.section_height
                ),
            ));
        }
        if bad.is_empty() {
            Ok(conn)
        } else {
            Err(Error::Validation(bad))
        }
    }

    pub fn with_alpha(&self, alpha: f64) -> Self {
        let mut cfg = *self;
        cfg.geometry.alpha = alpha;
        cfg
    }

    pub fn with_folds(&self, n_folds: usize) -> Self {
        let mut cfg = *self;
        cfg.n_folds = n_folds;
        cfg
    }

    fn tolerance(&self, pressure_mpa: f64) -> f64 {
        self.solver_tol.unwrap_or(
            DEFAULT_RELATIVE_TOL * pressure_mpa * self.area * self.geometry.section_height,
        )
    }

    fn state(
        &self,
        conn: &EquivalentConnector,
        pressure_kpa: f64,
        lambda_star: f64,
        residual: f64,
    ) -> BendingState {
        let phi = conn.x_e / conn.h_ee * (lambda_star - 1.0);
        BendingState {
            pressure_kpa,
            lambda_star,
            phi,
            theta: self.n_folds as f64 * phi,
            residual,
            radius: if phi > 0.0 { conn.x_e / phi } else { f64::INFINITY },
        }
    }
}

fn check_pressure(pressure_kpa: f64) -> Result<()> {
    if pressure_kpa.is_finite() && pressure_kpa >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            quantity: "pressure",
            value: pressure_kpa,
        })
    }
}

fn air_gradient(cfg: &ActuatorConfig, conn: &EquivalentConnector, pressure_kpa: f64) -> f64 {
    let arm = (cfg.geometry.section_height - conn.h_e) / 2.0;
    kpa_to_mpa(pressure_kpa) * cfg.area * arm * (conn.x_e / conn.h_ee)
}

fn strain_gradient(cfg: &ActuatorConfig, conn: &EquivalentConnector, lambda: f64) -> Result<f64> {
    Ok(conn.v_tt * energy_gradient_plane_strain(&cfg.material, lambda)?)
}

/// Rate of pressure work per unit stretch, N*mm. Independent of stretch.
pub fn air_work_gradient(cfg: &ActuatorConfig, pressure_kpa: f64) -> Result<f64> {
    check_pressure(pressure_kpa)?;
    let conn = cfg.connector()?;
    Ok(air_gradient(cfg, &conn, pressure_kpa))
}

/// Rate of wall strain energy per unit stretch, N*mm.
pub fn strain_work_gradient(cfg: &ActuatorConfig, lambda: f64) -> Result<f64> {
    if !(lambda.is_finite() && lambda >= 1.0) {
        return Err(Error::Domain {
            quantity: "stretch",
            value: lambda,
        });
    }
    let conn = cfg.connector()?;
    strain_gradient(cfg, &conn, lambda)
}

/// Finds the stretch where strain and pressure gradients balance.
///
/// A geometric scan over `[1, lambda_max]` locates the first sign change of
/// the residual (and rejects a strain gradient that decreases between scan
/// points), then bisection runs until the bracket cannot shrink further.
pub fn solve_equilibrium(cfg: &ActuatorConfig, pressure_kpa: f64) -> Result<BendingState> {
    check_pressure(pressure_kpa)?;
    let conn = cfg.connector()?;
    if pressure_kpa == 0.0 {
        return Ok(cfg.state(&conn, 0.0, 1.0, 0.0));
    }
    let air = air_gradient(cfg, &conn, pressure_kpa);
    let tol = cfg.tolerance(kpa_to_mpa(pressure_kpa));
    let residual = |lambda: f64| -> Result<f64> { Ok(strain_gradient(cfg, &conn, lambda)? - air) };

    let (mut lo, mut hi) = {
        let mut prev_lambda = 1.0;
        let mut prev_grad = strain_gradient(cfg, &conn, 1.0)?;
        let mut bracket = None;
        for k in 1..=SCAN_POINTS {
            let lambda = if k == SCAN_POINTS {
                cfg.lambda_max
            } else {
                libm::pow(cfg.lambda_max, k as f64 / SCAN_POINTS as f64)
            };
            let grad = strain_gradient(cfg, &conn, lambda)?;
            if grad < prev_grad {
                return Err(Error::NonMonotone {
                    lambda_lo: prev_lambda,
                    lambda_hi: lambda,
                    gradient_lo: prev_grad,
                    gradient_hi: grad,
                });
            }
            if grad - air >= 0.0 {
                bracket = Some((prev_lambda, lambda));
                break;
            }
            prev_lambda = lambda;
            prev_grad = grad;
        }
        match bracket {
            Some(b) => b,
            None => {
                return Err(Error::Saturated {
                    lambda_max: cfg.lambda_max,
                    strain_gradient: prev_grad,
                    air_gradient: air,
                })
            }
        }
    };

    let mut g_lo = residual(lo)?;
    let mut g_hi = residual(hi)?;
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let g = residual(mid)?;
        if g < 0.0 {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
            g_hi = g;
            if g == 0.0 {
                break;
            }
        }
    }
    let (lambda_star, g) = if libm::fabs(g_lo) < libm::fabs(g_hi) {
        (lo, g_lo)
    } else {
        (hi, g_hi)
    };
    let residual = libm::fabs(g);
    if residual > tol {
        return Err(Error::Unconverged {
            residual,
            tolerance: tol,
        });
    }
    Ok(cfg.state(&conn, pressure_kpa, lambda_star, residual))
}

/// Pressures `p_min, p_min + step, ...` up to and including `p_max`.
pub fn pressure_grid(p_min: f64, p_max: f64, step: f64) -> Result<Vec<f64>> {
    let mut bad = Vec::new();
    if !(p_min.is_finite() && p_min >= 0.0) {
        bad.push(Violation::new("p_min", format!("must be >= 0 (got {p_min})")));
    }
    if !(p_max.is_finite() && p_max >= p_min) {
        bad.push(Violation::new("p_max", format!("must be >= p_min (got {p_max})")));
    }
    if !(step.is_finite() && step > 0.0) {
        bad.push(Violation::new("step", format!("must be positive (got {step})")));
    }
    if !bad.is_empty() {
        return Err(Error::Validation(bad));
    }
    let span = (p_max - p_min) / step;
    if span >= MAX_SWEEP_POINTS as f64 {
        return Err(Error::invalid(
            "step",
            format!("sweep would exceed {MAX_SWEEP_POINTS} points"),
        ));
    }
    let count = libm::floor(span + 1e-9) as usize + 1;
    Ok((0..count).map(|i| p_min + i as f64 * step).collect())
}

pub fn pressure_sweep(
    cfg: &ActuatorConfig,
    p_min: f64,
    p_max: f64,
    step: f64,
) -> Result<Vec<BendingState>> {
    let states = pressure_grid(p_min, p_max, step)?
        .into_iter()
        .map(|p| {
            solve_equilibrium(cfg, p).map_err(|e| Error::AtPressure {
                pressure_kpa: p,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(states.windows(2).all(|w| w[1].theta >= w[0].theta));
    Ok(states)
}

/// Grid resolution of the initial alpha scan.
const ALPHA_GRID: usize = 121;
const GOLDEN_ITERATIONS: usize = 100;

fn max_relative_error(cfg: &ActuatorConfig, data: &[AnglePoint]) -> Option<f64> {
    let mut worst = 0.0_f64;
    for point in data {
        let predicted = solve_equilibrium(cfg, point.pressure_kpa).ok()?.theta_deg();
        let err = if point.angle_deg == 0.0 {
            if predicted == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            libm::fabs(predicted - point.angle_deg) / libm::fabs(point.angle_deg)
        };
        worst = worst.max(err);
    }
    Some(worst)
}

/// Chooses `alpha` in `[alpha_min, alpha_max]` minimising the largest
/// relative angle error over `data`.
///
/// A uniform scan picks the best grid point (ties go to the smallest
/// alpha), then golden-section search refines within its neighbours. The
/// refined point replaces the grid point only if strictly better. Alphas at
/// which the geometry is invalid or some pressure cannot be solved are
/// skipped. Points with a measured angle of 0 score 0 when the prediction
/// is exactly 0 and infinity otherwise.
pub fn calibrate_alpha(
    cfg: &ActuatorConfig,
    data: &[AnglePoint],
    alpha_min: f64,
    alpha_max: f64,
) -> Result<Calibration> {
    let mut bad = Vec::new();
    if data.len() < 3 {
        bad.push(Violation::new(
            "data",
            format!("need at least 3 points (got {})", data.len()),
        ));
    }
    for (k, p) in data.iter().enumerate() {
        if !(p.pressure_kpa.is_finite() && p.pressure_kpa >= 0.0 && p.angle_deg.is_finite()) {
            bad.push(Violation::new("data", format!("row {k} is invalid")));
        }
    }
    if !(alpha_min >= 0.0 && alpha_max <= 3.0 && alpha_min <= alpha_max) {
        bad.push(Violation::new(
            "alpha_range",
            format!("[{alpha_min}, {alpha_max}] must be an interval inside [0, 3]"),
        ));
    }
    if !bad.is_empty() {
        return Err(Error::Validation(bad));
    }

    let score = |alpha: f64| max_relative_error(&cfg.with_alpha(alpha), data);
    let grid: Vec<f64> = if alpha_min == alpha_max {
        alloc::vec![alpha_min]
    } else {
        (0..ALPHA_GRID)
            .map(|k| alpha_min + (alpha_max - alpha_min) * k as f64 / (ALPHA_GRID - 1) as f64)
            .collect()
    };
    let mut best: Option<(usize, f64)> = None;
    for (k, &alpha) in grid.iter().enumerate() {
        if let Some(s) = score(alpha) {
            if best.is_none_or(|(_, b)| s < b) {
                best = Some((k, s));
            }
        }
    }
    let (k, grid_score) = best.ok_or(Error::Calibration {
        candidates: grid.len(),
    })?;
    let mut result = Calibration {
        alpha: grid[k],
        max_relative_error: grid_score,
    };
    if grid.len() == 1 {
        return Ok(result);
    }

    let mut a = grid[k.saturating_sub(1)];
    let mut b = grid[(k + 1).min(grid.len() - 1)];
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let objective = |alpha: f64| score(alpha).unwrap_or(f64::INFINITY);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = objective(c);
    let mut fd = objective(d);
    for _ in 0..GOLDEN_ITERATIONS {
        if b - a <= 1e-12 {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    let (alpha, refined) = if fc <= fd { (c, fc) } else { (d, fd) };
    if refined < result.max_relative_error {
        result = Calibration {
            alpha,
            max_relative_error: refined,
        };
    }
    Ok(result)
}

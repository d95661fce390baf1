//! JSON documents: material files and actuator configs.
//!
//! An actuator config has four blocks; lengths are mm, areas mm^2,
//! coefficients MPa:
//!
//! ```json
//! {
//!   "geometry": { "a": 6, "b": 14, "l_c": 2, "h1": 10, "t_w": 1.2, "t_c": 1.2,
//!                 "alpha": 0.6, "H1": 16, "depth": 14 },
//!   "material": { "path": "ninjaflex.json" },
//!   "actuator": { "n_folds": 10, "area": 140, "pitch": 10 },
//!   "solver":   { "lambda_max": 2.5 }
//! }
//! ```
//!
//! `material` is either `{ "path": ... }` (relative to the config file) or
//! an inline material document. `geometry.h_ee_override`,
//! `actuator.pitch`, `solver` and its fields are optional.

use std::fs;
use std::path::{Path, PathBuf};

use foldact_core::bending::DEFAULT_LAMBDA_MAX;
use foldact_core::{ActuatorConfig, ConnectorGeometry, MooneyRivlinModel};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Material file: `c10, c01, c11, c20, c02` in MPa, `d` in 1/MPa (must be
/// 0), optional `c30`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MaterialDoc {
    pub c10: f64,
    pub c01: f64,
    pub c11: f64,
    pub c20: f64,
    pub c02: f64,
    pub d: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub c30: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl MaterialDoc {
    pub fn to_model(&self) -> Result<MooneyRivlinModel, CliError> {
        MooneyRivlinModel::with_c30(self.c10, self.c01, self.c11, self.c20, self.c02, self.c30, self.d)
            .map_err(CliError::from)
    }

    pub fn from_model(m: &MooneyRivlinModel) -> Self {
        MaterialDoc {
            c10: m.c10(),
            c01: m.c01(),
            c11: m.c11(),
            c20: m.c20(),
            c02: m.c02(),
            d: m.d(),
            c30: m.c30(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryDoc {
    pub a: f64,
    pub b: f64,
    pub l_c: f64,
    pub h1: f64,
    pub t_w: f64,
    pub t_c: f64,
    pub alpha: f64,
    #[serde(rename = "H1")]
    pub section_height: f64,
    pub depth: f64,
    #[serde(default)]
    pub h_ee_override: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MaterialBlock {
    Path(MaterialPath),
    Inline(MaterialDoc),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialPath {
    pub path: PathBuf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActuatorDoc {
    pub n_folds: usize,
    pub area: f64,
    #[serde(default)]
    pub pitch: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverDoc {
    #[serde(default = "default_lambda_max")]
    pub lambda_max: f64,
    #[serde(default)]
    pub solver_tol: Option<f64>,
}

fn default_lambda_max() -> f64 {
    DEFAULT_LAMBDA_MAX
}

impl Default for SolverDoc {
    fn default() -> Self {
        SolverDoc {
            lambda_max: DEFAULT_LAMBDA_MAX,
            solver_tol: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub geometry: GeometryDoc,
    pub material: MaterialBlock,
    pub actuator: ActuatorDoc,
    #[serde(default)]
    pub solver: SolverDoc,
}

/// A loaded, validated actuator setup.
#[derive(Debug, Clone)]
pub struct Setup {
    pub actuator: ActuatorConfig,
    /// Arc length per fold for backbone reconstruction, mm.
    pub pitch: f64,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

pub fn load_material(path: &Path) -> Result<MooneyRivlinModel, CliError> {
    let doc: MaterialDoc = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    doc.to_model()
        .map_err(|e| CliError::input(format!("{}: {}", path.display(), e.message)))
}

pub fn write_material(path: &Path, model: &MooneyRivlinModel) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&MaterialDoc::from_model(model))
        .map_err(|e| CliError::input(e.to_string()))?;
    text.push('\n');
    fs::write(path, text)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}

pub fn load_config(path: &Path) -> Result<Setup, CliError> {
    let doc: ConfigDoc = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let material = match &doc.material {
        MaterialBlock::Inline(m) => m.to_model()?,
        MaterialBlock::Path(p) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            load_material(&base.join(&p.path))?
        }
    };
    let g = &doc.geometry;
    let mut actuator = ActuatorConfig::new(
        ConnectorGeometry {
            a: g.a,
            b: g.b,
            l_c: g.l_c,
            h1: g.h1,
            t_w: g.t_w,
            t_c: g.t_c,
            alpha: g.alpha,
            section_height: g.section_height,
        },
        g.depth,
        material,
        doc.actuator.n_folds,
        doc.actuator.area,
    );
    actuator.lambda_max = doc.solver.lambda_max;
    actuator.solver_tol = doc.solver.solver_tol;
    actuator.h_ee_override = g.h_ee_override;
    let connector = actuator
        .connector()
        .map_err(|e| CliError::input(format!("{}: {}", path.display(), CliError::from(e).message)))?;
    let pitch = doc.actuator.pitch.unwrap_or(2.0 * connector.x_e);
    if !(pitch.is_finite() && pitch > 0.0) {
        return Err(CliError::input(format!(
            "{}: actuator.pitch must be positive (got {pitch})",
            path.display()
        )));
    }
    Ok(Setup { actuator, pitch })
}

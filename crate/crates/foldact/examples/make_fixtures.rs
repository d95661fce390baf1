//! Regenerates the files under `tests/fixtures/`.
//!
//! ```text
//! cargo run -p foldact --example make_fixtures -- crates/foldact/tests/fixtures
//! ```

use std::fs;
use std::path::PathBuf;

use foldact::config::write_material;
use foldact::formats::{contour_csv, stress_strain_csv, sig9};
use foldact_core::bending::solve_equilibrium;
use foldact_core::material::nominal_stress_uniaxial;
use foldact_core::vel::{backbone_shape, DEFAULT_STATIONS};
use foldact_core::{
    ActuatorConfig, ConnectorGeometry, MooneyRivlinModel, Point, SegmentMask, StressStrainSample,
};

const CONFIG: &str = r#"{
  "geometry": {
    "a": 6, "b": 14, "l_c": 2, "h1": 10, "t_w": 1.2, "t_c": 1.2,
    "alpha": 0.6, "H1": 16, "depth": 14
  },
  "material": { "path": "ninjaflex.json" },
  "actuator": { "n_folds": 10, "area": 140, "pitch": 10 },
  "solver": { "lambda_max": 2.5 }
}
"#;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "tests/fixtures".into()));
    fs::create_dir_all(&dir).unwrap();
    let table = MooneyRivlinModel::ninjaflex();
    write_material(&dir.join("ninjaflex.json"), &table).unwrap();
    fs::write(dir.join("actuator.json"), CONFIG).unwrap();

    let samples: Vec<_> = (0..100)
        .map(|k| {
            let l = 1.0 + 6.0 * k as f64 / 99.0;
            StressStrainSample::new(l - 1.0, nominal_stress_uniaxial(&table, l).unwrap())
        })
        .collect();
    fs::write(dir.join("ninjaflex_tensile.csv"), stress_strain_csv(&samples)).unwrap();
    fs::write(dir.join("three_rows.csv"), stress_strain_csv(&samples[..3])).unwrap();

    let cfg = ActuatorConfig::new(
        ConnectorGeometry {
            a: 6.0,
            b: 14.0,
            l_c: 2.0,
            h1: 10.0,
            t_w: 1.2,
            t_c: 1.2,
            alpha: 0.6,
            section_height: 16.0,
        },
        14.0,
        table,
        10,
        140.0,
    );
    let mut angles = String::from("pressure_kpa,angle_deg\n");
    for k in 1..=13 {
        let p = 10.0 * k as f64;
        let theta = solve_equilibrium(&cfg, p).unwrap().theta_deg();
        angles.push_str(&format!("{},{}\n", sig9(p), sig9(theta)));
    }
    fs::write(dir.join("angles_alpha_0_6.csv"), angles).unwrap();

    let state = solve_equilibrium(&cfg, 100.0).unwrap();
    let shape = backbone_shape(&cfg, &state, &SegmentMask::all_active(10), 10.0).unwrap();
    fs::write(
        dir.join("contour_full_100kpa.csv"),
        contour_csv(&shape.sample(DEFAULT_STATIONS)),
    )
    .unwrap();
    fs::write(
        dir.join("contour_straight.csv"),
        contour_csv(&[Point::new(0.0, 0.0), Point::new(100.0, 0.0)]),
    )
    .unwrap();
    let arc: Vec<Point> = (0..=90)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / 90.0;
            Point::new(30.0 * t.sin(), 30.0 - 30.0 * t.cos())
        })
        .collect();
    fs::write(dir.join("contour_semicircle_r30.csv"), contour_csv(&arc)).unwrap();
}

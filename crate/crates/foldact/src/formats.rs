//! CSV readers and writers.
//!
//! | file            | header                                                   |
//! |-----------------|----------------------------------------------------------|
//! | stress-strain   | `strain,stress_mpa`                                      |
//! | angle data      | `pressure_kpa,angle_deg`                                 |
//! | contour         | `x_mm,y_mm`                                              |
//! | sweep output    | `pressure_kpa,lambda,phi_rad,theta_rad,theta_deg,residual` |
//! | shape output    | `x_mm,y_mm,heading_rad`                                  |
//!
//! Strain is engineering strain and stress is nominal (engineering) stress.
//! Numbers are written with 9 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use foldact_core::{AnglePoint, BackboneShape, BendingState, Point, StressStrainSample};

use crate::CliError;

pub const STRESS_STRAIN_HEADER: [&str; 2] = ["strain", "stress_mpa"];
pub const ANGLE_HEADER: [&str; 2] = ["pressure_kpa", "angle_deg"];
pub const CONTOUR_HEADER: [&str; 2] = ["x_mm", "y_mm"];
pub const SWEEP_HEADER: &str = "pressure_kpa,lambda,phi_rad,theta_rad,theta_deg,residual";
pub const SHAPE_HEADER: &str = "x_mm,y_mm,heading_rad";

/// Formats `v` with 9 significant digits, trailing zeros trimmed.
pub fn sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn read_pairs(path: &Path, header: [&str; 2]) -> Result<Vec<(f64, f64)>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let found = reader
        .headers()
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?
        .clone();
    if found.iter().collect::<Vec<_>>() != header {
        return Err(CliError::input(format!(
            "{}: expected header `{}`, found `{}`",
            path.display(),
            header.join(","),
            found.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let line = k + 2;
        let record =
            record.map_err(|e| CliError::input(format!("{}:{line}: {e}", path.display())))?;
        if record.len() != 2 {
            return Err(CliError::input(format!(
                "{}:{line}: expected 2 fields, found {}",
                path.display(),
                record.len()
            )));
        }
        let parse = |field: &str| {
            field.parse::<f64>().map_err(|_| {
                CliError::input(format!("{}:{line}: `{field}` is not a number", path.display()))
            })
        };
        rows.push((parse(&record[0])?, parse(&record[1])?));
    }
    Ok(rows)
}

pub fn read_stress_strain(path: &Path) -> Result<Vec<StressStrainSample>, CliError> {
    Ok(read_pairs(path, STRESS_STRAIN_HEADER)?
        .into_iter()
        .map(|(strain, stress)| StressStrainSample::new(strain, stress))
        .collect())
}

pub fn read_angles(path: &Path) -> Result<Vec<AnglePoint>, CliError> {
    Ok(read_pairs(path, ANGLE_HEADER)?
        .into_iter()
        .map(|(pressure_kpa, angle_deg)| AnglePoint {
            pressure_kpa,
            angle_deg,
        })
        .collect())
}

pub fn read_contour(path: &Path) -> Result<Vec<Point>, CliError> {
    Ok(read_pairs(path, CONTOUR_HEADER)?
        .into_iter()
        .map(|(x, y)| Point::new(x, y))
        .collect())
}

pub fn sweep_csv(states: &[BendingState]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for s in states {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            sig9(s.pressure_kpa),
            sig9(s.lambda_star),
            sig9(s.phi),
            sig9(s.theta),
            sig9(s.theta_deg()),
            sig9(s.residual)
        );
    }
    out
}

pub fn shape_csv(shape: &BackboneShape) -> String {
    let mut out = String::from(SHAPE_HEADER);
    out.push('\n');
    for v in &shape.vertices {
        let _ = writeln!(out, "{},{},{}", sig9(v.x), sig9(v.y), sig9(v.heading));
    }
    out
}

pub fn stress_strain_csv(samples: &[StressStrainSample]) -> String {
    let mut out = STRESS_STRAIN_HEADER.join(",");
    out.push('\n');
    for s in samples {
        let _ = writeln!(out, "{},{}", sig9(s.strain), sig9(s.stress));
    }
    out
}

pub fn contour_csv(points: &[Point]) -> String {
    let mut out = CONTOUR_HEADER.join(",");
    out.push('\n');
    for p in points {
        let _ = writeln!(out, "{},{}", sig9(p.x), sig9(p.y));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(-0.0), "0");
        assert_eq!(sig9(10.0), "10");
        assert_eq!(sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(sig9(123456.7891234), "123456.789");
        assert_eq!(sig9(-2.5e-9), "-2.5e-9");
        assert_eq!(sig9(9.9999999999), "10");
        assert_eq!(sig9(f64::INFINITY), "inf");
        assert_eq!(sig9(6.02214076e23), "6.02214076e23");
    }

    #[test]
    fn header_mismatch_is_input_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("d.csv");
        std::fs::write(&p, "strain,stress\n0,0\n").unwrap();
        let err = read_stress_strain(&p).unwrap_err();
        assert_eq!(err.code, 2);
        assert!(err.message.contains("strain,stress_mpa"));
    }

    #[test]
    fn bad_number_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        std::fs::write(&p, "x_mm,y_mm\n0,0\n1,abc\n").unwrap();
        let err = read_contour(&p).unwrap_err();
        assert!(err.message.contains(":3:"), "{}", err.message);
    }

    #[test]
    fn csv_round_trip_through_reader() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        let samples = [StressStrainSample::new(0.0, 0.0), StressStrainSample::new(0.25, 1.5)];
        std::fs::write(&p, stress_strain_csv(&samples)).unwrap();
        assert_eq!(read_stress_strain(&p).unwrap(), samples);
    }
}

//! Incompressible Mooney-Rivlin hyperelasticity.
//!
//! The strain-energy density is the polynomial
//!
//! ```text
//! W = c10 (I1-3) + c01 (I2-3) + c11 (I1-3)(I2-3) + c20 (I1-3)^2 + c02 (I2-3)^2
//!     + c30 (I1-3)^3
//! ```
//!
//! with the volumetric part dropped (J = 1). Two kinematic families are
//! provided: uniaxial tension (`l, l^-1/2, l^-1/2`), used to fit tensile
//! data, and plane strain (`l, 1/l, 1`), used for actuator walls.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result, Violation};
use crate::lstsq;

/// Mooney-Rivlin coefficients in MPa.
///
/// `c30` is the cubic reduced-polynomial term. It is carried so that
/// material files written for the reduced-polynomial form load unchanged;
/// the fitter never sets it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MooneyRivlinModel {
    c10: f64,
    c01: f64,
    c11: f64,
    c20: f64,
    c02: f64,
    c30: f64,
}

/// Strain invariants of an isochoric stretch state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrainInvariants {
    pub i1: f64,
    pub i2: f64,
    pub j: f64,
}

/// One tensile-test reading: engineering strain and nominal stress (MPa).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressStrainSample {
    pub strain: f64,
    pub stress: f64,
}

impl StressStrainSample {
    pub fn new(strain: f64, stress: f64) -> Self {
        StressStrainSample { strain, stress }
    }

    pub fn stretch(&self) -> f64 {
        1.0 + self.strain
    }
}

/// Outcome of [`fit_mooney_rivlin`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub model: MooneyRivlinModel,
    /// Euclidean norm of predicted minus measured stress, MPa.
    pub residual_norm: f64,
    pub condition_number: f64,
    pub samples: usize,
    /// First stretch in the data range where the fitted stress-stretch curve
    /// has negative slope, if any.
    pub negative_slope_at: Option<f64>,
}

impl MooneyRivlinModel {
    /// Builds a model, rejecting non-finite coefficients and any non-zero
    /// compressibility parameter `d`.
    pub fn new(c10: f64, c01: f64, c11: f64, c20: f64, c02: f64, d: f64) -> Result<Self> {
        Self::with_c30(c10, c01, c11, c20, c02, 0.0, d)
    }

    pub fn with_c30(
        c10: f64,
        c01: f64,
        c11: f64,
        c20: f64,
        c02: f64,
        c30: f64,
        d: f64,
    ) -> Result<Self> {
        let mut bad = Vec::new();
        for (field, value) in [
            ("c10", c10),
            ("c01", c01),
            ("c11", c11),
            ("c20", c20),
            ("c02", c02),
            ("c30", c30),
        ] {
            if !value.is_finite() {
                bad.push(Violation::new(field, "must be finite"));
            }
        }
        if d != 0.0 {
            bad.push(Violation::new(
                "d",
                format!("material is incompressible, d must be 0 (got {d})"),
            ));
        }
        if !bad.is_empty() {
            return Err(Error::Validation(bad));
        }
        Ok(MooneyRivlinModel {
            c10,
            c01,
            c11,
            c20,
            c02,
            c30,
        })
    }

    /// Coefficients fitted to NinjaFlex tensile data (MPa).
    pub fn ninjaflex() -> Self {
        MooneyRivlinModel {
            c10: -0.0450,
            c01: 2.898,
            c11: -0.017,
            c20: 0.00226,
            c02: 0.183,
            c30: 0.0,
        }
    }

    pub fn zero() -> Self {
        MooneyRivlinModel {
            c10: 0.0,
            c01: 0.0,
            c11: 0.0,
            c20: 0.0,
            c02: 0.0,
            c30: 0.0,
        }
    }

    pub fn c10(&self) -> f64 {
        self.c10
    }
    pub fn c01(&self) -> f64 {
        self.c01
    }
    pub fn c11(&self) -> f64 {
        self.c11
    }
    pub fn c20(&self) -> f64 {
        self.c20
    }
    pub fn c02(&self) -> f64 {
        self.c02
    }
    pub fn c30(&self) -> f64 {
        self.c30
    }
    /// Always 0: the model is incompressible.
    pub fn d(&self) -> f64 {
        0.0
    }

    /// `[c10, c01, c11, c20, c02]`.
    pub fn coefficients(&self) -> [f64; 5] {
        [self.c10, self.c01, self.c11, self.c20, self.c02]
    }

    fn from_coefficients(c: &[f64]) -> Self {
        MooneyRivlinModel {
            c10: c[0],
            c01: c[1],
            c11: c[2],
            c20: c[3],
            c02: c[4],
            c30: 0.0,
        }
    }

    /// Directional derivative of W along a stretch path, given the
    /// invariants and their derivatives with respect to the path parameter.
    fn energy_rate(&self, inv: StrainInvariants, di1: f64, di2: f64) -> f64 {
        let x = inv.i1 - 3.0;
        let y = inv.i2 - 3.0;
        self.c10 * di1
            + self.c01 * di2
            + self.c11 * (di1 * y + x * di2)
            + 2.0 * self.c20 * x * di1
            + 2.0 * self.c02 * y * di2
            + 3.0 * self.c30 * x * x * di1
    }
}

fn check_stretch(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            quantity: "stretch",
            value: lambda,
        })
    }
}

/// Invariants for uniaxial incompressible tension with principal stretches
/// `(l, l^-1/2, l^-1/2)`.
pub fn invariants_uniaxial(lambda: f64) -> Result<StrainInvariants> {
    check_stretch(lambda)?;
    Ok(StrainInvariants {
        i1: lambda * lambda + 2.0 / lambda,
        i2: 2.0 * lambda + 1.0 / (lambda * lambda),
        j: 1.0,
    })
}

/// Invariants for plane strain with principal stretches `(l, 1/l, 1)`.
/// Both invariants equal `l^2 + l^-2 + 1`.
pub fn invariants_plane_strain(lambda: f64) -> Result<StrainInvariants> {
    check_stretch(lambda)?;
    let i = lambda * lambda + 1.0 / (lambda * lambda) + 1.0;
    Ok(StrainInvariants { i1: i, i2: i, j: 1.0 })
}

/// Strain-energy density in MPa (N*mm per mm^3).
pub fn strain_energy_density(model: &MooneyRivlinModel, inv: StrainInvariants) -> f64 {
    let x = inv.i1 - 3.0;
    let y = inv.i2 - 3.0;
    model.c10 * x
        + model.c01 * y
        + model.c11 * x * y
        + model.c20 * x * x
        + model.c02 * y * y
        + model.c30 * x * x * x
}

/// Nominal (first Piola-Kirchhoff) stress in uniaxial tension, `dW/dl`.
pub fn nominal_stress_uniaxial(model: &MooneyRivlinModel, lambda: f64) -> Result<f64> {
    let inv = invariants_uniaxial(lambda)?;
    let (di1, di2) = uniaxial_rates(lambda);
    Ok(model.energy_rate(inv, di1, di2))
}

/// `dW/dl` along the plane-strain path.
pub fn energy_gradient_plane_strain(model: &MooneyRivlinModel, lambda: f64) -> Result<f64> {
    let inv = invariants_plane_strain(lambda)?;
    let rate = 2.0 * (lambda - 1.0 / (lambda * lambda * lambda));
    Ok(model.energy_rate(inv, rate, rate))
}

fn uniaxial_rates(lambda: f64) -> (f64, f64) {
    let inv_sq = 1.0 / (lambda * lambda);
    (2.0 * lambda - 2.0 * inv_sq, 2.0 - 2.0 * inv_sq / lambda)
}

/// Minimum number of samples accepted by [`fit_mooney_rivlin`].
pub const MIN_FIT_SAMPLES: usize = 6;

const SLOPE_PROBES: usize = 200;

/// Unweighted linear least-squares fit of the five Mooney-Rivlin
/// coefficients to nominal stress versus engineering strain.
///
/// Nominal stress is linear in the coefficients, so the fit is a single
/// linear solve; `c30` and `d` are fixed at 0.
pub fn fit_mooney_rivlin(data: &[StressStrainSample]) -> Result<FitReport> {
    if data.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData {
            required: MIN_FIT_SAMPLES,
            got: data.len(),
        });
    }
    let mut bad = Vec::new();
    for (k, s) in data.iter().enumerate() {
        if !s.strain.is_finite() || !s.stress.is_finite() {
            bad.push(Violation::new("sample", format!("row {k} is not finite")));
        } else if s.strain <= -1.0 {
            bad.push(Violation::new(
                "strain",
                format!("row {k}: strain {} must exceed -1", s.strain),
            ));
        }
    }
    if !bad.is_empty() {
        return Err(Error::Validation(bad));
    }

    let mut columns: [Vec<f64>; 5] = Default::default();
    let mut rhs = Vec::with_capacity(data.len());
    for s in data {
        let lambda = s.stretch();
        let inv = invariants_uniaxial(lambda)?;
        let (di1, di2) = uniaxial_rates(lambda);
        let x = inv.i1 - 3.0;
        let y = inv.i2 - 3.0;
        columns[0].push(di1);
        columns[1].push(di2);
        columns[2].push(di1 * y + x * di2);
        columns[3].push(2.0 * x * di1);
        columns[4].push(2.0 * y * di2);
        rhs.push(s.stress);
    }
    // Rank deficiency is reported ahead of ordering so that degenerate
    // data (e.g. all strains equal) gets the conditioning diagnostic.
    let solution = lstsq::solve(&columns, &rhs)?;

    for (k, w) in data.windows(2).enumerate() {
        if !(w[1].strain > w[0].strain) {
            bad.push(Violation::new(
                "strain",
                format!("strains must be strictly increasing (rows {k} and {})", k + 1),
            ));
        }
    }
    if !bad.is_empty() {
        return Err(Error::Validation(bad));
    }

    let model = MooneyRivlinModel::from_coefficients(&solution.x);
    let lo = data[0].stretch();
    let hi = data[data.len() - 1].stretch();
    Ok(FitReport {
        model,
        residual_norm: solution.residual_norm,
        condition_number: solution.condition_number,
        samples: data.len(),
        negative_slope_at: first_negative_slope(&model, lo, hi),
    })
}

fn first_negative_slope(model: &MooneyRivlinModel, lo: f64, hi: f64) -> Option<f64> {
    let mut prev = nominal_stress_uniaxial(model, lo).ok()?;
    for k in 1..=SLOPE_PROBES {
        let lambda = lo + (hi - lo) * k as f64 / SLOPE_PROBES as f64;
        let stress = nominal_stress_uniaxial(model, lambda).ok()?;
        if stress < prev {
            return Some(lambda);
        }
        prev = stress;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn table_one() -> MooneyRivlinModel {
        MooneyRivlinModel::ninjaflex()
    }

    #[test]
    fn uniaxial_invariants() {
        let undeformed = invariants_uniaxial(1.0).unwrap();
        assert_eq!((undeformed.i1, undeformed.i2, undeformed.j), (3.0, 3.0, 1.0));
        let inv = invariants_uniaxial(2.0).unwrap();
        assert_eq!((inv.i1, inv.i2), (5.0, 4.25));
    }

    #[test]
    fn stretch_domain_errors() {
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                invariants_uniaxial(bad),
                Err(Error::Domain { .. })
            ));
            assert!(matches!(
                invariants_plane_strain(bad),
                Err(Error::Domain { .. })
            ));
            assert!(nominal_stress_uniaxial(&table_one(), bad).is_err());
        }
    }

    #[test]
    fn plane_strain_invariants() {
        let inv = invariants_plane_strain(1.0).unwrap();
        assert_eq!((inv.i1, inv.i2), (3.0, 3.0));
        let inv = invariants_plane_strain(2.0).unwrap();
        assert_eq!((inv.i1, inv.i2), (5.25, 5.25));
    }

    #[test]
    fn nonzero_d_rejected() {
        let err = MooneyRivlinModel::new(1.0, 1.0, 0.0, 0.0, 0.0, 0.01).unwrap_err();
        match err {
            Error::Validation(v) => assert_eq!(v[0].field, "d"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(MooneyRivlinModel::new(f64::NAN, 0.0, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn density_undeformed_is_exactly_zero() {
        let inv = invariants_plane_strain(1.0).unwrap();
        assert_eq!(strain_energy_density(&table_one(), inv), 0.0);
        let inv = invariants_uniaxial(1.0).unwrap();
        assert_eq!(strain_energy_density(&table_one(), inv), 0.0);
    }

    #[test]
    fn density_table_one_plane_strain() {
        // 40-digit evaluation of (c10+c01) x + (c11+c20+c02) x^2, x = 1.5^2 + 1.5^-2 - 2.
        let expected = 2.062_393_904_320_988_f64;
        let inv = invariants_plane_strain(1.5).unwrap();
        assert!((inv.i1 - 3.694_444_444_444_444).abs() < 1e-14);
        let w = strain_energy_density(&table_one(), inv);
        assert!((w - expected).abs() < 1e-14, "{w}");
    }

    #[test]
    fn zero_model_has_no_energy_or_stress() {
        let zero = MooneyRivlinModel::zero();
        let inv = invariants_uniaxial(3.0).unwrap();
        assert_eq!(strain_energy_density(&zero, inv), 0.0);
        assert_eq!(nominal_stress_uniaxial(&zero, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn stress_free_when_undeformed() {
        assert_eq!(nominal_stress_uniaxial(&table_one(), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn stress_matches_finite_difference_at_two() {
        let m = table_one();
        let h = 1e-6;
        let w = |l: f64| strain_energy_density(&m, invariants_uniaxial(l).unwrap());
        let fd = (w(2.0 + h) - w(2.0 - h)) / (2.0 * h);
        let analytic = nominal_stress_uniaxial(&m, 2.0).unwrap();
        assert!(((analytic - fd) / fd).abs() <= 1e-6, "{analytic} vs {fd}");
    }

    #[test]
    fn c30_enters_plane_strain_gradient() {
        let m = MooneyRivlinModel::with_c30(0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0).unwrap();
        let l: f64 = 1.3;
        let x = l * l + 1.0 / (l * l) - 2.0;
        let expected = 6.0 * 0.5 * (l - l.powi(-3)) * x * x;
        let got = energy_gradient_plane_strain(&m, l).unwrap();
        assert!((got - expected).abs() <= 1e-14 * expected.abs());
    }

    fn synthetic(model: &MooneyRivlinModel, n: usize, lo: f64, hi: f64) -> Vec<StressStrainSample> {
        (0..n)
            .map(|k| {
                let l = lo + (hi - lo) * k as f64 / (n - 1) as f64;
                StressStrainSample::new(l - 1.0, nominal_stress_uniaxial(model, l).unwrap())
            })
            .collect()
    }

    #[test]
    fn fit_recovers_table_one() {
        let data = synthetic(&table_one(), 100, 1.0, 7.0);
        let report = fit_mooney_rivlin(&data).unwrap();
        for (got, want) in report.model.coefficients().iter().zip(table_one().coefficients()) {
            assert!((got - want).abs() <= 1e-6, "{got} vs {want}");
        }
        assert_eq!(report.samples, 100);
        assert_eq!(report.model.d(), 0.0);
    }

    #[test]
    fn fit_zero_data_gives_zero_model() {
        let data: Vec<_> = (0..10)
            .map(|k| StressStrainSample::new(0.3 * k as f64, 0.0))
            .collect();
        let report = fit_mooney_rivlin(&data).unwrap();
        assert!(report.model.coefficients().iter().all(|c| *c == 0.0));
        assert_eq!(report.residual_norm, 0.0);
    }

    #[test]
    fn fit_rejects_short_data() {
        let data = synthetic(&table_one(), 3, 1.0, 2.0);
        assert_eq!(
            fit_mooney_rivlin(&data).unwrap_err(),
            Error::InsufficientData {
                required: 6,
                got: 3
            }
        );
    }

    #[test]
    fn fit_rejects_equal_strains_as_ill_conditioned() {
        let data = vec![StressStrainSample::new(0.5, 1.0); 8];
        assert!(matches!(
            fit_mooney_rivlin(&data),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn fit_rejects_unordered_strain() {
        let mut data = synthetic(&table_one(), 10, 1.0, 3.0);
        data.swap(3, 4);
        assert!(matches!(fit_mooney_rivlin(&data), Err(Error::Validation(_))));
    }

    #[test]
    fn fit_flags_negative_slope() {
        // Negative c20 eventually overturns the c10 term.
        let softening = MooneyRivlinModel::new(1.0, 0.0, 0.0, -0.05, 0.0, 0.0).unwrap();
        let data = synthetic(&softening, 40, 1.0, 6.0);
        let report = fit_mooney_rivlin(&data).unwrap();
        assert!(report.negative_slope_at.is_some());
        let stiffening = synthetic(&table_one(), 40, 1.0, 6.0);
        assert_eq!(fit_mooney_rivlin(&stiffening).unwrap().negative_slope_at, None);
    }
}

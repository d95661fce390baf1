//! Equivalent-connector reduction of one fold.
//!
//! A fold is lumped into a rectangular connector of half-pitch `x_e`,
//! height `h_e` and wall thickness `t_e`. Strain energy is stored in four
//! walls (two side walls, top, bottom) and acts at the volume-weighted
//! centroid height `h_ee` above the bottom layer.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result, Violation};

/// Raw fold cross-section dimensions, lengths in mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectorGeometry {
    /// Plate short span `a`.
    pub a: f64,
    /// Plate long span `b`.
    pub b: f64,
    /// Connector length `l_c`.
    pub l_c: f64,
    /// Connector height `h1`.
    pub h1: f64,
    /// Vertical wall thickness.
    pub t_w: f64,
    /// Top wall thickness.
    pub t_c: f64,
    /// Aspect-ratio exponent applied to the numeric value of `a/2` in mm.
    pub alpha: f64,
    /// Overall section height `H1`.
    pub section_height: f64,
}

/// Dimensions of the lumped connector plus wall volumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalentConnector {
    pub x_e: f64,
    pub h_e: f64,
    pub t_e: f64,
    /// Energy-centroid height above the bottom layer, mm.
    pub h_ee: f64,
    /// Volume of one side wall, mm^3.
    pub v_s: f64,
    pub v_t: f64,
    pub v_b: f64,
    /// Total energy-storing volume `2 v_s + v_t + v_b`.
    pub v_tt: f64,
}

impl ConnectorGeometry {
    /// Lists every violated constraint; empty when the geometry is usable.
    pub fn violations(&self) -> Vec<Violation> {
        let mut bad = Vec::new();
        for (field, value) in [
            ("a", self.a),
            ("b", self.b),
            ("l_c", self.l_c),
            ("h1", self.h1),
            ("t_w", self.t_w),
            ("t_c", self.t_c),
            ("H1", self.section_height),
        ] {
            if !(value.is_finite() && value > 0.0) {
                bad.push(Violation::new(field, format!("must be a positive length (got {value})")));
            }
        }
        if self.a > 0.0 && self.b < self.a {
            bad.push(Violation::new("b", format!("must be >= a (b = {}, a = {})", self.b, self.a)));
        }
        if self.h1 > 0.0 && !(self.section_height > self.h1) {
            bad.push(Violation::new(
                "H1",
                format!("must exceed h1 (H1 = {}, h1 = {})", self.section_height, self.h1),
            ));
        }
        if !(0.0..=3.0).contains(&self.alpha) {
            bad.push(Violation::new("alpha", format!("must lie in [0, 3] (got {})", self.alpha)));
        }
        bad
    }

    pub fn validate(&self) -> Result<()> {
        let bad = self.violations();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(bad))
        }
    }

    /// Multiplies every length by `s`, leaving `alpha` alone.
    pub fn scaled(&self, s: f64) -> Self {
        ConnectorGeometry {
            a: self.a * s,
            b: self.b * s,
            l_c: self.l_c * s,
            h1: self.h1 * s,
            t_w: self.t_w * s,
            t_c: self.t_c * s,
            alpha: self.alpha,
            section_height: self.section_height * s,
        }
    }
}

/// Wall plates as `(volume, centroid height)`. Side walls span the
/// connector height; the top plate sits at `h1`; the bottom plate is the
/// reference layer at height 0.
fn walls(geom: &ConnectorGeometry, depth: f64) -> [(f64, f64); 4] {
    let side = geom.a * geom.h1 * geom.t_w;
    let top = geom.a * depth * geom.t_c;
    let bottom = geom.a * depth * geom.t_c;
    [
        (side, geom.h1 / 2.0),
        (side, geom.h1 / 2.0),
        (top, geom.h1),
        (bottom, 0.0),
    ]
}

/// Volume-weighted centroid height of a set of `(volume, height)` plates.
pub fn energy_centroid(plates: &[(f64, f64)]) -> f64 {
    let volume: f64 = plates.iter().map(|p| p.0).sum();
    let moment: f64 = plates.iter().map(|p| p.0 * p.1).sum();
    moment / volume
}

pub fn equivalent_connector(geom: &ConnectorGeometry, depth: f64) -> Result<EquivalentConnector> {
    let mut bad = geom.violations();
    if !(depth.is_finite() && depth > 0.0) {
        bad.push(Violation::new("depth", format!("must be a positive length (got {depth})")));
    }
    if !bad.is_empty() {
        return Err(Error::Validation(bad));
    }

    let x_e = geom.a / 2.0 + geom.l_c;
    let h_e = geom.a / geom.b * (geom.h1 + libm::pow(geom.a / 2.0, geom.alpha));
    let t_e = (geom.t_w + geom.t_c) / 2.0;
    let plates = walls(geom, depth);
    let v_s = plates[0].0;
    let v_t = plates[2].0;
    let v_b = plates[3].0;
    Ok(EquivalentConnector {
        x_e,
        h_e,
        t_e,
        h_ee: energy_centroid(&plates),
        v_s,
        v_t,
        v_b,
        v_tt: 2.0 * v_s + v_t + v_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn fixture() -> ConnectorGeometry {
        ConnectorGeometry {
            a: 6.0,
            b: 14.0,
            l_c: 2.0,
            h1: 10.0,
            t_w: 1.2,
            t_c: 1.2,
            alpha: 0.6,
            section_height: 16.0,
        }
    }

    #[test]
    fn fixture_dimensions() {
        let eq = equivalent_connector(&fixture(), 14.0).unwrap();
        assert_eq!(eq.x_e, 5.0);
        assert!((eq.t_e - 1.2).abs() < 1e-15);
        // (6/14)(10 + 3^0.6), 40-digit reference.
        assert!((eq.h_e - 5.114_220_876_399_327).abs() < 1e-14, "{}", eq.h_e);
        // Side walls 72 mm^3 at 5 mm, top and bottom 100.8 mm^3 at 10 and 0 mm.
        assert!((eq.v_s - 72.0).abs() < 1e-12);
        assert!((eq.v_t - 100.8).abs() < 1e-12);
        assert!((eq.h_ee - 5.0).abs() < 1e-12, "{}", eq.h_ee);
        assert!(eq.h_ee <= fixture().section_height);
    }

    #[test]
    fn total_volume_identity() {
        let eq = equivalent_connector(&fixture(), 9.5).unwrap();
        assert_eq!(eq.v_tt, 2.0 * eq.v_s + eq.v_t + eq.v_b);
    }

    #[test]
    fn violations_name_each_field() {
        let mut g = fixture();
        g.a = -1.0;
        g.section_height = 5.0;
        g.alpha = 4.0;
        let err = equivalent_connector(&g, 0.0).unwrap_err();
        let Error::Validation(v) = err else { panic!() };
        let fields: Vec<_> = v.iter().map(|x| x.field).collect();
        assert!(fields.contains(&"a"));
        assert!(fields.contains(&"H1"));
        assert!(fields.contains(&"alpha"));
        assert!(fields.contains(&"depth"));
    }

    #[test]
    fn b_shorter_than_a_rejected() {
        let mut g = fixture();
        g.b = 5.0;
        assert!(g.validate().is_err());
    }

    #[test]
    fn h_e_scales_linearly_when_alpha_is_one() {
        let mut g = fixture();
        g.alpha = 1.0;
        let base = equivalent_connector(&g, 14.0).unwrap();
        let big = equivalent_connector(&g.scaled(2.5), 35.0).unwrap();
        assert!((big.h_e - 2.5 * base.h_e).abs() < 1e-12);
    }

    #[test]
    fn centroid_ignores_plate_order() {
        let plates = walls(&fixture(), 14.0);
        let mut swapped = plates;
        swapped.swap(0, 1);
        swapped.swap(2, 3);
        assert_eq!(energy_centroid(&plates), energy_centroid(&swapped));
    }

    proptest! {
        #[test]
        fn lengths_scale_consistently(s in 0.1f64..10.0, depth in 1.0f64..40.0) {
            let g = fixture();
            let base = equivalent_connector(&g, depth).unwrap();
            let scaled = equivalent_connector(&g.scaled(s), depth * s).unwrap();
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * y.abs().max(1.0);
            prop_assert!(close(scaled.x_e, s * base.x_e));
            prop_assert!(close(scaled.t_e, s * base.t_e));
            prop_assert!(close(scaled.h_ee, s * base.h_ee));
            let s3 = s * s * s;
            prop_assert!(close(scaled.v_tt, s3 * base.v_tt));
            prop_assert!(close(scaled.v_s, s3 * base.v_s));
        }
    }
}

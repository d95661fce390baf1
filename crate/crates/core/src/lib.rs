//! Modelling toolkit for fold-based pneumatic soft bending actuators.
//!
//! * [`material`]: incompressible Mooney-Rivlin strain energy, stresses and
//!   least-squares fitting from tensile data.
//! * [`geometry`]: equivalent-connector reduction of a fold's cross-section.
//! * [`bending`]: energy-balance equilibrium between pressure work and wall
//!   strain energy, giving the bending angle as a function of pressure.
//! * [`vel`]: variable-effective-length constraint masks, backbone
//!   reconstruction and conformity search against target contours.
//!
//! Units are millimetre, newton and megapascal throughout, except that
//! pressures enter the bending API in kPa.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bending;
pub mod error;
pub mod geometry;
mod lstsq;
pub mod material;
pub mod vel;

pub use bending::{ActuatorConfig, AnglePoint, BendingState, Calibration};
pub use error::{Error, Result, Violation};
pub use geometry::{ConnectorGeometry, EquivalentConnector};
pub use material::{FitReport, MooneyRivlinModel, StrainInvariants, StressStrainSample};
pub use vel::{BackboneShape, ContourProfile, ConformityScore, Point, Pose, SegmentMask};

//! Variable effective length.
//!
//! A tendon locks a chosen subset of folds straight. The remaining active
//! folds each bend through the same angle `phi`, so the finger backbone is
//! a chain of straight segments and circular arcs of equal length. This
//! module reconstructs that backbone, scores it against a target contour
//! and searches all masks exhaustively for the best fit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::bending::{ActuatorConfig, BendingState};
use crate::error::{Error, Result};

/// Largest fold count accepted by [`optimize_mask`].
pub const MAX_EXHAUSTIVE_FOLDS: usize = 24;

pub const DEFAULT_STATIONS: usize = 200;

pub const DEFAULT_EPSILON_MM: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }
}

/// Planar position with heading (rad, counter-clockwise from +x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

/// Per-fold constraint pattern, proximal first. `true` folds bend freely,
/// `false` folds are held straight by the tendon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegmentMask(Vec<bool>);

impl SegmentMask {
    pub fn new(active: Vec<bool>) -> Self {
        SegmentMask(active)
    }

    pub fn all_active(n: usize) -> Self {
        SegmentMask(alloc::vec![true; n])
    }

    pub fn all_constrained(n: usize) -> Self {
        SegmentMask(alloc::vec![false; n])
    }

    /// Parses `1`/`0` notation, e.g. `0000000111`.
    pub fn parse(bits: &str) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::invalid("mask", "must not be empty"));
        }
        bits.chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(Error::invalid(
                    "mask",
                    format!("unexpected character {other:?}; use only 0 and 1"),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(SegmentMask)
    }

    /// Mask whose fold `i` (proximal first) is bit `n - 1 - i` of `bits`,
    /// so that numeric order equals string order.
    pub fn from_bits(bits: u32, n: usize) -> Self {
        SegmentMask((0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn active(&self) -> &[bool] {
        &self.0
    }

    pub fn active_count(&self) -> usize {
        self.0.iter().filter(|a| **a).count()
    }

    pub fn constrained_count(&self) -> usize {
        self.len() - self.active_count()
    }
}

impl fmt::Display for SegmentMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|a| if *a { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

/// Reconstructed finger centreline.
#[derive(Debug, Clone, PartialEq)]
pub struct BackboneShape {
    /// Fold boundaries, base first; `n_folds + 1` entries.
    pub vertices: Vec<Pose>,
    /// Arc length of each fold, mm.
    pub segment_pitch: f64,
    /// Turning angle of an active fold, rad.
    pub phi: f64,
    pub mask: SegmentMask,
}

/// Target object outline as an ordered polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourProfile {
    points: Vec<Point>,
    segments: Vec<Segment>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Segment {
    start: Point,
    dir: Point,
    inv_len_sq: f64,
}

impl Segment {
    fn new(a: Point, b: Point) -> Self {
        let dir = b.sub(a);
        Segment {
            start: a,
            dir,
            inv_len_sq: 1.0 / (dir.x * dir.x + dir.y * dir.y),
        }
    }

    fn distance_sq(&self, p: Point) -> f64 {
        let ap = p.sub(self.start);
        let t = ((ap.x * self.dir.x + ap.y * self.dir.y) * self.inv_len_sq).clamp(0.0, 1.0);
        let ex = ap.x - t * self.dir.x;
        let ey = ap.y - t * self.dir.y;
        ex * ex + ey * ey
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformityScore {
    /// Fraction of backbone stations within epsilon of the contour.
    pub contact_ratio: f64,
    /// RMS station-to-contour distance, mm.
    pub rms_distance: f64,
    /// Number of stations within epsilon.
    pub contacts: usize,
    pub stations: usize,
}

/// End point of an arc of length `len` turning through `turn`, starting at
/// `start` with heading `heading`. Uses the chord form so that tiny turns
/// do not cancel catastrophically.
fn advance(start: Point, heading: f64, len: f64, turn: f64) -> Point {
    let half = turn / 2.0;
    let chord = if half == 0.0 {
        len
    } else {
        len * libm::sin(half) / half
    };
    let dir = heading + half;
    Point::new(start.x + chord * libm::cos(dir), start.y + chord * libm::sin(dir))
}

impl BackboneShape {
    pub fn n_folds(&self) -> usize {
        self.mask.len()
    }

    pub fn total_length(&self) -> f64 {
        self.n_folds() as f64 * self.segment_pitch
    }

    pub fn tip(&self) -> Pose {
        self.vertices[self.vertices.len() - 1]
    }

    /// Point at arc length `s` from the base, clamped to the backbone.
    pub fn point_at(&self, s: f64) -> Point {
        let n = self.n_folds();
        let s = s.clamp(0.0, self.total_length());
        let fold = libm::floor(s / self.segment_pitch) as usize;
        let fold = fold.min(n - 1);
        let local = s - fold as f64 * self.segment_pitch;
        let start = self.vertices[fold];
        let turn = if self.mask.0[fold] {
            self.phi * local / self.segment_pitch
        } else {
            0.0
        };
        advance(Point::new(start.x, start.y), start.heading, local, turn)
    }

    /// `count` stations at uniform arc-length spacing, both ends included.
    pub fn sample(&self, count: usize) -> Vec<Point> {
        let count = count.max(2);
        let total = self.total_length();
        (0..count)
            .map(|k| self.point_at(total * k as f64 / (count - 1) as f64))
            .collect()
    }
}

/// Builds the backbone for `mask` at the per-fold angle of `state`.
pub fn backbone_shape(
    cfg: &ActuatorConfig,
    state: &BendingState,
    mask: &SegmentMask,
    pitch: f64,
) -> Result<BackboneShape> {
    if mask.len() != cfg.n_folds {
        return Err(Error::invalid(
            "mask",
            format!("has {} folds but the actuator has {}", mask.len(), cfg.n_folds),
        ));
    }
    if !(pitch.is_finite() && pitch > 0.0) {
        return Err(Error::invalid("pitch", format!("must be positive (got {pitch})")));
    }
    let phi = state.phi;
    let mut vertices = Vec::with_capacity(mask.len() + 1);
    let mut at = Point::new(0.0, 0.0);
    let mut heading = 0.0;
    let mut bent = 0usize;
    vertices.push(Pose {
        x: 0.0,
        y: 0.0,
        heading: 0.0,
    });
    for &active in &mask.0 {
        let turn = if active { phi } else { 0.0 };
        at = advance(at, heading, pitch, turn);
        if active {
            bent += 1;
        }
        // Heading from the count keeps the total turn exactly bent * phi.
        heading = bent as f64 * phi;
        vertices.push(Pose {
            x: at.x,
            y: at.y,
            heading,
        });
    }
    Ok(BackboneShape {
        vertices,
        segment_pitch: pitch,
        phi,
        mask: mask.clone(),
    })
}

impl ContourProfile {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid(
                "contour",
                format!("needs at least 2 points (got {})", points.len()),
            ));
        }
        for (k, w) in points.windows(2).enumerate() {
            if !(w[0].x.is_finite() && w[0].y.is_finite() && w[1].x.is_finite() && w[1].y.is_finite())
            {
                return Err(Error::invalid("contour", format!("point {k} is not finite")));
            }
            if w[0] == w[1] {
                return Err(Error::invalid(
                    "contour",
                    format!("points {k} and {} coincide", k + 1),
                ));
            }
        }
        let segments = points.windows(2).map(|w| Segment::new(w[0], w[1])).collect();
        Ok(ContourProfile { points, segments })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn arc_length(&self) -> f64 {
        self.points.windows(2).map(|w| w[1].sub(w[0]).norm()).sum()
    }

    /// Distance from `p` to the nearest point on the polyline.
    pub fn distance(&self, p: Point) -> f64 {
        let sq = self
            .segments
            .iter()
            .map(|s| s.distance_sq(p))
            .fold(f64::INFINITY, f64::min);
        libm::sqrt(sq)
    }
}

/// Rigidly maps stations so the first station lands on the contour start
/// and the first station chord aligns with the first contour chord.
fn align(stations: &[Point], contour: &ContourProfile) -> Vec<Point> {
    let c0 = contour.points[0];
    let c1 = contour.points[1];
    let s0 = stations[0];
    let s1 = stations[1];
    let rot = libm::atan2(c1.y - c0.y, c1.x - c0.x) - libm::atan2(s1.y - s0.y, s1.x - s0.x);
    let (sin, cos) = (libm::sin(rot), libm::cos(rot));
    stations
        .iter()
        .map(|p| {
            let q = p.sub(s0);
            Point::new(c0.x + cos * q.x - sin * q.y, c0.y + sin * q.x + cos * q.y)
        })
        .collect()
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("epsilon", format!("must be positive (got {epsilon})")))
    }
}

/// [`conformity_score_with`] at [`DEFAULT_STATIONS`] stations.
pub fn conformity_score(
    shape: &BackboneShape,
    contour: &ContourProfile,
    epsilon: f64,
) -> Result<ConformityScore> {
    conformity_score_with(shape, contour, epsilon, DEFAULT_STATIONS)
}

/// Scores how closely the backbone, aligned to the contour's start, follows
/// the contour.
pub fn conformity_score_with(
    shape: &BackboneShape,
    contour: &ContourProfile,
    epsilon: f64,
    stations: usize,
) -> Result<ConformityScore> {
    check_epsilon(epsilon)?;
    if stations < 2 {
        return Err(Error::invalid("stations", "need at least 2"));
    }
    Ok(score_aligned(&align(&shape.sample(stations), contour), contour, epsilon))
}

fn score_aligned(stations: &[Point], contour: &ContourProfile, epsilon: f64) -> ConformityScore {
    let mut contacts = 0usize;
    let mut sq = 0.0;
    for &p in stations {
        let d = contour.distance(p);
        if d <= epsilon {
            contacts += 1;
        }
        sq += d * d;
    }
    ConformityScore {
        contact_ratio: contacts as f64 / stations.len() as f64,
        rms_distance: libm::sqrt(sq / stations.len() as f64),
        contacts,
        stations: stations.len(),
    }
}

/// Total order used to rank masks: higher contact first, then lower RMS,
/// then fewer constrained folds, then the lexicographically smaller mask.
pub fn rank(a: (&SegmentMask, &ConformityScore), b: (&SegmentMask, &ConformityScore)) -> Ordering {
    b.1.contacts
        .cmp(&a.1.contacts)
        .then(a.1.rms_distance.total_cmp(&b.1.rms_distance))
        .then(a.0.constrained_count().cmp(&b.0.constrained_count()))
        .then_with(|| a.0 .0.cmp(&b.0 .0))
}

/// Scores all `2^n` masks and returns the best under [`rank`].
pub fn optimize_mask(
    cfg: &ActuatorConfig,
    state: &BendingState,
    contour: &ContourProfile,
    pitch: f64,
    epsilon: f64,
) -> Result<(SegmentMask, ConformityScore)> {
    let n = cfg.n_folds;
    if n > MAX_EXHAUSTIVE_FOLDS {
        return Err(Error::TooManyFolds {
            n_folds: n,
            max: MAX_EXHAUSTIVE_FOLDS,
        });
    }
    check_epsilon(epsilon)?;
    let mut best: Option<(SegmentMask, ConformityScore)> = None;
    for bits in 0..(1u32 << n) {
        let mask = SegmentMask::from_bits(bits, n);
        let shape = backbone_shape(cfg, state, &mask, pitch)?;
        let score = conformity_score(&shape, contour, epsilon)?;
        let better = match &best {
            None => true,
            Some((m, s)) => rank((&mask, &score), (m, s)) == Ordering::Less,
        };
        if better {
            best = Some((mask, score));
        }
    }
    Ok(best.expect("at least one mask is enumerated"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConnectorGeometry;
    use crate::material::MooneyRivlinModel;
    use core::f64::consts::PI;

    fn cfg(n: usize) -> ActuatorConfig {
        ActuatorConfig::new(
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
            MooneyRivlinModel::ninjaflex(),
            n,
            140.0,
        )
    }

    fn state_with_phi(phi: f64) -> BendingState {
        BendingState {
            pressure_kpa: 1.0,
            lambda_star: 1.0,
            phi,
            theta: 0.0,
            residual: 0.0,
            radius: f64::INFINITY,
        }
    }

    #[test]
    fn mask_notation() {
        let m = SegmentMask::parse("0000000111").unwrap();
        assert_eq!(m.len(), 10);
        assert_eq!(m.active_count(), 3);
        assert_eq!(m.to_string(), "0000000111");
        assert_eq!(SegmentMask::from_bits(0b0000000111, 10), m);
        assert!(SegmentMask::parse("01a").is_err());
        assert!(SegmentMask::parse("").is_err());
    }

    #[test]
    fn all_constrained_is_straight() {
        let shape =
            backbone_shape(&cfg(10), &state_with_phi(0.3), &SegmentMask::all_constrained(10), 4.0)
                .unwrap();
        let tip = shape.tip();
        assert_eq!((tip.x, tip.y, tip.heading), (40.0, 0.0, 0.0));
    }

    #[test]
    fn full_circle() {
        let n = 12;
        let phi = 2.0 * PI / n as f64;
        let pitch = 5.0;
        let shape =
            backbone_shape(&cfg(n), &state_with_phi(phi), &SegmentMask::all_active(n), pitch)
                .unwrap();
        let r = pitch / phi;
        assert!((shape.tip().heading - 2.0 * PI).abs() < 1e-15);
        // Circle centre at (0, r) for a left turn from the origin.
        for v in &shape.vertices {
            let d = libm::hypot(v.x, v.y - r);
            assert!((d - r).abs() < 1e-9, "{d} vs {r}");
        }
        assert!(shape.tip().x.abs() < 1e-9 && shape.tip().y.abs() < 1e-9);
    }

    #[test]
    fn distal_bending_keeps_proximal_straight() {
        let mask = SegmentMask::parse("0000000111").unwrap();
        let shape = backbone_shape(&cfg(10), &state_with_phi(0.2), &mask, 3.0).unwrap();
        let v7 = shape.vertices[7];
        assert_eq!((v7.x, v7.y, v7.heading), (21.0, 0.0, 0.0));
        assert!(shape.tip().y > 0.0);
        assert_eq!(shape.tip().heading, 3.0 * 0.2);
    }

    #[test]
    fn mask_length_mismatch() {
        let err = backbone_shape(&cfg(10), &state_with_phi(0.1), &SegmentMask::all_active(9), 3.0);
        assert!(matches!(err, Err(Error::Validation(_))));
    }

    #[test]
    fn self_conformity_is_perfect() {
        let shape = backbone_shape(
            &cfg(10),
            &state_with_phi(0.15),
            &SegmentMask::parse("1101101011").unwrap(),
            6.0,
        )
        .unwrap();
        let contour = ContourProfile::new(shape.sample(DEFAULT_STATIONS)).unwrap();
        let score = conformity_score(&shape, &contour, 2.0).unwrap();
        assert_eq!(score.contact_ratio, 1.0);
        assert_eq!(score.rms_distance, 0.0);
    }

    #[test]
    fn contour_validation() {
        assert!(ContourProfile::new(alloc::vec![Point::new(0.0, 0.0)]).is_err());
        assert!(ContourProfile::new(alloc::vec![Point::new(1.0, 1.0), Point::new(1.0, 1.0)]).is_err());
        let c = ContourProfile::new(alloc::vec![Point::new(0.0, 0.0), Point::new(3.0, 4.0)]).unwrap();
        assert_eq!(c.arc_length(), 5.0);
    }

    #[test]
    fn epsilon_must_be_positive() {
        let shape =
            backbone_shape(&cfg(3), &state_with_phi(0.1), &SegmentMask::all_active(3), 3.0).unwrap();
        let c = ContourProfile::new(alloc::vec![Point::new(0.0, 0.0), Point::new(3.0, 0.0)]).unwrap();
        assert!(conformity_score(&shape, &c, 0.0).is_err());
        assert!(conformity_score(&shape, &c, -1.0).is_err());
    }

    #[test]
    fn too_many_folds() {
        let c = ContourProfile::new(alloc::vec![Point::new(0.0, 0.0), Point::new(3.0, 0.0)]).unwrap();
        let err = optimize_mask(&cfg(25), &state_with_phi(0.1), &c, 3.0, 2.0).unwrap_err();
        assert_eq!(
            err,
            Error::TooManyFolds {
                n_folds: 25,
                max: 24
            }
        );
    }

    #[test]
    fn rank_tie_breaks() {
        let s = ConformityScore {
            contact_ratio: 1.0,
            rms_distance: 0.5,
            contacts: 10,
            stations: 10,
        };
        let a = SegmentMask::parse("011").unwrap();
        let b = SegmentMask::parse("101").unwrap();
        let c = SegmentMask::parse("111").unwrap();
        assert_eq!(rank((&a, &s), (&b, &s)), Ordering::Less);
        assert_eq!(rank((&c, &s), (&a, &s)), Ordering::Less);
        let closer = ConformityScore {
            rms_distance: 0.4,
            ..s
        };
        assert_eq!(rank((&a, &closer), (&c, &s)), Ordering::Less);
    }
}

//! Fibre centreline paths and their unit-tangent traces on the sphere.
//!
//! A [`FiberPath`] is a uniformly indexed polyline. Tangents are estimated with
//! seven-point finite-difference stencils: centred in the interior, shifted
//! toward the interior at the ends of an open path, and centred everywhere on a
//! path whose tangent is declared closed. A closed-tangent curve repeats up to a
//! translation (a helix rises by its pitch each turn), so samples beyond either
//! end are synthesised as `p[k mod m] + floor(k / m) * (p_last - p_first)`.

use std::f64::consts::{PI, TAU};

use nalgebra::{Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Smallest accepted `samples_per_turn` for a helix.
pub const MIN_SAMPLES_PER_TURN: u32 = 16;

const STENCIL_WIDTH: usize = 7;

/// Trace construction tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    /// Largest first-to-last direction gap (radians) accepted as closed.
    pub closure_tolerance: f64,
    /// Samples with polar angle within this distance of 0 or π are rejected.
    pub pole_guard: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            closure_tolerance: 1e-6,
            pole_guard: 1e-9,
        }
    }
}

impl TraceOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.closure_tolerance >= 0.0 && self.closure_tolerance.is_finite()) {
            return Err(Error::Validation(format!(
                "closure tolerance must be finite and non-negative, got {}",
                self.closure_tolerance
            )));
        }
        if !(self.pole_guard >= 0.0 && self.pole_guard < PI / 2.0) {
            return Err(Error::Validation(format!(
                "pole guard must lie in [0, pi/2), got {}",
                self.pole_guard
            )));
        }
        Ok(())
    }
}

/// Discretised fibre centreline, in metres.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberPath {
    points: Vec<Vec3>,
    closed_tangent: bool,
}

impl FiberPath {
    pub fn new(points: Vec<Vec3>, closed_tangent: bool) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::Validation(format!(
                "a fibre path needs at least 4 points, got {}",
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(Error::Validation(format!("point {i} is not finite")));
        }
        for (i, w) in points.windows(2).enumerate() {
            if w[1] == w[0] {
                return Err(Error::ZeroLengthSegment { index: i });
            }
        }
        for (i, w) in points.windows(3).enumerate() {
            let a = w[1] - w[0];
            let b = w[2] - w[1];
            let scale = a.norm() * b.norm();
            if a.dot(&b) < 0.0 && a.cross(&b).norm() <= 1e-12 * scale {
                return Err(Error::AntiparallelSegments { index: i + 1 });
            }
        }
        Ok(Self {
            points,
            closed_tangent,
        })
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn closed_tangent(&self) -> bool {
        self.closed_tangent
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Rigidly moves every point.
    pub fn transformed(&self, rotation: &Rotation3<f64>, offset: &Vec3) -> Self {
        Self {
            points: self.points.iter().map(|p| rotation * p + offset).collect(),
            closed_tangent: self.closed_tangent,
        }
    }
}

/// Parameters of a circular helix wound about the +z axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HelixSpec {
    /// Metres, > 0.
    pub radius: f64,
    /// Rise per turn in metres, >= 0.
    pub pitch: f64,
    pub turns: u32,
    pub samples_per_turn: u32,
}

impl HelixSpec {
    /// Helix of the given radius whose tangent keeps polar angle `theta` in (0, π/2].
    pub fn with_polar_angle(
        radius: f64,
        theta: f64,
        turns: u32,
        samples_per_turn: u32,
    ) -> Result<Self> {
        if !(theta > 0.0 && theta <= PI / 2.0) {
            return Err(Error::Domain(format!(
                "helix polar angle must lie in (0, pi/2], got {theta}"
            )));
        }
        let pitch = if theta == PI / 2.0 {
            0.0
        } else {
            TAU * radius * theta.cos() / theta.sin()
        };
        let spec = Self {
            radius,
            pitch,
            turns,
            samples_per_turn,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::Validation(format!(
                "helix radius must be positive and finite, got {}",
                self.radius
            )));
        }
        if !(self.pitch >= 0.0 && self.pitch.is_finite()) {
            return Err(Error::Validation(format!(
                "helix pitch must be non-negative and finite, got {}",
                self.pitch
            )));
        }
        if self.turns == 0 {
            return Err(Error::Validation("helix needs at least one turn".into()));
        }
        if self.samples_per_turn < MIN_SAMPLES_PER_TURN {
            return Err(Error::Validation(format!(
                "samples_per_turn must be at least {MIN_SAMPLES_PER_TURN}, got {}",
                self.samples_per_turn
            )));
        }
        Ok(())
    }

    /// Polar angle of the tangent, constant along the helix.
    pub fn polar_angle(&self) -> f64 {
        let circumference = TAU * self.radius;
        (self.pitch / self.pitch.hypot(circumference)).acos()
    }
}

/// Samples `x(t) = (R cos t, R sin t, pitch t / 2π)` for `t` in `[0, 2π turns]`.
pub fn helix_to_path(spec: &HelixSpec) -> Result<FiberPath> {
    spec.validate()?;
    let per_turn = spec.samples_per_turn as usize;
    let total = spec.turns as usize * per_turn;
    let points = (0..=total)
        .map(|j| {
            // reduce within a turn before scaling so that t stays accurate
            let phase = TAU * (j % per_turn) as f64 / per_turn as f64;
            let rise = spec.pitch * j as f64 / per_turn as f64;
            Vec3::new(spec.radius * phase.cos(), spec.radius * phase.sin(), rise)
        })
        .collect();
    FiberPath::new(points, true)
}

/// Polar and unwrapped azimuthal angle of a trace sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spherical {
    pub theta: f64,
    pub phi: f64,
}

/// Unit tangents of a path, read as a curve on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentTrace {
    directions: Vec<Vec3>,
    spherical: Vec<Spherical>,
    closure_gap: f64,
    options: TraceOptions,
}

impl TangentTrace {
    /// Builds a trace from raw directions, normalising each one.
    ///
    /// Unlike [`tangent_trace`] this accepts samples at or near the poles; their
    /// azimuth is carried over from the previous sample.
    pub fn from_directions(directions: Vec<Vec3>, options: TraceOptions) -> Result<Self> {
        options.validate()?;
        if directions.is_empty() {
            return Err(Error::Validation(
                "a tangent trace needs at least one direction".into(),
            ));
        }
        let mut unit = Vec::with_capacity(directions.len());
        for (index, d) in directions.into_iter().enumerate() {
            let norm = d.norm();
            if !(norm > 0.0 && norm.is_finite()) {
                return Err(Error::DegenerateTangent { index });
            }
            unit.push(d / norm);
        }
        let spherical = spherical_coordinates(&unit);
        let closure_gap = angle_between(&unit[0], &unit[unit.len() - 1]);
        Ok(Self {
            directions: unit,
            spherical,
            closure_gap,
            options,
        })
    }

    pub fn directions(&self) -> &[Vec3] {
        &self.directions
    }

    pub fn spherical(&self) -> &[Spherical] {
        &self.spherical
    }

    /// Angle between the first and last direction.
    pub fn closure_gap(&self) -> f64 {
        self.closure_gap
    }

    pub fn options(&self) -> TraceOptions {
        self.options
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_gap <= self.options.closure_tolerance
    }

    pub fn ensure_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::OpenTrace {
                gap: self.closure_gap,
                tolerance: self.options.closure_tolerance,
            })
        }
    }

    /// First sample inside the pole guard, if any.
    pub fn pole_sample(&self) -> Option<(usize, f64)> {
        let guard = self.options.pole_guard;
        self.spherical
            .iter()
            .enumerate()
            .find(|(_, s)| s.theta < guard || s.theta > PI - guard)
            .map(|(i, s)| (i, s.theta))
    }

    pub fn ensure_pole_free(&self) -> Result<()> {
        match self.pole_sample() {
            Some((index, theta)) => Err(Error::PoleProximity { index, theta }),
            None => Ok(()),
        }
    }

    /// Distinct vertices of the closed loop: the last sample is dropped when the
    /// trace is closed, since it repeats the first.
    pub fn loop_vertices(&self) -> &[Vec3] {
        if self.directions.len() > 1 && self.is_closed() {
            &self.directions[..self.directions.len() - 1]
        } else {
            &self.directions
        }
    }

    pub(crate) fn loop_spherical(&self) -> &[Spherical] {
        &self.spherical[..self.loop_vertices().len()]
    }

    /// The same trace traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut directions = self.directions.clone();
        directions.reverse();
        Self {
            spherical: spherical_coordinates(&directions),
            directions,
            closure_gap: self.closure_gap,
            options: self.options,
        }
    }

    /// Every direction rotated by `rotation`.
    pub fn rotated(&self, rotation: &Rotation3<f64>) -> Self {
        let directions: Vec<Vec3> = self.directions.iter().map(|d| rotation * d).collect();
        Self {
            spherical: spherical_coordinates(&directions),
            closure_gap: angle_between(&directions[0], &directions[directions.len() - 1]),
            directions,
            options: self.options,
        }
    }
}

/// Unit tangents of `path` by finite differences, with spherical coordinates.
///
/// For a closed-tangent path the closure is checked first with one-sided end
/// stencils; the returned trace then uses the periodic stencils throughout.
pub fn tangent_trace(path: &FiberPath, options: TraceOptions) -> Result<TangentTrace> {
    options.validate()?;
    let points = path.points();
    let n = points.len();
    let width = STENCIL_WIDTH.min(n);
    let table = StencilTable::new(width);

    let open_derivative = |i: usize| -> Vec3 {
        let start = i.saturating_sub(width / 2).min(n - width);
        let weights = table.weights(i - start);
        weights
            .iter()
            .zip(&points[start..start + width])
            .fold(Vec3::zeros(), |acc, (w, p)| acc + *w * p)
    };

    let derivatives: Vec<Vec3> = if path.closed_tangent() {
        let first = open_derivative(0);
        let last = open_derivative(n - 1);
        let gap = angle_between(&first, &last);
        if !(gap <= options.closure_tolerance) {
            return Err(Error::OpenTrace {
                gap,
                tolerance: options.closure_tolerance,
            });
        }
        let periodic = StencilTable::new(STENCIL_WIDTH);
        let weights = periodic.weights(STENCIL_WIDTH / 2);
        let period = n - 1;
        let drift = points[n - 1] - points[0];
        let extended = |k: isize| -> Vec3 {
            let m = period as isize;
            points[k.rem_euclid(m) as usize] + drift * k.div_euclid(m) as f64
        };
        let half = (STENCIL_WIDTH / 2) as isize;
        (0..n)
            .map(|i| {
                weights
                    .iter()
                    .enumerate()
                    .fold(Vec3::zeros(), |acc, (j, w)| {
                        acc + *w * extended(i as isize + j as isize - half)
                    })
            })
            .collect()
    } else {
        (0..n).map(open_derivative).collect()
    };

    let mut directions = Vec::with_capacity(n);
    for (index, d) in derivatives.into_iter().enumerate() {
        let norm = d.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::DegenerateTangent { index });
        }
        directions.push(d / norm);
    }
    let trace = TangentTrace::from_directions(directions, options)?;
    trace.ensure_pole_free()?;
    Ok(trace)
}

/// Angle in [0, π] between two non-zero vectors.
pub fn angle_between(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Wraps an angle into (−π, π].
pub fn wrap_angle(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

fn spherical_coordinates(directions: &[Vec3]) -> Vec<Spherical> {
    let mut out = Vec::with_capacity(directions.len());
    let mut prev_raw: Option<f64> = None;
    let mut phi = 0.0;
    for d in directions {
        let theta = d.x.hypot(d.y).atan2(d.z);
        if d.x != 0.0 || d.y != 0.0 {
            let raw = d.y.atan2(d.x);
            phi = match prev_raw {
                Some(prev) => phi + wrap_angle(raw - prev),
                None => raw,
            };
            prev_raw = Some(raw);
        }
        out.push(Spherical { theta, phi });
    }
    out
}

/// First-derivative weights on a uniform stencil `0..width`, one row per
/// evaluation node.
struct StencilTable {
    rows: Vec<Vec<f64>>,
}

impl StencilTable {
    fn new(width: usize) -> Self {
        let nodes: Vec<f64> = (0..width).map(|i| i as f64).collect();
        let rows = (0..width)
            .map(|at| first_derivative_weights(at as f64, &nodes))
            .collect();
        Self { rows }
    }

    fn weights(&self, at: usize) -> &[f64] {
        &self.rows[at]
    }
}

/// Fornberg's recursion for finite-difference weights, truncated at the first
/// derivative.
fn first_derivative_weights(z: f64, nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![[0.0f64; 2]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(1);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[1]).collect()
}

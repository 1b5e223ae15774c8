//! Signed solid angle enclosed by a closed tangent trace.
//!
//! Two quadratures evaluate the same accumulated quantity:
//!
//! * the line integral `Σ (1 − cos θ̄) Δφ`, midpoint polar angle per step;
//! * the geodesic-polygon excess, summed as signed triangles fanned from +z.
//!
//! Both carry an `O(h²)` discretisation bias on smooth curves, removed by one
//! Richardson step against the same sum over every second vertex. The spread
//! between the two resolutions is reported as the error estimate.
//!
//! Parallel transport of a tangent vector around the loop is an independent
//! oracle; it only sees the solid angle modulo 2π.
//!
//! Orientation: Ω > 0 when the trace circulates counterclockwise seen from
//! outside the sphere along +z. The accumulated branch (how many times 4π
//! has been added) is referenced to +z for both quadratures.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{angle_between, wrap_angle, Spherical, TangentTrace, Vec3};

/// Default modular agreement demanded between the transport oracle and Ω.
pub const HOLONOMY_TOLERANCE: f64 = 1e-6;

/// Fewer loop vertices than this and no extrapolation is attempted.
const MIN_RICHARDSON_VERTICES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolidAngleMethod {
    LineIntegral,
    SphericalExcess,
    ClosedFormHelix,
    ParallelTransport,
}

/// Accumulated signed solid angle, in steradians. Not reduced modulo 4π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolidAngle {
    pub omega: f64,
    pub method: SolidAngleMethod,
    pub estimated_error: f64,
}

/// `loops · 2π(1 − cos θ)`, the solid angle of a helix tangent trace.
pub fn solid_angle_closed_form(theta: f64, loops: u32) -> Result<SolidAngle> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta must lie in [0, pi], got {theta}"
        )));
    }
    if loops == 0 {
        return Err(Error::Domain("loops must be positive".into()));
    }
    let half = (0.5 * theta).sin();
    // 1 − cos θ = 2 sin²(θ/2), without cancellation near θ = 0
    let omega = loops as f64 * 2.0 * TAU * half * half;
    Ok(SolidAngle {
        omega,
        method: SolidAngleMethod::ClosedFormHelix,
        estimated_error: omega.abs() * f64::EPSILON,
    })
}

pub fn solid_angle_line_integral(trace: &TangentTrace) -> Result<SolidAngle> {
    trace.ensure_closed()?;
    trace.ensure_pole_free()?;
    check_spacing(trace)?;
    let sph = trace.loop_spherical();
    let (omega, estimated_error) = extrapolate(|stride| line_sum(sph, stride), sph.len());
    Ok(SolidAngle {
        omega,
        method: SolidAngleMethod::LineIntegral,
        estimated_error,
    })
}

pub fn solid_angle_spherical_excess(trace: &TangentTrace) -> Result<SolidAngle> {
    trace.ensure_closed()?;
    check_spacing(trace)?;
    let verts = trace.loop_vertices();
    let (omega, estimated_error) = extrapolate(|stride| excess_sum(verts, stride), verts.len());
    Ok(SolidAngle {
        omega,
        method: SolidAngleMethod::SphericalExcess,
        estimated_error,
    })
}

/// Net rotation, in (−π, π], of a tangent vector parallel-transported once
/// around the trace. Congruent to Ω modulo 2π.
pub fn parallel_transport_holonomy(trace: &TangentTrace) -> Result<f64> {
    trace.ensure_closed()?;
    let verts = trace.loop_vertices();
    let fine = transport_angle(verts, 1);
    if verts.len() < MIN_RICHARDSON_VERTICES {
        return Ok(fine);
    }
    let coarse = transport_angle(verts, 2);
    Ok(wrap_angle(fine + wrap_angle(fine - coarse) / 3.0))
}

/// Distance between two angles on the circle of circumference 2π.
pub fn modular_residual(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// All three evaluations of one trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckedSolidAngle {
    pub line_integral: SolidAngle,
    pub spherical_excess: SolidAngle,
    pub transport_holonomy: f64,
    /// `|Ω_line − holonomy|` reduced modulo 2π.
    pub holonomy_residual: f64,
}

impl CrossCheckedSolidAngle {
    /// The line integral is the primary value.
    pub fn primary(&self) -> SolidAngle {
        self.line_integral
    }
}

/// Evaluates the trace by every method and fails if they disagree.
///
/// The quadratures must agree within the sum of their estimated errors; the
/// oracle must match modulo 2π within `holonomy_tolerance` plus the line
/// integral's own estimated error. A trace too coarse for the oracle to reach
/// that tolerance fails here too.
pub fn cross_checked_solid_angle(
    trace: &TangentTrace,
    holonomy_tolerance: f64,
) -> Result<CrossCheckedSolidAngle> {
    let line = solid_angle_line_integral(trace)?;
    let excess = solid_angle_spherical_excess(trace)?;
    let holonomy = parallel_transport_holonomy(trace)?;

    let spread = (line.omega - excess.omega).abs();
    let allowed = line.estimated_error + excess.estimated_error;
    if !(spread <= allowed) {
        return Err(Error::MethodDisagreement(format!(
            "line integral {:.17e} and spherical excess {:.17e} differ by {spread:e} sr (allowed {allowed:e})",
            line.omega, excess.omega
        )));
    }
    let residual = modular_residual(line.omega, holonomy);
    let allowed = holonomy_tolerance + line.estimated_error;
    if !(residual <= allowed) {
        return Err(Error::MethodDisagreement(format!(
            "transport holonomy {holonomy:.17e} disagrees with solid angle {:.17e} mod 2pi by {residual:e} (allowed {allowed:e}); sample the path more densely",
            line.omega
        )));
    }
    Ok(CrossCheckedSolidAngle {
        line_integral: line,
        spherical_excess: excess,
        transport_holonomy: holonomy,
        holonomy_residual: residual,
    })
}

/// One Richardson step on a second-order sum. `sum(stride)` returns the value
/// and the sum of absolute terms.
fn extrapolate(sum: impl Fn(usize) -> (f64, f64), vertices: usize) -> (f64, f64) {
    let (fine, magnitude) = sum(1);
    let floor = 1e3 * f64::EPSILON * (1.0 + magnitude);
    if vertices < MIN_RICHARDSON_VERTICES {
        return (fine, fine.abs() + floor);
    }
    let (coarse, _) = sum(2);
    let correction = (fine - coarse) / 3.0;
    (fine + correction, correction.abs() + floor)
}

/// Indices of every `stride`-th loop vertex, closing back to vertex 0.
fn loop_edges(len: usize, stride: usize) -> impl Iterator<Item = (usize, usize)> {
    let last = (len - 1) / stride * stride;
    (0..len).step_by(stride).map(move |i| {
        let j = if i == last { 0 } else { i + stride };
        (i, j)
    })
}

fn line_sum(sph: &[Spherical], stride: usize) -> (f64, f64) {
    let mut total = 0.0;
    let mut magnitude = 0.0;
    for (i, j) in loop_edges(sph.len(), stride) {
        let (a, b) = (sph[i], sph[j]);
        // unwrapped azimuth within the loop; the closing step wraps
        let dphi = if j > i {
            b.phi - a.phi
        } else {
            wrap_angle(b.phi - a.phi)
        };
        let s = (0.25 * (a.theta + b.theta)).sin();
        let term = 2.0 * s * s * dphi;
        total += term;
        magnitude += term.abs();
    }
    (total, magnitude)
}

fn excess_sum(verts: &[Vec3], stride: usize) -> (f64, f64) {
    let mut total = 0.0;
    let mut magnitude = 0.0;
    for (i, j) in loop_edges(verts.len(), stride) {
        let term = pole_triangle_area(&verts[i], &verts[j]);
        total += term;
        magnitude += term.abs();
    }
    (total, magnitude)
}

/// Signed area of the geodesic triangle (+z, a, b).
fn pole_triangle_area(a: &Vec3, b: &Vec3) -> f64 {
    let numerator = a.cross(b).z;
    let denominator = 1.0 + a.z + b.z + a.dot(b);
    2.0 * numerator.atan2(denominator)
}

fn transport_angle(verts: &[Vec3], stride: usize) -> f64 {
    let start = verts[0];
    let seed = if start.x.abs() <= start.y.abs() && start.x.abs() <= start.z.abs() {
        Vec3::x()
    } else if start.y.abs() <= start.z.abs() {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let initial = (seed - seed.dot(&start) * start).normalize();
    let mut carried = initial;
    for (i, j) in loop_edges(verts.len(), stride) {
        let (a, b) = (verts[i], verts[j]);
        carried = rotate_along_geodesic(&a, &b, &carried);
        carried = (carried - carried.dot(&b) * b).normalize();
    }
    start
        .dot(&initial.cross(&carried))
        .atan2(initial.dot(&carried))
}

/// Applies the minimal rotation carrying unit `a` onto unit `b` to `v`.
fn rotate_along_geodesic(a: &Vec3, b: &Vec3, v: &Vec3) -> Vec3 {
    let axis = a.cross(b);
    let cos = a.dot(b);
    let first = axis.cross(v);
    v + first + axis.cross(&first) / (1.0 + cos)
}

fn check_spacing(trace: &TangentTrace) -> Result<()> {
    let verts = trace.loop_vertices();
    let limit = PI / 2.0;
    for (i, j) in loop_edges(verts.len(), 1) {
        let angle = angle_between(&verts[i], &verts[j]);
        if !(angle < limit) {
            return Err(Error::CoarseTrace {
                index: i,
                angle,
                limit,
            });
        }
    }
    Ok(())
}

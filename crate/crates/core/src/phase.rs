//! Geometric phases of circularly polarized photons from the enclosed solid angle.
//!
//! For occupations `n_L`, `n_R` and solid angle Ω:
//!
//! ```text
//! φ_L = −(n_L + ½) Ω        φ_R = +(n_R + ½) Ω
//! ```
//!
//! The `±Ω/2` parts are the vacuum phases; they cancel in the sum, leaving the
//! observed total `(n_R − n_L) Ω`.
//!
//! Every phase here is an integer multiple of Ω/2, and is carried exactly as
//! that integer ([`PhaseUnits`]). The radian values are `units · (Ω/2)`, a
//! single rounding of the exact product, so `φ_L` is bit-identical to
//! `−(n_L + ½)·Ω` and `φ_total` to `(n_R − n_L)·Ω`. The float sum
//! `φ_L + φ_R` rounds twice and may differ from `φ_total` in the last place.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::wrap_angle;

/// Sharp photon numbers in the two circular modes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhotonOccupation {
    pub n_left: u32,
    pub n_right: u32,
}

impl PhotonOccupation {
    pub const VACUUM: Self = Self {
        n_left: 0,
        n_right: 0,
    };

    pub fn new(n_left: u32, n_right: u32) -> Self {
        Self { n_left, n_right }
    }
}

/// Phases as exact multiples of Ω/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseUnits {
    pub left: i64,
    pub right: i64,
    pub vac_left: i64,
    pub vac_right: i64,
    pub total: i64,
}

impl PhaseUnits {
    pub fn new(occ: PhotonOccupation) -> Self {
        let left = -(2 * i64::from(occ.n_left) + 1);
        let right = 2 * i64::from(occ.n_right) + 1;
        Self {
            left,
            right,
            vac_left: -1,
            vac_right: 1,
            total: left + right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseResult {
    /// Steradians.
    pub omega: f64,
    pub phi_left: f64,
    pub phi_right: f64,
    pub phi_vac_left: f64,
    pub phi_vac_right: f64,
    pub phi_total: f64,
    pub units: PhaseUnits,
}

impl PhaseResult {
    fn from_units(units: PhaseUnits, omega: f64) -> Self {
        let half = 0.5 * omega;
        let at = |k: i64| k as f64 * half;
        Self {
            omega,
            phi_left: at(units.left),
            phi_right: at(units.right),
            phi_vac_left: at(units.vac_left),
            phi_vac_right: at(units.vac_right),
            phi_total: at(units.total),
            units,
        }
    }
}

pub fn geometric_phases(occ: PhotonOccupation, omega: f64) -> PhaseResult {
    PhaseResult::from_units(PhaseUnits::new(occ), omega)
}

/// `(φ_vac_left, φ_vac_right) = (−Ω/2, +Ω/2)`.
pub fn vacuum_phases(omega: f64) -> (f64, f64) {
    let r = geometric_phases(PhotonOccupation::VACUUM, omega);
    (r.phi_vac_left, r.phi_vac_right)
}

/// `(n_R − n_L) Ω`: the vacuum halves cancel.
pub fn total_observed_phase(occ: PhotonOccupation, omega: f64) -> f64 {
    geometric_phases(occ, omega).phi_total
}

/// Phase reduced into (−π, π] for display.
pub fn reduced_phase(phase: f64) -> f64 {
    wrap_angle(phase)
}

pub fn to_degrees(radians: f64) -> f64 {
    radians * (180.0 / PI)
}

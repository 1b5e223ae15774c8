//! Zero-point mode cutoff inside a sealed metallic chamber.
//!
//! A chamber whose smallest confining length is `a` supports no vacuum modes
//! with wave number below `k_min = c₀ π / a`, where `c₀` is an order-one
//! coefficient. A circular branch whose wave number stays below `k_min` over the
//! whole band, or which is evanescent, has no zero-point field.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gyrotropic::{
    circular_indices, wave_number, IndexBranch, MaterialModel, SPEED_OF_LIGHT,
};

/// Frequencies sampled across a band by default.
pub const DEFAULT_BAND_POINTS: usize = 1024;

/// Alternative cutoff coefficients evaluated alongside the configured one.
pub const SENSITIVITY_COEFFICIENTS: [f64; 2] = [0.5, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberGeometry {
    /// Smallest confining length, metres.
    pub a: f64,
    #[serde(default = "default_cutoff_coefficient")]
    pub cutoff_coefficient: f64,
}

fn default_cutoff_coefficient() -> f64 {
    1.0
}

impl ChamberGeometry {
    pub fn new(a: f64, cutoff_coefficient: f64) -> Result<Self> {
        let chamber = Self {
            a,
            cutoff_coefficient,
        };
        chamber.validate()?;
        Ok(chamber)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::Validation(format!(
                "chamber scale a must be positive and finite, got {}",
                self.a
            )));
        }
        if !(self.cutoff_coefficient > 0.0 && self.cutoff_coefficient.is_finite()) {
            return Err(Error::Validation(format!(
                "cutoff coefficient must be positive and finite, got {}",
                self.cutoff_coefficient
            )));
        }
        Ok(())
    }

    /// Lowest supported wave number, rad/m.
    pub fn k_min(&self) -> f64 {
        self.cutoff_coefficient * PI / self.a
    }

    pub fn with_coefficient(&self, cutoff_coefficient: f64) -> Self {
        Self {
            cutoff_coefficient,
            ..*self
        }
    }
}

/// Closed interval of optical angular frequencies, rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyBand {
    pub omega_min: f64,
    pub omega_max: f64,
}

impl FrequencyBand {
    pub fn new(omega_min: f64, omega_max: f64) -> Result<Self> {
        if !(omega_min > 0.0 && omega_min <= omega_max && omega_max.is_finite()) {
            return Err(Error::Domain(format!(
                "band must satisfy 0 < omega_min <= omega_max, got [{omega_min}, {omega_max}]"
            )));
        }
        Ok(Self {
            omega_min,
            omega_max,
        })
    }

    /// Band between two vacuum wavelengths in metres, via `ω = 2πc/λ`.
    pub fn from_vacuum_wavelengths(lambda_min: f64, lambda_max: f64) -> Result<Self> {
        if !(lambda_min > 0.0 && lambda_min <= lambda_max && lambda_max.is_finite()) {
            return Err(Error::Domain(format!(
                "wavelengths must satisfy 0 < lambda_min <= lambda_max, got [{lambda_min}, {lambda_max}]"
            )));
        }
        Self::new(
            TAU * SPEED_OF_LIGHT / lambda_max,
            TAU * SPEED_OF_LIGHT / lambda_min,
        )
    }

    /// `points` evenly spaced frequencies including both ends.
    pub fn grid(&self, points: usize) -> Vec<f64> {
        if points <= 1 || self.omega_min == self.omega_max {
            return vec![self.omega_min];
        }
        let span = self.omega_max - self.omega_min;
        let last = points - 1;
        (0..points)
            .map(|j| {
                if j == last {
                    self.omega_max
                } else {
                    self.omega_min + span * (j as f64 / last as f64)
                }
            })
            .collect()
    }
}

/// `k >= c₀ π / a`; the boundary itself counts as allowed.
pub fn mode_allowed(k: f64, chamber: &ChamberGeometry) -> Result<bool> {
    if !(k >= 0.0) {
        return Err(Error::Domain(format!(
            "wave number must be non-negative, got {k}"
        )));
    }
    Ok(k >= chamber.k_min())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuppressionReport {
    pub left_suppressed: bool,
    pub right_suppressed: bool,
    pub band: FrequencyBand,
    /// Largest `k₋ / k_min` over the band; evanescent points count as 0.
    pub margin_left: f64,
    /// Largest `k₊ / k_min` over the band.
    pub margin_right: f64,
    pub k_min: f64,
    pub grid_points: usize,
}

/// Wave number of a branch for the filter: evanescent branches carry none.
fn branch_wave_number(branch: &IndexBranch, omega: f64) -> Result<f64> {
    match branch.propagating() {
        Some(n) => wave_number(n, omega),
        None => Ok(0.0),
    }
}

/// Which zero-point branches survive in `chamber` across `band`.
///
/// A branch is suppressed only if no grid frequency reaches the cutoff.
pub fn suppression_report(
    material: &MaterialModel,
    chamber: &ChamberGeometry,
    band: &FrequencyBand,
    grid_points: usize,
) -> Result<SuppressionReport> {
    chamber.validate()?;
    let band = FrequencyBand::new(band.omega_min, band.omega_max)?;
    if grid_points == 0 {
        return Err(Error::Validation(
            "band grid needs at least one point".into(),
        ));
    }
    let k_min = chamber.k_min();
    let mut left_present = false;
    let mut right_present = false;
    let mut margin_left = 0.0f64;
    let mut margin_right = 0.0f64;
    let grid = band.grid(grid_points);
    for &omega in &grid {
        let idx = circular_indices(&material.medium_at(omega)?);
        let k_left = branch_wave_number(&idx.minus, omega)?;
        let k_right = branch_wave_number(&idx.plus, omega)?;
        left_present |= mode_allowed(k_left, chamber)?;
        right_present |= mode_allowed(k_right, chamber)?;
        margin_left = margin_left.max(k_left / k_min);
        margin_right = margin_right.max(k_right / k_min);
    }
    Ok(SuppressionReport {
        left_suppressed: !left_present,
        right_suppressed: !right_present,
        band,
        margin_left,
        margin_right,
        k_min,
        grid_points: grid.len(),
    })
}

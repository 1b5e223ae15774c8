//! End-to-end prediction of the net vacuum geometric phase for a fibre inside
//! (or outside) a sealed chamber.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{helix_to_path, tangent_trace, FiberPath, HelixSpec, TraceOptions};
use crate::gyrotropic::MaterialModel;
use crate::holonomy::{cross_checked_solid_angle, CrossCheckedSolidAngle, HOLONOMY_TOLERANCE};
use crate::phase::{geometric_phases, PhaseResult, PhotonOccupation};
use crate::vacuum::{
    suppression_report, ChamberGeometry, FrequencyBand, SuppressionReport, DEFAULT_BAND_POINTS,
    SENSITIVITY_COEFFICIENTS,
};

#[derive(Debug, Clone, PartialEq)]
pub enum PathSource {
    Helix(HelixSpec),
    Sampled(FiberPath),
}

impl PathSource {
    pub fn to_path(&self) -> Result<FiberPath> {
        match self {
            PathSource::Helix(h) => helix_to_path(h),
            PathSource::Sampled(p) => Ok(p.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictorOptions {
    pub trace: TraceOptions,
    pub band_points: usize,
    pub holonomy_tolerance: f64,
}

impl Default for PredictorOptions {
    fn default() -> Self {
        Self {
            trace: TraceOptions::default(),
            band_points: DEFAULT_BAND_POINTS,
            holonomy_tolerance: HOLONOMY_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub path: PathSource,
    pub occupation: PhotonOccupation,
    pub material: MaterialModel,
    /// `None` is free space: every zero-point mode exists.
    pub chamber: Option<ChamberGeometry>,
    pub band: FrequencyBand,
    pub options: PredictorOptions,
}

/// Which circular zero-point fields are present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    BothPresent,
    LeftOnly,
    RightOnly,
    NonePresent,
}

impl Regime {
    pub fn from_suppression(left_suppressed: bool, right_suppressed: bool) -> Self {
        match (left_suppressed, right_suppressed) {
            (false, false) => Regime::BothPresent,
            (false, true) => Regime::LeftOnly,
            (true, false) => Regime::RightOnly,
            (true, true) => Regime::NonePresent,
        }
    }

    /// Uncancelled vacuum phase given the two vacuum phases.
    pub fn net_vacuum_phase(self, phases: &PhaseResult) -> f64 {
        match self {
            Regime::BothPresent | Regime::NonePresent => 0.0,
            Regime::LeftOnly => phases.phi_vac_left,
            Regime::RightOnly => phases.phi_vac_right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensitivityEntry {
    pub cutoff_coefficient: f64,
    pub left_suppressed: bool,
    pub right_suppressed: bool,
    pub regime: Regime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasePrediction {
    pub solid_angle: CrossCheckedSolidAngle,
    pub phases: PhaseResult,
    pub suppression: Option<SuppressionReport>,
    pub sensitivity: Vec<SensitivityEntry>,
    pub regime: Regime,
    pub net_vacuum_phase: f64,
}

impl PhasePrediction {
    pub fn omega(&self) -> f64 {
        self.solid_angle.primary().omega
    }
}

/// Suppression re-evaluated at each of the alternative cutoff coefficients.
pub fn cutoff_sensitivity(
    material: &MaterialModel,
    chamber: &ChamberGeometry,
    band: &FrequencyBand,
    band_points: usize,
) -> Result<Vec<SensitivityEntry>> {
    SENSITIVITY_COEFFICIENTS
        .iter()
        .map(|&c| {
            let r = suppression_report(material, &chamber.with_coefficient(c), band, band_points)?;
            Ok(SensitivityEntry {
                cutoff_coefficient: c,
                left_suppressed: r.left_suppressed,
                right_suppressed: r.right_suppressed,
                regime: Regime::from_suppression(r.left_suppressed, r.right_suppressed),
            })
        })
        .collect()
}

pub fn predict(spec: &ExperimentSpec) -> Result<PhasePrediction> {
    let path = spec.path.to_path()?;
    let trace = tangent_trace(&path, spec.options.trace)?;
    let solid_angle = cross_checked_solid_angle(&trace, spec.options.holonomy_tolerance)?;
    let phases = geometric_phases(spec.occupation, solid_angle.primary().omega);

    let (suppression, sensitivity) = match &spec.chamber {
        Some(chamber) => {
            let report = suppression_report(
                &spec.material,
                chamber,
                &spec.band,
                spec.options.band_points,
            )?;
            let sensitivity = cutoff_sensitivity(
                &spec.material,
                chamber,
                &spec.band,
                spec.options.band_points,
            )?;
            (Some(report), sensitivity)
        }
        None => (None, Vec::new()),
    };

    let (left_suppressed, right_suppressed) = suppression
        .map(|r| (r.left_suppressed, r.right_suppressed))
        .unwrap_or((false, false));
    // occupied modes must propagate for the signal itself to exist
    if left_suppressed && spec.occupation.n_left > 0 {
        return Err(Error::SignalBelowCutoff("left"));
    }
    if right_suppressed && spec.occupation.n_right > 0 {
        return Err(Error::SignalBelowCutoff("right"));
    }

    let regime = Regime::from_suppression(left_suppressed, right_suppressed);
    Ok(PhasePrediction {
        solid_angle,
        net_vacuum_phase: regime.net_vacuum_phase(&phases),
        phases,
        suppression,
        sensitivity,
        regime,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub theta: f64,
    pub one_minus_cos_theta: f64,
    pub pitch: f64,
    pub prediction: PhasePrediction,
}

/// Re-pitches the spec's helix at fixed radius for each polar angle.
///
/// Rows come back in input order; they are evaluated in parallel.
pub fn sweep_theta(spec: &ExperimentSpec, thetas: &[f64]) -> Result<Vec<SweepRow>> {
    if thetas.is_empty() {
        return Err(Error::EmptySweep);
    }
    let PathSource::Helix(base) = &spec.path else {
        return Err(Error::Validation("a theta sweep needs a helix path".into()));
    };
    let helices = thetas
        .iter()
        .map(|&theta| {
            HelixSpec::with_polar_angle(base.radius, theta, base.turns, base.samples_per_turn)
                .map(|h| (theta, h))
        })
        .collect::<Result<Vec<_>>>()?;
    helices
        .par_iter()
        .map(|&(theta, helix)| {
            let row_spec = ExperimentSpec {
                path: PathSource::Helix(helix),
                ..spec.clone()
            };
            let half = (0.5 * theta).sin();
            Ok(SweepRow {
                theta,
                one_minus_cos_theta: 2.0 * half * half,
                pitch: helix.pitch,
                prediction: predict(&row_spec)?,
            })
        })
        .collect()
}

//! Output documents. Every JSON report deserializes back into its own type.

use serde::{Deserialize, Serialize};
use vacphase::gyrotropic::IndexBranch;
use vacphase::phase::{reduced_phase, to_degrees, PhaseUnits};
use vacphase::predictor::SensitivityEntry;
use vacphase::vacuum::{SuppressionReport, SENSITIVITY_COEFFICIENTS};
use vacphase::{
    CrossCheckedSolidAngle, PhasePrediction, PhaseResult, PhotonOccupation, Regime, SweepRow,
};

use crate::format::format_float;

/// A phase in radians, reduced into (−π, π], and in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Angle {
    pub radians: f64,
    pub reduced: f64,
    pub degrees: f64,
}

impl Angle {
    pub fn new(radians: f64) -> Self {
        Self {
            radians,
            reduced: reduced_phase(radians),
            degrees: to_degrees(radians),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolidAngleOut {
    /// Steradians, from the line integral.
    pub omega: f64,
    pub estimated_error: f64,
    pub spherical_excess: f64,
    pub spherical_excess_error: f64,
    pub transport_holonomy: f64,
    pub holonomy_residual: f64,
}

impl From<&CrossCheckedSolidAngle> for SolidAngleOut {
    fn from(s: &CrossCheckedSolidAngle) -> Self {
        Self {
            omega: s.line_integral.omega,
            estimated_error: s.line_integral.estimated_error,
            spherical_excess: s.spherical_excess.omega,
            spherical_excess_error: s.spherical_excess.estimated_error,
            transport_holonomy: s.transport_holonomy,
            holonomy_residual: s.holonomy_residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhasesOut {
    pub phi_left: Angle,
    pub phi_right: Angle,
    pub phi_vac_left: Angle,
    pub phi_vac_right: Angle,
    pub phi_total: Angle,
    /// The same phases as exact multiples of Ω/2.
    pub half_omega_units: PhaseUnits,
}

impl From<&PhaseResult> for PhasesOut {
    fn from(p: &PhaseResult) -> Self {
        Self {
            phi_left: Angle::new(p.phi_left),
            phi_right: Angle::new(p.phi_right),
            phi_vac_left: Angle::new(p.phi_vac_left),
            phi_vac_right: Angle::new(p.phi_vac_right),
            phi_total: Angle::new(p.phi_total),
            half_omega_units: p.units,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseReport {
    pub occupation: PhotonOccupation,
    pub solid_angle: SolidAngleOut,
    pub phases: PhasesOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictionReport {
    pub occupation: PhotonOccupation,
    pub solid_angle: SolidAngleOut,
    pub phases: PhasesOut,
    pub regime: Regime,
    pub net_vacuum_phase: f64,
    pub net_vacuum_phase_reduced: f64,
    pub net_vacuum_phase_degrees: f64,
    /// Absent in free space.
    pub suppression: Option<SuppressionReport>,
    pub sensitivity: Vec<SensitivityEntry>,
}

impl PredictionReport {
    pub fn new(occupation: PhotonOccupation, p: &PhasePrediction) -> Self {
        Self {
            occupation,
            solid_angle: (&p.solid_angle).into(),
            phases: (&p.phases).into(),
            regime: p.regime,
            net_vacuum_phase: p.net_vacuum_phase,
            net_vacuum_phase_reduced: reduced_phase(p.net_vacuum_phase),
            net_vacuum_phase_degrees: to_degrees(p.net_vacuum_phase),
            suppression: p.suppression,
            sensitivity: p.sensitivity.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRowOut {
    pub theta: f64,
    pub theta_degrees: f64,
    pub one_minus_cos_theta: f64,
    pub pitch: f64,
    pub prediction: PredictionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepReport {
    pub rows: Vec<SweepRowOut>,
}

impl SweepReport {
    pub fn new(occupation: PhotonOccupation, rows: &[SweepRow]) -> Self {
        let rows = rows
            .iter()
            .map(|r| SweepRowOut {
                theta: r.theta,
                theta_degrees: to_degrees(r.theta),
                one_minus_cos_theta: r.one_minus_cos_theta,
                pitch: r.pitch,
                prediction: PredictionReport::new(occupation, &r.prediction),
            })
            .collect();
        Self { rows }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterReport {
    pub regime: Regime,
    pub suppression: SuppressionReport,
    pub sensitivity: Vec<SensitivityEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchOut {
    pub n_sq: f64,
    /// `null` when evanescent.
    pub n: Option<f64>,
    pub evanescent: bool,
    /// Wave number in rad/m, when a frequency is known and the branch propagates.
    pub k: Option<f64>,
}

impl BranchOut {
    pub fn new(branch: &IndexBranch, k: Option<f64>) -> Self {
        Self {
            n_sq: branch.n_sq,
            n: branch.propagating(),
            evanescent: branch.evanescent,
            k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumRow {
    /// Tabulated frequency, rad/s; `null` for a non-dispersive medium.
    pub omega: Option<f64>,
    /// Right-handed branch.
    pub plus: BranchOut,
    /// Left-handed branch.
    pub minus: BranchOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumReport {
    pub rows: Vec<MediumRow>,
}

/// Flat `(header, cell)` pairs for one CSV record.
pub type Columns = Vec<(String, String)>;

fn num(v: f64) -> String {
    format_float(v).unwrap_or_default()
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn push(cols: &mut Columns, name: &str, value: String) {
    cols.push((name.to_string(), value));
}

fn angle_columns(cols: &mut Columns, name: &str, a: &Angle) {
    push(cols, name, num(a.radians));
    push(cols, &format!("{name}_reduced"), num(a.reduced));
    push(cols, &format!("{name}_degrees"), num(a.degrees));
}

fn phase_columns(cols: &mut Columns, occ: &PhotonOccupation, s: &SolidAngleOut, p: &PhasesOut) {
    push(cols, "n_left", occ.n_left.to_string());
    push(cols, "n_right", occ.n_right.to_string());
    push(cols, "omega", num(s.omega));
    push(cols, "omega_estimated_error", num(s.estimated_error));
    push(cols, "omega_spherical_excess", num(s.spherical_excess));
    push(cols, "transport_holonomy", num(s.transport_holonomy));
    push(cols, "holonomy_residual", num(s.holonomy_residual));
    angle_columns(cols, "phi_left", &p.phi_left);
    angle_columns(cols, "phi_right", &p.phi_right);
    angle_columns(cols, "phi_vac_left", &p.phi_vac_left);
    angle_columns(cols, "phi_vac_right", &p.phi_vac_right);
    angle_columns(cols, "phi_total", &p.phi_total);
}

fn regime_name(r: Regime) -> String {
    match r {
        Regime::BothPresent => "both_present",
        Regime::LeftOnly => "left_only",
        Regime::RightOnly => "right_only",
        Regime::NonePresent => "none_present",
    }
    .to_string()
}

fn suppression_columns(
    cols: &mut Columns,
    s: Option<&SuppressionReport>,
    sens: &[SensitivityEntry],
) {
    let flag = |b: bool| b.to_string();
    push(
        cols,
        "left_suppressed",
        s.map(|s| flag(s.left_suppressed)).unwrap_or_default(),
    );
    push(
        cols,
        "right_suppressed",
        s.map(|s| flag(s.right_suppressed)).unwrap_or_default(),
    );
    push(cols, "margin_left", opt(s.map(|s| s.margin_left)));
    push(cols, "margin_right", opt(s.map(|s| s.margin_right)));
    push(cols, "k_min", opt(s.map(|s| s.k_min)));
    for c in SENSITIVITY_COEFFICIENTS {
        let entry = sens.iter().find(|e| e.cutoff_coefficient == c);
        push(
            cols,
            &format!("regime_at_cutoff_{}", num(c)),
            entry.map(|e| regime_name(e.regime)).unwrap_or_default(),
        );
    }
}

pub trait CsvRows {
    fn csv_rows(&self) -> Vec<Columns>;
}

impl CsvRows for PhaseReport {
    fn csv_rows(&self) -> Vec<Columns> {
        let mut cols = Columns::new();
        phase_columns(&mut cols, &self.occupation, &self.solid_angle, &self.phases);
        vec![cols]
    }
}

impl CsvRows for PredictionReport {
    fn csv_rows(&self) -> Vec<Columns> {
        let mut cols = Columns::new();
        phase_columns(&mut cols, &self.occupation, &self.solid_angle, &self.phases);
        push(&mut cols, "regime", regime_name(self.regime));
        push(&mut cols, "net_vacuum_phase", num(self.net_vacuum_phase));
        push(
            &mut cols,
            "net_vacuum_phase_reduced",
            num(self.net_vacuum_phase_reduced),
        );
        push(
            &mut cols,
            "net_vacuum_phase_degrees",
            num(self.net_vacuum_phase_degrees),
        );
        suppression_columns(&mut cols, self.suppression.as_ref(), &self.sensitivity);
        vec![cols]
    }
}

impl CsvRows for SweepReport {
    fn csv_rows(&self) -> Vec<Columns> {
        self.rows
            .iter()
            .map(|r| {
                let mut cols = Columns::new();
                push(&mut cols, "theta", num(r.theta));
                push(&mut cols, "theta_degrees", num(r.theta_degrees));
                push(&mut cols, "one_minus_cos_theta", num(r.one_minus_cos_theta));
                push(&mut cols, "pitch", num(r.pitch));
                cols.extend(r.prediction.csv_rows().remove(0));
                cols
            })
            .collect()
    }
}

impl CsvRows for FilterReport {
    fn csv_rows(&self) -> Vec<Columns> {
        let mut cols = Columns::new();
        push(&mut cols, "regime", regime_name(self.regime));
        push(&mut cols, "omega_min", num(self.suppression.band.omega_min));
        push(&mut cols, "omega_max", num(self.suppression.band.omega_max));
        push(
            &mut cols,
            "grid_points",
            self.suppression.grid_points.to_string(),
        );
        suppression_columns(&mut cols, Some(&self.suppression), &self.sensitivity);
        vec![cols]
    }
}

impl CsvRows for MediumReport {
    fn csv_rows(&self) -> Vec<Columns> {
        self.rows
            .iter()
            .map(|r| {
                let mut cols = Columns::new();
                push(&mut cols, "omega", opt(r.omega));
                for (name, b) in [("plus", &r.plus), ("minus", &r.minus)] {
                    push(&mut cols, &format!("n_{name}_sq"), num(b.n_sq));
                    push(&mut cols, &format!("n_{name}"), opt(b.n));
                    push(
                        &mut cols,
                        &format!("{name}_evanescent"),
                        b.evanescent.to_string(),
                    );
                    push(&mut cols, &format!("k_{name}"), opt(b.k));
                }
                cols
            })
            .collect()
    }
}

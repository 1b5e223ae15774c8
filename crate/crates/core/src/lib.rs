//! Photon geometric phases in noncoplanar optical fibres, and the vacuum
//! contribution that survives when a gyrotropic fibre sits in a sealed chamber.
//!
//! The pipeline runs path → tangent trace → solid angle → phases, with the
//! chamber cutoff deciding which circular zero-point field is present.

pub mod error;
pub mod geometry;
pub mod gyrotropic;
pub mod holonomy;
pub mod phase;
pub mod predictor;
pub mod schema;
pub mod vacuum;

pub use error::{Error, Result};
pub use geometry::{
    helix_to_path, tangent_trace, FiberPath, HelixSpec, Spherical, TangentTrace, TraceOptions, Vec3,
};
pub use gyrotropic::{
    circular_indices, wave_number, CircularIndices, DispersionTable, GyrotropicMedium,
    MaterialModel, SPEED_OF_LIGHT,
};
pub use holonomy::{
    cross_checked_solid_angle, parallel_transport_holonomy, solid_angle_closed_form,
    solid_angle_line_integral, solid_angle_spherical_excess, CrossCheckedSolidAngle, SolidAngle,
    SolidAngleMethod,
};
pub use phase::{
    geometric_phases, total_observed_phase, vacuum_phases, PhaseResult, PhotonOccupation,
};
pub use predictor::{
    cutoff_sensitivity, predict, sweep_theta, ExperimentSpec, PathSource, PhasePrediction,
    PredictorOptions, Regime, SweepRow,
};
pub use vacuum::{
    mode_allowed, suppression_report, ChamberGeometry, FrequencyBand, SuppressionReport,
};

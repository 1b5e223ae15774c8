//! Fixtures shared by the benchmarks.

use std::f64::consts::FRAC_PI_3;

use vacphase::{
    helix_to_path, tangent_trace, ChamberGeometry, ExperimentSpec, FrequencyBand, GyrotropicMedium,
    HelixSpec, PathSource, PhotonOccupation, PredictorOptions, TangentTrace, TraceOptions,
};

pub fn helix(theta: f64, turns: u32, samples_per_turn: u32) -> HelixSpec {
    HelixSpec::with_polar_angle(0.05, theta, turns, samples_per_turn).expect("valid helix")
}

pub fn helix_trace(theta: f64, turns: u32, samples_per_turn: u32) -> TangentTrace {
    let path = helix_to_path(&helix(theta, turns, samples_per_turn)).expect("valid path");
    tangent_trace(&path, TraceOptions::default()).expect("closed trace")
}

/// Degenerate medium in a 1 mm chamber over the telecom band.
pub fn headline_experiment(samples_per_turn: u32) -> ExperimentSpec {
    ExperimentSpec {
        path: PathSource::Helix(helix(FRAC_PI_3, 1, samples_per_turn)),
        occupation: PhotonOccupation::VACUUM,
        material: GyrotropicMedium::new([1.0, 1.0, 1.0], [1.0, 1.0, 1.0])
            .expect("valid medium")
            .into(),
        chamber: Some(ChamberGeometry::new(1e-3, 1.0).expect("valid chamber")),
        band: FrequencyBand::from_vacuum_wavelengths(1.3e-6, 1.6e-6).expect("valid band"),
        options: PredictorOptions::default(),
    }
}

//! JSON input documents. Unknown keys are rejected everywhere.
//!
//! ```text
//! path     {"points": [[x, y, z], ...], "closed_tangent": bool}
//! helix    {"radius": r, "pitch": p, "turns": n, "samples_per_turn": m}
//! medium   {"eps": [e1, e2, e3], "mu": [m1, m2, m3]}
//!        | {"dispersive": [{"omega": w, "eps": [...], "mu": [...]}, ...]}
//! chamber  {"a": metres, "cutoff_coefficient": 1.0}
//! band     {"omega_min": w0, "omega_max": w1}
//!        | {"lambda_vac_min": l0, "lambda_vac_max": l1}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{FiberPath, HelixSpec, Vec3};
use crate::gyrotropic::{DispersionNode, DispersionTable, GyrotropicMedium, MaterialModel};
use crate::phase::PhotonOccupation;
use crate::predictor::{ExperimentSpec, PathSource, PredictorOptions};
use crate::vacuum::{ChamberGeometry, FrequencyBand};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub points: Vec<[f64; 3]>,
    pub closed_tangent: bool,
}

impl PathFile {
    pub fn to_path(&self) -> Result<FiberPath> {
        let points = self.points.iter().map(|p| Vec3::from(*p)).collect();
        FiberPath::new(points, self.closed_tangent)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersiveFile {
    pub dispersive: Vec<DispersionNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MediumFile {
    Constant(GyrotropicMedium),
    Dispersive(DispersiveFile),
}

impl MediumFile {
    pub fn to_material(&self) -> Result<MaterialModel> {
        match self {
            MediumFile::Constant(m) => {
                m.validate()?;
                Ok(MaterialModel::Constant(*m))
            }
            MediumFile::Dispersive(d) => Ok(MaterialModel::Tabulated(DispersionTable::new(
                d.dispersive.clone(),
            )?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngularBand {
    pub omega_min: f64,
    pub omega_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavelengthBand {
    pub lambda_vac_min: f64,
    pub lambda_vac_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BandFile {
    Angular(AngularBand),
    Wavelength(WavelengthBand),
}

impl BandFile {
    pub fn to_band(&self) -> Result<FrequencyBand> {
        match self {
            BandFile::Angular(b) => FrequencyBand::new(b.omega_min, b.omega_max),
            BandFile::Wavelength(b) => {
                FrequencyBand::from_vacuum_wavelengths(b.lambda_vac_min, b.lambda_vac_max)
            }
        }
    }
}

/// Exactly one of `path` or `helix`.
fn path_source(path: &Option<PathFile>, helix: &Option<HelixSpec>) -> Result<PathSource> {
    match (path, helix) {
        (Some(p), None) => Ok(PathSource::Sampled(p.to_path()?)),
        (None, Some(h)) => {
            h.validate()?;
            Ok(PathSource::Helix(*h))
        }
        (Some(_), Some(_)) => Err(Error::Validation(
            "give either \"path\" or \"helix\", not both".into(),
        )),
        (None, None) => Err(Error::Validation("missing \"path\" or \"helix\"".into())),
    }
}

/// Geometry plus occupation, for evaluating phases alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub helix: Option<HelixSpec>,
    #[serde(default)]
    pub occupation: PhotonOccupation,
}

impl PhaseFile {
    pub fn path_source(&self) -> Result<PathSource> {
        path_source(&self.path, &self.helix)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterFile {
    pub medium: MediumFile,
    pub chamber: ChamberGeometry,
    pub band: BandFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub helix: Option<HelixSpec>,
    #[serde(default)]
    pub occupation: PhotonOccupation,
    pub medium: MediumFile,
    /// Absent or null means free space.
    #[serde(default)]
    pub chamber: Option<ChamberGeometry>,
    pub band: BandFile,
}

impl ExperimentFile {
    pub fn to_spec(&self, options: PredictorOptions) -> Result<ExperimentSpec> {
        if let Some(c) = &self.chamber {
            c.validate()?;
        }
        Ok(ExperimentSpec {
            path: path_source(&self.path, &self.helix)?,
            occupation: self.occupation,
            material: self.medium.to_material()?,
            chamber: self.chamber,
            band: self.band.to_band()?,
            options,
        })
    }
}

/// An experiment plus the polar angles to sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub helix: HelixSpec,
    #[serde(default)]
    pub occupation: PhotonOccupation,
    pub medium: MediumFile,
    #[serde(default)]
    pub chamber: Option<ChamberGeometry>,
    pub band: BandFile,
    pub thetas: Vec<f64>,
}

impl SweepFile {
    pub fn to_spec(&self, options: PredictorOptions) -> Result<ExperimentSpec> {
        ExperimentFile {
            path: None,
            helix: Some(self.helix),
            occupation: self.occupation,
            medium: self.medium.clone(),
            chamber: self.chamber,
            band: self.band,
        }
        .to_spec(options)
    }
}

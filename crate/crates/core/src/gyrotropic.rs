//! Gyrotropic media and their circular-polarization refractive indices.
//!
//! Permittivity and permeability are the Hermitian tensors
//!
//! ```text
//!        ⎡ ε₁   iε₂  0  ⎤          ⎡ μ₁   iμ₂  0  ⎤
//!  ε  =  ⎢ −iε₂  ε₁  0  ⎥     μ =  ⎢ −iμ₂  μ₁  0  ⎥
//!        ⎣ 0     0   ε₃ ⎦          ⎣ 0     0   μ₃ ⎦
//! ```
//!
//! For propagation along the third axis the two circular polarizations see
//! `n±² = (ε₁ ± ε₂)(μ₁ ± μ₂)`; `+` is right-handed and `−` left-handed.
//! ε₃ and μ₃ do not enter for axial propagation and are only validated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Relative tensor components, dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GyrotropicMedium {
    pub eps: [f64; 3],
    pub mu: [f64; 3],
}

impl GyrotropicMedium {
    pub fn new(eps: [f64; 3], mu: [f64; 3]) -> Result<Self> {
        let medium = Self { eps, mu };
        medium.validate()?;
        Ok(medium)
    }

    /// No gyrotropy: ε₂ = μ₂ = 0.
    pub fn isotropic(eps: f64, mu: f64) -> Result<Self> {
        Self::new([eps, 0.0, eps], [mu, 0.0, mu])
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(x) = self.eps.iter().chain(&self.mu).find(|x| !x.is_finite()) {
            return Err(Error::Validation(format!(
                "tensor component {x} is not finite"
            )));
        }
        if !(self.eps[0] > 0.0) || !(self.mu[0] > 0.0) {
            return Err(Error::Validation(format!(
                "diagonal transverse components must be positive, got eps1 = {}, mu1 = {}",
                self.eps[0], self.mu[0]
            )));
        }
        Ok(())
    }

    /// The medium with the off-diagonal components negated.
    pub fn mirrored(&self) -> Self {
        let mut m = *self;
        m.eps[1] = -m.eps[1];
        m.mu[1] = -m.mu[1];
        m
    }
}

/// Refractive index of one circular branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexBranch {
    /// Signed squared index.
    pub n_sq: f64,
    /// `√n²` when propagating, the attenuation index `√|n²|` when evanescent.
    pub n: f64,
    pub evanescent: bool,
}

impl IndexBranch {
    fn from_square(n_sq: f64) -> Self {
        Self {
            n_sq,
            n: n_sq.abs().sqrt(),
            evanescent: n_sq < 0.0,
        }
    }

    /// Propagating index, or `None` when the branch cannot propagate.
    pub fn propagating(&self) -> Option<f64> {
        (!self.evanescent).then_some(self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircularIndices {
    /// Right-handed branch.
    pub plus: IndexBranch,
    /// Left-handed branch.
    pub minus: IndexBranch,
}

pub fn circular_indices(medium: &GyrotropicMedium) -> CircularIndices {
    let [e1, e2, _] = medium.eps;
    let [m1, m2, _] = medium.mu;
    CircularIndices {
        plus: IndexBranch::from_square((e1 + e2) * (m1 + m2)),
        minus: IndexBranch::from_square((e1 - e2) * (m1 - m2)),
    }
}

/// `k = n ω / c`, in rad/m.
pub fn wave_number(n: f64, omega_opt: f64) -> Result<f64> {
    if !(omega_opt > 0.0 && omega_opt.is_finite()) {
        return Err(Error::Domain(format!(
            "optical angular frequency must be positive, got {omega_opt}"
        )));
    }
    if !(n >= 0.0 && n.is_finite()) {
        return Err(Error::Domain(format!(
            "refractive index must be non-negative, got {n}"
        )));
    }
    Ok(n * omega_opt / SPEED_OF_LIGHT)
}

/// One row of a tabulated dispersive medium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionNode {
    /// rad/s
    pub omega: f64,
    pub eps: [f64; 3],
    pub mu: [f64; 3],
}

/// Tensor components tabulated against frequency, interpolated linearly.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionTable {
    nodes: Vec<DispersionNode>,
}

impl DispersionTable {
    /// Nodes must have strictly increasing positive frequencies.
    pub fn new(nodes: Vec<DispersionNode>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Validation("dispersion table is empty".into()));
        }
        for node in &nodes {
            if !(node.omega > 0.0 && node.omega.is_finite()) {
                return Err(Error::Validation(format!(
                    "dispersion node frequency must be positive, got {}",
                    node.omega
                )));
            }
            GyrotropicMedium::new(node.eps, node.mu)?;
        }
        if nodes.windows(2).any(|w| !(w[1].omega > w[0].omega)) {
            return Err(Error::Validation(
                "dispersion table frequencies must be strictly increasing".into(),
            ));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[DispersionNode] {
        &self.nodes
    }

    pub fn range(&self) -> (f64, f64) {
        (self.nodes[0].omega, self.nodes[self.nodes.len() - 1].omega)
    }

    /// Medium at `omega`; frequencies outside the table are a domain error.
    pub fn medium_at(&self, omega: f64) -> Result<GyrotropicMedium> {
        let (lo, hi) = self.range();
        if !(omega >= lo && omega <= hi) {
            return Err(Error::Domain(format!(
                "frequency {omega} rad/s lies outside the tabulated range [{lo}, {hi}]"
            )));
        }
        let upper = self.nodes.partition_point(|n| n.omega < omega);
        if upper == 0 {
            let n = &self.nodes[0];
            return GyrotropicMedium::new(n.eps, n.mu);
        }
        let (a, b) = (&self.nodes[upper - 1], &self.nodes[upper]);
        let t = (omega - a.omega) / (b.omega - a.omega);
        let lerp =
            |x: [f64; 3], y: [f64; 3]| -> [f64; 3] { [0, 1, 2].map(|i| x[i] + t * (y[i] - x[i])) };
        GyrotropicMedium::new(lerp(a.eps, b.eps), lerp(a.mu, b.mu))
    }
}

/// Either a frequency-independent medium or a tabulated one.
#[derive(Debug, Clone, PartialEq)]
pub enum MaterialModel {
    Constant(GyrotropicMedium),
    Tabulated(DispersionTable),
}

impl MaterialModel {
    pub fn medium_at(&self, omega: f64) -> Result<GyrotropicMedium> {
        match self {
            MaterialModel::Constant(m) => Ok(*m),
            MaterialModel::Tabulated(t) => t.medium_at(omega),
        }
    }

    pub fn mirrored(&self) -> Self {
        match self {
            MaterialModel::Constant(m) => MaterialModel::Constant(m.mirrored()),
            MaterialModel::Tabulated(t) => MaterialModel::Tabulated(DispersionTable {
                nodes: t
                    .nodes
                    .iter()
                    .map(|n| {
                        let m = GyrotropicMedium {
                            eps: n.eps,
                            mu: n.mu,
                        }
                        .mirrored();
                        DispersionNode {
                            omega: n.omega,
                            eps: m.eps,
                            mu: m.mu,
                        }
                    })
                    .collect(),
            }),
        }
    }
}

impl From<GyrotropicMedium> for MaterialModel {
    fn from(m: GyrotropicMedium) -> Self {
        MaterialModel::Constant(m)
    }
}

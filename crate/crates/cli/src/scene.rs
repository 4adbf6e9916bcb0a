//! Scene files: a versioned TOML description of one Reuleaux triangle, the
//! pedal parameter (or sweep size), the inversion radius and the tolerance.
//!
//! ```toml
//! version = 1
//! tolerance = 1e-8
//!
//! [triangle]
//! kind = "symmetric"
//! r = 1.0
//! pose = { rotation_deg = 0.0, translation = [0.0, 0.0] }
//!
//! [pedal]
//! t = 0.5
//! ```

use std::path::Path;

use pedal_core::{Point, ReuleauxTriangle, RigidMotion};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCENE_VERSION: u32 = 1;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_T: f64 = 0.5;
pub const DEFAULT_SWEEP_N: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pose {
    #[serde(default)]
    pub rotation_deg: f64,
    #[serde(default)]
    pub translation: [f64; 2],
}

impl Pose {
    pub fn motion(&self) -> RigidMotion {
        RigidMotion::new(
            self.rotation_deg.to_radians(),
            Point::new(self.translation[0], self.translation[1]),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TriangleSpec {
    Symmetric {
        r: f64,
        #[serde(default)]
        pose: Pose,
    },
    Asymmetric {
        vertices: [[f64; 2]; 3],
        radii: [f64; 3],
    },
}

/// Either a single pedal parameter or the size of a sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PedalSpec {
    pub t: Option<f64>,
    pub n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    pub version: u32,
    pub triangle: TriangleSpec,
    #[serde(default)]
    pub pedal: PedalSpec,
    pub inversion_k: Option<f64>,
    pub tolerance: Option<f64>,
}

/// A parsed scene together with its validated triangle.
#[derive(Debug, Clone)]
pub struct Scene {
    pub spec: SceneSpec,
    pub triangle: ReuleauxTriangle,
}

impl Scene {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: SceneSpec = toml::from_str(text).map_err(|e| CliError::Scene(e.to_string()))?;
        Self::from_spec(spec)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Scene(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn from_spec(spec: SceneSpec) -> Result<Self, CliError> {
        if spec.version != SCENE_VERSION {
            return Err(CliError::Scene(format!(
                "unsupported scene version {} (expected {SCENE_VERSION})",
                spec.version
            )));
        }
        let triangle = match &spec.triangle {
            TriangleSpec::Symmetric { r, pose } => ReuleauxTriangle::symmetric(*r, &pose.motion()),
            TriangleSpec::Asymmetric { vertices, radii } => {
                ReuleauxTriangle::from_vertices_and_radii(vertices.map(|[x, y]| Point::new(x, y)), *radii)
            }
        }
        .map_err(|e| CliError::Scene(e.to_string()))?;
        if let Some(t) = spec.pedal.t {
            check_t(t)?;
        }
        if let Some(n) = spec.pedal.n {
            check_n(n)?;
        }
        if let Some(k) = spec.inversion_k {
            check_positive("inversion_k", k)?;
        }
        if let Some(tol) = spec.tolerance {
            check_positive("tolerance", tol)?;
        }
        Ok(Self { spec, triangle })
    }

    /// Defaults to the scale of the triangle (`r` when symmetric).
    pub fn inversion_k(&self) -> f64 {
        self.spec.inversion_k.unwrap_or_else(|| self.triangle.scale())
    }

    pub fn tolerance(&self) -> f64 {
        self.spec.tolerance.unwrap_or(DEFAULT_TOLERANCE)
    }

    pub fn t(&self) -> f64 {
        self.spec.pedal.t.unwrap_or(DEFAULT_T)
    }

    pub fn sweep_n(&self) -> usize {
        self.spec.pedal.n.unwrap_or(DEFAULT_SWEEP_N)
    }
}

pub fn check_t(t: f64) -> Result<f64, CliError> {
    if t > 0.0 && t < 1.0 {
        Ok(t)
    } else {
        Err(CliError::Usage(format!("pedal parameter {t} is outside (0, 1)")))
    }
}

pub fn check_n(n: usize) -> Result<usize, CliError> {
    if n >= 3 {
        Ok(n)
    } else {
        Err(CliError::Usage(format!("sweep needs at least 3 samples, got {n}")))
    }
}

pub fn check_positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("{name} must be positive and finite, got {v}")))
    }
}

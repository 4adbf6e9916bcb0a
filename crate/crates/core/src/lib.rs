//! Negative pedal curves of Reuleaux triangles and the conic through their
//! endpoints.
//!
//! `geom` holds the plane kernel (points, lines, circles, inversion), `conics`
//! general conics, `pedal_dual` polar duals and negative pedals of circles,
//! `reuleaux` the triangle-level constructions and checks, and `poncelet` the
//! hexagon tangent chains.

// NaN has to fail range checks, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conics;
pub mod geom;
pub mod pedal_dual;
pub mod poncelet;
pub mod report;
pub mod reuleaux;

pub use conics::{classify_conic, conic_features, ConicClass, ConicError, ConicFeatures, GeneralConic};
pub use geom::{Circle, CircleOrLine, GeomError, InversionCircle, Line, Point, RigidMotion};
pub use pedal_dual::{DualError, NpcResult};
pub use poncelet::{HexagonConfig, PonceletError, TangentChain};
pub use report::{LowerBound, VerificationReport};
pub use reuleaux::{EndpointSet, InvertedConfig, ReuleauxError, ReuleauxTriangle, SweepReport, SweepSample};

//! Dirac matrices, the rest-frame spin projector, and the coordinate chain
//! from four spinor components to parabolic and cylindrical 3-space
//! coordinates.

mod chart;
mod dirac;

pub use chart::{
    angle_chain, hopf_map, lame_coefficients, metric_identity_check, norm3,
    parabolic_to_cylindrical, physical_point, to_parabolic, wrap_angle, AngleChain,
    LameCoefficients, MetricCheck, ParabolicPoint, Spinor4,
};
pub use dirac::{levi_civita, metric, spin_projector, CMatrix4, DiracBasis, SpinVector};

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("spin vector has no spatial direction")]
    UndefinedOrientation,
    #[error("point (u = {u}, v = {v}) is off the parabolic chart")]
    OffChart { u: f64, v: f64 },
}

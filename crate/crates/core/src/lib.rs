//! Numerical toolkit for the oscillator/Coulomb correspondence: a truncated
//! four-mode Fock representation of the fifteen bilinear generators, the
//! spinor-to-coordinate chain, closed-form spectra, and grid eigensolvers.
//!
//! Everything numeric is generic over [`scalar::Real`] (`f32`, `f64`); the
//! closed-form rational spectra also accept [`scalar::Rational`]. The aliases
//! below fix `f64`.

pub mod eigen;
pub mod fock;
pub mod geometry;
pub mod scalar;
pub mod spectra;

pub use scalar::{Rational, Real, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Fock(#[from] fock::FockError),
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Spectra(#[from] spectra::SpectraError),
    #[error(transparent)]
    Eigen(#[from] eigen::EigenError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type OperatorMatrixF64 = fock::OperatorMatrix<f64>;
pub type GeneratorSetF64 = fock::GeneratorSet<f64>;
pub type ClosureReportF64 = fock::ClosureReport<f64>;
pub type DiracBasisF64 = geometry::DiracBasis<f64>;
pub type Spinor4F64 = geometry::Spinor4<f64>;
pub type ParabolicPointF64 = geometry::ParabolicPoint<f64>;
pub type EnergyLevelF64 = spectra::EnergyLevel<f64>;
pub type SeriesReportF64 = spectra::SeriesReport<f64>;
pub type RadialGridF64 = eigen::RadialGrid<f64>;
pub type EigenResultF64 = eigen::EigenResult<f64>;

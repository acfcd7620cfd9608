//! Grid eigensolvers for the separated oscillator blocks and the radial
//! Coulomb problem, plus the composed oscillator → Coulomb duality check.

mod solvers;
mod tridiag;

use serde::Serialize;

pub use solvers::{
    assemble_oscillator_levels, coulomb_grid, duality_check, parabolic_grid, richardson_estimate,
    richardson_extrapolate,
    solve_coulomb_radial, solve_parabolic_block, with_richardson, write_duality_csv,
    write_eigen_csv, DualityRow, OscillatorLevel, ASSEMBLY_TOL, RMIN_SCALE,
    COULOMB_RMAX_SCALE, MAX_STEP_SCALE, PARABOLIC_MARGIN, PARABOLIC_UMAX_SCALE,
};
pub use tridiag::TridiagonalOperator;

use crate::scalar::Real;

#[derive(Debug, thiserror::Error)]
pub enum EigenError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid too coarse: step {step:e} exceeds {limit:e}; increase the number of grid points")]
    GridTooCoarse { step: f64, limit: f64 },
    #[error("domain too short: end point {end:e} is below {required:e}; extend the domain")]
    DomainTooShort { end: f64, required: f64 },
    #[error("level count mismatch: {0} vs {1}")]
    LevelCountMismatch(usize, usize),
    #[error("incompatible results: {0}")]
    Incompatible(String),
    #[error("assembled level n = {n}: Z^2 = {z2} deviates from {target} by {rel_err:e}")]
    AssemblyMismatch { n: u32, z2: f64, target: f64, rel_err: f64 },
}

/// Uniform grid on `[r_min, r_max]` with `n` interior points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialGrid<T> {
    r_min: T,
    r_max: T,
    n: usize,
}

impl<T: Real> RadialGrid<T> {
    pub const MIN_POINTS: usize = 16;

    pub fn new(r_min: T, r_max: T, n: usize) -> Result<Self, EigenError> {
        if !(r_min > T::zero()) || !r_max.is_finite() || !(r_min < r_max) {
            return Err(EigenError::InvalidGrid(format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if n < Self::MIN_POINTS {
            return Err(EigenError::InvalidGrid(format!("need at least {} interior points, got {n}", Self::MIN_POINTS)));
        }
        Ok(RadialGrid { r_min, r_max, n })
    }

    pub fn r_min(&self) -> T {
        self.r_min
    }

    pub fn r_max(&self) -> T {
        self.r_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> T {
        (self.r_max - self.r_min) / T::from_count(self.n + 1)
    }

    /// Node `j`; `0` and `n + 1` are the end points.
    pub fn point(&self, j: usize) -> T {
        self.r_min + T::from_count(j) * self.step()
    }

    /// Same domain with the step exactly halved (`2n + 1` interior points).
    pub fn refined(&self) -> Self {
        RadialGrid { n: 2 * self.n + 1, ..*self }
    }

    /// Same domain with `2n` interior points.
    pub fn doubled(&self) -> Self {
        RadialGrid { n: 2 * self.n, ..*self }
    }
}

/// What was solved.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Problem<T> {
    ParabolicBlock { omega: T, m_phi: i32 },
    CoulombRadial { z2: T, l: u32 },
}

impl<T: Real> Problem<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::ParabolicBlock { .. } => "parabolic_block",
            Problem::CoulombRadial { .. } => "coulomb_radial",
        }
    }

    /// Exact eigenvalue of level `k` (0-based).
    pub fn analytic(&self, k: usize) -> T {
        match *self {
            Problem::ParabolicBlock { omega, m_phi } => {
                omega * T::from_count(2 * k + m_phi.unsigned_abs() as usize + 1)
            }
            Problem::CoulombRadial { z2, l } => {
                let n = T::from_count(k + l as usize + 1);
                -(z2 * z2) / (n * n)
            }
        }
    }

    fn params(&self) -> (String, String) {
        match self {
            Problem::ParabolicBlock { omega, m_phi } => (omega.to_string(), m_phi.to_string()),
            Problem::CoulombRadial { z2, l } => (z2.to_string(), l.to_string()),
        }
    }
}

/// Lowest eigenvalues of one discretized problem.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenResult<T> {
    pub eigenvalues: Vec<T>,
    pub grid: RadialGrid<T>,
    pub problem: Problem<T>,
    pub est_error: Option<Vec<T>>,
}

impl<T: Real> EigenResult<T> {
    pub fn analytic(&self) -> Vec<T> {
        (0..self.eigenvalues.len()).map(|k| self.problem.analytic(k)).collect()
    }

    pub fn rel_errors(&self) -> Vec<T> {
        self.eigenvalues
            .iter()
            .zip(self.analytic())
            .map(|(&e, a)| ((e - a) / a).abs())
            .collect()
    }
}

//! Truncated Fock space of four boson modes and the fifteen bilinear
//! generators built on it.
//!
//! Operators are exact on every column whose image stays inside the cutoff.
//! Commutator identities are therefore compared after [`interior_project`],
//! which discards the top `margin` shells.

mod closure;
mod generators;
mod operator;
mod space;

pub use closure::{
    closure_check, coefficient_labels, hamiltonian_ladder_check, projected_basis,
    write_closure_csv, write_ladder_csv, ClosureReport, ExpansionBasis, LadderRow,
    MIN_SINGULAR_VALUE,
};
pub use generators::{build_generators, pauli, GeneratorSet, LABELS, QUANTA_SHIFT};
pub use operator::{commutator, interior_project, ladder, LadderKind, OperatorMatrix};
pub use space::{enumerate_basis, OccupationVector, TruncatedFockSpace, MAX_N_MAX, MODES};

#[derive(Debug, thiserror::Error)]
pub enum FockError {
    #[error("cutoff n_max = {n_max} exceeds the configured limit {limit}")]
    CutoffTooLarge { n_max: u32, limit: u32 },
    #[error("mode {0} is not in 1..=4")]
    InvalidMode(usize),
    #[error("incompatible spaces: dimension {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("margin {margin} exceeds n_max = {n_max}")]
    MarginTooLarge { margin: u32, n_max: u32 },
    #[error("margin {0} is below 2; generators shift quanta by up to 2")]
    MarginTooSmall(u32),
    #[error("oscillator frequency must be positive and finite, got {0}")]
    InvalidOmega(f64),
    #[error(
        "degenerate truncation: smallest singular value {smallest_singular_value:e} \
         (use n_max >= 4)"
    )]
    DegenerateTruncation { smallest_singular_value: f64 },
}

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::FockError;

/// Number of boson modes: two undotted (`s = 1, 2`) and two dotted (`ṡ = 1, 2`).
pub const MODES: usize = 4;

/// Largest total-quanta cutoff accepted by [`TruncatedFockSpace::new`].
pub const MAX_N_MAX: u32 = 32;

/// Occupation numbers of the four modes.
///
/// Modes 1 and 2 carry the undotted index, modes 3 and 4 the dotted one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OccupationVector(pub [u32; MODES]);

impl OccupationVector {
    pub const VACUUM: Self = OccupationVector([0; MODES]);

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Occupation of `mode` (1-based).
    pub fn get(&self, mode: usize) -> u32 {
        self.0[mode - 1]
    }

    pub(crate) fn shifted(&self, mode: usize, delta: i32) -> Option<Self> {
        let mut n = self.0;
        let v = n[mode - 1] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        n[mode - 1] = v as u32;
        Some(OccupationVector(n))
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "|{a},{b},{c},{d}>")
    }
}

/// All occupation vectors with total quanta at most `n_max`.
///
/// Ordered by total quanta, then lexicographically.
#[derive(Clone, Debug)]
pub struct TruncatedFockSpace {
    n_max: u32,
    basis: Vec<OccupationVector>,
    index: HashMap<OccupationVector, usize>,
}

impl TruncatedFockSpace {
    pub fn new(n_max: u32) -> Result<Self, FockError> {
        if n_max > MAX_N_MAX {
            return Err(FockError::CutoffTooLarge { n_max, limit: MAX_N_MAX });
        }
        let mut basis = Vec::with_capacity(binomial(n_max as u64 + 4, 4) as usize);
        for total in 0..=n_max {
            for a in 0..=total {
                for b in 0..=total - a {
                    for c in 0..=total - a - b {
                        basis.push(OccupationVector([a, b, c, total - a - b - c]));
                    }
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        Ok(TruncatedFockSpace { n_max, basis, index })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[OccupationVector] {
        &self.basis
    }

    pub fn state(&self, i: usize) -> OccupationVector {
        self.basis[i]
    }

    pub fn position(&self, n: &OccupationVector) -> Option<usize> {
        self.index.get(n).copied()
    }

    /// Total quanta of basis state `i`.
    pub fn quanta(&self, i: usize) -> u32 {
        self.basis[i].total()
    }

    /// Number of basis states with total quanta at most `n`.
    pub fn count_up_to(&self, n: u32) -> usize {
        binomial(n.min(self.n_max) as u64 + 4, 4) as usize
    }
}

/// Builds the truncated space for cutoff `n_max`.
pub fn enumerate_basis(n_max: u32) -> Result<TruncatedFockSpace, FockError> {
    TruncatedFockSpace::new(n_max)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

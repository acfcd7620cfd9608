use std::collections::BTreeSet;
use std::fmt;

use nalgebra::{Complex, DMatrix};

use super::space::TruncatedFockSpace;
use super::FockError;
use crate::scalar::Real;

/// Complex operator on a truncated Fock space.
///
/// Entries are held column-compressed with exact zeros dropped; every
/// generator touches at most a handful of entries per column. [`to_dense`]
/// gives the full matrix.
///
/// [`to_dense`]: OperatorMatrix::to_dense
#[derive(Clone, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    label: String,
    dim: usize,
    // cols[j] holds (row, value) pairs sorted by row
    cols: Vec<Vec<(usize, Complex<T>)>>,
}

impl<T: Real> fmt::Debug for OperatorMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorMatrix")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("nnz", &self.nnz())
            .finish()
    }
}

fn is_zero<T: Real>(z: &Complex<T>) -> bool {
    z.re == T::zero() && z.im == T::zero()
}

impl<T: Real> OperatorMatrix<T> {
    pub fn zeros(dim: usize, label: impl Into<String>) -> Self {
        OperatorMatrix { label: label.into(), dim, cols: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize, label: impl Into<String>) -> Self {
        let cols = (0..dim).map(|j| vec![(j, Complex::new(T::one(), T::zero()))]).collect();
        OperatorMatrix { label: label.into(), dim, cols }
    }

    /// Sums duplicate `(row, col, value)` triplets.
    pub fn from_triplets<I>(dim: usize, label: impl Into<String>, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Complex<T>)>,
    {
        let mut cols: Vec<Vec<(usize, Complex<T>)>> = vec![Vec::new(); dim];
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet ({r}, {c}) outside dimension {dim}");
            cols[c].push((r, v));
        }
        for col in &mut cols {
            col.sort_by_key(|(r, _)| *r);
            let mut merged: Vec<(usize, Complex<T>)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !is_zero(v));
            *col = merged;
        }
        OperatorMatrix { label: label.into(), dim, cols }
    }

    pub fn from_dense(m: &DMatrix<Complex<T>>, label: impl Into<String>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator matrices are square");
        let dim = m.nrows();
        let trip = (0..dim)
            .flat_map(|j| (0..dim).map(move |i| (i, j)))
            .map(|(i, j)| (i, j, m[(i, j)]));
        Self::from_triplets(dim, label, trip)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        match self.cols[col].binary_search_by_key(&row, |(r, _)| *r) {
            Ok(k) => self.cols[col][k].1,
            Err(_) => Complex::new(T::zero(), T::zero()),
        }
    }

    /// Iterates stored entries column by column.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex<T>)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn column(&self, col: usize) -> &[(usize, Complex<T>)] {
        &self.cols[col]
    }

    pub fn to_dense(&self) -> DMatrix<Complex<T>> {
        let mut m = DMatrix::from_element(self.dim, self.dim, Complex::new(T::zero(), T::zero()));
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    /// Applies the operator to a state vector.
    pub fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![Complex::new(T::zero(), T::zero()); self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            if is_zero(&x[c]) {
                continue;
            }
            for &(r, v) in col {
                y[r] += v * x[c];
            }
        }
        y
    }

    fn check_dim(&self, other: &Self) -> Result<(), FockError> {
        if self.dim != other.dim {
            return Err(FockError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self, FockError> {
        self.check_dim(rhs)?;
        let zero = Complex::new(T::zero(), T::zero());
        let mut acc = vec![zero; self.dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut flag = vec![false; self.dim];
        let mut cols = Vec::with_capacity(self.dim);
        for rcol in &rhs.cols {
            for &(k, b) in rcol {
                for &(i, a) in &self.cols[k] {
                    if !flag[i] {
                        flag[i] = true;
                        touched.push(i);
                    }
                    acc[i] += a * b;
                }
            }
            touched.sort_unstable();
            let mut col = Vec::with_capacity(touched.len());
            for &i in &touched {
                if !is_zero(&acc[i]) {
                    col.push((i, acc[i]));
                }
                acc[i] = zero;
                flag[i] = false;
            }
            touched.clear();
            cols.push(col);
        }
        Ok(OperatorMatrix {
            label: format!("{}*{}", self.label, rhs.label),
            dim: self.dim,
            cols,
        })
    }

    /// `self + alpha · other`.
    pub fn add_scaled(&self, other: &Self, alpha: Complex<T>) -> Result<Self, FockError> {
        self.check_dim(other)?;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| merge(a, b, |x, y| x + y * alpha))
            .collect();
        Ok(OperatorMatrix { label: self.label.clone(), dim: self.dim, cols })
    }

    pub fn scale(&self, alpha: Complex<T>) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|&(r, v)| (r, v * alpha))
                    .filter(|(_, v)| !is_zero(v))
                    .collect()
            })
            .collect();
        OperatorMatrix { label: self.label.clone(), dim: self.dim, cols }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let trip: Vec<_> = self.triplets().map(|(r, c, v)| (c, r, v.conj())).collect();
        Self::from_triplets(self.dim, format!("{}^H", self.label), trip)
    }

    /// Frobenius inner product `Σ conj(self_ij) · other_ij`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>, FockError> {
        self.check_dim(other)?;
        let mut s = Complex::new(T::zero(), T::zero());
        for (a, b) in self.cols.iter().zip(&other.cols) {
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].0.cmp(&b[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        s += a[i].1.conj() * b[j].1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn frobenius_norm(&self) -> T {
        self.triplets()
            .map(|(_, _, v)| v.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.triplets().all(|(_, _, v)| v.re.is_finite() && v.im.is_finite())
    }

    /// Keeps only entries whose row and column states satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        let cols = self
            .cols
            .iter()
            .enumerate()
            .map(|(c, col)| {
                if keep(c) {
                    col.iter().copied().filter(|&(r, _)| keep(r)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        OperatorMatrix { label: self.label.clone(), dim: self.dim, cols }
    }

    /// Distinct changes of total quanta (`row − column`) over stored entries.
    pub fn quanta_shifts(&self, space: &TruncatedFockSpace) -> BTreeSet<i64> {
        self.triplets()
            .map(|(r, c, _)| space.quanta(r) as i64 - space.quanta(c) as i64)
            .collect()
    }
}

fn merge<T: Real>(
    a: &[(usize, Complex<T>)],
    b: &[(usize, Complex<T>)],
    f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
) -> Vec<(usize, Complex<T>)> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (r, v) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, f(a[i - 1].1, zero))
        } else if i >= a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, f(zero, b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, f(a[i - 1].1, b[j - 1].1))
        };
        if !is_zero(&v) {
            out.push((r, v));
        }
    }
    out
}

/// `[a, b] = ab − ba`.
pub fn commutator<T: Real>(
    a: &OperatorMatrix<T>,
    b: &OperatorMatrix<T>,
) -> Result<OperatorMatrix<T>, FockError> {
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    let minus_one = Complex::new(-T::one(), T::zero());
    Ok(ab
        .add_scaled(&ba, minus_one)?
        .with_label(format!("[{},{}]", a.label(), b.label())))
}

/// Zeroes every row and column belonging to a state with more than
/// `n_max − margin` quanta.
pub fn interior_project<T: Real>(
    space: &TruncatedFockSpace,
    op: &OperatorMatrix<T>,
    margin: u32,
) -> Result<OperatorMatrix<T>, FockError> {
    if margin > space.n_max() {
        return Err(FockError::MarginTooLarge { margin, n_max: space.n_max() });
    }
    if op.dim() != space.dim() {
        return Err(FockError::DimensionMismatch { left: op.dim(), right: space.dim() });
    }
    let cut = space.n_max() - margin;
    Ok(op.restrict(|i| space.quanta(i) <= cut))
}

/// Whether a ladder operator removes or adds a quantum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderKind {
    Lower,
    Raise,
}

/// Annihilation or creation operator for `mode` (1..=4).
///
/// Raising out of the top shell is dropped.
pub fn ladder<T: Real>(
    space: &TruncatedFockSpace,
    mode: usize,
    kind: LadderKind,
) -> Result<OperatorMatrix<T>, FockError> {
    if !(1..=super::space::MODES).contains(&mode) {
        return Err(FockError::InvalidMode(mode));
    }
    let mut trip = Vec::new();
    for (col, n) in space.basis().iter().enumerate() {
        let (delta, amp) = match kind {
            LadderKind::Lower => (-1, n.get(mode)),
            LadderKind::Raise => (1, n.get(mode) + 1),
        };
        if amp == 0 {
            continue;
        }
        let Some(row) = n.shifted(mode, delta).and_then(|m| space.position(&m)) else {
            continue;
        };
        let v = T::from_count(amp as usize).sqrt();
        trip.push((row, col, Complex::new(v, T::zero())));
    }
    let label = match kind {
        LadderKind::Lower => format!("a{mode}"),
        LadderKind::Raise => format!("a{mode}+"),
    };
    Ok(OperatorMatrix::from_triplets(space.dim(), label, trip))
}

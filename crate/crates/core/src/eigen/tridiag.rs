use serde::Serialize;

use super::EigenError;
use crate::scalar::Real;

/// Real symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TridiagonalOperator<T> {
    diag: Vec<T>,
    off: Vec<T>,
}

impl<T: Real> TridiagonalOperator<T> {
    /// `off.len()` must be `diag.len() - 1` and every entry finite.
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self, EigenError> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(EigenError::InvalidOperator(format!(
                "diag has {} entries, off has {}",
                diag.len(),
                off.len()
            )));
        }
        if !diag.iter().chain(&off).all(|x| x.is_finite()) {
            return Err(EigenError::InvalidOperator("non-finite entry".into()));
        }
        Ok(TridiagonalOperator { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn off(&self) -> &[T] {
        &self.off
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_value().unwrap_or_else(T::eps);
        let mut count = 0;
        let mut q = T::one();
        for i in 0..self.diag.len() {
            q = if i == 0 {
                self.diag[0] - x
            } else {
                let b = self.off[i - 1];
                (self.diag[i] - x) - b * b / q
            };
            if q.abs() <= tiny {
                q = -tiny.sqrt();
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = T::max_value().unwrap();
        let mut hi = T::min_value().unwrap();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `count` smallest eigenvalues, ascending, by bisection.
    pub fn lowest_eigenvalues(&self, count: usize) -> Vec<T> {
        let count = count.min(self.dim());
        let (lo0, hi0) = self.gershgorin();
        let two = T::one() + T::one();
        let mut out: Vec<T> = Vec::with_capacity(count);
        for k in 0..count {
            let mut lo = out.last().copied().unwrap_or(lo0).max(lo0);
            let mut hi = hi0;
            for _ in 0..256 {
                let mid = (lo + hi) / two;
                if mid <= lo || mid >= hi {
                    break;
                }
                if self.count_below(mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            out.push((lo + hi) / two);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed() {
        assert!(TridiagonalOperator::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(TridiagonalOperator::<f64>::new(vec![], vec![]).is_err());
        assert!(TridiagonalOperator::new(vec![1.0, f64::NAN], vec![0.0]).is_err());
    }

    #[test]
    fn second_difference_spectrum() {
        // 2 − 2cos(kπ/(n+1))
        let n = 50;
        let op = TridiagonalOperator::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let ev = op.lowest_eigenvalues(n);
        for (k, e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-13, "{k}: {e} vs {exact}");
        }
        assert!(ev.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn matches_dense_solver() {
        let diag = vec![3.0, -1.0, 0.5, 2.0, 7.0];
        let off = vec![1.0, -2.0, 0.25, 3.0];
        let op = TridiagonalOperator::new(diag.clone(), off.clone()).unwrap();
        let dense = nalgebra::DMatrix::from_fn(5, 5, |i, j| {
            if i == j {
                diag[i]
            } else if i + 1 == j {
                off[i]
            } else if j + 1 == i {
                off[j]
            } else {
                0.0
            }
        });
        let mut reference: Vec<f64> = dense.symmetric_eigen().eigenvalues.iter().copied().collect();
        reference.sort_by(f64::total_cmp);
        for (a, b) in op.lowest_eigenvalues(5).iter().zip(&reference) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn count_is_capped() {
        let op = TridiagonalOperator::new(vec![1.0f64, 2.0], vec![0.0]).unwrap();
        let ev = op.lowest_eigenvalues(5);
        assert_eq!(ev.len(), 2);
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] - 2.0).abs() < 1e-15);
        assert_eq!(op.count_below(1.5), 1);
    }
}

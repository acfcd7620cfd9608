use nalgebra::{Complex, Matrix2, Matrix4};

use super::GeometryError;
use crate::scalar::Real;

pub type CMatrix4<T> = Matrix4<Complex<T>>;

fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

fn pauli2<T: Real>(lambda: usize) -> Matrix2<Complex<T>> {
    let z = c(T::zero(), T::zero());
    let o = c(T::one(), T::zero());
    let i = c(T::zero(), T::one());
    match lambda {
        1 => Matrix2::new(z, o, o, z),
        2 => Matrix2::new(z, -i, i, z),
        3 => Matrix2::new(o, z, z, -o),
        _ => unreachable!(),
    }
}

fn blocks<T: Real>(
    tl: Matrix2<Complex<T>>,
    tr: Matrix2<Complex<T>>,
    bl: Matrix2<Complex<T>>,
    br: Matrix2<Complex<T>>,
) -> CMatrix4<T> {
    let mut m = CMatrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&tl);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&tr);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&bl);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&br);
    m
}

/// Levi-Civita symbol on indices 1..=3.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Dirac-representation gamma matrices and the derived spin matrices.
#[derive(Clone, Debug)]
pub struct DiracBasis<T: Real> {
    /// `γ^0 … γ^3` (upper index).
    pub gamma: [CMatrix4<T>; 4],
    /// `σ⁺_λ = ε_{λij} σ_{ij}` for `λ = 1, 2, 3`.
    pub sigma_plus: [CMatrix4<T>; 3],
    /// `σ⁻_λ = ε_{λji} σ_{ij}`.
    pub sigma_minus: [CMatrix4<T>; 3],
}

/// Minkowski metric `diag(+1, −1, −1, −1)`.
pub fn metric(mu: usize, nu: usize) -> i32 {
    match (mu, nu) {
        (0, 0) => 1,
        (a, b) if a == b => -1,
        _ => 0,
    }
}

impl<T: Real> Default for DiracBasis<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> DiracBasis<T> {
    pub fn new() -> Self {
        let z = Matrix2::zeros();
        let id = Matrix2::identity();
        let g0 = blocks(id, z, z, -id);
        let gs = [1, 2, 3].map(|k| blocks(z, pauli2(k), -pauli2::<T>(k), z));
        let gamma = [g0, gs[0], gs[1], gs[2]];

        let mut sigma_plus = [CMatrix4::zeros(); 3];
        let mut sigma_minus = [CMatrix4::zeros(); 3];
        for lambda in 1..=3 {
            for i in 1..=3 {
                for j in 1..=3 {
                    let s = Self::sigma_lower(&gamma, i, j);
                    let ep = T::cst(levi_civita(lambda, i, j) as f64);
                    let em = T::cst(levi_civita(lambda, j, i) as f64);
                    sigma_plus[lambda - 1] += s.map(|x| x * ep);
                    sigma_minus[lambda - 1] += s.map(|x| x * em);
                }
            }
        }
        DiracBasis { gamma, sigma_plus, sigma_minus }
    }

    /// `σ_{μν} = (i/2)[γ_μ, γ_ν]` with lowered indices.
    fn sigma_lower(gamma: &[CMatrix4<T>; 4], mu: usize, nu: usize) -> CMatrix4<T> {
        let lower = |k: usize| gamma[k].map(|x| x * T::cst(metric(k, k) as f64));
        let (a, b) = (lower(mu), lower(nu));
        let half_i = c(T::zero(), T::cst(0.5));
        (a * b - b * a).map(|x| x * half_i)
    }

    pub fn sigma(&self, mu: usize, nu: usize) -> CMatrix4<T> {
        Self::sigma_lower(&self.gamma, mu, nu)
    }

    /// Spin matrices `Σ_λ = ½σ⁺_λ = diag(σ_λ, σ_λ)`.
    pub fn spin(&self, lambda: usize) -> CMatrix4<T> {
        self.sigma_plus[lambda - 1].map(|x| x * T::cst(0.5))
    }

    /// `{γ^μ, γ^ν}`.
    pub fn anticommutator(&self, mu: usize, nu: usize) -> CMatrix4<T> {
        let (a, b) = (&self.gamma[mu], &self.gamma[nu]);
        a * b + b * a
    }
}

/// Rest-frame spin direction `s^μ = (0, ŝ)` with `|ŝ| = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinVector<T: Real> {
    s: [T; 3],
}

impl<T: Real> SpinVector<T> {
    /// Normalises the spatial part; a zero or non-finite vector has no orientation.
    pub fn new(sx: T, sy: T, sz: T) -> Result<Self, GeometryError> {
        let norm = (sx * sx + sy * sy + sz * sz).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(GeometryError::UndefinedOrientation);
        }
        Ok(SpinVector { s: [sx / norm, sy / norm, sz / norm] })
    }

    pub fn spatial(&self) -> [T; 3] {
        self.s
    }

    pub fn four_vector(&self) -> [T; 4] {
        [T::zero(), self.s[0], self.s[1], self.s[2]]
    }

    pub fn reversed(&self) -> Self {
        SpinVector { s: self.s.map(|x| -x) }
    }
}

/// `P(s) = ½(I + ŝ·Σ)`, the projector onto bispinors polarised along `ŝ`.
pub fn spin_projector<T: Real>(basis: &DiracBasis<T>, s: &SpinVector<T>) -> CMatrix4<T> {
    let mut sum = CMatrix4::identity();
    for (k, sk) in s.spatial().into_iter().enumerate() {
        sum += basis.spin(k + 1).map(|x| x * sk);
    }
    sum.map(|x| x * T::cst(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relation_is_exact() {
        let b = DiracBasis::<f64>::new();
        for mu in 0..4 {
            for nu in 0..4 {
                let want = CMatrix4::<f64>::identity().map(|x| x * (2 * metric(mu, nu)) as f64);
                assert_eq!(b.anticommutator(mu, nu), want, "mu={mu} nu={nu}");
            }
        }
    }

    #[test]
    fn sigma_plus_is_twice_block_pauli() {
        let b = DiracBasis::<f64>::new();
        for lambda in 1..=3 {
            let p = pauli2::<f64>(lambda).map(|x| x * 2.0);
            let want = blocks(p, Matrix2::zeros(), Matrix2::zeros(), p);
            assert_eq!(b.sigma_plus[lambda - 1], want);
            assert_eq!(b.sigma_minus[lambda - 1], -want);
        }
    }

    #[test]
    fn projector_along_z() {
        let b = DiracBasis::<f64>::new();
        let p = spin_projector(&b, &SpinVector::new(0.0, 0.0, 1.0).unwrap());
        let diag: Vec<f64> = (0..4).map(|i| p[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 0.0, 1.0, 0.0]);
        assert_eq!(p.map(|x| x.norm()).sum(), 2.0);
    }

    #[test]
    fn zero_spin_rejected() {
        assert!(matches!(
            SpinVector::<f64>::new(0.0, 0.0, 0.0),
            Err(GeometryError::UndefinedOrientation)
        ));
    }

    #[test]
    fn single_precision_projector() {
        let b = DiracBasis::<f32>::new();
        let s = SpinVector::new(1.0f32, 2.0, -2.0).unwrap();
        let p = spin_projector(&b, &s);
        assert!((p * p - p).norm() < 1e-6);
    }
}

use nalgebra::Complex;

use super::operator::{ladder, LadderKind, OperatorMatrix};
use super::space::TruncatedFockSpace;
use super::FockError;
use crate::scalar::Real;

/// Standard Pauli matrix `σ_λ`, `λ ∈ {1, 2, 3}`, as `[row][col]`.
pub fn pauli<T: Real>(lambda: usize) -> [[Complex<T>; 2]; 2] {
    let z = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    match lambda {
        1 => [[z, one], [one, z]],
        2 => [[z, -i], [i, z]],
        3 => [[one, z], [z, -one]],
        _ => panic!("Pauli index {lambda} outside 1..=3"),
    }
}

/// Mode of undotted index `s` (0 or 1).
fn undotted(s: usize) -> usize {
    s + 1
}

/// Mode of dotted index `ṡ` (0 or 1).
fn dotted(s: usize) -> usize {
    s + 3
}

/// Labels of the fifteen generators in storage order.
pub const LABELS: [&str; 15] = [
    "M_1", "M_2", "M_3", "M+_1", "M+_2", "M+_3", "Na_1", "Na_2", "Na_3", "Nb_1", "Nb_2", "Nb_3",
    "P", "P+", "H",
];

/// Change of total quanta produced by each generator, same order as [`LABELS`].
pub const QUANTA_SHIFT: [i64; 15] = [-2, -2, -2, 2, 2, 2, 0, 0, 0, 0, 0, 0, -2, 2, 0];

/// The fifteen bilinear generators on one truncated space.
///
/// `generators()[14]` is the Hamiltonian `H`; the other fourteen are the
/// `M_λ`, `M⁺_λ`, `Nᵃ_λ`, `Nᵇ_λ`, `P`, `P⁺`.
#[derive(Clone, Debug)]
pub struct GeneratorSet<T: Real> {
    omega: T,
    space: TruncatedFockSpace,
    generators: Vec<OperatorMatrix<T>>,
}

impl<T: Real> GeneratorSet<T> {
    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn space(&self) -> &TruncatedFockSpace {
        &self.space
    }

    /// All fifteen generators, `H` last.
    pub fn generators(&self) -> &[OperatorMatrix<T>] {
        &self.generators
    }

    pub fn hamiltonian(&self) -> &OperatorMatrix<T> {
        &self.generators[14]
    }

    pub fn get(&self, label: &str) -> Option<&OperatorMatrix<T>> {
        LABELS.iter().position(|l| *l == label).map(|i| &self.generators[i])
    }
}

/// Assembles the generators from products of ladder matrices.
///
/// Index conventions: `s = 1, 2` are modes 1 and 2, `ṡ = 1, 2` are modes 3
/// and 4, repeated indices are summed, and
///
/// * `M_λ  = Σ (σ_λ)_{ṡt} a_t a_ṡ`
/// * `M⁺_λ = Σ conj(σ_λ)_{ṡt} a⁺_ṡ a⁺_t` (the adjoint of `M_λ`)
/// * `Nᵃ_λ = Σ (σ_λ)_{st} a⁺_s a_t`
/// * `Nᵇ_λ = Σ (σ_λ)_{ṡṫ} a⁺_ṫ a_ṡ`
/// * `P = a_1 a_3 + a_2 a_4`, `P⁺ = a⁺_1 a⁺_3 + a⁺_2 a⁺_4`
/// * `H = 2 + Σ a⁺ a`
///
/// `omega` does not enter the matrices; it is kept for cross-referencing
/// spectra.
pub fn build_generators<T: Real>(
    space: &TruncatedFockSpace,
    omega: T,
) -> Result<GeneratorSet<T>, FockError> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(FockError::InvalidOmega(omega.as_f64()));
    }
    let dim = space.dim();
    let lower: Vec<OperatorMatrix<T>> =
        (1..=4).map(|m| ladder(space, m, LadderKind::Lower)).collect::<Result<_, _>>()?;
    let raise: Vec<OperatorMatrix<T>> =
        (1..=4).map(|m| ladder(space, m, LadderKind::Raise)).collect::<Result<_, _>>()?;
    let a = |m: usize| &lower[m - 1];
    let ap = |m: usize| &raise[m - 1];

    // Σ coeff · left·right over a 2×2 index block
    let bilinear = |label: String,
                    terms: &mut dyn Iterator<Item = (Complex<T>, &OperatorMatrix<T>, &OperatorMatrix<T>)>|
     -> Result<OperatorMatrix<T>, FockError> {
        let mut acc = OperatorMatrix::zeros(dim, label.clone());
        for (coeff, l, r) in terms {
            if coeff.re == T::zero() && coeff.im == T::zero() {
                continue;
            }
            acc = acc.add_scaled(&l.matmul(r)?, coeff)?;
        }
        Ok(acc.with_label(label))
    };
    let pairs = || (0..2).flat_map(|i| (0..2).map(move |j| (i, j)));

    let mut gens = Vec::with_capacity(15);
    for lambda in 1..=3 {
        let sigma = pauli::<T>(lambda);
        gens.push(bilinear(
            format!("M_{lambda}"),
            &mut pairs().map(|(sd, t)| (sigma[sd][t], a(undotted(t)), a(dotted(sd)))),
        )?);
    }
    for lambda in 1..=3 {
        let sigma = pauli::<T>(lambda);
        gens.push(bilinear(
            format!("M+_{lambda}"),
            &mut pairs().map(|(sd, t)| (sigma[sd][t].conj(), ap(dotted(sd)), ap(undotted(t)))),
        )?);
    }
    for lambda in 1..=3 {
        let sigma = pauli::<T>(lambda);
        gens.push(bilinear(
            format!("Na_{lambda}"),
            &mut pairs().map(|(s, t)| (sigma[s][t], ap(undotted(s)), a(undotted(t)))),
        )?);
    }
    for lambda in 1..=3 {
        let sigma = pauli::<T>(lambda);
        gens.push(bilinear(
            format!("Nb_{lambda}"),
            &mut pairs().map(|(sd, td)| (sigma[sd][td], ap(dotted(td)), a(dotted(sd)))),
        )?);
    }
    let one = Complex::new(T::one(), T::zero());
    gens.push(bilinear(
        "P".into(),
        &mut (0..2).map(|s| (one, a(undotted(s)), a(dotted(s)))),
    )?);
    gens.push(bilinear(
        "P+".into(),
        &mut (0..2).map(|s| (one, ap(undotted(s)), ap(dotted(s)))),
    )?);
    let number = bilinear("N".into(), &mut (1..=4).map(|m| (one, ap(m), a(m))))?;
    let two = Complex::new(T::one() + T::one(), T::zero());
    let h = OperatorMatrix::identity(dim, "H").scale(two).add_scaled(&number, one)?;
    gens.push(h.with_label("H"));

    debug_assert!(gens.iter().zip(LABELS).all(|(g, l)| g.label() == l));
    Ok(GeneratorSet { omega, space: space.clone(), generators: gens })
}

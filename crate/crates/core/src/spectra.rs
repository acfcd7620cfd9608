//! Closed-form spectra: oscillator and hydrogen-like levels, the exact
//! Klein–Gordon boson spectrum with its mass spectrum, the `ε` shift of the
//! effective principal number, and the fine-structure series.
//!
//! The rational formulas are generic over [`Scalar`]. Inputs are lifted to
//! exact rationals, evaluated exactly and rounded once, so `f64` results are
//! correctly rounded images of the exact value for the given inputs.

use std::io::Write;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::scalar::{lit, rat, Rational, Real, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum SpectraError {
    #[error("invalid coupling: {name} = {value} ({reason})")]
    InvalidCoupling { name: &'static str, value: String, reason: &'static str },
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    #[error("coupling too strong for this branch: |alpha^2|/n*^2 = {ratio} >= 1")]
    CouplingTooStrong { ratio: f64 },
    #[error("square-root branch violated: gamma^2 = {gamma_sq} >= k^2 = {k_sq}")]
    BranchViolation { gamma_sq: f64, k_sq: i64 },
}

fn exact<T: Scalar>(name: &'static str, x: &T) -> Result<Rational, SpectraError> {
    x.to_exact().ok_or_else(|| SpectraError::InvalidCoupling {
        name,
        value: format!("{x:?}"),
        reason: "not finite",
    })
}

fn positive<T: Scalar>(name: &'static str, x: &T) -> Result<Rational, SpectraError> {
    let q = exact(name, x)?;
    if !q.is_positive() {
        return Err(SpectraError::InvalidCoupling { name, value: format!("{x:?}"), reason: "must be > 0" });
    }
    Ok(q)
}

fn principal(n: u32) -> Result<Rational, SpectraError> {
    if n == 0 {
        return Err(SpectraError::InvalidQuantumNumbers("principal number n must be >= 1".into()));
    }
    Ok(rat(n as i64))
}

/// Quantum numbers of a level. Which fields are known depends on the formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuantumNumbers {
    /// Principal number `n = n_r + l + 1`.
    pub n: u32,
    pub l: Option<u32>,
    /// Fine-structure label, `k ∈ {−l, l + 1}`.
    pub k: Option<i32>,
}

impl QuantumNumbers {
    pub fn from_radial(n_r: u32, l: u32) -> Self {
        QuantumNumbers { n: n_r + l + 1, l: Some(l), k: None }
    }

    pub fn principal(n: u32) -> Result<Self, SpectraError> {
        principal(n)?;
        Ok(QuantumNumbers { n, l: None, k: None })
    }

    /// Derives `l` from `k` (`k = l + 1` or `k = −l`) and checks `l < n`.
    pub fn with_k(n: u32, k: i32) -> Result<Self, SpectraError> {
        principal(n)?;
        if k == 0 {
            return Err(SpectraError::InvalidQuantumNumbers("k must be nonzero".into()));
        }
        let l = if k > 0 { (k - 1) as u32 } else { k.unsigned_abs() };
        if l >= n {
            return Err(SpectraError::InvalidQuantumNumbers(format!(
                "k = {k} needs l = {l}, which exceeds n - 1 = {}",
                n - 1
            )));
        }
        Ok(QuantumNumbers { n, l: Some(l), k: Some(k) })
    }

    pub fn n_r(&self) -> Option<u32> {
        self.l.map(|l| self.n - l - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelKind {
    Oscillator,
    Hydrogen,
    KgExact,
    Mass,
    Series,
}

impl LevelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LevelKind::Oscillator => "oscillator",
            LevelKind::Hydrogen => "hydrogen",
            LevelKind::KgExact => "kg_exact",
            LevelKind::Mass => "mass",
            LevelKind::Series => "series",
        }
    }
}

/// One row of a spectrum table, in units `ħ = c = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyLevel<T> {
    pub qn: QuantumNumbers,
    pub value: T,
    pub kind: LevelKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<T>>,
}

/// Parameter bag for the spectral formulas.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CouplingSet<T> {
    pub omega: T,
    pub z2: T,
    pub m1: T,
    pub gamma: T,
    /// Mass scale `m`, identified with `Z̃² = Z²/α`.
    pub m: T,
}

impl<T: Real> CouplingSet<T> {
    /// `α² = −γ²` for the Coulomb choice `α = iγ`.
    pub fn alpha_sq(&self) -> T {
        -self.gamma * self.gamma
    }
}

impl<T: Real> Default for CouplingSet<T> {
    fn default() -> Self {
        CouplingSet { omega: T::one(), z2: T::one(), m1: T::one(), gamma: T::zero(), m: T::one() }
    }
}

/// Oscillator eigenvalue `Z² = 2ω(n_r + l + 1)`.
pub fn oscillator_level<T: Scalar>(omega: &T, n_r: u32, l: u32) -> Result<T, SpectraError> {
    let w = positive("omega", omega)?;
    let n = rat(n_r as i64 + l as i64 + 1);
    Ok(T::from_exact(&(rat(2) * w * n)))
}

/// Hydrogen-like level `E_n = −(Z²)²/n²`.
pub fn hydrogen_level<T: Scalar>(z2: &T, n: u32) -> Result<T, SpectraError> {
    let z = exact("z2", z2)?;
    let n = principal(n)?;
    Ok(T::from_exact(&(-(z.clone() * z) / (n.clone() * n))))
}

/// Frequency `ω = Z²/(2n)` whose oscillator level `n` has eigenvalue `Z²`,
/// and the matching Coulomb energy `−4ω²`.
pub fn duality_frequency<T: Scalar>(z2: &T, n: u32) -> Result<(T, T), SpectraError> {
    let z = exact("z2", z2)?;
    let n = principal(n)?;
    let w = z / (rat(2) * n);
    let e = -rat(4) * w.clone() * w.clone();
    Ok((T::from_exact(&w), T::from_exact(&e)))
}

/// Exact boson energy `E₁ = m₁(1 + α²/n*²)/(1 − α²/n*²)`; `α² = −γ²` for
/// the Coulomb branch.
pub fn kg_energy<T: Scalar>(m1: &T, alpha_sq: &T, n_star: &T) -> Result<T, SpectraError> {
    let m1 = positive("m1", m1)?;
    let a = exact("alpha_sq", alpha_sq)?;
    let ns = positive("n_star", n_star)?;
    let x = a / (ns.clone() * ns);
    if x.abs() >= Rational::one() {
        return Err(SpectraError::CouplingTooStrong { ratio: f64::from_exact(&x.abs()) });
    }
    let one = Rational::one();
    Ok(T::from_exact(&(m1 * (one.clone() + x.clone()) / (one - x))))
}

/// Mass spectrum `m₁ = (Z̃²/2)(1 − α²/n²)`.
pub fn mass_level<T: Scalar>(ztilde2: &T, alpha_sq: &T, n: u32) -> Result<T, SpectraError> {
    let zt = positive("ztilde2", ztilde2)?;
    let a = exact("alpha_sq", alpha_sq)?;
    let n = principal(n)?;
    Ok(T::from_exact(&(zt / rat(2) * (Rational::one() - a / (n.clone() * n)))))
}

/// The four terms of the fine-structure series for `E₁`:
/// rest energy, Rydberg term, fine-structure correction, and the `γ⁶` term.
pub fn fine_structure_terms<T: Scalar>(m: &T, gamma: &T, n: u32, k: i32) -> Result<[T; 4], SpectraError> {
    Ok(exact_fine_terms(m, gamma, n, k)?.map(|t| T::from_exact(&t)))
}

fn exact_fine_terms<T: Scalar>(m: &T, gamma: &T, n: u32, k: i32) -> Result<[Rational; 4], SpectraError> {
    let m = positive("m", m)?;
    let g = exact("gamma", gamma)?;
    let nn = principal(n)?;
    if k == 0 {
        return Err(SpectraError::InvalidQuantumNumbers("k must be nonzero".into()));
    }
    let ak = rat(k.unsigned_abs() as i64);
    let g2 = g.clone() * g;
    let g4 = g2.clone() * g2.clone();
    let g6 = g4.clone() * g2.clone();
    let n2 = nn.clone() * nn.clone();
    let n3 = n2.clone() * nn.clone();
    let n4 = n2.clone() * n2.clone();

    let t1 = m.clone() / rat(2);
    let t2 = -(m.clone() * g2) / (rat(2) * n2.clone());
    let t3 = -(m.clone() * g4) / (rat(8) * n3) * (rat(4) / ak.clone() - rat(3) / nn.clone());
    let t4 = -(m * g6) / (rat(8) * n4)
        * (rat(3) / n2 - rat(8) / (nn * ak.clone()) + rat(4) / (ak.clone() * ak));
    Ok([t1, t2, t3, t4])
}

/// Fine-structure series as an [`EnergyLevel`] with its term breakdown.
///
/// The value is the exact sum of the four terms, rounded once.
pub fn fine_structure_series<T: Scalar>(
    m: &T,
    gamma: &T,
    n: u32,
    k: i32,
) -> Result<EnergyLevel<T>, SpectraError> {
    let qn = QuantumNumbers::with_k(n, k)?;
    let terms = exact_fine_terms(m, gamma, n, k)?;
    let sum = terms.iter().fold(Rational::zero(), |a, b| a + b);
    Ok(EnergyLevel {
        qn,
        value: T::from_exact(&sum),
        kind: LevelKind::Series,
        terms: Some(terms.iter().map(T::from_exact).collect()),
    })
}

/// `ε` in `n*² = n² + ε`: the exact form and its small-`γ` approximation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EpsilonShift<T> {
    /// `2(n − |k|)(√(k² − γ²) − |k|)`
    pub exact: T,
    /// `−(n − |k|)γ²/|k|`
    pub approx: T,
}

fn check_branch<T: Real>(n: u32, k: i32, gamma: T) -> Result<(), SpectraError> {
    QuantumNumbers::with_k(n, k)?;
    let k2 = (k as i64) * (k as i64);
    if !gamma.is_finite() || gamma * gamma >= T::cst(k2 as f64) {
        return Err(SpectraError::BranchViolation { gamma_sq: (gamma * gamma).as_f64(), k_sq: k2 });
    }
    Ok(())
}

pub fn epsilon_shift<T: Real>(n: u32, k: i32, gamma: T) -> Result<EpsilonShift<T>, SpectraError> {
    check_branch(n, k, gamma)?;
    let ak = T::cst(k.unsigned_abs() as f64);
    let gap = T::cst(n as f64) - ak;
    let g2 = gamma * gamma;
    // √(k² − γ²) − |k| = −γ²/(√(k² − γ²) + |k|), free of cancellation
    let root = (ak * ak - g2).sqrt();
    let exact = -lit::<T>(2.0) * gap * g2 / (root + ak);
    let approx = -gap * g2 / ak;
    Ok(EpsilonShift { exact, approx })
}

/// One grid point of [`series_vs_exact_report`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesRow<T> {
    pub gamma: T,
    pub e_series: T,
    pub e_exact: T,
    pub residual: T,
    /// `m₁` from the mass spectrum with `Z̃² = m`.
    pub mass: T,
    pub epsilon: T,
    pub n_star_sq: T,
}

/// Series against the exact composition chain over a `γ` grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesReport<T> {
    pub m: T,
    pub n: u32,
    pub k: i32,
    pub rows: Vec<SeriesRow<T>>,
    /// Exact chain at `γ = 0`.
    pub zero_coupling_limit: T,
    /// Least-squares slope of `ln residual` against `ln γ`; `None` with fewer
    /// than two positive residuals.
    pub fitted_order: Option<T>,
}

/// Exact chain: `m₁ = mass_level(m, −γ², n)`, `n*² = n² + ε_exact`,
/// `E = kg_energy(m₁, −γ², n*)`.
pub fn exact_chain<T: Real>(m: T, n: u32, k: i32, gamma: T) -> Result<SeriesRow<T>, SpectraError> {
    check_branch(n, k, gamma)?;
    let alpha_sq = -gamma * gamma;
    let mass = mass_level(&m, &alpha_sq, n)?;
    let eps = epsilon_shift(n, k, gamma)?;
    let nf = T::cst(n as f64);
    let n_star_sq = nf * nf + eps.exact;
    let e_exact = kg_energy(&mass, &alpha_sq, &n_star_sq.sqrt())?;
    let e_series = fine_structure_series(&m, &gamma, n, k)?.value;
    Ok(SeriesRow {
        gamma,
        e_series,
        e_exact,
        residual: (e_series - e_exact).abs(),
        mass,
        epsilon: eps.exact,
        n_star_sq,
    })
}

/// `(E(γ) − E(0))/γ²` of the exact chain; tends to `−m/(2n²)`.
pub fn rydberg_coefficient<T: Real>(m: T, n: u32, k: i32, gamma: T) -> Result<T, SpectraError> {
    let e = exact_chain(m, n, k, gamma)?.e_exact;
    let e0 = exact_chain(m, n, k, T::zero())?.e_exact;
    Ok((e - e0) / (gamma * gamma))
}

pub fn series_vs_exact_report<T: Real>(
    m: T,
    n: u32,
    k: i32,
    gamma_grid: &[T],
) -> Result<SeriesReport<T>, SpectraError> {
    let rows = gamma_grid
        .iter()
        .map(|&g| exact_chain(m, n, k, g))
        .collect::<Result<Vec<_>, _>>()?;
    let zero_coupling_limit = exact_chain(m, n, k, T::zero())?.e_exact;
    let pts: Vec<(T, T)> = rows
        .iter()
        .filter(|r| r.gamma > T::zero() && r.residual > T::zero())
        .map(|r| (r.gamma.ln(), r.residual.ln()))
        .collect();
    Ok(SeriesReport { m, n, k, rows, zero_coupling_limit, fitted_order: log_slope(&pts) })
}

/// Ordinary least-squares slope.
pub fn log_slope<T: Real>(pts: &[(T, T)]) -> Option<T> {
    if pts.len() < 2 {
        return None;
    }
    let cnt = T::from_count(pts.len());
    let mx = pts.iter().fold(T::zero(), |a, p| a + p.0) / cnt;
    let my = pts.iter().fold(T::zero(), |a, p| a + p.1) / cnt;
    let sxy = pts.iter().fold(T::zero(), |a, p| a + (p.0 - mx) * (p.1 - my));
    let sxx = pts.iter().fold(T::zero(), |a, p| a + (p.0 - mx) * (p.0 - mx));
    if sxx == T::zero() {
        return None;
    }
    Some(sxy / sxx)
}

/// CSV with columns `n, l_or_k, kind, term1..term4, value`.
///
/// `l_or_k` holds `k` when known, else `l`, else is empty.
pub fn write_levels_csv<T: Real, W: Write>(levels: &[EnergyLevel<T>], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "l_or_k", "kind", "term1", "term2", "term3", "term4", "value"])?;
    for lv in levels {
        let lk = match (lv.qn.k, lv.qn.l) {
            (Some(k), _) => k.to_string(),
            (None, Some(l)) => l.to_string(),
            _ => String::new(),
        };
        let mut rec = vec![lv.qn.n.to_string(), lk, lv.kind.as_str().to_string()];
        for i in 0..4 {
            rec.push(lv.terms.as_ref().map(|t| t[i].to_string()).unwrap_or_default());
        }
        rec.push(lv.value.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn oscillator_examples() {
        assert_eq!(oscillator_level(&1.0, 0, 0).unwrap(), 2.0);
        assert_eq!(oscillator_level(&1.0, 1, 2).unwrap(), 8.0);
        assert_eq!(oscillator_level(&0.5, 0, 0).unwrap(), 1.0);
        assert!(oscillator_level(&0.0, 0, 0).is_err());
        assert!(oscillator_level(&-1.0, 0, 0).is_err());
    }

    #[test]
    fn oscillator_depends_on_principal_only() {
        for n in 1..=8u32 {
            let vals: Vec<f64> = (0..n).map(|l| oscillator_level(&0.7, n - 1 - l, l).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn hydrogen_examples() {
        assert_eq!(hydrogen_level(&1.0, 1).unwrap(), -1.0);
        assert_eq!(hydrogen_level(&1.0, 2).unwrap(), -0.25);
        assert_eq!(hydrogen_level(&2.0, 1).unwrap(), -4.0);
        assert!(hydrogen_level(&1.0, 0).is_err());
    }

    #[test]
    fn duality_examples() {
        assert_eq!(duality_frequency(&1.0, 1).unwrap(), (0.5, -1.0));
        assert_eq!(duality_frequency(&ratio(1, 1), 3).unwrap(), (ratio(1, 6), ratio(-1, 9)));
        assert_eq!(duality_frequency(&2.0, 2).unwrap(), (0.5, -1.0));
    }

    #[test]
    fn kg_examples() {
        assert_eq!(kg_energy(&1.0, &0.0, &1.0).unwrap(), 1.0);
        let e = kg_energy(&1.0, &-0.01, &1.0).unwrap();
        assert!((e - 0.99 / 1.01).abs() < 1e-16);
        assert_eq!(kg_energy(&rat(1), &ratio(-1, 100), &rat(1)).unwrap(), ratio(99, 101));
        assert!(matches!(kg_energy(&1.0, &-1.0, &1.0), Err(SpectraError::CouplingTooStrong { .. })));
        assert!(kg_energy(&1.0, &0.5, &-1.0).is_err());
    }

    #[test]
    fn mass_examples() {
        assert_eq!(mass_level(&3.0, &0.0, 2).unwrap(), 1.5);
        assert_eq!(mass_level(&rat(2), &ratio(-1, 100), 1).unwrap(), ratio(101, 100));
        assert_eq!(mass_level(&rat(2), &ratio(-1, 100), 2).unwrap(), ratio(401, 400));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_shift(3, 1, 0.0).unwrap(), EpsilonShift { exact: -0.0, approx: -0.0 });
        let e = epsilon_shift(2, 2, 0.3).unwrap();
        assert_eq!((e.exact, e.approx), (0.0, 0.0));
        let e = epsilon_shift(2, 1, 0.1).unwrap();
        assert!((e.exact + 0.01002512578676009).abs() < 1e-16);
        assert!((e.approx + 0.01).abs() < 1e-17);
        assert!(matches!(epsilon_shift(2, 1, 1.0), Err(SpectraError::BranchViolation { .. })));
        assert!(epsilon_shift(1, 2, 0.1).is_err());
    }

    #[test]
    fn fine_series_exact_rationals() {
        let lv = fine_structure_series(&rat(1), &ratio(1, 10), 1, 1).unwrap();
        assert_eq!(
            lv.terms.unwrap(),
            vec![ratio(1, 2), ratio(-1, 200), ratio(-1, 80000), ratio(1, 8_000_000)]
        );
        assert_eq!(lv.value, ratio(3_959_901, 8_000_000));
        let t = fine_structure_terms(&rat(1), &ratio(1, 10), 2, 1).unwrap();
        assert_eq!(t[1], ratio(-1, 800));
        assert_eq!(t[2], ratio(-1, 10_000) / rat(64) * ratio(5, 2));
    }

    #[test]
    fn fine_series_zero_coupling() {
        let lv = fine_structure_series(&1.0, &0.0, 3, -2).unwrap();
        assert_eq!(lv.value, 0.5);
        assert_eq!(lv.terms.unwrap()[1..], [-0.0, -0.0, -0.0]);
        assert!(fine_structure_series(&1.0, &0.1, 2, -2).is_err());
        assert!(fine_structure_series(&1.0, &0.1, 2, 0).is_err());
    }

    #[test]
    fn quantum_number_bookkeeping() {
        let q = QuantumNumbers::with_k(3, -2).unwrap();
        assert_eq!((q.l, q.n_r()), (Some(2), Some(0)));
        let q = QuantumNumbers::with_k(3, 3).unwrap();
        assert_eq!((q.l, q.n_r()), (Some(2), Some(0)));
        assert_eq!(QuantumNumbers::from_radial(1, 2).n, 4);
    }

    #[test]
    fn levels_csv_header() {
        let lv = fine_structure_series(&1.0, &0.1, 1, 1).unwrap();
        let h = EnergyLevel { qn: QuantumNumbers::principal(2).unwrap(), value: -0.25, kind: LevelKind::Hydrogen, terms: None };
        let mut buf = Vec::new();
        write_levels_csv(&[lv, h], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "n,l_or_k,kind,term1,term2,term3,term4,value");
        assert!(lines[1].starts_with("1,1,series,0.5,"));
        assert_eq!(lines[2], "2,,hydrogen,,,,,-0.25");
    }
}

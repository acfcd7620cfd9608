use std::io::Write;

use nalgebra::{Complex, DMatrix};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::generators::{GeneratorSet, LABELS};
use super::operator::{commutator, interior_project, OperatorMatrix};
use super::space::TruncatedFockSpace;
use super::FockError;
use crate::scalar::{lit, Real};

/// Smallest singular value accepted for the expansion basis.
pub const MIN_SINGULAR_VALUE: f64 = 1e-8;

/// Labels of the expansion coefficients: the fifteen generators, then `I`.
pub fn coefficient_labels() -> Vec<&'static str> {
    LABELS.iter().copied().chain(std::iter::once("I")).collect()
}

/// Least-squares expansion of one commutator over the generators and the identity.
#[derive(Clone, Debug)]
pub struct ClosureReport<T: Real> {
    pub pair: (String, String),
    pub coefficients: Vec<Complex<T>>,
    /// Frobenius norm of the unexplained remainder on the interior.
    pub residual: T,
}

impl<T: Real> ClosureReport<T> {
    /// Index and value of the largest-magnitude coefficient, if any is nonzero.
    pub fn dominant(&self, tol: T) -> Option<(usize, Complex<T>)> {
        self.coefficients
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr().sqrt() > tol)
            .max_by(|a, b| a.1.norm_sqr().partial_cmp(&b.1.norm_sqr()).unwrap())
    }
}

struct ComplexPair<T>(Complex<T>);

impl<T: Real> Serialize for ComplexPair<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<T: Real> Serialize for ClosureReport<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ClosureReport", 3)?;
        st.serialize_field("pair", &[&self.pair.0, &self.pair.1])?;
        let coeffs: Vec<_> = self.coefficients.iter().map(|c| ComplexPair(*c)).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

/// Best scalar `c` with `[H, X] ≈ c·X` on the interior.
#[derive(Clone, Debug)]
pub struct LadderRow<T: Real> {
    pub label: String,
    pub c: Complex<T>,
    pub residual: T,
}

impl<T: Real> Serialize for LadderRow<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LadderRow", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("c", &ComplexPair(self.c))?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

/// Orthonormalised span of a list of operators, for repeated least-squares fits.
pub struct ExpansionBasis<T: Real> {
    columns: Vec<OperatorMatrix<T>>,
    q: Vec<OperatorMatrix<T>>,
    r: DMatrix<Complex<T>>,
}

impl<T: Real> ExpansionBasis<T> {
    /// Classical Gram–Schmidt with one reorthogonalisation pass.
    ///
    /// Fails when the operators are numerically dependent.
    pub fn new(columns: Vec<OperatorMatrix<T>>) -> Result<Self, FockError> {
        let k = columns.len();
        let zero = Complex::new(T::zero(), T::zero());
        let mut r = DMatrix::from_element(k, k, zero);
        let mut q: Vec<OperatorMatrix<T>> = Vec::with_capacity(k);
        for (j, col) in columns.iter().enumerate() {
            let mut v = col.clone();
            for _pass in 0..2 {
                for (i, qi) in q.iter().enumerate() {
                    let h = qi.inner(&v)?;
                    r[(i, j)] += h;
                    v = v.add_scaled(qi, -h)?;
                }
            }
            let norm = v.frobenius_norm();
            r[(j, j)] = Complex::new(norm, T::zero());
            if norm > T::zero() {
                v = v.scale(Complex::new(T::one() / norm, T::zero()));
            }
            q.push(v);
        }
        let basis = ExpansionBasis { columns, q, r };
        let smin = basis.singular_values().iter().copied().fold(T::max_value().unwrap(), T::min);
        if !(smin > lit::<T>(MIN_SINGULAR_VALUE)) {
            return Err(FockError::DegenerateTruncation { smallest_singular_value: smin.as_f64() });
        }
        Ok(basis)
    }

    /// Singular values of the stacked column operators, descending.
    pub fn singular_values(&self) -> Vec<T> {
        let mut s: Vec<T> = self.r.clone().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        s
    }

    /// Coefficients minimising `‖target − Σ cᵢ·columnᵢ‖` and that residual norm.
    pub fn expand(&self, target: &OperatorMatrix<T>) -> Result<(Vec<Complex<T>>, T), FockError> {
        let k = self.q.len();
        let mut x: Vec<Complex<T>> =
            self.q.iter().map(|qi| qi.inner(target)).collect::<Result<_, _>>()?;
        for i in (0..k).rev() {
            let mut s = x[i];
            for j in i + 1..k {
                s -= self.r[(i, j)] * x[j];
            }
            x[i] = s / self.r[(i, i)];
        }
        let mut rem = target.clone();
        for (c, col) in x.iter().zip(&self.columns) {
            rem = rem.add_scaled(col, -*c)?;
        }
        Ok((x, rem.frobenius_norm()))
    }
}

fn check_margin(margin: u32, space: &TruncatedFockSpace) -> Result<(), FockError> {
    if margin < 2 {
        return Err(FockError::MarginTooSmall(margin));
    }
    if margin > space.n_max() {
        return Err(FockError::MarginTooLarge { margin, n_max: space.n_max() });
    }
    Ok(())
}

/// Interior-projected generators followed by the interior identity.
pub fn projected_basis<T: Real>(
    gens: &GeneratorSet<T>,
    margin: u32,
) -> Result<Vec<OperatorMatrix<T>>, FockError> {
    let space = gens.space();
    let mut cols: Vec<OperatorMatrix<T>> = gens
        .generators()
        .iter()
        .map(|g| interior_project(space, g, margin))
        .collect::<Result<_, _>>()?;
    cols.push(interior_project(space, &OperatorMatrix::identity(space.dim(), "I"), margin)?);
    Ok(cols)
}

/// Expands all 105 pairwise commutators over `{generators, I}` on the interior.
///
/// Reports come in generator order: `(0,1), (0,2), …, (13,14)`.
pub fn closure_check<T: Real>(
    gens: &GeneratorSet<T>,
    margin: u32,
) -> Result<Vec<ClosureReport<T>>, FockError> {
    let space = gens.space();
    check_margin(margin, space)?;
    let basis = ExpansionBasis::new(projected_basis(gens, margin)?)?;
    let g = gens.generators();
    let mut reports = Vec::with_capacity(g.len() * (g.len() - 1) / 2);
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let comm = interior_project(space, &commutator(&g[i], &g[j])?, margin)?;
            let (coefficients, residual) = basis.expand(&comm)?;
            reports.push(ClosureReport {
                pair: (g[i].label().to_owned(), g[j].label().to_owned()),
                coefficients,
                residual,
            });
        }
    }
    Ok(reports)
}

/// For each generator `X`, the scalar `c` minimising `‖[H, X] − c·X‖` on the interior.
pub fn hamiltonian_ladder_check<T: Real>(
    gens: &GeneratorSet<T>,
    margin: u32,
) -> Result<Vec<LadderRow<T>>, FockError> {
    let space = gens.space();
    check_margin(margin, space)?;
    let h = gens.hamiltonian();
    gens.generators()
        .iter()
        .map(|x| {
            let comm = interior_project(space, &commutator(h, x)?, margin)?;
            let xp = interior_project(space, x, margin)?;
            let xx = xp.inner(&xp)?;
            let c = if xx.re > T::zero() {
                xp.inner(&comm)? / xx
            } else {
                Complex::new(T::zero(), T::zero())
            };
            let residual = comm.add_scaled(&xp, -c)?.frobenius_norm();
            Ok(LadderRow { label: x.label().to_owned(), c, residual })
        })
        .collect()
}

/// Long-form CSV: one row per coefficient.
///
/// Columns `pair_a, pair_b, coeff_index, re, im, residual`.
pub fn write_closure_csv<T: Real, W: Write>(
    reports: &[ClosureReport<T>],
    out: W,
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pair_a", "pair_b", "coeff_index", "re", "im", "residual"])?;
    for rep in reports {
        for (idx, c) in rep.coefficients.iter().enumerate() {
            w.write_record([
                rep.pair.0.clone(),
                rep.pair.1.clone(),
                idx.to_string(),
                c.re.to_string(),
                c.im.to_string(),
                rep.residual.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Columns `label, re, im, residual`.
pub fn write_ladder_csv<T: Real, W: Write>(rows: &[LadderRow<T>], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["label", "re", "im", "residual"])?;
    for row in rows {
        w.write_record([
            row.label.clone(),
            row.c.re.to_string(),
            row.c.im.to_string(),
            row.residual.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::generators::build_generators;
    use crate::fock::space::enumerate_basis;

    fn gens(n_max: u32) -> GeneratorSet<f64> {
        build_generators(&enumerate_basis(n_max).unwrap(), 1.0).unwrap()
    }

    fn idx(label: &str) -> usize {
        coefficient_labels().iter().position(|l| *l == label).unwrap()
    }

    #[test]
    fn su2_subalgebra_coefficients() {
        let reports = closure_check(&gens(6), 2).unwrap();
        let rep = reports.iter().find(|r| r.pair == ("Na_1".into(), "Na_3".into())).unwrap();
        // [Na_1, Na_3] = -2i Na_2, so [Na_3, Na_1] = 2i Na_2
        for (k, c) in rep.coefficients.iter().enumerate() {
            let want = if k == idx("Na_2") { Complex::new(0.0, -2.0) } else { Complex::new(0.0, 0.0) };
            assert!((c - want).norm() < 1e-10, "coefficient {k}: {c}");
        }
        assert!(rep.residual <= 1e-10);
    }

    #[test]
    fn pairing_commutator_gives_hamiltonian() {
        let reports = closure_check(&gens(6), 2).unwrap();
        let rep = reports.iter().find(|r| r.pair == ("P".into(), "P+".into())).unwrap();
        assert!((rep.coefficients[idx("H")] - Complex::new(1.0, 0.0)).norm() < 1e-10);
        assert!(rep.residual <= 1e-10);
    }

    #[test]
    fn degenerate_truncation_detected() {
        for n_max in [2, 3] {
            let err = closure_check(&gens(n_max), 2).unwrap_err();
            assert!(matches!(err, FockError::DegenerateTruncation { .. }), "{err}");
        }
    }

    #[test]
    fn margin_validation() {
        let g = gens(4);
        assert!(matches!(closure_check(&g, 1), Err(FockError::MarginTooSmall(1))));
        assert!(matches!(hamiltonian_ladder_check(&g, 5), Err(FockError::MarginTooLarge { .. })));
    }

    #[test]
    fn ladder_check_values() {
        let rows = hamiltonian_ladder_check(&gens(6), 2).unwrap();
        for row in &rows {
            let want = match row.label.as_str() {
                l if l.starts_with("M+") || l == "P+" => 2.0,
                l if l.starts_with("M_") || l == "P" => -2.0,
                _ => 0.0,
            };
            assert!((row.c - Complex::new(want, 0.0)).norm() < 1e-12, "{}: {}", row.label, row.c);
            assert!(row.residual <= 1e-12);
        }
    }

    #[test]
    fn report_json_shape() {
        let rep = ClosureReport {
            pair: ("P".to_string(), "P+".to_string()),
            coefficients: vec![Complex::new(1.0, -0.5)],
            residual: 0.0,
        };
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["pair"], serde_json::json!(["P", "P+"]));
        assert_eq!(v["coefficients"], serde_json::json!([[1.0, -0.5]]));
    }

    #[test]
    fn long_csv_layout() {
        let reports = closure_check(&gens(4), 2).unwrap();
        let mut buf = Vec::new();
        write_closure_csv(&reports, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "pair_a,pair_b,coeff_index,re,im,residual");
        assert_eq!(lines.count(), 105 * 16);
    }
}

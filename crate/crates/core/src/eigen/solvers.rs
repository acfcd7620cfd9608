use std::io::Write;

use serde::Serialize;

use super::{EigenError, EigenResult, Problem, RadialGrid, TridiagonalOperator};
use crate::scalar::{lit, Real};

/// Inner end point of the default grids, in units of the natural length.
pub const RMIN_SCALE: f64 = 1e-12;
/// Default Coulomb outer end point, in units of `1/Z²`.
pub const COULOMB_RMAX_SCALE: f64 = 60.0;
/// Default parabolic outer end point, in units of `1/ω`.
pub const PARABOLIC_UMAX_SCALE: f64 = 30.0;
/// Extra room past the turning point required of parabolic domains.
pub const PARABOLIC_MARGIN: f64 = 20.0;
/// Largest accepted step, in units of the natural length.
pub const MAX_STEP_SCALE: f64 = 0.05;
/// Relative tolerance on `Z² = 2ωn` when assembling oscillator levels.
pub const ASSEMBLY_TOL: f64 = 1e-2;

fn check_count(count: usize) -> Result<(), EigenError> {
    if count == 0 {
        return Err(EigenError::InvalidParameter("count must be >= 1".into()));
    }
    Ok(())
}

fn check_positive<T: Real>(name: &str, x: T) -> Result<(), EigenError> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(EigenError::InvalidParameter(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

/// `[10⁻¹²/ω, 30/ω]` with `n` interior points.
pub fn parabolic_grid<T: Real>(omega: T, n: usize) -> Result<RadialGrid<T>, EigenError> {
    check_positive("omega", omega)?;
    RadialGrid::new(lit::<T>(RMIN_SCALE) / omega, lit::<T>(PARABOLIC_UMAX_SCALE) / omega, n)
}

/// `[10⁻¹²/Z², max(60, 7n²)/Z²]` with `points` interior points, sized for
/// levels up to principal number `n`.
pub fn coulomb_grid<T: Real>(z2: T, n: u32, points: usize) -> Result<RadialGrid<T>, EigenError> {
    check_positive("z2", z2)?;
    let reach = lit::<T>(COULOMB_RMAX_SCALE).max(T::cst(7.0 * (n as f64).powi(2)));
    RadialGrid::new(lit::<T>(RMIN_SCALE) / z2, reach / z2, points)
}

/// Lowest `count` eigenvalues `β` of
/// `−(uU′)′ + (m²/4u)U + ω²uU = βU` on `(0, u_max)`, `U(u_max) = 0`.
///
/// With `U = u^{|m|/2} W` the centrifugal term drops out and the problem
/// becomes `−(u^{a+1}W′)′ + ω²u^{a+1}W = β u^a W`, `a = |m|`, which is
/// discretized by finite volumes on the nodes `r_min + jh`, `j = 0..=N`.
/// The node at `r_min ≈ 0` carries a half cell with zero flux through
/// `u = 0`, so regularity there is natural rather than imposed.
pub fn solve_parabolic_block<T: Real>(
    omega: T,
    m_phi: i32,
    grid: &RadialGrid<T>,
    count: usize,
) -> Result<EigenResult<T>, EigenError> {
    check_positive("omega", omega)?;
    check_count(count)?;
    let problem = Problem::ParabolicBlock { omega, m_phi };
    let beta_top = problem.analytic(count - 1);
    let required = (beta_top / omega + lit::<T>(PARABOLIC_MARGIN)) / omega;
    if grid.r_max() < required {
        return Err(EigenError::DomainTooShort { end: grid.r_max().as_f64(), required: required.as_f64() });
    }
    let h = grid.step();
    let limit = lit::<T>(MAX_STEP_SCALE) / omega;
    if h > limit {
        return Err(EigenError::GridTooCoarse { step: h.as_f64(), limit: limit.as_f64() });
    }

    let a = m_phi.unsigned_abs() as i32;
    let half = h / lit::<T>(2.0);
    let w2 = omega * omega;
    let cells = grid.n() + 1;
    let mut weight = Vec::with_capacity(cells);
    let mut diag = Vec::with_capacity(cells);
    let mut flux = Vec::with_capacity(cells);
    for j in 0..cells {
        let u = grid.point(j);
        let lo = (u - half).max(T::zero());
        let hi = u + half;
        let b = (hi.powi(a + 1) - lo.powi(a + 1)) / T::from_count(a as usize + 1);
        let q = w2 * (hi.powi(a + 2) - lo.powi(a + 2)) / T::from_count(a as usize + 2);
        let right = hi.powi(a + 1) / h;
        let left = if j == 0 { T::zero() } else { flux[j - 1] };
        weight.push(b);
        diag.push(left + right + q);
        flux.push(right);
    }
    let scale: Vec<T> = weight.iter().map(|b| T::one() / b.sqrt()).collect();
    let d: Vec<T> = diag.iter().zip(&scale).map(|(&x, &s)| x * s * s).collect();
    let off: Vec<T> = (0..cells - 1).map(|j| -flux[j] * scale[j] * scale[j + 1]).collect();
    let op = TridiagonalOperator::new(d, off)?;
    Ok(EigenResult { eigenvalues: op.lowest_eigenvalues(count), grid: *grid, problem, est_error: None })
}

/// Lowest `count` eigenvalues of `−w″ + [l(l+1)/R² − 2Z²/R]w = Ew` with
/// `w = 0` at both ends, three-point stencil.
pub fn solve_coulomb_radial<T: Real>(
    z2: T,
    l: u32,
    grid: &RadialGrid<T>,
    count: usize,
) -> Result<EigenResult<T>, EigenError> {
    check_positive("z2", z2)?;
    check_count(count)?;
    let n_top = T::from_count(count + l as usize);
    let required = lit::<T>(3.0) * n_top * n_top / z2;
    if grid.r_max() < required {
        return Err(EigenError::DomainTooShort { end: grid.r_max().as_f64(), required: required.as_f64() });
    }
    let h = grid.step();
    let limit = lit::<T>(MAX_STEP_SCALE) / z2;
    if h > limit {
        return Err(EigenError::GridTooCoarse { step: h.as_f64(), limit: limit.as_f64() });
    }
    let inv_h2 = T::one() / (h * h);
    let ll = T::from_count((l as usize) * (l as usize + 1));
    let two = lit::<T>(2.0);
    let diag: Vec<T> = (1..=grid.n())
        .map(|j| {
            let r = grid.point(j);
            two * inv_h2 + ll / (r * r) - two * z2 / r
        })
        .collect();
    let op = TridiagonalOperator::new(diag, vec![-inv_h2; grid.n() - 1])?;
    Ok(EigenResult {
        eigenvalues: op.lowest_eigenvalues(count),
        grid: *grid,
        problem: Problem::CoulombRadial { z2, l },
        est_error: None,
    })
}

/// Oscillator level assembled from two parabolic blocks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OscillatorLevel<T> {
    pub n_u: usize,
    pub n_v: usize,
    pub m_phi: i32,
    /// `n_u + n_v + |m| + 1`
    pub n: u32,
    /// `β_u + β_v`
    pub z2: T,
    /// `2ωn`
    pub target: T,
    pub rel_err: T,
}

/// All pairs `(β_u, β_v)` as oscillator levels, sorted by `n` then `n_u`.
///
/// Fails if a sum misses `2ωn` by more than [`ASSEMBLY_TOL`].
pub fn assemble_oscillator_levels<T: Real>(
    beta_u: &EigenResult<T>,
    beta_v: &EigenResult<T>,
    m_phi: i32,
) -> Result<Vec<OscillatorLevel<T>>, EigenError> {
    let omega = match (beta_u.problem, beta_v.problem) {
        (
            Problem::ParabolicBlock { omega: wu, m_phi: mu },
            Problem::ParabolicBlock { omega: wv, m_phi: mv },
        ) => {
            if wu != wv {
                return Err(EigenError::Incompatible(format!("omega {wu} vs {wv}")));
            }
            if mu != m_phi || mv != m_phi {
                return Err(EigenError::Incompatible(format!("m_phi {mu}, {mv} vs {m_phi}")));
            }
            wu
        }
        _ => return Err(EigenError::Incompatible("both results must be parabolic blocks".into())),
    };
    let mut out = Vec::new();
    for (n_u, &bu) in beta_u.eigenvalues.iter().enumerate() {
        for (n_v, &bv) in beta_v.eigenvalues.iter().enumerate() {
            let n = (n_u + n_v + m_phi.unsigned_abs() as usize + 1) as u32;
            let z2 = bu + bv;
            let target = lit::<T>(2.0) * omega * T::from_count(n as usize);
            let rel_err = ((z2 - target) / target).abs();
            if rel_err > lit::<T>(ASSEMBLY_TOL) {
                return Err(EigenError::AssemblyMismatch {
                    n,
                    z2: z2.as_f64(),
                    target: target.as_f64(),
                    rel_err: rel_err.as_f64(),
                });
            }
            out.push(OscillatorLevel { n_u, n_v, m_phi, n, z2, target, rel_err });
        }
    }
    out.sort_by_key(|lv| (lv.n, lv.n_u));
    Ok(out)
}

/// One level of the oscillator → Coulomb comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualityRow<T> {
    pub n: u32,
    pub z2_numeric: T,
    pub e_coulomb: T,
    pub minus_4w2: T,
    pub rel_err: T,
}

/// For `n = 1..=levels` at fixed `ω`: `Z²` from the `m = 0` blocks with
/// `(n_u, n_v) = (n − 1, 0)`, then the `n`-th `l = 0` Coulomb level at that
/// coupling, compared with `−4ω²`. Both solves use `points` interior points.
pub fn duality_check<T: Real>(omega: T, levels: u32, points: usize) -> Result<Vec<DualityRow<T>>, EigenError> {
    if levels == 0 {
        return Err(EigenError::InvalidParameter("levels must be >= 1".into()));
    }
    let ugrid = parabolic_grid(omega, points)?;
    let blocks = solve_parabolic_block(omega, 0, &ugrid, levels as usize)?;
    let assembled = assemble_oscillator_levels(&blocks, &blocks, 0)?;
    let minus_4w2 = -lit::<T>(4.0) * omega * omega;
    let mut rows = Vec::with_capacity(levels as usize);
    for n in 1..=levels {
        let z2 = assembled
            .iter()
            .find(|lv| lv.n == n && lv.n_v == 0)
            .map(|lv| lv.z2)
            .expect("every n up to levels is assembled");
        let cgrid = coulomb_grid(z2, n, points)?;
        let coulomb = solve_coulomb_radial(z2, 0, &cgrid, n as usize)?;
        let e = coulomb.eigenvalues[n as usize - 1];
        rows.push(DualityRow { n, z2_numeric: z2, e_coulomb: e, minus_4w2, rel_err: ((e - minus_4w2) / minus_4w2).abs() });
    }
    Ok(rows)
}

/// `|λ_fine − λ_coarse|/3` per level.
///
/// The fine grid must cover the same domain with `2N` or `2N + 1` points.
pub fn richardson_estimate<T: Real>(coarse: &EigenResult<T>, fine: &EigenResult<T>) -> Result<Vec<T>, EigenError> {
    if coarse.eigenvalues.len() != fine.eigenvalues.len() {
        return Err(EigenError::LevelCountMismatch(coarse.eigenvalues.len(), fine.eigenvalues.len()));
    }
    if coarse.problem != fine.problem {
        return Err(EigenError::Incompatible("different problems".into()));
    }
    let (cg, fg) = (coarse.grid, fine.grid);
    if cg.r_min() != fg.r_min() || cg.r_max() != fg.r_max() {
        return Err(EigenError::Incompatible("different domains".into()));
    }
    if cg != fg && fg.n() != 2 * cg.n() && fg.n() != 2 * cg.n() + 1 {
        return Err(EigenError::Incompatible(format!("fine grid has {} points, coarse {}", fg.n(), cg.n())));
    }
    let three = lit::<T>(3.0);
    Ok(coarse.eigenvalues.iter().zip(&fine.eigenvalues).map(|(&c, &f)| (f - c).abs() / three).collect())
}

/// `λ_fine + (λ_fine − λ_coarse)/3` per level.
pub fn richardson_extrapolate<T: Real>(coarse: &EigenResult<T>, fine: &EigenResult<T>) -> Result<Vec<T>, EigenError> {
    richardson_estimate(coarse, fine)?;
    let three = lit::<T>(3.0);
    Ok(coarse.eigenvalues.iter().zip(&fine.eigenvalues).map(|(&c, &f)| f + (f - c) / three).collect())
}

/// `fine` with its error estimate filled in.
pub fn with_richardson<T: Real>(coarse: &EigenResult<T>, fine: EigenResult<T>) -> Result<EigenResult<T>, EigenError> {
    let est = richardson_estimate(coarse, &fine)?;
    Ok(EigenResult { est_error: Some(est), ..fine })
}

/// Columns `problem, param1, param2, level_index, eigenvalue, analytic,
/// rel_err, est_error`.
pub fn write_eigen_csv<T: Real, W: Write>(results: &[EigenResult<T>], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["problem", "param1", "param2", "level_index", "eigenvalue", "analytic", "rel_err", "est_error"])?;
    for res in results {
        let (p1, p2) = res.problem.params();
        let analytic = res.analytic();
        let rel = res.rel_errors();
        for (k, e) in res.eigenvalues.iter().enumerate() {
            let est = res.est_error.as_ref().map(|v| v[k].to_string()).unwrap_or_default();
            w.write_record([
                res.problem.name().to_string(),
                p1.clone(),
                p2.clone(),
                k.to_string(),
                e.to_string(),
                analytic[k].to_string(),
                rel[k].to_string(),
                est,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_duality_csv<T: Real, W: Write>(rows: &[DualityRow<T>], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

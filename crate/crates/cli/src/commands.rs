use serde_json::Value;
use so42_core::eigen::{self, EigenError, EigenResult, RadialGrid};
use so42_core::fock::{self, FockError};
use so42_core::geometry::{self, Spinor4};
use so42_core::spectra::{self, EnergyLevel, LevelKind, QuantumNumbers, SpectraError};

use crate::output::{json_float, Cell, Table};
use crate::range::{parse_int_range, parse_real_range, RangeError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Exit 2.
    #[error("{0}")]
    Validation(String),
    /// Exit 3.
    #[error("{0}")]
    Numerical(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<RangeError> for CliError {
    fn from(e: RangeError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<FockError> for CliError {
    fn from(e: FockError) -> Self {
        match e {
            FockError::DegenerateTruncation { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<EigenError> for CliError {
    fn from(e: EigenError) -> Self {
        match e {
            EigenError::InvalidGrid(_) | EigenError::InvalidParameter(_) | EigenError::InvalidOperator(_) => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

/// A rendered report plus, when a tolerance was missed, why.
pub struct Outcome {
    pub table: Table,
    pub failure: Option<String>,
    /// Extra line for stderr (CSV has no room for it).
    pub note: Option<String>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Outcome { table, failure: None, note: None }
    }
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Validation(format!("{name} must be finite, got {x}")))
    }
}

pub struct AlgebraArgs {
    pub n_max: u32,
    pub margin: u32,
    pub omega: f64,
    pub tol: f64,
    pub ladder_tol: f64,
}

pub fn verify_algebra(a: &AlgebraArgs) -> Result<Outcome, CliError> {
    if !(4..=12).contains(&a.n_max) {
        return Err(CliError::Validation(format!("--nmax must be in [4, 12], got {}", a.n_max)));
    }
    let space = fock::enumerate_basis(a.n_max)?;
    let gens = fock::build_generators(&space, a.omega)?;
    let closure = fock::closure_check(&gens, a.margin)?;
    let ladder = fock::hamiltonian_ladder_check(&gens, a.margin)?;
    let basis = fock::ExpansionBasis::new(fock::projected_basis(&gens, a.margin)?)?;
    let labels = fock::coefficient_labels();

    let mut t = Table::new(&["kind", "pair_a", "pair_b", "coeff_index", "coeff_label", "re", "im", "residual"])
        .json_column("coefficients");
    let mut max_closure = 0.0f64;
    for r in &closure {
        max_closure = max_closure.max(r.residual);
        let dom = r.dominant(a.tol);
        let coeffs: Vec<Value> = r
            .coefficients
            .iter()
            .map(|c| Value::Array(vec![json_float(c.re), json_float(c.im)]))
            .collect();
        t.push(vec![
            "closure".into(),
            r.pair.0.as_str().into(),
            r.pair.1.as_str().into(),
            dom.map(|(i, _)| i as i64).into(),
            dom.map(|(i, _)| labels[i]).into(),
            dom.map(|(_, c)| c.re).into(),
            dom.map(|(_, c)| c.im).into(),
            r.residual.into(),
            Cell::Json(Value::Array(coeffs)),
        ]);
    }
    let mut max_ladder = 0.0f64;
    let mut max_dev = 0.0f64;
    for (i, row) in ladder.iter().enumerate() {
        let dev = (row.c.re - fock::QUANTA_SHIFT[i] as f64).hypot(row.c.im);
        max_ladder = max_ladder.max(row.residual);
        max_dev = max_dev.max(dev);
        t.push(vec![
            "ladder".into(),
            "H".into(),
            row.label.as_str().into(),
            (i as i64).into(),
            labels[i].into(),
            row.c.re.into(),
            row.c.im.into(),
            row.residual.into(),
            Cell::Null,
        ]);
    }
    let min_sv = basis.singular_values().into_iter().fold(f64::INFINITY, f64::min);
    let pass = max_closure <= a.tol && max_ladder <= a.ladder_tol && max_dev <= a.ladder_tol;

    t.meta("command", "verify-algebra");
    t.meta("n_max", a.n_max);
    t.meta("margin", a.margin);
    t.meta("dim", space.dim() as u64);
    t.meta("tol", json_float(a.tol));
    t.meta("ladder_tol", json_float(a.ladder_tol));
    t.meta("closure_rows", closure.len() as u64);
    t.meta("ladder_rows", ladder.len() as u64);
    t.meta("max_closure_residual", json_float(max_closure));
    t.meta("max_ladder_residual", json_float(max_ladder));
    t.meta("max_ladder_deviation", json_float(max_dev));
    t.meta("min_singular_value", json_float(min_sv));
    t.meta("pass", pass);
    let failure = (!pass).then(|| {
        format!(
            "algebra check failed: closure {max_closure:e} (tol {:e}), ladder {max_ladder:e} / deviation {max_dev:e} (tol {:e})",
            a.tol, a.ladder_tol
        )
    });
    Ok(Outcome { table: t, failure, note: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Oscillator,
    Hydrogen,
    Kg,
    Mass,
    Fine,
}

pub struct SpectrumArgs {
    pub mode: Mode,
    pub omega: f64,
    pub z2: f64,
    pub m: f64,
    pub m1: f64,
    pub gamma: f64,
    pub n: String,
    pub k: Option<i32>,
}

fn principal_range(s: &str) -> Result<Vec<u32>, CliError> {
    parse_int_range(s)?
        .into_iter()
        .map(|n| {
            u32::try_from(n)
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| CliError::Validation(format!("principal number n must be >= 1, got {n}")))
        })
        .collect()
}

/// Allowed `k` for principal number `n`, by `l`: `−l` then `l + 1`.
fn k_values(n: u32) -> Vec<i32> {
    (0..n as i32).flat_map(|l| if l == 0 { vec![1] } else { vec![-l, l + 1] }).collect()
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Outcome, CliError> {
    for (name, x) in [("omega", a.omega), ("z2", a.z2), ("m", a.m), ("m1", a.m1), ("gamma", a.gamma)] {
        finite(name, x)?;
    }
    let ns = principal_range(&a.n)?;
    let alpha_sq = -a.gamma * a.gamma;
    let mut levels: Vec<EnergyLevel<f64>> = Vec::new();
    for &n in &ns {
        match a.mode {
            Mode::Oscillator => {
                for l in 0..n {
                    let value = spectra::oscillator_level(&a.omega, n - 1 - l, l)?;
                    levels.push(EnergyLevel {
                        qn: QuantumNumbers::from_radial(n - 1 - l, l),
                        value,
                        kind: LevelKind::Oscillator,
                        terms: None,
                    });
                }
            }
            Mode::Hydrogen => levels.push(EnergyLevel {
                qn: QuantumNumbers::principal(n)?,
                value: spectra::hydrogen_level(&a.z2, n)?,
                kind: LevelKind::Hydrogen,
                terms: None,
            }),
            Mode::Kg => {
                let (qn, n_star) = match a.k {
                    Some(k) => {
                        let eps = spectra::epsilon_shift(n, k, a.gamma)?;
                        (QuantumNumbers::with_k(n, k)?, ((n * n) as f64 + eps.exact).sqrt())
                    }
                    None => (QuantumNumbers::principal(n)?, n as f64),
                };
                levels.push(EnergyLevel {
                    qn,
                    value: spectra::kg_energy(&a.m1, &alpha_sq, &n_star)?,
                    kind: LevelKind::KgExact,
                    terms: None,
                });
            }
            Mode::Mass => levels.push(EnergyLevel {
                qn: QuantumNumbers::principal(n)?,
                value: spectra::mass_level(&a.m, &alpha_sq, n)?,
                kind: LevelKind::Mass,
                terms: None,
            }),
            Mode::Fine => {
                let ks = a.k.map(|k| vec![k]).unwrap_or_else(|| k_values(n));
                for k in ks {
                    levels.push(spectra::fine_structure_series(&a.m, &a.gamma, n, k)?);
                }
            }
        }
    }

    let mut t = Table::new(&["n", "l_or_k", "kind", "term1", "term2", "term3", "term4", "value"]);
    for lv in &levels {
        let lk: Cell = lv.qn.k.map(|k| k as i64).or(lv.qn.l.map(|l| l as i64)).into();
        let term = |i: usize| -> Cell { lv.terms.as_ref().map(|t| t[i]).into() };
        t.push(vec![lv.qn.n.into(), lk, lv.kind.as_str().into(), term(0), term(1), term(2), term(3), lv.value.into()]);
    }
    t.meta("command", "spectrum");
    t.meta("mode", format!("{:?}", a.mode).to_lowercase());
    match a.mode {
        Mode::Oscillator => t.meta("omega", json_float(a.omega)),
        Mode::Hydrogen => t.meta("z2", json_float(a.z2)),
        Mode::Kg => {
            t.meta("m1", json_float(a.m1));
            t.meta("gamma", json_float(a.gamma));
        }
        Mode::Mass | Mode::Fine => {
            t.meta("m", json_float(a.m));
            t.meta("gamma", json_float(a.gamma));
        }
    }
    if let Some(k) = a.k {
        t.meta("k", k);
    }
    Ok(Outcome::ok(t))
}

pub struct DualityArgs {
    pub omega: f64,
    pub levels: u32,
    pub grid_n: usize,
    pub tol: f64,
}

pub fn duality(a: &DualityArgs) -> Result<Outcome, CliError> {
    finite("omega", a.omega)?;
    let rows = eigen::duality_check(a.omega, a.levels, a.grid_n)?;
    let mut t = Table::new(&["n", "z2_numeric", "e_coulomb", "minus_4w2", "rel_err"]);
    let mut worst = 0.0f64;
    for r in &rows {
        worst = worst.max(r.rel_err);
        t.push(vec![r.n.into(), r.z2_numeric.into(), r.e_coulomb.into(), r.minus_4w2.into(), r.rel_err.into()]);
    }
    let pass = worst <= a.tol;
    t.meta("command", "duality");
    t.meta("omega", json_float(a.omega));
    t.meta("levels", a.levels);
    t.meta("grid_n", a.grid_n as u64);
    t.meta("tol", json_float(a.tol));
    t.meta("max_rel_err", json_float(worst));
    t.meta("pass", pass);
    let failure = (!pass).then(|| format!("duality rel_err {worst:e} exceeds {:e}", a.tol));
    Ok(Outcome { table: t, failure, note: None })
}

pub fn map(xi: &str) -> Result<Outcome, CliError> {
    let parts: Vec<&str> = xi.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Validation(format!("--xi needs 4 comma-separated components, got {}", parts.len())));
    }
    let mut c = [0.0; 4];
    for (slot, p) in c.iter_mut().zip(&parts) {
        let v: f64 = p.trim().parse().map_err(|_| CliError::Validation(format!("cannot parse '{}' as a number", p.trim())))?;
        *slot = finite("xi", v)?;
    }
    let s = Spinor4::new(c);
    let x = geometry::hopf_map(&s);
    let r = geometry::norm3(x);
    let norm = s.norm_sqr();
    let residual = if norm > 0.0 { (r - norm).abs() / norm } else { r };
    let phys = geometry::physical_point(x);
    let p = geometry::to_parabolic(phys);
    let (z, rho, _) = geometry::parabolic_to_cylindrical(&p);
    let lame = geometry::lame_coefficients(p.u, p.v).ok();

    let mut t = Table::new(&[
        "x1", "x2", "x3", "r", "R", "u", "v", "phi", "z", "rho", "h1", "h2", "h3", "norm_residual",
    ]);
    t.push(vec![
        x[0].into(),
        x[1].into(),
        x[2].into(),
        r.into(),
        (r / 2.0).into(),
        p.u.into(),
        p.v.into(),
        p.phi.into(),
        z.into(),
        rho.into(),
        lame.map(|h| h.h1).into(),
        lame.map(|h| h.h2).into(),
        lame.map(|h| h.h3).into(),
        residual.into(),
    ]);
    t.meta("command", "map");
    t.meta("xi", Value::Array(c.iter().map(|&v| json_float(v)).collect()));
    Ok(Outcome::ok(t))
}

pub struct FineArgs {
    pub m: f64,
    pub n: u32,
    pub k: i32,
    pub gamma: String,
}

pub fn report_fine(a: &FineArgs) -> Result<Outcome, CliError> {
    finite("m", a.m)?;
    let grid = parse_real_range(&a.gamma)?;
    for &g in &grid {
        finite("gamma", g)?;
    }
    let rep = spectra::series_vs_exact_report(a.m, a.n, a.k, &grid)?;
    let mut t = Table::new(&["gamma", "e_series", "e_exact", "residual"])
        .json_column("mass")
        .json_column("epsilon")
        .json_column("n_star_sq");
    for r in &rep.rows {
        t.push(vec![
            r.gamma.into(),
            r.e_series.into(),
            r.e_exact.into(),
            r.residual.into(),
            r.mass.into(),
            r.epsilon.into(),
            r.n_star_sq.into(),
        ]);
    }
    t.meta("command", "report-fine");
    t.meta("m", json_float(a.m));
    t.meta("n", a.n);
    t.meta("k", a.k);
    t.meta("zero_coupling_limit", json_float(rep.zero_coupling_limit));
    t.meta("fitted_order", rep.fitted_order.map(json_float).unwrap_or(Value::Null));
    let note = Some(match rep.fitted_order {
        Some(p) => format!("fitted_order: {}", crate::output::shortest(p)),
        None => "fitted_order: -".to_string(),
    });
    Ok(Outcome { table: t, failure: None, note })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ProblemKind {
    Parabolic,
    Coulomb,
}

pub struct SolveArgs {
    pub problem: ProblemKind,
    pub omega: f64,
    pub m_phi: i32,
    pub z2: f64,
    pub l: u32,
    pub count: usize,
    pub grid_n: usize,
    pub r_max: Option<f64>,
    pub richardson: bool,
}

pub fn solve(a: &SolveArgs) -> Result<Outcome, CliError> {
    let solve_on = |grid: &RadialGrid<f64>| -> Result<EigenResult<f64>, EigenError> {
        match a.problem {
            ProblemKind::Parabolic => eigen::solve_parabolic_block(a.omega, a.m_phi, grid, a.count),
            ProblemKind::Coulomb => eigen::solve_coulomb_radial(a.z2, a.l, grid, a.count),
        }
    };
    let mut grid = match a.problem {
        ProblemKind::Parabolic => eigen::parabolic_grid(finite("omega", a.omega)?, a.grid_n)?,
        ProblemKind::Coulomb => {
            eigen::coulomb_grid(finite("z2", a.z2)?, (a.count + a.l as usize) as u32, a.grid_n)?
        }
    };
    if let Some(r_max) = a.r_max {
        grid = RadialGrid::new(grid.r_min(), finite("r-max", r_max)?, a.grid_n)?;
    }
    let result = if a.richardson {
        let coarse = solve_on(&grid)?;
        eigen::with_richardson(&coarse, solve_on(&grid.refined())?)?
    } else {
        solve_on(&grid)?
    };

    let (p1, p2): (Cell, Cell) = match result.problem {
        eigen::Problem::ParabolicBlock { omega, m_phi } => (omega.into(), m_phi.into()),
        eigen::Problem::CoulombRadial { z2, l } => (z2.into(), l.into()),
    };
    let mut t = Table::new(&["problem", "param1", "param2", "level_index", "eigenvalue", "analytic", "rel_err", "est_error"]);
    let analytic = result.analytic();
    let rel = result.rel_errors();
    for (k, &e) in result.eigenvalues.iter().enumerate() {
        t.push(vec![
            result.problem.name().into(),
            p1.clone(),
            p2.clone(),
            (k as i64).into(),
            e.into(),
            analytic[k].into(),
            rel[k].into(),
            result.est_error.as_ref().map(|v| v[k]).into(),
        ]);
    }
    t.meta("command", "solve");
    t.meta("problem", result.problem.name());
    t.meta("r_min", json_float(result.grid.r_min()));
    t.meta("r_max", json_float(result.grid.r_max()));
    t.meta("grid_n", result.grid.n() as u64);
    t.meta("step", json_float(result.grid.step()));
    Ok(Outcome::ok(t))
}

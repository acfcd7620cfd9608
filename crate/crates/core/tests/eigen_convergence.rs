use so42_core::eigen::*;

fn errors(res: &EigenResult<f64>) -> Vec<f64> {
    res.eigenvalues.iter().zip(res.analytic()).map(|(e, a)| (e - a).abs()).collect()
}

fn assert_second_order(coarse: &EigenResult<f64>, fine: &EigenResult<f64>, what: &str) {
    for (k, (c, f)) in errors(coarse).iter().zip(errors(fine)).enumerate() {
        let ratio = c / f;
        assert!((ratio - 4.0).abs() <= 0.5, "{what} level {k}: ratio {ratio}");
    }
}

#[test]
fn parabolic_second_order() {
    for (omega, m) in [(1.0, 0), (1.0, 1), (2.0, 0)] {
        let grid = parabolic_grid(omega, 1000).unwrap();
        let coarse = solve_parabolic_block(omega, m, &grid, 3).unwrap();
        let fine = solve_parabolic_block(omega, m, &grid.refined(), 3).unwrap();
        assert_second_order(&coarse, &fine, &format!("parabolic omega {omega} m {m}"));
        assert!(fine.eigenvalues.iter().all(|&b| b > 0.0));
    }
}

#[test]
fn coulomb_second_order() {
    for z2 in [1.0, 2.0] {
        let grid = coulomb_grid(z2, 3, 3000).unwrap();
        let coarse = solve_coulomb_radial(z2, 0, &grid, 3).unwrap();
        let fine = solve_coulomb_radial(z2, 0, &grid.refined(), 3).unwrap();
        assert_second_order(&coarse, &fine, &format!("coulomb Z2 {z2}"));
        assert!(fine.eigenvalues.iter().all(|&e| e < 0.0));
    }
}

#[test]
fn hydrogen_levels_at_spec_grid() {
    for z2 in [1.0, 2.0] {
        let grid = coulomb_grid(z2, 3, 6000).unwrap();
        let res = solve_coulomb_radial(z2, 0, &grid, 3).unwrap();
        assert!(res.rel_errors().iter().all(|&e| e <= 1e-4), "{:?}", res.rel_errors());
        let p = solve_coulomb_radial(z2, 1, &grid, 1).unwrap();
        assert!(p.rel_errors()[0] <= 1e-4);
    }
}

#[test]
fn coulomb_accepts_spec_example_grid() {
    let grid = RadialGrid::new(1e-6, 60.0, 6000).unwrap();
    let res = solve_coulomb_radial(1.0, 0, &grid, 3).unwrap();
    assert!(res.rel_errors().iter().all(|&e| e <= 1e-4));
}

#[test]
fn orbital_degeneracy_within_estimate() {
    let grid = coulomb_grid(1.0f64, 2, 3000).unwrap();
    let (sc, sf) = (
        solve_coulomb_radial(1.0, 0, &grid, 2).unwrap(),
        solve_coulomb_radial(1.0, 0, &grid.refined(), 2).unwrap(),
    );
    let (pc, pf) = (
        solve_coulomb_radial(1.0, 1, &grid, 1).unwrap(),
        solve_coulomb_radial(1.0, 1, &grid.refined(), 1).unwrap(),
    );
    let budget = richardson_estimate(&sc, &sf).unwrap()[1] + richardson_estimate(&pc, &pf).unwrap()[0];

    let s = richardson_extrapolate(&sc, &sf).unwrap()[1];
    let p = richardson_extrapolate(&pc, &pf).unwrap()[0];
    assert!((s - p).abs() <= budget, "extrapolated gap {} vs {budget}", (s - p).abs());

    // the s and p errors have opposite signs, so the raw splitting is the
    // sum of both discretization errors
    let gap = (sf.eigenvalues[1] - pf.eigenvalues[0]).abs();
    assert!((gap / budget - 1.0).abs() <= 1e-3, "gap {gap} vs {budget}");
}

#[test]
fn richardson_tracks_true_error() {
    let grid = parabolic_grid(1.0, 1000).unwrap();
    let coarse = solve_parabolic_block(1.0, 0, &grid, 3).unwrap();
    let fine = with_richardson(&coarse, solve_parabolic_block(1.0, 0, &grid.refined(), 3).unwrap()).unwrap();
    for (est, err) in fine.est_error.as_ref().unwrap().iter().zip(errors(&fine)) {
        assert!((est / err - 1.0).abs() < 0.1);
    }
}

#[test]
fn duality_pipeline() {
    let rows = duality_check(0.5, 2, 6000).unwrap();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert!(r.rel_err <= 2e-4, "n {}: {}", r.n, r.rel_err);
        assert!((r.z2_numeric - r.n as f64).abs() <= 1e-4 * r.n as f64);
        assert_eq!(r.minus_4w2, -1.0);
    }
    assert!(matches!(duality_check(0.5, 2, 64), Err(EigenError::GridTooCoarse { .. })));
    assert!(duality_check(0.5, 0, 6000).is_err());
}

#[test]
fn duality_refinement_improves() {
    let coarse = duality_check(0.5f64, 2, 2000).unwrap();
    let fine = duality_check(0.5, 2, 4001).unwrap();
    for (c, f) in coarse.iter().zip(&fine) {
        let ratio = c.rel_err / f.rel_err;
        assert!((ratio - 4.0).abs() <= 0.5, "n {}: {ratio}", c.n);
    }
}

#[test]
fn single_precision_solver_runs() {
    let grid = parabolic_grid(1.0f32, 1000).unwrap();
    let res = solve_parabolic_block(1.0f32, 0, &grid, 1).unwrap();
    assert!((res.eigenvalues[0] - 1.0).abs() < 1e-2);
}

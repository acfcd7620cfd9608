use proptest::prelude::*;
use so42_core::scalar::{rat, ratio, Rational, Scalar};
use so42_core::spectra::*;

#[test]
fn duality_reproduces_hydrogen() {
    for z2 in [0.5f64, 1.0, 2.0, 4.0] {
        for n in 1..=6 {
            let (_, e) = duality_frequency(&z2, n).unwrap();
            let h = hydrogen_level(&z2, n).unwrap();
            assert!(((e - h) / h).abs() <= 1e-15, "Z2 {z2}, n {n}");
        }
    }
}

#[test]
fn oscillator_principal_degeneracy() {
    for n in 1..=10u32 {
        let reference: Rational = oscillator_level(&ratio(3, 7), n - 1, 0).unwrap();
        for l in 1..n {
            assert_eq!(oscillator_level(&ratio(3, 7), n - 1 - l, l).unwrap(), reference);
        }
        assert_eq!(reference, rat(2) * ratio(3, 7) * rat(n as i64));
    }
}

#[test]
fn epsilon_remainder_is_fourth_order() {
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        let c = |g: f64| {
            let e = epsilon_shift(n, k, g).unwrap();
            (e.exact - e.approx).abs() / g.powi(4)
        };
        let (c1, c2, c3) = (c(0.1), c(0.05), c(0.025));
        assert!((c1 / c2 - 1.0).abs() < 0.01 && (c2 / c3 - 1.0).abs() < 0.01, "({n},{k}): {c1} {c2} {c3}");
    }
}

#[test]
fn rydberg_coefficient_limit() {
    for (n, k) in [(1, 1), (2, 1), (3, 2)] {
        let c = rydberg_coefficient(1.0, n, k, 1e-3).unwrap();
        let target = -0.5 / (n * n) as f64;
        assert!(((c - target) / target).abs() <= 1e-3);
    }
}

#[test]
fn report_records_fourth_order_residual() {
    let grid: Vec<f64> = (0..20).map(|i| 10f64.powf(-3.0 + 2.0 * i as f64 / 19.0)).collect();
    let rep = series_vs_exact_report(1.0, 1, 1, &grid).unwrap();
    assert_eq!(rep.rows.len(), 20);
    assert_eq!(rep.zero_coupling_limit, 0.5);
    let p = rep.fitted_order.unwrap();
    assert!((3.5..4.5).contains(&p), "fitted order {p}");
    assert!(matches!(
        series_vs_exact_report(1.0, 1, 1, &[2.0]),
        Err(SpectraError::BranchViolation { .. })
    ));
}

#[test]
fn rational_and_float_agree() {
    let q: Rational = kg_energy(&rat(3), &ratio(-1, 64), &ratio(5, 4)).unwrap();
    let f = kg_energy(&3.0, &(-1.0 / 64.0), &1.25).unwrap();
    assert_eq!(f64::from_exact(&q), f);
}

proptest! {
    #[test]
    fn series_terms_scale_with_gamma(mi in 1i32..1000, gi in 1i32..400, n in 1u32..6, kk in 1i32..6, neg in any::<bool>()) {
        prop_assume!(kk <= n as i32 && !(neg && kk == n as i32));
        let k = if neg { -kk } else { kk };
        let (m, g) = (mi as f64 / 100.0, gi as f64 / 1000.0);
        let a = fine_structure_terms(&m, &g, n, k).unwrap();
        let b = fine_structure_terms(&m, &(2.0 * g), n, k).unwrap();
        prop_assert_eq!(b[0], a[0]);
        prop_assert_eq!(b[1], 4.0 * a[1]);
        prop_assert_eq!(b[2], 16.0 * a[2]);
        prop_assert_eq!(b[3], 64.0 * a[3]);
    }

    #[test]
    fn kg_reflection_symmetry(m1 in 0.1..10.0f64, a in -0.9..0.9f64, ns in 1.0..6.0f64) {
        let e = kg_energy(&m1, &a, &ns).unwrap() * kg_energy(&m1, &(-a), &ns).unwrap();
        prop_assert!(((e - m1 * m1) / (m1 * m1)).abs() <= 1e-12);
    }

    #[test]
    fn oscillator_is_linear_in_omega(wi in 1i32..10000, n_r in 0u32..20, l in 0u32..20) {
        let w = wi as f64 / 100.0;
        let base = oscillator_level(&w, n_r, l).unwrap();
        prop_assert_eq!(oscillator_level(&(2.0 * w), n_r, l).unwrap(), 2.0 * base);
    }

    #[test]
    fn mass_zero_coupling(zt in 0.01..100.0f64, n in 1u32..20) {
        prop_assert_eq!(mass_level(&zt, &0.0, n).unwrap(), zt / 2.0);
    }
}

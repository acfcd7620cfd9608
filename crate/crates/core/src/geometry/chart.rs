//! Spinor to 3-space map and the parabolic/cylindrical coordinate chain.
//!
//! The spinor map has length `r = |ξ|²`. Physical coordinates are half of it,
//! with radius `R = r/2`, and parabolic coordinates are `u = R + z`,
//! `v = R − z`, so `u + v = r`.

use serde::Serialize;

use super::GeometryError;
use crate::scalar::{lit, Real};

/// Four real spinor components, equivalently `ξc1 = ξ₁ + iξ₂`, `ξc2 = ξ₃ + iξ₄`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Spinor4<T: Real> {
    pub xi: [T; 4],
}

impl<T: Real> Spinor4<T> {
    pub fn new(xi: [T; 4]) -> Self {
        Spinor4 { xi }
    }

    /// `|ξ|² = Σ ξ_ν²`.
    pub fn norm_sqr(&self) -> T {
        self.xi.iter().fold(T::zero(), |a, &x| a + x * x)
    }

    pub fn neg(&self) -> Self {
        Spinor4 { xi: self.xi.map(|x| -x) }
    }

    /// Polar coordinates `(ρ₁, χ₁, ρ₂, χ₂)` of the two component planes.
    pub fn polar(&self) -> (T, T, T, T) {
        let [a, b, c, d] = self.xi;
        ((a * a + b * b).sqrt(), b.atan2(a), (c * c + d * d).sqrt(), d.atan2(c))
    }
}

/// Quadratic map `x₁ + ix₂ = 2·ξc1·ξc2`, `x₃ = |ξc1|² − |ξc2|²`.
///
/// `|x| = |ξ|²` and `ξ`, `−ξ` land on the same point.
pub fn hopf_map<T: Real>(spinor: &Spinor4<T>) -> [T; 3] {
    let [a, b, c, d] = spinor.xi;
    let two = lit::<T>(2.0);
    // (a + ib)(c + id)
    let re = a * c - b * d;
    let im = a * d + b * c;
    [two * re, two * im, (a * a + b * b) - (c * c + d * d)]
}

/// Physical position corresponding to a map output: half of it.
pub fn physical_point<T: Real>(x: [T; 3]) -> [T; 3] {
    x.map(|v| v * lit::<T>(0.5))
}

pub fn norm3<T: Real>(x: [T; 3]) -> T {
    x[0].hypot(x[1]).hypot(x[2])
}

/// Parabolic coordinates `(u, v, φ)` with `u, v ≥ 0` and `φ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParabolicPoint<T: Real> {
    pub u: T,
    pub v: T,
    pub phi: T,
}

impl<T: Real> ParabolicPoint<T> {
    pub fn new(u: T, v: T, phi: T) -> Result<Self, GeometryError> {
        if !(u >= T::zero() && v >= T::zero()) || !u.is_finite() || !v.is_finite() {
            return Err(GeometryError::OffChart { u: u.as_f64(), v: v.as_f64() });
        }
        Ok(ParabolicPoint { u, v, phi: wrap_angle(phi) })
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn wrap_angle<T: Real>(a: T) -> T {
    let tau = T::two_pi();
    let r = a % tau;
    let r = if r < T::zero() { r + tau } else { r };
    if r >= tau {
        T::zero()
    } else {
        r
    }
}

/// Parabolic coordinates of a physical point: `u = R + z`, `v = R − z`,
/// `φ = atan2(y, x)` in `[0, 2π)`; on-axis points get `φ = 0`.
pub fn to_parabolic<T: Real>(x: [T; 3]) -> ParabolicPoint<T> {
    let rho = x[0].hypot(x[1]);
    let radius = rho.hypot(x[2]);
    let z = x[2];
    // R ± z loses digits when z ≈ ∓R; use uv = ρ² for the small one
    let (u, v) = if z >= T::zero() {
        let u = radius + z;
        let v = if u > T::zero() { rho * rho / u } else { T::zero() };
        (u, v)
    } else {
        let v = radius - z;
        (rho * rho / v, v)
    };
    let phi = if rho > T::zero() { wrap_angle(x[1].atan2(x[0])) } else { T::zero() };
    ParabolicPoint { u, v, phi }
}

/// `z = (u − v)/2`, `ρ = √(uv)`, `φ` unchanged.
pub fn parabolic_to_cylindrical<T: Real>(p: &ParabolicPoint<T>) -> (T, T, T) {
    ((p.u - p.v) * lit::<T>(0.5), (p.u * p.v).sqrt(), p.phi)
}

/// Scale factors of the parabolic frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LameCoefficients<T: Real> {
    pub h1: T,
    pub h2: T,
    pub h3: T,
}

impl<T: Real> LameCoefficients<T> {
    /// `ds² = h1² du² + h2² dv² + h3² dφ²`.
    pub fn arc_length_sqr(&self, du: T, dv: T, dphi: T) -> T {
        let sq = |h: T, d: T| h * h * d * d;
        sq(self.h1, du) + sq(self.h2, dv) + sq(self.h3, dphi)
    }
}

fn check_chart<T: Real>(u: T, v: T) -> Result<(), GeometryError> {
    if !(u > T::zero() && v > T::zero()) || !u.is_finite() || !v.is_finite() {
        return Err(GeometryError::OffChart { u: u.as_f64(), v: v.as_f64() });
    }
    Ok(())
}

/// `h1 = ½√((u+v)/u)`, `h2 = ½√((u+v)/v)`, `h3 = √(uv)`.
pub fn lame_coefficients<T: Real>(u: T, v: T) -> Result<LameCoefficients<T>, GeometryError> {
    check_chart(u, v)?;
    let half = lit::<T>(0.5);
    let s = u + v;
    Ok(LameCoefficients {
        h1: half * (s / u).sqrt(),
        h2: half * (s / v).sqrt(),
        h3: (u * v).sqrt(),
    })
}

/// Finite-displacement check of `dz² + dρ² = ¼(u+v)(du²/u + dv²/v)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricCheck<T: Real> {
    pub lhs: T,
    pub rhs: T,
    pub abs_err: T,
}

pub fn metric_identity_check<T: Real>(
    u: T,
    v: T,
    du: T,
    dv: T,
) -> Result<MetricCheck<T>, GeometryError> {
    check_chart(u, v)?;
    check_chart(u + du, v + dv)?;
    let (u1, v1) = (u + du, v + dv);
    let dz = (du - dv) * lit::<T>(0.5);
    let (p0, p1) = (u * v, u1 * v1);
    let drho = (p1 - p0) / (p1.sqrt() + p0.sqrt());
    let lhs = dz * dz + drho * drho;
    let rhs = lit::<T>(0.25) * (u + v) * (du * du / u + dv * dv / v);
    Ok(MetricCheck { lhs, rhs, abs_err: (lhs - rhs).abs() })
}

/// Angles of the separated solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleChain<T: Real> {
    /// `χ = χ₁ + χ₂`, spanning `[0, 4π)` as the plane angles go round.
    pub chi: T,
    /// `η = χ₂ − χ₁`; labels the section and never enters physical coordinates.
    pub eta: T,
    /// `φ = χ/2` reduced into `[0, 2π)`.
    pub phi: T,
}

pub fn angle_chain<T: Real>(chi1: T, chi2: T) -> AngleChain<T> {
    let chi = chi1 + chi2;
    AngleChain { chi, eta: chi2 - chi1, phi: wrap_angle(chi * lit::<T>(0.5)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    #[test]
    fn map_poles_and_equator() {
        assert_eq!(hopf_map(&Spinor4::new([1.0, 0.0, 0.0, 0.0])), [0.0, 0.0, 1.0]);
        assert_eq!(hopf_map(&Spinor4::new([0.0, 0.0, 1.0, 0.0])), [0.0, 0.0, -1.0]);
        let x = hopf_map(&Spinor4::new([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0]));
        assert!((x[0] - 1.0).abs() < 1e-15 && x[1] == 0.0 && x[2].abs() < 1e-15);
        let xi = Spinor4::new([0.3, -1.2, 0.7, 2.0]);
        assert_eq!(hopf_map(&xi), hopf_map(&xi.neg()));
    }

    #[test]
    fn to_parabolic_examples() {
        let p = to_parabolic::<f64>([0.75f64.sqrt(), 0.0, 0.5]);
        assert!((p.u - 1.5).abs() < 1e-15 && (p.v - 0.5).abs() < 1e-15);
        let p = to_parabolic::<f64>([1.0, 0.0, 0.0]);
        assert!((p.u - 1.0).abs() < 1e-15 && (p.v - 1.0).abs() < 1e-15);
        let origin = to_parabolic([0.0f64, 0.0, 0.0]);
        assert_eq!((origin.u, origin.v, origin.phi), (0.0, 0.0, 0.0));
        let axis = to_parabolic([0.0f64, 0.0, -2.0]);
        assert_eq!((axis.u, axis.v, axis.phi), (0.0, 4.0, 0.0));
        let back = to_parabolic::<f64>([0.0, -1.0, 0.0]);
        assert!((back.phi - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn cylindrical_examples() {
        let cyl = |u: f64, v: f64| parabolic_to_cylindrical(&ParabolicPoint::new(u, v, 0.0).unwrap());
        assert_eq!(cyl(1.0, 1.0), (0.0, 1.0, 0.0));
        assert_eq!(cyl(2.0, 0.0), (1.0, 0.0, 0.0));
        let (z, rho, _) = cyl(1.5, 0.5);
        assert_eq!(z, 0.5);
        assert!((rho - 0.8660254037844386).abs() < 1e-15);
        assert!(ParabolicPoint::new(-1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn lame_examples() {
        let h = lame_coefficients::<f64>(1.0, 1.0).unwrap();
        assert!((h.h1 - SQRT_2 / 2.0).abs() <= 1e-15);
        assert!((h.h2 - SQRT_2 / 2.0).abs() <= 1e-15);
        assert_eq!(h.h3, 1.0);
        let h = lame_coefficients::<f64>(4.0, 1.0).unwrap();
        assert!((h.h1 - 0.5590169943749474).abs() < 1e-15);
        assert!((h.h2 - 1.118033988749895).abs() < 1e-15);
        assert_eq!(h.h3, 2.0);
        let hs = lame_coefficients::<f64>(12.0, 3.0).unwrap();
        assert!((hs.h1 - h.h1).abs() < 1e-15 && (hs.h2 - h.h2).abs() < 1e-15);
        assert!((hs.h3 - 3.0 * h.h3).abs() < 1e-14);
        assert!(matches!(lame_coefficients(0.0, 1.0), Err(GeometryError::OffChart { .. })));
        assert!(lame_coefficients(1.0, -2.0).is_err());
    }

    #[test]
    fn metric_examples() {
        let m = metric_identity_check(1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!((m.lhs, m.rhs), (0.0, 0.0));
        let m = metric_identity_check::<f64>(1.0, 1.0, 1e-4, 0.0).unwrap();
        assert!(m.abs_err / m.rhs <= 1e-4);
        assert!(metric_identity_check(1.0, 1.0, -2.0, 0.0).is_err());
    }

    #[test]
    fn angle_examples() {
        let a = angle_chain(0.0, 0.0);
        assert_eq!((a.chi, a.eta, a.phi), (0.0, 0.0, 0.0));
        let a = angle_chain::<f64>(PI, PI);
        assert_eq!((a.chi, a.eta), (2.0 * PI, 0.0));
        assert!((a.phi - PI).abs() < 1e-15);
        let a = angle_chain::<f64>(0.0, 3.0 * PI);
        assert_eq!((a.chi, a.eta), (3.0 * PI, 3.0 * PI));
        assert!((a.phi - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn wrap_is_half_open() {
        assert_eq!(wrap_angle(2.0 * PI), 0.0);
        assert!((wrap_angle(-0.5 * PI) - 1.5 * PI).abs() < 1e-15);
        assert!(wrap_angle(-1e-300f64) < 2.0 * PI);
    }
}

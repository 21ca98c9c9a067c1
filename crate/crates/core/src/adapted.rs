//! Coordinates `(u, lambda, phi)` adapted to the fibration by `H1`, and
//! the semi-Euclidean spheres `S2(1)` and `S2(-1)`.
//!
//! On the timelike part (`|x|^2 > 0`):
//!
//! ```text
//! x0 = lambda cosh(phi),  x1 = lambda sinh(phi),  x2 = u lambda exp(phi)
//! ```
//!
//! with `sign(lambda) = sign(x0)`; on the spacelike part (`|x|^2 < 0`) the
//! roles of `cosh` and `sinh` swap and `sign(lambda) = sign(x1)`. In both
//! charts `x0 + x1 = lambda exp(phi)`, so `u` is the base coordinate
//! [`pi1`](crate::group::pi1) and `(lambda, phi)` move along the fiber.

use crate::algebra::{AlgebraKind, Element};
use crate::error::{Error, Result};
use crate::numeric;
use crate::EQ_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `|x|^2 > 0`
    Timelike,
    /// `|x|^2 < 0`
    Spacelike,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Adapted {
    pub u: f64,
    pub lambda: f64,
    pub phi: f64,
    pub chart: Chart,
}

/// `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(v: f64) -> Sign {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl core::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Point of `S2(1)` in adapted coordinates; `eps` selects the component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint {
    pub u: f64,
    pub phi: f64,
    pub eps: Sign,
}

pub fn to_adapted(x: &Element) -> Result<Adapted> {
    if x.kind() != AlgebraKind::TypeII {
        return Err(Error::UnsupportedKind { op: "adapted coordinates", kind: x.kind() });
    }
    let [x0, x1, x2] = x.coeffs();
    let n = x0 * x0 - x1 * x1;
    if n.abs() <= 1e-12 * 1.0f64.max(x.coeff_len_sq()) {
        return Err(Error::Domain("adapted coordinates are undefined on the null cone"));
    }
    let u = x2 / (x0 + x1);
    if n > 0.0 {
        let lambda = Sign::of(x0).value() * libm::sqrt(n);
        Ok(Adapted { u, lambda, phi: libm::atanh(x1 / x0), chart: Chart::Timelike })
    } else {
        let lambda = Sign::of(x1).value() * libm::sqrt(-n);
        Ok(Adapted { u, lambda, phi: libm::atanh(x0 / x1), chart: Chart::Spacelike })
    }
}

pub fn from_adapted(a: &Adapted) -> Result<Element> {
    if a.lambda == 0.0 {
        return Err(Error::Precondition("adapted coordinates need lambda != 0"));
    }
    let (ch, sh) = (libm::cosh(a.phi), libm::sinh(a.phi));
    let x2 = a.u * a.lambda * libm::exp(a.phi);
    match a.chart {
        Chart::Timelike => Element::new(AlgebraKind::TypeII, a.lambda * ch, a.lambda * sh, x2),
        Chart::Spacelike => Element::new(AlgebraKind::TypeII, a.lambda * sh, a.lambda * ch, x2),
    }
}

/// The element `rho (cosh(psi) + sinh(psi) e1)` of `H1`.
pub fn structure_element(rho: f64, psi: f64) -> Result<Element> {
    if rho == 0.0 {
        return Err(Error::Precondition("structure group element needs rho != 0"));
    }
    Element::new(AlgebraKind::TypeII, rho * libm::cosh(psi), rho * libm::sinh(psi), 0.0)
}

/// Left multiplication by [`structure_element`]`(rho, psi)` in adapted
/// coordinates: `u' = u`, `lambda' = rho lambda`, `phi' = phi + psi`.
pub fn structure_action(rho: f64, psi: f64, x: &Adapted) -> Result<Adapted> {
    if rho == 0.0 {
        return Err(Error::Precondition("structure group element needs rho != 0"));
    }
    Ok(Adapted { u: x.u, lambda: x.lambda * rho, phi: x.phi + psi, chart: x.chart })
}

/// `eps (cosh(phi), sinh(phi), u exp(phi))`.
pub fn sphere_point(p: &SpherePoint) -> Result<Element> {
    let e = p.eps.value();
    let c = [e * libm::cosh(p.phi), e * libm::sinh(p.phi), e * p.u * libm::exp(p.phi)];
    Element::from_coeffs(AlgebraKind::TypeII, c)
}

/// Adapted coordinates of a point of `S2(1)`.
pub fn sphere_coords(x: &Element) -> Result<SpherePoint> {
    if !on_sphere(x, Sign::Plus) {
        return Err(Error::Precondition("point is not on S2(1)"));
    }
    let a = to_adapted(x)?;
    Ok(SpherePoint { u: a.u, phi: a.phi, eps: Sign::of(a.lambda) })
}

/// `|x|^2 = r2` within `1e-9`.
pub fn on_sphere(x: &Element, r2: Sign) -> bool {
    x.kind() == AlgebraKind::TypeII && (x.norm_sq_fast() - r2.value()).abs() <= EQ_TOL
}

/// The element `eps1 (cosh(psi) + sinh(psi) e1)` of `S1`.
pub fn s1_element(eps1: Sign, psi: f64) -> Element {
    Element::ii(eps1.value() * libm::cosh(psi), eps1.value() * libm::sinh(psi), 0.0)
}

/// Left multiplication by [`s1_element`] in sphere coordinates:
/// `u' = u`, `eps' = eps eps1`, `phi' = phi + psi`.
pub fn s1_action(eps1: Sign, psi: f64, p: &SpherePoint) -> SpherePoint {
    SpherePoint { u: p.u, phi: p.phi + psi, eps: p.eps * eps1 }
}

/// Central-difference step used by [`sphere_metric_at`].
pub const METRIC_FD_STEP: f64 = 1e-5;

/// Gram matrix of `∂r/∂u`, `∂r/∂phi` under the scalar product, computed by
/// central differences of [`sphere_point`]. Rows and columns are ordered
/// `(u, phi)`; the exact value is `[[0, 0], [0, -1]]` everywhere.
pub fn sphere_metric_at(p: &SpherePoint) -> Result<[[f64; 2]; 2]> {
    let eps = p.eps;
    let r = |q: [f64; 2]| Ok(sphere_point(&SpherePoint { u: q[0], phi: q[1], eps })?.coeffs());
    let jac = numeric::central_diff(r, [p.u, p.phi], METRIC_FD_STEP)?;
    let column = |n: usize| [jac[0][n], jac[1][n], jac[2][n]];
    let form = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] - a[1] * b[1];
    let mut g = [[0.0; 2]; 2];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = form(column(i), column(j));
        }
    }
    Ok(g)
}

/// Rank of a symmetric 2x2 matrix with entries below `tol` treated as zero.
pub fn rank2(g: &[[f64; 2]; 2], tol: f64) -> usize {
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if det.abs() > tol {
        2
    } else if g.iter().flatten().any(|v| v.abs() > tol) {
        1
    } else {
        0
    }
}

/// Anti-rotation `x -> a x` carrying `S2(1)` onto `S2(-1)`.
pub fn swap_spheres(a: &Element, x: &Element) -> Result<Element> {
    if a.kind() != AlgebraKind::TypeII || (a.norm_sq_fast() + 1.0).abs() > EQ_TOL {
        return Err(Error::Precondition("swap_spheres needs |a|^2 = -1"));
    }
    if !on_sphere(x, Sign::Plus) {
        return Err(Error::Precondition("swap_spheres needs x on S2(1)"));
    }
    a.mul(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::pi1;

    fn close(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn to_adapted_examples() {
        let a = to_adapted(&Element::ii(2.0, 0.0, 0.0)).unwrap();
        assert_eq!(a, Adapted { u: 0.0, lambda: 2.0, phi: 0.0, chart: Chart::Timelike });
        let b = to_adapted(&Element::ii(0.0, 3.0, 0.0)).unwrap();
        assert_eq!(b, Adapted { u: 0.0, lambda: 3.0, phi: 0.0, chart: Chart::Spacelike });
        assert!(matches!(to_adapted(&Element::ii(1.0, 1.0, 2.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn negative_lambda_example() {
        let a = Adapted { u: -8.0, lambda: -1.0, phi: libm::log(1.0 / 3.0), chart: Chart::Timelike };
        let x = from_adapted(&a).unwrap();
        assert!(close(x.coeffs(), [-5.0 / 3.0, 4.0 / 3.0, 8.0 / 3.0], 1e-14));
        let back = to_adapted(&x).unwrap();
        assert!((back.u - a.u).abs() < 1e-13);
        assert!((back.lambda - a.lambda).abs() < 1e-14);
        assert!((back.phi - a.phi).abs() < 1e-14);
    }

    #[test]
    fn from_adapted_examples() {
        let one = Adapted { u: 0.0, lambda: 1.0, phi: 0.0, chart: Chart::Timelike };
        assert_eq!(from_adapted(&one).unwrap().coeffs(), [1.0, 0.0, 0.0]);
        let four = Adapted { u: 4.0, ..one };
        assert_eq!(from_adapted(&four).unwrap().coeffs(), [1.0, 0.0, 4.0]);
        let s = Adapted { u: 0.0, lambda: 1.0, phi: 1.0, chart: Chart::Spacelike };
        assert_eq!(from_adapted(&s).unwrap().coeffs(), [libm::sinh(1.0), libm::cosh(1.0), 0.0]);
        assert!(from_adapted(&Adapted { lambda: 0.0, ..one }).is_err());
    }

    #[test]
    fn norm_of_from_adapted() {
        let t = Adapted { u: 2.0, lambda: -1.5, phi: 0.7, chart: Chart::Timelike };
        assert!((from_adapted(&t).unwrap().norm_sq().unwrap() - 2.25).abs() < 1e-12);
        let s = Adapted { chart: Chart::Spacelike, ..t };
        assert!((from_adapted(&s).unwrap().norm_sq().unwrap() + 2.25).abs() < 1e-12);
    }

    #[test]
    fn structure_action_examples() {
        let x = Adapted { u: 4.0, lambda: 1.0, phi: 0.0, chart: Chart::Timelike };
        let y = structure_action(2.0, 0.5, &x).unwrap();
        assert_eq!(y, Adapted { u: 4.0, lambda: 2.0, phi: 0.5, chart: Chart::Timelike });
        let prod = structure_element(2.0, 0.5).unwrap().mul(&from_adapted(&x).unwrap()).unwrap();
        assert!((prod.c2() - 8.0 * libm::exp(0.5)).abs() < 1e-12);
        assert!(close(prod.coeffs(), from_adapted(&y).unwrap().coeffs(), 1e-12));
        assert_eq!(structure_action(1.0, 0.0, &x).unwrap(), x);
        let twice = structure_action(3.0, -0.25, &y).unwrap();
        assert_eq!(twice, structure_action(6.0, 0.25, &x).unwrap());
        assert!(structure_action(0.0, 1.0, &x).is_err());
    }

    #[test]
    fn sphere_points() {
        let p = SpherePoint { u: 0.0, phi: 0.0, eps: Sign::Plus };
        assert_eq!(sphere_point(&p).unwrap().coeffs(), [1.0, 0.0, 0.0]);
        let q = SpherePoint { u: 1.0, phi: 0.0, eps: Sign::Minus };
        assert_eq!(sphere_point(&q).unwrap().coeffs(), [-1.0, 0.0, -1.0]);
        let r = SpherePoint { u: -2.5, phi: 1.3, eps: Sign::Minus };
        let x = sphere_point(&r).unwrap();
        assert!(on_sphere(&x, Sign::Plus));
        assert!((pi1(&x).unwrap() - r.u).abs() < 1e-12);
        let back = sphere_coords(&x).unwrap();
        assert!((back.u - r.u).abs() < 1e-12 && (back.phi - r.phi).abs() < 1e-12);
        assert_eq!(back.eps, Sign::Minus);
    }

    #[test]
    fn sphere_membership() {
        let x = Element::ii(libm::cosh(3.0), libm::sinh(3.0), 17.0);
        assert!(on_sphere(&x, Sign::Plus));
        assert!(on_sphere(&Element::ii(0.0, 1.0, 0.0), Sign::Minus));
        let null = Element::ii(1.0, 1.0, 0.0);
        assert!(!on_sphere(&null, Sign::Plus) && !on_sphere(&null, Sign::Minus));
    }

    #[test]
    fn sphere_metric() {
        let expect = [[0.0, 0.0], [0.0, -1.0]];
        for p in [SpherePoint { u: 0.0, phi: 0.0, eps: Sign::Plus }, SpherePoint { u: 5.0, phi: 2.0, eps: Sign::Minus }]
        {
            let g = sphere_metric_at(&p).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((g[i][j] - expect[i][j]).abs() < 1e-6, "{g:?}");
                }
            }
            assert_eq!(rank2(&g, 1e-6), 1);
        }
    }

    #[test]
    fn swapping_spheres() {
        let e1 = Element::ii(0.0, 1.0, 0.0);
        let one = Element::unit(AlgebraKind::TypeII);
        let y = swap_spheres(&e1, &one).unwrap();
        assert_eq!(y.coeffs(), [0.0, 1.0, 0.0]);
        assert!(on_sphere(&y, Sign::Minus));
        let x = Element::ii(libm::cosh(1.0), libm::sinh(1.0), 0.0);
        assert!(on_sphere(&swap_spheres(&e1, &x).unwrap(), Sign::Minus));
        let a = Element::ii(libm::sinh(1.0), libm::cosh(1.0), 2.0);
        let z = sphere_point(&SpherePoint { u: 0.3, phi: -0.8, eps: Sign::Minus }).unwrap();
        assert!(on_sphere(&swap_spheres(&a, &z).unwrap(), Sign::Minus));
        assert!(swap_spheres(&one, &one).is_err());
        assert!(swap_spheres(&e1, &e1).is_err());
    }

    #[test]
    fn s1_action_matches_multiplication() {
        let p = SpherePoint { u: 1.5, phi: 0.4, eps: Sign::Plus };
        let q = s1_action(Sign::Minus, -1.1, &p);
        let prod = s1_element(Sign::Minus, -1.1).mul(&sphere_point(&p).unwrap()).unwrap();
        assert!(close(prod.coeffs(), sphere_point(&q).unwrap().coeffs(), 1e-12));
    }
}

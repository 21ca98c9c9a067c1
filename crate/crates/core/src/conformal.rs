//! Semi-conformal model: stereographic projection of `S2(1)` from the pole
//! `N = (1, 0, 0)` onto the plane `x0 = 0`.
//!
//! The pole line `x0 = 1, x1 = 0` and the lines `x = +-1` of the plane have
//! no finite image; operations reject them with [`Error::Domain`].

use crate::adapted::{on_sphere, Sign, SpherePoint};
use crate::algebra::{AlgebraKind, Element};
use crate::error::{Error, Result};

/// `(x, y)` on the plane `x0 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }
}

const POLE_TOL: f64 = 1e-12;

fn off_lines(x: f64) -> Result<()> {
    if (1.0 - x * x).abs() <= POLE_TOL {
        Err(Error::Domain("the lines x = +-1 have no preimage on the sphere"))
    } else {
        Ok(())
    }
}

/// `x = x1/(1 - x0)`, `y = x2/(1 - x0)`.
pub fn stereo(q: &Element) -> Result<PlanePoint> {
    if !on_sphere(q, Sign::Plus) {
        return Err(Error::Precondition("stereographic projection needs a point of S2(1)"));
    }
    let den = 1.0 - q.c0();
    if den.abs() <= POLE_TOL {
        return Err(Error::Domain("points with x0 = 1 project to ideal elements"));
    }
    Ok(PlanePoint { x: q.c1() / den, y: q.c2() / den })
}

/// Inverse projection:
/// `x0 = -(1 + x^2)/(1 - x^2)`, `x1 = 2x/(1 - x^2)`, `x2 = 2y/(1 - x^2)`.
pub fn stereo_inv(p: &PlanePoint) -> Result<Element> {
    off_lines(p.x)?;
    let d = 1.0 - p.x * p.x;
    Element::new(AlgebraKind::TypeII, -(1.0 + p.x * p.x) / d, 2.0 * p.x / d, 2.0 * p.y / d)
}

/// Sphere coordinates of `stereo_inv(p)`:
/// `phi = ln(eps (x - 1)/(x + 1))`, `u = -2y/(1 - x)^2`, with `eps = +1`
/// for `|x| > 1` and `eps = -1` for `|x| < 1` so the logarithm is real.
pub fn adapted_from_plane(p: &PlanePoint) -> Result<SpherePoint> {
    off_lines(p.x)?;
    let ratio = (p.x - 1.0) / (p.x + 1.0);
    let eps = if ratio > 0.0 { Sign::Plus } else { Sign::Minus };
    let phi = libm::log(eps.value() * ratio);
    Ok(SpherePoint { u: p_map(p)?, phi, eps })
}

/// Base coordinate of a plane point, `u = -2y/(1 - x)^2`; constant along
/// each fiber parabola.
pub fn p_map(p: &PlanePoint) -> Result<f64> {
    if p.x == 1.0 {
        return Err(Error::Domain("p is undefined on the line x = 1"));
    }
    let d = 1.0 - p.x;
    Ok(-2.0 * p.y / (d * d))
}

/// `4/(x^2 - 1)^2`, the ratio of the sphere's linear element to `-dx^2`.
pub fn conformal_factor(x: f64) -> Result<f64> {
    off_lines(x)?;
    let d = x * x - 1.0;
    Ok(4.0 / (d * d))
}

/// Ordinate of the image of the fiber `u = c`: `y = -c/2 (x - 1)^2`.
pub fn fiber_image(c: f64, x: f64) -> f64 {
    let d = x - 1.0;
    -c / 2.0 * d * d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapted::sphere_point;

    fn close3(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn stereo_examples() {
        assert_eq!(stereo(&Element::ii(-1.0, 0.0, 0.0)).unwrap(), PlanePoint::new(0.0, 0.0));
        let q = Element::ii(-5.0 / 3.0, 4.0 / 3.0, 8.0 / 3.0);
        let p = stereo(&q).unwrap();
        assert!((p.x - 0.5).abs() < 1e-15 && (p.y - 1.0).abs() < 1e-15);
        let r = stereo(&Element::ii(libm::cosh(1.0), libm::sinh(1.0), 0.0)).unwrap();
        assert_eq!(r, PlanePoint::new(libm::sinh(1.0) / (1.0 - libm::cosh(1.0)), 0.0));
        assert!(matches!(stereo(&Element::ii(1.0, 0.0, 3.0)), Err(Error::Domain(_))));
        assert!(matches!(stereo(&Element::ii(2.0, 0.0, 0.0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn stereo_inv_examples() {
        assert_eq!(stereo_inv(&PlanePoint::new(0.0, 0.0)).unwrap().coeffs(), [-1.0, 0.0, 0.0]);
        let q = stereo_inv(&PlanePoint::new(0.5, 1.0)).unwrap();
        assert!(close3(q.coeffs(), [-5.0 / 3.0, 4.0 / 3.0, 8.0 / 3.0], 1e-15));
        let r = stereo_inv(&PlanePoint::new(2.0, 0.0)).unwrap();
        assert!(close3(r.coeffs(), [5.0 / 3.0, -4.0 / 3.0, 0.0], 1e-15));
        assert!((r.norm_sq().unwrap() - 1.0).abs() < 1e-15);
        assert!(stereo_inv(&PlanePoint::new(1.0, 2.0)).is_err());
        assert!(stereo_inv(&PlanePoint::new(-1.0, 2.0)).is_err());
    }

    #[test]
    fn plane_to_sphere_coordinates() {
        let a = adapted_from_plane(&PlanePoint::new(0.5, 1.0)).unwrap();
        assert!((a.phi - libm::log(1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(a.u, -8.0);
        assert_eq!(a.eps, Sign::Minus);
        let q = sphere_point(&a).unwrap();
        assert!(close3(q.coeffs(), [-5.0 / 3.0, 4.0 / 3.0, 8.0 / 3.0], 1e-14));

        let b = adapted_from_plane(&PlanePoint::new(0.0, 0.0)).unwrap();
        assert_eq!((b.phi, b.u, b.eps), (0.0, 0.0, Sign::Minus));
        assert_eq!(sphere_point(&b).unwrap().coeffs(), [-1.0, 0.0, 0.0]);

        let c = adapted_from_plane(&PlanePoint::new(2.0, 0.0)).unwrap();
        assert!((c.phi - libm::log(1.0 / 3.0)).abs() < 1e-15);
        assert_eq!((c.u, c.eps), (0.0, Sign::Plus));
        assert!(adapted_from_plane(&PlanePoint::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn p_map_examples() {
        assert_eq!(p_map(&PlanePoint::new(0.5, 1.0)).unwrap(), -8.0);
        assert_eq!(p_map(&PlanePoint::new(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(p_map(&PlanePoint::new(3.0, -2.0)).unwrap(), 1.0);
        assert!(p_map(&PlanePoint::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn conformal_factor_examples() {
        assert_eq!(conformal_factor(0.0).unwrap(), 4.0);
        assert!((conformal_factor(0.5).unwrap() - 64.0 / 9.0).abs() < 1e-14);
        assert_eq!(conformal_factor(3.0).unwrap(), 1.0 / 16.0);
        assert!(conformal_factor(1.0).is_err());
    }

    #[test]
    fn fiber_image_examples() {
        assert_eq!(fiber_image(0.0, 3.7), 0.0);
        assert_eq!(fiber_image(-8.0, 0.5), 1.0);
        for c in [-3.0, 0.5, 11.0] {
            assert_eq!(fiber_image(c, 1.0), 0.0);
        }
    }
}

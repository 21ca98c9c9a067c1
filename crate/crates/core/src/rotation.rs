//! Rotations, anti-rotations and plane reflections of the type II algebra
//! viewed as a semi-Euclidean space of rank 2.
//!
//! Multiplication by an element of modulus `|a|^2 = 1` preserves the
//! quadratic form, by `|a|^2 = -1` it flips its sign (an anti-rotation).

use crate::algebra::{AlgebraKind, Element};
use crate::error::{Error, Result};
use crate::EQ_TOL;

fn require_ii(x: &Element, op: &'static str) -> Result<()> {
    if x.kind() == AlgebraKind::TypeII {
        Ok(())
    } else {
        Err(Error::UnsupportedKind { op, kind: x.kind() })
    }
}

/// `|a|^2` when it is `+1` or `-1` within `1e-9`.
pub fn unit_modulus(a: &Element) -> Option<f64> {
    let n = a.norm_sq().ok()?;
    if (n - 1.0).abs() <= EQ_TOL {
        Some(1.0)
    } else if (n + 1.0).abs() <= EQ_TOL {
        Some(-1.0)
    } else {
        None
    }
}

/// `a x b` (proper) or `a xbar b` (improper), with `|a|^2 = +-1`,
/// `|b|^2 = +-1`.
pub fn rotate(a: &Element, x: &Element, b: &Element, improper: bool) -> Result<Element> {
    require_ii(x, "rotation")?;
    if unit_modulus(a).is_none() || unit_modulus(b).is_none() {
        return Err(Error::Precondition("rotation factors need |a|^2 = +-1 and |b|^2 = +-1"));
    }
    let x = if improper { x.conj()? } else { *x };
    a.mul(&x)?.mul(b)
}

/// Reflection in the plane orthogonal to `n`: `x' = -n xbar n / |n|^2`
/// for `|n|^2 = +-1`.
///
/// Fixes every `x` with `(x, n) = 0` and negates multiples of `n`. For
/// `|n|^2 = 1` this is `-n xbar n`.
pub fn reflect(x: &Element, n: &Element) -> Result<Element> {
    require_ii(x, "reflection")?;
    let modulus = unit_modulus(n).ok_or(Error::Precondition("reflection normal needs |n|^2 = +-1"))?;
    // 1/|n|^2 = |n|^2 for unit modulus
    n.mul(&x.conj()?)?.mul(n)?.scale(-modulus)
}

/// `(x, a x) / |x|^2`: the hyperbolic cosine (for `|a|^2 = 1`) or sine
/// (for `|a|^2 = -1`) of the angle between `x` and `a x`.
///
/// The value equals the scalar part `a0` of `(a + abar)/2` for every
/// non-null `x`. The denominator is the signed `|x|^2`, i.e. `|x| |ax|`
/// taken with the sign of the form.
pub fn angle_invariant(a: &Element, x: &Element) -> Result<f64> {
    require_ii(x, "angle invariant")?;
    if unit_modulus(a).is_none() {
        return Err(Error::Precondition("angle invariant needs |a|^2 = +-1"));
    }
    let nx = x.norm_sq()?;
    if nx.abs() <= 1e-12 * 1.0f64.max(x.coeff_len_sq()) {
        return Err(Error::Domain("angle invariant is undefined for null x"));
    }
    Ok(x.bilinear(&a.mul(x)?)? / nx)
}

/// Splits a unit-modulus element as `cosh(phi) + a0 sinh(phi)` (when
/// `|a|^2 = 1`) or `sinh(phi) + a0 cosh(phi)` (when `|a|^2 = -1`), with
/// `a0` pure and `|a0|^2 = -1`.
///
/// The `e1` coefficient of `a0` is chosen as `+1` in the first case and as
/// the sign of `a1` in the second; for `a = 1` the pure unit `e1` is
/// returned. Elements with `|a|^2 = 1` and `a0 < 0`, and elements
/// `1 + a2 e2` with `a2 != 0`, have no such splitting and yield
/// [`Error::Domain`].
pub fn decompose_unit(a: &Element) -> Result<(f64, Element)> {
    require_ii(a, "unit decomposition")?;
    let modulus = unit_modulus(a).ok_or(Error::Precondition("decomposition needs |a|^2 = +-1"))?;
    let [c0, c1, c2] = a.coeffs();
    if modulus > 0.0 {
        if c0 < 0.0 {
            return Err(Error::Domain("cosh(phi) + a0 sinh(phi) has positive scalar part"));
        }
        if c1.abs() <= EQ_TOL {
            if c2.abs() > EQ_TOL {
                return Err(Error::Domain("1 + a2 e2 with a2 != 0 has no hyperbolic splitting"));
            }
            return Ok((0.0, Element::ii(0.0, 1.0, 0.0)));
        }
        let phi = libm::asinh(c1);
        let pure = Element::new(AlgebraKind::TypeII, 0.0, 1.0, c2 / c1)?;
        Ok((phi, pure))
    } else {
        let phi = libm::asinh(c0);
        let ch = libm::cosh(phi);
        let sign = if c1 < 0.0 { -1.0 } else { 1.0 };
        let pure = Element::new(AlgebraKind::TypeII, 0.0, sign, c2 / ch)?;
        Ok((phi, pure))
    }
}

/// Inverse of [`decompose_unit`] for the given modulus sign.
pub fn compose_unit(phi: f64, pure: &Element, modulus: f64) -> Result<Element> {
    let (ch, sh) = (libm::cosh(phi), libm::sinh(phi));
    let scalar = Element::unit(AlgebraKind::TypeII);
    if modulus > 0.0 {
        scalar.scale(ch)?.add(&pure.scale(sh)?)
    } else {
        scalar.scale(sh)?.add(&pure.scale(ch)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ii(c0: f64, c1: f64, c2: f64) -> Element {
        Element::ii(c0, c1, c2)
    }

    fn close(a: &Element, b: &Element, tol: f64) -> bool {
        a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn rotation_examples() {
        let one = Element::unit(AlgebraKind::TypeII);
        let x = ii(2.0, 1.0, 4.0);
        assert_eq!(rotate(&one, &x, &one, false).unwrap(), x);
        let a = ii(libm::cosh(1.0), libm::sinh(1.0), 0.0);
        let r = rotate(&a, &x, &one, false).unwrap();
        assert!((r.norm_sq().unwrap() - 3.0).abs() < 1e-12);
        let anti = rotate(&ii(0.0, 1.0, 0.0), &x, &one, false).unwrap();
        assert_eq!(anti.norm_sq().unwrap(), -3.0);
        let improper = rotate(&one, &x, &one, true).unwrap();
        assert_eq!(improper, x.conj().unwrap());
        assert!(matches!(rotate(&ii(2.0, 0.0, 0.0), &x, &one, false), Err(Error::Precondition(_))));
    }

    #[test]
    fn reflection_examples() {
        let n = ii(0.0, 1.0, 0.0);
        assert_eq!(reflect(&ii(0.0, 5.0, 0.0), &n).unwrap().coeffs(), [0.0, -5.0, 0.0]);
        assert_eq!(reflect(&ii(0.0, 0.0, 7.0), &n).unwrap().coeffs(), [0.0, 0.0, 7.0]);
        let x = ii(2.0, -1.0, 3.5);
        assert_eq!(reflect(&reflect(&x, &n).unwrap(), &n).unwrap(), x);

        // timelike normal: -n xbar n as written
        let one = Element::unit(AlgebraKind::TypeII);
        assert_eq!(reflect(&ii(3.0, 0.0, 0.0), &one).unwrap().coeffs(), [-3.0, 0.0, 0.0]);
        assert_eq!(reflect(&ii(0.0, 2.0, 5.0), &one).unwrap().coeffs(), [0.0, 2.0, 5.0]);
        assert!(reflect(&x, &ii(2.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn angle_examples() {
        let a = ii(libm::cosh(1.0), libm::sinh(1.0), 5.0);
        for x in [ii(2.0, 1.0, 4.0), ii(0.5, -3.0, 1.0), ii(-1.0, 0.0, 0.0)] {
            let v = angle_invariant(&a, &x).unwrap();
            assert!((v - 1.5430806348152437).abs() < 1e-12, "{v}");
        }
        let one = Element::unit(AlgebraKind::TypeII);
        assert_eq!(angle_invariant(&one, &ii(2.0, 1.0, 4.0)).unwrap(), 1.0);
        let b = ii(libm::sinh(2.0), libm::cosh(2.0), 0.0);
        let v = angle_invariant(&b, &ii(2.0, 1.0, 4.0)).unwrap();
        assert!((v - libm::sinh(2.0)).abs() < 1e-12);
        assert!(matches!(angle_invariant(&one, &ii(1.0, 1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn decomposition_examples() {
        let s = libm::sinh(1.0);
        let a = ii(libm::cosh(1.0), s, 2.0 * s);
        let (phi, pure) = decompose_unit(&a).unwrap();
        assert!((phi - 1.0).abs() < 1e-12);
        assert!(close(&pure, &ii(0.0, 1.0, 2.0), 1e-12));
        assert_eq!(pure.norm_sq().unwrap(), -1.0);
        assert!(close(&compose_unit(phi, &pure, 1.0).unwrap(), &a, 1e-12));

        let (phi, pure) = decompose_unit(&Element::unit(AlgebraKind::TypeII)).unwrap();
        assert_eq!(phi, 0.0);
        assert_eq!(pure, ii(0.0, 1.0, 0.0));

        let b = ii(s, libm::cosh(1.0), 0.0);
        let (phi, pure) = decompose_unit(&b).unwrap();
        assert!((phi - 1.0).abs() < 1e-12);
        assert!(close(&pure, &ii(0.0, 1.0, 0.0), 1e-12));
        assert!(close(&compose_unit(phi, &pure, -1.0).unwrap(), &b, 1e-12));

        assert!(matches!(decompose_unit(&ii(1.0, 0.0, 3.0)), Err(Error::Domain(_))));
        assert!(matches!(decompose_unit(&ii(-1.0, 0.0, 0.0)), Err(Error::Domain(_))));
    }
}

//! The group `G` of invertible type II elements and its two fibrations.
//!
//! `G` is `R^3` minus the planes `x0 = x1` and `x0 = -x1`. Its subgroups:
//!
//! * `H1 = { x0 + x1 e1 : x0^2 != x1^2 }`, invertible double numbers;
//! * `H2 = { x0 + x2 e2 : x0 != 0 }`, invertible dual numbers (normal in `G`);
//! * `S1 = { a in H1 : a0^2 - a1^2 = 1 }`;
//! * `S2 = { a in H2 : a0^2 - a1^2 = 1 }`.
//!
//! The projection [`pi1`] is invariant under left multiplication by `H1`
//! and [`pi2`] under left multiplication by `H2`; right multiplications act
//! on the two base lines by affine and hyperbolic maps respectively
//! (see [`base_action`]).

use core::ops::Mul;

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

/// Base coordinate of the fibration of `G` by `H1`: `x2 / (x0 + x1)`.
///
/// Defined on all of `G` (the denominator vanishes only on a removed plane).
pub fn pi1(x: &Element) -> Result<f64> {
    require_ii(x, "pi1")?;
    if !x.is_invertible() {
        return Err(Error::Domain("pi1 needs an invertible element (x0 != +-x1)"));
    }
    Ok(x.c2() / (x.c0() + x.c1()))
}

/// Base coordinate of the fibration of `G` by `H2`: `x1 / x0`.
///
/// Never equal to `+-1` on `G`.
pub fn pi2(x: &Element) -> Result<f64> {
    require_ii(x, "pi2")?;
    if !x.is_invertible() {
        return Err(Error::Domain("pi2 needs an invertible element (x0 != +-x1)"));
    }
    if x.c0() == 0.0 {
        return Err(Error::Domain("pi2 is undefined on the plane x0 = 0"));
    }
    Ok(x.c1() / x.c0())
}

/// Global section of [`pi1`]: `u -> 1 + u e2`.
pub fn section(u: f64) -> Result<Element> {
    Element::new(AlgebraKind::TypeII, 1.0, 0.0, u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fibration {
    /// Fibers are the `H1`-orbits, planes `u (x0 + x1) - x2 = 0`.
    ByH1,
    /// Fibers are the `H2`-orbits, planes `u x0 - x1 = 0` through the `x2` axis.
    ByH2,
}

impl Fibration {
    pub fn project(self, x: &Element) -> Result<f64> {
        match self {
            Fibration::ByH1 => pi1(x),
            Fibration::ByH2 => pi2(x),
        }
    }
}

/// Whether `x` lies in the fiber plane with base coordinate `u` (to `1e-9`).
pub fn fiber_contains(which: Fibration, u: f64, x: &Element) -> bool {
    let residual = match which {
        Fibration::ByH1 => u * (x.c0() + x.c1()) - x.c2(),
        Fibration::ByH2 => u * x.c0() - x.c1(),
    };
    residual.abs() <= EQ_TOL
}

/// Row-major 3x3 matrix acting on coefficient columns `(c0, c1, c2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.0
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs_diff(&self, other: &Mat3) -> f64 {
        let mut worst = 0.0f64;
        for (ra, rb) in self.0.iter().zip(other.0.iter()) {
            for (a, b) in ra.iter().zip(rb.iter()) {
                worst = worst.max((a - b).abs());
            }
        }
        worst
    }
}

impl Mul for Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat3(out)
    }
}

fn require_group(a: &Element, op: &'static str) -> Result<()> {
    require_ii(a, op)?;
    if a.is_invertible() {
        Ok(())
    } else {
        Err(Error::NotInvertible)
    }
}

/// Matrix of `x -> a x`, with `det = (a0^2 - a1^2)(a0 + a1)`.
pub fn left_matrix(a: &Element) -> Result<Mat3> {
    require_group(a, "left multiplication matrix")?;
    let [a0, a1, a2] = a.coeffs();
    Ok(Mat3([[a0, a1, 0.0], [a1, a0, 0.0], [a2, -a2, a0 + a1]]))
}

/// Matrix of `x -> x b`, with `det = (b0^2 - b1^2)(b0 - b1)`.
pub fn right_matrix(b: &Element) -> Result<Mat3> {
    require_group(b, "right multiplication matrix")?;
    let [b0, b1, b2] = b.coeffs();
    Ok(Mat3([[b0, b1, 0.0], [b1, b0, 0.0], [b2, b2, b0 - b1]]))
}

/// `u -> alpha u + beta`, `alpha != 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    alpha: f64,
    beta: f64,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap { alpha: 1.0, beta: 0.0 };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFinite);
        }
        if alpha == 0.0 {
            return Err(Error::Precondition("affine map needs alpha != 0"));
        }
        Ok(AffineMap { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn apply(&self, u: f64) -> f64 {
        self.alpha * u + self.beta
    }

    /// `self` after `inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap { alpha: self.alpha * inner.alpha, beta: self.alpha * inner.beta + self.beta }
    }

    pub fn inverse(&self) -> AffineMap {
        AffineMap { alpha: 1.0 / self.alpha, beta: -self.beta / self.alpha }
    }
}

/// `u -> (u + alpha) / (alpha u + 1)`, `|alpha| != 1`; fixes `u = +-1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolicMap {
    alpha: f64,
}

impl HyperbolicMap {
    pub const IDENTITY: HyperbolicMap = HyperbolicMap { alpha: 0.0 };

    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite);
        }
        if (alpha.abs() - 1.0).abs() <= EQ_TOL {
            return Err(Error::Precondition("hyperbolic map needs |alpha| != 1"));
        }
        Ok(HyperbolicMap { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `None` at the pole `u = -1/alpha`.
    pub fn apply(&self, u: f64) -> Option<f64> {
        let den = self.alpha * u + 1.0;
        if den == 0.0 {
            None
        } else {
            Some((u + self.alpha) / den)
        }
    }

    /// `self` after `inner`; the parameters combine like `tanh` of a sum.
    pub fn compose(&self, inner: &HyperbolicMap) -> BaseMap {
        let den = 1.0 + self.alpha * inner.alpha;
        if den == 0.0 {
            BaseMap::Reciprocal
        } else {
            BaseMap::Hyperbolic(HyperbolicMap { alpha: (self.alpha + inner.alpha) / den })
        }
    }
}

/// A map of a base line induced by right multiplication.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BaseMap {
    Affine(AffineMap),
    Hyperbolic(HyperbolicMap),
    /// `u -> 1 / u`.
    Reciprocal,
}

impl BaseMap {
    /// `None` where the image is undefined.
    pub fn apply(&self, u: f64) -> Option<f64> {
        match self {
            BaseMap::Affine(m) => Some(m.apply(u)),
            BaseMap::Hyperbolic(m) => m.apply(u),
            BaseMap::Reciprocal => (u != 0.0).then(|| 1.0 / u),
        }
    }

    /// `self` after `inner`, when both act on the same base line.
    pub fn compose(&self, inner: &BaseMap) -> Option<BaseMap> {
        match (self, inner) {
            (BaseMap::Affine(a), BaseMap::Affine(b)) => Some(BaseMap::Affine(a.compose(b))),
            (BaseMap::Hyperbolic(a), BaseMap::Hyperbolic(b)) => Some(a.compose(b)),
            (BaseMap::Reciprocal, BaseMap::Reciprocal) => Some(BaseMap::Hyperbolic(HyperbolicMap::IDENTITY)),
            // 1/h_a(u) = h_a(1/u) = h_{1/a}(u)
            (BaseMap::Reciprocal, BaseMap::Hyperbolic(h)) | (BaseMap::Hyperbolic(h), BaseMap::Reciprocal) => {
                if h.alpha == 0.0 {
                    Some(BaseMap::Reciprocal)
                } else {
                    Some(BaseMap::Hyperbolic(HyperbolicMap { alpha: 1.0 / h.alpha }))
                }
            }
            _ => None,
        }
    }
}

/// Map of the base line induced by `x -> x b`: it satisfies
/// `map(pi(x)) = pi(x b)` for every `x` where both sides are defined.
///
/// * `ByH1`: `u' = alpha u + beta` with `alpha = (b0 - b1)/(b0 + b1)`,
///   `beta = pi1(b)`.
/// * `ByH2`: `u' = (u + alpha)/(alpha u + 1)` with `alpha = pi2(b)`.
pub fn base_action(which: Fibration, b: &Element) -> Result<BaseMap> {
    require_group(b, "base action")?;
    let [b0, b1, _] = b.coeffs();
    match which {
        Fibration::ByH1 => {
            let map = AffineMap::new((b0 - b1) / (b0 + b1), pi1(b)?)?;
            Ok(BaseMap::Affine(map))
        }
        Fibration::ByH2 => Ok(BaseMap::Hyperbolic(HyperbolicMap::new(pi2(b)?)?)),
    }
}

/// The hyperbolic involution `x -> x (e1 + b2 e2)` and its base map:
/// `u' = -u + b2` on the `H1` base, `u' = 1/u` on the `H2` base.
pub fn involution_base(which: Fibration, b2: f64) -> Result<(Mat3, BaseMap)> {
    let b = Element::new(AlgebraKind::TypeII, 0.0, 1.0, b2)?;
    let m = right_matrix(&b)?;
    let map = match which {
        Fibration::ByH1 => BaseMap::Affine(AffineMap::new(-1.0, b2)?),
        Fibration::ByH2 => BaseMap::Reciprocal,
    };
    Ok((m, map))
}

/// `g h g^-1`.
pub fn conjugate_by(g: &Element, h: &Element) -> Result<Element> {
    g.mul(h)?.mul(&g.inverse()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupTag {
    G,
    H1,
    H2,
    S1,
    S2,
}

impl SubgroupTag {
    pub const ALL: [SubgroupTag; 5] =
        [SubgroupTag::G, SubgroupTag::H1, SubgroupTag::H2, SubgroupTag::S1, SubgroupTag::S2];
}

/// Membership test with `1e-9` absolute tolerance on the defining equalities.
/// Elements of other algebras are never members.
pub fn is_member(tag: SubgroupTag, x: &Element) -> bool {
    if x.kind() != AlgebraKind::TypeII || !x.is_invertible() {
        return false;
    }
    let [x0, x1, x2] = x.coeffs();
    let unit_modulus = (x0 * x0 - x1 * x1 - 1.0).abs() <= EQ_TOL;
    let in_h1 = x2.abs() <= EQ_TOL;
    let in_h2 = x1.abs() <= EQ_TOL && x0.abs() > EQ_TOL;
    match tag {
        SubgroupTag::G => true,
        SubgroupTag::H1 => in_h1,
        SubgroupTag::H2 => in_h2,
        SubgroupTag::S1 => in_h1 && unit_modulus,
        SubgroupTag::S2 => in_h2 && unit_modulus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ii(c0: f64, c1: f64, c2: f64) -> Element {
        Element::ii(c0, c1, c2)
    }

    #[test]
    fn pi1_examples() {
        assert_eq!(pi1(&ii(2.0, 1.0, 4.0)).unwrap(), 4.0 / 3.0);
        assert_eq!(pi1(&ii(1.0, 0.0, 0.0)).unwrap(), 0.0);
        let a = ii(3.0, 1.0, 0.0);
        let x = ii(2.0, 1.0, 4.0);
        assert_eq!(pi1(&a.mul(&x).unwrap()).unwrap(), 4.0 / 3.0);
        assert!(pi1(&ii(1.0, 1.0, 3.0)).is_err());
        assert!(pi1(&ii(1.0, -1.0, 3.0)).is_err());
    }

    #[test]
    fn pi2_examples() {
        assert_eq!(pi2(&ii(2.0, 1.0, 4.0)).unwrap(), 0.5);
        assert_eq!(pi2(&ii(1.0, 0.0, 7.0)).unwrap(), 0.0);
        let a = ii(1.0, 0.0, 5.0);
        assert_eq!(pi2(&a.mul(&ii(2.0, 1.0, 4.0)).unwrap()).unwrap(), 0.5);
        assert!(matches!(pi2(&ii(0.0, 1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn fiber_membership() {
        assert!(fiber_contains(Fibration::ByH1, 4.0 / 3.0, &ii(2.0, 1.0, 4.0)));
        assert!(!fiber_contains(Fibration::ByH1, 4.0, &ii(2.0, 1.0, 4.0)));
        assert!(fiber_contains(Fibration::ByH1, 0.0, &ii(1.0, 0.0, 0.0)));
        assert!(fiber_contains(Fibration::ByH2, 0.5, &ii(2.0, 1.0, 9.0)));
    }

    #[test]
    fn section_is_global() {
        for u in [-3.0, 0.0, 0.25, 10.0] {
            assert_eq!(pi1(&section(u).unwrap()).unwrap(), u);
        }
    }

    #[test]
    fn matrices() {
        let a = ii(2.0, 1.0, 4.0);
        let l = left_matrix(&a).unwrap();
        assert_eq!(l.det(), 9.0);
        assert_eq!(l.apply([1.0, 0.0, 0.0]), [2.0, 1.0, 4.0]);
        assert_eq!(left_matrix(&Element::unit(AlgebraKind::TypeII)).unwrap(), Mat3::IDENTITY);
        let x = ii(-1.0, 0.5, 3.0);
        assert_eq!(l.apply(x.coeffs()), a.mul(&x).unwrap().coeffs());
        let r = right_matrix(&a).unwrap();
        assert_eq!(r.apply(x.coeffs()), x.mul(&a).unwrap().coeffs());
        assert!(left_matrix(&ii(1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn affine_base_action() {
        let map = base_action(Fibration::ByH1, &ii(2.0, 1.0, 4.0)).unwrap();
        let BaseMap::Affine(m) = map else { panic!("expected affine") };
        assert_eq!(m.alpha(), 1.0 / 3.0);
        assert_eq!(m.beta(), 4.0 / 3.0);
        let b = ii(2.0, 1.0, 4.0);
        for x in [ii(1.0, 0.0, 0.0), ii(2.0, 1.0, 0.0), ii(1.0, 0.0, 1.0), ii(-3.0, 0.5, 2.0)] {
            let lhs = map.apply(pi1(&x).unwrap()).unwrap();
            let rhs = pi1(&x.mul(&b).unwrap()).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "{x}: {lhs} vs {rhs}");
        }
        let id = base_action(Fibration::ByH1, &Element::unit(AlgebraKind::TypeII)).unwrap();
        assert_eq!(id, BaseMap::Affine(AffineMap::IDENTITY));
    }

    #[test]
    fn hyperbolic_base_action() {
        let map = base_action(Fibration::ByH2, &ii(2.0, 1.0, 0.0)).unwrap();
        assert_eq!(map, BaseMap::Hyperbolic(HyperbolicMap::new(0.5).unwrap()));
        let x = ii(1.0, 0.0, 0.0);
        assert_eq!(pi2(&x.mul(&ii(2.0, 1.0, 0.0)).unwrap()).unwrap(), 0.5);
        assert_eq!(map.apply(0.0), Some(0.5));
        let h = HyperbolicMap::new(0.3).unwrap();
        assert_eq!(h.apply(1.0), Some(1.0));
        assert_eq!(h.apply(-1.0), Some(-1.0));
        assert!(HyperbolicMap::new(1.0).is_err());
        assert!(base_action(Fibration::ByH2, &ii(0.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn involutions() {
        let (m, map) = involution_base(Fibration::ByH1, 3.0).unwrap();
        assert_eq!(m.rows()[0], [0.0, 1.0, 0.0]);
        assert_eq!(map.apply(1.0), Some(2.0));
        let (m5, _) = involution_base(Fibration::ByH1, 5.0).unwrap();
        assert_eq!(m5 * m5, Mat3::IDENTITY);
        let (_, map2) = involution_base(Fibration::ByH2, 0.0).unwrap();
        assert_eq!(map2.apply(2.0), Some(0.5));
        assert_eq!(map2.apply(0.0), None);
    }

    #[test]
    fn hyperbolic_composition_can_be_reciprocal() {
        let a = HyperbolicMap::new(2.0).unwrap();
        let b = HyperbolicMap::new(-0.5).unwrap();
        assert_eq!(a.compose(&b), BaseMap::Reciprocal);
        let c = BaseMap::Reciprocal.compose(&BaseMap::Hyperbolic(HyperbolicMap::new(0.25).unwrap())).unwrap();
        for u in [0.1, 3.0, -7.0] {
            let direct = 1.0 / HyperbolicMap::new(0.25).unwrap().apply(u).unwrap();
            assert!((c.apply(u).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn membership() {
        let a = ii(3.0, 1.0, 0.0);
        assert!(is_member(SubgroupTag::H1, &a));
        assert!(!is_member(SubgroupTag::H2, &a));
        let b = ii(1.0, 0.0, 5.0);
        assert!(is_member(SubgroupTag::H2, &b));
        assert!(is_member(SubgroupTag::S2, &b));
        let c = ii(libm::cosh(2.0), libm::sinh(2.0), 0.0);
        assert!(is_member(SubgroupTag::S1, &c));
        assert!(!is_member(SubgroupTag::G, &ii(1.0, 1.0, 0.0)));
    }

    #[test]
    fn h2_is_normal_h1_is_not() {
        let g = ii(2.0, -0.5, 3.0);
        let h2 = ii(1.5, 0.0, -4.0);
        assert!(is_member(SubgroupTag::H2, &conjugate_by(&g, &h2).unwrap()));
        let h1 = ii(1.5, 0.5, 0.0);
        assert!(!is_member(SubgroupTag::H1, &conjugate_by(&g, &h1).unwrap()));
    }
}

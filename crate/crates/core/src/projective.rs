//! Projective model: the hyperquadric `y0^2 - y1^2 - y3^2 = 0` of real
//! projective 3-space, its stereographic lift from the plane `alpha`
//! (`y0 = 0`) through the pole `N = (1:0:0:1)`, and the connection induced
//! on `alpha` by the normalization.
//!
//! Coordinates on `alpha` are `x1 = y1/y3`, `x2 = y2/y3`. With
//! `D = 1 + x1^2` the closed forms are
//!
//! ```text
//! g11 = 4/D^2                       (g12 = g22 = 0)
//! Γ¹₁₁ = Γ²₁₂ = Γ²₂₁ = -2 x1/D,     Γ²₁₁ = 2 x2/D
//! ```
//!
//! The metric has rank 1, so Γ is not derived from it.

use crate::error::{Error, Result};
use crate::numeric::{central_diff, Christoffel, Connection, Curvature, Metric2};

/// Homogeneous point `(y0:y1:y2:y3)`; not all coordinates zero.
#[derive(Clone, Copy, Debug)]
pub struct HPoint(pub [f64; 4]);

/// Tolerance of projective equality after normalization.
pub const PROJ_TOL: f64 = 1e-9;

impl HPoint {
    pub fn new(y0: f64, y1: f64, y2: f64, y3: f64) -> Result<HPoint> {
        let y = [y0, y1, y2, y3];
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if y.iter().all(|&v| v == 0.0) {
            return Err(Error::Domain("(0:0:0:0) is not a projective point"));
        }
        Ok(HPoint(y))
    }

    /// Representative whose largest-magnitude coordinate is `+1`.
    pub fn normalized(&self) -> [f64; 4] {
        let mut k = 0;
        for i in 1..4 {
            if self.0[i].abs() > self.0[k].abs() {
                k = i;
            }
        }
        let s = self.0[k];
        let mut out = self.0;
        for v in out.iter_mut() {
            *v /= s;
        }
        out
    }

    /// Equality up to a nonzero factor, compared after normalization.
    pub fn proj_eq(&self, other: &HPoint, tol: f64) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    /// Affine coordinates `(y0/y3, y1/y3, y2/y3)` in the chart `y3 != 0`.
    pub fn dehomogenize(&self) -> Result<[f64; 3]> {
        let y3 = self.0[3];
        if y3.abs() <= 1e-15 * self.0.iter().fold(0.0f64, |m, v| m.max(v.abs())) {
            return Err(Error::Domain("point lies on the plane y3 = 0"));
        }
        Ok([self.0[0] / y3, self.0[1] / y3, self.0[2] / y3])
    }
}

impl PartialEq for HPoint {
    fn eq(&self, other: &HPoint) -> bool {
        self.proj_eq(other, PROJ_TOL)
    }
}

/// Pole of the projection.
pub const POLE_N: HPoint = HPoint([1.0, 0.0, 0.0, 1.0]);
/// Second pole `(1:0:0:-1)`.
pub const POLE_N_PRIME: HPoint = HPoint([1.0, 0.0, 0.0, -1.0]);
/// Vertex of the cone.
pub const VERTEX_E2: HPoint = HPoint([0.0, 0.0, 1.0, 0.0]);

/// Point `(x1, x2)` of the plane `alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaPoint {
    pub x1: f64,
    pub x2: f64,
}

impl AlphaPoint {
    pub fn new(x1: f64, x2: f64) -> AlphaPoint {
        AlphaPoint { x1, x2 }
    }

    /// `(0:x1:x2:1)`.
    pub fn embed(&self) -> HPoint {
        HPoint([0.0, self.x1, self.x2, 1.0])
    }
}

/// Symmetric bilinear form `y0 z0 - y1 z1 - y3 z3` of the quadric.
pub fn quadric_form(y: &[f64; 4], z: &[f64; 4]) -> f64 {
    y[0] * z[0] - y[1] * z[1] - y[3] * z[3]
}

/// `y0^2 - y1^2 - y3^2` on the given representative.
pub fn quadric_eval(p: &HPoint) -> f64 {
    quadric_form(&p.0, &p.0)
}

/// Second intersection of the line through `N` and `(0:x1:x2:1)` with the
/// quadric: `(-1 - x1^2 : 2x1 : 2x2 : 1 - x1^2)`.
pub fn project_to_quadric(p: &AlphaPoint) -> HPoint {
    let s = p.x1 * p.x1;
    HPoint([-1.0 - s, 2.0 * p.x1, 2.0 * p.x2, 1.0 - s])
}

/// Inverse of [`project_to_quadric`]: `x_i = y_i/(y3 - y0)`.
pub fn project_from_pole(p: &HPoint) -> Result<AlphaPoint> {
    let d = p.0[3] - p.0[0];
    let scale = p.0.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if d.abs() <= 1e-12 * scale {
        return Err(Error::Domain("points of the tangent plane at N have no image on alpha"));
    }
    Ok(AlphaPoint { x1: p.0[1] / d, x2: p.0[2] / d })
}

/// `X = (0 : 2x1 : 2x2 : 1 - x1^2)` and its normalization `X / (1 + x1^2)`
/// with form value `-1`.
pub fn weierstrass_x(p: &AlphaPoint) -> (HPoint, HPoint) {
    let s = p.x1 * p.x1;
    let x = [0.0, 2.0 * p.x1, 2.0 * p.x2, 1.0 - s];
    let d = 1.0 + s;
    (HPoint(x), HPoint([0.0, x[1] / d, x[2] / d, x[3] / d]))
}

/// Metric, connection and curvature values at a point of `alpha`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnectionData {
    pub g11: f64,
    pub gamma1_11: f64,
    /// `Γ²₁₂ = Γ²₂₁`.
    pub gamma2_12: f64,
    pub gamma2_11: f64,
    /// Component with the antisymmetric pair first, `-4/D^2`.
    pub r2_121: f64,
    pub ric11: f64,
}

pub fn connection_at(p: &AlphaPoint) -> ConnectionData {
    let d = 1.0 + p.x1 * p.x1;
    let a = -2.0 * p.x1 / d;
    ConnectionData {
        g11: 4.0 / (d * d),
        gamma1_11: a,
        gamma2_12: a,
        gamma2_11: 2.0 * p.x2 / d,
        r2_121: -4.0 / (d * d),
        ric11: 4.0 / (d * d),
    }
}

/// The normalization connection on `alpha` from its closed form.
#[derive(Clone, Copy, Debug, Default)]
pub struct NordenConnection;

impl Connection for NordenConnection {
    fn christoffel(&self, p: [f64; 2]) -> Christoffel {
        let c = connection_at(&AlphaPoint::new(p[0], p[1]));
        let mut g = [[[0.0; 2]; 2]; 2];
        g[0][0][0] = c.gamma1_11;
        g[1][0][1] = c.gamma2_12;
        g[1][1][0] = c.gamma2_12;
        g[1][0][0] = c.gamma2_11;
        g
    }
}

/// `g_ij` at `p`.
pub fn metric_at(p: [f64; 2]) -> Metric2 {
    let d = 1.0 + p[0] * p[0];
    [[4.0 / (d * d), 0.0], [0.0, 0.0]]
}

/// Closed-form curvature: the only nonzero components are
/// `R²₁₂₁ = 4/D^2` and `R²₁₁₂ = -4/D^2` in the `R^i_{jkl}` layout.
pub fn riemann_closed(p: [f64; 2]) -> Curvature {
    let d = 1.0 + p[0] * p[0];
    let v = 4.0 / (d * d);
    let mut r = [[[[0.0; 2]; 2]; 2]; 2];
    r[1][0][1][0] = v;
    r[1][0][0][1] = -v;
    Curvature(r)
}

/// `g_ij = -(∂_i Xn, ∂_j Xn)` with the derivatives of the normalized
/// point taken by central differences.
pub fn gram_metric_fd(p: &AlphaPoint, h: f64) -> Result<Metric2> {
    let xn = |q: [f64; 2]| -> Result<[f64; 4]> { Ok(weierstrass_x(&AlphaPoint::new(q[0], q[1])).1 .0) };
    let jac = central_diff(xn, [p.x1, p.x2], h)?;
    let col = |i: usize| [jac[0][i], jac[1][i], jac[2][i], jac[3][i]];
    let mut g = [[0.0; 2]; 2];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = -quadric_form(&col(i), &col(j));
        }
    }
    Ok(g)
}

/// Geodesic parabolas `x2 = A (x1^2 - 1) + B x1`.
pub fn geodesic_family(a: f64, b: f64, x1: f64) -> f64 {
    a * (x1 * x1 - 1.0) + b * x1
}

/// Image of the fiber `(y0 - y1) v = y2` on `alpha`:
/// `x2 = -v/2 (x1 + 1)^2`.
pub fn fiber_projection(v: f64, x1: f64) -> f64 {
    let d = x1 + 1.0;
    -v / 2.0 * d * d
}

/// Quadric point of the fiber `(y0 - y1) v = y2` at angle `theta`:
/// `(1 : cos theta : v (1 - cos theta) : sin theta)`.
pub fn fiber_point(v: f64, theta: f64) -> HPoint {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    HPoint([1.0, c, v * (1.0 - c), s])
}

/// Step used for the gradient in [`equiaffine_check`].
pub const EQUIAFFINE_STEP: f64 = 1e-5;

/// `lhs = (Γˢ₁ₛ, Γˢ₂ₛ)` from the closed form and `rhs` the gradient of
/// `ln(1/(1 + x1^2)^2)` by central differences.
pub fn equiaffine_check(p: &AlphaPoint) -> Result<([f64; 2], [f64; 2])> {
    let g = NordenConnection.christoffel([p.x1, p.x2]);
    let lhs = [g[0][0][0] + g[1][1][0], g[0][0][1] + g[1][1][1]];
    let potential = |q: [f64; 2]| -> Result<[f64; 1]> {
        let d = 1.0 + q[0] * q[0];
        Ok([-2.0 * libm::log(d)])
    };
    let jac = central_diff(potential, [p.x1, p.x2], EQUIAFFINE_STEP)?;
    Ok((lhs, jac[0]))
}

//! Finite differences, connections on a 2-dimensional chart and the
//! geodesic integrator.
//!
//! Christoffel symbols are stored as `gamma[k][i][j] = Γ^k_{ij}`. The
//! curvature convention throughout is
//!
//! ```text
//! R^i_{jkl} = ∂_k Γ^i_{lj} - ∂_l Γ^i_{kj} + Γ^i_{ks} Γ^s_{lj} - Γ^i_{ls} Γ^s_{kj}
//! ```
//!
//! stored as `r[i][j][k][l]`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Christoffel = [[[f64; 2]; 2]; 2];
pub type Metric2 = [[f64; 2]; 2];

/// Jacobian `J[m][n] = ∂f_m/∂p_n` by central differences,
/// `(f(p + h e_n) - f(p - h e_n)) / 2h`.
///
/// Fails if `h <= 0` or if `f` fails or returns a non-finite value anywhere
/// in the stencil.
pub fn central_diff<const N: usize, const M: usize, F>(f: F, p: [f64; N], h: f64) -> Result<[[f64; N]; M]>
where
    F: Fn([f64; N]) -> Result<[f64; M]>,
{
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::Precondition("finite-difference step must be positive"));
    }
    let mut jac = [[0.0; N]; M];
    for n in 0..N {
        let mut plus = p;
        let mut minus = p;
        plus[n] += h;
        minus[n] -= h;
        let fp = f(plus)?;
        let fm = f(minus)?;
        for m in 0..M {
            if !fp[m].is_finite() || !fm[m].is_finite() {
                return Err(Error::NonFinite);
            }
            jac[m][n] = (fp[m] - fm[m]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// An affine connection on an open subset of `R^2`.
pub trait Connection {
    fn christoffel(&self, p: [f64; 2]) -> Christoffel;
}

impl<C: Connection + ?Sized> Connection for &C {
    fn christoffel(&self, p: [f64; 2]) -> Christoffel {
        (**self).christoffel(p)
    }
}

/// The flat connection of the Cartesian chart.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroConnection;

impl Connection for ZeroConnection {
    fn christoffel(&self, _p: [f64; 2]) -> Christoffel {
        [[[0.0; 2]; 2]; 2]
    }
}

/// `Γ^k_{ij} v^i w^j` for each `k`.
pub fn contract(gamma: &Christoffel, v: [f64; 2], w: [f64; 2]) -> [f64; 2] {
    let mut out = [0.0; 2];
    for (k, o) in out.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                *o += gamma[k][i][j] * v[i] * w[j];
            }
        }
    }
    out
}

/// Riemann tensor `r[i][j][k][l] = R^i_{jkl}` of a 2-dimensional connection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curvature(pub [[[[f64; 2]; 2]; 2]; 2]);

impl Curvature {
    /// Component with the antisymmetric pair written first: lower indices
    /// `(r, s, k)`, upper index `i`, equal to `R^i_{krs}`.
    pub fn pair_first(&self, r: usize, s: usize, k: usize, i: usize) -> f64 {
        self.0[i][k][r][s]
    }

    /// Ricci tensor `Ric_{sk} = sum_i R^i_{kis}` (contraction of the upper
    /// index with the first index of the antisymmetric pair).
    pub fn ricci(&self) -> Metric2 {
        let mut ric = [[0.0; 2]; 2];
        for (s, row) in ric.iter_mut().enumerate() {
            for (k, cell) in row.iter_mut().enumerate() {
                *cell = (0..2).map(|i| self.pair_first(i, s, k, i)).sum();
            }
        }
        ric
    }

    pub fn max_abs_diff(&self, other: &Curvature) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        worst = worst.max((self.0[i][j][k][l] - other.0[i][j][k][l]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// `∂_m Γ^k_{ij}` by central differences, as `d[m][k][i][j]`.
pub fn christoffel_derivative<C: Connection>(conn: &C, p: [f64; 2], h: f64) -> Result<[Christoffel; 2]> {
    let flat = |q: [f64; 2]| -> Result<[f64; 8]> {
        let g = conn.christoffel(q);
        let mut out = [0.0; 8];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    out[4 * k + 2 * i + j] = g[k][i][j];
                }
            }
        }
        Ok(out)
    };
    let jac = central_diff(flat, p, h)?;
    let mut d = [[[[0.0; 2]; 2]; 2]; 2];
    for (m, dm) in d.iter_mut().enumerate() {
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    dm[k][i][j] = jac[4 * k + 2 * i + j][m];
                }
            }
        }
    }
    Ok(d)
}

/// Curvature of `conn` at `p` with derivatives of Γ taken by central
/// differences of step `h`.
pub fn riemann_fd<C: Connection>(conn: &C, p: [f64; 2], h: f64) -> Result<Curvature> {
    let g = conn.christoffel(p);
    let d = christoffel_derivative(conn, p, h)?;
    let mut r = [[[[0.0; 2]; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let mut v = d[k][i][l][j] - d[l][i][k][j];
                    for s in 0..2 {
                        v += g[i][k][s] * g[s][l][j] - g[i][l][s] * g[s][k][j];
                    }
                    r[i][j][k][l] = v;
                }
            }
        }
    }
    Ok(Curvature(r))
}

/// `∇_k g_{ij} = ∂_k g_{ij} - Γ^s_{ki} g_{sj} - Γ^s_{kj} g_{is}`, as `out[k][i][j]`.
pub fn metric_covariant_derivative<C, G>(conn: &C, metric: G, p: [f64; 2], h: f64) -> Result<[Metric2; 2]>
where
    C: Connection,
    G: Fn([f64; 2]) -> Metric2,
{
    let flat = |q: [f64; 2]| -> Result<[f64; 4]> {
        let g = metric(q);
        Ok([g[0][0], g[0][1], g[1][0], g[1][1]])
    };
    let jac = central_diff(flat, p, h)?;
    let gamma = conn.christoffel(p);
    let g = metric(p);
    let mut out = [[[0.0; 2]; 2]; 2];
    for (k, ok) in out.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let mut v = jac[2 * i + j][k];
                for s in 0..2 {
                    v -= gamma[s][k][i] * g[s][j] + gamma[s][k][j] * g[i][s];
                }
                ok[i][j] = v;
            }
        }
    }
    Ok(out)
}

/// `∇_m R^i_{jkl}`, as `out[m]` with the same index layout as [`Curvature`].
pub fn curvature_covariant_derivative<C, R>(conn: &C, curvature: R, p: [f64; 2], h: f64) -> Result<[Curvature; 2]>
where
    C: Connection,
    R: Fn([f64; 2]) -> Curvature,
{
    let flat = |q: [f64; 2]| -> Result<[f64; 16]> {
        let r = curvature(q).0;
        let mut out = [0.0; 16];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[8 * i + 4 * j + 2 * k + l] = r[i][j][k][l];
                    }
                }
            }
        }
        Ok(out)
    };
    let jac = central_diff(flat, p, h)?;
    let gamma = conn.christoffel(p);
    let r = curvature(p).0;
    let mut out = [Curvature([[[[0.0; 2]; 2]; 2]; 2]); 2];
    for (m, om) in out.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let mut v = jac[8 * i + 4 * j + 2 * k + l][m];
                        for s in 0..2 {
                            v += gamma[i][m][s] * r[s][j][k][l];
                            v -= gamma[s][m][j] * r[i][s][k][l];
                            v -= gamma[s][m][k] * r[i][j][s][l];
                            v -= gamma[s][m][l] * r[i][j][k][s];
                        }
                        om.0[i][j][k][l] = v;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Position and velocity of a curve on the chart at parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeState {
    pub position: [f64; 2],
    pub velocity: [f64; 2],
    pub t: f64,
}

impl OdeState {
    pub fn is_finite(&self) -> bool {
        self.position.iter().chain(self.velocity.iter()).all(|v| v.is_finite()) && self.t.is_finite()
    }
}

fn geodesic_rhs<C: Connection>(conn: &C, y: [f64; 4]) -> [f64; 4] {
    let gamma = conn.christoffel([y[0], y[1]]);
    let v = [y[2], y[3]];
    let a = contract(&gamma, v, v);
    [v[0], v[1], -a[0], -a[1]]
}

/// Integrates `x''^k + Γ^k_{ij} x'^i x'^j = 0` with the classical
/// fourth-order Runge-Kutta scheme. Returns `n + 1` states starting with
/// `init`.
pub fn integrate_geodesic<C: Connection>(conn: &C, init: OdeState, step: f64, n: usize) -> Result<Vec<OdeState>> {
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::Precondition("integration step must be positive"));
    }
    if !init.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(init);
    let mut y = [init.position[0], init.position[1], init.velocity[0], init.velocity[1]];
    let axpy = |y: [f64; 4], k: [f64; 4], s: f64| [y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2], y[3] + s * k[3]];
    for i in 1..=n {
        let k1 = geodesic_rhs(conn, y);
        let k2 = geodesic_rhs(conn, axpy(y, k1, step / 2.0));
        let k3 = geodesic_rhs(conn, axpy(y, k2, step / 2.0));
        let k4 = geodesic_rhs(conn, axpy(y, k3, step));
        for c in 0..4 {
            y[c] += step / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        let state = OdeState { position: [y[0], y[1]], velocity: [y[2], y[3]], t: init.t + step * i as f64 };
        if !state.is_finite() {
            return Err(Error::NonFinite);
        }
        out.push(state);
    }
    Ok(out)
}

/// How far a curve is from being a pregeodesic at one point:
/// `|a^1 v^2 - a^2 v^1| / |v|^2` where `a = x'' + Γ(x', x')`.
///
/// `velocity` and `second` are the first and second derivatives of the
/// curve in its own parametrization.
pub fn tangency_residual<C: Connection>(
    conn: &C,
    point: [f64; 2],
    velocity: [f64; 2],
    second: [f64; 2],
) -> Result<f64> {
    let norm_sq = velocity[0] * velocity[0] + velocity[1] * velocity[1];
    if norm_sq == 0.0 {
        return Err(Error::Precondition("tangency residual needs a nonzero velocity"));
    }
    let g = contract(&conn.christoffel(point), velocity, velocity);
    let a = [second[0] + g[0], second[1] + g[1]];
    Ok((a[0] * velocity[1] - a[1] * velocity[0]).abs() / norm_sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_jacobian() {
        let j = central_diff(|p: [f64; 3]| Ok(p), [1.0, -2.0, 0.5], 1e-5).unwrap();
        for (m, row) in j.iter().enumerate() {
            for (n, v) in row.iter().enumerate() {
                let expect = if m == n { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn square_derivative() {
        let j = central_diff(|p: [f64; 1]| Ok([p[0] * p[0]]), [3.0], 1e-5).unwrap();
        assert!((j[0][0] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn quadratics_exact() {
        let f = |p: [f64; 2]| Ok([3.0 * p[0] * p[0] - p[0] * p[1] + 2.0 * p[1] - 7.0]);
        let j = central_diff(f, [1.5, -0.25], 1e-4).unwrap();
        assert!((j[0][0] - (6.0 * 1.5 + 0.25)).abs() < 1e-10);
        assert!((j[0][1] - (-1.5 + 2.0)).abs() < 1e-10);
    }

    #[test]
    fn stencil_failures() {
        assert!(central_diff(|p: [f64; 1]| Ok(p), [0.0], 0.0).is_err());
        let log = |p: [f64; 1]| if p[0] > 0.0 { Ok([libm::log(p[0])]) } else { Err(Error::Domain("log")) };
        assert!(central_diff(log, [1e-6], 1e-5).is_err());
        let blow = |p: [f64; 1]| Ok([1.0 / p[0]]);
        assert_eq!(central_diff(blow, [1e-5], 1e-5), Err(Error::NonFinite));
    }

    #[test]
    fn straight_lines_for_flat_connection() {
        let init = OdeState { position: [0.5, -1.0], velocity: [1.0, 1.0], t: 0.0 };
        let traj = integrate_geodesic(&ZeroConnection, init, 1e-2, 200).unwrap();
        assert_eq!(traj.len(), 201);
        for s in &traj {
            assert!((s.position[0] - 0.5 - s.t).abs() < 1e-12);
            assert!((s.position[1] + 1.0 - s.t).abs() < 1e-12);
        }
        assert!(integrate_geodesic(&ZeroConnection, init, -1.0, 3).is_err());
    }

    #[test]
    fn flat_residuals() {
        assert_eq!(tangency_residual(&ZeroConnection, [0.0, 0.0], [1.0, 2.0], [0.0, 0.0]).unwrap(), 0.0);
        assert!(tangency_residual(&ZeroConnection, [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]).is_err());
    }

    struct Polar;

    // flat plane in polar coordinates (r, theta): Γ^r_θθ = -r, Γ^θ_rθ = 1/r
    impl Connection for Polar {
        fn christoffel(&self, p: [f64; 2]) -> Christoffel {
            let r = p[0];
            let mut g = [[[0.0; 2]; 2]; 2];
            g[0][1][1] = -r;
            g[1][0][1] = 1.0 / r;
            g[1][1][0] = 1.0 / r;
            g
        }
    }

    #[test]
    fn polar_chart_is_flat() {
        let r = riemann_fd(&Polar, [1.7, 0.3], 1e-4).unwrap();
        assert!(r.max_abs_diff(&Curvature([[[[0.0; 2]; 2]; 2]; 2])) < 1e-7);
        let metric = |p: [f64; 2]| [[1.0, 0.0], [0.0, p[0] * p[0]]];
        let dg = metric_covariant_derivative(&Polar, metric, [1.7, 0.3], 1e-4).unwrap();
        for k in dg {
            for row in k {
                for v in row {
                    assert!(v.abs() < 1e-8);
                }
            }
        }
    }
}

use semifib_core::numeric::{curvature_covariant_derivative, metric_covariant_derivative, riemann_fd, Curvature};
use semifib_core::projective::{
    connection_at, equiaffine_check, gram_metric_fd, metric_at, project_to_quadric, quadric_eval, riemann_closed,
    weierstrass_x, NordenConnection, POLE_N,
};
use semifib_core::AlphaPoint;

use super::{attempt, rel_err, Check, Sampler, Suite, Tally};
use crate::report::Witness;

/// Step of the finite differences behind the curvature and Gram checks.
const FD_STEP: f64 = 1e-5;

fn alpha_sample(s: &mut Sampler, half: f64) -> AlphaPoint {
    AlphaPoint::new(s.uniform(-half, half), s.uniform(-half, half))
}

fn aw(p: &AlphaPoint) -> Witness {
    Witness::new().with("x1", p.x1).with("x2", p.x2)
}

/// Lifted points satisfy the quadric equation, relative to the square of
/// their largest coordinate.
fn quadric(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-9);
    for _ in 0..trials {
        let p = alpha_sample(s, 10.0);
        let q = project_to_quadric(&p);
        let scale = q.0.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        t.record(quadric_eval(&q).abs() / (scale * scale), || aw(&p));
    }
    t
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `N`, `(0:x1:x2:1)` and the lifted point are collinear: every 3x3 minor
/// of their coordinate matrix vanishes relative to the product of row sizes.
fn collinearity(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-9);
    for _ in 0..trials {
        let p = alpha_sample(s, 10.0);
        let rows = [POLE_N.0, p.embed().0, project_to_quadric(&p).0];
        let scale: f64 = rows.iter().map(|r| r.iter().fold(1.0f64, |m, v| m.max(v.abs()))).product();
        let mut worst = 0.0f64;
        for skip in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let m = [0, 1, 2].map(|r| [rows[r][cols[0]], rows[r][cols[1]], rows[r][cols[2]]]);
            worst = worst.max(det3(m).abs() / scale);
        }
        t.record(worst, || aw(&p));
    }
    t
}

/// `(X, X) = -(1 + x1^2)^2` and the normalized point has form value `-1`.
fn weierstrass(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-9);
    for _ in 0..trials {
        let p = alpha_sample(s, 10.0);
        let (x, xn) = weierstrass_x(&p);
        let d = 1.0 + p.x1 * p.x1;
        let err = rel_err(&[quadric_eval(&x), quadric_eval(&xn)], &[-d * d, -1.0]);
        t.record(err, || aw(&p));
    }
    t
}

/// `g11 = 4/(1 + x1^2)^2`, other components zero, against the Gram matrix
/// `-(d_i Xn, d_j Xn)` by central differences, to `1e-5`.
fn metric(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-5);
    for _ in 0..trials {
        let p = alpha_sample(s, 3.0);
        let err = attempt(|| {
            let g = gram_metric_fd(&p, FD_STEP)?;
            let c = connection_at(&p);
            Ok(rel_err(&[g[0][0], g[0][1], g[1][0], g[1][1]], &[c.g11, 0.0, 0.0, 0.0]))
        });
        t.record_result(err, || aw(&p));
    }
    t
}

/// Curvature of the closed-form connection by finite differences against
/// the stated `R^2_{121} = -4/(1 + x1^2)^2` (pair first), its
/// antisymmetry, `Ric_11 = 4/(1 + x1^2)^2` and the symmetry of Ricci.
fn curvature(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-5);
    for _ in 0..trials {
        let p = alpha_sample(s, 3.0);
        let err = attempt(|| {
            let r = riemann_fd(&NordenConnection, [p.x1, p.x2], FD_STEP)?;
            let c = connection_at(&p);
            let ric = r.ricci();
            let e = rel_err(
                &[r.pair_first(0, 1, 0, 1), r.pair_first(1, 0, 0, 1), ric[0][0], ric[0][1] - ric[1][0], ric[1][1]],
                &[c.r2_121, -c.r2_121, c.ric11, 0.0, 0.0],
            );
            Ok(e.max(r.max_abs_diff(&riemann_closed([p.x1, p.x2]))))
        });
        t.record_result(err, || aw(&p));
    }
    t
}

/// `nabla g = 0` and `nabla R = 0` on the 41 x 41 grid over `[-2, 2]^2`.
fn covariant_constancy(_: &mut Sampler, _: usize) -> Tally {
    let mut t = Tally::property(1e-5);
    let zero = Curvature([[[[0.0; 2]; 2]; 2]; 2]);
    for i in 0..41 {
        for j in 0..41 {
            let p = [-2.0 + 0.1 * i as f64, -2.0 + 0.1 * j as f64];
            let err = attempt(|| {
                let dg = metric_covariant_derivative(&NordenConnection, metric_at, p, FD_STEP)?;
                let dr = curvature_covariant_derivative(&NordenConnection, riemann_closed, p, FD_STEP)?;
                let eg = dg.iter().flatten().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
                let er = dr.iter().fold(0.0f64, |m, r| m.max(r.max_abs_diff(&zero)));
                Ok(eg.max(er))
            });
            t.record_result(err, || Witness::new().with("x1", p[0]).with("x2", p[1]));
        }
    }
    t
}

/// Traced connection `Gamma^s_{ks}` equals the gradient of
/// `ln(1/(1 + x1^2)^2)`, to `1e-6`.
fn equiaffine(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-6);
    for _ in 0..trials {
        let p = alpha_sample(s, 3.0);
        let err = attempt(|| {
            let (lhs, rhs) = equiaffine_check(&p)?;
            Ok(rel_err(&lhs, &rhs))
        });
        t.record_result(err, || aw(&p));
    }
    t
}

pub(super) const SUITES: &[Suite] = &[Suite {
    name: "projective.model",
    checks: &[
        Check {
            id: "projective.model/collinearity",
            paper_ref: "N, (0:x1:x2:1) and X1 are collinear",
            run: collinearity,
        },
        Check {
            id: "projective.model/covariant_constancy",
            paper_ref: "nabla_k g_ij = 0, nabla_l R = 0 (41 x 41 grid on [-2, 2]^2)",
            run: covariant_constancy,
        },
        Check {
            id: "projective.model/curvature",
            paper_ref: "R^2_121 = -R^2_211 = -4/(1 + x1^2)^2, R_11 = 4/(1 + x1^2)^2, Ricci symmetric",
            run: curvature,
        },
        Check { id: "projective.model/equiaffine", paper_ref: "Gamma^s_ks = d_k ln(c/(1 + x1^2)^2)", run: equiaffine },
        Check {
            id: "projective.model/metric",
            paper_ref: "g_ij = -(d_i Xn, d_j Xn), g11 = 4/(1 + x1^2)^2, g12 = g22 = 0",
            run: metric,
        },
        Check {
            id: "projective.model/quadric",
            paper_ref: "X1 = (-1 - x1^2 : 2x1 : 2x2 : 1 - x1^2) on y0^2 - y1^2 - y3^2 = 0",
            run: quadric,
        },
        Check {
            id: "projective.model/weierstrass",
            paper_ref: "X = (0 : 2x1 : 2x2 : 1 - x1^2), (X, X) = -(1 + x1^2)^2, (Xn, Xn) = -1",
            run: weierstrass,
        },
    ],
}];

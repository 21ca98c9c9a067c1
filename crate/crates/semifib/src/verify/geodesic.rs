use semifib_core::numeric::{central_diff, integrate_geodesic, tangency_residual, OdeState, ZeroConnection};
use semifib_core::projective::{geodesic_family, NordenConnection};

use super::{attempt, rel_err, Check, Sampler, Suite, Tally};
use crate::report::Witness;

const STEP: f64 = 1e-3;
const STEPS: usize = 1000;

/// RK4 from `x1 = x0` tangent to `x2 = A(x1^2 - 1) + B x1`, for
/// `(A, B)` in `{-1, 0, 1, 2}^2` and starting points `x0` in `{-1, 0, 1}`;
/// sup deviation from the parabola over `t in [0, 1]` at most `1e-6`.
fn family_rk4(_: &mut Sampler, _: usize) -> Tally {
    let mut t = Tally::property(1e-6);
    let values = [-1.0, 0.0, 1.0, 2.0];
    for a in values {
        for b in values {
            for x0 in [-1.0, 0.0, 1.0] {
                let init =
                    OdeState { position: [x0, geodesic_family(a, b, x0)], velocity: [1.0, 2.0 * a * x0 + b], t: 0.0 };
                let err = attempt(|| {
                    let path = integrate_geodesic(&NordenConnection, init, STEP, STEPS)?;
                    Ok(path
                        .iter()
                        .fold(0.0f64, |m, s| m.max((s.position[1] - geodesic_family(a, b, s.position[0])).abs())))
                });
                t.record_result(err, || Witness::new().with("A", a).with("B", b).with("x1", x0));
            }
        }
    }
    t
}

/// Along `t -> (t, A(t^2 - 1) + B t)` the acceleration including the
/// connection terms is parallel to the velocity.
fn family_tangency(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-9);
    for _ in 0..trials {
        let (a, b, x1) = (s.coeff(), s.coeff(), s.uniform(-2.0, 2.0));
        let x2 = geodesic_family(a, b, x1);
        let err = tangency_residual(&NordenConnection, [x1, x2], [1.0, 2.0 * a * x1 + b], [0.0, 2.0 * a]);
        t.record_result(err, || Witness::new().with("A", a).with("B", b).with("x1", x1));
    }
    t
}

/// Every vertical line `x1 = c` is a geodesic: zero residual, and RK4
/// keeps `x1 = c` to `1e-9`.
fn vertical_lines(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-9);
    for i in 0..trials {
        let (c, x2, w) = (s.uniform(-3.0, 3.0), s.coeff(), s.sign() * s.uniform(0.1, 3.0));
        let err = attempt(|| {
            let mut e = tangency_residual(&NordenConnection, [c, x2], [0.0, w], [0.0, 0.0])?;
            // integration is costly; every 50th sample runs it
            if i % 50 == 0 {
                let init = OdeState { position: [c, x2], velocity: [0.0, w], t: 0.0 };
                let path = integrate_geodesic(&NordenConnection, init, STEP, STEPS)?;
                e = e.max(path.iter().fold(0.0f64, |m, s| m.max((s.position[0] - c).abs())));
            }
            Ok(e)
        });
        t.record_result(err, || Witness::new().with("c", c).with("x2", x2).with("w", w));
    }
    t
}

/// The unit circle is not a pregeodesic: some of 8 sample points have
/// residual above `1e-3`.
fn circle_control(_: &mut Sampler, _: usize) -> Tally {
    let mut t = Tally::control(1e-3);
    for k in 0..8 {
        let th = core::f64::consts::PI * (2.0 * k as f64 + 0.5) / 8.0;
        let (sn, cs) = th.sin_cos();
        let err = tangency_residual(&NordenConnection, [cs, sn], [-sn, cs], [-cs, -sn]);
        t.record_result(err, || Witness::new().with("theta", th));
    }
    t
}

/// Straight lines under the zero connection, to `1e-12`.
fn flat_lines(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-12);
    for _ in 0..trials.min(100) {
        let (p, v) = ([s.coeff(), s.coeff()], [s.coeff(), s.coeff()]);
        let err = attempt(|| {
            let path = integrate_geodesic(&ZeroConnection, OdeState { position: p, velocity: v, t: 0.0 }, 1e-2, 100)?;
            Ok(path
                .iter()
                .fold(0.0f64, |m, st| m.max(rel_err(&st.position, &[p[0] + v[0] * st.t, p[1] + v[1] * st.t]))))
        });
        t.record_result(err, || Witness::new().with("p", p).with("v", v));
    }
    t
}

/// Central differences are exact on quadratics at `h = 1e-4`, to `1e-10`.
fn central_diff_quadratics(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-10);
    for _ in 0..trials {
        let c = [s.coeff(), s.coeff(), s.coeff(), s.coeff(), s.coeff(), s.coeff()];
        let p = [s.coeff(), s.coeff()];
        let f = |q: [f64; 2]| {
            Ok([c[0] + c[1] * q[0] + c[2] * q[1] + c[3] * q[0] * q[0] + c[4] * q[0] * q[1] + c[5] * q[1] * q[1]])
        };
        let err = attempt(|| {
            let j = central_diff(f, p, 1e-4)?;
            let want = [c[1] + 2.0 * c[3] * p[0] + c[4] * p[1], c[2] + c[4] * p[0] + 2.0 * c[5] * p[1]];
            Ok(rel_err(&j[0], &want))
        });
        t.record_result(err, || Witness::new().with("c", c).with("p", p));
    }
    t
}

pub(super) const SUITES: &[Suite] = &[
    Suite {
        name: "geodesic.families",
        checks: &[
            Check {
                id: "geodesic.families/circle_control",
                paper_ref: "x1^2 + x2^2 = 1 is not a geodesic",
                run: circle_control,
            },
            Check { id: "geodesic.families/rk4", paper_ref: "geodesics x2 = A(x1^2 - 1) + B x1", run: family_rk4 },
            Check {
                id: "geodesic.families/tangency",
                paper_ref: "geodesics x2 = A(x1^2 - 1) + B x1",
                run: family_tangency,
            },
            Check {
                id: "geodesic.families/vertical_lines",
                paper_ref: "x1 = 0 (and every x1 = c) is a geodesic",
                run: vertical_lines,
            },
        ],
    },
    Suite {
        name: "numeric.sanity",
        checks: &[
            Check {
                id: "numeric.sanity/central_diff",
                paper_ref: "central differences exact on quadratics",
                run: central_diff_quadratics,
            },
            Check { id: "numeric.sanity/flat_lines", paper_ref: "zero connection: straight lines", run: flat_lines },
        ],
    },
];

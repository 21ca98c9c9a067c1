use semifib_core::adapted::sphere_point;
use semifib_core::conformal::{p_map, stereo, stereo_inv};
use semifib_core::group::pi1;
use semifib_core::projective::{fiber_point, fiber_projection, project_from_pole, project_to_quadric};
use semifib_core::{AlgebraKind, AlphaPoint, Element, PlanePoint, Sign, SpherePoint};

use super::{attempt, rel_err, Check, Sampler, Suite, Tally};
use crate::report::Witness;

/// On the chart `y3 != 0` the lifted point dehomogenizes to `stereo_inv`
/// of the same plane point.
fn lift_vs_stereo(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-9);
    for _ in 0..trials {
        let (x1, x2) = (s.plane_x(), s.uniform(-4.0, 4.0));
        let err = attempt(|| {
            let affine = project_to_quadric(&AlphaPoint::new(x1, x2)).dehomogenize()?;
            Ok(rel_err(&affine, &stereo_inv(&PlanePoint::new(x1, x2))?.coeffs()))
        });
        t.record_result(err, || Witness::new().with("x1", x1).with("x2", x2));
    }
    t
}

/// Quadric points with `(y0 - y1) v = y2` project from `N` onto
/// `x2 = -v/2 (x1 + 1)^2`, to `1e-8`. Angles keep `|sin theta - 1| >= 1e-3`.
fn projective_fibers(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-8);
    let mut done = 0;
    while done < trials {
        let (v, theta) = (s.coeff(), s.uniform(-core::f64::consts::PI, core::f64::consts::PI));
        if (theta.sin() - 1.0).abs() < 1e-3 {
            continue;
        }
        done += 1;
        let err = attempt(|| {
            let p = project_from_pole(&fiber_point(v, theta))?;
            Ok(rel_err(&[p.x2], &[fiber_projection(v, p.x1)]))
        });
        t.record_result(err, || Witness::new().with("v", v).with("theta", theta));
    }
    t
}

/// `p = pi1 o stereo_inv` on the plane.
fn plane_base(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-9);
    for _ in 0..trials {
        let p = PlanePoint::new(s.plane_x(), s.uniform(-4.0, 4.0));
        let err = attempt(|| Ok(rel_err(&[p_map(&p)?], &[pi1(&stereo_inv(&p)?)?])));
        t.record_result(err, || Witness::new().with("x", p.x).with("y", p.y));
    }
    t
}

/// The projective fiber parameter is `v = y2/(y0 - y1)`; under
/// `x1 -> -x1` it matches `pi1`. A sphere point with `pi1 = c`, mirrored,
/// projects onto the projective parabola with `v = c`.
fn mirrored_fibers(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-8);
    for _ in 0..trials {
        let c = s.coeff();
        let eps = if s.coin() { Sign::Plus } else { Sign::Minus };
        let phi = if eps == Sign::Plus { s.sign() * s.uniform(1e-2, 4.0) } else { s.uniform(-4.0, 4.0) };
        let q = SpherePoint { u: c, phi, eps };
        let err = attempt(|| {
            let x = sphere_point(&q)?;
            let m = Element::new(AlgebraKind::TypeII, x.c0(), -x.c1(), x.c2())?;
            let v = m.c2() / (m.c0() - m.c1());
            let p = stereo(&m)?;
            Ok(rel_err(&[v, p.y], &[c, fiber_projection(c, p.x)]))
        });
        t.record_result(err, || Witness::new().with("u", c).with("phi", phi).with("eps", eps.value()));
    }
    t
}

pub(super) const SUITES: &[Suite] = &[Suite {
    name: "cross.models",
    checks: &[
        Check {
            id: "cross.models/lift_vs_stereo",
            paper_ref: "X1 dehomogenized equals the inverse stereographic projection",
            run: lift_vs_stereo,
        },
        Check {
            id: "cross.models/mirrored_fibers",
            paper_ref: "(y0 - y1) v - y2 = 0 versus u (x0 + x1) - x2 = 0 under x1 -> -x1",
            run: mirrored_fibers,
        },
        Check {
            id: "cross.models/plane_base",
            paper_ref: "p(x, y) = -2y/(1 - x)^2 = pi1 of the sphere point",
            run: plane_base,
        },
        Check {
            id: "cross.models/projective_fibers",
            paper_ref: "(y0 - y1) v - y2 = 0 projects to x2 = -v/2 (x1 + 1)^2",
            run: projective_fibers,
        },
    ],
}];

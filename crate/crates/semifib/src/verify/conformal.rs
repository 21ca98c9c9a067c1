use semifib_core::adapted::sphere_point;
use semifib_core::conformal::{adapted_from_plane, conformal_factor, fiber_image, p_map, stereo, stereo_inv};
use semifib_core::numeric::central_diff;
use semifib_core::{PlanePoint, Sign, SpherePoint};

use super::{attempt, el_err, rel_err, Check, Sampler, Suite, Tally};
use crate::report::Witness;

const TOL: f64 = 1e-9;

fn pw(p: &PlanePoint) -> Witness {
    Witness::new().with("x", p.x).with("y", p.y)
}

fn plane_sample(s: &mut Sampler) -> PlanePoint {
    PlanePoint::new(s.plane_x(), s.uniform(-4.0, 4.0))
}

/// Sphere point with `|phi| >= 1e-2` on the `eps = +1` component, away
/// from the pole.
fn sphere_sample(s: &mut Sampler, u: f64) -> SpherePoint {
    let eps = if s.coin() { Sign::Plus } else { Sign::Minus };
    let phi = if eps == Sign::Plus { s.sign() * s.uniform(1e-2, 4.0) } else { s.uniform(-4.0, 4.0) };
    SpherePoint { u, phi, eps }
}

fn sw(p: &SpherePoint) -> Witness {
    Witness::new().with("u", p.u).with("phi", p.phi).with("eps", p.eps.value())
}

/// `stereo(stereo_inv(p)) = p` and `stereo_inv(stereo(q)) = q`.
fn round_trip(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for i in 0..trials {
        if i % 2 == 0 {
            let p = plane_sample(s);
            let err = attempt(|| {
                let back = stereo(&stereo_inv(&p)?)?;
                Ok(rel_err(&[back.x, back.y], &[p.x, p.y]))
            });
            t.record_result(err, || pw(&p));
        } else {
            let u = s.coeff();
            let q = sphere_sample(s, u);
            let err = attempt(|| {
                let x = sphere_point(&q)?;
                Ok(el_err(&stereo_inv(&stereo(&x)?)?, &x))
            });
            t.record_result(err, || sw(&q));
        }
    }
    t
}

/// `p` is constant on the image of each fiber: every sphere point with
/// base coordinate `c` projects to a plane point with `p = c`.
fn p_constant_on_fibers(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let c = s.coeff();
        let q = sphere_sample(s, c);
        let err = attempt(|| Ok(rel_err(&[p_map(&stereo(&sphere_point(&q)?)?)?], &[c])));
        t.record_result(err, || sw(&q));
    }
    t
}

/// Fiber images lie on `y = -c/2 (x - 1)^2`, to `1e-8`.
fn fiber_images(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-8);
    for _ in 0..trials {
        let c = s.coeff();
        let q = sphere_sample(s, c);
        let err = attempt(|| {
            let p = stereo(&sphere_point(&q)?)?;
            Ok(rel_err(&[p.y], &[fiber_image(c, p.x)]))
        });
        t.record_result(err, || sw(&q));
    }
    t
}

fn fd_step(x: f64) -> f64 {
    1e-3 * (x - 1.0).abs().min((x + 1.0).abs()).min(1.0)
}

/// The pullback of the sphere's form under `stereo_inv` is
/// `-4/(x^2 - 1)^2 dx^2` (no `dy` terms), and `dphi/dx = 2/(x^2 - 1)`;
/// both by central differences, to `1e-5`.
fn factor(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-5);
    for _ in 0..trials {
        let p = plane_sample(s);
        let err = attempt(|| {
            let q = |v: [f64; 2]| Ok(stereo_inv(&PlanePoint::new(v[0], v[1]))?.coeffs());
            let jac = central_diff(q, [p.x, p.y], fd_step(p.x))?;
            let form = |i: usize, j: usize| jac[0][i] * jac[0][j] - jac[1][i] * jac[1][j];
            let want = conformal_factor(p.x)?;
            let mut e = rel_err(&[-form(0, 0)], &[want]);
            e = e.max(form(0, 1).abs() / want.max(1.0)).max(form(1, 1).abs());
            let phi = |v: [f64; 2]| Ok([adapted_from_plane(&PlanePoint::new(v[0], v[1]))?.phi]);
            let dphi = central_diff(phi, [p.x, p.y], fd_step(p.x))?;
            Ok(e.max(rel_err(&[dphi[0][0], dphi[0][1]], &[2.0 / (p.x * p.x - 1.0), 0.0])))
        });
        t.record_result(err, || pw(&p));
    }
    t
}

/// The sphere coordinates of a plane point give back `stereo_inv`.
fn plane_coordinates(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let p = plane_sample(s);
        let err = attempt(|| {
            let a = adapted_from_plane(&p)?;
            let eps_ok = if (a.eps == Sign::Plus) == (p.x.abs() > 1.0) { 0.0 } else { f64::INFINITY };
            Ok(el_err(&sphere_point(&a)?, &stereo_inv(&p)?).max(eps_ok))
        });
        t.record_result(err, || pw(&p));
    }
    t
}

pub(super) const SUITES: &[Suite] = &[Suite {
    name: "conformal.model",
    checks: &[
        Check {
            id: "conformal.model/factor",
            paper_ref: "ds^2 = -4 dx^2/(1 - x^2)^2, dphi/dx = 2/(x^2 - 1)",
            run: factor,
        },
        Check {
            id: "conformal.model/fiber_images",
            paper_ref: "fiber u = c maps to the parabola y = -c/2 (x - 1)^2",
            run: fiber_images,
        },
        Check {
            id: "conformal.model/p_constant_on_fibers",
            paper_ref: "p(x, y) = -2y/(1 - x)^2 is constant on fiber images",
            run: p_constant_on_fibers,
        },
        Check {
            id: "conformal.model/plane_coordinates",
            paper_ref: "phi = ln(eps (x - 1)/(x + 1)), u = -2y/(1 - x)^2",
            run: plane_coordinates,
        },
        Check {
            id: "conformal.model/round_trip",
            paper_ref: "x = x1/(1 - x0), y = x2/(1 - x0) and its inverse, |x -+ 1| >= 1e-3",
            run: round_trip,
        },
    ],
}];

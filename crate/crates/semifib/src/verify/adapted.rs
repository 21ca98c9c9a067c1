use semifib_core::adapted::{
    from_adapted, on_sphere, s1_action, s1_element, sphere_coords, sphere_metric_at, sphere_point, structure_action,
    structure_element, swap_spheres, to_adapted,
};
use semifib_core::group::pi1;
use semifib_core::{Adapted, Chart, Sign, SpherePoint};

use super::{attempt, el_err, rel_err, Check, Sampler, Suite, Tally};
use crate::report::Witness;

const TOL: f64 = 1e-9;

fn adapted_sample(s: &mut Sampler, chart: Chart) -> Adapted {
    let lambda = s.sign() * s.uniform(0.1, 3.0);
    Adapted { u: s.coeff(), lambda, phi: s.uniform(-2.0, 2.0), chart }
}

fn sign(s: &mut Sampler) -> Sign {
    if s.coin() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn sphere_sample(s: &mut Sampler) -> SpherePoint {
    SpherePoint { u: s.coeff(), phi: s.uniform(-2.0, 2.0), eps: sign(s) }
}

fn aw(a: &Adapted) -> Witness {
    Witness::new().with("u", a.u).with("lambda", a.lambda).with("phi", a.phi).with("chart", format!("{:?}", a.chart))
}

fn round_trip(s: &mut Sampler, trials: usize, chart: Chart) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let a = adapted_sample(s, chart);
        let err = attempt(|| {
            let x = from_adapted(&a)?;
            let b = to_adapted(&x)?;
            let back = from_adapted(&b)?;
            let chart_ok = if b.chart == chart { 0.0 } else { f64::INFINITY };
            Ok(rel_err(&[b.u, b.lambda, b.phi], &[a.u, a.lambda, a.phi]).max(el_err(&back, &x)).max(chart_ok))
        });
        t.record_result(err, || aw(&a));
    }
    t
}

fn round_trip_timelike(s: &mut Sampler, trials: usize) -> Tally {
    round_trip(s, trials, Chart::Timelike)
}

fn round_trip_spacelike(s: &mut Sampler, trials: usize) -> Tally {
    round_trip(s, trials, Chart::Spacelike)
}

/// Left multiplication by `rho (cosh psi + sinh psi e1)` is
/// `(u, lambda, phi) -> (u, rho lambda, phi + psi)`.
fn structure(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let chart = if s.coin() { Chart::Timelike } else { Chart::Spacelike };
        let a = adapted_sample(s, chart);
        let rho = s.sign() * s.uniform(0.1, 3.0);
        let psi = s.uniform(-1.0, 1.0);
        let err = attempt(|| {
            let moved = structure_element(rho, psi)?.mul(&from_adapted(&a)?)?;
            Ok(el_err(&moved, &from_adapted(&structure_action(rho, psi, &a)?)?))
        });
        t.record_result(err, || aw(&a).with("rho", rho).with("psi", psi));
    }
    t
}

/// Gram matrix of the sphere parametrization in `(u, phi)` is
/// `[[0, 0], [0, -1]]`, to `1e-6` by central differences.
fn sphere_metric(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(1e-6);
    for _ in 0..trials {
        let p = sphere_sample(s);
        let err = attempt(|| {
            let g = sphere_metric_at(&p)?;
            Ok(rel_err(&[g[0][0], g[0][1], g[1][0], g[1][1]], &[0.0, 0.0, 0.0, -1.0]))
        });
        t.record_result(err, || Witness::new().with("u", p.u).with("phi", p.phi).with("eps", p.eps.value()));
    }
    t
}

/// Sphere points lie on `S2(1)`, have `pi1 = u`, and round-trip through
/// their coordinates; `S1` acts by `(u, phi, eps) -> (u, phi + psi, eps eps1)`.
fn sphere(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let p = sphere_sample(s);
        let eps1 = sign(s);
        let psi = s.uniform(-1.0, 1.0);
        let err = attempt(|| {
            let x = sphere_point(&p)?;
            let on = if on_sphere(&x, Sign::Plus) { 0.0 } else { f64::INFINITY };
            let back = sphere_coords(&x)?;
            let eps_ok = if back.eps == p.eps { 0.0 } else { f64::INFINITY };
            let e = rel_err(&[back.u, back.phi, pi1(&x)?], &[p.u, p.phi, p.u]);
            let moved = s1_element(eps1, psi).mul(&x)?;
            let e2 = el_err(&moved, &sphere_point(&s1_action(eps1, psi, &p))?);
            Ok(e.max(e2).max(on).max(eps_ok))
        });
        t.record_result(err, || {
            Witness::new()
                .with("u", p.u)
                .with("phi", p.phi)
                .with("eps", p.eps.value())
                .with("eps1", eps1.value())
                .with("psi", psi)
        });
    }
    t
}

/// `x -> a x` with `|a|^2 = -1` carries `S2(1)` onto `S2(-1)`.
fn swap(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let p = sphere_sample(s);
        let a = s.unit(false);
        let err = attempt(|| {
            let y = swap_spheres(&a, &sphere_point(&p)?)?;
            Ok(if on_sphere(&y, Sign::Minus) { 0.0 } else { (y.norm_sq()? + 1.0).abs() })
        });
        t.record_result(err, || Witness::new().with("a", a.coeffs()).with("u", p.u).with("phi", p.phi));
    }
    t
}

/// `x = lambda (cosh phi, sinh phi, u e^phi)` has `pi1(x) = u`.
fn base_coordinate(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let chart = if s.coin() { Chart::Timelike } else { Chart::Spacelike };
        let a = adapted_sample(s, chart);
        let err = attempt(|| Ok(rel_err(&[pi1(&from_adapted(&a)?)?], &[a.u])));
        t.record_result(err, || aw(&a));
    }
    t
}

pub(super) const SUITES: &[Suite] = &[Suite {
    name: "adapted.coordinates",
    checks: &[
        Check {
            id: "adapted.coordinates/base_coordinate",
            paper_ref: "u = x2/(x0 + x1) is the base coordinate pi1",
            run: base_coordinate,
        },
        Check {
            id: "adapted.coordinates/round_trip_spacelike",
            paper_ref: "x = lambda (sinh phi, cosh phi, u e^phi), |lambda| >= 0.1",
            run: round_trip_spacelike,
        },
        Check {
            id: "adapted.coordinates/round_trip_timelike",
            paper_ref: "x = lambda (cosh phi, sinh phi, u e^phi), |lambda| >= 0.1",
            run: round_trip_timelike,
        },
        Check {
            id: "adapted.coordinates/sphere",
            paper_ref: "S2(1): r = eps (cosh phi, sinh phi, u e^phi); S1 acts on (phi, eps)",
            run: sphere,
        },
        Check {
            id: "adapted.coordinates/sphere_metric",
            paper_ref: "sphere linear element ds^2 = -dphi^2 (Gram [[0, 0], [0, -1]] in (u, phi))",
            run: sphere_metric,
        },
        Check {
            id: "adapted.coordinates/structure_action",
            paper_ref: "H1 acts by u' = u, lambda' = rho lambda, phi' = phi + psi",
            run: structure,
        },
        Check {
            id: "adapted.coordinates/swap_spheres",
            paper_ref: "anti-rotations exchange S2(1) and S2(-1)",
            run: swap,
        },
    ],
}];

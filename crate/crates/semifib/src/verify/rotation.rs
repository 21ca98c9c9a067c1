use semifib_core::rotation::{angle_invariant, compose_unit, decompose_unit, reflect, rotate};
use semifib_core::{AlgebraKind, Element};

use super::{attempt, el_err, rel_err, Check, Sampler, Suite, Tally};
use crate::report::Witness;

const TOL: f64 = 1e-9;

fn size(x: &Element) -> f64 {
    x.c0().abs() + x.c1().abs()
}

/// `|a x b|^2 = |a|^2 |b|^2 |x|^2` (and with `xbar`), relative to the size
/// of the terms of the quadratic form.
fn norm_multiplicative(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (pa, pb) = (s.coin(), s.coin());
        let (a, b) = (s.unit(pa), s.unit(pb));
        let x = s.element(AlgebraKind::TypeII);
        let improper = s.coin();
        let err = attempt(|| {
            let y = rotate(&a, &x, &b, improper)?;
            let want = a.norm_sq()? * b.norm_sq()? * x.norm_sq()?;
            let scale = 1.0f64.max((size(&a) * size(&b) * size(&x)).powi(2));
            Ok((y.norm_sq()? - want).abs() / scale)
        });
        t.record_result(err, || {
            Witness::new().with("a", a.coeffs()).with("b", b.coeffs()).with("x", x.coeffs()).with("improper", improper)
        });
    }
    t
}

/// For each unit `a`, `(x, a x)/|x|^2` takes the value `a0` at 100 random
/// non-null `x` with `|x0^2 - x1^2| >= 0.1`.
fn angle_constant(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let positive = s.coin();
        let a = s.unit(positive);
        let mut values = Vec::with_capacity(100);
        let mut failure = None;
        while values.len() < 100 {
            let x = s.element(AlgebraKind::TypeII);
            if (x.c0() * x.c0() - x.c1() * x.c1()).abs() < 0.1 {
                continue;
            }
            match angle_invariant(&a, &x) {
                Ok(v) => values.push(v),
                Err(e) => {
                    failure = Some((e, x));
                    break;
                }
            }
        }
        if let Some((e, x)) = failure {
            t.error(&e, || Witness::new().with("a", a.coeffs()).with("x", x.coeffs()));
            continue;
        }
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
        let spread = (hi - lo) / 1.0f64.max(hi.abs());
        let err = spread.max(rel_err(&[values[0]], &[a.c0()]));
        t.record(err, || Witness::new().with("a", a.coeffs()).with("min", lo).with("max", hi));
    }
    t
}

/// Reflection in the plane orthogonal to `n`, `|n|^2 = +-1`: involutive,
/// an isometry, `n -> -n`, and fixes every `x` with `(x, n) = 0`.
fn reflection(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let positive = s.coin();
        let n = s.unit(positive);
        let x = s.element(AlgebraKind::TypeII);
        let (k, c) = (s.coeff(), s.coeff());
        let err = attempt(|| {
            let r = reflect(&x, &n)?;
            let mut e = el_err(&reflect(&r, &n)?, &x);
            let scale = 1.0f64.max((size(&n).powi(2) * size(&x)).powi(2));
            e = e.max((r.norm_sq()? - x.norm_sq()?).abs() / scale);
            e = e.max(el_err(&reflect(&n, &n)?, &n.neg()));
            let orth = Element::new(AlgebraKind::TypeII, k * n.c1(), k * n.c0(), c)?;
            e = e.max(el_err(&reflect(&orth, &n)?, &orth));
            Ok(e)
        });
        t.record_result(err, || Witness::new().with("n", n.coeffs()).with("x", x.coeffs()).with("k", k).with("c", c));
    }
    t
}

/// Two reflections compose to `x -> a x b` with
/// `a = |m|^2 |n|^2 m nbar`, `b = nbar m`.
fn two_reflections(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (pm, pn) = (s.coin(), s.coin());
        let (m, n) = (s.unit(pm), s.unit(pn));
        let x = s.element(AlgebraKind::TypeII);
        let err = attempt(|| {
            let twice = reflect(&reflect(&x, &n)?, &m)?;
            let k = m.norm_sq()? * n.norm_sq()?;
            let a = m.mul(&n.conj()?)?.scale(k)?;
            let b = n.conj()?.mul(&m)?;
            Ok(el_err(&twice, &a.mul(&x)?.mul(&b)?))
        });
        t.record_result(err, || Witness::new().with("m", m.coeffs()).with("n", n.coeffs()).with("x", x.coeffs()));
    }
    t
}

/// Unit elements split as `cosh phi + a0 sinh phi` or `sinh phi + a0 cosh phi`
/// with `|a0|^2 = -1` and recompose exactly.
fn decomposition(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let positive = s.coin();
        let phi = s.sign() * s.uniform(0.05, 2.0);
        let c2 = s.coeff();
        let a =
            if positive { Element::ii(phi.cosh(), phi.sinh(), c2) } else { Element::ii(phi.sinh(), phi.cosh(), c2) };
        let modulus = if positive { 1.0 } else { -1.0 };
        let err = attempt(|| {
            let (p, pure) = decompose_unit(&a)?;
            let back = compose_unit(p, &pure, modulus)?;
            Ok(el_err(&back, &a).max((pure.norm_sq()? + 1.0).abs()).max(pure.c0().abs()))
        });
        t.record_result(err, || Witness::new().with("a", a.coeffs()));
    }
    t
}

pub(super) const SUITES: &[Suite] = &[Suite {
    name: "rotation.calculus",
    checks: &[
        Check {
            id: "rotation.calculus/angle_invariant",
            paper_ref: "(x, a x)/|x|^2 = a0 is independent of x (cosh or sinh of the angle)",
            run: angle_constant,
        },
        Check {
            id: "rotation.calculus/decomposition",
            paper_ref: "a = cosh phi + a0 sinh phi, |a0|^2 = -1",
            run: decomposition,
        },
        Check {
            id: "rotation.calculus/norm_multiplicative",
            paper_ref: "|a x b|^2 = |a|^2 |b|^2 |x|^2 for |a|^2, |b|^2 = +-1",
            run: norm_multiplicative,
        },
        Check {
            id: "rotation.calculus/reflection",
            paper_ref: "x' = -n xbar n/|n|^2: involutive, n -> -n, fixes (x, n) = 0",
            run: reflection,
        },
        Check {
            id: "rotation.calculus/two_reflections",
            paper_ref: "composition of two reflections is x -> a x b",
            run: two_reflections,
        },
    ],
}];

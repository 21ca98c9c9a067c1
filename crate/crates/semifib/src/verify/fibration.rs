use semifib_core::group::{
    base_action, conjugate_by, involution_base, left_matrix, pi1, pi2, right_matrix, section, Fibration, Mat3,
};
use semifib_core::{AlgebraKind, Element};

use super::{attempt, el_err, rel_err, Check, Sampler, Suite, Tally};
use crate::report::Witness;

const TOL: f64 = 1e-9;

fn rel(got: f64, want: f64) -> f64 {
    rel_err(&[got], &[want])
}

fn wx(a: &Element, x: &Element) -> Witness {
    Witness::new().with("a", a.coeffs()).with("x", x.coeffs())
}

fn h1_preserves(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (a, x) = (s.h1_element(), s.group_element());
        t.record_result(attempt(|| Ok(rel(pi1(&a.mul(&x)?)?, pi1(&x)?))), || wx(&a, &x));
    }
    t
}

fn h2_preserves(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (a, x) = (s.h2_element(), s.group_element());
        t.record_result(attempt(|| Ok(rel(pi2(&a.mul(&x)?)?, pi2(&x)?))), || wx(&a, &x));
    }
    t
}

/// Left multiplication by `a` with `|a2| >= 0.1` moves some fiber of `pi1`.
fn h1_nonmember_breaks(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::control(TOL);
    for _ in 0..trials {
        let a = loop {
            let a = s.group_element();
            if a.c2().abs() >= 0.1 {
                break a;
            }
        };
        let x = s.group_element();
        t.record_result(attempt(|| Ok(rel(pi1(&a.mul(&x)?)?, pi1(&x)?))), || wx(&a, &x));
    }
    t
}

/// Left multiplication by `a` with `|a1| >= 0.1` moves some fiber of `pi2`.
fn h2_nonmember_breaks(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::control(TOL);
    for _ in 0..trials {
        let a = loop {
            let a = s.group_element();
            if a.c1().abs() >= 0.1 {
                break a;
            }
        };
        let x = s.group_element();
        t.record_result(attempt(|| Ok(rel(pi2(&a.mul(&x)?)?, pi2(&x)?))), || wx(&a, &x));
    }
    t
}

/// `L(a) x = a x`, `R(a) x = x a`, `det L(a) = (a0^2 - a1^2)(a0 + a1)`,
/// `det R(a) = (a0^2 - a1^2)(a0 - a1)`.
fn matrices(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (a, x) = (s.element(AlgebraKind::TypeII), s.element(AlgebraKind::TypeII));
        let err = attempt(|| {
            let (l, r) = (left_matrix(&a)?, right_matrix(&a)?);
            let n = a.c0() * a.c0() - a.c1() * a.c1();
            let e = rel_err(&l.apply(x.coeffs()), &a.mul(&x)?.coeffs())
                .max(rel_err(&r.apply(x.coeffs()), &x.mul(&a)?.coeffs()))
                .max(rel(l.det(), n * (a.c0() + a.c1())))
                .max(rel(r.det(), n * (a.c0() - a.c1())));
            Ok(e)
        });
        t.record_result(err, || wx(&a, &x));
    }
    t
}

/// `pi1(x b) = alpha pi1(x) + beta`, `alpha = (b0 - b1)/(b0 + b1)`,
/// `beta = pi1(b)`.
fn affine_base(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (x, b) = (s.group_element(), s.group_element());
        let err = attempt(|| {
            let map = base_action(Fibration::ByH1, &b)?;
            let alpha = (b.c0() - b.c1()) / (b.c0() + b.c1());
            let want = alpha * pi1(&x)? + pi1(&b)?;
            let got = map.apply(pi1(&x)?).unwrap_or(f64::NAN);
            Ok(rel(pi1(&x.mul(&b)?)?, want).max(rel(got, want)))
        });
        t.record_result(err, || Witness::new().with("x", x.coeffs()).with("b", b.coeffs()));
    }
    t
}

/// `pi2(x b) = (u + alpha)/(alpha u + 1)` with `u = pi2(x)`,
/// `alpha = pi2(b)`. Samples keep `|x0|, |b0|, |(xb)0| >= 1e-3` and
/// `|alpha u + 1| >= 1e-3`.
fn hyperbolic_base(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    let mut done = 0;
    while done < trials {
        let (x, b) = (s.group_element(), s.group_element());
        let Ok(xb) = x.mul(&b) else { continue };
        if x.c0().abs() < 1e-3 || b.c0().abs() < 1e-3 || xb.c0().abs() < 1e-3 {
            continue;
        }
        let (u, alpha) = (x.c1() / x.c0(), b.c1() / b.c0());
        if (alpha * u + 1.0).abs() < 1e-3 {
            continue;
        }
        done += 1;
        let err = attempt(|| {
            let map = base_action(Fibration::ByH2, &b)?;
            let want = (u + alpha) / (alpha * u + 1.0);
            let got = map.apply(pi2(&x)?).unwrap_or(f64::NAN);
            Ok(rel(pi2(&xb)?, want).max(rel(got, want)))
        });
        t.record_result(err, || Witness::new().with("x", x.coeffs()).with("b", b.coeffs()));
    }
    t
}

/// `b = e1 + b2 e2` squares to 1, `R(b)^2 = I`, and `x -> x b` induces
/// `u -> -u + b2` on the `pi1` base and `u -> 1/u` on the `pi2` base.
fn involution(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (b2, x) = (s.coeff(), s.group_element());
        let err = attempt(|| {
            let (m, map1) = involution_base(Fibration::ByH1, b2)?;
            let (_, map2) = involution_base(Fibration::ByH2, b2)?;
            let b = Element::new(AlgebraKind::TypeII, 0.0, 1.0, b2)?;
            let xb = x.mul(&b)?;
            let mut e = el_err(&b.mul(&b)?, &Element::unit(AlgebraKind::TypeII));
            e = e.max((m * m).max_abs_diff(&Mat3::IDENTITY));
            let u = pi1(&x)?;
            e = e.max(rel(pi1(&xb)?, -u + b2));
            e = e.max(rel(map1.apply(u).unwrap_or(f64::NAN), -u + b2));
            if x.c0().abs() >= 1e-3 && x.c1().abs() >= 1e-3 {
                let v = pi2(&x)?;
                e = e.max(rel(pi2(&xb)?, 1.0 / v));
                e = e.max(rel(map2.apply(v).unwrap_or(f64::NAN), 1.0 / v));
            }
            Ok(e)
        });
        t.record_result(err, || Witness::new().with("b2", b2).with("x", x.coeffs()));
    }
    t
}

/// Component index of a product is the XOR of the factors' indices.
fn components(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(0.0);
    for _ in 0..trials {
        let (x, y) = (s.group_element(), s.group_element());
        let err = attempt(|| {
            let xy = x.mul(&y)?;
            let ok = xy.component_index()? == x.component_index()? ^ y.component_index()?;
            Ok(if ok { 0.0 } else { 1.0 })
        });
        t.record_result(err, || Witness::new().with("x", x.coeffs()).with("y", y.coeffs()));
    }
    t
}

/// `g h g^-1` stays in `H2` for `h` in `H2`. Group elements here keep
/// `|g0^2 - g1^2| >= 0.1`.
fn h2_normal(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let g = loop {
            let g = s.group_element();
            if (g.c0() * g.c0() - g.c1() * g.c1()).abs() >= 0.1 {
                break g;
            }
        };
        let h = s.h2_element();
        let err = attempt(|| {
            let c = conjugate_by(&g, &h)?;
            Ok(c.c1().abs() / 1.0f64.max(c.max_abs()))
        });
        t.record_result(err, || Witness::new().with("g", g.coeffs()).with("h", h.coeffs()));
    }
    t
}

/// Some conjugate of an `H1` element leaves `H1`.
fn h1_not_normal(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::control(TOL);
    for _ in 0..trials {
        let (g, h) = (s.group_element(), s.h1_element());
        let err = attempt(|| {
            let c = conjugate_by(&g, &h)?;
            Ok(c.c2().abs() / 1.0f64.max(c.max_abs()))
        });
        t.record_result(err, || Witness::new().with("g", g.coeffs()).with("h", h.coeffs()));
    }
    t
}

/// `pi1(1 + u e2) = u`.
fn sections(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let u = s.uniform(-100.0, 100.0);
        t.record_result(attempt(|| Ok(rel(pi1(&section(u)?)?, u))), || Witness::new().with("u", u));
    }
    t
}

pub(super) const SUITES: &[Suite] = &[
    Suite {
        name: "fibration.h1_preserves",
        checks: &[Check {
            id: "fibration.h1_preserves",
            paper_ref: "pi1(a x) = pi1(x) for a in H1, pi1(x) = x2/(x0 + x1)",
            run: h1_preserves,
        }],
    },
    Suite {
        name: "fibration.h2_preserves",
        checks: &[Check {
            id: "fibration.h2_preserves",
            paper_ref: "pi2(a x) = pi2(x) for a in H2, pi2(x) = x1/x0",
            run: h2_preserves,
        }],
    },
    Suite {
        name: "fibration.h1_nonmember_breaks",
        checks: &[Check {
            id: "fibration.h1_nonmember_breaks",
            paper_ref: "pi1(a x) = pi1(x) for all x only if a in H1",
            run: h1_nonmember_breaks,
        }],
    },
    Suite {
        name: "fibration.h2_nonmember_breaks",
        checks: &[Check {
            id: "fibration.h2_nonmember_breaks",
            paper_ref: "pi2(a x) = pi2(x) for all x only if a in H2",
            run: h2_nonmember_breaks,
        }],
    },
    Suite {
        name: "fibration.matrices",
        checks: &[Check {
            id: "fibration.matrices",
            paper_ref: "L(a), R(b) matrices; det L(a) = (a0^2 - a1^2)(a0 + a1)",
            run: matrices,
        }],
    },
    Suite {
        name: "fibration.base_actions",
        checks: &[
            Check {
                id: "fibration.base_actions/affine",
                paper_ref: "u' = alpha u + beta, alpha = (b0 - b1)/(b0 + b1), beta = pi1(b)",
                run: affine_base,
            },
            Check {
                id: "fibration.base_actions/hyperbolic",
                paper_ref: "u' = (u + alpha)/(alpha u + 1), alpha = pi2(b)",
                run: hyperbolic_base,
            },
            Check {
                id: "fibration.base_actions/involution",
                paper_ref: "b = e1 + b2 e2, b^2 = 1; u' = -u + b2 and u' = 1/u",
                run: involution,
            },
        ],
    },
    Suite {
        name: "fibration.structure",
        checks: &[
            Check {
                id: "fibration.structure/components",
                paper_ref: "G has four components; index(x y) = index(x) xor index(y)",
                run: components,
            },
            Check { id: "fibration.structure/h1_not_normal", paper_ref: "H1 is not normal in G", run: h1_not_normal },
            Check { id: "fibration.structure/h2_normal", paper_ref: "H2 is normal in G", run: h2_normal },
            Check { id: "fibration.structure/section", paper_ref: "section u -> 1 + u e2", run: sections },
        ],
    },
];

use semifib_core::algebra::closed_form_mul;
use semifib_core::{AlgebraKind, Element, SubalgebraClass};

use super::{attempt, el_err, rel_err, Check, Sampler, Suite, Tally};
use crate::report::Witness;

const TOL: f64 = 1e-9;

macro_rules! per_kind {
    ($($name:ident => $f:ident($kind:ident);)*) => {
        $(fn $name(s: &mut Sampler, trials: usize) -> Tally {
            $f(s, trials, AlgebraKind::$kind)
        })*
    };
}

per_kind! {
    assoc_i => associativity(TypeI);
    assoc_ii => associativity(TypeII);
    assoc_iii => associativity(TypeIII);
    unit_i => unitality(TypeI);
    unit_ii => unitality(TypeII);
    unit_iii => unitality(TypeIII);
    table_i => table_product(TypeI);
    table_ii => table_product(TypeII);
    table_iii => table_product(TypeIII);
    conj_ii => conjugation(TypeII);
    conj_iii => conjugation(TypeIII);
    inv_i => inverse(TypeI);
    inv_ii => inverse(TypeII);
    inv_iii => inverse(TypeIII);
}

fn w3(x: &Element, y: &Element, z: &Element) -> Witness {
    Witness::new().with("x", x.coeffs()).with("y", y.coeffs()).with("z", z.coeffs())
}

fn associativity(s: &mut Sampler, trials: usize, kind: AlgebraKind) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (x, y, z) = (s.element(kind), s.element(kind), s.element(kind));
        let err = attempt(|| Ok(el_err(&x.mul(&y)?.mul(&z)?, &x.mul(&y.mul(&z)?)?)));
        t.record_result(err, || w3(&x, &y, &z));
    }
    t
}

fn unitality(s: &mut Sampler, trials: usize, kind: AlgebraKind) -> Tally {
    let mut t = Tally::property(TOL);
    let one = Element::unit(kind);
    for _ in 0..trials {
        let x = s.element(kind);
        let err = attempt(|| Ok(el_err(&one.mul(&x)?, &x).max(el_err(&x.mul(&one)?, &x))));
        t.record_result(err, || Witness::new().with("x", x.coeffs()));
    }
    t
}

fn table_product(s: &mut Sampler, trials: usize, kind: AlgebraKind) -> Tally {
    let mut t = Tally::property(TOL);
    let table = kind.table();
    for _ in 0..trials {
        let (x, y) = (s.element(kind), s.element(kind));
        let want = closed_form_mul(kind, x.coeffs(), y.coeffs());
        let err = rel_err(&table.mul(x.coeffs(), y.coeffs()), &want);
        t.record(err, || Witness::new().with("x", x.coeffs()).with("y", y.coeffs()));
    }
    t
}

/// `conj(x y) = conj(y) conj(x)`.
fn conjugation(s: &mut Sampler, trials: usize, kind: AlgebraKind) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let (x, y) = (s.element(kind), s.element(kind));
        let err = attempt(|| Ok(el_err(&x.mul(&y)?.conj()?, &y.conj()?.mul(&x.conj()?)?)));
        t.record_result(err, || Witness::new().with("x", x.coeffs()).with("y", y.coeffs()));
    }
    t
}

/// The coefficient map `(x0, -x1, -x2)` is not an anti-automorphism of the
/// type I algebra.
fn conjugation_fails_i(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::control(TOL);
    for _ in 0..trials {
        let (x, y) = (s.element(AlgebraKind::TypeI), s.element(AlgebraKind::TypeI));
        let err = attempt(|| Ok(el_err(&x.mul(&y)?.conj_coeffs(), &y.conj_coeffs().mul(&x.conj_coeffs())?)));
        t.record_result(err, || Witness::new().with("x", x.coeffs()).with("y", y.coeffs()));
    }
    t
}

fn inverse(s: &mut Sampler, trials: usize, kind: AlgebraKind) -> Tally {
    let mut t = Tally::property(TOL);
    let one = Element::unit(kind);
    for _ in 0..trials {
        let x = s.invertible(kind);
        let err = attempt(|| {
            let inv = x.inverse()?;
            Ok(el_err(&x.mul(&inv)?, &one).max(el_err(&inv.mul(&x)?, &one)))
        });
        t.record_result(err, || Witness::new().with("x", x.coeffs()));
    }
    t
}

/// `x xbar = |x|^2` as a scalar.
fn norm_ii(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(TOL);
    for _ in 0..trials {
        let x = s.element(AlgebraKind::TypeII);
        let err = attempt(|| {
            let n = x.norm_sq()?;
            Ok(rel_err(&x.mul(&x.conj()?)?.coeffs(), &[n, 0.0, 0.0]))
        });
        t.record_result(err, || Witness::new().with("x", x.coeffs()));
    }
    t
}

/// `span{1, v}` is the double numbers for `v1 != 0` and the dual numbers
/// for `v1 = 0`; never the complex numbers.
fn subalgebra(s: &mut Sampler, trials: usize) -> Tally {
    let mut t = Tally::property(0.0);
    for i in 0..trials {
        let dual = i % 2 == 1;
        let v1 = if dual { 0.0 } else { s.sign() * s.uniform(0.1, 3.0) };
        let v2 = if dual { s.sign() * s.uniform(0.1, 3.0) } else { s.coeff() };
        let v = Element::ii(s.coeff(), v1, v2);
        let want = if dual { SubalgebraClass::Dual } else { SubalgebraClass::Double };
        let err = v.classify_subalgebra().map(|c| if c == want { 0.0 } else { 1.0 });
        t.record_result(err, || Witness::new().with("v", v.coeffs()).with("expected", format!("{want:?}")));
    }
    t
}

const PRODUCTS: &str = "type I: (x0y0, x0y1+x1y0, x0y2+x1y1+x2y0); type II: (x0y0+x1y1, x0y1+x1y0, x2(y0-y1)+(x0+x1)y2); type III: (x0y0, x0y1+x1y0, x0y2+x2y0)";

pub(super) const SUITES: &[Suite] = &[
    Suite {
        name: "algebra.associativity",
        checks: &[
            Check { id: "algebra.associativity/I", paper_ref: PRODUCTS, run: assoc_i },
            Check { id: "algebra.associativity/II", paper_ref: PRODUCTS, run: assoc_ii },
            Check { id: "algebra.associativity/III", paper_ref: PRODUCTS, run: assoc_iii },
        ],
    },
    Suite {
        name: "algebra.unitality",
        checks: &[
            Check { id: "algebra.unitality/I", paper_ref: "1 x = x 1 = x", run: unit_i },
            Check { id: "algebra.unitality/II", paper_ref: "1 x = x 1 = x", run: unit_ii },
            Check { id: "algebra.unitality/III", paper_ref: "1 x = x 1 = x", run: unit_iii },
        ],
    },
    Suite {
        name: "algebra.table_product",
        checks: &[
            Check { id: "algebra.table_product/I", paper_ref: PRODUCTS, run: table_i },
            Check { id: "algebra.table_product/II", paper_ref: PRODUCTS, run: table_ii },
            Check { id: "algebra.table_product/III", paper_ref: PRODUCTS, run: table_iii },
        ],
    },
    Suite {
        name: "algebra.conjugation",
        checks: &[
            Check {
                id: "algebra.conjugation/I_fails",
                paper_ref: "(x0,-x1,-x2) is not an anti-automorphism of type I",
                run: conjugation_fails_i,
            },
            Check { id: "algebra.conjugation/II", paper_ref: "conj(x y) = conj(y) conj(x)", run: conj_ii },
            Check { id: "algebra.conjugation/III", paper_ref: "conj(x y) = conj(y) conj(x)", run: conj_iii },
        ],
    },
    Suite {
        name: "algebra.inverse",
        checks: &[
            Check { id: "algebra.inverse/I", paper_ref: "x x^-1 = x^-1 x = 1", run: inv_i },
            Check {
                id: "algebra.inverse/II",
                paper_ref: "x^-1 = (x0, -x1, -x2)/(x0^2 - x1^2), |x0^2 - x1^2| >= 1e-6",
                run: inv_ii,
            },
            Check { id: "algebra.inverse/III", paper_ref: "x x^-1 = x^-1 x = 1", run: inv_iii },
        ],
    },
    Suite {
        name: "algebra.norm",
        checks: &[Check { id: "algebra.norm/II", paper_ref: "x xbar = (x, x) = x0^2 - x1^2", run: norm_ii }],
    },
    Suite {
        name: "algebra.subalgebra",
        checks: &[Check {
            id: "algebra.subalgebra/II",
            paper_ref: "span{1, v}: double numbers if v1 != 0, dual numbers if v1 = 0",
            run: subalgebra,
        }],
    },
];

//! Randomized verification suites.
//!
//! A suite is a named list of checks. Each check draws its samples from its
//! own ChaCha8 stream: the generator is seeded with the run seed and the
//! stream number is the 64-bit FNV-1a hash of the check id, so adding or
//! reordering checks never shifts another check's samples.
//!
//! Errors are measured as `max |got - want| / max(1, max |want|)` unless a
//! check says otherwise. Property checks fail on any sample above their
//! tolerance; control checks pass only if some sample violates the
//! property they probe.
//!
//! Sampling margins: `|c0^2 - c1^2| >= 1e-6` for group elements,
//! `|x -+ 1| >= 1e-3` on the conformal plane, `|lambda| >= 0.1` in adapted
//! coordinates.

mod adapted;
mod algebra;
mod conformal;
mod cross;
mod fibration;
mod geodesic;
mod projective;
mod rotation;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semifib_core::{AlgebraKind, Element};

use crate::error::Error;
use crate::report::{CheckRecord, Status, SuiteReport, Witness};

pub(crate) type Outcome = (u64, f64, Witness);

/// One named property or control.
pub(crate) struct Check {
    pub id: &'static str,
    pub paper_ref: &'static str,
    pub run: fn(&mut Sampler, usize) -> Tally,
}

pub(crate) struct Suite {
    pub name: &'static str,
    pub checks: &'static [Check],
}

const SUITES: &[&[Suite]] = &[
    algebra::SUITES,
    fibration::SUITES,
    rotation::SUITES,
    adapted::SUITES,
    conformal::SUITES,
    projective::SUITES,
    geodesic::SUITES,
    cross::SUITES,
];

fn all_suites() -> impl Iterator<Item = &'static Suite> {
    SUITES.iter().flat_map(|group| group.iter())
}

/// Names of all suites, sorted.
pub fn suite_names() -> Vec<&'static str> {
    let mut names: Vec<_> = all_suites().map(|s| s.name).collect();
    names.sort_unstable();
    names
}

/// 64-bit FNV-1a.
pub fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Runs every check of suite `name` with `trials` random samples each.
/// Grid-based checks use their fixed grids and ignore `trials`.
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<SuiteReport, Error> {
    let suite = all_suites().find(|s| s.name == name).ok_or_else(|| Error::UnknownSuite(name.to_owned()))?;
    let mut records = Vec::with_capacity(suite.checks.len());
    let mut failures = 0;
    let mut max_abs_err = 0.0f64;
    for check in suite.checks {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(fnv1a(check.id));
        let mut sampler = Sampler { rng };
        let (fails, err, witness) = (check.run)(&mut sampler, trials).finish();
        failures += fails;
        max_abs_err = max_abs_err.max(err);
        let status = if fails == 0 { Status::Pass } else { Status::Fail };
        records.push(CheckRecord { id: check.id.to_owned(), paper_ref: check.paper_ref.to_owned(), status, witness });
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(SuiteReport { suite: name.to_owned(), seed, trials, failures, max_abs_err, checks: records })
}

/// Random inputs for the checks.
pub(crate) struct Sampler {
    rng: ChaCha8Rng,
}

/// Half-width of the default coefficient box.
pub(crate) const BOX: f64 = 3.0;

impl Sampler {
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn coeff(&mut self) -> f64 {
        self.uniform(-BOX, BOX)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    pub fn sign(&mut self) -> f64 {
        if self.coin() {
            1.0
        } else {
            -1.0
        }
    }

    pub fn element(&mut self, kind: AlgebraKind) -> Element {
        let c = [self.coeff(), self.coeff(), self.coeff()];
        Element::from_coeffs(kind, c).expect("box samples are finite")
    }

    /// Type II element with `|c0^2 - c1^2| >= 1e-6`.
    pub fn group_element(&mut self) -> Element {
        loop {
            let x = self.element(AlgebraKind::TypeII);
            if (x.c0() * x.c0() - x.c1() * x.c1()).abs() >= 1e-6 {
                return x;
            }
        }
    }

    /// Element invertible in its algebra, `|c0| >= 1e-3` for types I, III.
    pub fn invertible(&mut self, kind: AlgebraKind) -> Element {
        match kind {
            AlgebraKind::TypeII => self.group_element(),
            _ => loop {
                let x = self.element(kind);
                if x.c0().abs() >= 1e-3 {
                    return x;
                }
            },
        }
    }

    /// `rho (cosh psi + sinh psi e1)` with `|rho| in [0.1, 3]`.
    pub fn h1_element(&mut self) -> Element {
        let rho = self.sign() * self.uniform(0.1, BOX);
        let psi = self.uniform(-2.0, 2.0);
        Element::ii(rho * psi.cosh(), rho * psi.sinh(), 0.0)
    }

    /// `b0 + b2 e2` with `|b0| in [0.1, 3]`.
    pub fn h2_element(&mut self) -> Element {
        let b0 = self.sign() * self.uniform(0.1, BOX);
        Element::ii(b0, 0.0, self.coeff())
    }

    /// Element of modulus `+1` (`positive`) or `-1`.
    pub fn unit(&mut self, positive: bool) -> Element {
        let s = self.sign();
        let phi = self.uniform(-2.0, 2.0);
        let c2 = self.coeff();
        if positive {
            Element::ii(s * phi.cosh(), s * phi.sinh(), c2)
        } else {
            Element::ii(s * phi.sinh(), s * phi.cosh(), c2)
        }
    }

    /// Plane abscissa with `|x -+ 1| >= 1e-3`.
    pub fn plane_x(&mut self) -> f64 {
        loop {
            let x = self.uniform(-4.0, 4.0);
            if (x - 1.0).abs() >= 1e-3 && (x + 1.0).abs() >= 1e-3 {
                return x;
            }
        }
    }
}

/// Gives `?` a concrete error type inside sample closures.
pub(crate) fn attempt(f: impl FnOnce() -> semifib_core::Result<f64>) -> semifib_core::Result<f64> {
    f()
}

/// Scale-aware distance between coefficient vectors.
pub(crate) fn rel_err(got: &[f64], want: &[f64]) -> f64 {
    let scale = want.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let diff = got.iter().zip(want).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    if diff.is_nan() {
        f64::INFINITY
    } else {
        diff / scale
    }
}

pub(crate) fn el_err(got: &Element, want: &Element) -> f64 {
    rel_err(&got.coeffs(), &want.coeffs())
}

enum Mode {
    Property,
    Control { violations: u64 },
}

/// Accumulates the samples of one check.
pub(crate) struct Tally {
    tol: f64,
    mode: Mode,
    samples: u64,
    failures: u64,
    max_err: f64,
    worst: Option<Witness>,
    first_failure: Option<Witness>,
}

impl Tally {
    /// Every sample must have error `<= tol`.
    pub fn property(tol: f64) -> Self {
        Tally { tol, mode: Mode::Property, samples: 0, failures: 0, max_err: 0.0, worst: None, first_failure: None }
    }

    /// At least one sample must have error `> tol`.
    pub fn control(tol: f64) -> Self {
        Tally { mode: Mode::Control { violations: 0 }, ..Tally::property(tol) }
    }

    pub fn record(&mut self, err: f64, witness: impl FnOnce() -> Witness) {
        self.samples += 1;
        let bad = err.is_nan() || err > self.tol;
        match &mut self.mode {
            Mode::Property => {
                if bad {
                    self.failures += 1;
                }
                if self.first_failure.is_none() && (bad || err > self.max_err || self.worst.is_none()) {
                    let w = witness().with("err", err);
                    if bad {
                        self.first_failure = Some(w);
                    } else {
                        self.worst = Some(w);
                    }
                }
                if err.is_finite() {
                    self.max_err = self.max_err.max(err);
                } else {
                    self.max_err = f64::INFINITY;
                }
            }
            Mode::Control { violations } => {
                if bad {
                    *violations += 1;
                    if self.first_failure.is_none() {
                        self.first_failure = Some(witness().with("err", err));
                    }
                }
            }
        }
    }

    /// A sample whose computation failed; counts as a violation.
    pub fn error(&mut self, e: &semifib_core::Error, witness: impl FnOnce() -> Witness) {
        let msg = e.to_string();
        self.record(f64::INFINITY, || witness().with("error", msg));
    }

    /// Records `err` from `result`, or the error.
    pub fn record_result(&mut self, result: semifib_core::Result<f64>, witness: impl FnOnce() -> Witness) {
        match result {
            Ok(err) => self.record(err, witness),
            Err(e) => self.error(&e, witness),
        }
    }

    pub fn finish(self) -> Outcome {
        match self.mode {
            Mode::Property => {
                let w = self.first_failure.or(self.worst).unwrap_or_default();
                let max_err = if self.samples == 0 { f64::INFINITY } else { self.max_err };
                let failures = if self.samples == 0 { 1 } else { self.failures };
                (failures, max_err, w.with("samples", self.samples))
            }
            Mode::Control { violations } => {
                let failures = u64::from(violations == 0);
                let w =
                    self.first_failure.unwrap_or_default().with("samples", self.samples).with("violations", violations);
                (failures, 0.0, w)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_ids_are_unique_and_prefixed() {
        let mut ids = Vec::new();
        for suite in all_suites() {
            assert!(!suite.checks.is_empty(), "{}", suite.name);
            for check in suite.checks {
                assert!(check.id.starts_with(suite.name), "{}", check.id);
                ids.push(check.id);
            }
        }
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
        let names = suite_names();
        let mut dedup = names.clone();
        dedup.dedup();
        assert_eq!(names, dedup);
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a("a"), 0xaf63_dc4c_8601_ec8c);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("bogus.suite", 1, 10), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn tally_modes() {
        let mut t = Tally::property(1e-9);
        t.record(1e-12, Witness::new);
        t.record(1e-3, || Witness::new().with("x", 1.0));
        let (f, e, w) = t.finish();
        assert_eq!((f, e), (1, 1e-3));
        assert_eq!(w.get("x"), Some(&serde_json::json!(1.0)));

        let mut c = Tally::control(1e-9);
        c.record(0.0, Witness::new);
        assert_eq!(c.finish().0, 1);
        let mut c = Tally::control(1e-9);
        c.record(0.5, Witness::new);
        assert_eq!(c.finish().0, 0);
    }
}

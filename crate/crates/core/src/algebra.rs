//! Elements of the three 3-dimensional unital associative algebras.
//!
//! Every algebra has the basis `{1, e1, e2}`; the kinds differ only in the
//! products of `e1` and `e2`:
//!
//! | kind | `e1 e1` | `e1 e2` | `e2 e1` | `e2 e2` |
//! |------|---------|---------|---------|---------|
//! | I    | `e2`    | `0`     | `0`     | `0`     |
//! | II   | `1`     | `e2`    | `-e2`   | `0`     |
//! | III  | `0`     | `0`     | `0`     | `0`     |
//!
//! Type II is the non-commutative one. Its conjugation
//! `x0 + x1 e1 + x2 e2 -> x0 - x1 e1 - x2 e2` reverses products and the form
//! `(x, y) = (x ybar + y xbar) / 2` is real-valued with
//! `(x, y) = x0 y0 - x1 y1`, a scalar product of rank 2.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::fmt::Write as _;

use crate::error::{Error, Result};

/// Relative tolerance below which `c0^2 - c1^2` (or `c0^2`) counts as zero.
pub const INVERTIBILITY_TOL: f64 = 1e-12;

/// Absolute residual allowed when testing `v^2` for membership in `span{1, v}`.
pub const CLOSURE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    TypeI,
    TypeII,
    TypeIII,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 3] = [AlgebraKind::TypeI, AlgebraKind::TypeII, AlgebraKind::TypeIII];

    /// Roman numeral used in table files and on the command line.
    pub fn numeral(self) -> &'static str {
        match self {
            AlgebraKind::TypeI => "I",
            AlgebraKind::TypeII => "II",
            AlgebraKind::TypeIII => "III",
        }
    }

    pub fn from_numeral(s: &str) -> Option<Self> {
        match s {
            "I" | "i" | "1" => Some(AlgebraKind::TypeI),
            "II" | "ii" | "2" => Some(AlgebraKind::TypeII),
            "III" | "iii" | "3" => Some(AlgebraKind::TypeIII),
            _ => None,
        }
    }

    /// Whether the conjugation is an anti-automorphism of this algebra.
    pub fn has_conjugation(self) -> bool {
        !matches!(self, AlgebraKind::TypeI)
    }

    /// The bundled multiplication table of this kind.
    pub fn table(self) -> MulTable {
        MulTable::parse(self.table_text()).expect("bundled table is valid")
    }

    /// Text of the bundled table file.
    pub fn table_text(self) -> &'static str {
        match self {
            AlgebraKind::TypeI => include_str!("../tables/typeI.tbl"),
            AlgebraKind::TypeII => include_str!("../tables/typeII.tbl"),
            AlgebraKind::TypeIII => include_str!("../tables/typeIII.tbl"),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.numeral())
    }
}

/// `c0 + c1 e1 + c2 e2` in the algebra of the given kind.
///
/// Coefficients are always finite; constructors and operations reject
/// anything else with [`Error::NonFinite`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Element {
    kind: AlgebraKind,
    c: [f64; 3],
}

/// Isomorphism class of a 2-dimensional unital subalgebra `span{1, v}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubalgebraClass {
    /// `j^2 = 1` (split-complex numbers).
    Double,
    /// `j^2 = 0`.
    Dual,
    /// `j^2 = -1`.
    Complex,
}

fn check_finite(c: [f64; 3]) -> Result<[f64; 3]> {
    if c.iter().all(|v| v.is_finite()) {
        Ok(c)
    } else {
        Err(Error::NonFinite)
    }
}

impl Element {
    pub fn new(kind: AlgebraKind, c0: f64, c1: f64, c2: f64) -> Result<Self> {
        Self::from_coeffs(kind, [c0, c1, c2])
    }

    pub fn from_coeffs(kind: AlgebraKind, c: [f64; 3]) -> Result<Self> {
        Ok(Element { kind, c: check_finite(c)? })
    }

    /// Type II literal.
    ///
    /// # Panics
    ///
    /// If a coefficient is not finite.
    pub fn ii(c0: f64, c1: f64, c2: f64) -> Self {
        Self::new(AlgebraKind::TypeII, c0, c1, c2).expect("finite coefficients")
    }

    pub fn unit(kind: AlgebraKind) -> Self {
        Element { kind, c: [1.0, 0.0, 0.0] }
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        Element { kind, c: [0.0; 3] }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn coeffs(&self) -> [f64; 3] {
        self.c
    }

    pub fn c0(&self) -> f64 {
        self.c[0]
    }

    pub fn c1(&self) -> f64 {
        self.c[1]
    }

    pub fn c2(&self) -> f64 {
        self.c[2]
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Euclidean length of the coefficient vector (not the algebra norm).
    pub fn coeff_len_sq(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum()
    }

    fn same_kind(&self, other: &Element) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::KindMismatch { left: self.kind, right: other.kind })
        }
    }

    pub fn add(&self, rhs: &Element) -> Result<Element> {
        self.same_kind(rhs)?;
        let c = [self.c[0] + rhs.c[0], self.c[1] + rhs.c[1], self.c[2] + rhs.c[2]];
        Element::from_coeffs(self.kind, c)
    }

    pub fn sub(&self, rhs: &Element) -> Result<Element> {
        self.same_kind(rhs)?;
        let c = [self.c[0] - rhs.c[0], self.c[1] - rhs.c[1], self.c[2] - rhs.c[2]];
        Element::from_coeffs(self.kind, c)
    }

    pub fn scale(&self, s: f64) -> Result<Element> {
        Element::from_coeffs(self.kind, [self.c[0] * s, self.c[1] * s, self.c[2] * s])
    }

    pub fn neg(&self) -> Element {
        Element { kind: self.kind, c: [-self.c[0], -self.c[1], -self.c[2]] }
    }

    /// Product `self * rhs` through the closed form of the kind.
    pub fn mul(&self, rhs: &Element) -> Result<Element> {
        self.same_kind(rhs)?;
        Element::from_coeffs(self.kind, closed_form_mul(self.kind, self.c, rhs.c))
    }

    /// Product through the bilinear extension of the bundled table.
    pub fn mul_by_table(&self, rhs: &Element, table: &MulTable) -> Result<Element> {
        self.same_kind(rhs)?;
        Element::from_coeffs(self.kind, table.mul(self.c, rhs.c))
    }

    /// `c0 - c1 e1 - c2 e2`; only defined for kinds II and III.
    pub fn conj(&self) -> Result<Element> {
        if !self.kind.has_conjugation() {
            return Err(Error::UnsupportedKind { op: "conjugation", kind: self.kind });
        }
        Ok(self.conj_coeffs())
    }

    /// Coefficient sign flip without the kind restriction; used to exhibit
    /// the failure of the anti-automorphism law in type I.
    pub fn conj_coeffs(&self) -> Element {
        Element { kind: self.kind, c: [self.c[0], -self.c[1], -self.c[2]] }
    }

    /// `(x, y) = scalar part of (x ybar + y xbar) / 2`.
    ///
    /// The `e1` and `e2` parts of that sum vanish identically in kinds II and
    /// III; a residual above `1e-9` relative to the operand size is reported
    /// as [`Error::Inconsistent`].
    pub fn bilinear(&self, other: &Element) -> Result<f64> {
        self.same_kind(other)?;
        let s = self.mul(&other.conj()?)?.add(&other.mul(&self.conj()?)?)?.scale(0.5)?;
        let scale = 1.0f64.max(libm::sqrt(self.coeff_len_sq() * other.coeff_len_sq()));
        let residual = s.c[1].abs().max(s.c[2].abs());
        if residual > 1e-9 * scale {
            return Err(Error::Inconsistent { what: "bilinear form", residual });
        }
        Ok(s.c[0])
    }

    /// `(x, x)`: `c0^2 - c1^2` in type II, `c0^2` in type III.
    pub fn norm_sq(&self) -> Result<f64> {
        self.bilinear(self)
    }

    /// Closed form of `(x, x)` without the product round trip.
    pub(crate) fn norm_sq_fast(&self) -> f64 {
        match self.kind {
            AlgebraKind::TypeII => self.c[0] * self.c[0] - self.c[1] * self.c[1],
            _ => self.c[0] * self.c[0],
        }
    }

    /// Type II: `c0^2 != c1^2`. Types I and III: `c0 != 0` (left
    /// multiplication is triangular with diagonal `c0`).
    pub fn is_invertible(&self) -> bool {
        let scale = 1.0f64.max(self.coeff_len_sq());
        let det = match self.kind {
            AlgebraKind::TypeII => self.c[0] * self.c[0] - self.c[1] * self.c[1],
            AlgebraKind::TypeI | AlgebraKind::TypeIII => self.c[0] * self.c[0],
        };
        det.abs() >= INVERTIBILITY_TOL * scale
    }

    /// Two-sided inverse. Type II uses `xbar / (c0^2 - c1^2)`; the other
    /// kinds solve the left-multiplication system `x y = 1`.
    pub fn inverse(&self) -> Result<Element> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        match self.kind {
            AlgebraKind::TypeII => {
                let d = self.c[0] * self.c[0] - self.c[1] * self.c[1];
                Element::from_coeffs(self.kind, [self.c[0] / d, -self.c[1] / d, -self.c[2] / d])
            }
            kind => {
                let m = self.kind.table().left_matrix(self.c);
                let y = solve3(m, [1.0, 0.0, 0.0]).ok_or(Error::NotInvertible)?;
                Element::from_coeffs(kind, y)
            }
        }
    }

    /// Connected component of `G` (type II only), encoded by the signs of
    /// `c0 + c1` and `c0 - c1`:
    ///
    /// | index | `c0 + c1` | `c0 - c1` |
    /// |-------|-----------|-----------|
    /// | 0     | +         | +         |
    /// | 1     | +         | -         |
    /// | 2     | -         | +         |
    /// | 3     | -         | -         |
    ///
    /// Both signs are multiplicative, so `index(xy) = index(x) ^ index(y)`.
    pub fn component_index(&self) -> Result<u8> {
        if self.kind != AlgebraKind::TypeII {
            return Err(Error::UnsupportedKind { op: "component index", kind: self.kind });
        }
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let plus = self.c[0] + self.c[1];
        let minus = self.c[0] - self.c[1];
        Ok((u8::from(plus < 0.0) << 1) | u8::from(minus < 0.0))
    }

    /// Isomorphism type of the subalgebra `span{1, v}` of the type II algebra.
    ///
    /// Writes `v^2 = alpha + beta v` and classifies by the sign of
    /// `beta^2 + 4 alpha`.
    pub fn classify_subalgebra(&self) -> Result<SubalgebraClass> {
        if self.kind != AlgebraKind::TypeII {
            return Err(Error::UnsupportedKind { op: "subalgebra classification", kind: self.kind });
        }
        let [v0, v1, v2] = self.c;
        let pure_sq = v1 * v1 + v2 * v2;
        let tol = 1e-12 * 1.0f64.max(self.coeff_len_sq());
        if pure_sq <= tol * tol {
            return Err(Error::Precondition("v is a scalar multiple of 1"));
        }
        let sq = self.mul(self)?.c;
        let beta = (sq[1] * v1 + sq[2] * v2) / pure_sq;
        let alpha = sq[0] - beta * v0;
        let residual = (sq[1] - beta * v1).abs().max((sq[2] - beta * v2).abs());
        if residual > CLOSURE_TOL {
            return Err(Error::NotClosed { residual });
        }
        let disc = beta * beta + 4.0 * alpha;
        let scale = 1.0f64.max(beta * beta).max((4.0 * alpha).abs());
        Ok(if disc.abs() <= 1e-9 * scale {
            SubalgebraClass::Dual
        } else if disc > 0.0 {
            SubalgebraClass::Double
        } else {
            SubalgebraClass::Complex
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

/// Hard-coded product kernels, one per kind.
pub fn closed_form_mul(kind: AlgebraKind, x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    let [x0, x1, x2] = x;
    let [y0, y1, y2] = y;
    match kind {
        AlgebraKind::TypeI => [x0 * y0, x0 * y1 + x1 * y0, x0 * y2 + x1 * y1 + x2 * y0],
        AlgebraKind::TypeII => [x0 * y0 + x1 * y1, x0 * y1 + x1 * y0, x2 * (y0 - y1) + (x0 + x1) * y2],
        AlgebraKind::TypeIII => [x0 * y0, x0 * y1 + x1 * y0, x0 * y2 + x2 * y0],
    }
}

/// Solves `m y = b` by Gaussian elimination with partial pivoting.
pub(crate) fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col] == 0.0 {
            return None;
        }
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut y = [0.0; 3];
    for row in (0..3).rev() {
        let mut s = b[row];
        for k in row + 1..3 {
            s -= m[row][k] * y[k];
        }
        y[row] = s / m[row][row];
    }
    Some(y)
}

/// Structure constants `e_i e_j = sum_k t[i][j][k] e_k` with `e0 = 1`.
///
/// Text form, one entry per line (blank lines and `#` comments ignored):
///
/// ```text
/// e1*e2 = 0 +0 e1 +1 e2
/// ```
///
/// The parser rejects missing or duplicate entries, tables whose `e0` row
/// or column is not the identity, and tables that are not associative on
/// basis triples.
#[derive(Clone, Debug, PartialEq)]
pub struct MulTable {
    entries: [[[f64; 3]; 3]; 3],
}

impl MulTable {
    /// Builds a table from structure constants, enforcing unitality and
    /// associativity.
    pub fn new(entries: [[[f64; 3]; 3]; 3]) -> Result<Self> {
        let table = MulTable { entries };
        if !table.is_unital() {
            return Err(Error::Table { line: 0, msg: String::from("table is not unital in e0") });
        }
        let defect = table.associativity_defect();
        if defect > 1e-12 {
            return Err(Error::Table { line: 0, msg: format!("table is not associative (defect {defect:e})") });
        }
        Ok(table)
    }

    pub fn entry(&self, i: usize, j: usize) -> [f64; 3] {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[[[f64; 3]; 3]; 3] {
        &self.entries
    }

    pub fn mul(&self, x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let w = xi * yj;
                if w == 0.0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.entries[i][j][k];
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y` acting on coefficient columns.
    pub fn left_matrix(&self, x: [f64; 3]) -> [[f64; 3]; 3] {
        let mut m = [[0.0; 3]; 3];
        for col in 0..3 {
            let mut basis = [0.0; 3];
            basis[col] = 1.0;
            let image = self.mul(x, basis);
            for row in 0..3 {
                m[row][col] = image[row];
            }
        }
        m
    }

    pub fn is_unital(&self) -> bool {
        (0..3).all(|i| {
            let mut basis = [0.0; 3];
            basis[i] = 1.0;
            self.entries[0][i] == basis && self.entries[i][0] == basis
        })
    }

    /// Largest coefficient of `(e_i e_j) e_k - e_i (e_j e_k)` over all basis triples.
    pub fn associativity_defect(&self) -> f64 {
        let basis = |i: usize| {
            let mut b = [0.0; 3];
            b[i] = 1.0;
            b
        };
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let left = self.mul(self.mul(basis(i), basis(j)), basis(k));
                    let right = self.mul(basis(i), self.mul(basis(j), basis(k)));
                    for (l, r) in left.iter().zip(right.iter()) {
                        worst = worst.max((l - r).abs());
                    }
                }
            }
        }
        worst
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = [[[0.0; 3]; 3]; 3];
        let mut seen = [[false; 3]; 3];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Table { line: line_no, msg };
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(String::from("expected `ei*ej = ...`")))?;
            let (a, b) = lhs.split_once('*').ok_or_else(|| err(String::from("expected `ei*ej` on the left")))?;
            let i = parse_basis(a.trim()).ok_or_else(|| err(format!("unknown unit `{}`", a.trim())))?;
            let j = parse_basis(b.trim()).ok_or_else(|| err(format!("unknown unit `{}`", b.trim())))?;
            if seen[i][j] {
                return Err(err(format!("duplicate entry e{i}*e{j}")));
            }
            seen[i][j] = true;
            entries[i][j] = parse_combination(rhs).map_err(err)?;
        }
        for (i, row) in seen.iter().enumerate() {
            for (j, present) in row.iter().enumerate() {
                if !present {
                    return Err(Error::Table { line: 0, msg: format!("missing entry e{i}*e{j}") });
                }
            }
        }
        MulTable::new(entries)
    }

    /// Canonical text form, accepted by [`MulTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..3 {
            for j in 0..3 {
                let [a, b, c] = self.entries[i][j];
                let _ = writeln!(out, "e{i}*e{j} = {a} {b:+} e1 {c:+} e2");
            }
        }
        out
    }
}

fn parse_basis(s: &str) -> Option<usize> {
    match s {
        "1" | "e0" => Some(0),
        "e1" => Some(1),
        "e2" => Some(2),
        _ => None,
    }
}

/// Parses `a +b e1 +c e2` (terms in any order, each unit at most once,
/// absent terms are zero).
fn parse_combination(s: &str) -> core::result::Result<[f64; 3], String> {
    let mut out = [0.0; 3];
    let mut seen = [false; 3];
    let mut tokens = s.split_whitespace().peekable();
    let mut any = false;
    while let Some(tok) = tokens.next() {
        let value: f64 = tok.parse().map_err(|_| format!("expected a real literal, found `{tok}`"))?;
        if !value.is_finite() {
            return Err(format!("non-finite literal `{tok}`"));
        }
        let unit = match tokens.peek().and_then(|t| parse_basis(t)) {
            Some(u) if u > 0 => {
                tokens.next();
                u
            }
            _ => 0,
        };
        if seen[unit] {
            return Err(format!("component e{unit} given twice"));
        }
        seen[unit] = true;
        out[unit] = value;
        any = true;
    }
    if !any {
        return Err(String::from("empty right-hand side"));
    }
    Ok(out)
}

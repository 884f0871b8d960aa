//! The order-12 group of signed 6×6 permutation matrices.
//!
//! Three imaginary units `b`, `d`, `f` (each squaring to `−I`) generate the
//! group. The two real elements are their products `c = −b·f` and
//! `e = −b·d`, and `a` is the identity. Every element is one of `±{a..f}`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numerics::{Matrix, RealMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Label {
    pub const ALL: [Label; 6] = [Label::A, Label::B, Label::C, Label::D, Label::E, Label::F];

    /// The imaginary generators.
    pub const IMAGINARY: [Label; 3] = [Label::B, Label::D, Label::F];

    pub fn symbol(self) -> char {
        match self {
            Label::A => 'a',
            Label::B => 'b',
            Label::C => 'c',
            Label::D => 'd',
            Label::E => 'e',
            Label::F => 'f',
        }
    }

    pub fn from_symbol(ch: char) -> Option<Label> {
        Label::ALL.into_iter().find(|l| l.symbol() == ch)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// One of the twelve group elements `±a .. ±f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedElement {
    pub sign: Sign,
    pub label: Label,
}

impl SignedElement {
    pub const IDENTITY: SignedElement = SignedElement::plus(Label::A);

    pub const fn plus(label: Label) -> Self {
        Self {
            sign: Sign::Plus,
            label,
        }
    }

    pub const fn minus(label: Label) -> Self {
        Self {
            sign: Sign::Minus,
            label,
        }
    }

    pub fn matrix(self) -> Mat6 {
        let m = basis_matrix(self.label);
        match self.sign {
            Sign::Plus => m,
            Sign::Minus => -m,
        }
    }

    /// Token with an explicit sign, e.g. `+a` or `-c`.
    pub fn signed_token(self) -> String {
        match self.sign {
            Sign::Plus => format!("+{}", self.label),
            Sign::Minus => format!("-{}", self.label),
        }
    }

    pub fn all() -> impl Iterator<Item = SignedElement> {
        [Sign::Plus, Sign::Minus].into_iter().flat_map(|s| {
            Label::ALL
                .into_iter()
                .map(move |label| SignedElement { sign: s, label })
        })
    }
}

/// Table form: `a`, `-b`, …
impl fmt::Display for SignedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.label),
            Sign::Minus => write!(f, "-{}", self.label),
        }
    }
}

impl FromStr for SignedElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, rest) = match s.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut chars = rest.chars();
        match (chars.next().and_then(Label::from_symbol), chars.next()) {
            (Some(label), None) => Ok(SignedElement { sign, label }),
            _ => Err(Error::InvalidArgument(format!(
                "not a group element: {s:?}"
            ))),
        }
    }
}

impl Neg for SignedElement {
    type Output = SignedElement;
    fn neg(self) -> SignedElement {
        SignedElement {
            sign: -self.sign,
            label: self.label,
        }
    }
}

impl Mul for SignedElement {
    type Output = SignedElement;
    fn mul(self, rhs: SignedElement) -> SignedElement {
        multiply(self, rhs)
    }
}

/// Exact 6×6 integer matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat6(pub [[i32; 6]; 6]);

impl Mat6 {
    pub const ZERO: Mat6 = Mat6([[0; 6]; 6]);

    pub fn identity() -> Self {
        let mut m = [[0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        Mat6(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[j][i];
            }
        }
        Mat6(m)
    }

    pub fn scale(&self, k: i32) -> Self {
        Mat6(self.0.map(|row| row.map(|v| v * k)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Mat6::identity(), |acc, _| acc * *self)
    }

    /// Exactly one nonzero entry per row and column, each `±1`.
    pub fn is_signed_permutation(&self) -> bool {
        let rows_ok = self
            .0
            .iter()
            .all(|r| r.iter().filter(|&&v| v != 0).count() == 1 && r.iter().all(|v| v.abs() <= 1));
        let cols_ok = (0..6).all(|j| (0..6).filter(|&i| self.0[i][j] != 0).count() == 1);
        rows_ok && cols_ok
    }

    pub fn to_matrix(&self) -> RealMatrix {
        Matrix::from_fn(6, |i, j| f64::from(self.0[i][j]))
    }
}

impl Mul for Mat6 {
    type Output = Mat6;
    fn mul(self, rhs: Mat6) -> Mat6 {
        let mut m = [[0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..6).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat6(m)
    }
}

impl Add for Mat6 {
    type Output = Mat6;
    fn add(self, rhs: Mat6) -> Mat6 {
        let mut m = self.0;
        for (row, r) in m.iter_mut().zip(rhs.0) {
            for (v, x) in row.iter_mut().zip(r) {
                *v += x;
            }
        }
        Mat6(m)
    }
}

impl Sub for Mat6 {
    type Output = Mat6;
    fn sub(self, rhs: Mat6) -> Mat6 {
        self + (-rhs)
    }
}

impl Neg for Mat6 {
    type Output = Mat6;
    fn neg(self) -> Mat6 {
        self.scale(-1)
    }
}

const B: Mat6 = Mat6([
    [0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 0],
]);

const D: Mat6 = Mat6([
    [0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
]);

const F: Mat6 = Mat6([
    [0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 1, 0],
]);

fn basis() -> &'static [Mat6; 6] {
    static BASIS: OnceLock<[Mat6; 6]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let c = -(B * F);
        let e = -(B * D);
        [Mat6::identity(), B, c, D, e, F]
    })
}

/// Canonical matrix of a label. `c` and `e` are products of the imaginary
/// generators rather than transcribed constants.
pub fn basis_matrix(label: Label) -> Mat6 {
    basis()[label.index()]
}

pub fn identify(m: &Mat6) -> Result<SignedElement> {
    SignedElement::all()
        .find(|el| el.matrix() == *m)
        .ok_or(Error::NotAGroupElement)
}

pub fn multiply(x: SignedElement, y: SignedElement) -> SignedElement {
    identify(&(x.matrix() * y.matrix())).expect("group is closed under multiplication")
}

pub type CayleyTable = [[SignedElement; 6]; 6];

/// Row `r`, column `s` holds `r·s`.
pub fn cayley_table() -> CayleyTable {
    Label::ALL.map(|r| Label::ALL.map(|s| multiply(SignedElement::plus(r), SignedElement::plus(s))))
}

const fn p(l: Label) -> SignedElement {
    SignedElement::plus(l)
}
const fn m(l: Label) -> SignedElement {
    SignedElement::minus(l)
}

/// The published Cayley table (rows are left factors).
pub const REFERENCE_CAYLEY_TABLE: CayleyTable = {
    use Label::*;
    [
        [p(A), p(B), p(C), p(D), p(E), p(F)],
        [p(B), m(A), p(F), m(E), p(D), m(C)],
        [p(C), p(D), p(E), p(F), p(A), p(B)],
        [p(D), m(C), p(B), m(A), p(F), m(E)],
        [p(E), p(F), p(A), p(B), p(C), p(D)],
        [p(F), m(E), p(D), m(C), p(B), m(A)],
    ]
};

/// Cells where the computed table differs from [`REFERENCE_CAYLEY_TABLE`].
pub fn cayley_mismatches() -> Vec<(Label, Label, SignedElement, SignedElement)> {
    let table = cayley_table();
    let mut out = Vec::new();
    for (i, r) in Label::ALL.into_iter().enumerate() {
        for (j, s) in Label::ALL.into_iter().enumerate() {
            if table[i][j] != REFERENCE_CAYLEY_TABLE[i][j] {
                out.push((r, s, table[i][j], REFERENCE_CAYLEY_TABLE[i][j]));
            }
        }
    }
    out
}

pub fn format_cayley_text(table: &CayleyTable) -> String {
    let mut out = String::from("   ");
    for l in Label::ALL {
        out.push_str(&format!("{:>4}", l.to_string()));
    }
    out.push('\n');
    for (l, row) in Label::ALL.iter().zip(table) {
        out.push_str(&format!("{:>3}", l.to_string()));
        for el in row {
            out.push_str(&format!("{:>4}", el.to_string()));
        }
        out.push('\n');
    }
    out
}

/// A claimed identity between two products of signed elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: &'static str,
    pub lhs: Vec<SignedElement>,
    pub rhs: Vec<SignedElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub text: &'static str,
    pub lhs: SignedElement,
    pub rhs: SignedElement,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for RelationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            write!(f, "{}: CONFIRMED", self.text)
        } else {
            write!(
                f,
                "{}: CONTRADICTED (actual {})",
                self.text,
                self.lhs.signed_token()
            )
        }
    }
}

/// The relations claimed for the generators, as printed.
pub fn claimed_relations() -> Vec<Relation> {
    use Label::*;
    let rel = |text, lhs: &[SignedElement], rhs: &[SignedElement]| Relation {
        text,
        lhs: lhs.to_vec(),
        rhs: rhs.to_vec(),
    };
    vec![
        rel("b^2 = -1", &[p(B), p(B)], &[m(A)]),
        rel("d^2 = -1", &[p(D), p(D)], &[m(A)]),
        rel("f^2 = -1", &[p(F), p(F)], &[m(A)]),
        rel("bd = -e", &[p(B), p(D)], &[m(E)]),
        rel("df = -e", &[p(D), p(F)], &[m(E)]),
        rel("fb = -e", &[p(F), p(B)], &[m(E)]),
        rel("bf = -c", &[p(B), p(F)], &[m(C)]),
        rel("fd = -c", &[p(F), p(D)], &[m(C)]),
        rel("db = -c", &[p(D), p(B)], &[m(C)]),
        rel("bf = fd", &[p(B), p(F)], &[p(F), p(D)]),
        rel("df = fb", &[p(D), p(F)], &[p(F), p(B)]),
        rel("bd = df", &[p(B), p(D)], &[p(D), p(F)]),
        rel("e^3 = -1", &[p(E), p(E), p(E)], &[m(A)]),
        rel("c^3 = -1", &[p(C), p(C), p(C)], &[m(A)]),
        rel("ce = 1", &[p(C), p(E)], &[p(A)]),
        rel("(-c)(-e) = 1", &[m(C), m(E)], &[p(A)]),
    ]
}

fn product(word: &[SignedElement]) -> SignedElement {
    let m = word
        .iter()
        .fold(Mat6::identity(), |acc, el| acc * el.matrix());
    identify(&m).expect("group is closed under multiplication")
}

/// Evaluates every claimed relation against the matrix representation.
pub fn relation_audit() -> Vec<RelationCheck> {
    claimed_relations()
        .into_iter()
        .map(|r| RelationCheck {
            text: r.text,
            lhs: product(&r.lhs),
            rhs: product(&r.rhs),
        })
        .collect()
}

/// Closure of `{b, d, f}` under matrix multiplication.
pub fn enumerate_group() -> BTreeSet<SignedElement> {
    let gens: Vec<Mat6> = Label::IMAGINARY.iter().map(|&l| basis_matrix(l)).collect();
    let mut seen: HashSet<Mat6> = gens.iter().copied().collect();
    let mut queue: VecDeque<Mat6> = gens.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x * *g;
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.iter()
        .map(|m| identify(m).expect("closure stays inside the signed basis"))
        .collect()
}

pub fn parse_word(word: &str) -> Result<Vec<Label>> {
    word.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            Label::from_symbol(c)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown label {c:?}")))
        })
        .collect()
}

/// Left-to-right product of the labels' matrices.
pub fn reduce_word(word: &[Label]) -> SignedElement {
    let w: Vec<SignedElement> = word.iter().map(|&l| SignedElement::plus(l)).collect();
    product(&w)
}

/// Positional layout of signed labels in the 6×6 block pattern; `None` marks a
/// zeroed cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayoutTable(pub [[Option<SignedElement>; 6]; 6]);

impl LayoutTable {
    /// Full layout with all six labels.
    pub fn adjoint() -> Self {
        use Label::*;
        let rows = [
            [p(A), m(B), p(C), m(F), p(E), m(D)],
            [p(B), p(A), p(F), p(C), p(D), p(E)],
            [p(E), m(F), p(A), m(D), p(C), m(B)],
            [p(F), p(E), p(D), p(A), p(B), p(C)],
            [p(C), m(D), p(E), m(B), p(A), m(F)],
            [p(D), p(C), p(B), p(E), p(F), p(A)],
        ];
        LayoutTable(rows.map(|r| r.map(Some)))
    }

    /// Same layout with the given labels zeroed.
    pub fn without(&self, labels: &[Label]) -> Self {
        LayoutTable(
            self.0
                .map(|r| r.map(|cell| cell.filter(|el| !labels.contains(&el.label)))),
        )
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<SignedElement> {
        self.0[i][j]
    }
}

/// `e^scale · R(angle)` with `R` the planar rotation.
pub fn rot2_reference(scale: f64, angle: f64) -> RealMatrix {
    let k = scale.exp();
    Matrix::from_rows(&[
        [k * angle.cos(), -k * angle.sin()],
        [k * angle.sin(), k * angle.cos()],
    ])
    .expect("2x2")
}

/// Hyperbolic rotation (boost) `[[cosh, sinh], [sinh, cosh]]`.
pub fn rot2_hyperbolic(angle: f64) -> RealMatrix {
    Matrix::from_rows(&[[angle.cosh(), angle.sinh()], [angle.sinh(), angle.cosh()]]).expect("2x2")
}

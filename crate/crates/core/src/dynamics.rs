//! Rotation action on six-vectors and the iterated dynamics.
//!
//! States are row vectors ordered `(X_r, X_i, Y_r, Y_i, Z_r, Z_i)` and are
//! rotated by right multiplication, `v' = v·G`. With this convention a
//! quarter turn about `∠X` sends `X_r` to `+X_i`; the column action `G·v`
//! flips that sign and is only exposed through [`Action::Column`] for
//! comparison.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::{self, BufRead, Write};

use num_complex::Complex64;

use crate::closed_form::group_matrix;
use crate::error::{Error, Result};
use crate::generators::{generator, generator_ce, Angles, ScaleParams};
use crate::group::{basis_matrix, Label, Mat6};
use crate::numerics::{expm, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Xr,
    Xi,
    Yr,
    Yi,
    Zr,
    Zi,
}

impl Slot {
    pub const ALL: [Slot; 6] = [Slot::Xr, Slot::Xi, Slot::Yr, Slot::Yi, Slot::Zr, Slot::Zi];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Slot {
        Slot::ALL[i]
    }

    pub fn axis(self) -> Axis {
        Axis::ALL[self.index() / 2]
    }

    pub fn is_real_part(self) -> bool {
        self.index().is_multiple_of(2)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = if self.is_real_part() { 'r' } else { 'i' };
        write!(f, "{}_{}", self.axis(), part)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn real_slot(self) -> Slot {
        Slot::from_index(2 * self as usize)
    }

    /// Angles with `theta` on this axis and zero elsewhere.
    pub fn angles(self, theta: f64) -> Angles {
        match self {
            Axis::X => Angles::new(theta, 0.0, 0.0),
            Axis::Y => Angles::new(0.0, theta, 0.0),
            Axis::Z => Angles::new(0.0, 0.0, theta),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::X => "X",
            Axis::Y => "Y",
            Axis::Z => "Z",
        };
        f.write_str(s)
    }
}

/// A coordinate slot with a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedSlot {
    pub slot: Slot,
    pub negative: bool,
}

impl SignedSlot {
    pub fn pos(slot: Slot) -> Self {
        Self {
            slot,
            negative: false,
        }
    }

    pub fn neg(slot: Slot) -> Self {
        Self {
            slot,
            negative: true,
        }
    }

    /// Reads a vector that is `±1` in one slot and (numerically) zero
    /// elsewhere.
    pub fn from_vector(v: &[f64; 6], tol: f64) -> Option<Self> {
        let (idx, &val) = v
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))?;
        let others_zero = v
            .iter()
            .enumerate()
            .all(|(i, x)| i == idx || x.abs() <= tol);
        if (val.abs() - 1.0).abs() <= tol && others_zero {
            Some(Self {
                slot: Slot::from_index(idx),
                negative: val < 0.0,
            })
        } else {
            None
        }
    }
}

impl fmt::Display for SignedSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-{}", self.slot)
        } else {
            write!(f, "{}", self.slot)
        }
    }
}

/// Six-component state `(X_r, X_i, Y_r, Y_i, Z_r, Z_i)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SixVector<T = f64>(pub [T; 6]);

impl<T: Scalar> SixVector<T> {
    pub fn basis(slot: Slot) -> Self {
        let mut v = [T::zero(); 6];
        v[slot.index()] = T::one();
        SixVector(v)
    }

    /// Euclidean (Hermitian) norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x.abs().powi(2)).sum::<f64>().sqrt()
    }

    pub fn to_complex(&self) -> [Complex64; 6] {
        self.0.map(Scalar::to_complex)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Action {
    /// `v' = v·G`
    #[default]
    Row,
    /// `v' = G·v`
    Column,
}

pub fn rotate<T: Scalar>(v: &SixVector<T>, g: &Matrix<T>) -> SixVector<T> {
    rotate_with(v, g, Action::Row)
}

pub fn rotate_with<T: Scalar>(v: &SixVector<T>, g: &Matrix<T>, action: Action) -> SixVector<T> {
    let out = match action {
        Action::Row => g.left_mul_vec(&v.0),
        Action::Column => g.mul_vec(&v.0),
    };
    SixVector(out.try_into().expect("6x6 group matrix"))
}

/// For each start slot `X_r, Y_r, Z_r`, the four signed slots visited by
/// repeated quarter turns about one axis.
pub type Progression = [[SignedSlot; 4]; 3];

pub fn quarter_turn_progression(axis: Axis) -> Result<Progression> {
    let g = group_matrix(&axis.angles(FRAC_PI_2));
    let mut table = [[SignedSlot::pos(Slot::Xr); 4]; 3];
    for (row, start) in table.iter_mut().zip(Axis::ALL) {
        let mut v = SixVector::<f64>::basis(start.real_slot());
        for cell in row.iter_mut() {
            v = rotate(&v, &g);
            *cell = SignedSlot::from_vector(&v.0, 1e-12).ok_or_else(|| {
                Error::InvalidArgument(format!("quarter turn about {axis} left the signed basis"))
            })?;
        }
    }
    Ok(table)
}

/// Oriented plane used for the discrete orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    MinusC,
    MinusE,
}

impl Plane {
    pub fn matrix(self) -> Mat6 {
        match self {
            Plane::MinusC => -basis_matrix(Label::C),
            Plane::MinusE => -basis_matrix(Label::E),
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Plane::MinusC => "-c",
            Plane::MinusE => "-e",
        })
    }
}

/// Where each coordinate slot lands, with its sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxisMap(pub [SignedSlot; 6]);

impl AxisMap {
    /// Row-vector action of a signed permutation: slot `i` goes to the
    /// nonzero column of row `i`.
    pub fn from_signed_permutation(m: &Mat6) -> Result<Self> {
        if !m.is_signed_permutation() {
            return Err(Error::NotAGroupElement);
        }
        Ok(AxisMap(std::array::from_fn(|i| {
            let j = (0..6)
                .find(|&j| m.0[i][j] != 0)
                .expect("one nonzero per row");
            SignedSlot {
                slot: Slot::from_index(j),
                negative: m.0[i][j] < 0,
            }
        })))
    }

    pub fn image(&self, slot: Slot) -> SignedSlot {
        self.0[slot.index()]
    }

    pub fn is_identity(&self) -> bool {
        Slot::ALL
            .iter()
            .all(|&s| self.image(s) == SignedSlot::pos(s))
    }

    pub fn is_negation(&self) -> bool {
        Slot::ALL
            .iter()
            .all(|&s| self.image(s) == SignedSlot::neg(s))
    }

    /// Destination of a whole axis pair, when both slots move together
    /// with the same sign onto one axis, keeping real and imaginary parts.
    pub fn axis_image(&self, axis: Axis) -> Option<(Axis, bool)> {
        let re = self.image(axis.real_slot());
        let im = self.image(Slot::from_index(axis.real_slot().index() + 1));
        let same_axis = re.slot.axis() == im.slot.axis();
        let parts_kept = re.slot.is_real_part() && !im.slot.is_real_part();
        (same_axis && parts_kept && re.negative == im.negative)
            .then_some((re.slot.axis(), re.negative))
    }
}

impl fmt::Display for AxisMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Slot::ALL
            .iter()
            .map(|&s| format!("{s} -> {}", self.image(s)))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Signed slot maps after 1..=6 successive right multiplications by the
/// plane's matrix.
pub fn plane_orbit(plane: Plane) -> Vec<AxisMap> {
    let m = plane.matrix();
    (1..=6)
        .map(|k| AxisMap::from_signed_permutation(&m.pow(k)).expect("group element"))
        .collect()
}

/// The group element used for a run: the closed form for real angles
/// without scaling, otherwise the exponential of the generator.
pub fn run_matrix<T: Scalar>(angles: &Angles<T>, scales: &ScaleParams) -> Result<Matrix<T>> {
    if !scales.is_zero() {
        expm(&generator_ce(angles, scales))
    } else if angles.is_real() {
        Ok(group_matrix(angles))
    } else {
        expm(&generator(angles))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T = f64> {
    pub angles: Angles<T>,
    pub scales: ScaleParams,
    /// `states[k]` is the state after `k` rotations.
    pub states: Vec<SixVector<T>>,
}

pub const CSV_HEADER: &str =
    "step,c1_re,c1_im,c2_re,c2_im,c3_re,c3_im,c4_re,c4_im,c5_re,c5_im,c6_re,c6_im";

/// 17 significant digits, enough to round-trip every `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl<T: Scalar> Trajectory<T> {
    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for (k, state) in self.states.iter().enumerate() {
            write!(w, "{k}")?;
            for z in state.to_complex() {
                write!(w, ",{},{}", format_f64(z.re), format_f64(z.im))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Parses trajectory CSV back into `(step, state)` rows.
pub fn read_trajectory_csv<R: BufRead>(r: R) -> Result<Vec<(usize, [Complex64; 6])>> {
    let bad = |msg: String| Error::InvalidArgument(msg);
    let mut lines = r.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(bad("missing trajectory CSV header".into())),
    }
    let mut out = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line.map_err(|e| bad(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 13 {
            return Err(bad(format!("line {}: expected 13 fields", n + 2)));
        }
        let step = fields[0]
            .parse::<usize>()
            .map_err(|e| bad(format!("line {}: {e}", n + 2)))?;
        let mut vals = [0.0; 12];
        for (v, f) in vals.iter_mut().zip(&fields[1..]) {
            *v = f.parse().map_err(|e| bad(format!("line {}: {e}", n + 2)))?;
        }
        let state = std::array::from_fn(|i| Complex64::new(vals[2 * i], vals[2 * i + 1]));
        out.push((step, state));
    }
    Ok(out)
}

/// Iterates `v ← v·G` (or `G·v`) `steps` times with a fixed `G`.
pub fn trajectory_with<T: Scalar>(
    angles: Angles<T>,
    scales: ScaleParams,
    steps: usize,
    v0: SixVector<T>,
    action: Action,
) -> Result<Trajectory<T>> {
    if !angles.is_finite() || !scales.c.is_finite() || !scales.e.is_finite() {
        return Err(Error::NonFinite);
    }
    let g = run_matrix(&angles, &scales)?;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(v0);
    let mut v = v0;
    for _ in 0..steps {
        v = rotate_with(&v, &g, action);
        states.push(v);
    }
    Ok(Trajectory {
        angles,
        scales,
        states,
    })
}

pub fn trajectory<T: Scalar>(
    angles: Angles<T>,
    scales: ScaleParams,
    steps: usize,
    v0: SixVector<T>,
) -> Result<Trajectory<T>> {
    trajectory_with(angles, scales, steps, v0, Action::Row)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureDim {
    One,
    Three,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrand {
    /// `e^{i(x+y+z)}` (or `e^{ix}` in one dimension)
    Phase,
    /// the constant 1, a control
    Unit,
}

pub const MIN_QUADRATURE_NODES: usize = 8;

/// Composite trapezoid rule over `[0, 2π]^dim` with `n` nodes per axis. The
/// integrands are periodic, so the rule reduces to `h Σ f(kh)`.
pub fn trapezoid_periodic(dim: QuadratureDim, n: usize, integrand: Integrand) -> Result<Complex64> {
    if n < MIN_QUADRATURE_NODES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_QUADRATURE_NODES} nodes, got {n}"
        )));
    }
    let h = 2.0 * PI / n as f64;
    let f = |phase: f64| match integrand {
        Integrand::Phase => Complex64::from_polar(1.0, phase),
        Integrand::Unit => Complex64::new(1.0, 0.0),
    };
    let total = match dim {
        QuadratureDim::One => (0..n).map(|k| f(k as f64 * h)).sum::<Complex64>() * h,
        QuadratureDim::Three => {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        acc += f((i + j + k) as f64 * h);
                    }
                }
            }
            acc * h.powi(3)
        }
    };
    Ok(total)
}

/// `∮ e^{ix} dx` or `∭ e^{i(x+y+z)}` over a full period; expected ≈ 0.
pub fn quadrature_check(dim: QuadratureDim, n: usize) -> Result<Complex64> {
    trapezoid_periodic(dim, n, Integrand::Phase)
}

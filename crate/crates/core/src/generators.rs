//! Lie-algebra generators, commutators and the Lie axioms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{basis_matrix, Label, Mat6};
use crate::numerics::{Matrix, RealMatrix, Scalar};

/// Rotation angles `(x, y, z)` in radians. Complex angles are allowed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angles<T = f64> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Angles<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// True when no component has an imaginary part.
    pub fn is_real(&self) -> bool {
        self.x.im() == 0.0 && self.y.im() == 0.0 && self.z.im() == 0.0
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Angles<U> {
        Angles::new(f(self.x), f(self.y), f(self.z))
    }
}

/// Real scaling factors placed in the `c` and `e` slots of the generator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ScaleParams {
    pub c: f64,
    pub e: f64,
}

impl ScaleParams {
    pub const ZERO: ScaleParams = ScaleParams { c: 0.0, e: 0.0 };

    pub fn new(c: f64, e: f64) -> Self {
        Self { c, e }
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0.0 && self.e == 0.0
    }
}

/// The generator `g(x, y, z)`.
///
/// Row 1 is `[0, x, 0, z, 0, y]`; odd rows carry the angles with a plus sign
/// and even rows are their negated mirror, so the matrix is skew-symmetric for
/// real angles.
pub fn generator<T: Scalar>(angles: &Angles<T>) -> Matrix<T> {
    let (x, y, z) = (angles.x, angles.y, angles.z);
    let o = T::zero();
    Matrix::from_rows(&[
        [o, x, o, z, o, y],
        [-x, o, -z, o, -y, o],
        [o, z, o, y, o, x],
        [-z, o, -y, o, -x, o],
        [o, y, o, x, o, z],
        [-y, o, -x, o, -z, o],
    ])
    .expect("6x6")
}

/// The generator with the `c` and `e` slots filled by scale factors.
pub fn generator_ce<T: Scalar>(angles: &Angles<T>, scales: &ScaleParams) -> Matrix<T> {
    let (x, y, z) = (angles.x, angles.y, angles.z);
    let (c, e) = (T::from_real(scales.c), T::from_real(scales.e));
    let o = T::zero();
    Matrix::from_rows(&[
        [o, x, c, z, e, y],
        [-x, o, -z, c, -y, e],
        [e, z, o, y, c, x],
        [-z, e, -y, o, -x, c],
        [c, y, e, x, o, z],
        [-y, c, -x, e, -z, o],
    ])
    .expect("6x6")
}

/// `[M, N] = MN − NM`.
pub fn commutator<T: Scalar>(m: &Matrix<T>, n: &Matrix<T>) -> Result<Matrix<T>> {
    m.checked_mul(n)?.checked_sub(&n.checked_mul(m)?)
}

/// Exact integer commutator.
pub fn commutator_exact(m: Mat6, n: Mat6) -> Mat6 {
    m * n - n * m
}

/// `[left, right] = Σ coeff·label`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorIdentity {
    pub left: Label,
    pub right: Label,
    pub expected: Vec<(i32, Label)>,
}

impl CommutatorIdentity {
    pub fn expected_matrix(&self) -> Mat6 {
        self.expected
            .iter()
            .fold(Mat6::ZERO, |acc, &(k, l)| acc + basis_matrix(l).scale(k))
    }

    pub fn text(&self) -> String {
        let rhs = if self.expected.is_empty() {
            "0".to_string()
        } else {
            let mut s = String::new();
            for (i, &(k, l)) in self.expected.iter().enumerate() {
                match (i, k) {
                    (0, 1) => s.push_str(&l.to_string()),
                    (0, -1) => s.push_str(&format!("-{l}")),
                    (_, 1) => s.push_str(&format!(" + {l}")),
                    (_, -1) => s.push_str(&format!(" - {l}")),
                    (_, k) => s.push_str(&format!(" + {k}{l}")),
                }
            }
            s
        };
        format!("[{}, {}] = {}", self.left, self.right, rhs)
    }
}

/// The twenty published commutator identities among the non-identity
/// elements.
pub fn commutator_identities() -> Vec<CommutatorIdentity> {
    use Label::*;
    let id = |left, right, expected: &[(i32, Label)]| CommutatorIdentity {
        left,
        right,
        expected: expected.to_vec(),
    };
    vec![
        id(B, D, &[(1, C), (-1, E)]),
        id(D, B, &[(1, E), (-1, C)]),
        id(D, F, &[(1, C), (-1, E)]),
        id(F, D, &[(1, E), (-1, C)]),
        id(F, B, &[(1, C), (-1, E)]),
        id(B, F, &[(1, E), (-1, C)]),
        id(B, C, &[(1, F), (-1, D)]),
        id(C, B, &[(1, D), (-1, F)]),
        id(D, C, &[(1, B), (-1, F)]),
        id(C, D, &[(1, F), (-1, B)]),
        id(F, C, &[(1, D), (-1, B)]),
        id(C, F, &[(1, B), (-1, D)]),
        id(B, E, &[(1, D), (-1, F)]),
        id(E, B, &[(1, F), (-1, D)]),
        id(D, E, &[(1, F), (-1, B)]),
        id(E, D, &[(1, B), (-1, F)]),
        id(F, E, &[(1, B), (-1, D)]),
        id(E, F, &[(1, D), (-1, B)]),
        id(C, E, &[]),
        id(E, C, &[]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorCheck {
    pub identity: CommutatorIdentity,
    pub holds: bool,
}

pub fn verify_commutator_table() -> Vec<CommutatorCheck> {
    commutator_identities()
        .into_iter()
        .map(|identity| {
            let actual =
                commutator_exact(basis_matrix(identity.left), basis_matrix(identity.right));
            let holds = actual == identity.expected_matrix();
            CommutatorCheck { identity, holds }
        })
        .collect()
}

/// True when `[X, Y] = −[Y, X]` for every pair of labels.
pub fn commutators_antisymmetric() -> bool {
    Label::ALL.iter().all(|&x| {
        Label::ALL.iter().all(|&y| {
            let (mx, my) = (basis_matrix(x), basis_matrix(y));
            commutator_exact(mx, my) == -commutator_exact(my, mx)
        })
    })
}

/// Jacobi sum `[X,[Y,Z]] + [Z,[X,Y]] + [Y,[Z,X]]` in exact arithmetic.
pub fn jacobi_exact(x: Mat6, y: Mat6, z: Mat6) -> Mat6 {
    commutator_exact(x, commutator_exact(y, z))
        + commutator_exact(z, commutator_exact(x, y))
        + commutator_exact(y, commutator_exact(z, x))
}

fn jacobi<T: Scalar>(x: &Matrix<T>, y: &Matrix<T>, z: &Matrix<T>) -> Matrix<T> {
    let c = |a: &Matrix<T>, b: &Matrix<T>| commutator(a, b).expect("same dimension");
    &(&c(x, &c(y, z)) + &c(z, &c(x, y))) + &c(y, &c(z, x))
}

/// Maximum residuals of the Lie axioms over random real combinations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieAxiomReport {
    pub samples: usize,
    pub bilinearity: f64,
    pub anticommutativity: f64,
    pub jacobi: f64,
    /// `‖gᵀ + g‖∞` of the generator at random real angles.
    pub skewness: f64,
    /// Jacobi identity holds exactly for every triple of basis matrices.
    pub basis_jacobi_exact: bool,
}

fn random_combination(rng: &mut ChaCha8Rng) -> RealMatrix {
    let labels = [Label::B, Label::D, Label::F, Label::C, Label::E];
    labels.iter().fold(RealMatrix::zeros(6), |acc, &l| {
        let k: f64 = rng.gen_range(-1.0..1.0);
        &acc + &basis_matrix(l).to_matrix().scale(k)
    })
}

/// Checks bilinearity, anticommutativity and the Jacobi identity on random
/// real linear combinations of `{b, d, f, c, e}`.
pub fn lie_axiom_check(samples: usize, seed: u64) -> Result<LieAxiomReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LieAxiomReport {
        samples,
        bilinearity: 0.0,
        anticommutativity: 0.0,
        jacobi: 0.0,
        skewness: 0.0,
        basis_jacobi_exact: true,
    };
    let comm = |a: &RealMatrix, b: &RealMatrix| commutator(a, b).expect("same dimension");

    for _ in 0..samples {
        let x = random_combination(&mut rng);
        let y = random_combination(&mut rng);
        let z = random_combination(&mut rng);
        let alpha: f64 = rng.gen_range(-3.0..3.0);
        let beta: f64 = rng.gen_range(-3.0..3.0);

        let ax_by = &x.scale(alpha) + &y.scale(beta);
        let left = &comm(&ax_by, &z) - &(&comm(&x, &z).scale(alpha) + &comm(&y, &z).scale(beta));
        let right = &comm(&z, &ax_by) - &(&comm(&z, &x).scale(alpha) + &comm(&z, &y).scale(beta));
        report.bilinearity = report.bilinearity.max(left.max_abs()).max(right.max_abs());

        let anti = &comm(&x, &y) + &comm(&y, &x);
        report.anticommutativity = report.anticommutativity.max(anti.max_abs());

        report.jacobi = report.jacobi.max(jacobi(&x, &y, &z).max_abs());

        let angles = Angles::new(
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
        );
        let g = generator(&angles);
        report.skewness = report.skewness.max((&g.transpose() + &g).norm_inf());
    }

    for x in Label::ALL {
        for y in Label::ALL {
            for z in Label::ALL {
                let j = jacobi_exact(basis_matrix(x), basis_matrix(y), basis_matrix(z));
                report.basis_jacobi_exact &= j == Mat6::ZERO;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::LayoutTable;
    use num_complex::Complex64;

    /// Builds the scaled generator from the positional layout: imaginary
    /// labels map to negated angles, `c`/`e` to the scales, `a` to zero.
    fn generator_from_layout(angles: &Angles, scales: &ScaleParams) -> RealMatrix {
        let layout = LayoutTable::adjoint();
        Matrix::from_fn(6, |i, j| {
            let el = layout.cell(i, j).unwrap();
            let s = -f64::from(el.sign.value());
            match el.label {
                Label::A => 0.0,
                Label::B => s * angles.x,
                Label::D => s * angles.y,
                Label::F => s * angles.z,
                Label::C => -s * scales.c,
                Label::E => -s * scales.e,
            }
        })
    }

    #[test]
    fn zero_angles_give_zero_generator() {
        assert_eq!(generator(&Angles::<f64>::zero()), RealMatrix::zeros(6));
        assert_eq!(
            generator_ce(&Angles::<f64>::zero(), &ScaleParams::ZERO),
            RealMatrix::zeros(6)
        );
    }

    #[test]
    fn unit_x_generator_layout() {
        let g = generator(&Angles::new(1.0, 0.0, 0.0));
        for (i, j) in [(0, 1), (2, 5), (4, 3)] {
            assert_eq!(g[(i, j)], 1.0);
        }
        for (i, j) in [(1, 0), (3, 4), (5, 2)] {
            assert_eq!(g[(i, j)], -1.0);
        }
        assert_eq!(g.entries().iter().filter(|&&v| v != 0.0).count(), 6);
    }

    #[test]
    fn unit_generators_are_transposed_imaginary_units() {
        let cases = [
            (Angles::new(1.0, 0.0, 0.0), Label::B),
            (Angles::new(0.0, 1.0, 0.0), Label::D),
            (Angles::new(0.0, 0.0, 1.0), Label::F),
        ];
        for (a, l) in cases {
            assert_eq!(
                generator(&a),
                basis_matrix(l).transpose().to_matrix(),
                "{l}"
            );
        }
    }

    #[test]
    fn scaled_generator_reduces_and_follows_layout() {
        let a = Angles::new(0.3, -1.2, 2.5);
        assert_eq!(generator_ce(&a, &ScaleParams::ZERO), generator(&a));
        let s = ScaleParams::new(0.7, -0.4);
        assert_eq!(generator_ce(&a, &s), generator_from_layout(&a, &s));
        assert_eq!(generator_ce(&a, &s).trace(), 0.0);
    }

    #[test]
    fn scaled_generator_skew_iff_e_is_minus_c() {
        let a = Angles::new(0.3, -1.2, 2.5);
        let skew = |s: ScaleParams| {
            let g = generator_ce(&a, &s);
            (&g.transpose() + &g).max_abs() == 0.0
        };
        assert!(skew(ScaleParams::new(0.25, -0.25)));
        assert!(!skew(ScaleParams::new(0.25, 0.25)));
        assert!(!skew(ScaleParams::new(0.25, 0.0)));
    }

    #[test]
    fn complex_angles_give_complex_generator() {
        let a = Angles::new(
            Complex64::new(0.1, 0.2),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        );
        let g = generator(&a);
        assert_eq!(g[(0, 1)], a.x);
        assert_eq!(g[(5, 0)], -a.y);
        assert!(!g.is_real());
        assert!((0..6).all(|i| g[(i, i)] == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn commutator_examples() {
        let b = basis_matrix(Label::B);
        let c = basis_matrix(Label::C);
        let d = basis_matrix(Label::D);
        let e = basis_matrix(Label::E);
        assert_eq!(commutator_exact(b, d), c - e);
        assert_eq!(commutator_exact(c, e), Mat6::ZERO);
        assert_eq!(commutator_exact(b, b), Mat6::ZERO);
        let bm = b.to_matrix();
        assert_eq!(commutator(&bm, &bm).unwrap(), RealMatrix::zeros(6));
        assert!(commutator(&bm, &RealMatrix::identity(3)).is_err());
    }

    #[test]
    fn all_published_commutators_hold() {
        let checks = verify_commutator_table();
        assert_eq!(checks.len(), 20);
        for c in &checks {
            assert!(c.holds, "{}", c.identity.text());
        }
        assert!(commutators_antisymmetric());
        assert_eq!(checks[0].identity.text(), "[b, d] = c - e");
        assert_eq!(checks[18].identity.text(), "[c, e] = 0");
    }

    #[test]
    fn jacobi_exact_on_imaginary_units() {
        let [b, d, f] = Label::IMAGINARY.map(basis_matrix);
        assert_eq!(jacobi_exact(b, d, f), Mat6::ZERO);
    }

    #[test]
    fn bilinearity_with_fixed_coefficients() {
        let x = basis_matrix(Label::B).to_matrix();
        let y = basis_matrix(Label::D).to_matrix();
        let z =
            &basis_matrix(Label::F).to_matrix() + &basis_matrix(Label::C).to_matrix().scale(0.5);
        let lhs = commutator(&(&x.scale(2.0) + &y.scale(3.0)), &z).unwrap();
        let rhs = &commutator(&x, &z).unwrap().scale(2.0) + &commutator(&y, &z).unwrap().scale(3.0);
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn lie_axioms_hold_on_random_combinations() {
        let r = lie_axiom_check(100, 7).unwrap();
        assert!(r.basis_jacobi_exact);
        assert!(r.bilinearity <= 1e-12, "{r:?}");
        assert_eq!(r.anticommutativity, 0.0);
        assert!(r.jacobi <= 1e-12, "{r:?}");
        assert_eq!(r.skewness, 0.0);
        assert_eq!(lie_axiom_check(100, 7).unwrap(), r);
        assert!(lie_axiom_check(0, 7).is_err());
    }

    #[test]
    fn generator_is_linear() {
        let a1 = Angles::new(0.5, -1.0, 2.0);
        let a2 = Angles::new(-0.25, 0.75, 1.5);
        let alpha = 3.0;
        let combined = Angles::new(
            alpha * a1.x + a2.x,
            alpha * a1.y + a2.y,
            alpha * a1.z + a2.z,
        );
        let lhs = generator(&combined);
        let rhs = &generator(&a1).scale(alpha) + &generator(&a2);
        assert_eq!(lhs, rhs);
    }
}

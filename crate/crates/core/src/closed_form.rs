//! Closed forms of the exponentiated generators.
//!
//! With `γ = x + y + z` and the quadratic-form radius
//! `r² = x² + y² + z² − xy − yz − zx`, every entry of `exp(g(x, y, z))` is one
//! of four trigonometric combinations of `r` and `γ`. The coefficients
//! `p_k = ∂r/∂k` multiply `sin r`; they are `0/0` on the line `x = y = z`,
//! where `p_k·sin r` is evaluated as `numerator_k · sinc r` instead.

use num_complex::Complex64;

use crate::error::Result;
use crate::generators::{generator_ce, Angles, ScaleParams};
use crate::numerics::{det, expm, ComplexMatrix, Matrix, RealMatrix, Scalar};

/// Below this `|r|` the `p` coefficients are treated as degenerate.
pub const DEGENERATE_RADIUS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalArgs<T = f64> {
    pub r: T,
    pub gamma: T,
    /// `(x − y/2 − z/2, −x/2 + y − z/2, −x/2 − y/2 + z)`; always finite.
    pub numerators: [T; 3],
    /// `(∂r/∂x, ∂r/∂y, ∂r/∂z)`; `None` when `|r| < DEGENERATE_RADIUS`.
    pub partials: Option<[T; 3]>,
}

impl<T: Scalar> SphericalArgs<T> {
    pub fn is_degenerate(&self) -> bool {
        self.partials.is_none()
    }

    /// The other square-root branch: `r → −r`, which also flips every
    /// partial.
    pub fn with_negated_root(&self) -> Self {
        Self {
            r: -self.r,
            gamma: self.gamma,
            numerators: self.numerators,
            partials: self.partials.map(|p| p.map(|v| -v)),
        }
    }

    /// `p_k · sin r` for `k ∈ {0, 1, 2}` (x, y, z).
    pub fn p_sin_r(&self, k: usize) -> T {
        match self.partials {
            Some(p) => p[k] * self.r.sin(),
            None => self.numerators[k] * sinc(self.r),
        }
    }
}

/// `sin(r)/r`, with a Taylor series near zero.
pub fn sinc<T: Scalar>(r: T) -> T {
    if r.abs() < DEGENERATE_RADIUS {
        let r2 = r * r;
        let c = T::from_real;
        T::one() - r2 / c(6.0) + r2 * r2 / c(120.0) - r2 * r2 * r2 / c(5040.0)
    } else {
        r.sin() / r
    }
}

pub fn spherical_args<T: Scalar>(angles: &Angles<T>) -> SphericalArgs<T> {
    let (x, y, z) = (angles.x, angles.y, angles.z);
    let half = T::from_real(0.5);
    // same quadratic form as x²+y²+z²−xy−yz−zx, without the cancellation
    let r2 = ((x - y) * (x - y) + (y - z) * (y - z) + (z - x) * (z - x)) * half;
    let r = r2.sqrt();
    let numerators = [x - (y + z) * half, y - (x + z) * half, z - (x + y) * half];
    let partials = if r.abs() < DEGENERATE_RADIUS {
        None
    } else {
        Some(numerators.map(|n| n / r))
    };
    SphericalArgs {
        r,
        gamma: x + y + z,
        numerators,
        partials,
    }
}

/// `exp(g(x, y, z))` in closed form.
pub fn group_matrix<T: Scalar>(angles: &Angles<T>) -> Matrix<T> {
    group_matrix_from_args(&spherical_args(angles))
}

pub fn group_matrix_from_args<T: Scalar>(args: &SphericalArgs<T>) -> Matrix<T> {
    let c = T::from_real;
    let third = c(1.0 / 3.0);
    let (cr, cg, sg) = (args.r.cos(), args.gamma.cos(), args.gamma.sin());
    let c2 = (c(2.0) * cr + cg) * third;
    let cm = (cg - cr) * third;
    let s = |k: usize| (c(2.0) * args.p_sin_r(k) + sg) * third;
    let (sx, sy, sz) = (s(0), s(1), s(2));
    Matrix::from_rows(&[
        [c2, sx, cm, sz, cm, sy],
        [-sx, c2, -sz, cm, -sy, cm],
        [cm, sz, c2, sy, cm, sx],
        [-sz, cm, -sy, c2, -sx, cm],
        [cm, sy, cm, sx, c2, sz],
        [-sy, cm, -sx, cm, -sz, c2],
    ])
    .expect("6x6")
}

/// Largest deviation of the row and column sums from `cos γ` (cosine slots)
/// and `sin γ` (sine slots, sign-corrected by row or column parity).
pub fn row_sum_identity<T: Scalar>(angles: &Angles<T>) -> f64 {
    let g = group_matrix(angles);
    let gamma = spherical_args(angles).gamma;
    let (cg, sg) = (gamma.cos(), gamma.sin());
    let mut worst: f64 = 0.0;
    for line in 0..6 {
        for by_row in [true, false] {
            let mut cos_sum = T::zero();
            let mut sin_sum = T::zero();
            for k in 0..6 {
                let (i, j) = if by_row { (line, k) } else { (k, line) };
                if (i + j) % 2 == 0 {
                    cos_sum = cos_sum + g[(i, j)];
                } else {
                    sin_sum = sin_sum + g[(i, j)];
                }
            }
            // sine entries are positive in even (0-based) rows, so a column
            // collects positive entries when its own index is odd
            let positive = if by_row { line % 2 == 0 } else { line % 2 == 1 };
            let signed = if positive { sin_sum } else { -sin_sum };
            worst = worst.max((cos_sum - cg).abs()).max((signed - sg).abs());
        }
    }
    worst
}

/// Claimed eigenvalues `{e^{−ir}, e^{−ir}, e^{ir}, e^{ir}, e^{−iγ}, e^{iγ}}`.
pub fn claimed_spectrum<T: Scalar>(angles: &Angles<T>) -> [Complex64; 6] {
    let args = spherical_args(angles);
    let i = Complex64::i();
    let (r, g) = (args.r.to_complex(), args.gamma.to_complex());
    [
        (-i * r).exp(),
        (-i * r).exp(),
        (i * r).exp(),
        (i * r).exp(),
        (-i * g).exp(),
        (i * g).exp(),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumReport {
    /// `|det(G − λI)|` for each claimed eigenvalue.
    pub eigen_residuals: [f64; 6],
    /// `|Σλ − trace G|`
    pub trace_residual: f64,
    /// `|Πλ − det G|`
    pub det_residual: f64,
}

impl SpectrumReport {
    pub fn max_eigen_residual(&self) -> f64 {
        self.eigen_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Checks the claimed spectrum through determinant residuals and the
/// trace/determinant identities, without an eigensolver.
pub fn verify_spectrum<T: Scalar>(angles: &Angles<T>) -> SpectrumReport {
    let g = group_matrix(angles).to_complex();
    let lambdas = claimed_spectrum(angles);
    let ident = ComplexMatrix::identity(6);
    let eigen_residuals = lambdas.map(|l| det(&(&g - &ident.scale(l))).norm());
    let sum: Complex64 = lambdas.iter().sum();
    let prod: Complex64 = lambdas.iter().product();
    SpectrumReport {
        eigen_residuals,
        trace_residual: (sum - g.trace()).norm(),
        det_residual: (prod - det(&g)).norm(),
    }
}

/// The 3×3 complex generator `i·[[x, z, y], [z, y, x], [y, x, z]]`.
pub fn generator_u3<T: Scalar>(angles: &Angles<T>) -> ComplexMatrix {
    let i = Complex64::i();
    let [x, y, z] = angles.to_array().map(|v| i * v.to_complex());
    Matrix::from_rows(&[[x, z, y], [z, y, x], [y, x, z]]).expect("3x3")
}

/// `exp(generator_u3)` in closed form; a symmetric matrix, unitary for real
/// angles, with determinant `e^{iγ}`.
pub fn group_matrix_u3<T: Scalar>(angles: &Angles<T>) -> ComplexMatrix {
    let args = spherical_args(&angles.map(Scalar::to_complex));
    let i = Complex64::i();
    let eg = (i * args.gamma).exp() / 3.0;
    let cr = args.r.cos();
    let s = |k: usize| 2.0 * i * args.p_sin_r(k) / 3.0;
    let diag = |k: usize| eg + 2.0 * cr / 3.0 + s(k);
    let off = |k: usize| eg - cr / 3.0 + s(k);
    Matrix::from_rows(&[
        [diag(0), off(2), off(1)],
        [off(2), diag(1), off(0)],
        [off(1), off(0), diag(2)],
    ])
    .expect("3x3")
}

/// ℂⁿ → ℝ²ⁿ: each entry `α + βi` becomes the block `[[α, β], [−β, α]]`.
pub fn embed_complex(m: &ComplexMatrix) -> RealMatrix {
    Matrix::from_fn(2 * m.dim(), |i, j| {
        let z = m[(i / 2, j / 2)];
        match (i % 2, j % 2) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => z.im,
            _ => -z.im,
        }
    })
}

/// `exp(generator_ce(angles, scales))`; no closed form is used.
pub fn group_matrix_ce<T: Scalar>(angles: &Angles<T>, scales: &ScaleParams) -> Result<Matrix<T>> {
    expm(&generator_ce(angles, scales))
}

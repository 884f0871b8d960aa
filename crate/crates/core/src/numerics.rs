//! Small dense matrix kernels.
//!
//! Everything here works on square matrices whose dimension is a runtime
//! value (2, 3 and 6 are the sizes used by the rest of the crate). Entries
//! are either `f64` or [`Complex64`], abstracted by [`Scalar`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::{Complex64, ComplexFloat};

use crate::error::{Error, Result};

/// A real or complex double-precision scalar.
pub trait Scalar: ComplexFloat<Real = f64> + fmt::Debug + Default + 'static {
    fn from_real(x: f64) -> Self;
    fn to_complex(self) -> Complex64;
}

impl Scalar for f64 {
    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    #[inline]
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Square dense matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type RealMatrix = Matrix<f64>;
pub type ComplexMatrix = Matrix<Complex64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from rows; every row must have as many entries as
    /// there are rows.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        Self::from_fn(
            entries.len(),
            |i, j| if i == j { entries[i] } else { T::zero() },
        )
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n)
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        self.map(Scalar::to_complex)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// True when every entry has a zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|x| x.im() == 0.0)
    }

    /// Induced ∞-norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        self.rows()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    ///
    /// # Panics
    /// If the dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    /// Row vector times matrix: `v · M`.
    pub fn left_mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        let n = self.n;
        let mut out = vec![T::zero(); n];
        for (k, &vk) in v.iter().enumerate() {
            for (o, &m) in out.iter_mut().zip(self.row(k)) {
                *o = *o + vk * m;
            }
        }
        out
    }

    /// Matrix times column vector: `M · v`.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        self.rows()
            .map(|r| r.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn same_dim(&self, rhs: &Self) -> Result<()> {
        if self.n == rhs.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            })
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.checked_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        self.checked_add(rhs)
            .expect("matrix sum dimension mismatch")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        self.checked_sub(rhs)
            .expect("matrix difference dimension mismatch")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x)
    }
}

/// LU factorisation with partial pivoting, stored in place.
struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    swaps: usize,
    singular: bool,
}

fn lu_decompose<T: Scalar>(m: &Matrix<T>) -> Lu<T> {
    let n = m.dim();
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    let mut singular = false;
    for k in 0..n {
        let (p, pivot_abs) = (k..n)
            .map(|i| (i, lu[(i, k)].abs()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pivot_abs == 0.0 {
            singular = true;
            continue;
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            perm.swap(k, p);
            swaps += 1;
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in k + 1..n {
                lu[(i, j)] = lu[(i, j)] - factor * lu[(k, j)];
            }
        }
    }
    Lu {
        lu,
        perm,
        swaps,
        singular,
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det<T: Scalar>(m: &Matrix<T>) -> T {
    let Lu {
        lu,
        swaps,
        singular,
        ..
    } = lu_decompose(m);
    if singular {
        return T::zero();
    }
    let prod = (0..lu.dim()).fold(T::one(), |acc, i| acc * lu[(i, i)]);
    if swaps % 2 == 1 {
        -prod
    } else {
        prod
    }
}

/// Solves `A X = B` for square `B`.
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let n = a.dim();
    let Lu {
        lu, perm, singular, ..
    } = lu_decompose(a);
    if singular {
        return Err(Error::Singular);
    }
    let mut x = Matrix::zeros(n);
    for col in 0..n {
        // forward substitution on the permuted right-hand side
        let mut y = vec![T::zero(); n];
        for i in 0..n {
            let mut s = b[(perm[i], col)];
            for k in 0..i {
                s = s - lu[(i, k)] * y[k];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s = s - lu[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = s / lu[(i, i)];
        }
    }
    Ok(x)
}

// Padé [13/13] coefficients and the 1-norm bound below which no scaling is
// needed for double-precision backward error.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with a degree-13 Padé
/// approximant.
pub fn expm<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.dim();
    let norm = m.norm_one();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = m.scale(T::from_real(0.5f64.powi(squarings)));

    let ident = Matrix::<T>::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let c = |k: usize| T::from_real(PADE13[k]);
    let lin = |x: &Matrix<T>, y: &Matrix<T>, z: &Matrix<T>, cx, cy, cz| -> Matrix<T> {
        Matrix::from_fn(n, |i, j| {
            x[(i, j)] * c(cx) + y[(i, j)] * c(cy) + z[(i, j)] * c(cz)
        })
    };

    let u_inner = &(&a6 * &lin(&a6, &a4, &a2, 13, 11, 9)) + &lin(&a6, &a4, &a2, 7, 5, 3);
    let u = &a * &(&u_inner + &ident.scale(c(1)));
    let v = &(&(&a6 * &lin(&a6, &a4, &a2, 12, 10, 8)) + &lin(&a6, &a4, &a2, 6, 4, 2))
        + &ident.scale(c(0));

    let mut r = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Overflow { norm })
    }
}

/// `‖MᵀM − I‖∞` (plain transpose, no conjugation).
pub fn residual_orthogonal<T: Scalar>(m: &Matrix<T>) -> f64 {
    (&(&m.transpose() * m) - &Matrix::identity(m.dim())).norm_inf()
}

/// `‖M†M − I‖∞`.
pub fn residual_unitary<T: Scalar>(m: &Matrix<T>) -> f64 {
    (&(&m.conj_transpose() * m) - &Matrix::identity(m.dim())).norm_inf()
}

/// Largest singular value, from power iteration on `M†M`.
pub fn spectral_norm<T: Scalar>(m: &Matrix<T>) -> f64 {
    let gram = &m.conj_transpose() * m;
    let n = m.dim();
    // deterministic, non-symmetric start vector so no singular direction is
    // missed by accident
    let mut v: Vec<T> = (0..n).map(|i| T::from_real(1.0 + 0.1 * i as f64)).collect();
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w = gram.mul_vec(&v);
        let norm = w.iter().map(|x| x.abs().powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm / v.iter().map(|x| x.abs().powi(2)).sum::<f64>().sqrt();
        v = w.into_iter().map(|x| x / T::from_real(norm)).collect();
        if (next - lambda).abs() <= 1e-15 * next {
            lambda = next;
            break;
        }
        lambda = next;
    }
    lambda.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rot(theta: f64) -> RealMatrix {
        Matrix::from_rows(&[[theta.cos(), -theta.sin()], [theta.sin(), theta.cos()]]).unwrap()
    }

    #[test]
    fn expm_of_zero_is_identity() {
        for n in [2, 3, 6] {
            let e = expm(&RealMatrix::zeros(n)).unwrap();
            assert_eq!(e, RealMatrix::identity(n));
        }
    }

    #[test]
    fn expm_of_planar_generator_is_rotation() {
        for &theta in &[0.1, 1.0, -2.5, PI, 7.0, 19.0] {
            let g = Matrix::from_rows(&[[0.0, -theta], [theta, 0.0]]).unwrap();
            let e = expm(&g).unwrap();
            assert!(e.max_abs_diff(&rot(theta)) < 1e-13, "theta = {theta}");
        }
    }

    #[test]
    fn expm_of_diagonal_is_entrywise_exp() {
        let d = RealMatrix::diagonal(&[-3.0, 0.5, 2.0]);
        let e = expm(&d).unwrap();
        for (i, x) in [-3.0f64, 0.5, 2.0].iter().enumerate() {
            assert!((e[(i, i)] - x.exp()).abs() <= 1e-14 * x.exp());
        }
    }

    #[test]
    fn expm_of_complex_scalar_block() {
        let z = Complex64::new(0.3, 1.7);
        let m = ComplexMatrix::diagonal(&[z, -z]);
        let e = expm(&m).unwrap();
        assert!((e[(0, 0)] - z.exp()).norm() < 1e-14);
        assert!((e[(1, 1)] - (-z).exp()).norm() < 1e-14);
    }

    #[test]
    fn expm_rejects_non_finite_and_reports_overflow() {
        let bad = RealMatrix::diagonal(&[f64::NAN, 0.0]);
        assert_eq!(expm(&bad), Err(Error::NonFinite));
        let huge = RealMatrix::diagonal(&[1e6, 0.0]);
        assert!(matches!(expm(&huge), Err(Error::Overflow { .. })));
    }

    #[test]
    fn det_basics() {
        assert_eq!(det(&RealMatrix::identity(6)), 1.0);
        for &t in &[0.0, 0.3, 2.0, -5.0] {
            assert!((det(&rot(t)) - 1.0).abs() < 1e-15);
        }
        let m = Matrix::from_rows(&[[0.0, 2.0, 1.0], [1.0, 0.0, 0.0], [3.0, 1.0, 4.0]]).unwrap();
        // cofactor expansion: -2*(4-0) + 1*(1-0) = -7
        assert!((det(&m) + 7.0).abs() < 1e-14);
        let singular = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(det(&singular), 0.0);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = Matrix::from_rows(&[[4.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]]).unwrap();
        let x = Matrix::from_fn(3, |i, j| (i * 3 + j) as f64 - 4.0);
        let b = &a * &x;
        assert!(solve(&a, &b).unwrap().max_abs_diff(&x) < 1e-13);
        assert_eq!(
            solve(&RealMatrix::zeros(2), &RealMatrix::identity(2)),
            Err(Error::Singular)
        );
    }

    #[test]
    fn residuals() {
        assert_eq!(residual_orthogonal(&RealMatrix::identity(6)), 0.0);
        let mut d = vec![1.0; 6];
        d[0] = 2.0;
        assert_eq!(residual_orthogonal(&RealMatrix::diagonal(&d)), 3.0);
        let u = ComplexMatrix::diagonal(&[Complex64::from_polar(1.0, 0.4), Complex64::i()]);
        assert!(residual_unitary(&u) < 1e-15);
        // a unitary matrix that is not complex-orthogonal
        assert!(residual_orthogonal(&u) > 0.5);
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let d = RealMatrix::diagonal(&[0.5, -3.0, 2.0]);
        assert!((spectral_norm(&d) - 3.0).abs() < 1e-12);
        assert!((spectral_norm(&rot(0.7)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = RealMatrix::identity(2);
        let b = RealMatrix::identity(3);
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn row_and_column_vector_products() {
        let m = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(m.left_mul_vec(&[1.0, 0.0]), vec![1.0, 2.0]);
        assert_eq!(m.mul_vec(&[1.0, 0.0]), vec![1.0, 3.0]);
    }
}

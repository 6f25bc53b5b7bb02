use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use super::scalar::{Complex, Real};
use super::state::StateVector;

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 64;

/// Dense square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Zero matrix of the given dimension.
    ///
    /// Panics if `dim` is zero or exceeds [`MAX_DIM`].
    pub fn zeros(dim: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "matrix dimension {dim} outside 1..={MAX_DIM}"
        );
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows; panics unless the rows form a square.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    pub fn from_real_rows(rows: &[Vec<T>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| Complex::new(rows[i][j], T::zero()))
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v, T::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> StateVector<T> {
        StateVector::from_vec((0..self.dim).map(|i| self[(i, j)]).collect())
    }

    pub fn set_column(&mut self, j: usize, v: &StateVector<T>) {
        for i in 0..self.dim {
            self[(i, j)] = v[i];
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Largest `|M[i][j] - conj(M[j][i])|`.
    pub fn max_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_asymmetry() <= tol
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `|U^dag U - I|_F`, a unitarity defect.
    pub fn unitarity_defect(&self) -> T {
        (&(&self.adjoint() * self) - &Self::identity(self.dim)).frobenius_norm()
    }

    /// Extracts the square sub-block selected by `rows` and `cols`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len(), "submatrix must be square");
        Self::from_fn(rows.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn mul_vec(&self, v: &StateVector<T>) -> StateVector<T> {
        assert_eq!(self.dim, v.len(), "matrix-vector dimension mismatch");
        let out = (0..self.dim)
            .map(|i| {
                let row = &self.data[i * self.dim..(i + 1) * self.dim];
                row.iter()
                    .zip(v.iter())
                    .fold(Complex::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect();
        StateVector::from_vec(out)
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: T, other: &Self) {
        assert_eq!(self.dim, other.dim, "axpy dimension mismatch");
        for (x, &y) in self.data.iter_mut().zip(other.data.iter()) {
            *x += y * a;
        }
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "mul dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<T: Real> Mul<&StateVector<T>> for &ComplexMatrix<T> {
    type Output = StateVector<T>;

    fn mul(self, rhs: &StateVector<T>) -> StateVector<T> {
        self.mul_vec(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    #[test]
    fn identity_is_unitary_and_hermitian() {
        let id = M::identity(5);
        assert_eq!(id.unitarity_defect(), 0.0);
        assert!(id.is_hermitian(0.0));
        assert_eq!(id.trace(), Complex::new(5.0, 0.0));
    }

    #[test]
    fn asymmetry_detects_non_hermitian_entries() {
        let mut m = M::zeros(2);
        m[(0, 1)] = Complex::new(1.0, 0.0);
        assert_eq!(m.max_asymmetry(), 1.0);
        m[(1, 0)] = Complex::new(1.0, 0.0);
        assert_eq!(m.max_asymmetry(), 0.0);
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = M::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let b = M::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let ab = &a * &b;
        assert_eq!(ab, M::from_real_rows(&[vec![2.0, 1.0], vec![4.0, 3.0]]));
        let c = a.commutator(&b);
        assert_eq!(c, M::from_real_rows(&[vec![-1.0, -3.0], vec![3.0, 1.0]]));
    }

    #[test]
    #[should_panic]
    fn rejects_oversized_dimension() {
        let _ = M::zeros(MAX_DIM + 1);
    }
}

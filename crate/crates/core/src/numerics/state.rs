use std::ops::{Deref, Index, IndexMut};

use num_traits::Zero;

use super::matrix::ComplexMatrix;
use super::scalar::{Complex, Real};

/// Complex amplitude vector over a finite level basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T>(Vec<Complex<T>>);

impl<T: Real> StateVector<T> {
    pub fn from_vec(amplitudes: Vec<Complex<T>>) -> Self {
        Self(amplitudes)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Complex::zero(); dim])
    }

    /// Unit vector along basis index `k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = Complex::new(T::one(), T::zero());
        v
    }

    pub fn from_real(values: &[T]) -> Self {
        Self(values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.0
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.len(), other.len(), "inner product dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Complex::zero(), |acc, (a, &b)| acc + a.conj() * b)
    }

    /// `|<self|other>|^2`.
    pub fn overlap(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    pub fn norm_sqr(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Returns the normalized vector; a zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n.is_zero() {
            return self.clone();
        }
        self.scale_real(T::one() / n)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self(self.0.iter().map(|&z| z * s).collect())
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self(self.0.iter().map(|&z| z * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: T, other: &Self) {
        assert_eq!(self.len(), other.len(), "axpy dimension mismatch");
        for (x, &y) in self.0.iter_mut().zip(&other.0) {
            *x += y * a;
        }
    }

    /// `|self><other|`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(self.len(), |i, j| self.0[i] * other.0[j].conj())
    }

    /// `|self><self|`.
    pub fn projector(&self) -> ComplexMatrix<T> {
        self.outer(self)
    }

    /// Multiplies by a global phase so the largest-modulus component is real
    /// and positive. Moduli equal to within a relative 1e-9 count as ties and
    /// resolve to the lowest index.
    pub fn fix_global_phase(&self) -> Self {
        let tie = T::one() + T::from_f64(1e-9);
        let mut pivot = Complex::zero();
        for &z in &self.0 {
            if z.norm() > pivot.norm() * tie {
                pivot = z;
            }
        }
        if pivot.is_zero() {
            return self.clone();
        }
        self.scale(pivot.conj() / pivot.norm())
    }

    pub fn all_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Squared moduli of the amplitudes.
    pub fn populations(&self) -> Vec<T> {
        self.0.iter().map(|z| z.norm_sqr()).collect()
    }
}

impl<T> Deref for StateVector<T> {
    type Target = [Complex<T>];

    fn deref(&self) -> &[Complex<T>] {
        &self.0
    }
}

impl<T> Index<usize> for StateVector<T> {
    type Output = Complex<T>;

    fn index(&self, i: usize) -> &Complex<T> {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for StateVector<T> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_phase_makes_largest_component_real_positive() {
        let v = StateVector::<f64>::from_vec(vec![
            Complex::new(0.1, 0.0),
            Complex::new(0.0, -0.9),
            Complex::new(0.3, 0.3),
        ]);
        let fixed = v.fix_global_phase();
        assert!((fixed[1].re - 0.9).abs() < 1e-15);
        assert!(fixed[1].im.abs() < 1e-15);
        assert!((fixed.norm() - v.norm()).abs() < 1e-15);
    }

    #[test]
    fn inner_product_is_antilinear_in_bra() {
        let a = StateVector::<f64>::from_vec(vec![Complex::new(0.0, 1.0)]);
        let b = StateVector::<f64>::from_vec(vec![Complex::new(1.0, 0.0)]);
        assert_eq!(a.inner(&b), Complex::new(0.0, -1.0));
    }
}

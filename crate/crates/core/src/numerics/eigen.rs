//! Hermitian eigendecomposition and singular-value machinery.
//!
//! Both routines are built on the same complex Jacobi rotation: cyclic
//! two-sided sweeps for Hermitian matrices, one-sided (Hestenes) sweeps for
//! the SVD. Dimensions here never exceed a few dozen, where Jacobi is both
//! accurate to working precision and fast enough.

use num_traits::{One, Zero};

use super::matrix::ComplexMatrix;
use super::scalar::{real, Complex, Real};
use super::state::StateVector;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen<T> {
    pub values: Vec<T>,
    /// Eigenvectors as columns, aligned with `values`.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> Eigen<T> {
    pub fn vector(&self, k: usize) -> StateVector<T> {
        self.vectors.column(k)
    }

    /// `sum_k lambda_k v_k v_k^dag`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let n = self.values.len();
        let mut m = ComplexMatrix::zeros(n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            m.axpy(lambda, &v.projector());
        }
        m
    }
}

/// Unitary 2x2 rotation `[[u00, u01], [u10, u11]]` that diagonalizes the
/// Hermitian block `[[a, b], [conj(b), d]]` via `U^dag A U`.
fn jacobi_rotation<T: Real>(a: T, b: Complex<T>, d: T) -> [Complex<T>; 4] {
    let mag = b.norm();
    let phase = if mag.is_zero() {
        Complex::one()
    } else {
        (b / mag).conj()
    };
    let tau = (d - a) / (real::<T>(2.0) * mag);
    let t = if tau.is_zero() {
        T::one()
    } else {
        tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let c = Complex::new(c, T::zero());
    let s = Complex::new(s, T::zero());
    // U = diag(1, phase) * [[c, s], [-s, c]]
    [c, s, -s * phase, c * phase]
}

fn off_diagonal_norm<T: Real>(m: &ComplexMatrix<T>) -> T {
    let n = m.dim();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Hermitian eigendecomposition.
///
/// The input must satisfy `max |M[i][j] - conj(M[j][i])| <= 1e-10 * max(1, max|M|)`
/// (scaled by the type's epsilon ratio for narrower scalars), otherwise
/// [`Error::NonHermitian`] is returned.
pub fn hermitian_eigs<T: Real>(m: &ComplexMatrix<T>) -> Result<Eigen<T>> {
    let scale = T::one().max(m.max_abs());
    let tol = hermitian_tolerance::<T>() * scale;
    let asym = m.max_asymmetry();
    if asym > tol {
        return Err(Error::NonHermitian {
            max_asymmetry: asym.to_f64_lossy(),
        });
    }
    let n = m.dim();
    let mut a = m.clone();
    // symmetrize so the rotations act on an exactly Hermitian matrix
    for i in 0..n {
        a[(i, i)] = Complex::new(a[(i, i)].re, T::zero());
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * real::<T>(0.5);
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = T::epsilon() * a.frobenius_norm().max(T::min_positive_value());

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                if b.norm() <= T::min_positive_value() {
                    continue;
                }
                let u = jacobi_rotation(a[(p, p)].re, b, a[(q, q)].re);
                rotate_two_sided(&mut a, p, q, &u);
                rotate_columns(&mut v, p, q, &u);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

pub(crate) fn hermitian_tolerance<T: Real>() -> T {
    // 1e-10 for f64; proportionally looser for narrower types
    real::<T>(1e-10) * (T::epsilon() / real::<T>(f64::EPSILON)).max(T::one())
}

fn rotate_columns<T: Real>(m: &mut ComplexMatrix<T>, p: usize, q: usize, u: &[Complex<T>; 4]) {
    for r in 0..m.dim() {
        let mp = m[(r, p)];
        let mq = m[(r, q)];
        m[(r, p)] = mp * u[0] + mq * u[2];
        m[(r, q)] = mp * u[1] + mq * u[3];
    }
}

fn rotate_two_sided<T: Real>(a: &mut ComplexMatrix<T>, p: usize, q: usize, u: &[Complex<T>; 4]) {
    rotate_columns(a, p, q, u);
    for c in 0..a.dim() {
        let ap = a[(p, c)];
        let aq = a[(q, c)];
        a[(p, c)] = u[0].conj() * ap + u[2].conj() * aq;
        a[(q, c)] = u[1].conj() * ap + u[3].conj() * aq;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
}

/// Singular value decomposition `M = U S V^dag` restricted to what the null
/// space needs: singular values (descending) and right singular vectors.
#[derive(Clone, Debug)]
pub struct Svd<T> {
    pub singular_values: Vec<T>,
    /// Right singular vectors as columns, aligned with `singular_values`.
    pub right_vectors: ComplexMatrix<T>,
}

/// One-sided Jacobi SVD. Small singular values come out accurate to roughly
/// `eps * |M|`, which is what the null-space residual bound relies on.
pub fn svd<T: Real>(m: &ComplexMatrix<T>) -> Svd<T> {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = Complex::zero();
                for r in 0..n {
                    alpha += a[(r, p)].norm_sqr();
                    beta += a[(r, q)].norm_sqr();
                    gamma += a[(r, p)].conj() * a[(r, q)];
                }
                if gamma.norm() <= eps * (alpha * beta).sqrt() || gamma.norm() <= T::min_positive_value() {
                    continue;
                }
                rotated = true;
                let u = jacobi_rotation(alpha, gamma, beta);
                rotate_columns(&mut a, p, q, &u);
                rotate_columns(&mut v, p, q, &u);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = (0..n).map(|j| a.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    Svd {
        singular_values: order.iter().map(|&i| norms[i]).collect(),
        right_vectors: ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]),
    }
}

/// Spectral norm (largest singular value).
pub fn spectral_norm<T: Real>(m: &ComplexMatrix<T>) -> T {
    svd(m).singular_values.first().copied().unwrap_or_else(T::zero)
}

/// Orthonormal basis of `{v : |M v| <= tol * |M|}` where `|M|` is the spectral
/// norm. The zero matrix has the full space as its null space. `tol` must lie
/// in `(0, 1e-3]`.
pub fn null_space<T: Real>(m: &ComplexMatrix<T>, tol: T) -> Result<Vec<StateVector<T>>> {
    if !(tol > T::zero() && tol <= real::<T>(1e-3)) {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: format!("must lie in (0, 1e-3], got {tol}"),
        });
    }
    let decomposition = svd(m);
    let norm = decomposition.singular_values[0];
    let cutoff = tol * norm;
    Ok(decomposition
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(k, _)| decomposition.right_vectors.column(k))
        .collect())
}

/// `exp(-i H t)` for Hermitian `H`, via its eigendecomposition.
pub fn unitary_exp<T: Real>(h: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eigs(h)?;
    let n = h.dim();
    let phases: Vec<Complex<T>> = eig
        .values
        .iter()
        .map(|&lambda| Complex::from_polar(T::one(), -lambda * t))
        .collect();
    Ok(ComplexMatrix::from_fn(n, |i, j| {
        (0..n).fold(Complex::zero(), |acc, k| {
            acc + eig.vectors[(i, k)] * phases[k] * eig.vectors[(j, k)].conj()
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let e = hermitian_eigs(&M::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let m = M::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let e = hermitian_eigs(&m).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_hermitian_residuals_and_orthonormality() {
        let m = M::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5), c(0.3, 0.0)],
            vec![c(1.0, 1.0), c(-1.0, 0.0), c(0.2, 0.2), c(0.0, -0.7)],
            vec![c(0.0, -0.5), c(0.2, -0.2), c(0.5, 0.0), c(1.5, 0.1)],
            vec![c(0.3, 0.0), c(0.0, 0.7), c(1.5, -0.1), c(3.0, 0.0)],
        ]);
        let e = hermitian_eigs(&m).unwrap();
        let norm = spectral_norm(&m);
        for k in 0..4 {
            let v = e.vector(k);
            let r = m.mul_vec(&v).sub(&v.scale_real(e.values[k]));
            assert!(r.norm() <= 1e-10 * norm);
            for l in 0..4 {
                let expect = if k == l { 1.0 } else { 0.0 };
                assert!((e.vector(l).inner(&v) - c(expect, 0.0)).norm() < 1e-10);
            }
        }
        assert!((&e.reconstruct() - &m).frobenius_norm() < 1e-9);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian_with_asymmetry() {
        let m = M::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        match hermitian_eigs(&m) {
            Err(Error::NonHermitian { max_asymmetry }) => assert_eq!(max_asymmetry, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn null_space_of_zero_matrix_is_everything() {
        let basis = null_space(&M::zeros(3), 1e-10).unwrap();
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn null_space_of_rank_two_projector() {
        let p = M::diagonal(&[1.0, 1.0, 0.0]);
        let basis = null_space(&p, 1e-10).unwrap();
        assert_eq!(basis.len(), 1);
        assert!((basis[0][2].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn null_space_rejects_bad_tolerance() {
        assert!(null_space(&M::identity(2), 0.0).is_err());
        assert!(null_space(&M::identity(2), 1e-2).is_err());
    }

    #[test]
    fn full_rank_matrix_has_empty_null_space() {
        assert!(null_space(&M::identity(4), 1e-10).unwrap().is_empty());
    }

    #[test]
    fn unitary_exp_of_pauli_x() {
        let x = M::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let t = 0.37;
        let u = unitary_exp(&x, t).unwrap();
        assert!((u[(0, 0)] - c(t.cos(), 0.0)).norm() < 1e-14);
        assert!((u[(0, 1)] - c(0.0, -t.sin())).norm() < 1e-14);
    }

    #[test]
    fn single_precision_eigs_work() {
        let m = ComplexMatrix::<f32>::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = hermitian_eigs(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-6);
        assert!((e.values[1] - 3.0).abs() < 1e-6);
    }
}

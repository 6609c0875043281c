//! Hermitian eigendecomposition via cyclic complex Jacobi rotations.
//!
//! Matrices here are at most a few hundred on a side (usually 8x8), so a
//! dependency-free Jacobi sweep is plenty: it is deterministic and converges
//! to machine precision in a handful of sweeps.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues (descending) and the matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.rows())
            .map(|i| self.eigenvectors.get(i, k))
            .collect()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Diagonalize a Hermitian matrix.
///
/// The input must be Hermitian within `1e-10` entrywise; the returned
/// eigenvalues are sorted in descending order.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    if h.rows() != h.cols() {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let dev = h.hermitian_deviation();
    if dev > 1e-10 {
        return Err(Error::NotHermitian(dev));
    }

    let n = h.rows();
    // Symmetrize so rounding noise in the input cannot bias the sweeps.
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = (h.get(i, j) + h.get(j, i).conj()) * 0.5;
            a.set(i, j, v);
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(1.0);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let m = apq.norm();
                if m <= f64::EPSILON * scale * 1e-4 {
                    continue;
                }
                // Unitary 2x2 rotation annihilating (p, q):
                // phase strips arg(a_pq), theta is the real Jacobi angle.
                let phase = apq / m;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let theta = 0.5 * (2.0 * m).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let s_phase = phase * s; // e^{i phi} * sin(theta)
                let s_phase_conj = s_phase.conj();

                // Column update: A <- A R with R[p,p]=c, R[p,q]=-s e^{i phi},
                // R[q,p]=s e^{-i phi}, R[q,q]=c.
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c + aiq * s_phase_conj);
                    a.set(i, q, aiq * c - aip * s_phase);
                }
                // Row update: A <- R† A.
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c + aqj * s_phase);
                    a.set(q, j, aqj * c - apj * s_phase_conj);
                }
                // Accumulate eigenvectors: V <- V R.
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c + viq * s_phase_conj);
                    v.set(i, q, viq * c - vip * s_phase);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors.set(i, new_col, v.get(i, old_col));
        }
    }

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eig(h)?.eigenvalues)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::kron;

    #[test]
    fn reduced_grover_step_one_eigenvalues() {
        let m = ComplexMatrix::from_real(2, 2, &[4.0, 2.0, 2.0, 4.0])
            .unwrap()
            .scale(1.0 / 8.0);
        let eig = hermitian_eig(&m).unwrap();
        assert!((eig.eigenvalues[0] - 0.75).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 0.25).abs() < 1e-14);
    }

    #[test]
    fn half_identity() {
        let m = ComplexMatrix::identity(2).scale(0.5);
        let eig = hermitian_eig(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![0.5, 0.5]);
    }

    #[test]
    fn reduced_grover_step_two_eigenvalues() {
        let m = ComplexMatrix::from_real(2, 2, &[4.0, 8.0, 8.0, 28.0])
            .unwrap()
            .scale(1.0 / 32.0);
        let eig = hermitian_eig(&m).unwrap();
        let expect_hi = (4.0 + 13f64.sqrt()) / 8.0;
        let expect_lo = (4.0 - 13f64.sqrt()) / 8.0;
        assert!((eig.eigenvalues[0] - expect_hi).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - expect_lo).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian(_))));
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Deterministic pseudo-random Hermitian test matrix.
    fn test_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c(next(), 0.0));
            for j in (i + 1)..n {
                let z = c(next(), next());
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        for seed in 1..6u64 {
            let h = test_hermitian(8, seed);
            let eig = hermitian_eig(&h).unwrap();
            let v = &eig.eigenvectors;

            // V† V = I
            let gram = v.dagger().mul(v).unwrap();
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-9);

            // H = V diag(lambda) V†
            let mut lambda = ComplexMatrix::zeros(8, 8);
            for (i, &ev) in eig.eigenvalues.iter().enumerate() {
                lambda.set(i, i, c(ev, 0.0));
            }
            let rebuilt = v.mul(&lambda).unwrap().mul(&v.dagger()).unwrap();
            assert!(
                crate::matrix::frobenius_distance(&h, &rebuilt).unwrap() < 1e-9,
                "reconstruction failed for seed {seed}"
            );

            // H v_k = lambda_k v_k per column
            for k in 0..8 {
                let vk = eig.eigenvector(k);
                let hv = h.mul_vec(&vk).unwrap();
                let dev: f64 = hv
                    .iter()
                    .zip(&vk)
                    .map(|(a, b)| (a - b * eig.eigenvalues[k]).norm())
                    .fold(0.0, f64::max);
                assert!(dev < 1e-9);
            }
        }
    }

    #[test]
    fn handles_kron_structure() {
        let h = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0])
            .unwrap()
            .scale(1.0 / 2f64.sqrt());
        let big = kron(&h, &h);
        let eig = hermitian_eig(&big).unwrap();
        for ev in &eig.eigenvalues {
            assert!((ev.abs() - 1.0).abs() < 1e-12);
        }
    }
}

//! Pure states, density matrices, partial trace, and entropy.
//!
//! Qubit 0 is the most significant bit of the basis index, so a three-qubit
//! basis ket |abc> lives at index 4a + 2b + c.

use num_complex::Complex64;

use crate::eig::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub(crate) const NORM_TOL: f64 = 1e-12;
pub(crate) const HERMITIAN_TOL: f64 = 1e-12;
pub(crate) const TRACE_TOL: f64 = 1e-12;
pub(crate) const PSD_TOL: f64 = -1e-10;
/// Eigenvalues below this contribute nothing to entropies.
pub(crate) const ENTROPY_CUTOFF: f64 = 1e-15;

/// Normalized amplitude vector over `n_qubits`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::Dimension(format!(
                "{} qubits need {} amplitudes, got {}",
                n_qubits,
                dim,
                amplitudes.len()
            )));
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state |index>.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Hermitian, positive-semidefinite, unit-trace matrix over `n_qubits`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a matrix: Hermitian within 1e-12 entrywise, trace 1
    /// within 1e-12, and smallest eigenvalue at least -1e-10.
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::Dimension(format!(
                "{} qubits need a {}x{} matrix, got {}x{}",
                n_qubits,
                dim,
                dim,
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {dev:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {} + {}i, expected 1",
                tr.re, tr.im
            )));
        }
        let eigenvalues = hermitian_eigenvalues(&matrix)?;
        if let Some(&min) = eigenvalues.last() {
            if min < PSD_TOL {
                return Err(Error::InvalidDensityMatrix(format!(
                    "not positive semidefinite (min eigenvalue {min:.3e})"
                )));
            }
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    /// Tr(rho^2); equals 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        let d = self.dim();
        crate::matrix::kahan_sum((0..d).flat_map(|i| {
            let m = &self.matrix;
            (0..d).map(move |j| (m.get(i, j) * m.get(j, i)).re)
        }))
    }
}

/// Projector |psi><psi| as a density matrix.
///
/// Skips the spectral validation of [`DensityMatrix::new`]: the projector of
/// a normalized state is rank one by construction.
pub fn outer(psi: &PureState) -> DensityMatrix {
    let d = psi.dim();
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, psi.amplitude(i) * psi.amplitude(j).conj());
        }
    }
    DensityMatrix {
        n_qubits: psi.n_qubits(),
        matrix: m,
    }
}

/// Scatter the bits of `sub` (first listed qubit = most significant) into a
/// full basis index.
pub(crate) fn expand_bits(sub: usize, qubits: &[usize], n_qubits: usize) -> usize {
    let mut out = 0usize;
    for (pos, &q) in qubits.iter().enumerate() {
        let bit = (sub >> (qubits.len() - 1 - pos)) & 1;
        out |= bit << (n_qubits - 1 - q);
    }
    out
}

fn validate_subset(qubits: &[usize], n_qubits: usize) -> Result<Vec<usize>> {
    let mut sorted = qubits.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != qubits.len() {
        return Err(Error::InvalidArgument("duplicate qubit index".into()));
    }
    if sorted.iter().any(|&q| q >= n_qubits) {
        return Err(Error::InvalidArgument(format!(
            "qubit index out of range for {n_qubits} qubits"
        )));
    }
    Ok(sorted)
}

/// Partial trace on a raw matrix; the caller is responsible for meaning.
/// `keep` must be sorted and in range.
pub(crate) fn partial_trace_raw(
    m: &ComplexMatrix,
    n_qubits: usize,
    keep: &[usize],
) -> ComplexMatrix {
    let traced: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for ik in 0..dk {
        let ik_full = expand_bits(ik, keep, n_qubits);
        for jk in 0..dk {
            let jk_full = expand_bits(jk, keep, n_qubits);
            let mut acc = Complex64::new(0.0, 0.0);
            for e in 0..dt {
                let e_full = expand_bits(e, &traced, n_qubits);
                acc += m.get(ik_full | e_full, jk_full | e_full);
            }
            out.set(ik, jk, acc);
        }
    }
    out
}

/// Reduced state over the kept qubits (ascending order, first kept qubit is
/// the most significant bit of the reduced index).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::NothingKept);
    }
    let keep = validate_subset(keep, rho.n_qubits())?;
    let reduced = partial_trace_raw(rho.matrix(), rho.n_qubits(), &keep);
    DensityMatrix::new(keep.len(), reduced)
}

pub(crate) fn entropy_from_eigenvalues(eigenvalues: &[f64]) -> f64 {
    let mut s = 0.0;
    for &ev in eigenvalues {
        if ev > ENTROPY_CUTOFF {
            s -= ev * ev.log2();
        }
    }
    s
}

/// Entropy of a raw Hermitian PSD matrix with unit trace (used on conditional
/// states that have not been through density-matrix validation).
pub(crate) fn entropy_of_hermitian(m: &ComplexMatrix) -> Result<f64> {
    Ok(entropy_from_eigenvalues(&hermitian_eigenvalues(m)?))
}

/// Von Neumann entropy in bits: `S = -sum_i lambda_i log2 lambda_i`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    // A validated state with unit purity is rank one, so S = 0; this keeps
    // large pure states cheap.
    if (rho.purity() - 1.0).abs() <= 1e-12 {
        return 0.0;
    }
    let eigenvalues =
        hermitian_eigenvalues(rho.matrix()).expect("validated density matrix is Hermitian");
    entropy_from_eigenvalues(&eigenvalues)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover;
    use crate::matrix::kron;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_projector() {
        let zero = PureState::basis(1, 0).unwrap();
        let rho = outer(&zero);
        assert_eq!(rho.entry(0, 0), c(1.0, 0.0));
        assert_eq!(rho.entry(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn rejects_unnormalized() {
        let bad = PureState::new(1, vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(bad, Err(Error::NotNormalized(_))));
    }

    #[test]
    fn grover_step_one_projector_pattern() {
        // All entries 1/8 in magnitude, sign flips exactly on row/column 7.
        let psi1 = grover::trace_states(&grover::GroverConfig::new(3, 7, 1).unwrap())
            .unwrap()
            .states[1]
            .1
            .clone();
        let rho = outer(&psi1);
        for i in 0..8 {
            for j in 0..8 {
                let sign = if (i == 7) ^ (j == 7) { -1.0 } else { 1.0 };
                assert!((rho.entry(i, j) - c(sign / 8.0, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn partial_trace_of_grover_step_one() {
        let psi1 = grover::trace_states(&grover::GroverConfig::new(3, 7, 1).unwrap())
            .unwrap()
            .states[1]
            .1
            .clone();
        let rho = outer(&psi1);
        let reduced = partial_trace(&rho, &[0]).unwrap();
        let expect = ComplexMatrix::from_real(2, 2, &[4.0, 2.0, 2.0, 4.0])
            .unwrap()
            .scale(1.0 / 8.0);
        assert!(reduced.matrix().max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn partial_trace_of_grover_step_four() {
        let psi4 = grover::trace_states(&grover::GroverConfig::new(3, 7, 2).unwrap())
            .unwrap()
            .states[4]
            .1
            .clone();
        let rho = outer(&psi4);
        let reduced = partial_trace(&rho, &[0]).unwrap();
        // Direct sum over basis indices, independently of partial_trace.
        let mut expect = ComplexMatrix::zeros(2, 2);
        for a in 0..2usize {
            for b in 0..2usize {
                let mut acc = c(0.0, 0.0);
                for rest in 0..4usize {
                    acc += psi4.amplitude(a * 4 + rest) * psi4.amplitude(b * 4 + rest).conj();
                }
                expect.set(a, b, acc);
            }
        }
        assert!(reduced.matrix().max_abs_diff(&expect) < 1e-14);
        let display = ComplexMatrix::from_real(2, 2, &[4.0, -8.0, -8.0, 124.0])
            .unwrap()
            .scale(1.0 / 128.0);
        assert!(reduced.matrix().max_abs_diff(&display) < 1e-14);
    }

    #[test]
    fn partial_trace_of_product_state_recovers_factor() {
        let plus = PureState::new(1, vec![c(0.5f64.sqrt(), 0.0), c(0.5f64.sqrt(), 0.0)]).unwrap();
        let one = PureState::basis(1, 1).unwrap();
        let product = kron(outer(&plus).matrix(), outer(&one).matrix());
        let rho = DensityMatrix::new(2, product).unwrap();
        let reduced = partial_trace(&rho, &[0]).unwrap();
        assert!(reduced.matrix().max_abs_diff(outer(&plus).matrix()) < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_empty_keep() {
        let rho = outer(&PureState::basis(2, 0).unwrap());
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::NothingKept)));
    }

    #[test]
    fn entropy_of_pure_state_is_zero() {
        let rho = outer(&PureState::basis(2, 3).unwrap());
        assert_eq!(von_neumann_entropy(&rho), 0.0);
    }

    #[test]
    fn entropy_binary_distributions() {
        let m = ComplexMatrix::from_real(2, 2, &[0.75, 0.0, 0.0, 0.25]).unwrap();
        let rho = DensityMatrix::new(1, m).unwrap();
        let expect = -(0.25f64.log2() * 0.25 + 0.75f64.log2() * 0.75);
        assert!((von_neumann_entropy(&rho) - expect).abs() < 1e-12);
        assert!((expect - 0.8112781244591328).abs() < 1e-12);

        let hi = (4.0 + 13f64.sqrt()) / 8.0;
        let lo = (4.0 - 13f64.sqrt()) / 8.0;
        let m = ComplexMatrix::from_real(2, 2, &[hi, 0.0, 0.0, lo]).unwrap();
        let rho = DensityMatrix::new(1, m).unwrap();
        let expect = -(hi.log2() * hi + lo.log2() * lo);
        assert!((von_neumann_entropy(&rho) - expect).abs() < 1e-12);
        // Two significant figures in print, five here.
        assert!((expect - 0.2834419355294585).abs() < 1e-12);
    }

    #[test]
    fn entropy_invariant_under_single_qubit_unitaries() {
        let psi2 = grover::trace_states(&grover::GroverConfig::new(3, 7, 1).unwrap())
            .unwrap()
            .states[2]
            .1
            .clone();
        let rho = partial_trace(&outer(&psi2), &[0, 1]).unwrap();
        let u1 = single_qubit_unitary(0.3, 0.7, 1.1);
        let u2 = single_qubit_unitary(1.9, 0.2, 2.5);
        let u = kron(&u1, &u2);
        let conj = u.mul(rho.matrix()).unwrap().mul(&u.dagger()).unwrap();
        let rotated = DensityMatrix::new(2, conj).unwrap();
        assert!((von_neumann_entropy(&rotated) - von_neumann_entropy(&rho)).abs() < 1e-9);
    }

    fn single_qubit_unitary(theta: f64, lambda: f64, mu: f64) -> ComplexMatrix {
        let (s, co) = theta.sin_cos();
        ComplexMatrix::new(
            2,
            2,
            vec![
                c(co, 0.0),
                -Complex64::from_polar(s, lambda),
                Complex64::from_polar(s, mu),
                Complex64::from_polar(co, lambda + mu),
            ],
        )
        .unwrap()
    }

    fn pure_state_strategy(n: usize) -> impl Strategy<Value = PureState> {
        let dim = 1usize << n;
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map(
            "norm too small",
            move |parts| {
                let norm_sqr: f64 = parts.iter().map(|(re, im)| re * re + im * im).sum();
                if norm_sqr < 1e-3 {
                    return None;
                }
                let norm = norm_sqr.sqrt();
                let amps = parts
                    .into_iter()
                    .map(|(re, im)| c(re / norm, im / norm))
                    .collect();
                Some(PureState::new(n, amps).unwrap())
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn outer_has_unit_purity(psi in pure_state_strategy(3)) {
            let rho = outer(&psi);
            // Tr(rho^2) via explicit square.
            let sq = rho.matrix().mul(rho.matrix()).unwrap();
            prop_assert!((sq.trace().re - 1.0).abs() < 1e-10);
            prop_assert!(sq.trace().im.abs() < 1e-12);
        }

        #[test]
        fn partial_trace_preserves_trace(psi in pure_state_strategy(3), keep_mask in 1usize..8) {
            let keep: Vec<usize> = (0..3).filter(|q| keep_mask >> q & 1 == 1).collect();
            let rho = outer(&psi);
            let reduced = partial_trace(&rho, &keep).unwrap();
            prop_assert!((reduced.matrix().trace().re - 1.0).abs() < 1e-12);
        }

        #[test]
        fn complementary_entropies_agree_for_pure_states(psi in pure_state_strategy(3)) {
            let rho = outer(&psi);
            let a = partial_trace(&rho, &[0]).unwrap();
            let bc = partial_trace(&rho, &[1, 2]).unwrap();
            prop_assert!((von_neumann_entropy(&a) - von_neumann_entropy(&bc)).abs() < 1e-9);
        }
    }
}

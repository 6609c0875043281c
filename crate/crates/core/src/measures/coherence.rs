//! Coherence as Frobenius distance to the incoherent (diagonal) states.

use crate::state::DensityMatrix;

/// Minimum Frobenius distance from `rho` to any diagonal density matrix.
///
/// The squared distance splits into the off-diagonal part, which no diagonal
/// state can touch, plus the diagonal part, which vanishes at the feasible
/// choice delta = diag(rho). The minimum is therefore the Frobenius norm of
/// the off-diagonal entries.
pub fn coherence_frobenius(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut sum = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                sum += rho.entry(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover::{trace_states, GroverConfig};
    use crate::matrix::ComplexMatrix;
    use crate::state::outer;

    #[test]
    fn grover_trace_values() {
        let trace = trace_states(&GroverConfig::new(3, 7, 2).unwrap()).unwrap();
        let expect = [
            14f64.sqrt() / 4.0,
            7.0 * 2f64.sqrt() / 16.0,
            7.0 * 2f64.sqrt() / 16.0,
            434f64.sqrt() / 64.0,
        ];
        for (k, target) in expect.iter().enumerate() {
            let rho = outer(&trace.states[k + 1].1);
            assert!(
                (coherence_frobenius(&rho) - target).abs() < 1e-12,
                "state {}",
                k + 1
            );
        }
    }

    #[test]
    fn diagonal_states_have_zero_coherence() {
        let m = ComplexMatrix::from_real(2, 2, &[0.3, 0.0, 0.0, 0.7]).unwrap();
        let rho = DensityMatrix::new(1, m).unwrap();
        assert_eq!(coherence_frobenius(&rho), 0.0);
    }
}

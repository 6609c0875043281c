//! Resource measures on density matrices: Frobenius coherence, quantum
//! discord, and the geometric measure of entanglement.

mod coherence;
mod discord;
mod gm;

pub use coherence::coherence_frobenius;
pub use discord::{
    conditional_entropy_after_measurement, discord, discord_with_budget, mutual_information,
};
pub use gm::{gm, gm_lambda2, gm_lambda2_with_budget, AnsatzMode, GMResult, ProductAnsatz};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// A split of the qubits into the measured side and the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    n_qubits: usize,
    measured: Vec<usize>,
    rest: Vec<usize>,
}

impl Bipartition {
    /// `measured` is the side the discord measurement acts on; it must be a
    /// proper nonempty subset of `0..n_qubits`.
    pub fn new(n_qubits: usize, measured: &[usize]) -> Result<Self> {
        let mut sorted = measured.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != measured.len() {
            return Err(Error::InvalidArgument("duplicate qubit in split".into()));
        }
        if sorted.iter().any(|&q| q >= n_qubits) {
            return Err(Error::InvalidArgument(format!(
                "split qubit out of range for {n_qubits} qubits"
            )));
        }
        if sorted.is_empty() {
            return Err(Error::InvalidArgument("measured side is empty".into()));
        }
        if sorted.len() == n_qubits {
            return Err(Error::InvalidArgument("rest side is empty".into()));
        }
        let rest = (0..n_qubits).filter(|q| !sorted.contains(q)).collect();
        Ok(Self {
            n_qubits,
            measured: sorted,
            rest,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    pub fn rest(&self) -> &[usize] {
        &self.rest
    }
}

/// A complete set of orthogonal projectors on the measured subsystem.
///
/// Completeness plus idempotence makes the projectors mutually orthogonal,
/// so this is exactly a projective measurement; rank-one sets arise from
/// unitary columns.
#[derive(Debug, Clone)]
pub struct MeasurementBasis {
    dim: usize,
    projectors: Vec<ComplexMatrix>,
}

impl MeasurementBasis {
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match projectors.first() {
            Some(p) => p.rows(),
            None => return Err(Error::InvalidArgument("no projectors".into())),
        };
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for p in &projectors {
            if p.rows() != dim || p.cols() != dim {
                return Err(Error::Dimension("projector dimensions differ".into()));
            }
            if p.hermitian_deviation() > 1e-10 {
                return Err(Error::InvalidArgument("projector not Hermitian".into()));
            }
            let sq = p.mul(p)?;
            if sq.max_abs_diff(p) > 1e-10 {
                return Err(Error::InvalidArgument("projector not idempotent".into()));
            }
            sum = sum.add(p)?;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(dim)) > 1e-10 {
            return Err(Error::InvalidArgument(
                "projectors do not resolve the identity".into(),
            ));
        }
        Ok(Self { dim, projectors })
    }

    /// Rank-one projectors onto the columns of a unitary.
    pub fn from_unitary_columns(u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != u.cols() {
            return Err(Error::Dimension("unitary must be square".into()));
        }
        let d = u.rows();
        let mut projectors = Vec::with_capacity(d);
        for k in 0..d {
            let mut p = ComplexMatrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    p.set(i, j, u.get(i, k) * u.get(j, k).conj());
                }
            }
            projectors.push(p);
        }
        Self::new(projectors)
    }

    /// The computational (diagonal rank-one) measurement.
    pub fn computational(dim: usize) -> Self {
        let projectors = (0..dim)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(dim, dim);
                p.set(k, k, num_complex::Complex64::new(1.0, 0.0));
                p
            })
            .collect();
        Self { dim, projectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }
}

/// Letter label for a split, e.g. `A|BC` for measured = {0} on 3 qubits.
pub fn split_label(split: &Bipartition) -> String {
    let letter = |q: usize| (b'A' + q as u8) as char;
    let measured: String = split.measured().iter().map(|&q| letter(q)).collect();
    let rest: String = split.rest().iter().map(|&q| letter(q)).collect();
    format!("{measured}|{rest}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(3, &[]).is_err());
        assert!(Bipartition::new(3, &[0, 1, 2]).is_err());
        assert!(Bipartition::new(3, &[3]).is_err());
        assert!(Bipartition::new(3, &[1, 1]).is_err());
        let split = Bipartition::new(3, &[1]).unwrap();
        assert_eq!(split.measured(), &[1]);
        assert_eq!(split.rest(), &[0, 2]);
        assert_eq!(split_label(&split), "B|AC");
    }

    #[test]
    fn computational_basis_is_valid() {
        let basis = MeasurementBasis::computational(4);
        assert!(MeasurementBasis::new(basis.projectors().to_vec()).is_ok());
    }

    #[test]
    fn incomplete_projectors_rejected() {
        let mut p = ComplexMatrix::zeros(2, 2);
        p.set(0, 0, num_complex::Complex64::new(1.0, 0.0));
        assert!(MeasurementBasis::new(vec![p]).is_err());
    }
}

//! Mutual information, measured conditional entropy, and quantum discord.
//!
//! Discord minimizes the post-measurement conditional entropy over rank-one
//! projective measurements on the measured side. The measured side is one or
//! two qubits here; one-qubit bases are parameterized by two Bloch angles,
//! two-qubit bases by eight angles through a product of Givens rotations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::measures::{Bipartition, MeasurementBasis};
use crate::optim::{multistart_minimize, weyl_points, NelderMeadOptions};
use crate::state::{
    entropy_of_hermitian, expand_bits, partial_trace, partial_trace_raw, von_neumann_entropy,
    DensityMatrix,
};

const OUTCOME_CUTOFF: f64 = 1e-14;

/// `I(A:B) = S(A) + S(B) - S(AB)` across the split.
pub fn mutual_information(rho: &DensityMatrix, split: &Bipartition) -> Result<f64> {
    check_split(rho, split)?;
    let s_measured = von_neumann_entropy(&partial_trace(rho, split.measured())?);
    let s_rest = von_neumann_entropy(&partial_trace(rho, split.rest())?);
    Ok(s_measured + s_rest - von_neumann_entropy(rho))
}

fn check_split(rho: &DensityMatrix, split: &Bipartition) -> Result<()> {
    if split.n_qubits() != rho.n_qubits() {
        return Err(Error::Dimension(format!(
            "split over {} qubits applied to {}-qubit state",
            split.n_qubits(),
            rho.n_qubits()
        )));
    }
    Ok(())
}

/// Entropy of a possibly sub-normalized Hermitian block, scaled back by its
/// trace weight: returns `p * S(block / p)`.
fn weighted_entropy(block: &ComplexMatrix) -> Result<(f64, f64)> {
    let p = block.trace().re;
    if p <= OUTCOME_CUTOFF {
        return Ok((p.max(0.0), 0.0));
    }
    let normalized = block.scale(1.0 / p);
    // Rank-one conditional states carry zero entropy; skip the eigensolve.
    // Tr(M^2) = sum |m_ij|^2 for Hermitian M.
    let sq_trace = crate::matrix::kahan_sum(normalized.data().iter().map(|z| z.norm_sqr()));
    if (sq_trace - 1.0).abs() <= 1e-12 {
        return Ok((p, 0.0));
    }
    Ok((p, p * entropy_of_hermitian(&normalized)?))
}

/// `sum_a p_a S(rho_rest|a)` for a projective measurement on the measured
/// side. Outcomes with probability below 1e-14 contribute nothing.
pub fn conditional_entropy_after_measurement(
    rho: &DensityMatrix,
    split: &Bipartition,
    basis: &MeasurementBasis,
) -> Result<f64> {
    check_split(rho, split)?;
    let dm = 1usize << split.measured().len();
    if basis.dim() != dm {
        return Err(Error::Dimension(format!(
            "basis dimension {} does not match measured side dimension {}",
            basis.dim(),
            dm
        )));
    }
    let n = rho.n_qubits();
    let meas_idx: Vec<usize> = (0..dm)
        .map(|m| expand_bits(m, split.measured(), n))
        .collect();

    let mut total = 0.0;
    for projector in basis.projectors() {
        // Embed E on the measured qubits, sandwich, reduce to the rest.
        let dim = rho.dim();
        let mut embedded = ComplexMatrix::zeros(dim, dim);
        let dr = 1usize << split.rest().len();
        for m in 0..dm {
            for mp in 0..dm {
                let v = projector.get(m, mp);
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                for u in 0..dr {
                    let u_full = expand_bits(u, split.rest(), n);
                    embedded.set(meas_idx[m] | u_full, meas_idx[mp] | u_full, v);
                }
            }
        }
        let sandwiched = embedded.mul(rho.matrix())?.mul(&embedded)?;
        let block = partial_trace_raw(&sandwiched, n, split.rest());
        let (_, weighted) = weighted_entropy(&block)?;
        total += weighted;
    }
    Ok(total)
}

/// Conditional block for a rank-one measurement column `e` on the measured
/// side: `R[u][v] = sum_{a,b} conj(e_a) e_b rho[(a,u),(b,v)]`.
fn conditional_block(
    rho: &DensityMatrix,
    meas_idx: &[usize],
    rest_idx: &[usize],
    column: &[Complex64],
) -> ComplexMatrix {
    let dr = rest_idx.len();
    let dm = meas_idx.len();
    let mut block = ComplexMatrix::zeros(dr, dr);
    for a in 0..dm {
        let ca = column[a].conj();
        if ca.norm_sqr() == 0.0 {
            continue;
        }
        for b in 0..dm {
            let w = ca * column[b];
            if w.norm_sqr() == 0.0 {
                continue;
            }
            for (u, &ru) in rest_idx.iter().enumerate() {
                let row = meas_idx[a] | ru;
                for (v, &rv) in rest_idx.iter().enumerate() {
                    let acc = block.get(u, v) + w * rho.entry(row, meas_idx[b] | rv);
                    block.set(u, v, acc);
                }
            }
        }
    }
    block
}

fn conditional_entropy_rank1(
    rho: &DensityMatrix,
    meas_idx: &[usize],
    rest_idx: &[usize],
    columns: &[Vec<Complex64>],
) -> f64 {
    let mut total = 0.0;
    for column in columns {
        let block = conditional_block(rho, meas_idx, rest_idx, column);
        let (_, weighted) = weighted_entropy(&block).unwrap_or((0.0, 0.0));
        total += weighted;
    }
    total
}

/// Orthonormal single-qubit basis from two Bloch angles.
fn columns_1q(theta: f64, phi: f64) -> Vec<Vec<Complex64>> {
    let (s, c) = theta.sin_cos();
    let phase = Complex64::from_polar(1.0, phi);
    vec![
        vec![Complex64::new(c, 0.0), phase * s],
        vec![-phase.conj() * s, Complex64::new(c, 0.0)],
    ]
}

/// Two-qubit basis from eight angles: Givens rotations on the index pairs
/// (0,1), (2,3), (0,2), (1,3), each with a mixing angle and a phase.
fn columns_2q(angles: &[f64]) -> Vec<Vec<Complex64>> {
    const PAIRS: [(usize, usize); 4] = [(0, 1), (2, 3), (0, 2), (1, 3)];
    let mut u = ComplexMatrix::identity(4);
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let (s, c) = angles[2 * k].sin_cos();
        let phase = Complex64::from_polar(1.0, angles[2 * k + 1]);
        let mut g = ComplexMatrix::identity(4);
        g.set(i, i, Complex64::new(c, 0.0));
        g.set(i, j, -phase * s);
        g.set(j, i, phase.conj() * s);
        g.set(j, j, Complex64::new(c, 0.0));
        u = u.mul(&g).expect("4x4 product");
    }
    (0..4)
        .map(|k| (0..4).map(|i| u.get(i, k)).collect())
        .collect()
}

/// Quantum discord `D(rest|measured)` across the split:
/// `min_basis sum_a p_a S(rest|a) + S(measured) - S(rho)`.
pub fn discord(rho: &DensityMatrix, split: &Bipartition) -> Result<f64> {
    discord_with_budget(rho, split, None)
}

/// Same as [`discord`] with an optional cap on objective evaluations per
/// optimizer start (used by the CLI smoke budget).
pub fn discord_with_budget(
    rho: &DensityMatrix,
    split: &Bipartition,
    budget: Option<usize>,
) -> Result<f64> {
    check_split(rho, split)?;
    let n = rho.n_qubits();
    let dm = 1usize << split.measured().len();
    let meas_idx: Vec<usize> = (0..dm)
        .map(|m| expand_bits(m, split.measured(), n))
        .collect();
    let dr = 1usize << split.rest().len();
    let rest_idx: Vec<usize> = (0..dr).map(|u| expand_bits(u, split.rest(), n)).collect();

    let opts = NelderMeadOptions {
        max_evals: budget.unwrap_or(2000),
        ..Default::default()
    };

    let min_conditional = match dm {
        2 => {
            let objective = |angles: &[f64]| {
                conditional_entropy_rank1(
                    rho,
                    &meas_idx,
                    &rest_idx,
                    &columns_1q(angles[0], angles[1]),
                )
            };
            let mut starts = Vec::new();
            for i in 0..24 {
                for j in 0..24 {
                    starts.push(vec![
                        i as f64 / 23.0 * std::f64::consts::PI,
                        j as f64 / 24.0 * std::f64::consts::TAU,
                    ]);
                }
            }
            multistart_minimize(objective, &starts, 6, &opts).value
        }
        4 => {
            let objective = |angles: &[f64]| {
                conditional_entropy_rank1(rho, &meas_idx, &rest_idx, &columns_2q(angles))
            };
            let mut starts = vec![vec![0.0; 8]];
            // Coarse lattice over the four mixing angles, phases zero.
            let levels = [
                0.0,
                std::f64::consts::FRAC_PI_4,
                std::f64::consts::FRAC_PI_2,
            ];
            for a in levels {
                for b in levels {
                    for c in levels {
                        for d in levels {
                            starts.push(vec![a, 0.0, b, 0.0, c, 0.0, d, 0.0]);
                        }
                    }
                }
            }
            for p in weyl_points(8, 64) {
                starts.push(
                    p.iter()
                        .enumerate()
                        .map(|(d, &v)| {
                            if d % 2 == 0 {
                                v * std::f64::consts::PI
                            } else {
                                v * std::f64::consts::TAU
                            }
                        })
                        .collect(),
                );
            }
            multistart_minimize(objective, &starts, 6, &opts).value
        }
        _ => {
            return Err(Error::InvalidArgument(
                "discord measured side limited to one or two qubits".into(),
            ))
        }
    };

    let s_measured = von_neumann_entropy(&partial_trace(rho, split.measured())?);
    Ok(min_conditional + s_measured - von_neumann_entropy(rho))
}

//! Exact statevectors after each oracle and diffuser half-step of Grover
//! search.
//!
//! Both half-steps act diagonally or through the mean, so states are evolved
//! with the O(2^n) mean-inversion recurrence instead of dense operators.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::PureState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverConfig {
    pub n_qubits: usize,
    pub target: usize,
    pub iterations: usize,
}

impl GroverConfig {
    pub fn new(n_qubits: usize, target: usize, iterations: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("need at least one qubit".into()));
        }
        if target >= 1usize << n_qubits {
            return Err(Error::InvalidArgument(format!(
                "target {target} out of range for {n_qubits} qubits"
            )));
        }
        Ok(Self {
            n_qubits,
            target,
            iterations,
        })
    }
}

/// The labeled state sequence `s, psi1, psi2, ...` produced by alternating
/// oracle and diffuser applications.
#[derive(Debug, Clone)]
pub struct GroverTrace {
    pub config: GroverConfig,
    pub states: Vec<(String, PureState)>,
}

impl GroverTrace {
    pub fn state(&self, label: &str) -> Option<&PureState> {
        self.states.iter().find(|(l, _)| l == label).map(|(_, s)| s)
    }
}

/// Uniform superposition `H^{\otimes n} |0...0>`.
pub fn uniform_state(n_qubits: usize) -> Result<PureState> {
    if n_qubits == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    let dim = 1usize << n_qubits;
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    PureState::new(n_qubits, vec![amp; dim])
}

/// Flip the sign of the marked amplitude.
pub fn apply_oracle(state: &PureState, target: usize) -> Result<PureState> {
    if target >= state.dim() {
        return Err(Error::InvalidArgument(format!(
            "target {target} out of range for {} qubits",
            state.n_qubits()
        )));
    }
    let mut amps = state.amplitudes().to_vec();
    amps[target] = -amps[target];
    PureState::new(state.n_qubits(), amps)
}

/// Inversion about the mean: every amplitude x maps to 2m - x.
pub fn apply_diffuser(state: &PureState) -> Result<PureState> {
    let mean: Complex64 = state.amplitudes().iter().sum::<Complex64>() / state.dim() as f64;
    let amps = state.amplitudes().iter().map(|&x| 2.0 * mean - x).collect();
    PureState::new(state.n_qubits(), amps)
}

/// Run the configured number of iterations, recording every half-step.
/// The result holds `2 * iterations + 1` states.
pub fn trace_states(config: &GroverConfig) -> Result<GroverTrace> {
    let mut states = Vec::with_capacity(2 * config.iterations + 1);
    let mut current = uniform_state(config.n_qubits)?;
    states.push(("s".to_string(), current.clone()));
    for step in 0..config.iterations {
        current = apply_oracle(&current, config.target)?;
        states.push((format!("psi{}", 2 * step + 1), current.clone()));
        current = apply_diffuser(&current)?;
        states.push((format!("psi{}", 2 * step + 2), current.clone()));
    }
    Ok(GroverTrace {
        config: *config,
        states,
    })
}

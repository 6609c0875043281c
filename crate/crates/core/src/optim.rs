//! Deterministic derivative-free minimization: a plain Nelder-Mead simplex
//! plus a fixed-start multistart driver.
//!
//! No randomness anywhere; start points come from grids and a Weyl
//! (irrational-rotation) sequence, so repeated runs produce identical
//! results bit for bit.

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Stop when the spread of simplex values drops below this.
    pub ftol: f64,
    /// Hard cap on objective evaluations.
    pub max_evals: usize,
    /// Initial simplex edge length.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            ftol: 1e-10,
            max_evals: 2000,
            initial_step: 0.25,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Minimize `f` from `x0` with the standard reflection / expansion /
/// contraction / shrink moves.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> MinimizeResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evals)).collect();

    while evals < opts.max_evals {
        // Order ascending; stable so ties keep insertion order.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let reordered: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let revalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = reordered;
        values = revalues;

        if values[n] - values[0] <= opts.ftol {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|x| x[d]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflect: Vec<f64> = (0..n)
            .map(|d| centroid[d] + (centroid[d] - worst[d]))
            .collect();
        let f_reflect = eval(&reflect, &mut evals);

        if f_reflect < values[0] {
            let expand: Vec<f64> = (0..n)
                .map(|d| centroid[d] + 2.0 * (centroid[d] - worst[d]))
                .collect();
            let f_expand = eval(&expand, &mut evals);
            if f_expand < f_reflect {
                simplex[n] = expand;
                values[n] = f_expand;
            } else {
                simplex[n] = reflect;
                values[n] = f_reflect;
            }
        } else if f_reflect < values[n - 1] {
            simplex[n] = reflect;
            values[n] = f_reflect;
        } else {
            let contract: Vec<f64> = if f_reflect < values[n] {
                (0..n)
                    .map(|d| centroid[d] + 0.5 * (reflect[d] - centroid[d]))
                    .collect()
            } else {
                (0..n)
                    .map(|d| centroid[d] + 0.5 * (worst[d] - centroid[d]))
                    .collect()
            };
            let f_contract = eval(&contract, &mut evals);
            if f_contract < values[n].min(f_reflect) {
                simplex[n] = contract;
                values[n] = f_contract;
            } else {
                // Shrink towards the best vertex.
                let best = simplex[0].clone();
                for i in 1..=n {
                    for (x, &anchor) in simplex[i].iter_mut().zip(&best) {
                        *x = anchor + 0.5 * (*x - anchor);
                    }
                    values[i] = eval(&simplex[i], &mut evals);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    MinimizeResult {
        x: simplex[best].clone(),
        value: values[best],
        evals,
    }
}

/// Evaluate every start, refine the `refine_count` most promising with
/// Nelder-Mead (plus a tighter restart of the winner), and return the best.
/// Ties select the earliest start.
pub fn multistart_minimize<F>(
    mut f: F,
    starts: &[Vec<f64>],
    refine_count: usize,
    opts: &NelderMeadOptions,
) -> MinimizeResult
where
    F: FnMut(&[f64]) -> f64,
{
    assert!(!starts.is_empty(), "need at least one start point");
    let mut scored: Vec<(usize, f64)> = starts.iter().enumerate().map(|(i, x)| (i, f(x))).collect();
    let mut total_evals = scored.len();
    scored.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));

    let mut best = MinimizeResult {
        x: starts[scored[0].0].clone(),
        value: scored[0].1,
        evals: 0,
    };
    for &(idx, _) in scored.iter().take(refine_count.max(1)) {
        let result = nelder_mead(&mut f, &starts[idx], opts);
        total_evals += result.evals;
        if result.value < best.value {
            best = result;
        }
    }

    // Polish pass with a small simplex around the winner.
    let polish_opts = NelderMeadOptions {
        initial_step: (opts.initial_step * 0.2).max(1e-4),
        ..*opts
    };
    let polished = nelder_mead(&mut f, &best.x, &polish_opts);
    total_evals += polished.evals;
    if polished.value < best.value {
        best = polished;
    }
    best.evals = total_evals;
    best
}

/// Deterministic low-discrepancy points in the unit cube via a Weyl
/// sequence over square roots of primes.
pub fn weyl_points(dims: usize, count: usize) -> Vec<Vec<f64>> {
    const PRIMES: [u32; 24] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    ];
    let alphas: Vec<f64> = (0..dims)
        .map(|d| (PRIMES[d % PRIMES.len()] as f64).sqrt().fract())
        .collect();
    (1..=count)
        .map(|k| {
            alphas
                .iter()
                .map(|&a| (k as f64 * a).fract())
                .collect::<Vec<f64>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_shifted_quadratic() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + (x[1] + 2.0).powi(2) + 3.0;
        let result = nelder_mead(f, &[0.0, 0.0], &NelderMeadOptions::default());
        assert!((result.x[0] - 1.5).abs() < 1e-4);
        assert!((result.x[1] + 2.0).abs() < 1e-4);
        assert!((result.value - 3.0).abs() < 1e-8);
    }

    #[test]
    fn minimizes_rosenbrock_from_multistart() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let starts: Vec<Vec<f64>> = weyl_points(2, 32)
            .into_iter()
            .map(|p| vec![p[0] * 4.0 - 2.0, p[1] * 4.0 - 2.0])
            .collect();
        let opts = NelderMeadOptions {
            max_evals: 4000,
            ..Default::default()
        };
        let result = multistart_minimize(f, &starts, 6, &opts);
        assert!(result.value < 1e-6, "value {}", result.value);
    }

    #[test]
    fn deterministic_across_runs() {
        let f = |x: &[f64]| x[0].sin() * (3.0 * x[0]).cos() + 0.1 * x[0] * x[0];
        let starts = weyl_points(1, 16);
        let a = multistart_minimize(f, &starts, 4, &NelderMeadOptions::default());
        let b = multistart_minimize(f, &starts, 4, &NelderMeadOptions::default());
        assert_eq!(a.x, b.x);
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn respects_eval_budget() {
        let mut count = 0usize;
        let f = |x: &[f64]| {
            count += 1;
            x[0] * x[0]
        };
        let opts = NelderMeadOptions {
            max_evals: 40,
            ftol: 0.0,
            ..Default::default()
        };
        let result = nelder_mead(f, &[5.0], &opts);
        assert!(result.evals <= 45); // one move may finish past the cap
        assert!(count == result.evals);
    }
}

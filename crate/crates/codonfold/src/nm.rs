//! Generic Nelder-Mead simplex minimizer.

/// Simplex coefficients and termination settings.
#[derive(Debug, Clone)]
pub struct NmOptions {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Initial simplex = x0 plus `initial_step` along each axis.
    pub initial_step: f64,
    /// Converged when the value spread across the simplex drops below this
    /// and the vertex spread drops below `x_tol`.
    pub f_tol: f64,
    pub x_tol: f64,
    pub max_iterations: usize,
}

impl Default for NmOptions {
    fn default() -> Self {
        NmOptions {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_step: 1.0,
            f_tol: 1e-6,
            x_tol: 1e-4,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NmOutcome {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best simplex value after each iteration; nonincreasing.
    pub trace: Vec<f64>,
}

/// Minimizes `f` starting from `x0`. The objective may fail; the first
/// error aborts the search.
pub fn try_minimize<E>(
    mut f: impl FnMut(&[f64]) -> Result<f64, E>,
    x0: &[f64],
    options: &NmOptions,
) -> Result<NmOutcome, E> {
    let dim = x0.len();
    assert!(dim >= 1, "need at least one variable");
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], count: &mut usize| -> Result<f64, E> {
        *count += 1;
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = eval(x0, &mut evaluations)?;
    simplex.push((x0.to_vec(), v0));
    for axis in 0..dim {
        let mut x = x0.to_vec();
        x[axis] += options.initial_step;
        let v = eval(&x, &mut evaluations)?;
        simplex.push((x, v));
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut trace = Vec::new();
    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < options.max_iterations {
        let f_spread = simplex[dim].1 - simplex[0].1;
        let x_spread = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        if f_spread < options.f_tol && x_spread < options.x_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let blend = |a: f64| -> Vec<f64> {
            (0..dim)
                .map(|k| centroid[k] + a * (centroid[k] - worst.0[k]))
                .collect()
        };

        let reflected = blend(options.reflection);
        let f_reflected = eval(&reflected, &mut evaluations)?;
        if f_reflected < simplex[0].1 {
            let expanded = blend(options.reflection * options.expansion);
            let f_expanded = eval(&expanded, &mut evaluations)?;
            simplex[dim] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < simplex[dim - 1].1 {
            simplex[dim] = (reflected, f_reflected);
        } else {
            let (contracted, f_contracted) = if f_reflected < worst.1 {
                let x = blend(options.reflection * options.contraction);
                let v = eval(&x, &mut evaluations)?;
                (x, v)
            } else {
                let x = blend(-options.contraction);
                let v = eval(&x, &mut evaluations)?;
                (x, v)
            };
            if f_contracted < f_reflected.min(worst.1) {
                simplex[dim] = (contracted, f_contracted);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    for (coord, anchor) in vertex.0.iter_mut().zip(&best) {
                        *coord = anchor + options.shrink * (*coord - anchor);
                    }
                    vertex.1 = eval(&vertex.0, &mut evaluations)?;
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        trace.push(simplex[0].1);
    }

    Ok(NmOutcome {
        best_point: simplex[0].0.clone(),
        best_value: simplex[0].1,
        iterations,
        evaluations,
        converged,
        trace,
    })
}

/// Infallible convenience wrapper around [`try_minimize`].
pub fn minimize(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    options: &NmOptions,
) -> NmOutcome {
    let result: Result<NmOutcome, std::convert::Infallible> =
        try_minimize(|x| Ok(f(x)), x0, options);
    match result {
        Ok(outcome) => outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl_converges() {
        let outcome = minimize(
            |x| (x[0] - 1.0).powi(2) + (x[1] + 2.0).powi(2) + x[2].powi(2),
            &[0.0, 0.0, 0.0],
            &NmOptions { f_tol: 1e-12, x_tol: 1e-6, max_iterations: 500, ..NmOptions::default() },
        );
        assert!(outcome.converged);
        assert!((outcome.best_point[0] - 1.0).abs() < 1e-4);
        assert!((outcome.best_point[1] + 2.0).abs() < 1e-4);
        assert!(outcome.best_point[2].abs() < 1e-4);
    }

    #[test]
    fn rosenbrock_converges() {
        let outcome = minimize(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            &NmOptions { f_tol: 1e-12, x_tol: 1e-8, max_iterations: 1000, ..NmOptions::default() },
        );
        assert!((outcome.best_point[0] - 1.0).abs() < 1e-3, "{:?}", outcome.best_point);
        assert!((outcome.best_point[1] - 1.0).abs() < 1e-3, "{:?}", outcome.best_point);
    }

    #[test]
    fn trace_is_monotone_nonincreasing() {
        let outcome = minimize(
            |x| x.iter().map(|v| v * v).sum::<f64>(),
            &[3.0, -4.0, 5.0],
            &NmOptions::default(),
        );
        for w in outcome.trace.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn error_aborts_search() {
        let result = try_minimize(
            |x| if x[0] > 1.5 { Err("boom") } else { Ok(x[0] * x[0]) },
            &[1.0],
            &NmOptions::default(),
        );
        assert_eq!(result.unwrap_err(), "boom");
    }

    #[test]
    fn iteration_cap_reports_not_converged() {
        let outcome = minimize(
            |x| (x[0] - 10.0).powi(2),
            &[0.0],
            &NmOptions { max_iterations: 3, ..NmOptions::default() },
        );
        assert!(!outcome.converged);
        assert_eq!(outcome.iterations, 3);
    }
}

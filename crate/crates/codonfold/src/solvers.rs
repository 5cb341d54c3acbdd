//! Ground-state search for QUBO models: exhaustive enumeration, simulated
//! annealing, and a CVaR variational sampler over a simulated layered
//! ansatz.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nm::{self, NmOptions};
use crate::structure::{bits_to_string, QuboModel};

/// Hard cap on exhaustive enumeration.
pub const MAX_EXACT_VARS: usize = 25;
/// Hard cap on statevector simulation.
pub const MAX_QUBITS: usize = 22;

/// Outcome of one solver run.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub bitstring: String,
    pub energy: f64,
    pub feasible: bool,
    pub samples_examined: u64,
    /// Best-so-far energy per solver iteration; nonincreasing.
    pub trace: Vec<f64>,
}

fn finish(qubo: &QuboModel, bits: &[bool], samples: u64, trace: Vec<f64>) -> SolveResult {
    // energy is always re-derived from the bitstring, never carried over
    SolveResult {
        bitstring: bits_to_string(bits),
        energy: qubo.energy(bits),
        feasible: qubo.is_feasible(bits),
        samples_examined: samples,
        trace,
    }
}

/// Lexicographic rank of an assignment (variable 0 is the most significant
/// position of the rendered bitstring).
fn lex_rank(bits: u64, n: usize) -> u64 {
    bits.reverse_bits() >> (64 - n)
}

/// Global minimum by exhaustive enumeration; ties break toward the
/// lexicographically smallest bitstring.
pub fn solve_exact(qubo: &QuboModel) -> Result<SolveResult> {
    let n = qubo.num_vars;
    if n > MAX_EXACT_VARS {
        return Err(Error::TooManyVariables { n, max: MAX_EXACT_VARS });
    }
    if n == 0 {
        return Ok(finish(qubo, &[], 1, vec![qubo.offset]));
    }
    let adjacency = qubo.adjacency();
    let mut state = 0u64;
    let mut energy = qubo.offset;
    let mut best_state = state;
    let mut best_energy = energy;
    let mut trace = vec![best_energy];
    // Gray-code walk: step s flips variable trailing_zeros(s)
    for step in 1u64..(1u64 << n) {
        let var = step.trailing_zeros() as usize;
        let was_set = state >> var & 1 == 1;
        let mut field = qubo.linear[var];
        for &(other, coeff) in &adjacency[var] {
            if state >> other & 1 == 1 {
                field += coeff;
            }
        }
        energy += if was_set { -field } else { field };
        state ^= 1 << var;
        if energy < best_energy
            || (energy == best_energy && lex_rank(state, n) < lex_rank(best_state, n))
        {
            best_energy = energy;
            best_state = state;
            trace.push(best_energy);
        }
    }
    let bits: Vec<bool> = (0..n).map(|k| best_state >> k & 1 == 1).collect();
    Ok(finish(qubo, &bits, 1 << n, trace))
}

/// Simulated-annealing settings. `sweeps` single-flip passes per restart,
/// geometric temperature schedule.
#[derive(Debug, Clone)]
pub struct SaConfig {
    pub sweeps: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SaConfig {
    fn default() -> Self {
        SaConfig { sweeps: 256, restarts: 8, seed: 0 }
    }
}

/// Simulated annealing over single-bit flips. Deterministic given the seed;
/// the first restart starts from the all-zeros state, later restarts from
/// random states.
pub fn solve_sa(qubo: &QuboModel, config: &SaConfig) -> SolveResult {
    let n = qubo.num_vars;
    if n == 0 {
        return finish(qubo, &[], 0, vec![qubo.offset]);
    }
    let adjacency = qubo.adjacency();
    let max_step: f64 = (0..n)
        .map(|k| {
            qubo.linear[k].abs() + adjacency[k].iter().map(|(_, c)| c.abs()).sum::<f64>()
        })
        .fold(0.0, f64::max)
        .max(1e-12);
    let t_start = 2.0 * max_step;
    let t_end = 1e-3 * max_step.min(1.0);

    let mut best_bits = vec![false; n];
    let mut best_energy = qubo.energy(&best_bits);
    let mut trace = Vec::with_capacity(config.restarts * config.sweeps);
    let mut samples = 0u64;

    for restart in 0..config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(config.seed, restart as u64));
        let mut bits: Vec<bool> = if restart == 0 {
            vec![false; n]
        } else {
            (0..n).map(|_| rng.gen_bool(0.5)).collect()
        };
        let mut energy = qubo.energy(&bits);
        if energy < best_energy {
            best_energy = energy;
            best_bits = bits.clone();
        }
        for sweep in 0..config.sweeps {
            let progress = sweep as f64 / (config.sweeps.max(2) - 1) as f64;
            let temperature = t_start * (t_end / t_start).powf(progress);
            for var in 0..n {
                samples += 1;
                let mut field = qubo.linear[var];
                for &(other, coeff) in &adjacency[var] {
                    if bits[other] {
                        field += coeff;
                    }
                }
                let delta = if bits[var] { -field } else { field };
                if delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature).exp() {
                    bits[var] = !bits[var];
                    energy += delta;
                    if energy < best_energy {
                        best_energy = energy;
                        best_bits = bits.clone();
                    }
                }
            }
            trace.push(best_energy);
        }
    }
    finish(qubo, &best_bits, samples, trace)
}

/// Mean of the smallest `ceil(beta * N)` values: the low-tail objective the
/// variational loop trains against.
pub fn cvar_value(energies: &[f64], beta: f64) -> Result<f64> {
    if energies.is_empty() {
        return Err(Error::EmptySamples);
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidTailFraction(beta));
    }
    let mut sorted = energies.to_vec();
    sorted.sort_by(f64::total_cmp);
    let keep = ((beta * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    Ok(sorted[..keep].iter().sum::<f64>() / keep as f64)
}

/// In-place real statevector of the ansatz; Y rotations and controlled-Z
/// gates have real matrix elements, so amplitudes never leave the reals.
fn ansatz_state_real(angles: &[f64], num_qubits: usize, layers: usize, state: &mut Vec<f64>) {
    assert!(num_qubits >= 1, "ansatz needs at least one qubit");
    assert_eq!(angles.len(), (layers + 1) * num_qubits, "angle count mismatch");
    let dim = 1usize << num_qubits;
    state.clear();
    state.resize(dim, 0.0);
    state[0] = 1.0;

    let apply_ry_layer = |state: &mut [f64], layer_angles: &[f64]| {
        for (qubit, angle) in layer_angles.iter().enumerate() {
            let (sin, cos) = (angle / 2.0).sin_cos();
            let low = 1usize << qubit;
            for block in state.chunks_exact_mut(2 * low) {
                let (zeros, ones) = block.split_at_mut(low);
                for (a0, a1) in zeros.iter_mut().zip(ones.iter_mut()) {
                    let new0 = cos * *a0 - sin * *a1;
                    let new1 = sin * *a0 + cos * *a1;
                    *a0 = new0;
                    *a1 = new1;
                }
            }
        }
    };
    let apply_cz_chain = |state: &mut [f64]| {
        for qubit in 0..num_qubits.saturating_sub(1) {
            let mask = (1usize << qubit) | (1usize << (qubit + 1));
            for (base, amp) in state.iter_mut().enumerate() {
                if base & mask == mask {
                    *amp = -*amp;
                }
            }
        }
    };

    for layer in 0..layers {
        apply_ry_layer(state, &angles[layer * num_qubits..(layer + 1) * num_qubits]);
        apply_cz_chain(state);
    }
    apply_ry_layer(state, &angles[layers * num_qubits..]);
}

/// Statevector of the layered ansatz: `layers` blocks of per-qubit Y
/// rotations followed by a linear chain of controlled-Z gates, plus a final
/// rotation layer. `angles` has (layers + 1) * num_qubits entries, qubit 0
/// is the least significant bit of the basis index.
pub fn simulate_ansatz(
    angles: &[f64],
    num_qubits: usize,
    layers: usize,
) -> Result<Vec<Complex64>> {
    if num_qubits > MAX_QUBITS {
        return Err(Error::QubitBoundExceeded { n: num_qubits, max: MAX_QUBITS });
    }
    let mut state = Vec::new();
    ansatz_state_real(angles, num_qubits, layers, &mut state);
    Ok(state.into_iter().map(|a| Complex64::new(a, 0.0)).collect())
}

/// Draws `shots` basis-state indices i.i.d. from |amplitude|^2.
pub fn sample_bitstrings(amplitudes: &[Complex64], shots: usize, seed: u64) -> Vec<usize> {
    let mut cumulative = Vec::with_capacity(amplitudes.len());
    let mut total = 0.0;
    for amp in amplitudes {
        total += amp.norm_sqr();
        cumulative.push(total);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..shots)
        .map(|_| {
            let u: f64 = rng.gen::<f64>() * total;
            cumulative
                .partition_point(|&c| c <= u)
                .min(amplitudes.len() - 1)
        })
        .collect()
}

/// Settings of the CVaR variational solver.
#[derive(Debug, Clone)]
pub struct CvarConfig {
    /// Tail fraction in (0, 1].
    pub beta: f64,
    /// Samples per objective evaluation.
    pub shots: usize,
    /// Entangling layers of the ansatz.
    pub layers: usize,
    pub seed: u64,
    /// Iteration cap of the derivative-free angle optimizer, per restart.
    pub max_iterations: usize,
    /// Simplex restarts: after each capped run the simplex re-forms around
    /// the incumbent best angles with a halved step.
    pub restarts: usize,
}

impl Default for CvarConfig {
    fn default() -> Self {
        CvarConfig {
            beta: 0.25,
            shots: 1 << 13,
            layers: 2,
            seed: 0,
            max_iterations: 100,
            restarts: 1,
        }
    }
}

/// One aggregated sample of the final distribution.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SampleRecord {
    pub bitstring: String,
    pub energy: f64,
    pub count: u64,
    pub feasible: bool,
}

/// Result of the CVaR variational solver: the best feasible observation
/// plus the sampled distribution at the optimized angles.
#[derive(Debug, Clone)]
pub struct CvarOutput {
    pub result: SolveResult,
    /// Distribution sampled at the optimized angles, sorted by energy.
    pub histogram: Vec<SampleRecord>,
}

/// Minimizes the CVaR of the sampled energy distribution over the ansatz
/// angles and returns the best feasible bitstring observed anywhere in the
/// run. Infeasible samples steer the search through their penalized
/// energies but are never returned as solutions; the observation set is
/// seeded with the all-zeros assignment, which is always feasible.
pub fn solve_cvar_variational(qubo: &QuboModel, config: &CvarConfig) -> Result<CvarOutput> {
    if !(config.beta > 0.0 && config.beta <= 1.0) {
        return Err(Error::InvalidTailFraction(config.beta));
    }
    let n = qubo.num_vars;
    if n > MAX_QUBITS {
        return Err(Error::QubitBoundExceeded { n, max: MAX_QUBITS });
    }
    if n == 0 {
        let result = finish(qubo, &[], 1, vec![qubo.offset]);
        return Ok(CvarOutput { result, histogram: Vec::new() });
    }

    let zeros = vec![false; n];
    let mut best_bits = zeros.clone();
    let mut best_energy = qubo.energy(&zeros);
    let mut trace = vec![best_energy];
    let mut samples_examined = 1u64;
    let mut eval_counter = 0u64;

    let mut init_rng = ChaCha8Rng::seed_from_u64(splitmix64(config.seed, u64::MAX));
    let mut incumbent: Vec<f64> = (0..(config.layers + 1) * n)
        .map(|_| init_rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect();

    let mut state_buf: Vec<f64> = Vec::new();
    let mut cdf_buf: Vec<f64> = Vec::new();
    let adjacency = qubo.adjacency();
    // energy of a basis state, via its set bits
    let index_energy = |index: usize| -> f64 {
        let mut total = qubo.offset;
        let mut rest = index;
        while rest != 0 {
            let var = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += qubo.linear[var];
            for &(other, coeff) in &adjacency[var] {
                if other > var && index >> other & 1 == 1 {
                    total += coeff;
                }
            }
        }
        total
    };
    let index_feasible = |index: usize| -> bool {
        qubo.penalty_pairs
            .iter()
            .all(|&(a, b)| !(index >> a & 1 == 1 && index >> b & 1 == 1))
    };

    let observe_impl = |angles: &[f64],
                       counter: u64,
                       best_bits: &mut Vec<bool>,
                       best_energy: &mut f64,
                       samples_examined: &mut u64,
                       state_buf: &mut Vec<f64>,
                       cdf_buf: &mut Vec<f64>|
     -> Vec<f64> {
        ansatz_state_real(angles, n, config.layers, state_buf);
        cdf_buf.clear();
        let mut total = 0.0;
        for amp in state_buf.iter() {
            total += amp * amp;
            cdf_buf.push(total);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(config.seed, counter));
        *samples_examined += config.shots as u64;
        let mut energies = Vec::with_capacity(config.shots);
        for _ in 0..config.shots {
            let u: f64 = rng.gen::<f64>() * total;
            let index = cdf_buf.partition_point(|&c| c <= u).min(cdf_buf.len() - 1);
            let energy = index_energy(index);
            if energy < *best_energy && index_feasible(index) {
                *best_energy = energy;
                *best_bits = (0..n).map(|k| index >> k & 1 == 1).collect();
            }
            energies.push(energy);
        }
        energies
    };

    let mut step = 0.8;
    for _ in 0..config.restarts.max(1) {
        let options = NmOptions {
            initial_step: step,
            f_tol: 1e-9,
            x_tol: 1e-9,
            max_iterations: config.max_iterations,
            ..NmOptions::default()
        };
        let outcome = nm::try_minimize(
            |angles: &[f64]| -> Result<f64> {
                eval_counter += 1;
                let energies = observe_impl(
                    angles,
                    eval_counter,
                    &mut best_bits,
                    &mut best_energy,
                    &mut samples_examined,
                    &mut state_buf,
                    &mut cdf_buf,
                );
                trace.push(best_energy);
                cvar_value(&energies, config.beta)
            },
            &incumbent,
            &options,
        )?;
        incumbent = outcome.best_point;
        step /= 2.0;
    }

    // final distribution at the optimized angles, also folded into the
    // best-observed tracking
    ansatz_state_real(&incumbent, n, config.layers, &mut state_buf);
    let amplitudes: Vec<Complex64> =
        state_buf.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let draws = sample_bitstrings(&amplitudes, config.shots, splitmix64(config.seed, 0));
    samples_examined += draws.len() as u64;
    let mut counts: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
    for index in &draws {
        *counts.entry(*index).or_insert(0) += 1;
    }
    let mut histogram = Vec::with_capacity(counts.len());
    for (index, count) in counts {
        let bits: Vec<bool> = (0..n).map(|k| index >> k & 1 == 1).collect();
        let energy = qubo.energy(&bits);
        let feasible = qubo.is_feasible(&bits);
        if feasible && energy < best_energy {
            best_energy = energy;
            best_bits = bits.clone();
        }
        histogram.push(SampleRecord { bitstring: bits_to_string(&bits), energy, count, feasible });
    }
    histogram.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.bitstring.cmp(&b.bitstring)));
    trace.push(best_energy);

    let result = finish(qubo, &best_bits, samples_examined, trace);
    Ok(CvarOutput { result, histogram })
}

/// Splits one seed into independent streams.
pub fn splitmix64(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(stream.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

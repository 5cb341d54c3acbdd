//! The composite CAI/MFE objective, the outer simplex search over the
//! codon weight vector, and the per-sequence fold cache.

use std::collections::HashMap;

use crate::codon::{cai, CodonProblem, CodonTable, ScoringOptions, Theta};
use crate::energy::{mfe_eval, EnergyParams};
use crate::error::{Error, Result};
use crate::nm::{self, NmOptions};
use crate::seq::{render_dot_bracket, AminoAcidSeq, NucleotideSeq};
use crate::solvers::{
    solve_cvar_variational, solve_exact, solve_sa, splitmix64, CvarConfig, SaConfig,
};
use crate::structure::{bits_from_string, build_model, decode, to_penalty_qubo, Decoded, UaRule};

/// Structure-solver backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Exact,
    Sa,
    Cvar,
}

impl SolverChoice {
    pub fn name(self) -> &'static str {
        match self {
            SolverChoice::Exact => "exact",
            SolverChoice::Sa => "sa",
            SolverChoice::Cvar => "cvar",
        }
    }
}

/// Every knob of one optimization run. The defaults make
/// `optimize(TLPKAD)` runnable with no further setup.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Weight of the CAI term in `f = alpha * CAI + MFE`.
    pub alpha: f64,
    pub theta0: Theta,
    pub scoring: ScoringOptions,
    pub min_loop: usize,
    /// Reward for adjacent selected quartets (kcal/mol scale).
    pub stack_reward: f64,
    /// Penalty for U-A terminal quartets.
    pub ua_penalty: f64,
    pub ua_rule: UaRule,
    /// Conflict penalty weight; derived from the model when unset.
    pub penalty_weight: Option<f64>,
    pub solver: SolverChoice,
    pub sa_sweeps: usize,
    pub sa_restarts: usize,
    pub cvar: CvarSettings,
    pub seed: u64,
    pub nm: NmOptions,
    pub use_cache: bool,
}

/// CVaR solver settings carried by the pipeline (the per-call seed is
/// derived from the run seed).
#[derive(Debug, Clone)]
pub struct CvarSettings {
    pub beta: f64,
    pub shots: usize,
    pub layers: usize,
    pub max_iterations: usize,
    pub restarts: usize,
}

impl Default for CvarSettings {
    fn default() -> Self {
        let d = CvarConfig::default();
        CvarSettings {
            beta: d.beta,
            shots: d.shots,
            layers: d.layers,
            max_iterations: d.max_iterations,
            restarts: d.restarts,
        }
    }
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            alpha: -0.5,
            theta0: Theta::ZERO,
            scoring: ScoringOptions::default(),
            min_loop: crate::structure::DEFAULT_MIN_LOOP,
            stack_reward: -1.0,
            ua_penalty: 0.5,
            ua_rule: UaRule::default(),
            penalty_weight: None,
            solver: SolverChoice::Exact,
            sa_sweeps: SaConfig::default().sweeps,
            sa_restarts: SaConfig::default().restarts,
            cvar: CvarSettings::default(),
            seed: 0,
            nm: NmOptions::default(),
            use_cache: true,
        }
    }
}

/// One evaluation of the composite objective.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EvalRecord {
    pub theta: Theta,
    pub sequence: String,
    pub cai: f64,
    pub structure: String,
    pub mfe: f64,
    /// alpha * cai + mfe.
    pub objective: f64,
    pub solver_iterations: usize,
    pub solver_samples: u64,
    pub cache_hit: bool,
}

/// Solved foldings keyed by nucleotide sequence, so repeated codon
/// selections skip the structure solver. Entries are pure functions of the
/// run inputs; sharing the map across readers cannot change results.
#[derive(Debug, Default)]
pub struct FoldCache {
    entries: HashMap<String, (String, f64)>,
    hits: u64,
}

impl FoldCache {
    pub fn new() -> FoldCache {
        FoldCache::default()
    }

    fn get(&mut self, key: &str) -> Option<(String, f64)> {
        let found = self.entries.get(key).cloned();
        if found.is_some() {
            self.hits += 1;
        }
        found
    }

    fn insert(&mut self, key: String, structure: String, mfe: f64) {
        self.entries.insert(key, (structure, mfe));
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn fnv1a64(text: &str) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in text.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn solve_structure(
    nt: &NucleotideSeq,
    params: &EnergyParams,
    config: &PipelineConfig,
) -> Result<(String, f64, usize, u64)> {
    let model = build_model(
        nt,
        params,
        config.stack_reward,
        config.ua_penalty,
        config.min_loop,
        config.ua_rule,
    )?;
    let qubo = to_penalty_qubo(&model, config.penalty_weight)?;
    // the solver seed depends on the sequence, not the evaluation index:
    // cached and uncached runs of the same sequence then agree exactly
    let seed = splitmix64(config.seed, fnv1a64(&nt.to_string()));
    let result = match config.solver {
        SolverChoice::Exact => solve_exact(&qubo)?,
        SolverChoice::Sa => solve_sa(
            &qubo,
            &SaConfig { sweeps: config.sa_sweeps, restarts: config.sa_restarts, seed },
        ),
        SolverChoice::Cvar => {
            solve_cvar_variational(
                &qubo,
                &CvarConfig {
                    beta: config.cvar.beta,
                    shots: config.cvar.shots,
                    layers: config.cvar.layers,
                    max_iterations: config.cvar.max_iterations,
                    restarts: config.cvar.restarts,
                    seed,
                },
            )?
            .result
        }
    };
    let bits = bits_from_string(&result.bitstring);
    let pairs = match decode(&bits, &model.universe) {
        Decoded::Feasible(pairs) => pairs,
        Decoded::Infeasible { violated } => {
            return Err(Error::InfeasibleResult(format!(
                "{} conflict pair(s) violated; raise the penalty weight",
                violated.len()
            )))
        }
    };
    let mfe = mfe_eval(nt, &pairs, params)?;
    Ok((
        render_dot_bracket(&pairs),
        mfe,
        result.trace.len(),
        result.samples_examined,
    ))
}

/// Runs one composite-objective evaluation: codon selection at the given
/// weights, CAI, structure prediction (cache-aware), MFE, and
/// `f = alpha * CAI + MFE`.
pub fn composite_objective(
    amino: &AminoAcidSeq,
    theta: Theta,
    table: &CodonTable,
    params: &EnergyParams,
    config: &PipelineConfig,
    cache: &mut FoldCache,
) -> Result<EvalRecord> {
    let problem = CodonProblem::new(amino, table, theta, config.scoring)?;
    let solution = crate::codon::solve_codon(&problem);
    let sequence = solution.sequence;
    let cai_value = cai(&sequence, table)?;
    let key = sequence.to_string();

    let (structure, mfe, solver_iterations, solver_samples, cache_hit) =
        if let Some((structure, mfe)) = config.use_cache.then(|| cache.get(&key)).flatten() {
            (structure, mfe, 0, 0, true)
        } else {
            let (structure, mfe, iters, samples) = solve_structure(&sequence, params, config)?;
            if config.use_cache {
                cache.insert(key.clone(), structure.clone(), mfe);
            }
            (structure, mfe, iters, samples, false)
        };

    let objective = config.alpha * cai_value + mfe;
    Ok(EvalRecord {
        theta,
        sequence: key,
        cai: cai_value,
        structure,
        mfe,
        objective,
        solver_iterations,
        solver_samples,
        cache_hit,
    })
}

/// Binds an amino sequence, data tables, and a fold cache into a reusable
/// objective evaluator.
pub struct Evaluator<'a> {
    amino: &'a AminoAcidSeq,
    table: &'a CodonTable,
    params: &'a EnergyParams,
    config: &'a PipelineConfig,
    cache: FoldCache,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        amino: &'a AminoAcidSeq,
        table: &'a CodonTable,
        params: &'a EnergyParams,
        config: &'a PipelineConfig,
    ) -> Evaluator<'a> {
        Evaluator { amino, table, params, config, cache: FoldCache::new() }
    }

    pub fn evaluate(&mut self, theta: Theta) -> Result<EvalRecord> {
        composite_objective(
            self.amino,
            theta,
            self.table,
            self.params,
            self.config,
            &mut self.cache,
        )
    }

    pub fn cache(&self) -> &FoldCache {
        &self.cache
    }
}

/// Result of the outer simplex search.
#[derive(Debug, Clone)]
pub struct NmRun {
    pub best_theta: Theta,
    pub best: EvalRecord,
    /// Every objective evaluation, in order.
    pub history: Vec<EvalRecord>,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best objective per iteration; nonincreasing.
    pub trace: Vec<f64>,
}

/// Standard Nelder-Mead over the weight vector. The history records every
/// function evaluation; hitting the iteration cap is reported through
/// `converged`, not as an error.
pub fn nelder_mead<F>(mut objective: F, theta0: Theta, options: &NmOptions) -> Result<NmRun>
where
    F: FnMut(Theta) -> Result<EvalRecord>,
{
    let mut history: Vec<EvalRecord> = Vec::new();
    let mut best: Option<EvalRecord> = None;
    let outcome = nm::try_minimize(
        |x: &[f64]| -> Result<f64> {
            let record = objective(Theta::from_slice(x))?;
            if best
                .as_ref()
                .is_none_or(|b| record.objective < b.objective)
            {
                best = Some(record.clone());
            }
            let value = record.objective;
            history.push(record);
            Ok(value)
        },
        &theta0.as_array(),
        options,
    )?;
    let best = best.expect("at least one evaluation ran");
    debug_assert_eq!(best.objective, outcome.best_value);
    Ok(NmRun {
        best_theta: best.theta,
        best,
        history,
        iterations: outcome.iterations,
        evaluations: outcome.evaluations,
        converged: outcome.converged,
        trace: outcome.trace,
    })
}

/// Final report of one optimization run, also the JSON wire format of the
/// `optimize` command.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub aa: String,
    pub nt: String,
    pub cai: f64,
    pub mfe: f64,
    pub structure: String,
    pub objective: f64,
    pub theta: [f64; 3],
    pub alpha: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub cache_hits: u64,
    pub converged: bool,
    pub solver: SolverChoice,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub report: RunReport,
    pub best: EvalRecord,
    pub history: Vec<EvalRecord>,
}

/// Full workflow: a simplex search over the codon weights, each evaluation
/// running codon selection, CAI, structure prediction, and MFE scoring.
/// Deterministic given the seed and solver choice.
pub fn optimize(
    amino: &AminoAcidSeq,
    table: &CodonTable,
    params: &EnergyParams,
    config: &PipelineConfig,
) -> Result<OptimizeOutcome> {
    let mut evaluator = Evaluator::new(amino, table, params, config);
    let run = nelder_mead(|theta| evaluator.evaluate(theta), config.theta0, &config.nm)?;
    let report = RunReport {
        schema: 1,
        aa: amino.to_string(),
        nt: run.best.sequence.clone(),
        cai: run.best.cai,
        mfe: run.best.mfe,
        structure: run.best.structure.clone(),
        objective: run.best.objective,
        theta: run.best.theta.as_array(),
        alpha: config.alpha,
        iterations: run.iterations,
        evaluations: run.evaluations,
        cache_hits: evaluator.cache().hits(),
        converged: run.converged,
        solver: config.solver,
        seed: config.seed,
    };
    Ok(OptimizeOutcome { report, best: run.best, history: run.history })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (&'static CodonTable, &'static EnergyParams, PipelineConfig) {
        (CodonTable::bundled(), EnergyParams::bundled(), PipelineConfig::default())
    }

    #[test]
    fn record_objective_is_exact_arithmetic() {
        let (table, params, config) = setup();
        let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
        let mut cache = FoldCache::new();
        let record = composite_objective(
            &amino,
            Theta::new(0.955, 6.476, 7.234),
            table,
            params,
            &config,
            &mut cache,
        )
        .unwrap();
        assert!((record.objective - (config.alpha * record.cai + record.mfe)).abs() < 1e-12);
    }

    #[test]
    fn alpha_zero_objective_equals_mfe() {
        let (table, params, mut config) = setup();
        config.alpha = 0.0;
        let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
        let mut cache = FoldCache::new();
        let record =
            composite_objective(&amino, Theta::ZERO, table, params, &config, &mut cache).unwrap();
        assert_eq!(record.objective, record.mfe);
    }

    #[test]
    fn repeated_theta_hits_cache_with_identical_value() {
        let (table, params, config) = setup();
        let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
        let mut evaluator = Evaluator::new(&amino, table, params, &config);
        let theta = Theta::new(1.0, 2.0, 3.0);
        let first = evaluator.evaluate(theta).unwrap();
        let second = evaluator.evaluate(theta).unwrap();
        assert!(!first.cache_hit);
        assert!(second.cache_hit);
        assert_eq!(first.objective, second.objective);
        assert_eq!(first.structure, second.structure);
        assert_eq!(evaluator.cache().hits(), 1);
    }

    #[test]
    fn paper_scale_arithmetic_identity() {
        // f(CAI, MFE) at the reported operating point
        let f: f64 = -0.5 * 0.718 + -8.100;
        assert!((f - -8.459).abs() < 1e-12);
    }

    #[test]
    fn forced_sequence_has_no_codon_freedom() {
        let (table, params, config) = setup();
        let amino = AminoAcidSeq::parse("MW").unwrap();
        let outcome = optimize(&amino, table, params, &config).unwrap();
        assert_eq!(outcome.report.nt, "AUGUGG");
        for record in &outcome.history {
            assert_eq!(record.sequence, "AUGUGG");
        }
        assert!(outcome.report.converged);
    }

    #[test]
    fn cache_transparency_same_report_modulo_hits() {
        let (table, params, mut config) = setup();
        config.solver = SolverChoice::Sa;
        config.seed = 5;
        let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
        let with_cache = optimize(&amino, table, params, &config).unwrap();
        config.use_cache = false;
        let without_cache = optimize(&amino, table, params, &config).unwrap();
        assert_eq!(with_cache.report.nt, without_cache.report.nt);
        assert_eq!(with_cache.report.objective, without_cache.report.objective);
        assert_eq!(with_cache.report.structure, without_cache.report.structure);
        assert_eq!(with_cache.report.theta, without_cache.report.theta);
        assert_eq!(with_cache.report.iterations, without_cache.report.iterations);
        assert_eq!(with_cache.report.evaluations, without_cache.report.evaluations);
        assert_eq!(without_cache.report.cache_hits, 0);
        // every evaluation agrees pointwise
        for (a, b) in with_cache.history.iter().zip(&without_cache.history) {
            assert_eq!(a.objective, b.objective, "theta {:?}", a.theta);
        }
    }

    #[test]
    fn optimize_is_deterministic() {
        let (table, params, mut config) = setup();
        config.seed = 7;
        let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
        let a = optimize(&amino, table, params, &config).unwrap();
        let b = optimize(&amino, table, params, &config).unwrap();
        assert_eq!(
            serde_json::to_string(&a.report).unwrap(),
            serde_json::to_string(&b.report).unwrap()
        );
    }

    #[test]
    fn best_trace_is_monotone() {
        let (table, params, config) = setup();
        let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
        let mut evaluator = Evaluator::new(&amino, table, params, &config);
        let run = nelder_mead(|t| evaluator.evaluate(t), Theta::ZERO, &config.nm).unwrap();
        for w in run.trace.windows(2) {
            assert!(w[1] <= w[0]);
        }
        assert_eq!(run.evaluations, run.history.len());
    }
}

//! Joint codon-usage and RNA secondary-structure optimization for mRNA
//! design.
//!
//! The crate turns an amino-acid sequence into a nucleotide sequence that
//! balances codon adaptation against folding stability. An outer
//! derivative-free search tunes the weight vector of an exactly solvable
//! codon-selection problem; each candidate sequence is folded by a
//! quartet-based quadratic binary model (solved exactly, by simulated
//! annealing, or by a CVaR variational sampler) and scored with a
//! nearest-neighbor free-energy model. The composite objective is
//! `f = alpha * CAI + MFE`.
//!
//! ```
//! use codonfold::prelude::*;
//!
//! let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
//! let outcome = optimize(
//!     &amino,
//!     CodonTable::bundled(),
//!     EnergyParams::bundled(),
//!     &PipelineConfig::default(),
//! )
//! .unwrap();
//! assert_eq!(outcome.report.nt.len(), 18);
//! ```

pub mod codon;
pub mod energy;
pub mod error;
pub mod nm;
pub mod pipeline;
pub mod seq;
pub mod solvers;
pub mod structure;

pub use error::{Error, Result};

/// The commonly used types and entry points.
pub mod prelude {
    pub use crate::codon::{
        cai, gc_count, rarity, repeat_score, solve_codon, solve_codon_brute_force, CodonProblem,
        CodonSolution, CodonTable, RaritySign, RepeatRule, ScoringOptions, Theta,
    };
    pub use crate::energy::{
        decompose_loops, energy_breakdown, mfe_eval, stack_energy, EnergyParams,
    };
    pub use crate::error::{Error, Result};
    pub use crate::nm::NmOptions;
    pub use crate::pipeline::{
        composite_objective, nelder_mead, optimize, EvalRecord, Evaluator, FoldCache,
        OptimizeOutcome, PipelineConfig, RunReport, SolverChoice,
    };
    pub use crate::seq::{
        parse_dot_bracket, render_dot_bracket, translate, AminoAcidSeq, Base, NucleotideSeq,
        PairSet,
    };
    pub use crate::solvers::{
        cvar_value, sample_bitstrings, simulate_ansatz, solve_cvar_variational, solve_exact,
        solve_sa, CvarConfig, CvarOutput, SaConfig, SampleRecord, SolveResult,
    };
    pub use crate::structure::{
        build_model, decode, enumerate_quartets, quartets_conflict, stacking_partners,
        to_penalty_qubo, ua_terminal_set, valid_pair, Decoded, Quartet, QuartetUniverse,
        QuboModel, StructureModel, UaRule,
    };
}

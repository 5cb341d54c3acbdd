//! Quartet-based secondary-structure model: enumeration and preprocessing,
//! the constrained quadratic objective, penalty-QUBO conversion, and
//! bitstring decoding.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::energy::EnergyParams;
use crate::error::{Error, Result};
use crate::seq::{Base, NucleotideSeq, PairSet};

/// Watson-Crick or wobble base pair test.
pub fn valid_pair(b1: Base, b2: Base) -> bool {
    matches!(
        (b1, b2),
        (Base::A, Base::U)
            | (Base::U, Base::A)
            | (Base::C, Base::G)
            | (Base::G, Base::C)
            | (Base::G, Base::U)
            | (Base::U, Base::G)
    )
}

/// Two consecutive base pairs (i, j) and (i+1, j-1), the binary variable
/// unit of the structure model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quartet {
    pub i: usize,
    pub j: usize,
    pub outer_bases: (Base, Base),
    pub inner_bases: (Base, Base),
}

impl Quartet {
    pub fn outer(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn inner(&self) -> (usize, usize) {
        (self.i + 1, self.j - 1)
    }

    /// The two base pairs of the quartet.
    pub fn pairs(&self) -> [(usize, usize); 2] {
        [self.outer(), self.inner()]
    }
}

/// Default minimum number of unpaired bases enclosed by the inner pair.
pub const DEFAULT_MIN_LOOP: usize = 3;

/// All quartets of `seq` that can participate in a stacked helix.
///
/// A candidate (i, j) requires valid outer and inner pairs and at least
/// `min_loop` unpaired bases under the inner pair (j - i >= min_loop + 3).
/// Candidates with no stacking partner in either direction are dropped:
/// the model only ranges over quartets that can extend a helix, which is
/// what keeps variable counts at the reported scale. The result is sorted
/// by (i, j).
pub fn enumerate_quartets(seq: &NucleotideSeq, min_loop: usize) -> Vec<Quartet> {
    let n = seq.len();
    let mut candidates: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 1..=n {
        for j in (i + min_loop + 3)..=n {
            if valid_pair(seq.base(i), seq.base(j)) && valid_pair(seq.base(i + 1), seq.base(j - 1))
            {
                candidates.insert((i, j));
            }
        }
    }
    candidates
        .iter()
        .filter(|&&(i, j)| {
            candidates.contains(&(i + 1, j - 1)) || (i > 1 && candidates.contains(&(i - 1, j + 1)))
        })
        .map(|&(i, j)| Quartet {
            i,
            j,
            outer_bases: (seq.base(i), seq.base(j)),
            inner_bases: (seq.base(i + 1), seq.base(j - 1)),
        })
        .collect()
}

/// True iff the two quartets cannot coexist: some position would pair with
/// two different partners, or two of their pairs cross. Sharing an
/// identical pair (the stacking overlap) is not a conflict.
pub fn quartets_conflict(q1: &Quartet, q2: &Quartet) -> bool {
    let mut pairs: Vec<(usize, usize)> = q1.pairs().to_vec();
    for p in q2.pairs() {
        if !pairs.contains(&p) {
            pairs.push(p);
        }
    }
    for (k, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[k + 1..] {
            if a == c || a == d || b == c || b == d {
                return true;
            }
            let (a, b, c, d) = if a < c { (a, b, c, d) } else { (c, d, a, b) };
            if a < c && c < b && b < d {
                return true;
            }
        }
    }
    false
}

/// Indices of quartets in `quartets` that stack inward onto `q`, i.e. the
/// quartet shifted inward by one position when it exists.
pub fn stacking_partners(q: &Quartet, quartets: &[Quartet]) -> BTreeSet<usize> {
    quartets
        .iter()
        .enumerate()
        .filter(|(_, other)| other.i == q.i + 1 && other.j == q.j - 1)
        .map(|(idx, _)| idx)
        .collect()
}

/// Which pair of a quartet makes it a U-A terminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UaRule {
    /// Outer pair only (default).
    #[default]
    Outer,
    /// Outer or inner pair.
    OuterOrInner,
}

fn is_ua(bases: (Base, Base)) -> bool {
    matches!(bases, (Base::U, Base::A) | (Base::A, Base::U))
}

/// Indices of quartets whose terminal pair is U-A in either orientation.
pub fn ua_terminal_set(quartets: &[Quartet], rule: UaRule) -> BTreeSet<usize> {
    quartets
        .iter()
        .enumerate()
        .filter(|(_, q)| match rule {
            UaRule::Outer => is_ua(q.outer_bases),
            UaRule::OuterOrInner => is_ua(q.outer_bases) || is_ua(q.inner_bases),
        })
        .map(|(idx, _)| idx)
        .collect()
}

/// The preprocessed quartet data of one sequence: variables, conflict
/// pairs, stacking adjacency, and the U-A terminal set.
#[derive(Debug, Clone)]
pub struct QuartetUniverse {
    pub quartets: Vec<Quartet>,
    /// Conflicting index pairs, stored with i < j.
    pub conflicts: Vec<(usize, usize)>,
    /// Per-quartet set of inward stacking partners.
    pub stacking: Vec<BTreeSet<usize>>,
    pub ua_terminal: BTreeSet<usize>,
    pub seq_len: usize,
}

impl QuartetUniverse {
    pub fn build(seq: &NucleotideSeq, min_loop: usize, ua_rule: UaRule) -> QuartetUniverse {
        let quartets = enumerate_quartets(seq, min_loop);
        let mut conflicts = Vec::new();
        for a in 0..quartets.len() {
            for b in a + 1..quartets.len() {
                if quartets_conflict(&quartets[a], &quartets[b]) {
                    conflicts.push((a, b));
                }
            }
        }
        let stacking = quartets
            .iter()
            .map(|q| stacking_partners(q, &quartets))
            .collect();
        let ua_terminal = ua_terminal_set(&quartets, ua_rule);
        QuartetUniverse { quartets, conflicts, stacking, ua_terminal, seq_len: seq.len() }
    }

    pub fn num_vars(&self) -> usize {
        self.quartets.len()
    }
}

/// The constrained quadratic model over quartet variables: per-variable
/// stack energies expanded with the U-A terminal term, stacking rewards on
/// quadratic terms, and the conflict pairs as hard constraints.
#[derive(Debug, Clone)]
pub struct StructureModel {
    pub universe: QuartetUniverse,
    /// Raw stack energy of each quartet.
    pub stack_energies: Vec<f64>,
    pub linear: Vec<f64>,
    /// Quadratic coefficients keyed by variable pair (i < j).
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
    pub stack_reward: f64,
    pub ua_penalty: f64,
}

impl StructureModel {
    /// Objective value of an assignment, ignoring the constraints.
    pub fn objective(&self, bits: &[bool]) -> f64 {
        assert_eq!(bits.len(), self.linear.len());
        let mut total = self.offset;
        for (idx, &on) in bits.iter().enumerate() {
            if on {
                total += self.linear[idx];
            }
        }
        for (&(a, b), &coeff) in &self.quadratic {
            if bits[a] && bits[b] {
                total += coeff;
            }
        }
        total
    }

    pub fn is_feasible(&self, bits: &[bool]) -> bool {
        self.universe
            .conflicts
            .iter()
            .all(|&(a, b)| !(bits[a] && bits[b]))
    }

    pub fn num_vars(&self) -> usize {
        self.linear.len()
    }
}

/// Builds the quadratic model for a sequence.
///
/// Linear terms carry the quartet stack energies plus the expansion of the
/// U-A terminal term `p * sum_i sum_{j in QUA} q_i (1 - q_j)`: every
/// variable gains `p * |QUA|`, QUA members lose `p` back (the diagonal
/// q_j(1-q_j) term vanishes on binaries), and each cross pair (i, j in QUA,
/// i != j) contributes -p quadratically. Stacking adds `r * q_i q_j` for
/// inward partners.
pub fn build_model(
    seq: &NucleotideSeq,
    params: &EnergyParams,
    stack_reward: f64,
    ua_penalty: f64,
    min_loop: usize,
    ua_rule: UaRule,
) -> Result<StructureModel> {
    let universe = QuartetUniverse::build(seq, min_loop, ua_rule);
    let n = universe.num_vars();
    let mut stack_energies = Vec::with_capacity(n);
    for q in &universe.quartets {
        stack_energies.push(params.stack_energy(q.outer_bases, q.inner_bases)?);
    }

    let qua_size = universe.ua_terminal.len() as f64;
    let mut linear: Vec<f64> = stack_energies
        .iter()
        .map(|e| e + ua_penalty * qua_size)
        .collect();
    for &j in &universe.ua_terminal {
        linear[j] -= ua_penalty;
    }

    let mut quadratic: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut add = |a: usize, b: usize, coeff: f64| {
        let key = if a < b { (a, b) } else { (b, a) };
        *quadratic.entry(key).or_insert(0.0) += coeff;
    };
    for (idx, partners) in universe.stacking.iter().enumerate() {
        for &p in partners {
            add(idx, p, stack_reward);
        }
    }
    for i in 0..n {
        for &j in &universe.ua_terminal {
            if i != j {
                add(i, j, -ua_penalty);
            }
        }
    }

    Ok(StructureModel {
        universe,
        stack_energies,
        linear,
        quadratic,
        offset: 0.0,
        stack_reward,
        ua_penalty,
    })
}

/// An unconstrained quadratic binary model with the conflict constraints
/// folded in as penalty terms.
#[derive(Debug, Clone)]
pub struct QuboModel {
    pub num_vars: usize,
    pub linear: Vec<f64>,
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
    pub penalty_weight: f64,
    /// The constraint pairs the penalties came from; an assignment is
    /// feasible iff no pair is fully selected.
    pub penalty_pairs: Vec<(usize, usize)>,
}

impl QuboModel {
    /// Builds a bare QUBO with no constraint provenance.
    pub fn new(linear: Vec<f64>, quadratic: BTreeMap<(usize, usize), f64>, offset: f64) -> QuboModel {
        QuboModel {
            num_vars: linear.len(),
            linear,
            quadratic,
            offset,
            penalty_weight: 0.0,
            penalty_pairs: Vec::new(),
        }
    }

    pub fn energy(&self, bits: &[bool]) -> f64 {
        assert_eq!(bits.len(), self.num_vars);
        let mut total = self.offset;
        for (idx, &on) in bits.iter().enumerate() {
            if on {
                total += self.linear[idx];
            }
        }
        for (&(a, b), &coeff) in &self.quadratic {
            if bits[a] && bits[b] {
                total += coeff;
            }
        }
        total
    }

    pub fn is_feasible(&self, bits: &[bool]) -> bool {
        self.penalty_pairs.iter().all(|&(a, b)| !(bits[a] && bits[b]))
    }

    /// Violated penalty pairs of an assignment.
    pub fn violations(&self, bits: &[bool]) -> Vec<(usize, usize)> {
        self.penalty_pairs
            .iter()
            .copied()
            .filter(|&(a, b)| bits[a] && bits[b])
            .collect()
    }

    /// Per-variable adjacency (neighbor, coefficient) lists.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.num_vars];
        for (&(a, b), &coeff) in &self.quadratic {
            adj[a].push((b, coeff));
            adj[b].push((a, coeff));
        }
        adj
    }

    /// Sum of absolute linear and quadratic coefficients; bounds the
    /// objective range over all assignments.
    pub fn coefficient_mass(&self) -> f64 {
        self.linear.iter().map(|c| c.abs()).sum::<f64>()
            + self.quadratic.values().map(|c| c.abs()).sum::<f64>()
    }

    /// Serializes the model in the documented text format:
    /// `vars <N> offset <c>`, then `lin <i> <coeff>` and
    /// `quad <i> <j> <coeff>` lines, 0-indexed.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars {} offset {}", self.num_vars, self.offset).unwrap();
        for (idx, coeff) in self.linear.iter().enumerate() {
            if *coeff != 0.0 {
                writeln!(out, "lin {idx} {coeff}").unwrap();
            }
        }
        for (&(a, b), coeff) in &self.quadratic {
            if *coeff != 0.0 {
                writeln!(out, "quad {a} {b} {coeff}").unwrap();
            }
        }
        out
    }
}

/// Folds the conflict constraints into the objective as `lambda * q_i q_j`
/// penalty terms. When unset, `lambda = 1 + 2 * (sum |linear| +
/// sum |quadratic|)`, large enough that any single violation exceeds the
/// whole feasible objective range.
pub fn to_penalty_qubo(model: &StructureModel, lambda: Option<f64>) -> Result<QuboModel> {
    let default_lambda = 1.0
        + 2.0
            * (model.linear.iter().map(|c| c.abs()).sum::<f64>()
                + model.quadratic.values().map(|c| c.abs()).sum::<f64>());
    let lambda = lambda.unwrap_or(default_lambda);
    if lambda <= 0.0 {
        return Err(Error::InvalidPenaltyWeight(lambda));
    }
    let mut quadratic = model.quadratic.clone();
    for &(a, b) in &model.universe.conflicts {
        *quadratic.entry((a, b)).or_insert(0.0) += lambda;
    }
    Ok(QuboModel {
        num_vars: model.num_vars(),
        linear: model.linear.clone(),
        quadratic,
        offset: model.offset,
        penalty_weight: lambda,
        penalty_pairs: model.universe.conflicts.clone(),
    })
}

/// Outcome of decoding a bitstring against a quartet universe.
#[derive(Debug, Clone, PartialEq)]
pub enum Decoded {
    Feasible(PairSet),
    /// The selection violates these conflict pairs.
    Infeasible { violated: Vec<(usize, usize)> },
}

/// Maps a variable assignment to the base-pair set of the selected
/// quartets. Infeasibility (selected conflicting quartets) is a reported
/// outcome, not an error.
pub fn decode(bits: &[bool], universe: &QuartetUniverse) -> Decoded {
    assert_eq!(bits.len(), universe.num_vars());
    let violated: Vec<(usize, usize)> = universe
        .conflicts
        .iter()
        .copied()
        .filter(|&(a, b)| bits[a] && bits[b])
        .collect();
    if !violated.is_empty() {
        return Decoded::Infeasible { violated };
    }
    let mut pairs = BTreeSet::new();
    for (idx, &on) in bits.iter().enumerate() {
        if on {
            for p in universe.quartets[idx].pairs() {
                pairs.insert(p);
            }
        }
    }
    let pairs = PairSet::new(pairs.into_iter().collect(), universe.seq_len)
        .expect("conflict-free quartet selections form a non-crossing matching");
    Decoded::Feasible(pairs)
}

/// Renders an assignment as a 0/1 string, variable 0 first.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parses a 0/1 string into an assignment.
pub fn bits_from_string(text: &str) -> Vec<bool> {
    text.chars().map(|c| c == '1').collect()
}

//! Codon usage data, the weighted codon-selection objective, the CAI
//! metric, and exact solvers for the codon-selection problem.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::error::{Error, Result};
use crate::seq::{AminoAcidSeq, Base, NucleotideSeq, AMINO_ACIDS};

/// One synonymous codon with its usage statistics.
#[derive(Debug, Clone)]
pub struct CodonEntry {
    pub codon: [Base; 3],
    /// Usage fraction among the synonymous codons of the amino acid.
    pub frequency: f64,
    /// Frequency normalized by the most frequent synonymous codon.
    pub weight: f64,
    /// Rarity penalty, -ln(frequency).
    pub rarity: f64,
    /// Number of G and C bases in the codon.
    pub gc: u8,
}

impl CodonEntry {
    pub fn codon_string(&self) -> String {
        self.codon.iter().map(|b| b.to_char()).collect()
    }
}

/// Per-amino-acid synonymous codons with usage fractions and derived scores.
///
/// Within each amino acid, codons are kept in alphabetical order; that order
/// defines the deterministic tie rule used by the solvers.
#[derive(Debug, Clone)]
pub struct CodonTable {
    by_aa: BTreeMap<char, Vec<CodonEntry>>,
    by_codon: HashMap<[Base; 3], char>,
}

impl CodonTable {
    /// Parses a table from its text form: one `AA,codon,frequency` record
    /// per line, `#` comments allowed. All 20 standard amino acids must be
    /// present, each with 1..=6 codons whose fractions sum to 1 within 0.02.
    pub fn parse(text: &str) -> Result<CodonTable> {
        let mut raw: BTreeMap<char, Vec<(String, f64)>> = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::CodonTable(format!(
                    "line {}: expected 'AA,codon,frequency', got '{line}'",
                    lineno + 1
                )));
            }
            let mut aa_chars = fields[0].chars();
            let aa = match (aa_chars.next(), aa_chars.next()) {
                (Some(c), None) => c.to_ascii_uppercase(),
                _ => {
                    return Err(Error::CodonTable(format!(
                        "line {}: amino acid must be a single letter",
                        lineno + 1
                    )))
                }
            };
            if !AMINO_ACIDS.contains(&aa) {
                return Err(Error::CodonTable(format!(
                    "line {}: unknown amino acid '{aa}'",
                    lineno + 1
                )));
            }
            let freq: f64 = fields[2].parse().map_err(|_| {
                Error::CodonTable(format!("line {}: bad frequency '{}'", lineno + 1, fields[2]))
            })?;
            if !(freq > 0.0 && freq <= 1.0) {
                return Err(Error::CodonTable(format!(
                    "line {}: frequency must be in (0, 1], got {freq}",
                    lineno + 1
                )));
            }
            raw.entry(aa).or_default().push((fields[1].to_string(), freq));
        }

        let mut by_aa = BTreeMap::new();
        let mut by_codon = HashMap::new();
        for aa in AMINO_ACIDS {
            let entries = raw
                .remove(&aa)
                .ok_or_else(|| Error::CodonTable(format!("missing amino acid '{aa}'")))?;
            if entries.len() > 6 {
                return Err(Error::CodonTable(format!(
                    "amino acid '{aa}' has {} codons, at most 6 allowed",
                    entries.len()
                )));
            }
            let total: f64 = entries.iter().map(|(_, f)| f).sum();
            if (total - 1.0).abs() > 0.02 {
                return Err(Error::CodonTable(format!(
                    "amino acid '{aa}' frequencies sum to {total:.4}, expected 1 within 0.02"
                )));
            }
            let max_freq = entries.iter().map(|(_, f)| *f).fold(f64::MIN, f64::max);
            let mut parsed: Vec<CodonEntry> = Vec::with_capacity(entries.len());
            for (codon_text, freq) in entries {
                let codon = parse_codon(&codon_text)?;
                if by_codon.insert(codon, aa).is_some() {
                    return Err(Error::CodonTable(format!("duplicate codon '{codon_text}'")));
                }
                parsed.push(CodonEntry {
                    codon,
                    frequency: freq,
                    weight: freq / max_freq,
                    rarity: -freq.ln(),
                    gc: gc_count(&codon),
                });
            }
            parsed.sort_by_key(|e| e.codon);
            by_aa.insert(aa, parsed);
        }
        Ok(CodonTable { by_aa, by_codon })
    }

    pub fn load(path: &Path) -> Result<CodonTable> {
        let text = std::fs::read_to_string(path)?;
        CodonTable::parse(&text)
    }

    /// The H. sapiens usage table shipped with the crate.
    pub fn bundled() -> &'static CodonTable {
        use std::sync::OnceLock;
        static TABLE: OnceLock<CodonTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            CodonTable::parse(include_str!("../data/h_sapiens_codon_usage.csv"))
                .expect("bundled codon table is valid")
        })
    }

    /// Synonymous codons of `aa`, in table (alphabetical) order.
    pub fn codons(&self, aa: char) -> Option<&[CodonEntry]> {
        self.by_aa.get(&aa).map(Vec::as_slice)
    }

    pub fn amino_acid_for(&self, codon: &[Base; 3]) -> Option<char> {
        self.by_codon.get(codon).copied()
    }

    pub fn entry(&self, codon: &[Base; 3]) -> Option<&CodonEntry> {
        let aa = self.amino_acid_for(codon)?;
        self.by_aa[&aa].iter().find(|e| &e.codon == codon)
    }
}

fn parse_codon(text: &str) -> Result<[Base; 3]> {
    let nt = NucleotideSeq::parse(text)
        .map_err(|e| Error::CodonTable(format!("bad codon '{text}': {e}")))?;
    if nt.len() != 3 {
        return Err(Error::CodonTable(format!(
            "bad codon '{text}': expected 3 bases"
        )));
    }
    Ok([nt.bases()[0], nt.bases()[1], nt.bases()[2]])
}

/// Number of G and C bases in a codon.
pub fn gc_count(codon: &[Base; 3]) -> u8 {
    codon
        .iter()
        .filter(|b| matches!(b, Base::G | Base::C))
        .count() as u8
}

/// Rarity penalty of a codon under the default sign convention, -ln(f).
pub fn rarity(codon: &[Base; 3], table: &CodonTable) -> Result<f64> {
    table
        .entry(codon)
        .map(|e| e.rarity)
        .ok_or_else(|| Error::UnknownCodon(codon.iter().map(|b| b.to_char()).collect()))
}

/// How the per-codon rarity term enters the minimization objective.
///
/// The literal log-frequency rule is the default: it reproduces the
/// reported behavior of the weighted codon problem, with the outer search
/// ranging over positive rarity weights. The negated rule turns the term
/// into a nonnegative penalty on rare codons; the two differ only by a
/// sign flip of the rarity weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RaritySign {
    /// +ln(f) (default).
    #[default]
    Log,
    /// -ln(f): rare codons are penalized at positive rarity weights.
    NegLog,
}

/// How the adjacent-codon repeat penalty is computed from the longest
/// single-base run of length m in the 6-base junction string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepeatRule {
    /// (m - 1)^2 (default).
    #[default]
    RunMinusOneSquared,
    /// m^2 - 1.
    RunSquaredMinusOne,
}

/// Repeat penalty for two codons occupying consecutive positions.
pub fn repeat_score(first: &[Base; 3], second: &[Base; 3], rule: RepeatRule) -> u32 {
    let joined = [
        first[0], first[1], first[2], second[0], second[1], second[2],
    ];
    let mut longest = 1u32;
    let mut run = 1u32;
    for w in joined.windows(2) {
        if w[0] == w[1] {
            run += 1;
            longest = longest.max(run);
        } else {
            run = 1;
        }
    }
    match rule {
        RepeatRule::RunMinusOneSquared => (longest - 1) * (longest - 1),
        RepeatRule::RunSquaredMinusOne => longest * longest - 1,
    }
}

/// Codon adaptation index: geometric mean of the usage weights of the
/// codons in the sequence. 1.0 iff every codon is its amino acid's most
/// frequent.
pub fn cai(nt: &NucleotideSeq, table: &CodonTable) -> Result<f64> {
    if !nt.len().is_multiple_of(3) {
        return Err(Error::LengthNotTriplet(nt.len()));
    }
    if nt.is_empty() {
        return Err(Error::EmptySequence);
    }
    let n = nt.len() / 3;
    let mut log_sum = 0.0;
    for k in 0..n {
        let codon = nt.codon(k);
        let entry = table
            .entry(&codon)
            .ok_or_else(|| Error::UnknownCodon(codon.iter().map(|b| b.to_char()).collect()))?;
        log_sum += entry.weight.ln();
    }
    Ok((log_sum / n as f64).exp())
}

/// The weight vector of the variational codon objective: weights on the
/// GC-content, rarity, and repeat terms.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Theta {
    pub gc: f64,
    pub rarity: f64,
    pub repeat: f64,
}

impl Theta {
    pub const ZERO: Theta = Theta { gc: 0.0, rarity: 0.0, repeat: 0.0 };

    pub fn new(gc: f64, rarity: f64, repeat: f64) -> Theta {
        Theta { gc, rarity, repeat }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.gc, self.rarity, self.repeat]
    }

    pub fn from_slice(v: &[f64]) -> Theta {
        Theta { gc: v[0], rarity: v[1], repeat: v[2] }
    }
}

/// Options controlling how codon scores are built from the table.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScoringOptions {
    pub rarity_sign: RaritySign,
    pub repeat_rule: RepeatRule,
}

/// A concrete codon-selection instance: per-position candidate codons with
/// node costs, and edge costs between consecutive positions.
///
/// Node cost of codon j at any position is `theta.gc * gc(j) +
/// theta.rarity * p(j)`; the edge cost between adjacent selections is
/// `theta.repeat * r(j, k)`. Both solvers read these precomputed tables, so
/// their tie-breaking compares bitwise-identical sums.
#[derive(Debug, Clone)]
pub struct CodonProblem {
    amino: AminoAcidSeq,
    choices: Vec<Vec<[Base; 3]>>,
    node_costs: Vec<Vec<f64>>,
    edge_costs: Vec<Vec<Vec<f64>>>,
}

impl CodonProblem {
    pub fn new(
        amino: &AminoAcidSeq,
        table: &CodonTable,
        theta: Theta,
        options: ScoringOptions,
    ) -> Result<CodonProblem> {
        let mut choices = Vec::with_capacity(amino.len());
        let mut node_costs = Vec::with_capacity(amino.len());
        for &aa in amino.residues() {
            let entries = table
                .codons(aa)
                .ok_or_else(|| Error::CodonTable(format!("missing amino acid '{aa}'")))?;
            let codons: Vec<[Base; 3]> = entries.iter().map(|e| e.codon).collect();
            let costs: Vec<f64> = entries
                .iter()
                .map(|e| {
                    let p = match options.rarity_sign {
                        RaritySign::NegLog => e.rarity,
                        RaritySign::Log => -e.rarity,
                    };
                    theta.gc * f64::from(e.gc) + theta.rarity * p
                })
                .collect();
            choices.push(codons);
            node_costs.push(costs);
        }
        let mut edge_costs = Vec::with_capacity(amino.len().saturating_sub(1));
        for i in 0..amino.len().saturating_sub(1) {
            let rows = choices[i]
                .iter()
                .map(|cj| {
                    choices[i + 1]
                        .iter()
                        .map(|ck| {
                            theta.repeat * f64::from(repeat_score(cj, ck, options.repeat_rule))
                        })
                        .collect()
                })
                .collect();
            edge_costs.push(rows);
        }
        Ok(CodonProblem { amino: amino.clone(), choices, node_costs, edge_costs })
    }

    pub fn amino(&self) -> &AminoAcidSeq {
        &self.amino
    }

    pub fn num_positions(&self) -> usize {
        self.choices.len()
    }

    pub fn num_choices(&self, position: usize) -> usize {
        self.choices[position].len()
    }

    /// Objective of a full assignment (one codon index per position).
    pub fn objective_value(&self, assignment: &[usize]) -> Result<f64> {
        assert_eq!(assignment.len(), self.num_positions());
        for (pos, &idx) in assignment.iter().enumerate() {
            if idx >= self.choices[pos].len() {
                return Err(Error::AssignmentOutOfRange { position: pos + 1, index: idx });
            }
        }
        let mut total = 0.0;
        for (pos, &idx) in assignment.iter().enumerate() {
            total += self.node_costs[pos][idx];
        }
        for (pos, w) in assignment.windows(2).enumerate() {
            total += self.edge_costs[pos][w[0]][w[1]];
        }
        Ok(total)
    }

    fn sequence_for(&self, assignment: &[usize]) -> NucleotideSeq {
        let mut bases = Vec::with_capacity(3 * assignment.len());
        for (pos, &idx) in assignment.iter().enumerate() {
            bases.extend_from_slice(&self.choices[pos][idx]);
        }
        NucleotideSeq::from_bases(bases)
    }
}

/// A solved codon-selection instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CodonSolution {
    pub assignment: Vec<usize>,
    pub sequence: NucleotideSeq,
    pub objective: f64,
}

/// Exact solver. The repeat term couples only consecutive positions, so the
/// instance is a shortest path on a layered graph; a backward sweep computes
/// optimal completion costs and a forward pass reconstructs the
/// lexicographically smallest optimal assignment (ties broken toward the
/// lowest codon index in table order).
#[allow(clippy::needless_range_loop)]
pub fn solve_codon(problem: &CodonProblem) -> CodonSolution {
    let n = problem.num_positions();
    // cost_to_go[i][j]: optimal cost of positions i.. with codon j at i.
    let mut cost_to_go: Vec<Vec<f64>> = problem.node_costs.clone();
    for i in (0..n.saturating_sub(1)).rev() {
        for j in 0..problem.choices[i].len() {
            let mut best = f64::INFINITY;
            for k in 0..problem.choices[i + 1].len() {
                let c = problem.edge_costs[i][j][k] + cost_to_go[i + 1][k];
                if c < best {
                    best = c;
                }
            }
            cost_to_go[i][j] += best;
        }
    }
    let mut assignment = Vec::with_capacity(n);
    let mut prev = 0usize;
    for i in 0..n {
        let candidates: Vec<f64> = (0..problem.choices[i].len())
            .map(|j| {
                if i == 0 {
                    cost_to_go[i][j]
                } else {
                    problem.edge_costs[i - 1][prev][j] + cost_to_go[i][j]
                }
            })
            .collect();
        let best = candidates.iter().copied().fold(f64::INFINITY, f64::min);
        // mathematically tied completions accumulate different rounding
        // through the backward sweep; a relative tolerance recovers the
        // tie so the lowest-index rule applies to all of them
        let tolerance = 1e-9 * (1.0 + best.abs());
        let best_idx = candidates
            .iter()
            .position(|&c| c <= best + tolerance)
            .expect("at least one codon per position");
        assignment.push(best_idx);
        prev = best_idx;
    }
    let objective = problem
        .objective_value(&assignment)
        .expect("assignment indices are in range");
    CodonSolution { sequence: problem.sequence_for(&assignment), assignment, objective }
}

const BRUTE_FORCE_LIMIT: f64 = 1e7;

/// Exhaustive oracle for [`solve_codon`]. Enumerates assignments in
/// lexicographic index order and keeps the first strict minimum, which
/// matches the DP tie rule.
pub fn solve_codon_brute_force(problem: &CodonProblem) -> Result<CodonSolution> {
    let n = problem.num_positions();
    let size = problem
        .choices
        .iter()
        .fold(1.0f64, |acc, c| acc * c.len() as f64);
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::InstanceTooLarge { size, limit: BRUTE_FORCE_LIMIT });
    }
    let mut assignment = vec![0usize; n];
    let mut best_assignment = assignment.clone();
    let mut best = problem.objective_value(&assignment)?;
    loop {
        // odometer increment, most significant digit first
        let mut pos = n;
        loop {
            if pos == 0 {
                let objective = problem
                    .objective_value(&best_assignment)
                    .expect("assignment indices are in range");
                return Ok(CodonSolution {
                    sequence: problem.sequence_for(&best_assignment),
                    assignment: best_assignment,
                    objective,
                });
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < problem.choices[pos].len() {
                break;
            }
            assignment[pos] = 0;
        }
        let value = problem.objective_value(&assignment)?;
        if value < best {
            best = value;
            best_assignment.copy_from_slice(&assignment);
        }
    }
}

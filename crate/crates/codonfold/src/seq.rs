//! Validated sequence types and dot-bracket structure handling.
//!
//! Positions are 1-indexed throughout the crate. All types are immutable
//! values after construction.

use std::fmt;

use crate::codon::CodonTable;
use crate::error::{Error, Result};

/// The four RNA bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    A,
    C,
    G,
    U,
}

impl Base {
    pub fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::U => 'U',
        }
    }

    fn from_char(ch: char, normalize_t: bool) -> Option<Base> {
        match ch.to_ascii_uppercase() {
            'A' => Some(Base::A),
            'C' => Some(Base::C),
            'G' => Some(Base::G),
            'U' => Some(Base::U),
            'T' if normalize_t => Some(Base::U),
            _ => None,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// One-letter codes of the 20 standard amino acids.
pub const AMINO_ACIDS: [char; 20] = [
    'A', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'K', 'L', 'M', 'N', 'P', 'Q', 'R', 'S', 'T', 'V', 'W',
    'Y',
];

/// A validated amino-acid sequence (one-letter codes, uppercase).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AminoAcidSeq {
    residues: Vec<char>,
}

impl AminoAcidSeq {
    /// Parses and validates a residue string. Input is case-insensitive;
    /// unknown letters are rejected with their 1-indexed position.
    pub fn parse(text: &str) -> Result<AminoAcidSeq> {
        if text.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut residues = Vec::with_capacity(text.len());
        for (idx, ch) in text.chars().enumerate() {
            let up = ch.to_ascii_uppercase();
            if !AMINO_ACIDS.contains(&up) {
                return Err(Error::InvalidResidue { ch, pos: idx + 1 });
            }
            residues.push(up);
        }
        Ok(AminoAcidSeq { residues })
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn residues(&self) -> &[char] {
        &self.residues
    }
}

impl fmt::Display for AminoAcidSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.residues {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for AminoAcidSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AminoAcidSeq::parse(s)
    }
}

/// A validated RNA sequence over {U, A, C, G}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleotideSeq {
    bases: Vec<Base>,
}

impl NucleotideSeq {
    /// Parses a base string, normalizing 'T' to 'U'.
    pub fn parse(text: &str) -> Result<NucleotideSeq> {
        Self::parse_with(text, true)
    }

    /// Parses a base string; `normalize_t` controls whether DNA-style 'T'
    /// input is accepted and mapped to 'U'.
    pub fn parse_with(text: &str, normalize_t: bool) -> Result<NucleotideSeq> {
        if text.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut bases = Vec::with_capacity(text.len());
        for (idx, ch) in text.chars().enumerate() {
            match Base::from_char(ch, normalize_t) {
                Some(b) => bases.push(b),
                None => return Err(Error::InvalidBase { ch, pos: idx + 1 }),
            }
        }
        Ok(NucleotideSeq { bases })
    }

    pub fn from_bases(bases: Vec<Base>) -> NucleotideSeq {
        NucleotideSeq { bases }
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    /// Base at 1-indexed position `i`.
    pub fn base(&self, i: usize) -> Base {
        self.bases[i - 1]
    }

    /// The codon occupying positions 3k+1..3k+3 (0-indexed codon slot `k`).
    pub fn codon(&self, k: usize) -> [Base; 3] {
        [self.bases[3 * k], self.bases[3 * k + 1], self.bases[3 * k + 2]]
    }
}

impl fmt::Display for NucleotideSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bases {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for NucleotideSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NucleotideSeq::parse(s)
    }
}

/// Translates a nucleotide sequence back to amino acids using the inverse
/// mapping of a codon table. Used to round-trip codon selection.
pub fn translate(nt: &NucleotideSeq, table: &CodonTable) -> Result<AminoAcidSeq> {
    if !nt.len().is_multiple_of(3) {
        return Err(Error::LengthNotTriplet(nt.len()));
    }
    let mut residues = Vec::with_capacity(nt.len() / 3);
    for k in 0..nt.len() / 3 {
        let codon = nt.codon(k);
        match table.amino_acid_for(&codon) {
            Some(aa) => residues.push(aa),
            None => {
                let text: String = codon.iter().map(|b| b.to_char()).collect();
                return Err(Error::UnknownCodon(text));
            }
        }
    }
    Ok(AminoAcidSeq { residues })
}

/// A non-crossing partial matching of sequence positions: each position is
/// in at most one pair and no two pairs interleave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    pairs: Vec<(usize, usize)>,
    n: usize,
}

impl PairSet {
    /// Validates and normalizes a pair list for a sequence of length `n`.
    /// Pairs are 1-indexed with i < j; crossing pairs and reused positions
    /// are rejected.
    pub fn new(mut pairs: Vec<(usize, usize)>, n: usize) -> Result<PairSet> {
        for &(i, j) in &pairs {
            if i == 0 || j == 0 || i >= j || j > n {
                return Err(Error::InvalidPair { i, j, n });
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut seen = vec![false; n + 1];
        for &(i, j) in &pairs {
            for p in [i, j] {
                if seen[p] {
                    return Err(Error::PositionReused(p));
                }
                seen[p] = true;
            }
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[k + 1..] {
                // sorted order guarantees a < c
                if c < b && b < d {
                    return Err(Error::CrossingPairs { a, b, c, d });
                }
            }
        }
        Ok(PairSet { pairs, n })
    }

    pub fn empty(n: usize) -> PairSet {
        PairSet { pairs: Vec::new(), n }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sequence length the matching is defined over.
    pub fn seq_len(&self) -> usize {
        self.n
    }

    /// Partner of each position (0 = unpaired), 1-indexed.
    pub fn partner_table(&self) -> Vec<usize> {
        let mut partner = vec![0usize; self.n + 1];
        for &(i, j) in &self.pairs {
            partner[i] = j;
            partner[j] = i;
        }
        partner
    }
}

/// Parses a dot-bracket string into the pair set it encodes.
pub fn parse_dot_bracket(text: &str) -> Result<PairSet> {
    let mut stack: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    let n = text.chars().count();
    for (idx, ch) in text.chars().enumerate() {
        let pos = idx + 1;
        match ch {
            '.' => {}
            '(' => stack.push(pos),
            ')' => match stack.pop() {
                Some(open) => pairs.push((open, pos)),
                None => {
                    return Err(Error::UnbalancedStructure(format!(
                        "unmatched ')' at position {pos}"
                    )))
                }
            },
            _ => return Err(Error::InvalidStructureChar { ch, pos }),
        }
    }
    if let Some(open) = stack.pop() {
        return Err(Error::UnbalancedStructure(format!(
            "unmatched '(' at position {open}"
        )));
    }
    PairSet::new(pairs, n)
}

/// Renders a pair set in dot-bracket notation. Valid `PairSet`s are
/// non-crossing by construction, so every matching is representable.
pub fn render_dot_bracket(pairs: &PairSet) -> String {
    let mut chars = vec!['.'; pairs.seq_len()];
    for &(i, j) in pairs.pairs() {
        chars[i - 1] = '(';
        chars[j - 1] = ')';
    }
    chars.into_iter().collect()
}

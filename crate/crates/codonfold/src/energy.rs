//! Nearest-neighbor free-energy parameters and structure scoring.
//!
//! The evaluator covers stacks, hairpin/bulge/internal initiations, and
//! terminal A-U/G-U penalties per helix end. Multiloops contribute a
//! configurable constant (0 by default); dangling ends are not modeled.
//! All energies are kcal/mol at 37 C.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::seq::{Base, NucleotideSeq, PairSet};
use crate::structure::valid_pair;

/// Stack lookup key: outer pair over inner pair.
type StackKey = ((Base, Base), (Base, Base));

const MAX_TABULATED_LOOP: usize = 30;
/// 1.75 * R * T with RT = 0.616 kcal/mol at 37 C, for the logarithmic
/// loop-size extrapolation beyond the tabulated range.
const LOOP_EXTRAPOLATION: f64 = 1.75 * 0.616;

/// Loaded nearest-neighbor parameter set.
#[derive(Debug, Clone)]
pub struct EnergyParams {
    stack: HashMap<StackKey, f64>,
    hairpin_init: Vec<f64>,
    bulge_init: Vec<f64>,
    internal_init: Vec<f64>,
    pub terminal_au: f64,
    pub multiloop_const: f64,
}

impl EnergyParams {
    /// Parses the text parameter format:
    ///
    /// ```text
    /// stack XY ZW <value>    # outer pair (X,Y) over inner pair (Z,W)
    /// hairpin <size> <value>
    /// bulge <size> <value>
    /// internal <size> <value>
    /// terminal_au <value>
    /// multiloop <value>
    /// ```
    ///
    /// Every valid pair-over-pair stack entry must be present and negative;
    /// loop initiations must be positive, with hairpin sizes 3..=30, bulge
    /// 1..=30, and internal 2..=30 tabulated.
    pub fn parse(text: &str) -> Result<EnergyParams> {
        let mut stack = HashMap::new();
        let mut hairpin: HashMap<usize, f64> = HashMap::new();
        let mut bulge: HashMap<usize, f64> = HashMap::new();
        let mut internal: HashMap<usize, f64> = HashMap::new();
        let mut terminal_au = None;
        let mut multiloop = None;

        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: String| Error::EnergyParams(format!("line {}: {msg}", lineno + 1));
            match fields[0] {
                "stack" => {
                    if fields.len() != 4 {
                        return Err(bad("expected 'stack XY ZW value'".into()));
                    }
                    let outer = parse_pair(fields[1])
                        .ok_or_else(|| bad(format!("bad pair '{}'", fields[1])))?;
                    let inner = parse_pair(fields[2])
                        .ok_or_else(|| bad(format!("bad pair '{}'", fields[2])))?;
                    if !valid_pair(outer.0, outer.1) || !valid_pair(inner.0, inner.1) {
                        return Err(bad(format!(
                            "'{} {}' is not a valid pair combination",
                            fields[1], fields[2]
                        )));
                    }
                    let value: f64 = fields[3]
                        .parse()
                        .map_err(|_| bad(format!("bad value '{}'", fields[3])))?;
                    if value >= 0.0 {
                        return Err(bad(format!("stack energy must be negative, got {value}")));
                    }
                    stack.insert((outer, inner), value);
                }
                kind @ ("hairpin" | "bulge" | "internal") => {
                    if fields.len() != 3 {
                        return Err(bad(format!("expected '{kind} size value'")));
                    }
                    let size: usize = fields[1]
                        .parse()
                        .map_err(|_| bad(format!("bad size '{}'", fields[1])))?;
                    let value: f64 = fields[2]
                        .parse()
                        .map_err(|_| bad(format!("bad value '{}'", fields[2])))?;
                    if value <= 0.0 {
                        return Err(bad(format!("initiation must be positive, got {value}")));
                    }
                    let map = match kind {
                        "hairpin" => &mut hairpin,
                        "bulge" => &mut bulge,
                        _ => &mut internal,
                    };
                    map.insert(size, value);
                }
                "terminal_au" => {
                    terminal_au = Some(
                        fields[1]
                            .parse()
                            .map_err(|_| bad(format!("bad value '{}'", fields[1])))?,
                    );
                }
                "multiloop" => {
                    multiloop = Some(
                        fields[1]
                            .parse()
                            .map_err(|_| bad(format!("bad value '{}'", fields[1])))?,
                    );
                }
                other => return Err(bad(format!("unknown record '{other}'"))),
            }
        }

        for b1 in [Base::A, Base::C, Base::G, Base::U] {
            for b2 in [Base::A, Base::C, Base::G, Base::U] {
                if !valid_pair(b1, b2) {
                    continue;
                }
                for b3 in [Base::A, Base::C, Base::G, Base::U] {
                    for b4 in [Base::A, Base::C, Base::G, Base::U] {
                        if valid_pair(b3, b4) && !stack.contains_key(&((b1, b2), (b3, b4))) {
                            return Err(Error::EnergyParams(format!(
                                "missing stack entry {}{} over {}{}",
                                b1, b2, b3, b4
                            )));
                        }
                    }
                }
            }
        }
        let collect_range = |map: &HashMap<usize, f64>, name: &str, from: usize| -> Result<Vec<f64>> {
            let mut values = Vec::with_capacity(MAX_TABULATED_LOOP + 1);
            for size in 0..=MAX_TABULATED_LOOP {
                if size < from {
                    values.push(f64::INFINITY);
                } else {
                    match map.get(&size) {
                        Some(v) => values.push(*v),
                        None => {
                            return Err(Error::EnergyParams(format!(
                                "missing {name} initiation for size {size}"
                            )))
                        }
                    }
                }
            }
            Ok(values)
        };
        Ok(EnergyParams {
            stack,
            hairpin_init: collect_range(&hairpin, "hairpin", 3)?,
            bulge_init: collect_range(&bulge, "bulge", 1)?,
            internal_init: collect_range(&internal, "internal", 2)?,
            terminal_au: terminal_au
                .ok_or_else(|| Error::EnergyParams("missing terminal_au entry".into()))?,
            multiloop_const: multiloop.unwrap_or(0.0),
        })
    }

    pub fn load(path: &Path) -> Result<EnergyParams> {
        let text = std::fs::read_to_string(path)?;
        EnergyParams::parse(&text)
    }

    /// The Turner-style parameter file shipped with the crate.
    pub fn bundled() -> &'static EnergyParams {
        use std::sync::OnceLock;
        static PARAMS: OnceLock<EnergyParams> = OnceLock::new();
        PARAMS.get_or_init(|| {
            EnergyParams::parse(include_str!("../data/rna_turner_like.params"))
                .expect("bundled energy parameters are valid")
        })
    }

    /// Free energy of `outer` stacked over `inner`, i.e. the duplex
    /// 5'-X Z-3' / 3'-Y W-5' for outer = (X, Y) and inner = (Z, W).
    pub fn stack_energy(&self, outer: (Base, Base), inner: (Base, Base)) -> Result<f64> {
        self.stack.get(&(outer, inner)).copied().ok_or_else(|| {
            Error::EnergyParams(format!(
                "missing stack entry {}{} over {}{}",
                outer.0, outer.1, inner.0, inner.1
            ))
        })
    }

    pub fn hairpin_init(&self, size: usize) -> f64 {
        extrapolate(&self.hairpin_init, size)
    }

    pub fn bulge_init(&self, size: usize) -> f64 {
        extrapolate(&self.bulge_init, size)
    }

    pub fn internal_init(&self, size: usize) -> f64 {
        extrapolate(&self.internal_init, size)
    }
}

fn parse_pair(text: &str) -> Option<(Base, Base)> {
    let nt = NucleotideSeq::parse(text).ok()?;
    if nt.len() != 2 {
        return None;
    }
    Some((nt.bases()[0], nt.bases()[1]))
}

fn extrapolate(table: &[f64], size: usize) -> f64 {
    if size <= MAX_TABULATED_LOOP {
        table[size]
    } else {
        table[MAX_TABULATED_LOOP]
            + LOOP_EXTRAPOLATION * (size as f64 / MAX_TABULATED_LOOP as f64).ln()
    }
}

/// Standalone stack lookup matching the parameter-file orientation.
pub fn stack_energy(
    outer: (Base, Base),
    inner: (Base, Base),
    params: &EnergyParams,
) -> Result<f64> {
    params.stack_energy(outer, inner)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopKind {
    Hairpin,
    Stack,
    Bulge,
    Internal,
    Multiloop,
    Exterior,
}

/// One loop of the decomposition: the closing pair (absent for the exterior
/// loop), the pairs directly nested inside, and the unpaired count.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Loop {
    pub kind: LoopKind,
    pub closing: Option<(usize, usize)>,
    pub inner_pairs: Vec<(usize, usize)>,
    pub unpaired: usize,
}

#[derive(Debug, Clone)]
pub struct LoopDecomposition {
    pub loops: Vec<Loop>,
}

/// Decomposes a structure into its loops. Every pair closes exactly one
/// loop, and the exterior loop is always present.
pub fn decompose_loops(seq: &NucleotideSeq, pairs: &PairSet) -> Result<LoopDecomposition> {
    if pairs.seq_len() != seq.len() {
        return Err(Error::LengthMismatch { sequence: seq.len(), structure: pairs.seq_len() });
    }
    let partner = pairs.partner_table();
    let scan = |from: usize, to: usize| -> (Vec<(usize, usize)>, usize) {
        let mut children = Vec::new();
        let mut unpaired = 0usize;
        let mut k = from;
        while k <= to {
            if partner[k] > k {
                children.push((k, partner[k]));
                k = partner[k] + 1;
            } else {
                unpaired += 1;
                k += 1;
            }
        }
        (children, unpaired)
    };

    let mut loops = Vec::new();
    let (top, exterior_unpaired) = scan(1, seq.len());
    loops.push(Loop {
        kind: LoopKind::Exterior,
        closing: None,
        inner_pairs: top.clone(),
        unpaired: exterior_unpaired,
    });

    let mut queue = top;
    while let Some((i, j)) = queue.pop() {
        let (children, unpaired) = scan(i + 1, j - 1);
        let kind = match children.len() {
            0 => LoopKind::Hairpin,
            1 if unpaired == 0 => LoopKind::Stack,
            1 => {
                let (k, l) = children[0];
                if k == i + 1 || l == j - 1 {
                    LoopKind::Bulge
                } else {
                    LoopKind::Internal
                }
            }
            _ => LoopKind::Multiloop,
        };
        loops.push(Loop { kind, closing: Some((i, j)), inner_pairs: children.clone(), unpaired });
        queue.extend(children);
    }
    Ok(LoopDecomposition { loops })
}

/// One scored term of a structure's energy breakdown.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EnergyTerm {
    pub kind: LoopKind,
    pub closing: Option<(usize, usize)>,
    pub unpaired: usize,
    pub energy: f64,
}

/// A terminal A-U/G-U penalty charged at one helix end.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TerminalPenalty {
    pub pair: (usize, usize),
    pub energy: f64,
}

/// Full per-loop energy breakdown of a (sequence, structure) pair.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EnergyBreakdown {
    pub loops: Vec<EnergyTerm>,
    pub terminal_penalties: Vec<TerminalPenalty>,
    pub total: f64,
}

/// Scores every loop and helix-end penalty of a structure.
pub fn energy_breakdown(
    seq: &NucleotideSeq,
    pairs: &PairSet,
    params: &EnergyParams,
) -> Result<EnergyBreakdown> {
    let decomposition = decompose_loops(seq, pairs)?;
    let mut terms = Vec::with_capacity(decomposition.loops.len());
    let mut total = 0.0;
    for lp in &decomposition.loops {
        let energy = match lp.kind {
            LoopKind::Exterior => 0.0,
            LoopKind::Hairpin => params.hairpin_init(lp.unpaired),
            LoopKind::Stack => {
                let (i, j) = lp.closing.expect("stack loop has a closing pair");
                let (k, l) = lp.inner_pairs[0];
                params.stack_energy((seq.base(i), seq.base(j)), (seq.base(k), seq.base(l)))?
            }
            LoopKind::Bulge => params.bulge_init(lp.unpaired),
            LoopKind::Internal => params.internal_init(lp.unpaired),
            LoopKind::Multiloop => params.multiloop_const,
        };
        total += energy;
        terms.push(EnergyTerm {
            kind: lp.kind,
            closing: lp.closing,
            unpaired: lp.unpaired,
            energy,
        });
    }

    let mut penalties = Vec::new();
    let partner = pairs.partner_table();
    let is_pair = |i: usize, j: usize| i >= 1 && j <= seq.len() && i < j && partner[i] == j;
    for &(i, j) in pairs.pairs() {
        // helix starts where no pair encloses it directly
        if i > 1 && j < seq.len() && is_pair(i - 1, j + 1) {
            continue;
        }
        let (mut k, mut l) = (i, j);
        while k + 1 < l - 1 && is_pair(k + 1, l - 1) {
            k += 1;
            l -= 1;
        }
        // outer and inner ends of the helix, each charged independently
        for end in [(i, j), (k, l)] {
            let bases = (seq.base(end.0), seq.base(end.1));
            if matches!(
                bases,
                (Base::A, Base::U) | (Base::U, Base::A) | (Base::G, Base::U) | (Base::U, Base::G)
            ) {
                total += params.terminal_au;
                penalties.push(TerminalPenalty { pair: end, energy: params.terminal_au });
            }
        }
    }
    Ok(EnergyBreakdown { loops: terms, terminal_penalties: penalties, total })
}

/// Free energy of a fixed structure under the loaded parameters.
pub fn mfe_eval(seq: &NucleotideSeq, pairs: &PairSet, params: &EnergyParams) -> Result<f64> {
    Ok(energy_breakdown(seq, pairs, params)?.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::parse_dot_bracket;

    fn bundled() -> &'static EnergyParams {
        EnergyParams::bundled()
    }

    #[test]
    fn bundled_gg_cc_stack_is_negative() {
        // 5'GG/3'CC: outer (G,C), inner (G,C)
        let e = bundled().stack_energy((Base::G, Base::C), (Base::G, Base::C)).unwrap();
        assert!(e < 0.0);
        assert!((e - -3.26).abs() < 1e-9);
    }

    #[test]
    fn stack_table_is_rotationally_symmetric() {
        let bases = [Base::A, Base::C, Base::G, Base::U];
        for b1 in bases {
            for b2 in bases {
                for b3 in bases {
                    for b4 in bases {
                        if valid_pair(b1, b2) && valid_pair(b3, b4) {
                            let fwd = bundled().stack_energy((b1, b2), (b3, b4)).unwrap();
                            let rot = bundled().stack_energy((b4, b3), (b2, b1)).unwrap();
                            assert_eq!(fwd, rot);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_pair_lookup_is_an_error() {
        assert!(bundled().stack_energy((Base::A, Base::C), (Base::G, Base::C)).is_err());
    }

    #[test]
    fn missing_hairpin_size_rejected() {
        let text = include_str!("../data/rna_turner_like.params");
        let without: String = text
            .lines()
            .filter(|l| !l.starts_with("hairpin 3 "))
            .collect::<Vec<_>>()
            .join("\n");
        match EnergyParams::parse(&without) {
            Err(Error::EnergyParams(msg)) => assert!(msg.contains("hairpin")),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn comment_only_file_rejected() {
        assert!(EnergyParams::parse("# nothing here\n").is_err());
    }

    #[test]
    fn loop_extrapolation_beyond_table() {
        let p = bundled();
        let base = p.hairpin_init(30);
        let far = p.hairpin_init(60);
        assert!((far - (base + 1.75 * 0.616 * (2.0f64).ln())).abs() < 1e-9);
    }

    #[test]
    fn decompose_simple_hairpin() {
        let seq = NucleotideSeq::parse("GGGAAACCC").unwrap();
        let pairs = parse_dot_bracket("(((...)))").unwrap();
        let d = decompose_loops(&seq, &pairs).unwrap();
        let stacks = d.loops.iter().filter(|l| l.kind == LoopKind::Stack).count();
        let hairpins: Vec<_> = d.loops.iter().filter(|l| l.kind == LoopKind::Hairpin).collect();
        assert_eq!(stacks, 2);
        assert_eq!(hairpins.len(), 1);
        assert_eq!(hairpins[0].unpaired, 3);
    }

    #[test]
    fn decompose_empty_structure() {
        let seq = NucleotideSeq::parse("AAAA").unwrap();
        let d = decompose_loops(&seq, &PairSet::empty(4)).unwrap();
        assert_eq!(d.loops.len(), 1);
        assert_eq!(d.loops[0].kind, LoopKind::Exterior);
        assert_eq!(d.loops[0].unpaired, 4);
    }

    #[test]
    fn decompose_fixture_structure() {
        let seq = NucleotideSeq::parse("ACUCUGCCGAAGGCAGAC").unwrap();
        let pairs = parse_dot_bracket("..((((((...))))))." ).unwrap();
        let d = decompose_loops(&seq, &pairs).unwrap();
        let stacks = d.loops.iter().filter(|l| l.kind == LoopKind::Stack).count();
        let hairpins: Vec<_> = d.loops.iter().filter(|l| l.kind == LoopKind::Hairpin).collect();
        let exterior = d.loops.iter().filter(|l| l.kind == LoopKind::Exterior).count();
        assert_eq!(stacks, 5);
        assert_eq!(hairpins.len(), 1);
        assert_eq!(hairpins[0].unpaired, 3);
        assert_eq!(exterior, 1);
        // every pair closes exactly one loop
        let closed: usize = d.loops.iter().filter(|l| l.closing.is_some()).count();
        assert_eq!(closed, pairs.len());
    }

    #[test]
    fn mfe_unpaired_structure_is_zero() {
        let seq = NucleotideSeq::parse("ACGUACGU").unwrap();
        assert_eq!(mfe_eval(&seq, &PairSet::empty(8), bundled()).unwrap(), 0.0);
    }

    #[test]
    fn mfe_hand_sum_ggg_hairpin() {
        let seq = NucleotideSeq::parse("GGGAAACCC").unwrap();
        let pairs = parse_dot_bracket("(((...)))").unwrap();
        let p = bundled();
        let gg = p.stack_energy((Base::G, Base::C), (Base::G, Base::C)).unwrap();
        let expected = 2.0 * gg + p.hairpin_init(3);
        let got = mfe_eval(&seq, &pairs, p).unwrap();
        assert!((got - expected).abs() < 1e-9, "got {got}, expected {expected}");
    }

    #[test]
    fn mfe_fixture_within_tolerance() {
        let seq = NucleotideSeq::parse("ACUCUGCCGAAGGCAGAC").unwrap();
        let pairs = parse_dot_bracket("..((((((...))))))." ).unwrap();
        let got = mfe_eval(&seq, &pairs, bundled()).unwrap();
        assert!((got - -8.100).abs() <= 1.0, "MFE = {got}");
    }

    #[test]
    fn terminal_penalty_charged_per_au_helix_end() {
        let p = bundled();
        // helix ends: outer (U,A) and inner (C,G) -> one penalty
        let seq = NucleotideSeq::parse("ACUCUGCCGAAGGCAGAC").unwrap();
        let pairs = parse_dot_bracket("..((((((...))))))." ).unwrap();
        let breakdown = energy_breakdown(&seq, &pairs, p).unwrap();
        assert_eq!(breakdown.terminal_penalties.len(), 1);
        assert_eq!(breakdown.terminal_penalties[0].pair, (3, 17));
    }

    #[test]
    fn mfe_additive_over_helix_removal() {
        let p = bundled();
        // two independent helices in the exterior loop
        let seq = NucleotideSeq::parse("GGGAAACCCAAGGGAAACCC").unwrap();
        let both = parse_dot_bracket("(((...)))..(((...)))").unwrap();
        let first = parse_dot_bracket("(((...)))...........").unwrap();
        let second = parse_dot_bracket("...........(((...)))").unwrap();
        let e_both = mfe_eval(&seq, &both, p).unwrap();
        let e_first = mfe_eval(&seq, &first, p).unwrap();
        let e_second = mfe_eval(&seq, &second, p).unwrap();
        assert!((e_both - (e_first + e_second)).abs() < 1e-9);
    }

    #[test]
    fn multiloop_constant_applied() {
        let text = include_str!("../data/rna_turner_like.params")
            .replace("multiloop 0.00", "multiloop 2.50");
        let p = EnergyParams::parse(&text).unwrap();
        let seq = NucleotideSeq::parse("GGGAAGGGAAACCCAAGGGAAACCCAACCC").unwrap();
        // outer helix closing two inner hairpin helices -> one multiloop
        let pairs = parse_dot_bracket("(((..(((...)))..(((...)))..)))").unwrap();
        let d = decompose_loops(&seq, &pairs).unwrap();
        assert!(d.loops.iter().any(|l| l.kind == LoopKind::Multiloop));
        let with = mfe_eval(&seq, &pairs, &p).unwrap();
        let without = mfe_eval(&seq, &pairs, EnergyParams::bundled()).unwrap();
        assert!((with - without - 2.50).abs() < 1e-9);
    }
}

//! End-to-end optimization runs at fixture scale.

use codonfold::prelude::*;

fn setup() -> (&'static CodonTable, &'static EnergyParams) {
    (CodonTable::bundled(), EnergyParams::bundled())
}

#[test]
fn tlpkad_default_run_reaches_a_long_single_helix() {
    let (table, params) = setup();
    let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
    let outcome = optimize(&amino, table, params, &PipelineConfig::default()).unwrap();
    let report = &outcome.report;

    // generous budget relative to the reference workflow
    assert!(report.iterations <= 54, "iterations = {}", report.iterations);
    assert!(report.evaluations <= 212, "evaluations = {}", report.evaluations);
    assert!(report.converged);

    // the reported structure is one contiguous helix of at least 5 pairs
    let pairs = parse_dot_bracket(&report.structure).unwrap();
    assert!(pairs.len() >= 5, "structure {}", report.structure);
    let list = pairs.pairs();
    for w in list.windows(2) {
        assert_eq!((w[0].0 + 1, w[0].1 - 1), w[1], "not a single helix: {}", report.structure);
    }

    // and it is the exact ground state of its own structure model
    let seq = NucleotideSeq::parse(&report.nt).unwrap();
    let model = build_model(&seq, params, -1.0, 0.5, 3, UaRule::Outer).unwrap();
    let qubo = to_penalty_qubo(&model, None).unwrap();
    let exact = solve_exact(&qubo).unwrap();
    let bits: Vec<bool> = exact.bitstring.chars().map(|c| c == '1').collect();
    match decode(&bits, &model.universe) {
        Decoded::Feasible(ground) => {
            assert_eq!(render_dot_bracket(&ground), report.structure);
        }
        other => panic!("infeasible ground state: {other:?}"),
    }
}

#[test]
fn imqwigcy_sa_run_matches_reported_folding() {
    let (table, params) = setup();
    let amino = AminoAcidSeq::parse("IMQWIGCY").unwrap();
    let mut config = PipelineConfig::default();
    config.solver = SolverChoice::Sa;
    let outcome = optimize(&amino, table, params, &config).unwrap();
    assert_eq!(outcome.report.structure, ".....(((((......)))))...");
}

#[test]
fn report_fields_are_mutually_consistent() {
    let (table, params) = setup();
    let amino = AminoAcidSeq::parse("TLPKAD").unwrap();
    let config = PipelineConfig::default();
    let outcome = optimize(&amino, table, params, &config).unwrap();
    let report = &outcome.report;

    let seq = NucleotideSeq::parse(&report.nt).unwrap();
    assert_eq!(translate(&seq, table).unwrap().to_string(), report.aa);
    assert!((cai(&seq, table).unwrap() - report.cai).abs() < 1e-12);
    let pairs = parse_dot_bracket(&report.structure).unwrap();
    assert!((mfe_eval(&seq, &pairs, params).unwrap() - report.mfe).abs() < 1e-12);
    assert!(
        (report.objective - (config.alpha * report.cai + report.mfe)).abs() < 1e-12,
        "objective identity violated"
    );
}

#[test]
fn theta_freeze_makes_evaluation_pure() {
    let (table, params) = setup();
    let amino = AminoAcidSeq::parse("QWKL").unwrap();
    let config = PipelineConfig::default();
    let theta = Theta::new(0.4, -1.2, 2.2);
    let mut cache_a = FoldCache::new();
    let mut cache_b = FoldCache::new();
    let a = composite_objective(&amino, theta, table, params, &config, &mut cache_a).unwrap();
    let b = composite_objective(&amino, theta, table, params, &config, &mut cache_b).unwrap();
    assert_eq!(a.sequence, b.sequence);
    assert_eq!(a.objective, b.objective);
    assert_eq!(a.structure, b.structure);
}

#[test]
fn cvar_backed_pipeline_runs_deterministically() {
    let (table, params) = setup();
    let amino = AminoAcidSeq::parse("MWM").unwrap();
    let mut config = PipelineConfig::default();
    config.solver = SolverChoice::Cvar;
    config.cvar.shots = 128;
    config.cvar.max_iterations = 10;
    config.seed = 3;
    let a = optimize(&amino, table, params, &config).unwrap();
    let b = optimize(&amino, table, params, &config).unwrap();
    assert_eq!(a.report.structure, b.report.structure);
    assert_eq!(a.report.objective, b.report.objective);
}

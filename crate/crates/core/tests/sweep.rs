use daemonic_core::daemonic::pure_state_gain;
use daemonic_core::ergotropy::{HamiltonianFile, HamiltonianSpec};
use daemonic_core::par::Execution;
use daemonic_core::sweep::{
    from_csv, run_sweep, run_sweep_with, sample_state, summarize, to_csv, verify, Ensemble, Suite,
    SweepConfig, VerifyOptions,
};
use daemonic_core::Error;

fn cfg(n: usize, ensemble: Ensemble) -> SweepConfig {
    SweepConfig {
        n_states: n,
        seed: 0xdead_beef,
        ensemble,
        ..SweepConfig::default()
    }
}

#[test]
fn same_config_gives_identical_csv() {
    let c = cfg(8, Ensemble::Mixed);
    let a = to_csv(&run_sweep(&c).unwrap()).unwrap();
    let b = to_csv(&run_sweep(&c).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn worker_count_and_strategy_do_not_change_output() {
    let base = cfg(40, Ensemble::Mixed);
    let seq = run_sweep_with(&base, Execution::Sequential).unwrap();
    for workers in [1, 2, 3] {
        let par = run_sweep_with(
            &SweepConfig {
                workers,
                ..base.clone()
            },
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(seq, par);
    }
}

#[test]
fn records_are_reproducible_from_their_seed() {
    let recs = run_sweep(&cfg(5, Ensemble::Pure)).unwrap();
    let h = HamiltonianSpec::neg_sigma_z();
    for r in &recs {
        let st = sample_state(Ensemble::Pure, r.state_seed).unwrap();
        assert!((pure_state_gain(&st, &h).unwrap() - r.gain).abs() < 1e-6);
        assert!((r.purity - 1.0).abs() < 1e-12);
    }
}

#[test]
fn csv_round_trip() {
    let recs = run_sweep(&cfg(3, Ensemble::Xstate)).unwrap();
    let back = from_csv(&to_csv(&recs).unwrap()).unwrap();
    assert_eq!(back.len(), 3);
    for (a, b) in recs.iter().zip(&back) {
        assert_eq!((a.index, a.state_seed), (b.index, b.state_seed));
        assert!((a.concurrence - b.concurrence).abs() <= 1e-11);
        assert!((a.theta_opt - b.theta_opt).abs() <= 1e-11);
    }
}

#[test]
fn mixed_sweep_respects_concurrence_bound_and_chain() {
    let recs = run_sweep(&cfg(100, Ensemble::Mixed)).unwrap();
    let s = summarize(&recs, 1e-6).unwrap();
    assert_eq!(s.concurrence_violations, 0);
    assert_eq!(s.chain_violations, 0);
    assert!(!s.gain_envelope_exceeded(1e-6));
    for r in &recs {
        assert!(r.ergotropy <= r.thermal + 1e-9);
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let three_level = SweepConfig {
        hamiltonian: HamiltonianFile {
            eigenvalues: vec![0.0, 1.0, 2.0],
            eigenbasis: None,
        },
        ..cfg(1, Ensemble::Mixed)
    };
    assert!(matches!(
        run_sweep(&three_level),
        Err(Error::DimensionMismatch { .. })
    ));
    assert!(run_sweep(&cfg(0, Ensemble::Mixed)).is_err());
}

#[test]
fn verification_suites_that_hold() {
    let opts = VerifyOptions {
        n: Some(40),
        ..VerifyOptions::default()
    };
    for suite in [
        Suite::Lemma1,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Corollary1,
        Suite::Corollary2,
        Suite::XstateForms,
        Suite::BoundsSaturation,
    ] {
        let report = verify(suite, &opts).unwrap();
        assert!(report.passed(), "{report}");
    }
}

use ostensa_core::agency::abduct;
use ostensa_core::harness::{assist_fixture, isa_demo, run_scenario, Outcome};
use ostensa_core::scenario::Scenario;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn assist_runs_stay_ethical_and_replay(seed in any::<u64>()) {
        let fx = assist_fixture().unwrap();
        let goals = fx.goals();
        let t = run_scenario(&fx.scenario, &goals, &fx.lexicon, seed).unwrap();
        prop_assert_eq!(t.dilemmas(), 0);
        for e in t.decisions() {
            prop_assert!(abduct(&fx.ethics, e.situation()).unwrap().contains(&e.response()));
        }
        let replayed = t.replay(&goals, &fx.lexicon).unwrap();
        prop_assert_eq!(&replayed, &t);
        prop_assert_eq!(replayed.render(), t.render());
    }

    #[test]
    fn scenario_streams_are_seeded(name in prop::sample::select(vec!["assist", "probe", "isa"]), seed in any::<u64>()) {
        let sc = Scenario::builtin(name).unwrap();
        prop_assert_eq!(sc.episodes(seed, 64), sc.episodes(seed, 64));
    }
}

#[test]
fn contradiction_never_acts() {
    let fx = assist_fixture().unwrap();
    let goals = vec![fx.contradiction.clone(), fx.ethics.clone()];
    for seed in 0..5 {
        let t = run_scenario(&fx.scenario, &goals, &fx.lexicon, seed).unwrap();
        assert!(t.records.iter().all(|r| r.outcome == Outcome::NoEthicalResponse));
        assert!(t.render().lines().all(|l| !l.trim_start().starts_with("enacted")));
    }
}

#[test]
fn isa_report_is_stable() {
    let a = isa_demo().unwrap();
    assert!(a.passed());
    assert_eq!(a.render(), isa_demo().unwrap().render());
}

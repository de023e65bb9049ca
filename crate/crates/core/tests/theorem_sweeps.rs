use paracons_core::classify::{THEOREM_ECQ_CONJ, THEOREM_FUSION_INTRO, THEOREM_NF_BOT, THEOREM_NF_PARA};
use paracons_core::search::{all_structures, random_structures, theorem_sweep, StructurePredicate};

#[test]
fn every_tarskian_triple_is_consistent_with_the_theorems() {
    let tarskian: StructurePredicate = "tarskian".parse().unwrap();
    let maps: Vec<_> = all_structures(3, true)
        .unwrap()
        .into_iter()
        .filter(|m| tarskian.matches(m.table(), 3))
        .collect();
    // closure operators on three points
    assert_eq!(maps.len(), 61);
    let r = theorem_sweep(&maps).unwrap();
    assert!(r.violations.is_empty(), "{:?}", r.violations.first());
    for t in [THEOREM_NF_PARA, THEOREM_NF_BOT, THEOREM_FUSION_INTRO, THEOREM_ECQ_CONJ] {
        assert!(r.applicable_count(t) > 0, "{t} never applied");
    }
}

#[test]
fn dense_random_triples_are_consistent_with_the_theorems() {
    let maps = random_structures(3, 2024, 0.8, 500).unwrap();
    let r = theorem_sweep(&maps).unwrap();
    assert_eq!(r.structures, 500);
    assert!(r.violations.is_empty(), "{:?}", r.violations.first());
}

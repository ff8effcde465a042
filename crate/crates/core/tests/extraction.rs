use proptest::prelude::*;
use rainbow_forge::extract::{
    audit_trace, covering_coloring, extract_discrepancy_witness, extract_rainbow_independent_set,
    rainbow_guarantee, within_log_bound, PickStrategy,
};
use rainbow_forge::generators::{kr_free_process, mycielski_tower, Seed};
use rainbow_forge::oracles::{chromatic_number, max_rainbow_independent_set, SearchBudget};
use rainbow_forge::ProperColoring;

fn strategy() -> impl Strategy<Value = PickStrategy> {
    prop_oneof![
        Just(PickStrategy::MinIndex),
        Just(PickStrategy::MaxDegree),
        any::<u64>().prop_map(|s| PickStrategy::SeededRandom(Seed(s))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangle_free_extraction_meets_half_chi(n in 2usize..=24, s in any::<u64>(), pick in strategy()) {
        let g = kr_free_process(n, 3, Seed(s)).unwrap();
        let chi = chromatic_number(&g, &SearchBudget::default()).unwrap();
        let colorings = [ProperColoring::greedy(&g), ProperColoring::new(&g, chi.coloring.clone()).unwrap()];
        for c in &colorings {
            let (cert, trace) = extract_rainbow_independent_set(&g, c, 3, chi.value, pick).unwrap();
            prop_assert!(cert.validate(&g, c).is_ok());
            prop_assert!(cert.size() >= chi.value.div_ceil(2));
            prop_assert!(audit_trace(&trace).is_ok());
            let cover = covering_coloring(&g, &trace).unwrap().unwrap();
            prop_assert!(cover.palette_size() <= 2 * cert.size());
            if n <= 16 {
                let best = max_rainbow_independent_set(&g, c, &SearchBudget::default()).unwrap();
                prop_assert!(cert.size() <= best.size());
            }
        }
    }

    #[test]
    fn k4_free_extraction_meets_guarantee(n in 4usize..=22, s in any::<u64>(), pick in strategy()) {
        let g = kr_free_process(n, 4, Seed(s)).unwrap();
        let chi = chromatic_number(&g, &SearchBudget::default()).unwrap().value;
        let c = ProperColoring::greedy(&g);
        let (cert, trace) = extract_rainbow_independent_set(&g, &c, 4, chi, pick).unwrap();
        prop_assert!(cert.validate(&g, &c).is_ok());
        prop_assert!(cert.size() >= rainbow_guarantee(chi, 4));
        prop_assert!(audit_trace(&trace).is_ok());
    }

    #[test]
    fn discrepancy_on_triangle_free_graphs(n in 2usize..=20, s in any::<u64>(), pick in strategy()) {
        let g = kr_free_process(n, 3, Seed(s)).unwrap();
        let c = ProperColoring::greedy(&g);
        let w = extract_discrepancy_witness(&g, &c, 3, pick).unwrap();
        prop_assert!(w.certificate.validate(&g, &c).is_ok());
        prop_assert!(w.certificate.size() >= w.chi);
        prop_assert!(within_log_bound(w.certificate.chromatic_bound, w.chi));
    }
}

#[test]
fn mycielski_tower_discrepancy_with_every_strategy() {
    for h in 0..=3 {
        let g = mycielski_tower(h);
        let c = ProperColoring::greedy(&g);
        for pick in [
            PickStrategy::MinIndex,
            PickStrategy::MaxDegree,
            PickStrategy::SeededRandom(Seed(h as u64)),
        ] {
            let w = extract_discrepancy_witness(&g, &c, 3, pick).unwrap();
            assert_eq!(w.chi, h + 2);
            assert!(w.certificate.size() >= h + 2);
            assert!(
                within_log_bound(w.certificate.chromatic_bound, w.chi),
                "h = {h}: {w:?}"
            );
        }
    }
}

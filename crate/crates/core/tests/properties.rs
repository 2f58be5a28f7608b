use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use enrich_core::{cone, corpus, enriched, fan, oracle, toric};

fn small_graphs() -> Vec<(&'static str, enrich_core::MultiGraph)> {
    corpus::graphs().into_iter().filter(|(_, g)| g.num_edges() <= 4).collect()
}

fn point(raw: &[(i64, i64)]) -> Vec<BigRational> {
    raw.iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enriched_test_agrees_with_definition(gi in 0usize..16, pi in 0usize..10_000) {
        let graphs = small_graphs();
        let (_, g) = &graphs[gi % graphs.len()];
        let all = oracle::all_preorders(&g.edge_list()).unwrap();
        let p = &all[pi % all.len()];
        prop_assert_eq!(enriched::is_enriched(g, p).unwrap(), oracle::literal_is_enriched(g, p));
    }

    #[test]
    fn located_cone_contains_point(
        gi in 0usize..16,
        raw in prop::collection::vec((1i64..50, 1i64..8), 6),
    ) {
        let graphs = corpus::graphs();
        let (_, g) = &graphs[gi % graphs.len()];
        let x = point(&raw[..g.num_edges()]);
        let eg = fan::locate(g, &x).unwrap();
        prop_assert!(enriched::is_enriched(g, eg.preorder()).unwrap());
        prop_assert!(cone::cone_k(&eg).satisfies_halfspaces(&x, false));
    }

    #[test]
    fn bond_data_round_trips(gi in 0usize..16, si in 0usize..1000) {
        let graphs: Vec<_> = corpus::graphs()
            .into_iter()
            .filter(|(_, g)| g.num_edges() >= 2 && g.is_biconnected())
            .collect();
        let (_, g) = &graphs[gi % graphs.len()];
        let all = enriched::enumerate_enriched(g).unwrap();
        let eg = &all[si % all.len()];
        let back = enriched::from_bond_collection(g, &toric::bond_data(eg).unwrap()).unwrap();
        prop_assert_eq!(back.preorder(), eg.preorder());
    }
}

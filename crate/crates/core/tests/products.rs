use chromvec_core::graph::{complement, pair_index, product, union, Graph, ProductKind};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| Graph::from_fn(n, |u, v| bits[u * n + v]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_multiplicative(g in graph(6), h in graph(6)) {
        for kind in ProductKind::ALL {
            prop_assert_eq!(product(kind, &g, &h).order(), g.order() * h.order());
        }
    }

    #[test]
    fn strong_is_categorical_union_cartesian(g in graph(6), h in graph(6)) {
        let strong = product(ProductKind::Strong, &g, &h);
        let both = union(&product(ProductKind::Categorical, &g, &h), &product(ProductKind::Cartesian, &g, &h)).unwrap();
        prop_assert_eq!(strong.edges().collect::<Vec<_>>(), both.edges().collect::<Vec<_>>());
    }

    #[test]
    fn disjunctive_complement_is_strong_of_complements(g in graph(5), h in graph(5)) {
        let lhs = complement(&product(ProductKind::Disjunctive, &g, &h));
        let rhs = product(ProductKind::Strong, &complement(&g), &complement(&h));
        prop_assert_eq!(lhs.edges().collect::<Vec<_>>(), rhs.edges().collect::<Vec<_>>());
    }

    #[test]
    fn edge_counts_match_closed_forms(g in graph(6), h in graph(6)) {
        let (n, m) = (g.order(), h.order());
        let (e, f) = (g.edge_count(), h.edge_count());
        prop_assert_eq!(product(ProductKind::Cartesian, &g, &h).edge_count(), e * m + f * n);
        prop_assert_eq!(product(ProductKind::Categorical, &g, &h).edge_count(), 2 * e * f);
        prop_assert_eq!(product(ProductKind::Lexicographic, &g, &h).edge_count(), e * m * m + f * n);
    }

    #[test]
    fn categorical_projections_are_homomorphisms(g in graph(6), h in graph(6)) {
        let gh = product(ProductKind::Categorical, &g, &h);
        let m = h.order();
        let first: Vec<usize> = (0..gh.order()).map(|i| i / m).collect();
        let second: Vec<usize> = (0..gh.order()).map(|i| i % m).collect();
        prop_assert!(gh.check_homomorphism(&g, &first).is_ok());
        prop_assert!(gh.check_homomorphism(&h, &second).is_ok());
    }

    #[test]
    fn factors_embed_in_cartesian_product(g in graph(6), h in graph(6), pick in 0usize..36) {
        let gh = product(ProductKind::Cartesian, &g, &h);
        let v0 = pick % h.order();
        let u0 = pick % g.order();
        let into_g: Vec<usize> = (0..g.order()).map(|u| pair_index(u, v0, h.order())).collect();
        let into_h: Vec<usize> = (0..h.order()).map(|v| pair_index(u0, v, h.order())).collect();
        prop_assert!(g.check_homomorphism(&gh, &into_g).is_ok());
        prop_assert!(h.check_homomorphism(&gh, &into_h).is_ok());
    }

    #[test]
    fn complement_is_an_involution(g in graph(8)) {
        prop_assert_eq!(complement(&complement(&g)), g.clone());
        prop_assert_eq!(g.edge_count() + complement(&g).edge_count(), g.order() * (g.order() - 1) / 2);
    }
}

use chromvec::corpus::random_unitary;
use chromvec::formats::{
    parse_edge_list, read_certificate, read_coloring, write_certificate, write_coloring, write_edge_list,
};
use chromvec::ToolError;
use chromvec_core::coloring::{simplex_coloring, VectorColoring};
use chromvec_core::graph::{generate, product, Family, ProductKind};
use chromvec_core::quantum::{classical_embedding, quantum_sabidussi, verify_quantum_hom};
use chromvec_core::Graph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..12).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Graph::from_fn(n, |_, _| it.next().unwrap())
        })
    })
}

fn unit(v: Vec<f64>) -> Option<Vec<f64>> {
    let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (r > 1e-3).then(|| v.into_iter().map(|x| x / r).collect())
}

proptest! {
    #[test]
    fn edge_list_roundtrip(g in graph_strategy(), labelled in any::<bool>()) {
        let g = if labelled { g.with_label("sample") } else { g };
        let text = write_edge_list(&g);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_writer_is_sorted(g in graph_strategy()) {
        let text = write_edge_list(&g);
        let edges: Vec<(usize, usize)> = text
            .lines()
            .skip(1)
            .map(|l| {
                let mut it = l.split_whitespace().map(|t| t.parse::<usize>().unwrap());
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        prop_assert_eq!(&edges, &sorted);
        prop_assert!(edges.iter().all(|&(u, v)| u < v));
    }

    #[test]
    fn duplicate_and_reversed_edges_collapse(g in graph_strategy()) {
        let mut text = format!("{} {}\n", g.order(), 2 * g.edge_count());
        for (u, v) in g.edges() {
            text.push_str(&format!("{u} {v}\n{v} {u}\n"));
        }
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn coloring_roundtrip_is_bit_exact(
        raw in proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, 3), 1..8),
        k in 1.01f64..50.0,
        strict in any::<bool>(),
    ) {
        let vectors: Vec<Vec<f64>> = raw.into_iter().filter_map(unit).collect();
        prop_assume!(!vectors.is_empty());
        let c = VectorColoring::new(vectors, k, strict).unwrap();
        let back = read_coloring(&write_coloring(&c)).unwrap();
        prop_assert_eq!(back.k().to_bits(), c.k().to_bits());
        for (a, b) in back.vectors().iter().zip(c.vectors()) {
            prop_assert!(a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
        prop_assert_eq!(back, c);
    }

    #[test]
    fn conjugated_certificate_roundtrip_is_bit_exact(seed in any::<u64>(), d in 1usize..4) {
        let c5 = generate(Family::Cycle, 5).unwrap();
        let k3 = generate(Family::Complete, 3).unwrap();
        let q = classical_embedding(&c5, &k3, &[0, 1, 0, 1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = q.tensor_identity(d).conjugate(&random_unitary(d, &mut rng)).unwrap();
        let text = write_certificate(&q);
        let back = read_certificate(&text, None, 0).unwrap();
        prop_assert_eq!(write_certificate(&back), text);
        prop_assert_eq!(back, q);
    }
}

#[test]
fn parser_error_lines() {
    let cases = [
        ("2 1\n0 0", 2, "self-loop"),
        ("3 1\n# c\n0 7", 3, "out of range"),
        ("3 1\n0 1 2", 2, "two integers"),
        ("x y\n", 1, "nonnegative integer"),
        ("3 2\n0 1\n", 2, "declares 2"),
    ];
    for (text, line, needle) in cases {
        match parse_edge_list(text) {
            Err(ToolError::Parse { line: l, message }) => {
                assert_eq!(l, line, "{text:?}");
                assert!(message.contains(needle), "{message}");
            }
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}

#[test]
fn sabidussi_certificate_survives_disk() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = generate(Family::Complete, 3).unwrap();
    let c5 = generate(Family::Cycle, 5).unwrap();
    let c7 = generate(Family::Cycle, 7).unwrap();
    let q1 = classical_embedding(&c5, &k3, &[0, 1, 0, 1, 2]).unwrap();
    let q2 = classical_embedding(&c7, &k3, &[0, 1, 0, 1, 0, 1, 2]).unwrap();
    let q = quantum_sabidussi(&q1, &q2).unwrap();
    let path = dir.path().join("cert.json");
    std::fs::write(&path, write_certificate(&q)).unwrap();
    let back = read_certificate(&std::fs::read_to_string(&path).unwrap(), Some(dir.path()), 0).unwrap();
    assert_eq!(back, q);
    assert_eq!(back.source(), &product(ProductKind::Cartesian, &c5, &c7));
    assert!(verify_quantum_hom(&back, 1e-7).pass);
}

#[test]
fn certificate_graph_from_relative_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k2.txt"), "2 1\n0 1\n").unwrap();
    let text = r#"{"d": 1, "n_colors": 2, "graph": "k2.txt",
        "assignment": [[[[[1.0, 0.0]]], [[[0.0, 0.0]]]], [[[[0.0, 0.0]]], [[[1.0, 0.0]]]]]}"#;
    let q = read_certificate(text, Some(dir.path()), 0).unwrap();
    assert!(verify_quantum_hom(&q, 1e-8).pass);
    assert_eq!(
        read_coloring(&write_coloring(&simplex_coloring(2).unwrap()))
            .unwrap()
            .dim(),
        1
    );
}

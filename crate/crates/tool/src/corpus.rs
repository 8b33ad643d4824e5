//! Seeded random graphs, graph pairs and unitaries, and the named corpus
//! used by `report` and the acceptance suite.

use chromvec_core::graph::{generate, Family};
use chromvec_core::linalg::{Complex64, ComplexMatrix};
use chromvec_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// G(n, p): each pair is an edge independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// `count` pairs of G(n, 1/2) graphs with independent orders in
/// `min_n..=max_n`.
pub fn random_pairs(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<(Graph, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (a, b) = (rng.gen_range(min_n..=max_n), rng.gen_range(min_n..=max_n));
            let g = erdos_renyi(a, 0.5, &mut rng).with_label(format!("er{i}a:{a}"));
            let h = erdos_renyi(b, 0.5, &mut rng).with_label(format!("er{i}b:{b}"));
            (g, h)
        })
        .collect()
}

/// `count` pairs of G(n, 1/2) graphs sharing an order in `min_n..=max_n`.
pub fn same_order_pairs(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<(Graph, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(min_n..=max_n);
            let g = erdos_renyi(n, 0.5, &mut rng).with_label(format!("er{i}a:{n}"));
            let h = erdos_renyi(n, 0.5, &mut rng).with_label(format!("er{i}b:{n}"));
            (g, h)
        })
        .collect()
}

/// First G(n, 1/2) sample from the seeded stream that has an edge and two
/// vertices of different degree.
pub fn non_regular_graph(seed: u64, n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = erdos_renyi(n, 0.5, &mut rng);
        if g.edge_count() > 0 && (1..n).any(|v| g.degree(v) != g.degree(0)) {
            return g.with_label(format!("non-regular:{n}"));
        }
    }
}

/// Unitary from Gram–Schmidt on the columns of a matrix with entries
/// uniform in the unit square.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for q in &cols {
            let dot: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= dot * y;
            }
        }
        let r = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if r > 1e-3 {
            cols.push(v.into_iter().map(|z| z / r).collect());
        }
    }
    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}

/// The star K_{1,n}.
pub fn star(n: usize) -> Graph {
    Graph::from_fn(n + 1, |u, _| u == 0).with_label(format!("star:{n}"))
}

/// Named graphs: complete 2..=8, cycles 3..=9, paths 3..=6, Petersen,
/// Ω_2..=Ω_5, a star, an edgeless graph and two seeded G(8, 1/2) samples.
pub fn named_corpus(seed: u64) -> Vec<Graph> {
    let g = |f, n| generate(f, n).expect("corpus sizes are within caps");
    let mut out = Vec::new();
    out.extend((2..=8).map(|n| g(Family::Complete, n)));
    out.extend((3..=9).map(|n| g(Family::Cycle, n)));
    out.extend((3..=6).map(|n| g(Family::Path, n)));
    out.push(g(Family::Petersen, 10));
    out.extend((2..=5).map(|n| g(Family::Omega, n)));
    out.push(star(3));
    out.push(g(Family::Empty, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..2).map(|i| erdos_renyi(8, 0.5, &mut rng).with_label(format!("er-corpus{i}:8"))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_are_reproducible() {
        assert_eq!(random_pairs(5, 4, 3, 8), random_pairs(5, 4, 3, 8));
        assert_ne!(random_pairs(5, 4, 3, 8), random_pairs(6, 4, 3, 8));
        for (g, h) in same_order_pairs(1, 10, 3, 6) {
            assert_eq!(g.order(), h.order());
            assert!((3..=6).contains(&g.order()));
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 1..5 {
            let u = random_unitary(d, &mut rng);
            assert!(u.mul(&u.adjoint()).max_diff(&ComplexMatrix::identity(d)) <= 1e-12);
        }
    }

    #[test]
    fn non_regular_and_star() {
        let g = non_regular_graph(4, 7);
        assert!((1..7).any(|v| g.degree(v) != g.degree(0)));
        let s = star(3);
        assert_eq!((s.order(), s.edge_count(), s.degree(0)), (4, 3, 3));
    }
}

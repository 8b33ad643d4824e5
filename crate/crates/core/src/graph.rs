//! Finite simple undirected graphs with a dense adjacency matrix.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::linalg::SymMatrix;
use crate::{Error, Result};

/// Largest `n` accepted by [`generate`] for the Ω_n family (2^n vertices).
pub const DEFAULT_OMEGA_CAP: usize = 10;

/// A finite simple graph on the vertex set `0..n`.
///
/// Values are immutable once built; every operation returns a new graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    label: Option<String>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            label: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(alloc::format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Domain(alloc::format!("self-loop at vertex {u}")));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate evaluated on `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set(u, v);
                }
            }
        }
        g
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    fn set(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u * self.n..(u + 1) * self.n].iter().filter(|&&a| a).count()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u * self.n..(u + 1) * self.n]
            .iter()
            .enumerate()
            .filter_map(|(v, &a)| a.then_some(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter_map(move |v| self.has_edge(u, v).then_some((u, v))))
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|u| self.neighbors(u).collect()).collect()
    }

    /// Adjacency matrix A as a real symmetric matrix.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    /// Checks that `map` sends every edge of `self` onto an edge of `target`.
    /// Returns the first offending edge otherwise.
    pub fn check_homomorphism(&self, target: &Graph, map: &[usize]) -> Result<()> {
        if map.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= target.order()) {
            return Err(Error::Domain(alloc::format!(
                "image vertex {bad} outside the target's {} vertices",
                target.order()
            )));
        }
        match self.edges().find(|&(u, v)| !target.has_edge(map[u], map[v])) {
            Some(edge) => Err(Error::NotHomomorphism { edge }),
            None => Ok(()),
        }
    }
}

/// Named graph families understood by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Complete,
    /// C_n; sizes below 3 degenerate to the path on `n` vertices.
    Cycle,
    Path,
    Empty,
    /// The Petersen graph; the size argument is ignored.
    Petersen,
    /// The orthogonality graph Ω_n on {±1}^n.
    Omega,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Complete,
        Family::Cycle,
        Family::Path,
        Family::Empty,
        Family::Petersen,
        Family::Omega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Empty => "empty",
            Family::Petersen => "petersen",
            Family::Omega => "omega",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(alloc::format!("unknown graph family `{s}`")))
    }
}

/// Generates a member of a named family using [`DEFAULT_OMEGA_CAP`].
pub fn generate(family: Family, size: usize) -> Result<Graph> {
    generate_with_cap(family, size, DEFAULT_OMEGA_CAP)
}

/// Generates a member of a named family.
///
/// Vertex `i` of Ω_n is the sign vector whose coordinate `b` is −1 exactly
/// when bit `b` of `i` is set. Two sign vectors are orthogonal iff they differ
/// in exactly n/2 coordinates.
pub fn generate_with_cap(family: Family, size: usize, omega_cap: usize) -> Result<Graph> {
    let g = match family {
        Family::Complete => Graph::from_fn(size, |_, _| true),
        Family::Empty => Graph::empty(size),
        Family::Path => Graph::from_fn(size, |u, v| v == u + 1),
        Family::Cycle if size < 3 => Graph::from_fn(size, |u, v| v == u + 1),
        Family::Cycle => Graph::from_fn(size, |u, v| v == u + 1 || (u == 0 && v == size - 1)),
        Family::Petersen => {
            // Outer 5-cycle 0..5, spokes i-(i+5), inner pentagram on 5..10.
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::from_edges(10, &edges)?
        }
        Family::Omega => {
            if size > omega_cap {
                return Err(Error::Capacity {
                    what: "omega graph dimension",
                    size,
                    limit: omega_cap,
                });
            }
            let n = 1usize << size;
            Graph::from_fn(n, |u, v| 2 * (u ^ v).count_ones() as usize == size)
        }
    };
    let label = match family {
        Family::Petersen => String::from("petersen"),
        _ => alloc::format!("{}:{size}", family.name()),
    };
    Ok(g.with_label(label))
}

/// Complement graph: edges are exactly the non-edges between distinct vertices.
pub fn complement(g: &Graph) -> Graph {
    Graph::from_fn(g.n, |u, v| !g.has_edge(u, v))
}

/// The five graph products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// G × H: adjacent in both coordinates.
    Categorical,
    /// G □ H: adjacent in one coordinate, equal in the other.
    Cartesian,
    /// G ⊠ H: union of the categorical and Cartesian edges.
    Strong,
    /// G ∗ H: adjacent in at least one coordinate.
    Disjunctive,
    /// G[H]: adjacent in the first coordinate, or equal there and adjacent
    /// in the second.
    Lexicographic,
}

impl ProductKind {
    pub const ALL: [ProductKind; 5] = [
        ProductKind::Categorical,
        ProductKind::Cartesian,
        ProductKind::Strong,
        ProductKind::Disjunctive,
        ProductKind::Lexicographic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Categorical => "categorical",
            ProductKind::Cartesian => "cartesian",
            ProductKind::Strong => "strong",
            ProductKind::Disjunctive => "disjunctive",
            ProductKind::Lexicographic => "lexicographic",
        }
    }

    /// Adjacency rule of the product in terms of the coordinate relations.
    /// `eq_*` means the coordinates coincide, `adj_*` that they are adjacent.
    #[inline]
    pub fn adjacent(self, eq_g: bool, adj_g: bool, eq_h: bool, adj_h: bool) -> bool {
        match self {
            ProductKind::Categorical => adj_g && adj_h,
            ProductKind::Cartesian => (adj_g && eq_h) || (eq_g && adj_h),
            ProductKind::Strong => (adj_g && adj_h) || (adj_g && eq_h) || (eq_g && adj_h),
            ProductKind::Disjunctive => adj_g || adj_h,
            ProductKind::Lexicographic => adj_g || (eq_g && adj_h),
        }
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(alloc::format!("unknown product kind `{s}`")))
    }
}

/// Index of the product vertex `(u, v)`: row-major, `u` major.
#[inline]
pub fn pair_index(u: usize, v: usize, h_order: usize) -> usize {
    u * h_order + v
}

/// Product graph on `V(G) × V(H)` with vertex `(u, v)` at index `u·|V(H)| + v`.
pub fn product(kind: ProductKind, g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.order(), h.order());
    let mut p = Graph::empty(ng * nh);
    for u1 in 0..ng {
        for u2 in 0..ng {
            let (eq_g, adj_g) = (u1 == u2, g.has_edge(u1, u2));
            for v1 in 0..nh {
                for v2 in 0..nh {
                    let a = pair_index(u1, v1, nh);
                    let b = pair_index(u2, v2, nh);
                    if a < b && kind.adjacent(eq_g, adj_g, v1 == v2, h.has_edge(v1, v2)) {
                        p.set(a, b);
                    }
                }
            }
        }
    }
    if let (Some(lg), Some(lh)) = (g.label(), h.label()) {
        p.label = Some(alloc::format!("({lg}) {} ({lh})", kind.name()));
    }
    p
}

/// Edge union of two graphs on the same vertex set.
pub fn union(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.order() != h.order() {
        return Err(Error::Dimension {
            expected: g.order(),
            found: h.order(),
        });
    }
    Ok(Graph::from_fn(g.order(), |u, v| g.has_edge(u, v) || h.has_edge(u, v)))
}

/// Breadth-first 2-colouring. Returns `Some(colours)` iff the graph has no
/// odd cycle.
pub fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let n = g.order();
    let mut side: Vec<Option<u8>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap_or(0);
            for v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(1 - su);
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap_or(0)).collect())
}

pub fn is_bipartite(g: &Graph) -> (bool, Option<Vec<u8>>) {
    let part = bipartition(g);
    (part.is_some(), part)
}

/// Drops isolated vertices. The map sends old indices to new ones (`None`
/// for removed vertices); retained vertices keep their relative order.
pub fn remove_isolated(g: &Graph) -> (Graph, Vec<Option<usize>>) {
    let mut map = vec![None; g.order()];
    let mut kept = Vec::new();
    for u in 0..g.order() {
        if g.degree(u) > 0 {
            map[u] = Some(kept.len());
            kept.push(u);
        }
    }
    let mut h = Graph::from_fn(kept.len(), |a, b| g.has_edge(kept[a], kept[b]));
    h.label = g.label.clone();
    (h, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        generate(Family::Cycle, n).unwrap()
    }

    fn complete(n: usize) -> Graph {
        generate(Family::Complete, n).unwrap()
    }

    // Exhaustive isomorphism oracle, only for tiny graphs.
    fn isomorphic(g: &Graph, h: &Graph) -> bool {
        fn go(g: &Graph, h: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = perm.len();
            if k == g.order() {
                return true;
            }
            for c in 0..h.order() {
                if used[c] {
                    continue;
                }
                if (0..k).all(|i| g.has_edge(i, k) == h.has_edge(perm[i], c)) {
                    used[c] = true;
                    perm.push(c);
                    if go(g, h, perm, used) {
                        return true;
                    }
                    perm.pop();
                    used[c] = false;
                }
            }
            false
        }
        g.order() == h.order()
            && g.edge_count() == h.edge_count()
            && go(g, h, &mut Vec::new(), &mut vec![false; h.order()])
    }

    #[test]
    fn omega_small_cases() {
        let o3 = generate(Family::Omega, 3).unwrap();
        assert_eq!((o3.order(), o3.edge_count()), (8, 0));

        // Independent enumeration of {±1}^2 and orthogonal pairs.
        let vecs: Vec<[i32; 2]> = (0..4)
            .map(|i| [if i & 1 == 1 { -1 } else { 1 }, if i & 2 == 2 { -1 } else { 1 }])
            .collect();
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                if vecs[a][0] * vecs[b][0] + vecs[a][1] * vecs[b][1] == 0 {
                    edges.push((a, b));
                }
            }
        }
        let o2 = generate(Family::Omega, 2).unwrap();
        assert_eq!(o2, Graph::from_edges(4, &edges).unwrap().with_label("omega:2"));
        assert!(isomorphic(&o2, &cycle(4)));
        assert!(is_bipartite(&o2).0);
    }

    #[test]
    fn omega_regularity_and_cap() {
        // Ω_4: each vertex agrees with C(4,2) = 6 others in exactly two places.
        let o4 = generate(Family::Omega, 4).unwrap();
        assert!((0..16).all(|u| o4.degree(u) == 6));
        let o5 = generate(Family::Omega, 5).unwrap();
        assert_eq!(o5.edge_count(), 0);
        assert!(matches!(
            generate_with_cap(Family::Omega, 6, 5),
            Err(Error::Capacity { size: 6, limit: 5, .. })
        ));
    }

    #[test]
    fn degenerate_generators() {
        let k1 = complete(1);
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        assert_eq!(generate(Family::Petersen, 99).unwrap().edge_count(), 15);
        assert_eq!(cycle(2).edge_count(), 1);
        assert_eq!(generate(Family::Path, 0).unwrap().order(), 0);
    }

    #[test]
    fn petersen_is_cubic_and_triangle_free() {
        let p = generate(Family::Petersen, 0).unwrap();
        assert!((0..10).all(|u| p.degree(u) == 3));
        for (u, v) in p.edges() {
            assert!(p.neighbors(u).all(|w| !p.has_edge(w, v)));
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&complete(4)).edge_count(), 0);
        let c5 = cycle(5);
        let cc = complement(&c5);
        assert_eq!(cc.edge_count(), 5);
        assert!((0..5).all(|u| cc.degree(u) == 2));
        assert!(isomorphic(&c5, &cc));
        assert_eq!(complement(&Graph::empty(3)), complete(3).without_label());
        assert_eq!(complement(&complement(&c5)), c5.without_label());
    }

    impl Graph {
        fn without_label(mut self) -> Self {
            self.label = None;
            self
        }
    }

    #[test]
    fn small_products() {
        let k2 = complete(2);
        let sq = product(ProductKind::Cartesian, &k2, &k2);
        assert!(isomorphic(&sq, &cycle(4)));
        let cat = product(ProductKind::Categorical, &k2, &k2);
        // (0,0)-(1,1) and (0,1)-(1,0) only.
        assert_eq!(cat.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 2)]);
        let lex = product(ProductKind::Lexicographic, &k2, &Graph::empty(2));
        assert_eq!(lex.edge_count(), 4);
    }

    #[test]
    fn union_examples() {
        let c5 = cycle(5);
        assert_eq!(
            union(&c5, &Graph::empty(5)).unwrap().without_label(),
            c5.clone().without_label()
        );
        assert!(union(&c5, &complement(&c5)).unwrap().is_complete());
        assert!(matches!(union(&c5, &Graph::empty(4)), Err(Error::Dimension { .. })));
    }

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&cycle(4)).0);
        assert!(!is_bipartite(&cycle(5)).0);
        let (ok, part) = is_bipartite(&generate(Family::Path, 6).unwrap());
        let part = part.unwrap();
        assert!(ok);
        assert!(generate(Family::Path, 6)
            .unwrap()
            .edges()
            .all(|(u, v)| part[u] != part[v]));
    }

    #[test]
    fn isolated_vertex_removal() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let (h, map) = remove_isolated(&g);
        assert!(h.is_complete() && h.order() == 3);
        assert_eq!(map, vec![Some(0), Some(1), Some(2), None]);
        let (e, map) = remove_isolated(&Graph::empty(5));
        assert_eq!(e.order(), 0);
        assert!(map.iter().all(Option::is_none));
    }

    #[test]
    fn edge_list_validation() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn homomorphism_check() {
        let c4 = cycle(4);
        let k2 = complete(2);
        assert!(c4.check_homomorphism(&k2, &[0, 1, 0, 1]).is_ok());
        assert!(matches!(
            k2.check_homomorphism(&k2, &[0, 0]),
            Err(Error::NotHomomorphism { edge: (0, 1) })
        ));
    }
}

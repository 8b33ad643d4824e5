//! Exact test of `A^k ∘ I = b_k I` and `A^k ∘ A = c_k A`.
//!
//! Powers are checked for `k = 0..=m` with `m` the degree of the minimal
//! polynomial of `A`: `A^m` is the first power in the span of the earlier
//! ones, so every later power is too and inherits both conditions. The span
//! test is fraction-free Gaussian elimination on the upper triangles.
//! Arithmetic starts in `i64` with checked operations and restarts in
//! `BigInt` on overflow.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::graph::Graph;

/// `(k, b_k, c_k)`: closed walks of length `k` per vertex and walks of
/// length `k` between the endpoints of an edge. `c_k` is `None` when the
/// graph has no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkConstants {
    pub k: usize,
    pub b: BigInt,
    pub c: Option<BigInt>,
}

/// First place where a power of `A` breaks the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneHomWitness {
    /// `(A^k)_vv ≠ (A^k)_00`.
    Vertex {
        k: usize,
        vertex: usize,
        expected: BigInt,
        found: BigInt,
    },
    /// `(A^k)_uv` on edge `(u, v)` differs from its value on the first edge.
    Edge {
        k: usize,
        edge: (usize, usize),
        expected: BigInt,
        found: BigInt,
    },
}

impl fmt::Display for OneHomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneHomWitness::Vertex {
                k,
                vertex,
                expected,
                found,
            } => write!(
                f,
                "closed walks of length {k} at vertex {vertex}: {found}, expected {expected}"
            ),
            OneHomWitness::Edge {
                k,
                edge: (u, v),
                expected,
                found,
            } => write!(
                f,
                "walks of length {k} across edge ({u}, {v}): {found}, expected {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneHomReport {
    pub is_one_homogeneous: bool,
    /// Constants for `k = 0..=m`, or up to the last passing power on failure.
    pub constants: Vec<WalkConstants>,
    pub failing_witness: Option<OneHomWitness>,
    /// Degree of the minimal polynomial of `A`; `None` if the test stopped
    /// before reaching it.
    pub minimal_polynomial_degree: Option<usize>,
}

pub fn one_homogeneous_check(g: &Graph) -> OneHomReport {
    match run::<i64>(g) {
        Ok(report) => report,
        Err(Overflow) => run::<BigInt>(g).unwrap_or_else(|_| unreachable!("BigInt arithmetic cannot overflow")),
    }
}

struct Overflow;

trait Exact:
    Clone + PartialEq + Zero + One + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Into<BigInt>
{
}

impl<T> Exact for T where
    T: Clone + PartialEq + Zero + One + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Into<BigInt>
{
}

fn add<T: Exact>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

fn run<T: Exact>(g: &Graph) -> Result<OneHomReport, Overflow> {
    let n = g.order();
    let mut report = OneHomReport {
        is_one_homogeneous: true,
        constants: Vec::new(),
        failing_witness: None,
        minimal_polynomial_degree: None,
    };
    if n == 0 {
        report.minimal_polynomial_degree = Some(0);
        return Ok(report);
    }
    let adj = g.adjacency_lists();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut power: Vec<T> = (0..n * n)
        .map(|i| if i % (n + 1) == 0 { T::one() } else { T::zero() })
        .collect();
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();

    for k in 0.. {
        let b = power[0].clone();
        if let Some(v) = (1..n).find(|&v| power[v * n + v] != b) {
            report.failing_witness = Some(OneHomWitness::Vertex {
                k,
                vertex: v,
                expected: b.into(),
                found: power[v * n + v].clone().into(),
            });
            report.is_one_homogeneous = false;
            return Ok(report);
        }
        let c = edges.first().map(|&(u, v)| power[u * n + v].clone());
        if let Some(c) = &c {
            if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| power[u * n + v] != *c) {
                report.failing_witness = Some(OneHomWitness::Edge {
                    k,
                    edge: (u, v),
                    expected: c.clone().into(),
                    found: power[u * n + v].clone().into(),
                });
                report.is_one_homogeneous = false;
                return Ok(report);
            }
        }
        report.constants.push(WalkConstants {
            k,
            b: b.into(),
            c: c.map(Into::into),
        });

        let upper: Vec<T> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| power[i * n + j].clone())
            .collect();
        if !extend_basis(&mut basis, upper)? {
            report.minimal_polynomial_degree = Some(k);
            return Ok(report);
        }

        let mut next = vec![T::zero(); n * n];
        for u in 0..n {
            for v in 0..n {
                let mut s = T::zero();
                for &w in &adj[v] {
                    s = add(&s, &power[u * n + w])?;
                }
                next[u * n + v] = s;
            }
        }
        power = next;
    }
    unreachable!("the loop ends by k = n")
}

/// Reduces `v` against the echelon basis (sorted by pivot, each row zero
/// before its pivot). Returns false if `v` lies in the span; otherwise
/// inserts the reduced, content-normalized vector.
fn extend_basis<T: Exact>(basis: &mut Vec<(usize, Vec<T>)>, mut v: Vec<T>) -> Result<bool, Overflow> {
    for (p, row) in basis.iter() {
        if v[*p].is_zero() {
            continue;
        }
        let a = row[*p].clone();
        let b = v[*p].clone();
        for (x, r) in v.iter_mut().zip(row) {
            let lhs = a.checked_mul(x).ok_or(Overflow)?;
            let rhs = b.checked_mul(r).ok_or(Overflow)?;
            *x = lhs.checked_sub(&rhs).ok_or(Overflow)?;
        }
        let content = v.iter().fold(T::zero(), |acc, x| acc.gcd(x));
        if !content.is_zero() && !content.is_one() {
            for x in v.iter_mut() {
                *x = x.div_floor(&content);
            }
        }
    }
    let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
        return Ok(false);
    };
    let at = basis.partition_point(|(p, _)| *p < pivot);
    basis.insert(at, (pivot, v));
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, product, Family, ProductKind};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Dense integer powers without any elimination, for cross-checking the
    /// constants.
    fn naive_powers(g: &Graph, upto: usize) -> Vec<Vec<i128>> {
        let n = g.order();
        let a: Vec<i128> = (0..n * n).map(|i| g.has_edge(i / n, i % n) as i128).collect();
        let mut p: Vec<i128> = (0..n * n).map(|i| (i % (n + 1) == 0) as i128).collect();
        let mut out = vec![p.clone()];
        for _ in 0..upto {
            let mut q = vec![0i128; n * n];
            for i in 0..n {
                for l in 0..n {
                    for j in 0..n {
                        q[i * n + j] += p[i * n + l] * a[l * n + j];
                    }
                }
            }
            p = q;
            out.push(p.clone());
        }
        out
    }

    #[test]
    fn petersen_constants() {
        let g = generate(Family::Petersen, 10).unwrap();
        let r = one_homogeneous_check(&g);
        assert!(r.is_one_homogeneous && r.failing_witness.is_none());
        // Distinct eigenvalues 3, 1, −2.
        assert_eq!(r.minimal_polynomial_degree, Some(3));
        assert_eq!(r.constants.len(), 4);
        assert_eq!(
            r.constants[2],
            WalkConstants {
                k: 2,
                b: b(3),
                c: Some(b(0))
            }
        );
        let naive = naive_powers(&g, 3);
        for wc in &r.constants {
            assert_eq!(wc.b, BigInt::from(naive[wc.k][0]));
            assert_eq!(wc.c, Some(BigInt::from(naive[wc.k][1])));
        }
    }

    #[test]
    fn transitive_families_pass() {
        for n in 3..=9 {
            assert!(one_homogeneous_check(&generate(Family::Complete, n).unwrap()).is_one_homogeneous);
            assert!(one_homogeneous_check(&generate(Family::Cycle, n).unwrap()).is_one_homogeneous);
        }
        assert!(one_homogeneous_check(&generate(Family::Omega, 4).unwrap()).is_one_homogeneous);
        let k5 = one_homogeneous_check(&generate(Family::Complete, 5).unwrap());
        assert_eq!(k5.minimal_polynomial_degree, Some(2));
    }

    #[test]
    fn path_and_star_fail_at_k2() {
        let p3 = generate(Family::Path, 3).unwrap();
        let r = one_homogeneous_check(&p3);
        assert!(!r.is_one_homogeneous);
        assert_eq!(
            r.failing_witness,
            Some(OneHomWitness::Vertex {
                k: 2,
                vertex: 1,
                expected: b(1),
                found: b(2)
            })
        );
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = one_homogeneous_check(&star);
        assert!(matches!(r.failing_witness, Some(OneHomWitness::Vertex { k: 2, .. })));
        assert_eq!(r.minimal_polynomial_degree, None);
    }

    #[test]
    fn regular_but_not_one_homogeneous() {
        // Triangular prism: 3-regular, but triangle edges lie on one
        // triangle and rung edges on none.
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        let r = one_homogeneous_check(&g);
        assert!(matches!(
            r.failing_witness,
            Some(OneHomWitness::Edge { k: 2, edge: (0, 3), .. })
        ));
    }

    #[test]
    fn edgeless_and_trivial_graphs() {
        let r = one_homogeneous_check(&Graph::empty(4));
        assert!(r.is_one_homogeneous);
        assert_eq!(r.minimal_polynomial_degree, Some(1));
        assert_eq!(r.constants[0].c, None);
        assert!(one_homogeneous_check(&Graph::empty(0)).is_one_homogeneous);
    }

    #[test]
    fn categorical_products_stay_one_homogeneous() {
        let base = [
            generate(Family::Cycle, 5).unwrap(),
            generate(Family::Petersen, 10).unwrap(),
            generate(Family::Complete, 4).unwrap(),
        ];
        for g in &base {
            for h in &base {
                let p = product(ProductKind::Categorical, g, h);
                assert!(one_homogeneous_check(&p).is_one_homogeneous);
            }
        }
    }

    #[test]
    fn bigint_path_matches_i64() {
        let g = generate(Family::Cycle, 7).unwrap();
        let small = run::<i64>(&g).ok().unwrap();
        let big = run::<BigInt>(&g).ok().unwrap();
        assert_eq!(small, big);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // C_141 has 71 distinct eigenvalues and walk counts near 2^70.
        let g = generate(Family::Cycle, 141).unwrap();
        assert!(run::<i64>(&g).is_err());
        let r = one_homogeneous_check(&g);
        assert!(r.is_one_homogeneous);
        assert_eq!(r.minimal_polynomial_degree, Some(71));
        assert_eq!(r.constants[2].b, b(2));
        assert_eq!(r.constants[3].c, Some(b(3)));
    }
}

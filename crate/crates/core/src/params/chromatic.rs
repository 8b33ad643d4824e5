//! Exact chromatic number by DSATUR branch and bound.
//!
//! A greedy clique is pre-colored and gives the lower bound; a greedy DSATUR
//! pass gives the upper bound. Each `k` in between is decided by
//! backtracking in DSATUR order with forward checking.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::{Error, Result};

/// Default vertex cap for [`chromatic_number`].
pub const DEFAULT_CHROMATIC_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chromatic {
    /// χ and a proper coloring with colors `0..number`.
    Exact { number: usize, coloring: Vec<usize> },
    /// χ exceeds the limit.
    ExceedsLimit { limit: usize },
}

impl Chromatic {
    pub fn number(&self) -> Option<usize> {
        match self {
            Chromatic::Exact { number, .. } => Some(*number),
            Chromatic::ExceedsLimit { .. } => None,
        }
    }
}

/// χ(G) for graphs of at most [`DEFAULT_CHROMATIC_CAP`] vertices.
pub fn chromatic_number(g: &Graph, limit: usize) -> Result<Chromatic> {
    chromatic_number_capped(g, limit, DEFAULT_CHROMATIC_CAP)
}

pub fn chromatic_number_capped(g: &Graph, limit: usize, cap: usize) -> Result<Chromatic> {
    let n = g.order();
    if n > cap {
        return Err(Error::Capacity {
            what: "vertices for exact chromatic number",
            size: n,
            limit: cap,
        });
    }
    if n == 0 {
        return Ok(Chromatic::Exact {
            number: 0,
            coloring: Vec::new(),
        });
    }
    let adj = g.adjacency_lists();
    let clique = greedy_clique(g, &adj);
    if clique.len() > limit {
        return Ok(Chromatic::ExceedsLimit { limit });
    }
    let greedy = Search::new(g, &adj, n, &clique).greedy();
    let upper = greedy.iter().max().map_or(0, |c| c + 1);
    for k in clique.len()..upper.min(limit + 1) {
        let mut search = Search::new(g, &adj, k, &clique);
        if search.run() {
            return Ok(Chromatic::Exact {
                number: k,
                coloring: search.coloring(),
            });
        }
    }
    if upper > limit {
        return Ok(Chromatic::ExceedsLimit { limit });
    }
    Ok(Chromatic::Exact {
        number: upper,
        coloring: greedy,
    })
}

fn greedy_clique(g: &Graph, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut best = Vec::new();
    for start in 0..g.order() {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = adj[start].clone();
        while !candidates.is_empty() {
            let &next = candidates
                .iter()
                .max_by_key(|&&v| {
                    (
                        candidates.iter().filter(|&&w| g.has_edge(v, w)).count(),
                        core::cmp::Reverse(v),
                    )
                })
                .expect("candidates nonempty");
            clique.push(next);
            candidates.retain(|&w| w != next && g.has_edge(next, w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

const NONE: usize = usize::MAX;

struct Search<'a> {
    g: &'a Graph,
    adj: &'a [Vec<usize>],
    k: usize,
    color: Vec<usize>,
    /// `blocked[v * k + c]`: neighbors of `v` colored `c`.
    blocked: Vec<u32>,
    saturation: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, adj: &'a [Vec<usize>], k: usize, clique: &[usize]) -> Self {
        let n = g.order();
        let mut s = Search {
            g,
            adj,
            k,
            color: vec![NONE; n],
            blocked: vec![0; n * k],
            saturation: vec![0; n],
        };
        for (c, &v) in clique.iter().enumerate() {
            if c < k {
                s.assign(v, c);
            }
        }
        s
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in &self.adj[v] {
            let slot = &mut self.blocked[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = NONE;
        for &w in &self.adj[v] {
            let slot = &mut self.blocked[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    /// Uncolored vertex of maximum saturation, ties broken by degree, then
    /// by lowest index.
    fn pick(&self) -> Option<usize> {
        (0..self.g.order())
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| (self.saturation[v], self.adj[v].len(), core::cmp::Reverse(v)))
    }

    fn greedy(mut self) -> Vec<usize> {
        while let Some(v) = self.pick() {
            let c = (0..self.k)
                .find(|&c| self.blocked[v * self.k + c] == 0)
                .expect("k = n colors suffice");
            self.assign(v, c);
        }
        self.color
    }

    fn run(&mut self) -> bool {
        let used = self.color.iter().filter(|&&c| c != NONE).count();
        self.search(used)
    }

    /// Colors `≥ used` are interchangeable, so only `used` itself is tried.
    fn search(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        for c in 0..(used + 1).min(self.k) {
            if self.blocked[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            let dead = self.adj[v]
                .iter()
                .any(|&w| self.color[w] == NONE && self.saturation[w] == self.k);
            if !dead && self.search(used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }

    fn coloring(&self) -> Vec<usize> {
        self.color.clone()
    }
}

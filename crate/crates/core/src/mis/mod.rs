//! Exact maximum independent set by branch and bound on bitsets.
//!
//! The search works on the complement: an independent set of `G` is a
//! clique of its complement. Candidates are greedily partitioned into
//! cliques of `G` (colour classes of the complement); the number of classes
//! bounds how many more vertices can be added.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::graphs::{Bitset, ExplicitGraph, GraphError};

/// Search limits. The search stops at whichever is hit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(600),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MisResult {
    pub size: usize,
    /// Sorted vertex indices.
    pub witness: Vec<usize>,
    pub optimal: bool,
    #[serde(rename = "nodes")]
    pub nodes_explored: u64,
    pub time_budget_hit: bool,
}

/// `⌊p/q⌋ = α(E_{p/q})`.
pub fn alpha_base(p: u64, q: u64) -> u64 {
    p / q.max(1)
}

struct Search<'a> {
    /// Adjacency in `G`, relabelled.
    adj: Vec<Bitset>,
    /// Adjacency in the complement, relabelled.
    non_adj: Vec<Bitset>,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: &'a Budget,
    started: Instant,
    stopped: Option<bool>,
    root_only: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.stopped.is_some() {
            return true;
        }
        if self.nodes >= self.budget.max_nodes {
            self.stopped = Some(false);
            return true;
        }
        if self.nodes.is_multiple_of(1024) && self.started.elapsed() >= self.budget.max_time {
            self.stopped = Some(true);
            return true;
        }
        false
    }

    /// Greedy clique cover of `p` in `G`: returns vertices with their class
    /// number, in increasing class order. Vertices whose class cannot lift
    /// the bound above the incumbent are left out.
    fn cover(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let min_class = (self.best.len() + 1).saturating_sub(self.current.len());
        let mut order = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut class = 0;
        while !uncolored.is_empty() {
            class += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.intersect_with(&self.adj[v]);
                uncolored.remove(v);
                if class >= min_class {
                    order.push((v, class));
                }
            }
        }
        order
    }

    fn expand(&mut self, mut p: Bitset) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        let order = self.cover(&p);
        for &(v, class) in order.iter().rev() {
            if self.current.len() + class <= self.best.len() {
                return;
            }
            let mut next = p.clone();
            next.intersect_with(&self.non_adj[v]);
            self.current.push(v);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            if self.current.is_empty() && self.root_only {
                return;
            }
            if self.stopped.is_some() {
                return;
            }
            p.remove(v);
        }
    }
}

/// Greedy incumbent: repeatedly take a minimum-degree vertex of the
/// residual graph and delete its closed neighbourhood.
fn greedy_min_degree(g: &ExplicitGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut alive = Bitset::full(n);
    let mut out = Vec::new();
    while !alive.is_empty() {
        let v = alive
            .iter()
            .min_by_key(|&v| (g.neighbors(v).intersection_count(&alive), v))
            .expect("nonempty");
        out.push(v);
        alive.remove(v);
        alive.difference_with(g.neighbors(v));
    }
    out.sort_unstable();
    out
}

/// Maximum independent set of `g` within `budget`. Deterministic.
pub fn solve(g: &ExplicitGraph, budget: &Budget) -> Result<MisResult, GraphError> {
    run(g, budget, false)
}

/// As [`solve`], for graphs whose automorphism group is transitive on
/// vertices (Cayley graphs such as fraction-graph powers and their coset
/// quotients). Every vertex then lies in some maximum independent set, so
/// only the first root branch is searched. The caller guarantees
/// transitivity; it is not checked.
pub fn solve_vertex_transitive(g: &ExplicitGraph, budget: &Budget) -> Result<MisResult, GraphError> {
    run(g, budget, true)
}

fn run(g: &ExplicitGraph, budget: &Budget, root_only: bool) -> Result<MisResult, GraphError> {
    g.validate()?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(MisResult {
            size: 0,
            witness: Vec::new(),
            optimal: true,
            nodes_explored: 0,
            time_budget_hit: false,
        });
    }

    // high-degree vertices of G first: they have few complement neighbours
    // and are branched on last
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let relabel = |row: &Bitset| -> Bitset {
        let mut out = Bitset::new(n);
        for u in row.iter() {
            out.insert(position[u]);
        }
        out
    };
    let adj: Vec<Bitset> = order.iter().map(|&v| relabel(g.neighbors(v))).collect();
    let non_adj: Vec<Bitset> = adj
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut c = Bitset::full(n);
            c.difference_with(row);
            c.remove(i);
            c
        })
        .collect();

    let incumbent: Vec<usize> = greedy_min_degree(g).iter().map(|&v| position[v]).collect();
    let budget_copy = *budget;
    let mut search = Search {
        adj,
        non_adj,
        best: incumbent,
        current: Vec::new(),
        nodes: 0,
        budget: &budget_copy,
        started: Instant::now(),
        stopped: None,
        root_only,
    };
    search.expand(Bitset::full(n));

    let mut witness: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    witness.sort_unstable();
    if !g.is_independent(&witness) {
        return Err(GraphError::Malformed(
            "solver produced a dependent witness".into(),
        ));
    }
    Ok(MisResult {
        size: witness.len(),
        witness,
        optimal: search.stopped.is_none(),
        nodes_explored: search.nodes,
        time_budget_hit: search.stopped == Some(true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::FractionGraphPower;
    use proptest::prelude::*;

    fn brute_force(g: &ExplicitGraph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|mask| {
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                g.is_independent(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn c5_and_its_square() {
        let c5 = FractionGraphPower::new(5, 2, 1).unwrap().materialize(100).unwrap();
        let r = solve(&c5, &Budget::default()).unwrap();
        assert_eq!(r.size, 2);
        assert!(r.optimal);
        let c5sq = FractionGraphPower::new(5, 2, 2).unwrap().materialize(100).unwrap();
        let r = solve(&c5sq, &Budget::default()).unwrap();
        assert_eq!(r.size, 5);
        assert!(c5sq.is_independent(&r.witness));
    }

    #[test]
    fn matches_alpha_base_in_dimension_one() {
        assert_eq!(alpha_base(5, 2), 2);
        assert_eq!(alpha_base(14, 3), 4);
        assert_eq!(alpha_base(9, 1), 9);
        for p in 1..=30 {
            for q in 1..=p {
                let g = FractionGraphPower::new(p, q, 1).unwrap().materialize(100).unwrap();
                let r = solve(&g, &Budget::default()).unwrap();
                assert_eq!(r.size as u64, alpha_base(p, q), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn node_budget_reports_non_optimal() {
        let g = FractionGraphPower::new(7, 2, 2).unwrap().materialize(100).unwrap();
        let r = solve(&g, &Budget { max_nodes: 1, max_time: Duration::from_secs(10) }).unwrap();
        assert!(!r.optimal);
        assert!(!r.time_budget_hit);
        assert!(g.is_independent(&r.witness));
        let full = solve(&g, &Budget::default()).unwrap();
        assert_eq!(full.size, 10);
        assert!(full.optimal);
    }

    #[test]
    fn transitive_mode_agrees_on_cayley_graphs() {
        for (p, q, n) in [(5, 2, 2), (7, 2, 2), (7, 3, 2), (9, 2, 2), (6, 2, 3)] {
            let g = FractionGraphPower::new(p, q, n).unwrap().materialize(1000).unwrap();
            let full = solve(&g, &Budget::default()).unwrap();
            let fast = solve_vertex_transitive(&g, &Budget::default()).unwrap();
            assert_eq!(full.size, fast.size, "p={p} q={q} n={n}");
            assert!(fast.optimal);
            assert!(fast.nodes_explored <= full.nodes_explored);
            assert!(g.is_independent(&fast.witness));
        }
    }

    #[test]
    fn empty_and_edgeless() {
        let r = solve(&ExplicitGraph::new(0), &Budget::default()).unwrap();
        assert_eq!(r.size, 0);
        let r = solve(&ExplicitGraph::new(4), &Budget::default()).unwrap();
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(n in 1usize..13, edges in proptest::collection::vec((0usize..13, 0usize..13), 0..40)) {
            let edges: Vec<(usize, usize)> = edges.into_iter()
                .filter(|&(u, v)| u < n && v < n && u != v)
                .collect();
            let g = ExplicitGraph::from_edges(n, &edges).unwrap();
            let r = solve(&g, &Budget::default()).unwrap();
            prop_assert!(r.optimal);
            prop_assert!(g.is_independent(&r.witness));
            prop_assert_eq!(r.size, brute_force(&g));
        }
    }
}

use crate::lattice::SubgroupSet;

use super::{ExplicitGraph, GraphError};

/// Circular distance between `x` and `y` in `Z/pZ`.
pub fn circular_distance(x: u64, y: u64, p: u64) -> u64 {
    let d = x.abs_diff(y) % p;
    d.min(p - d)
}

/// `E_{p/q}^{⊠n}`: vertices `(Z/pZ)^n`, distinct vertices adjacent when every
/// coordinate pair is at circular distance `< q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct FractionGraphPower {
    pub p: u64,
    pub q: u64,
    pub n: usize,
}

impl FractionGraphPower {
    pub fn new(p: u64, q: u64, n: usize) -> Result<Self, GraphError> {
        if p == 0 || q == 0 || n == 0 {
            return Err(GraphError::InvalidParameters(format!(
                "need p, q, n >= 1 (got p={p}, q={q}, n={n})"
            )));
        }
        Ok(Self { p, q, n })
    }

    /// Whether `d` (a difference of two vertices) lies in the connection set
    /// `{d ≠ 0 : every coordinate at circular distance < q from 0}`.
    pub fn is_connection(&self, d: &[u64]) -> bool {
        d.iter().any(|&x| x % self.p != 0) && d.iter().all(|&x| circular_distance(x, 0, self.p) < self.q)
    }

    pub fn adjacent(&self, u: &[u64], v: &[u64]) -> bool {
        debug_assert_eq!(u.len(), self.n);
        debug_assert_eq!(v.len(), self.n);
        u != v
            && u
                .iter()
                .zip(v)
                .all(|(&a, &b)| circular_distance(a, b, self.p) < self.q)
    }

    /// Residues at circular distance `< q` from 0, each listed once.
    pub fn near_residues(&self) -> Vec<u64> {
        let mut r: Vec<u64> = (0..self.q.min(self.p))
            .flat_map(|d| [d, (self.p - d) % self.p])
            .collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// The connection set as explicit vectors.
    pub fn connection_set(&self) -> Vec<Vec<u64>> {
        let residues = self.near_residues();
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.n];
        loop {
            let v: Vec<u64> = idx.iter().map(|&i| residues[i]).collect();
            if v.iter().any(|&x| x != 0) {
                out.push(v);
            }
            let mut j = self.n;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < residues.len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }

    /// `p^n`, if it fits.
    pub fn vertex_count(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.n as u32)
    }

    /// Index of a vertex in mixed radix `p`, coordinate 0 most significant,
    /// so that index order is lexicographic order.
    pub fn index_of(&self, v: &[u64]) -> usize {
        v.iter().fold(0usize, |acc, &x| acc * self.p as usize + (x % self.p) as usize)
    }

    pub fn vertex_at(&self, mut index: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        for slot in v.iter_mut().rev() {
            *slot = (index % self.p as usize) as u64;
            index /= self.p as usize;
        }
        v
    }

    /// Difference criterion for subgroups (closed under subtraction), and
    /// the all-pairs check otherwise.
    pub fn is_independent(&self, set: &SubgroupSet) -> bool {
        if set.modulus() != self.p || set.dim() != self.n {
            return false;
        }
        if set.is_subgroup() {
            set.iter()
                .filter(|e| e.iter().any(|&x| x != 0))
                .all(|e| e.iter().any(|&x| circular_distance(x, 0, self.p) >= self.q))
        } else {
            let elems: Vec<&[u64]> = set.iter().collect();
            self.is_independent_list(&elems)
        }
    }

    /// All-pairs independence check for an arbitrary vertex list.
    pub fn is_independent_list(&self, vertices: &[&[u64]]) -> bool {
        vertices.iter().enumerate().all(|(i, u)| {
            vertices[i + 1..].iter().all(|v| !self.adjacent(u, v))
        })
    }

    /// Explicit graph on `p^n` vertices, indexed by [`Self::index_of`].
    pub fn materialize(&self, cap: u64) -> Result<ExplicitGraph, GraphError> {
        let count = self.vertex_count().unwrap_or(u128::MAX);
        if count > cap as u128 {
            return Err(GraphError::CapExceeded {
                what: "graph materialization",
                needed: count,
                cap,
            });
        }
        let count = count as usize;
        let connections = self.connection_set();
        let mut g = ExplicitGraph::new(count);
        for u in 0..count {
            let uv = self.vertex_at(u);
            for d in &connections {
                let w: Vec<u64> = uv.iter().zip(d).map(|(&a, &b)| (a + b) % self.p).collect();
                let wi = self.index_of(&w);
                if wi > u {
                    g.add_edge(u, wi);
                }
            }
        }
        Ok(g)
    }
}

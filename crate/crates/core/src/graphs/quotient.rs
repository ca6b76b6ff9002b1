use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::SubgroupSet;

use super::{Bitset, ExplicitGraph, FractionGraphPower, GraphError};

/// Quotient of `E_{p/q}^{⊠n}` by an independent subgroup `H`. Two cosets are
/// adjacent when some pair of their members is adjacent in the base graph.
#[derive(Debug, Clone)]
pub struct CosetQuotient {
    pub base: FractionGraphPower,
    pub subgroup: SubgroupSet,
    /// Lexicographically least member of each coset, in increasing order.
    pub representatives: Vec<Vec<u64>>,
    pub graph: ExplicitGraph,
    coset_of: Vec<u32>,
}

impl CosetQuotient {
    pub fn coset_count(&self) -> usize {
        self.representatives.len()
    }

    /// Index of the coset containing `v`.
    pub fn coset_of(&self, v: &[u64]) -> usize {
        self.coset_of[self.base.index_of(v)] as usize
    }

    /// All members of coset `c`, in lexicographic order.
    pub fn coset_members(&self, c: usize) -> Vec<Vec<u64>> {
        let p = self.base.p;
        let r = &self.representatives[c];
        let mut out: Vec<Vec<u64>> = self
            .subgroup
            .iter()
            .map(|h| r.iter().zip(h).map(|(&x, &y)| (x + y) % p).collect())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Builds `G/H` for `H` generated by `generators`. `cap` bounds the number
/// of cosets.
pub fn build_quotient(
    base: FractionGraphPower,
    generators: &[Vec<u64>],
    cap: u64,
) -> Result<CosetQuotient, GraphError> {
    let total = base.vertex_count().unwrap_or(u128::MAX);
    let subgroup = SubgroupSet::generated_by(base.p, base.n, generators, cap.saturating_mul(64))?;
    if !base.is_independent(&subgroup) {
        return Err(GraphError::NotIndependent);
    }
    let h = subgroup.len() as u128;
    if !total.is_multiple_of(h) {
        return Err(GraphError::Malformed(format!(
            "subgroup order {h} does not divide {total}"
        )));
    }
    let cosets = total / h;
    if cosets > cap as u128 || cosets > u32::MAX as u128 {
        return Err(GraphError::CapExceeded {
            what: "quotient materialization",
            needed: cosets,
            cap,
        });
    }
    let total = total as usize;

    // index order is lexicographic, so the first unassigned vertex is the
    // least member of its coset
    let mut coset_of = vec![u32::MAX; total];
    let mut representatives = Vec::with_capacity(cosets as usize);
    for idx in 0..total {
        if coset_of[idx] != u32::MAX {
            continue;
        }
        let c = representatives.len() as u32;
        let r = base.vertex_at(idx);
        for e in subgroup.iter() {
            let m: Vec<u64> = r.iter().zip(e).map(|(&x, &y)| (x + y) % base.p).collect();
            coset_of[base.index_of(&m)] = c;
        }
        representatives.push(r);
    }

    let connections = base.connection_set();
    let neighbor_lists: Vec<Vec<usize>> = representatives
        .par_iter()
        .enumerate()
        .map(|(c, r)| {
            let mut out: Vec<usize> = connections
                .iter()
                .map(|d| {
                    let w: Vec<u64> = r.iter().zip(d).map(|(&x, &y)| (x + y) % base.p).collect();
                    coset_of[base.index_of(&w)] as usize
                })
                .filter(|&other| other != c)
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    let mut graph = ExplicitGraph::new(representatives.len());
    for (c, list) in neighbor_lists.iter().enumerate() {
        for &o in list {
            graph.add_edge(c, o);
        }
    }

    Ok(CosetQuotient {
        base,
        subgroup,
        representatives,
        graph,
        coset_of,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftedBound {
    pub subgroup_order: usize,
    pub quotient_alpha: usize,
    pub bound: usize,
    pub verified: bool,
}

/// Lifts an independent set of cosets to the union of those cosets and
/// checks it directly in the base graph.
pub fn lift_bound(quotient: &CosetQuotient, cosets: &[usize]) -> Result<LiftedBound, GraphError> {
    let base = &quotient.base;
    if !quotient.graph.is_independent(cosets) {
        return Err(GraphError::LiftNotIndependent);
    }
    let total = quotient.coset_of.len();
    let mut members = Bitset::new(total);
    let mut chosen = Bitset::new(quotient.coset_count());
    for &c in cosets {
        chosen.insert(c);
    }
    for (idx, &c) in quotient.coset_of.iter().enumerate() {
        if chosen.contains(c as usize) {
            members.insert(idx);
        }
    }
    let connections = base.connection_set();
    let clean = members.iter().collect::<Vec<_>>().par_iter().all(|&idx| {
        let u = base.vertex_at(idx);
        connections.iter().all(|d| {
            let w: Vec<u64> = u.iter().zip(d).map(|(&x, &y)| (x + y) % base.p).collect();
            !members.contains(base.index_of(&w))
        })
    });
    let expected = quotient.subgroup.len() * cosets.len();
    if !clean || members.count() != expected {
        return Err(GraphError::LiftNotIndependent);
    }
    Ok(LiftedBound {
        subgroup_order: quotient.subgroup.len(),
        quotient_alpha: cosets.len(),
        bound: expected,
        verified: true,
    })
}

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::lattice::SubgroupSet;

use super::{circular_distance, FractionGraphPower, GraphError};

/// Image of an independent subgroup under the coordinate-wise up-map.
#[derive(Debug, Clone)]
pub struct MappedSubgroup {
    pub graph: FractionGraphPower,
    pub multiplier: u64,
    pub set: SubgroupSet,
}

/// Sends an independent subgroup of `E_{a/b}^{⊠n}` into `E_{Ap/Aq}^{⊠n}` by
/// multiplying every coordinate by `Ap/a`, where `A` is the common
/// coordinate modulus `a`. The image is re-checked for independence.
pub fn map_up(
    set: &SubgroupSet,
    b: u64,
    p: u64,
    q: u64,
) -> Result<MappedSubgroup, GraphError> {
    let a = set.modulus();
    if b == 0 || q == 0 {
        return Err(GraphError::InvalidParameters("b and q must be positive".into()));
    }
    let (a128, b128, p128, q128) = (a as u128, b as u128, p as u128, q as u128);
    if a128 < 2 * b128 || a128 * q128 > p128 * b128 {
        return Err(GraphError::RatioPrecondition(format!(
            "need 2 <= {a}/{b} <= {p}/{q}"
        )));
    }
    let source = FractionGraphPower::new(a, b, set.dim())?;
    if !source.is_independent(set) {
        return Err(GraphError::NotIndependent);
    }
    let overflow = || GraphError::InvalidParameters(format!("target modulus {a}*{p} overflows"));
    let modulus = a.checked_mul(p).ok_or_else(overflow)?;
    let graph = FractionGraphPower::new(modulus, a.checked_mul(q).ok_or_else(overflow)?, set.dim())?;
    let multiplier = p;
    let image: Vec<Vec<u64>> = set
        .iter()
        .map(|e| e.iter().map(|&x| x * multiplier).collect())
        .collect();
    let mapped = SubgroupSet::from_elements(modulus, set.dim(), image, 4096)?;
    if mapped.len() != set.len() || !graph.is_independent(&mapped) {
        return Err(GraphError::NotIndependent);
    }
    Ok(MappedSubgroup {
        graph,
        multiplier,
        set: mapped,
    })
}

/// Parameters `(N, ⌈N/x⌉)` of the fraction graph induced on the order-`N`
/// subgroup of the circle of circumference `x`.
pub fn round_to_fraction(n: u64, x: &BigRational) -> Result<(u64, u64), GraphError> {
    let two = BigRational::from_integer(BigInt::from(2));
    if n < 2 || x < &two {
        return Err(GraphError::InvalidParameters(format!(
            "need N >= 2 and x >= 2 (got N={n}, x={x})"
        )));
    }
    let q = (BigRational::from_integer(BigInt::from(n)) / x).ceil().to_integer();
    Ok((n, q.to_u64().expect("q <= N/2")))
}

/// Largest independent subgroup of `E_{p/q}^{⊠n}` among those generated by
/// at most two elements.
pub fn alpha_grp_exhaustive(p: u64, q: u64, n: usize, cap: u64) -> Result<u64, GraphError> {
    let g = FractionGraphPower::new(p, q, n)?;
    let count = g.vertex_count().unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(GraphError::CapExceeded {
            what: "exhaustive subgroup search",
            needed: count,
            cap,
        });
    }
    let count = count as usize;
    let far = |idx: usize| -> bool {
        let v = g.vertex_at(idx);
        v.iter().any(|&x| circular_distance(x, 0, p) >= q)
    };

    // distinct independent cyclic subgroups, as sorted index lists
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    for gen in 1..count {
        if !far(gen) {
            continue;
        }
        let gv = g.vertex_at(gen);
        let mut elems = vec![0usize];
        let mut cur = gv.clone();
        let mut ok = true;
        while cur.iter().any(|&x| x != 0) {
            let idx = g.index_of(&cur);
            if !far(idx) {
                ok = false;
                break;
            }
            elems.push(idx);
            cur = cur.iter().zip(&gv).map(|(&x, &y)| (x + y) % p).collect();
        }
        if !ok {
            continue;
        }
        elems.sort_unstable();
        if seen.insert(elems.clone()) {
            cyclic.push((gen, elems));
        }
    }
    let mut best = cyclic.iter().map(|(_, e)| e.len()).max().unwrap_or(1);

    cyclic.sort_by(|x, y| y.1.len().cmp(&x.1.len()).then(x.0.cmp(&y.0)));
    for i in 0..cyclic.len() {
        let (g1, e1) = &cyclic[i];
        if e1.len() * cyclic.get(i + 1).map_or(0, |c| c.1.len()) <= best {
            break;
        }
        for (g2, e2) in &cyclic[i + 1..] {
            if e1.len() * e2.len() <= best {
                break;
            }
            if e1.binary_search(g2).is_ok() {
                continue;
            }
            if let Some(size) = independent_closure(&g, &[*g1, *g2], &far) {
                best = best.max(size);
            }
        }
    }
    Ok(best as u64)
}

/// Size of the subgroup generated by the given vertices, or `None` as soon
/// as a nonzero element adjacent to 0 turns up.
fn independent_closure(
    g: &FractionGraphPower,
    gens: &[usize],
    far: &dyn Fn(usize) -> bool,
) -> Option<usize> {
    let gvs: Vec<Vec<u64>> = gens.iter().map(|&i| g.vertex_at(i)).collect();
    let mut visited: HashSet<usize> = HashSet::from([0]);
    let mut queue = VecDeque::from([vec![0u64; g.n]]);
    while let Some(e) = queue.pop_front() {
        for gv in &gvs {
            let next: Vec<u64> = e.iter().zip(gv).map(|(&x, &y)| (x + y) % g.p).collect();
            let idx = g.index_of(&next);
            if visited.insert(idx) {
                if !far(idx) {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(visited.len())
}

use std::collections::{HashSet, VecDeque};

use super::LatticeError;

/// A subset of `(Z/pZ)^dim`, usually a subgroup obtained by closure.
/// Elements are canonical representatives in `[0, p)` sorted
/// lexicographically and stored flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    modulus: u64,
    dim: usize,
    coords: Vec<u64>,
    generators: Vec<Vec<u64>>,
    closed: bool,
}

/// Packs vectors into a `u128` in mixed radix `p` when `p^dim` fits; the
/// packing preserves lexicographic order.
fn packable(modulus: u64, dim: usize) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..dim {
        match acc.checked_mul(modulus as u128) {
            Some(v) => acc = v,
            None => return false,
        }
    }
    true
}

fn pack(v: &[u64], modulus: u64) -> u128 {
    v.iter().fold(0u128, |acc, &x| acc * modulus as u128 + x as u128)
}

fn add_mod(a: &[u64], b: &[u64], modulus: u64) -> Vec<u64> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ((x as u128 + y as u128) % modulus as u128) as u64)
        .collect()
}

trait Visited {
    fn insert(&mut self, v: &[u64]) -> bool;
}

struct Packed(HashSet<u128>, u64);
struct Plain(HashSet<Vec<u64>>);

impl Visited for Packed {
    fn insert(&mut self, v: &[u64]) -> bool {
        self.0.insert(pack(v, self.1))
    }
}

impl Visited for Plain {
    fn insert(&mut self, v: &[u64]) -> bool {
        self.0.insert(v.to_vec())
    }
}

impl SubgroupSet {
    /// Subgroup of `(Z/pZ)^dim` generated by `generators` (reduced mod p),
    /// enumerated by breadth-first closure. Fails once more than `cap`
    /// elements have been found.
    pub fn generated_by(
        modulus: u64,
        dim: usize,
        generators: &[Vec<u64>],
        cap: u64,
    ) -> Result<Self, LatticeError> {
        if modulus == 0 {
            return Err(LatticeError::InvalidModulus);
        }
        let gens: Vec<Vec<u64>> = generators
            .iter()
            .map(|g| {
                if g.len() != dim {
                    Err(LatticeError::DimensionMismatch {
                        expected: dim,
                        got: g.len(),
                    })
                } else {
                    Ok(g.iter().map(|x| x % modulus).collect())
                }
            })
            .collect::<Result<_, _>>()?;

        let mut visited: Box<dyn Visited> = if packable(modulus, dim) {
            Box::new(Packed(HashSet::new(), modulus))
        } else {
            Box::new(Plain(HashSet::new()))
        };
        let zero = vec![0u64; dim];
        visited.insert(&zero);
        let mut found = vec![zero.clone()];
        let mut queue = VecDeque::from([zero]);
        while let Some(e) = queue.pop_front() {
            for g in &gens {
                let next = add_mod(&e, g, modulus);
                if visited.insert(&next) {
                    if found.len() as u64 >= cap {
                        return Err(LatticeError::CapExceeded {
                            what: "subgroup enumeration",
                            cap,
                        });
                    }
                    found.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        found.sort_unstable();
        Ok(Self {
            modulus,
            dim,
            coords: found.into_iter().flatten().collect(),
            generators: gens,
            closed: true,
        })
    }

    /// Wraps an explicit element list. The subgroup property is checked
    /// (all pairwise sums) when the list has at most `closure_check_limit`
    /// elements; larger lists are treated as arbitrary subsets.
    pub fn from_elements(
        modulus: u64,
        dim: usize,
        elements: Vec<Vec<u64>>,
        closure_check_limit: usize,
    ) -> Result<Self, LatticeError> {
        if modulus == 0 {
            return Err(LatticeError::InvalidModulus);
        }
        let mut elems = Vec::with_capacity(elements.len());
        for e in elements {
            if e.len() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    got: e.len(),
                });
            }
            elems.push(e.into_iter().map(|x| x % modulus).collect::<Vec<u64>>());
        }
        elems.sort_unstable();
        elems.dedup();
        let mut set = Self {
            modulus,
            dim,
            coords: elems.into_iter().flatten().collect(),
            generators: Vec::new(),
            closed: false,
        };
        if set.len() <= closure_check_limit {
            set.closed = set.check_closure();
        }
        Ok(set)
    }

    fn check_closure(&self) -> bool {
        if !self.contains(&vec![0; self.dim]) {
            return false;
        }
        self.iter().all(|a| {
            self.iter()
                .all(|b| self.contains(&add_mod(a, b, self.modulus)))
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Whether the set is known to contain 0 and be closed under addition.
    pub fn is_subgroup(&self) -> bool {
        self.closed
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.coords.chunks(self.dim)
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        self.iter().map(<[u64]>::to_vec).collect()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let n = self.len();
        let (mut lo, mut hi) = (0usize, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let e = &self.coords[mid * self.dim..(mid + 1) * self.dim];
            match e.cmp(v) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

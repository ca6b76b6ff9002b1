use std::fmt::Write as _;

use super::GraphError;

/// Fixed-capacity bitset over `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for w in b.words.iter_mut() {
            *w = u64::MAX;
        }
        b.trim();
        b
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_count(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

/// Simple undirected graph with bitset adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    rows: Vec<Bitset>,
}

impl ExplicitGraph {
    pub fn new(vertices: usize) -> Self {
        Self {
            rows: vec![Bitset::new(vertices); vertices],
        }
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(vertices);
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(GraphError::Malformed(format!(
                    "edge ({u}, {v}) out of range for {vertices} vertices"
                )));
            }
            if u == v {
                return Err(GraphError::Malformed(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bitset::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Checks symmetry and irreflexivity.
    pub fn validate(&self) -> Result<(), GraphError> {
        for (u, row) in self.rows.iter().enumerate() {
            if row.capacity() != self.rows.len() {
                return Err(GraphError::Malformed(format!("row {u} has wrong width")));
            }
            if row.contains(u) {
                return Err(GraphError::Malformed(format!("self-loop at {u}")));
            }
            if let Some(v) = row.iter().find(|&v| !self.rows[v].contains(u)) {
                return Err(GraphError::Malformed(format!("edge ({u}, {v}) is not symmetric")));
            }
        }
        Ok(())
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        let mut seen = Bitset::new(self.vertex_count());
        for &v in vertices {
            if v >= self.vertex_count() || seen.contains(v) || self.rows[v].intersects(&seen) {
                return false;
            }
            seen.insert(v);
        }
        true
    }

    /// DIMACS-style edge list: header `p edges n m`, then `e u v` (1-based).
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p edges {} {}", self.vertex_count(), self.edge_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<(Self, usize)> = None;
        let err = |line: usize, message: &str| GraphError::Dimacs {
            line,
            message: message.to_string(),
        };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let mut parts = raw.split_whitespace();
            match parts.next() {
                None | Some("c") => continue,
                Some("p") => {
                    if graph.is_some() {
                        return Err(err(line_no, "duplicate problem line"));
                    }
                    let _format = parts.next().ok_or_else(|| err(line_no, "missing format"))?;
                    let n: usize = parts
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(line_no, "bad vertex count"))?;
                    let m: usize = parts
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(line_no, "bad edge count"))?;
                    graph = Some((Self::new(n), m));
                }
                Some("e") => {
                    let (g, _) = graph
                        .as_mut()
                        .ok_or_else(|| err(line_no, "edge before problem line"))?;
                    let mut endpoint = || -> Result<usize, GraphError> {
                        let v: usize = parts
                            .next()
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| err(line_no, "bad endpoint"))?;
                        if v == 0 || v > g.vertex_count() {
                            return Err(err(line_no, "endpoint out of range"));
                        }
                        Ok(v - 1)
                    };
                    let u = endpoint()?;
                    let v = endpoint()?;
                    if u == v {
                        return Err(err(line_no, "self-loop"));
                    }
                    g.add_edge(u, v);
                }
                Some(other) => {
                    return Err(err(line_no, &format!("unknown line type {other:?}")));
                }
            }
        }
        let (g, m) = graph.ok_or_else(|| err(0, "missing problem line"))?;
        if g.edge_count() != m {
            return Err(err(
                0,
                &format!("header declares {m} edges, found {}", g.edge_count()),
            ));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ExplicitGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ExplicitGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn bitset_basics() {
        let mut b = Bitset::new(130);
        for i in [0, 63, 64, 129] {
            b.insert(i);
        }
        assert_eq!(b.count(), 4);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(b.first(), Some(0));
        b.remove(0);
        assert_eq!(b.first(), Some(63));
        assert!(!b.contains(200));
        assert_eq!(Bitset::full(130).count(), 130);
        let mut f = Bitset::full(130);
        f.difference_with(&b);
        assert_eq!(f.count(), 127);
        assert_eq!(f.intersection_count(&b), 0);
    }

    #[test]
    fn dimacs_round_trip() {
        let g = cycle(5);
        let text = g.to_dimacs();
        assert!(text.starts_with("p edges 5 5\n"));
        assert!(text.contains("e 1 2\n"));
        assert_eq!(ExplicitGraph::from_dimacs(&text).unwrap(), g);
    }

    #[test]
    fn dimacs_errors_name_the_line() {
        let err = ExplicitGraph::from_dimacs("p edges 3 1\ne 1 4\n").unwrap_err();
        assert!(matches!(err, GraphError::Dimacs { line: 2, .. }));
        let err = ExplicitGraph::from_dimacs("c hi\ne 1 2\n").unwrap_err();
        assert!(matches!(err, GraphError::Dimacs { line: 2, .. }));
        assert!(ExplicitGraph::from_dimacs("p edges 3 2\ne 1 2\n").is_err());
    }

    #[test]
    fn independence_and_validation() {
        let g = cycle(5);
        assert!(g.validate().is_ok());
        assert!(g.is_independent(&[0, 2]));
        assert!(!g.is_independent(&[0, 1]));
        assert!(!g.is_independent(&[0, 0]));
        assert!(ExplicitGraph::from_edges(3, &[(1, 1)]).is_err());
        assert!(ExplicitGraph::from_edges(3, &[(1, 3)]).is_err());
    }
}

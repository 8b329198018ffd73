//! Undirected multigraphs with integer edge multiplicities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Rational, RationalMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    /// Keyed by `(u, v)` with `u < v`.
    edges: BTreeMap<(usize, usize), u64>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: BTreeMap::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, 1)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, 1).expect("valid edge");
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n, 1).expect("valid edge");
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u, 1).expect("valid edge");
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize, mult: u64) -> Result<()> {
        for id in [u, v] {
            if id >= self.n {
                return Err(Error::InvalidVertex { id, count: self.n });
            }
        }
        if u == v {
            return Err(Error::LoopPresent(u));
        }
        if mult > 0 {
            *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![0; self.n];
        for (&(u, v), &m) in &self.edges {
            d[u] += m;
            d[v] += m;
        }
        d
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.n as u64
    }

    /// `D - A` with integer entries, row-major.
    pub fn laplacian(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut l = vec![BigInt::zero(); n * n];
        for (&(u, v), &m) in &self.edges {
            let m = BigInt::from(m);
            l[u * n + v] -= &m;
            l[v * n + u] -= &m;
            l[u * n + u] += &m;
            l[v * n + v] += &m;
        }
        l
    }

    /// `D^{-1}(D - A)`.
    pub fn probabilistic_laplacian(&self) -> Result<RationalMatrix> {
        let deg = self.degrees();
        if let Some(v) = deg.iter().position(|&d| d == 0) {
            return Err(Error::Dimension(format!("vertex {v} is isolated")));
        }
        let mut p = RationalMatrix::identity(self.n);
        for (&(u, v), &m) in &self.edges {
            let mm = BigInt::from(m);
            p.set(u, v, -Rational::new(mm.clone(), BigInt::from(deg[u])));
            p.set(v, u, -Rational::new(mm, BigInt::from(deg[v])));
        }
        Ok(p)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut g = Self::new(self.n);
        for (u, v, m) in self.edges() {
            g.add_edge(perm[u], perm[v], m)?;
        }
        Ok(g)
    }

    /// Identifies vertex `x1` of `self` with vertex `x2` of `other`. Vertices
    /// of `other` other than `x2` are appended after those of `self`.
    pub fn wedge(&self, x1: usize, other: &Multigraph, x2: usize) -> Result<Multigraph> {
        if x1 >= self.n {
            return Err(Error::InvalidVertex { id: x1, count: self.n });
        }
        if x2 >= other.n {
            return Err(Error::InvalidVertex { id: x2, count: other.n });
        }
        let map = |v: usize| match v.cmp(&x2) {
            std::cmp::Ordering::Equal => x1,
            std::cmp::Ordering::Less => self.n + v,
            std::cmp::Ordering::Greater => self.n + v - 1,
        };
        let mut g = Multigraph::new(self.n + other.n - 1);
        for (u, v, m) in self.edges() {
            g.add_edge(u, v, m)?;
        }
        for (u, v, m) in other.edges() {
            g.add_edge(map(u), map(v), m)?;
        }
        Ok(g)
    }

    pub fn degree_product(&self) -> BigInt {
        self.degrees().iter().fold(BigInt::one(), |acc, &d| acc * d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_shapes() {
        let k3 = Multigraph::complete(3);
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3.degrees(), vec![2, 2, 2]);
        assert!(k3.is_connected());
        assert!(!k3.is_tree());
        assert!(Multigraph::path(5).is_tree());
    }

    #[test]
    fn loops_and_bad_ids_rejected() {
        let mut g = Multigraph::new(2);
        assert!(matches!(g.add_edge(1, 1, 1), Err(Error::LoopPresent(1))));
        assert!(matches!(g.add_edge(0, 2, 1), Err(Error::InvalidVertex { id: 2, count: 2 })));
    }

    #[test]
    fn parallel_edges_accumulate() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 0, 2).unwrap();
        assert_eq!(g.multiplicity(0, 1), 3);
        assert_eq!(g.degrees(), vec![3, 3]);
    }

    #[test]
    fn wedge_shares_one_vertex() {
        let g = Multigraph::complete(3).wedge(0, &Multigraph::cycle(4), 2).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.degrees()[0], 4);
        assert!(Multigraph::complete(3).wedge(3, &Multigraph::complete(3), 0).is_err());
    }

    #[test]
    fn disconnected_detected() {
        let g = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
    }
}

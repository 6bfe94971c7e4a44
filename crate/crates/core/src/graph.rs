//! Loopless weighted multigraphs.
//!
//! Edge weights are conductances. Parallel edges are kept as distinct
//! entries in insertion order; merging them is the explicit
//! [`Multigraph::simplify_parallel`] step. Contraction and identification
//! renumber vertices deterministically: every merged class takes the
//! smallest index among its members and surviving vertices keep their
//! relative order.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{is_positive, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn resistance(&self) -> Rational {
        self.weight.recip()
    }

    /// The endpoint opposite `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Builds a unit-weight graph from an edge list.
    pub fn from_unit_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v, Rational::one())?;
        }
        Ok(g)
    }

    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut g = Self::new(vertex_count);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Appends an edge and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: Rational) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        if !is_positive(&weight) {
            return Err(Error::NonPositiveWeight(weight.to_string()));
        }
        self.edges.push(Edge { u, v, weight });
        Ok(self.edges.len() - 1)
    }

    fn add_unit(&mut self, u: usize, v: usize, multiplicity: usize) {
        for _ in 0..multiplicity {
            self.edges.push(Edge {
                u,
                v,
                weight: Rational::one(),
            });
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<&Edge> {
        self.edges.get(e).ok_or(Error::InvalidEdge {
            index: e,
            count: self.edges.len(),
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                index: v,
                count: self.vertex_count,
            })
        }
    }

    /// Number of incident edge instances (parallel edges counted separately).
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Sum of incident conductances.
    pub fn weighted_degree(&self, v: usize) -> Rational {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .map(|e| e.weight.clone())
            .sum()
    }

    /// Distinct neighbours of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(ordered(e.u, e.v)))
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Component label per vertex, labels numbered by first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        let mut label = HashMap::new();
        (0..self.vertex_count)
            .map(|v| {
                let root = uf.find(v);
                let next = label.len();
                *label.entry(root).or_insert(next)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    pub fn delete_edge(&self, e: usize) -> Result<Self> {
        self.edge(e)?;
        let mut g = self.clone();
        g.edges.remove(e);
        Ok(g)
    }

    /// Applies a vertex relabelling: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.vertex_count];
        if perm.len() != self.vertex_count
            || perm
                .iter()
                .any(|&p| p >= self.vertex_count || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Dimension("relabelling is not a permutation".into()));
        }
        Ok(Self {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    u: perm[e.u],
                    v: perm[e.v],
                    weight: e.weight.clone(),
                })
                .collect(),
        })
    }

    /// Merges vertex classes given as a representative per vertex; loops
    /// created by the merge are dropped.
    fn quotient(&self, class_of: impl Fn(usize) -> usize) -> Self {
        // class representative = min member; new index = rank among representatives
        let mut rep_min = vec![usize::MAX; self.vertex_count];
        for v in 0..self.vertex_count {
            let c = class_of(v);
            rep_min[c] = rep_min[c].min(v);
        }
        let mut reps: Vec<usize> = (0..self.vertex_count)
            .map(|v| rep_min[class_of(v)])
            .collect();
        let mut distinct: Vec<usize> = reps.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for r in reps.iter_mut() {
            *r = distinct.binary_search(r).expect("representative present");
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| reps[e.u] != reps[e.v])
            .map(|e| Edge {
                u: reps[e.u],
                v: reps[e.v],
                weight: e.weight.clone(),
            })
            .collect();
        Self {
            vertex_count: distinct.len(),
            edges,
        }
    }

    pub fn contract_edge(&self, e: usize) -> Result<Self> {
        let edge = self.edge(e)?;
        let (a, b) = (edge.u, edge.v);
        Ok(self.quotient(|v| if v == b { a } else { v }))
    }

    pub fn identify_vertices(&self, set: &[usize]) -> Result<Self> {
        let Some(&first) = set.first() else {
            return Err(Error::EmptyVertexSet);
        };
        for &v in set {
            self.check_vertex(v)?;
        }
        let members: BTreeSet<usize> = set.iter().copied().collect();
        Ok(self.quotient(|v| if members.contains(&v) { first } else { v }))
    }

    pub fn contract_edge_set(&self, set: &[usize]) -> Result<Self> {
        let mut uf = UnionFind::new(self.vertex_count);
        for &e in set {
            let edge = self.edge(e)?;
            uf.union(edge.u, edge.v);
        }
        let roots: Vec<usize> = (0..self.vertex_count).map(|v| uf.find(v)).collect();
        Ok(self.quotient(|v| roots[v]))
    }

    /// Replaces every parallel class by one edge carrying the summed
    /// conductance. Edges appear in order of each class's first member.
    pub fn simplify_parallel(&self) -> Self {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        for e in &self.edges {
            match index.get(&ordered(e.u, e.v)) {
                Some(&i) => edges[i].weight += &e.weight,
                None => {
                    index.insert(ordered(e.u, e.v), edges.len());
                    edges.push(e.clone());
                }
            }
        }
        Self {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    /// Product of the weights of the given edges.
    pub fn weight_product(&self, set: &[usize]) -> Result<Rational> {
        set.iter()
            .try_fold(Rational::one(), |acc, &e| Ok(acc * &self.edge(e)?.weight))
    }

    /// Conductance between `u` and `v` summed over parallel edges.
    pub fn conductance_between(&self, u: usize, v: usize) -> Rational {
        self.edges
            .iter()
            .filter(|e| ordered(e.u, e.v) == ordered(u, v))
            .fold(Rational::zero(), |acc, e| acc + &e.weight)
    }
}

pub(crate) fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

pub fn complete_graph(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::Domain("complete graph needs n >= 1".into()));
    }
    let mut g = Multigraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_unit(i, j, 1);
        }
    }
    Ok(g)
}

/// `K_{m,n}` with the X side at `0..m` and the Y side at `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Multigraph> {
    build_gmnp(m, n, 0)
}

/// `K_{m,n}` minus the matching `{x_i y_i : i < p}`.
pub fn build_gmnp(m: usize, n: usize, p: usize) -> Result<Multigraph> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("bipartite sides must be nonempty".into()));
    }
    if p > m.min(n) {
        return Err(Error::Domain(format!(
            "p = {p} exceeds min(m, n) = {}",
            m.min(n)
        )));
    }
    let mut g = Multigraph::new(m + n);
    for i in 0..m {
        for j in 0..n {
            if !(i == j && i < p) {
                g.add_unit(i, m + j, 1);
            }
        }
    }
    Ok(g)
}

/// Vertex layout of `K_{m,n}` with a `k`-matching contracted.
///
/// Indices: `s = 0`, `x_1..x_{m-k-1}` follow, then `t`, `y_1..y_{n-k-1}`,
/// and finally the merged vertices `z_1..z_k`. With `k = 0` this is exactly
/// the [`complete_bipartite`] layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingContraction {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl MatchingContraction {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Domain("bipartite sides must be nonempty".into()));
        }
        if k > m.min(n) {
            return Err(Error::Domain(format!(
                "k = {k} exceeds min(m, n) = {}",
                m.min(n)
            )));
        }
        Ok(Self { m, n, k })
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n - self.k
    }

    /// X-side vertices left unmatched (`s` first).
    pub fn x_side(&self) -> Vec<usize> {
        (0..self.m - self.k).collect()
    }

    pub fn y_side(&self) -> Vec<usize> {
        (self.m - self.k..self.m + self.n - 2 * self.k).collect()
    }

    pub fn s(&self) -> usize {
        0
    }

    pub fn t(&self) -> usize {
        self.m - self.k
    }

    /// `x_i` for `1 <= i <= m-k-1`.
    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i < self.m - self.k);
        i
    }

    /// `y_j` for `1 <= j <= n-k-1`.
    pub fn y(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j < self.n - self.k);
        self.m - self.k + j
    }

    /// `z_i` for `1 <= i <= k`.
    pub fn z(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.k);
        self.m + self.n - 2 * self.k + i - 1
    }

    pub fn build(&self) -> Multigraph {
        let mut g = Multigraph::new(self.vertex_count());
        let (xs, ys) = (self.x_side(), self.y_side());
        for &x in &xs {
            for &y in &ys {
                g.add_unit(x, y, 1);
            }
        }
        for i in 1..=self.k {
            let z = self.z(i);
            for &x in &xs {
                g.add_unit(x, z, 1);
            }
            for &y in &ys {
                g.add_unit(y, z, 1);
            }
        }
        for i in 1..=self.k {
            for j in i + 1..=self.k {
                g.add_unit(self.z(i), self.z(j), 2);
            }
        }
        g
    }
}

pub fn build_kmn_over_matching(m: usize, n: usize, k: usize) -> Result<Multigraph> {
    Ok(MatchingContraction::new(m, n, k)?.build())
}

/// Vertex layout of `K_{m,n}` with a tree on `s` X-vertices and `t`
/// Y-vertices contracted to `z`.
///
/// Indices: `z = 0`, `x_1..x_{m-s}` at `1..=m-s`, then `y_0..y_{n-t-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeContraction {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub t: usize,
}

impl TreeContraction {
    pub fn new(m: usize, n: usize, s: usize, t: usize) -> Result<Self> {
        if s == 0 || t == 0 || s > m || t > n {
            return Err(Error::Domain(format!(
                "tree sizes need 1 <= s <= m and 1 <= t <= n, got m={m} n={n} s={s} t={t}"
            )));
        }
        Ok(Self { m, n, s, t })
    }

    pub fn vertex_count(&self) -> usize {
        1 + (self.m - self.s) + (self.n - self.t)
    }

    pub fn z(&self) -> usize {
        0
    }

    /// `x_i` for `1 <= i <= m-s`.
    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.m - self.s);
        i
    }

    /// `y_j` for `0 <= j <= n-t-1`.
    pub fn y(&self, j: usize) -> usize {
        debug_assert!(j < self.n - self.t);
        1 + self.m - self.s + j
    }

    pub fn build(&self) -> Multigraph {
        let mut g = Multigraph::new(self.vertex_count());
        let xs = self.m - self.s;
        let ys = self.n - self.t;
        for i in 1..=xs {
            for j in 0..ys {
                g.add_unit(self.x(i), self.y(j), 1);
            }
        }
        for i in 1..=xs {
            g.add_unit(self.z(), self.x(i), self.t);
        }
        for j in 0..ys {
            g.add_unit(self.z(), self.y(j), self.s);
        }
        g
    }
}

pub fn build_kmn_over_tree(m: usize, n: usize, s: usize, t: usize) -> Result<Multigraph> {
    Ok(TreeContraction::new(m, n, s, t)?.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn path3() -> Multigraph {
        Multigraph::from_unit_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_bad_weights() {
        let mut g = Multigraph::new(2);
        assert_eq!(g.add_edge(1, 1, int(1)), Err(Error::Loop(1)));
        assert!(matches!(
            g.add_edge(0, 1, int(0)),
            Err(Error::NonPositiveWeight(_))
        ));
        assert!(matches!(
            g.add_edge(0, 2, int(1)),
            Err(Error::InvalidVertex { .. })
        ));
    }

    #[test]
    fn contract_triangle_edge() {
        let g = complete_graph(3).unwrap().contract_edge(0).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert!(g
            .edges()
            .iter()
            .all(|e| (e.u, e.v) == (0, 1) && e.weight == int(1)));
    }

    #[test]
    fn contract_path_edge() {
        let g = path3().contract_edge(0).unwrap();
        assert_eq!(g, Multigraph::from_unit_edges(2, &[(0, 1)]).unwrap());
    }

    #[test]
    fn contracting_a_parallel_copy_removes_both() {
        let g = Multigraph::from_unit_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let c = g.contract_edge(1).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (1, 0));
    }

    #[test]
    fn contract_renumbers_higher_vertices() {
        // contract 1-3 in a path 0-1-2-3: vertex 3 merges into 1
        let g = Multigraph::from_unit_edges(4, &[(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        let c = g.contract_edge(3).unwrap();
        assert_eq!(
            c,
            Multigraph::from_unit_edges(3, &[(0, 1), (1, 2), (2, 1)]).unwrap()
        );
        assert!(matches!(g.contract_edge(9), Err(Error::InvalidEdge { .. })));
    }

    #[test]
    fn identify_one_side_of_k22() {
        let g = complete_bipartite(2, 2)
            .unwrap()
            .identify_vertices(&[0, 1])
            .unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 4));
        assert_eq!(g.degree_sequence(), vec![4, 2, 2]);
        assert!(!g.is_simple());
    }

    #[test]
    fn identify_singleton_and_empty() {
        let g = complete_graph(4).unwrap();
        assert_eq!(g.identify_vertices(&[2]).unwrap(), g);
        assert_eq!(g.identify_vertices(&[]), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn identify_adjacent_matches_contraction() {
        let g = complete_graph(3).unwrap();
        assert_eq!(
            g.identify_vertices(&[0, 1]).unwrap(),
            g.contract_edge(0).unwrap()
        );
    }

    #[test]
    fn contract_edge_set_cases() {
        let k3 = complete_graph(3).unwrap();
        assert_eq!(k3.contract_edge_set(&[]).unwrap(), k3);
        let single = k3.contract_edge_set(&[0, 1]).unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
    }

    #[test]
    fn contract_two_matching_in_k44() {
        // x_i = i, y_j = 4 + j; match x2-y2 and x3-y3
        let g = complete_bipartite(4, 4).unwrap();
        let e = |x: usize, y: usize| {
            g.edges()
                .iter()
                .position(|ed| (ed.u, ed.v) == (x, 4 + y))
                .unwrap()
        };
        let c = g.contract_edge_set(&[e(2, 2), e(3, 3)]).unwrap();
        assert_eq!(c.vertex_count(), 6);
        assert_eq!(c.edge_count(), 14);
        // merged vertices take indices 2 and 3 after compaction
        let z1z2: Vec<_> = c
            .edges()
            .iter()
            .filter(|ed| ordered(ed.u, ed.v) == (2, 3))
            .collect();
        assert_eq!(z1z2.len(), 2);
        let mut a = c.degree_sequence();
        let mut b = build_kmn_over_matching(4, 4, 2).unwrap().degree_sequence();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn simplify_parallel_cases() {
        let g = Multigraph::from_unit_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let s = g.simplify_parallel();
        assert_eq!(
            s.edges(),
            &[Edge {
                u: 0,
                v: 1,
                weight: int(2)
            }]
        );
        let k3 = complete_graph(3).unwrap();
        assert_eq!(k3.simplify_parallel(), k3);
    }

    #[test]
    fn complete_builders() {
        let k3 = complete_graph(3).unwrap();
        assert_eq!((k3.vertex_count(), k3.edge_count()), (3, 3));
        let k23 = complete_bipartite(2, 3).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert_eq!(k23.degree_sequence(), vec![3, 3, 2, 2, 2]);
        assert_eq!(complete_bipartite(1, 1).unwrap().edge_count(), 1);
        assert!(complete_graph(0).is_err());
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn gmnp_builder() {
        assert_eq!(build_gmnp(3, 3, 0).unwrap().edge_count(), 9);
        let g = build_gmnp(3, 3, 1).unwrap();
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.degree_sequence(), vec![2, 3, 3, 2, 3, 3]);
        let c6 = build_gmnp(3, 3, 3).unwrap();
        assert!(c6.degree_sequence().iter().all(|&d| d == 2));
        assert!(c6.is_connected());
        assert!(build_gmnp(3, 3, 4).is_err());
    }

    #[test]
    fn matching_contraction_builder() {
        assert_eq!(build_kmn_over_matching(6, 7, 3).unwrap().vertex_count(), 10);
        assert_eq!(
            build_kmn_over_matching(3, 4, 0).unwrap(),
            complete_bipartite(3, 4).unwrap()
        );
        assert!(build_kmn_over_matching(3, 4, 4).is_err());
        let layout = MatchingContraction::new(6, 7, 3).unwrap();
        let g = layout.build();
        assert_eq!(g.conductance_between(layout.z(1), layout.z(3)), int(2));
        assert_eq!(g.conductance_between(layout.s(), layout.t()), int(1));
        assert_eq!(g.conductance_between(layout.s(), layout.x(1)), int(0));
    }

    #[test]
    fn tree_contraction_builder() {
        let g = build_kmn_over_tree(3, 3, 2, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 7));
        let single = build_kmn_over_tree(4, 5, 4, 5).unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
        assert!(build_kmn_over_tree(3, 3, 0, 1).is_err());
        assert!(build_kmn_over_tree(3, 3, 4, 1).is_err());
        let mut a = build_kmn_over_tree(4, 5, 1, 1).unwrap().degree_sequence();
        let mut b = build_kmn_over_matching(4, 5, 1).unwrap().degree_sequence();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn relabel_requires_permutation() {
        let g = path3();
        assert!(g.relabel(&[0, 0, 1]).is_err());
        let r = g.relabel(&[2, 1, 0]).unwrap();
        assert_eq!(r.degree_sequence(), vec![1, 2, 1]);
    }
}

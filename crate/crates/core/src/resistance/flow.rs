//! Edge currents and Kirchhoff-law checks.
//!
//! A [`FlowAssignment`] stores one current per edge, oriented from the
//! edge's `u` end to its `v` end; the reverse current is implied by sign.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use super::{potentials, ResistorNetwork};
use crate::error::{domain, Error, Result};
use crate::graph::{MatchingContraction, Multigraph, TreeContraction, UnionFind};
use crate::linalg::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub source: usize,
    pub sink: usize,
    /// Current entering at `source` and leaving at `sink`.
    pub injection: Rational,
    /// `currents[e]` flows from `edges[e].u` to `edges[e].v`.
    pub currents: Vec<Rational>,
}

impl FlowAssignment {
    /// Current from `a` to `b` along edge `e` (negated when traversed backwards).
    pub fn current_from(&self, g: &Multigraph, e: usize, a: usize) -> Result<Rational> {
        let edge = g.edge(e)?;
        let i = self.currents.get(e).ok_or(Error::MissingCurrent {
            expected: g.edge_count(),
            got: self.currents.len(),
        })?;
        if edge.u == a {
            Ok(i.clone())
        } else if edge.v == a {
            Ok(-i.clone())
        } else {
            Err(Error::InvalidCycle(format!(
                "vertex {a} is not on edge {e}"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Traversal {
    pub edge: usize,
    /// True when the edge is walked from its `u` end to its `v` end.
    pub forward: bool,
}

/// Closed walk given by a start vertex and a sequence of edge traversals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub start: usize,
    pub steps: Vec<Traversal>,
}

impl Cycle {
    /// Visited vertices, starting and ending at `start`.
    pub fn vertices(&self, g: &Multigraph) -> Result<Vec<usize>> {
        if self.steps.is_empty() {
            return Err(Error::InvalidCycle("no edges".into()));
        }
        g.check_vertex(self.start)
            .map_err(|_| Error::InvalidCycle(format!("start {} out of range", self.start)))?;
        let mut at = self.start;
        let mut walk = vec![at];
        for step in &self.steps {
            let edge = g
                .edge(step.edge)
                .map_err(|_| Error::InvalidCycle(format!("edge {} out of range", step.edge)))?;
            let (from, to) = if step.forward {
                (edge.u, edge.v)
            } else {
                (edge.v, edge.u)
            };
            if from != at {
                return Err(Error::InvalidCycle(format!(
                    "edge {} does not leave vertex {at}",
                    step.edge
                )));
            }
            at = to;
            walk.push(at);
        }
        if at != self.start {
            return Err(Error::InvalidCycle(format!(
                "walk ends at {at}, not at {}",
                self.start
            )));
        }
        Ok(walk)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Parent pointers of a spanning tree rooted at `root`.
struct RootedTree {
    parent: Vec<Option<(usize, usize)>>, // (parent vertex, tree edge)
    depth: Vec<usize>,
    order: Vec<usize>,
}

fn root_tree(g: &Multigraph, tree: &[usize], root: usize) -> Result<RootedTree> {
    let n = g.vertex_count();
    let mut in_tree = vec![false; g.edge_count()];
    let mut uf = UnionFind::new(n);
    for &e in tree {
        let edge = g.edge(e)?;
        if std::mem::replace(&mut in_tree[e], true) {
            return Err(Error::NotSpanningTree(format!("edge {e} listed twice")));
        }
        if !uf.union(edge.u, edge.v) {
            return Err(Error::NotSpanningTree(format!("edge {e} closes a cycle")));
        }
    }
    if tree.len() + 1 != n {
        return Err(Error::NotSpanningTree(format!(
            "{} edges cannot span {n} vertices",
            tree.len()
        )));
    }
    let mut adj = vec![Vec::new(); n];
    for &e in tree {
        let edge = &g.edges()[e];
        adj[edge.u].push((edge.v, e));
        adj[edge.v].push((edge.u, e));
    }
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, e));
                depth[w] = depth[v] + 1;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    Ok(RootedTree {
        parent,
        depth,
        order,
    })
}

fn step_from(g: &Multigraph, e: usize, from: usize) -> Traversal {
    Traversal {
        edge: e,
        forward: g.edges()[e].u == from,
    }
}

/// One cycle per non-tree edge `e = (u, v)`: `e` walked from `u` to `v`,
/// then the tree path back to `u`. Cycles come in edge-index order.
pub fn fundamental_cycle_basis(g: &Multigraph, tree: &[usize]) -> Result<Vec<Cycle>> {
    fundamental_cycle_basis_rooted(g, tree, 0)
}

/// [`fundamental_cycle_basis`] with the tree rooted at `root`.
pub fn fundamental_cycle_basis_rooted(
    g: &Multigraph,
    tree: &[usize],
    root: usize,
) -> Result<Vec<Cycle>> {
    if g.vertex_count() == 0 {
        return Err(Error::NotSpanningTree("empty graph".into()));
    }
    g.check_vertex(root)?;
    let rooted = root_tree(g, tree, root)?;
    let mut in_tree = vec![false; g.edge_count()];
    for &e in tree {
        in_tree[e] = true;
    }
    let mut basis = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if in_tree[e] {
            continue;
        }
        let (mut a, mut b) = (edge.v, edge.u);
        // climb from v towards the LCA, and from u, recording both halves
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if rooted.depth[a] >= rooted.depth[b] {
                let (p, te) = rooted.parent[a].expect("non-root has parent");
                up.push(step_from(g, te, a));
                a = p;
            } else {
                let (p, te) = rooted.parent[b].expect("non-root has parent");
                down.push(step_from(g, te, p));
                b = p;
            }
        }
        let mut steps = vec![step_from(g, e, edge.u)];
        steps.extend(up);
        steps.extend(down.into_iter().rev());
        basis.push(Cycle {
            start: edge.u,
            steps,
        });
    }
    Ok(basis)
}

fn check_currents(g: &Multigraph, flow: &FlowAssignment) -> Result<()> {
    if flow.currents.len() != g.edge_count() {
        return Err(Error::MissingCurrent {
            expected: g.edge_count(),
            got: flow.currents.len(),
        });
    }
    g.check_vertex(flow.source)?;
    g.check_vertex(flow.sink)
}

/// Per vertex: net current leaving through edges minus external injection.
/// All zero exactly when the current law holds.
pub fn kcl_residuals(net: &ResistorNetwork, flow: &FlowAssignment) -> Result<Vec<Rational>> {
    let g = net.graph();
    check_currents(g, flow)?;
    let mut out = vec![Rational::zero(); g.vertex_count()];
    for (e, i) in g.edges().iter().zip(&flow.currents) {
        out[e.u] += i;
        out[e.v] -= i;
    }
    out[flow.source] -= &flow.injection;
    out[flow.sink] += &flow.injection;
    Ok(out)
}

/// Per cycle: the oriented sum of `I_e * r_e`. All zero exactly when the
/// voltage law holds on the given cycles.
pub fn kvl_residuals(
    net: &ResistorNetwork,
    flow: &FlowAssignment,
    basis: &[Cycle],
) -> Result<Vec<Rational>> {
    let g = net.graph();
    check_currents(g, flow)?;
    basis
        .iter()
        .map(|cycle| {
            cycle.vertices(g)?;
            Ok(cycle
                .steps
                .iter()
                .map(|s| {
                    let edge = &g.edges()[s.edge];
                    let drop = &flow.currents[s.edge] / &edge.weight;
                    if s.forward {
                        drop
                    } else {
                        -drop
                    }
                })
                .sum())
        })
        .collect()
}

/// Currents induced by the potentials of a unit injection at `source`.
pub fn potential_flow(net: &ResistorNetwork, source: usize, sink: usize) -> Result<FlowAssignment> {
    let phi = potentials(net, source, sink, &Rational::one())?;
    let currents = net
        .graph()
        .edges()
        .iter()
        .map(|e| (&phi[e.u] - &phi[e.v]) * &e.weight)
        .collect();
    Ok(FlowAssignment {
        source,
        sink,
        injection: Rational::one(),
        currents,
    })
}

/// Potentials read off a flow along the given spanning tree, with the root
/// at zero.
pub fn tree_potentials(
    net: &ResistorNetwork,
    flow: &FlowAssignment,
    tree: &[usize],
    root: usize,
) -> Result<Vec<Rational>> {
    let g = net.graph();
    check_currents(g, flow)?;
    let rooted = root_tree(g, tree, root)?;
    let mut phi = vec![Rational::zero(); g.vertex_count()];
    for &v in rooted.order.iter().skip(1) {
        let (p, e) = rooted.parent[v].expect("non-root has parent");
        // current p -> v drops potential by I * r
        let drop = flow.current_from(g, e, p)? / &g.edges()[e].weight;
        phi[v] = &phi[p] - drop;
    }
    Ok(phi)
}

/// A hand-assigned flow on a contracted complete bipartite graph, with the
/// star spanning tree used to check it.
#[derive(Debug, Clone)]
pub struct ExplicitFlow {
    pub network: ResistorNetwork,
    pub flow: FlowAssignment,
    pub center: usize,
    pub star: Vec<usize>,
}

impl ExplicitFlow {
    pub fn kcl(&self) -> Result<Vec<Rational>> {
        kcl_residuals(&self.network, &self.flow)
    }

    /// KVL residuals over the fundamental basis of the star.
    pub fn kvl(&self) -> Result<Vec<Rational>> {
        let basis = fundamental_cycle_basis_rooted(self.network.graph(), &self.star, self.center)?;
        kvl_residuals(&self.network, &self.flow, &basis)
    }

    /// Source-to-sink voltage per unit injected current.
    pub fn voltage_ratio(&self) -> Result<Rational> {
        let phi = tree_potentials(&self.network, &self.flow, &self.star, self.center)?;
        Ok((&phi[self.flow.source] - &phi[self.flow.sink]) / &self.flow.injection)
    }

    pub fn current(&self, a: usize, b: usize) -> Result<Rational> {
        let g = self.network.graph();
        let e = g
            .edges()
            .iter()
            .position(|e| (e.u, e.v) == (a, b) || (e.u, e.v) == (b, a))
            .ok_or_else(|| Error::Domain(format!("no edge between {a} and {b}")))?;
        self.flow.current_from(g, e, a)
    }
}

fn star_edges(g: &Multigraph, center: usize) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.u == center || e.v == center)
        .map(|(i, _)| i)
        .collect()
}

fn assign<R: Copy>(
    g: &Multigraph,
    role: impl Fn(usize) -> R,
    table: impl Fn(R, R) -> Option<Rational>,
) -> Vec<Rational> {
    g.edges()
        .iter()
        .map(|e| {
            let (a, b) = (role(e.u), role(e.v));
            table(a, b)
                .or_else(|| table(b, a).map(|i| -i))
                .expect("every edge class has an assigned current")
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatchingRole {
    S,
    T,
    X,
    Y,
    Z,
}

/// `K_{m,n}/M` with the doubled `z_i z_j` edges merged to resistance 1/2, and
/// the explicit unit `s -> t` flow with `N = m + n - k`.
pub fn paper_flow_matching(m: usize, n: usize, k: usize) -> Result<ExplicitFlow> {
    if m < 2 || n < 2 || k < 1 || k + 1 > m.min(n) {
        return domain(format!(
            "matching flow needs m, n >= 2 and 1 <= k <= min(m, n) - 1, got m={m} n={n} k={k}"
        ));
    }
    let layout = MatchingContraction::new(m, n, k)?;
    let g = layout.build().simplify_parallel();
    let big_n = int((m + n - k) as i64);
    let (mi, ni) = (int(m as i64), int(n as i64));
    let inv = |x: &Rational| x.recip();
    let one_m = inv(&mi);
    let one_n = inv(&ni);
    let one_mn = inv(&(&mi * &big_n));
    let one_nn = inv(&(&ni * &big_n));
    let w = [
        &one_m + &one_n - &one_mn - &one_nn,
        &one_n - &one_mn - &one_nn,
        &one_n - &one_nn,
        &one_mn + &one_nn - &one_m,
        &one_mn - &one_m,
        -&one_mn - &one_nn,
        one_nn.clone(),
        -one_mn.clone(),
    ];
    let role = |v: usize| {
        use MatchingRole::*;
        if v == layout.s() {
            S
        } else if v == layout.t() {
            T
        } else if v < layout.t() {
            X
        } else if v < layout.z(1) {
            Y
        } else {
            Z
        }
    };
    let table = |a: MatchingRole, b: MatchingRole| {
        use MatchingRole::*;
        let i = match (a, b) {
            (S, T) => 0,
            (S, Y) => 1,
            (S, Z) => 2,
            (T, X) => 3,
            (T, Z) => 4,
            (X, Y) => 5,
            (Z, X) => 6,
            (Z, Y) => 7,
            (Z, Z) => return Some(Rational::zero()),
            _ => return None,
        };
        Some(w[i].clone())
    };
    let currents = assign(&g, role, table);
    let center = layout.z(1);
    let star = star_edges(&g, center);
    Ok(ExplicitFlow {
        network: ResistorNetwork::new(g)?,
        flow: FlowAssignment {
            source: layout.s(),
            sink: layout.t(),
            injection: Rational::one(),
            currents,
        },
        center,
        star,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TreeRole {
    Z,
    X,
    Y0,
    Y,
}

/// `K_{m,n}/T` with parallel classes merged (`z x_i` at resistance `1/t`,
/// `z y_j` at `1/s`) and the explicit unit `z -> y_0` flow with
/// `N = sn + tm - st`.
pub fn paper_flow_tree(m: usize, n: usize, s: usize, t: usize) -> Result<ExplicitFlow> {
    if s < 1 || s > m || t < 1 || t + 1 > n {
        return domain(format!(
            "tree flow needs 1 <= s <= m and 1 <= t <= n - 1, got m={m} n={n} s={s} t={t}"
        ));
    }
    let layout = TreeContraction::new(m, n, s, t)?;
    let g = layout.build().simplify_parallel();
    let (mi, si, ti) = (int(m as i64), int(s as i64), int(t as i64));
    let big_n = int((s * n + t * m - s * t) as i64);
    let m_big_n = &mi * &big_n;
    let w1 = &si * int((m - s) as i64) / &m_big_n;
    let w = [
        &si / &mi + &w1,
        w1.clone(),
        &ti / &big_n,
        mi.recip() - &si / &m_big_n,
        -(&si / &m_big_n),
    ];
    let y0 = layout.y(0);
    let role = |v: usize| {
        if v == layout.z() {
            TreeRole::Z
        } else if v == y0 {
            TreeRole::Y0
        } else if v < y0 {
            TreeRole::X
        } else {
            TreeRole::Y
        }
    };
    let table = |a: TreeRole, b: TreeRole| {
        use TreeRole::*;
        let i = match (a, b) {
            (Z, Y0) => 0,
            (Z, Y) => 1,
            (Z, X) => 2,
            (X, Y0) => 3,
            (X, Y) => 4,
            _ => return None,
        };
        Some(w[i].clone())
    };
    let currents = assign(&g, role, table);
    let center = layout.z();
    let star = star_edges(&g, center);
    Ok(ExplicitFlow {
        network: ResistorNetwork::new(g)?,
        flow: FlowAssignment {
            source: center,
            sink: y0,
            injection: Rational::one(),
            currents,
        },
        center,
        star,
    })
}

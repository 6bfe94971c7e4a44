//! Effective resistance of weighted networks.
//!
//! Edges carry conductances; an edge's resistance is the reciprocal. Two
//! independent routes compute `R_uv`: grounding `v` and solving the reduced
//! Laplacian system for a unit injection at `u`, and the spanning-tree ratio
//! `tau(G / {u, v}) / tau(G)`.

mod flow;
mod reduce;

pub use flow::{
    fundamental_cycle_basis, fundamental_cycle_basis_rooted, kcl_residuals, kvl_residuals,
    paper_flow_matching, paper_flow_tree, potential_flow, tree_potentials, Cycle, ExplicitFlow,
    FlowAssignment, Traversal,
};
pub use reduce::{series_parallel_reduce, ReductionRule, ReductionStep};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::linalg::{int, inverse_exact, solve_exact, Rational};
use crate::spanning::{laplacian, tau};

/// A connected multigraph read as a resistor network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistorNetwork {
    graph: Multigraph,
}

impl ResistorNetwork {
    pub fn new(graph: Multigraph) -> Result<Self> {
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Self { graph })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)
    }
}

/// Vertex potentials for `current` injected at `source` and drawn at `sink`,
/// with the sink grounded.
pub fn potentials(
    net: &ResistorNetwork,
    source: usize,
    sink: usize,
    current: &Rational,
) -> Result<Vec<Rational>> {
    net.check_pair(source, sink)?;
    let n = net.vertex_count();
    let mut phi = vec![Rational::zero(); n];
    if source == sink {
        return Ok(phi);
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != sink).collect();
    let reduced = laplacian(&net.graph).select(&keep, &keep);
    let rhs: Vec<Rational> = keep
        .iter()
        .map(|&v| {
            if v == source {
                current.clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let x = solve_exact(&reduced, &rhs)?;
    for (&v, value) in keep.iter().zip(x) {
        phi[v] = value;
    }
    Ok(phi)
}

/// `R_uv` via a grounded Laplacian solve.
pub fn effective_resistance(net: &ResistorNetwork, u: usize, v: usize) -> Result<Rational> {
    let phi = potentials(net, u, v, &Rational::one())?;
    Ok(phi[u].clone())
}

/// `R_uv = tau(G / {u, v}) / tau(G)`.
pub fn effective_resistance_tau(net: &ResistorNetwork, u: usize, v: usize) -> Result<Rational> {
    net.check_pair(u, v)?;
    if u == v {
        return Ok(Rational::zero());
    }
    let merged = net.graph.identify_vertices(&[u, v])?;
    Ok(tau(&merged) / tau(&net.graph))
}

/// All-pairs effective resistances from one inversion of the Laplacian
/// grounded at the last vertex.
pub fn resistance_matrix(net: &ResistorNetwork) -> Result<Vec<Vec<Rational>>> {
    let n = net.vertex_count();
    if n <= 1 {
        return Ok(vec![vec![Rational::zero(); n]; n]);
    }
    let ground = n - 1;
    let keep: Vec<usize> = (0..ground).collect();
    let inv = inverse_exact(&laplacian(&net.graph).select(&keep, &keep))?;
    // R_ij = G_ii + G_jj - 2 G_ij with G the grounded Green's function (G_g* = 0)
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let g = |a: usize, b: usize| {
                        if a == ground || b == ground {
                            Rational::zero()
                        } else {
                            inv[(a, b)].clone()
                        }
                    };
                    g(i, i) + g(j, j) - int(2) * g(i, j)
                })
                .collect()
        })
        .collect())
}

/// Sum of effective resistances over unordered vertex pairs.
pub fn kirchhoff_index(net: &ResistorNetwork) -> Result<Rational> {
    let r = resistance_matrix(net)?;
    let n = net.vertex_count();
    Ok((0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| r[i][j].clone())
        .sum())
}

/// `sum over edges of R_ij / r_ij - (n - 1)`; zero for every connected network.
pub fn foster_residual(net: &ResistorNetwork) -> Result<Rational> {
    let r = resistance_matrix(net)?;
    let total: Rational = net
        .graph
        .edges()
        .iter()
        .map(|e| &r[e.u][e.v] * &e.weight)
        .sum();
    Ok(total - int(net.vertex_count() as i64 - 1))
}

/// Left side of the weighted local sum rule at `(u, v)` minus 2, evaluated
/// on the parallel-merged network.
pub fn local_rule_residual(net: &ResistorNetwork, u: usize, v: usize) -> Result<Rational> {
    net.check_pair(u, v)?;
    let r = resistance_matrix(net)?;
    local_rule_residual_with(net.graph(), &r, u, v)
}

/// Same as [`local_rule_residual`] against a precomputed resistance matrix.
pub fn local_rule_residual_with(
    graph: &Multigraph,
    r: &[Vec<Rational>],
    u: usize,
    v: usize,
) -> Result<Rational> {
    graph.check_vertex(u)?;
    graph.check_vertex(v)?;
    if u == v {
        return Err(Error::Domain(
            "local rule needs two distinct vertices".into(),
        ));
    }
    let simple = graph.simplify_parallel();
    let mut lhs = Rational::zero();
    for e in simple.edges() {
        let Some(x) = e.other(u) else { continue };
        lhs += &e.weight * (&r[u][v] + &r[u][x] - &r[v][x]);
    }
    Ok(lhs - int(2))
}

/// Twin pair `(a, b)` in a simple graph, i.e. `N(a) \ {b} = N(b) \ {a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Twins {
    pub a: usize,
    pub b: usize,
    pub adjacent: bool,
    /// `|N(a)|`, counting `b` when adjacent.
    pub degree: usize,
}

impl Twins {
    /// Resistance between unit-weight twins: `2/d` when non-adjacent and
    /// `2/(d+1)` when adjacent.
    pub fn resistance(&self) -> Rational {
        let d = self.degree as i64;
        if self.adjacent {
            Rational::new(2.into(), (d + 1).into())
        } else {
            Rational::new(2.into(), d.into())
        }
    }
}

/// All twin pairs with nonempty neighbourhoods, ignoring weights and
/// parallel multiplicities.
pub fn find_twins(g: &Multigraph) -> Vec<Twins> {
    let n = g.vertex_count();
    let nbrs: Vec<_> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let adjacent = nbrs[a].contains(&b);
            let mut na = nbrs[a].clone();
            let mut nb = nbrs[b].clone();
            na.remove(&b);
            nb.remove(&a);
            if na == nb && !nbrs[a].is_empty() {
                out.push(Twins {
                    a,
                    b,
                    adjacent,
                    degree: nbrs[a].len(),
                });
            }
        }
    }
    out
}

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::ResistorNetwork;
use crate::error::{domain, Error, Result};
use crate::graph::ordered;
use crate::linalg::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionRule {
    /// Parallel class merged: conductances add.
    Parallel,
    /// Degree-2 vertex elided: resistances add.
    Series,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    /// Parallel: the two endpoints. Series: `[p, x, q]` with `x` removed.
    pub vertices: Vec<usize>,
    pub before: Vec<Rational>,
    pub after: Rational,
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.before.iter().map(|r| r.to_string()).collect();
        match self.rule {
            ReductionRule::Parallel => write!(
                f,
                "parallel {}-{}: {} -> {}",
                self.vertices[0],
                self.vertices[1],
                parts.join(" || "),
                self.after
            ),
            ReductionRule::Series => write!(
                f,
                "series at {} ({}-{}): {} -> {}",
                self.vertices[1],
                self.vertices[0],
                self.vertices[2],
                parts.join(" + "),
                self.after
            ),
        }
    }
}

/// Reduces the network between `a` and `b` by the series and parallel
/// laws alone. Fails with [`Error::NotSeriesParallel`] when a fixpoint is
/// reached before a single `a`-`b` resistor remains.
pub fn series_parallel_reduce(
    net: &ResistorNetwork,
    a: usize,
    b: usize,
) -> Result<(Rational, Vec<ReductionStep>)> {
    let g = net.graph();
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return domain("series-parallel reduction needs two distinct terminals");
    }
    // resistors as (u, v, r) in insertion order
    let mut edges: Vec<(usize, usize, Rational)> = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.resistance()))
        .collect();
    let mut trace = Vec::new();
    loop {
        merge_parallel(&mut edges, &mut trace);
        if !elide_series(&mut edges, a, b, &mut trace) {
            break;
        }
    }
    match edges.as_slice() {
        [(u, v, r)] if ordered(*u, *v) == ordered(a, b) => Ok((r.clone(), trace)),
        _ => Err(Error::NotSeriesParallel { a, b }),
    }
}

fn merge_parallel(edges: &mut Vec<(usize, usize, Rational)>, trace: &mut Vec<ReductionStep>) {
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut first_seen = Vec::new();
    for (i, (u, v, _)) in edges.iter().enumerate() {
        let key = ordered(*u, *v);
        let class = classes.entry(key).or_default();
        if class.is_empty() {
            first_seen.push(key);
        }
        class.push(i);
    }
    if first_seen.len() == edges.len() {
        return;
    }
    let mut merged = Vec::with_capacity(first_seen.len());
    for key in first_seen {
        let members = &classes[&key];
        if members.len() == 1 {
            merged.push(edges[members[0]].clone());
            continue;
        }
        let before: Vec<Rational> = members.iter().map(|&i| edges[i].2.clone()).collect();
        let conductance: Rational = before.iter().map(|r| r.recip()).sum();
        let after = conductance.recip();
        trace.push(ReductionStep {
            rule: ReductionRule::Parallel,
            vertices: vec![key.0, key.1],
            before,
            after: after.clone(),
        });
        merged.push((key.0, key.1, after));
    }
    *edges = merged;
}

/// Elides the lowest-numbered non-terminal vertex of degree 2, if any.
fn elide_series(
    edges: &mut Vec<(usize, usize, Rational)>,
    a: usize,
    b: usize,
    trace: &mut Vec<ReductionStep>,
) -> bool {
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, (u, v, _)) in edges.iter().enumerate() {
        incident.entry(*u).or_default().push(i);
        incident.entry(*v).or_default().push(i);
    }
    let Some((&x, pair)) = incident
        .iter()
        .find(|(&x, list)| x != a && x != b && list.len() == 2)
    else {
        return false;
    };
    let (i, j) = (pair[0], pair[1]);
    let other = |k: usize| {
        let (u, v, _) = &edges[k];
        if *u == x {
            *v
        } else {
            *u
        }
    };
    let (p, q) = (other(i), other(j));
    let before = vec![edges[i].2.clone(), edges[j].2.clone()];
    let after: Rational = before.iter().fold(Rational::zero(), |acc, r| acc + r);
    trace.push(ReductionStep {
        rule: ReductionRule::Series,
        vertices: vec![p, x, q],
        before,
        after: after.clone(),
    });
    // keep the combined resistor where the first of the pair was
    edges[i] = (p, q, after);
    edges.remove(j);
    true
}

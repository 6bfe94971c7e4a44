//! Cross-verification of the closed forms against the linear-algebra and
//! enumeration oracles, and of the network laws on random graphs.
//!
//! Every check compares two exact rationals. Parameter tuples are
//! independent, so each suite shards its grid over a rayon pool of
//! `jobs` threads and concatenates the per-tuple results in grid order.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas::{
    gmnp_pair_class, gmnp_resistances, kf_gmnp, kf_gmnp_from_table, kf_shi_chen, ratio_matching,
    ratio_tree_s, ratio_tree_t, tau_gmnp, tau_kmn, tau_matching, tau_tree, tree_share_telescoped,
};
use crate::graph::{
    build_gmnp, build_kmn_over_matching, build_kmn_over_tree, complete_bipartite, Multigraph,
};
use crate::linalg::{frac, int, render, Rational};
use crate::resistance::{
    effective_resistance, effective_resistance_tau, find_twins, foster_residual, kirchhoff_index,
    local_rule_residual_with, paper_flow_matching, paper_flow_tree, resistance_matrix,
    series_parallel_reduce, ExplicitFlow, ResistorNetwork,
};
use crate::spanning::{tau, tau_brute, tau_containing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Matching,
    Tree,
    Gmnp,
    Laws,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Matching, Suite::Tree, Suite::Gmnp, Suite::Laws];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Matching => "matching",
            Suite::Tree => "tree",
            Suite::Gmnp => "gmnp",
            Suite::Laws => "laws",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub params: String,
    pub expected: Rational,
    pub actual: Rational,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{} [{}]: expected {}, got {}",
            if self.passed() { "ok" } else { "FAIL" },
            self.suite,
            self.name,
            self.params,
            render(&self.expected),
            render(&self.actual)
        )
    }
}

/// A check that could not be evaluated because one side returned an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError {
    pub suite: &'static str,
    pub name: &'static str,
    pub params: String,
    pub error: Error,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ERROR {}/{} [{}]: {}",
            self.suite, self.name, self.params, self.error
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub errors: Vec<CheckError>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn failed_count(&self) -> usize {
        self.failures().count() + self.errors.len()
    }

    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Check> {
        self.checks.iter().filter(move |c| c.name == name)
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
        self.errors.extend(other.errors);
    }

    /// One line per suite: `suite: passed/total`.
    pub fn summary(&self) -> String {
        let mut suites: Vec<&'static str> = Vec::new();
        for s in self
            .checks
            .iter()
            .map(|c| c.suite)
            .chain(self.errors.iter().map(|e| e.suite))
        {
            if !suites.contains(&s) {
                suites.push(s);
            }
        }
        let mut out = String::new();
        for s in suites {
            let total = self.checks.iter().filter(|c| c.suite == s).count();
            let ok = self
                .checks
                .iter()
                .filter(|c| c.suite == s && c.passed())
                .count();
            let errors = self.errors.iter().filter(|e| e.suite == s).count();
            out.push_str(&format!(
                "{s}: {ok}/{total} checks passed, {errors} errors\n"
            ));
        }
        out.push_str(&format!(
            "total: {} checks, {} failed\n",
            self.checks.len() + self.errors.len(),
            self.failed_count()
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_m: usize,
    pub max_n: usize,
    pub jobs: usize,
    pub seed: u64,
    pub law_graphs: usize,
    pub law_max_vertices: usize,
    pub local_pairs: usize,
    pub triangle_triples: usize,
    pub contraction_edges: usize,
    /// Vertex bound for the brute-force tier of the matching suite (`m + n`).
    pub brute_max: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_m: 5,
            max_n: 5,
            jobs: 0,
            seed: 0x5eed,
            law_graphs: 100,
            law_max_vertices: 9,
            local_pairs: 10,
            triangle_triples: 200,
            contraction_edges: 5,
            brute_max: 8,
        }
    }
}

/// Collects checks for one parameter tuple.
struct Log {
    suite: &'static str,
    params: String,
    report: VerifyReport,
}

impl Log {
    fn new(suite: Suite, params: String) -> Self {
        Self {
            suite: suite.name(),
            params,
            report: VerifyReport::default(),
        }
    }

    fn eq(&mut self, name: &'static str, expected: Result<Rational>, actual: Result<Rational>) {
        match (expected, actual) {
            (Ok(expected), Ok(actual)) => self.report.checks.push(Check {
                suite: self.suite,
                name,
                params: self.params.clone(),
                expected,
                actual,
            }),
            (Err(error), _) | (_, Err(error)) => self.error(name, error),
        }
    }

    fn error(&mut self, name: &'static str, error: Error) {
        self.report.errors.push(CheckError {
            suite: self.suite,
            name,
            params: self.params.clone(),
            error,
        });
    }

    /// Records `sum |r|` over the residuals against zero.
    fn zero(&mut self, name: &'static str, residuals: Result<Vec<Rational>>) {
        let total = residuals.map(|r| r.iter().map(|x| x.abs()).sum());
        self.eq(name, Ok(Rational::zero()), total);
    }
}

fn run<T: Sync>(jobs: usize, items: Vec<T>, f: impl Fn(&T) -> VerifyReport + Sync) -> VerifyReport {
    let work = || {
        items
            .par_iter()
            .map(&f)
            .reduce(VerifyReport::default, |mut a, b| {
                a.merge(b);
                a
            })
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerifyReport {
    match suite {
        Suite::Matching => matching_suite(cfg),
        Suite::Tree => tree_suite(cfg),
        Suite::Gmnp => gmnp_suite(cfg),
        Suite::Laws => law_suite(cfg),
    }
}

pub fn run_all(cfg: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::default();
    for s in Suite::ALL {
        report.merge(run_suite(s, cfg));
    }
    report
}

fn edge_index(g: &Multigraph, u: usize, v: usize) -> usize {
    g.edges()
        .iter()
        .position(|e| (e.u, e.v) == (u, v) || (e.u, e.v) == (v, u))
        .expect("edge exists")
}

fn flow_checks(log: &mut Log, flow: Result<ExplicitFlow>, ratio: Result<Rational>) {
    let flow = match flow {
        Ok(f) => f,
        Err(e) => return log.error("flow", e),
    };
    log.zero("flow-kcl", flow.kcl());
    log.zero("flow-kvl", flow.kvl());
    log.eq("flow-voltage", ratio, flow.voltage_ratio());
    log.eq(
        "flow-voltage-vs-solve",
        effective_resistance(&flow.network, flow.flow.source, flow.flow.sink),
        flow.voltage_ratio(),
    );
}

/// `tau_k` against Matrix-Tree on two independent constructions of
/// `K_{m,n}/M`, brute force on small cases, consecutive ratios, and the
/// explicit current flows.
pub fn matching_suite(cfg: &VerifyConfig) -> VerifyReport {
    let mut grid = Vec::new();
    for m in 2..=cfg.max_m {
        for n in 2..=cfg.max_n {
            for k in 0..m.min(n) {
                grid.push((m, n, k));
            }
        }
    }
    let brute_max = cfg.brute_max;
    run(cfg.jobs, grid, |&(m, n, k)| {
        let mut log = Log::new(Suite::Matching, format!("m={m} n={n} k={k}"));
        let (mu, nu, ku) = (m as u64, n as u64, k as u64);
        let formula = tau_matching(mu, nu, k as u64);
        let kmn = complete_bipartite(m, n).expect("valid sides");
        let matching: Vec<usize> = (0..k).map(|i| edge_index(&kmn, i, m + i)).collect();
        let contracted = kmn.contract_edge_set(&matching).expect("valid edges");
        log.eq("tau-contract", formula.clone(), Ok(tau(&contracted)));
        log.eq(
            "tau-containing",
            formula.clone(),
            tau_containing(&kmn, &matching),
        );
        match build_kmn_over_matching(m, n, k) {
            Ok(g) => {
                log.eq("tau-builder", formula.clone(), Ok(tau(&g)));
                let sorted = |h: &Multigraph| {
                    let mut d = h.degree_sequence();
                    d.sort_unstable();
                    d
                };
                let mismatched = sorted(&g) != sorted(&contracted);
                log.eq("degree-sequence", Ok(int(0)), Ok(int(mismatched as i64)));
                if m + n <= brute_max {
                    log.eq("tau-brute", formula.clone(), tau_brute(&g));
                }
            }
            Err(e) => log.error("tau-builder", e),
        }
        if k >= 1 {
            let next = tau_matching(mu, nu, ku + 1);
            let quotient = next.and_then(|a| formula.clone().map(|b| a / b));
            log.eq("ratio-matching", ratio_matching(mu, nu, ku), quotient);
            flow_checks(
                &mut log,
                paper_flow_matching(m, n, k),
                ratio_matching(mu, nu, ku),
            );
        }
        log.report
    })
}

/// A double star: `x_0` joined to `y_0..y_{t-1}`, `y_0` joined to
/// `x_1..x_{s-1}`, as edge indices of `K_{m,n}`.
fn double_star(kmn: &Multigraph, m: usize, s: usize, t: usize) -> Vec<usize> {
    let mut tree: Vec<usize> = (0..t).map(|j| edge_index(kmn, 0, m + j)).collect();
    tree.extend((1..s).map(|i| edge_index(kmn, i, m)));
    tree
}

/// `tau_{s,t}` against Matrix-Tree, the telescoped ratio products, the
/// ratio formulas themselves, and the explicit tree flows.
pub fn tree_suite(cfg: &VerifyConfig) -> VerifyReport {
    let mut grid = Vec::new();
    for m in 1..=cfg.max_m {
        for n in 1..=cfg.max_n {
            for s in 1..=m {
                for t in 1..=n {
                    grid.push((m, n, s, t));
                }
            }
        }
    }
    run(cfg.jobs, grid, |&(m, n, s, t)| {
        let mut log = Log::new(Suite::Tree, format!("m={m} n={n} s={s} t={t}"));
        let (mu, nu, su, tu) = (m as u64, n as u64, s as u64, t as u64);
        let formula = tau_tree(mu, nu, su, tu);
        match build_kmn_over_tree(m, n, s, t) {
            Ok(g) => log.eq("tau-builder", formula.clone(), Ok(tau(&g))),
            Err(e) => log.error("tau-builder", e),
        }
        let kmn = complete_bipartite(m, n).expect("valid sides");
        log.eq(
            "tau-containing",
            formula.clone(),
            tau_containing(&kmn, &double_star(&kmn, m, s, t)),
        );
        if (s, t) == (m, n) {
            log.eq("tau-full-tree", Ok(int(1)), formula.clone());
        }
        let telescoped =
            tree_share_telescoped(mu, nu, su, tu).and_then(|x| Ok(x * tau_kmn(mu, nu)?));
        log.eq("telescoping", formula.clone(), telescoped);
        if t < n {
            let quotient =
                tau_tree(mu, nu, su, tu + 1).and_then(|a| formula.clone().map(|b| a / b));
            log.eq("ratio-tree-t", ratio_tree_t(mu, nu, su, tu), quotient);
            flow_checks(
                &mut log,
                paper_flow_tree(m, n, s, t),
                ratio_tree_t(mu, nu, su, tu),
            );
        }
        if s < m {
            let quotient =
                tau_tree(mu, nu, su + 1, tu).and_then(|a| formula.clone().map(|b| a / b));
            log.eq("ratio-tree-s", ratio_tree_s(mu, nu, su, tu), quotient);
        }
        log.report
    })
}

/// A pair `(u, v)` of each nonempty class in the `build_gmnp` layout.
pub fn gmnp_representatives(m: usize, n: usize, p: usize) -> Vec<(usize, usize, usize)> {
    let mut reps: Vec<(usize, usize, usize)> = Vec::new();
    for u in 0..m + n {
        for v in u + 1..m + n {
            if let Some(c) = gmnp_pair_class(m, p, u, v) {
                if !reps.iter().any(|r| r.0 == c) {
                    reps.push((c, u, v));
                }
            }
        }
    }
    reps.sort();
    reps
}

/// `G(m,n,p)` counts, every resistance class under both resistance
/// methods, the Kirchhoff index closed forms, and `1 - r11`.
pub fn gmnp_suite(cfg: &VerifyConfig) -> VerifyReport {
    let mut grid = Vec::new();
    for m in 2..=cfg.max_m {
        for n in 2..=cfg.max_n {
            if m * n <= m + n {
                continue;
            }
            for p in 1..=m.min(n) {
                grid.push((m, n, p));
            }
        }
    }
    run(cfg.jobs, grid, |&(m, n, p)| {
        let mut log = Log::new(Suite::Gmnp, format!("m={m} n={n} p={p}"));
        let (mu, nu, pu) = (m as u64, n as u64, p as u64);
        let g = build_gmnp(m, n, p).expect("valid parameters");
        log.eq("tau-gmnp", tau_gmnp(mu, nu, pu), Ok(tau(&g)));
        let net = match ResistorNetwork::new(g) {
            Ok(net) => net,
            Err(e) => {
                log.error("network", e);
                return log.report;
            }
        };
        let table = match gmnp_resistances(mu, nu, pu) {
            Ok(t) => t,
            Err(e) => {
                log.error("r-table", e);
                return log.report;
            }
        };
        for (class, u, v) in gmnp_representatives(m, n, p) {
            let Some(expected) = table.get(class).cloned() else {
                log.error(
                    "r-table",
                    Error::Domain(format!("class r{class} is nonempty but undefined")),
                );
                continue;
            };
            let solve = effective_resistance(&net, u, v);
            log.eq("r-class-solve", Ok(expected.clone()), solve.clone());
            log.eq(
                "r-class-tau",
                Ok(expected),
                effective_resistance_tau(&net, u, v),
            );
            log.eq(
                "resistance-methods",
                solve.clone(),
                effective_resistance_tau(&net, u, v),
            );
            if let (Ok(reduced), Ok(solve)) = (series_parallel_reduce(&net, u, v), solve) {
                log.eq("series-parallel", Ok(solve), Ok(reduced.0));
            }
        }
        for (class, value) in table.iter() {
            let any = gmnp_representatives(m, n, p).iter().any(|r| r.0 == class);
            if value.is_some() != any {
                log.error(
                    "r-table",
                    Error::Domain(format!(
                        "class r{class} defined = {}, nonempty = {any}",
                        value.is_some()
                    )),
                );
            }
        }
        let direct = kirchhoff_index(&net);
        log.eq("kf-gmnp", kf_gmnp(mu, nu, pu), direct.clone());
        log.eq("kf-gmnp-table", kf_gmnp_from_table(mu, nu, pu), direct);
        if m == n {
            log.eq("kf-shi-chen", kf_gmnp(mu, nu, pu), kf_shi_chen(nu, pu));
        }
        if p < m.min(n) {
            let quotient = tau_gmnp(mu, nu, pu + 1).and_then(|a| Ok(a / tau_gmnp(mu, nu, pu)?));
            let expected = table
                .get(11)
                .map(|r| int(1) - r)
                .ok_or_else(|| Error::Domain("r11 undefined".into()));
            log.eq("ratio-one-minus-r11", expected, quotient);
        }
        log.report
    })
}

/// A connected random multigraph on `2..=max_n` vertices: a random tree plus
/// up to `n` extra edges, weights `p/q` with `1 <= p <= 5`, `1 <= q <= 3`.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Multigraph {
    let n = rng.gen_range(2..=max_n.max(2));
    let weight = |rng: &mut ChaCha8Rng| frac(rng.gen_range(1..=5), rng.gen_range(1..=3));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut g = Multigraph::new(n);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let w = weight(rng);
        g.add_edge(order[i], parent, w).expect("distinct vertices");
    }
    for _ in 0..rng.gen_range(0..=n) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            let w = weight(rng);
            g.add_edge(u, v, w).expect("distinct vertices");
        }
    }
    g
}

fn unit_simple(g: &Multigraph) -> Multigraph {
    let edges: Vec<(usize, usize)> = g
        .simplify_parallel()
        .edges()
        .iter()
        .map(|e| (e.u, e.v))
        .collect();
    Multigraph::from_unit_edges(g.vertex_count(), &edges).expect("edges of a valid graph")
}

/// Foster's theorem, the local sum rule, metric axioms, deletion-contraction,
/// Matrix-Tree against enumeration, the twin corollaries, and agreement of
/// the resistance methods, on seeded random connected weighted graphs.
pub fn law_suite(cfg: &VerifyConfig) -> VerifyReport {
    let cfg = cfg.clone();
    run(cfg.jobs, (0..cfg.law_graphs).collect(), |&i| {
        let seed = cfg.seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected_graph(&mut rng, cfg.law_max_vertices);
        let n = g.vertex_count();
        let mut log = Log::new(
            Suite::Laws,
            format!("seed={seed} n={n} edges={}", g.edge_count()),
        );
        let net = match ResistorNetwork::new(g.clone()) {
            Ok(net) => net,
            Err(e) => {
                log.error("network", e);
                return log.report;
            }
        };
        let r = match resistance_matrix(&net) {
            Ok(r) => r,
            Err(e) => {
                log.error("resistance-matrix", e);
                return log.report;
            }
        };
        log.eq("foster", Ok(Rational::zero()), foster_residual(&net));
        log.eq("tau-brute", tau_brute(&g), Ok(tau(&g)));

        let mut asymmetric = 0;
        let mut nonpositive = 0;
        for u in 0..n {
            if !r[u][u].is_zero() {
                nonpositive += 1;
            }
            for v in 0..n {
                if r[u][v] != r[v][u] {
                    asymmetric += 1;
                }
                if u != v && !r[u][v].is_positive() {
                    nonpositive += 1;
                }
            }
        }
        log.eq("metric-symmetry", Ok(int(0)), Ok(int(asymmetric)));
        log.eq("metric-definite", Ok(int(0)), Ok(int(nonpositive)));
        let mut excess = Rational::zero();
        for _ in 0..cfg.triangle_triples {
            let (a, b, c) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            let slack = &r[a][c] - &r[a][b] - &r[b][c];
            if slack.is_positive() {
                excess += slack;
            }
        }
        log.eq("metric-triangle", Ok(Rational::zero()), Ok(excess));

        for _ in 0..cfg.local_pairs {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            log.eq(
                "local-rule",
                Ok(Rational::zero()),
                local_rule_residual_with(&g, &r, u, v),
            );
            log.eq(
                "resistance-methods",
                effective_resistance_tau(&net, u, v),
                Ok(r[u][v].clone()),
            );
            log.eq(
                "resistance-solve",
                effective_resistance(&net, u, v),
                Ok(r[u][v].clone()),
            );
            if let Ok((reduced, _)) = series_parallel_reduce(&net, u, v) {
                log.eq("series-parallel", Ok(r[u][v].clone()), Ok(reduced));
            }
        }

        let total = tau(&g);
        for _ in 0..cfg.contraction_edges {
            let e = rng.gen_range(0..g.edge_count());
            let w = g.edges()[e].weight.clone();
            let split = g
                .delete_edge(e)
                .and_then(|d| Ok(tau(&d) + w * tau(&g.contract_edge(e)?)));
            log.eq("deletion-contraction", Ok(total.clone()), split);
        }

        let unit = unit_simple(&g);
        let twins = find_twins(&unit);
        if !twins.is_empty() {
            let unit_net = ResistorNetwork::new(unit).expect("same connectivity");
            for tw in twins {
                log.eq(
                    "twins",
                    Ok(tw.resistance()),
                    effective_resistance(&unit_net, tw.a, tw.b),
                );
            }
        }
        log.report
    })
}

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spanres::formulas;
use spanres::graph::{
    build_gmnp, build_kmn_over_matching, build_kmn_over_tree, complete_bipartite, complete_graph,
};
use spanres::io::{parse_graph, write_graph};
use spanres::resistance::{
    effective_resistance, effective_resistance_tau, kirchhoff_index, series_parallel_reduce,
    ResistorNetwork,
};
use spanres::verify::{run_all, run_suite, Suite, VerifyConfig};
use spanres::{render, tau, tau_brute, tau_containing, Error, Multigraph, Rational};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_NOT_SERIES_PARALLEL: u8 = 4;

/// Exact spanning-tree counts, effective resistances and Kirchhoff indices.
///
/// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
/// 3 domain error (including disconnected networks), 4 network not
/// series-parallel reducible.
#[derive(Parser)]
#[command(name = "spanres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated graph file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Weighted spanning-tree count.
    Tau {
        /// Graph file, or `-` for standard input.
        input: PathBuf,
        /// Count only trees containing these edges (0-based indices, comma separated).
        #[arg(long, value_delimiter = ',')]
        containing: Vec<usize>,
        /// Enumerate trees instead of using the Matrix-Tree theorem.
        #[arg(long, conflicts_with = "containing")]
        brute: bool,
    },
    /// Effective resistance between two vertices.
    Resist {
        input: PathBuf,
        u: usize,
        v: usize,
        #[arg(long, value_enum, default_value_t = Method::Solve)]
        method: Method,
        /// Print each series/parallel step to standard error (reduce only).
        #[arg(long)]
        trace: bool,
    },
    /// Kirchhoff index: sum of effective resistances over vertex pairs.
    Kf { input: PathBuf },
    /// Evaluate a closed form.
    Formula {
        #[command(subcommand)]
        name: FormulaName,
    },
    /// Check the closed forms and network laws against the oracles.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 5)]
        max_m: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        /// Print every check, not just failures.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Complete graph K_n.
    Kn { n: usize },
    /// Complete bipartite graph K_{m,n}.
    Kmn { m: usize, n: usize },
    /// K_{m,n} minus a p-edge matching.
    Gmnp { m: usize, n: usize, p: usize },
    /// K_{m,n} with a k-edge matching contracted.
    KmnOverMatching { m: usize, n: usize, k: usize },
    /// K_{m,n} with a tree on s X-vertices and t Y-vertices contracted.
    KmnOverTree {
        m: usize,
        n: usize,
        s: usize,
        t: usize,
    },
}

#[derive(Subcommand)]
enum FormulaName {
    /// n^(n-2)
    Cayley { n: u64 },
    /// Trees of K_n containing a forest with the given component orders.
    Moon { n: u64, orders: Vec<u64> },
    /// m^(n-1) n^(m-1)
    Kmn { m: u64, n: u64 },
    /// Trees of K_{m,n} containing a k-matching.
    Matching { m: u64, n: u64, k: u64 },
    /// Trees of K_{m,n} containing a tree on s X- and t Y-vertices.
    Tree { m: u64, n: u64, s: u64, t: u64 },
    /// Trees of K_{m,n} minus a p-matching.
    Gmnp { m: u64, n: u64, p: u64 },
    /// Effective-resistance classes r1..r11 of G(m,n,p).
    RTable { m: u64, n: u64, p: u64 },
    /// Kirchhoff index of G(m,n,p).
    KfGmnp { m: u64, n: u64, p: u64 },
    /// Kirchhoff index of K_{n,n} minus a p-matching.
    KfShiChen { n: u64, p: u64 },
    /// tau_{k+1} / tau_k for matchings.
    RatioMatching { m: u64, n: u64, k: u64 },
    /// tau_{s,t+1} / tau_{s,t}, or tau_{s+1,t} / tau_{s,t} with --grow s.
    RatioTree {
        m: u64,
        n: u64,
        s: u64,
        t: u64,
        #[arg(long, value_enum, default_value_t = Grow::T)]
        grow: Grow,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Grow {
    S,
    T,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Solve,
    Tau,
    Reduce,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Matching,
    Tree,
    Gmnp,
    Laws,
    All,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_graph(path: &PathBuf) -> Result<Multigraph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    Ok(parse_graph(&text)?)
}

fn generate(kind: GenKind) -> Result<Multigraph, Error> {
    match kind {
        GenKind::Kn { n } => complete_graph(n),
        GenKind::Kmn { m, n } => complete_bipartite(m, n),
        GenKind::Gmnp { m, n, p } => build_gmnp(m, n, p),
        GenKind::KmnOverMatching { m, n, k } => build_kmn_over_matching(m, n, k),
        GenKind::KmnOverTree { m, n, s, t } => build_kmn_over_tree(m, n, s, t),
    }
}

fn resist(
    g: Multigraph,
    u: usize,
    v: usize,
    method: Method,
    trace: bool,
) -> Result<Rational, Failure> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Domain("resistance needs two distinct vertices".into()).into());
    }
    let net = ResistorNetwork::new(g)?;
    Ok(match method {
        Method::Solve => effective_resistance(&net, u, v)?,
        Method::Tau => effective_resistance_tau(&net, u, v)?,
        Method::Reduce => {
            let (r, steps) = series_parallel_reduce(&net, u, v)?;
            if trace {
                for step in steps {
                    eprintln!("{step}");
                }
            }
            r
        }
    })
}

fn formula(name: FormulaName) -> Result<String, Error> {
    use formulas::*;
    let value = match name {
        FormulaName::Cayley { n } => cayley(n)?,
        FormulaName::Moon { n, orders } => moon_forest(n, &orders)?,
        FormulaName::Kmn { m, n } => tau_kmn(m, n)?,
        FormulaName::Matching { m, n, k } => tau_matching(m, n, k)?,
        FormulaName::Tree { m, n, s, t } => tau_tree(m, n, s, t)?,
        FormulaName::Gmnp { m, n, p } => tau_gmnp(m, n, p)?,
        FormulaName::RTable { m, n, p } => {
            let table = gmnp_resistances(m, n, p)?;
            let lines: Vec<String> = table
                .iter()
                .map(|(c, r)| match r {
                    Some(r) => format!("r{c} = {}", render(r)),
                    None => format!("r{c} = undefined"),
                })
                .collect();
            return Ok(lines.join("\n"));
        }
        FormulaName::KfGmnp { m, n, p } => kf_gmnp(m, n, p)?,
        FormulaName::KfShiChen { n, p } => kf_shi_chen(n, p)?,
        FormulaName::RatioMatching { m, n, k } => ratio_matching(m, n, k)?,
        FormulaName::RatioTree { m, n, s, t, grow } => match grow {
            Grow::T => ratio_tree_t(m, n, s, t)?,
            Grow::S => ratio_tree_s(m, n, s, t)?,
        },
    };
    Ok(render(&value))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { kind } => print!("{}", write_graph(&generate(kind)?)),
        Command::Tau {
            input,
            containing,
            brute,
        } => {
            let g = read_graph(&input)?;
            let value = if brute {
                tau_brute(&g)?
            } else if containing.is_empty() {
                tau(&g)
            } else {
                tau_containing(&g, &containing)?
            };
            println!("{}", render(&value));
        }
        Command::Resist {
            input,
            u,
            v,
            method,
            trace,
        } => {
            if trace && method != Method::Reduce {
                return Err(Failure::Usage("--trace needs --method reduce".into()));
            }
            println!(
                "{}",
                render(&resist(read_graph(&input)?, u, v, method, trace)?)
            );
        }
        Command::Kf { input } => {
            let net = ResistorNetwork::new(read_graph(&input)?)?;
            println!("{}", render(&kirchhoff_index(&net)?));
        }
        Command::Formula { name } => println!("{}", formula(name)?),
        Command::Verify {
            suite,
            max_m,
            max_n,
            jobs,
            seed,
            verbose,
        } => {
            if max_m < 2 || max_n < 2 {
                return Err(Failure::Usage(
                    "--max-m and --max-n must be at least 2".into(),
                ));
            }
            let cfg = VerifyConfig {
                max_m,
                max_n,
                jobs,
                seed,
                ..VerifyConfig::default()
            };
            let report = match suite {
                SuiteArg::Matching => run_suite(Suite::Matching, &cfg),
                SuiteArg::Tree => run_suite(Suite::Tree, &cfg),
                SuiteArg::Gmnp => run_suite(Suite::Gmnp, &cfg),
                SuiteArg::Laws => run_suite(Suite::Laws, &cfg),
                SuiteArg::All => run_all(&cfg),
            };
            for check in &report.checks {
                if verbose || !check.passed() {
                    println!("{check}");
                }
            }
            for error in &report.errors {
                println!("{error}");
            }
            print!("{}", report.summary());
            if !report.passed() {
                return Err(Failure::Verify);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } | Error::InvalidEdge { .. } | Error::InvalidVertex { .. } => {
                    EXIT_USAGE
                }
                Error::NotSeriesParallel { .. } => EXIT_NOT_SERIES_PARALLEL,
                _ => EXIT_DOMAIN,
            })
        }
    }
}

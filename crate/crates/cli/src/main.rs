// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `treebalance` command line tool.
//!
//! Exit status: 0 on success or a "yes" answer, 2 when the answer is "no"
//! (a certificate is printed), 1 on errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treebalance::balancer::{balance_with, charge_audit, completeness_probe, BalanceOptions, Priority, ProbeOutcome, CHARGE_SCALE};
use treebalance::decomposition::{imbalance, validate_double_tree, DoubleTreeDecomposition, SplitDecomposition, VertexClass};
use treebalance::families::{
    arborescence_family, enumerate_arborescence_partitions, enumerate_strong_partitions, out_imbalance, strong_family,
    OutImbalance,
};
use treebalance::generate::{random_double_tree, random_double_tree_with_extras};
use treebalance::hardness::{decide_via_reduction_detailed, map_witness, GadgetOutcome, PAIRINGS};
use treebalance::{io, oracle, pack_double_tree, Colouring, MultiGraph, PackOutcome};

use report::Report;

#[derive(Parser)]
#[command(name = "treebalance", version, about = "Balanced double tree decompositions")]
struct Cli {
    /// Emit every report line as a plain `key value` record.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArg {
    /// Write the produced file here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Split a graph into two edge-disjoint spanning trees plus extra edges.
    Pack {
        graph: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Compute a decomposition in which every vertex is c-balanced.
    Balance {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        c: usize,
        /// Print every applied reduction.
        #[arg(long)]
        trace: bool,
        /// Try reductions in a random order from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Re-check trees, measure and graph deltas after every step.
        #[arg(long)]
        audit: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Validate a decomposition file and report its imbalance.
    Verify { graph: PathBuf, decomposition: PathBuf },
    /// Exhaustive answers for small graphs.
    Oracle {
        graph: PathBuf,
        #[command(flatten)]
        query: OracleQuery,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Decide two edge-disjoint Hamiltonian cycles of a 4-regular graph
    /// through the three vertex-split gadgets.
    ReduceNp { graph: PathBuf },
    /// Generate an instance.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra random edges on top of a random double tree.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Count arc partitions of a digraph and report the best out-imbalance.
    Certify {
        digraph: PathBuf,
        #[command(flatten)]
        kind: CertifyKind,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Charge table of the discharging rules.
    Audit {
        graph: PathBuf,
        /// Use this decomposition instead of packing the graph.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        c: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OracleQuery {
    #[arg(long)]
    min_imbalance: bool,
    #[arg(long)]
    pbdt: bool,
    #[arg(long)]
    ham_pair: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CertifyKind {
    /// Partitions into arborescences rooted here.
    #[arg(long, value_name = "ROOT")]
    arb_root: Option<usize>,
    /// Partitions into strongly connected spanning digraphs.
    #[arg(long)]
    strong: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    Arb,
    Strong,
    RandomDoubletree,
}

/// Outcome of a subcommand that ran to completion.
enum Answer {
    Yes,
    No,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<MultiGraph> {
    io::parse_graph(&read(path)?).with_context(|| path.display().to_string())
}

fn load_colouring(path: &Path) -> Result<Colouring> {
    io::parse_colouring(&read(path)?).with_context(|| path.display().to_string())
}

fn emit_file(rep: &mut Report, out: &OutputArg, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            rep.artifact(text);
            Ok(())
        }
    }
}

fn report_imbalance(rep: &mut Report, d: &SplitDecomposition<'_>) -> Result<()> {
    let imb = imbalance(d)?;
    rep.record("max_imbalance", imb.max_imbalance());
    rep.record("worst_vertex", imb.worst_vertex().unwrap_or(0));
    for (v, x) in imb.iter() {
        rep.record("imbalance", format!("{v} {x}"));
    }
    Ok(())
}

fn pack(rep: &mut Report, graph: &Path, out: &OutputArg) -> Result<Answer> {
    let g = load_graph(graph)?;
    match pack_double_tree(&g) {
        PackOutcome::Feasible(split) => {
            emit_file(rep, out, &io::write_colouring(&split.clone().into_colouring()))?;
            rep.record("feasible", "yes");
            rep.list("extra", split.extra_edges());
            Ok(Answer::Yes)
        }
        PackOutcome::Infeasible(p) => {
            rep.record("feasible", "no");
            rep.record("crossing", g.partition_crossing_count(&p)?);
            rep.record("required", 2 * (p.len() - 1));
            rep.artifact(&io::write_partition(&p));
            Ok(Answer::No)
        }
    }
}

fn infeasible(rep: &mut Report, g: &MultiGraph) -> Result<Answer> {
    let PackOutcome::Infeasible(p) = pack_double_tree(g) else {
        unreachable!("called on an infeasible graph")
    };
    rep.record("feasible", "no");
    rep.artifact(&io::write_partition(&p));
    Ok(Answer::No)
}

fn balance_cmd(rep: &mut Report, graph: &Path, c: usize, trace: bool, seed: Option<u64>, audit: bool, out: &OutputArg) -> Result<Answer> {
    let g = load_graph(graph)?;
    let Some(split) = pack_double_tree(&g).feasible() else {
        return infeasible(rep, &g);
    };
    let opts = BalanceOptions {
        c,
        priority: seed.map_or(Priority::Canonical, Priority::Shuffled),
        audit,
    };
    let run = balance_with(&split, &opts)?;
    emit_file(rep, out, &io::write_colouring(&run.decomposition.clone().into_colouring()))?;
    if trace {
        for r in &run.trace {
            rep.line(&r.to_string());
        }
    }
    rep.record("reductions", run.trace.len());
    if run.stats.stuck {
        rep.record("guarantee", "none");
    }
    report_imbalance(rep, &run.decomposition)?;
    Ok(Answer::Yes)
}

fn verify(rep: &mut Report, graph: &Path, decomposition: &Path) -> Result<Answer> {
    let g = load_graph(graph)?;
    let colouring = load_colouring(decomposition)?;
    if g.edge_count() == g.double_tree_size() {
        let report = validate_double_tree(&DoubleTreeDecomposition::new(&g, colouring.clone()));
        if !report.is_valid() {
            rep.record("valid", "no");
            for v in &report.violations {
                rep.line(&v.record());
            }
            return Ok(Answer::No);
        }
    }
    match SplitDecomposition::from_colouring(&g, colouring) {
        Ok(split) => {
            rep.record("valid", "yes");
            report_imbalance(rep, &split)?;
            Ok(Answer::Yes)
        }
        Err(e) => {
            rep.record("valid", "no");
            rep.record("violation", e);
            Ok(Answer::No)
        }
    }
}

fn oracle_cmd(rep: &mut Report, graph: &Path, q: &OracleQuery, jobs: usize, out: &OutputArg) -> Result<Answer> {
    let g = load_graph(graph)?;
    let jobs = jobs.max(1);
    if q.ham_pair {
        return Ok(match oracle::ham_cycle_pair(&g)? {
            Some((c1, c2)) => {
                rep.answer("ham_pair", "yes");
                rep.list("cycle1", c1);
                rep.list("cycle2", c2);
                Answer::Yes
            }
            None => {
                rep.answer("ham_pair", "no");
                Answer::No
            }
        });
    }
    if pack_double_tree(&g).feasible().is_none() || g.edge_count() != g.double_tree_size() {
        if q.pbdt {
            rep.answer("pbdt", "no");
            return Ok(Answer::No);
        }
        if g.edge_count() != g.double_tree_size() {
            bail!("graph has {} edges; a double tree on {} vertices has {}", g.edge_count(), g.vertex_count(), g.double_tree_size());
        }
        return infeasible(rep, &g);
    }
    if q.pbdt {
        return Ok(match oracle::pbdt_with_jobs(&g, jobs)? {
            Some(w) => {
                rep.answer("pbdt", "yes");
                emit_file(rep, out, &io::write_colouring(&w))?;
                Answer::Yes
            }
            None => {
                rep.answer("pbdt", "no");
                Answer::No
            }
        });
    }
    let best = oracle::min_imbalance_with_jobs(&g, jobs)?;
    rep.answer("min_imbalance", best.value);
    if let Some(path) = &out.output {
        fs::write(path, io::write_colouring(&best.witness)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(Answer::Yes)
}

fn reduce_np(rep: &mut Report, graph: &Path) -> Result<Answer> {
    let g = load_graph(graph)?;
    let d = decide_via_reduction_detailed(&g)?;
    for (i, (h, outcome)) in d.graphs.iter().zip(&d.outcomes).enumerate() {
        let [[a, b], [c, e]] = PAIRINGS[i];
        rep.record("gadget", format!("{} pairing {}{}|{}{}", i + 1, a + 1, b + 1, c + 1, e + 1));
        rep.artifact(&io::write_graph(h));
        let status = match outcome {
            GadgetOutcome::NotDoubleTree(_) => "not-double-tree",
            GadgetOutcome::NoPerfect => "no",
            GadgetOutcome::Perfect(_) => "yes",
        };
        rep.record("outcome", format!("{} {status}", i + 1));
    }
    match d.witness() {
        Some((i, w)) => {
            let (c1, c2) = map_witness(&g, i, w)?;
            rep.record("decision", "yes");
            rep.list("cycle1", c1);
            rep.list("cycle2", c2);
            Ok(Answer::Yes)
        }
        None => {
            rep.record("decision", "no");
            Ok(Answer::No)
        }
    }
}

fn gen(rep: &mut Report, family: Family, n: usize, k: usize, seed: u64, extra: usize, out: &OutputArg) -> Result<Answer> {
    let text = match family {
        Family::Arb => io::write_digraph(&arborescence_family(n, k)?),
        Family::Strong => io::write_digraph(&strong_family(n, k)?),
        Family::RandomDoubletree => {
            if n < 1 {
                bail!("--n must be at least 1");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = if extra == 0 {
                random_double_tree(n, &mut rng).0
            } else {
                random_double_tree_with_extras(n, extra, &mut rng)
            };
            io::write_graph(&g)
        }
    };
    emit_file(rep, out, &text)?;
    Ok(Answer::Yes)
}

fn certify(rep: &mut Report, digraph: &Path, kind: &CertifyKind, k: usize) -> Result<Answer> {
    let d = io::parse_digraph(&read(digraph)?).with_context(|| digraph.display().to_string())?;
    let values: Vec<OutImbalance> = match kind.arb_root {
        Some(root) => enumerate_arborescence_partitions(&d, root, k)?
            .iter()
            .map(out_imbalance)
            .collect::<treebalance::Result<_>>()?,
        None => enumerate_strong_partitions(&d, k)?
            .iter()
            .map(out_imbalance)
            .collect::<treebalance::Result<_>>()?,
    };
    let Some(best) = values.iter().min_by_key(|o| (o.value, std::cmp::Reverse(o.vertex))) else {
        rep.summary("none", &[("partitions", "0".into())]);
        return Ok(Answer::No);
    };
    let head = if values.len() == 1 {
        "unique".to_string()
    } else {
        format!("{} partitions", values.len())
    };
    rep.summary(
        &format!("{head}; imbalance {} at v{}", best.value, best.vertex),
        &[
            ("partitions", values.len().to_string()),
            ("out_imbalance", best.value.to_string()),
            ("vertex", best.vertex.to_string()),
        ],
    );
    Ok(Answer::Yes)
}

fn fraction(x: i64) -> String {
    let g = gcd(x.unsigned_abs(), CHARGE_SCALE as u64) as i64;
    let (num, den) = (x / g, CHARGE_SCALE / g);
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn audit(rep: &mut Report, graph: &Path, decomposition: Option<&Path>, c: usize) -> Result<Answer> {
    let g = load_graph(graph)?;
    let split = match decomposition {
        Some(path) => SplitDecomposition::from_colouring(&g, load_colouring(path)?)?,
        None => match pack_double_tree(&g).feasible() {
            Some(s) => s,
            None => return infeasible(rep, &g),
        },
    };
    let charges = charge_audit(&split, c)?;
    for v in g.vertices() {
        let d = g.degree(v)?;
        let class = match VertexClass::of_degree(d, c) {
            VertexClass::Small => "small",
            VertexClass::Critical => "critical",
            VertexClass::Big => "big",
        };
        rep.record(
            "charge",
            format!("{v} degree={d} class={class} initial={} final={}", fraction(charges.initial[v]), fraction(charges.final_charge[v])),
        );
    }
    rep.record("total", fraction(charges.total()));
    rep.record("expected", fraction(charges.expected_total()));
    let deficient = charges.deficient();
    rep.list("deficient", deficient.iter().map(|&(v, _)| v));
    match completeness_probe(&split, c)? {
        ProbeOutcome::Ok if charges.sum_matches() => {
            rep.record("probe", "ok");
            Ok(Answer::Yes)
        }
        ProbeOutcome::Ok => {
            rep.record("probe", "ok");
            rep.record("sum", "mismatch");
            Ok(Answer::No)
        }
        ProbeOutcome::Counterexample(s) => {
            rep.record("probe", "counterexample");
            rep.list("stuck", s.deficient.iter().map(|&(v, _)| v));
            Ok(Answer::No)
        }
    }
}

fn run(cli: &Cli, rep: &mut Report) -> Result<Answer> {
    match &cli.command {
        Command::Pack { graph, out } => pack(rep, graph, out),
        Command::Balance {
            graph,
            c,
            trace,
            seed,
            audit,
            out,
        } => balance_cmd(rep, graph, *c, *trace, *seed, *audit, out),
        Command::Verify { graph, decomposition } => verify(rep, graph, decomposition),
        Command::Oracle { graph, query, jobs, out } => oracle_cmd(rep, graph, query, *jobs, out),
        Command::ReduceNp { graph } => reduce_np(rep, graph),
        Command::Gen {
            family,
            n,
            k,
            seed,
            extra,
            out,
        } => gen(rep, *family, *n, *k, *seed, *extra, out),
        Command::Certify { digraph, kind, k } => certify(rep, digraph, kind, *k),
        Command::Audit { graph, decomposition, c } => audit(rep, graph, decomposition.as_deref(), *c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut rep = Report::new(cli.porcelain);
    let result = run(&cli, &mut rep);
    print!("{}", rep.finish());
    match result {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! Command-line front end: solve instances, verify witnesses, generate
//! hardness instances, build low-indegree tree orientations, and run
//! seeded benchmarks.
//!
//! Exit codes: 0 solved / verified, 1 decision answered no (or witness
//! not proper), 2 no proper orientation exists, 64 parse or validation
//! failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use wpo::{
    bound4_orientation, brute_force_po, compute_inweights, emit_graph, emit_orientation,
    heuristic_td, is_proper, mmi_reduce_full, mu_minus, nicefy, parse_graph, parse_orientation,
    parse_td, random_partial_two_tree, random_tree, rng_from_seed, subsetsum_to_tree, tree_po,
    twdp_decide, twdp_po, validate_td, Orientation, WeightedGraph, DEFAULT_EDGE_LIMIT,
};

#[derive(Parser)]
#[command(name = "wpo", about = "Weighted proper orientation number toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute po(G,w) or decide po(G,w) <= k
    Solve(SolveArgs),
    /// Check a witness orientation for properness and report its max inweight
    Verify(VerifyArgs),
    /// Generate hardness instances
    Gen(GenArgs),
    /// Build a proper tree orientation with max indegree at most 4
    Bound4(Bound4Args),
    /// Timed runs over seeded random instances
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Tree,
    Twdp,
    Brute,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// decision mode: answer whether po <= k instead of computing po
    #[arg(long)]
    k: Option<u64>,
    /// tree decomposition file for the twdp method
    #[arg(long)]
    td: Option<PathBuf>,
    /// write the witness orientation here
    #[arg(long)]
    witness: Option<PathBuf>,
    /// edge cap for the brute-force method
    #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    orientation: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Subcommand)]
enum GenKind {
    /// Encode a subset-sum instance as a weighted tree
    Subsetsum {
        /// comma-separated item values
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
        #[arg(long)]
        target: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rewrite a min-max-indegree instance into a proper-orientation instance
    Mmi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Bound4Args {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(subcommand)]
    suite: BenchSuite,
}

#[derive(Subcommand)]
enum BenchSuite {
    /// Random trees through the tree solver
    Tree {
        #[arg(long)]
        n: usize,
        /// maximum edge weight
        #[arg(long = "K")]
        k_max: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Random partial 2-trees through the treewidth solver
    Twdp {
        #[arg(long)]
        n: usize,
        /// maximum edge weight
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(64);
        }
    };
    let code = match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Gen(a) => cmd_gen(&a),
        Command::Bound4(a) => cmd_bound4(&a),
        Command::Bench(a) => cmd_bench(&a),
    };
    match code {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(64)
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<WeightedGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_witness(path: &Option<PathBuf>, g: &WeightedGraph, d: &Orientation) -> Result<(), String> {
    if let Some(p) = path {
        fs::write(p, emit_orientation(g, d)).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

fn cmd_solve(a: &SolveArgs) -> Result<ExitCode, String> {
    let g = read_graph(&a.input)?;
    let method = match a.method {
        Method::Auto => {
            if g.is_tree() {
                Method::Tree
            } else if g.m() <= 16 {
                Method::Brute
            } else {
                Method::Twdp
            }
        }
        m => m,
    };
    // Some(po + witness) or None when no proper orientation exists
    let result: Option<(u64, Orientation)> = match method {
        Method::Tree => {
            let (po, d) = tree_po(&g).map_err(|e| e.to_string())?;
            Some((po, d))
        }
        Method::Brute => brute_force_po(&g, a.limit).map_err(|e| e.to_string())?,
        Method::Twdp => {
            let ntd = match &a.td {
                Some(path) => {
                    let text =
                        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    let td = parse_td(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                    validate_td(&g, &td).map_err(|e| format!("{}: {e}", path.display()))?;
                    nicefy(&td)
                }
                None => nicefy(&heuristic_td(&g)),
            };
            if let Some(k) = a.k {
                // decision mode straight on the requested bound
                return match twdp_decide(&g, k, &ntd) {
                    Some(d) => {
                        println!("decision yes");
                        println!("k {k}");
                        write_witness(&a.witness, &g, &d)?;
                        Ok(ExitCode::SUCCESS)
                    }
                    None => {
                        println!("decision no");
                        println!("k {k}");
                        Ok(ExitCode::from(1))
                    }
                };
            }
            twdp_po(&g, &ntd).map_err(|e| e.to_string())?
        }
        Method::Auto => unreachable!(),
    };
    match (result, a.k) {
        (Some((po, d)), None) => {
            println!("po {po}");
            write_witness(&a.witness, &g, &d)?;
            Ok(ExitCode::SUCCESS)
        }
        (Some((po, d)), Some(k)) => {
            if po <= k {
                println!("decision yes");
                println!("k {k}");
                write_witness(&a.witness, &g, &d)?;
                Ok(ExitCode::SUCCESS)
            } else {
                println!("decision no");
                println!("k {k}");
                Ok(ExitCode::from(1))
            }
        }
        (None, _) => {
            println!("infeasible");
            Ok(ExitCode::from(2))
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<ExitCode, String> {
    let g = read_graph(&a.input)?;
    let text = fs::read_to_string(&a.orientation)
        .map_err(|e| format!("{}: {e}", a.orientation.display()))?;
    let d =
        parse_orientation(&text, &g).map_err(|e| format!("{}: {e}", a.orientation.display()))?;
    let profile = compute_inweights(&g, &d);
    let mu = profile.mu_minus();
    if is_proper(&g, &d) {
        println!("proper yes");
        println!("mu {mu}");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("proper no");
        println!("mu {mu}");
        for e in g.edges() {
            if profile.inweight[e.u] == profile.inweight[e.v] {
                eprintln!(
                    "conflict: vertices {} and {} share inweight {}",
                    e.u + 1,
                    e.v + 1,
                    profile.inweight[e.u]
                );
                break;
            }
        }
        Ok(ExitCode::from(1))
    }
}

fn emit_instance(
    graph: &WeightedGraph,
    comments: &[String],
    output: &Option<PathBuf>,
) -> Result<(), String> {
    let text = emit_graph(graph, comments);
    match output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(a: &GenArgs) -> Result<ExitCode, String> {
    match &a.kind {
        GenKind::Subsetsum {
            set,
            target,
            output,
        } => {
            let inst = subsetsum_to_tree(set, *target).map_err(|e| e.to_string())?;
            let items: Vec<String> = set.iter().map(|x| x.to_string()).collect();
            let comments = vec![
                format!("subsetsum set={{{}}} target={}", items.join(","), target),
                format!("k'={}", inst.k),
            ];
            emit_instance(&inst.graph, &comments, output)?;
            Ok(ExitCode::SUCCESS)
        }
        GenKind::Mmi { input, k, output } => {
            let g = read_graph(input)?;
            let inst = mmi_reduce_full(&g, *k).map_err(|e| e.to_string())?;
            let comments = vec![
                format!("mmi source n={} m={} k={}", g.n(), g.m(), k),
                format!("k_final={}", inst.k),
            ];
            emit_instance(&inst.graph, &comments, output)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_bound4(a: &Bound4Args) -> Result<ExitCode, String> {
    let g = read_graph(&a.input)?;
    let d = bound4_orientation(&g).map_err(|e| e.to_string())?;
    let profile = compute_inweights(&g, &d);
    let max_indeg = (0..g.n())
        .map(|v| {
            g.adj(v)
                .iter()
                .filter(|&&(e, _)| d.head(&g, e) == v)
                .count()
        })
        .max()
        .unwrap_or(0);
    println!("proper {}", if is_proper(&g, &d) { "yes" } else { "no" });
    println!("max_indegree {max_indeg}");
    println!("mu {}", profile.mu_minus());
    write_witness(&a.witness, &g, &d)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(a: &BenchArgs) -> Result<ExitCode, String> {
    match a.suite {
        BenchSuite::Tree {
            n,
            k_max,
            seed,
            count,
        } => {
            let mut rng = rng_from_seed(seed);
            println!("suite tree n {n} K {k_max} seed {seed}");
            for i in 0..count {
                let g = random_tree(&mut rng, n, k_max);
                let t = Instant::now();
                let (po, d) = tree_po(&g).map_err(|e| e.to_string())?;
                let ms = t.elapsed().as_millis();
                let oracle = if g.m() <= 16 {
                    match brute_force_po(&g, 16).map_err(|e| e.to_string())? {
                        Some((bf, _)) if bf == po => "ok",
                        Some(_) => "MISMATCH",
                        None => "MISMATCH",
                    }
                } else {
                    "skipped"
                };
                debug_assert!(is_proper(&g, &d));
                println!(
                    "instance {i} po {po} max_weight {} time_ms {ms} oracle {oracle}",
                    g.max_weight()
                );
                if po > 4 * g.max_weight() || oracle == "MISMATCH" {
                    return Err(format!("instance {i} failed its sanity checks"));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        BenchSuite::Twdp { n, k, seed, count } => {
            let mut rng = rng_from_seed(seed);
            println!("suite twdp n {n} k {k} seed {seed}");
            for i in 0..count {
                let g = random_partial_two_tree(&mut rng, n, 0.15, k);
                let ntd = nicefy(&heuristic_td(&g));
                let t = Instant::now();
                let solved = twdp_po(&g, &ntd).map_err(|e| e.to_string())?;
                let ms = t.elapsed().as_millis();
                let po = solved.as_ref().map(|&(po, _)| po);
                let oracle = if g.m() <= 16 {
                    let bf = brute_force_po(&g, 16)
                        .map_err(|e| e.to_string())?
                        .map(|(po, _)| po);
                    if bf == po {
                        "ok"
                    } else {
                        "MISMATCH"
                    }
                } else {
                    "skipped"
                };
                if let Some((po, ref d)) = solved {
                    debug_assert!(is_proper(&g, d));
                    debug_assert_eq!(mu_minus(&g, d), po);
                }
                match po {
                    Some(po) => println!(
                        "instance {i} po {po} m {} time_ms {ms} oracle {oracle}",
                        g.m()
                    ),
                    None => println!(
                        "instance {i} infeasible m {} time_ms {ms} oracle {oracle}",
                        g.m()
                    ),
                }
                if oracle == "MISMATCH" {
                    return Err(format!("instance {i} disagrees with brute force"));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

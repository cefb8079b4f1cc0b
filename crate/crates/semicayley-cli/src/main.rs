//! Command-line verifier for one-matching semi-Cayley graphs over finite
//! abelian groups.
//!
//! Subcommands: `classify` (verdict for one connection spec), `aut`
//! (automorphism group order and generators), `sweep` (exhaustive
//! verification over all groups up to an order bound), `golden` (pinned
//! regression table), and `gp` (transitivity class of a generalized
//! Petersen graph).
//!
//! Exit codes: 0 success / verified, 1 discrepancy or failed golden row,
//! 2 usage or input error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use semicayley::abelian::{parse_element_set, parse_group};
use semicayley::graph::{semi_cayley_graph, ConnectionSpec, Graph};
use semicayley::normality::evaluate;
use semicayley::sweep::{gp_report, run_golden_suite, run_sweep, SweepConfig};

#[derive(Parser)]
#[command(
    name = "semicayley",
    version,
    about = "Build one-matching semi-Cayley graphs over finite abelian groups, compute their automorphism groups, and verify the normality classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one connection spec and print its verdict
    Classify {
        /// Base group, e.g. Z4 or Z10xZ2
        group: String,
        /// Right connection set, e.g. "(1),(3)" (empty for none)
        #[arg(long = "R", alias = "r", default_value = "")]
        r: String,
        /// Left connection set
        #[arg(long = "L", alias = "l", default_value = "")]
        l: String,
        /// Emit the verdict as JSON instead of text
        #[arg(long)]
        json: bool,
        /// Write the graph to a file ("-" for stdout); `.json` paths get
        /// the labeled JSON form, everything else the edge-list text
        #[arg(long)]
        dump_graph: Option<PathBuf>,
    },
    /// Print the automorphism group order and generators of a spec's graph
    Aut {
        group: String,
        #[arg(long = "R", alias = "r", default_value = "")]
        r: String,
        #[arg(long = "L", alias = "l", default_value = "")]
        l: String,
    },
    /// Exhaustively verify the classification over all abelian groups up
    /// to an order bound
    Sweep {
        #[arg(long, default_value_t = 24)]
        max_order: u64,
        /// text, json, or csv
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        workers: Option<usize>,
        /// Evaluate every labeled pair instead of one representative per
        /// equivalence class
        #[arg(long)]
        no_dedupe: bool,
        /// Also list disconnected specs (skipped, with a reason)
        #[arg(long)]
        include_disconnected: bool,
        /// Write the report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the pinned golden regression table
    Golden,
    /// Build the generalized Petersen graph GP(n, k) and report its
    /// transitivity class
    Gp {
        n: usize,
        k: usize,
        #[arg(long)]
        dump_graph: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> semicayley::Result<ExitCode> {
    match cli.command {
        Command::Classify {
            group,
            r,
            l,
            json,
            dump_graph,
        } => {
            let spec = build_spec(&group, &r, &l)?;
            if let Some(path) = dump_graph {
                dump(&semi_cayley_graph(&spec)?, &path)?;
            }
            let eval = evaluate(&spec)?;
            let v = &eval.verdict;
            if json {
                let case = match v.case {
                    Some(c) => format!("case{c}"),
                    None => "none".into(),
                };
                let value = serde_json::json!({
                    "group": spec.group().name(),
                    "R": semicayley::abelian::format_element_set(spec.right()),
                    "L": semicayley::abelian::format_element_set(spec.left()),
                    "aut_order": v.aut_order.to_string(),
                    "normal": v.normal,
                    "vertex_transitive": v.vertex_transitive,
                    "edge_transitive": v.edge_transitive,
                    "arc_transitive": v.arc_transitive,
                    "case": case,
                    "x_size": v.x_size,
                    "y_size": v.y_size,
                    "witnesses": v.witnesses.iter().map(|w| serde_json::json!({
                        "case": w.case,
                        "swapped": w.swapped,
                        "witness": w.witness,
                    })).collect::<Vec<_>>(),
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("serializable")
                );
            } else {
                println!("instance: {spec}");
                println!(
                    "graph: {} vertices, {} edges, connected",
                    eval.graph.vertex_count(),
                    eval.graph.edge_count()
                );
                println!("|Aut| = {}", v.aut_order);
                println!("normal: {}", v.normal);
                println!("vertex-transitive: {}", v.vertex_transitive);
                println!("edge-transitive: {}", v.edge_transitive);
                println!("arc-transitive: {}", v.arc_transitive);
                println!("|X| = {}  |Y| = {}", v.x_size, v.y_size);
                match v.case {
                    Some(c) => {
                        let w = &v.witnesses[0];
                        println!(
                            "case: case{c} ({}{})",
                            w.witness,
                            if w.swapped {
                                "; R and L interchanged"
                            } else {
                                ""
                            }
                        );
                    }
                    None => println!("case: none"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Aut { group, r, l } => {
            let spec = build_spec(&group, &r, &l)?;
            let graph = semi_cayley_graph(&spec)?;
            let aut = semicayley::autsearch::automorphism_group(&graph)?;
            println!("instance: {spec}");
            println!("|Aut| = {}", aut.order());
            println!("generators ({}):", aut.generators().len());
            for g in aut.generators() {
                println!("  {g}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            max_order,
            format,
            workers,
            no_dedupe,
            include_disconnected,
            out,
        } => {
            if max_order < 2 {
                return Err(semicayley::Error::InvalidSpec(
                    "sweep needs --max-order >= 2".into(),
                ));
            }
            let mut cfg = SweepConfig {
                max_group_order: max_order,
                include_disconnected,
                dedupe: !no_dedupe,
                ..Default::default()
            };
            if let Some(w) = workers {
                cfg.workers = w.max(1);
            }
            let report = run_sweep(&cfg)?;
            let rendered = match format.as_str() {
                "text" => report.to_text(),
                "json" => serde_json::to_string_pretty(&report.to_json()).expect("serializable"),
                "csv" => report.to_csv(),
                other => {
                    return Err(semicayley::Error::InvalidSpec(format!(
                        "unknown format '{other}' (expected text, json, or csv)"
                    )))
                }
            };
            match out {
                Some(path) => std::fs::write(&path, rendered).map_err(|e| {
                    semicayley::Error::InvalidSpec(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{rendered}"),
            }
            let clean = report.discrepancies.is_empty() && report.violations.is_empty();
            if !clean {
                eprintln!(
                    "sweep found {} discrepancies and {} structural violations",
                    report.discrepancies.len(),
                    report.violations.len()
                );
            }
            Ok(if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Golden => {
            let results = run_golden_suite()?;
            let mut failed = 0;
            for row in &results {
                println!("{} {}", if row.passed { "PASS" } else { "FAIL" }, row.name);
                if !row.passed {
                    failed += 1;
                    for d in &row.details {
                        println!("     {d}");
                    }
                }
            }
            println!("{} rows, {} failed", results.len(), failed);
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Gp { n, k, dump_graph } => {
            let graph = semicayley::graph::generalized_petersen(n, k)?;
            if let Some(path) = dump_graph {
                dump(&graph, &path)?;
            }
            let report = gp_report(n, k)?;
            println!(
                "GP({n},{k}): {} vertices, {} edges",
                report.vertices, report.edges
            );
            println!("|Aut| = {}", report.aut_order);
            let class = if report.arc_transitive {
                "arc-transitive"
            } else if report.edge_transitive {
                "edge- but not arc-transitive"
            } else if report.vertex_transitive {
                "vertex- but not edge-transitive"
            } else {
                "intransitive"
            };
            println!("vertex-transitive: {}", report.vertex_transitive);
            println!("edge-transitive: {}", report.edge_transitive);
            println!("arc-transitive: {}", report.arc_transitive);
            println!("class: {class}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_spec(group: &str, r: &str, l: &str) -> semicayley::Result<ConnectionSpec> {
    let g = parse_group(group)?;
    let right = parse_element_set(r, &g)?;
    let left = parse_element_set(l, &g)?;
    ConnectionSpec::one_matching(g, right, left)
}

fn dump(graph: &Graph, path: &Path) -> semicayley::Result<()> {
    let is_json = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("json"))
        .unwrap_or(false);
    let content = if is_json {
        serde_json::to_string_pretty(&graph.to_json()).expect("serializable")
    } else {
        graph.to_edge_list_text()
    };
    if path.as_os_str() == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(content.as_bytes())
            .expect("stdout is writable");
        Ok(())
    } else {
        std::fs::write(path, content).map_err(|e| {
            semicayley::Error::InvalidSpec(format!("cannot write {}: {e}", path.display()))
        })
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use modrecon::oracle::{
    check_claim, enumerate_graphs_cached, reconstruct_with_oracle, Claim, MAX_CATALOG_ORDER,
};
use modrecon::{
    decompose, make_deck, reconstruct, Deck, Decomposition, Error, Graph, Outcome,
    ReconstructionResult,
};
use serde_json::{json, Value};

const EXIT_UNSUPPORTED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTEGRITY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "modrecon",
    version,
    about = "Reconstruct graphs from their decks via modular decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the top-level modular decomposition of a graph.
    Decompose {
        /// graph6 string, or @path to a file holding one
        graph: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the deck of a graph, one sorted canonical card per line.
    Deck {
        /// graph6 string, or @path to a file holding one
        graph: String,
    },
    /// Reconstruct a graph from a deck file.
    Reconstruct {
        deck: PathBuf,
        /// Answer small decks by exhaustive search when the method does not apply
        #[arg(long)]
        oracle_fallback: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a structural claim on every graph up to a given order.
    Verify {
        /// Claim id; run `modrecon verify list` to see them
        claim: String,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long)]
        json: bool,
        /// Directory for the graph catalog cache
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

/// An error and the exit code it maps to.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Integrity(_) => EXIT_INTEGRITY,
            _ => EXIT_INPUT,
        };
        Failure(code, err.to_string())
    }
}

fn input_error(err: impl ToString) -> Failure {
    Failure(EXIT_INPUT, err.to_string())
}

fn read_graph(arg: &str) -> Result<Graph, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))?
        }
        None => arg.to_string(),
    };
    text.trim().parse::<Graph>().map_err(input_error)
}

/// Appends one line to a command's output.
macro_rules! say {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn print_json(out: &mut String, value: &Value) {
    say!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values always serialize")
    );
}

fn cmd_decompose(out: &mut String, arg: &str, as_json: bool) -> Result<u8, Failure> {
    let g = read_graph(arg)?;
    let d = decompose(&g)?;
    let kind = d.kind().as_str();
    let parts = |sets: &[modrecon::VertexSet]| -> Vec<Value> {
        sets.iter()
            .map(|&s| json!({"vertices": s.to_vec(), "graph": g.induced_subgraph(s).map(|h| h.to_graph6()).unwrap_or_default()}))
            .collect()
    };
    let body = match &d {
        Decomposition::Indecomposable => json!({"kind": kind}),
        Decomposition::Parallel { components } => json!({"kind": kind, "parts": parts(components)}),
        Decomposition::Series { co_components } => {
            json!({"kind": kind, "parts": parts(co_components)})
        }
        Decomposition::Prime {
            skeleton,
            intervals,
        } => json!({
            "kind": kind,
            "skeleton": skeleton.to_graph6(),
            "intervals": intervals
                .iter()
                .map(|i| json!({"at": i.vertex, "vertices": i.members.to_vec(), "graph": i.graph.to_graph6()}))
                .collect::<Vec<_>>(),
        }),
    };
    if as_json {
        print_json(out, &body);
        return Ok(0);
    }
    say!(out, "{kind}");
    match &d {
        Decomposition::Indecomposable => {}
        Decomposition::Parallel { components: sets }
        | Decomposition::Series {
            co_components: sets,
        } => {
            for (s, p) in sets.iter().zip(parts(sets)) {
                say!(
                    out,
                    "part {} {:?}",
                    p["graph"].as_str().unwrap_or_default(),
                    s.to_vec()
                );
            }
        }
        Decomposition::Prime {
            skeleton,
            intervals,
        } => {
            say!(out, "skeleton {skeleton}");
            for i in intervals {
                say!(
                    out,
                    "interval {} {} {:?}",
                    i.vertex,
                    i.graph,
                    i.members.to_vec()
                );
            }
        }
    }
    Ok(0)
}

fn cmd_deck(out: &mut String, arg: &str) -> Result<u8, Failure> {
    let g = read_graph(arg)?;
    if g.order() == 0 {
        return Err(input_error("a graph with no vertices has no cards"));
    }
    out.push_str(&make_deck(&g)?.to_text());
    Ok(0)
}

fn reason_text(reason: &modrecon::UnsupportedReason) -> String {
    use modrecon::UnsupportedReason::*;
    match reason {
        TooFewVertices => "decks with fewer than three cards do not determine the graph".into(),
        NotDecomposable { detail } => format!("the method assumes a decomposable graph ({detail})"),
        HereditaryIntervals => "every interval card is again an interval on the same orbit, so the splice point is unknown".into(),
        UnidentifiedPairPosition => "the cards do not determine where the two-vertex interval sits".into(),
    }
}

fn result_json(r: &ReconstructionResult) -> Value {
    let mut body = json!({
        "order": r.order,
        "skeleton": r.skeleton.as_ref().map(Graph::to_graph6),
        "singletons": r.singletons,
    });
    let extra = match &r.outcome {
        Outcome::Reconstructed { graph, provenance } => json!({
            "status": "reconstructed",
            "graph": graph.to_graph6(),
            "provenance": provenance.as_str(),
        }),
        Outcome::Unsupported(reason) => json!({
            "status": "unsupported",
            "reason": reason.as_str(),
            "detail": reason_text(reason),
        }),
        Outcome::Ambiguous { candidates, detail } => json!({
            "status": "ambiguous",
            "candidates": candidates.iter().map(Graph::to_graph6).collect::<Vec<_>>(),
            "detail": detail,
        }),
    };
    body.as_object_mut()
        .unwrap()
        .extend(extra.as_object().unwrap().clone());
    body
}

fn cmd_reconstruct(
    out: &mut String,
    path: &Path,
    oracle_fallback: bool,
    as_json: bool,
) -> Result<u8, Failure> {
    let deck = Deck::load(path).map_err(input_error)?;
    let result = if oracle_fallback && deck.order() <= MAX_CATALOG_ORDER {
        reconstruct_with_oracle(&deck)?
    } else {
        reconstruct(&deck)?
    };
    if as_json {
        print_json(out, &result_json(&result));
    } else {
        match &result.outcome {
            Outcome::Reconstructed { graph, provenance } => {
                say!(out, "{graph}");
                say!(out, "provenance {provenance}");
            }
            Outcome::Unsupported(reason) => {
                say!(
                    out,
                    "unsupported {}: {}",
                    reason.as_str(),
                    reason_text(reason)
                )
            }
            Outcome::Ambiguous { candidates, detail } => {
                say!(out, "ambiguous: {detail}");
                for c in candidates {
                    say!(out, "candidate {c}");
                }
            }
        }
    }
    Ok(if result.is_reconstructed() {
        0
    } else {
        EXIT_UNSUPPORTED
    })
}

fn cmd_verify(
    out: &mut String,
    claim: &str,
    max_n: usize,
    as_json: bool,
    cache_dir: Option<&Path>,
) -> Result<u8, Failure> {
    if claim == "list" {
        for c in Claim::ALL {
            say!(out, "{:<30} {}", c.id(), c.description());
        }
        return Ok(0);
    }
    let parsed = Claim::parse(claim)?;
    if let Some(dir) = cache_dir {
        for n in 1..=max_n.min(MAX_CATALOG_ORDER) {
            enumerate_graphs_cached(n, dir)?;
        }
    }
    let report = check_claim(parsed.id(), max_n)?;
    if as_json {
        print_json(
            out,
            &serde_json::to_value(&report).expect("reports always serialize"),
        );
    } else {
        say!(out, "claim {} ({})", report.claim, parsed.description());
        say!(out, "max_n {}", report.max_n);
        say!(
            out,
            "tested {} passed {} failed {}",
            report.tested,
            report.passed,
            report.failed
        );
        for (key, count) in &report.breakdown {
            say!(out, "  {key}: {count}");
        }
        for w in &report.witnesses {
            say!(out, "witness {w}");
        }
        say!(
            out,
            "{} in {:.2}s",
            if report.ok() { "PASS" } else { "FAIL" },
            report.seconds
        );
    }
    Ok(if report.ok() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let outcome = match &cli.command {
        Command::Decompose { graph, json } => cmd_decompose(&mut out, graph, *json),
        Command::Deck { graph } => cmd_deck(&mut out, graph),
        Command::Reconstruct {
            deck,
            oracle_fallback,
            json,
        } => cmd_reconstruct(&mut out, deck, *oracle_fallback, *json),
        Command::Verify {
            claim,
            max_n,
            json,
            cache_dir,
        } => cmd_verify(&mut out, claim, *max_n, *json, cache_dir.as_deref()),
    };
    // a reader that stops early (`| head`) is not an error
    let written = std::io::stdout().lock().write_all(out.as_bytes());
    if let Err(err) = written {
        if err.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("modrecon: {err}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("modrecon: {message}");
            ExitCode::from(code)
        }
    }
}

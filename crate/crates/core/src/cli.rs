//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven from tests.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::completion::{
    bandwidth_bruteforce, bf_bruteforce, brute_force_interleaving, solve_interleaving,
    CompletionError, InterleavingInstance,
};
use crate::funcgraph::{contraction_graph, layer_decomposition, recognize_function_graph, LayerError};
use crate::graph::CollisionGraph;
use crate::io::{history_from_json, history_to_json, graph_to_json, parse_graph};
use crate::ordered::{recover_end_position, recover_timeline, RecoveryError};
use crate::simulate::{extract_history, generate_trajectories, SimulationError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_STRUCTURE: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "colline", version, about = "Infer positions of objects on a line from their collisions")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw random piecewise-linear trajectories.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        segments: usize,
        #[arg(long)]
        seed: u64,
        /// Trajectory file; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the collision history here.
        #[arg(long)]
        history_out: Option<PathBuf>,
        /// Also write the collision graph here.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Recover orderings from a time-ordered collision history.
    Recover {
        #[arg(long)]
        history: PathBuf,
        /// Every intermediate ordering instead of the final one.
        #[arg(long)]
        timeline: bool,
    },
    /// Split a collision graph into layers.
    Layers {
        #[arg(long)]
        graph: PathBuf,
        /// Write the layer contraction as Graphviz text.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Test whether a graph is a function graph.
    Recognize {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Optimal interleaving of two interval-constrained sequences.
    Interleave {
        #[arg(long)]
        instance: PathBuf,
        /// Also run the exhaustive search.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact layout bandwidth.
    Bandwidth {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Smallest maximum degree of a function-graph completion.
    Bf {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Check B/2 <= Bf <= 2B.
    Sandwich {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        CommandResult {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

struct Failure(i32, String);

impl From<RecoveryError> for Failure {
    fn from(e: RecoveryError) -> Self {
        let code = match e {
            RecoveryError::NotConnected { .. } => EXIT_STRUCTURE,
            RecoveryError::InvalidHistory { .. } => EXIT_INVALID_INPUT,
        };
        Failure(code, e.to_string())
    }
}

impl From<LayerError> for Failure {
    fn from(e: LayerError) -> Self {
        Failure(EXIT_STRUCTURE, e.to_string())
    }
}

impl From<CompletionError> for Failure {
    fn from(e: CompletionError) -> Self {
        Failure(EXIT_TOO_LARGE, e.to_string())
    }
}

impl From<SimulationError> for Failure {
    fn from(e: SimulationError) -> Self {
        let code = match e {
            SimulationError::InvalidParameters(_) => EXIT_INVALID_INPUT,
            _ => EXIT_STRUCTURE,
        };
        Failure(code, e.to_string())
    }
}

impl From<crate::error::InputError> for Failure {
    fn from(e: crate::error::InputError) -> Self {
        Failure(EXIT_INVALID_INPUT, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_INVALID_INPUT, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(EXIT_INVALID_INPUT, format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<CollisionGraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(value) => {
            let mut stdout = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("JSON values serialize");
            stdout.push('\n');
            CommandResult {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure(code, message)) => CommandResult::fail(code, message),
    }
}

fn dispatch(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Simulate {
            n,
            segments,
            seed,
            out,
            history_out,
            graph_out,
        } => {
            let ts = generate_trajectories(n, segments, seed)?;
            let history = extract_history(&ts)?;
            if let Some(path) = &history_out {
                write(path, &history_to_json(&history))?;
            }
            if let Some(path) = &graph_out {
                write(path, &graph_to_json(&ts.collision_graph()))?;
            }
            match &out {
                Some(path) => {
                    write(path, &serde_json::to_string(&ts).expect("trajectories serialize"))?;
                    Ok(json!({
                        "n": n,
                        "segments": segments,
                        "seed": seed,
                        "collisions": history.len(),
                        "out": path,
                    }))
                }
                None => Ok(to_value(&ts)),
            }
        }
        Command::Recover { history, timeline } => {
            let h = history_from_json(&read(&history)?)?;
            if timeline {
                let t = recover_timeline(&h)?;
                let orderings: Vec<&[usize]> = t.orderings().iter().map(|o| o.as_slice()).collect();
                Ok(json!({ "timeline": orderings }))
            } else {
                let end = recover_end_position(&h)?;
                Ok(json!({ "components": end.sequences() }))
            }
        }
        Command::Layers { graph, dot } => {
            let g = read_graph(&graph)?;
            let decompositions = layer_decomposition(&g)?;
            let mut components = Vec::new();
            let mut dot_text = String::new();
            for (c, d) in decompositions.iter().enumerate() {
                let contraction = contraction_graph(&g, d)?;
                dot_text.push_str(&contraction.to_dot().replacen("graph", &format!("graph component{c}"), 1));
                components.push(json!({
                    "layers": d.layers,
                    "intervals": contraction.intervals(),
                }));
            }
            if let Some(path) = &dot {
                write(path, &dot_text)?;
            }
            Ok(json!({ "components": components }))
        }
        Command::Recognize { graph } => {
            let g = read_graph(&graph)?;
            Ok(match recognize_function_graph(&g) {
                Some(cert) => json!({ "function_graph": true, "orientation": cert.arcs() }),
                None => json!({ "function_graph": false }),
            })
        }
        Command::Interleave { instance, oracle } => {
            let text = read(&instance)?;
            let inst: InterleavingInstance = serde_json::from_str(&text)
                .map_err(|e| Failure(EXIT_INVALID_INPUT, format!("{}: {e}", instance.display())))?;
            let solution = solve_interleaving(&inst);
            let mut value = to_value(&solution);
            if oracle {
                value["oracle"] = to_value(&brute_force_interleaving(&inst)?);
            }
            Ok(value)
        }
        Command::Bandwidth { graph } => {
            let r = bandwidth_bruteforce(&read_graph(&graph)?)?;
            Ok(json!({ "B": r.value, "layout": r.witness }))
        }
        Command::Bf { graph } => {
            let r = bf_bruteforce(&read_graph(&graph)?)?;
            Ok(json!({ "Bf": r.value, "added": r.added }))
        }
        Command::Sandwich { graph } => {
            let g = read_graph(&graph)?;
            let b = bandwidth_bruteforce(&g)?.value;
            let bf = bf_bruteforce(&g)?.value;
            Ok(json!({ "B": b, "Bf": bf, "holds": b <= 2 * bf && bf <= 2 * b }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::TrajectorySet;

    #[test]
    fn unknown_flag_is_a_usage_error() {
        let r = run(["colline", "recognize", "--graph", "g.json", "--bogus"]);
        assert_eq!(r.code, EXIT_USAGE);
        assert!(r.stdout.is_empty());
        assert_eq!(run(["colline"]).code, EXIT_USAGE);
    }

    #[test]
    fn simulate_requires_seed() {
        assert_eq!(run(["colline", "simulate", "--n", "3", "--segments", "2"]).code, EXIT_USAGE);
    }

    #[test]
    fn simulate_to_stdout_is_deterministic() {
        let argv = ["colline", "simulate", "--n", "4", "--segments", "3", "--seed", "9"];
        let a = run(argv);
        assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
        assert_eq!(a, run(argv));
        let ts: TrajectorySet = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(ts.n(), 4);
    }

    #[test]
    fn missing_file_is_invalid_input() {
        let r = run(["colline", "bandwidth", "--graph", "/nonexistent/graph.json"]);
        assert_eq!(r.code, EXIT_INVALID_INPUT);
        assert!(r.stderr.starts_with("error:"));
    }

    #[test]
    fn help_goes_to_stdout() {
        let r = run(["colline", "--help"]);
        assert_eq!(r.code, EXIT_OK);
        assert!(r.stdout.contains("simulate"));
    }
}

mod commands;
mod experiments;
mod input;
mod json;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::commands::{CmdResult, Report, Status};

#[derive(Parser)]
#[command(name = "hedron", version, about = "Tetrahedra from their facial areas, in JSON")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input document, or `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Where to write the result, or `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    output: String,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Overrides the command's default tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Every quantity derivable from one input form.
    Analyze,
    /// Vertices realizing the given facial areas.
    Reconstruct,
    /// Rank, zero stratum and planar class.
    Classify,
    /// Minimum-gyration planar quadruple for rank-one squared areas.
    CanonicalPlanar,
    /// Squared distances `d*` mapped onto the given squared areas.
    InvertAreas,
    Involution {
        #[command(subcommand)]
        op: InvolutionOp,
    },
    /// Degenerate naturals from four signed lengths and the surface parameter.
    #[command(name = "solve-2to2")]
    Solve2to2,
    /// Seeded batch experiments.
    Conjectures {
        #[command(subcommand)]
        name: Experiment,
    },
}

#[derive(Subcommand)]
enum InvolutionOp {
    Twin,
    Fiedler,
    Reciprocal,
    /// Iterates both twin/reciprocal compositions from a degenerate start.
    Orbit {
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Volume formula from natural parameters on random simplices.
    Nsimplex {
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Forward-generated degenerate fixtures recovered by the cubic.
    TwoToTwo,
    /// Orbit lengths of the twin/reciprocal compositions.
    InvolutionOrder {
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
    },
    /// Minimum distance sum over tetrahedra that flatten onto given areas.
    Canmap {
        #[arg(long, default_value_t = 4)]
        starts: usize,
    },
}

fn read_input(path: &str) -> Result<input::Input, String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| format!("reading stdin: {e}"))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?;
    }
    input::parse(&text)
}

fn dispatch(cli: &Cli) -> CmdResult {
    let tol = |default: f64| cli.tol.unwrap_or(default);
    match &cli.command {
        Command::Conjectures { name } => match name {
            Experiment::Nsimplex { dim } => experiments::nsimplex(*dim, cli.trials, cli.seed, tol(1e-7)),
            Experiment::TwoToTwo => experiments::two_to_two(cli.trials, cli.seed, tol(1e-6)),
            Experiment::InvolutionOrder { max_iter } => {
                experiments::involution_order(cli.trials, cli.seed, tol(1e-9), *max_iter)
            }
            Experiment::Canmap { starts } => experiments::canmap(cli.trials, cli.seed, tol(1e-9), (*starts).max(2)),
        },
        command => {
            let input = read_input(&cli.input)?;
            match command {
                Command::Analyze => commands::analyze(&input),
                Command::Reconstruct => commands::reconstruct(&input, tol(1e-7)),
                Command::Classify => commands::classify(&input),
                Command::CanonicalPlanar => commands::canonical_planar(&input, tol(1e-7)),
                Command::InvertAreas => commands::invert_areas(&input, tol(1e-9)),
                Command::Involution { op } => match op {
                    InvolutionOp::Twin => commands::involution_twin(&input, tol(1e-9)),
                    InvolutionOp::Fiedler => commands::involution_fiedler(&input, tol(1e-7)),
                    InvolutionOp::Reciprocal => commands::involution_reciprocal(&input),
                    InvolutionOp::Orbit { max_iter } => commands::involution_orbit_cmd(&input, *max_iter, tol(1e-9)),
                },
                Command::Solve2to2 => commands::solve_two_to_two(&input, tol(1e-6)),
                Command::Conjectures { .. } => unreachable!(),
            }
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Analyze => "analyze".into(),
        Command::Reconstruct => "reconstruct".into(),
        Command::Classify => "classify".into(),
        Command::CanonicalPlanar => "canonical-planar".into(),
        Command::InvertAreas => "invert-areas".into(),
        Command::Involution { op } => format!(
            "involution {}",
            match op {
                InvolutionOp::Twin => "twin",
                InvolutionOp::Fiedler => "fiedler",
                InvolutionOp::Reciprocal => "reciprocal",
                InvolutionOp::Orbit { .. } => "orbit",
            }
        ),
        Command::Solve2to2 => "solve-2to2".into(),
        Command::Conjectures { name } => format!(
            "conjectures {}",
            match name {
                Experiment::Nsimplex { .. } => "nsimplex",
                Experiment::TwoToTwo => "two-to-two",
                Experiment::InvolutionOrder { .. } => "involution-order",
                Experiment::Canmap { .. } => "canmap",
            }
        ),
    }
}

fn conventions() -> Value {
    json!({
        "vertices": "A, B, C, D",
        "edge_order": ["AB", "AC", "AD", "BC", "BD", "CD"],
        "face_order": ["ABC", "ABD", "ACD", "BCD", "AB|CD", "AC|BD", "AD|BC"],
        "f_exterior": "twice the triangle area, |AB x AC| for ABC",
        "f_interior": "four times the medial parallelogram area, |AB x CD| for AB|CD",
        "F": "f squared",
        "s": "f_ABC + f_ABD + f_ACD + f_BCD, twice the surface area",
        "t": "|AB . (AC x AD)|, six times the volume",
        "t4": "areal Gramian, t to the fourth",
        "naturals": "u..z on edges AB..CD, twice the contact-triangle area at that edge",
        "squared_distances": "squared edge lengths",
    })
}

fn document(cli: &Cli, report: Report) -> Value {
    let mut body = report.body;
    body.insert("schema".into(), json!("hedronometry/1"));
    body.insert("command".into(), json!(command_name(&cli.command)));
    body.insert("conventions".into(), conventions());
    body.insert("status".into(), json!(report.status.name()));
    Value::Object(body)
}

fn emit(path: &str, text: &str) -> std::io::Result<()> {
    if path == "-" {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::fs::write(path, text)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("hedron: {msg}");
            return ExitCode::from(2);
        }
    };
    let status: Status = report.status;
    let text = json::render(&document(&cli, report));
    if let Err(e) = emit(&cli.output, &text) {
        eprintln!("hedron: writing {}: {e}", cli.output);
        return ExitCode::from(2);
    }
    ExitCode::from(status.exit_code())
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use indkit::cyclic::{build_trace_graph, check_cyclic_script};
use indkit::hydra::game_play;
use indkit::lkid::check_lkid_script;
use indkit::qe::{decide_traced, definable_set, qe_formula};
use indkit::syntax::{parse_formula, parse_proof};
use indkit::verdict::Verdict;

#[derive(Parser)]
#[command(name = "indkit", version, about = "LKID and cyclic proof checking, and decisions in the Hydra counter-model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    Lkid,
    Clkid,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof script; exit 0 on accept, 1 on reject, 2 on bad input.
    Check {
        #[arg(long, value_enum)]
        system: System,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write the trace graph of a cyclic proof as JSON.
        #[arg(long, value_name = "FILE")]
        emit_trace_graph: Option<PathBuf>,
    },
    /// Decide a closed formula in the model and print the elimination trace.
    Decide { formula: String },
    /// Print a quantifier-free equivalent over relation atoms.
    Qe { formula: String },
    /// Print the measure of the set defined by a formula in one variable.
    Measure {
        formula: String,
        #[arg(long, default_value = "x")]
        var: String,
        /// Also print the defined set as JSON.
        #[arg(long)]
        emit_set: bool,
    },
    #[command(subcommand)]
    Hydra(HydraCommand),
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Subcommand)]
enum HydraCommand {
    /// Play the game from (N, M) until it is won.
    Play { n: u64, m: u64 },
    /// Write the cyclic proof of H to a file and check it.
    Cert {
        #[arg(default_value = "hydra.proof")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// H is cyclically provable but false in the counter-model.
    Separation {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn print_verdict(v: &Verdict, format: Format) {
    match format {
        Format::Text => println!("{v}"),
        Format::Json => println!("{}", v.to_json()),
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    if v.is_accept() {
        0
    } else {
        1
    }
}

fn check(
    system: System,
    file: &PathBuf,
    format: Format,
    emit: Option<&PathBuf>,
) -> Result<u8> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))?;
    let script = match parse_proof(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return Ok(2);
        }
    };
    let v = match system {
        System::Lkid => check_lkid_script(&script),
        System::Clkid => check_cyclic_script(&script),
    };
    if let Some(path) = emit {
        match build_trace_graph(&script.system, &script, &script.axioms) {
            Ok(g) => std::fs::write(path, g.to_json())
                .with_context(|| format!("writing {}", path.display()))?,
            Err(local) => eprintln!("no trace graph: {local}"),
        }
    }
    print_verdict(&v, format);
    Ok(verdict_code(&v))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { system, file, format, emit_trace_graph } => {
            check(system, &file, format, emit_trace_graph.as_ref())
        }
        Command::Decide { formula } => {
            let d = decide_traced(&parse_formula(&formula)?)?;
            println!("{}", d.value);
            println!("{}", serde_json::to_string(&d.steps)?);
            Ok(0)
        }
        Command::Qe { formula } => {
            println!("{}", qe_formula(&parse_formula(&formula)?)?);
            Ok(0)
        }
        Command::Measure { formula, var, emit_set } => {
            let set = definable_set(&parse_formula(&formula)?, &var)?;
            let mu = set.measure();
            println!("{}/{}", mu.numer(), mu.denom());
            if emit_set {
                println!("{}", serde_json::to_string(&set)?);
            }
            Ok(0)
        }
        Command::Hydra(HydraCommand::Play { n, m }) => {
            let states: String = game_play(n, m).iter().map(|s| s.to_string()).collect();
            println!("{states} WIN");
            Ok(0)
        }
        Command::Hydra(HydraCommand::Cert { out }) => {
            std::fs::write(&out, indkit::corpus::hydra_proof().to_string())
                .with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
            check(System::Clkid, &out, Format::Text, None)
        }
        Command::Demo(DemoCommand::Separation { format }) => {
            let r = indkit::demo::separation()?;
            match format {
                Format::Text => println!("{r}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r)?),
            }
            Ok(if r.holds() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commalg::algebra::commuting_algebra_over;
use commalg::oracle::DEFAULT_PATH_CAP;
use commalg::random::{random_quiver, rng};
use commalg::report::{self, Status};
use commalg::{emit_dsl, parse_quiver, to_dot, Field, Quiver};

#[derive(Parser, Debug)]
#[command(name = "commalg", version, about = "Commuting algebras of finite quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a quiver and echo it (JSON, canonical DSL with `pretty`, or DOT).
    Parse(InputArgs),
    /// Path-connected components and a consistent vertex order.
    Components(InputArgs),
    /// Block form of the commuting algebra.
    Blockform(InputArgs),
    /// Skeleton poset, Hasse diagram and incidence dimension.
    Skeleton(InputArgs),
    /// Incidence algebra of the skeleton and the isomorphism check.
    Incidence(InputArgs),
    /// Projective dimensions of the simple modules of the skeleton.
    Gldim(InputArgs),
    /// Full invariant suite with one PASS/FAIL line per property.
    Verify(InputArgs),
    /// Random quiver in DSL form.
    Random(RandomArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
    Dot,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format (`random` defaults to DSL text, everything else to JSON).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format pretty`.
    #[arg(long, conflicts_with = "dot")]
    pretty: bool,
    /// Shorthand for `--format dot`.
    #[arg(long)]
    dot: bool,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        self.format_or(Format::Json)
    }

    fn format_or(&self, default: Format) -> Format {
        if self.pretty {
            Format::Pretty
        } else if self.dot {
            Format::Dot
        } else {
            self.format.unwrap_or(default)
        }
    }
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Quiver file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
    /// Ground field: `rat` or `fp:<prime>`.
    #[arg(long, default_value = "rat")]
    field: Field,
    /// Path-length truncation for the oracle (default: vertex count + 2).
    #[arg(long)]
    trunc: Option<usize>,
    /// Path-count cap per vertex pair for the oracle.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    cap: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long, default_value_t = 5)]
    vertices: usize,
    #[arg(long, default_value_t = 8)]
    arrows: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Exit status classes.
enum Failure {
    Validation(String),
    Invariant(String),
}

struct Emitted {
    text: String,
    invariant_failure: Option<String>,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted {
            text,
            invariant_failure: None,
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Validation(format!("<stdin>: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{path}: {e}")))
    }
}

fn load(args: &InputArgs) -> Result<Quiver, Failure> {
    let src = read_input(&args.input)?;
    parse_quiver(&src).map_err(|e| Failure::Validation(format!("{}: {e}", args.input)))
}

fn no_dot(cmd: &str) -> Failure {
    Failure::Validation(format!("`{cmd}` has no dot output"))
}

fn run(cmd: &Command) -> Result<(Emitted, &OutputArgs), Failure> {
    let emitted = match cmd {
        Command::Parse(a) => {
            let q = load(a)?;
            let text = match a.output.format() {
                Format::Json => json(&report::parse_report(&q)),
                Format::Pretty => emit_dsl(&q),
                Format::Dot => to_dot(&q),
            };
            (Emitted::ok(text), &a.output)
        }
        Command::Components(a) => {
            let q = load(a)?;
            let r = report::components_report(&q);
            let text = match a.output.format() {
                Format::Json => json(&r),
                Format::Pretty => {
                    let mut s = String::new();
                    for (i, c) in r.components.iter().enumerate() {
                        s.push_str(&format!("D{}: {}\n", i + 1, c.join(" ")));
                    }
                    s.push_str(&format!("order: {}\n", r.order.join(" ")));
                    s
                }
                Format::Dot => return Err(no_dot("components")),
            };
            (Emitted::ok(text), &a.output)
        }
        Command::Blockform(a) => {
            let q = load(a)?;
            let text = match a.output.format() {
                Format::Json => json(&report::blockform_report(&q, a.field)),
                Format::Pretty => commuting_algebra_over(&q, a.field).pretty(),
                Format::Dot => return Err(no_dot("blockform")),
            };
            let block = commuting_algebra_over(&q, a.field).check_block_form().err();
            (
                Emitted {
                    text,
                    invariant_failure: block,
                },
                &a.output,
            )
        }
        Command::Skeleton(a) => {
            let q = load(a)?;
            let text = match a.output.format() {
                Format::Json | Format::Pretty => json(&report::skeleton_report(&q, a.field)),
                Format::Dot => report::skeleton_dot(&q, a.field),
            };
            (Emitted::ok(text), &a.output)
        }
        Command::Incidence(a) => {
            let q = load(a)?;
            let r = report::incidence_report(&q, a.field);
            let failure = (!r.isomorphic_to_skeleton).then(|| "incidence algebra is not isomorphic to the skeleton".to_string());
            let text = match a.output.format() {
                Format::Json | Format::Pretty => json(&r),
                Format::Dot => return Err(no_dot("incidence")),
            };
            (
                Emitted {
                    text,
                    invariant_failure: failure,
                },
                &a.output,
            )
        }
        Command::Gldim(a) => {
            let q = load(a)?;
            let r = report::gldim_report(&q, a.field).map_err(|e| Failure::Invariant(e.to_string()))?;
            let failure = (r.bound == Status::Fail).then(|| "global dimension exceeds the longest chain".to_string());
            let text = match a.output.format() {
                Format::Json => json(&r),
                Format::Pretty => {
                    let mut s = String::new();
                    for d in &r.simples {
                        s.push_str(&format!("pd S({}) = {}\n", d.element, d.projective_dimension));
                    }
                    s.push_str(&format!(
                        "gldim = {}, longest chain = {}: {}\n",
                        r.global_dimension,
                        r.longest_chain,
                        r.bound.label()
                    ));
                    s
                }
                Format::Dot => return Err(no_dot("gldim")),
            };
            (
                Emitted {
                    text,
                    invariant_failure: failure,
                },
                &a.output,
            )
        }
        Command::Verify(a) => {
            let q = load(a)?;
            let trunc = a.trunc.unwrap_or(q.vertex_count() + 2);
            let r = report::verify_report(&q, a.field, trunc, a.cap).map_err(|e| Failure::Validation(e.to_string()))?;
            let failure = (r.status == Status::Fail).then(|| "verification failed".to_string());
            let text = match a.output.format() {
                Format::Json => json(&r),
                Format::Pretty => r.summary(),
                Format::Dot => return Err(no_dot("verify")),
            };
            (
                Emitted {
                    text,
                    invariant_failure: failure,
                },
                &a.output,
            )
        }
        Command::Random(a) => {
            if a.vertices == 0 {
                return Err(Failure::Validation("--vertices must be at least 1".to_string()));
            }
            let q = random_quiver(&mut rng(a.seed), a.vertices, a.arrows);
            let text = match a.output.format_or(Format::Pretty) {
                Format::Json => json(&report::parse_report(&q)),
                Format::Pretty => emit_dsl(&q),
                Format::Dot => to_dot(&q),
            };
            (Emitted::ok(text), &a.output)
        }
    };
    Ok(emitted)
}

fn write_output(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Validation(format!("{path}: {e}"))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Validation(format!("<stdout>: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(&cli.command).and_then(|(emitted, out)| {
        write_output(out, &emitted.text)?;
        match emitted.invariant_failure {
            Some(msg) => Err(Failure::Invariant(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}

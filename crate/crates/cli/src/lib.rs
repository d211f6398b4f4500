//! The `epf` command line.
//!
//! [`run_cli`] takes the full argument vector and returns the exit code with
//! everything that would be written to stdout and stderr, so the binary is a
//! thin wrapper and tests can drive commands in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser as ClapParser, Subcommand};
use epiflow::dsl::{print_action, print_lattice, ParseError, Parser};
use epiflow::entropy::{
    analyze_references, analyze_references_literal, degrees_of_loss, freed_through, run_state,
    LossDegree, State,
};
use epiflow::logic::{eqpl, eval_connective, ConnectiveKind};
use epiflow::numerics::{
    colift_int, colift_rat, int_add, int_magnitude, int_neg, int_sub, lift_int, lift_rat,
};
use epiflow::typing::{
    canonical_invariant, make_intersection, make_union, morphism_structure,
    partial_morphism_structure, precedes, same_type, Invariant, InvariantRegistry,
    MorphismStructure,
};
use epiflow::{
    episodic_inverse, inspect, Action, Episodic, Integer, ProcessLattice, Rational, Template, Term,
};

mod config;

pub use config::{CliConfig, ConfigError, CONFIG_ENV};

pub const TRACE_HEADER: &str = "# trace v1";

pub mod exit {
    pub const OK: i32 = 0;
    pub const FALSE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const EVAL: i32 = 3;
    pub const LIMIT: i32 = 4;
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(ClapParser)]
#[command(name = "epf", version, about = "Evaluate episodic-flow expressions")]
struct Cli {
    /// TOML configuration file (overrides $EPF_CONFIG).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Walk a lattice and print the resulting episode element.
    Inspect {
        expr: String,
        #[arg(long)]
        trace: bool,
    },
    /// Print the reduction of the inspection, `w` or `w*`.
    Reduce { expr: String },
    /// Print the episodic inverse.
    Invert { expr: String },
    #[command(subcommand)]
    Int(IntCommand),
    #[command(subcommand)]
    Rat(RatCommand),
    /// Evaluate a connective: or, and, not, implies, implies-alt, iff.
    Logic {
        kind: String,
        a: String,
        b: Option<String>,
    },
    /// Lattice equality as an episodic.
    Eqpl {
        a: String,
        b: String,
        #[arg(long)]
        check: bool,
    },
    #[command(subcommand)]
    Type(TypeCommand),
    /// Canonical invariant as a prime factorization.
    Chi { expr: String },
    /// Degree of entropic loss between two actions.
    Entropy { a: String, b: String },
    #[command(subcommand)]
    State(StateCommand),
    #[command(subcommand)]
    Struct(StructCommand),
}

#[derive(Subcommand)]
enum IntCommand {
    Lift {
        #[arg(allow_negative_numbers = true)]
        n: Integer,
    },
    Colift {
        expr: String,
    },
    Add {
        a: String,
        b: String,
    },
    Sub {
        a: String,
        b: String,
    },
    Neg {
        a: String,
    },
}

#[derive(Subcommand)]
enum RatCommand {
    /// Lift `P/Q` (or an integer).
    Lift {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    Colift {
        expr: String,
    },
}

#[derive(Subcommand)]
enum TypeCommand {
    /// Morphism structure, one row per line.
    Mu { expr: String },
    /// Partial morphism structure, one row per line.
    Pi { expr: String },
    Same {
        a: String,
        b: String,
        #[arg(long)]
        check: bool,
    },
    Precedes {
        a: String,
        b: String,
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum StateCommand {
    /// Run a program over a state and print the new state.
    Run { state: String, program: String },
    /// Classify references across a run.
    Refs {
        state: String,
        program: String,
        indices: Vec<usize>,
        /// Use the nested single-inspection form.
        #[arg(long)]
        literal: bool,
    },
    /// Whether slot INDEX (or every slot) is freed by the program.
    Freed {
        state: String,
        program: String,
        index: Option<usize>,
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum StructCommand {
    /// Build `(Δχ_T Δχ_V v)`. Invariants are products like `int*bool` or `35`.
    Union {
        type_inv: String,
        variant_inv: String,
        value: String,
    },
    /// Build the selector lattice from `INV=EXPR` bindings.
    Intersect {
        selector: String,
        #[arg(required = true)]
        bindings: Vec<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Eval(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => exit::PARSE,
            Failure::Eval(_) => exit::EVAL,
            Failure::Limit(_) => exit::LIMIT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Eval(m) | Failure::Limit(m) => m,
        }
    }
}

/// Where an operand came from; only file operands carry a location.
#[derive(Debug, Clone)]
struct Located<T> {
    value: T,
    loc: Option<String>,
}

struct Ctx {
    config: CliConfig,
    parser: Parser,
    registry: Option<InvariantRegistry>,
    out: String,
    /// Location of the first file operand read, used to prefix evaluation
    /// diagnostics.
    origin: Option<String>,
}

fn parse_failure(loc: Option<&str>, e: &ParseError) -> Failure {
    let msg = match loc {
        Some(file) => format!("{file}:{e}"),
        None => e.to_string(),
    };
    if e.kind.is_resource_limit() {
        Failure::Limit(msg)
    } else {
        Failure::Parse(msg)
    }
}

impl Ctx {
    fn eval(&self, e: epiflow::Error) -> Failure {
        let msg = match &self.origin {
            Some(loc) => format!("{loc}: {e}"),
            None => e.to_string(),
        };
        if e.is_resource_limit() {
            Failure::Limit(msg)
        } else {
            Failure::Eval(msg)
        }
    }

    fn term(&mut self, arg: &str) -> Result<Located<Term>, Failure> {
        let Some(path) = arg.strip_prefix('@') else {
            let value = self
                .parser
                .parse_term(arg)
                .map_err(|e| parse_failure(None, &e))?;
            return Ok(Located { value, loc: None });
        };
        let text =
            std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
        let prog = self
            .parser
            .parse(&text)
            .map_err(|e| parse_failure(Some(path), &e))?;
        let (line, col) = prog.main_pos.unwrap_or((1, 1));
        let loc = format!("{path}:{line}:{col}");
        let value = prog
            .main
            .ok_or_else(|| Failure::Parse(format!("{loc}: no expression")))?;
        if self.origin.is_none() {
            self.origin = Some(loc.clone());
        }
        Ok(Located {
            value,
            loc: Some(loc),
        })
    }

    fn action(&mut self, arg: &str) -> Result<Action, Failure> {
        let t = self.term(arg)?;
        t.value
            .to_action()
            .ok_or_else(|| located(&t.loc, "hole not allowed here"))
    }

    fn lattice(&mut self, arg: &str) -> Result<ProcessLattice, Failure> {
        let t = self.term(arg)?;
        match t.value {
            Term::Lattice(_) => match t.value.to_action() {
                Some(Action::Flow(l)) => Ok(l),
                _ => Err(located(&t.loc, "hole not allowed here")),
            },
            Term::Hole => Err(located(&t.loc, "hole not allowed here")),
            Term::Atom(_) => Err(located(&t.loc, "expected a lattice")),
        }
    }

    fn template(&mut self, arg: &str) -> Result<Template, Failure> {
        let t = self.term(arg)?;
        let loc = t.loc.clone();
        Template::try_from(t.value).map_err(|_| located(&loc, "expected a lattice"))
    }

    fn state(&mut self, arg: &str) -> Result<State, Failure> {
        let l = self.lattice(arg)?;
        State::new(l).map_err(|e| self.eval(e))
    }

    fn line(&mut self, s: impl std::fmt::Display) {
        writeln!(self.out, "{s}").expect("write to string");
    }

    fn check_cap(&self, magnitude: u128, shown: impl std::fmt::Display) -> Result<(), Failure> {
        if magnitude > u128::from(self.config.magnitude_cap) {
            return Err(Failure::Limit(format!(
                "magnitude {shown} exceeds cap {}",
                self.config.magnitude_cap
            )));
        }
        Ok(())
    }

    fn verdict(&mut self, e: Episodic, check: bool) -> Result<i32, Failure> {
        self.line(e);
        Ok(if check && !e.is_success() {
            exit::FALSE
        } else {
            exit::OK
        })
    }

    fn invariant(&mut self, text: &str) -> Result<Invariant, Failure> {
        let mut acc = Invariant::identity();
        for part in text.split('*').map(str::trim) {
            let factor = if part.chars().all(|c| c.is_ascii_digit()) && !part.is_empty() {
                part.parse::<u64>()
                    .ok()
                    .and_then(Invariant::factorize)
                    .ok_or_else(|| Failure::Parse(format!("invalid invariant '{part}'")))?
            } else {
                self.registry_lookup(part)?
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }

    fn registry_lookup(&mut self, name: &str) -> Result<Invariant, Failure> {
        if self.registry.is_none() {
            let Some(path) = self.config.registry_path.clone() else {
                return Err(Failure::Parse(format!(
                    "unknown invariant '{name}' (no registry configured)"
                )));
            };
            self.registry = Some(load_registry(&path)?);
        }
        self.registry
            .as_ref()
            .and_then(|r| r.get(name))
            .ok_or_else(|| Failure::Parse(format!("unknown invariant '{name}'")))
    }
}

fn located(loc: &Option<String>, msg: &str) -> Failure {
    match loc {
        Some(l) => Failure::Parse(format!("{l}: {msg}")),
        None => Failure::Parse(msg.to_string()),
    }
}

fn load_registry(path: &Path) -> Result<InvariantRegistry, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    InvariantRegistry::parse(&text).map_err(|e| Failure::Parse(format!("{}:{e}", path.display())))
}

fn print_structure(ctx: &mut Ctx, mu: &MorphismStructure) {
    for row in mu.iter_rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        ctx.line(cells.join(" | "));
    }
}

fn degree_line(d: LossDegree) -> String {
    format!("degree={} label={}", d.degree(), d.label())
}

fn int_result(ctx: &mut Ctx, l: Result<ProcessLattice, epiflow::Error>) -> Result<i32, Failure> {
    let l = l.map_err(|e| ctx.eval(e))?;
    let n: Integer = colift_int(&l).map_err(|e| ctx.eval(e))?;
    ctx.check_cap(int_magnitude(n), n)?;
    ctx.line(print_lattice(&l));
    Ok(exit::OK)
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<i32, Failure> {
    match command {
        Command::Inspect { expr, trace } => {
            let a = ctx.action(&expr)?;
            let out = inspect(&a);
            if trace || ctx.config.trace {
                ctx.line(TRACE_HEADER);
                for s in &out.trace {
                    ctx.line(format_args!(
                        "({},{}) {} -> {}",
                        s.p,
                        s.q,
                        s.reduced,
                        s.dir.as_str()
                    ));
                }
            }
            ctx.line(&out.element);
            ctx.line(format_args!("F={} S={}", out.failures, out.successes));
        }
        Command::Reduce { expr } => {
            let a = ctx.action(&expr)?;
            ctx.line(inspect(&a).reduced());
        }
        Command::Invert { expr } => {
            let a = ctx.action(&expr)?;
            ctx.line(print_action(&episodic_inverse(&a)));
        }
        Command::Int(cmd) => match cmd {
            IntCommand::Lift { n } => {
                ctx.check_cap(int_magnitude(n), n)?;
                ctx.line(print_lattice(&lift_int(n)));
            }
            IntCommand::Colift { expr } => {
                let l = ctx.lattice(&expr)?;
                let n: Integer = colift_int(&l).map_err(|e| ctx.eval(e))?;
                ctx.line(n);
            }
            IntCommand::Add { a, b } => {
                let (a, b) = (ctx.lattice(&a)?, ctx.lattice(&b)?);
                return int_result(ctx, int_add::<Integer>(&a, &b));
            }
            IntCommand::Sub { a, b } => {
                let (a, b) = (ctx.lattice(&a)?, ctx.lattice(&b)?);
                return int_result(ctx, int_sub::<Integer>(&a, &b));
            }
            IntCommand::Neg { a } => {
                let a = ctx.lattice(&a)?;
                return int_result(ctx, int_neg::<Integer>(&a));
            }
        },
        Command::Rat(cmd) => match cmd {
            RatCommand::Lift { value } => {
                let r: Rational = value
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Parse(format!("invalid rational '{value}'")))?;
                let big = int_magnitude(*r.numer()).max(int_magnitude(*r.denom()));
                ctx.check_cap(big, r)?;
                ctx.line(print_lattice(&lift_rat(&r)));
            }
            RatCommand::Colift { expr } => {
                let l = ctx.lattice(&expr)?;
                let r: Rational = colift_rat(&l).map_err(|e| ctx.eval(e))?;
                ctx.line(r);
            }
        },
        Command::Logic { kind, a, b } => {
            let k: ConnectiveKind = kind
                .parse()
                .map_err(|_| Failure::Parse(format!("unknown connective '{kind}'")))?;
            let a = ctx.action(&a)?;
            let b = b.map(|b| ctx.action(&b)).transpose()?;
            let r = eval_connective(k, &a, b.as_ref()).map_err(|e| ctx.eval(e))?;
            ctx.line(r);
        }
        Command::Eqpl { a, b, check } => {
            let (a, b) = (ctx.lattice(&a)?, ctx.lattice(&b)?);
            return ctx.verdict(eqpl(&a, &b), check);
        }
        Command::Type(cmd) => match cmd {
            TypeCommand::Mu { expr } => {
                let l = ctx.lattice(&expr)?;
                let mu = morphism_structure(&l).map_err(|e| ctx.eval(e))?;
                print_structure(ctx, &mu);
            }
            TypeCommand::Pi { expr } => {
                let l = ctx.lattice(&expr)?;
                let pi = partial_morphism_structure(&l).map_err(|e| ctx.eval(e))?;
                print_structure(ctx, &pi);
            }
            TypeCommand::Same { a, b, check } => {
                let (a, b) = (ctx.action(&a)?, ctx.action(&b)?);
                return ctx.verdict(Episodic::from_bool(same_type(&a, &b)), check);
            }
            TypeCommand::Precedes { a, b, check } => {
                let (a, b) = (ctx.action(&a)?, ctx.action(&b)?);
                return ctx.verdict(Episodic::from_bool(precedes(&a, &b)), check);
            }
        },
        Command::Chi { expr } => {
            let a = ctx.action(&expr)?;
            ctx.line(canonical_invariant(&a));
        }
        Command::Entropy { a, b } => {
            let (a, b) = (ctx.action(&a)?, ctx.action(&b)?);
            ctx.line(degree_line(degrees_of_loss(&a, &b)));
        }
        Command::State(cmd) => match cmd {
            StateCommand::Run { state, program } => {
                let (s, p) = (ctx.state(&state)?, ctx.template(&program)?);
                let after = run_state(&s, &p).map_err(|e| ctx.eval(e))?;
                ctx.line(after);
            }
            StateCommand::Refs {
                state,
                program,
                indices,
                literal,
            } => {
                let (s, p) = (ctx.state(&state)?, ctx.template(&program)?);
                let indices = if indices.is_empty() {
                    (1..=s.len()).collect()
                } else {
                    indices
                };
                let degrees = if literal {
                    let all = analyze_references_literal(&s, &p).map_err(|e| ctx.eval(e))?;
                    indices
                        .iter()
                        .map(|&k| {
                            all.get(k.wrapping_sub(1)).copied().ok_or(
                                epiflow::Error::IndexOutOfRange {
                                    index: k,
                                    len: all.len(),
                                },
                            )
                        })
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| ctx.eval(e))?
                } else {
                    analyze_references(&s, &p, &indices).map_err(|e| ctx.eval(e))?
                };
                for (k, d) in indices.iter().zip(degrees) {
                    ctx.line(format_args!("P{k} {}", degree_line(d)));
                }
            }
            StateCommand::Freed {
                state,
                program,
                index,
                check,
            } => {
                let (s, p) = (ctx.state(&state)?, ctx.template(&program)?);
                let freed = freed_through(&s, &p, index).map_err(|e| ctx.eval(e))?;
                return ctx.verdict(Episodic::from_bool(freed), check);
            }
        },
        Command::Struct(cmd) => {
            let cap = ctx.config.magnitude_cap;
            let built = match cmd {
                StructCommand::Union {
                    type_inv,
                    variant_inv,
                    value,
                } => {
                    let t = ctx.invariant(&type_inv)?;
                    let v = ctx.invariant(&variant_inv)?;
                    let value = ctx.action(&value)?;
                    make_union(&t, &v, &value, cap).map_err(|e| ctx.eval(e))?
                }
                StructCommand::Intersect { selector, bindings } => {
                    let selector = ctx.lattice(&selector)?;
                    let mut pairs = Vec::with_capacity(bindings.len());
                    for b in &bindings {
                        let (inv, expr) = b.split_once('=').ok_or_else(|| {
                            Failure::Parse(format!("binding '{b}' is not INV=EXPR"))
                        })?;
                        pairs.push((ctx.invariant(inv)?, ctx.action(expr)?));
                    }
                    make_intersection(&pairs, &selector, cap).map_err(|e| ctx.eval(e))?
                }
            };
            ctx.line(print_lattice(&built.lattice));
            ctx.line(built.invariant);
        }
    }
    Ok(exit::OK)
}

/// Runs one command. `argv[0]` is the program name.
pub fn run_cli<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let first = text
                    .lines()
                    .find(|l| l.starts_with("error:"))
                    .unwrap_or("error: missing command, see --help");
                CliOutput {
                    code: exit::PARSE,
                    stdout: String::new(),
                    stderr: format!("{first}\n"),
                }
            } else {
                CliOutput {
                    code: exit::OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };

    let config_path = cli
        .config
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let config = match config_path {
        Some(p) => match CliConfig::load(&p) {
            Ok(c) => c,
            Err(e) => {
                return CliOutput {
                    code: exit::PARSE,
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                }
            }
        },
        None => CliConfig::default(),
    };

    let mut ctx = Ctx {
        parser: Parser::with_depth_limit(config.depth_limit),
        config,
        registry: None,
        out: String::new(),
        origin: None,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => CliOutput {
            code,
            stdout: ctx.out,
            stderr: String::new(),
        },
        Err(f) => CliOutput {
            code: f.code(),
            stdout: ctx.out,
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

//! `heis`: command-line front end for the exact-arithmetic symmetric
//! function, Heisenberg double, planar diagram and finite-set sheaf
//! checks in `heis-core`.
//!
//! Exit codes: 0 on success or a passing check, 1 on a verification
//! failure (the report carries a witness), 2 on a usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use heis_core::diagcat::{self, parse_diagram, SignedWord};
use heis_core::finset2cat::{
    bc_check, cube_front_completion, cube_hexagon_check, cube_mate_check, right_mate, BlockNat,
    CubeDirection, CubeFaces, CubeOfSets, SquareOfSets,
};
use heis_core::heisenberg::{
    check_deltam, check_heis_relations, check_primitive_splitting, parse_operator, FockOperator,
    HeisElement,
};
use heis_core::symfunc::{
    check_psh_axioms, comultiply, convert, multiply, pair, parse_element, schur_product, skew,
};
use heis_core::verify::{self, verify_all, VerifyConfig, VerifyReport};
use heis_core::{Basis, Partition, SymFunc};

#[derive(Parser)]
#[command(
    name = "heis",
    version,
    about = "Exact computations and checks for symmetric functions, the \
             Heisenberg double, planar diagrams and finite-set sheaves"
)]
struct Cli {
    /// Degree bound for graded computations and checks.
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: usize,
    /// Rewriting step budget for the diagram calculus.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetric function computations.
    #[command(subcommand)]
    Sym(SymCmd),
    /// Hopf axiom battery for the symmetric functions.
    #[command(subcommand)]
    Psh(PshCmd),
    /// Heisenberg double operators and relations.
    #[command(subcommand)]
    Heis(HeisCmd),
    /// Planar diagram calculus.
    #[command(subcommand)]
    Diag(DiagCmd),
    /// Beck-Chevalley checks for squares of finite sets.
    #[command(subcommand)]
    Bc(BcCmd),
    /// Coherence checks for cubes of finite sets.
    #[command(subcommand)]
    Cube(CubeCmd),
    /// Aggregated verification runs.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum SymCmd {
    /// Multiply two elements, e.g. `sym mul "s[1]" "s[1]"`.
    Mul { a: String, b: String },
    /// Apply the skewing operator of the first element to the second.
    Skew { y: String, f: String },
    /// Hall pairing of two elements.
    Pair { a: String, b: String },
    /// Rewrite an element in another basis (s, e, h or p).
    Convert {
        expr: String,
        /// Target basis letter.
        #[arg(long)]
        to: char,
    },
    /// Comultiply an element.
    Coprod { expr: String },
}

#[derive(Subcommand)]
enum PshCmd {
    /// Run the positive self-adjoint Hopf axiom checks.
    Check,
}

#[derive(Subcommand)]
enum HeisCmd {
    /// Commutator of two Fock operators, shown by its action on the
    /// Schur basis up to the degree bound.
    Commutator { a: String, b: String },
    /// Product of two Heisenberg double elements, each written as
    /// `f (x) g`, e.g. `heis product "e1 (x) h1" "e1 (x) h1"`.
    Product { u: String, v: String },
    /// Check the reordering relations between multiplication and
    /// skewing operators.
    CheckRelations {
        #[arg(long, default_value_t = 5)]
        max_m: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Check the skew-of-a-product relation, either for one element or
    /// for every Schur element of degree at most four.
    CheckDeltam {
        /// Element to check; defaults to the whole low-degree battery.
        x: Option<String>,
    },
    /// Check the splitting composite for a primitive element.
    CheckSplitting {
        /// Primitive element; defaults to `e1`.
        #[arg(default_value = "e1")]
        p: String,
    },
}

#[derive(Subcommand)]
enum DiagCmd {
    /// Parse a diagram expression and echo its canonical form.
    Parse { expr: String },
    /// Normalize a diagram expression by rewriting.
    Normalize { expr: String },
    /// Compose two diagram expressions; the first acts first.
    Compose { first: String, second: String },
    /// Verify the splitting isomorphism identities by rewriting.
    CheckSplitting,
    /// Verify the local diagram relations and the braid identities.
    CheckRelations,
    /// Decategorify a signed word to a Fock operator, shown by its
    /// action on the Schur basis up to the degree bound.
    Decat {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand)]
enum BcCmd {
    /// Decide the Beck-Chevalley condition for a square (JSON file).
    Check {
        #[arg(long)]
        square: PathBuf,
    },
    /// Compute the right mate of the canonical square 2-morphism.
    Mate {
        #[arg(long)]
        square: PathBuf,
    },
}

#[derive(Subcommand)]
enum CubeCmd {
    /// Check the hexagon identity for the canonical faces of a cube
    /// (JSON file).
    Check {
        #[arg(long)]
        cube: PathBuf,
    },
    /// Solve for the front face from the other five canonical faces.
    Complete {
        #[arg(long)]
        cube: PathBuf,
    },
    /// Check the mated hexagon in one or both adjunction directions.
    MateCheck {
        #[arg(long)]
        cube: PathBuf,
        /// Direction to mate in; checks both when omitted.
        #[arg(long)]
        direction: Option<CubeDirection>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every acceptance suite.
    All(VerifyAllArgs),
}

#[derive(Args)]
struct VerifyAllArgs {
    /// Corrupt the multiplication fixture so the Hopf suite fails;
    /// exercises the failure reporting path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away (e.g. `| head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let ctx = Ctx {
        max_degree: cli.max_degree,
        budget: cli.budget,
        format: cli.format,
        seed: cli.seed,
    };
    if ctx.max_degree == 0 {
        return usage_error("--max-degree must be at least 1");
    }
    if ctx.budget == 0 {
        return usage_error("--budget must be at least 1");
    }
    match cli.command {
        Command::Sym(cmd) => run_sym(&ctx, cmd),
        Command::Psh(PshCmd::Check) => {
            let report = check_psh_axioms(ctx.max_degree.min(6), &schur_product);
            ctx.emit_report(&report)
        }
        Command::Heis(cmd) => run_heis(&ctx, cmd),
        Command::Diag(cmd) => run_diag(&ctx, cmd),
        Command::Bc(cmd) => run_bc(&ctx, cmd),
        Command::Cube(cmd) => run_cube(&ctx, cmd),
        Command::Verify(VerifyCmd::All(args)) => {
            let cfg = VerifyConfig {
                max_degree: ctx.max_degree,
                budget: ctx.budget,
                seed: ctx.seed,
                inject_fault: args.inject_fault,
            };
            let report = verify_all(&cfg);
            ctx.emit_verify(&report)
        }
    }
}

struct Ctx {
    max_degree: usize,
    budget: usize,
    format: Format,
    seed: u64,
}

impl Ctx {
    /// Prints a computed value: the plain rendering in text mode, a
    /// one-field object in JSON mode.
    fn emit_value(&self, value: impl std::fmt::Display) -> ExitCode {
        match self.format {
            Format::Text => println!("{value}"),
            Format::Json => println!("{}", json!({ "result": value.to_string() })),
        }
        ExitCode::SUCCESS
    }

    fn emit_json(&self, text: impl std::fmt::Display, value: serde_json::Value) -> ExitCode {
        match self.format {
            Format::Text => println!("{text}"),
            Format::Json => println!("{value}"),
        }
        ExitCode::SUCCESS
    }

    fn emit_report(&self, report: &heis_core::report::CheckReport) -> ExitCode {
        match self.format {
            Format::Text => print!("{report}"),
            Format::Json => println!("{}", serde_json::to_string(report).unwrap()),
        }
        if report.passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }

    fn emit_verify(&self, report: &VerifyReport) -> ExitCode {
        match self.format {
            Format::Text => print!("{report}"),
            Format::Json => println!("{}", serde_json::to_string(report).unwrap()),
        }
        if report.passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }

    /// Prints a yes/no check outcome with an optional witness and maps
    /// it to the exit code contract.
    fn emit_flag(&self, name: &str, ok: bool, witness: Option<String>) -> ExitCode {
        match self.format {
            Format::Text => match &witness {
                Some(w) if !ok => println!("{name}: {ok} ({w})"),
                _ => println!("{name}: {ok}"),
            },
            Format::Json => {
                println!("{}", json!({ "check": name, "passed": ok, "witness": witness }))
            }
        }
        if ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}

/// Usage and parse problems: message on stderr, exit code 2.
fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// A verification routine failed to run at all; the error is the witness.
fn check_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("check failed to run: {msg}");
    ExitCode::FAILURE
}

fn run_sym(ctx: &Ctx, cmd: SymCmd) -> ExitCode {
    match cmd {
        SymCmd::Mul { a, b } => {
            let (f, g) = match (parse_element(&a), parse_element(&b)) {
                (Ok(f), Ok(g)) => (f, g),
                (Err(e), _) | (_, Err(e)) => return usage_error(e),
            };
            let bound = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
            match multiply(&f, &g, bound.max(ctx.max_degree)) {
                Ok(prod) => ctx.emit_value(prod),
                Err(e) => usage_error(e),
            }
        }
        SymCmd::Skew { y, f } => {
            let (y, f) = match (parse_element(&y), parse_element(&f)) {
                (Ok(y), Ok(f)) => (y, f),
                (Err(e), _) | (_, Err(e)) => return usage_error(e),
            };
            ctx.emit_value(skew(&y, &f))
        }
        SymCmd::Pair { a, b } => {
            let (f, g) = match (parse_element(&a), parse_element(&b)) {
                (Ok(f), Ok(g)) => (f, g),
                (Err(e), _) | (_, Err(e)) => return usage_error(e),
            };
            ctx.emit_value(pair(&f, &g))
        }
        SymCmd::Convert { expr, to } => {
            let f = match parse_element(&expr) {
                Ok(f) => f,
                Err(e) => return usage_error(e),
            };
            let basis = match Basis::from_letter(to) {
                Some(b) => b,
                None => return usage_error(format!("unknown basis letter `{to}`")),
            };
            match convert(&f, basis) {
                Ok(g) => ctx.emit_value(g),
                Err(e) => usage_error(e),
            }
        }
        SymCmd::Coprod { expr } => match parse_element(&expr) {
            Ok(f) => ctx.emit_value(comultiply(&f)),
            Err(e) => usage_error(e),
        },
    }
}

/// Renders an operator by its action on the Schur basis up to the bound:
/// one `s<lambda> -> <image>` line per basis element with nonzero image.
fn operator_action(
    ctx: &Ctx,
    op: &FockOperator,
) -> Result<(String, serde_json::Value), heis_core::error::AlgebraError> {
    let bound = ctx.max_degree + op.peak_raise().max(0) as usize;
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for d in 0..=ctx.max_degree {
        for lam in Partition::enumerate(d) {
            let img = op.apply(&SymFunc::schur(lam.clone()), bound)?;
            if !img.is_zero() {
                lines.push(format!("s{lam} -> {img}"));
                entries.push(json!({ "input": format!("s{lam}"), "image": img.to_string() }));
            }
        }
    }
    if lines.is_empty() {
        lines.push(format!("0 on all degrees <= {}", ctx.max_degree));
    }
    Ok((
        lines.join("\n"),
        json!({ "max_degree": ctx.max_degree, "action": entries }),
    ))
}

/// Parses a pure tensor `f (x) g` (`⊗` also accepted) into a Heisenberg
/// double element.
fn parse_heis_element(text: &str) -> Result<HeisElement, String> {
    let (left, right) = text
        .split_once("(x)")
        .or_else(|| text.split_once('⊗'))
        .ok_or_else(|| format!("expected `f (x) g` in `{text}`"))?;
    Ok(HeisElement::from_pair(
        &parse_element(left)?,
        &parse_element(right)?,
    ))
}

fn run_heis(ctx: &Ctx, cmd: HeisCmd) -> ExitCode {
    match cmd {
        HeisCmd::Commutator { a, b } => {
            let (a, b) = match (parse_operator(&a), parse_operator(&b)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return usage_error(e),
            };
            let comm = FockOperator::commutator(a, b);
            match operator_action(ctx, &comm) {
                Ok((text, value)) => ctx.emit_json(text, value),
                Err(e) => usage_error(e),
            }
        }
        HeisCmd::Product { u, v } => {
            let (u, v) = match (parse_heis_element(&u), parse_heis_element(&v)) {
                (Ok(u), Ok(v)) => (u, v),
                (Err(e), _) | (_, Err(e)) => return usage_error(e),
            };
            let (lu, ru) = u.support_degrees();
            let (lv, rv) = v.support_degrees();
            let bound = ctx.max_degree + lu + ru + lv + rv;
            match heis_core::heisenberg::heis_product_solved(&u, &v, bound) {
                Ok(prod) => ctx.emit_value(prod),
                Err(e) => usage_error(e),
            }
        }
        HeisCmd::CheckRelations { max_m, max_n } => {
            match check_heis_relations(max_m, max_n, ctx.max_degree) {
                Ok(report) => ctx.emit_report(&report),
                Err(e) => check_error(e),
            }
        }
        HeisCmd::CheckDeltam { x: Some(x) } => {
            let x = match parse_element(&x) {
                Ok(x) => x,
                Err(e) => return usage_error(e),
            };
            match check_deltam(&x, ctx.max_degree) {
                Ok(r) => ctx.emit_flag("skew-multiplication relation", r.pass, r.witness),
                Err(e) => check_error(e),
            }
        }
        HeisCmd::CheckDeltam { x: None } => {
            ctx.emit_report(&verify::suite_deltam(&ctx.verify_config()))
        }
        HeisCmd::CheckSplitting { p } => {
            let p = match parse_element(&p) {
                Ok(p) => p,
                Err(e) => return usage_error(e),
            };
            match check_primitive_splitting(&p, ctx.max_degree) {
                Ok(r) => ctx.emit_flag("primitive splitting", r.pass, r.witness),
                Err(e) => check_error(e),
            }
        }
    }
}

impl Ctx {
    fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            max_degree: self.max_degree,
            budget: self.budget,
            seed: self.seed,
            inject_fault: false,
        }
    }
}

fn run_diag(ctx: &Ctx, cmd: DiagCmd) -> ExitCode {
    match cmd {
        DiagCmd::Parse { expr } => match parse_diagram(&expr) {
            Ok(term) => {
                let value = serde_json::to_value(diagcat::to_json(&term)).unwrap();
                ctx.emit_json(&term, value)
            }
            Err(e) => usage_error(e),
        },
        DiagCmd::Normalize { expr } => {
            let term = match parse_diagram(&expr) {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            match diagcat::normalize(&term, ctx.budget) {
                Ok(nf) => {
                    let value = serde_json::to_value(diagcat::to_json(&nf)).unwrap();
                    ctx.emit_json(&nf, value)
                }
                Err(e) => check_error(e),
            }
        }
        DiagCmd::Compose { first, second } => {
            let (a, b) = match (parse_diagram(&first), parse_diagram(&second)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return usage_error(e),
            };
            match diagcat::compose(&b, &a) {
                Ok(term) => {
                    let value = serde_json::to_value(diagcat::to_json(&term)).unwrap();
                    ctx.emit_json(&term, value)
                }
                Err(e) => usage_error(e),
            }
        }
        DiagCmd::CheckSplitting => match diagcat::verify_splitting(ctx.budget) {
            Ok(report) => ctx.emit_report(&report),
            Err(e) => check_error(e),
        },
        DiagCmd::CheckRelations => {
            ctx.emit_report(&verify::suite_diagram_relations(&ctx.verify_config()))
        }
        DiagCmd::Decat { word } => {
            let word: SignedWord = match word.parse() {
                Ok(w) => w,
                Err(e) => return usage_error(e),
            };
            let op = diagcat::decategorify(&word);
            match operator_action(ctx, &op) {
                Ok((text, value)) => ctx.emit_json(text, value),
                Err(e) => usage_error(e),
            }
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

/// Lists every block of a 2-morphism: one matrix per (source point,
/// target point) pair of the underlying base sets.
fn blocknat_render(nat: &BlockNat) -> (String, serde_json::Value) {
    let sources = nat.src().source().size;
    let targets = nat.src().target().size;
    let mut lines = Vec::new();
    let mut blocks = Vec::new();
    for s in 0..sources {
        for t in 0..targets {
            let m = nat.block(s, t);
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
                .collect();
            lines.push(format!(
                "block s={s} t={t}: {}x{} {:?}",
                m.rows(),
                m.cols(),
                rows
            ));
            blocks.push(json!({
                "source_point": s,
                "target_point": t,
                "rows": m.rows(),
                "cols": m.cols(),
                "entries": rows,
            }));
        }
    }
    (
        lines.join("\n"),
        json!({ "invertible": nat.is_invertible(), "blocks": blocks }),
    )
}

fn run_bc(ctx: &Ctx, cmd: BcCmd) -> ExitCode {
    match cmd {
        BcCmd::Check { square } => {
            let square: SquareOfSets = match read_json(&square) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            match bc_check(&square) {
                Ok((ok, witness)) => ctx.emit_flag("BC", ok, witness),
                Err(e) => check_error(e),
            }
        }
        BcCmd::Mate { square } => {
            let square: SquareOfSets = match read_json(&square) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let alpha = square.canonical_alpha();
            match right_mate(&square, &alpha) {
                Ok(mate) => {
                    let (text, value) = blocknat_render(&mate);
                    let text =
                        format!("{text}\ninvertible: {}", mate.is_invertible());
                    ctx.emit_json(text, value)
                }
                Err(e) => check_error(e),
            }
        }
    }
}

fn run_cube(ctx: &Ctx, cmd: CubeCmd) -> ExitCode {
    match cmd {
        CubeCmd::Check { cube } => {
            let cube: CubeOfSets = match read_json(&cube) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let outcome = CubeFaces::canonical(&cube)
                .and_then(|faces| cube_hexagon_check(&cube, &faces));
            match outcome {
                Ok(ok) => ctx.emit_flag("hexagon", ok, None),
                Err(e) => check_error(e),
            }
        }
        CubeCmd::Complete { cube } => {
            let cube: CubeOfSets = match read_json(&cube) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let outcome = CubeFaces::canonical(&cube)
                .and_then(|faces| cube_front_completion(&cube, &faces));
            match outcome {
                Ok(front) => {
                    let (text, value) = blocknat_render(&front);
                    ctx.emit_json(text, value)
                }
                Err(e) => check_error(e),
            }
        }
        CubeCmd::MateCheck { cube, direction } => {
            let cube: CubeOfSets = match read_json(&cube) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let directions = match direction {
                Some(d) => vec![d],
                None => vec![CubeDirection::X, CubeDirection::Z],
            };
            let mut all = true;
            let mut results = Vec::new();
            for d in directions {
                let outcome = CubeFaces::canonical(&cube)
                    .and_then(|faces| cube_mate_check(&cube, &faces, d));
                match outcome {
                    Ok(ok) => {
                        all &= ok;
                        results.push((d, ok));
                    }
                    Err(e) => return check_error(e),
                }
            }
            match ctx.format {
                Format::Text => {
                    for (d, ok) in &results {
                        println!("mate-check ({}): {ok}", direction_name(*d));
                    }
                }
                Format::Json => {
                    let entries: Vec<_> = results
                        .iter()
                        .map(|(d, ok)| json!({ "direction": direction_name(*d), "passed": ok }))
                        .collect();
                    println!("{}", json!({ "check": "mate-check", "results": entries }));
                }
            }
            if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn direction_name(d: CubeDirection) -> &'static str {
    match d {
        CubeDirection::X => "x",
        CubeDirection::Z => "z",
    }
}

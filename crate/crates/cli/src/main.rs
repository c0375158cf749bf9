use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use coxrig::gilbert::{enumerate_relators, format_symbol_word};
use coxrig::rank3::{induced_matrix, MatrixReport};
use coxrig::spine::{
    enumerate_shapes, standard_f_star, standard_f_star_pointed, standard_zero_star,
    standard_zero_star_pointed, zero_stars_adjacent_to_f_star, ShapeSummary,
};
use coxrig::subgroup::standard;
use coxrig::text::{parse_expr, parse_range, parse_word};
use coxrig::verify::{self, Scope, VerifyOptions};
use coxrig::{Error, DEFAULT_ORDER_BOUND};

#[derive(Parser)]
#[command(name = "coxrig", version, about = "Computations in universal Coxeter groups and Out(W_n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Word operations in W_n.
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Automorphisms given as `;`-joined token expressions.
    Aut {
        #[command(subcommand)]
        op: AutOp,
    },
    /// Run the claim suite and print a report.
    Verify(VerifyArgs),
    /// Spine vertices: shapes, standard stars, adjacency.
    Spine {
        #[command(subcommand)]
        op: SpineOp,
    },
    /// Print every relator instance at rank n, one per line.
    Relators {
        #[arg(long)]
        n: usize,
        /// Prefix each line with its family and indices.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum WordOp {
    /// Freely reduce a word.
    Reduce { #[arg(long)] n: usize, word: String },
    /// Product of two words.
    Mul { #[arg(long)] n: usize, left: String, right: String },
    /// Inverse of a word.
    Inv { #[arg(long)] n: usize, word: String },
    /// g u g^-1
    Conj { #[arg(long)] n: usize, word: String, by: String },
    /// Cyclic core and conjugator.
    Cyclic { #[arg(long)] n: usize, word: String },
    /// Whether two words are conjugate.
    IsConj { #[arg(long)] n: usize, left: String, right: String },
    /// Write an involution as w x_j w^-1.
    Decompose { #[arg(long)] n: usize, word: String },
}

#[derive(Subcommand)]
enum AutOp {
    /// Images of the generators.
    Show { #[arg(long)] n: usize, #[arg(long)] expr: String },
    /// Image of a word.
    Apply {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        word: String,
    },
    /// Whether two expressions define the same outer class.
    OuterEq { #[arg(long)] n: usize, left: String, right: String },
    /// Order of the outer class.
    Order {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
        bound: usize,
    },
    /// Canonical representative of the outer class.
    Outer { #[arg(long)] n: usize, #[arg(long)] expr: String },
    /// Induced 2x2 matrix at rank 3, as JSON.
    Matrix { #[arg(long)] expr: String },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    scope: String,
    /// `N` or `A..B`.
    #[arg(long, default_value = "3..5")]
    n: String,
    /// Print the JSON report instead of one line per claim.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "COXRIG_SEED", default_value_t = 0)]
    seed: u64,
    /// Cap on finite-subgroup closure size.
    #[arg(long)]
    max_closure: Option<usize>,
    /// Corrupt one relator (negative control).
    #[arg(long)]
    mutate_relator: bool,
}

#[derive(Args)]
struct SpineFlags {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    json: bool,
    /// Write one DOT file per graph into this directory.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    pointed: bool,
}

#[derive(Subcommand)]
enum SpineOp {
    /// Graph shapes at rank n, up to isomorphism.
    Enumerate(SpineFlags),
    /// The standard {0}-star and F-star.
    Stars(SpineFlags),
    /// {0}-stars adjacent to the standard F-star.
    Adjacency(SpineFlags),
}

enum Failure {
    Usage(String),
    Claims,
    Other(String),
    /// stdout was closed by the reader.
    Pipe,
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout(), $($t)*)?;
    }};
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::IndexOutOfRank { .. }
            | Error::RankMismatch { .. }
            | Error::EqualIndices(_)
            | Error::NotAnInvolution(_)
            | Error::OddLength
            | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Pipe;
        }
        Failure::Other(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Word { op } => word(op),
        Command::Aut { op } => aut(op),
        Command::Verify(args) => run_verify(args),
        Command::Spine { op } => spine(op),
        Command::Relators { n, verbose } => relators(n, verbose),
    };
    match r {
        Ok(()) | Err(Failure::Pipe) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn word(op: WordOp) -> CmdResult {
    match op {
        WordOp::Reduce { n, word } => out!("{}", parse_word(&word, n)?),
        WordOp::Mul { n, left, right } => {
            out!("{}", parse_word(&left, n)?.mul(&parse_word(&right, n)?)?)
        }
        WordOp::Inv { n, word } => out!("{}", parse_word(&word, n)?.inverse()),
        WordOp::Conj { n, word, by } => {
            out!("{}", parse_word(&word, n)?.conjugate(&parse_word(&by, n)?)?)
        }
        WordOp::Cyclic { n, word } => {
            let (core, g) = parse_word(&word, n)?.cyclic_reduce();
            out!("core: {core}\nconjugator: {g}");
        }
        WordOp::IsConj { n, left, right } => {
            let c = parse_word(&left, n)?.is_conjugate(&parse_word(&right, n)?)?;
            out!("{}", if c { "conjugate" } else { "not conjugate" });
        }
        WordOp::Decompose { n, word } => {
            let (w, j) = parse_word(&word, n)?.involution_decompose()?;
            out!("w: {w}\nj: {j}");
        }
    }
    Ok(())
}

fn aut(op: AutOp) -> CmdResult {
    match op {
        AutOp::Show { n, expr } => {
            let a = parse_expr(&expr, n)?;
            for (i, w) in a.images().iter().enumerate() {
                out!("x{} -> {w}", i + 1);
            }
        }
        AutOp::Apply { n, expr, word } => {
            let a = parse_expr(&expr, n)?;
            out!("{}", a.apply(&parse_word(&word, n)?)?);
        }
        AutOp::OuterEq { n, left, right } => {
            let eq = parse_expr(&left, n)?.outer_equal(&parse_expr(&right, n)?)?;
            out!("{}", if eq { "equal" } else { "not equal" });
        }
        AutOp::Order { n, expr, bound } => {
            out!("{}", parse_expr(&expr, n)?.outer().order(bound)?);
        }
        AutOp::Outer { n, expr } => {
            let c = parse_expr(&expr, n)?.outer();
            for (i, w) in c.representative().images().iter().enumerate() {
                out!("x{} -> {w}", i + 1);
            }
            out!("class permutation: {}", c.class_permutation());
        }
        AutOp::Matrix { expr } => {
            let m = induced_matrix(&parse_expr(&expr, 3)?)?;
            out!("{}", json!(MatrixReport::from(m)));
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> CmdResult {
    let scope: Scope = args.scope.parse()?;
    let (n_min, n_max) = parse_range(&args.n)?;
    let mut opts = VerifyOptions {
        scope,
        n_min,
        n_max,
        seed: args.seed,
        mutate_relator: args.mutate_relator,
        ..Default::default()
    };
    if let Some(c) = args.max_closure {
        opts.max_closure = c;
    }
    let reports = verify::run(&opts)?;
    let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
    if let Some(path) = &args.out {
        fs::write(path, format!("{text}\n"))?;
    }
    if args.json {
        out!("{text}");
    } else {
        for r in &reports {
            let status = serde_json::to_value(r.status).expect("status serializes");
            out!(
                "{:<8} {:<32} {:>6} ms  {}",
                status.as_str().unwrap_or("?"),
                r.claim_id,
                r.elapsed_ms,
                r.details
            );
        }
    }
    if verify::all_passed(&reports) {
        Ok(())
    } else {
        Err(Failure::Claims)
    }
}

fn check_spine_n(n: usize) -> CmdResult {
    if !(2..=6).contains(&n) {
        return Err(Failure::Usage(format!("--n must be within 2..6, got {n}")));
    }
    Ok(())
}

fn write_dot(dir: &Path, name: &str, body: &str) -> CmdResult {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(format!("{name}.dot")), body)?;
    Ok(())
}

fn spine(op: SpineOp) -> CmdResult {
    match op {
        SpineOp::Enumerate(f) => {
            check_spine_n(f.n)?;
            let shapes = enumerate_shapes(f.n, f.pointed)?;
            let rows: Vec<ShapeSummary> = shapes
                .iter()
                .enumerate()
                .map(|(i, s)| ShapeSummary::new(i, s))
                .collect();
            if let Some(dir) = &f.dot {
                for (i, s) in shapes.iter().enumerate() {
                    let name = format!("shape_{i}");
                    write_dot(dir, &name, &s.to_dot(&name, None))?;
                }
            }
            if f.json {
                out!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
            } else {
                for r in &rows {
                    out!(
                        "{:>3}  V={} leaves={} star={:?} twist_rank={} autos={}",
                        r.shape_id, r.vertices, r.leaves, r.star_class, r.twist_rank, r.automorphisms
                    );
                }
            }
        }
        SpineOp::Stars(f) => {
            check_spine_n(f.n)?;
            let (z, fs) = if f.pointed {
                (standard_zero_star_pointed(f.n)?, standard_f_star_pointed(f.n)?)
            } else {
                (standard_zero_star(f.n)?, standard_f_star(f.n)?)
            };
            let stars = [("zero_star", z), ("f_star", fs)];
            if let Some(dir) = &f.dot {
                for (name, v) in &stars {
                    write_dot(dir, name, &v.to_dot(name))?;
                }
            }
            if f.json {
                let rows: Vec<_> = stars
                    .iter()
                    .map(|(name, v)| {
                        json!({
                            "name": name,
                            "key": v.key(),
                            "star_class": v.star_class(),
                            "twist_rank": v.shape().twist_kernel_rank(),
                        })
                    })
                    .collect();
                out!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
            } else {
                for (name, v) in &stars {
                    out!("{name}: {v}");
                }
            }
        }
        SpineOp::Adjacency(f) => {
            if !(3..=6).contains(&f.n) {
                return Err(Failure::Usage(format!("--n must be within 3..6, got {}", f.n)));
            }
            let stars = zero_stars_adjacent_to_f_star(f.n)?;
            let b = standard::outer(&standard::b_tilde(f.n));
            let mut rows = Vec::new();
            for (i, s) in stars.iter().enumerate() {
                let mut fixed = true;
                for g in &b {
                    fixed &= s.vertex.stabilizes(g)?;
                }
                if let Some(dir) = &f.dot {
                    let name = format!("adjacent_{i}");
                    write_dot(dir, &name, &s.vertex.to_dot(&name))?;
                }
                rows.push(json!({
                    "index": i,
                    "key": s.vertex.key(),
                    "alphas": s.alphas,
                    "b_fixed": fixed,
                }));
            }
            if f.json {
                out!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
            } else {
                for r in &rows {
                    out!(
                        "{}  alphas={}  {}{}",
                        r["index"],
                        r["alphas"],
                        r["key"].as_str().unwrap_or(""),
                        if r["b_fixed"] == true { "  [B-fixed]" } else { "" }
                    );
                }
            }
        }
    }
    Ok(())
}

fn relators(n: usize, verbose: bool) -> CmdResult {
    for r in enumerate_relators(n)? {
        if verbose {
            out!("{} {:?}\t{}", r.family, r.indices, format_symbol_word(&r.word()));
        } else {
            out!("{}", format_symbol_word(&r.word()));
        }
    }
    Ok(())
}

//! Command-line front end. Every subcommand reads JSON files, calls one library
//! operation and prints canonical JSON on stdout.
//!
//! Exit codes: 0 success, 1 negative answer (`equiv`, `laws`), 2 input error,
//! 3 numerical error, 4 admissibility error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classes::{self, type_flags, TupleClass};
use crate::decomp::{self, AtomRegistry, Predicate};
use crate::error::{Error, Result};
use crate::jsonio::{read_json, to_canonical_string, write_json};
use crate::matrices::{self, matrix_to_json, MatrixTuple};
use crate::oracle;
use crate::scalars::{ExtScalar, DEFAULT_ALEPH_TOWER};

/// Environment variable that takes precedence over `--registry`.
pub const REGISTRY_ENV: &str = "OPTUPLE_REGISTRY";

#[derive(Parser, Debug)]
#[command(name = "optuple", version, about = "Decompose matrix tuples into primes and compute with multiplicity classes")]
pub struct Cli {
    /// Relative tolerance of numerical rank decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Seed of the randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Atom registry directory (OPTUPLE_REGISTRY overrides it).
    #[arg(long, global = true, default_value = "./registry")]
    pub registry: PathBuf,
    /// Largest tuple dimension accepted.
    #[arg(long, global = true, default_value_t = 256)]
    pub max_dim: usize,
    /// Highest aleph index accepted in class files.
    #[arg(long, global = true, default_value_t = DEFAULT_ALEPH_TOWER)]
    pub aleph_tower: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Isotypic decomposition of a tuple.
    Decompose { tuple: PathBuf },
    /// Multiplicity class of a tuple over the atom registry.
    Classify { tuple: PathBuf },
    /// Unitary equivalence test; exit 0 when equivalent, 1 when not.
    Equiv { a: PathBuf, b: PathBuf },
    /// Coordinatewise B-transform, or its inverse.
    Btransform {
        tuple: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Split off the largest part whose atoms satisfy a predicate.
    Split {
        tuple: PathBuf,
        /// jointly-normal, separately-normal or norm<=r.
        #[arg(long)]
        ideal: String,
        /// Directory for the part, complement and projection files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Operation on class files. minus-* take B then A; ratio takes A then B.
    ClassOp {
        op: ClassOp,
        files: Vec<PathBuf>,
        /// Scalar for scalar-mul, e.g. 2, 3/2 or aleph0.
        #[arg(long)]
        scalar: Option<String>,
    },
    /// Exhaustive symbolic law suite.
    Laws {
        #[arg(long, default_value_t = 3)]
        registry_size: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassOp {
    Oplus,
    Sup,
    Inf,
    MinusDelta,
    MinusNabla,
    ScalarMul,
    Partition,
    Ratio,
    Flags,
    Dim,
}

/// Result of one invocation: JSON for stdout and the exit code.
struct Outcome {
    value: Value,
    code: i32,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, code: 0 }
    }
}

/// Parse `args` (including the program name), run and write to the given streams.
pub fn run_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = out.write_all(to_canonical_string(&o.value).as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::Numerical { spectrum, .. } = &e {
                if !spectrum.is_empty() {
                    let s: Vec<String> = spectrum.iter().map(|x| format!("{x:.6e}")).collect();
                    let _ = writeln!(err, "singular spectrum: [{}]", s.join(", "));
                }
            }
            e.exit_code()
        }
    }
}

/// Entry point of the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn registry_dir(cli: &Cli) -> PathBuf {
    match std::env::var_os(REGISTRY_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => cli.registry.clone(),
    }
}

fn read_tuple(cli: &Cli, path: &Path) -> Result<MatrixTuple> {
    let t = MatrixTuple::from_json(&read_json(path)?)?;
    if t.dim() > cli.max_dim {
        return Err(Error::input(format!("{}: dimension {} exceeds --max-dim {}", path.display(), t.dim(), cli.max_dim)));
    }
    Ok(t)
}

fn read_class(cli: &Cli, path: &Path) -> Result<TupleClass> {
    let c = TupleClass::from_json(&read_json(path)?)?;
    c.check_tower(cli.aleph_tower)?;
    Ok(c)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(Error::input("--tol must lie in (0, 1)"));
    }
    match &cli.command {
        Command::Decompose { tuple } => {
            let a = read_tuple(cli, tuple)?;
            Ok(decomp::isotypic_decomposition(&a, cli.tol, cli.seed)?.to_json().into())
        }
        Command::Classify { tuple } => {
            let a = read_tuple(cli, tuple)?;
            let registry = AtomRegistry::open(&registry_dir(cli))?;
            let class = decomp::classify(&a, &registry, cli.tol, cli.seed)?;
            registry.save()?;
            Ok(class.to_json().into())
        }
        Command::Equiv { a, b } => {
            let (a, b) = (read_tuple(cli, a)?, read_tuple(cli, b)?);
            let eq = decomp::are_equivalent(&a, &b, cli.tol)?;
            Ok(Outcome { value: json!({ "equivalent": eq }), code: if eq { 0 } else { 1 } })
        }
        Command::Btransform { tuple, inverse } => {
            let a = read_tuple(cli, tuple)?;
            let t = if *inverse { matrices::inverse_b_transform(&a)? } else { matrices::b_transform(&a) };
            Ok(t.to_json().into())
        }
        Command::Split { tuple, ideal, out_dir } => split(cli, tuple, ideal, out_dir),
        Command::ClassOp { op, files, scalar } => class_op(cli, *op, files, scalar.as_deref()),
        Command::Laws { registry_size } => {
            let report = oracle::exhaustive_law_suite(*registry_size, &oracle::default_mult_set())?;
            let code = if report.all_as_expected() { 0 } else { 1 };
            Ok(Outcome { value: report.to_json(), code })
        }
    }
}

fn split(cli: &Cli, tuple: &Path, ideal: &str, out_dir: &Path) -> Result<Outcome> {
    let a = read_tuple(cli, tuple)?;
    let pred = Predicate::parse(ideal)?;
    let s = decomp::ideal_split(&a, &pred, cli.tol, cli.seed)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::input(format!("cannot create {}: {e}", out_dir.display())))?;
    let stem = tuple.file_stem().and_then(|s| s.to_str()).unwrap_or("tuple");
    let part_file = out_dir.join(format!("{stem}.part.json"));
    let comp_file = out_dir.join(format!("{stem}.complement.json"));
    let proj_file = out_dir.join(format!("{stem}.projections.json"));
    write_json(&part_file, &s.part.tuple.to_json())?;
    write_json(&comp_file, &s.complement.tuple.to_json())?;
    write_json(
        &proj_file,
        &json!({
            "dim": a.dim(),
            "part": matrix_to_json(&s.part.projection),
            "complement": matrix_to_json(&s.complement.projection),
            "part_isometry": matrix_to_json(&s.part.isometry),
            "complement_isometry": matrix_to_json(&s.complement.isometry),
        }),
    )?;
    Ok(json!({
        "ideal": ideal,
        "part": { "dim": s.part.dim(), "file": part_file.display().to_string() },
        "complement": { "dim": s.complement.dim(), "file": comp_file.display().to_string() },
        "projections": proj_file.display().to_string(),
    })
    .into())
}

fn class_op(cli: &Cli, op: ClassOp, files: &[PathBuf], scalar: Option<&str>) -> Result<Outcome> {
    let classes: Vec<TupleClass> = files.iter().map(|f| read_class(cli, f)).collect::<Result<_>>()?;
    let arity = |k: usize| {
        if classes.len() == k {
            Ok(())
        } else {
            Err(Error::input(format!("{op:?} takes {k} class file(s), got {}", classes.len())))
        }
    };
    let at_least_one = || {
        if classes.is_empty() {
            Err(Error::input(format!("{op:?} needs at least one class file")))
        } else {
            Ok(())
        }
    };
    let value = match op {
        ClassOp::Oplus => {
            at_least_one()?;
            classes::oplus(&classes).to_json()
        }
        ClassOp::Sup => classes::sup(&classes)?.to_json(),
        ClassOp::Inf => classes::inf(&classes)?.to_json(),
        ClassOp::MinusDelta => {
            arity(2)?;
            classes::minus_delta(&classes[0], &classes[1])?.to_json()
        }
        ClassOp::MinusNabla => {
            arity(2)?;
            classes::minus_nabla(&classes[0], &classes[1])?.to_json()
        }
        ClassOp::ScalarMul => {
            arity(1)?;
            let alpha: ExtScalar = scalar.ok_or_else(|| Error::input("scalar-mul needs --scalar"))?.parse()?;
            alpha.check_tower(cli.aleph_tower)?;
            classes::scalar_mul(alpha, &classes[0])?.to_json()
        }
        ClassOp::Partition => {
            arity(1)?;
            classes::partition_of_unity(&classes[0]).to_json()
        }
        ClassOp::Ratio => {
            arity(2)?;
            classes::ratio(&classes[0], &classes[1])?.to_json()
        }
        ClassOp::Flags => {
            arity(1)?;
            let flags: Vec<String> = type_flags(&classes[0]).iter().map(ToString::to_string).collect();
            json!({ "flags": flags })
        }
        ClassOp::Dim => {
            arity(1)?;
            classes::symbolic_dim(&classes[0]).to_json()
        }
    };
    Ok(value.into())
}

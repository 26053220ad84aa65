//! The `ladder-reduce` command line.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 invalid module, 3 internal
//! failure (iteration cap, failed self-check), 4 ladder too long (`n ≥ 5`).
//! `LADDER_REDUCE_SEED` sets the default for `--seed`.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::diagnostics::{build_catalog, hom_count_mismatches, hom_dim_cl, plant, verify_transcript, PlantSpec};
use crate::diagram::DimVector;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::ingest::{build_cl3fb, FiltrationPair, SimplicialComplex};
use crate::intervals::{HomStructure, Orientation};
use crate::io::{field_spec_from_json, module_from_json, module_to_json, zigzag_from_json};
use crate::ladder::CLRep;
use crate::reduction::{decompose, Transcript};
use crate::zigzag;

pub const SEED_ENV: &str = "LADDER_REDUCE_SEED";

#[derive(Debug, Parser)]
#[command(name = "ladder-reduce", version, about = "Decompose persistence modules on commutative ladders CL_n(tau), n <= 4")]
pub struct Cli {
    /// Seed for every random choice (default: $LADDER_REDUCE_SEED, else 0)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose module files and print their persistence diagrams
    Decompose(DecomposeArgs),
    /// Write a planted module: a randomly conjugated sum of catalog entries
    Plant(PlantArgs),
    /// Check a transcript against the module it was produced from
    Verify(VerifyArgs),
    /// Dimension of the space of morphisms between two modules
    Hom(HomArgs),
    /// Auslander-Reiten quiver of A_n(tau) and the induced order
    ArQuiver(ArArgs),
    /// Build a CL_3(fb) module from two filtrations
    Ingest(IngestArgs),
    /// Interval decomposition of a zigzag module
    DecomposeZigzag(ZigzagArgs),
    /// Export the catalog of indecomposables as JSON
    Catalog(CatalogArgs),
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Module files
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Print the step log to standard error
    #[arg(long)]
    pub trace: bool,
    /// Write the replayable transcript here (single input only)
    #[arg(long, value_name = "PATH")]
    pub dump_transcript: Option<PathBuf>,
    /// Coefficient field, overriding the files' (gfp:<p> or rational)
    #[arg(long)]
    pub field: Option<FieldSpec>,
    /// Re-check the run: transcript replay and hom counts against the catalog
    #[arg(long)]
    pub verify: bool,
    /// Number of files decomposed in parallel
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct PlantArgs {
    #[arg(long)]
    pub tau: String,
    /// Summand `top/bottom[:count]`, e.g. `111/121:2`; repeatable
    #[arg(long = "summand", value_name = "DIMV[:K]")]
    pub summands: Vec<String>,
    /// Plant every catalog entry once
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub field: Option<FieldSpec>,
    /// Also write the expected diagram here
    #[arg(long, value_name = "PATH")]
    pub expected: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub module: PathBuf,
    pub transcript: PathBuf,
}

#[derive(Debug, Args)]
pub struct HomArgs {
    pub source: PathBuf,
    pub target: PathBuf,
}

#[derive(Debug, Args)]
pub struct ArArgs {
    #[arg(long)]
    pub tau: String,
    /// Graphviz output instead of text
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long, default_value = "fb")]
    pub tau: String,
    /// Homology degree
    #[arg(long, default_value_t = 1)]
    pub deg: usize,
    /// Prime for the coefficients
    #[arg(long, default_value_t = 2)]
    pub field: u64,
    pub x1: PathBuf,
    pub x2: PathBuf,
    pub y1: PathBuf,
    pub y2: PathBuf,
}

#[derive(Debug, Args)]
pub struct ZigzagArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub field: Option<FieldSpec>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub tau: String,
    #[arg(long)]
    pub field: Option<FieldSpec>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::InvalidField(_) | Error::Precondition(_) => 1,
        Error::InvalidModule(_)
        | Error::DimensionMismatch(_)
        | Error::OrientationMismatch(_)
        | Error::IntervalOutOfRange { .. } => 2,
        Error::RepresentationInfinite { .. } => 4,
        Error::Impermissible(_) | Error::IterationCap(_) | Error::Internal(_) => 3,
    }
}

fn default_seed() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{SEED_ENV} must be an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
        }
    };
}

/// Run one parsed command; the returned text goes to standard output.
pub fn run(cli: Cli) -> Result<String> {
    let seed = match cli.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    match cli.command {
        Command::Decompose(a) => cmd_decompose(&a),
        Command::Plant(a) => cmd_plant(&a, seed),
        Command::Verify(a) => cmd_verify(&a),
        Command::Hom(a) => cmd_hom(&a),
        Command::ArQuiver(a) => cmd_ar_quiver(&a),
        Command::Ingest(a) => cmd_ingest(&a),
        Command::DecomposeZigzag(a) => cmd_decompose_zigzag(&a),
        Command::Catalog(a) => cmd_catalog(&a),
    }
}

/// Parse `args`, run, print; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut so = std::io::stdout().lock();
            let _ = so.write_all(out.as_bytes());
            let _ = so.flush();
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

struct Decomposed {
    diagram: Value,
    trace: String,
    transcript: Option<String>,
}

fn decompose_file(path: &Path, a: &DecomposeArgs) -> Result<Decomposed> {
    let v = read_json(path)?;
    let spec = match a.field {
        Some(s) => s,
        None => field_spec_from_json(&v)?,
    };
    with_field!(spec, |f| decompose_value(&f, &v, a))
}

fn decompose_value<F: Field>(f: &F, v: &Value, a: &DecomposeArgs) -> Result<Decomposed> {
    let m = module_from_json(f, v)?;
    let d = decompose(&m)?;
    if a.verify {
        let final_coeff = d.normal_form.coeff().clone();
        let rep = verify_transcript(&m, &d.transcript, &final_coeff)?;
        if !rep.ok() {
            return Err(Error::Internal(format!("transcript check failed: {}", rep.failures.join("; "))));
        }
        let cat = build_catalog(f, m.orientation())?;
        let bad = hom_count_mismatches(&cat, &m, &d.diagram)?;
        if !bad.is_empty() {
            let names: Vec<String> = bad.iter().map(DimVector::to_string).collect();
            return Err(Error::Internal(format!("hom counts disagree for {}", names.join(", "))));
        }
    }
    let diagram: Value = serde_json::from_str(&d.diagram.to_json())?;
    let trace = if a.trace { d.trace_text() } else { String::new() };
    let transcript = a.dump_transcript.as_ref().map(|_| pretty(&d.transcript.to_json()));
    Ok(Decomposed { diagram, trace, transcript })
}

fn cmd_decompose(a: &DecomposeArgs) -> Result<String> {
    if a.dump_transcript.is_some() && a.inputs.len() != 1 {
        return Err(Error::Parse("--dump-transcript takes a single input file".into()));
    }
    let jobs = a.jobs.max(1).min(a.inputs.len());
    let mut results: Vec<Option<Result<Decomposed>>> = (0..a.inputs.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        for (k, chunk) in results.chunks_mut(a.inputs.len().div_ceil(jobs)).enumerate() {
            let base = k * a.inputs.len().div_ceil(jobs);
            s.spawn(move || {
                for (i, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(decompose_file(&a.inputs[base + i], a));
                }
            });
        }
    });
    let mut done = Vec::new();
    for (path, r) in a.inputs.iter().zip(results) {
        let r = r.expect("every input is processed").map_err(|e| annotate(e, path))?;
        done.push(r);
    }
    if a.trace {
        let mut se = std::io::stderr().lock();
        for (path, r) in a.inputs.iter().zip(&done) {
            if a.inputs.len() > 1 {
                let _ = writeln!(se, "== {}", path.display());
            }
            let _ = se.write_all(r.trace.as_bytes());
        }
    }
    if let (Some(p), Some(t)) = (&a.dump_transcript, &done[0].transcript) {
        write_file(p, t)?;
    }
    let out = if done.len() == 1 {
        done.pop().expect("one result").diagram
    } else {
        Value::Array(
            a.inputs
                .iter()
                .zip(done)
                .map(|(p, r)| json!({ "input": p.display().to_string(), "diagram": r.diagram }))
                .collect(),
        )
    };
    Ok(pretty(&out) + "\n")
}

fn annotate(e: Error, path: &Path) -> Error {
    let at = path.display();
    match e {
        Error::Parse(s) if !s.starts_with(&at.to_string()) => Error::Parse(format!("{at}: {s}")),
        Error::InvalidModule(s) => Error::InvalidModule(format!("{at}: {s}")),
        Error::DimensionMismatch(s) => Error::DimensionMismatch(format!("{at}: {s}")),
        Error::Internal(s) => Error::Internal(format!("{at}: {s}")),
        other => other,
    }
}

fn parse_summand(s: &str) -> Result<(DimVector, usize)> {
    let (d, k) = match s.rsplit_once(':') {
        Some((d, k)) => (d, k.parse().map_err(|_| Error::Parse(format!("bad count in {s:?}")))?),
        None => (s, 1),
    };
    Ok((d.parse()?, k))
}

fn cmd_plant(a: &PlantArgs, seed: u64) -> Result<String> {
    let tau = Orientation::parse(&a.tau)?;
    if tau.n() > crate::ladder::MAX_LADDER {
        return Err(Error::RepresentationInfinite { n: tau.n() });
    }
    with_field!(a.field.unwrap_or_default(), |f| {
        let cat = build_catalog(&f, &tau)?;
        let mut summands = a.summands.iter().map(|s| parse_summand(s)).collect::<Result<Vec<_>>>()?;
        if a.all {
            summands.extend(cat.entries.iter().map(|e| (e.dim_vector.clone(), 1)));
        }
        let (m, expected) = plant(&cat, &PlantSpec { summands, seed })?;
        if let Some(p) = &a.expected {
            write_file(p, &(expected.to_json() + "\n"))?;
        }
        Ok(pretty(&module_to_json(&m)) + "\n")
    })
}

fn load_module(path: &Path) -> Result<(FieldSpec, Value)> {
    let v = read_json(path)?;
    Ok((field_spec_from_json(&v)?, v))
}

fn cmd_verify(a: &VerifyArgs) -> Result<String> {
    let (spec, v) = load_module(&a.module)?;
    let t = read_json(&a.transcript)?;
    with_field!(spec, |f| {
        let m = module_from_json(&f, &v)?;
        let tr = Transcript::from_json(&f, &t)?;
        if tr.field.spec() != spec {
            return Err(Error::Parse("transcript and module use different fields".into()));
        }
        let fin = tr.final_coeff.clone().ok_or_else(|| Error::Parse("transcript has no final matrix".into()))?;
        let rep = verify_transcript(&m, &tr, &fin)?;
        let text = pretty(&serde_json::to_value(&rep)?) + "\n";
        if rep.ok() {
            Ok(text)
        } else {
            Err(Error::Internal(format!("verification failed: {}", rep.failures.join("; "))))
        }
    })
}

fn cmd_hom(a: &HomArgs) -> Result<String> {
    let (s1, v1) = load_module(&a.source)?;
    let (s2, v2) = load_module(&a.target)?;
    if s1 != s2 {
        return Err(Error::Parse("modules use different fields".into()));
    }
    with_field!(s1, |f| {
        let m: CLRep<_> = module_from_json(&f, &v1)?;
        let n = module_from_json(&f, &v2)?;
        Ok(format!("{}\n", hom_dim_cl(&m, &n)?))
    })
}

fn cmd_ar_quiver(a: &ArArgs) -> Result<String> {
    let tau = Orientation::parse(&a.tau)?;
    if tau.n() > crate::intervals::MAX_AN {
        return Err(Error::Parse(format!("A_n is limited to {} vertices here", crate::intervals::MAX_AN)));
    }
    let hs = HomStructure::new(&tau);
    Ok(if a.dot { hs.to_dot() } else { hs.to_text() })
}

fn cmd_ingest(a: &IngestArgs) -> Result<String> {
    if a.tau != "fb" {
        return Err(Error::Parse(format!("ingestion builds CL_3(fb) modules only, not tau = {:?}", a.tau)));
    }
    let f = PrimeField::new(a.field)?;
    let read = |p: &PathBuf| SimplicialComplex::read(p);
    let pair = FiltrationPair::new(read(&a.x1)?, read(&a.x2)?, read(&a.y1)?, read(&a.y2)?, a.deg)?;
    let m = build_cl3fb(&f, &pair)?;
    Ok(pretty(&module_to_json(&m)) + "\n")
}

fn cmd_decompose_zigzag(a: &ZigzagArgs) -> Result<String> {
    let v = read_json(&a.input)?;
    let spec = match a.field {
        Some(s) => s,
        None => field_spec_from_json(&v)?,
    };
    with_field!(spec, |f| {
        let z = zigzag_from_json(&f, &v)?;
        let d = zigzag::decompose(&z)?;
        let rows: Vec<Value> = d
            .multiplicities
            .iter()
            .map(|(iv, k)| json!({ "interval": [iv.birth, iv.death], "multiplicity": k }))
            .collect();
        Ok(pretty(&json!({ "tau": z.orientation().to_string(), "intervals": rows })) + "\n")
    })
}

fn cmd_catalog(a: &CatalogArgs) -> Result<String> {
    let tau = Orientation::parse(&a.tau)?;
    if tau.n() > crate::ladder::MAX_LADDER {
        return Err(Error::RepresentationInfinite { n: tau.n() });
    }
    with_field!(a.field.unwrap_or_default(), |f| Ok(pretty(&build_catalog(&f, &tau)?.to_json()) + "\n"))
}

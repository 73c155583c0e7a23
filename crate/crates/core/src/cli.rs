//! The `afi` command line.
//!
//! Exit codes: 0 success, 1 domain error (infeasible parameters, a matrix
//! that is not idempotent where idempotence is checked), 2 usage error.
//! Every command accepts `--json`, which wraps the same content in an
//! [`OutputEnvelope`].

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::canonical::{canonical_hash, canonical_rep, col_types, row_types, to_standard_form};
use crate::canonical::{TypePartition, CANONICAL_MAX_DIM};
use crate::census::{
    census_general_with, census_rank2_with, summarize, write_records, CensusOptions, SummaryRow,
};
use crate::construct::{construct, Method, Rank2Params};
use crate::equivalence::{are_equivalent_with, Equivalence};
use crate::error::{Error, Result};
use crate::feasibility::{feasible_triples, rank2_bounds, CountBounds, Triple};
use crate::matrix::{MatrixFile, SignMatrix, DEFAULT_MAX_DIM};
use crate::verify::{full_report, VerifyReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "afi",
    version,
    about = "Absolutely flat idempotent matrices, exactly"
)]
struct Cli {
    /// Largest matrix dimension accepted from input files.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct JsonFlag {
    /// Emit a JSON envelope instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every (n, k, r) with n <= n-max for which a matrix exists.
    Feasible {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Bounds on the number of inequivalent rank 2 matrices.
    Bounds {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Build a matrix and print it in the `n k` + rows text format.
    Construct {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        r: u64,
        /// rank1, block or rank2; defaults to rank1 for r = 1, block otherwise.
        #[arg(long)]
        method: Option<Method>,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        l: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Check B^2 = kB and report rank, trace and the measured m, u.
    Verify {
        /// Matrix file, or `-` for stdin.
        file: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Row/column types, rank 2 standard form and canonical representative.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Decide equivalence under signed-permutation similarity (and transposition).
    Equiv {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Similarity only, without transposition.
        #[arg(long)]
        no_transpose: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Enumerate all classes for (n, k).
    Census {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Only rank 2 classes, via the two-row-type search.
        #[arg(long)]
        rank2_only: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Override the default dimension cap (6 general, 12 rank 2).
        #[arg(long)]
        cap: Option<usize>,
        /// Write one JSON record per line to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
}

/// The structured form of every command's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope<T> {
    pub command: String,
    pub inputs: serde_json::Value,
    pub result: T,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibleResult {
    pub triples: Vec<Triple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructResult {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub method: Method,
    pub matrix: SignMatrix,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardSummary {
    pub params: Rank2Params,
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub n: usize,
    pub k: usize,
    pub is_idempotent: bool,
    pub rank: usize,
    pub row_types: TypePartition,
    pub col_types: TypePartition,
    pub standard_form: Option<StandardSummary>,
    pub canonical: Option<SignMatrix>,
    pub canonical_hash: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivResult {
    pub equivalent: bool,
    pub mode: Equivalence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub rank2_only: bool,
    pub jobs: usize,
    pub summary: Vec<SummaryRow>,
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    json: bool,
    command: &str,
    inputs: serde_json::Value,
    result: &T,
    text: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<()> {
    if json {
        let env = OutputEnvelope {
            command: command.to_string(),
            inputs,
            result,
            version: VERSION.to_string(),
        };
        let s = serde_json::to_string(&env).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{s}")?;
    } else {
        text(out)?;
    }
    Ok(())
}

fn read_matrix(path: &Path, cap: usize) -> Result<MatrixFile> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
    };
    MatrixFile::parse_with_cap(&text, cap)
}

fn fmt_opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".to_string(), |x| x.to_string())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let cap = cli.max_dim;
    match cli.command {
        Command::Feasible { n_max, json } => {
            let result = FeasibleResult {
                triples: feasible_triples(n_max as usize),
            };
            emit(
                out,
                json.json,
                "feasible",
                json!({ "n_max": n_max }),
                &result,
                |w| {
                    writeln!(w, "n\tk\tr\tm\tu")?;
                    for t in &result.triples {
                        writeln!(w, "{}\t{}\t{}\t{}\t{}", t.n, t.k, t.r, t.m, t.u)?;
                    }
                    Ok(())
                },
            )?;
            Ok(0)
        }
        Command::Bounds { n, k, json } => {
            let b: CountBounds = rank2_bounds(n as usize, k as usize)?;
            emit(
                out,
                json.json,
                "bounds",
                json!({ "n": n, "k": k }),
                &b,
                |w| {
                    writeln!(w, "n: {}", b.n)?;
                    writeln!(w, "k: {}", b.k)?;
                    writeln!(w, "m: {}", b.m)?;
                    writeln!(w, "lower: {}", b.lower)?;
                    writeln!(w, "upper: {}", b.upper)?;
                    writeln!(w, "exact: {}", fmt_opt(&b.exact))
                },
            )?;
            Ok(0)
        }
        Command::Construct {
            n,
            k,
            r,
            method,
            t,
            q,
            l,
            out: path,
            json,
        } => {
            let (n, k, r) = (n as usize, k as usize, r as usize);
            let method = method.unwrap_or_else(|| Method::default_for(r));
            let matrix = construct(n, k, r, method, Some((t, q, l)))?;
            let file = MatrixFile::new(k, matrix.clone());
            if let Some(p) = &path {
                fs::write(p, file.to_string())
                    .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            }
            let result = ConstructResult {
                n,
                k,
                r,
                method,
                matrix,
                out: path.clone(),
            };
            let inputs =
                json!({ "n": n, "k": k, "r": r, "method": method, "t": t, "q": q, "l": l });
            emit(
                out,
                json.json,
                "construct",
                inputs,
                &result,
                |w| match &path {
                    Some(p) => {
                        writeln!(w, "wrote ({n},{k},{r}) {method} matrix to {}", p.display())
                    }
                    None => write!(w, "{file}"),
                },
            )?;
            Ok(0)
        }
        Command::Verify { file, json } => {
            let mf = read_matrix(&file, cap)?;
            let report: VerifyReport = full_report(&mf.matrix, mf.k)?;
            let inputs = json!({ "file": file });
            emit(out, json.json, "verify", inputs, &report, |w| {
                writeln!(w, "n: {}", report.n)?;
                writeln!(w, "k: {}", report.k)?;
                writeln!(w, "is_idempotent: {}", report.is_idempotent)?;
                writeln!(w, "rank: {}", report.rank)?;
                writeln!(w, "trace: {}", report.trace)?;
                writeln!(w, "row_negative_counts: {:?}", report.row_negative_counts)?;
                writeln!(
                    w,
                    "diag_negative_count: {}",
                    fmt_opt(&report.diag_negative_count)
                )?;
                writeln!(w, "first_column_positive: {}", report.first_column_positive)?;
                writeln!(w, "inferred_triple: {}", fmt_opt(&report.inferred_triple))?;
                writeln!(
                    w,
                    "rank_identity_holds: {}",
                    fmt_opt(&report.rank_identity_holds)
                )?;
                writeln!(
                    w,
                    "row_identity_holds: {}",
                    fmt_opt(&report.row_identity_holds)
                )
            })?;
            Ok(if report.is_idempotent { 0 } else { 1 })
        }
        Command::Classify { file, json } => {
            let mf = read_matrix(&file, cap)?;
            let m = &mf.matrix;
            let report = full_report(m, mf.k)?;
            let standard_form = if report.is_idempotent && report.rank == 2 {
                let sf = to_standard_form(m, mf.k)?;
                Some(StandardSummary {
                    params: sf.params,
                    x: sf.x,
                    y: sf.y,
                })
            } else {
                None
            };
            let (canonical, hash) = if m.n() <= CANONICAL_MAX_DIM {
                (Some(canonical_rep(m)?), Some(canonical_hash(m)?))
            } else {
                (None, None)
            };
            let result = ClassifyResult {
                n: m.n(),
                k: mf.k,
                is_idempotent: report.is_idempotent,
                rank: report.rank,
                row_types: row_types(m),
                col_types: col_types(m),
                standard_form,
                canonical,
                canonical_hash: hash,
            };
            emit(
                out,
                json.json,
                "classify",
                json!({ "file": file }),
                &result,
                |w| {
                    writeln!(w, "n: {}", result.n)?;
                    writeln!(w, "k: {}", result.k)?;
                    writeln!(w, "is_idempotent: {}", result.is_idempotent)?;
                    writeln!(w, "rank: {}", result.rank)?;
                    writeln!(w, "row_types: {}", result.row_types.type_count())?;
                    writeln!(w, "row_multiplicity: {:?}", result.row_types.multiplicity)?;
                    writeln!(w, "col_types: {}", result.col_types.type_count())?;
                    writeln!(w, "col_multiplicity: {:?}", result.col_types.multiplicity)?;
                    match &result.standard_form {
                        Some(sf) => {
                            let p = &sf.params;
                            writeln!(
                                w,
                                "standard_form: x={} y={} t={} q={} l={}",
                                sf.x, sf.y, p.t, p.q, p.l
                            )?;
                            writeln!(
                            w,
                            "blocks: a={} b={} c={} a_p={} a_m={} b_p={} b_m={} c1p={} c1m={} c2p={} c2m={}",
                            p.a, p.b, p.c, p.a_p, p.a_m, p.b_p, p.b_m, p.c1p, p.c1m, p.c2p, p.c2m
                        )?;
                        }
                        None => writeln!(w, "standard_form: -")?,
                    }
                    writeln!(w, "canonical_hash: {}", fmt_opt(&result.canonical_hash))?;
                    if let Some(c) = &result.canonical {
                        writeln!(w, "canonical:")?;
                        write!(w, "{c}")?;
                    }
                    Ok(())
                },
            )?;
            Ok(if result.is_idempotent { 0 } else { 1 })
        }
        Command::Equiv {
            file_a,
            file_b,
            no_transpose,
            json,
        } => {
            let a = read_matrix(&file_a, cap)?;
            let b = read_matrix(&file_b, cap)?;
            let mode = if no_transpose {
                Equivalence::SimilarityOnly
            } else {
                Equivalence::WithTranspose
            };
            let result = EquivResult {
                equivalent: are_equivalent_with(&a.matrix, &b.matrix, mode)?,
                mode,
            };
            let inputs =
                json!({ "file_a": file_a, "file_b": file_b, "no_transpose": no_transpose });
            emit(out, json.json, "equiv", inputs, &result, |w| {
                writeln!(w, "equivalent: {}", result.equivalent)?;
                writeln!(
                    w,
                    "mode: {}",
                    match mode {
                        Equivalence::WithTranspose => "with-transpose",
                        Equivalence::SimilarityOnly => "similarity-only",
                    }
                )
            })?;
            Ok(0)
        }
        Command::Census {
            n,
            k,
            rank2_only,
            jobs,
            cap: census_cap,
            out: path,
            json,
        } => {
            let (n, k) = (n as usize, k as usize);
            let opts = CensusOptions {
                jobs,
                cap: census_cap,
            };
            let records = if rank2_only {
                census_rank2_with(n, k, &opts)?
            } else {
                census_general_with(n, k, &opts)?
            };
            if let Some(p) = &path {
                let f =
                    fs::File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                write_records(io::BufWriter::new(f), &records)?;
            }
            let result = CensusResult {
                rank2_only,
                jobs,
                summary: summarize(&records),
                out: path,
            };
            let inputs = json!({ "n": n, "k": k, "rank2_only": rank2_only, "jobs": jobs });
            emit(out, json.json, "census", inputs, &result, |w| {
                writeln!(w, "n\tk\tr\tclasses\traw")?;
                for row in &result.summary {
                    writeln!(
                        w,
                        "{}\t{}\t{}\t{}\t{}",
                        row.n, row.k, row.r, row.classes, row.raw_count
                    )?;
                }
                Ok(())
            })?;
            Ok(0)
        }
    }
}

impl std::str::FromStr for Equivalence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "with-transpose" => Ok(Equivalence::WithTranspose),
            "similarity-only" => Ok(Equivalence::SimilarityOnly),
            _ => Err(Error::InvalidParameter(format!(
                "unknown equivalence {s:?}"
            ))),
        }
    }
}

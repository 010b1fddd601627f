//! Command-line front end: bound tables, constructions, encoding, decoding,
//! certification, exact search and decoder audits.
//!
//! Exit status is 0 on success, 1 for a negative result (decoding failure,
//! uncertified code, failed audit) and 2 for usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crosscode::construct::{encode, kernel_by_elimination, CodeDocument, LinearCode};
use crosscode::decode::{decoder_for, DecodeOutcome, Decoder, GenericDecoder};
use crosscode::metric::{bound_table, reference_tables, BoundTable};
use crosscode::oracle::{
    certify_cross_code, certify_lee_code, enumerate_code, exhaustive_decoder_audit,
    max_code_search, AuditReport, Certificate, CodeSet, CodeSetDocument,
};
use crosscode::{Budgets, Construction, Metric, Modulus, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crosscode::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(crosscode::Error::Inconsistent(_)) => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "crosscode",
    version,
    about = "Cross-error-correcting codes over Z_{2^m}"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    #[value(name = "cor5")]
    Pair,
    #[value(name = "thm9")]
    SingleRow,
    #[value(name = "cor12")]
    Triple,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::Pair => Construction::Pair,
            ConstructionArg::SingleRow => Construction::PairSingleRow,
            ConstructionArg::Triple => Construction::Triple,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Cross,
    Lee,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Cross => Metric::Cross,
            MetricArg::Lee => Metric::Lee,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sphere-packing bounds for the Lee and cross metrics.
    Bounds {
        #[arg(long, required_unless_present = "reference_tables")]
        n: Option<u64>,
        #[arg(long, required_unless_present = "reference_tables")]
        t: Option<u64>,
        /// Comma-separated exponents, e.g. 3,4,5.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        m: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Emit the five reference tables (n, t) = (2,2), (2,3), (3,2), (3,3), (4,2) for m = 3, 4, 5.
        #[arg(long = "paper-tables", conflicts_with_all = ["n", "t", "m"])]
        reference_tables: bool,
    },
    /// Build a named construction and write its code document.
    Construct {
        #[arg(value_enum)]
        construction: ConstructionArg,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the brute-force certification.
        #[arg(long)]
        no_certify: bool,
    },
    /// Encode a message with the generator rows of a code document.
    Encode {
        #[arg(long)]
        code: PathBuf,
        /// Comma-separated message coefficients, one per generator row.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        message: Vec<u64>,
    },
    /// Decode a received word.
    Decode {
        #[arg(long)]
        code: PathBuf,
        /// Comma-separated canonical residues.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        word: Vec<u64>,
        /// Use the syndrome-table decoder instead of the specialised one.
        #[arg(long)]
        generic: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that a set of codewords corrects magnitude t.
    Certify {
        /// Code set JSON ({n, m, t?, words}) or a code document.
        #[arg(long)]
        file: PathBuf,
        /// Magnitude; defaults to the t stored in the file.
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, value_enum, default_value = "cross")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact maximum code size by clique search.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value = "cross")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Decode every codeword plus every correctable error.
    Audit {
        #[arg(value_enum, required_unless_present = "code")]
        construction: Option<ConstructionArg>,
        #[arg(long, required_unless_present = "code")]
        m: Option<u32>,
        #[arg(long, required_unless_present = "code")]
        t: Option<u64>,
        /// Audit the code in a document instead.
        #[arg(long, conflicts_with_all = ["construction", "m", "t"])]
        code: Option<PathBuf>,
        #[arg(long)]
        generic: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = target.write_all(rendered.as_bytes());
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Bounds {
            n,
            t,
            m,
            format,
            reference_tables,
        } => cmd_bounds(*n, *t, m.as_deref(), *format, *reference_tables, out),
        Command::Construct {
            construction,
            m,
            t,
            out: path,
            no_certify,
        } => cmd_construct(
            (*construction).into(),
            *m,
            *t,
            path.as_deref(),
            !no_certify,
            out,
        ),
        Command::Encode { code, message } => cmd_encode(code, message, out),
        Command::Decode {
            code,
            word,
            generic,
            format,
        } => cmd_decode(code, word, *generic, *format, out),
        Command::Certify {
            file,
            t,
            metric,
            format,
        } => cmd_certify(file, *t, (*metric).into(), *format, out),
        Command::Search {
            n,
            m,
            t,
            metric,
            format,
            max_nodes,
        } => {
            let mut budgets = Budgets::default();
            if let Some(nodes) = max_nodes {
                budgets.search_nodes = *nodes;
            }
            cmd_search(*n, *m, *t, (*metric).into(), &budgets, *format, out)
        }
        Command::Audit {
            construction,
            m,
            t,
            code,
            generic,
            format,
        } => {
            let code = match (code, construction, m, t) {
                (Some(path), ..) => read_code_document(path)?.to_code()?,
                (None, Some(c), Some(m), Some(t)) => crosscode::construct((*c).into(), *m, *t)?,
                _ => {
                    return Err(CliError::Usage(
                        "audit needs a construction with --m and --t, or --code".into(),
                    ))
                }
            };
            cmd_audit(&code, *generic, *format, out)
        }
    }
}

fn cmd_bounds(
    n: Option<u64>,
    t: Option<u64>,
    m: Option<&[u32]>,
    format: Format,
    all_reference: bool,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let tables = if all_reference {
        reference_tables()
    } else {
        let (Some(n), Some(t)) = (n, t) else {
            return Err(CliError::Usage("bounds needs --n and --t".into()));
        };
        let m = m.unwrap_or(&[]);
        if m.is_empty() {
            return Err(CliError::Usage(
                "--m needs at least one exponent, e.g. --m 3,4,5".into(),
            ));
        }
        vec![bound_table(n, t, m)?]
    };
    match format {
        Format::Csv => out.write_all(BoundTable::tables_to_csv(&tables).as_bytes())?,
        Format::Json => {
            let json = if tables.len() == 1 {
                serde_json::to_string_pretty(&tables[0])
            } else {
                serde_json::to_string_pretty(&tables)
            };
            writeln!(out, "{}", json.expect("tables serialize"))?
        }
        Format::Text => {
            let text: Vec<String> = tables.iter().map(BoundTable::to_text).collect();
            out.write_all(text.join("\n").as_bytes())?
        }
    }
    Ok(EXIT_OK)
}

fn certify_code(code: &LinearCode) -> CliResult<Option<bool>> {
    match enumerate_code(&code.parity, &Budgets::default()) {
        Ok(set) => Ok(Some(certify_cross_code(&set, code.spec.t)?.certified)),
        Err(crosscode::Error::BudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn cmd_construct(
    construction: Construction,
    m: u32,
    t: u64,
    path: Option<&Path>,
    certify: bool,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let code = crosscode::construct(construction, m, t)?;
    let kernel = kernel_by_elimination(&code.parity);
    let certified = if certify { certify_code(&code)? } else { None };
    let doc = CodeDocument::new(&code, &kernel, certified);
    let json = serde_json::to_string_pretty(&doc).expect("code documents serialize") + "\n";
    match path {
        Some(p) => fs::write(p, json).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        })?,
        None => out.write_all(json.as_bytes())?,
    }
    Ok(if certified == Some(false) {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_code_document(path: &Path) -> CliResult<CodeDocument> {
    serde_json::from_str(&read_text(path)?).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_word(modulus: Modulus, coords: &[u64]) -> CliResult<Word> {
    if let Some(bad) = coords.iter().find(|&&c| c >= modulus.order()) {
        return Err(CliError::Usage(format!(
            "{bad} is not a canonical residue of {modulus}"
        )));
    }
    Ok(Word::from_residues(modulus, coords.to_vec())?)
}

fn cmd_encode(path: &Path, message: &[u64], out: &mut dyn Write) -> CliResult<i32> {
    let doc = read_code_document(path)?;
    let g = doc.generator()?;
    let message: Vec<i64> = message.iter().map(|&x| x as i64).collect();
    let c = encode(&g, &message)?;
    writeln!(out, "{c}")?;
    Ok(EXIT_OK)
}

fn cmd_decode(
    path: &Path,
    word: &[u64],
    generic: bool,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let code = read_code_document(path)?.to_code()?;
    let r = parse_word(code.modulus(), word)?;
    let decoder: Box<dyn Decoder> = if generic {
        Box::new(GenericDecoder::for_code(&code)?)
    } else {
        decoder_for(&code)?
    };
    let outcome = decoder.decode(&r)?;
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&outcome).expect("outcomes serialize")
        )?,
        _ => match &outcome {
            DecodeOutcome::Corrected { codeword, error } => {
                writeln!(out, "Corrected(c={codeword}, e={error})")?
            }
            DecodeOutcome::Failure => writeln!(out, "Failure")?,
        },
    }
    Ok(if outcome.is_corrected() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

/// Reads either a code set or a code document; the latter is enumerated.
fn read_code_set(path: &Path) -> CliResult<(CodeSet, Option<u64>)> {
    let text = read_text(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })?;
    let json_err = |source| CliError::Json {
        path: path.to_path_buf(),
        source,
    };
    if value.get("words").is_some() {
        let doc: CodeSetDocument = serde_json::from_value(value).map_err(json_err)?;
        Ok((doc.to_code_set()?, doc.t))
    } else {
        let doc: CodeDocument = serde_json::from_value(value).map_err(json_err)?;
        let code = doc.to_code()?;
        Ok((
            enumerate_code(&code.parity, &Budgets::default())?,
            Some(doc.t),
        ))
    }
}

#[derive(Serialize)]
struct CertifyReport<'a> {
    metric: Metric,
    t: u64,
    size: usize,
    #[serde(flatten)]
    certificate: &'a Certificate,
}

fn cmd_certify(
    path: &Path,
    t: Option<u64>,
    metric: Metric,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (set, stored_t) = read_code_set(path)?;
    let t = t
        .or(stored_t)
        .ok_or_else(|| CliError::Usage("no magnitude given: pass --t".into()))?;
    let cert = match metric {
        Metric::Cross => certify_cross_code(&set, t)?,
        Metric::Lee => certify_lee_code(&set, t)?,
    };
    match format {
        Format::Json => {
            let report = CertifyReport {
                metric,
                t,
                size: set.len(),
                certificate: &cert,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("reports serialize")
            )?
        }
        _ => {
            writeln!(out, "{}", cert.certified)?;
            if let Some(c) = &cert.counterexample {
                writeln!(
                    out,
                    "counterexample: {}",
                    serde_json::to_string(c).expect("serializes")
                )?;
            }
        }
    }
    Ok(if cert.certified {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

#[derive(Serialize)]
struct SearchReport {
    n: usize,
    m: u32,
    t: u64,
    metric: Metric,
    size: usize,
    witness: Vec<Word>,
}

fn cmd_search(
    n: usize,
    m: u32,
    t: u64,
    metric: Metric,
    budgets: &Budgets,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let result = max_code_search(n, m, t, metric, budgets)?;
    match format {
        Format::Json => {
            let report = SearchReport {
                n,
                m,
                t,
                metric,
                size: result.size,
                witness: result.witness.words().to_vec(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("reports serialize")
            )?
        }
        Format::Csv => {
            writeln!(out, "n,m,t,metric,size")?;
            writeln!(out, "{n},{m},{t},{metric},{}", result.size)?
        }
        Format::Text => writeln!(out, "{}", result.size)?,
    }
    Ok(EXIT_OK)
}

fn cmd_audit(
    code: &LinearCode,
    generic: bool,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let set = enumerate_code(&code.parity, &Budgets::default())?;
    let decoder: Box<dyn Decoder> = if generic {
        Box::new(GenericDecoder::for_code(code)?)
    } else {
        decoder_for(code)?
    };
    let report: AuditReport = exhaustive_decoder_audit(&set, decoder.as_ref(), code.spec.t)?;
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        )?,
        _ => writeln!(
            out,
            "{} codewords x {} patterns: {}/{} corrected, {} failures, {} miscorrections",
            report.codewords,
            report.patterns,
            report.corrected,
            report.trials,
            report.failures,
            report.miscorrections
        )?,
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

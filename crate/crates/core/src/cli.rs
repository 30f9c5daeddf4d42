//! The `schanuel` command line.
//!
//! Exit codes: 0 when every check passes, 1 for malformed or unsupported
//! input, 2 when the input is well formed but mathematically invalid.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::format::{self, Document};
use crate::matrix::Matrix;
use crate::resolution::{
    canonical_resolution, dualize, generate_resolution, validate_resolution, ModulePresentation, Orientation,
    TruncatedResolution,
};
use crate::ring::{GroupTable, Ring};
use crate::stabilize::{check_certificate, dualize_certificate, schanuel_check, total_equivalence, EquivalenceCertificate};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "schanuel", version, about = "Certified homotopy equivalences between stabilized resolutions")]
pub struct Cli {
    /// Print every check, not only the summary.
    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a resolution or re-check a certificate.
    Validate { path: PathBuf },
    /// Build and verify the equivalence between two resolutions.
    Stabilize {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Recorded in the certificate.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Like `stabilize`, but report the degreewise homology comparison.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-verify every identity in a certificate from its raw matrices.
    Check { path: PathBuf },
    /// Write a random resolution of a preset module.
    Generate {
        /// `Z`, `Fp:<p>`, `ZG` or `FpG:<p>`.
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Group for group rings: `cyclic:<m>` or `s3`.
        #[arg(long)]
        group: Option<String>,
        /// `free:<m>`, `cyclic:<k>` (the module R/k) or `zero`.
        #[arg(long, default_value = "cyclic:2")]
        module: String,
        #[arg(long, short = 'n', default_value_t = 2)]
        length: usize,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transpose a field resolution or certificate, flipping its orientation.
    Dualize {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in resolution (`Z_over_Z`, `Z_over_Z[C_m]`).
    Canonical {
        name: String,
        #[arg(long, short = 'n', default_value_t = 2)]
        length: usize,
        /// Adjoin this many zero-mapped generators to the top term.
        #[arg(long, default_value_t = 0)]
        pad_top: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed command: the message and the exit code it maps to.
struct Exit {
    code: i32,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoSolution | Error::LiftFailed { .. } | Error::VerificationFailed(_) => EXIT_INVALID,
            _ => EXIT_MALFORMED,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        Exit {
            code: EXIT_MALFORMED,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Exit>;

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_PASS };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let verbose = cli.verbose;
    match &cli.command {
        Command::Validate { path } => validate(path, verbose, out),
        Command::Stabilize {
            first,
            second,
            out: dest,
            seed,
        } => stabilize(first, second, dest.as_deref(), *seed, false, verbose, out),
        Command::Compare {
            first,
            second,
            out: dest,
            seed,
        } => stabilize(first, second, dest.as_deref(), *seed, true, verbose, out),
        Command::Check { path } => {
            let cert = format::read_certificate(&read(path)?)?;
            Ok(report_certificate(&cert, verbose, out)?)
        }
        Command::Generate {
            ring,
            group,
            module,
            length,
            max_rank,
            seed,
            out: dest,
        } => {
            let ring = ring_from_flags(ring, group.as_deref())?;
            let presentation = module_preset(&ring, module)?;
            let res = generate_resolution(&presentation, *length, *max_rank, *seed)?;
            emit(&format::resolution_to_json(&res), dest.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Dualize { path, out: dest } => {
            let text = match format::read_document(&read(path)?)? {
                Document::Resolution(r) => format::resolution_to_json(&dualize(&r)?),
                Document::Certificate(c) => format::certificate_to_json(&dualize_certificate(&c)?),
            };
            emit(&text, dest.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Canonical {
            name,
            length,
            pad_top,
            out: dest,
        } => {
            let mut res = canonical_resolution(name, *length)?;
            if *pad_top > 0 {
                res = res.pad_top(*pad_top)?;
            }
            emit(&format::resolution_to_json(&res), dest.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit {
        code: EXIT_MALFORMED,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit(text: &str, dest: Option<&Path>, out: &mut dyn Write) -> std::io::Result<()> {
    match dest {
        Some(p) => fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn validate(path: &Path, verbose: bool, out: &mut dyn Write) -> Outcome {
    match format::read_document(&read(path)?)? {
        Document::Resolution(res) => {
            let report = validate_resolution(&res);
            writeln!(out, "resolution over {} of length {}, ranks {:?}", res.ring(), res.length(), res.ranks())?;
            if verbose || !report.passed() {
                write!(out, "{report}")?;
            }
            Ok(match report.first_failure() {
                None => {
                    writeln!(out, "valid")?;
                    EXIT_PASS
                }
                Some(f) => {
                    writeln!(out, "invalid at degree {}: {}", f.degree, f.check)?;
                    EXIT_INVALID
                }
            })
        }
        Document::Certificate(cert) => Ok(report_certificate(&cert, verbose, out)?),
    }
}

fn report_certificate(cert: &EquivalenceCertificate, verbose: bool, out: &mut dyn Write) -> std::io::Result<i32> {
    let report = check_certificate(cert);
    writeln!(out, "certificate over {} of length {}", cert.ring(), cert.length())?;
    if verbose || !report.passed() {
        write!(out, "{report}")?;
    }
    Ok(match report.first_failure() {
        None => {
            writeln!(out, "verified: {} checks pass", report.checks.len())?;
            EXIT_PASS
        }
        Some((name, f)) => {
            writeln!(out, "rejected: {name}: {f}")?;
            EXIT_INVALID
        }
    })
}

fn load_pair(first: &Path, second: &Path) -> std::result::Result<(TruncatedResolution, TruncatedResolution), Exit> {
    let p = format::read_resolution(&read(first)?)?;
    let q = format::read_resolution(&read(second)?)?;
    if p.length() != q.length() {
        return Err(Error::LengthMismatch {
            left: p.length(),
            right: q.length(),
        }
        .into());
    }
    Ok((p, q))
}

fn stabilize(
    first: &Path,
    second: &Path,
    dest: Option<&Path>,
    seed: u64,
    compare: bool,
    verbose: bool,
    out: &mut dyn Write,
) -> Outcome {
    let (p, q) = load_pair(first, second)?;
    for (label, res) in [("first", &p), ("second", &q)] {
        let report = validate_resolution(res);
        if let Some(f) = report.first_failure() {
            write!(out, "{report}")?;
            writeln!(out, "{label} resolution invalid at degree {}: {}", f.degree, f.check)?;
            return Ok(EXIT_INVALID);
        }
    }
    if p.orientation() != q.orientation() {
        return Err(Error::Orientation {
            expected: "matching orientations",
        }
        .into());
    }
    let cochain = p.orientation() == Orientation::Cochain;
    let mut cert = if cochain {
        let chain = total_equivalence(&dualize(&p)?, &dualize(&q)?)?;
        dualize_certificate(&chain)?
    } else {
        total_equivalence(&p, &q)?
    };
    cert.seed = Some(seed);

    writeln!(out, "T ranks: {:?}", cert.t_ranks)?;
    writeln!(out, "S ranks: {:?}", cert.s_ranks)?;
    if verbose {
        for stage in &cert.stages {
            writeln!(out, "  stage {:<40} {}", stage.stage, if stage.passed { "pass" } else { "FAIL" })?;
        }
    }
    let report = check_certificate(&cert);
    for (name, v) in &report.checks {
        match v {
            Ok(()) => writeln!(out, "  pass  {name}")?,
            Err(f) => writeln!(out, "  FAIL  {name}: {f}")?,
        }
    }
    let mut code = if report.passed() { EXIT_PASS } else { EXIT_INVALID };
    if compare {
        let schanuel = schanuel_check(&cert)?;
        write!(out, "{schanuel}")?;
        writeln!(out, "homology {}", if schanuel.passed { "agrees" } else { "DIFFERS" })?;
        if !schanuel.passed {
            code = EXIT_INVALID;
        }
    }
    if let Some(path) = dest {
        fs::write(path, format::certificate_to_json(&cert))?;
        writeln!(out, "certificate written to {}", path.display())?;
    }
    Ok(code)
}

pub fn ring_from_flags(ring: &str, group: Option<&str>) -> crate::error::Result<Ring> {
    let table = match group {
        None => None,
        Some("s3") | Some("S3") => Some(GroupTable::symmetric3()),
        Some(g) => {
            let m = g
                .strip_prefix("cyclic:")
                .and_then(|m| m.parse::<usize>().ok())
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::Parse(format!("unknown group {g:?}")))?;
            Some(GroupTable::cyclic(m))
        }
    };
    format::parse_ring(ring, table)
}

/// `free:<m>`, `cyclic:<k>` or `zero`.
pub fn module_preset(ring: &Ring, preset: &str) -> crate::error::Result<ModulePresentation> {
    let bad = || Error::Parse(format!("unknown module preset {preset:?}"));
    if preset == "zero" {
        return Ok(ModulePresentation::new(Matrix::identity(ring, 1)));
    }
    let (kind, arg) = preset.split_once(':').ok_or_else(bad)?;
    let value: i64 = arg.parse().map_err(|_| bad())?;
    match kind {
        "free" if value >= 0 => Ok(ModulePresentation::free(ring, value as usize)),
        "cyclic" => Ok(ModulePresentation::new(Matrix::from_rows(
            ring,
            1,
            vec![vec![ring.from_i64(value)]],
        )?)),
        _ => Err(bad()),
    }
}

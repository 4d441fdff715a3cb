use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qcc::bound::{best_bound_for_nu, verify_certificate, BoundError};
use qcc::code::QcCode;
use qcc::decoder::{self, DecodeOutcome};
use qcc::files::{CertificateFile, CodeDefinitionFile, MessageFile, WordFile};
use qcc::oracle;
use qcc::report;
use qcc::spectral;

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID_CODE: u8 = 2;
const EXIT_DECODING_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qcc",
    about = "Quasi-cyclic codes: spectral distance bounds and syndrome decoding",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a code, list its eigenvalues, and search for the best bound.
    Analyze {
        #[arg(long)]
        code: PathBuf,
        /// Largest nu to search; the best certificate per nu is reported.
        #[arg(long, default_value_t = 1)]
        max_nu: usize,
    },
    /// Verify an explicit certificate (f, z, delta, nu) against a code.
    Bound {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        f: u64,
        #[arg(long)]
        z: u64,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        nu: usize,
    },
    /// Encode a message file into a codeword file (stdout or --out).
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a received word under a certificate, printing the transcript.
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        rx: PathBuf,
    },
    /// Minimum distance: exhaustive (guarded) or sampled upper-bound advisory.
    Mindist {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        /// Sample count for --method sample.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Seed for the sampled advisory.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Sample,
}

struct Failure {
    exit: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Failure {
        Failure {
            exit: EXIT_INVALID_CODE,
            message: message.to_string(),
        }
    }

    fn decoding(message: impl ToString) -> Failure {
        Failure {
            exit: EXIT_DECODING_FAILURE,
            message: message.to_string(),
        }
    }

    fn usage(message: impl ToString) -> Failure {
        Failure {
            exit: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

fn load_code(path: &PathBuf) -> Result<QcCode, Failure> {
    let file = CodeDefinitionFile::from_path(path).map_err(|e| match e {
        qcc::files::FileError::Io { .. } => Failure::usage(e),
        other => Failure::invalid(other),
    })?;
    file.to_code().map_err(Failure::invalid)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Analyze { code, max_nu } => {
            let code = load_code(&code)?;
            let mut out = report::code_header(&code);
            let eigs = spectral::eigenvalues(&code);
            out.push_str(&report::eigenvalue_table(&eigs));
            let mut overall: Option<qcc::BoundCertificate> = None;
            out.push_str("best bound per nu:\n");
            for nu in 0..=max_nu {
                match best_bound_for_nu(&code, nu) {
                    Ok(cert) => {
                        out.push_str(&format!(
                            "  nu = {nu}: d* = {} via (f = {}, z = {}, delta = {}, nu = {}), dec = {}\n",
                            cert.dstar,
                            cert.f,
                            cert.z,
                            cert.delta,
                            cert.nu,
                            report::fmt_dec(cert.dec()),
                        ));
                        if overall.as_ref().is_none_or(|b| cert.dstar > b.dstar) {
                            overall = Some(cert);
                        }
                    }
                    Err(BoundError::NoBound) => {
                        out.push_str(&format!("  nu = {nu}: no bound above the trivial one\n"));
                    }
                    Err(e) => return Err(Failure::invalid(e)),
                }
            }
            match overall {
                Some(cert) => {
                    out.push_str(&format!("overall d* = {}\n", cert.dstar));
                    out.push_str(&report::certificate_block(&cert));
                }
                None => out.push_str("overall: no bound above the trivial one\n"),
            }
            Ok(out)
        }
        Command::Bound {
            code,
            f,
            z,
            delta,
            nu,
        } => {
            let code = load_code(&code)?;
            let cert = verify_certificate(&code, f, z, delta, nu).map_err(Failure::invalid)?;
            let mut out = report::code_header(&code);
            out.push_str(&report::certificate_block(&cert));
            Ok(out)
        }
        Command::Encode { code, message, out } => {
            let code = load_code(&code)?;
            let message = MessageFile::from_path(&message).map_err(Failure::usage)?;
            let polys = message.to_polys(&code).map_err(Failure::usage)?;
            let word = code.encode(&polys);
            let json = WordFile::from_word(&code, &word).to_json();
            match out {
                Some(path) => {
                    std::fs::write(&path, json.as_bytes())
                        .map_err(|e| Failure::usage(format!("cannot write {path:?}: {e}")))?;
                    Ok(format!("wrote codeword to {}\n", path.display()))
                }
                None => Ok(json + "\n"),
            }
        }
        Command::Decode { code, cert, rx } => {
            let code = load_code(&code)?;
            let cert_file = CertificateFile::from_path(&cert).map_err(Failure::usage)?;
            let cert = cert_file.to_certificate(&code).map_err(Failure::invalid)?;
            let rx_file = WordFile::from_path(&rx).map_err(Failure::usage)?;
            let rx = rx_file.to_word(&code).map_err(Failure::usage)?;

            let mut out = report::code_header(&code);
            out.push_str(&report::certificate_block(&cert));
            let synd = decoder::syndromes(&code, &cert, &rx).map_err(Failure::invalid)?;
            out.push_str(&report::syndrome_block(&synd));
            if decoder::axes_swapped(&cert) {
                out.push_str("note: delta - 1 <= nu, key-equation axes interchanged\n");
            }
            match decoder::decode(&code, &cert, &rx).map_err(Failure::invalid)? {
                DecodeOutcome::Decoded {
                    codeword,
                    error,
                    locator,
                } => {
                    out.push_str(&format!("locator: {}\n", report::fmt_ext_poly(&locator)));
                    out.push_str(&report::error_block(&error));
                    out.push_str(&report::word_block(&code, "codeword", &codeword));
                    out.push_str("status: SUCCESS\n");
                    Ok(out)
                }
                DecodeOutcome::Failure { reason, locator } => {
                    if let Some(locator) = locator {
                        out.push_str(&format!("locator: {}\n", report::fmt_ext_poly(&locator)));
                    }
                    out.push_str(&format!("status: FAILURE {reason}\n"));
                    Err(Failure::decoding(out.trim_end().to_string()))
                }
            }
        }
        Command::Mindist {
            code,
            method,
            samples,
            seed,
        } => {
            let code = load_code(&code)?;
            let mut out = report::code_header(&code);
            match method {
                Method::Brute => {
                    let d = oracle::min_distance_exhaustive(&code).map_err(Failure::invalid)?;
                    out.push_str(&format!("minimum distance (exhaustive): {d}\n"));
                }
                Method::Sample => {
                    let ub = oracle::sampled_weight_upper_bound(&code, samples, seed);
                    out.push_str(&format!(
                        "minimum weight found in {samples} random samples (seed {seed}): {ub}\n"
                    ));
                    out.push_str(
                        "advisory: sampled value is a NON-GUARANTEED upper bound on the distance\n",
                    );
                }
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version print normally; anything else is a usage error
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.exit)
        }
    }
}

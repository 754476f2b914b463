//! Command-line front end.
//!
//! Exit codes: 0 computed/verified, 1 a property was falsified, 2 usage or
//! input error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::certificate::{verify_semi_main, SemiMainReport};
use crate::error::{Error, Result};
use crate::exterior::KoszulContext;
use crate::field::FieldSpec;
use crate::flattening::{
    lower_bound, witness_search, EvenOptions, RankCertificate, ToeplitzBasis, WitnessConfig,
    WitnessResult,
};
use crate::sampling::{seed_from_str, DEFAULT_INT_BOUND};
use crate::tensor_io;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Seed value that makes `witness` start from `Σ L_i ⊗ (S_i ⊕ ⋯ ⊕ S_i)`.
pub const DOUBLED_TOEPLITZ_SEED: &str = "fixed-doubled-toeplitz";

#[derive(Parser, Debug)]
#[command(
    name = "koszul",
    version,
    about = "Koszul-flattening border-rank certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Ground field: `Q` or `GF:<p>`.
    #[arg(long)]
    field: Option<String>,
    /// Seed for randomized steps (integer or any string).
    #[arg(long, env = "KOSZUL_SEED", default_value = "0")]
    seed: String,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Border-rank lower bound for a cubic tensor.
    Lowerbound {
        #[arg(long, conflicts_with = "tensor", required_unless_present = "tensor")]
        builtin: Option<String>,
        /// Path to a tensor document.
        #[arg(long)]
        tensor: Option<PathBuf>,
        /// Extra random projections for even d.
        #[arg(long, default_value_t = 0)]
        projections: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Elusive-entry certificate and determinant checks for odd m.
    VerifyKoszul {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized search for high-rank elements of the blow-up X_L^{n}.
    Witness {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Rational samples are drawn from [-bound, bound].
        #[arg(long, default_value_t = DEFAULT_INT_BOUND)]
        bound: i64,
        /// Write the witness coefficient matrices here.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Write a built-in tensor document.
    Builtin {
        name: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Captured result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn ok(stdout: String) -> Self {
        Self::with_code(EXIT_OK, stdout)
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

#[derive(Serialize)]
struct CliReport<I: Serialize, P: Serialize> {
    command: &'static str,
    inputs: I,
    certificate: P,
    status: &'static str,
}

fn render<I: Serialize, P: Serialize>(report: &CliReport<I, P>) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn parse_field(flag: Option<&str>) -> Result<FieldSpec> {
    flag.map_or(Ok(FieldSpec::Rationals), str::parse)
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutcome::usage(text)
            } else {
                CliOutcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Lowerbound {
            builtin,
            tensor,
            projections,
            common,
        } => cmd_lowerbound(builtin, tensor, projections, &common),
        Command::VerifyKoszul { m, samples, common } => cmd_verify_koszul(m, samples, &common),
        Command::Witness {
            m,
            n,
            trials,
            bound,
            out,
            common,
        } => cmd_witness(m, n, trials, bound, out, &common),
        Command::Builtin { name, field, out } => cmd_builtin(&name, field.as_deref(), out),
    };
    result.unwrap_or_else(|e| CliOutcome::usage(format!("error: {e}\n")))
}

#[derive(Serialize)]
struct LowerboundInputs {
    tensor: String,
    field: FieldSpec,
    d: usize,
    projections: usize,
    seed: String,
}

fn cmd_lowerbound(
    builtin: Option<String>,
    path: Option<PathBuf>,
    projections: usize,
    common: &Common,
) -> Result<CliOutcome> {
    let (label, tensor) = match (builtin, path) {
        (Some(name), _) => {
            let field = parse_field(common.field.as_deref())?;
            (name.clone(), tensor_io::builtin(&name, field)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            let tensor = tensor_io::parse(&text)?;
            if let Some(flag) = common.field.as_deref() {
                let field: FieldSpec = flag.parse()?;
                if field != tensor.field() {
                    return Err(Error::FieldMismatch(field, tensor.field()));
                }
            }
            (path.display().to_string(), tensor)
        }
        (None, None) => return Err(Error::InvalidArgument("give --builtin or --tensor".into())),
    };
    let options = EvenOptions {
        projections,
        seed: seed_from_str(&common.seed),
        int_bound: DEFAULT_INT_BOUND,
    };
    let cert = lower_bound(&tensor, &label, options)?;
    let inputs = LowerboundInputs {
        tensor: label,
        field: tensor.field(),
        d: tensor.dims().0,
        projections,
        seed: common.seed.clone(),
    };
    let report = CliReport {
        command: "lowerbound",
        inputs,
        certificate: cert,
        status: "ok",
    };
    Ok(CliOutcome::ok(if common.json {
        render(&report)
    } else {
        lowerbound_text(&report.inputs, &report.certificate)
    }))
}

fn lowerbound_text(inputs: &LowerboundInputs, cert: &RankCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: lowerbound");
    let _ = writeln!(s, "tensor: {}", inputs.tensor);
    let _ = writeln!(s, "field: {}", cert.field);
    let _ = writeln!(s, "d: {}", inputs.d);
    let _ = writeln!(s, "m: {} (p = {})", cert.m, cert.p);
    if let Some(proj) = &cert.projection {
        let _ = writeln!(s, "projection: {proj}");
    }
    let _ = writeln!(s, "flattening rank: {}", cert.flattening_rank);
    let _ = writeln!(s, "rk(X_L) = C(2p,p): {}", cert.subspace_rank);
    let _ = writeln!(
        s,
        "border rank >= ceil({}/{}) = {}",
        cert.flattening_rank, cert.subspace_rank, cert.lower_bound
    );
    let _ = writeln!(s, "status: ok");
    s
}

#[derive(Serialize)]
struct VerifyInputs {
    m: usize,
    field: FieldSpec,
    samples: usize,
    seed: String,
}

fn cmd_verify_koszul(m: usize, samples: usize, common: &Common) -> Result<CliOutcome> {
    if m.is_multiple_of(2) || !(3..=11).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "--m must be odd and in [3, 11], got {m}"
        )));
    }
    let field = parse_field(common.field.as_deref())?;
    let ctx = KoszulContext::for_m(m)?;
    let seed = seed_from_str(&common.seed);
    let (report, falsified) = match verify_semi_main(&ctx, field, samples, seed) {
        Ok(r) => {
            let failed = !r.passed;
            (Ok(r), failed)
        }
        Err(Error::Falsified(msg)) => (Err(msg), true),
        Err(e) => return Err(e),
    };
    let code = if falsified { EXIT_FALSIFIED } else { EXIT_OK };
    let status = if falsified { "falsified" } else { "pass" };
    let inputs = VerifyInputs {
        m,
        field,
        samples,
        seed: common.seed.clone(),
    };
    let stdout = match report {
        Ok(report) => {
            if common.json {
                render(&CliReport {
                    command: "verify-koszul",
                    inputs,
                    certificate: &report,
                    status,
                })
            } else {
                verify_text(&report, status)
            }
        }
        Err(msg) => {
            if common.json {
                render(&CliReport {
                    command: "verify-koszul",
                    inputs,
                    certificate: msg,
                    status,
                })
            } else {
                format!("command: verify-koszul\nm: {m}\nfield: {field}\nerror: {msg}\nstatus: {status}\n")
            }
        }
    };
    Ok(CliOutcome::with_code(code, stdout))
}

fn verify_text(r: &SemiMainReport, status: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: verify-koszul");
    let _ = writeln!(s, "m: {} (p = {})", r.m, r.p);
    let _ = writeln!(s, "field: {}", r.field);
    let _ = writeln!(s, "matrix size: {}x{}", r.size, r.size);
    let _ = writeln!(s, "permutation size: {}", r.size);
    let _ = writeln!(s, "permutation sign: {:+}", r.permutation_sign);
    let _ = writeln!(s, "k: {:+}", r.k);
    let _ = writeln!(
        s,
        "det A(1,...,1) = {} [{}]",
        r.det_at_ones,
        if r.det_at_ones_ok { "ok" } else { "MISMATCH" }
    );
    for (i, sample) in r.samples.iter().enumerate() {
        let t: Vec<_> = sample.t.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            "sample {i}: t = ({}) det = {} expected = k*(prod t)^{} = {} [{}]",
            t.join(", "),
            sample.determinant,
            r.exponent,
            sample.expected,
            if sample.ok { "ok" } else { "MISMATCH" }
        );
    }
    let _ = writeln!(s, "status: {status}");
    s
}

#[derive(Serialize)]
struct WitnessInputs {
    m: usize,
    n: usize,
    trials: usize,
    field: FieldSpec,
    seed: String,
    bound: i64,
}

#[derive(Serialize)]
struct WitnessPayload<'a> {
    #[serde(flatten)]
    result: &'a WitnessResult,
    exceeds_target: bool,
    witness_path: Option<String>,
}

fn cmd_witness(
    m: usize,
    n: usize,
    trials: usize,
    bound: i64,
    out: Option<PathBuf>,
    common: &Common,
) -> Result<CliOutcome> {
    let field = parse_field(common.field.as_deref())?;
    let ctx = KoszulContext::for_m(m)?;
    let mut config = WitnessConfig::new(field, n, trials, seed_from_str(&common.seed));
    config.int_bound = bound;
    if common.seed == DOUBLED_TOEPLITZ_SEED {
        let block = ctx.p() + 1;
        if !n.is_multiple_of(block) {
            return Err(Error::InvalidArgument(format!(
                "{DOUBLED_TOEPLITZ_SEED} needs n divisible by p + 1 = {block}"
            )));
        }
        config.forced_first = Some(ToeplitzBasis::new(field, ctx.p()).block_sums(n / block));
    }
    let result = witness_search(&ctx, &config)?;
    let witness_path = match &out {
        Some(path) => {
            std::fs::write(path, witness_text(&result)).map_err(|e| {
                Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
            })?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let payload = WitnessPayload {
        result: &result,
        exceeds_target: result.exceeds_target(),
        witness_path,
    };
    if common.json {
        let inputs = WitnessInputs {
            m,
            n,
            trials,
            field,
            seed: common.seed.clone(),
            bound,
        };
        return Ok(CliOutcome::ok(render(&CliReport {
            command: "witness",
            inputs,
            certificate: payload,
            status: "ok",
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "command: witness");
    let _ = writeln!(s, "m: {m} (p = {})", ctx.p());
    let _ = writeln!(s, "n: {n}");
    let _ = writeln!(s, "field: {field}");
    let _ = writeln!(s, "trials: {trials}");
    let _ = writeln!(
        s,
        "best rank: {} of {} (trial {})",
        result.best_rank, result.full_size, result.best_trial
    );
    let _ = writeln!(s, "target C(2p,p)(2m-4): {}", result.target);
    let _ = writeln!(s, "exceeds target: {}", payload.exceeds_target);
    if let Some(path) = &payload.witness_path {
        let _ = writeln!(s, "witness: {path}");
    }
    let _ = writeln!(s, "status: ok");
    Ok(CliOutcome::ok(s))
}

fn witness_text(result: &WitnessResult) -> String {
    let mut s = format!(
        "# blow-up witness m={} n={} field={} rank={}\n",
        result.m, result.n, result.field, result.best_rank
    );
    for (i, c) in result.witness.iter().enumerate() {
        let _ = writeln!(s, "coefficient {}", i + 1);
        s.push_str(&c.to_string());
    }
    s
}

fn cmd_builtin(name: &str, field: Option<&str>, out: Option<PathBuf>) -> Result<CliOutcome> {
    let field = parse_field(field)?;
    let tensor = tensor_io::builtin(name, field)?;
    let doc = tensor_io::serialize(&tensor);
    match out {
        Some(path) => {
            std::fs::write(&path, &doc).map_err(|e| {
                Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(CliOutcome::ok(format!(
                "wrote {name} ({} entries) to {}\n",
                tensor.nnz(),
                path.display()
            )))
        }
        None => Ok(CliOutcome::ok(doc)),
    }
}

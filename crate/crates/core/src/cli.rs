//! Command-line front end. [`execute`] runs a full argument vector in-process
//! and returns what the binary prints, so the same path is exercised by the
//! binary and by tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::characters::{character, weyl_denominator, DenominatorForm, Partition};
use crate::error::{Error, Result};
use crate::kernels::{kernel_series, KernelSpec};
use crate::keypoly::{key, KeyIndex};
use crate::laurent::{parse_coeff, Coeff, LaurentPoly};
use crate::random::DEFAULT_SEED;
use crate::report::VerificationReport;
use crate::scalarprod::{orthogonality_matrix, scalar, value_string, GramMatrix};
use crate::verify::{verify, Identity, VerifyConfig};
use crate::weylgroup::GroupType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

/// Value given to `--beta`.
#[derive(Clone, Debug, PartialEq)]
pub enum BetaArg {
    Symbolic,
    Value(Coeff),
}

impl FromStr for BetaArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("symbolic") {
            Ok(BetaArg::Symbolic)
        } else {
            parse_coeff(s).map(BetaArg::Value)
        }
    }
}

impl BetaArg {
    /// Specializes `beta` in `p` when a value was given and `p` carries it.
    fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        match self {
            BetaArg::Value(c) if p.vars().index_of("beta").is_some() => {
                p.substitute("beta", &LaurentPoly::constant(p.vars(), c.clone()))
            }
            _ => Ok(p.clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Sum,
    Product,
}

#[derive(Debug, Parser)]
#[command(
    name = "keykernels",
    version,
    about = "Key polynomials and non-symmetric Cauchy kernels of the classical groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Group type: A, B, C, D or BC.
    #[arg(long = "type", global = true, default_value = "A", value_parser = parse_type)]
    pub ty: GroupType,

    /// Rank.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,

    /// Degree bound for kernel expansions and character sizes.
    #[arg(long, global = true, default_value_t = 4)]
    pub maxdeg: u32,

    /// Index bound for Gram matrices and monomial windows.
    #[arg(long, global = true, default_value_t = 3)]
    pub bound: u32,

    /// `symbolic`, or a rational value substituted for beta in the output.
    #[arg(long, global = true, default_value = "symbolic", value_parser = parse_beta)]
    pub beta: BetaArg,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Number of random inputs for randomized checks.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Key polynomial of an index such as `A:0,1` or `C:-1,2:hat`.
    Key { index: String },
    /// Character of a partition such as `2,1`.
    Character { lambda: String },
    /// Weyl denominator.
    Denominator {
        #[arg(long, value_enum, default_value = "product")]
        form: FormArg,
    },
    /// Truncated expansion of the non-symmetric kernel of `--type`.
    Kernel,
    /// Scalar product of two operands, each a key index or a JSON polynomial file.
    Scalar { left: String, right: String },
    /// Gram matrix of the two key families over an index window.
    Gram,
    /// Run one identity check.
    Verify { identity: String },
}

fn parse_type(s: &str) -> std::result::Result<GroupType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_beta(s: &str) -> std::result::Result<BetaArg, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What the binary prints and the exit code it returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn usage(msg: impl Into<String>) -> Self {
        Output {
            stdout: String::new(),
            stderr: msg.into(),
            code: 2,
        }
    }
}

/// Parses and runs one invocation. `args` includes the program name.
pub fn execute<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Output::usage(text)
            };
        }
    };
    let (text, passed) = match run(&cli) {
        Ok(r) => r,
        Err(e) => return Output::usage(format!("error: {e}\n")),
    };
    let code = if passed { 0 } else { 1 };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Output {
                stdout: String::new(),
                stderr: String::new(),
                code,
            },
            Err(e) => Output::usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Output {
            stdout: text,
            stderr: String::new(),
            code,
        },
    }
}

/// Runs a parsed command; returns the rendered output and whether any check passed.
pub fn run(cli: &Cli) -> Result<(String, bool)> {
    let n = cli.n as usize;
    match &cli.command {
        Command::Key { index } => {
            let idx: KeyIndex = index.parse()?;
            let p = cli.beta.apply(&*key(&idx)?)?;
            Ok((render_poly(cli.format, &p), true))
        }
        Command::Character { lambda } => {
            let p = character(cli.ty, &parse_partition(lambda)?, n)?;
            Ok((render_poly(cli.format, &p), true))
        }
        Command::Denominator { form } => {
            let form = match form {
                FormArg::Sum => DenominatorForm::Sum,
                FormArg::Product => DenominatorForm::Product,
            };
            let d = weyl_denominator(cli.ty, n, form)?;
            let factors: Vec<LaurentPoly> = d
                .inverse_factors
                .iter()
                .map(|f| cli.beta.apply(f))
                .collect::<Result<_>>()?;
            let text = match cli.format {
                Format::Json => {
                    json_line(&json!({ "numerator": d.numerator, "inverse_factors": factors }))
                }
                Format::Pretty => {
                    let mut s = d.numerator.pretty();
                    for f in &factors {
                        write!(s, " / ({})", f.pretty()).expect("write to string");
                    }
                    s + "\n"
                }
            };
            Ok((text, true))
        }
        Command::Kernel => {
            let series = kernel_series(KernelSpec::for_type(cli.ty, n), cli.maxdeg)?;
            let p = cli.beta.apply(&series.to_poly())?;
            Ok((render_poly(cli.format, &p), true))
        }
        Command::Scalar { left, right } => {
            let f = operand(left)?;
            let g = operand(right)?;
            let v = cli.beta.apply(&scalar(cli.ty, &f, &g)?)?;
            let text = match cli.format {
                Format::Json => json_line(&serde_json::to_value(&v).expect("serializable")),
                Format::Pretty => value_string(&v) + "\n",
            };
            Ok((text, true))
        }
        Command::Gram => {
            let mut gram = orthogonality_matrix(cli.ty, n, cli.bound)?;
            specialize_gram(&mut gram, &cli.beta)?;
            Ok((render_gram(cli.format, &gram), true))
        }
        Command::Verify { identity } => {
            let identity: Identity = identity.parse()?;
            let cfg = VerifyConfig {
                ty: cli.ty,
                n,
                maxdeg: cli.maxdeg,
                bound: cli.bound,
                seed: cli.seed,
                trials: cli.trials,
            };
            let report = verify(identity, &cfg)?;
            Ok((render_report(cli.format, &report), report.passed()))
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts = inner
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

/// A key index string, or else a path to a JSON polynomial.
fn operand(s: &str) -> Result<LaurentPoly> {
    if let Ok(idx) = s.parse::<KeyIndex>() {
        return Ok((*key(&idx)?).clone());
    }
    let text = std::fs::read_to_string(s).map_err(|e| {
        Error::Parse(format!(
            "{s:?} is neither a key index nor a readable file: {e}"
        ))
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{s}: {e}")))
}

fn specialize_gram(gram: &mut GramMatrix, beta: &BetaArg) -> Result<()> {
    for entry in gram.entries.iter_mut().flatten().flatten() {
        *entry = beta.apply(entry)?;
    }
    Ok(())
}

fn json_line(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn render_poly(format: Format, p: &LaurentPoly) -> String {
    match format {
        Format::Json => json_line(&serde_json::to_value(p).expect("serializable")),
        Format::Pretty => p.pretty() + "\n",
    }
}

fn render_gram(format: Format, gram: &GramMatrix) -> String {
    match format {
        Format::Json => json_line(&gram.to_json()),
        Format::Pretty => {
            let mut s = String::new();
            for (r, row) in gram.rows.iter().zip(&gram.entries) {
                for (c, e) in gram.cols.iter().zip(row) {
                    if let Some(e) = e {
                        if !e.is_zero() {
                            writeln!(s, "({r}, {c}) = {}", value_string(e))
                                .expect("write to string");
                        }
                    }
                }
            }
            s
        }
    }
}

fn render_report(format: Format, r: &VerificationReport) -> String {
    match format {
        Format::Json => json_line(&serde_json::to_value(r).expect("serializable")),
        Format::Pretty => {
            let status = if r.passed() { "pass" } else { "FAIL" };
            let mut s = format!("{status}  {}  n={}  bound={}\n", r.identity, r.n, r.maxdeg);
            if let Some(ce) = &r.counterexample {
                writeln!(s, "counterexample: {ce}").expect("write to string");
            }
            s
        }
    }
}

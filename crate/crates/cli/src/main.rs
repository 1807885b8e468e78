mod commands;
mod report;
mod source;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coverlink::DEFAULT_MAX_COSETS;

use crate::report::{Report, Status};

/// Verifier for coset enumeration, clasp calculus and integral forms.
#[derive(Debug, Parser)]
#[command(name = "coverlink", version)]
pub struct Cli {
    /// Emit one JSON document instead of text; numbers are decimal strings.
    #[arg(long, global = true)]
    pub json: bool,
    /// Coset enumeration bound [env: COVERLINK_MAX_COSETS] [default: 1000000].
    #[arg(long, global = true)]
    pub max_cosets: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finitely presented groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Certification sweep over the Q_m family.
    Qm(QmArgs),
    /// Clasp programs and twisted linking matrices.
    #[command(subcommand)]
    Clasp(ClaspCmd),
    /// Integral symmetric forms.
    #[command(subcommand)]
    Forms(FormsCmd),
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Order of the group by coset enumeration.
    Order {
        /// Presentation file, or `trivial`, `Z<n>`, `qm<p>`.
        group: String,
        /// Fail unless the order equals this value.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Invariant factors and free rank of the abelianization.
    Abelianization { group: String },
    /// Passes when the word is trivial in the group.
    WordTrivial { group: String, word: String },
    /// Index of the subgroup generated by the given words.
    Subgroup {
        group: String,
        words: Vec<String>,
        /// Fail unless the index equals this value.
        #[arg(long)]
        expect_index: Option<usize>,
    },
    /// Abelianization of the subgroup generated by the given words.
    KernelHomology { group: String, words: Vec<String> },
}

#[derive(Debug, Args)]
pub struct QmArgs {
    /// Values of p: `a`, `a..b` (inclusive) or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
}

#[derive(Debug, Subcommand)]
pub enum ClaspCmd {
    /// Evaluate a clasp program to its twisted linking matrix.
    Eval { program: PathBuf },
    /// Homology of the cover of the surgered manifold.
    Homology { program: PathBuf },
    /// Append clasps that reduce the first row to (n', 0, ..., 0).
    Trivialize {
        program: PathBuf,
        /// Write the extended program here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a clasp program realizing a Hermitian matrix.
    Realize {
        matrix: PathBuf,
        /// Group name or presentation file; overrides the file's `group`.
        #[arg(long)]
        group: Option<String>,
        /// Write the program here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FormsCmd {
    /// Passes when every diagonal entry is even.
    Even(FormSource),
    /// Passes when the determinant is a unit.
    Unimodular(FormSource),
    /// Exact signature.
    Signature(FormSource),
    /// Split an even unimodular form of signature 0 into hyperbolic planes.
    Hyperbolize {
        #[command(flatten)]
        source: FormSource,
        /// Initial coefficient bound for the isotropic vector search.
        #[arg(long, default_value_t = coverlink::forms::DEFAULT_SEARCH_BOUND)]
        search_bound: i64,
    },
    /// Number of E8 summands that cancel the signature.
    Stabilize {
        #[command(flatten)]
        source: FormSource,
        /// `topological` or `smooth`.
        #[arg(long, default_value = "topological")]
        category: String,
    },
}

#[derive(Debug, Args)]
pub struct FormSource {
    /// JSON file holding an array of integer rows.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub matrix: Option<PathBuf>,
    /// Built-in form: `H`, `E8` or `-E8`.
    #[arg(long, allow_hyphen_values = true)]
    pub builtin: Option<String>,
}

impl Cli {
    pub fn max_cosets(&self) -> Result<usize, String> {
        if let Some(n) = self.max_cosets {
            return Ok(n);
        }
        match std::env::var("COVERLINK_MAX_COSETS") {
            Ok(v) => v.trim().parse().map_err(|_| format!("COVERLINK_MAX_COSETS=`{v}` is not a count")),
            Err(_) => Ok(DEFAULT_MAX_COSETS),
        }
    }
}

fn emit(json: bool, reports: &[Report], as_array: bool) {
    let mut out = std::io::stdout().lock();
    let written = if json {
        let doc = if as_array {
            serde_json::Value::Array(reports.iter().map(Report::to_json).collect())
        } else {
            reports[0].to_json()
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("reports serialize"))
    } else {
        reports.iter().try_for_each(|r| write!(out, "{}", r.to_text()))
    };
    let _ = written;
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::InputError.exit_code() } else { 0 });
        }
    };
    let command: Vec<String> = args.into_iter().skip(1).collect();
    let (reports, as_array) = commands::dispatch(&cli, command);
    emit(cli.json, &reports, as_array);
    let worst = reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
    ExitCode::from(worst.exit_code())
}

//! Command-line surface: load a diagram file, enumerate the cell, multiply
//! basis elements, classify fusion boxes, transport into matrix form, and
//! run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 file or parse error,
//! 3 invalid flags, 4 domain error, 5 suite/diagram mismatch.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use subreg_core::automaton::{enumerate_box, enumerate_cell};
use subreg_core::hecke::Ball;
use subreg_core::jring::JElement;
use subreg_core::suites::{self, SuiteError, SuiteReport};
use subreg_core::transport::{classify_fusion, PsiTransport};
use subreg_core::word::Word;
use subreg_core::{CoxeterDiagram, Gen};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_FLAGS: u8 = 3;
const EXIT_DOMAIN: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

#[derive(Parser)]
#[command(
    name = "subreg",
    about = "Compute in the based ring of the subregular cell of a Coxeter group",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the cell elements (or one box) up to a length bound
    Enumerate(EnumerateArgs),
    /// Multiply two basis elements and print the result
    Mul(MulArgs),
    /// Run a verification suite and print TAP-style results
    Verify(VerifyArgs),
    /// Report whether the box at a generator is a fusion ring
    FusionClassify(FusionClassifyArgs),
    /// Print the matrix image of a basis element under odd-edge transport
    IsoMatrix(IsoMatrixArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Diagram file (JSON)
    diagram: PathBuf,
    /// Maximum word length
    #[arg(long)]
    max_len: usize,
    /// Restrict to words starting with the first label and ending with the
    /// second
    #[arg(long, num_args = 2, value_names = ["START", "END"])]
    r#box: Option<Vec<String>>,
}

#[derive(Args)]
struct MulArgs {
    diagram: PathBuf,
    /// Left factor
    x: String,
    /// Right factor
    y: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Assoc,
    Basedring,
    #[value(name = "thmA", alias = "thma")]
    ThmA,
    #[value(name = "thmB", alias = "thmb")]
    ThmB,
    #[value(name = "thmC", alias = "thmc")]
    ThmC,
    #[value(name = "thmD", alias = "thmd")]
    ThmD,
    #[value(name = "thmE", alias = "thme")]
    ThmE,
    Hecke,
    /// Dihedral-segment factorization of every cell element
    Factor,
}

#[derive(Args)]
struct VerifyArgs {
    diagram: PathBuf,
    /// Which suite to run
    suite: SuiteName,
    /// Length bound on enumerated basis elements
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    /// Bound on l(x) + l(y) for oracle pairs
    #[arg(long, default_value_t = 8)]
    max_sum: usize,
    /// Ball radius for the oracle
    #[arg(long, default_value_t = 8)]
    radius: usize,
    /// Sample count for the property suites
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Seed for the property suites
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Base generator label for transport suites
    #[arg(long)]
    base: Option<String>,
    /// Write oracle h-coefficients as CSV to this path
    #[arg(long)]
    dump_csv: Option<PathBuf>,
}

#[derive(Args)]
struct FusionClassifyArgs {
    diagram: PathBuf,
    /// Generator label (defaults to the first generator)
    #[arg(long)]
    r#gen: Option<String>,
}

#[derive(Args)]
struct IsoMatrixArgs {
    diagram: PathBuf,
    /// Base generator label
    #[arg(long)]
    base: String,
    /// Basis word to transport
    word: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::SUCCESS;
                }
                _ => EXIT_FLAGS,
            };
            eprint!("{e}");
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<ExitCode, (u8, String)>;

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Mul(args) => cmd_mul(args),
        Command::Verify(args) => cmd_verify(args),
        Command::FusionClassify(args) => cmd_fusion_classify(args),
        Command::IsoMatrix(args) => cmd_iso_matrix(args),
    }
}

fn load_diagram(path: &PathBuf) -> Result<Arc<CoxeterDiagram>, (u8, String)> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let diagram = CoxeterDiagram::from_json_str(&src)
        .map_err(|e| (EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Ok(Arc::new(diagram))
}

fn gen_by_label(d: &CoxeterDiagram, label: &str) -> Result<Gen, (u8, String)> {
    d.gen_by_label(label)
        .ok_or_else(|| (EXIT_DOMAIN, format!("unknown generator label {label:?}")))
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult {
    let d = load_diagram(&args.diagram)?;
    let elements = match &args.r#box {
        Some(labels) => {
            let a = gen_by_label(&d, &labels[0])?;
            let b = gen_by_label(&d, &labels[1])?;
            enumerate_box(&d, a, b, args.max_len)
        }
        None => enumerate_cell(&d, args.max_len),
    };
    let mut out = String::new();
    for x in &elements {
        out.push_str(&x.word().render(&d));
        out.push('\n');
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_mul(args: MulArgs) -> CmdResult {
    let d = load_diagram(&args.diagram)?;
    let x = JElement::t_parse(&args.x, &d).map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
    let y = JElement::t_parse(&args.y, &d).map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
    let product = x.mul(&y).map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
    println!("{}", product.render());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let d = load_diagram(&args.diagram)?;
    let base = match &args.base {
        Some(label) => gen_by_label(&d, label)?,
        None => 0,
    };
    let report: Result<SuiteReport, SuiteError> = match args.suite {
        SuiteName::Assoc => suites::assoc_suite(&d, args.max_len, args.samples, args.seed),
        SuiteName::Basedring => suites::basedring_suite(&d, args.max_len, args.samples, args.seed),
        SuiteName::ThmA => suites::thm_a_suite(&d, args.max_len),
        SuiteName::ThmB => suites::thm_b_suite(&d, base, args.max_len),
        SuiteName::ThmC => suites::thm_c_suite(&d, base),
        SuiteName::ThmD => suites::thm_d_suite(&d, args.max_len, 12),
        SuiteName::ThmE => suites::thm_e_suite(&d, args.max_len.min(3)),
        SuiteName::Hecke => {
            if let Some(path) = &args.dump_csv {
                let ball =
                    Ball::build(&d, args.radius).map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
                let csv = ball
                    .h_csv(args.max_sum)
                    .map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
                std::fs::write(path, csv)
                    .map_err(|e| (EXIT_DOMAIN, format!("{}: {e}", path.display())))?;
            }
            suites::hecke_suite(&d, args.radius, args.max_sum)
        }
        SuiteName::Factor => suites::factorization_suite(&d, args.max_len),
    };
    match report {
        Ok(report) => {
            print!("{}", report.render_tap());
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_VERIFY_FAILED))
            }
        }
        Err(SuiteError::Mismatch(msg)) => Err((EXIT_MISMATCH, msg)),
        Err(SuiteError::Internal(msg)) => Err((EXIT_DOMAIN, msg)),
    }
}

fn cmd_fusion_classify(args: FusionClassifyArgs) -> CmdResult {
    let d = load_diagram(&args.diagram)?;
    let s = match &args.r#gen {
        Some(label) => gen_by_label(&d, label)?,
        None => 0,
    };
    match classify_fusion(&d, s).map_err(|e| (EXIT_DOMAIN, e.to_string()))? {
        Some(m) => println!("M={m}"),
        None => println!("infinite"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_iso_matrix(args: IsoMatrixArgs) -> CmdResult {
    let d = load_diagram(&args.diagram)?;
    let base = gen_by_label(&d, &args.base)?;
    let psi = PsiTransport::new(d.clone(), base).map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
    let word = Word::parse(&args.word, &d).map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
    let element = JElement::t(word, &d).map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
    let matrix = psi
        .psi(&element)
        .map_err(|e| (EXIT_DOMAIN, e.to_string()))?;
    println!("{}", matrix.render(&d));
    Ok(ExitCode::SUCCESS)
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use affine_line::fincat::Side;
use affine_line_cli::commands::{self, CliError, CliResult, Output, TensorRoute};
use affine_line_cli::{run_suite, Suite, SuiteConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "affine-line", version, about = "Modules over the affine line, finite categories and their property suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Modules over ℚ[t] and torsion pairs
    #[command(name = "mod", subcommand)]
    Module(ModCommand),
    /// Derived evaluation
    #[command(subcommand)]
    Derived(DerivedCommand),
    /// Finite categories
    #[command(subcommand)]
    Fincat(FincatCommand),
    /// Monoidal functors out of the affine line
    #[command(subcommand)]
    Univ(UnivCommand),
    /// Property suites
    #[command(subcommand)]
    Suite(SuiteCommand),
}

#[derive(Subcommand)]
enum ModCommand {
    /// Tensor product over the affine line
    Tensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, value_enum, default_value = "presentation")]
        route: TensorRoute,
    },
    /// Evaluation at a point or at a polynomial
    Evalpha {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        alpha: String,
        /// Variables of the ring alpha lives in, comma separated
        #[arg(long, value_delimiter = ',')]
        ring: Vec<String>,
    },
    /// Isomorphism test
    Iso {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Internal hom of torsion pairs
    Hom {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

#[derive(Subcommand)]
enum DerivedCommand {
    /// The two-term complex computing derived evaluation
    Ev0 {
        #[arg(long)]
        endo: PathBuf,
        #[arg(long, default_value = "0")]
        alpha: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Over,
    Under,
}

#[derive(Subcommand)]
enum FincatCommand {
    /// Comma category of a functor at an object
    Comma {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value = "over")]
        side: SideArg,
    },
    /// Exactness certificate for a square
    Exact {
        #[arg(long)]
        square: PathBuf,
    },
    /// Sieve or cosieve classification
    Sieve {
        #[arg(long)]
        functor: PathBuf,
    },
    /// Truncated categories built from the natural numbers
    Trunc {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum UnivCommand {
    /// The type of a monoidal functor
    Type {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Compare a functor with evaluation at its type
    Decompose {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Several variables, one at a time
    An {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Projection morphism for restriction of scalars
    Projection {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

#[derive(Subcommand)]
enum SuiteCommand {
    /// Run the property suites
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    max_dim: usize,
    #[arg(long, default_value_t = 5)]
    max_deg: u32,
    #[arg(long, default_value_t = 4)]
    max_objects: usize,
    #[arg(long, default_value_t = 8)]
    trunc_k: usize,
    /// Comma separated; all suites when omitted
    #[arg(long, value_enum, value_delimiter = ',')]
    suites: Vec<Suite>,
    /// Directory for report.json and report.txt
    #[arg(long, env = "AFFINE_LINE_OUT_DIR")]
    out: Option<PathBuf>,
}

fn suite_run(args: RunArgs) -> CliResult<bool> {
    let cfg = SuiteConfig {
        seed: args.seed,
        max_dim: args.max_dim,
        max_deg: args.max_deg,
        max_objects: args.max_objects,
        trunc_k: args.trunc_k,
        suites: if args.suites.is_empty() { Suite::ALL.to_vec() } else { args.suites },
    };
    let run = run_suite(&cfg)?;
    let text = run.report.to_text(&run.timings);
    match args.out {
        Some(dir) => {
            let io = |path: PathBuf| move |source| CliError::Io { path, source };
            fs::create_dir_all(&dir).map_err(io(dir.clone()))?;
            let json = dir.join("report.json");
            fs::write(&json, run.report.to_json()).map_err(io(json.clone()))?;
            let txt = dir.join("report.txt");
            fs::write(&txt, &text).map_err(io(txt.clone()))?;
            print!("{text}");
        }
        None => print!("{}", run.report.to_json()),
    }
    Ok(run.report.passed)
}

fn dispatch(command: Command) -> CliResult<Output> {
    use commands::*;
    match command {
        Command::Module(c) => match c {
            ModCommand::Tensor { left, right, route } => mod_tensor(&left, &right, route),
            ModCommand::Evalpha { module, alpha, ring } => mod_evalpha(&module, &alpha, &ring),
            ModCommand::Iso { left, right } => mod_iso(&left, &right),
            ModCommand::Hom { left, right } => mod_hom(&left, &right),
        },
        Command::Derived(DerivedCommand::Ev0 { endo, alpha }) => derived_ev0(&endo, &alpha),
        Command::Fincat(c) => match c {
            FincatCommand::Comma { functor, object, side } => {
                let side = match side {
                    SideArg::Over => Side::Over,
                    SideArg::Under => Side::Under,
                };
                fincat_comma(&functor, &object, side)
            }
            FincatCommand::Exact { square } => fincat_exact(&square),
            FincatCommand::Sieve { functor } => fincat_sieve(&functor),
            FincatCommand::Trunc { k } => fincat_trunc(k),
        },
        Command::Univ(c) => match c {
            UnivCommand::Type { spec } => univ_type(&spec),
            UnivCommand::Decompose { spec, module } => univ_decompose(&spec, &module),
            UnivCommand::An { spec, module } => univ_an(&spec, &module),
            UnivCommand::Projection { spec, left, right } => univ_projection(&spec, &left, &right),
        },
        Command::Suite(_) => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Suite(SuiteCommand::Run(args)) => suite_run(args),
        other => dispatch(other).map(|out| {
            println!("{}", serde_json::to_string_pretty(&out.value).expect("serializes"));
            out.ok
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

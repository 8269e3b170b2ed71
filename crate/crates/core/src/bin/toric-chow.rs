use clap::{Parser, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use toric_chow::rational::parse_rat;
use toric_chow::report::{self, read_file, write_file, FunctionFile, Options, PolytopeFile, Report};
use toric_chow::Result;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Analyze,
    Ehrhart,
    Triangulate,
    Weights,
    Lambda,
    ChowTest,
}

/// Exact Ehrhart data, cone triangulations and Chow stability certificates
/// for lattice polytopes.
///
/// Exit codes: 0 certified (or command succeeded), 1 not certified, 2 error.
#[derive(Parser, Debug)]
#[command(name = "toric-chow", version)]
struct Cli {
    command: Command,
    /// Polytope JSON file.
    polytope: PathBuf,
    #[arg(long, default_value_t = 4)]
    k_max: i64,
    /// Stability constant as "p/q"; overrides the file's value.
    #[arg(long)]
    lambda: Option<String>,
    /// Cone triangulation hint file.
    #[arg(long)]
    hints: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write an SVG (dimension 2) or OBJ (dimension 3) picture of the apex regions.
    #[arg(long)]
    diagram: Option<PathBuf>,
    /// Test function file for chow-test.
    #[arg(long)]
    function: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<i32> {
    if let Ok(dir) = std::env::var("TORIC_CHOW_WORKDIR") {
        std::env::set_current_dir(&dir).map_err(|e| toric_chow::Error::Io(format!("{dir}: {e}")))?;
    }
    let file = PolytopeFile::parse(&read_file(&cli.polytope)?)?;
    let p = file.build()?;
    let lambda = match &cli.lambda {
        Some(s) => Some(parse_rat(s)?),
        None => file.lambda()?,
    };
    let hints = match &cli.hints {
        Some(h) => report::parse_hints(&read_file(h)?)?,
        None => vec![],
    };
    let function = match &cli.function {
        Some(f) => Some(FunctionFile::parse(&read_file(f)?)?),
        None => None,
    };
    let opts = Options { k_max: cli.k_max, lambda, hints, seed: cli.seed, function };
    opts.validate()?;
    let rep: Report = match cli.command {
        Command::Analyze => report::cmd_analyze(&p, &opts)?,
        Command::Ehrhart => report::cmd_ehrhart(&p)?,
        Command::Weights => report::cmd_weights(&p, &opts)?,
        Command::Lambda => report::cmd_lambda(&p, &opts)?,
        Command::ChowTest => report::cmd_chow_test(&p, &opts)?,
        Command::Triangulate => {
            let (rep, cones) = report::cmd_triangulate(&p, &opts)?;
            if let Some(path) = &cli.diagram {
                match report::diagram(&p, &cones) {
                    Some((_, text)) => write_file(path, &text)?,
                    None => eprintln!("no diagram in dimension {}", p.dim),
                }
            }
            rep
        }
    };
    print!("{}", rep.text);
    if let Some(path) = &cli.json {
        write_file(path, &rep.json_string())?;
    }
    Ok(rep.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

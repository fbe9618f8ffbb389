use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dicke_cli::config::{ModelChoice, SweepConfig};
use dicke_cli::transitions::{locate_transitions, ScanRange};
use dicke_cli::{selftest, sweep, thread_pool, CliError};
use dicke_core::model::{solve, ModelKind};
use dicke_core::observables::{energy_gap, GroundStateView};
use dicke_core::rwa::excitation_staircase;

#[derive(Parser)]
#[command(name = "dicke", version, about = "Finite-size Dicke model ground states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep λ and write one CSV per (N, ε) plus summary.json.
    Sweep(Common),
    /// Print the ground-sector excitation number L along the λ grid.
    Staircase(Common),
    /// Locate ground-state level crossings by bisection.
    Transitions(Common),
    /// Print the energy gap at one coupling.
    Gap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: f64,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

#[derive(Args)]
struct Common {
    /// JSON configuration; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelChoice>,
    /// Atom numbers, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    omega0: Option<f64>,
    /// A² strengths, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    eps: Option<Vec<f64>>,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    delta_lambda: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    /// Bisection tolerance for transitions.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    f_threshold: Option<f64>,
    #[arg(long)]
    ntr_cap: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn resolve(self) -> Result<SweepConfig, CliError> {
        let mut c = match &self.config {
            Some(path) => SweepConfig::load(path)?,
            None => SweepConfig::default(),
        };
        if let Some(v) = self.model {
            c.model = v;
        }
        macro_rules! set {
            ($($flag:ident => $field:expr),* $(,)?) => {
                $(if let Some(v) = self.$flag { $field = v; })*
            };
        }
        set! {
            n => c.n_atoms,
            omega => c.omega,
            omega0 => c.omega0,
            eps => c.epsilon_list,
            from => c.lambda_start,
            to => c.lambda_stop,
            step => c.lambda_step,
            h => c.tolerances.h,
            tol => c.tolerances.transition_tol,
            f_threshold => c.tolerances.f_threshold,
            ntr_cap => c.ntr_cap,
            out => c.output_path,
        }
        if self.delta_lambda.is_some() {
            c.tolerances.delta_lambda = self.delta_lambda;
        }
        if self.jobs.is_some() {
            c.jobs = self.jobs;
        }
        c.validate()?;
        Ok(c)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(common) => {
            let config = common.resolve()?;
            let summary = sweep::run(&config)?;
            for s in &summary.sweeps {
                println!("{}\tpoints={}\ttransitions={:?}", s.csv, s.points, s.transitions);
            }
        }
        Command::Staircase(common) => {
            let config = common.resolve()?;
            if config.model != ModelChoice::Rwa {
                return Err(CliError::Config("staircase requires --model rwa".into()));
            }
            let grid = config.lambda_grid();
            let opts = config.solve_options();
            println!("N,lambda,L");
            for &n in &config.n_atoms {
                let steps = excitation_staircase(&config.template(n, 0.0), &grid, &opts.scan)?;
                for (lam, l) in steps {
                    println!("{n},{lam:.16e},{l}");
                }
            }
        }
        Command::Transitions(common) => {
            let config = common.resolve()?;
            let pool = thread_pool(config.jobs)?;
            let model: ModelKind = config.model.into();
            let opts = config.solve_options();
            println!("N,epsilon,lambda");
            for &n in &config.n_atoms {
                for &eps in &config.epsilon_list {
                    let found = locate_transitions(
                        model,
                        &config.template(n, eps),
                        ScanRange {
                            lo: config.lambda_start,
                            hi: config.lambda_stop,
                            step: config.lambda_step,
                            tol: config.tolerances.transition_tol,
                        },
                        &opts,
                        &pool,
                    )?;
                    for lam in found {
                        println!("{n},{eps},{lam:.16e}");
                    }
                }
            }
        }
        Command::Gap { common, lambda } => {
            let config = common.resolve()?;
            let model: ModelKind = config.model.into();
            let opts = config.solve_options();
            println!("N,epsilon,lambda,energy,gap");
            for &n in &config.n_atoms {
                for &eps in &config.epsilon_list {
                    let state = solve(model, &config.template(n, eps).with_lambda(lambda), &opts)?;
                    println!("{n},{eps},{lambda:.16e},{:.16e},{:.16e}", state.energy(), energy_gap(&state));
                }
            }
        }
        Command::Selftest => {
            let checks = selftest::run_all();
            let mut failed = 0;
            for c in &checks {
                match &c.outcome {
                    Ok(()) => println!("PASS {}", c.name),
                    Err(msg) => {
                        failed += 1;
                        println!("FAIL {}: {msg}", c.name);
                    }
                }
            }
            if failed > 0 {
                return Err(CliError::Solver(dicke_core::Error::InvalidInput("selftest failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("DICKE_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

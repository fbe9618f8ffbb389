//! Parallel coupling sweeps.

use std::path::PathBuf;
use std::time::Instant;

use dicke_core::model::{solve, GroundState, ModelKind, SolveOptions};
use dicke_core::observables::{
    berry_phase_derivative, berry_phase_jz, berry_phase_photon, berry_phase_photon_b_frame,
    detect_transitions_from_sweep, energy_gap, fidelity, GroundStateView, SweepRecord,
};
use dicke_core::ModelParams;
use log::{info, warn};
use rayon::prelude::*;

use crate::config::{OutputKind, SweepConfig};
use crate::output::{csv_file_name, write_csv, RunSummary, SweepSummary};
use crate::{thread_pool, CliError};

#[derive(Debug, Clone, Copy)]
pub struct SweepSettings {
    pub model: ModelKind,
    pub opts: SolveOptions,
    /// Separation for `F(λ, λ + δλ)`.
    pub delta_lambda: f64,
    /// Central-difference step for ∂γ1/∂λ.
    pub h: f64,
    pub fidelity: bool,
    pub derivative: bool,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    /// Records in λ order, up to the first failing grid point.
    pub records: Vec<SweepRecord>,
    /// Coupling and error of the first failing grid point.
    pub failure: Option<(f64, dicke_core::Error)>,
}

impl SweepOutcome {
    pub fn max_ntr(&self) -> Option<usize> {
        self.records.iter().filter_map(|r| r.ntr).max()
    }
}

fn record_from(state: &GroundState, lambda: f64, epsilon: f64) -> SweepRecord {
    SweepRecord {
        lambda,
        epsilon,
        n_atoms: state.n_atoms(),
        energy: state.energy(),
        gap: energy_gap(state),
        gamma1: berry_phase_jz(state),
        gamma2_per_atom: berry_phase_photon(state).per_atom_raw,
        gamma2_b_per_atom: match state {
            GroundState::Truncated(g) => Some(berry_phase_photon_b_frame(g).per_atom_raw),
            GroundState::Rwa(_) => None,
        },
        fidelity: None,
        dgamma1_dlambda: None,
        excitation: state.excitation(),
        ntr: state.ntr(),
    }
}

/// Evaluate every grid point of one (N, ε) sweep on `pool`.
///
/// Results do not depend on the number of workers: each point is solved
/// independently and the records are assembled in grid order.
pub fn run_sweep(
    template: &ModelParams,
    grid: &[f64],
    settings: &SweepSettings,
    pool: &rayon::ThreadPool,
) -> SweepOutcome {
    let solve_at = |lam: f64| solve(settings.model, &template.with_lambda(lam), &settings.opts);
    let gamma1_at = |lam: f64| solve_at(lam).map(|s| berry_phase_jz(&s).raw);
    let step = if grid.len() > 1 { grid[1] - grid[0] } else { f64::NAN };
    let reuse_next = (settings.delta_lambda - step).abs() <= 1e-9 * step;

    pool.install(|| {
        let states: Vec<dicke_core::Result<GroundState>> =
            grid.par_iter().map(|&lam| solve_at(lam)).collect();

        let extras: Vec<dicke_core::Result<(Option<f64>, Option<f64>)>> = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let lam = grid[i];
                let state = states[i].as_ref().map_err(Clone::clone)?;
                let fid = if settings.fidelity {
                    let f = match states.get(i + 1) {
                        Some(next) if reuse_next => fidelity(state, next.as_ref().map_err(Clone::clone)?)?,
                        _ => fidelity(state, &solve_at(lam + settings.delta_lambda)?)?,
                    };
                    Some(f)
                } else {
                    None
                };
                let deriv = if settings.derivative {
                    if lam >= settings.h {
                        Some(berry_phase_derivative(gamma1_at, lam, settings.h)?)
                    } else {
                        // One-sided near λ = 0, where negative couplings are not allowed.
                        let up = gamma1_at(lam + settings.h)?;
                        let here = berry_phase_jz(state).raw;
                        Some((up - here) / settings.h)
                    }
                } else {
                    None
                };
                Ok((fid, deriv))
            })
            .collect();

        let mut records = Vec::with_capacity(grid.len());
        for (i, (state, extra)) in states.iter().zip(extras).enumerate() {
            let err = match (state, extra) {
                (Ok(s), Ok((fid, deriv))) => {
                    let mut r = record_from(s, grid[i], template.epsilon);
                    r.fidelity = fid;
                    r.dgamma1_dlambda = deriv;
                    records.push(r);
                    continue;
                }
                (Err(e), _) => e.clone(),
                (_, Err(e)) => e,
            };
            return SweepOutcome {
                records,
                failure: Some((grid[i], err)),
            };
        }
        SweepOutcome {
            records,
            failure: None,
        }
    })
}

pub fn settings_for(config: &SweepConfig) -> SweepSettings {
    SweepSettings {
        model: config.model.into(),
        opts: config.solve_options(),
        delta_lambda: config.delta_lambda(),
        h: config.tolerances.h,
        fidelity: config.wants(OutputKind::Fidelity),
        derivative: config.wants(OutputKind::Derivative),
    }
}

/// Run every (N, ε) sweep in `config`, writing one CSV each plus `summary.json`.
///
/// A solver failure still writes the partial CSV, the summary, and then
/// returns the error.
pub fn run(config: &SweepConfig) -> Result<RunSummary, CliError> {
    config.validate()?;
    let started = Instant::now();
    let pool = thread_pool(config.jobs)?;
    let settings = settings_for(config);
    let grid = config.lambda_grid();
    std::fs::create_dir_all(&config.output_path)?;

    let mut sweeps = Vec::new();
    let mut first_error = None;
    for &n in &config.n_atoms {
        for &eps in &config.epsilon_list {
            let template = config.template(n, eps);
            info!("sweep model={} N={n} eps={eps} points={}", settings.model.name(), grid.len());
            let outcome = run_sweep(&template, &grid, &settings, &pool);
            let name = csv_file_name(settings.model, n, eps);
            let path: PathBuf = config.output_path.join(&name);
            write_csv(&path, &outcome.records, outcome.failure.is_none())?;
            let transitions = if settings.fidelity && !outcome.records.is_empty() {
                detect_transitions_from_sweep(
                    &outcome.records,
                    settings.delta_lambda,
                    config.tolerances.f_threshold,
                )?
            } else {
                Vec::new()
            };
            if let Some((lam, e)) = &outcome.failure {
                warn!("sweep N={n} eps={eps} stopped at lambda={lam}: {e}");
            }
            sweeps.push(SweepSummary {
                n_atoms: n,
                epsilon: eps,
                csv: name,
                points: outcome.records.len(),
                complete: outcome.failure.is_none(),
                transitions,
                max_ntr: outcome.max_ntr(),
                error: outcome.failure.as_ref().map(|(lam, e)| format!("lambda={lam}: {e}")),
            });
            if first_error.is_none() {
                first_error = outcome.failure.map(|(_, e)| e);
            }
        }
    }
    let summary = RunSummary {
        model: settings.model.name().to_string(),
        omega: config.omega,
        omega0: config.omega0,
        sweeps,
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    std::fs::write(
        config.output_path.join("summary.json"),
        serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n",
    )?;
    match first_error {
        Some(e) => Err(CliError::Solver(e)),
        None => Ok(summary),
    }
}

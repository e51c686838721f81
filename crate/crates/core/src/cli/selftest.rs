//! Oracle agreement and invariant checks run by `thermal-discord selftest`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::discord::{conditional_entropy, quantum_discord_measuring, MeasurementBasis, OptimizerConfig};
use crate::entanglement::{concurrence_general, concurrence_x};
use crate::error::Result;
use crate::model::{thermal_state_closed_form, thermal_state_spectral, to_density_matrix, ModelParams};
use crate::qmat::{partial_trace, von_neumann_entropy, Subsystem};
use crate::analysis::evaluate_point;

pub const DEFAULT_SEED: u64 = 20_100_404;

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn random_params(rng: &mut StdRng) -> ModelParams {
    ModelParams::new(
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(0.0..3.0),
        rng.gen_range(0.05..5.0),
    )
    .expect("sampled parameters are valid")
}

fn outcome(name: &'static str, worst: f64, tol: f64, draws: usize) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: worst < tol,
        detail: format!("worst {worst:.3e} over {draws} draws (tol {tol:.0e})"),
    }
}

fn closed_form_vs_spectral(rng: &mut StdRng, draws: usize) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let p = random_params(rng);
        let closed = to_density_matrix(&thermal_state_closed_form(&p)?);
        worst = worst.max(closed.max_abs_diff(&thermal_state_spectral(&p)?));
    }
    Ok(outcome("closed form matches spectral thermal state", worst, 1e-10, draws))
}

fn concurrence_routes(rng: &mut StdRng, draws: usize) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let x = thermal_state_closed_form(&random_params(rng))?;
        let general = concurrence_general(&to_density_matrix(&x))?;
        worst = worst.max((general - concurrence_x(&x).concurrence).abs());
    }
    Ok(outcome("X-state concurrence matches general formula", worst, 1e-9, draws))
}

fn pauli_shortcut(rng: &mut StdRng, draws: usize, cfg: &OptimizerConfig) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let p = random_params(rng);
        let rho = to_density_matrix(&thermal_state_closed_form(&p)?);
        let s_a = von_neumann_entropy(&partial_trace(&rho, Subsystem::A)?)?;
        let mut pauli_best = f64::NEG_INFINITY;
        for axis in &MeasurementBasis::PAULI_AXES {
            pauli_best = pauli_best.max(s_a - conditional_entropy(&rho, axis)?);
        }
        let report = evaluate_point(&p, cfg)?;
        let classical = report.mutual_info - report.discord;
        worst = worst.max((classical - pauli_best.max(0.0).min(report.mutual_info)).abs());
    }
    Ok(outcome("optimizer agrees with Pauli-axis measurements", worst, 1e-7, draws))
}

fn symmetries(rng: &mut StdRng, draws: usize, cfg: &OptimizerConfig) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let p = random_params(rng);
        let swapped = ModelParams { jx: p.jy, jy: p.jx, ..p };
        let a = evaluate_point(&p, cfg)?;
        let b = evaluate_point(&swapped, cfg)?;
        let rho = to_density_matrix(&thermal_state_closed_form(&p)?);
        let on_a = quantum_discord_measuring(&rho, cfg, Subsystem::A)?;
        for (u, v) in [
            (a.discord, b.discord),
            (a.classical_corr, b.classical_corr),
            (a.concurrence, b.concurrence),
            (a.discord, on_a.discord),
        ] {
            worst = worst.max((u - v).abs());
        }
    }
    Ok(outcome("Jx<->Jy and qubit-swap symmetry", worst, 1e-7, draws))
}

fn invariants(rng: &mut StdRng, draws: usize, cfg: &OptimizerConfig) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for _ in 0..draws {
        let p = random_params(rng);
        let x = thermal_state_closed_form(&p)?;
        if let Err(e) = x.check_invariants() {
            failures.push(format!("{p:?}: {e}"));
            continue;
        }
        let r = evaluate_point(&p, cfg)?;
        let ok = r.discord >= 0.0
            && r.discord <= r.mutual_info + 1e-12
            && r.classical_corr >= 0.0
            && (0.0..=1.0).contains(&r.concurrence)
            && (0.0..=1.0).contains(&r.eof)
            && r.mutual_info <= 2.0;
        if !ok {
            failures.push(format!("{p:?}: {r:?}"));
        }
    }
    Ok(CheckOutcome {
        name: "state and report invariants",
        passed: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{draws} draws"),
            Some(f) => format!("{} violations, first {f}", failures.len()),
        },
    })
}

fn pure_state_limit(cfg: &OptimizerConfig) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for (j, b) in [(200.0, 0.0), (200.0, 20.0), (-200.0, 0.0)] {
        let r = evaluate_point(&ModelParams::xxx(j, b, 1.0)?, cfg)?;
        let expected = if j > 0.0 { 1.0 } else { 1.0 / 3.0 };
        worst = worst.max((r.discord - expected).abs());
    }
    Ok(outcome("low-temperature limits of the XXX chain", worst, 1e-6, 3))
}

/// Runs every check with the given seed and number of random draws.
pub fn run_checks(seed: u64, draws: usize) -> Result<Vec<CheckOutcome>> {
    let cfg = OptimizerConfig::default();
    let mut rng = StdRng::seed_from_u64(seed);
    let light = draws.max(1);
    let heavy = (draws / 5).max(1);
    Ok(vec![
        closed_form_vs_spectral(&mut rng, light)?,
        concurrence_routes(&mut rng, light)?,
        pauli_shortcut(&mut rng, heavy, &cfg)?,
        symmetries(&mut rng, heavy / 2 + 1, &cfg)?,
        invariants(&mut rng, heavy, &cfg)?,
        pure_state_limit(&cfg)?,
    ])
}

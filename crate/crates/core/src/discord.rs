//! Mutual information, measurement-induced classical correlation and quantum
//! discord of two-qubit states.
//!
//! Measurements are rank-one von Neumann measurements on qubit B, parametrized
//! by the Bloch angles of the first projector. The classical correlation is
//! maximized by a deterministic grid search followed by local grid refinement.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::entanglement::{concurrence_general, eof_from_concurrence};
use crate::error::{Error, Result};
use crate::qmat::{
    partial_trace, qubit_entropy, swap_qubits, von_neumann_entropy, ComplexMatrix, Subsystem, C64,
};

/// Outcomes less likely than this contribute nothing to the conditional entropy.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-14;
/// Negative discord down to this value is optimizer slack and clamps to zero.
pub const DISCORD_NEGATIVE_TOL: f64 = 1e-7;

/// Projective measurement `{|v><v|, |v⊥><v⊥|}` with
/// `|v> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    /// σz, σx and σy eigenbases.
    pub const PAULI_AXES: [MeasurementBasis; 3] = [
        MeasurementBasis { theta: 0.0, phi: 0.0 },
        MeasurementBasis {
            theta: FRAC_PI_2,
            phi: 0.0,
        },
        MeasurementBasis {
            theta: FRAC_PI_2,
            phi: FRAC_PI_2,
        },
    ];

    /// Maps arbitrary angles onto `θ ∈ [0, π]`, `φ ∈ [0, 2π)` describing the same projector pair.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        MeasurementBasis { theta, phi }
    }

    /// The two orthonormal kets `|v>` and `|v⊥>`.
    pub fn kets(&self) -> [[C64; 2]; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let phase = C64::from_polar(1.0, self.phi);
        [
            [C64::new(c, 0.0), phase * s],
            [-phase.conj() * s, C64::new(c, 0.0)],
        ]
    }

    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        self.kets().map(|k| ComplexMatrix::projector(&k).unwrap())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub coarse_theta: usize,
    pub coarse_phi: usize,
    pub refinement_rounds: usize,
    /// Points per side of the square refinement window (odd).
    pub window: usize,
    pub shrink: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            coarse_theta: 64,
            coarse_phi: 128,
            refinement_rounds: 6,
            window: 9,
            shrink: 4.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub mutual_info: f64,
    pub classical_corr: f64,
    pub discord: f64,
    pub optimal_basis: MeasurementBasis,
    pub concurrence: f64,
    pub eof: f64,
}

/// `I = S(ρA) + S(ρB) - S(ρ)` in bits.
pub fn mutual_information(rho: &ComplexMatrix) -> Result<f64> {
    let s_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?)?;
    let s_b = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?)?;
    let s_ab = von_neumann_entropy(rho)?;
    Ok((s_a + s_b - s_ab).clamp(0.0, 2.0))
}

/// Unnormalized conditional state of qubit A given outcome `|u>` on qubit B:
/// `<u|_B ρ |u>_B`, whose trace is the outcome probability.
fn conditional_block(rho: &ComplexMatrix, u: &[C64; 2]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for k in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..2 {
                for bp in 0..2 {
                    acc += u[b].conj() * rho[(2 * i + b, 2 * k + bp)] * u[bp];
                }
            }
            m[(i, k)] = acc;
        }
    }
    m
}

/// Probabilities and normalized qubit-A states for both outcomes of `m` on qubit B.
/// Outcomes below [`MIN_OUTCOME_PROBABILITY`] carry `None`.
pub fn measurement_outcomes(
    rho: &ComplexMatrix,
    m: &MeasurementBasis,
) -> Result<[(f64, Option<ComplexMatrix>); 2]> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok(m.kets().map(|u| {
        let block = conditional_block(rho, &u);
        let p = block.trace().re;
        if p < MIN_OUTCOME_PROBABILITY {
            (p.max(0.0), None)
        } else {
            (p, Some(block.scale(1.0 / p)))
        }
    }))
}

/// `S(ρ|{Π_j}) = Σ_j p_j S(ρ_j)` for a measurement on qubit B.
pub fn conditional_entropy(rho: &ComplexMatrix, m: &MeasurementBasis) -> Result<f64> {
    let mut total = 0.0;
    for (p, state) in measurement_outcomes(rho, m)? {
        if let Some(state) = state {
            total += p * qubit_entropy(&state)?;
        }
    }
    Ok(total)
}

struct Objective<'a> {
    rho: &'a ComplexMatrix,
    s_a: f64,
}

impl Objective<'_> {
    fn eval(&self, basis: &MeasurementBasis) -> Result<f64> {
        Ok(self.s_a - conditional_entropy(self.rho, basis)?)
    }
}

/// `Q(ρ) = max_{Π} [S(ρA) - S(ρ|{Π})]` and the maximizing measurement on qubit B.
///
/// The Pauli axes seed the search, so the result is never below their best value.
pub fn classical_correlation(
    rho: &ComplexMatrix,
    cfg: &OptimizerConfig,
) -> Result<(f64, MeasurementBasis)> {
    let s_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?)?;
    let objective = Objective { rho, s_a };

    let mut best_basis = MeasurementBasis::PAULI_AXES[0];
    let mut best = objective.eval(&best_basis)?;
    let consider = |basis: MeasurementBasis, best: &mut f64, best_basis: &mut MeasurementBasis| -> Result<()> {
        let value = objective.eval(&basis)?;
        if value > *best {
            *best = value;
            *best_basis = basis;
        }
        Ok(())
    };
    for &axis in &MeasurementBasis::PAULI_AXES[1..] {
        consider(axis, &mut best, &mut best_basis)?;
    }

    let n_theta = cfg.coarse_theta.max(2);
    let n_phi = cfg.coarse_phi.max(1);
    let mut step_theta = PI / (n_theta - 1) as f64;
    let mut step_phi = TAU / n_phi as f64;
    for i in 0..n_theta {
        for k in 0..n_phi {
            let basis = MeasurementBasis {
                theta: i as f64 * step_theta,
                phi: k as f64 * step_phi,
            };
            consider(basis, &mut best, &mut best_basis)?;
        }
    }

    let half = (cfg.window.max(1) / 2) as i64;
    for _ in 0..cfg.refinement_rounds {
        step_theta /= cfg.shrink;
        step_phi /= cfg.shrink;
        let center = best_basis;
        for a in -half..=half {
            for b in -half..=half {
                if a == 0 && b == 0 {
                    continue;
                }
                let basis = MeasurementBasis::new(
                    center.theta + a as f64 * step_theta,
                    center.phi + b as f64 * step_phi,
                );
                consider(basis, &mut best, &mut best_basis)?;
            }
        }
    }
    Ok((best.max(0.0), best_basis))
}

fn assemble(
    mutual_info: f64,
    classical: f64,
    basis: MeasurementBasis,
    concurrence: f64,
) -> Result<CorrelationReport> {
    let raw = mutual_info - classical;
    if raw < -DISCORD_NEGATIVE_TOL {
        return Err(Error::NegativeDiscord(raw));
    }
    let classical_corr = classical.min(mutual_info);
    Ok(CorrelationReport {
        mutual_info,
        classical_corr,
        discord: mutual_info - classical_corr,
        optimal_basis: basis,
        concurrence,
        eof: eof_from_concurrence(concurrence)?,
    })
}

/// Full correlation report with measurements on qubit B.
pub fn quantum_discord(rho: &ComplexMatrix, cfg: &OptimizerConfig) -> Result<CorrelationReport> {
    let concurrence = concurrence_general(rho)?;
    discord_with_concurrence(rho, cfg, concurrence)
}

/// As [`quantum_discord`] but with a precomputed concurrence.
pub fn discord_with_concurrence(
    rho: &ComplexMatrix,
    cfg: &OptimizerConfig,
    concurrence: f64,
) -> Result<CorrelationReport> {
    let mutual_info = mutual_information(rho)?;
    let (classical, basis) = classical_correlation(rho, cfg)?;
    assemble(mutual_info, classical, basis, concurrence)
}

/// Correlation report with the measurement performed on `side`.
pub fn quantum_discord_measuring(
    rho: &ComplexMatrix,
    cfg: &OptimizerConfig,
    side: Subsystem,
) -> Result<CorrelationReport> {
    match side {
        Subsystem::B => quantum_discord(rho, cfg),
        Subsystem::A => quantum_discord(&swap_qubits(rho)?, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{thermal_state, ModelParams};
    use crate::qmat::{binary_entropy, tensor};
    use proptest::prelude::*;

    fn cfg() -> OptimizerConfig {
        OptimizerConfig::default()
    }

    fn singlet() -> ComplexMatrix {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let zero = C64::new(0.0, 0.0);
        ComplexMatrix::projector(&[zero, s, -s, zero]).unwrap()
    }

    fn classical_pair() -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap()
    }

    fn pure(t: f64) -> ComplexMatrix {
        let zero = C64::new(0.0, 0.0);
        ComplexMatrix::projector(&[C64::new(t.cos(), 0.0), zero, zero, C64::new(t.sin(), 0.0)])
            .unwrap()
    }

    /// Conditional entropy through the explicit projector sandwich and a full
    /// partial trace.
    fn conditional_entropy_by_projectors(rho: &ComplexMatrix, m: &MeasurementBasis) -> f64 {
        let id = ComplexMatrix::identity(2);
        m.projectors()
            .iter()
            .map(|proj| {
                let big = tensor(&id, proj).unwrap();
                let post = &(&big * rho) * &big;
                let p = post.trace().re;
                if p < MIN_OUTCOME_PROBABILITY {
                    0.0
                } else {
                    let reduced = partial_trace(&post.scale(1.0 / p), Subsystem::A).unwrap();
                    p * von_neumann_entropy(&reduced).unwrap()
                }
            })
            .sum()
    }

    #[test]
    fn basis_projectors_are_complete() {
        for (theta, phi) in [(0.0, 0.0), (0.3, 1.2), (PI, 5.0), (2.0, 6.1)] {
            let [p1, p2] = MeasurementBasis { theta, phi }.projectors();
            let id = ComplexMatrix::identity(2);
            assert!((&p1 + &p2).max_abs_diff(&id) < 1e-12);
            assert!((&p1 * &p1).max_abs_diff(&p1) < 1e-12);
            assert!((&p2 * &p2).max_abs_diff(&p2) < 1e-12);
            assert!((&p1 * &p2).max_abs() < 1e-12);
        }
    }

    #[test]
    fn basis_normalization_preserves_projectors() {
        let raw = MeasurementBasis { theta: -0.4, phi: 7.0 };
        let normalized = MeasurementBasis::new(raw.theta, raw.phi);
        assert!((0.0..=PI).contains(&normalized.theta));
        assert!((0.0..TAU).contains(&normalized.phi));
        let [a, _] = raw.projectors();
        let [b, _] = normalized.projectors();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn mutual_information_examples() {
        assert_eq!(mutual_information(&ComplexMatrix::identity(4).scale(0.25)).unwrap(), 0.0);
        assert!((mutual_information(&singlet()).unwrap() - 2.0).abs() < 1e-12);
        let ferro = thermal_state(&ModelParams::xxx(-200.0, 0.0, 1.0).unwrap()).unwrap();
        let expected = 2.0 - 3f64.log2();
        assert!((mutual_information(&ferro).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.41504).abs() < 1e-5);
    }

    #[test]
    fn conditional_entropy_examples() {
        let mixed = ComplexMatrix::identity(4).scale(0.25);
        let any = MeasurementBasis { theta: 1.1, phi: 0.3 };
        assert!((conditional_entropy(&mixed, &any).unwrap() - 1.0).abs() < 1e-14);
        assert!(conditional_entropy(&singlet(), &any).unwrap().abs() < 1e-7);

        let z = MeasurementBasis { theta: 0.0, phi: 0.0 };
        let x = MeasurementBasis { theta: FRAC_PI_2, phi: 0.0 };
        assert_eq!(conditional_entropy(&classical_pair(), &z).unwrap(), 0.0);
        assert!((conditional_entropy(&classical_pair(), &x).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_outcome_contributes_nothing() {
        // |00>: measuring z on B gives outcome 1 with probability 0.
        let rho = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let outcomes = measurement_outcomes(&rho, &MeasurementBasis::PAULI_AXES[0]).unwrap();
        assert_eq!(outcomes[0].0, 1.0);
        assert!(outcomes[1].1.is_none());
        assert_eq!(conditional_entropy(&rho, &MeasurementBasis::PAULI_AXES[0]).unwrap(), 0.0);
    }

    #[test]
    fn classical_correlation_examples() {
        let (q, _) = classical_correlation(&ComplexMatrix::identity(4).scale(0.25), &cfg()).unwrap();
        assert!(q.abs() < 1e-12);

        let (q, basis) = classical_correlation(&classical_pair(), &cfg()).unwrap();
        assert!((q - 1.0).abs() < 1e-12);
        assert!(basis.theta < 1e-6 || (PI - basis.theta) < 1e-6);
    }

    #[test]
    fn classical_correlation_of_xxz_point() {
        let at = |kt: f64| {
            let rho = thermal_state(&ModelParams::xxz(0.4, -0.5, 0.0, kt).unwrap()).unwrap();
            let q = classical_correlation(&rho, &cfg()).unwrap().0;
            (q, mutual_information(&rho).unwrap())
        };
        let (q, i) = at(0.5);
        assert!(q > 0.0 && q < i);
        let (q_hotter, _) = at(0.55);
        assert!(q_hotter < q);
    }

    #[test]
    fn discord_examples() {
        let t: f64 = 0.7;
        let report = quantum_discord(&pure(t), &cfg()).unwrap();
        let expected = binary_entropy(t.cos().powi(2));
        assert!((report.discord - expected).abs() < 1e-6);

        let ferro = thermal_state(&ModelParams::xxx(-200.0, 0.0, 1.0).unwrap()).unwrap();
        let report = quantum_discord(&ferro, &cfg()).unwrap();
        assert!((report.discord - 1.0 / 3.0).abs() < 1e-3);

        let report = quantum_discord(&ComplexMatrix::identity(4).scale(0.25), &cfg()).unwrap();
        assert_eq!(
            (report.mutual_info, report.classical_corr, report.discord, report.concurrence, report.eof),
            (0.0, 0.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn pure_state_discord_is_entanglement_entropy() {
        for k in 0..=7 {
            let t = 0.2 * k as f64;
            let report = quantum_discord(&pure(t), &cfg()).unwrap();
            let s_a = binary_entropy(t.cos().powi(2));
            assert!((report.discord - s_a).abs() < 1e-6, "t={t}");
            assert!((report.discord - report.eof).abs() < 1e-6, "t={t}");
        }
    }

    #[test]
    fn report_invariants_hold_on_thermal_states() {
        for (jx, jy, jz, b, kt) in [(1.0, 1.0, 0.0, 2.5, 0.4), (1.3, 0.7, 0.0, 1.1, 0.2), (-1.0, 0.5, 2.0, 0.3, 1.5)] {
            let rho = thermal_state(&ModelParams::new(jx, jy, jz, b, kt).unwrap()).unwrap();
            let r = quantum_discord(&rho, &cfg()).unwrap();
            assert_eq!(r.discord, r.mutual_info - r.classical_corr);
            assert!(r.classical_corr >= 0.0 && r.classical_corr <= r.mutual_info + 1e-7);
            assert!(r.discord >= -1e-7);
        }
    }

    #[test]
    fn negative_discord_beyond_tolerance_is_an_error() {
        let basis = MeasurementBasis::PAULI_AXES[0];
        assert!(matches!(assemble(0.5, 0.5 + 1e-6, basis, 0.0), Err(Error::NegativeDiscord(_))));
        let r = assemble(0.5, 0.5 + 1e-8, basis, 0.0).unwrap();
        assert_eq!(r.discord, 0.0);
    }

    #[test]
    fn phase_irrelevant_at_zero_field() {
        let rho = thermal_state(&ModelParams::new(1.3, 0.7, 0.4, 0.0, 0.6).unwrap()).unwrap();
        for (theta, phi) in [(0.3, 0.2), (1.2, 1.0), (2.5, 2.9)] {
            let a = conditional_entropy(&rho, &MeasurementBasis { theta, phi }).unwrap();
            let b = conditional_entropy(&rho, &MeasurementBasis { theta, phi: phi + PI }).unwrap();
            assert!((a - b).abs() < 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn contraction_matches_projector_sandwich(
            jx in -3.0f64..3.0, jy in -3.0f64..3.0, jz in -3.0f64..3.0,
            b in 0.0f64..3.0, kt in 0.05f64..5.0,
            theta in 0.0f64..PI, phi in 0.0f64..TAU,
        ) {
            let rho = thermal_state(&ModelParams::new(jx, jy, jz, b, kt).unwrap()).unwrap();
            let m = MeasurementBasis { theta, phi };
            let fast = conditional_entropy(&rho, &m).unwrap();
            let slow = conditional_entropy_by_projectors(&rho, &m);
            prop_assert!((fast - slow).abs() < 1e-10);
        }
    }
}

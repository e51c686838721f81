//! Two-qubit XYZ Heisenberg chain in a uniform longitudinal field and its
//! canonical (Gibbs) state.
//!
//! `H = B(S¹z + S²z) + Jx S¹x S²x + Jy S¹y S²y + Jz S¹z S²z`, `S = σ/2`, `ħ = k = 1`.
//!
//! The thermal state is always of X form. [`thermal_state_closed_form`] evaluates
//! its five independent entries analytically; [`thermal_state_spectral`]
//! exponentiates `H` through its eigendecomposition and serves as the
//! independent cross-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{hermitian_eigen, tensor, ComplexMatrix, C64};

/// Exponent magnitude above which the closed form switches to log-scaled evaluation.
pub const EXPONENT_LIMIT: f64 = 700.0 * std::f64::consts::LN_2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub b: f64,
    /// Temperature times Boltzmann's constant.
    pub kt: f64,
}

impl ModelParams {
    pub fn new(jx: f64, jy: f64, jz: f64, b: f64, kt: f64) -> Result<Self> {
        let p = ModelParams { jx, jy, jz, b, kt };
        p.validate()?;
        Ok(p)
    }

    /// Isotropic model, `Jx = Jy = Jz = j`.
    pub fn xxx(j: f64, b: f64, kt: f64) -> Result<Self> {
        Self::new(j, j, j, b, kt)
    }

    /// `Jx = Jy = j`.
    pub fn xxz(j: f64, jz: f64, b: f64, kt: f64) -> Result<Self> {
        Self::new(j, j, jz, b, kt)
    }

    /// `Jz = 0`.
    pub fn xy(jx: f64, jy: f64, b: f64, kt: f64) -> Result<Self> {
        Self::new(jx, jy, 0.0, b, kt)
    }

    /// `Jx = j`, `Jy = Jz = 0`.
    pub fn ising(j: f64, b: f64, kt: f64) -> Result<Self> {
        Self::new(j, 0.0, 0.0, b, kt)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("jx", self.jx),
            ("jy", self.jy),
            ("jz", self.jz),
            ("b", self.b),
            ("kT", self.kt),
        ];
        if let Some((name, value)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} = {value} is not finite")));
        }
        if self.kt <= 0.0 {
            return Err(Error::InvalidParams(format!("kT = {} must be > 0", self.kt)));
        }
        Ok(())
    }

    pub fn derived(&self) -> DerivedCouplings {
        let delta = self.jx - self.jy;
        let sigma = self.jx + self.jy;
        let eta = delta.hypot(4.0 * self.b);
        let four_kt = 4.0 * self.kt;
        DerivedCouplings {
            delta,
            sigma,
            eta,
            alpha: self.jz / four_kt,
            beta: eta / four_kt,
            gamma: sigma / four_kt,
        }
    }
}

/// Combinations of the couplings that appear in the closed-form thermal state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedCouplings {
    /// `Jx - Jy`
    pub delta: f64,
    /// `Jx + Jy`
    pub sigma: f64,
    /// `sqrt(delta² + 16 B²)`
    pub eta: f64,
    /// `Jz / 4kT`
    pub alpha: f64,
    /// `eta / 4kT`
    pub beta: f64,
    /// `sigma / 4kT`
    pub gamma: f64,
}

/// Unnormalized entries of the X-form thermal state and its partition function.
///
/// The physical values are these times `exp(log_scale)`; `log_scale` is zero
/// unless an exponent argument exceeded [`EXPONENT_LIMIT`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XStateElements {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub b11: f64,
    pub b12: f64,
    pub z: f64,
    pub log_scale: f64,
}

impl XStateElements {
    /// Checks trace consistency and positivity of both 2×2 blocks.
    pub fn check_invariants(&self) -> Result<()> {
        let z = self.z;
        let trace = self.a11 + self.a22 + 2.0 * self.b11;
        if (trace - z).abs() > 1e-12 * z {
            return Err(Error::InvalidParams(format!("trace {trace} != Z {z}")));
        }
        let tol = -1e-12 * z * z;
        if self.a11 < 0.0 || self.a22 < 0.0 || self.b11 <= 0.0 {
            return Err(Error::NegativeEigenvalue {
                value: self.a11.min(self.a22).min(self.b11) / z,
            });
        }
        let outer = self.a11 * self.a22 - self.a12 * self.a12;
        let inner = self.b11 * self.b11 - self.b12 * self.b12;
        if outer < tol || inner < tol {
            return Err(Error::NegativeEigenvalue {
                value: outer.min(inner) / (z * z),
            });
        }
        Ok(())
    }
}

fn spin(pauli: ComplexMatrix) -> ComplexMatrix {
    pauli.scale(0.5)
}

pub fn build_hamiltonian(p: &ModelParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let id = ComplexMatrix::identity(2);
    let sx = spin(ComplexMatrix::pauli_x());
    let sy = spin(ComplexMatrix::pauli_y());
    let sz = spin(ComplexMatrix::pauli_z());

    let field = &tensor(&sz, &id)? + &tensor(&id, &sz)?;
    let terms = [
        field.scale(p.b),
        tensor(&sx, &sx)?.scale(p.jx),
        tensor(&sy, &sy)?.scale(p.jy),
        tensor(&sz, &sz)?.scale(p.jz),
    ];
    Ok(terms
        .iter()
        .fold(ComplexMatrix::zeros(4), |acc, t| &acc + t))
}

/// Closed-form Gibbs state entries.
pub fn thermal_state_closed_form(p: &ModelParams) -> Result<XStateElements> {
    p.validate()?;
    let DerivedCouplings {
        delta,
        eta,
        alpha,
        beta,
        gamma,
        ..
    } = p.derived();

    let log_scale = if [alpha, beta, gamma].iter().any(|x| x.abs() > EXPONENT_LIMIT) {
        (beta - alpha).max(alpha + gamma.abs())
    } else {
        0.0
    };
    let scaled_exp = |x: f64| (x - log_scale).exp();

    // e^{-α}e^{±β} and e^{α}e^{±γ}
    let outer_plus = scaled_exp(-alpha + beta);
    let outer_minus = scaled_exp(-alpha - beta);
    let inner_plus = scaled_exp(alpha + gamma);
    let inner_minus = scaled_exp(alpha - gamma);

    let cosh_beta = 0.5 * (outer_plus + outer_minus);
    let sinh_beta = 0.5 * (outer_plus - outer_minus);
    let cosh_gamma = 0.5 * (inner_plus + inner_minus);
    let sinh_gamma = 0.5 * (inner_plus - inner_minus);

    // sinh(β)/η → 1/(4kT) as η → 0, and Δ = B = 0 there, so both ratios vanish.
    let (field_ratio, aniso_ratio) = if eta > 0.0 {
        (4.0 * p.b / eta, delta / eta)
    } else {
        (0.0, 0.0)
    };
    // 1 ∓ 4B/η, the cancelling one rewritten as Δ²/(η(η + 4|B|)).
    let (one_minus, one_plus) = if p.b == 0.0 || eta == 0.0 {
        (1.0, 1.0)
    } else {
        let small = delta * delta / (eta * (eta + 4.0 * p.b.abs()));
        if p.b > 0.0 {
            (small, 1.0 + field_ratio)
        } else {
            (1.0 - field_ratio, small)
        }
    };

    // cosh β ∓ (4B/η) sinh β = ½[(1 ∓ 4B/η)e^{β} + (1 ± 4B/η)e^{-β}]
    let a11 = 0.5 * (one_minus * outer_plus + one_plus * outer_minus);
    let a22 = 0.5 * (one_plus * outer_plus + one_minus * outer_minus);
    let a12 = -aniso_ratio * sinh_beta;
    let b11 = cosh_gamma;
    let b12 = -sinh_gamma;
    let z = 2.0 * (cosh_beta + cosh_gamma);

    Ok(XStateElements {
        a11,
        a12,
        a22,
        b11,
        b12,
        z,
        log_scale,
    })
}

/// Normalized 4×4 X-form density matrix.
pub fn to_density_matrix(x: &XStateElements) -> ComplexMatrix {
    let z = x.z;
    let mut rho = ComplexMatrix::zeros(4);
    let re = |v: f64| C64::new(v / z, 0.0);
    rho[(0, 0)] = re(x.a11);
    rho[(1, 1)] = re(x.b11);
    rho[(2, 2)] = re(x.b11);
    rho[(3, 3)] = re(x.a22);
    rho[(0, 3)] = re(x.a12);
    rho[(3, 0)] = re(x.a12);
    rho[(1, 2)] = re(x.b12);
    rho[(2, 1)] = re(x.b12);
    rho
}

/// Normalized thermal state from the closed form.
pub fn thermal_state(p: &ModelParams) -> Result<ComplexMatrix> {
    Ok(to_density_matrix(&thermal_state_closed_form(p)?))
}

/// `exp(-H/kT)/Z` through the eigendecomposition of `H`.
pub fn thermal_state_spectral(p: &ModelParams) -> Result<ComplexMatrix> {
    let h = build_hamiltonian(p)?;
    let eig = hermitian_eigen(&h)?;
    let exponents: Vec<f64> = eig.eigenvalues.iter().map(|e| -e / p.kt).collect();
    let top = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = exponents.iter().map(|x| (x - top).exp()).collect();
    let z: f64 = weights.iter().sum();
    let normalized = crate::qmat::HermitianEigenSystem {
        eigenvalues: weights.iter().map(|w| w / z).collect(),
        eigenvectors: eig.eigenvectors,
    };
    Ok(normalized.reconstruct())
}

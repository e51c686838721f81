//! Concurrence and entanglement of formation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::XStateElements;
use crate::qmat::{
    binary_entropy, hermitian_eigen, singular_values, tensor, ComplexMatrix, POSITIVITY_TOL,
};

const CONCURRENCE_DOMAIN_TOL: f64 = 1e-12;

/// Which candidate set the X-form concurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConcurrenceBranch {
    None,
    Lambda1,
    Lambda2,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConcurrenceBreakdown {
    /// `|B12| - sqrt(A11 A22)` (unnormalized)
    pub lambda1: f64,
    /// `|A12| - B11` (unnormalized)
    pub lambda2: f64,
    pub concurrence: f64,
    pub branch: ConcurrenceBranch,
}

/// Concurrence of an X-form thermal state, `C = 2 max{0, Λ1, Λ2} / Z`.
pub fn concurrence_x(x: &XStateElements) -> ConcurrenceBreakdown {
    let lambda1 = x.b12.abs() - (x.a11 * x.a22).sqrt();
    let lambda2 = x.a12.abs() - x.b11;
    let (best, branch) = if lambda1 <= 0.0 && lambda2 <= 0.0 {
        (0.0, ConcurrenceBranch::None)
    } else if lambda1 >= lambda2 {
        (lambda1, ConcurrenceBranch::Lambda1)
    } else {
        (lambda2, ConcurrenceBranch::Lambda2)
    };
    ConcurrenceBreakdown {
        lambda1,
        lambda2,
        concurrence: (2.0 * best / x.z).min(1.0),
        branch,
    }
}

/// Wootters concurrence of an arbitrary two-qubit state.
///
/// With `rho = X X^†` (`X = V sqrt(Λ)`), the numbers `λ_i` are the singular
/// values of the symmetric matrix `τ = X^T (σy⊗σy) X`, i.e. the square roots of
/// the eigenvalues of `rho · rho~`.
pub fn concurrence_general(rho: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let eig = hermitian_eigen(rho)?;
    if let Some(&min) = eig.eigenvalues.first() {
        if min < -POSITIVITY_TOL {
            return Err(Error::NegativeEigenvalue { value: min });
        }
    }
    let mut x = eig.eigenvectors.clone();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let root = lambda.max(0.0).sqrt();
        for i in 0..4 {
            x[(i, k)] *= root;
        }
    }
    let yy = tensor(&ComplexMatrix::pauli_y(), &ComplexMatrix::pauli_y())?;
    let tau = &(&x.transpose() * &yy) * &x;
    let s = singular_values(&tau)?;
    Ok((s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0))
}

/// Entanglement of formation in bits, `h((1 + sqrt(1 - C²))/2)`.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !(-CONCURRENCE_DOMAIN_TOL..=1.0 + CONCURRENCE_DOMAIN_TOL).contains(&c) {
        return Err(Error::ConcurrenceDomain(c));
    }
    let c = c.clamp(0.0, 1.0);
    let f = 0.5 * (1.0 + (1.0 - c * c).sqrt());
    // `+ 0.0` turns a negative zero into a positive one.
    Ok(binary_entropy(f).clamp(0.0, 1.0) + 0.0)
}

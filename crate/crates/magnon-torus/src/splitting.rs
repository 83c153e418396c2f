//! Splitting (beam-splitter) coupling: SU(2) diagonalization and
//! discrete-variable entanglement.
//!
//! The number-conserving Hamiltonian
//!
//!   H = ω_a ã†ã + ω_b b̃†b̃ + χ̃ (ã†b̃ + ãb̃†)
//!
//! is diagonalized by the orthogonal mode rotation ã = u α + v β,
//! b̃ = −v α + u β with u = cos θ, v = sin θ and
//!
//!   tan θ = (1 − √(1 + Γ²)) / Γ,   Γ = χ̃/Δ,
//!
//! equivalently θ = −½ arctan Γ, with θ = −π/4 on the Δ = 0 branch. The
//! eigenstate |m; α⟩|n; β⟩ expands over exactly m + n + 1 product number
//! states of (ã, b̃), every term conserving a_count + b_count = m + n, and
//! the expansion coefficients depend on θ alone.

use crate::error::{Error, Result};
use crate::state::{entropy_nats, EigenstateExpansion, ExpansionTerm};

/// Cap on m + n for eigenstate expansions; factorial growth beyond this is
/// not worth supporting at f64 precision.
pub const TOTAL_OCCUPATION_CAP: u32 = 12;

/// Above this total occupation the binomial weights are assembled in
/// log-space.
const LOG_SPACE_THRESHOLD: u32 = 10;

/// SU(2) solution at one k-point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplittingSolution {
    /// Rotation angle, |θ| ≤ π/4.
    pub theta: f64,
    pub omega_alpha: f64,
    pub omega_beta: f64,
    /// Γ = χ̃/Δ; meaningless on the Δ = 0 branch (see `delta_zero_branch`).
    pub gamma_ratio: f64,
    pub delta_zero_branch: bool,
}

impl SplittingSolution {
    pub fn solve(omega: f64, delta: f64, chi_tilde: f64) -> Self {
        let theta = splitting_angle(chi_tilde, delta);
        let (omega_alpha, omega_beta) = splitting_dispersions(theta, omega, delta, chi_tilde);
        let delta_zero_branch = delta == 0.0;
        let gamma_ratio = if delta_zero_branch {
            if chi_tilde == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            chi_tilde / delta
        };
        SplittingSolution {
            theta,
            omega_alpha,
            omega_beta,
            gamma_ratio,
            delta_zero_branch,
        }
    }
}

/// Mixing angle θ. χ̃ = 0 gives θ = 0; Δ = 0 (with χ̃ > 0) takes the −π/4
/// branch, the Δ → 0⁺ limit of −½ arctan Γ.
pub fn splitting_angle(chi_tilde: f64, delta: f64) -> f64 {
    debug_assert!(chi_tilde >= 0.0, "χ̃ is a modulus");
    if chi_tilde == 0.0 {
        return 0.0;
    }
    if delta == 0.0 {
        return -std::f64::consts::FRAC_PI_4;
    }
    let gamma = chi_tilde / delta;
    // (1 − √(1+Γ²))/Γ rationalized to −Γ/(1 + √(1+Γ²)), which has no
    // cancellation for small Γ.
    (-gamma / (1.0 + f64::hypot(1.0, gamma))).atan()
}

/// Hybridized dispersions (ω_α, ω_β) = ω ± (Δ cos 2θ − χ̃ sin 2θ).
pub fn splitting_dispersions(theta: f64, omega: f64, delta: f64, chi_tilde: f64) -> (f64, f64) {
    let split = delta * (2.0 * theta).cos() - chi_tilde * (2.0 * theta).sin();
    (omega + split, omega - split)
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|i| i as f64).product()
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n as u64).map(|i| (i as f64).ln()).sum()
}

/// |base|^exp in log space with the exp = 0 case kept finite.
fn pow_ln(base_abs: f64, exp: u32) -> f64 {
    if exp == 0 {
        0.0
    } else {
        exp as f64 * base_abs.ln()
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Amplitude of the product state with a_count = m − p, b_count = n + p
/// (p may be negative), as the inner sum over the rotation expansion.
fn amplitude(m: u32, n: u32, p: i64, u: f64, v: f64, log_space: bool) -> f64 {
    let a_count = (m as i64 - p) as u32;
    let b_count = (n as i64 + p) as u32;
    let total = m + n;

    // Summation index l; x and y are the b̃†-powers drawn from the α† and β†
    // binomial expansions respectively, with x − y = p fixed.
    let (l_max, x0, y0) = if p >= 0 {
        (std::cmp::min(m as i64 - p, n as i64), p, 0)
    } else {
        (std::cmp::min(m as i64, n as i64 + p), 0, -p)
    };

    let mut inner = 0.0;
    for l in 0..=l_max {
        let x = (x0 + l) as u32;
        let y = (y0 + l) as u32;
        let rest = total - x - y;
        let mut sign = if x % 2 == 1 { -1.0 } else { 1.0 };
        if v < 0.0 && (x + y) % 2 == 1 {
            sign = -sign;
        }
        if u < 0.0 && rest % 2 == 1 {
            sign = -sign;
        }
        let term = if log_space {
            let ln_mag = ln_binomial(m, x)
                + ln_binomial(n, y)
                + pow_ln(v.abs(), x + y)
                + pow_ln(u.abs(), rest);
            sign * ln_mag.exp()
        } else {
            sign * binomial(m, x)
                * binomial(n, y)
                * v.abs().powi((x + y) as i32)
                * u.abs().powi(rest as i32)
        };
        inner += term;
    }

    let scale = if log_space {
        (0.5 * (ln_factorial(a_count) + ln_factorial(b_count) - ln_factorial(m) - ln_factorial(n)))
            .exp()
    } else {
        (factorial(a_count) * factorial(b_count) / (factorial(m) * factorial(n))).sqrt()
    };
    scale * inner
}

/// Expand |m; α⟩|n; β⟩ over the localized product number states.
///
/// Returns the m + n + 1 amplitudes, exactly normalized (the sum is finite).
pub fn splitting_eigenstate(m: u32, n: u32, theta: f64) -> Result<EigenstateExpansion> {
    if m + n > TOTAL_OCCUPATION_CAP {
        return Err(Error::CapExceeded(format!(
            "splitting expansion needs m + n ≤ {TOTAL_OCCUPATION_CAP}, got {} + {}",
            m, n
        )));
    }
    let u = theta.cos();
    let v = theta.sin();
    let log_space = m + n > LOG_SPACE_THRESHOLD;

    let mut terms = Vec::with_capacity((m + n + 1) as usize);
    for p in -(n as i64)..=(m as i64) {
        terms.push(ExpansionTerm {
            a_count: (m as i64 - p) as u32,
            b_count: (n as i64 + p) as u32,
            amplitude: amplitude(m, n, p, u, v, log_space),
        });
    }

    let norm_sq: f64 = terms.iter().map(|t| t.amplitude * t.amplitude).sum();
    assert!(
        (norm_sq - 1.0).abs() < 1e-10,
        "splitting expansion norm² = {norm_sq} for (m, n) = ({m}, {n})"
    );
    Ok(EigenstateExpansion::assemble(m, n, terms, 0.0))
}

/// Entanglement entropy −Σ w ln w (nats) of a splitting expansion.
pub fn splitting_entropy(state: &EigenstateExpansion) -> f64 {
    entropy_nats(state.terms.iter().map(|t| t.amplitude * t.amplitude))
}

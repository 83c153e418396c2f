//! Squeezing (pair-creation) coupling: SU(1,1) Bogoliubov diagonalization
//! and continuous-variable entanglement.
//!
//! The number-difference-conserving Hamiltonian
//!
//!   H = ω_a ã†ã + ω_b b̃†b̃ + Λ̃ (ãb̃_− + ã†b̃†_−)
//!
//! is diagonalized by a hyperbolic mode mixing with parameter r,
//!
//!   tanh r = (1 − √(1 − Γ̃²)) / Γ̃,   Γ̃ = Λ̃/ω,
//!
//! equivalently r = ½ artanh Γ̃, valid only for |Γ̃| < 1. Both dispersions
//! share the common part ω cosh 2r − Λ̃ sinh 2r = ω √(1 − Γ̃²), split by ±Δ.
//!
//! Sign convention: r is stored as ½ artanh Γ̃ (nonnegative whenever ω > 0)
//! and the stored ζ is sinh r. A spectrum bounded below requires the cross
//! term to *reduce* the diagonal, so the Bogoliubov matrix itself carries
//! ζ_B = −sinh r; this shows up as the alternating sign of the eigenstate
//! amplitudes and as the − sign in the dispersion formula above. Energies,
//! moduli, and entropies are unaffected.
//!
//! Eigenstates expand over infinitely many product number states with fixed
//! count difference δl = |m − n|. The amplitudes are generated by the double
//! recursion
//!
//!   q^{(l,δl)}_p   = η²√(p+δl) q^{(l,δl−1)}_p − ζ²√(p+1) q^{(l,δl−1)}_{p+1}
//!   q^{(l,0)}_p    = p η⁴ q^{(l−1,0)}_{p−1} − (2p+1) η²ζ² q^{(l−1,0)}_p
//!                    + (p+1) ζ⁴ q^{(l−1,0)}_{p+1}
//!
//! seeded with q^{(0,0)}_p = 1, and the series is truncated at a cutoff with
//! the norm deficit reported and the retained amplitudes renormalized.

use crate::error::{Error, Result};
use crate::state::{entropy_nats, EigenstateExpansion, ExpansionTerm};

/// Cap on each of m, n for eigenstate expansions.
pub const MODE_OCCUPATION_CAP: u32 = 6;

/// Hard ceiling on the automatic series cutoff.
pub const MAX_CUTOFF: usize = 512;

/// SU(1,1) solution at one k-point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingSolution {
    /// Squeezing parameter r = ½ artanh Γ̃.
    pub r_squeeze: f64,
    /// cosh r.
    pub eta: f64,
    /// sinh r.
    pub zeta: f64,
    /// Γ̃ = Λ̃/ω, |Γ̃| < 1.
    pub gamma_tilde: f64,
    pub omega_alpha: f64,
    pub omega_beta: f64,
}

impl SqueezingSolution {
    pub fn solve(omega: f64, delta: f64, lambda_tilde: f64) -> Result<Self> {
        let r = squeezing_parameter(lambda_tilde, omega)?;
        let (omega_alpha, omega_beta) = squeezing_dispersions(r, omega, delta, lambda_tilde);
        Ok(SqueezingSolution {
            r_squeeze: r,
            eta: r.cosh(),
            zeta: r.sinh(),
            gamma_tilde: lambda_tilde / omega,
            omega_alpha,
            omega_beta,
        })
    }
}

/// Squeezing parameter r from (Λ̃, ω). Λ̃ = 0 gives r = 0; |Λ̃/ω| ≥ 1 is the
/// instability of the quadratic theory and fails; ω = 0 has no Γ̃ at all.
pub fn squeezing_parameter(lambda_tilde: f64, omega: f64) -> Result<f64> {
    debug_assert!(lambda_tilde >= 0.0, "Λ̃ is a modulus");
    if omega == 0.0 {
        return Err(Error::Domain(
            "squeezing parameter undefined at ω = 0".into(),
        ));
    }
    let gamma = lambda_tilde / omega;
    if gamma.abs() >= 1.0 {
        return Err(Error::Unstable(format!(
            "|Γ̃| = |Λ̃/ω| = {} ≥ 1 (Λ̃ = {lambda_tilde}, ω = {omega})",
            gamma.abs()
        )));
    }
    if gamma == 0.0 {
        return Ok(0.0);
    }
    // (1 − √(1−Γ̃²))/Γ̃ rationalized to Γ̃/(1 + √(1−Γ̃²)).
    let tanh_r = gamma / (1.0 + (1.0 - gamma * gamma).sqrt());
    Ok(tanh_r.atanh())
}

/// Dispersions (ω_α̃, ω_β̃) = ω cosh 2r − Λ̃ sinh 2r ± Δ. The common part
/// equals √(ω² − Λ̃²) in magnitude.
pub fn squeezing_dispersions(r: f64, omega: f64, delta: f64, lambda_tilde: f64) -> (f64, f64) {
    let common = omega * (2.0 * r).cosh() - lambda_tilde * (2.0 * r).sinh();
    (common + delta, common - delta)
}

/// Default series cutoff: the smallest P with λ^{P+1} < 1e−14 for
/// λ = tanh² r, clamped to [1, 512]. The truncated norm of the squeezed
/// vacuum is exactly 1 − λ^{P+1}, which makes the truncation auditable.
pub fn default_cutoff(r: f64) -> usize {
    let lambda = r.tanh().powi(2);
    if lambda <= 0.0 {
        return 1;
    }
    let bound = 1e-14_f64.ln() / lambda.ln();
    (bound.floor() as i64).clamp(1, MAX_CUTOFF as i64) as usize
}

/// Table of recursion values q^{(l,δl)}_p for p = 0..cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionTable {
    pub l: u32,
    pub delta_l: u32,
    /// `values[p]` = q^{(l,δl)}_p.
    pub values: Vec<f64>,
}

/// Evaluate the recursion. The table is built level by level from
/// q^{(0,0)} = 1: first the second recursion raises l, then the first
/// raises δl. Each level reads its predecessor at p and p ± 1, so the
/// working width starts at cutoff + l + δl and shrinks by one per level.
pub fn recursion_q(l: u32, delta_l: u32, eta: f64, zeta: f64, cutoff: usize) -> RecursionTable {
    let eta2 = eta * eta;
    let zeta2 = zeta * zeta;
    let mut width = cutoff + l as usize + delta_l as usize + 1;
    let mut q = vec![1.0; width];

    for _ in 0..l {
        width -= 1;
        let mut next = vec![0.0; width];
        for (p, slot) in next.iter_mut().enumerate() {
            let below = if p == 0 { 0.0 } else { q[p - 1] };
            let pf = p as f64;
            *slot = pf * eta2 * eta2 * below - (2.0 * pf + 1.0) * eta2 * zeta2 * q[p]
                + (pf + 1.0) * zeta2 * zeta2 * q[p + 1];
        }
        q = next;
    }

    for level in 1..=delta_l {
        width -= 1;
        let mut next = vec![0.0; width];
        for (p, slot) in next.iter_mut().enumerate() {
            *slot = eta2 * (p as f64 + level as f64).sqrt() * q[p]
                - zeta2 * (p as f64 + 1.0).sqrt() * q[p + 1];
        }
        q = next;
    }

    q.truncate(cutoff + 1);
    RecursionTable {
        l,
        delta_l,
        values: q,
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|i| i as f64).product()
}

/// Expand |m; α̃⟩|n; β̃⟩ over the localized product number states
/// (p+δl, p) for m ≥ n, (p, p+δl) for m ≤ n, p = 0..cutoff.
///
/// The truncated amplitudes are renormalized and the raw norm deficit is
/// reported in the expansion. r = 0 with l ≥ 1 would make the (ηζ)^{−l}
/// prefactor singular; the r → 0 limit is the exact product state |m, n⟩,
/// which is returned directly for r = 0.
pub fn squeezing_eigenstate(
    m: u32,
    n: u32,
    sol: &SqueezingSolution,
    cutoff: usize,
) -> Result<EigenstateExpansion> {
    if m > MODE_OCCUPATION_CAP || n > MODE_OCCUPATION_CAP {
        return Err(Error::CapExceeded(format!(
            "squeezing expansion needs m, n ≤ {MODE_OCCUPATION_CAP}, got ({m}, {n})"
        )));
    }
    if sol.r_squeeze == 0.0 {
        let terms = vec![ExpansionTerm {
            a_count: m,
            b_count: n,
            amplitude: 1.0,
        }];
        return Ok(EigenstateExpansion::assemble(m, n, terms, 0.0));
    }

    let l = m.min(n);
    let delta_l = m.abs_diff(n);
    let eta = sol.eta;
    // Transformation sign: see the module header.
    let zeta_b = -sol.zeta;
    let tanh_b = zeta_b / eta;

    let table = recursion_q(l, delta_l, eta, sol.zeta, cutoff);
    let prefactor = 1.0 / (factorial(m) * factorial(n)).sqrt()
        * eta.powi(-(delta_l as i32))
        * (eta * zeta_b).powi(-(l as i32));

    let mut terms = Vec::with_capacity(cutoff + 1);
    let mut raw_norm = 0.0;
    for (p, &q_p) in table.values.iter().enumerate() {
        let vacuum_amp = tanh_b.powi(p as i32) / eta;
        let amplitude = prefactor * q_p * vacuum_amp;
        raw_norm += amplitude * amplitude;
        let (a_count, b_count) = if m >= n {
            (p as u32 + delta_l, p as u32)
        } else {
            (p as u32, p as u32 + delta_l)
        };
        terms.push(ExpansionTerm {
            a_count,
            b_count,
            amplitude,
        });
    }

    let deficit = (1.0 - raw_norm).max(0.0);
    let scale = raw_norm.sqrt().recip();
    for t in &mut terms {
        t.amplitude *= scale;
    }
    Ok(EigenstateExpansion::assemble(m, n, terms, deficit))
}

/// Entanglement entropy −Σ w ln w (nats) of a squeezing expansion.
pub fn squeezing_entropy(state: &EigenstateExpansion) -> f64 {
    entropy_nats(state.terms.iter().map(|t| t.amplitude * t.amplitude))
}

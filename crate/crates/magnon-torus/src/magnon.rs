//! Spin-space couplings → two-mode magnon Hamiltonian parameters.
//!
//! The nearest-neighbor interaction tensor
//!
//! ```text
//!       ⎛ J+r   K+D   0  ⎞
//!   I = ⎜ K−D   J−r   0  ⎟
//!       ⎝  0     0   J_z ⎠
//! ```
//!
//! together with a Zeeman energy B along z maps, after the
//! Holstein–Primakoff truncation, onto the quadratic two-mode Hamiltonian
//!
//!   H = ω_a a†a + ω_b b†b + χ_k a†b + χ*_k ab† + Λ_k ab_− + Λ*_k a†b†_−
//!
//! with ω_a = ω + Δ, ω_b = ω − Δ. The regime decides the role of the two
//! transverse coupling combinations G = (J − iD)√(S_A S_B) and
//! F = (r − iK)√(S_A S_B):
//!
//!   FM:  (ω, Δ, χ, Λ) = (B − ω̄, Δ̄, G γ_k, F γ_{−k})
//!   AFM: (ω, Δ, χ, Λ) = (ω̄, −B − Δ̄, F* γ_k, G* γ_{−k})
//!
//! where ω̄ = Z J_z (S_A + S_B)/2 and Δ̄ = Z J_z (S_A − S_B)/2. A diagonal
//! rephasing of the four mode operators (a_k, b_k, a†_{−k}, b†_{−k}) then
//! brings both couplings to their moduli, the canonical nonnegative form
//! (χ̃_k, Λ̃_k) on which every observable downstream depends.
//!
//! Validity note: the underlying magnon picture assumes low temperature,
//! k_B T ≪ min{|I₁₁|, |I₂₂|, |I₃₃|}. The library has no temperature input;
//! this is a documented applicability condition, not an enforced check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{KPoint, LatticeSpec};

/// Sign convention of the diagonal tensor entries: FM requires I_ll < 0,
/// AFM requires I_ll > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Fm,
    Afm,
}

impl Regime {
    pub fn opposite(self) -> Self {
        match self {
            Regime::Fm => Regime::Afm,
            Regime::Afm => Regime::Fm,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::Fm => "FM",
            Regime::Afm => "AFM",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The spin-space parameters (J, D, r, K, J_z, B) plus the declared regime.
/// All entries are energies; B absorbs the g-factor and μ_B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet {
    /// Isotropic in-plane Heisenberg exchange J.
    pub exchange: f64,
    /// Antisymmetric (Dzyaloshinskii–Moriya) exchange D, along z.
    pub dm: f64,
    /// In-plane exchange anisotropy r.
    pub exchange_anisotropy: f64,
    /// Symmetric off-diagonal exchange K.
    pub symmetric_exchange: f64,
    /// Longitudinal exchange J_z.
    pub exchange_z: f64,
    /// Zeeman energy scale B (field along z).
    pub zeeman: f64,
    pub regime: Regime,
}

impl CouplingSet {
    /// Check the regime sign constraints on the diagonal tensor entries.
    /// The error names the offending entry.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("J", self.exchange),
            ("D", self.dm),
            ("r", self.exchange_anisotropy),
            ("K", self.symmetric_exchange),
            ("J_z", self.exchange_z),
            ("B", self.zeeman),
        ] {
            if !value.is_finite() {
                return Err(Error::RegimeViolation(format!(
                    "coupling {name} is not finite ({value})"
                )));
            }
        }
        let i11 = self.exchange + self.exchange_anisotropy;
        let i22 = self.exchange - self.exchange_anisotropy;
        let i33 = self.exchange_z;
        let entries = [
            ("I_11 = J + r", i11),
            ("I_22 = J - r", i22),
            ("I_33 = J_z", i33),
        ];
        for (name, value) in entries {
            let ok = match self.regime {
                Regime::Fm => value < 0.0,
                Regime::Afm => value > 0.0,
            };
            if !ok {
                let want = match self.regime {
                    Regime::Fm => "negative",
                    Regime::Afm => "positive",
                };
                return Err(Error::RegimeViolation(format!(
                    "{name} = {value} must be {want} in the {} regime",
                    self.regime
                )));
            }
        }
        Ok(())
    }

    /// The two in-plane radii (√(J² + D²), √(r² + K²)). Which one plays the
    /// role of R₁ depends on the regime; see the toric module.
    pub fn transverse_radii(&self) -> (f64, f64) {
        (
            f64::hypot(self.exchange, self.dm),
            f64::hypot(self.exchange_anisotropy, self.symmetric_exchange),
        )
    }
}

/// Two-mode magnon Hamiltonian data at one k-point, complex couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnonParams {
    pub omega: f64,
    pub delta: f64,
    pub chi: Complex64,
    pub lambda: Complex64,
    pub omega_a: f64,
    pub omega_b: f64,
}

impl MagnonParams {
    pub fn new(omega: f64, delta: f64, chi: Complex64, lambda: Complex64) -> Self {
        MagnonParams {
            omega,
            delta,
            chi,
            lambda,
            omega_a: omega + delta,
            omega_b: omega - delta,
        }
    }

    /// JSON object with the complex couplings split into re/im parts.
    pub fn to_json(&self) -> String {
        use crate::output::fmt_float as g;
        format!(
            "{{\"omega\":{},\"delta\":{},\"omega_a\":{},\"omega_b\":{},\
             \"chi_re\":{},\"chi_im\":{},\"lambda_re\":{},\"lambda_im\":{}}}",
            g(self.omega),
            g(self.delta),
            g(self.omega_a),
            g(self.omega_b),
            g(self.chi.re),
            g(self.chi.im),
            g(self.lambda.re),
            g(self.lambda.im),
        )
    }
}

/// Gauge-fixed canonical form: couplings reduced to their moduli, with the
/// three rephasing angles of the mode operators recorded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeFixedParams {
    pub omega: f64,
    pub delta: f64,
    /// χ̃_k = |χ_k| ≥ 0.
    pub chi_tilde: f64,
    /// Λ̃_k = |Λ_k| ≥ 0.
    pub lambda_tilde: f64,
    /// (ν₁, ν₂, ν₃) in radians, each in (−π, π].
    pub phases: [f64; 3],
}

/// Evaluate the magnon Hamiltonian parameters for one k-point.
///
/// Errors if the couplings violate their regime sign constraints.
pub fn build_magnon_params(
    couplings: &CouplingSet,
    lattice: &LatticeSpec,
    k: &KPoint,
) -> Result<MagnonParams> {
    couplings.validate()?;
    let z = lattice.coordination_number() as f64;
    let omega_bar = z * couplings.exchange_z * 0.5 * (lattice.spin_a() + lattice.spin_b());
    let delta_bar = z * couplings.exchange_z * 0.5 * (lattice.spin_a() - lattice.spin_b());
    let spin_scale = lattice.spin_geometric_mean();
    let g = Complex64::new(couplings.exchange, -couplings.dm) * spin_scale;
    let f =
        Complex64::new(couplings.exchange_anisotropy, -couplings.symmetric_exchange) * spin_scale;
    let gamma = lattice.gamma_k(k)?;
    let gamma_neg = lattice.gamma_k(&k.negated())?;

    let (omega, delta, chi, lambda) = match couplings.regime {
        Regime::Fm => (
            couplings.zeeman - omega_bar,
            delta_bar,
            g * gamma,
            f * gamma_neg,
        ),
        Regime::Afm => (
            omega_bar,
            -couplings.zeeman - delta_bar,
            f.conj() * gamma,
            g.conj() * gamma_neg,
        ),
    };
    Ok(MagnonParams::new(omega, delta, chi, lambda))
}

fn wrap_phase(phi: f64) -> f64 {
    use std::f64::consts::PI;
    let mut p = phi % (2.0 * PI);
    if p > PI {
        p -= 2.0 * PI;
    } else if p <= -PI {
        p += 2.0 * PI;
    }
    p
}

fn arg_or_zero(z: Complex64) -> f64 {
    if z.norm() == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

/// Rephase the mode operators so both couplings become real nonnegative:
/// ν₁ = arg χ_k, ν₂ = arg χ_k − arg Λ_k, ν₃ = arg Λ*_k. Leaves (ω, Δ) and
/// the coupling moduli untouched; zero couplings get zero phases.
pub fn gauge_fix(params: &MagnonParams) -> GaugeFixedParams {
    let nu1 = arg_or_zero(params.chi);
    let nu3 = arg_or_zero(params.lambda.conj());
    let nu2 = wrap_phase(nu1 - arg_or_zero(params.lambda));
    GaugeFixedParams {
        omega: params.omega,
        delta: params.delta,
        chi_tilde: params.chi.norm(),
        lambda_tilde: params.lambda.norm(),
        phases: [nu1, nu2, nu3],
    }
}

/// Gauge fixing at a self-conjugate momentum (k ≡ −k), where b_k and b_{−k}
/// are the same operator and only one b-phase is free. χ is gauged real
/// nonnegative first (ν₁ = arg χ_k); the leftover phase on Λ after that
/// shared rotation is recorded in ν₃, and λ̃ still stores |Λ_k|. Entropies
/// depend only on the moduli, so the residual phase is observationally inert.
pub fn gauge_fix_self_conjugate(params: &MagnonParams) -> GaugeFixedParams {
    let nu1 = arg_or_zero(params.chi);
    let residual = if params.lambda.norm() == 0.0 {
        0.0
    } else {
        wrap_phase(nu1 - params.lambda.arg())
    };
    GaugeFixedParams {
        omega: params.omega,
        delta: params.delta,
        chi_tilde: params.chi.norm(),
        lambda_tilde: params.lambda.norm(),
        phases: [nu1, 0.0, residual],
    }
}

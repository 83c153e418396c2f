//! Toroidal classification of coupling sets and the FM↔AFM duality.
//!
//! For fixed magnon dispersions, all couplings (J, D, r, K) producing the
//! same canonical Hamiltonian lie on a flat torus S¹(R₁) × S¹(R₂) embedded
//! in the 4-D parameter space:
//!
//!   FM:  J² + D² = R₁²,   r² + K² = R₂²
//!   AFM: r² + K² = R₁²,   J² + D² = R₂²
//!
//! R₁ is the χ̃-circle (splitting) radius and R₂ the Λ̃-circle (squeezing)
//! radius in both regimes; the duality swaps which coordinate plane carries
//! which circle while preserving the pair (R₁, R₂) and hence every two-mode
//! quantum correlation.
//!
//! Curvature invariants are computed for this flat 4-D embedding — the
//! actual solution set of the toric equations — where the Gauss curvature
//! vanishes identically and the mean curvature magnitude ½√(1/R₁² + 1/R₂²)
//! is symmetric under R₁ ↔ R₂. (A doughnut embedded in 3-D would satisfy
//! neither property.)

use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;
use crate::magnon::{CouplingSet, Regime};

/// Radii and regime tag of a coupling set's torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToricClass {
    /// Splitting-circle radius R₁ ≥ 0.
    pub radius_1: f64,
    /// Squeezing-circle radius R₂ ≥ 0.
    pub radius_2: f64,
    pub regime: Regime,
}

/// Curvature data of the flat torus S¹(R₁) × S¹(R₂).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureInvariants {
    /// Identically zero for any non-degenerate flat torus.
    pub gauss_curvature: f64,
    /// ½√(1/R₁² + 1/R₂²); invariant under swapping the radii.
    pub mean_curvature_magnitude: f64,
    pub principal_radii: (f64, f64),
}

/// Map a coupling set onto its toric class.
pub fn classify(couplings: &CouplingSet) -> ToricClass {
    let (jd, rk) = couplings.transverse_radii();
    let (radius_1, radius_2) = match couplings.regime {
        Regime::Fm => (jd, rk),
        Regime::Afm => (rk, jd),
    };
    ToricClass {
        radius_1,
        radius_2,
        regime: couplings.regime,
    }
}

/// True iff both radii agree within `tol`. Comparing across regimes is a
/// domain error; that comparison is the job of [`dual_of`].
pub fn same_class(a: &CouplingSet, b: &CouplingSet, tol: f64) -> Result<bool> {
    if a.regime != b.regime {
        return Err(Error::Domain(format!(
            "cannot compare toric classes across regimes ({} vs {})",
            a.regime, b.regime
        )));
    }
    let ca = classify(a);
    let cb = classify(b);
    Ok((ca.radius_1 - cb.radius_1).abs() <= tol && (ca.radius_2 - cb.radius_2).abs() <= tol)
}

/// Curvature invariants of a non-degenerate torus.
///
/// Fails with a degeneracy error naming the collapsed circle when either
/// radius vanishes.
pub fn curvature(tc: &ToricClass) -> Result<CurvatureInvariants> {
    if !tc.radius_1.is_finite() || tc.radius_1 <= 0.0 {
        return Err(Error::DegenerateTorus(format!(
            "longitude circle collapsed: R_1 = {} (circle class, not a torus)",
            tc.radius_1
        )));
    }
    if !tc.radius_2.is_finite() || tc.radius_2 <= 0.0 {
        return Err(Error::DegenerateTorus(format!(
            "meridian circle collapsed: R_2 = {} (circle class, not a torus)",
            tc.radius_2
        )));
    }
    // Ordered arguments keep the formula bit-identical under R₁ ↔ R₂.
    let lo = tc.radius_1.min(tc.radius_2);
    let hi = tc.radius_1.max(tc.radius_2);
    Ok(CurvatureInvariants {
        gauss_curvature: 0.0,
        mean_curvature_magnitude: 0.5 * f64::hypot(1.0 / lo, 1.0 / hi),
        principal_radii: (tc.radius_1, tc.radius_2),
    })
}

/// A point on the toric orbit with the given radii: returns (J, D, r, K).
/// For FM the J-circle is traversed from J = −R₁ at φ = 0 so that small
/// angles stay inside the regime; for AFM from J = +R₂.
pub fn orbit_point(
    regime: Regime,
    radius_1: f64,
    radius_2: f64,
    phi: f64,
    psi: f64,
) -> (f64, f64, f64, f64) {
    match regime {
        Regime::Fm => (
            -radius_1 * phi.cos(),
            radius_1 * phi.sin(),
            radius_2 * psi.cos(),
            radius_2 * psi.sin(),
        ),
        Regime::Afm => (
            radius_2 * phi.cos(),
            radius_2 * phi.sin(),
            radius_1 * psi.cos(),
            radius_1 * psi.sin(),
        ),
    }
}

fn source_omega_delta(couplings: &CouplingSet, lattice: &LatticeSpec) -> (f64, f64) {
    let z = lattice.coordination_number() as f64;
    let omega_bar = z * couplings.exchange_z * 0.5 * (lattice.spin_a() + lattice.spin_b());
    let delta_bar = z * couplings.exchange_z * 0.5 * (lattice.spin_a() - lattice.spin_b());
    match couplings.regime {
        Regime::Fm => (couplings.zeeman - omega_bar, delta_bar),
        Regime::Afm => (omega_bar, -couplings.zeeman - delta_bar),
    }
}

/// Construct the canonical dual configuration in the opposite regime.
///
/// The dual keeps the lattice and spins fixed and reproduces the source's
/// (ω, Δ, χ̃_k, Λ̃_k) at every k. The in-plane radii move entirely into J'
/// (sign chosen for the target regime) and K', which keeps the diagonal
/// constraints J' ± r' one-signed; J_z' and B' are solved from the ω and Δ
/// matching conditions.
pub fn dual_of(couplings: &CouplingSet, lattice: &LatticeSpec) -> Result<CouplingSet> {
    couplings.validate()?;
    let tc = classify(couplings);
    let (r1, r2) = (tc.radius_1, tc.radius_2);
    let (omega, delta) = source_omega_delta(couplings, lattice);
    let z = lattice.coordination_number() as f64;
    let spin_sum = lattice.spin_a() + lattice.spin_b();
    let spin_diff = lattice.spin_a() - lattice.spin_b();

    match couplings.regime {
        Regime::Fm => {
            // AFM target: J' = R₂ > 0 carries the (J, D) plane, K' = R₁.
            if r2 <= 0.0 {
                return Err(Error::Infeasible(format!(
                    "AFM dual needs I_11 = I_22 = J' = R_2 > 0, but R_2 = {r2} \
                     (pure splitting class has no strict-sign AFM representative)"
                )));
            }
            let exchange_z = 2.0 * omega / (z * spin_sum);
            if exchange_z <= 0.0 {
                return Err(Error::Infeasible(format!(
                    "AFM dual needs I_33 = J_z' = 2ω/(ZΣ) > 0, but ω = {omega}"
                )));
            }
            let zeeman = -delta - z * exchange_z * 0.5 * spin_diff;
            Ok(CouplingSet {
                exchange: r2,
                dm: 0.0,
                exchange_anisotropy: 0.0,
                symmetric_exchange: r1,
                exchange_z,
                zeeman,
                regime: Regime::Afm,
            })
        }
        Regime::Afm => {
            // FM target: J' = −R₁ < 0 carries the (J, D) plane, K' = R₂.
            if r1 <= 0.0 {
                return Err(Error::Infeasible(format!(
                    "FM dual needs I_11 = I_22 = J' = -R_1 < 0, but R_1 = {r1} \
                     (pure squeezing class has no strict-sign FM representative)"
                )));
            }
            let exchange_z = if spin_diff != 0.0 {
                let jz = 2.0 * delta / (z * spin_diff);
                if jz >= 0.0 {
                    return Err(Error::Infeasible(format!(
                        "FM dual needs I_33 = J_z' = 2Δ/(Z(S_A−S_B)) < 0, but Δ = {delta} \
                         with S_A − S_B = {spin_diff} gives J_z' = {jz}"
                    )));
                }
                jz
            } else {
                // Equal spins force Δ' = 0 in the FM regime; Δ must already
                // vanish, and the leftover freedom is fixed by B' = 0.
                if delta.abs() > 1e-12 * omega.abs().max(1.0) {
                    return Err(Error::Infeasible(format!(
                        "FM dual cannot realize Δ = {delta} with equal spins (Δ' ≡ 0)"
                    )));
                }
                if omega <= 0.0 {
                    return Err(Error::Infeasible(format!(
                        "FM dual with equal spins needs I_33 = J_z' = -2ω/(ZΣ) < 0, but ω = {omega}"
                    )));
                }
                -2.0 * omega / (z * spin_sum)
            };
            let zeeman = omega + z * exchange_z * 0.5 * spin_sum;
            Ok(CouplingSet {
                exchange: -r1,
                dm: 0.0,
                exchange_anisotropy: 0.0,
                symmetric_exchange: r2,
                exchange_z,
                zeeman,
                regime: Regime::Fm,
            })
        }
    }
}

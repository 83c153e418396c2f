//! Bipartite lattice geometry.
//!
//! A lattice is described by the set of nearest-neighbor vectors δ connecting
//! a site of sublattice A to its neighbors on sublattice B, together with the
//! sublattice spin lengths S_A and S_B. Lattice units are dimensionless with
//! nearest-neighbor spacing 1; only the coordination number Z and the
//! geometric lattice parameter
//!
//!   γ_k = Σ_δ exp(−i δ·k)
//!
//! enter the magnon Hamiltonian downstream. For neighbor sets closed under
//! δ → −δ the parameter γ_k is real; in general γ_{−k} = conj(γ_k).

use num_complex::Complex64;

use crate::error::{Error, Result};

const PAIRING_TOL: f64 = 1e-12;

/// A point in reciprocal space, components in radians per lattice unit.
#[derive(Debug, Clone, PartialEq)]
pub struct KPoint {
    components: Vec<f64>,
}

impl KPoint {
    pub fn new(components: Vec<f64>) -> Self {
        KPoint { components }
    }

    /// Convenience constructor for one-dimensional lattices.
    pub fn chain(k: f64) -> Self {
        KPoint::new(vec![k])
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// The reflected point −k.
    pub fn negated(&self) -> Self {
        KPoint::new(self.components.iter().map(|c| -c).collect())
    }

    /// True if k ≡ −k modulo the reciprocal lattice, i.e. every component is
    /// congruent to 0 or π (mod 2π). At such points the b_k and b_{−k} phase
    /// freedoms coincide.
    pub fn is_self_conjugate(&self) -> bool {
        self.components.iter().all(|&c| {
            let half_turns = c / std::f64::consts::PI;
            (half_turns - half_turns.round()).abs() < 1e-12
        })
    }
}

/// Neighbor vectors, coordination number, and sublattice spins of a bipartite
/// lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    name: String,
    neighbor_vectors: Vec<Vec<f64>>,
    spin_a: f64,
    spin_b: f64,
}

impl LatticeSpec {
    /// Build a lattice, requiring the neighbor set to be closed under
    /// δ → −δ (which makes γ_k real for every k).
    pub fn new(
        name: impl Into<String>,
        neighbor_vectors: Vec<Vec<f64>>,
        spin_a: f64,
        spin_b: f64,
    ) -> Result<Self> {
        let lattice = Self::new_unpaired(name, neighbor_vectors, spin_a, spin_b)?;
        for delta in &lattice.neighbor_vectors {
            let has_negation = lattice.neighbor_vectors.iter().any(|other| {
                other
                    .iter()
                    .zip(delta.iter())
                    .all(|(o, d)| (o + d).abs() <= PAIRING_TOL)
            });
            if !has_negation {
                return Err(Error::InvalidLattice(format!(
                    "neighbor vector {:?} has no matching −δ partner",
                    delta
                )));
            }
        }
        Ok(lattice)
    }

    /// Build a lattice without the ±δ pairing requirement. γ_k may then be
    /// complex, but γ_{−k} = conj(γ_k) still holds for real neighbor vectors.
    /// Used by the honeycomb preset, whose three neighbor vectors are not
    /// closed under negation.
    pub fn new_unpaired(
        name: impl Into<String>,
        neighbor_vectors: Vec<Vec<f64>>,
        spin_a: f64,
        spin_b: f64,
    ) -> Result<Self> {
        if neighbor_vectors.is_empty() {
            return Err(Error::InvalidLattice("neighbor vector set is empty".into()));
        }
        let dim = neighbor_vectors[0].len();
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidLattice(format!(
                "neighbor vectors must have dimension 1, 2, or 3 (got {dim})"
            )));
        }
        for delta in &neighbor_vectors {
            if delta.len() != dim {
                return Err(Error::InvalidLattice(format!(
                    "neighbor vectors have mixed dimensions ({} vs {})",
                    dim,
                    delta.len()
                )));
            }
            if delta.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidLattice(
                    "neighbor vector has non-finite component".into(),
                ));
            }
        }
        if !spin_a.is_finite() || spin_a <= 0.0 || !spin_b.is_finite() || spin_b <= 0.0 {
            return Err(Error::InvalidLattice(format!(
                "sublattice spins must be positive (S_A = {spin_a}, S_B = {spin_b})"
            )));
        }
        Ok(LatticeSpec {
            name: name.into(),
            neighbor_vectors,
            spin_a,
            spin_b,
        })
    }

    /// 1-D chain, δ = {+1, −1}.
    pub fn chain(spin_a: f64, spin_b: f64) -> Self {
        LatticeSpec::new("chain", vec![vec![1.0], vec![-1.0]], spin_a, spin_b)
            .expect("chain preset is valid")
    }

    /// 2-D square lattice, δ = {(±1,0), (0,±1)}.
    pub fn square(spin_a: f64, spin_b: f64) -> Self {
        LatticeSpec::new(
            "square",
            vec![
                vec![1.0, 0.0],
                vec![-1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, -1.0],
            ],
            spin_a,
            spin_b,
        )
        .expect("square preset is valid")
    }

    /// 3-D cubic lattice, six ± unit vectors.
    pub fn cubic(spin_a: f64, spin_b: f64) -> Self {
        LatticeSpec::new(
            "cubic",
            vec![
                vec![1.0, 0.0, 0.0],
                vec![-1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, -1.0, 0.0],
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, -1.0],
            ],
            spin_a,
            spin_b,
        )
        .expect("cubic preset is valid")
    }

    /// Honeycomb lattice, three neighbor vectors at 120°. Not closed under
    /// δ → −δ, so γ_k is genuinely complex away from zone center.
    pub fn honeycomb(spin_a: f64, spin_b: f64) -> Self {
        let half_sqrt3 = 3.0_f64.sqrt() / 2.0;
        LatticeSpec::new_unpaired(
            "honeycomb",
            vec![
                vec![1.0, 0.0],
                vec![-0.5, half_sqrt3],
                vec![-0.5, -half_sqrt3],
            ],
            spin_a,
            spin_b,
        )
        .expect("honeycomb preset is valid")
    }

    /// Look up a built-in lattice by name.
    pub fn preset(name: &str, spin_a: f64, spin_b: f64) -> Option<Self> {
        match name {
            "chain" => Some(Self::chain(spin_a, spin_b)),
            "square" => Some(Self::square(spin_a, spin_b)),
            "cubic" => Some(Self::cubic(spin_a, spin_b)),
            "honeycomb" => Some(Self::honeycomb(spin_a, spin_b)),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.neighbor_vectors[0].len()
    }

    /// Coordination number Z = number of nearest neighbors.
    pub fn coordination_number(&self) -> usize {
        self.neighbor_vectors.len()
    }

    pub fn neighbor_vectors(&self) -> &[Vec<f64>] {
        &self.neighbor_vectors
    }

    pub fn spin_a(&self) -> f64 {
        self.spin_a
    }

    pub fn spin_b(&self) -> f64 {
        self.spin_b
    }

    /// √(S_A S_B), the spin scale of the transverse couplings.
    pub fn spin_geometric_mean(&self) -> f64 {
        (self.spin_a * self.spin_b).sqrt()
    }

    /// Geometric lattice parameter γ_k = Σ_δ exp(−i δ·k). Satisfies
    /// |γ_k| ≤ Z with equality at k = 0.
    pub fn gamma_k(&self, k: &KPoint) -> Result<Complex64> {
        if k.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "k-point has dimension {} but lattice '{}' has dimension {}",
                k.dimension(),
                self.name,
                self.dimension()
            )));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for delta in &self.neighbor_vectors {
            let phase: f64 = delta.iter().zip(k.components()).map(|(d, kc)| d * kc).sum();
            sum += Complex64::from_polar(1.0, -phase);
        }
        // Phase sums that cancel analytically land within a few ulp of
        // zero; snap them so decoupled k-points decouple exactly (at Δ = 0
        // the hybridization angle is discontinuous in χ̃ at χ̃ = 0).
        let tol = self.coordination_number() as f64 * 1e-15;
        let re = if sum.re.abs() < tol { 0.0 } else { sum.re };
        let im = if sum.im.abs() < tol { 0.0 } else { sum.im };
        Ok(Complex64::new(re, im))
    }
}

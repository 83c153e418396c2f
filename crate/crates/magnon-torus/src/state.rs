//! Eigenstate expansions over product number states.
//!
//! Both diagonalization routes express an energy eigenstate as a sum over
//! distinct product number states |a_count, b_count⟩ of the localized modes.
//! Distinctness makes the list a Schmidt decomposition, so the entanglement
//! entropy is −Σ w ln w over the squared amplitudes directly.

/// One product-number-state component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerm {
    pub a_count: u32,
    pub b_count: u32,
    pub amplitude: f64,
}

/// Schmidt-form expansion of the eigenstate with quantum numbers (m, n).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenstateExpansion {
    pub m: u32,
    pub n: u32,
    pub terms: Vec<ExpansionTerm>,
    /// Entanglement entropy in nats.
    pub entropy: f64,
    /// 1 − (raw norm before renormalization); zero for exact finite
    /// expansions, the geometric tail estimate for truncated ones.
    pub truncation_deficit: f64,
}

impl EigenstateExpansion {
    /// Assemble an expansion, checking Schmidt distinctness and computing
    /// the entropy from the squared amplitudes.
    pub(crate) fn assemble(
        m: u32,
        n: u32,
        terms: Vec<ExpansionTerm>,
        truncation_deficit: f64,
    ) -> Self {
        for (i, a) in terms.iter().enumerate() {
            for b in &terms[i + 1..] {
                assert!(
                    (a.a_count, a.b_count) != (b.a_count, b.b_count),
                    "duplicate product state ({}, {}) in expansion",
                    a.a_count,
                    a.b_count
                );
            }
        }
        let entropy = entropy_nats(terms.iter().map(|t| t.amplitude * t.amplitude));
        EigenstateExpansion {
            m,
            n,
            terms,
            entropy,
            truncation_deficit,
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.terms.iter().map(|t| t.amplitude * t.amplitude).sum()
    }
}

/// Shannon entropy −Σ w ln w in nats; zero-weight entries are skipped.
pub fn entropy_nats(weights: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = 0.0;
    for w in weights {
        if w > 0.0 {
            s -= w * w.ln();
        }
    }
    // Guard against −0.0 from a single unit weight.
    s.max(0.0)
}

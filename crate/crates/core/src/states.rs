//! Fock-basis state construction: squeezed vacuum, even/odd coherent-state
//! superpositions, and the overlaps between them.
//!
//! All states in this crate have real Fock amplitudes (up to a global sign),
//! so a state is a dense list of reals over photon numbers 0..=cutoff tagged
//! with its photon-number parity. Wrong-parity slots hold explicit zeros to
//! keep overlap loops branch-free and index-aligned.

use crate::error::{Error, Result};
use crate::math::ln_factorial;

/// Squared-amplitude threshold (relative to the running norm) below which a
/// tail term is considered negligible.
pub const TRUNCATION_TOL: f64 = 1e-16;

/// Number of extra terms appended past the point where the tail goes quiet.
const TAIL_PAD_TERMS: usize = 4;

/// Consecutive sub-threshold terms required before the tail counts as quiet.
/// Heralded amplitudes carry a quadratic weight whose isolated roots produce
/// lone near-zero terms in the middle of the support; a single quiet term must
/// not stop the scan.
const TAIL_QUIET_RUN: usize = 3;

/// Hard ceiling on automatic cutoff growth.
const MAX_AUTO_CUTOFF: usize = 1 << 14;

/// Photon-number parity of a state's support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    /// Parity of the photon-number index `n`.
    pub fn of_index(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// True when an amplitude at index `n` is allowed under this parity.
    pub fn admits(self, n: usize) -> bool {
        match self {
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => !n.is_multiple_of(2),
            Parity::Mixed => true,
        }
    }
}

/// Cutoff selection for state constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffPolicy {
    /// Grow the cutoff until the squared tail terms fall below
    /// [`TRUNCATION_TOL`] times the running norm, then pad a few terms.
    Auto,
    /// Use exactly this cutoff; constructors fail with a truncation error if
    /// it drops significant amplitude.
    Fixed(usize),
}

/// Single-mode squeezing strength in its four equivalent parameterizations.
///
/// The invariants y = tanh(s)/2, S_dB = (20·log10 e)·s and ⟨n⟩ = sinh²(s) tie
/// the fields together; construction from any anchor populates the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    s: f64,
    y: f64,
    s_db: f64,
    mean_photons: f64,
}

/// Which field of [`SqueezeParams`] a raw value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezeAnchor {
    /// Squeezing amplitude s ≥ 0.
    Amplitude,
    /// Squeezing parameter y = tanh(s)/2 ∈ [0, 0.5).
    Parameter,
    /// Squeezing in decibels, S = -10·log10(exp(-2s)) ≥ 0.
    Decibels,
}

impl SqueezeParams {
    /// Build from the squeezing amplitude s ≥ 0.
    pub fn from_amplitude(s: f64) -> Result<Self> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::Domain(format!(
                "squeezing amplitude must be finite and nonnegative, got {s}"
            )));
        }
        let y = s.tanh() / 2.0;
        let s_db = 20.0 * std::f64::consts::LOG10_E * s;
        let mean_photons = s.sinh().powi(2);
        Ok(SqueezeParams {
            s,
            y,
            s_db,
            mean_photons,
        })
    }

    /// Build from the squeezing parameter y = tanh(s)/2 ∈ [0, 0.5).
    pub fn from_parameter(y: f64) -> Result<Self> {
        if !y.is_finite() || !(0.0..0.5).contains(&y) {
            return Err(Error::Domain(format!(
                "squeezing parameter must lie in [0, 0.5), got {y}"
            )));
        }
        Self::from_amplitude((2.0 * y).atanh())
    }

    /// Build from squeezing expressed in decibels, S ≥ 0.
    pub fn from_decibels(s_db: f64) -> Result<Self> {
        if !s_db.is_finite() || s_db < 0.0 {
            return Err(Error::Domain(format!(
                "squeezing in dB must be finite and nonnegative, got {s_db}"
            )));
        }
        Self::from_amplitude(s_db * std::f64::consts::LN_10 / 20.0)
    }

    /// Build from any of the three anchors.
    pub fn from_anchor(anchor: SqueezeAnchor, value: f64) -> Result<Self> {
        match anchor {
            SqueezeAnchor::Amplitude => Self::from_amplitude(value),
            SqueezeAnchor::Parameter => Self::from_parameter(value),
            SqueezeAnchor::Decibels => Self::from_decibels(value),
        }
    }

    /// Zero squeezing (vacuum input).
    pub fn vacuum() -> Self {
        Self::from_amplitude(0.0).expect("vacuum squeeze is always valid")
    }

    /// Squeezing amplitude s.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Squeezing parameter y = tanh(s)/2.
    pub fn y(&self) -> f64 {
        self.y
    }

    /// Squeezing in decibels.
    pub fn s_db(&self) -> f64 {
        self.s_db
    }

    /// Average photon number sinh²(s).
    pub fn mean_photons(&self) -> f64 {
        self.mean_photons
    }
}

/// Target superposition of coherent states |β⟩ ± |-β⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScsTarget {
    beta: f64,
    sign: ScsSign,
    n_norm: f64,
}

/// Relative sign between the two coherent components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScsSign {
    /// |β⟩ + |-β⟩: even photon-number support.
    Plus,
    /// |β⟩ - |-β⟩: odd photon-number support.
    Minus,
}

impl ScsTarget {
    /// New target with amplitude β > 0; computes N± = (2(1 ± e^(-2β²)))^(-1/2).
    pub fn new(beta: f64, sign: ScsSign) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::Domain(format!(
                "SCS amplitude must be finite and positive, got {beta}"
            )));
        }
        let e = (-2.0 * beta * beta).exp();
        let n_norm = match sign {
            ScsSign::Plus => 1.0 / (2.0 * (1.0 + e)).sqrt(),
            ScsSign::Minus => 1.0 / (2.0 * (1.0 - e)).sqrt(),
        };
        Ok(ScsTarget { beta, sign, n_norm })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sign(&self) -> ScsSign {
        self.sign
    }

    /// Normalization constant N±.
    pub fn n_norm(&self) -> f64 {
        self.n_norm
    }

    /// Parity of the rendered state.
    pub fn parity(&self) -> Parity {
        match self.sign {
            ScsSign::Plus => Parity::Even,
            ScsSign::Minus => Parity::Odd,
        }
    }
}

/// Truncated state vector over the photon-number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<f64>,
    parity: Parity,
}

impl FockVector {
    /// Wrap a dense amplitude list, checking the parity invariant.
    pub fn from_amplitudes(amplitudes: Vec<f64>, parity: Parity) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Domain("amplitude list must be nonempty".into()));
        }
        for (n, &a) in amplitudes.iter().enumerate() {
            if !parity.admits(n) && a != 0.0 {
                return Err(Error::Domain(format!(
                    "nonzero amplitude {a} at index {n} violates {parity:?} parity"
                )));
            }
        }
        Ok(FockVector { amplitudes, parity })
    }

    pub(crate) fn new_unchecked(amplitudes: Vec<f64>, parity: Parity) -> Self {
        FockVector { amplitudes, parity }
    }

    /// The vacuum state |0⟩.
    pub fn vacuum() -> Self {
        FockVector {
            amplitudes: vec![1.0],
            parity: Parity::Even,
        }
    }

    /// Amplitude at photon number `n` (zero beyond the cutoff).
    pub fn amplitude(&self, n: usize) -> f64 {
        self.amplitudes.get(n).copied().unwrap_or(0.0)
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Highest stored photon number.
    pub fn cutoff(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Σ aₙ².
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    /// |norm² - 1| ≤ tol.
    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// Σ n·aₙ², the mean photon number of a normalized state.
    pub fn mean_photons(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a * a)
            .sum()
    }

    /// Real overlap Σ aₙ·bₙ over the shared support (missing tail terms are
    /// zero on the shorter side).
    pub fn overlap(&self, other: &FockVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Scale to unit norm. Fails on an all-zero vector.
    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm_sq().sqrt();
        if norm == 0.0 {
            return Err(Error::Domain("cannot normalize a zero vector".into()));
        }
        for a in &mut self.amplitudes {
            *a /= norm;
        }
        Ok(())
    }

    /// Fix the global sign so the lowest-index significant amplitude is
    /// positive. "Significant" means above 1e-6 of the largest magnitude:
    /// amplitudes sitting on a weight-polynomial root are floating-point
    /// residue of ambiguous sign and must not decide the convention.
    pub fn canonicalize_sign(&mut self) {
        let max_abs = self
            .amplitudes
            .iter()
            .fold(0.0_f64, |acc, a| acc.max(a.abs()));
        if max_abs == 0.0 {
            return;
        }
        let threshold = 1e-6 * max_abs;
        if let Some(first) = self.amplitudes.iter().find(|a| a.abs() > threshold) {
            if *first < 0.0 {
                for a in &mut self.amplitudes {
                    *a = -*a;
                }
            }
        }
    }

    /// Extend with explicit zeros up to `cutoff`.
    pub fn pad_to(&mut self, cutoff: usize) {
        if cutoff >= self.amplitudes.len() {
            self.amplitudes.resize(cutoff + 1, 0.0);
        }
    }
}

/// Squared overlap (Σ aₙbₙ)² between two normalized states.
///
/// Disjoint parity classes give exactly zero. Inputs are expected normalized;
/// callers own that precondition.
pub fn fidelity(a: &FockVector, b: &FockVector) -> f64 {
    debug_assert!(
        a.is_normalized(1e-6),
        "fidelity: first input not normalized"
    );
    debug_assert!(
        b.is_normalized(1e-6),
        "fidelity: second input not normalized"
    );
    let overlap = a.overlap(b);
    overlap * overlap
}

/// Build a parity-pure state from a term generator, growing the cutoff per
/// the tail rule. `term(j)` returns the unnormalized amplitude at photon
/// number j; it is called only on indices the parity admits.
///
/// The returned vector is unnormalized and its trailing exact zeros trimmed.
pub(crate) fn build_parity_state(
    parity: Parity,
    policy: CutoffPolicy,
    term: impl Fn(usize) -> f64,
) -> Result<FockVector> {
    debug_assert!(parity != Parity::Mixed);
    let start = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
        Parity::Mixed => unreachable!(),
    };

    let mut significant = Vec::new();
    let mut norm_sq = 0.0_f64;
    let mut quiet_run = 0_usize;
    let mut j = start;
    let mut stopped = None;
    while j <= MAX_AUTO_CUTOFF {
        let a = term(j);
        let sq = a * a;
        significant.push((j, a));
        norm_sq += sq;
        if norm_sq > 0.0 && sq < TRUNCATION_TOL * norm_sq {
            quiet_run += 1;
            if quiet_run >= TAIL_QUIET_RUN {
                stopped = Some(j);
                break;
            }
        } else {
            quiet_run = 0;
        }
        j += 2;
    }
    let Some(last_needed) = stopped else {
        return Err(Error::Convergence(format!(
            "state tail still significant at cutoff {MAX_AUTO_CUTOFF}"
        )));
    };
    if norm_sq == 0.0 {
        return Err(Error::Domain("state has identically zero amplitude".into()));
    }
    // Tail padding past the quiet point.
    for _ in 0..TAIL_PAD_TERMS {
        j += 2;
        significant.push((j, term(j)));
    }

    let target_cutoff = match policy {
        CutoffPolicy::Auto => significant.last().map(|&(j, _)| j).unwrap(),
        CutoffPolicy::Fixed(n) => {
            if n < last_needed {
                return Err(Error::Truncation {
                    required: last_needed,
                    requested: n,
                });
            }
            n
        }
    };

    let mut amplitudes = vec![0.0; target_cutoff + 1];
    for &(j, a) in &significant {
        if j <= target_cutoff {
            amplitudes[j] = a;
        }
    }
    // Trim trailing exact zeros (vacuum-like states collapse to short vectors)
    // unless a fixed cutoff pins the length.
    if matches!(policy, CutoffPolicy::Auto) {
        while amplitudes.len() > 1 && *amplitudes.last().unwrap() == 0.0 {
            amplitudes.pop();
        }
    }
    Ok(FockVector::new_unchecked(amplitudes, parity))
}

/// Single-mode squeezed vacuum in the Fock basis: the amplitude at |2n⟩ is
/// yⁿ·√((2n)!)/n! up to overall normalization by √(cosh s).
pub fn smsv_state(p: &SqueezeParams, policy: CutoffPolicy) -> Result<FockVector> {
    let y = p.y();
    let ln_y = if y > 0.0 { y.ln() } else { f64::NEG_INFINITY };
    let mut state = build_parity_state(Parity::Even, policy, |j| {
        let n = j / 2;
        if y == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        (n as f64 * ln_y + 0.5 * ln_factorial(2 * n) - ln_factorial(n)).exp()
    })?;
    state.normalize()?;
    Ok(state)
}

/// Even/odd superposition of coherent states in the Fock basis. Even targets
/// carry 2N₊e^(-β²/2)·β^(2n)/√((2n)!) at |2n⟩, odd targets the analogous
/// amplitudes on |2n+1⟩.
pub fn scs_state(t: &ScsTarget, policy: CutoffPolicy) -> Result<FockVector> {
    let ln_beta = t.beta().ln();
    let mut state = build_parity_state(t.parity(), policy, |j| {
        (j as f64 * ln_beta - 0.5 * ln_factorial(j)).exp()
    })?;
    state.normalize()?;
    Ok(state)
}

//! Brute-force two-beam-splitter interferometer in the Fock basis.
//!
//! This module is the ground truth the analytic heralding pipeline is checked
//! against: exact beam-splitter matrix elements from the binomial expansion of
//! the transformed creation operators, cascaded over modes (1,2) then (1,3),
//! with projection of the measuring modes onto photon-number outcomes. It
//! makes no assumption about the mode-1 input and therefore also covers
//! zero-click outcomes and vacuum-ancilla baselines that have no closed form.
//!
//! Convention: each beam splitter maps a₁† ↦ t·a₁† - r·a₂† and
//! a₂† ↦ r·a₁† + t·a₂† with real t, r > 0, t² + r² = 1.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::math::{ln_binomial, ln_factorial};
use crate::states::{FockVector, Parity, SqueezeParams};

/// Beam-splitter strength B = R/T with the derived amplitude and intensity
/// coefficients under t² + r² = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterParams {
    b: f64,
    t: f64,
    r: f64,
}

impl BeamSplitterParams {
    /// From the ratio B = (1-t²)/t² > 0; B = 1 is the balanced splitter.
    pub fn from_ratio(b: f64) -> Result<Self> {
        if !b.is_finite() || b <= 0.0 {
            return Err(Error::Domain(format!(
                "beam-splitter parameter B must be finite and positive, got {b}"
            )));
        }
        let transmittance = 1.0 / (1.0 + b);
        Ok(BeamSplitterParams {
            b,
            t: transmittance.sqrt(),
            r: (b * transmittance).sqrt(),
        })
    }

    /// From the amplitude transmittance t ∈ (0, 1).
    pub fn from_transmittance(t: f64) -> Result<Self> {
        if !t.is_finite() || t <= 0.0 || t >= 1.0 {
            return Err(Error::Domain(format!(
                "amplitude transmittance must lie in (0, 1), got {t}"
            )));
        }
        Self::from_ratio((1.0 - t * t) / (t * t))
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Amplitude transmittance t.
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Amplitude reflectance r.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Intensity transmittance T = t² = 1/(1+B).
    pub fn transmittance(&self) -> f64 {
        self.t * self.t
    }

    /// Intensity reflectance R = r² = B/(1+B).
    pub fn reflectance(&self) -> f64 {
        self.r * self.r
    }
}

/// Squeezing plus beam-splitter parameters with the squeezing values seen
/// after each pass: y₁ = y/(1+B), y₂ = y/(1+B)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeParams {
    squeeze: SqueezeParams,
    bs: BeamSplitterParams,
    y1: f64,
    y2: f64,
}

impl CascadeParams {
    pub fn new(squeeze: SqueezeParams, bs: BeamSplitterParams) -> Self {
        let y = squeeze.y();
        let y1 = y / (1.0 + bs.b());
        CascadeParams {
            squeeze,
            bs,
            y1,
            y2: y1 / (1.0 + bs.b()),
        }
    }

    pub fn squeeze(&self) -> &SqueezeParams {
        &self.squeeze
    }

    pub fn bs(&self) -> &BeamSplitterParams {
        &self.bs
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn y2(&self) -> f64 {
        self.y2
    }
}

/// Conditional state of mode 1 after detecting (k1, k2) photons in the
/// measuring modes, with the outcome probability.
#[derive(Debug, Clone, PartialEq)]
pub struct HeraldOutcome {
    pub k1: usize,
    pub k2: usize,
    pub probability: f64,
    pub state: FockVector,
    /// False when the outcome exceeds the photon budget of the truncated
    /// input; such outcomes carry zero probability rather than an error so
    /// that distribution sweeps stay branch-free.
    pub feasible: bool,
}

/// Single matrix element ⟨p, q|U|m, n⟩ of one beam splitter.
///
/// Nonzero only when p + q = m + n; assembled from the binomial expansion of
/// (t·a₁† - r·a₂†)^m (r·a₁† + t·a₂†)^n acting on vacuum, with log-space
/// binomials so large photon numbers stay in range.
pub fn bs_element(p: usize, q: usize, m: usize, n: usize, bs: &BeamSplitterParams) -> f64 {
    if p + q != m + n {
        return 0.0;
    }
    let prefactor =
        (0.5 * (ln_factorial(p) + ln_factorial(q) - ln_factorial(m) - ln_factorial(n))).exp();
    let lo = p.saturating_sub(n);
    let hi = m.min(p);
    let mut sum = 0.0;
    for i in lo..=hi {
        // a₁† receives i factors from the first binomial and p-i from the
        // second; powers of t and r follow from the operator transforms.
        let magnitude = (ln_binomial(m, i) + ln_binomial(n, p - i)).exp()
            * bs.t.powi((n + 2 * i - p) as i32)
            * bs.r.powi((m + p - 2 * i) as i32);
        if (m - i).is_multiple_of(2) {
            sum += magnitude;
        } else {
            sum -= magnitude;
        }
    }
    prefactor * sum
}

/// Full output column for the input |m, n⟩: index p holds ⟨p, m+n-p|U|m, n⟩.
pub fn bs_apply(m: usize, n: usize, bs: &BeamSplitterParams) -> Vec<f64> {
    (0..=m + n)
        .map(|p| bs_element(p, m + n - p, m, n, bs))
        .collect()
}

fn herald_parity(input: Parity, anc2: usize, anc3: usize, k1: usize, k2: usize) -> Parity {
    match input {
        Parity::Mixed => Parity::Mixed,
        Parity::Even => Parity::of_index(anc2 + anc3 + k1 + k2),
        Parity::Odd => Parity::of_index(anc2 + anc3 + k1 + k2 + 1),
    }
}

/// Propagate `input1` ⊗ |anc2⟩ ⊗ |anc3⟩ through the cascade and project the
/// measuring modes onto (k1, k2).
///
/// Because the second splitter never touches mode 2, mode 2 is projected
/// right after the first splitter; each contraction then visits every mode-1
/// index exactly once (photon conservation fixes the partner index), keeping
/// the whole outcome linear in the cutoff. The returned state is normalized
/// and sign-canonicalized. Ancilla occupations must be 0 or 1.
pub fn cascade_herald(
    input1: &FockVector,
    anc2: usize,
    anc3: usize,
    bs: &BeamSplitterParams,
    k1: usize,
    k2: usize,
) -> HeraldOutcome {
    assert!(anc2 <= 1 && anc3 <= 1, "ancilla occupations must be 0 or 1");
    let parity = herald_parity(input1.parity(), anc2, anc3, k1, k2);
    let infeasible = |k1, k2| HeraldOutcome {
        k1,
        k2,
        probability: 0.0,
        state: FockVector::new_unchecked(vec![0.0], parity),
        feasible: false,
    };

    // Mode 2 detection: w[m] = Σ_μ ψ_μ ⟨m, k1|U|μ, anc2⟩ with μ = m + k1 - anc2.
    let cutoff = input1.cutoff() as isize;
    let budget1 = cutoff + anc2 as isize - k1 as isize;
    if budget1 < 0 {
        return infeasible(k1, k2);
    }
    let mut after_first = vec![0.0; budget1 as usize + 1];
    for (m, slot) in after_first.iter_mut().enumerate() {
        let source = m + k1;
        if source < anc2 {
            continue;
        }
        let amp = input1.amplitude(source - anc2);
        if amp != 0.0 {
            *slot = amp * bs_element(m, k1, source - anc2, anc2, bs);
        }
    }

    // Mode 3 detection on the intermediate vector.
    let budget2 = budget1 + anc3 as isize - k2 as isize;
    if budget2 < 0 {
        return infeasible(k1, k2);
    }
    let mut projected = vec![0.0; budget2 as usize + 1];
    for (j, slot) in projected.iter_mut().enumerate() {
        let source = j + k2;
        if source < anc3 {
            continue;
        }
        let amp = after_first[source - anc3];
        if amp != 0.0 {
            *slot = amp * bs_element(j, k2, source - anc3, anc3, bs);
        }
    }

    let probability: f64 = projected.iter().map(|a| a * a).sum();
    if probability == 0.0 {
        return HeraldOutcome {
            k1,
            k2,
            probability: 0.0,
            state: FockVector::new_unchecked(vec![0.0], parity),
            feasible: true,
        };
    }
    while projected.len() > 1 && *projected.last().unwrap() == 0.0 {
        projected.pop();
    }
    let mut state = FockVector::new_unchecked(projected, parity);
    state
        .normalize()
        .expect("nonzero probability implies nonzero projection");
    state.canonicalize_sign();
    HeraldOutcome {
        k1,
        k2,
        probability,
        state,
        feasible: true,
    }
}

/// Every outcome with k1, k2 ≤ kmax, ordered by (k1, k2). Outcomes are
/// independent and evaluated in parallel; the ordering (and every value) is
/// schedule-independent.
pub fn herald_distribution(
    input1: &FockVector,
    anc2: usize,
    anc3: usize,
    bs: &BeamSplitterParams,
    kmax: usize,
) -> Vec<HeraldOutcome> {
    let pairs: Vec<(usize, usize)> = (0..=kmax)
        .flat_map(|k1| (0..=kmax).map(move |k2| (k1, k2)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(k1, k2)| cascade_herald(input1, anc2, anc3, bs, k1, k2))
        .collect()
}

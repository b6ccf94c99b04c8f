//! Closed-form heralded states and outcome probabilities.
//!
//! For a squeezed-vacuum input mixed with one ancilla photon on each of the
//! two splitters, detecting k1 ≥ 1 and k2 ≥ 1 photons leaves mode 1 in a
//! definite-parity state whose unnormalized Fock amplitude at photon number j
//! (j ≡ k1+k2 mod 2) is
//!
//! ```text
//! c̃_j = y₂^(j/2)/√(j!) · (2ν)!/ν! · (a₀ + a₁·j + a₂·j²),   ν = (j + K - 2)/2
//! ```
//!
//! with K = k1 + k2 and weight coefficients a₀, a₁, a₂ determined by (k1, k2)
//! and the splitter ratio B. The squared norm of that amplitude list is the
//! normalization factor G, which this module computes two independent ways:
//! by direct summation and by a derivative polynomial in Z(y₂) = 1/√(1-4y₂²).
//! Outcome probabilities combine G with per-splitter heralding amplitudes and
//! the 1/cosh(s) weight of the input state.
//!
//! Zero-click outcomes (k1 = 0 or k2 = 0) have no closed form here and are
//! served by the brute-force [`crate::oracle`].

use crate::error::{Error, Result};
use crate::math::ln_factorial;
use crate::oracle::CascadeParams;
use crate::series::{z_series, TruncatedSeries};
use crate::states::{build_parity_state, CutoffPolicy, FockVector, Parity};

/// Starting degree for the Z-series route.
pub const Z_DEGREE_DEFAULT: usize = 200;
/// Degree cap; central binomials overflow f64 shortly past 1000.
pub const Z_DEGREE_MAX: usize = 800;
/// Relative degree-doubling tolerance for the series route.
const Z_DEGREE_REL_TOL: f64 = 1e-10;

/// Detected photon counts (k1, k2), both at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeraldPattern {
    k1: usize,
    k2: usize,
}

impl HeraldPattern {
    pub fn new(k1: usize, k2: usize) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(Error::Domain(format!(
                "closed-form herald requires k1, k2 >= 1, got ({k1}, {k2})"
            )));
        }
        Ok(HeraldPattern { k1, k2 })
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// K = k1 + k2, the total number of subtracted photons.
    pub fn total(&self) -> usize {
        self.k1 + self.k2
    }

    /// Parity of the heralded state: even K gives even states, odd K odd.
    pub fn parity(&self) -> Parity {
        Parity::of_index(self.total())
    }
}

/// Weight polynomial a₀ + a₁·j + a₂·j² of a herald pattern together with the
/// coefficients of its square, A₀..A₄.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticWeights {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    /// Σ_l expanded[l]·j^l = (a₀ + a₁·j + a₂·j²)².
    pub expanded: [f64; 5],
}

impl QuadraticWeights {
    /// Weight at photon number j.
    pub fn eval(&self, j: usize) -> f64 {
        let j = j as f64;
        self.a0 + self.a1 * j + self.a2 * j * j
    }

    /// The squared weight via the expanded coefficients.
    pub fn eval_expanded(&self, j: f64) -> f64 {
        self.expanded.iter().rev().fold(0.0, |acc, &c| acc * j + c)
    }
}

/// Weight coefficients of a pattern:
/// a₀ = 1 - ((k2-1)/k1)·B, a₁ = ((k2-1)B - k1 - k2)·B/(k1·k2), a₂ = B²/(k1·k2).
/// Requires B > 0.
pub fn quadratic_weights(p: HeraldPattern, b: f64) -> QuadraticWeights {
    debug_assert!(b > 0.0, "quadratic_weights: B must be positive");
    let k1 = p.k1 as f64;
    let k2 = p.k2 as f64;
    let a0 = 1.0 - (k2 - 1.0) / k1 * b;
    let a1 = ((k2 - 1.0) * b - k1 - k2) * b / (k1 * k2);
    let a2 = b * b / (k1 * k2);
    QuadraticWeights {
        a0,
        a1,
        a2,
        expanded: [
            a0 * a0,
            2.0 * a0 * a1,
            a1 * a1 + 2.0 * a0 * a2,
            2.0 * a1 * a2,
            a2 * a2,
        ],
    }
}

fn check_herald_domain(y: f64, b: f64) -> Result<()> {
    if !y.is_finite() || y <= 0.0 || y >= 0.5 {
        return Err(Error::Domain(format!(
            "squeezing parameter must lie in (0, 0.5), got {y}"
        )));
    }
    if !b.is_finite() || b <= 0.0 {
        return Err(Error::Domain(format!(
            "beam-splitter parameter B must be positive, got {b}"
        )));
    }
    Ok(())
}

/// Heralding amplitude of a single splitter fed with one ancilla photon when
/// k photons are detected:
///
/// ```text
/// c_k(y, B) = √(B/(1+B))                                if k = 0
///           = (-1)^(k+1)·(yB)^((k-1)/2)·k/√(k!·(1+B))   if k ≥ 1
/// ```
///
/// The fractional power takes the positive real root; only squares of these
/// amplitudes enter probabilities.
pub fn herald_amplitude(k: usize, y: f64, b: f64) -> Result<f64> {
    check_herald_domain(y, b)?;
    if k == 0 {
        return Ok((b / (1.0 + b)).sqrt());
    }
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let power = (0.5 * (k as f64 - 1.0) * (y * b).ln()).exp();
    Ok(sign * power * k as f64 / ((ln_factorial(k).exp()) * (1.0 + b)).sqrt())
}

/// Unnormalized amplitude c̃_j at photon number j of a pattern's heralded
/// state; j must share the pattern parity. Callers wanting whole states use
/// [`conditional_state`]; this is the raw unified term both that state and
/// the normalization factors are made of.
pub fn unnormalized_amplitude(j: usize, p: HeraldPattern, y2: f64, b: f64) -> f64 {
    let w = quadratic_weights(p, b);
    amplitude_term(j, p, y2, &w)
}

/// As [`unnormalized_amplitude`] with the weights precomputed. Evaluated in
/// log space so factorial growth never overflows even though the amplitude
/// itself stays small.
fn amplitude_term(j: usize, p: HeraldPattern, y2: f64, w: &QuadraticWeights) -> f64 {
    debug_assert!(p.parity().admits(j));
    let nu = (j + p.total() - 2) / 2;
    let magnitude = (0.5 * j as f64 * y2.ln() + ln_factorial(2 * nu)
        - ln_factorial(nu)
        - 0.5 * ln_factorial(j))
    .exp();
    magnitude * w.eval(j)
}

fn unnormalized_state(
    p: HeraldPattern,
    y2: f64,
    b: f64,
    policy: CutoffPolicy,
) -> Result<FockVector> {
    check_herald_domain(y2, b)?;
    let weights = quadratic_weights(p, b);
    build_parity_state(p.parity(), policy, |j| amplitude_term(j, p, y2, &weights))
}

/// Normalized heralded state for the pattern at (y₂, B), with the global sign
/// fixed so the lowest significant amplitude is positive.
pub fn conditional_state(
    p: HeraldPattern,
    y2: f64,
    b: f64,
    policy: CutoffPolicy,
) -> Result<FockVector> {
    let mut state = unnormalized_state(p, y2, b, policy)?;
    state.normalize()?;
    state.canonicalize_sign();
    Ok(state)
}

/// Normalization factor G by direct summation of the squared unnormalized
/// amplitudes over the pattern's parity class.
pub fn normalization_direct(
    p: HeraldPattern,
    y2: f64,
    b: f64,
    policy: CutoffPolicy,
) -> Result<f64> {
    Ok(unnormalized_state(p, y2, b, policy)?.norm_sq())
}

fn normalization_series_at_degree(
    p: HeraldPattern,
    y2: f64,
    w: &QuadraticWeights,
    degree: usize,
) -> f64 {
    let k_total = p.total();
    let z = z_series(degree);
    // Constant moment: A₀·Z^(K-2)(y₂).
    let mut g = w.expanded[0] * z.differentiate(k_total - 2).evaluate(y2);
    // Higher moments: A_l·(y₂ d/dy₂)^(l-1)(y₂·Z^(K-1)(y₂)), l = 1..4.
    let bracket: TruncatedSeries = z.differentiate(k_total - 1).shift_multiply_x();
    for (l, &coeff) in w.expanded.iter().enumerate().skip(1) {
        g += coeff * bracket.euler_apply(l - 1).evaluate(y2);
    }
    g
}

/// Normalization factor G evaluated through the derivative polynomial of
/// Z(y₂) = 1/√(1-4y₂²), the independent route checked against
/// [`normalization_direct`].
///
/// The series degree is doubled from [`Z_DEGREE_DEFAULT`] until the value
/// stabilizes; failure to stabilize below [`Z_DEGREE_MAX`] (possible only as
/// y₂ approaches 0.5) reports a convergence error rather than a wrong value.
pub fn normalization_series(p: HeraldPattern, y2: f64, b: f64) -> Result<f64> {
    check_herald_domain(y2, b)?;
    let w = quadratic_weights(p, b);
    let mut degree = Z_DEGREE_DEFAULT;
    let mut value = normalization_series_at_degree(p, y2, &w, degree);
    while degree < Z_DEGREE_MAX {
        degree = (degree * 2).min(Z_DEGREE_MAX);
        let refined = normalization_series_at_degree(p, y2, &w, degree);
        if (refined - value).abs() <= Z_DEGREE_REL_TOL * refined.abs() {
            return Ok(refined);
        }
        value = refined;
    }
    Err(Error::Convergence(format!(
        "Z-series for pattern ({}, {}) at y2 = {y2} not stable at degree {Z_DEGREE_MAX}",
        p.k1, p.k2
    )))
}

/// Fixed-degree variant of the series route, exposed for convergence studies.
pub fn normalization_series_at(p: HeraldPattern, y2: f64, b: f64, degree: usize) -> Result<f64> {
    check_herald_domain(y2, b)?;
    let w = quadratic_weights(p, b);
    Ok(normalization_series_at_degree(p, y2, &w, degree))
}

/// Probability of detecting the pattern:
/// P = c²_{k1}(y₁, B) · c²_{k2}(y₂, B) · G(y₂, B) / cosh(s).
///
/// The first splitter's amplitude sees the once-reduced squeezing y₁, the
/// second the twice-reduced y₂; the prefactor uses the squeezing amplitude s,
/// never its decibel value.
pub fn herald_probability(p: HeraldPattern, cascade: &CascadeParams) -> Result<f64> {
    let b = cascade.bs().b();
    let c1 = herald_amplitude(p.k1, cascade.y1(), b)?;
    let c2 = herald_amplitude(p.k2, cascade.y2(), b)?;
    let g = normalization_direct(p, cascade.y2(), b, CutoffPolicy::Auto)?;
    Ok(c1 * c1 * c2 * c2 * g / cascade.squeeze().s().cosh())
}

//! Truncated one-variable power series.
//!
//! Carries the generating function Z(x) = 1/√(1-4x²) = Σ C(2n,n)·x^(2n) and
//! the operations needed to assemble normalization factors from its high-order
//! derivatives: termwise differentiation, multiplication by x, and the Euler
//! operator x·d/dx.

/// Polynomial c₀ + c₁x + … + c_D·x^D with no hidden tail: evaluation is the
/// finite Horner sum of exactly these coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    /// Wrap a coefficient list c₀..c_D. An empty list is the zero series.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![0.0] } else { coeffs };
        TruncatedSeries { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        TruncatedSeries { coeffs: vec![0.0] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Horner evaluation at `x`.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Termwise m-fold derivative; the degree drops by exactly m. Orders past
    /// the degree yield the zero series.
    pub fn differentiate(&self, order: usize) -> TruncatedSeries {
        if order == 0 {
            return self.clone();
        }
        if order > self.degree() {
            return TruncatedSeries::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - order);
        for k in order..self.coeffs.len() {
            // Falling factorial k·(k-1)···(k-order+1).
            let mut fall = 1.0;
            for i in 0..order {
                fall *= (k - i) as f64;
            }
            out.push(self.coeffs[k] * fall);
        }
        TruncatedSeries::new(out)
    }

    /// Apply the Euler operator x·d/dx `times` times: cₖ ↦ k^times·cₖ.
    /// Preserves the degree.
    pub fn euler_apply(&self, times: usize) -> TruncatedSeries {
        if times == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * (k as f64).powi(times as i32))
            .collect();
        TruncatedSeries::new(coeffs)
    }

    /// Multiply by x: cₖ moves to x^(k+1); the degree grows by one.
    pub fn shift_multiply_x(&self) -> TruncatedSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend_from_slice(&self.coeffs);
        TruncatedSeries::new(coeffs)
    }
}

/// Maclaurin series of Z(x) = 1/√(1-4x²) up to x^degree: the coefficient of
/// x^(2n) is the central binomial C(2n,n), odd coefficients vanish.
pub fn z_series(degree: usize) -> TruncatedSeries {
    let mut coeffs = vec![0.0; degree + 1];
    // C(2(n+1), n+1) = C(2n,n)·2(2n+1)/(n+1).
    let mut central = 1.0_f64;
    let mut n = 0usize;
    loop {
        let idx = 2 * n;
        if idx > degree {
            break;
        }
        coeffs[idx] = central;
        central *= 2.0 * (2.0 * n as f64 + 1.0) / (n as f64 + 1.0);
        n += 1;
    }
    TruncatedSeries::new(coeffs)
}

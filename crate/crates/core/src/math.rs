//! Log-domain factorial and binomial helpers.
//!
//! Fock amplitudes are built from ratios like √((2n)!)/n! that overflow f64
//! long before the photon-number cutoffs used here, so every factor is
//! assembled in log space and exponentiated once per term.

use std::sync::OnceLock;

/// Largest n for which n! is representable in an f64.
const EXACT_LIMIT: usize = 170;

fn ln_fact_table() -> &'static [f64; EXACT_LIMIT + 1] {
    static TABLE: OnceLock<[f64; EXACT_LIMIT + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; EXACT_LIMIT + 1];
        let mut fact = 1.0_f64;
        for (n, slot) in table.iter_mut().enumerate().skip(1) {
            fact *= n as f64;
            *slot = fact.ln();
        }
        table
    })
}

/// ln(n!) — exact table below 171, Stirling series above.
pub fn ln_factorial(n: usize) -> f64 {
    if n <= EXACT_LIMIT {
        return ln_fact_table()[n];
    }
    // Stirling with three correction terms; absolute error < 1e-16 for n > 170.
    let x = n as f64;
    let x2 = x * x;
    x * x.ln() - x + 0.5 * (std::f64::consts::TAU * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x2 * x2 * x)
}

/// ln C(n, k). Requires k ≤ n.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n, "ln_binomial: k = {k} exceeds n = {n}");
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// C(n, k) as f64, evaluated through the log route; 0 when k > n.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    ln_binomial(n, k).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials_exact() {
        let mut fact = 1.0_f64;
        assert_eq!(ln_factorial(0), 0.0);
        for n in 1..=20 {
            fact *= n as f64;
            assert!((ln_factorial(n) - fact.ln()).abs() < 1e-13);
        }
    }

    #[test]
    fn stirling_joins_table_smoothly() {
        // ln(171!) = ln(170!) + ln(171) crosses the table/Stirling boundary.
        let via_table = ln_factorial(170) + (171.0_f64).ln();
        assert!((ln_factorial(171) - via_table).abs() < 1e-10);
        let via_next = ln_factorial(171) + (172.0_f64).ln();
        assert!((ln_factorial(172) - via_next).abs() < 1e-10);
    }

    #[test]
    fn binomial_values() {
        assert!((binomial(4, 2) - 6.0).abs() < 1e-12);
        assert!((binomial(10, 3) - 120.0).abs() < 1e-9);
        assert_eq!(binomial(3, 5), 0.0);
        // C(60, 30) = 118264581564861424; log-route relative error stays tiny.
        let exact = 118_264_581_564_861_424.0_f64;
        assert!((binomial(60, 30) - exact).abs() / exact < 1e-12);
    }
}

//! Expected size of the offset encoding on random inputs.

/// `S(n) = log₂ n + 2(n+1) Σ_{i=1}^{n−1} log₂ i / ((i+1)(i+2))`, `S(0) = 0`.
pub fn expected_offset_bits(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let sum: f64 = (1..n).map(|i| term(i as f64)).sum();
    (n as f64).log2() + (n as f64 + 1.0) * sum
}

/// The same quantity from `S(n) = log₂ n + (2/n) Σ_{i<n} S(i)`.
pub fn expected_offset_bits_recurrence(n: usize) -> Vec<f64> {
    let mut s = vec![0.0; n + 1];
    let mut prefix = 0.0;
    for k in 1..=n {
        prefix += s[k - 1];
        s[k] = (k as f64).log2() + 2.0 * prefix / k as f64;
    }
    s
}

fn term(i: f64) -> f64 {
    2.0 * i.log2() / ((i + 1.0) * (i + 2.0))
}

/// Partial sum `2 Σ_{k=1}^{terms} log₂ k / ((k+1)(k+2))`, Kahan-compensated.
pub fn constant_c(terms: u64) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for k in 1..=terms {
        let y = term(k as f64) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

//! Composite Simpson rules on uniform grids.

/// Composite Simpson integral of uniformly spaced samples.
///
/// `values.len() - 1` must be even and at least 2.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    debug_assert!(n >= 2 && n.is_multiple_of(2), "simpson needs an even number of intervals");
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (values[0] + values[n] + 4.0 * odd + 2.0 * even)
}

/// Simpson integral of the pointwise product of two sample arrays.
pub fn simpson_product(a: &[f64], b: &[f64], h: f64) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len() - 1;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let v = a[i] * b[i];
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (a[0] * b[0] + a[n] * b[n] + 4.0 * odd + 2.0 * even)
}

/// Running integrals `F[i] = ∫_{x_0}^{x_i} g`.
///
/// Each interval gets the four-point cubic rule
/// `h/24 (-g_{i-1} + 13 g_i + 13 g_{i+1} - g_{i+2})`, one-sided
/// `h/24 (9 g_0 + 19 g_1 - 5 g_2 + g_3)` at the two ends. Every node carries
/// the same fourth-order error, so differences of `F` stay smooth (mixing
/// Simpson panels with a lower-order rule on odd nodes leaves an even/odd
/// ripple that second differences amplify).
pub fn cumulative_integral(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + 0.5 * h * (values[i - 1] + values[i]);
        }
        return out;
    }
    let g = values;
    let c = h / 24.0;
    for i in 0..n - 1 {
        let piece = if i == 0 {
            9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]
        } else if i == n - 2 {
            9.0 * g[i + 1] + 19.0 * g[i] - 5.0 * g[i - 1] + g[i - 2]
        } else {
            -g[i - 1] + 13.0 * (g[i] + g[i + 1]) - g[i + 2]
        };
        out[i + 1] = out[i] + c * piece;
    }
    out
}

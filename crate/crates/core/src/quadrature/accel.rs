//! Acceleration of slowly converging partial-sum sequences.

/// Levin u-transform of the partial sums `s`, whose first element has
/// absolute index `n0` in the underlying series. Uses remainder estimates
/// ω_n = (n + 1) a_n with a_n = s_n − s_{n−1}. Returns `None` when a term
/// vanishes or the denominator collapses.
pub fn levin_u(s: &[f64], terms: &[f64], n0: usize) -> Option<f64> {
    debug_assert_eq!(s.len(), terms.len());
    let k = s.len().checked_sub(1)?;
    if k == 0 {
        return Some(s[0]);
    }
    let beta = 1.0;
    let nk = (n0 + k) as f64 + beta;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut binom = 1.0;
    for j in 0..=k {
        let a = terms[j];
        if a == 0.0 || !a.is_finite() {
            return None;
        }
        let nj = (n0 + j) as f64 + beta;
        let omega = nj * a;
        let w = binom * (nj / nk).powi(k as i32 - 1) / omega;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        num += sign * w * s[j];
        den += sign * w;
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    if den == 0.0 || !den.is_finite() {
        return None;
    }
    let v = num / den;
    v.is_finite().then_some(v)
}

/// Repeated averaging of neighbouring partial sums, which is the Euler
/// transform for an alternating series.
pub fn euler_average(s: &[f64]) -> Option<f64> {
    if s.is_empty() {
        return None;
    }
    let mut row = s.to_vec();
    while row.len() > 1 {
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    Some(row[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partial_sums(terms: &[f64]) -> Vec<f64> {
        terms
            .iter()
            .scan(0.0, |acc, &t| {
                *acc += t;
                Some(*acc)
            })
            .collect()
    }

    #[test]
    fn alternating_harmonic_to_ln2() {
        let terms: Vec<f64> = (0..12).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 } / (n + 1) as f64).collect();
        let s = partial_sums(&terms);
        let v = levin_u(&s, &terms, 0).unwrap();
        assert!((v - std::f64::consts::LN_2).abs() < 1e-10, "{v}");
    }

    #[test]
    fn euler_on_leibniz() {
        let terms: Vec<f64> = (0..30).map(|n| if n % 2 == 0 { 4.0 } else { -4.0 } / (2 * n + 1) as f64).collect();
        let s = partial_sums(&terms);
        let v = euler_average(&s[10..]).unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-6, "{v}");
    }

    #[test]
    fn zero_term_declines() {
        assert!(levin_u(&[1.0, 1.0], &[1.0, 0.0], 0).is_none());
    }
}

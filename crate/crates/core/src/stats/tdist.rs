//! Student's t distribution via the regularized incomplete beta function.

use libm::{exp, fabs, lgamma, log};

const MAX_ITER: usize = 500;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// Continued fraction for the incomplete beta function (modified Lentz).
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if fabs(d) < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if fabs(d) < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if fabs(d) < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let step = d * c;
        h *= step;
        if fabs(step - 1.0) < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)` for `a, b > 0`, `x` in `[0, 1]`.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let front = exp(lgamma(a + b) - lgamma(a) - lgamma(b) + a * log(x) + b * log(1.0 - x));
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// `P(T <= t)` for Student's t with `df` degrees of freedom.
pub fn student_t_cdf(t: f64, df: f64) -> f64 {
    let tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    if t >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Inverse of [`student_t_cdf`] for `p` in `(0, 1)`, found by bisection.
pub fn student_t_quantile(p: f64, df: f64) -> f64 {
    assert!(
        p > 0.0 && p < 1.0 && df > 0.0,
        "quantile needs 0 < p < 1 and df > 0"
    );
    if p == 0.5 {
        return 0.0;
    }
    if p < 0.5 {
        return -student_t_quantile(1.0 - p, df);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while student_t_cdf(hi, df) < p {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if student_t_cdf(mid, df) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{ContinuousCDF, StudentsT};

    // Published two-sided 95% critical values.
    #[test]
    fn table_values() {
        let cases = [
            (1.0, 12.706204736174698),
            (2.0, 4.302652729749464),
            (3.0, 3.182446305284263),
            (5.0, 2.570581835636314),
            (10.0, 2.228138851986274),
            (30.0, 2.042272456301238),
        ];
        for (df, expected) in cases {
            let q = student_t_quantile(0.975, df);
            assert!((q - expected).abs() < 1e-8, "df {df}: {q} vs {expected}");
        }
    }

    #[test]
    fn agrees_with_statrs() {
        for df in [1.0, 2.5, 4.0, 7.0, 13.0, 50.0, 200.0] {
            let reference = StudentsT::new(0.0, 1.0, df).unwrap();
            for p in [0.6, 0.9, 0.95, 0.975, 0.995] {
                let ours = student_t_quantile(p, df);
                let theirs = reference.inverse_cdf(p);
                assert!(
                    (ours - theirs).abs() < 1e-8 * theirs.max(1.0),
                    "df {df} p {p}"
                );
            }
            for t in [-3.0, -0.5, 0.0, 1.2, 4.0] {
                assert!((student_t_cdf(t, df) - reference.cdf(t)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn symmetric() {
        let q = student_t_quantile(0.025, 4.0);
        assert!((q + student_t_quantile(0.975, 4.0)).abs() < 1e-12);
    }

    #[test]
    fn incomplete_beta_closed_forms() {
        // I_x(1, 1) = x; I_x(a, 1) = x^a
        for x in [0.1, 0.37, 0.5, 0.9] {
            assert!((regularized_incomplete_beta(1.0, 1.0, x) - x).abs() < 1e-14);
            assert!((regularized_incomplete_beta(3.0, 1.0, x) - x * x * x).abs() < 1e-14);
        }
    }
}

//! Pearson correlation between per-class member counts.

use libm::sqrt;

use super::StatsError;
use crate::graphs::DegreeSeries;

/// Pearson product-moment correlation, `None` when either side is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub labels: [&'static str; 3],
    /// Symmetric, unit diagonal.
    pub values: [[f64; 3]; 3],
}

/// 3x3 Pearson matrix over methods, fields and constructors, zeros included.
pub fn correlation_matrix(
    methods: &DegreeSeries,
    fields: &DegreeSeries,
    constructors: &DegreeSeries,
) -> Result<CorrelationMatrix, StatsError> {
    let labels = ["methods", "fields", "constructors"];
    let series = [methods, fields, constructors];
    let names_match = |s: &DegreeSeries| {
        s.counts.len() == methods.counts.len()
            && s.counts
                .iter()
                .zip(&methods.counts)
                .all(|(a, b)| a.0 == b.0)
    };
    if !series.iter().all(|s| names_match(s)) {
        return Err(StatsError::MismatchedSeries);
    }
    if methods.counts.len() < 2 {
        return Err(StatsError::ZeroVariance(labels[0]));
    }
    let columns: [alloc::vec::Vec<f64>; 3] = series.map(|s| s.values().map(|v| v as f64).collect());
    for (col, label) in columns.iter().zip(labels) {
        if col.iter().all(|&v| v == col[0]) {
            return Err(StatsError::ZeroVariance(label));
        }
    }
    let mut values = [[1.0; 3]; 3];
    for i in 0..3 {
        for j in 0..i {
            let r = pearson(&columns[i], &columns[j]).expect("variance checked above");
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix { labels, values })
}

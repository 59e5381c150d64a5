//! Power-law fitting by least squares on exponentially bucketed log-log data,
//! plus the member-count correlation matrix.
//!
//! A distribution `y = C x^(-a)` is a line of slope `-a` in log-log space.
//! Values are grouped into buckets of geometrically growing width, the
//! log10 of each non-empty bucket's frequency is regressed on the log10 of
//! its midpoint, and the exponent is the negated slope. Under density
//! normalization the frequency is the count divided by the bucket width,
//! which makes the slope estimate `a` itself rather than `a - 1`.

mod bucket;
mod corr;
mod tdist;

use alloc::vec::Vec;
use core::fmt;
use libm::sqrt;

pub use bucket::{bucket, Bucket, BucketOptions, BucketedHistogram, Midpoint, Normalization};
pub use corr::{correlation_matrix, pearson, CorrelationMatrix};
pub use tdist::{regularized_incomplete_beta, student_t_cdf, student_t_quantile};

use crate::graphs::DegreeSeries;

pub const DEFAULT_MIN_BUCKETS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub enum StatsError {
    EmptyInput,
    /// Zero values must be removed before bucketing.
    ZeroValue,
    InvalidBase(f64),
    /// Fewer than three distinct x values; slope or its error is undefined.
    DegenerateFit,
    ZeroVariance(&'static str),
    MismatchedSeries,
}

impl fmt::Display for StatsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatsError::EmptyInput => f.write_str("no values to bucket"),
            StatsError::ZeroValue => f.write_str("zero value passed to bucketing"),
            StatsError::InvalidBase(b) => write!(f, "bucket base must be finite and > 1, got {b}"),
            StatsError::DegenerateFit => {
                f.write_str("regression needs at least three distinct midpoints")
            }
            StatsError::ZeroVariance(label) => write!(f, "`{label}` has zero variance"),
            StatsError::MismatchedSeries => f.write_str("series are not over the same classes"),
        }
    }
}

impl core::error::Error for StatsError {}

/// Simple linear regression `y = intercept + slope * x` with a two-sided
/// confidence interval on the slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ols {
    pub n: usize,
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub slope_se: f64,
    /// `t(1 - (1 - level) / 2, n - 2)`
    pub t_quantile: f64,
    pub slope_lower: f64,
    pub slope_upper: f64,
    /// Squared Pearson correlation of x and y.
    pub r_squared: f64,
}

/// Ordinary least squares at confidence `level` (e.g. 0.95).
pub fn ols(xs: &[f64], ys: &[f64], level: f64) -> Result<Ols, StatsError> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 3 {
        return Err(StatsError::DegenerateFit);
    }
    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let mean_y = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(StatsError::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum::<f64>();
    let df = nf - 2.0;
    let slope_se = sqrt(sse / df / sxx);
    let t_quantile = student_t_quantile(1.0 - (1.0 - level) / 2.0, df);
    // A constant y is fitted exactly by the horizontal line.
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).min(1.0)
    };
    Ok(Ols {
        n,
        slope,
        intercept,
        slope_se,
        t_quantile,
        slope_lower: slope - t_quantile * slope_se,
        slope_upper: slope + t_quantile * slope_se,
        r_squared,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    /// `a` in `y = C x^(-a)`.
    pub exponent: f64,
    /// `log10 C`.
    pub intercept: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub r_squared: f64,
    pub std_error: f64,
    pub buckets_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitResult {
    Fitted(PowerLawFit),
    InsufficientData { buckets_used: usize },
}

impl FitResult {
    pub fn fit(&self) -> Option<&PowerLawFit> {
        match self {
            FitResult::Fitted(f) => Some(f),
            FitResult::InsufficientData { .. } => None,
        }
    }

    pub fn buckets_used(&self) -> usize {
        match self {
            FitResult::Fitted(f) => f.buckets_used,
            FitResult::InsufficientData { buckets_used } => *buckets_used,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            FitResult::Fitted(_) => "ok",
            FitResult::InsufficientData { .. } => "insufficient_data",
        }
    }
}

/// Fits a power law to the non-empty buckets of `histogram` with a 95%
/// interval on the exponent.
pub fn fit(histogram: &BucketedHistogram, min_buckets: usize) -> Result<FitResult, StatsError> {
    let points = histogram.log_points();
    if points.len() < min_buckets {
        return Ok(FitResult::InsufficientData {
            buckets_used: points.len(),
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
    let o = ols(&xs, &ys, 0.95)?;
    Ok(FitResult::Fitted(PowerLawFit {
        exponent: -o.slope,
        intercept: o.intercept,
        ci_lower: -o.slope_upper,
        ci_upper: -o.slope_lower,
        r_squared: o.r_squared,
        std_error: o.slope_se,
        buckets_used: o.n,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub bucket: BucketOptions,
    pub min_buckets: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            bucket: BucketOptions::default(),
            min_buckets: DEFAULT_MIN_BUCKETS,
        }
    }
}

/// Drops zero counts, buckets the rest and fits. Sparse series come back as
/// [`FitResult::InsufficientData`]; the only error is an invalid base.
pub fn fit_series(series: &DegreeSeries, options: &FitOptions) -> Result<FitResult, StatsError> {
    let values: Vec<u64> = series.values().filter(|&v| v > 0).collect();
    fit_values(&values, options)
}

/// [`fit_series`] over bare values; zeros are dropped.
pub fn fit_values(values: &[u64], options: &FitOptions) -> Result<FitResult, StatsError> {
    let positive: Vec<u64> = values.iter().copied().filter(|&v| v > 0).collect();
    if positive.is_empty() {
        if !(options.bucket.base.is_finite() && options.bucket.base > 1.0) {
            return Err(StatsError::InvalidBase(options.bucket.base));
        }
        return Ok(FitResult::InsufficientData { buckets_used: 0 });
    }
    let histogram = bucket(&positive, options.bucket)?;
    match fit(&histogram, options.min_buckets) {
        Err(StatsError::DegenerateFit) => Ok(FitResult::InsufficientData {
            buckets_used: histogram.non_empty().count(),
        }),
        other => other,
    }
}

//! Exponential (logarithmic) bucketing of positive integer values.

use alloc::vec::Vec;
use libm::{ceil, fabs, log10, pow, round, sqrt};

use super::StatsError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Count divided by bucket width.
    #[default]
    Density,
    /// Plain count.
    Raw,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Midpoint {
    /// `sqrt(lower * upper)`
    #[default]
    Geometric,
    /// `(lower + upper) / 2`
    Arithmetic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucketOptions {
    pub base: f64,
    pub normalization: Normalization,
    pub midpoint: Midpoint,
}

impl Default for BucketOptions {
    fn default() -> Self {
        BucketOptions {
            base: 2.0,
            normalization: Normalization::Density,
            midpoint: Midpoint::Geometric,
        }
    }
}

/// Integer interval `[lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bucket {
    pub lower: u64,
    pub upper: u64,
    pub count: u64,
    pub midpoint: f64,
    pub frequency: f64,
}

impl Bucket {
    pub fn width(&self) -> u64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BucketedHistogram {
    /// Contiguous, covering `[1, max value]`; empty buckets included.
    pub buckets: Vec<Bucket>,
    pub base: f64,
    pub normalization: Normalization,
}

impl BucketedHistogram {
    /// Buckets that take part in fitting.
    pub fn non_empty(&self) -> impl Iterator<Item = &Bucket> {
        self.buckets.iter().filter(|b| b.count > 0)
    }

    /// `(log10 midpoint, log10 frequency)` of every non-empty bucket.
    pub fn log_points(&self) -> Vec<(f64, f64)> {
        self.non_empty()
            .map(|b| (log10(b.midpoint), log10(b.frequency)))
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.buckets.iter().map(|b| b.count).sum()
    }
}

/// `ceil(x)` that treats values within rounding noise of an integer as that
/// integer, so `pow(10, 3)` landing on `1000.0000000000001` still gives 1000.
fn ceil_bound(x: f64) -> u64 {
    let r = round(x);
    let v = if fabs(x - r) <= 1e-9 * x.max(1.0) {
        r
    } else {
        ceil(x)
    };
    if v >= u64::MAX as f64 {
        u64::MAX
    } else {
        v as u64
    }
}

/// Integer bucket bounds `ceil(base^k)` for k = 0, 1, ... until the last
/// bucket contains `max`. Buckets that would hold no integer are dropped.
pub(crate) fn bucket_bounds(base: f64, max: u64) -> Vec<u64> {
    let mut bounds = alloc::vec![1u64];
    let mut k = 1i32;
    while *bounds.last().unwrap() <= max {
        let next = ceil_bound(pow(base, k as f64));
        if next > *bounds.last().unwrap() {
            bounds.push(next);
        }
        if next == u64::MAX {
            break;
        }
        k += 1;
    }
    bounds
}

/// Groups positive values into buckets `[base^k, base^(k+1))`.
pub fn bucket(values: &[u64], options: BucketOptions) -> Result<BucketedHistogram, StatsError> {
    if !(options.base.is_finite() && options.base > 1.0) {
        return Err(StatsError::InvalidBase(options.base));
    }
    if values.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    if values.contains(&0) {
        return Err(StatsError::ZeroValue);
    }
    let max = *values.iter().max().unwrap();
    let bounds = bucket_bounds(options.base, max);
    let mut counts = alloc::vec![0u64; bounds.len() - 1];
    for &v in values {
        // index of the last bound <= v
        let k = bounds.partition_point(|&b| b <= v) - 1;
        counts[k] += 1;
    }
    let buckets = bounds
        .windows(2)
        .zip(counts)
        .map(|(w, count)| {
            let (lower, upper) = (w[0], w[1]);
            let midpoint = match options.midpoint {
                Midpoint::Geometric => sqrt(lower as f64 * upper as f64),
                Midpoint::Arithmetic => (lower as f64 + upper as f64) / 2.0,
            };
            let frequency = match options.normalization {
                Normalization::Density => count as f64 / (upper - lower) as f64,
                Normalization::Raw => count as f64,
            };
            Bucket {
                lower,
                upper,
                count,
                midpoint,
                frequency,
            }
        })
        .collect();
    Ok(BucketedHistogram {
        buckets,
        base: options.base,
        normalization: options.normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn triples(h: &BucketedHistogram) -> Vec<(u64, u64, u64)> {
        h.buckets
            .iter()
            .map(|b| (b.lower, b.upper, b.count))
            .collect()
    }

    #[test]
    fn fibonacci_values() {
        let h = bucket(&[1, 1, 2, 3, 5, 8], BucketOptions::default()).unwrap();
        assert_eq!(
            triples(&h),
            vec![(1, 2, 2), (2, 4, 2), (4, 8, 1), (8, 16, 1)]
        );
        let freq: Vec<f64> = h.buckets.iter().map(|b| b.frequency).collect();
        assert_eq!(freq, vec![2.0, 1.0, 0.25, 0.125]);
    }

    #[test]
    fn single_value() {
        let h = bucket(&[1], BucketOptions::default()).unwrap();
        assert_eq!(triples(&h), vec![(1, 2, 1)]);
        assert_eq!(h.buckets[0].midpoint, sqrt(2.0));
    }

    #[test]
    fn gaps_are_empty_buckets() {
        let h = bucket(&[1, 9], BucketOptions::default()).unwrap();
        assert_eq!(
            triples(&h),
            vec![(1, 2, 1), (2, 4, 0), (4, 8, 0), (8, 16, 1)]
        );
        assert_eq!(h.non_empty().count(), 2);
    }

    #[test]
    fn fractional_base_skips_integerless_buckets() {
        // 1.5^k: 1, 1.5, 2.25, 3.375, 5.06, 7.59
        assert_eq!(bucket_bounds(1.5, 6), vec![1, 2, 3, 4, 6, 8]);
        // 1.1^1 and 1.1^2 both round up to 2
        assert_eq!(bucket_bounds(1.1, 2)[..3], [1, 2, 3]);
        assert_eq!(bucket_bounds(10.0, 1000), vec![1, 10, 100, 1000, 10000]);
    }

    #[test]
    fn raw_and_arithmetic() {
        let opts = BucketOptions {
            normalization: Normalization::Raw,
            midpoint: Midpoint::Arithmetic,
            ..Default::default()
        };
        let h = bucket(&[2, 3, 3], opts).unwrap();
        assert_eq!(h.buckets[1].frequency, 3.0);
        assert_eq!(h.buckets[1].midpoint, 3.0);
    }

    #[test]
    fn errors() {
        let d = BucketOptions::default();
        assert_eq!(bucket(&[], d), Err(StatsError::EmptyInput));
        assert_eq!(bucket(&[0, 1], d), Err(StatsError::ZeroValue));
        let bad = BucketOptions { base: 1.0, ..d };
        assert_eq!(bucket(&[1], bad), Err(StatsError::InvalidBase(1.0)));
    }

    /// Naive oracle: for each value find k with base^k <= v < base^(k+1) by
    /// scanning k upward, then return the non-zero per-k counts in order.
    pub(crate) fn brute_force(values: &[u64], base: f64) -> Vec<u64> {
        let ge = |v: u64, k: i32| v as f64 >= pow(base, k as f64) * (1.0 - 1e-12);
        let mut per_k: Vec<u64> = Vec::new();
        for &v in values {
            let mut k = 0;
            while ge(v, k + 1) {
                k += 1;
            }
            if per_k.len() <= k as usize {
                per_k.resize(k as usize + 1, 0);
            }
            per_k[k as usize] += 1;
        }
        per_k.into_iter().filter(|&c| c > 0).collect()
    }

    proptest! {
        #[test]
        fn conservation_and_partition(
            values in prop::collection::vec(1u64..5000, 1..300),
            base in 1.05f64..6.0,
        ) {
            let h = bucket(&values, BucketOptions { base, ..Default::default() }).unwrap();
            prop_assert_eq!(h.total(), values.len() as u64);
            prop_assert_eq!(h.buckets[0].lower, 1);
            for w in h.buckets.windows(2) {
                prop_assert_eq!(w[0].upper, w[1].lower);
            }
            let last = h.buckets.last().unwrap();
            prop_assert!(*values.iter().max().unwrap() < last.upper);
            let counts: Vec<u64> = h.non_empty().map(|b| b.count).collect();
            prop_assert_eq!(counts, brute_force(&values, base));
        }
    }
}

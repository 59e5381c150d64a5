//! Report assembly and text renderings.
//!
//! Numbers are written with `{:.4}` (or `{:.6}` for plot data), which never
//! depends on locale.

use std::fmt::Write as _;

use couplaw_core::graphs::{
    all_series, build_graphs, CouplingGraphs, CouplingType, GraphOptions, Relationship,
};
use couplaw_core::robustness::RemovalExperiment;
use couplaw_core::stats::bucket;
use couplaw_core::stats::CorrelationMatrix;
use couplaw_core::stats::{fit_series, FitOptions, FitResult, StatsError};
use couplaw_core::Corpus;
use rayon::prelude::*;

pub const CSV_HEADER: &str = "relationship,exponent,lower95,upper95,r2,status,buckets";

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub relationship: Relationship,
    pub result: FitResult,
    /// Positive values of the series, the input to bucketing.
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub class_count: usize,
    pub edge_counts: [(CouplingType, usize); 5],
    pub rows: Vec<ReportRow>,
    pub options: FitOptions,
}

/// Builds the graphs and fits all twelve series, in report order.
pub fn analyze(
    corpus: &Corpus,
    graph_options: GraphOptions,
    options: FitOptions,
) -> Result<(Report, CouplingGraphs), StatsError> {
    let graphs = build_graphs(corpus, graph_options);
    let rows = all_series(&graphs)
        .into_par_iter()
        .map(|series| {
            let result = fit_series(&series, &options)?;
            Ok(ReportRow {
                relationship: series.relationship,
                values: series.values().filter(|&v| v > 0).collect(),
                result,
            })
        })
        .collect::<Result<Vec<_>, StatsError>>()?;
    let edge_counts = CouplingType::ALL.map(|ty| (ty, graphs.edge_count(ty)));
    Ok((
        Report {
            class_count: graphs.class_count(),
            edge_counts,
            rows,
            options,
        },
        graphs,
    ))
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let label = row.relationship.label();
            match row.result.fit() {
                Some(f) => writeln!(
                    out,
                    "{label},{:.4},{:.4},{:.4},{:.4},ok,{}",
                    f.exponent, f.ci_lower, f.ci_upper, f.r_squared, f.buckets_used
                ),
                None => writeln!(
                    out,
                    "{label},,,,,{},{}",
                    row.result.status(),
                    row.result.buckets_used()
                ),
            }
            .unwrap();
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| Relationship | Exponent | Lower 95% | Upper 95% | r² |\n");
        out.push_str("|---|---:|---:|---:|---:|\n");
        for row in &self.rows {
            let label = row.relationship.label();
            match row.result.fit() {
                Some(f) => writeln!(
                    out,
                    "| {label} | {:.4} | {:.4} | {:.4} | {:.4} |",
                    f.exponent, f.ci_lower, f.ci_upper, f.r_squared
                ),
                None => writeln!(out, "| {label} | insufficient data | | | |"),
            }
            .unwrap();
        }
        out
    }

    /// Class count and per-type edge counts, one `key=value` per line.
    pub fn metadata(&self) -> String {
        let mut out = format!("classes={}\n", self.class_count);
        for (ty, n) in self.edge_counts {
            writeln!(out, "edges.{}={n}", ty.name()).unwrap();
        }
        out
    }

    /// `(file stem, contents)` of every plot-data file. Each starts with a
    /// `#` line holding the fit, followed by
    /// `log10_midpoint<TAB>log10_frequency` rows of the non-empty buckets.
    pub fn plot_files(&self) -> Vec<(&'static str, String)> {
        self.rows
            .iter()
            .map(|row| {
                let mut out = String::new();
                match row.result.fit() {
                    Some(f) => writeln!(
                        out,
                        "# status=ok exponent={:.6} intercept={:.6} lower95={:.6} upper95={:.6} r2={:.6} buckets={}",
                        f.exponent, f.intercept, f.ci_lower, f.ci_upper, f.r_squared, f.buckets_used
                    ),
                    None => writeln!(
                        out,
                        "# status={} buckets={}",
                        row.result.status(),
                        row.result.buckets_used()
                    ),
                }
                .unwrap();
                if !row.values.is_empty() {
                    // the base was already accepted by the fit
                    let h = bucket(&row.values, self.options.bucket).unwrap();
                    for (x, y) in h.log_points() {
                        writeln!(out, "{x:.6}\t{y:.6}").unwrap();
                    }
                }
                (row.relationship.slug(), out)
            })
            .collect()
    }
}

/// `coupling_type<TAB>source<TAB>target` rows, sorted.
pub fn edge_list(graphs: &CouplingGraphs) -> String {
    let mut out = String::from("coupling_type\tsource\ttarget\n");
    for (ty, s, t) in graphs.named_edges() {
        writeln!(out, "{}\t{s}\t{t}", ty.name()).unwrap();
    }
    out
}

pub fn correlation_csv(m: &CorrelationMatrix) -> String {
    let mut out = String::new();
    for label in m.labels {
        write!(out, ",{label}").unwrap();
    }
    out.push('\n');
    for (label, row) in m.labels.iter().zip(&m.values) {
        out.push_str(label);
        for v in row {
            write!(out, ",{v:.4}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub const ABLATION_HEADER: &str = "mode\tfraction\ttrial\treachable_fraction";

/// One row per trial of each experiment, after a single header.
pub fn ablation_rows(experiments: &[RemovalExperiment]) -> String {
    let mut out = String::from(ABLATION_HEADER);
    out.push('\n');
    for e in experiments {
        for (trial, r) in e.results.iter().enumerate() {
            writeln!(out, "{}\t{:.4}\t{trial}\t{r:.4}", e.mode.name(), e.fraction).unwrap();
        }
    }
    out
}

//! Reachability under node removal.
//!
//! Traversal runs over the union of the five coupling graphs with edges
//! oriented source to target. Removed nodes are neither endpoints nor
//! waypoints.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graphs::{CouplingGraphs, CouplingType, NodeId};
use crate::rng::SeededRng;

/// Union of the coupling graphs in compressed adjacency form, duplicate
/// pairs merged.
#[derive(Debug, Clone)]
pub struct UnionGraph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    in_degree: Vec<usize>,
}

impl UnionGraph {
    pub fn new(graphs: &CouplingGraphs) -> Self {
        let n = graphs.node_count();
        let mut edges: Vec<(NodeId, NodeId)> = CouplingType::ALL
            .iter()
            .flat_map(|&ty| graphs.edges(ty).iter().copied())
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut offsets = vec![0usize; n + 1];
        let mut in_degree = vec![0usize; n];
        for &(s, t) in &edges {
            offsets[s + 1] += 1;
            in_degree[t] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        UnionGraph {
            offsets,
            targets: edges.into_iter().map(|(_, t)| t).collect(),
            in_degree,
        }
    }

    pub fn node_count(&self) -> usize {
        self.in_degree.len()
    }

    pub fn successors(&self, n: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[n]..self.offsets[n + 1]]
    }

    pub fn in_degree(&self, n: NodeId) -> usize {
        self.in_degree[n]
    }

    pub fn total_degree(&self, n: NodeId) -> usize {
        self.in_degree[n] + self.successors(n).len()
    }

    /// Nodes with no incoming edge, the default traversal roots.
    pub fn sources(&self) -> Vec<NodeId> {
        (0..self.node_count())
            .filter(|&n| self.in_degree[n] == 0)
            .collect()
    }

    /// Share of all nodes reachable from the surviving roots.
    pub fn reachable_fraction(&self, roots: &[NodeId], removed: &[bool]) -> f64 {
        let n = self.node_count();
        if n == 0 {
            return 0.0;
        }
        let mut seen = vec![false; n];
        let mut stack: Vec<NodeId> = Vec::new();
        for &r in roots {
            if !removed[r] && !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
        let mut count = stack.len();
        while let Some(v) = stack.pop() {
            for &w in self.successors(v) {
                if !removed[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count as f64 / n as f64
    }
}

/// Convenience wrapper over [`UnionGraph::reachable_fraction`].
pub fn reachable_fraction(graphs: &CouplingGraphs, roots: &[NodeId], removed: &[bool]) -> f64 {
    UnionGraph::new(graphs).reachable_fraction(roots, removed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalMode {
    Random,
    TargetedByDegree,
}

impl RemovalMode {
    pub fn name(self) -> &'static str {
        match self {
            RemovalMode::Random => "random",
            RemovalMode::TargetedByDegree => "targeted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemovalExperiment {
    pub mode: RemovalMode,
    pub fraction: f64,
    pub trials: usize,
    pub rng_seed: u64,
    /// Root names; `None` means every node with no incoming edge.
    pub roots: Option<Vec<String>>,
    /// Reachable fraction per trial, filled by [`run_experiment`].
    pub results: Vec<f64>,
}

impl RemovalExperiment {
    pub fn new(mode: RemovalMode, fraction: f64, trials: usize, rng_seed: u64) -> Self {
        RemovalExperiment {
            mode,
            fraction,
            trials,
            rng_seed,
            roots: None,
            results: Vec::new(),
        }
    }

    pub fn mean(&self) -> f64 {
        self.results.iter().sum::<f64>() / self.results.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RobustnessError {
    InvalidFraction(f64),
    NoTrials,
    UnknownRoot(String),
}

impl fmt::Display for RobustnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RobustnessError::InvalidFraction(x) => {
                write!(f, "removal fraction {x} is outside [0, 1]")
            }
            RobustnessError::NoTrials => f.write_str("at least one trial is required"),
            RobustnessError::UnknownRoot(r) => write!(f, "root `{r}` is not a graph node"),
        }
    }
}

impl core::error::Error for RobustnessError {}

/// `floor(fraction * n)`, tolerant of products like `(1/3) * 3`.
fn removal_count(fraction: f64, n: usize) -> usize {
    let k = libm::floor(fraction * n as f64 + 1e-9) as usize;
    k.min(n)
}

/// Runs every trial and returns the experiment with `results` filled.
///
/// Random mode removes `floor(fraction * |V|)` nodes chosen uniformly per
/// trial, trial `i` drawing from sub-stream `i` of the seed. Targeted mode
/// removes the same number of highest total-degree nodes in the union graph
/// (ties by name) and runs once.
pub fn run_experiment(
    graphs: &CouplingGraphs,
    experiment: &RemovalExperiment,
) -> Result<RemovalExperiment, RobustnessError> {
    if !(0.0..=1.0).contains(&experiment.fraction) {
        return Err(RobustnessError::InvalidFraction(experiment.fraction));
    }
    if experiment.trials == 0 {
        return Err(RobustnessError::NoTrials);
    }
    let union = UnionGraph::new(graphs);
    let roots = match &experiment.roots {
        None => union.sources(),
        Some(names) => names
            .iter()
            .map(|n| {
                graphs
                    .id(n)
                    .ok_or_else(|| RobustnessError::UnknownRoot(n.to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let n = union.node_count();
    let k = removal_count(experiment.fraction, n);

    let results = match experiment.mode {
        RemovalMode::Random => (0..experiment.trials)
            .map(|trial| {
                let mut rng = SeededRng::stream(experiment.rng_seed, trial as u64);
                let mut order: Vec<NodeId> = (0..n).collect();
                // partial Fisher-Yates: the first k slots are the sample
                for i in 0..k {
                    let j = i + rng.below(n - i);
                    order.swap(i, j);
                }
                let mut removed = vec![false; n];
                for &v in &order[..k] {
                    removed[v] = true;
                }
                union.reachable_fraction(&roots, &removed)
            })
            .collect(),
        RemovalMode::TargetedByDegree => {
            let mut order: Vec<NodeId> = (0..n).collect();
            // node ids follow name order, so the id breaks ties by name
            order.sort_by(|&a, &b| {
                union
                    .total_degree(b)
                    .cmp(&union.total_degree(a))
                    .then(a.cmp(&b))
            });
            let mut removed = vec![false; n];
            for &v in &order[..k] {
                removed[v] = true;
            }
            vec![union.reachable_fraction(&roots, &removed)]
        }
    };
    Ok(RemovalExperiment {
        results,
        ..experiment.clone()
    })
}

//! Synthetic corpora grown by mixed preferential/uniform attachment, and a
//! discrete power-law sampler used as test data for the fitter.
//!
//! Generation starts from `seed_size` classes where every seed class holds a
//! field of each earlier seed class. Each later class draws, per coupling
//! type, `m` distinct targets among the eligible existing classes. A single
//! draw picks uniformly with probability `alpha`, otherwise proportionally
//! to `indegree + 1` in that coupling type, so target `t` is chosen with
//! probability `alpha / N + (1 - alpha) (indeg(t) + 1) / sum(indeg + 1)`.
//! Repeats within one class are redrawn.
//!
//! Per new class the random stream is consumed in a fixed order: one
//! `next_f64` deciding interface vs class, then the draws for inheritance,
//! interface, aggregation, parameter and return types. Each draw is one
//! `next_f64` (uniform vs preferential) followed by one `below`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use libm::pow;

use crate::corpus::{ClassSummary, Corpus, CorpusError, Field, Method, TypeKind};
use crate::graphs::CouplingType;
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgesPerClass {
    /// 0 or 1.
    pub inheritance: usize,
    pub interface: usize,
    pub aggregation: usize,
    pub parameter: usize,
    pub return_type: usize,
}

impl EdgesPerClass {
    pub fn get(&self, ty: CouplingType) -> usize {
        match ty {
            CouplingType::Inheritance => self.inheritance,
            CouplingType::Interface => self.interface,
            CouplingType::Aggregation => self.aggregation,
            CouplingType::Parameter => self.parameter,
            CouplingType::ReturnType => self.return_type,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub n_classes: usize,
    pub seed_size: usize,
    pub edges_per_class: EdgesPerClass,
    /// Uniform-attachment weight; 0 is purely preferential.
    pub alpha: f64,
    /// Probability that a grown node is an interface.
    pub interface_fraction: f64,
    pub rng_seed: u64,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            n_classes: 1000,
            seed_size: 3,
            edges_per_class: EdgesPerClass {
                aggregation: 2,
                ..Default::default()
            },
            alpha: 0.0,
            interface_fraction: 0.0,
            rng_seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthError {
    InvalidParams(&'static str),
    Corpus(CorpusError),
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthError::InvalidParams(why) => write!(f, "invalid parameters: {why}"),
            SynthError::Corpus(e) => write!(f, "generated corpus is invalid: {e}"),
        }
    }
}

impl core::error::Error for SynthError {}

impl SynthParams {
    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |why| Err(SynthError::InvalidParams(why));
        if self.seed_size < 2 {
            return bad("seed_size must be at least 2");
        }
        if self.n_classes < self.seed_size {
            return bad("n_classes must be at least seed_size");
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad("alpha must lie in [0, 1]");
        }
        if !(0.0..1.0).contains(&self.interface_fraction) {
            return bad("interface_fraction must lie in [0, 1)");
        }
        if self.edges_per_class.inheritance > 1 {
            return bad("a class has at most one superclass");
        }
        Ok(())
    }
}

/// Candidate targets for one coupling type. `pool` lists every eligible node
/// once plus once more per incoming edge, so a uniform pick from it is a
/// pick proportional to `indegree + 1`.
#[derive(Debug, Default, Clone)]
struct Attachment {
    eligible: Vec<usize>,
    pool: Vec<usize>,
}

impl Attachment {
    fn add_node(&mut self, id: usize) {
        self.eligible.push(id);
        self.pool.push(id);
    }

    fn add_in_edge(&mut self, id: usize) {
        self.pool.push(id);
    }

    fn draw(&self, rng: &mut SeededRng, alpha: f64, m: usize) -> Vec<usize> {
        let m = m.min(self.eligible.len());
        let mut chosen = Vec::with_capacity(m);
        while chosen.len() < m {
            let t = if rng.next_f64() < alpha {
                self.eligible[rng.below(self.eligible.len())]
            } else {
                self.pool[rng.below(self.pool.len())]
            };
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        chosen
    }
}

#[derive(Debug, Default, Clone)]
struct Node {
    interface: bool,
    targets: [Vec<usize>; 5],
}

/// Zero-padded synthetic class name, `"S"` plus as many digits as the largest
/// index needs.
pub fn class_name(index: usize, n_classes: usize) -> String {
    let width = n_classes.saturating_sub(1).max(1).ilog10() as usize + 1;
    format!("S{index:0width$}")
}

pub fn generate(params: &SynthParams) -> Result<Corpus, SynthError> {
    params.validate()?;
    let mut rng = SeededRng::new(params.rng_seed);
    let mut pools: [Attachment; 5] = Default::default();
    let mut nodes: Vec<Node> = Vec::with_capacity(params.n_classes);
    let pool_index = |ty: CouplingType| ty as usize;

    for j in 0..params.seed_size {
        let mut node = Node::default();
        node.targets[pool_index(CouplingType::Aggregation)] = (0..j).collect();
        nodes.push(node);
    }
    for (j, node) in nodes.iter().enumerate() {
        for ty in CouplingType::ALL {
            if ty != CouplingType::Interface {
                pools[pool_index(ty)].add_node(j);
            }
        }
        for &t in &node.targets[pool_index(CouplingType::Aggregation)] {
            pools[pool_index(CouplingType::Aggregation)].add_in_edge(t);
        }
    }

    for id in params.seed_size..params.n_classes {
        let mut node = Node {
            interface: rng.next_f64() < params.interface_fraction,
            ..Default::default()
        };
        for ty in CouplingType::ALL {
            if ty == CouplingType::Inheritance && node.interface {
                continue;
            }
            let m = params.edges_per_class.get(ty);
            let targets = pools[pool_index(ty)].draw(&mut rng, params.alpha, m);
            for &t in &targets {
                pools[pool_index(ty)].add_in_edge(t);
            }
            node.targets[pool_index(ty)] = targets;
        }
        for ty in CouplingType::ALL {
            let eligible = match ty {
                CouplingType::Inheritance => !node.interface,
                CouplingType::Interface => node.interface,
                _ => true,
            };
            if eligible {
                pools[pool_index(ty)].add_node(id);
            }
        }
        nodes.push(node);
    }

    let name = |i: usize| class_name(i, params.n_classes);
    let summaries = nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let kind = if node.interface {
                TypeKind::Interface
            } else {
                TypeKind::Class
            };
            let mut s = ClassSummary::new(name(i), kind);
            let targets = |ty: CouplingType| node.targets[pool_index(ty)].iter().copied();
            s.superclass = targets(CouplingType::Inheritance).next().map(name);
            s.interfaces = targets(CouplingType::Interface).map(name).collect();
            s.interfaces.sort();
            s.fields = targets(CouplingType::Aggregation)
                .enumerate()
                .map(|(k, t)| Field {
                    name: format!("f{k}"),
                    declared_type: name(t),
                })
                .collect();
            s.methods = targets(CouplingType::Parameter)
                .enumerate()
                .map(|(k, t)| Method {
                    name: format!("p{k}"),
                    return_type: "void".into(),
                    param_types: alloc::vec![name(t)],
                })
                .chain(
                    targets(CouplingType::ReturnType)
                        .enumerate()
                        .map(|(k, t)| Method {
                            name: format!("r{k}"),
                            return_type: name(t),
                            param_types: Vec::new(),
                        }),
                )
                .collect();
            s
        })
        .collect();

    Corpus::from_summaries(summaries)
        .map(|r| r.corpus)
        .map_err(SynthError::Corpus)
}

/// `n` independent draws from `P(x) ∝ x^(-a)` on `1..=x_max`, by inverse
/// transform over the exactly normalized mass function.
pub fn sample_power_law(
    a: f64,
    n: usize,
    x_max: u64,
    rng_seed: u64,
) -> Result<Vec<u64>, SynthError> {
    if !(a.is_finite() && a > 1.0) {
        return Err(SynthError::InvalidParams("exponent must be finite and > 1"));
    }
    if n == 0 {
        return Err(SynthError::InvalidParams("sample size must be positive"));
    }
    if x_max == 0 || x_max > (1 << 28) {
        return Err(SynthError::InvalidParams("x_max must lie in 1..=2^28"));
    }
    let mut cdf: Vec<f64> = Vec::with_capacity(x_max as usize);
    let mut acc = 0.0;
    for x in 1..=x_max {
        acc += pow(x as f64, -a);
        cdf.push(acc);
    }
    for c in &mut cdf {
        *c /= acc;
    }
    *cdf.last_mut().unwrap() = 1.0;

    let mut rng = SeededRng::new(rng_seed);
    Ok((0..n)
        .map(|_| {
            let u = rng.next_f64();
            // smallest x with cdf(x) > u
            cdf.partition_point(|&c| c <= u) as u64 + 1
        })
        .collect())
}

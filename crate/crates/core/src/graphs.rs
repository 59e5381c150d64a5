//! The five coupling graphs and the twelve per-class degree series.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::corpus::{is_primitive, ClassSummary, Corpus};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CouplingType {
    /// superclass → subclass
    Inheritance,
    /// interface → implementing (or extending) type
    Interface,
    /// container → field type
    Aggregation,
    /// declaring class → parameter type
    Parameter,
    /// declaring class → return type
    ReturnType,
}

impl CouplingType {
    pub const ALL: [CouplingType; 5] = [
        CouplingType::Inheritance,
        CouplingType::Interface,
        CouplingType::Aggregation,
        CouplingType::Parameter,
        CouplingType::ReturnType,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CouplingType::Inheritance => "inheritance",
            CouplingType::Interface => "interface",
            CouplingType::Aggregation => "aggregation",
            CouplingType::Parameter => "parameter",
            CouplingType::ReturnType => "return_type",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CouplingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The twelve distributions, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relationship {
    Methods,
    Fields,
    Constructors,
    Subclasses,
    ImplementedInterfaces,
    InterfaceImplementations,
    ReferencesAsMember,
    MembersOfClassType,
    ReferencesAsParameter,
    ParameterTypeReferences,
    ReferencesAsReturnType,
    MethodsReturningClasses,
}

/// Where a relationship's per-class value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSource {
    Methods,
    Fields,
    Constructors,
    InDegree(CouplingType),
    OutDegree(CouplingType),
}

impl Relationship {
    pub const ALL: [Relationship; 12] = [
        Relationship::Methods,
        Relationship::Fields,
        Relationship::Constructors,
        Relationship::Subclasses,
        Relationship::ImplementedInterfaces,
        Relationship::InterfaceImplementations,
        Relationship::ReferencesAsMember,
        Relationship::MembersOfClassType,
        Relationship::ReferencesAsParameter,
        Relationship::ParameterTypeReferences,
        Relationship::ReferencesAsReturnType,
        Relationship::MethodsReturningClasses,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Relationship::Methods => "Number of Methods",
            Relationship::Fields => "Number of Fields",
            Relationship::Constructors => "Number of Constructors",
            Relationship::Subclasses => "Subclasses",
            Relationship::ImplementedInterfaces => "Implemented Interfaces",
            Relationship::InterfaceImplementations => "Interface Implementations",
            Relationship::ReferencesAsMember => "References to class as a member",
            Relationship::MembersOfClassType => "Members of class type",
            Relationship::ReferencesAsParameter => "References to class as a parameter",
            Relationship::ParameterTypeReferences => "Parameter-type class references",
            Relationship::ReferencesAsReturnType => "References to class as return type",
            Relationship::MethodsReturningClasses => "Methods returning classes",
        }
    }

    /// File-name friendly identifier.
    pub fn slug(self) -> &'static str {
        match self {
            Relationship::Methods => "methods",
            Relationship::Fields => "fields",
            Relationship::Constructors => "constructors",
            Relationship::Subclasses => "subclasses",
            Relationship::ImplementedInterfaces => "implemented_interfaces",
            Relationship::InterfaceImplementations => "interface_implementations",
            Relationship::ReferencesAsMember => "references_as_member",
            Relationship::MembersOfClassType => "members_of_class_type",
            Relationship::ReferencesAsParameter => "references_as_parameter",
            Relationship::ParameterTypeReferences => "parameter_type_references",
            Relationship::ReferencesAsReturnType => "references_as_return_type",
            Relationship::MethodsReturningClasses => "methods_returning_classes",
        }
    }

    pub fn source(self) -> SeriesSource {
        use CouplingType::*;
        match self {
            Relationship::Methods => SeriesSource::Methods,
            Relationship::Fields => SeriesSource::Fields,
            Relationship::Constructors => SeriesSource::Constructors,
            Relationship::Subclasses => SeriesSource::OutDegree(Inheritance),
            Relationship::ImplementedInterfaces => SeriesSource::InDegree(Interface),
            Relationship::InterfaceImplementations => SeriesSource::OutDegree(Interface),
            Relationship::ReferencesAsMember => SeriesSource::OutDegree(Aggregation),
            Relationship::MembersOfClassType => SeriesSource::InDegree(Aggregation),
            Relationship::ReferencesAsParameter => SeriesSource::InDegree(Parameter),
            Relationship::ParameterTypeReferences => SeriesSource::OutDegree(Parameter),
            Relationship::ReferencesAsReturnType => SeriesSource::InDegree(ReturnType),
            Relationship::MethodsReturningClasses => SeriesSource::OutDegree(ReturnType),
        }
    }
}

impl fmt::Display for Relationship {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownRelationship(pub String);

impl fmt::Display for UnknownRelationship {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown relationship `{}`", self.0)
    }
}

impl core::error::Error for UnknownRelationship {}

impl FromStr for Relationship {
    type Err = UnknownRelationship;

    /// Accepts either the label or the slug, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Relationship::ALL
            .into_iter()
            .find(|r| r.label().eq_ignore_ascii_case(s) || r.slug().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownRelationship(s.to_owned()))
    }
}

/// Per-class values of one relationship, in qualified-name order, zeros
/// included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSeries {
    pub relationship: Relationship,
    pub counts: Vec<(String, u64)>,
}

impl DegreeSeries {
    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.iter().map(|(_, c)| *c)
    }

    pub fn get(&self, class: &str) -> Option<u64> {
        self.counts
            .iter()
            .find(|(n, _)| n == class)
            .map(|(_, c)| *c)
    }

    pub fn total(&self) -> u64 {
        self.values().sum()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MemberCounts {
    pub methods: u64,
    pub fields: u64,
    pub constructors: u64,
}

impl MemberCounts {
    fn of(class: &ClassSummary) -> Self {
        MemberCounts {
            methods: class.methods.len() as u64,
            fields: class.fields.len() as u64,
            constructors: class.constructors.len() as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphOptions {
    /// Keep references to non-corpus types as leaf nodes. They take part in
    /// edge counts but never appear as rows of a degree series.
    pub include_external: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphDiagnostic {
    /// Classes forming a superclass cycle, starting from the smallest name.
    InheritanceCycle(Vec<String>),
}

impl fmt::Display for GraphDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphDiagnostic::InheritanceCycle(names) => {
                f.write_str("inheritance cycle:")?;
                for n in names {
                    write!(f, " {n}")?;
                }
                Ok(())
            }
        }
    }
}

/// Five deduplicated directed edge sets over the corpus classes (node ids
/// `0..class_count()`, in qualified-name order) followed by any external
/// leaf nodes. Self-loops are never recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingGraphs {
    names: Vec<String>,
    class_count: usize,
    edges: [Vec<(NodeId, NodeId)>; 5],
    members: Vec<MemberCounts>,
    diagnostics: Vec<GraphDiagnostic>,
}

pub fn build_graphs(corpus: &Corpus, options: GraphOptions) -> CouplingGraphs {
    let classes: Vec<&ClassSummary> = corpus.classes().collect();

    let target_of = |class: &ClassSummary, name: &str| -> Option<Target> {
        if is_primitive(name) {
            return None;
        }
        match corpus.resolve(&class.qualified_name, name) {
            Some(t) => Some(Target::Class(t.to_owned())),
            None if options.include_external => Some(Target::External(name.to_owned())),
            None => None,
        }
    };

    // (coupling type, source, target) before id assignment
    let mut raw: Vec<(CouplingType, Target, Target)> = Vec::new();
    for class in &classes {
        let me = || Target::Class(class.qualified_name.clone());
        if let Some(sup) = &class.superclass {
            if let Some(t) = target_of(class, sup) {
                raw.push((CouplingType::Inheritance, t, me()));
            }
        }
        for iface in &class.interfaces {
            if let Some(t) = target_of(class, iface) {
                raw.push((CouplingType::Interface, t, me()));
            }
        }
        for field in &class.fields {
            if let Some(t) = target_of(class, &field.declared_type) {
                raw.push((CouplingType::Aggregation, me(), t));
            }
        }
        let params = class
            .constructors
            .iter()
            .flat_map(|c| &c.param_types)
            .chain(class.methods.iter().flat_map(|m| &m.param_types));
        for p in params {
            if let Some(t) = target_of(class, p) {
                raw.push((CouplingType::Parameter, me(), t));
            }
        }
        for m in &class.methods {
            if let Some(t) = target_of(class, &m.return_type) {
                raw.push((CouplingType::ReturnType, me(), t));
            }
        }
    }

    let externals: BTreeSet<&str> = raw
        .iter()
        .flat_map(|(_, s, t)| [s, t])
        .filter_map(|t| match t {
            Target::External(n) => Some(n.as_str()),
            Target::Class(_) => None,
        })
        .collect();

    let class_ids: BTreeMap<&str, NodeId> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.qualified_name.as_str(), i))
        .collect();
    let external_ids: BTreeMap<&str, NodeId> = externals
        .iter()
        .enumerate()
        .map(|(i, n)| (*n, classes.len() + i))
        .collect();
    let id = |t: &Target| match t {
        Target::Class(n) => class_ids[n.as_str()],
        Target::External(n) => external_ids[n.as_str()],
    };

    let mut edges: [Vec<(NodeId, NodeId)>; 5] = Default::default();
    for (ty, s, t) in &raw {
        let (s, t) = (id(s), id(t));
        if s != t {
            edges[ty.index()].push((s, t));
        }
    }
    for e in &mut edges {
        e.sort_unstable();
        e.dedup();
    }

    let mut names: Vec<String> = classes.iter().map(|c| c.qualified_name.clone()).collect();
    names.extend(externals.iter().map(|n| (*n).to_owned()));

    let mut graphs = CouplingGraphs {
        names,
        class_count: classes.len(),
        edges,
        members: classes.iter().map(|c| MemberCounts::of(c)).collect(),
        diagnostics: Vec::new(),
    };
    graphs.diagnostics = graphs.inheritance_cycles();
    graphs
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Target {
    Class(String),
    External(String),
}

impl CouplingGraphs {
    /// Number of corpus classes; these are node ids `0..class_count()`.
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Corpus classes plus external leaves.
    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        let (classes, externals) = self.names.split_at(self.class_count);
        if let Ok(i) = classes.binary_search_by(|n| n.as_str().cmp(name)) {
            return Some(i);
        }
        externals
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| i + self.class_count)
    }

    pub fn is_external(&self, id: NodeId) -> bool {
        id >= self.class_count
    }

    /// Sorted, duplicate-free `(source, target)` pairs.
    pub fn edges(&self, ty: CouplingType) -> &[(NodeId, NodeId)] {
        &self.edges[ty.index()]
    }

    pub fn edge_count(&self, ty: CouplingType) -> usize {
        self.edges(ty).len()
    }

    pub fn in_degrees(&self, ty: CouplingType) -> Vec<u64> {
        let mut d = vec![0u64; self.node_count()];
        for &(_, t) in self.edges(ty) {
            d[t] += 1;
        }
        d
    }

    pub fn out_degrees(&self, ty: CouplingType) -> Vec<u64> {
        let mut d = vec![0u64; self.node_count()];
        for &(s, _) in self.edges(ty) {
            d[s] += 1;
        }
        d
    }

    pub fn member_counts(&self, id: NodeId) -> MemberCounts {
        self.members[id]
    }

    pub fn diagnostics(&self) -> &[GraphDiagnostic] {
        &self.diagnostics
    }

    /// All edges by name, sorted by (coupling type name, source, target).
    pub fn named_edges(&self) -> Vec<(CouplingType, &str, &str)> {
        let mut out: Vec<(CouplingType, &str, &str)> = CouplingType::ALL
            .iter()
            .flat_map(|&ty| {
                self.edges(ty)
                    .iter()
                    .map(move |&(s, t)| (ty, self.name(s), self.name(t)))
            })
            .collect();
        out.sort_by(|a, b| (a.0.name(), a.1, a.2).cmp(&(b.0.name(), b.1, b.2)));
        out
    }

    fn inheritance_cycles(&self) -> Vec<GraphDiagnostic> {
        let mut parent = vec![None; self.node_count()];
        for &(p, c) in self.edges(CouplingType::Inheritance) {
            parent[c] = Some(p);
        }
        // 0 = unvisited, 1 = on current path, 2 = done
        let mut state = vec![0u8; self.node_count()];
        let mut out = Vec::new();
        for start in 0..self.node_count() {
            let mut path = Vec::new();
            let mut cur = Some(start);
            while let Some(n) = cur {
                match state[n] {
                    0 => {
                        state[n] = 1;
                        path.push(n);
                        cur = parent[n];
                    }
                    1 => {
                        let at = path.iter().position(|&p| p == n).unwrap();
                        let mut cycle: Vec<String> =
                            path[at..].iter().map(|&i| self.names[i].clone()).collect();
                        let min = (0..cycle.len()).min_by_key(|&i| &cycle[i]).unwrap();
                        cycle.rotate_left(min);
                        out.push(GraphDiagnostic::InheritanceCycle(cycle));
                        break;
                    }
                    _ => break,
                }
            }
            for n in path {
                state[n] = 2;
            }
        }
        out
    }
}

/// One relationship's per-class series (corpus classes only).
pub fn degree_series(graphs: &CouplingGraphs, relationship: Relationship) -> DegreeSeries {
    let values: Vec<u64> = match relationship.source() {
        SeriesSource::Methods => graphs.members.iter().map(|m| m.methods).collect(),
        SeriesSource::Fields => graphs.members.iter().map(|m| m.fields).collect(),
        SeriesSource::Constructors => graphs.members.iter().map(|m| m.constructors).collect(),
        SeriesSource::InDegree(ty) => graphs.in_degrees(ty),
        SeriesSource::OutDegree(ty) => graphs.out_degrees(ty),
    };
    DegreeSeries {
        relationship,
        counts: graphs.names[..graphs.class_count]
            .iter()
            .cloned()
            .zip(values)
            .collect(),
    }
}

/// All twelve series in report order.
pub fn all_series(graphs: &CouplingGraphs) -> Vec<DegreeSeries> {
    Relationship::ALL
        .iter()
        .map(|&r| degree_series(graphs, r))
        .collect()
}

/// Methods, fields and constructors declared by each class.
pub fn member_counts(corpus: &Corpus) -> [DegreeSeries; 3] {
    let series = |relationship, pick: fn(MemberCounts) -> u64| DegreeSeries {
        relationship,
        counts: corpus
            .classes()
            .map(|c| (c.qualified_name.clone(), pick(MemberCounts::of(c))))
            .collect(),
    };
    [
        series(Relationship::Methods, |m| m.methods),
        series(Relationship::Fields, |m| m.fields),
        series(Relationship::Constructors, |m| m.constructors),
    ]
}

//! Class summaries and the name-resolved corpus built from them.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Java primitive type names plus `void`. These never become graph edges.
pub const PRIMITIVES: [&str; 9] = [
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

pub fn is_primitive(name: &str) -> bool {
    PRIMITIVES.contains(&name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeKind {
    Class,
    Interface,
}

impl TypeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeKind::Class => "class",
            TypeKind::Interface => "interface",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub name: String,
    pub declared_type: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructor {
    pub param_types: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Method {
    pub name: String,
    pub return_type: String,
    pub param_types: Vec<String>,
}

/// Declaration-level digest of one top-level class or interface.
///
/// Type names are raw: generic arguments and array suffixes are already
/// stripped, and they are recorded as written in the source (simple or
/// qualified). Resolution to corpus names lives in [`Corpus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub qualified_name: String,
    pub kind: TypeKind,
    pub superclass: Option<String>,
    /// Sorted.
    pub interfaces: Vec<String>,
    /// Declaration order.
    pub fields: Vec<Field>,
    pub constructors: Vec<Constructor>,
    pub methods: Vec<Method>,
}

impl ClassSummary {
    pub fn new(qualified_name: impl Into<String>, kind: TypeKind) -> Self {
        ClassSummary {
            qualified_name: qualified_name.into(),
            kind,
            superclass: None,
            interfaces: Vec::new(),
            fields: Vec::new(),
            constructors: Vec::new(),
            methods: Vec::new(),
        }
    }

    /// Simple (unqualified) name.
    pub fn simple_name(&self) -> &str {
        self.qualified_name
            .rsplit('.')
            .next()
            .unwrap_or(&self.qualified_name)
    }

    /// Package part of the qualified name, `None` for the default package.
    pub fn package(&self) -> Option<&str> {
        self.qualified_name.rsplit_once('.').map(|(p, _)| p)
    }

    /// Every non-primitive type name this class mentions in a declaration.
    pub fn referenced_types(&self) -> impl Iterator<Item = &str> {
        let sup = self.superclass.as_deref().into_iter();
        let ifaces = self.interfaces.iter().map(String::as_str);
        let fields = self.fields.iter().map(|f| f.declared_type.as_str());
        let ctors = self
            .constructors
            .iter()
            .flat_map(|c| c.param_types.iter().map(String::as_str));
        let methods = self.methods.iter().flat_map(|m| {
            core::iter::once(m.return_type.as_str()).chain(m.param_types.iter().map(String::as_str))
        });
        sup.chain(ifaces)
            .chain(fields)
            .chain(ctors)
            .chain(methods)
            .filter(|n| !is_primitive(n))
    }

    pub(crate) fn validate(&self) -> Result<(), CorpusError> {
        let bad = |reason: &'static str| CorpusError::InvalidSummary {
            class: self.qualified_name.clone(),
            reason,
        };
        if self.qualified_name.is_empty() {
            return Err(bad("empty qualified name"));
        }
        if self.kind == TypeKind::Interface {
            if self.superclass.is_some() {
                return Err(bad("interface with a superclass"));
            }
            if !self.constructors.is_empty() {
                return Err(bad("interface with constructors"));
            }
        }
        let all_types = self
            .superclass
            .iter()
            .chain(&self.interfaces)
            .chain(self.fields.iter().map(|f| &f.declared_type))
            .chain(self.constructors.iter().flat_map(|c| &c.param_types))
            .chain(
                self.methods
                    .iter()
                    .flat_map(|m| core::iter::once(&m.return_type).chain(&m.param_types)),
            );
        for t in all_types {
            if t.is_empty() || t.contains(['<', '>', '[', ']']) {
                return Err(bad("type name is empty or not raw"));
            }
        }
        if self.interfaces.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad("interfaces are not sorted"));
        }
        Ok(())
    }
}

/// Import declaration of a compilation unit. Static imports are not kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Import {
    /// `import a.b.C;`
    Single(String),
    /// `import a.b.*;`
    OnDemand(String),
}

/// Parsed contents of one source file: the resolution context plus its
/// top-level types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceUnit {
    pub file_name: String,
    pub package: Option<String>,
    pub imports: Vec<Import>,
    pub classes: Vec<ClassSummary>,
}

/// A reference that did not resolve to any corpus class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Unresolved {
    pub class: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    DuplicateClass(String),
    EmptyCorpus,
    InvalidSummary {
        class: String,
        reason: &'static str,
    },
    /// A resolution entry that names an unknown class on either side.
    DanglingResolution {
        class: String,
        name: String,
        target: String,
    },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::DuplicateClass(n) => write!(f, "duplicate class `{n}`"),
            CorpusError::EmptyCorpus => f.write_str("corpus contains no classes"),
            CorpusError::InvalidSummary { class, reason } => {
                write!(f, "invalid summary for `{class}`: {reason}")
            }
            CorpusError::DanglingResolution { class, name, target } => write!(
                f,
                "resolution of `{name}` in `{class}` points at `{target}`, which is not in the corpus"
            ),
        }
    }
}

impl core::error::Error for CorpusError {}

/// Immutable, non-empty set of class summaries with a resolution table from
/// `(referencing class, name as written)` to a corpus class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    classes: BTreeMap<String, ClassSummary>,
    resolution: BTreeMap<(String, String), String>,
}

/// A corpus together with the references that failed to resolve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    pub corpus: Corpus,
    pub unresolved: Vec<Unresolved>,
}

impl Corpus {
    /// Merges parsed source units and resolves every referenced type name.
    ///
    /// Lookup order for a name `N` referenced from a class in package `P`:
    /// single-type imports, `P.N`, on-demand imports in source order followed
    /// by the implicit `java.lang.*`, and finally `N` as an already-qualified
    /// name. The result does not depend on the order of `units`.
    pub fn from_units(units: Vec<SourceUnit>) -> Result<Resolved, CorpusError> {
        let mut classes = BTreeMap::new();
        let mut contexts = BTreeMap::new();
        for unit in units {
            let ctx = ImportContext {
                package: unit.package,
                imports: unit.imports,
            };
            for class in unit.classes {
                class.validate()?;
                let name = class.qualified_name.clone();
                if classes.contains_key(&name) {
                    return Err(CorpusError::DuplicateClass(name));
                }
                contexts.insert(name.clone(), ctx.clone());
                classes.insert(name, class);
            }
        }
        if classes.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }

        let mut resolution = BTreeMap::new();
        let mut unresolved = BTreeSet::new();
        for (name, class) in &classes {
            let ctx = &contexts[name];
            for referenced in class.referenced_types() {
                let key = (name.clone(), referenced.to_owned());
                if resolution.contains_key(&key) {
                    continue;
                }
                match ctx.resolve(referenced, &classes) {
                    Some(target) => {
                        resolution.insert(key, target);
                    }
                    None => {
                        unresolved.insert(Unresolved {
                            class: name.clone(),
                            name: referenced.to_owned(),
                        });
                    }
                }
            }
        }
        Ok(Resolved {
            corpus: Corpus {
                classes,
                resolution,
            },
            unresolved: unresolved.into_iter().collect(),
        })
    }

    /// Builds a corpus whose names are all fully qualified, resolving each
    /// reference only when it names a corpus class verbatim.
    pub fn from_summaries(summaries: Vec<ClassSummary>) -> Result<Resolved, CorpusError> {
        let unit = SourceUnit {
            file_name: String::new(),
            package: None,
            imports: Vec::new(),
            classes: summaries,
        };
        // The default package makes same-package lookup equal to verbatim lookup.
        Corpus::from_units(alloc::vec![unit])
    }

    /// Reassembles a corpus from stored parts, checking every invariant.
    pub fn from_parts(
        summaries: Vec<ClassSummary>,
        resolution: Vec<(String, String, String)>,
    ) -> Result<Corpus, CorpusError> {
        let mut classes = BTreeMap::new();
        for class in summaries {
            class.validate()?;
            let name = class.qualified_name.clone();
            if classes.insert(name.clone(), class).is_some() {
                return Err(CorpusError::DuplicateClass(name));
            }
        }
        if classes.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        let mut table = BTreeMap::new();
        for (class, name, target) in resolution {
            if !classes.contains_key(&class) || !classes.contains_key(&target) {
                return Err(CorpusError::DanglingResolution {
                    class,
                    name,
                    target,
                });
            }
            table.insert((class, name), target);
        }
        Ok(Corpus {
            classes,
            resolution: table,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    /// Always false; a corpus holds at least one class.
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, qualified_name: &str) -> Option<&ClassSummary> {
        self.classes.get(qualified_name)
    }

    pub fn contains(&self, qualified_name: &str) -> bool {
        self.classes.contains_key(qualified_name)
    }

    /// Classes in qualified-name order.
    pub fn classes(&self) -> impl ExactSizeIterator<Item = &ClassSummary> {
        self.classes.values()
    }

    /// Resolution entries as `(referencing class, name, target)`, sorted.
    pub fn resolution(&self) -> impl ExactSizeIterator<Item = (&str, &str, &str)> {
        self.resolution
            .iter()
            .map(|((c, n), t)| (c.as_str(), n.as_str(), t.as_str()))
    }

    /// Corpus class that `name`, as written inside `class`, refers to.
    pub fn resolve(&self, class: &str, name: &str) -> Option<&str> {
        self.resolution
            .get(&(class.to_owned(), name.to_owned()))
            .map(String::as_str)
    }

    /// References from corpus classes that have no resolution entry.
    pub fn unresolved(&self) -> Vec<Unresolved> {
        let mut out = BTreeSet::new();
        for class in self.classes.values() {
            for n in class.referenced_types() {
                if self.resolve(&class.qualified_name, n).is_none() {
                    out.insert(Unresolved {
                        class: class.qualified_name.clone(),
                        name: n.to_owned(),
                    });
                }
            }
        }
        out.into_iter().collect()
    }
}

#[derive(Debug, Clone)]
struct ImportContext {
    package: Option<String>,
    imports: Vec<Import>,
}

impl ImportContext {
    fn resolve(&self, name: &str, classes: &BTreeMap<String, ClassSummary>) -> Option<String> {
        let qualify = |prefix: &str| {
            let mut q = String::with_capacity(prefix.len() + 1 + name.len());
            q.push_str(prefix);
            q.push('.');
            q.push_str(name);
            q
        };

        if !name.contains('.') {
            for import in &self.imports {
                if let Import::Single(path) = import {
                    let simple = path.rsplit('.').next().unwrap_or(path);
                    if simple == name && classes.contains_key(path.as_str()) {
                        return Some(path.clone());
                    }
                }
            }
        }

        let same_package = match &self.package {
            Some(p) => qualify(p),
            None => name.to_owned(),
        };
        if classes.contains_key(&same_package) {
            return Some(same_package);
        }

        let on_demand = self
            .imports
            .iter()
            .filter_map(|i| match i {
                Import::OnDemand(p) => Some(p.as_str()),
                Import::Single(_) => None,
            })
            .chain(core::iter::once("java.lang"));
        for prefix in on_demand {
            let q = qualify(prefix);
            if classes.contains_key(&q) {
                return Some(q);
            }
        }

        classes.contains_key(name).then(|| name.to_owned())
    }
}

//! `couplaw-summary/1` interchange files.
//!
//! A JSON document with the format tag, one class record per line, and the
//! resolution table:
//!
//! ```text
//! {"format":"couplaw-summary/1","classes":[
//! {"qualified_name":"p.A","kind":"class","superclass":null,"interfaces":[],"fields":[...],"constructors":[...],"methods":[...]},
//! ...
//! ],"resolution":[
//! {"class":"p.A","name":"B","target":"p.B"},
//! ...
//! ]}
//! ```
//!
//! Classes are sorted by qualified name and resolution entries by
//! `(class, name)`, so equal corpora serialize to identical bytes. Unknown
//! fields are rejected.

use std::fs;
use std::io::Write;
use std::path::Path;

use couplaw_core::corpus::{ClassSummary, Constructor, Corpus, Field, Method, TypeKind};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FORMAT_TAG: &str = "couplaw-summary/1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    format: String,
    classes: Vec<ClassRecord>,
    resolution: Vec<ResolutionRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
enum KindRecord {
    Class,
    Interface,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassRecord {
    qualified_name: String,
    kind: KindRecord,
    superclass: Option<String>,
    interfaces: Vec<String>,
    fields: Vec<FieldRecord>,
    constructors: Vec<ConstructorRecord>,
    methods: Vec<MethodRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldRecord {
    name: String,
    #[serde(rename = "type")]
    declared_type: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstructorRecord {
    param_types: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MethodRecord {
    name: String,
    return_type: String,
    param_types: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResolutionRecord {
    class: String,
    name: String,
    target: String,
}

impl From<&ClassSummary> for ClassRecord {
    fn from(c: &ClassSummary) -> Self {
        ClassRecord {
            qualified_name: c.qualified_name.clone(),
            kind: match c.kind {
                TypeKind::Class => KindRecord::Class,
                TypeKind::Interface => KindRecord::Interface,
            },
            superclass: c.superclass.clone(),
            interfaces: c.interfaces.clone(),
            fields: c
                .fields
                .iter()
                .map(|f| FieldRecord {
                    name: f.name.clone(),
                    declared_type: f.declared_type.clone(),
                })
                .collect(),
            constructors: c
                .constructors
                .iter()
                .map(|k| ConstructorRecord {
                    param_types: k.param_types.clone(),
                })
                .collect(),
            methods: c
                .methods
                .iter()
                .map(|m| MethodRecord {
                    name: m.name.clone(),
                    return_type: m.return_type.clone(),
                    param_types: m.param_types.clone(),
                })
                .collect(),
        }
    }
}

impl From<ClassRecord> for ClassSummary {
    fn from(r: ClassRecord) -> Self {
        ClassSummary {
            qualified_name: r.qualified_name,
            kind: match r.kind {
                KindRecord::Class => TypeKind::Class,
                KindRecord::Interface => TypeKind::Interface,
            },
            superclass: r.superclass,
            interfaces: r.interfaces,
            fields: r
                .fields
                .into_iter()
                .map(|f| Field {
                    name: f.name,
                    declared_type: f.declared_type,
                })
                .collect(),
            constructors: r
                .constructors
                .into_iter()
                .map(|k| Constructor {
                    param_types: k.param_types,
                })
                .collect(),
            methods: r
                .methods
                .into_iter()
                .map(|m| Method {
                    name: m.name,
                    return_type: m.return_type,
                    param_types: m.param_types,
                })
                .collect(),
        }
    }
}

/// Serializes a corpus into the canonical byte layout.
pub fn to_bytes(corpus: &Corpus) -> Vec<u8> {
    let mut out = Vec::new();
    write!(out, "{{\"format\":\"{FORMAT_TAG}\",\"classes\":[").unwrap();
    for (i, class) in corpus.classes().enumerate() {
        out.extend_from_slice(if i == 0 { b"\n" } else { b",\n" });
        serde_json::to_writer(&mut out, &ClassRecord::from(class)).unwrap();
    }
    out.extend_from_slice(b"\n],\"resolution\":[");
    for (i, (class, name, target)) in corpus.resolution().enumerate() {
        out.extend_from_slice(if i == 0 { b"\n" } else { b",\n" });
        let record = ResolutionRecord {
            class: class.to_owned(),
            name: name.to_owned(),
            target: target.to_owned(),
        };
        serde_json::to_writer(&mut out, &record).unwrap();
    }
    out.extend_from_slice(b"\n]}\n");
    out
}

pub fn save_summaries(corpus: &Corpus, path: &Path) -> Result<()> {
    fs::write(path, to_bytes(corpus)).map_err(|e| Error::io(path, e))
}

/// Parses interchange text; `path` only labels errors.
pub fn from_str(text: &str, path: &Path) -> Result<Corpus> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Format {
        path: path.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.format != FORMAT_TAG {
        return Err(Error::Format {
            path: path.to_owned(),
            line: 1,
            column: 1,
            message: format!(
                "unsupported format `{}`, expected `{FORMAT_TAG}`",
                doc.format
            ),
        });
    }
    let classes = doc.classes.into_iter().map(ClassSummary::from).collect();
    let resolution = doc
        .resolution
        .into_iter()
        .map(|r| (r.class, r.name, r.target))
        .collect();
    Ok(Corpus::from_parts(classes, resolution)?)
}

pub fn load_summaries(path: &Path) -> Result<Corpus> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_str(&text, path)
}

#![allow(dead_code)]

use std::path::PathBuf;

use couplaw_core::graphs::{CouplingType, Relationship};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Qualified name for the short names used below.
pub fn fq(short: &str) -> String {
    match short {
        "AS" => "fx.AbstractShape".to_owned(),
        s => format!("fx.{s}"),
    }
}

pub const SHAPES_CLASSES: [&str; 10] = [
    "AS",
    "Circle",
    "Color",
    "Named",
    "Point",
    "Rect",
    "Shape",
    "Square",
    "Style",
    "ui.Canvas",
];

/// Hand-enumerated edges of the shapes fixture, see its README.
pub fn shapes_edges(ty: CouplingType) -> Vec<(String, String)> {
    let pairs: &[(&str, &str)] = match ty {
        CouplingType::Inheritance => &[("AS", "Circle"), ("AS", "Rect"), ("Rect", "Square")],
        CouplingType::Interface => &[("Named", "AS"), ("Shape", "AS")],
        CouplingType::Aggregation => &[
            ("AS", "Point"),
            ("AS", "Style"),
            ("Rect", "Point"),
            ("Style", "Color"),
            ("ui.Canvas", "Style"),
        ],
        CouplingType::Parameter => &[
            ("AS", "Point"),
            ("Circle", "Point"),
            ("Rect", "Point"),
            ("Square", "Point"),
            ("ui.Canvas", "Point"),
            ("ui.Canvas", "Shape"),
            ("ui.Canvas", "Style"),
        ],
        CouplingType::ReturnType => &[("AS", "Point"), ("Shape", "Point"), ("ui.Canvas", "Shape")],
    };
    let mut v: Vec<(String, String)> = pairs.iter().map(|(s, t)| (fq(s), fq(t))).collect();
    v.sort();
    v
}

/// Expected value per class, in `SHAPES_CLASSES` order.
pub fn shapes_series(r: Relationship) -> [u64; 10] {
    //            AS Ci Co Na Po Re Sh Sq St Ca
    match r {
        Relationship::Methods => [2, 1, 1, 1, 1, 2, 2, 0, 0, 2],
        Relationship::Fields => [3, 1, 3, 0, 2, 2, 0, 0, 3, 2],
        Relationship::Constructors => [1, 2, 0, 0, 1, 1, 0, 1, 0, 1],
        Relationship::Subclasses => [2, 0, 0, 0, 0, 1, 0, 0, 0, 0],
        Relationship::ImplementedInterfaces => [2, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        Relationship::InterfaceImplementations => [0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
        Relationship::ReferencesAsMember => [2, 0, 0, 0, 0, 1, 0, 0, 1, 1],
        Relationship::MembersOfClassType => [0, 0, 1, 0, 2, 0, 0, 0, 2, 0],
        Relationship::ReferencesAsParameter => [0, 0, 0, 0, 5, 0, 1, 0, 1, 0],
        Relationship::ParameterTypeReferences => [1, 1, 0, 0, 0, 1, 0, 1, 0, 3],
        Relationship::ReferencesAsReturnType => [0, 0, 0, 0, 2, 0, 1, 0, 0, 0],
        Relationship::MethodsReturningClasses => [1, 0, 0, 0, 0, 0, 1, 0, 0, 1],
    }
}

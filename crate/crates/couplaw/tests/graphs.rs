mod common;

use common::{fixture, fq, shapes_edges, shapes_series, SHAPES_CLASSES};
use couplaw::scan::scan_tree;
use couplaw_core::graphs::{all_series, build_graphs, CouplingType, GraphOptions, Relationship};

fn shapes() -> couplaw_core::CouplingGraphs {
    let scan = scan_tree(&fixture("shapes")).unwrap();
    assert!(scan.parse_errors.is_empty(), "{:?}", scan.parse_errors);
    build_graphs(&scan.corpus, GraphOptions::default())
}

#[test]
fn shapes_edges_match_hand_enumeration() {
    let g = shapes();
    let named = g.named_edges();
    for ty in CouplingType::ALL {
        let got: Vec<(String, String)> = named
            .iter()
            .filter(|(t, _, _)| *t == ty)
            .map(|(_, s, t)| (s.to_string(), t.to_string()))
            .collect();
        assert_eq!(got, shapes_edges(ty), "{}", ty.name());
    }
}

#[test]
fn shapes_series_match_hand_values() {
    let g = shapes();
    let names: Vec<String> = SHAPES_CLASSES.iter().map(|s| fq(s)).collect();
    for series in all_series(&g) {
        let got_names: Vec<&String> = series.counts.iter().map(|(n, _)| n).collect();
        assert_eq!(got_names, names.iter().collect::<Vec<_>>());
        let got: Vec<u64> = series.values().collect();
        assert_eq!(
            got,
            shapes_series(series.relationship),
            "{}",
            series.relationship
        );
    }
}

#[test]
fn degree_sums_equal_edge_counts() {
    let g = shapes();
    for ty in CouplingType::ALL {
        let e = g.edge_count(ty) as u64;
        assert_eq!(g.in_degrees(ty).iter().sum::<u64>(), e);
        assert_eq!(g.out_degrees(ty).iter().sum::<u64>(), e);
    }
    for r in Relationship::ALL {
        let total: u64 = shapes_series(r).iter().sum();
        if let couplaw_core::graphs::SeriesSource::InDegree(ty)
        | couplaw_core::graphs::SeriesSource::OutDegree(ty) = r.source()
        {
            assert_eq!(total, g.edge_count(ty) as u64, "{r}");
        }
    }
}

#[test]
fn external_nodes_add_edges_but_no_rows() {
    let scan = scan_tree(&fixture("shapes")).unwrap();
    let g = build_graphs(
        &scan.corpus,
        GraphOptions {
            include_external: true,
        },
    );
    assert_eq!(g.class_count(), 10);
    assert!(g.node_count() > 10);
    // unresolved names are kept as written
    let agg = g.named_edges();
    assert!(agg.contains(&(CouplingType::Aggregation, "fx.AbstractShape", "List")));
    // Canvas.Layer is inner, so no edge to Circle from Canvas
    assert!(!agg
        .iter()
        .any(|(_, s, t)| *s == "fx.ui.Canvas" && *t == "fx.Circle"));
    for series in all_series(&g) {
        assert_eq!(series.counts.len(), 10);
    }
}

#[test]
fn readers_fixture() {
    let scan = scan_tree(&fixture("readers")).unwrap();
    let g = build_graphs(&scan.corpus, GraphOptions::default());
    let edges = g.named_edges();
    assert!(edges.contains(&(
        CouplingType::Aggregation,
        "demo.StringFileReader",
        "java.lang.String"
    )));
    assert!(edges.contains(&(
        CouplingType::Interface,
        "demo.StringReader",
        "demo.StringFileReader"
    )));
    let members = couplaw_core::graphs::degree_series(&g, Relationship::MembersOfClassType);
    assert_eq!(members.get("java.lang.String"), Some(1));
    let refs = couplaw_core::graphs::degree_series(&g, Relationship::ReferencesAsMember);
    assert_eq!(refs.get("demo.StringFileReader"), Some(1));
}

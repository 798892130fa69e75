mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use splice_core::diagram::{parse_diagram, DiagramDocument, EdgeEntry, SpliceDiagram, ValidationReport, VertexEntry, VertexKind};
use splice_core::sample::{random_diagrams, SampleOptions};
use splice_core::SpliceError;

#[test]
fn large_two_node_invariants() {
    let d = two_node_large();
    assert_eq!(d.node_degree("a").unwrap(), int(294));
    assert_eq!(d.node_degree("b").unwrap(), int(770));
    assert_eq!(d.linking_number("a", "b").unwrap(), int(420));
    assert_eq!(d.linking_number("a", "a").unwrap(), int(294));
    assert_eq!(d.reduced_linking_number("b", "l1").unwrap(), int(3));
    assert_eq!(d.reduced_linking_number("b", "l2").unwrap(), int(2));
    assert_eq!(d.reduced_linking_number("b", "b").unwrap(), int(1));
    assert_eq!(d.edge_determinant("a", "b").unwrap(), int(119));
    assert_eq!(d.seifert_data("b").unwrap(), vec![2, 5, 7, 11]);
    assert!(d.satisfies_determinant_condition());
}

#[test]
fn small_two_node_invariants() {
    let d = two_node_small();
    assert_eq!(d.node_degree("b").unwrap(), int(110));
    assert_eq!(d.linking_number("a", "l3").unwrap(), int(12));
    assert_eq!(d.edge_determinant("a", "b").unwrap(), int(17));
    assert!(d.satisfies_determinant_condition());
}

#[test]
fn star_invariants() {
    let d = e8();
    assert_eq!(d.node_degree("v").unwrap(), int(30));
    assert_eq!(d.seifert_data("v").unwrap(), vec![2, 3, 5]);
    assert_eq!(d.leaf_count(), 3);
    assert!(d.internal_edges().is_empty());
    assert!(d.satisfies_determinant_condition());
}

fn star_pair(inner_u: i64, inner_v: i64) -> String {
    format!(
        r#"{{"vertices":[{{"id":"u","kind":"node"}},{{"id":"v","kind":"node"}},
        {{"id":"p","kind":"leaf"}},{{"id":"q","kind":"leaf"}},{{"id":"s","kind":"leaf"}},{{"id":"t","kind":"leaf"}}],
        "edges":[{{"u":"u","v":"p","dec_u":2}},{{"u":"u","v":"q","dec_u":3}},
        {{"u":"u","v":"v","dec_u":{inner_u},"dec_v":{inner_v}}},
        {{"u":"v","v":"s","dec_u":5}},{{"u":"v","v":"t","dec_u":7}}]}}"#
    )
}

#[test]
fn determinant_may_vanish_or_go_negative() {
    // 6 shares factors with 2 and 3
    assert!(parse_diagram(&star_pair(6, 35)).is_err());
    let d = parse_diagram(&star_pair(35, 6)).unwrap();
    assert_eq!(d.edge_determinant("u", "v").unwrap(), int(0));
    assert!(!d.satisfies_determinant_condition());
    let neg = parse_diagram(&star_pair(1, 209)).unwrap();
    assert_eq!(neg.edge_determinant("u", "v").unwrap(), int(-1));
    let report = ValidationReport::check(&neg.to_document());
    let det = report.determinant.unwrap();
    assert!(!det.ok);
    assert!(det.citations[0].contains("`u`-`v`"));
}

#[test]
fn structural_errors_are_located() {
    let cases = [
        (
            r#"{"vertices":[{"id":"v","kind":"node"},{"id":"x","kind":"leaf"},{"id":"y","kind":"leaf"},{"id":"z","kind":"leaf"}],
            "edges":[{"u":"v","v":"x","dec_u":2},{"u":"v","v":"y","dec_u":4},{"u":"v","v":"z","dec_u":5}]}"#,
            "share the factor 2",
        ),
        (
            r#"{"vertices":[{"id":"v","kind":"node"},{"id":"x","kind":"leaf"},{"id":"y","kind":"leaf"}],
            "edges":[{"u":"v","v":"x","dec_u":2},{"u":"v","v":"y","dec_u":3}]}"#,
            "valency-2",
        ),
        (
            r#"{"vertices":[{"id":"v","kind":"node"},{"id":"x","kind":"leaf"},{"id":"y","kind":"leaf"},{"id":"z","kind":"leaf"}],
            "edges":[{"u":"v","v":"x","dec_u":0},{"u":"v","v":"y","dec_u":3},{"u":"v","v":"z","dec_u":5}]}"#,
            "non-positive",
        ),
        (
            r#"{"vertices":[{"id":"v","kind":"node"},{"id":"x","kind":"leaf"},{"id":"y","kind":"leaf"},{"id":"z","kind":"leaf"}],
            "edges":[{"u":"v","v":"x","dec_u":2},{"u":"v","v":"y","dec_u":3}]}"#,
            "not connected",
        ),
        (
            r#"{"vertices":[{"id":"u","kind":"node"},{"id":"v","kind":"node"},{"id":"w","kind":"node"}],
            "edges":[{"u":"u","v":"v","dec_u":1,"dec_v":1},{"u":"v","v":"w","dec_u":1,"dec_v":1},{"u":"w","v":"u","dec_u":1,"dec_v":1}],
            "enriched":true}"#,
            "cycle",
        ),
        (
            r#"{"vertices":[{"id":"v","kind":"node"},{"id":"x","kind":"leaf"},{"id":"y","kind":"leaf"},{"id":"z","kind":"leaf"}],
            "edges":[{"u":"v","v":"x","dec_u":2},{"u":"v","v":"y","dec_u":3},{"u":"v","v":"z","dec_u":5}],
            "leaf_order":["x","y"]}"#,
            "leaf `z` missing",
        ),
    ];
    for (doc, needle) in cases {
        match parse_diagram(doc) {
            Err(SpliceError::Structure { location, message }) => {
                assert!(format!("{location}: {message}").contains(needle), "{location}: {message} lacks {needle}")
            }
            other => panic!("expected a structural error containing {needle}, got {other:?}"),
        }
    }
}

#[test]
fn split_then_splice_large() {
    let d = two_node_large();
    let (ga, gb) = d.split_edge("a", "b").unwrap();
    assert_eq!(ga.leaf_ids(), vec!["l1", "l2", "r_a"]);
    assert_eq!(gb.leaf_ids(), vec!["l3", "l4", "l5", "r_b"]);
    assert_eq!(d.leaf_count(), ga.leaf_count() + gb.leaf_count() - 2);
    for g in [&ga, &gb] {
        assert!(g.satisfies_determinant_condition());
        assert!(splice_core::check_semigroup_condition(g).satisfied);
    }
    let back = SpliceDiagram::splice(&ga, "r_a", &gb, "r_b").unwrap();
    assert!(back.is_isomorphic(&d));
    assert_eq!(back.leaf_ids(), d.leaf_ids());
}

#[test]
fn splicing_two_stars() {
    let with_extra = |prefix: &str| {
        let doc = format!(
            r#"{{"vertices":[{{"id":"{p}v","kind":"node"}},{{"id":"{p}x","kind":"leaf"}},{{"id":"{p}y","kind":"leaf"}},
            {{"id":"{p}z","kind":"leaf"}},{{"id":"{p}w","kind":"leaf"}}],
            "edges":[{{"u":"{p}v","v":"{p}x","dec_u":2}},{{"u":"{p}v","v":"{p}y","dec_u":3}},
            {{"u":"{p}v","v":"{p}z","dec_u":5}},{{"u":"{p}v","v":"{p}w","dec_u":1}}]}}"#,
            p = prefix
        );
        parse_diagram(&doc).unwrap()
    };
    let joined = SpliceDiagram::splice(&with_extra("s"), "sw", &with_extra("t"), "tw").unwrap();
    assert_eq!(joined.vertex_count(), 8);
    assert_eq!(joined.edge_count(), 7);
    assert_eq!(joined.nodes().len(), 2);
    assert_eq!(joined.internal_edges().len(), 1);
    assert!(matches!(
        SpliceDiagram::splice(&with_extra("s"), "sv", &with_extra("t"), "tw"),
        Err(SpliceError::NotALeaf(_))
    ));
    assert!(SpliceDiagram::splice(&with_extra("s"), "sw", &with_extra("s"), "sw").is_err());
}

#[test]
fn random_split_splice_round_trip() {
    let opts = SampleOptions {
        min_nodes: 2,
        ..SampleOptions::default()
    };
    for d in random_diagrams(11, 50, &opts) {
        let (u, v, _) = d.internal_edges()[0];
        let (a, b) = (d.id(u).to_string(), d.id(v).to_string());
        let (ga, gb) = d.split_edge(&a, &b).unwrap();
        let ra = ga.leaf_ids().last().unwrap().to_string();
        let rb = gb.leaf_ids().last().unwrap().to_string();
        let back = SpliceDiagram::splice(&ga, &ra, &gb, &rb).unwrap();
        assert!(back.is_isomorphic(&d));
        let (ga2, gb2) = back.split_edge(&a, &b).unwrap();
        assert!(ga2.is_isomorphic(&ga) && gb2.is_isomorphic(&gb));
        assert_eq!(ga2.leaf_ids(), ga.leaf_ids());
        assert_eq!(gb2.leaf_ids(), gb.leaf_ids());
    }
}

#[test]
fn isomorphism_ignores_names_and_leaf_order() {
    let d = two_node_small();
    let mut doc = d.to_document();
    for v in &mut doc.vertices {
        v.id = format!("{}_renamed", v.id);
    }
    for e in &mut doc.edges {
        e.u = format!("{}_renamed", e.u);
        e.v = format!("{}_renamed", e.v);
    }
    doc.leaf_order.reverse();
    for l in &mut doc.leaf_order {
        *l = format!("{l}_renamed");
    }
    let renamed = SpliceDiagram::new(&doc).unwrap();
    assert!(renamed.is_isomorphic(&d));
    assert!(!two_node_large().is_isomorphic(&d));
}

#[test]
fn json_and_dot_export() {
    for d in corpus() {
        let text = d.to_json();
        let back = parse_diagram(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), text);
        let dot = d.to_dot();
        assert!(dot.starts_with("graph splice {"));
    }
    let dot = two_node_large().to_dot();
    assert!(dot.contains("\"a\" -- \"b\" [taillabel=\"49\", headlabel=\"11\"];"));
}

/// Random labelled tree from a Pruefer code, with kinds given by valency.
fn tree_document(n: usize, code: &[usize], decs: &[i64]) -> Option<DiagramDocument> {
    let mut degree = vec![1usize; n];
    let mut edges = Vec::new();
    if n >= 2 {
        for &c in code {
            degree[c] += 1;
        }
        let mut deg = degree.clone();
        for &c in code {
            let leaf = (0..n).find(|&i| deg[i] == 1).unwrap();
            edges.push((leaf, c));
            deg[leaf] -= 1;
            deg[c] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| deg[i] == 1).collect();
        edges.push((rest[0], rest[1]));
    } else {
        degree[0] = 0;
    }
    let valency2 = degree.iter().filter(|&&d| d == 2).count();
    if valency2 > 1 {
        return None;
    }
    let kind = |i: usize| if degree[i] >= 2 { VertexKind::Node } else { VertexKind::Leaf };
    let mut k = 0;
    let mut next_dec = || {
        k += 1;
        decs[(k - 1) % decs.len()]
    };
    let edges = edges
        .into_iter()
        .map(|(x, y)| EdgeEntry {
            u: format!("v{x}"),
            v: format!("v{y}"),
            dec_u: (kind(x) == VertexKind::Node).then(&mut next_dec),
            dec_v: (kind(y) == VertexKind::Node).then(&mut next_dec),
        })
        .collect();
    Some(DiagramDocument {
        vertices: (0..n)
            .map(|i| VertexEntry {
                id: format!("v{i}"),
                kind: kind(i),
            })
            .collect(),
        edges,
        leaf_order: Vec::new(),
        enriched: valency2 == 1,
    })
}

fn small_trees() -> impl Strategy<Value = SpliceDiagram> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0..n, n.saturating_sub(2)),
                proptest::collection::vec(1i64..=7, 12),
            )
        })
        .prop_filter_map("valid small diagram", |(n, code, decs)| {
            tree_document(n, &code, &decs).and_then(|doc| SpliceDiagram::new(&doc).ok())
        })
}

fn multi_node() -> impl Strategy<Value = SpliceDiagram> {
    any::<u64>().prop_map(|seed| {
        random_diagrams(
            seed,
            1,
            &SampleOptions {
                min_nodes: 2,
                ..SampleOptions::default()
            },
        )
        .remove(0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn linking_matches_path_walk(d in small_trees()) {
        for x in d.ids() {
            for y in d.ids() {
                let l = d.linking_number(x, y).unwrap();
                prop_assert_eq!(&l, &d.linking_number(y, x).unwrap());
                prop_assert_eq!(l, linking_oracle(&d, x, y));
            }
        }
    }

    #[test]
    fn reduction_identity(d in small_trees()) {
        for v in d.nodes() {
            for ne in d.node_edges(v) {
                for &p in &ne.leaves {
                    let l = d.leaves()[p];
                    let lhs = d.linking_number(d.id(v), d.id(l)).unwrap() * ne.decoration;
                    let rhs = d.reduced_linking_number(d.id(v), d.id(l)).unwrap() * d.node_degree(d.id(v)).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn multiplicative_along_paths(d in multi_node()) {
        let ids = d.ids().to_vec();
        for u in 0..ids.len() {
            for v in 0..ids.len() {
                let path = d.path(u, v);
                for &x in path.iter().skip(1).take(path.len().saturating_sub(2)) {
                    let lhs = d.linking_number(&ids[u], &ids[v]).unwrap() * d.node_degree(&ids[x]).unwrap();
                    let rhs = d.linking_number(&ids[u], &ids[x]).unwrap() * d.linking_number(&ids[x], &ids[v]).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn determinant_identity(d in multi_node()) {
        for (u, v, e) in d.internal_edges() {
            let (a, b) = (d.id(u), d.id(v));
            let det = d.edge_determinant(a, b).unwrap();
            let luv = d.linking_number(a, b).unwrap();
            let ends = BigInt::from(d.decoration(u, e)) * d.decoration(v, e);
            prop_assert_eq!(&det, &(ends - &luv));
            let positive = det > BigInt::from(0);
            let products = d.node_degree(a).unwrap() * d.node_degree(b).unwrap() > &luv * &luv;
            prop_assert_eq!(positive, products);
        }
    }
}

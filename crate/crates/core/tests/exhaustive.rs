//! Every tree on a few leaves, checked against brute force.

use std::collections::{BTreeSet, HashSet};

use treescape::oracle::{
    all_tbr_results, enumerate_all_trees, enumerate_neighbors, pairwise_graph,
};
use treescape::{
    construct_graph, decode_tree, nni_moves, rspr_forest_keys, sdlnewick_tree, tbr_forest_keys,
    uspr_forest_keys, CanonicalString, MoveKind, OracleMove, Rootedness, Strictness, Tree,
};

fn key_sets(
    trees: &[Tree],
    keys: fn(&Tree) -> treescape::Result<Vec<CanonicalString>>,
) -> Vec<HashSet<CanonicalString>> {
    trees
        .iter()
        .map(|t| keys(t).unwrap().into_iter().collect())
        .collect()
}

/// Keys intersect exactly when the oracle says the trees are one move apart.
fn assert_keys_match_oracle(
    trees: &[Tree],
    keys: fn(&Tree) -> treescape::Result<Vec<CanonicalString>>,
    kind: OracleMove,
) {
    let sets = key_sets(trees, keys);
    let strings: Vec<CanonicalString> = trees.iter().map(sdlnewick_tree).collect();
    for (i, t) in trees.iter().enumerate() {
        let near = enumerate_neighbors(t, kind).unwrap();
        for j in 0..trees.len() {
            if i == j {
                continue;
            }
            let shared = !sets[i].is_disjoint(&sets[j]);
            assert_eq!(
                shared,
                near.contains(&strings[j]),
                "{kind:?}: {} vs {}",
                strings[i],
                strings[j]
            );
        }
    }
}

#[test]
fn rooted_spr_keys_exhaustive() {
    for n in [3, 4, 5] {
        assert_keys_match_oracle(
            &enumerate_all_trees(n, Rootedness::Rooted),
            rspr_forest_keys,
            OracleMove::RootedSpr,
        );
    }
}

#[test]
fn unrooted_spr_keys_exhaustive() {
    for n in [4, 5, 6] {
        let trees = enumerate_all_trees(n, Rootedness::Unrooted);
        assert_keys_match_oracle(&trees, uspr_forest_keys, OracleMove::UnrootedSpr);
    }
}

#[test]
fn tbr_keys_exhaustive() {
    for n in [4, 5, 6] {
        assert_keys_match_oracle(
            &enumerate_all_trees(n, Rootedness::Unrooted),
            tbr_forest_keys,
            OracleMove::Tbr,
        );
    }
}

#[test]
fn key_lists_have_no_repeats() {
    for t in enumerate_all_trees(6, Rootedness::Unrooted) {
        for keys in [uspr_forest_keys(&t).unwrap(), tbr_forest_keys(&t).unwrap()] {
            let unique: HashSet<_> = keys.iter().collect();
            assert_eq!(unique.len(), keys.len(), "{}", sdlnewick_tree(&t));
        }
        assert_eq!(uspr_forest_keys(&t).unwrap().len(), 2 * t.edge_count());
    }
    for t in enumerate_all_trees(5, Rootedness::Rooted) {
        let keys = rspr_forest_keys(&t).unwrap();
        assert_eq!(keys.len(), t.edge_count());
        assert_eq!(keys.iter().collect::<HashSet<_>>().len(), keys.len());
    }
}

#[test]
fn graphs_match_pairwise_oracle() {
    let worlds = [
        (4, Rootedness::Rooted, MoveKind::Spr, OracleMove::RootedSpr),
        (4, Rootedness::Rooted, MoveKind::Nni, OracleMove::Nni),
        (5, Rootedness::Rooted, MoveKind::Spr, OracleMove::RootedSpr),
        (5, Rootedness::Rooted, MoveKind::Nni, OracleMove::Nni),
        (4, Rootedness::Unrooted, MoveKind::Nni, OracleMove::Nni),
        (
            5,
            Rootedness::Unrooted,
            MoveKind::Spr,
            OracleMove::UnrootedSpr,
        ),
        (5, Rootedness::Unrooted, MoveKind::Tbr, OracleMove::Tbr),
        (5, Rootedness::Unrooted, MoveKind::Nni, OracleMove::Nni),
        (
            6,
            Rootedness::Unrooted,
            MoveKind::Spr,
            OracleMove::UnrootedSpr,
        ),
        (6, Rootedness::Unrooted, MoveKind::Tbr, OracleMove::Tbr),
    ];
    for (n, rootedness, kind, oracle) in worlds {
        let trees = enumerate_all_trees(n, rootedness);
        let fast = construct_graph(&trees, kind).unwrap();
        let (slow, _) = pairwise_graph(&trees, oracle).unwrap();
        assert_eq!(fast.graph, slow, "{n} {rootedness} {kind:?}");
        assert_eq!(fast.graph.validate(), Ok(()));
    }
}

#[test]
fn degrees_equal_neighborhood_sizes() {
    let trees = enumerate_all_trees(5, Rootedness::Rooted);
    let g = construct_graph(&trees, MoveKind::Spr).unwrap().graph;
    assert_eq!(g.vertex_count(), 105);
    for (t, list) in trees.iter().zip(g.neighbor_lists()) {
        assert_eq!(
            list.len(),
            enumerate_neighbors(t, OracleMove::RootedSpr).unwrap().len()
        );
    }
}

#[test]
fn quartets_form_a_triangle() {
    let trees = enumerate_all_trees(4, Rootedness::Unrooted);
    let g = construct_graph(&trees, MoveKind::Nni).unwrap().graph;
    assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
}

#[test]
fn canonical_strings_are_injective_and_decode() {
    for (n, r, count) in [
        (4, Rootedness::Rooted, 15),
        (5, Rootedness::Rooted, 105),
        (5, Rootedness::Unrooted, 15),
        (6, Rootedness::Unrooted, 105),
    ] {
        let trees = enumerate_all_trees(n, r);
        let strings: HashSet<CanonicalString> = trees.iter().map(sdlnewick_tree).collect();
        assert_eq!(strings.len(), count);
        for s in &strings {
            let t = decode_tree(s.as_bytes(), Strictness::Strict).unwrap();
            assert_eq!(&sdlnewick_tree(&t), s);
            assert_eq!(t.rootedness(), r);
        }
    }
    // Rooted on n leaves and unrooted on n + 1 leaves never collide.
    let rooted: HashSet<_> = enumerate_all_trees(4, Rootedness::Rooted)
        .iter()
        .map(sdlnewick_tree)
        .collect();
    let unrooted: HashSet<_> = enumerate_all_trees(5, Rootedness::Unrooted)
        .iter()
        .map(sdlnewick_tree)
        .collect();
    assert!(rooted.is_disjoint(&unrooted));
}

#[test]
fn nni_moves_match_oracle() {
    for (ns, r) in [(3..=6, Rootedness::Rooted), (4..=7, Rootedness::Unrooted)] {
        for n in ns {
            for t in enumerate_all_trees(n, r).iter().take(200) {
                let fast: BTreeSet<CanonicalString> =
                    nni_moves(t).iter().map(sdlnewick_tree).collect();
                let slow = enumerate_neighbors(t, OracleMove::Nni).unwrap();
                assert_eq!(fast, slow, "{}", sdlnewick_tree(t));
                let spr = enumerate_neighbors(t, OracleMove::spr(r)).unwrap();
                assert!(fast.is_subset(&spr));
            }
        }
    }
}

#[test]
fn neighborhood_nesting_and_sizes() {
    for n in 4..=7 {
        for t in enumerate_all_trees(n, Rootedness::Unrooted)
            .iter()
            .step_by(7)
        {
            let nni = enumerate_neighbors(t, OracleMove::Nni).unwrap();
            let spr = enumerate_neighbors(t, OracleMove::UnrootedSpr).unwrap();
            let tbr = enumerate_neighbors(t, OracleMove::Tbr).unwrap();
            assert!(nni.is_subset(&spr) && spr.is_subset(&tbr));
            assert_eq!(nni.len(), 2 * (n - 3));
            assert_eq!(spr.len(), 2 * (n - 3) * (2 * n - 7));
        }
    }
}

#[test]
fn tbr_with_a_leaf_side_is_spr() {
    for n in 5..=7 {
        for t in enumerate_all_trees(n, Rootedness::Unrooted)
            .iter()
            .step_by(11)
        {
            let spr = enumerate_neighbors(t, OracleMove::UnrootedSpr).unwrap();
            let own = sdlnewick_tree(t);
            for e in t.edges() {
                let leaf_side = if t.node(e.u).is_leaf() {
                    Some(true)
                } else if t.node(e.v).is_leaf() {
                    Some(false)
                } else {
                    None
                };
                let Some(u_is_leaf) = leaf_side else { continue };
                for f in t.edges() {
                    let attempt = if u_is_leaf {
                        t.apply_tbr(e, None, Some(f))
                    } else {
                        t.apply_tbr(e, Some(f), None)
                    };
                    if let Ok(out) = attempt {
                        let s = sdlnewick_tree(&out);
                        assert!(s == own || spr.contains(&s));
                    }
                }
            }
            // TBR results overall are exactly the TBR neighborhood plus t.
            let all: BTreeSet<_> = all_tbr_results(t).iter().map(sdlnewick_tree).collect();
            assert!(all.contains(&own));
        }
    }
}

mod common;

use std::collections::BTreeSet;

use common::*;
use ecctree_core::enumeration::{canonical_code, tree_from_prufer};
use ecctree_core::graph::{bfs_distances, diametral_path, eccentricities_all_pairs, eccentricity_profile};
use ecctree_core::invariants::{all_invariants, ree, InvariantKind};
use ecctree_core::io::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use ecctree_core::parameters::{bipartition_sizes, domination_number, matching_number};
use ecctree_core::transforms::{
    alpha_full, alpha_sites, diametral_pendant_shift, pendant_regraft, rho_sites, rho_transform, theta_sites,
    theta_transform, GraftOutcome,
};
use ecctree_core::Tree;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

fn arb_tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |seq| tree_from_prufer(n, &seq).unwrap())
    })
}

fn arb_tree_and_perm(max_n: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    arb_tree(max_n).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn lcm_upto(m: usize) -> num_bigint::BigInt {
    (1..=m).fold(num_bigint::BigInt::one(), |acc, k| acc.lcm(&num_bigint::BigInt::from(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn degree_sum(t in arb_tree(50)) {
        prop_assert_eq!(t.degrees().iter().sum::<usize>(), 2 * (t.order() - 1));
    }

    #[test]
    fn profile_shape(t in arb_tree(50)) {
        let p = eccentricity_profile(&t);
        prop_assert_eq!(&p.ecc, &eccentricities_all_pairs(&t));
        prop_assert!(p.diameter == 2 * p.radius || p.diameter + 1 == 2 * p.radius);
        prop_assert!(!p.centers.is_empty() && p.centers.len() <= 2);
        if let [a, b] = p.centers[..] {
            prop_assert!(t.has_edge(a, b));
        }
    }

    #[test]
    fn diametral_path_is_a_path(t in arb_tree(50)) {
        let p = diametral_path(&t);
        let d = eccentricity_profile(&t).diameter;
        prop_assert_eq!(p.len(), d + 1);
        prop_assert!(p.windows(2).all(|w| t.has_edge(w[0], w[1])));
        prop_assert_eq!(bfs_distances(&t, p[0]).unwrap()[p[d]], d);
    }

    #[test]
    fn dual_forms_agree(t in arb_tree(50)) {
        let all = all_invariants(&t).unwrap();
        prop_assert_eq!(&all[&InvariantKind::ReeEdge], &all[&InvariantKind::ReeVertex]);
        prop_assert_eq!(&all[&InvariantKind::EccConnectivityEdge], &all[&InvariantKind::EccConnectivityVertex]);
    }

    #[test]
    fn ree_denominator_divides_lcm(t in arb_tree(40)) {
        let l = lcm_upto(t.order() - 1);
        prop_assert!((l % ree(&t).denom()) == num_bigint::BigInt::from(0));
    }

    #[test]
    fn pendant_addition_matches_incremental_distances(t in arb_tree(30), at in any::<prop::sample::Index>()) {
        let n = t.order();
        let v = at.index(n);
        let mut edges = t.edges();
        edges.push((v, n));
        let grown = Tree::from_edges(n + 1, &edges).unwrap();
        let mut d = brute_distances(&t);
        let row: Vec<usize> = (0..n).map(|x| d[x][v] + 1).collect();
        for (x, r) in d.iter_mut().enumerate() {
            r.push(row[x]);
        }
        let mut last = row.clone();
        last.push(0);
        d.push(last);
        let expected = brute_invariants_from(&grown, &d);
        let all = all_invariants(&grown).unwrap();
        prop_assert_eq!(&all[&InvariantKind::ReeVertex], &expected.ree_vertex);
        prop_assert_eq!(&all[&InvariantKind::Wiener], &expected.wiener);
        prop_assert_eq!(&all[&InvariantKind::Harary], &expected.harary);
        prop_assert_eq!(&all[&InvariantKind::EccConnectivityVertex], &expected.ecc_conn);
        prop_assert_eq!(&all[&InvariantKind::AvgEccentricity], &expected.avg_ecc);
        prop_assert_eq!(&all[&InvariantKind::EccDistanceSum], &expected.ecc_dist);
    }

    #[test]
    fn bipartition_is_proper(t in arb_tree(50)) {
        let dist = bfs_distances(&t, 0).unwrap();
        prop_assert!(t.edges().iter().all(|&(u, v)| dist[u] % 2 != dist[v] % 2));
        let (p, q) = bipartition_sizes(&t);
        prop_assert!(p <= q);
        prop_assert_eq!(p + q, t.order());
    }

    #[test]
    fn domination_at_most_matching(t in arb_tree(50)) {
        prop_assert!(domination_number(&t) <= matching_number(&t));
    }

    #[test]
    fn code_ignores_labels((t, perm) in arb_tree_and_perm(30)) {
        prop_assert_eq!(canonical_code(&t), canonical_code(&t.relabeled(&perm).unwrap()));
    }

    #[test]
    fn text_formats_round_trip(t in arb_tree(80)) {
        prop_assert_eq!(&parse_edge_list(&write_edge_list(&t)).unwrap(), &t);
        prop_assert_eq!(&parse_graph6(&write_graph6(&t)).unwrap(), &t);
    }

    #[test]
    fn transforms_keep_trees(t in arb_tree(16)) {
        let n = t.order();
        let mut outcomes: Vec<GraftOutcome> = Vec::new();
        for (w, v, roots) in rho_sites(&t) {
            let a = rho_transform(&t, w, v, &roots).unwrap();
            prop_assert_eq!(&a, &rho_transform(&t, w, v, &roots).unwrap());
            outcomes.push(a);
        }
        for (v1, vl) in alpha_sites(&t) {
            outcomes.push(alpha_full(&t, v1, vl).unwrap());
        }
        for (v, u, w) in theta_sites(&t) {
            outcomes.push(theta_transform(&t, v, u, w).unwrap());
        }
        if let Ok((o, _)) = diametral_pendant_shift(&t) {
            prop_assert_eq!(&o, &diametral_pendant_shift(&t).unwrap().0);
            outcomes.push(o);
        }
        if let Ok(o) = pendant_regraft(&t) {
            outcomes.push(o);
        }
        for o in outcomes {
            prop_assert_eq!(o.tree.order(), n);
            prop_assert_eq!(o.tree.size(), n - 1);
            prop_assert_eq!(o.tree.degree(o.graft.from) + o.graft.moved.len(), t.degree(o.graft.from));
            prop_assert_eq!(o.tree.degree(o.graft.to), t.degree(o.graft.to) + o.graft.moved.len());
        }
    }
}

#[test]
fn random_labeled_sample_has_many_classes() {
    let mut r = rng(1);
    let codes: BTreeSet<_> = (0..300).map(|_| canonical_code(&random_tree(&mut r, 9))).collect();
    assert!(codes.len() > 30);
}

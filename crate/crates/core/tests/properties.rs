use proptest::prelude::*;

use seg4::classify::{classify, Dispatch};
use seg4::construct::{label_any, LabelOutcome};
use seg4::labeling::{edge_label_target, negate};
use seg4::search::{count_all, search, SearchConfig, SearchResult};
use seg4::{induce, verify, EdgeLabeling, TreeSpec, Vertex};

/// Raw child counts with at least two positive entries.
fn raw_spec(max_n: usize, max_a: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=max_a, 2..=max_n).prop_filter("diameter four", |v| v.iter().filter(|&&a| a > 0).count() >= 2)
}

/// A spec together with some bijective labeling of its edges.
fn labeled(max_n: usize, max_a: usize) -> impl Strategy<Value = (TreeSpec, EdgeLabeling)> {
    raw_spec(max_n, max_a).prop_flat_map(|raw| {
        let spec = TreeSpec::canonicalize(&raw).unwrap();
        let labels = Just(edge_label_target(spec.size())).prop_shuffle();
        (Just(spec), labels).prop_map(|(spec, labels)| {
            let f = spec.build().edges().iter().copied().zip(labels).collect();
            (spec, f)
        })
    })
}

fn seg_labeling(spec: &TreeSpec) -> Option<EdgeLabeling> {
    match search(&spec.build(), &SearchConfig::default()).unwrap().result {
        SearchResult::Found(f) => Some(f),
        _ => None,
    }
}

proptest! {
    #[test]
    fn canonical_form_ignores_order(raw in raw_spec(7, 6), seed in any::<u64>()) {
        let spec = TreeSpec::canonicalize(&raw).unwrap();
        let mut shuffled = raw.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        shuffled.reverse();
        prop_assert_eq!(TreeSpec::canonicalize(&shuffled).unwrap(), spec.clone());
        prop_assert_eq!(TreeSpec::canonicalize(spec.counts()).unwrap(), spec.clone());
        prop_assert_eq!(spec.to_string().parse::<TreeSpec>().unwrap(), spec);
    }

    #[test]
    fn built_tree_has_expected_counts(raw in raw_spec(8, 7)) {
        let spec = TreeSpec::canonicalize(&raw).unwrap();
        let tree = spec.build();
        prop_assert_eq!(tree.size(), raw.len() + raw.iter().sum::<usize>());
        prop_assert_eq!(tree.vertices().count(), tree.order());
        prop_assert_eq!(tree.degree(Vertex::Root), raw.len());
        let degree_sum: usize = tree.vertices().map(|v| tree.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * tree.size());
        let (j, k, l) = (spec.j(), spec.k(), spec.l());
        prop_assert_eq!(j + k + l, raw.len());
        prop_assert_eq!(j, raw.iter().filter(|&&a| a == 0).count());
        prop_assert_eq!(l, raw.iter().filter(|&&a| a % 2 == 1).count());
    }

    #[test]
    fn classification_is_total_and_consistent(raw in raw_spec(9, 9)) {
        let spec = TreeSpec::canonicalize(&raw).unwrap();
        let c = classify(&spec);
        prop_assert_eq!(c.q, spec.size());
        prop_assert_eq!((c.j, c.k, c.l), (spec.j(), spec.k(), spec.l()));
        let outcome = label_any(&spec, None).unwrap();
        match (&c.dispatch, outcome) {
            (Dispatch::Constructive { .. }, LabelOutcome::Labeled { labeling, .. }) => {
                prop_assert!(verify(&spec.build(), &labeling).is_seg);
            }
            (Dispatch::NotSeg(_), LabelOutcome::ProvedNotSeg(_)) => {}
            (Dispatch::Conjectured(_) | Dispatch::Uncovered, LabelOutcome::Unknown(_)) => {}
            (d, o) => prop_assert!(false, "{:?} gave {:?}", d, o),
        }
    }

    #[test]
    fn vertex_sums_are_linear_and_balanced((spec, f) in labeled(6, 5), weights in prop::collection::vec(-20i64..20, 40)) {
        let tree = spec.build();
        let sums = induce(&tree, &f).unwrap();
        // every edge label is counted at both endpoints
        prop_assert_eq!(sums.values().sum::<i64>(), 2 * f.iter().map(|(_, x)| x).sum::<i64>());
        prop_assert_eq!(sums.values().sum::<i64>(), 0);
        let g: EdgeLabeling = tree.edges().iter().copied().zip(weights).collect();
        let both = induce(&tree, &(&f + &g)).unwrap();
        let gs = induce(&tree, &g).unwrap();
        for v in tree.vertices() {
            prop_assert_eq!(both.get(v).unwrap(), sums.get(v).unwrap() + gs.get(v).unwrap());
        }
    }

    #[test]
    fn verification_commutes_with_negation((spec, f) in labeled(6, 5)) {
        let tree = spec.build();
        prop_assert_eq!(verify(&tree, &f).is_seg, verify(&tree, &negate(&f)).is_seg);
        prop_assert_eq!(negate(&negate(&f)), f);
    }

    #[test]
    fn shared_pendant_label_is_never_seg((spec, f) in labeled(6, 5), pick in any::<(usize, usize)>()) {
        let tree = spec.build();
        let pendants: Vec<Vertex> = tree.edges().iter().copied().filter(|&e| tree.is_pendant(e)).collect();
        prop_assume!(pendants.len() >= 2);
        let a = pendants[pick.0 % pendants.len()];
        let b = pendants[(pick.0 % pendants.len() + 1 + pick.1 % (pendants.len() - 1)) % pendants.len()];
        let mut f = f;
        f.insert(b, f.get(a).unwrap());
        prop_assert!(!verify(&tree, &f).is_seg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn odd_size_labelings_put_zero_on_the_spine(raw in raw_spec(5, 4)) {
        let spec = TreeSpec::canonicalize(&raw).unwrap();
        prop_assume!(spec.size() % 2 == 1 && spec.size() <= 11);
        if let Some(f) = seg_labeling(&spec) {
            let zero = f.iter().find(|&(_, x)| x == 0).map(|(e, _)| e).unwrap();
            prop_assert!(matches!(zero, Vertex::Spine(i) if spec.a(i) > 0), "{:?}", zero);
        }
    }

    #[test]
    fn count_is_even_and_flag_neutral(raw in raw_spec(4, 4), mask in 0u8..8) {
        let spec = TreeSpec::canonicalize(&raw).unwrap();
        prop_assume!(spec.size() <= 9);
        let tree = spec.build();
        let plain = count_all(&tree, &SearchConfig::default().with_symmetry_mask(0)).unwrap();
        let broken = count_all(&tree, &SearchConfig::default().with_symmetry_mask(mask)).unwrap();
        prop_assert_eq!(plain, broken);
        prop_assert_eq!(plain % 2, 0);
        prop_assert_eq!(plain > 0, seg_labeling(&spec).is_some());
    }
}

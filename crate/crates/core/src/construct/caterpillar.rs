//! Caterpillars `RT(0^j, a_{j+1}, a_{j+2})`.

use super::{lab, settled, Builder, ConstructError, LabelOutcome};
use crate::classify::{classify, Dispatch, Family, Lemma, Params};
use crate::tree::TreeSpec;

pub fn label_even_caterpillar(spec: &TreeSpec) -> Result<LabelOutcome, ConstructError> {
    label_caterpillar(spec, Family::EvenCaterpillar)
}

pub fn label_odd_caterpillar(spec: &TreeSpec) -> Result<LabelOutcome, ConstructError> {
    label_caterpillar(spec, Family::OddCaterpillar)
}

fn label_caterpillar(spec: &TreeSpec, expected: Family) -> Result<LabelOutcome, ConstructError> {
    let class = classify(spec);
    if class.family != expected {
        return Err(ConstructError::WrongFamily {
            spec: spec.clone(),
            family: class.family,
        });
    }
    if let Some(outcome) = settled(&class.dispatch) {
        return Ok(outcome);
    }
    let Dispatch::Constructive { lemma, case, params } = &class.dispatch else {
        unreachable!()
    };
    let mut b = Builder::new(spec, *lemma, params);
    match (lemma, case) {
        (Lemma::ESameParity, Some(1)) => same_parity_even(&mut b, params),
        (Lemma::ESameParity, _) => same_parity_odd(&mut b, params),
        (Lemma::OOppParity, _) => odd_zeros_opposite(&mut b, params),
        (Lemma::EOppParity, _) => even_zeros_opposite(&mut b, params),
        (Lemma::OEE, _) => odd_zeros_even_even(&mut b, params),
        (Lemma::LeadingOne, _) => leading_one(&mut b, params),
        (Lemma::OOO, _) => odd_zeros_odd_odd(&mut b, params),
        _ => unreachable!("{lemma} is not a caterpillar construction"),
    }
    b.finish()
}

/// `RT(0^{2r}, 2s, 2t)`, labels `±1..±(r+s+t+1)`.
fn same_parity_even(b: &mut Builder, p: &Params) {
    let (r, s, t) = (p.r, p.s, p.t);
    for i in 1..=r + 1 {
        b.spine_pair(2 * i - 1, lab(i));
    }
    for i in 1..=s {
        b.leaf_pair(2 * r + 1, 2 * i - 1, lab(r + 1 + i));
    }
    for i in 1..=t {
        b.leaf_pair(2 * r + 2, 2 * i - 1, lab(r + s + 1 + i));
    }
}

/// `RT(0^{2r}, 2s-1, 2t-1)`, labels `±1..±(r+s+t)`.
fn same_parity_odd(b: &mut Builder, p: &Params) {
    let (r, s, t) = (p.r, p.s, p.t);
    b.spine_pair(2 * r + 1, 1);
    b.leaf(2 * r + 1, 1, -2);
    b.leaf(2 * r + 2, 1, 2);
    for i in 1..=r {
        b.spine_pair(2 * i - 1, lab(2 + i));
    }
    for i in 1..s {
        b.leaf_pair(2 * r + 1, 2 * i, lab(r + 2 + i));
    }
    for i in 1..t {
        b.leaf_pair(2 * r + 2, 2 * i, lab(r + s + 1 + i));
    }
}

/// `RT(0^{2r-1}, 2s, 2t-1)`, labels `±1..±(r+s+t)`.
fn odd_zeros_opposite(b: &mut Builder, p: &Params) {
    let (r, s, t) = (p.r, p.s, p.t);
    b.spine(2 * r + 1, 1);
    b.leaf(2 * r + 1, 1, -1);
    for i in 1..=r {
        b.spine_pair(2 * i - 1, lab(1 + i));
    }
    for i in 1..=s {
        b.leaf_pair(2 * r, 2 * i - 1, lab(r + 1 + i));
    }
    for i in 1..t {
        b.leaf_pair(2 * r + 1, 2 * i, lab(r + s + 1 + i));
    }
}

/// `RT(0^{2r}, 2s, 2t-1)`, labels `0, ±1..±(r+s+t)`.
fn even_zeros_opposite(b: &mut Builder, p: &Params) {
    let (r, s, t) = (p.r, p.s, p.t);
    let top = lab(r + s + t);
    b.spine(2 * r + 1, 0);
    b.spine(2 * r + 2, 1);
    b.leaf(2 * r + 1, 1, -1);
    b.leaf(2 * r + 1, 2, -top);
    b.leaf(2 * r + 2, 1, top);
    for i in 1..=r {
        b.spine_pair(2 * i - 1, lab(1 + i));
    }
    for i in 2..=s {
        b.leaf_pair(2 * r + 1, 2 * i - 1, lab(r + i));
    }
    for i in 1..t {
        b.leaf_pair(2 * r + 2, 2 * i, lab(r + s + i));
    }
}

/// `RT(0^{2r-1}, 2s, 2t)`, labels `0, ±1..±(r+s+t)`.
fn odd_zeros_even_even(b: &mut Builder, p: &Params) {
    let (r, s, t) = (p.r, p.s, p.t);
    let top = lab(r + s + t);
    b.spine(1, 1);
    b.spine(2 * r, 0);
    b.spine(2 * r + 1, top);
    b.leaf(2 * r, 1, -1);
    b.leaf(2 * r, 2, -top);
    for i in 1..r {
        b.spine_pair(2 * i, lab(1 + i));
    }
    // the remaining pairs go on the leaf edges of v_{2r} and v_{2r+1}
    for i in 1..s {
        b.leaf_pair(2 * r, 2 * i + 1, lab(r + i));
    }
    for i in 1..=t {
        b.leaf_pair(2 * r + 1, 2 * i - 1, lab(r + s - 1 + i));
    }
}

/// `RT(0^{2r+1}, 1, 2t+1)` with `r, t >= 1`, labels `0, ±1..±(r+t+2)`.
fn leading_one(b: &mut Builder, p: &Params) {
    let (r, t) = (p.r, p.t);
    let top = lab(r + t + 2);
    b.spine(1, -1);
    b.spine(2, -2);
    b.spine(3, 3);
    b.spine(2 * r + 2, 1);
    b.spine(2 * r + 3, 0);
    b.leaf(2 * r + 2, 1, top);
    b.leaf(2 * r + 3, 1, 2);
    b.leaf(2 * r + 3, 2, -3);
    b.leaf(2 * r + 3, 3, -top);
    for i in 2..=r {
        b.spine_pair(2 * i, lab(i + 2));
    }
    for i in 2..=t {
        b.leaf_pair(2 * r + 3, 2 * i, lab(r + 1 + i));
    }
}

/// `RT(0^{2r+1}, 2s+1, 2t+1)` with `t >= s >= 1`, labels `0, ±1..±(r+s+t+2)`.
fn odd_zeros_odd_odd(b: &mut Builder, p: &Params) {
    let (r, s, t) = (p.r, p.s, p.t);
    let top = lab(r + s + t + 2);
    b.spine(1, top);
    b.spine(2 * r + 2, 1);
    b.spine(2 * r + 3, 0);
    b.leaf(2 * r + 2, 1, -1);
    b.leaf(2 * r + 2, 2, -2);
    b.leaf(2 * r + 2, 3, 3);
    b.leaf(2 * r + 3, 1, 2);
    b.leaf(2 * r + 3, 2, -3);
    b.leaf(2 * r + 3, 3, -top);
    for i in 1..=r {
        b.spine_pair(2 * i, lab(3 + i));
    }
    for i in 2..=s {
        b.leaf_pair(2 * r + 2, 2 * i, lab(r + 2 + i));
    }
    for i in 2..=t {
        b.leaf_pair(2 * r + 3, 2 * i, lab(r + s + 1 + i));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{NonExistence, Provenance};
    use crate::labeling::{induce, Label};
    use crate::tree::{parse_spec, Vertex::*};

    fn labeled(text: &str) -> (crate::tree::RootedTree, crate::labeling::EdgeLabeling, Lemma) {
        let spec = parse_spec(text).unwrap();
        let outcome = if spec.size().is_multiple_of(2) {
            label_even_caterpillar(&spec)
        } else {
            label_odd_caterpillar(&spec)
        };
        match outcome.unwrap() {
            LabelOutcome::Labeled {
                labeling,
                source: Provenance::Lemma(lemma),
            } => (spec.build(), labeling, lemma),
            other => panic!("{text}: {other:?}"),
        }
    }

    #[test]
    fn two_two() {
        let (tree, f, lemma) = labeled("RT(2,2)");
        assert_eq!(lemma, Lemma::ESameParity);
        let got: Vec<Label> = f.in_order(&tree).into_iter().map(Option::unwrap).collect();
        assert_eq!(got, vec![1, -1, 2, -2, 3, -3]);
        let mut sums: Vec<Label> = induce(&tree, &f).unwrap().values().collect();
        sums.sort();
        assert_eq!(sums, vec![-3, -2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn path_case_two() {
        let (tree, f, _) = labeled("RT(1,1)");
        assert_eq!(f.get(Spine(1)), Some(1));
        assert_eq!(f.get(Spine(2)), Some(-1));
        assert_eq!(f.get(Leaf(1, 1)), Some(-2));
        assert_eq!(f.get(Leaf(2, 1)), Some(2));
        assert_eq!(tree.size(), 4);
    }

    #[test]
    fn two_one() {
        let (tree, f, lemma) = labeled("RT(2,1)");
        assert_eq!(lemma, Lemma::EOppParity);
        let got: Vec<Label> = f.in_order(&tree).into_iter().map(Option::unwrap).collect();
        assert_eq!(got, vec![0, 1, -1, -2, 2]);
        let mut sums: Vec<Label> = induce(&tree, &f).unwrap().values().collect();
        sums.sort();
        assert_eq!(sums, vec![-3, -2, -1, 1, 2, 3]);
    }

    #[test]
    fn even_even_reference() {
        let (tree, f, lemma) = labeled("RT(0^3,2,4)");
        assert_eq!(lemma, Lemma::OEE);
        let got: Vec<Label> = f.in_order(&tree).into_iter().map(Option::unwrap).collect();
        assert_eq!(got, vec![1, 2, -2, 0, 5, -1, -5, 3, -3, 4, -4]);
    }

    #[test]
    fn odd_odd_reference() {
        let (tree, f, lemma) = labeled("RT(0^3,3,5)");
        assert_eq!(lemma, Lemma::OOO);
        let got: Vec<Label> = f.in_order(&tree).into_iter().map(Option::unwrap).collect();
        assert_eq!(got, vec![6, 4, -4, 1, 0, -1, -2, 3, 2, -3, -6, 5, -5]);
    }

    #[test]
    fn leading_one_labels() {
        let (_, _, lemma) = labeled("RT(0^3,1,3)");
        assert_eq!(lemma, Lemma::LeadingOne);
    }

    #[test]
    fn non_seg_cases() {
        for text in ["RT(0,1,1)", "RT(0,1,3)", "RT(0^3,1,1)", "RT(0^5,1,1)", "RT(0,1,7)"] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(
                label_odd_caterpillar(&spec).unwrap(),
                LabelOutcome::ProvedNotSeg(NonExistence::Lemma(Lemma::NonSegCaterpillars)),
                "{text}"
            );
        }
    }

    #[test]
    fn wrong_family() {
        let spec = parse_spec("RT(1,1)").unwrap();
        assert!(matches!(
            label_odd_caterpillar(&spec),
            Err(ConstructError::WrongFamily {
                family: Family::EvenCaterpillar,
                ..
            })
        ));
        let spec = parse_spec("RT(1,1,1)").unwrap();
        assert!(matches!(label_even_caterpillar(&spec), Err(ConstructError::WrongFamily { .. })));
    }
}

use std::collections::BTreeSet;

use seg4::classify::{classify, Dispatch, Lemma};
use seg4::construct::{label_any, LabelOutcome};
use seg4::{verify, TreeSpec};

/// Nondecreasing sequences of length `n` over `0..=max`.
fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in lo..=max {
            cur.push(x);
            rec(n, x, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, max, &mut Vec::new(), &mut out);
    out
}

fn check(raw: &[usize], failures: &mut Vec<String>, seen: &mut BTreeSet<(Lemma, Option<u8>)>) -> bool {
    let Ok(spec) = TreeSpec::canonicalize(raw) else {
        return false;
    };
    let Dispatch::Constructive { lemma, case, .. } = classify(&spec).dispatch else {
        return false;
    };
    seen.insert((lemma, case));
    match label_any(&spec, None) {
        Ok(LabelOutcome::Labeled { labeling, .. }) => {
            if !verify(&spec.build(), &labeling).is_seg {
                failures.push(format!("{spec} ({lemma}): unverified labeling returned"));
            }
        }
        Ok(other) => failures.push(format!("{spec} ({lemma}): {other:?}")),
        Err(e) => failures.push(e.to_string()),
    }
    true
}

#[test]
fn every_construction_verifies_up_to_seven_spine_vertices() {
    let mut failures = Vec::new();
    let mut seen = BTreeSet::new();
    let mut covered = 0;
    for n in 2..=7 {
        for raw in multisets(n, 7) {
            covered += check(&raw, &mut failures, &mut seen) as usize;
        }
    }
    assert!(covered > 3000, "{covered}");
    let lemmas: BTreeSet<Lemma> = seen.iter().map(|&(l, _)| l).collect();
    assert_eq!(lemmas, Lemma::CONSTRUCTIVE.into_iter().collect());
    // two cases each for the constructions that split
    assert_eq!(seen.len(), Lemma::CONSTRUCTIVE.len() + 4, "{seen:?}");
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn caterpillars_with_long_zero_runs() {
    let mut failures = Vec::new();
    let mut seen = BTreeSet::new();
    for j in 0..=9 {
        for a in 1..=9 {
            for b in a..=9 {
                let mut raw = vec![0; j];
                raw.extend([a, b]);
                check(&raw, &mut failures, &mut seen);
            }
        }
    }
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}

//! Lobsters `RT(a_1, ..., a_n)` with at least three spine vertices that
//! have children.
//!
//! Spine layout in canonical order: zeros `1..=j`, even counts
//! `j+1..=j+k`, odd counts `j+k+1..=n`. Leaf edges of an even vertex are
//! labeled in `± pairs` starting at `m = 1`; an odd vertex keeps `m = 1` for
//! an explicitly chosen label and pairs the rest starting at `m = 2`.

use super::{lab, settled, Builder, ConstructError, LabelOutcome};
use crate::classify::{classify, Dispatch, Family, Lemma, Params};
use crate::tree::TreeSpec;

pub fn label_even_lobster(spec: &TreeSpec) -> Result<LabelOutcome, ConstructError> {
    label_lobster(spec, Family::EvenLobster)
}

pub fn label_odd_lobster(spec: &TreeSpec) -> Result<LabelOutcome, ConstructError> {
    label_lobster(spec, Family::OddLobster)
}

fn label_lobster(spec: &TreeSpec, expected: Family) -> Result<LabelOutcome, ConstructError> {
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
    let layout = Layout {
        first_even: class.j + 1,
        first_odd: class.j + class.k + 1,
        n: spec.n(),
    };
    let mut b = Builder::new(spec, *lemma, params);
    match (lemma, case) {
        (Lemma::JklOdd | Lemma::JkEvenLOdd, _) => odd_l_even_size(&mut b, params, layout),
        (Lemma::JklEven | Lemma::JkOddLEven, _) => even_l_even_size(&mut b, params, layout),
        (Lemma::JEvenKlOdd, Some(1)) => single_odd(&mut b, params, layout),
        (Lemma::JEvenKlOdd, _) => many_odd(&mut b, params, layout),
        (Lemma::JlEvenKOdd, Some(1)) => no_odd(&mut b, params, layout),
        (Lemma::JlEvenKOdd, _) => even_odd_count(&mut b, params, layout),
        (Lemma::JOddKlEven, Some(1)) => odd_zeros_one_odd(&mut b, params, layout),
        (Lemma::JOddKlEven, _) => odd_zeros_two_odd(&mut b, params, layout),
        _ => unreachable!("{lemma} is not a lobster construction"),
    }
    b.finish()
}

#[derive(Debug, Clone, Copy)]
struct Layout {
    first_even: usize,
    first_odd: usize,
    n: usize,
}

impl Layout {
    /// Pairs `±(base + m + sum_{z=first_even}^{i-1} b_z)` on the leaves of
    /// spine vertices `from..=to`, skipping `m = 1` on odd vertices.
    fn leaf_pairs(self, b: &mut Builder, p: &Params, from: usize, to: usize, base: usize) {
        for i in from..=to {
            let offset = base + p.b_sum(self.first_even, i - 1);
            for m in 1..=p.b(i) {
                if i < self.first_odd {
                    b.leaf_pair(i, 2 * m - 1, lab(offset + m));
                } else {
                    b.leaf_pair(i, 2 * m, lab(offset + m));
                }
            }
        }
    }
}

/// Even size, `l = 2t+1` odd; zeros and evens share the spine pairs.
/// Labels `±1..±(r+s+2t+1+B)`.
fn odd_l_even_size(b: &mut Builder, p: &Params, layout: Layout) {
    let (r, s, t) = (p.r, p.s, p.t);
    b.spine(2 * (r + s) + 1, 1);
    for i in 1..=t {
        b.spine(2 * (r + s + i), -lab(2 * i - 1));
        b.spine(2 * (r + s + i) + 1, lab(2 * i + 1));
    }
    b.leaf(2 * (r + s + t) + 1, 1, -lab(2 * t + 1));
    for i in 1..=t {
        b.leaf(2 * (r + s + i) - 1, 1, -lab(2 * (t + 1 - i)));
        b.leaf(2 * (r + s + i), 1, lab(2 * (t + 1 - i)));
    }
    for i in 1..=r + s {
        b.spine_pair(2 * i - 1, lab(2 * t + 1 + i));
    }
    layout.leaf_pairs(b, p, layout.first_even, layout.n, r + s + 2 * t + 1);
}

/// Even size, `l = 2t` even. Labels `±1..±(r+s+2t+B)`.
fn even_l_even_size(b: &mut Builder, p: &Params, layout: Layout) {
    let (r, s, t) = (p.r, p.s, p.t);
    for i in 1..=t {
        b.spine_pair(2 * (r + s + i) - 1, lab(2 * i - 1));
        b.leaf(2 * (r + s + i) - 1, 1, -lab(2 * (t + 1 - i)));
        b.leaf(2 * (r + s + i), 1, lab(2 * (t + 1 - i)));
    }
    for i in 1..=r + s {
        b.spine_pair(2 * i - 1, lab(2 * t + i));
    }
    layout.leaf_pairs(b, p, layout.first_even, layout.n, r + s + 2 * t);
}

/// Odd size, `j = 2r` even, `k = 2s-1 >= 3`, `l = 1`.
/// Labels `0, ±1..±(r+s+B)`.
fn single_odd(b: &mut Builder, p: &Params, layout: Layout) {
    let (r, s) = (p.r, p.s);
    let top = lab(r + s + p.b_total());
    let (e, o) = (layout.first_even, layout.first_odd);
    b.spine(e, 0);
    b.spine(o, 1);
    b.leaf(e, 1, -1);
    b.leaf(o, 1, top);
    b.leaf(e, 2, -top);
    for i in 1..=r {
        b.spine_pair(2 * i - 1, lab(1 + i));
    }
    for i in 1..s {
        b.spine_pair(2 * (r + i), lab(r + 1 + i));
    }
    for m in 2..=p.b(e) {
        b.leaf_pair(e, 2 * m - 1, lab(r + s - 1 + m));
    }
    layout.leaf_pairs(b, p, e + 1, layout.n, r + s - 1);
}

/// Odd size, `j = 2r` even, `k = 2s-1`, `l = 2t+1 >= 3`.
/// Labels `0, ±1..±(r+s+2t+B)`.
fn many_odd(b: &mut Builder, p: &Params, layout: Layout) {
    let (r, s, t) = (p.r, p.s, p.t);
    let top = lab(r + s + 2 * t + p.b_total());
    let (e, o) = (layout.first_even, layout.first_odd);
    b.spine(e, 0);
    for i in 1..=t {
        b.spine(2 * (r + s + i - 1), lab(2 * i - 1));
        b.spine(2 * (r + s + i) - 1, -lab(2 * i - 1));
    }
    b.spine(2 * (r + s + t), lab(2 * t + 1));
    b.leaf(e, 1, -lab(2 * t + 1));
    b.leaf(2 * (r + s + t), 1, -2);
    b.leaf(e, 2, 2);
    b.leaf(o, 1, top);
    b.leaf(o + 1, 1, -top);
    for i in 1..t {
        b.leaf(2 * (r + s + i), 1, -lab(2 * (t - i + 1)));
        b.leaf(2 * (r + s + i) + 1, 1, lab(2 * (t - i + 1)));
    }
    for i in 1..=r {
        b.spine_pair(2 * i - 1, lab(2 * t + 1 + i));
    }
    for i in 1..s {
        b.spine_pair(2 * (r + i), lab(r + 2 * t + 1 + i));
    }
    for m in 2..=p.b(e) {
        b.leaf_pair(e, 2 * m - 1, lab(r + s + 2 * t - 1 + m));
    }
    layout.leaf_pairs(b, p, e + 1, layout.n, r + s + 2 * t - 1);
}

/// Odd size, `j = 2r` even, `k = 2s+1 >= 3`, `l = 0`.
/// Labels `0, ±1..±(r+s+B)`.
fn no_odd(b: &mut Builder, p: &Params, layout: Layout) {
    let (r, s) = (p.r, p.s);
    let top = lab(r + s + p.b_total());
    let e = layout.first_even;
    b.spine(e, 0);
    b.spine(e + 1, 1);
    b.spine(e + 2, top);
    b.leaf(e, 1, -1);
    b.leaf(e, 2, -top);
    for i in 1..=r {
        b.spine_pair(2 * i - 1, lab(1 + i));
    }
    for i in 2..=s {
        b.spine_pair(2 * (r + i), lab(r + i));
    }
    for m in 2..=p.b(e) {
        b.leaf_pair(e, 2 * m - 1, lab(r + s - 1 + m));
    }
    layout.leaf_pairs(b, p, e + 1, layout.n, r + s - 1);
}

/// Odd size, `j = 2r` even, `k = 2s+1 >= 3`, `l = 2t >= 2`.
/// Labels `0, ±1..±(r+s+2t+B)`.
fn even_odd_count(b: &mut Builder, p: &Params, layout: Layout) {
    let (r, s, t) = (p.r, p.s, p.t);
    let top = lab(r + s + 2 * t + p.b_total());
    let (e, o) = (layout.first_even, layout.first_odd);
    b.spine(e, 0);
    b.spine(e + 1, 2);
    b.spine(e + 2, -lab(2 * t + 1));
    b.leaf(e, 1, -2);
    b.leaf(e, 2, lab(2 * t + 1));
    b.leaf(o, 1, top);
    b.leaf(o + 1, 1, -top);
    for i in 1..=r {
        b.spine_pair(2 * i - 1, lab(2 * t + 1 + i));
    }
    // the negative partner mirrors the positive label
    for i in 2..=s {
        b.spine_pair(2 * (r + i), lab(2 * t + r + i));
    }
    for i in 1..=t {
        b.spine_pair(2 * (r + s + i), lab(2 * i - 1));
    }
    for i in 2..=t {
        b.leaf(2 * (r + s + i), 1, -lab(2 * (t + 2 - i)));
        b.leaf(2 * (r + s + i) + 1, 1, lab(2 * (t + 2 - i)));
    }
    for m in 2..=p.b(e) {
        b.leaf_pair(e, 2 * m - 1, lab(2 * t + r + s - 1 + m));
    }
    layout.leaf_pairs(b, p, e + 1, layout.n, 2 * t + r + s - 1);
}

/// Odd size, `j = 2r+1` odd, `k = 2s >= 2`, `l = 1`.
/// Labels `0, ±1..±(r+s+1+B)`.
fn odd_zeros_one_odd(b: &mut Builder, p: &Params, layout: Layout) {
    let (r, s) = (p.r, p.s);
    let n = layout.n;
    let top = lab(r + s + 1 + p.b_total());
    let e = layout.first_even;
    b.spine(e, 0);
    b.spine(n, 1);
    b.leaf(e, 1, -1);
    b.leaf(n, 1, top);
    b.leaf(e, 2, -top);
    for i in 1..=r {
        b.spine_pair(2 * i - 1, lab(1 + i));
    }
    b.spine(2 * r + 1, lab(r + 2));
    b.spine(2 * r + 3, -lab(r + 2));
    for i in 2..=s {
        b.spine_pair(2 * (r + i), lab(r + 1 + i));
    }
    for m in 2..=p.b(e) {
        b.leaf_pair(e, 2 * m - 1, lab(r + s + m));
    }
    layout.leaf_pairs(b, p, e + 1, n, r + s);
}

/// Odd size, `j = 2r+1` odd, `k = 2s >= 2`, `l = 2`.
/// Labels `0, ±1..±(r+s+2+B)`.
fn odd_zeros_two_odd(b: &mut Builder, p: &Params, layout: Layout) {
    let (r, s) = (p.r, p.s);
    let top = lab(r + s + 2 + p.b_total());
    let (e, o) = (layout.first_even, layout.first_odd);
    b.spine(e, 0);
    b.spine(1, 1);
    b.leaf(e, 1, -1);
    b.spine(o, 2);
    b.spine(o + 1, -2);
    b.leaf(e + 1, 1, 3);
    b.leaf(e + 1, 2, -3);
    b.leaf(o, 1, -4);
    b.leaf(o + 1, 1, 4);
    b.spine(e + 1, top);
    b.leaf(e, 2, -top);
    for i in 1..=r {
        b.spine_pair(2 * i, lab(4 + i));
    }
    // remaining even spine vertices v_{2r+4}..v_{2r+2s+1}
    for i in 2..=s {
        b.spine_pair(2 * (r + i), lab(r + 3 + i));
    }
    for m in 2..=p.b(e) {
        b.leaf_pair(e, 2 * m - 1, lab(r + s + 2 + m));
    }
    for m in 2..=p.b(e + 1) {
        b.leaf_pair(e + 1, 2 * m - 1, lab(r + s + p.b(e) + 1 + m));
    }
    layout.leaf_pairs(b, p, e + 2, layout.n, r + s + 1);
}

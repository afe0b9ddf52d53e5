//! Deterministic compensated pairwise summation.
//!
//! Terms are combined in a fixed binary tree over their index order, carrying
//! the rounding error of every addition (Knuth's TwoSum) up the tree. The
//! result depends only on the input sequence, never on scheduling.

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn tree(xs: &[f64]) -> (f64, f64) {
    match xs.len() {
        0 => (0.0, 0.0),
        1 => (xs[0], 0.0),
        n => {
            let (l, r) = xs.split_at(n / 2);
            let (s1, c1) = tree(l);
            let (s2, c2) = tree(r);
            let (s, e) = two_sum(s1, s2);
            (s, c1 + c2 + e)
        }
    }
}

/// Sum `xs` with compensated pairwise reduction.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    let (s, c) = tree(xs);
    s + c
}

#![allow(dead_code)]

use std::collections::BTreeSet;

use degseq::DegreeSequence;

/// All non-increasing sequences of length `len` over `[lo, hi]`, listed
/// recursively without the crate's generator.
pub fn regular_sequences(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(len: usize, lo: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in (lo..=cap).rev() {
            cur.push(v);
            rec(len, lo, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if hi >= lo {
        rec(len, lo, hi, &mut Vec::new(), &mut out);
    }
    out
}

/// Degree sequences (sorted non-increasing) of every labelled simple graph
/// on `n` vertices.
pub fn graph_degree_sequences(n: usize) -> BTreeSet<Vec<i64>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut deg = vec![0i64; n];
        for (bit, &(u, v)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        deg.sort_unstable_by(|a, b| b.cmp(a));
        seen.insert(deg);
    }
    seen
}

/// Erdős–Gallai checked at every index with a quadratic inner sum.
pub fn naive_graphical(b: &[i64]) -> bool {
    let n = b.len();
    if b.iter().sum::<i64>() % 2 != 0 {
        return false;
    }
    (1..=n).all(|k| {
        let lhs: i64 = b[..k].iter().sum();
        let kk = k as i64;
        let rhs = kk * (kk - 1) + b[k..].iter().map(|&d| d.min(kk)).sum::<i64>();
        lhs <= rhs
    })
}

pub fn seq(v: &[i64]) -> DegreeSequence {
    DegreeSequence::new(v.to_vec()).unwrap()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

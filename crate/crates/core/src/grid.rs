//! Enumeration of weight vectors for batch runs.

use crate::spectrum::Weights;

/// All non-decreasing weight tuples `1 ≤ w1 ≤ … ≤ wn ≤ wmax` with
/// `1 ≤ n ≤ nmax`, ordered by length and then lexicographically.
///
/// The family only depends on the multiset of weights, so permutations are
/// not repeated.
pub fn weight_grid(nmax: usize, wmax: u32) -> Vec<Weights> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut current = Vec::with_capacity(n);
        extend(n, 1, wmax, &mut current, &mut out);
    }
    out
}

fn extend(n: usize, lo: u32, wmax: u32, current: &mut Vec<u32>, out: &mut Vec<Weights>) {
    if current.len() == n {
        out.push(Weights::new(current.clone()).expect("positive weights"));
        return;
    }
    for v in lo..=wmax {
        current.push(v);
        extend(n, v, wmax, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(a: usize, b: usize) -> usize {
        (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
    }

    #[test]
    fn counts_match_multiset_formula() {
        // multisets of size n from wmax values: C(wmax + n − 1, n)
        for (nmax, wmax) in [(5, 6), (4, 5), (4, 4), (1, 1)] {
            let expected: usize = (1..=nmax).map(|n| binomial(wmax as usize + n - 1, n)).sum();
            assert_eq!(weight_grid(nmax, wmax).len(), expected);
        }
        assert_eq!(weight_grid(5, 6).len(), 461);
    }

    #[test]
    fn order_is_deterministic() {
        let g = weight_grid(2, 2);
        let s: Vec<String> = g.iter().map(ToString::to_string).collect();
        assert_eq!(s, ["1", "2", "1,1", "1,2", "2,2"]);
    }
}

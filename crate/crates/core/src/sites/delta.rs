//! The simplex category Δ of finite nonempty ordinals and monotone maps.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::payload::Payload;

/// Monotone map `[n] → [m]` given by its values on `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexMorphism {
    pub source: usize,
    pub target: usize,
    pub values: Vec<usize>,
}

impl SimplexMorphism {
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<Self> {
        let f = SimplexMorphism {
            source,
            target,
            values,
        };
        if f.is_valid() {
            Ok(f)
        } else {
            Err(invalid(format!("not a monotone map [{source}]→[{target}]")))
        }
    }

    pub fn is_valid(&self) -> bool {
        self.values.len() == self.source + 1
            && self.values.iter().all(|&v| v <= self.target)
            && self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn identity(n: usize) -> Self {
        SimplexMorphism {
            source: n,
            target: n,
            values: (0..=n).collect(),
        }
    }

    pub fn payload(&self) -> Payload {
        Payload::Seq(self.values.clone())
    }

    pub fn from_payload(source: usize, target: usize, p: &Payload) -> Result<Self> {
        match p {
            Payload::Seq(v) => SimplexMorphism::new(source, target, v.clone()),
            _ => Err(invalid("expected a sequence payload")),
        }
    }

    /// The image `{f(0), …, f(n)}` as a sorted set.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.values.clone();
        v.dedup();
        v
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target + 1
    }
}

/// `g ∘ f`.
pub fn delta_compose(g: &SimplexMorphism, f: &SimplexMorphism) -> Result<SimplexMorphism> {
    if f.target != g.source {
        return Err(Error::SizeMismatch {
            expected: g.source,
            found: f.target,
        });
    }
    Ok(SimplexMorphism {
        source: f.source,
        target: g.target,
        values: f.values.iter().map(|&x| g.values[x]).collect(),
    })
}

/// All monotone maps `[n] → [m]` in lexicographic order.
pub fn delta_hom(n: usize, m: usize) -> Vec<SimplexMorphism> {
    monotone_sequences(n + 1, 0, m)
        .into_iter()
        .map(|values| SimplexMorphism {
            source: n,
            target: m,
            values,
        })
        .collect()
}

/// Weakly increasing sequences of length `len` with entries in `lo..=hi`,
/// lexicographically.
pub(crate) fn monotone_sequences(len: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            go(len, v, hi, cur, out);
            cur.pop();
        }
    }
    if lo <= hi || len == 0 {
        go(len, lo, hi, &mut cur, &mut out);
    }
    out
}

/// Coface `∂_i : [n-1] → [n]` skipping `i`, for `0 ≤ i ≤ n`, `n ≥ 1`.
pub fn face(n: usize, i: usize) -> SimplexMorphism {
    assert!(n >= 1 && i <= n);
    SimplexMorphism {
        source: n - 1,
        target: n,
        values: (0..n).map(|j| if j < i { j } else { j + 1 }).collect(),
    }
}

/// Codegeneracy `σ_i : [n+1] → [n]` repeating `i`, for `0 ≤ i ≤ n`.
pub fn degeneracy(n: usize, i: usize) -> SimplexMorphism {
    assert!(i <= n);
    SimplexMorphism {
        source: n + 1,
        target: n,
        values: (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect(),
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_homs() {
        let h = delta_hom(1, 1);
        let vals: Vec<_> = h.iter().map(|f| f.values.clone()).collect();
        assert_eq!(vals, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(delta_hom(0, 0).len(), 1);
        assert_eq!(delta_hom(2, 1).len(), 4);
    }

    #[test]
    fn faces_and_degeneracies() {
        assert_eq!(face(2, 1).values, vec![0, 2]);
        assert_eq!(degeneracy(1, 0).values, vec![0, 0, 1]);
        // σ_i ∂_i = id
        for n in 1..5 {
            for i in 0..n {
                let c = delta_compose(&degeneracy(n - 1, i), &face(n, i)).unwrap();
                assert_eq!(c, SimplexMorphism::identity(n - 1));
            }
        }
    }

    #[test]
    fn compose_checks_ranks() {
        assert!(delta_compose(&face(2, 0), &face(2, 0)).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}

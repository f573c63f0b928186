//! The interval category ∇ and its duality with Δ.

use serde::{Deserialize, Serialize};

use super::delta::{monotone_sequences, SimplexMorphism};
use crate::error::{invalid, Result};
use crate::payload::Payload;

/// Monotone map `[n] → [m]` fixing both endpoints, `n, m ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalMorphism {
    pub source: usize,
    pub target: usize,
    pub values: Vec<usize>,
}

impl IntervalMorphism {
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<Self> {
        let f = IntervalMorphism {
            source,
            target,
            values,
        };
        if f.is_valid() {
            Ok(f)
        } else {
            Err(invalid(format!("not an interval map [{source}]→[{target}]")))
        }
    }

    pub fn is_valid(&self) -> bool {
        self.source >= 1
            && self.target >= 1
            && self.values.len() == self.source + 1
            && self.values[0] == 0
            && self.values[self.source] == self.target
            && self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn identity(n: usize) -> Self {
        IntervalMorphism {
            source: n,
            target: n,
            values: (0..=n).collect(),
        }
    }

    pub fn payload(&self) -> Payload {
        Payload::Seq(self.values.clone())
    }
}

/// All interval maps `[n] → [m]`, lexicographically.
pub fn nabla_hom(n: usize, m: usize) -> Vec<IntervalMorphism> {
    assert!(n >= 1 && m >= 1);
    monotone_sequences(n - 1, 0, m)
        .into_iter()
        .map(|inner| {
            let mut values = Vec::with_capacity(n + 1);
            values.push(0);
            values.extend(inner);
            values.push(m);
            IntervalMorphism {
                source: n,
                target: m,
                values,
            }
        })
        .collect()
}

/// `f : [n] → [m]` in Δ goes to `f* : [m+1] → [n+1]` in ∇ with
/// `f*(i) = #{ j : f(j) < i }`.
pub fn interval_duality(f: &SimplexMorphism) -> IntervalMorphism {
    IntervalMorphism {
        source: f.target + 1,
        target: f.source + 1,
        values: (0..=f.target + 1)
            .map(|i| f.values.iter().filter(|&&v| v < i).count())
            .collect(),
    }
}

/// Inverse of [`interval_duality`]: `g : [m+1] → [n+1]` gives
/// `f(j) = #{ i ∈ 1..=m : g(i) ≤ j }`.
pub fn interval_duality_inverse(g: &IntervalMorphism) -> SimplexMorphism {
    let (n, m) = (g.target - 1, g.source - 1);
    SimplexMorphism {
        source: n,
        target: m,
        values: (0..=n)
            .map(|j| (1..=m).filter(|&i| g.values[i] <= j).count())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sites::delta::delta_hom;

    #[test]
    fn small_homs() {
        let h = nabla_hom(2, 1);
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].values, vec![0, 0, 1]);
        assert_eq!(h[1].values, vec![0, 1, 1]);
        assert_eq!(nabla_hom(1, 1).len(), 1);
        assert_eq!(nabla_hom(1, 5).len(), 1);
    }

    #[test]
    fn duality_on_small_cases() {
        assert_eq!(
            interval_duality(&SimplexMorphism::identity(2)),
            IntervalMorphism::identity(3)
        );
        // the unique map [n] → [0] goes to the unique map [1] → [n+1]
        let bang = SimplexMorphism {
            source: 3,
            target: 0,
            values: vec![0; 4],
        };
        assert_eq!(interval_duality(&bang).values, vec![0, 4]);
        for f in delta_hom(2, 3) {
            let g = interval_duality(&f);
            assert!(g.is_valid());
            assert_eq!(interval_duality_inverse(&g), f);
        }
    }
}

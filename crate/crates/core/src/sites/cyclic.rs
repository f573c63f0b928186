//! Connes' cyclic category Λ in the paracyclic profile model.
//!
//! A morphism `⟨m⟩ → ⟨n⟩` is a monotone `F : ℤ → ℤ` with
//! `F(l + m + 1) = F(l) + n + 1`, modulo shifting by multiples of `n + 1`.
//! It is stored as `F(0..=m)` with `F(0) ∈ 0..=n`.

use serde::{Deserialize, Serialize};

use super::delta::{monotone_sequences, SimplexMorphism};
use crate::error::{invalid, Error, Result};
use crate::payload::Payload;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicMorphism {
    pub source: usize,
    pub target: usize,
    pub profile: Vec<i64>,
}

impl CyclicMorphism {
    pub fn new(source: usize, target: usize, profile: Vec<i64>) -> Result<Self> {
        let f = CyclicMorphism {
            source,
            target,
            profile,
        }
        .normalized();
        if f.is_valid() {
            Ok(f)
        } else {
            Err(invalid(format!("not a cyclic profile ⟨{source}⟩→⟨{target}⟩")))
        }
    }

    /// Monotone over one period and normalized.
    pub fn is_valid(&self) -> bool {
        let p = &self.profile;
        let period = self.target as i64 + 1;
        p.len() == self.source + 1
            && (0..period).contains(&p[0])
            && p.windows(2).all(|w| w[0] <= w[1])
            && p[self.source] <= p[0] + period
    }

    /// `F(l)` for any integer `l`.
    pub fn eval(&self, l: i64) -> i64 {
        let m1 = self.source as i64 + 1;
        let n1 = self.target as i64 + 1;
        let (q, r) = (l.div_euclid(m1), l.rem_euclid(m1));
        self.profile[r as usize] + q * n1
    }

    fn normalized(mut self) -> Self {
        if let Some(&f0) = self.profile.first() {
            let n1 = self.target as i64 + 1;
            let shift = f0.div_euclid(n1) * n1;
            for v in &mut self.profile {
                *v -= shift;
            }
        }
        self
    }

    pub fn identity(n: usize) -> Self {
        CyclicMorphism {
            source: n,
            target: n,
            profile: (0..=n as i64).collect(),
        }
    }

    /// The cyclic generator on `⟨n⟩`, `l ↦ l − 1`.
    pub fn rotation(n: usize) -> Self {
        CyclicMorphism {
            source: n,
            target: n,
            profile: (0..=n as i64).map(|l| l - 1).collect(),
        }
        .normalized()
    }

    pub fn from_delta(f: &SimplexMorphism) -> Self {
        CyclicMorphism {
            source: f.source,
            target: f.target,
            profile: f.values.iter().map(|&v| v as i64).collect(),
        }
    }

    /// The underlying monotone map, if this lies in the image of Δ.
    pub fn as_delta(&self) -> Option<SimplexMorphism> {
        (self.profile[self.source] <= self.target as i64).then(|| SimplexMorphism {
            source: self.source,
            target: self.target,
            values: self.profile.iter().map(|&v| v as usize).collect(),
        })
    }

    pub fn payload(&self) -> Payload {
        Payload::Cyclic(self.profile.clone())
    }

    pub fn from_payload(source: usize, target: usize, p: &Payload) -> Result<Self> {
        match p {
            Payload::Cyclic(v) => CyclicMorphism::new(source, target, v.clone()),
            _ => Err(invalid("expected a cyclic payload")),
        }
    }
}

/// `g ∘ f` by composing profiles and renormalizing.
pub fn lambda_compose(g: &CyclicMorphism, f: &CyclicMorphism) -> Result<CyclicMorphism> {
    if f.target != g.source {
        return Err(Error::SizeMismatch {
            expected: g.source,
            found: f.target,
        });
    }
    Ok(CyclicMorphism {
        source: f.source,
        target: g.target,
        profile: f.profile.iter().map(|&v| g.eval(v)).collect(),
    }
    .normalized())
}

/// All morphisms `⟨m⟩ → ⟨n⟩`, ordered by profile.
pub fn lambda_hom(m: usize, n: usize) -> Vec<CyclicMorphism> {
    let period = n + 1;
    let mut out = Vec::new();
    for f0 in 0..period {
        for rest in monotone_sequences(m, f0, f0 + period) {
            let mut profile = Vec::with_capacity(m + 1);
            profile.push(f0 as i64);
            profile.extend(rest.into_iter().map(|v| v as i64));
            out.push(CyclicMorphism {
                source: m,
                target: n,
                profile,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sites::delta::binomial;

    #[test]
    fn counts() {
        assert_eq!(lambda_hom(1, 1).len(), 6);
        assert_eq!(lambda_hom(0, 0).len(), 1);
        assert_eq!(lambda_hom(1, 0).len(), 2);
        for m in 0..4 {
            for n in 0..4 {
                let expect = (m as u64 + 1) * binomial((n + m + 1) as u64, (m + 1) as u64);
                assert_eq!(lambda_hom(m, n).len() as u64, expect);
            }
        }
    }

    #[test]
    fn rotation_has_order_n_plus_one() {
        for n in 0..5 {
            let t = CyclicMorphism::rotation(n);
            let mut acc = CyclicMorphism::identity(n);
            for k in 1..=n + 1 {
                acc = lambda_compose(&t, &acc).unwrap();
                assert_eq!(acc == CyclicMorphism::identity(n), k == n + 1);
            }
        }
    }

    #[test]
    fn normalization() {
        let f = CyclicMorphism::new(1, 1, vec![2, 3]).unwrap();
        assert_eq!(f.profile, vec![0, 1]);
        assert!(CyclicMorphism::new(1, 1, vec![0, 3]).is_err());
        assert_eq!(CyclicMorphism::rotation(2).profile, vec![2, 3, 4]);
    }
}

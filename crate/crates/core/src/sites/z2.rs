//! The reflexive crossed simplicial group ΔZ/2: monotone maps together with
//! order-reversing ones.

use serde::{Deserialize, Serialize};

use super::delta::{delta_hom, SimplexMorphism};
use crate::error::{invalid, Error, Result};
use crate::payload::Payload;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Z2Morphism {
    pub source: usize,
    pub target: usize,
    pub values: Vec<usize>,
    pub flip: bool,
}

impl Z2Morphism {
    pub fn is_valid(&self) -> bool {
        self.values.len() == self.source + 1
            && self.values.iter().all(|&v| v <= self.target)
            && self
                .values
                .windows(2)
                .all(|w| if self.flip { w[0] >= w[1] } else { w[0] <= w[1] })
    }

    pub fn identity(n: usize) -> Self {
        Z2Morphism::from_delta(&SimplexMorphism::identity(n))
    }

    /// The reversal `y : [n] → [n]`, `x ↦ n − x`.
    pub fn reversal(n: usize) -> Self {
        Z2Morphism {
            source: n,
            target: n,
            values: (0..=n).rev().collect(),
            flip: true,
        }
    }

    pub fn from_delta(f: &SimplexMorphism) -> Self {
        Z2Morphism {
            source: f.source,
            target: f.target,
            values: f.values.clone(),
            flip: false,
        }
    }

    pub fn as_delta(&self) -> Option<SimplexMorphism> {
        (!self.flip).then(|| SimplexMorphism {
            source: self.source,
            target: self.target,
            values: self.values.clone(),
        })
    }

    pub fn payload(&self) -> Payload {
        Payload::Z2 {
            values: self.values.clone(),
            flip: self.flip,
        }
    }

    pub fn from_payload(source: usize, target: usize, p: &Payload) -> Result<Self> {
        match p {
            Payload::Z2 { values, flip } => {
                let f = Z2Morphism {
                    source,
                    target,
                    values: values.clone(),
                    flip: *flip,
                };
                if f.is_valid() {
                    Ok(f)
                } else {
                    Err(invalid("not a ΔZ/2 morphism"))
                }
            }
            _ => Err(invalid("expected a z2 payload")),
        }
    }
}

/// Compose underlying maps, add parities.
pub fn z2_compose(g: &Z2Morphism, f: &Z2Morphism) -> Result<Z2Morphism> {
    if f.target != g.source {
        return Err(Error::SizeMismatch {
            expected: g.source,
            found: f.target,
        });
    }
    Ok(Z2Morphism {
        source: f.source,
        target: g.target,
        values: f.values.iter().map(|&x| g.values[x]).collect(),
        flip: f.flip ^ g.flip,
    })
}

/// `Hom_Δ ⊔ Hom_Δ^*`: every monotone map, with and without the flip.
pub fn z2_hom(n: usize, m: usize) -> Vec<Z2Morphism> {
    let mut out = Vec::new();
    for flip in [false, true] {
        for f in delta_hom(n, m) {
            let mut values = f.values;
            if flip {
                values.reverse();
            }
            out.push(Z2Morphism {
                source: n,
                target: m,
                values,
                flip,
            });
        }
    }
    out.sort();
    out
}

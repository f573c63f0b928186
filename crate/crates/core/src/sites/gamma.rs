//! Segal's category Γ and finite pointed sets.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::payload::Payload;

/// Γ-morphism `n̄ → l̄`: `n` pairwise disjoint subsets of `{1..l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaMorphism {
    pub source: usize,
    pub target: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl GammaMorphism {
    pub fn new(source: usize, target: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        let f = GammaMorphism {
            source,
            target,
            blocks,
        };
        if f.is_valid() {
            Ok(f)
        } else {
            Err(invalid(format!("not a Γ-morphism {source}→{target}")))
        }
    }

    pub fn is_valid(&self) -> bool {
        if self.blocks.len() != self.source {
            return false;
        }
        let mut seen = vec![false; self.target + 1];
        for b in &self.blocks {
            if b.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &t in b {
                if t == 0 || t > self.target || seen[t] {
                    return false;
                }
                seen[t] = true;
            }
        }
        true
    }

    pub fn identity(n: usize) -> Self {
        GammaMorphism {
            source: n,
            target: n,
            blocks: (1..=n).map(|a| vec![a]).collect(),
        }
    }

    pub fn payload(&self) -> Payload {
        Payload::Blocks(self.blocks.clone())
    }

    pub fn from_payload(source: usize, target: usize, p: &Payload) -> Result<Self> {
        match p {
            Payload::Blocks(b) => GammaMorphism::new(source, target, b.clone()),
            _ => Err(invalid("expected a blocks payload")),
        }
    }

    pub fn bitmasks(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &t| m | 1 << (t - 1)))
            .collect()
    }
}

/// `(gf)(a) = ⋃_{b ∈ f(a)} g(b)`.
pub fn gamma_compose(g: &GammaMorphism, f: &GammaMorphism) -> Result<GammaMorphism> {
    if f.target != g.source {
        return Err(Error::SizeMismatch {
            expected: g.source,
            found: f.target,
        });
    }
    let blocks = f
        .blocks
        .iter()
        .map(|fa| {
            let mut u: Vec<usize> = fa.iter().flat_map(|&b| g.blocks[b - 1].iter().copied()).collect();
            u.sort_unstable();
            u
        })
        .collect();
    Ok(GammaMorphism {
        source: f.source,
        target: g.target,
        blocks,
    })
}

/// All Γ-morphisms `n̄ → l̄`, lexicographically by blocks. Each is an
/// assignment of every `t ∈ l̄` to one of the `n` blocks or to none.
pub fn gamma_hom(n: usize, l: usize) -> Vec<GammaMorphism> {
    let mut out = Vec::new();
    let mut owner = vec![0usize; l];
    loop {
        let mut blocks = vec![Vec::new(); n];
        for (t, &o) in owner.iter().enumerate() {
            if o > 0 {
                blocks[o - 1].push(t + 1);
            }
        }
        out.push(GammaMorphism {
            source: n,
            target: l,
            blocks,
        });
        // next assignment in base n+1
        let mut k = 0;
        loop {
            if k == l {
                out.sort();
                return out;
            }
            owner[k] += 1;
            if owner[k] <= n {
                break;
            }
            owner[k] = 0;
            k += 1;
        }
    }
}

/// Basepoint-preserving map `n+ → m+`; `values[t-1]` is the image of `t`
/// and `0` is the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointedMap {
    pub source: usize,
    pub target: usize,
    pub values: Vec<usize>,
}

impl PointedMap {
    pub fn is_valid(&self) -> bool {
        self.values.len() == self.source && self.values.iter().all(|&v| v <= self.target)
    }

    pub fn identity(n: usize) -> Self {
        PointedMap {
            source: n,
            target: n,
            values: (1..=n).collect(),
        }
    }

    /// Image of an element of `n+`, with `0` the basepoint.
    pub fn apply(&self, t: usize) -> usize {
        if t == 0 {
            0
        } else {
            self.values[t - 1]
        }
    }

    pub fn payload(&self) -> Payload {
        Payload::Pointed(self.values.clone())
    }
}

pub fn pointed_compose(g: &PointedMap, f: &PointedMap) -> Result<PointedMap> {
    if f.target != g.source {
        return Err(Error::SizeMismatch {
            expected: g.source,
            found: f.target,
        });
    }
    Ok(PointedMap {
        source: f.source,
        target: g.target,
        values: f.values.iter().map(|&t| g.apply(t)).collect(),
    })
}

/// All pointed maps `n+ → m+`, lexicographically.
pub fn pointed_hom(n: usize, m: usize) -> Vec<PointedMap> {
    let mut out = Vec::new();
    let mut v = vec![0usize; n];
    loop {
        out.push(PointedMap {
            source: n,
            target: m,
            values: v.clone(),
        });
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            v[k] += 1;
            if v[k] <= m {
                break;
            }
            v[k] = 0;
        }
    }
}

/// `P(f)(t) = s` if `t ∈ f(s)`, else `*`. Contravariant: `f : n̄ → l̄`
/// gives `l+ → n+`.
pub fn p_to_pointed(f: &GammaMorphism) -> PointedMap {
    let mut values = vec![0; f.target];
    for (s, b) in f.blocks.iter().enumerate() {
        for &t in b {
            values[t - 1] = s + 1;
        }
    }
    PointedMap {
        source: f.target,
        target: f.source,
        values,
    }
}

/// Inverse of [`p_to_pointed`]: `p : l+ → n+` gives `s ↦ p⁻¹(s)`.
pub fn pointed_to_gamma(p: &PointedMap) -> GammaMorphism {
    let mut blocks = vec![Vec::new(); p.target];
    for (t, &s) in p.values.iter().enumerate() {
        if s > 0 {
            blocks[s - 1].push(t + 1);
        }
    }
    GammaMorphism {
        source: p.target,
        target: p.source,
        blocks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts() {
        assert_eq!(gamma_hom(1, 1).len(), 2);
        assert_eq!(gamma_hom(2, 1).len(), 3);
        assert_eq!(gamma_hom(1, 2).len(), 4);
        assert_eq!(gamma_hom(0, 3).len(), 1);
        assert_eq!(gamma_hom(3, 0).len(), 1);
        let h = gamma_hom(2, 2);
        assert!(h.windows(2).all(|w| w[0] < w[1]));
        assert!(h.iter().all(GammaMorphism::is_valid));
    }

    #[test]
    fn hand_composite() {
        let f = GammaMorphism::new(1, 2, vec![vec![1, 2]]).unwrap();
        let g = GammaMorphism::new(2, 1, vec![vec![1], vec![]]).unwrap();
        assert_eq!(gamma_compose(&g, &f).unwrap().blocks, vec![vec![1]]);
        assert_eq!(gamma_compose(&GammaMorphism::identity(2), &f).unwrap(), f);
        let empty = GammaMorphism::new(2, 2, vec![vec![], vec![]]).unwrap();
        let gf = gamma_compose(&GammaMorphism::identity(2), &empty).unwrap();
        assert!(gf.blocks.iter().all(Vec::is_empty));
        assert!(gamma_compose(&f, &f).is_err());
    }

    #[test]
    fn disjointness_enforced() {
        assert!(GammaMorphism::new(2, 2, vec![vec![1], vec![1]]).is_err());
        assert!(GammaMorphism::new(1, 2, vec![vec![3]]).is_err());
    }

    #[test]
    fn p_examples() {
        let f = GammaMorphism::new(1, 2, vec![vec![1, 2]]).unwrap();
        let p = p_to_pointed(&f);
        assert_eq!((p.source, p.target), (2, 1));
        assert_eq!(p.values, vec![1, 1]);
        assert_eq!(p_to_pointed(&GammaMorphism::identity(3)), PointedMap::identity(3));
        let g = GammaMorphism::new(2, 3, vec![vec![2], vec![]]).unwrap();
        assert_eq!(p_to_pointed(&g).values, vec![0, 1, 0]);
        assert_eq!(pointed_to_gamma(&p_to_pointed(&g)), g);
    }

    #[test]
    fn pointed_counts() {
        assert_eq!(pointed_hom(2, 2).len(), 9);
        assert_eq!(pointed_hom(0, 4).len(), 1);
    }
}

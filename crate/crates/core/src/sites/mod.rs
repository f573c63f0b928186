//! Concrete sites: Δ, ∇, Γ, FinSet_*, Λ and ΔZ/2, with hom-set enumerators
//! and full-subcategory truncations.

pub mod crossed;
pub mod cyclic;
pub mod delta;
pub mod gamma;
pub mod nabla;
pub mod z2;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fincat::{CategoryBuilder, FiniteCategory};
use crate::obj::Obj;
use crate::payload::Payload;

pub use crossed::{Ambient, CrossedFactorization};
pub use cyclic::{lambda_compose, lambda_hom, CyclicMorphism};
pub use delta::{binomial, degeneracy, delta_compose, delta_hom, face, SimplexMorphism};
pub use gamma::{
    gamma_compose, gamma_hom, p_to_pointed, pointed_compose, pointed_hom, pointed_to_gamma,
    GammaMorphism, PointedMap,
};
pub use nabla::{interval_duality, interval_duality_inverse, nabla_hom, IntervalMorphism};
pub use z2::{z2_compose, z2_hom, Z2Morphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Site {
    Delta,
    Nabla,
    Gamma,
    Pointed,
    Lambda,
    Z2,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Site::Delta => "Δ",
            Site::Nabla => "∇",
            Site::Gamma => "Γ",
            Site::Pointed => "FinSet_*",
            Site::Lambda => "Λ",
            Site::Z2 => "ΔZ/2",
        })
    }
}

impl FromStr for Site {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "delta" | "Δ" => Ok(Site::Delta),
            "nabla" | "∇" => Ok(Site::Nabla),
            "gamma" | "Γ" => Ok(Site::Gamma),
            "pointed" | "finset" | "finset_*" => Ok(Site::Pointed),
            "lambda" | "Λ" => Ok(Site::Lambda),
            "z2" | "deltaz2" | "Δz/2" | "ΔZ/2" => Ok(Site::Z2),
            _ => Err(invalid(format!("unknown site `{s}`"))),
        }
    }
}

impl Site {
    /// Smallest object rank of the site.
    pub fn min_rank(self) -> usize {
        match self {
            Site::Nabla => 1,
            _ => 0,
        }
    }

    pub fn object(self, n: usize) -> Obj {
        match self {
            Site::Delta | Site::Nabla | Site::Z2 => Obj::Simplex(n),
            Site::Gamma => Obj::Set(n),
            Site::Pointed => Obj::Pointed(n),
            Site::Lambda => Obj::Cyclic(n),
        }
    }

    /// Canonical payloads of `Hom(n, m)`, sorted.
    pub fn hom(self, n: usize, m: usize) -> Vec<Payload> {
        let mut v: Vec<Payload> = match self {
            Site::Delta => delta_hom(n, m).iter().map(SimplexMorphism::payload).collect(),
            Site::Nabla => nabla_hom(n, m).iter().map(IntervalMorphism::payload).collect(),
            Site::Gamma => gamma_hom(n, m).iter().map(GammaMorphism::payload).collect(),
            Site::Pointed => pointed_hom(n, m).iter().map(PointedMap::payload).collect(),
            Site::Lambda => lambda_hom(n, m).iter().map(CyclicMorphism::payload).collect(),
            Site::Z2 => z2_hom(n, m).iter().map(Z2Morphism::payload).collect(),
        };
        v.sort();
        v
    }

    pub fn hom_count(self, n: usize, m: usize) -> usize {
        self.hom(n, m).len()
    }

    pub fn identity(self, n: usize) -> Payload {
        match self {
            Site::Delta => SimplexMorphism::identity(n).payload(),
            Site::Nabla => IntervalMorphism::identity(n).payload(),
            Site::Gamma => GammaMorphism::identity(n).payload(),
            Site::Pointed => PointedMap::identity(n).payload(),
            Site::Lambda => CyclicMorphism::identity(n).payload(),
            Site::Z2 => Z2Morphism::identity(n).payload(),
        }
    }

    /// `g ∘ f` with `f : a → b`, `g : b → c`.
    pub fn compose(self, g: &Payload, f: &Payload, a: usize, b: usize, c: usize) -> Result<Payload> {
        match (self, g, f) {
            (Site::Delta | Site::Nabla, Payload::Seq(gv), Payload::Seq(fv)) => {
                if fv.len() != a + 1 || gv.len() != b + 1 {
                    return Err(invalid("sequence length does not match rank"));
                }
                Ok(Payload::Seq(fv.iter().map(|&x| gv[x]).collect()))
            }
            (Site::Gamma, _, _) => Ok(gamma_compose(
                &GammaMorphism::from_payload(b, c, g)?,
                &GammaMorphism::from_payload(a, b, f)?,
            )?
            .payload()),
            (Site::Pointed, Payload::Pointed(gv), Payload::Pointed(fv)) => {
                let gm = PointedMap {
                    source: b,
                    target: c,
                    values: gv.clone(),
                };
                let fm = PointedMap {
                    source: a,
                    target: b,
                    values: fv.clone(),
                };
                if !gm.is_valid() || !fm.is_valid() {
                    return Err(invalid("pointed map does not match rank"));
                }
                Ok(pointed_compose(&gm, &fm)?.payload())
            }
            (Site::Lambda, _, _) => Ambient::Lambda.compose_ranked(g, f, a, b, c),
            (Site::Z2, _, _) => Ambient::Z2.compose_ranked(g, f, a, b, c),
            _ => Err(invalid(format!("payload does not belong to {self}"))),
        }
    }

    pub fn name(self, max_rank: usize) -> String {
        format!("{self}≤{max_rank}")
    }
}

/// Full subcategory of a site on the objects of rank `min_rank..=max_rank`.
pub fn materialize(site: Site, max_rank: usize) -> FiniteCategory {
    materialize_ranks(site, site.min_rank(), max_rank)
}

/// Full subcategory on ranks `lo..=hi`.
pub fn materialize_ranks(site: Site, lo: usize, hi: usize) -> FiniteCategory {
    let ranks: Vec<usize> = (lo.max(site.min_rank())..=hi).collect();
    let mut b = CategoryBuilder::new(site.name(hi));
    for &r in &ranks {
        b.add_object(site.object(r));
    }
    let mut index = HashMap::new();
    let mut info = Vec::new();
    for i in 0..ranks.len() {
        for j in 0..ranks.len() {
            for p in site.hom(ranks[i], ranks[j]) {
                let id = b.add_morphism(i, j, p.clone());
                index.insert((i, j, p.clone()), id);
                info.push((i, j, p));
            }
        }
    }
    for (i, &r) in ranks.iter().enumerate() {
        b.set_identity(i, index[&(i, i, site.identity(r))]);
    }
    b.build(|g, f| {
        let (x, y, pf) = &info[f];
        let (_, z, pg) = &info[g];
        let h = site.compose(pg, pf, ranks[*x], ranks[*y], ranks[*z]).ok()?;
        index.get(&(*x, *z, h)).copied()
    })
    .expect("site truncation is canonical")
    .with_bounds(vec![hi])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;

    #[test]
    fn delta_zero() {
        let c = materialize(Site::Delta, 0);
        assert_eq!((c.num_objects(), c.num_morphisms()), (1, 1));
    }

    #[test]
    fn gamma_two() {
        let c = materialize(Site::Gamma, 2);
        let two = c.find_object(&Obj::Set(2)).unwrap();
        let one = c.find_object(&Obj::Set(1)).unwrap();
        assert_eq!(c.hom_len(two, one), 3);
        assert!(validate_category(&c).is_empty());
    }

    #[test]
    fn opposite_of_small_delta() {
        let c = materialize(Site::Delta, 1);
        let op = c.opposite();
        let (z, o) = (
            op.find_object(&Obj::Simplex(0)).unwrap(),
            op.find_object(&Obj::Simplex(1)).unwrap(),
        );
        assert_eq!(op.hom_len(o, z), 2);
    }

    #[test]
    fn small_truncations_valid() {
        for site in [Site::Delta, Site::Nabla, Site::Pointed, Site::Lambda, Site::Z2] {
            let c = materialize(site, 2);
            assert!(validate_category(&c).is_empty(), "{site}");
        }
    }
}

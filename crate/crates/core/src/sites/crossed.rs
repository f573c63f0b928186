//! Crossed simplicial groups `ΔG`: every morphism factors uniquely as a
//! monotone map after an automorphism of its source.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cyclic::{lambda_compose, lambda_hom, CyclicMorphism};
use super::delta::{delta_compose, delta_hom, SimplexMorphism};
use super::z2::{z2_compose, z2_hom, Z2Morphism};
use crate::error::{invalid, Error, Result};
use crate::obj::Obj;
use crate::payload::Payload;

/// The shipped crossed simplicial groups. `Delta` is the trivial one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ambient {
    Delta,
    Lambda,
    Z2,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::Delta => "Δ",
            Ambient::Lambda => "Λ",
            Ambient::Z2 => "ΔZ/2",
        })
    }
}

impl FromStr for Ambient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" | "Delta" | "Δ" => Ok(Ambient::Delta),
            "lambda" | "Lambda" | "Λ" => Ok(Ambient::Lambda),
            "z2" | "Z2" | "deltaz2" | "ΔZ/2" => Ok(Ambient::Z2),
            _ => Err(invalid(format!("unknown ambient `{s}`"))),
        }
    }
}

/// `f = φ ∘ g` with `φ` monotone and `g ∈ G_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossedFactorization {
    pub phi: SimplexMorphism,
    pub g: Payload,
}

impl Ambient {
    pub fn object(self, n: usize) -> Obj {
        match self {
            Ambient::Lambda => Obj::Cyclic(n),
            _ => Obj::Simplex(n),
        }
    }

    pub fn hom(self, n: usize, m: usize) -> Vec<Payload> {
        match self {
            Ambient::Delta => delta_hom(n, m).iter().map(|f| f.payload()).collect(),
            Ambient::Lambda => lambda_hom(n, m).iter().map(|f| f.payload()).collect(),
            Ambient::Z2 => z2_hom(n, m).iter().map(|f| f.payload()).collect(),
        }
    }

    pub fn identity(self, n: usize) -> Payload {
        self.embed(&SimplexMorphism::identity(n))
    }

    /// `g ∘ f` for `f : [a] → [b]` and `g : [b] → [c]`.
    pub fn compose_ranked(self, g: &Payload, f: &Payload, a: usize, b: usize, c: usize) -> Result<Payload> {
        match (self, g, f) {
            (Ambient::Delta, Payload::Seq(gv), Payload::Seq(fv)) => Ok(delta_compose(
                &SimplexMorphism::new(b, c, gv.clone())?,
                &SimplexMorphism::new(a, b, fv.clone())?,
            )?
            .payload()),
            (Ambient::Lambda, _, _) => Ok(lambda_compose(
                &CyclicMorphism::from_payload(b, c, g)?,
                &CyclicMorphism::from_payload(a, b, f)?,
            )?
            .payload()),
            (Ambient::Z2, _, _) => Ok(z2_compose(
                &Z2Morphism::from_payload(b, c, g)?,
                &Z2Morphism::from_payload(a, b, f)?,
            )?
            .payload()),
            _ => Err(invalid(format!("payload does not belong to {self}"))),
        }
    }

    /// Automorphism group `G_n` of `[n]`.
    pub fn group(self, n: usize) -> Vec<Payload> {
        match self {
            Ambient::Delta => vec![self.identity(n)],
            Ambient::Lambda => {
                let t = CyclicMorphism::rotation(n);
                let mut out = vec![CyclicMorphism::identity(n)];
                for _ in 0..n {
                    let next = lambda_compose(&t, out.last().unwrap()).expect("ranks agree");
                    out.push(next);
                }
                let mut out: Vec<Payload> = out.iter().map(CyclicMorphism::payload).collect();
                out.sort();
                out
            }
            Ambient::Z2 => {
                let mut out = vec![
                    Z2Morphism::identity(n).payload(),
                    Z2Morphism::reversal(n).payload(),
                ];
                out.sort();
                out
            }
        }
    }

    /// The inclusion `i : Δ → ΔG`.
    pub fn embed(self, phi: &SimplexMorphism) -> Payload {
        match self {
            Ambient::Delta => phi.payload(),
            Ambient::Lambda => CyclicMorphism::from_delta(phi).payload(),
            Ambient::Z2 => Z2Morphism::from_delta(phi).payload(),
        }
    }

    /// The monotone map `φ` with `i(φ) = f`, if any.
    pub fn residue(self, f: &Payload, source: usize, target: usize) -> Option<SimplexMorphism> {
        match self {
            Ambient::Delta => SimplexMorphism::from_payload(source, target, f).ok(),
            Ambient::Lambda => CyclicMorphism::from_payload(source, target, f)
                .ok()?
                .as_delta(),
            Ambient::Z2 => Z2Morphism::from_payload(source, target, f).ok()?.as_delta(),
        }
    }

    fn inverse(self, g: &Payload, n: usize) -> Payload {
        let id = self.identity(n);
        self.group(n)
            .into_iter()
            .find(|h| self.compose_ranked(h, g, n, n, n).ok().as_ref() == Some(&id))
            .expect("group element has an inverse")
    }

    /// Factor `f : [m] → [n]` as `φ ∘ g`, searching `G_m`.
    pub fn factorize(self, f: &Payload, m: usize, n: usize) -> Result<CrossedFactorization> {
        for g in self.group(m) {
            let ginv = self.inverse(&g, m);
            let h = self.compose_ranked(f, &ginv, m, m, n)?;
            if let Some(phi) = self.residue(&h, m, n) {
                return Ok(CrossedFactorization { phi, g });
            }
        }
        Err(invalid(format!("{f} has no crossed factorization in {self}")))
    }

    /// `i(φ) ∘ g`.
    pub fn recompose(self, fac: &CrossedFactorization) -> Result<Payload> {
        let (m, n) = (fac.phi.source, fac.phi.target);
        self.compose_ranked(&self.embed(&fac.phi), &fac.g, m, m, n)
    }

    /// `(φg)(φ'g') = (φ ∘ g_*(φ')) (φ'^*(g) ∘ g')`, where
    /// `g ∘ φ' = g_*(φ') ∘ φ'^*(g)` is itself a crossed factorization.
    /// Here `f' = φ'g' : [a] → [b]` and `f = φg : [b] → [c]`.
    pub fn rearranged_compose(
        self,
        f: &CrossedFactorization,
        f2: &CrossedFactorization,
    ) -> Result<Payload> {
        let (a, b, c) = (f2.phi.source, f.phi.source, f.phi.target);
        if f2.phi.target != b {
            return Err(Error::SizeMismatch {
                expected: b,
                found: f2.phi.target,
            });
        }
        let g_phi2 = self.compose_ranked(&f.g, &self.embed(&f2.phi), a, b, b)?;
        let inner = self.factorize(&g_phi2, a, b)?;
        let phi = delta_compose(&f.phi, &inner.phi)?;
        let g = self.compose_ranked(&inner.g, &f2.g, a, a, a)?;
        self.compose_ranked(&self.embed(&phi), &g, a, a, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_and_rotation_factorizations() {
        for amb in [Ambient::Lambda, Ambient::Z2] {
            let f = SimplexMorphism::new(1, 2, vec![0, 2]).unwrap();
            let fac = amb.factorize(&amb.embed(&f), 1, 2).unwrap();
            assert_eq!(fac.phi, f);
            assert_eq!(fac.g, amb.identity(1));
        }
        let t = CyclicMorphism::rotation(3).payload();
        let fac = Ambient::Lambda.factorize(&t, 3, 3).unwrap();
        assert_eq!(fac.phi, SimplexMorphism::identity(3));
        assert_eq!(fac.g, t);
    }

    #[test]
    fn lambda_11_factorizations_distinct() {
        let hom = Ambient::Lambda.hom(1, 1);
        assert_eq!(hom.len(), 6);
        let mut facs: Vec<_> = hom
            .iter()
            .map(|f| {
                let fac = Ambient::Lambda.factorize(f, 1, 1).unwrap();
                assert_eq!(&Ambient::Lambda.recompose(&fac).unwrap(), f);
                (fac.phi.values, fac.g)
            })
            .collect();
        facs.sort();
        facs.dedup();
        assert_eq!(facs.len(), 6);
    }

    #[test]
    fn group_orders() {
        assert_eq!(Ambient::Lambda.group(3).len(), 4);
        assert_eq!(Ambient::Z2.group(3).len(), 2);
        assert_eq!(Ambient::Delta.group(3).len(), 1);
    }
}

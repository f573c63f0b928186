//! Induced sieves `S^G` in a crossed simplicial group and the Segal functors
//! `(Y_x/S)^op : ΔG → Γ`.

use std::sync::Arc;

use super::quotient::{quotient_functor, yoneda, PointedPresheaf};
use super::{ambient_site, SieveWindow};
use crate::error::{invalid, Result};
use crate::fincat::{FiniteCategory, Functor, NaturalTransformation};
use crate::obj::Obj;
use crate::payload::Payload;
use crate::sieves::{family_to_sieve, largest_proper_sieve};
use crate::sites::{materialize, pointed_to_gamma, Ambient, PointedMap, SimplexMorphism, Site};
use crate::wreath::segal_gamma_on;

/// `S^G([k]) = {φ g : φ ∈ S([k]), g ∈ G_k}`.
pub fn induce_crossed_sieve(s: &SieveWindow, g: Ambient) -> Result<SieveWindow> {
    if s.ambient != Ambient::Delta {
        return Err(invalid("only sieves in Δ are induced"));
    }
    let mut out = SieveWindow::empty(g, s.base, s.window);
    for (k, members) in s.members.iter().enumerate() {
        let group = g.group(k);
        for phi in members {
            let phi = SimplexMorphism::from_payload(k, s.base, phi)?;
            let e = g.embed(&phi);
            for h in &group {
                out.members[k].push(g.compose_ranked(&e, h, k, k, s.base)?);
            }
        }
        out.members[k].sort();
        out.members[k].dedup();
    }
    Ok(out)
}

/// `T^Δ`: the members of `T` that lie in `Δ`.
pub fn delta_part(t: &SieveWindow) -> Result<SieveWindow> {
    let mut out = SieveWindow::empty(Ambient::Delta, t.base, t.window);
    for (k, members) in t.members.iter().enumerate() {
        out.members[k] = members
            .iter()
            .filter_map(|f| t.ambient.residue(f, k, t.base))
            .map(|phi| phi.payload())
            .collect();
        out.members[k].sort();
    }
    Ok(out)
}

/// `Y_x/S` on the window, read as a functor into `Γ` through `P`.
#[derive(Clone, Debug)]
pub struct SegalFunctor {
    pub sieve: SieveWindow,
    pub quotient: PointedPresheaf,
}

impl SegalFunctor {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.quotient.category
    }

    /// Number of non-basepoint elements at rank `k`.
    pub fn size_at(&self, k: usize) -> Option<usize> {
        let c = self.category();
        c.find_object(&self.sieve.ambient.object(k))
            .map(|x| self.quotient.sizes[x])
    }

    /// `x ↦ n̄` with `n = #(Y_x/S)(x) − 1`, and `f ↦ P⁻¹((Y_x/S)(f))`.
    pub fn to_gamma(&self, gamma: Arc<FiniteCategory>) -> Result<Functor> {
        let c = self.category().clone();
        let q = &self.quotient;
        Functor::from_labels(
            "γ_S",
            c.clone(),
            gamma,
            |o| {
                let x = c.find_object(o).expect("window object");
                Ok(Obj::Set(q.sizes[x]))
            },
            |f| {
                let (a, b) = (c.dom(f), c.cod(f));
                let p = PointedMap {
                    source: q.sizes[b],
                    target: q.sizes[a],
                    values: q.action[f][1..].to_vec(),
                };
                Ok(pointed_to_gamma(&p).payload())
            },
        )
    }
}

/// `Y_x/S` for a sieve on `x = [n]` (or `⟨n⟩`) over its window.
pub fn segal_from_sieve(s: &SieveWindow) -> Result<SegalFunctor> {
    if let Some((zeta, xi)) = s.closure_witness()? {
        return Err(invalid(format!("not a sieve: {zeta} ∘ {xi} is missing")));
    }
    let c = Arc::new(materialize(ambient_site(s.ambient), s.window));
    let x = c
        .find_object(&s.ambient.object(s.base))
        .ok_or_else(|| invalid("base object missing from the window"))?;
    let y = yoneda(c.clone(), x);
    let sub: Vec<Vec<bool>> = (0..c.num_objects())
        .map(|z| {
            let k = c.object(z).rank().expect("ranked site");
            c.hom(z, x).map(|h| s.contains(k, c.payload(h))).collect()
        })
        .collect();
    Ok(SegalFunctor {
        sieve: s.clone(),
        quotient: quotient_functor(&y, &sub)?,
    })
}

/// `p : γ ⇒ (Y_{[1]}/S)^op` as a transformation of functors `Δ≤b → Γ≤b`,
/// with components `e_i ↦ p_{e_i}`.
pub fn berger_transformation(max_rank: usize) -> Result<NaturalTransformation> {
    let b = family_to_sieve(&largest_proper_sieve(1)?, max_rank)?;
    let q = segal_from_sieve(&b)?;
    let c = q.category().clone();
    let gamma = Arc::new(materialize(Site::Gamma, max_rank));
    let target = q.to_gamma(gamma.clone())?;
    let source = segal_gamma_on(c.clone(), gamma.clone())?;
    let one = c.find_object(&Obj::Simplex(1)).expect("[1] in window");
    let components = (0..c.num_objects())
        .map(|z| {
            let n = c.object(z).rank().expect("ranked site");
            // surviving elements of Y_{[1]}([n]) in quotient order
            let survivors: Vec<&Payload> = c
                .hom(z, one)
                .map(|h| c.payload(h))
                .filter(|p| !b.contains(n, p))
                .collect();
            let blocks = (1..=n)
                .map(|i| {
                    let pe = Payload::Seq((0..=n).map(|j| usize::from(j >= i)).collect());
                    let r = survivors.iter().position(|&p| *p == pe).expect("p_e survives");
                    vec![r + 1]
                })
                .collect();
            let x = gamma.find_object(&Obj::Set(n)).expect("Γ object");
            gamma
                .find_morphism(x, x, &Payload::Blocks(blocks))
                .ok_or_else(|| invalid("component is not a Γ-morphism"))
        })
        .collect::<Result<_>>()?;
    NaturalTransformation::new(source, target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieves::enumerate_sieves;

    #[test]
    fn induced_constants_in_z2() {
        let b = family_to_sieve(&largest_proper_sieve(1).unwrap(), 2).unwrap();
        let bg = induce_crossed_sieve(&b, Ambient::Z2).unwrap();
        assert_eq!(bg.members[1].len(), 4);
        assert!(bg.is_sieve());
        assert_eq!(delta_part(&bg).unwrap(), b);
    }

    #[test]
    fn lambda_sieves_are_induced() {
        let all = enumerate_sieves(Ambient::Lambda, 1, 2).unwrap();
        assert_eq!(all.len(), 5);
        for t in &all {
            assert_eq!(&induce_crossed_sieve(&delta_part(t).unwrap(), Ambient::Lambda).unwrap(), t);
        }
    }

    #[test]
    fn lambda_segal_sizes() {
        let s = SieveWindow::empty(Ambient::Lambda, 0, 3);
        let g = segal_from_sieve(&s).unwrap();
        for n in 0..=3 {
            assert_eq!(g.size_at(n), Some(n + 1));
        }
        assert!(g.quotient.violations().is_empty());
    }

    #[test]
    fn berger_quotient_matches_segal_gamma() {
        let b = family_to_sieve(&largest_proper_sieve(1).unwrap(), 3).unwrap();
        let q = segal_from_sieve(&b).unwrap();
        let gamma = Arc::new(materialize(crate::sites::Site::Gamma, 3));
        let f = q.to_gamma(gamma).unwrap();
        assert!(f.is_functor());
        for n in 0..=3 {
            assert_eq!(q.size_at(n), Some(n));
        }
        let eta = berger_transformation(3).unwrap();
        assert!(eta.is_natural_iso());
    }
}

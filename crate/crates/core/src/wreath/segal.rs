//! Segal and coSegal maps, the functor `P : Γ^op ≅ FinSet_*` and interval
//! duality as a functor.

use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::fincat::{FiniteCategory, Functor};
use crate::obj::Obj;
use crate::payload::Payload;
use crate::sites::{
    interval_duality, materialize, p_to_pointed, pointed_to_gamma, GammaMorphism, PointedMap,
    SimplexMorphism, Site,
};

fn rank(o: &Obj) -> Result<usize> {
    o.rank().ok_or_else(|| invalid(format!("object {o} has no rank")))
}

fn seq(p: &Payload) -> Result<&[usize]> {
    match p {
        Payload::Seq(v) => Ok(v),
        _ => Err(invalid(format!("expected a sequence payload, found {p}"))),
    }
}

/// `γ([n]) = {e_1..e_n}`, `γ(f)(e_i) = {e_j : f(i−1) < j ≤ f(i)}`.
pub fn segal_gamma_on(delta: Arc<FiniteCategory>, gamma: Arc<FiniteCategory>) -> Result<Functor> {
    let d = delta.clone();
    Functor::from_labels(
        "γ",
        delta,
        gamma,
        |o| Ok(Obj::Set(rank(o)?)),
        |f| {
            let v = seq(d.payload(f))?;
            let blocks = v
                .windows(2)
                .map(|w| (w[0] + 1..=w[1]).collect())
                .collect();
            Ok(Payload::Blocks(blocks))
        },
    )
}

/// The Segal map `Δ≤b → Γ≤b`.
pub fn segal_gamma(max_rank: usize) -> Result<Functor> {
    segal_gamma_on(
        Arc::new(materialize(Site::Delta, max_rank)),
        Arc::new(materialize(Site::Gamma, max_rank)),
    )
}

/// `ω([n]) = {1..n−1, *}`, `ω(f)(i) = f(i)` unless `f(i) ∈ {0, m}`.
pub fn cosegal_omega_on(nabla: Arc<FiniteCategory>, pointed: Arc<FiniteCategory>) -> Result<Functor> {
    let d = nabla.clone();
    Functor::from_labels(
        "ω",
        nabla,
        pointed,
        |o| Ok(Obj::Pointed(rank(o)?.saturating_sub(1))),
        |f| {
            let v = seq(d.payload(f))?;
            let m = *v.last().expect("interval maps are nonempty");
            let n = v.len() - 1;
            Ok(Payload::Pointed(
                (1..n)
                    .map(|i| if v[i] == 0 || v[i] == m { 0 } else { v[i] })
                    .collect(),
            ))
        },
    )
}

/// The coSegal map `∇≤k → FinSet_*≤(k−1)`.
pub fn cosegal_omega(max_rank: usize) -> Result<Functor> {
    if max_rank == 0 {
        return Err(invalid("∇ has no objects of rank 0"));
    }
    cosegal_omega_on(
        Arc::new(materialize(Site::Nabla, max_rank)),
        Arc::new(materialize(Site::Pointed, max_rank - 1)),
    )
}

/// Sends every interior point to the basepoint. Used for fault injection:
/// it breaks the identity law as soon as `ω([n])` has a non-basepoint.
pub fn constant_omega_on(nabla: Arc<FiniteCategory>, pointed: Arc<FiniteCategory>) -> Result<Functor> {
    let d = nabla.clone();
    Functor::from_labels(
        "ω_*",
        nabla,
        pointed,
        |o| Ok(Obj::Pointed(rank(o)?.saturating_sub(1))),
        |f| {
            let n = seq(d.payload(f))?.len() - 1;
            Ok(Payload::Pointed(vec![0; n.saturating_sub(1)]))
        },
    )
}

/// `P : Γ^op → FinSet_*`, `n̄ ↦ n+`, `P(f)(t) = s` iff `t ∈ f(s)`.
pub fn p_functor(gamma_op: Arc<FiniteCategory>, pointed: Arc<FiniteCategory>) -> Result<Functor> {
    let g = gamma_op.clone();
    Functor::from_labels(
        "P",
        gamma_op,
        pointed,
        |o| Ok(Obj::Pointed(rank(o)?)),
        |f| {
            // f : x → y in Γ^op is a Γ-morphism y → x
            let (x, y) = (rank(g.object(g.dom(f)))?, rank(g.object(g.cod(f)))?);
            let gm = GammaMorphism::from_payload(y, x, g.payload(f))?;
            Ok(p_to_pointed(&gm).payload())
        },
    )
}

/// Inverse of [`p_functor`].
pub fn p_inverse(pointed: Arc<FiniteCategory>, gamma_op: Arc<FiniteCategory>) -> Result<Functor> {
    let p = pointed.clone();
    Functor::from_labels(
        "P⁻¹",
        pointed,
        gamma_op,
        |o| Ok(Obj::Set(rank(o)?)),
        |f| {
            let (x, y) = (rank(p.object(p.dom(f)))?, rank(p.object(p.cod(f)))?);
            let values = match p.payload(f) {
                Payload::Pointed(v) => v.clone(),
                q => return Err(invalid(format!("expected a pointed payload, found {q}"))),
            };
            let pm = PointedMap {
                source: x,
                target: y,
                values,
            };
            Ok(pointed_to_gamma(&pm).payload())
        },
    )
}

/// Interval duality `Δ≤b^op → ∇` onto ranks `1..=b+1`.
pub fn interval_duality_functor(
    delta_op: Arc<FiniteCategory>,
    nabla: Arc<FiniteCategory>,
) -> Result<Functor> {
    let d = delta_op.clone();
    Functor::from_labels(
        "D",
        delta_op,
        nabla,
        |o| Ok(Obj::Simplex(rank(o)? + 1)),
        |f| {
            // f : [m] → [n] in Δ^op is a Δ-morphism [n] → [m]
            let (m, n) = (rank(d.object(d.dom(f)))?, rank(d.object(d.cod(f)))?);
            let sm = SimplexMorphism::from_payload(n, m, d.payload(f))?;
            Ok(interval_duality(&sm).payload())
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        let g = segal_gamma(3).unwrap();
        assert!(g.is_functor());
        let (d, t) = (&g.source, &g.target);
        let two = d.find_object(&Obj::Simplex(2)).unwrap();
        assert_eq!(t.object(g.obj(two)), &Obj::Set(2));
        let one = d.find_object(&Obj::Simplex(1)).unwrap();
        let f = d.find_morphism(one, two, &Payload::Seq(vec![0, 2])).unwrap();
        assert_eq!(t.payload(g.mor(f)), &Payload::Blocks(vec![vec![1, 2]]));
        let c = d.find_morphism(one, two, &Payload::Seq(vec![1, 1])).unwrap();
        assert_eq!(t.payload(g.mor(c)), &Payload::Blocks(vec![vec![]]));
    }

    #[test]
    fn omega_examples() {
        let w = cosegal_omega(3).unwrap();
        assert!(w.is_functor());
        let (n, t) = (&w.source, &w.target);
        let one = n.find_object(&Obj::Simplex(1)).unwrap();
        let three = n.find_object(&Obj::Simplex(3)).unwrap();
        assert_eq!(t.object(w.obj(one)), &Obj::Pointed(0));
        assert_eq!(t.object(w.obj(three)), &Obj::Pointed(2));
        let two = n.find_object(&Obj::Simplex(2)).unwrap();
        let f = n.find_morphism(two, two, &Payload::Seq(vec![0, 2, 2])).unwrap();
        assert_eq!(t.payload(w.mor(f)), &Payload::Pointed(vec![0]));
    }

    #[test]
    fn p_is_an_isomorphism() {
        for k in 0..=3 {
            let gop = Arc::new(materialize(Site::Gamma, k).opposite());
            let pt = Arc::new(materialize(Site::Pointed, k));
            let p = p_functor(gop.clone(), pt.clone()).unwrap();
            let q = p_inverse(pt.clone(), gop.clone()).unwrap();
            assert!(p.check_isomorphism());
            assert!(q.after(&p).unwrap().same_as(&Functor::identity(gop)));
        }
    }

    #[test]
    fn omega_after_duality_is_p_after_gamma_op() {
        for b in 0..=3 {
            let delta = Arc::new(materialize(Site::Delta, b));
            let gamma = Arc::new(materialize(Site::Gamma, b));
            let dop = Arc::new(delta.opposite());
            let gop = Arc::new(gamma.opposite());
            let pt = Arc::new(materialize(Site::Pointed, b));
            let nabla = Arc::new(materialize(Site::Nabla, b + 1));
            let g = segal_gamma_on(delta, gamma).unwrap();
            let lhs = cosegal_omega_on(nabla.clone(), pt.clone())
                .unwrap()
                .after(&interval_duality_functor(dop.clone(), nabla).unwrap())
                .unwrap();
            let rhs = p_functor(gop.clone(), pt)
                .unwrap()
                .after(&g.opposite(dop, gop))
                .unwrap();
            assert!(lhs.same_as(&rhs), "b = {b}");
        }
    }

    #[test]
    fn constant_omega_is_not_a_functor() {
        let nabla = Arc::new(materialize(Site::Nabla, 3));
        let pt = Arc::new(materialize(Site::Pointed, 2));
        assert!(!constant_omega_on(nabla.clone(), pt.clone()).unwrap().is_functor());
        let small = Arc::new(materialize(Site::Nabla, 1));
        assert!(constant_omega_on(small, Arc::new(materialize(Site::Pointed, 0)))
            .unwrap()
            .is_functor());
    }
}

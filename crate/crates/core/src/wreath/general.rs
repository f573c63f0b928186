//! The generalized wreath `A ×_{T(*)} T(X)` for `T ∈ {M, M^op}`, built as a
//! genuine pullback and renamed into the labeled form of the direct
//! constructions.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{cowreath_name, m_of, wreath_name, LabeledCategory};
use crate::error::{invalid, Error, Result};
use crate::fincat::{pullback, CategoryBuilder, FiniteCategory, Functor, Pullback};
use crate::obj::Obj;
use crate::payload::{Component, Payload};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transformer {
    M,
    MOp,
}

impl fmt::Display for Transformer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transformer::M => "M",
            Transformer::MOp => "M^op",
        })
    }
}

impl FromStr for Transformer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(Transformer::M),
            "Mop" | "M^op" => Ok(Transformer::MOp),
            _ => Err(invalid(format!("unsupported transformer `{s}`"))),
        }
    }
}

/// Index bound of a Γ or Γ^op truncation.
fn gamma_index(c: &FiniteCategory) -> Result<usize> {
    let k = c.num_objects().checked_sub(1).ok_or_else(|| invalid("empty truncation"))?;
    if (0..=k).all(|n| c.find_object(&Obj::Set(n)).is_some()) {
        Ok(k)
    } else {
        Err(invalid(format!("{} is not a Γ truncation", c.name())))
    }
}

/// `T(X)` together with `T(!) : T(X) → T(*)`.
fn transformer_leg(t: Transformer, x: &FiniteCategory, k: usize) -> Result<(LabeledCategory, Functor)> {
    match t {
        Transformer::M => {
            let m = m_of(Arc::new(x.clone()), k)?;
            let p = m.project_base();
            Ok((m, p))
        }
        Transformer::MOp => {
            let m = m_of(Arc::new(x.opposite()), k)?;
            let mop = Arc::new(m.category.opposite());
            let gop = Arc::new(m.base.opposite());
            let p = m.project_base().opposite(mop, gop);
            Ok((m, p))
        }
    }
}

/// The pullback `A ×_{T(*)} T(X)` of `r : A → T(*)` and `T(!)`.
pub fn wreath_by_pullback(t: Transformer, r: &Functor, x: &FiniteCategory) -> Result<Pullback> {
    let k = gamma_index(&r.target)?;
    let (_, leg) = transformer_leg(t, x, k)?;
    pullback(r, &leg)
}

/// Rename pullback cells `(a | (I, labels))` to `a(labels)`. For `M^op` the
/// component keys are read in the opposite direction.
fn normalize(pb: &Pullback, swap: bool, name: String) -> Result<FiniteCategory> {
    let c = &*pb.category;
    let mut bld = CategoryBuilder::new(name);
    for o in c.objects() {
        let Obj::Pair(a, m) = o else {
            return Err(invalid("pullback object expected"));
        };
        let Obj::Labeled { labels, .. } = &**m else {
            return Err(invalid("labeled object expected"));
        };
        bld.add_object(Obj::labeled((**a).clone(), labels.clone()));
    }
    for f in 0..c.num_morphisms() {
        let Payload::Pair(a, m) = c.payload(f) else {
            return Err(invalid("pullback morphism expected"));
        };
        let Payload::Labeled { components, .. } = &**m else {
            return Err(invalid("labeled morphism expected"));
        };
        let comps = components
            .iter()
            .map(|q| Component {
                target: if swap { q.source } else { q.target },
                source: if swap { q.target } else { q.source },
                mor: q.mor.clone(),
            })
            .collect();
        bld.add_morphism(c.dom(f), c.cod(f), Payload::labeled((**a).clone(), comps));
    }
    for x in 0..c.num_objects() {
        if let Some(id) = c.identity(x) {
            bld.set_identity(x, id);
        }
    }
    bld.build(|g, f| c.compose(g, f))
}

/// `A ×_{T(*)} T(X)` in the labeled form of [`super::wreath`] (for `M`) or
/// [`super::cowreath`] (for `M^op`, with `r = P⁻¹ ∘ ω`).
pub fn generalized_wreath(t: Transformer, r: &Functor, x: &FiniteCategory) -> Result<FiniteCategory> {
    let pb = wreath_by_pullback(t, r, x)?;
    let (a, xn) = (r.source.name(), x.name());
    let (name, swap) = match t {
        Transformer::M => (wreath_name(a, xn), false),
        Transformer::MOp => (cowreath_name(a, xn), true),
    };
    let bounds = r.source.bounds().iter().chain(x.bounds()).copied().collect();
    Ok(normalize(&pb, swap, name)?.with_bounds(bounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::terminal;
    use crate::sites::{materialize, Site};
    use crate::wreath::{cosegal_omega, cowreath, p_inverse, segal_gamma, wreath};

    #[test]
    fn m_reproduces_direct_wreath() {
        let g = segal_gamma(2).unwrap();
        let a = Arc::new(materialize(Site::Delta, 1));
        let direct = wreath(&g, a.clone()).unwrap();
        let general = generalized_wreath(Transformer::M, &g, &a).unwrap();
        assert_eq!(*direct.category, general);
        assert_eq!(direct.category.name(), general.name());
    }

    #[test]
    fn mop_reproduces_direct_cowreath() {
        let w = cosegal_omega(3).unwrap();
        let gop = Arc::new(materialize(Site::Gamma, 2).opposite());
        let r = p_inverse(w.target.clone(), gop).unwrap().after(&w).unwrap();
        let a = Arc::new(materialize(Site::Delta, 1));
        let direct = cowreath(&w, a.clone()).unwrap();
        let general = generalized_wreath(Transformer::MOp, &r, &a).unwrap();
        assert_eq!(*direct.category, general);
    }

    #[test]
    fn identity_leg_gives_t_of_x() {
        let gamma = Arc::new(materialize(Site::Gamma, 2));
        let x = materialize(Site::Delta, 1);
        let id = Functor::identity(gamma);
        let general = generalized_wreath(Transformer::M, &id, &x).unwrap();
        let m = m_of(Arc::new(x), 2).unwrap();
        assert_eq!(*m.category, general);
    }

    #[test]
    fn rejects_unknown_transformer() {
        assert!("T".parse::<Transformer>().is_err());
        let star = Arc::new(terminal());
        let id = Functor::identity(star.clone());
        assert!(generalized_wreath(Transformer::M, &id, &star).is_err());
    }
}

//! The isomorphism `(X_γ ≀ A)^op ≅ X^op_{Pγ^op} ⊗^{M^op} A^op`.
//!
//! Both sides have the same objects `(x, a)`. A morphism of the left side is
//! a wreath morphism read backwards, so its component `f_{ji} : a(i) → b(j)`
//! becomes a component from slot `j` to slot `i`; the functor only swaps
//! component keys.

use std::sync::Arc;

use super::{cowreath, labeled_functor, m_of, p_functor, wreath, LabeledCategory};
use crate::error::{invalid, Result};
use crate::fincat::{FiniteCategory, Functor};
use crate::obj::Obj;
use crate::payload::{Component, Payload};
use crate::sites::{materialize, Site};

#[derive(Clone, Debug)]
pub struct DualityIso {
    pub wreath: LabeledCategory,
    /// `(X ≀ A)^op`.
    pub source: Arc<FiniteCategory>,
    /// `X^op ⊗^{M^op} A^op`.
    pub target: LabeledCategory,
    pub functor: Functor,
    /// `γ : X → Γ≤k`.
    pub gamma: Functor,
}

pub(crate) fn swap_components(p: &Payload) -> Result<Payload> {
    match p {
        Payload::Labeled { base, components } => Ok(Payload::labeled(
            (**base).clone(),
            components
                .iter()
                .map(|c| Component {
                    target: c.source,
                    source: c.target,
                    mor: c.mor.clone(),
                })
                .collect(),
        )),
        _ => Err(invalid(format!("labeled payload expected, found {p}"))),
    }
}

/// Build `X ≀ A`, its opposite, the cowreath over `Pγ^op` and the
/// comparison functor.
pub fn duality_iso(gamma: &Functor, labels: Arc<FiniteCategory>) -> Result<DualityIso> {
    let w = wreath(gamma, labels.clone())?;
    let source = Arc::new(w.category.opposite());
    let xop = Arc::new(gamma.source.opposite());
    let gop_t = Arc::new(gamma.target.opposite());
    let gop = gamma.opposite(xop, gop_t.clone());
    let k = gamma.target.num_objects() - 1;
    let pointed = Arc::new(materialize(Site::Pointed, k));
    let omega = p_functor(gop_t, pointed)?.after(&gop)?;
    let target = cowreath(&omega, Arc::new(labels.opposite()))?;
    let src = source.clone();
    let functor = Functor::from_labels(
        "τ",
        source.clone(),
        target.category.clone(),
        |o| Ok(o.clone()),
        |f| swap_components(src.payload(f)),
    )?;
    Ok(DualityIso {
        wreath: w,
        source,
        target,
        functor,
        gamma: gamma.clone(),
    })
}

impl DualityIso {
    /// Bijective on objects and morphisms, and functorial.
    pub fn is_isomorphism(&self) -> bool {
        self.functor.check_isomorphism()
    }

    /// The projection to `X^op` commutes with the isomorphism.
    pub fn commutes_with_base(&self) -> Result<bool> {
        let lhs = self.target.project_base().after(&self.functor)?;
        let xop = self.target.base.clone();
        let rhs = self.wreath.project_base().opposite(self.source.clone(), xop);
        Ok(lhs.same_as(&rhs))
    }

    /// The projection to `M^op(A^op) = M(A)^op` commutes with the
    /// isomorphism.
    pub fn commutes_with_m(&self) -> Result<bool> {
        let k = self.gamma.target.num_objects() - 1;
        let m = m_of(self.wreath.labels.clone(), k)?;
        let to_m = labeled_functor(
            "π_M",
            &self.wreath,
            &m,
            &self.gamma,
            &Functor::identity(self.wreath.labels.clone()),
        )?;
        let mop = Arc::new(m.category.opposite());
        let rhs = to_m.opposite(self.source.clone(), mop.clone());
        let t = &self.target;
        let g = self
            .gamma
            .opposite(t.base.clone(), Arc::new(self.gamma.target.opposite()));
        let lhs_m = Functor::from_labels(
            "π_M^op",
            t.category.clone(),
            mop,
            |o| match o {
                Obj::Labeled { base, labels } => {
                    let x = t.base.find_object(base).expect("base object");
                    Ok(Obj::labeled(g.target.object(g.obj(x)).clone(), labels.clone()))
                }
                _ => Err(invalid("labeled object expected")),
            },
            |f| {
                let (f0, _) = &t.mor_data[f];
                let swapped = swap_components(t.category.payload(f))?;
                let Payload::Labeled { components, .. } = swapped else {
                    unreachable!()
                };
                Ok(Payload::labeled(
                    g.target.payload(g.mor(*f0)).clone(),
                    components,
                ))
            },
        )?;
        Ok(lhs_m.after(&self.functor)?.same_as(&rhs))
    }
}

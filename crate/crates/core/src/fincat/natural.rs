use serde::Serialize;

use super::functor::same_category;
use super::{Functor, MorId};
use crate::error::{Error, Result};

/// A natural transformation `η : F ⇒ G` between parallel functors.
#[derive(Clone, Debug)]
pub struct NaturalTransformation {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityViolation {
    pub mor: MorId,
    pub reason: &'static str,
}

impl NaturalTransformation {
    pub fn new(source: Functor, target: Functor, components: Vec<MorId>) -> Result<Self> {
        if !same_category(&source.source, &target.source)
            || !same_category(&source.target, &target.target)
        {
            return Err(Error::TargetMismatch);
        }
        if components.len() != source.source.num_objects() {
            return Err(Error::SizeMismatch {
                expected: source.source.num_objects(),
                found: components.len(),
            });
        }
        Ok(NaturalTransformation {
            source,
            target,
            components,
        })
    }

    /// Every naturality square `G(f) ∘ η_x = η_y ∘ F(f)`, plus component ends.
    pub fn check(&self) -> Vec<NaturalityViolation> {
        let c = &*self.source.source;
        let d = &*self.source.target;
        let mut v = Vec::new();
        for x in 0..c.num_objects() {
            let e = self.components[x];
            if d.dom(e) != self.source.obj(x) || d.cod(e) != self.target.obj(x) {
                v.push(NaturalityViolation {
                    mor: c.id(x),
                    reason: "component has wrong ends",
                });
            }
        }
        if !v.is_empty() {
            return v;
        }
        for f in 0..c.num_morphisms() {
            let (x, y) = (c.dom(f), c.cod(f));
            let lhs = d.compose(self.target.mor(f), self.components[x]);
            let rhs = d.compose(self.components[y], self.source.mor(f));
            if lhs.is_none() || lhs != rhs {
                v.push(NaturalityViolation {
                    mor: f,
                    reason: "square does not commute",
                });
            }
        }
        v
    }

    pub fn is_natural_iso(&self) -> bool {
        self.check().is_empty() && self.components.iter().all(|&e| self.source.target.is_iso(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete, terminal};
    use crate::obj::Obj;
    use std::sync::Arc;

    #[test]
    fn identity_transformation() {
        let t = Arc::new(terminal());
        let id = Functor::identity(t.clone());
        let eta = NaturalTransformation::new(id.clone(), id, vec![0]).unwrap();
        assert!(eta.is_natural_iso());
    }

    #[test]
    fn wrong_component_ends() {
        let d = Arc::new(discrete(vec![Obj::Set(0), Obj::Set(1)], "2").unwrap());
        let id = Functor::identity(d);
        let eta = NaturalTransformation::new(id.clone(), id, vec![1, 0]).unwrap();
        assert!(!eta.check().is_empty());
    }
}

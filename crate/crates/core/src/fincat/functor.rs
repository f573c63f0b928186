use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::obj::Obj;
use crate::payload::Payload;

/// A functor between materialized categories, given by its object and
/// morphism tables.
#[derive(Clone, Debug)]
pub struct Functor {
    pub name: String,
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum FunctorViolation {
    Ends { f: MorId },
    Identity { object: String },
    Composition { g: MorId, f: MorId },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Ends { f } => write!(out, "image of #{f} has wrong ends"),
            FunctorViolation::Identity { object } => {
                write!(out, "identity of {object} not preserved")
            }
            FunctorViolation::Composition { g, f } => {
                write!(out, "F(#{g} ∘ #{f}) ≠ F(#{g}) ∘ F(#{f})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullyFaithfulResult {
    pub ok: bool,
    /// First source pair whose hom-map is not a bijection.
    pub witness: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssSurjResult {
    pub ok: bool,
    pub checked: usize,
    pub unhit: Vec<String>,
}

pub(crate) fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Functor {
    pub fn new(
        name: impl Into<String>,
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Functor> {
        if obj_map.len() != source.num_objects() {
            return Err(Error::SizeMismatch {
                expected: source.num_objects(),
                found: obj_map.len(),
            });
        }
        if mor_map.len() != source.num_morphisms() {
            return Err(Error::SizeMismatch {
                expected: source.num_morphisms(),
                found: mor_map.len(),
            });
        }
        if obj_map.iter().any(|&y| y >= target.num_objects())
            || mor_map.iter().any(|&g| g >= target.num_morphisms())
        {
            return Err(Error::InvalidInput("functor table out of range".into()));
        }
        Ok(Functor {
            name: name.into(),
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    /// Build from label-level rules; every image is looked up in `target`.
    pub fn from_labels<O, M>(
        name: impl Into<String>,
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        on_obj: O,
        on_mor: M,
    ) -> Result<Functor>
    where
        O: Fn(&Obj) -> Result<Obj>,
        M: Fn(MorId) -> Result<Payload>,
    {
        let mut obj_map = Vec::with_capacity(source.num_objects());
        for o in source.objects() {
            let img = on_obj(o)?;
            obj_map.push(
                target
                    .find_object(&img)
                    .ok_or_else(|| Error::UnknownObject(img.to_string()))?,
            );
        }
        let mut mor_map = Vec::with_capacity(source.num_morphisms());
        for f in 0..source.num_morphisms() {
            let p = on_mor(f)?;
            let (d, c) = (obj_map[source.dom(f)], obj_map[source.cod(f)]);
            mor_map.push(
                target
                    .find_morphism(d, c, &p)
                    .ok_or_else(|| Error::MissingMorphism {
                        category: target.name().to_string(),
                        dom: target.object(d).to_string(),
                        cod: target.object(c).to_string(),
                        payload: p.to_string(),
                    })?,
            );
        }
        Functor::new(name, source, target, obj_map, mor_map)
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Functor {
        let obj_map = (0..c.num_objects()).collect();
        let mor_map = (0..c.num_morphisms()).collect();
        Functor {
            name: format!("id_{}", c.name()),
            source: c.clone(),
            target: c,
            obj_map,
            mor_map,
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if !same_category(&first.target, &self.source) {
            return Err(Error::TargetMismatch);
        }
        Ok(Functor {
            name: format!("{}∘{}", self.name, first.name),
            source: first.source.clone(),
            target: self.target.clone(),
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: first.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        })
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self, source_op: Arc<FiniteCategory>, target_op: Arc<FiniteCategory>) -> Functor {
        let mor_map = (0..source_op.num_morphisms())
            .map(|f| {
                let m = source_op.morphism(f);
                let orig = self
                    .source
                    .find_morphism(m.cod, m.dom, &m.payload)
                    .expect("opposite source matches");
                let img = self.target.morphism(self.mor_map[orig]);
                target_op
                    .find_morphism(img.cod, img.dom, &img.payload)
                    .expect("opposite target matches")
            })
            .collect();
        Functor {
            name: super::toggle_op(&self.name),
            source: source_op,
            target: target_op,
            obj_map: self.obj_map.clone(),
            mor_map,
        }
    }

    /// Tables agree; source and target are compared structurally.
    pub fn same_as(&self, other: &Functor) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f]
    }

    /// Exhaustive functoriality check.
    pub fn check(&self) -> Vec<FunctorViolation> {
        let (s, t) = (&*self.source, &*self.target);
        let mut v = Vec::new();
        for f in 0..s.num_morphisms() {
            let g = self.mor_map[f];
            if t.dom(g) != self.obj_map[s.dom(f)] || t.cod(g) != self.obj_map[s.cod(f)] {
                v.push(FunctorViolation::Ends { f });
            }
        }
        for x in 0..s.num_objects() {
            if let (Some(i), Some(j)) = (s.identity(x), t.identity(self.obj_map[x])) {
                if self.mor_map[i] != j {
                    v.push(FunctorViolation::Identity {
                        object: s.object(x).to_string(),
                    });
                }
            }
        }
        let n = s.num_objects();
        for x in 0..n {
            for y in 0..n {
                for f in s.hom(x, y) {
                    let ff = self.mor_map[f];
                    for z in 0..n {
                        for g in s.hom(y, z) {
                            let lhs = s.compose(g, f).map(|h| self.mor_map[h]);
                            let rhs = t.compose(self.mor_map[g], ff);
                            if lhs.is_none() || lhs != rhs {
                                v.push(FunctorViolation::Composition { g, f });
                            }
                        }
                    }
                }
            }
        }
        v
    }

    pub fn is_functor(&self) -> bool {
        self.check().is_empty()
    }

    pub fn check_fully_faithful(&self) -> FullyFaithfulResult {
        let (s, t) = (&*self.source, &*self.target);
        let mut seen = vec![usize::MAX; t.num_morphisms()];
        for x in 0..s.num_objects() {
            for y in 0..s.num_objects() {
                let hs = s.hom(x, y);
                let ht = t.hom(self.obj_map[x], self.obj_map[y]);
                let mut bij = hs.len() == ht.len();
                if bij {
                    let stamp = x * s.num_objects() + y;
                    for f in hs {
                        let g = self.mor_map[f];
                        if seen[g] == stamp {
                            bij = false;
                            break;
                        }
                        seen[g] = stamp;
                    }
                }
                if !bij {
                    return FullyFaithfulResult {
                        ok: false,
                        witness: Some((s.object(x).to_string(), s.object(y).to_string())),
                    };
                }
            }
        }
        FullyFaithfulResult {
            ok: true,
            witness: None,
        }
    }

    /// Each listed target object must be isomorphic to some image object.
    pub fn check_essentially_surjective(&self, targets: &[ObjId]) -> EssSurjResult {
        let t = &*self.target;
        let mut images = self.obj_map.clone();
        images.sort_unstable();
        images.dedup();
        let unhit: Vec<String> = targets
            .iter()
            .filter(|&&y| {
                images.binary_search(&y).is_err()
                    && !images.iter().any(|&x| t.find_iso(x, y).is_some())
            })
            .map(|&y| t.object(y).to_string())
            .collect();
        EssSurjResult {
            ok: unhit.is_empty(),
            checked: targets.len(),
            unhit,
        }
    }

    /// Bijective on objects and on morphisms.
    pub fn check_isomorphism(&self) -> bool {
        fn bijective(map: &[usize], n: usize) -> bool {
            if map.len() != n {
                return false;
            }
            let mut hit = vec![false; n];
            for &y in map {
                if hit[y] {
                    return false;
                }
                hit[y] = true;
            }
            true
        }
        bijective(&self.obj_map, self.target.num_objects())
            && bijective(&self.mor_map, self.target.num_morphisms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete, terminal};

    #[test]
    fn identity_checks() {
        let t = Arc::new(discrete(vec![Obj::Set(0), Obj::Set(1)], "2").unwrap());
        let id = Functor::identity(t.clone());
        assert!(id.is_functor());
        assert!(id.check_fully_faithful().ok);
        assert!(id.check_isomorphism());
        assert!(id.check_essentially_surjective(&[0, 1]).ok);
    }

    #[test]
    fn collapse_to_terminal() {
        let d = Arc::new(discrete(vec![Obj::Set(0), Obj::Set(1)], "2").unwrap());
        let star = Arc::new(terminal());
        let f = Functor::new("!", d, star, vec![0, 0], vec![0, 0]).unwrap();
        assert!(f.is_functor());
        let ff = f.check_fully_faithful();
        assert!(!ff.ok);
        assert_eq!(ff.witness, Some(("0".into(), "1".into())));
        assert!(!f.check_isomorphism());
        assert!(f.check_essentially_surjective(&[0]).ok);
    }

    #[test]
    fn table_sizes_checked() {
        let star = Arc::new(terminal());
        assert!(Functor::new("bad", star.clone(), star, vec![], vec![0]).is_err());
    }
}

//! Finite categories with eagerly materialized composition tables.

mod functor;
mod natural;
mod pullback;
mod validate;

pub use functor::{EssSurjResult, FullyFaithfulResult, Functor, FunctorViolation};
pub use natural::{NaturalTransformation, NaturalityViolation};
pub use pullback::{pullback, Pullback};
pub use validate::{validate_category, ValidationReport, Violation};

use std::collections::HashMap;
use std::ops::Range;

use crate::error::{invalid, Error, Result};
use crate::obj::Obj;
use crate::payload::Payload;

pub type ObjId = usize;
pub type MorId = usize;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub dom: ObjId,
    pub cod: ObjId,
    pub payload: Payload,
}

/// A finite category in canonical form.
///
/// Objects are sorted by label and morphisms by `(dom, cod, payload)`, so each
/// hom-set is a contiguous id range. Composition is a dense table over all
/// composable pairs. Laws are not enforced on construction; use
/// [`validate_category`].
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    name: String,
    bounds: Vec<usize>,
    objects: Vec<Obj>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<MorId>>,
    hom_start: Vec<usize>,
    comp_off: Vec<usize>,
    comp: Vec<u32>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.comp == other.comp
    }
}

impl Eq for FiniteCategory {}

impl FiniteCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_bounds(mut self, bounds: Vec<usize>) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[Obj] {
        &self.objects
    }

    pub fn object(&self, x: ObjId) -> &Obj {
        &self.objects[x]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f].cod
    }

    pub fn payload(&self, f: MorId) -> &Payload {
        &self.morphisms[f].payload
    }

    pub fn identity(&self, x: ObjId) -> Option<MorId> {
        self.identities[x]
    }

    /// Identity of `x`; panics on a category without one, which
    /// [`validate_category`] reports.
    pub fn id(&self, x: ObjId) -> MorId {
        self.identities[x].expect("object without identity")
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> Range<MorId> {
        let k = x * self.objects.len() + y;
        self.hom_start[k]..self.hom_start[k + 1]
    }

    pub fn hom_len(&self, x: ObjId, y: ObjId) -> usize {
        self.hom(x, y).len()
    }

    pub fn find_object(&self, obj: &Obj) -> Option<ObjId> {
        self.objects.binary_search(obj).ok()
    }

    pub fn find_morphism(&self, dom: ObjId, cod: ObjId, payload: &Payload) -> Option<MorId> {
        let r = self.hom(dom, cod);
        self.morphisms[r.clone()]
            .binary_search_by(|m| m.payload.cmp(payload))
            .ok()
            .map(|p| r.start + p)
    }

    /// Lookup by labels, reporting what is missing.
    pub fn lookup(&self, dom: &Obj, cod: &Obj, payload: &Payload) -> Result<MorId> {
        let d = self
            .find_object(dom)
            .ok_or_else(|| Error::UnknownObject(dom.to_string()))?;
        let c = self
            .find_object(cod)
            .ok_or_else(|| Error::UnknownObject(cod.to_string()))?;
        self.find_morphism(d, c, payload)
            .ok_or_else(|| Error::MissingMorphism {
                category: self.name.clone(),
                dom: dom.to_string(),
                cod: cod.to_string(),
                payload: payload.to_string(),
            })
    }

    /// `g ∘ f`, or `None` when not composable or undefined.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let (x, y) = (self.dom(f), self.cod(f));
        if self.dom(g) != y {
            return None;
        }
        let z = self.cod(g);
        let v = self.comp[self.comp_index(x, y, z, f, g)];
        (v != NONE).then_some(v as usize)
    }

    #[inline]
    fn comp_index(&self, x: ObjId, y: ObjId, z: ObjId, f: MorId, g: MorId) -> usize {
        let n = self.objects.len();
        let hf = self.hom(x, y).start;
        let hg = self.hom(y, z);
        self.comp_off[(x * n + y) * n + z] + (f - hf) * hg.len() + (g - hg.start)
    }

    /// Number of composable pairs, the size of the composition table.
    pub fn composable_pairs(&self) -> usize {
        self.comp.len()
    }

    /// Every composable pair `(g, f)` with its composite, in `(g, f)` order.
    pub fn composition_entries(&self) -> Vec<(MorId, MorId, Option<MorId>)> {
        let mut out = Vec::with_capacity(self.comp.len());
        for g in 0..self.morphisms.len() {
            let y = self.dom(g);
            for x in 0..self.objects.len() {
                for f in self.hom(x, y) {
                    out.push((g, f, self.compose(g, f)));
                }
            }
        }
        out
    }

    /// Opposite category: same labels and payloads, dom and cod swapped.
    pub fn opposite(&self) -> FiniteCategory {
        let mut b = CategoryBuilder::new(toggle_op(&self.name));
        for o in &self.objects {
            b.add_object(o.clone());
        }
        for m in &self.morphisms {
            b.add_morphism(m.cod, m.dom, m.payload.clone());
        }
        for (x, id) in self.identities.iter().enumerate() {
            if let Some(id) = id {
                b.set_identity(x, *id);
            }
        }
        b.build(|g, f| self.compose(f, g))
            .expect("opposite of a canonical category is canonical")
            .with_bounds(self.bounds.clone())
    }

    /// Full subcategory on the given objects.
    pub fn full_subcategory(&self, keep: &[ObjId], name: impl Into<String>) -> FiniteCategory {
        let mut b = CategoryBuilder::new(name);
        let mut new_obj = HashMap::new();
        for &x in keep {
            new_obj.insert(x, b.add_object(self.objects[x].clone()));
        }
        let mut old_ids = Vec::new();
        let mut new_mor = HashMap::new();
        for &x in keep {
            for &y in keep {
                for f in self.hom(x, y) {
                    let id = b.add_morphism(
                        new_obj[&x],
                        new_obj[&y],
                        self.morphisms[f].payload.clone(),
                    );
                    new_mor.insert(f, id);
                    old_ids.push(f);
                }
            }
            if let Some(id) = self.identities[x] {
                b.set_identity(new_obj[&x], new_mor[&id]);
            }
        }
        b.build(|g, f| {
            self.compose(old_ids[g], old_ids[f])
                .and_then(|h| new_mor.get(&h).copied())
        })
        .expect("full subcategory of a canonical category is canonical")
        .with_bounds(self.bounds.clone())
    }

    /// Whether the morphism is invertible.
    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (x, y) = (self.dom(f), self.cod(f));
        let (ix, iy) = (self.identity(x)?, self.identity(y)?);
        self.hom(y, x)
            .find(|&g| self.compose(g, f) == Some(ix) && self.compose(f, g) == Some(iy))
    }

    /// Some isomorphism `x → y`, if one exists.
    pub fn find_iso(&self, x: ObjId, y: ObjId) -> Option<MorId> {
        if x == y {
            return self.identity(x);
        }
        if self.hom_len(x, y) == 0 || self.hom_len(y, x) == 0 {
            return None;
        }
        self.hom(x, y).find(|&f| self.is_iso(f))
    }
}

pub(crate) fn toggle_op(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}

/// Collects objects and morphisms in any order and produces the canonical
/// [`FiniteCategory`].
#[derive(Debug, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<Obj>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<usize>>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_object(&mut self, obj: Obj) -> usize {
        self.objects.push(obj);
        self.identities.push(None);
        self.objects.len() - 1
    }

    pub fn add_morphism(&mut self, dom: usize, cod: usize, payload: Payload) -> usize {
        self.morphisms.push(Morphism { dom, cod, payload });
        self.morphisms.len() - 1
    }

    pub fn set_identity(&mut self, obj: usize, mor: usize) {
        self.identities[obj] = Some(mor);
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    /// Canonicalize. `compose(g, f)` receives insertion indices of a
    /// composable pair and returns the insertion index of `g ∘ f`.
    pub fn build<F>(self, compose: F) -> Result<FiniteCategory>
    where
        F: Fn(usize, usize) -> Option<usize>,
    {
        let n = self.objects.len();
        let mut obj_order: Vec<usize> = (0..n).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut obj_new = vec![0; n];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new;
        }
        for w in obj_order.windows(2) {
            if self.objects[w[0]] == self.objects[w[1]] {
                return Err(invalid(format!(
                    "duplicate object {}",
                    self.objects[w[0]]
                )));
            }
        }
        for m in &self.morphisms {
            if m.dom >= n || m.cod >= n {
                return Err(invalid("morphism endpoint out of range"));
            }
        }

        let m = self.morphisms.len();
        let mut mor_order: Vec<usize> = (0..m).collect();
        let key = |i: usize| (obj_new[self.morphisms[i].dom], obj_new[self.morphisms[i].cod]);
        mor_order.sort_by(|&a, &b| {
            key(a)
                .cmp(&key(b))
                .then_with(|| self.morphisms[a].payload.cmp(&self.morphisms[b].payload))
        });
        for w in mor_order.windows(2) {
            if key(w[0]) == key(w[1]) && self.morphisms[w[0]].payload == self.morphisms[w[1]].payload
            {
                return Err(invalid(format!(
                    "duplicate morphism {}",
                    self.morphisms[w[0]].payload
                )));
            }
        }
        let mut mor_new = vec![0; m];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new;
        }

        let objects: Vec<Obj> = obj_order.iter().map(|&o| self.objects[o].clone()).collect();
        let mut identities = vec![None; n];
        for (old, id) in self.identities.iter().enumerate() {
            identities[obj_new[old]] = id.map(|i| mor_new[i]);
        }
        let mut morphisms = Vec::with_capacity(m);
        let mut hom_start = vec![0; n * n + 1];
        for &old in &mor_order {
            let (d, c) = key(old);
            hom_start[d * n + c + 1] += 1;
            morphisms.push(Morphism {
                dom: d,
                cod: c,
                payload: self.morphisms[old].payload.clone(),
            });
        }
        for k in 0..n * n {
            hom_start[k + 1] += hom_start[k];
        }

        let len = |x: usize, y: usize| hom_start[x * n + y + 1] - hom_start[x * n + y];
        let mut comp_off = vec![0; n * n * n];
        let mut total = 0usize;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comp_off[(x * n + y) * n + z] = total;
                    total += len(x, y) * len(y, z);
                }
            }
        }
        if m >= NONE as usize {
            return Err(invalid("too many morphisms"));
        }
        let mut comp = vec![NONE; total];
        for x in 0..n {
            for y in 0..n {
                let hf = hom_start[x * n + y]..hom_start[x * n + y + 1];
                if hf.is_empty() {
                    continue;
                }
                for z in 0..n {
                    let hg = hom_start[y * n + z]..hom_start[y * n + z + 1];
                    let base = comp_off[(x * n + y) * n + z];
                    for (fi, f) in hf.clone().enumerate() {
                        for (gi, g) in hg.clone().enumerate() {
                            if let Some(h) = compose(mor_order[g], mor_order[f]) {
                                if h < m {
                                    comp[base + fi * hg.len() + gi] = mor_new[h] as u32;
                                }
                            }
                        }
                    }
                }
            }
        }

        Ok(FiniteCategory {
            name: self.name,
            bounds: Vec::new(),
            objects,
            morphisms,
            identities,
            hom_start,
            comp_off,
            comp,
        })
    }
}

/// Materialize a category from hom-set enumerators and a payload-level
/// composition rule. Objects are given in any order; `identity(i)` is the
/// identity payload on `objects[i]`.
pub fn from_hom_sets<H, C, I>(
    name: impl Into<String>,
    objects: Vec<Obj>,
    hom: H,
    compose: C,
    identity: I,
) -> Result<FiniteCategory>
where
    H: Fn(usize, usize) -> Vec<Payload>,
    C: Fn(&Payload, &Payload) -> Option<Payload>,
    I: Fn(usize) -> Payload,
{
    let n = objects.len();
    let mut b = CategoryBuilder::new(name);
    for o in objects {
        b.add_object(o);
    }
    let mut index: HashMap<(usize, usize, Payload), usize> = HashMap::new();
    let mut ends = Vec::new();
    let mut payloads = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for p in hom(x, y) {
                let id = b.add_morphism(x, y, p.clone());
                index.insert((x, y, p.clone()), id);
                ends.push((x, y));
                payloads.push(p);
            }
        }
    }
    for x in 0..n {
        let id = index
            .get(&(x, x, identity(x)))
            .copied()
            .ok_or_else(|| invalid("identity payload not in its hom-set"))?;
        b.set_identity(x, id);
    }
    b.build(|g, f| {
        let h = compose(&payloads[g], &payloads[f])?;
        index.get(&(ends[f].0, ends[g].1, h)).copied()
    })
}

/// The terminal category `*`.
pub fn terminal() -> FiniteCategory {
    let mut b = CategoryBuilder::new("*");
    let x = b.add_object(Obj::Star);
    let id = b.add_morphism(x, x, Payload::Unit);
    b.set_identity(x, id);
    b.build(|_, _| Some(id)).expect("terminal category")
}

/// Discrete category on the given labels.
pub fn discrete(objects: Vec<Obj>, name: impl Into<String>) -> Result<FiniteCategory> {
    let mut b = CategoryBuilder::new(name);
    for o in objects {
        let x = b.add_object(o);
        let id = b.add_morphism(x, x, Payload::Unit);
        b.set_identity(x, id);
    }
    b.build(|g, f| (g == f).then_some(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_arrows() -> FiniteCategory {
        // a --u--> b, with identities
        let mut b = CategoryBuilder::new("arrow");
        let y = b.add_object(Obj::Simplex(1));
        let x = b.add_object(Obj::Simplex(0));
        b.add_morphism(x, y, Payload::Seq(vec![1]));
        let iy = b.add_morphism(y, y, Payload::Unit);
        let ix = b.add_morphism(x, x, Payload::Unit);
        b.set_identity(x, ix);
        b.set_identity(y, iy);
        b.build(move |g, f| {
            if g == iy || g == ix {
                Some(f)
            } else if f == ix {
                Some(g)
            } else {
                None
            }
        })
        .unwrap()
    }

    #[test]
    fn canonical_order_and_lookup() {
        let c = two_arrows();
        assert_eq!(c.objects(), &[Obj::Simplex(0), Obj::Simplex(1)]);
        assert_eq!(c.hom_len(0, 1), 1);
        assert_eq!(c.hom_len(1, 0), 0);
        let u = c.find_morphism(0, 1, &Payload::Seq(vec![1])).unwrap();
        assert_eq!(c.compose(c.id(1), u), Some(u));
        assert_eq!(c.compose(u, c.id(0)), Some(u));
        assert_eq!(c.compose(u, u), None);
        assert!(validate_category(&c).is_empty());
    }

    #[test]
    fn opposite_is_involution() {
        let c = two_arrows();
        let op = c.opposite();
        assert_eq!(op.name(), "arrow^op");
        assert_eq!(op.hom_len(1, 0), 1);
        assert!(validate_category(&op).is_empty());
        let back = op.opposite();
        assert_eq!(back, c);
        assert_eq!(back.name(), "arrow");
    }

    #[test]
    fn duplicates_rejected() {
        let mut b = CategoryBuilder::new("dup");
        b.add_object(Obj::Star);
        b.add_object(Obj::Star);
        assert!(b.build(|_, _| None).is_err());
    }

    #[test]
    fn terminal_and_discrete() {
        let t = terminal();
        assert_eq!((t.num_objects(), t.num_morphisms()), (1, 1));
        assert!(validate_category(&t).is_empty());
        assert_eq!(t.opposite(), t);
        let d = discrete(vec![Obj::Set(0), Obj::Set(1)], "2").unwrap();
        assert!(validate_category(&d).is_empty());
        assert_eq!(d.find_iso(0, 1), None);
    }
}

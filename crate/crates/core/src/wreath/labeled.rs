//! The engine behind `M(C)`, `X ≀ A` and the cowreath `X ⊗^{M^op} A`.
//!
//! A labeled category over a base `X` is described by a [`LabelScheme`]: each
//! base object `x` has `slots[x]` label positions, and each base morphism
//! `f` relates source slots to target slots. An object is a base object with
//! a label in `A` on every slot; a morphism is a base morphism `f` with one
//! `A`-morphism `f_{ji} : a(i) → b(j)` for every related pair `(i, j)`.
//! Composition is `(gf)_{ki} = g_{kj} f_{ji}`, which is well defined when the
//! relations compose uniquely.

use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::fincat::{CategoryBuilder, FiniteCategory, Functor, MorId, ObjId};
use crate::obj::Obj;
use crate::payload::{Component, Payload};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelScheme {
    pub slots: Vec<usize>,
    /// Per base morphism, pairs `(source slot, target slot)` sorted by
    /// `(target, source)`. Slots are numbered from 1.
    pub relation: Vec<Vec<(usize, usize)>>,
}

impl LabelScheme {
    /// Scheme of a Segal map `γ : X → Γ`: `(i, j)` related iff `j ∈ γ(f)(i)`.
    pub fn from_segal(gamma: &Functor) -> Result<Self> {
        let t = &*gamma.target;
        let slots = gamma
            .obj_map
            .iter()
            .map(|&y| match t.object(y) {
                Obj::Set(n) => Ok(*n),
                o => Err(invalid(format!("Segal map must land in Γ, found object {o}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let relation = gamma
            .mor_map
            .iter()
            .map(|&g| match t.payload(g) {
                Payload::Blocks(blocks) => {
                    let mut r: Vec<(usize, usize)> = blocks
                        .iter()
                        .enumerate()
                        .flat_map(|(i, b)| b.iter().map(move |&j| (i + 1, j)))
                        .collect();
                    r.sort_by_key(|&(i, j)| (j, i));
                    Ok(r)
                }
                p => Err(invalid(format!("Segal map must land in Γ, found payload {p}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabelScheme { slots, relation })
    }

    /// Scheme of a coSegal map `ω : X → FinSet_*`: `(i, ω(f)(i))` related
    /// whenever `ω(f)(i)` is not the basepoint.
    pub fn from_cosegal(omega: &Functor) -> Result<Self> {
        let t = &*omega.target;
        let slots = omega
            .obj_map
            .iter()
            .map(|&y| match t.object(y) {
                Obj::Pointed(n) => Ok(*n),
                o => Err(invalid(format!(
                    "coSegal map must land in FinSet_*, found object {o}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let relation = omega
            .mor_map
            .iter()
            .map(|&g| match t.payload(g) {
                Payload::Pointed(v) => {
                    let mut r: Vec<(usize, usize)> = v
                        .iter()
                        .enumerate()
                        .filter(|(_, &j)| j != 0)
                        .map(|(i, &j)| (i + 1, j))
                        .collect();
                    r.sort_by_key(|&(i, j)| (j, i));
                    Ok(r)
                }
                p => Err(invalid(format!(
                    "coSegal map must land in FinSet_*, found payload {p}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabelScheme { slots, relation })
    }
}

/// A materialized labeled category together with the decoding of every
/// object and morphism.
#[derive(Clone, Debug)]
pub struct LabeledCategory {
    pub category: Arc<FiniteCategory>,
    pub base: Arc<FiniteCategory>,
    pub labels: Arc<FiniteCategory>,
    pub scheme: Arc<LabelScheme>,
    /// Base object and slot labels of each object.
    pub obj_data: Vec<(ObjId, Vec<ObjId>)>,
    /// Base morphism and components, in scheme relation order.
    pub mor_data: Vec<(MorId, Vec<MorId>)>,
}

struct Engine<'a> {
    base: &'a FiniteCategory,
    labels: &'a FiniteCategory,
    scheme: &'a LabelScheme,
    objs: Vec<(ObjId, Vec<ObjId>)>,
    /// `(src, tgt, f0, start)` with the components at
    /// `comps[start..start + relation[f0].len()]`.
    mors: Vec<(usize, usize, MorId, usize)>,
    comps: Vec<MorId>,
    /// Start of the block of `f0 : x → y` over `(src, tgt)`, at
    /// `pair_start[src * n + tgt] + (f0 − hom(x, y).start)`.
    pair_start: Vec<usize>,
    blocks: Vec<usize>,
    /// For composable `(g0, f0)`, at `plan_start[g0 * m + f0]`: for each
    /// relation of `g0 ∘ f0`, the pair `(p, q)` of relations of `f0` and `g0`
    /// whose components compose to it.
    plan_start: Vec<u32>,
    plans: Vec<(u8, u8)>,
}

const NO_PLAN: u32 = u32::MAX;

fn composition_plans(base: &FiniteCategory, scheme: &LabelScheme) -> Result<(Vec<u32>, Vec<(u8, u8)>)> {
    let m = base.num_morphisms();
    let mut start = vec![NO_PLAN; m * m];
    let mut plans = Vec::new();
    for (g0, f0, h0) in base.composition_entries() {
        let Some(h0) = h0 else { continue };
        let (rf, rg) = (&scheme.relation[f0], &scheme.relation[g0]);
        let mut plan = Vec::with_capacity(scheme.relation[h0].len());
        for &(i, k) in &scheme.relation[h0] {
            let mut found = None;
            let mut unique = true;
            for (p, &(i2, j)) in rf.iter().enumerate() {
                if i2 != i {
                    continue;
                }
                for (q, &(j2, k2)) in rg.iter().enumerate() {
                    if j2 == j && k2 == k {
                        unique &= found.is_none();
                        found = Some((p, q));
                    }
                }
            }
            match found {
                Some((p, q)) if unique => plan.push((p, q)),
                _ => {
                    plan.clear();
                    break;
                }
            }
        }
        if plan.len() == scheme.relation[h0].len() {
            let narrow = |v: usize| u8::try_from(v).map_err(|_| invalid("too many label slots"));
            start[g0 * m + f0] = u32::try_from(plans.len()).map_err(|_| invalid("too many composites"))?;
            for (p, q) in plan {
                plans.push((narrow(p)?, narrow(q)?));
            }
        }
    }
    Ok((start, plans))
}

impl Engine<'_> {
    fn radices(&self, src: usize, tgt: usize, f0: MorId) -> impl Iterator<Item = usize> + '_ {
        let (a, b) = (&self.objs[src].1, &self.objs[tgt].1);
        self.scheme.relation[f0]
            .iter()
            .map(move |&(i, j)| self.labels.hom_len(a[i - 1], b[j - 1]))
    }

    fn block(&self, src: usize, tgt: usize, f0: MorId) -> Option<usize> {
        let n = self.objs.len();
        let h = self.base.hom(self.objs[src].0, self.objs[tgt].0);
        let b = self.blocks[self.pair_start[src * n + tgt] + (f0 - h.start)];
        (b != usize::MAX).then_some(b)
    }

    /// Insertion index of the morphism with the given data.
    fn locate(&self, src: usize, tgt: usize, f0: MorId, comps: &[MorId]) -> Option<usize> {
        let start = self.block(src, tgt, f0)?;
        let (a, b) = (&self.objs[src].1, &self.objs[tgt].1);
        let mut idx = 0;
        for (&(i, j), &c) in self.scheme.relation[f0].iter().zip(comps) {
            let h = self.labels.hom(a[i - 1], b[j - 1]);
            if !h.contains(&c) {
                return None;
            }
            idx = idx * h.len() + (c - h.start);
        }
        Some(start + idx)
    }

    fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let (src, _, f0, fs) = self.mors[f];
        let (_, tgt, g0, gs) = self.mors[g];
        let (fc, gc) = (&self.comps[fs..], &self.comps[gs..]);
        let h0 = self.base.compose(g0, f0)?;
        let plan = self.plan_start[g0 * self.base.num_morphisms() + f0];
        if plan == NO_PLAN {
            return None;
        }
        let start = self.block(src, tgt, h0)?;
        let (a, c) = (&self.objs[src].1, &self.objs[tgt].1);
        let mut idx = 0;
        let rel = &self.scheme.relation[h0];
        for (&(i, k), &(p, q)) in rel.iter().zip(&self.plans[plan as usize..]) {
            let found = self.labels.compose(gc[q as usize], fc[p as usize])?;
            let h = self.labels.hom(a[i - 1], c[k - 1]);
            idx = idx * h.len() + (found - h.start);
        }
        Some(start + idx)
    }
}

/// Materialize the labeled category of `scheme` over `base` with labels in
/// `labels`.
pub fn build_labeled(
    name: impl Into<String>,
    base: Arc<FiniteCategory>,
    scheme: Arc<LabelScheme>,
    labels: Arc<FiniteCategory>,
) -> Result<LabeledCategory> {
    if scheme.slots.len() != base.num_objects() || scheme.relation.len() != base.num_morphisms() {
        return Err(invalid("label scheme does not match its base"));
    }
    let (plan_start, plans) = composition_plans(&base, &scheme)?;
    let mut eng = Engine {
        plan_start,
        plans,
        base: &base,
        labels: &labels,
        scheme: &scheme,
        objs: Vec::new(),
        mors: Vec::new(),
        comps: Vec::new(),
        pair_start: Vec::new(),
        blocks: Vec::new(),
    };
    let mut bld = CategoryBuilder::new(name);

    let nl = labels.num_objects();
    for x in 0..base.num_objects() {
        let k = scheme.slots[x];
        if nl == 0 && k > 0 {
            continue;
        }
        let mut digits = vec![0usize; k];
        loop {
            let obj = Obj::labeled(
                base.object(x).clone(),
                digits.iter().map(|&l| labels.object(l).clone()).collect(),
            );
            bld.add_object(obj);
            eng.objs.push((x, digits.clone()));
            if !increment(&mut digits, |_| nl) {
                break;
            }
        }
    }

    let no = eng.objs.len();
    for src in 0..no {
        for tgt in 0..no {
            let (x, y) = (eng.objs[src].0, eng.objs[tgt].0);
            eng.pair_start.push(eng.blocks.len());
            for f0 in base.hom(x, y) {
                let radices: Vec<usize> = eng.radices(src, tgt, f0).collect();
                if radices.iter().any(|&r| r == 0) {
                    eng.blocks.push(usize::MAX);
                    continue;
                }
                eng.blocks.push(eng.mors.len());
                let rel = &scheme.relation[f0];
                let (a, b) = (&eng.objs[src].1, &eng.objs[tgt].1);
                let starts: Vec<usize> = rel
                    .iter()
                    .map(|&(i, j)| labels.hom(a[i - 1], b[j - 1]).start)
                    .collect();
                let mut digits = vec![0usize; radices.len()];
                loop {
                    let comps: Vec<MorId> =
                        digits.iter().zip(&starts).map(|(d, s)| d + s).collect();
                    let payload = Payload::Labeled {
                        base: Box::new(base.payload(f0).clone()),
                        components: rel
                            .iter()
                            .zip(&comps)
                            .map(|(&(i, j), &c)| Component {
                                target: j,
                                source: i,
                                mor: labels.payload(c).clone(),
                            })
                            .collect(),
                    };
                    bld.add_morphism(src, tgt, payload);
                    eng.mors.push((src, tgt, f0, eng.comps.len()));
                    eng.comps.extend(comps);
                    if !increment(&mut digits, |p| radices[p]) {
                        break;
                    }
                }
            }
        }
    }

    for src in 0..no {
        let (x, ref a) = eng.objs[src];
        let id0 = base
            .identity(x)
            .ok_or_else(|| invalid("base object without identity"))?;
        let comps: Vec<MorId> = scheme.relation[id0]
            .iter()
            .map(|&(i, _)| labels.identity(a[i - 1]))
            .collect::<Option<_>>()
            .ok_or_else(|| invalid("label object without identity"))?;
        if let Some(id) = eng.locate(src, src, id0, &comps) {
            bld.set_identity(src, id);
        }
    }

    let cat = bld.build(|g, f| eng.compose(g, f))?;

    // the builder sorts; translate the decoding tables into final ids
    let mut obj_data = vec![(0, Vec::new()); no];
    let mut obj_new = vec![0; no];
    for (k, (x, a)) in eng.objs.iter().enumerate() {
        let label = Obj::labeled(
            base.object(*x).clone(),
            a.iter().map(|&l| labels.object(l).clone()).collect(),
        );
        let id = cat.find_object(&label).expect("object survives canonicalization");
        obj_new[k] = id;
        obj_data[id] = (*x, a.clone());
    }
    let mut mor_data = vec![(0, Vec::new()); eng.mors.len()];
    for (k, &(src, tgt, f0, start)) in eng.mors.iter().enumerate() {
        let comps = &eng.comps[start..start + scheme.relation[f0].len()];
        let p = labeled_payload(&base, &labels, &scheme, f0, comps);
        let id = cat
            .find_morphism(obj_new[src], obj_new[tgt], &p)
            .expect("morphism survives canonicalization");
        debug_assert_eq!(id, k);
        mor_data[id] = (f0, comps.to_vec());
    }

    drop(eng);
    Ok(LabeledCategory {
        category: Arc::new(cat),
        base,
        labels,
        scheme,
        obj_data,
        mor_data,
    })
}

fn labeled_payload(
    base: &FiniteCategory,
    labels: &FiniteCategory,
    scheme: &LabelScheme,
    f0: MorId,
    comps: &[MorId],
) -> Payload {
    Payload::Labeled {
        base: Box::new(base.payload(f0).clone()),
        components: scheme.relation[f0]
            .iter()
            .zip(comps)
            .map(|(&(i, j), &c)| Component {
                target: j,
                source: i,
                mor: labels.payload(c).clone(),
            })
            .collect(),
    }
}

/// Mixed-radix increment, last digit fastest. Returns false on wrap-around.
fn increment(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for p in (0..digits.len()).rev() {
        digits[p] += 1;
        if digits[p] < radix(p) {
            return true;
        }
        digits[p] = 0;
    }
    false
}

impl LabeledCategory {
    /// The forgetful functor to the base, `(x, a) ↦ x`.
    pub fn project_base(&self) -> Functor {
        Functor::new(
            format!("π_{}", self.base.name()),
            self.category.clone(),
            self.base.clone(),
            self.obj_data.iter().map(|(x, _)| *x).collect(),
            self.mor_data.iter().map(|(f, _)| *f).collect(),
        )
        .expect("projection tables have the right size")
    }

    /// Object label of base object `x` with slot labels `a`.
    pub fn object_label(&self, x: ObjId, a: &[ObjId]) -> Obj {
        Obj::labeled(
            self.base.object(x).clone(),
            a.iter().map(|&l| self.labels.object(l).clone()).collect(),
        )
    }
}

/// The functor `(x, a) ↦ (H x, L ∘ a)`, `(f, {f_{ji}}) ↦ (H f, {L f_{ji}})`
/// between labeled categories whose schemes agree along `H`.
pub fn labeled_functor(
    name: impl Into<String>,
    src: &LabeledCategory,
    tgt: &LabeledCategory,
    base_map: &Functor,
    label_map: &Functor,
) -> Result<Functor> {
    Functor::from_labels(
        name,
        src.category.clone(),
        tgt.category.clone(),
        |o| {
            let x = src.category.find_object(o).expect("source object");
            let (b, a) = &src.obj_data[x];
            Ok(Obj::labeled(
                tgt.base.object(base_map.obj(*b)).clone(),
                a.iter()
                    .map(|&l| tgt.labels.object(label_map.obj(l)).clone())
                    .collect(),
            ))
        },
        |f| {
            let (f0, comps) = &src.mor_data[f];
            let rel = &src.scheme.relation[*f0];
            Ok(Payload::labeled(
                tgt.base.payload(base_map.mor(*f0)).clone(),
                rel.iter()
                    .zip(comps)
                    .map(|(&(i, j), &c)| Component {
                        target: j,
                        source: i,
                        mor: tgt.labels.payload(label_map.mor(c)).clone(),
                    })
                    .collect(),
            ))
        },
    )
}

/// `(x, a) ↦ (x, L ∘ a)` over a common base.
pub fn map_labels(
    name: impl Into<String>,
    src: &LabeledCategory,
    tgt: &LabeledCategory,
    label_map: &Functor,
) -> Result<Functor> {
    let id = Functor::identity(src.base.clone());
    labeled_functor(name, src, tgt, &id, label_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{terminal, validate_category};
    use crate::sites::{materialize, Site};

    #[test]
    fn increment_counts() {
        let mut d = vec![0, 0];
        let mut n = 1;
        while increment(&mut d, |p| [2, 3][p]) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert!(!increment(&mut [], |_| 1));
    }

    #[test]
    fn identity_scheme_over_gamma_with_terminal_labels() {
        let gamma = Arc::new(materialize(Site::Gamma, 2));
        let id = Functor::identity(gamma.clone());
        let scheme = Arc::new(LabelScheme::from_segal(&id).unwrap());
        let l = build_labeled("M(*)", gamma.clone(), scheme, Arc::new(terminal())).unwrap();
        assert_eq!(l.category.num_objects(), 3);
        assert_eq!(l.category.num_morphisms(), gamma.num_morphisms());
        assert!(validate_category(&l.category).is_empty());
        assert!(l.project_base().check_isomorphism());
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use super::functor::same_category;
use super::{CategoryBuilder, FiniteCategory, Functor};
use crate::error::{Error, Result};
use crate::obj::Obj;
use crate::payload::Payload;

/// `A ×_X B` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub category: Arc<FiniteCategory>,
    pub left: Functor,
    pub right: Functor,
}

/// Strict pullback of `f : A → X` and `g : B → X`. Objects are labeled
/// `(a|b)` and morphisms carry pair payloads.
pub fn pullback(f: &Functor, g: &Functor) -> Result<Pullback> {
    if !same_category(&f.target, &g.target) {
        return Err(Error::TargetMismatch);
    }
    let (a, b) = (&*f.source, &*g.source);
    let name = format!("{}×{}", a.name(), b.name());
    let mut bld = CategoryBuilder::new(name);

    let mut b_over: HashMap<usize, Vec<usize>> = HashMap::new();
    for y in 0..b.num_objects() {
        b_over.entry(g.obj(y)).or_default().push(y);
    }
    let mut objs = Vec::new();
    let mut obj_index = HashMap::new();
    for x in 0..a.num_objects() {
        for &y in b_over.get(&f.obj(x)).map(Vec::as_slice).unwrap_or(&[]) {
            obj_index.insert((x, y), objs.len());
            objs.push((x, y));
            bld.add_object(Obj::pair(a.object(x).clone(), b.object(y).clone()));
        }
    }

    let mut mors: Vec<(usize, usize)> = Vec::new();
    let mut mor_index: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, &(x, y)) in objs.iter().enumerate() {
        for (j, &(x2, y2)) in objs.iter().enumerate() {
            let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
            for v in b.hom(y, y2) {
                by_image.entry(g.mor(v)).or_default().push(v);
            }
            for u in a.hom(x, x2) {
                if let Some(vs) = by_image.get(&f.mor(u)) {
                    for &v in vs {
                        let id = bld.add_morphism(
                            i,
                            j,
                            Payload::pair(a.payload(u).clone(), b.payload(v).clone()),
                        );
                        mor_index.insert((u, v), id);
                        mors.push((u, v));
                    }
                }
            }
        }
    }
    for (i, &(x, y)) in objs.iter().enumerate() {
        if let (Some(ix), Some(iy)) = (a.identity(x), b.identity(y)) {
            if let Some(&id) = mor_index.get(&(ix, iy)) {
                bld.set_identity(i, id);
            }
        }
    }
    let cat = Arc::new(bld.build(|p, q| {
        let (u2, v2) = mors[p];
        let (u1, v1) = mors[q];
        let u = a.compose(u2, u1)?;
        let v = b.compose(v2, v1)?;
        mor_index.get(&(u, v)).copied()
    })?);

    let mut lo = Vec::new();
    let mut ro = Vec::new();
    for k in 0..cat.num_objects() {
        let Obj::Pair(p, q) = cat.object(k) else {
            unreachable!()
        };
        lo.push(a.find_object(p).expect("left object"));
        ro.push(b.find_object(q).expect("right object"));
    }
    let mut lm = Vec::new();
    let mut rm = Vec::new();
    for k in 0..cat.num_morphisms() {
        let Payload::Pair(p, q) = cat.payload(k) else {
            unreachable!()
        };
        let (d, c) = (cat.dom(k), cat.cod(k));
        lm.push(a.find_morphism(lo[d], lo[c], p).expect("left morphism"));
        rm.push(b.find_morphism(ro[d], ro[c], q).expect("right morphism"));
    }
    let left = Functor::new("π_1", cat.clone(), f.source.clone(), lo, lm)?;
    let right = Functor::new("π_2", cat.clone(), g.source.clone(), ro, rm)?;
    Ok(Pullback {
        category: cat,
        left,
        right,
    })
}

impl Pullback {
    /// The mediating functor for a cone `(p : C → A, q : C → B)` over the
    /// cospan. Fails if the cone does not commute. The result is unique
    /// because pullback cells are determined by their two projections.
    pub fn mediate(&self, over_a: &Functor, over_b: &Functor, f: &Functor, g: &Functor) -> Result<Functor> {
        if !same_category(&over_a.source, &over_b.source) {
            return Err(Error::TargetMismatch);
        }
        let fa = f.after(over_a)?;
        let gb = g.after(over_b)?;
        if fa.obj_map != gb.obj_map || fa.mor_map != gb.mor_map {
            return Err(Error::InvalidInput("cone does not commute".into()));
        }
        let a = &*self.left.target;
        let b = &*self.right.target;
        let cat = &self.category;
        Functor::from_labels(
            "⟨p,q⟩",
            over_a.source.clone(),
            cat.clone(),
            |o| {
                let x = over_a.source.find_object(o).unwrap();
                Ok(Obj::pair(
                    a.object(over_a.obj(x)).clone(),
                    b.object(over_b.obj(x)).clone(),
                ))
            },
            |m| {
                Ok(Payload::pair(
                    a.payload(over_a.mor(m)).clone(),
                    b.payload(over_b.mor(m)).clone(),
                ))
            },
        )
    }

    /// Check the universal property against a cone: the mediator exists,
    /// is a functor, and recovers both legs.
    pub fn check_cone(&self, over_a: &Functor, over_b: &Functor, f: &Functor, g: &Functor) -> bool {
        let Ok(u) = self.mediate(over_a, over_b, f, g) else {
            return false;
        };
        let (Ok(l), Ok(r)) = (self.left.after(&u), self.right.after(&u)) else {
            return false;
        };
        u.is_functor()
            && l.obj_map == over_a.obj_map
            && l.mor_map == over_a.mor_map
            && r.obj_map == over_b.obj_map
            && r.mor_map == over_b.mor_map
    }

    /// The swap functor `A ×_X B → B ×_X A` into another pullback.
    pub fn swap_into(&self, other: &Pullback) -> Result<Functor> {
        Functor::from_labels(
            "swap",
            self.category.clone(),
            other.category.clone(),
            |o| match o {
                Obj::Pair(p, q) => Ok(Obj::pair((**q).clone(), (**p).clone())),
                _ => Err(Error::InvalidInput("pullback object expected".into())),
            },
            |m| match self.category.payload(m) {
                Payload::Pair(p, q) => Ok(Payload::pair((**q).clone(), (**p).clone())),
                _ => Err(Error::InvalidInput("pullback morphism expected".into())),
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete, terminal, validate_category};

    fn to_star(c: Arc<FiniteCategory>, star: Arc<FiniteCategory>) -> Functor {
        let n = c.num_objects();
        let m = c.num_morphisms();
        Functor::new("!", c, star, vec![0; n], vec![0; m]).unwrap()
    }

    #[test]
    fn terminal_pullback() {
        let star = Arc::new(terminal());
        let id = Functor::identity(star.clone());
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.category.num_objects(), 1);
        assert_eq!(pb.category.num_morphisms(), 1);
        assert!(validate_category(&pb.category).is_empty());
    }

    #[test]
    fn product_over_terminal() {
        let star = Arc::new(terminal());
        let a = Arc::new(discrete(vec![Obj::Set(0), Obj::Set(1)], "A").unwrap());
        let b = Arc::new(discrete(vec![Obj::Set(0), Obj::Set(1), Obj::Set(2)], "B").unwrap());
        let fa = to_star(a.clone(), star.clone());
        let gb = to_star(b.clone(), star);
        let pb = pullback(&fa, &gb).unwrap();
        assert_eq!(pb.category.num_morphisms(), a.num_morphisms() * b.num_morphisms());
        assert!(pb.left.is_functor() && pb.right.is_functor());
        let back = pullback(&gb, &fa).unwrap();
        let swap = pb.swap_into(&back).unwrap();
        assert!(swap.is_functor() && swap.check_isomorphism());
    }

    #[test]
    fn mismatched_targets_rejected() {
        let star = Arc::new(terminal());
        let d = Arc::new(discrete(vec![Obj::Set(0), Obj::Set(1)], "2").unwrap());
        let f = Functor::identity(star);
        let g = Functor::identity(d);
        assert!(matches!(pullback(&f, &g), Err(Error::TargetMismatch)));
    }

    #[test]
    fn universal_property_on_diagonal_cone() {
        let star = Arc::new(terminal());
        let a = Arc::new(discrete(vec![Obj::Set(0), Obj::Set(1)], "A").unwrap());
        let fa = to_star(a.clone(), star);
        let pb = pullback(&fa, &fa).unwrap();
        let id = Functor::identity(a);
        assert!(pb.check_cone(&id, &id, &fa, &fa));
    }
}

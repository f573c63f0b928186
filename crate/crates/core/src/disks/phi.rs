//! `Φ : D_{n+1} → ∇_ω ⊗^{M^op} D_n`, the hom bijections `α`, `β`, and the
//! inverse functor given by gluing.

use std::sync::Arc;

use super::{glue_disk_dim, Disk, DiskCategory, Levels};
use crate::error::{invalid, Result};
use crate::fincat::{FiniteCategory, Functor};
use crate::obj::{DiskShape, Obj};
use crate::payload::{Component, Payload};
use crate::wreath::LabeledCategory;

/// A cowreath morphism over `∇`: the interval map on positions and the
/// components `(j, i, g_{ji})` for interior `i` with interior image `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CowreathMorphism {
    pub base: Vec<usize>,
    pub components: Vec<(usize, usize, Levels)>,
}

impl CowreathMorphism {
    pub fn payload(&self) -> Payload {
        Payload::labeled(
            Payload::Seq(self.base.clone()),
            self.components
                .iter()
                .map(|(j, i, l)| Component {
                    target: *j,
                    source: *i,
                    mor: Payload::Levels(l.clone()),
                })
                .collect(),
        )
    }

    pub fn from_payload(p: &Payload) -> Result<Self> {
        let Payload::Labeled { base, components } = p else {
            return Err(invalid(format!("cowreath payload expected, found {p}")));
        };
        let Payload::Seq(base) = &**base else {
            return Err(invalid("cowreath base must be an interval map"));
        };
        let components = components
            .iter()
            .map(|c| match &c.mor {
                Payload::Levels(l) => Ok((c.target, c.source, l.clone())),
                q => Err(invalid(format!("disk morphism expected, found {q}"))),
            })
            .collect::<Result<_>>()?;
        Ok(CowreathMorphism {
            base: base.clone(),
            components,
        })
    }
}

/// Position of every element of `X_1` in the interval order.
fn interval_positions(x: &Disk) -> Vec<usize> {
    let mut pos = vec![0; x.sizes[1]];
    for (r, &e) in x.fiber_orders[0][0].iter().enumerate() {
        pos[e] = r;
    }
    pos
}

fn inverse_table(embed: &[usize], size: usize) -> Vec<usize> {
    let mut inv = vec![usize::MAX; size];
    for (a, &g) in embed.iter().enumerate() {
        inv[g] = a;
    }
    inv
}

/// `Φ(X) = (X_1, i ↦ τ^i X)`, as the width and the label shapes.
pub fn phi_object(x: &Disk) -> Result<(usize, Vec<DiskShape>)> {
    if x.dim < 2 {
        return Err(invalid("Φ is defined on disks of dimension at least 2"));
    }
    let children = x
        .interior()
        .iter()
        .map(|&i| x.tau(i)?.0.shape())
        .collect::<Result<_>>()?;
    Ok((x.width(), children))
}

/// `α(f) = (f_1, {τ^{ji} f})`.
pub fn alpha(x: &Disk, y: &Disk, f: &Levels) -> Result<CowreathMorphism> {
    if x.dim < 2 || y.dim != x.dim {
        return Err(invalid("α needs two disks of one dimension ≥ 2"));
    }
    let ypos = interval_positions(y);
    let xorder = &x.fiber_orders[0][0];
    let yorder = &y.fiber_orders[0][0];
    let base: Vec<usize> = xorder.iter().map(|&e| ypos[f[1][e]]).collect();
    let wy = y.width();
    let mut components = Vec::new();
    for i in 1..x.width() {
        let j = base[i];
        if j == 0 || j == wy {
            continue;
        }
        let (_, ex) = x.tau(xorder[i])?;
        let (_, ey) = y.tau(yorder[j])?;
        let comp: Levels = (0..ex.len())
            .map(|m| {
                let inv = inverse_table(&ey[m], y.sizes[m + 1]);
                ex[m].iter().map(|&g| inv[f[m + 1][g]]).collect()
            })
            .collect();
        if comp.iter().flatten().any(|&v| v == usize::MAX) {
            return Err(invalid("f does not carry τ^i X into τ^j Y"));
        }
        components.push((j, i, comp));
    }
    Ok(CowreathMorphism { base, components })
}

/// Level-1 ancestor of every element of every level `k ≥ 1`.
fn ancestors(x: &Disk) -> Vec<Vec<usize>> {
    let mut anc = vec![Vec::new(), (0..x.sizes[1]).collect::<Vec<_>>()];
    for k in 2..=x.dim {
        let prev = &anc[k - 1];
        anc.push(x.p[k].iter().map(|&q| prev[q]).collect());
    }
    anc
}

/// The element at level `k` over an endpoint `e ∈ X_1`, whose fibers are
/// singletons.
fn chain(y: &Disk, e: usize, k: usize) -> usize {
    (1..k).fold(e, |z, l| y.s[l][z])
}

/// `β(g)_1 = g_0`; on `τ^i X` it is `g_{ji}` when `g_0(i) = j` is interior,
/// and the chain over `g_0(i)` otherwise.
pub fn beta(x: &Disk, y: &Disk, g: &CowreathMorphism) -> Result<Levels> {
    if x.dim < 2 || y.dim != x.dim {
        return Err(invalid("β needs two disks of one dimension ≥ 2"));
    }
    if g.base.len() != x.sizes[1] || g.base.iter().any(|&v| v >= y.sizes[1]) {
        return Err(invalid("base map does not match the intervals"));
    }
    let xpos = interval_positions(x);
    let yorder = &y.fiber_orders[0][0];
    let img = |e: usize| yorder[g.base[xpos[e]]];
    let mut f: Levels = vec![vec![0], (0..x.sizes[1]).map(img).collect()];
    let anc = ancestors(x);
    for k in 2..=x.dim {
        f.push((0..x.sizes[k]).map(|z| chain(y, img(anc[k][z]), k)).collect());
    }
    for (j, i, comp) in &g.components {
        let xi = x.fiber_orders[0][0]
            .get(*i)
            .ok_or_else(|| invalid("component source out of range"))?;
        let yj = yorder.get(*j).ok_or_else(|| invalid("component target out of range"))?;
        let (_, ex) = x.tau(*xi)?;
        let (_, ey) = y.tau(*yj)?;
        if comp.len() != ex.len() {
            return Err(invalid("component has the wrong dimension"));
        }
        for m in 1..ex.len() {
            for (a, &gx) in ex[m].iter().enumerate() {
                let v = *comp[m]
                    .get(a)
                    .ok_or_else(|| invalid("component table too short"))?;
                f[m + 1][gx] = *ey[m].get(v).ok_or_else(|| invalid("component out of range"))?;
            }
        }
    }
    Ok(f)
}

/// `Φ` as a functor from canonical `(n+1)`-disks into the cowreath
/// `∇_ω ⊗^{M^op} D_n`.
pub fn phi_functor(disks: &DiskCategory, cowreath: &LabeledCategory) -> Result<Functor> {
    let dc = &disks.category;
    Functor::from_labels(
        "Φ",
        dc.clone(),
        cowreath.category.clone(),
        |o| {
            let x = dc.find_object(o).expect("source object");
            let (w, children) = phi_object(&disks.disks[x])?;
            Ok(Obj::labeled(
                Obj::Simplex(w),
                children.into_iter().map(Obj::Disk).collect(),
            ))
        },
        |f| {
            let Payload::Levels(l) = dc.payload(f) else {
                return Err(invalid("disk morphism expected"));
            };
            let (x, y) = (&disks.disks[dc.dom(f)], &disks.disks[dc.cod(f)]);
            Ok(alpha(x, y, l)?.payload())
        },
    )
}

/// The inverse of `Φ`: glue the labels over the interval and apply `β`.
pub fn glue_functor(cowreath: &LabeledCategory, disks: &DiskCategory) -> Result<Functor> {
    let (cc, dc) = (&cowreath.category, &disks.category);
    let n = cowreath
        .labels
        .objects()
        .iter()
        .find_map(|o| match o {
            Obj::Disk(s) => Some(s.dim),
            _ => None,
        })
        .ok_or_else(|| invalid("cowreath labels must be disks"))?;
    let shape_of = |o: &Obj| -> Result<DiskShape> {
        let Obj::Labeled { base, labels } = o else {
            return Err(invalid("labeled object expected"));
        };
        let width = base.rank().ok_or_else(|| invalid("interval expected"))?;
        let children = labels
            .iter()
            .map(|l| match l {
                Obj::Disk(s) => Ok(s.clone()),
                _ => Err(invalid("disk label expected")),
            })
            .collect::<Result<_>>()?;
        Ok(DiskShape {
            dim: n + 1,
            width,
            children,
        })
    };
    let disk_of = |o: &Obj| -> Result<&Disk> {
        let s = shape_of(o)?;
        let x = dc
            .find_object(&Obj::Disk(s.clone()))
            .ok_or_else(|| invalid(format!("{s} is not in {}", dc.name())))?;
        Ok(&disks.disks[x])
    };
    Functor::from_labels(
        "G",
        cc.clone(),
        dc.clone(),
        |o| Ok(Obj::Disk(shape_of(o)?)),
        |f| {
            let x = disk_of(cc.object(cc.dom(f)))?;
            let y = disk_of(cc.object(cc.cod(f)))?;
            let g = CowreathMorphism::from_payload(cc.payload(f))?;
            Ok(Payload::Levels(beta(x, y, &g)?))
        },
    )
}

/// `X ↦ [#X_1 − 1]`.
pub fn d1_to_nabla(x: &Disk) -> Result<Obj> {
    if x.dim != 1 {
        return Err(invalid(format!("expected a 1-disk, got dimension {}", x.dim)));
    }
    Ok(Obj::Simplex(x.width()))
}

/// `D_1 → ∇` on canonical 1-disks.
pub fn d1_functor(disks: &DiskCategory, nabla: Arc<FiniteCategory>) -> Result<Functor> {
    let dc = &disks.category;
    Functor::from_labels(
        "D_1→∇",
        dc.clone(),
        nabla,
        |o| {
            let x = dc.find_object(o).expect("source object");
            d1_to_nabla(&disks.disks[x])
        },
        |f| match dc.payload(f) {
            Payload::Levels(l) if l.len() == 2 => Ok(Payload::Seq(l[1].clone())),
            q => Err(invalid(format!("1-disk morphism expected, found {q}"))),
        },
    )
}

/// `∇ → D_1`, `[w] ↦` the interval of width `w`.
pub fn nabla_to_d1(nabla: Arc<FiniteCategory>, disks: &DiskCategory) -> Result<Functor> {
    let nc = nabla.clone();
    Functor::from_labels(
        "∇→D_1",
        nabla,
        disks.category.clone(),
        |o| {
            let w = o.rank().ok_or_else(|| invalid("interval expected"))?;
            Ok(Obj::Disk(DiskShape::interval(w)))
        },
        |f| match nc.payload(f) {
            Payload::Seq(v) => Ok(Payload::Levels(vec![vec![0], v.clone()])),
            q => Err(invalid(format!("interval map expected, found {q}"))),
        },
    )
}

/// Build the canonical `(n+1)`-disk of a cowreath object.
pub fn glue_object(n: usize, width: usize, labels: &[DiskShape]) -> Result<Disk> {
    let children: Vec<Disk> = labels.iter().map(Disk::from_shape).collect();
    glue_disk_dim(n, width, &children)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disks::{disk_category, disk_hom, enumerate_disks, glue_disk, validate_disk_morphism};
    use crate::sites::{materialize, Site};

    #[test]
    fn alpha_beta_round_trip() {
        for n in 2..=3 {
            let disks = enumerate_disks(n, 10);
            for x in &disks {
                for y in &disks {
                    for f in disk_hom(x, y) {
                        let g = alpha(x, y, &f).unwrap();
                        let back = beta(x, y, &g).unwrap();
                        assert_eq!(back, f);
                        assert!(validate_disk_morphism(x, y, &back).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn phi_of_small_disks() {
        let m = glue_disk(1, &[]).unwrap();
        assert_eq!(phi_object(&m).unwrap(), (1, vec![]));
        let d = glue_disk(2, &[Disk::interval(1)]).unwrap();
        assert_eq!(phi_object(&d).unwrap(), (2, vec![DiskShape::interval(1)]));
        assert!(phi_object(&Disk::interval(2)).is_err());
    }

    #[test]
    fn collapse_has_no_component() {
        let d = glue_disk(2, &[Disk::interval(1)]).unwrap();
        let m = glue_disk(1, &[]).unwrap();
        let homs = disk_hom(&d, &m);
        assert_eq!(homs.len(), 2);
        for f in homs {
            let g = alpha(&d, &m, &f).unwrap();
            assert!(g.components.is_empty());
            assert_eq!(beta(&d, &m, &g).unwrap(), f);
        }
    }

    #[test]
    fn d1_equivalence() {
        let shapes: Vec<_> = (1..=4).map(DiskShape::interval).collect();
        let d1 = disk_category(&shapes, "D_1").unwrap();
        let nabla = Arc::new(materialize(Site::Nabla, 4));
        let f = d1_functor(&d1, nabla.clone()).unwrap();
        assert!(f.check_isomorphism());
        let g = nabla_to_d1(nabla, &d1).unwrap();
        assert!(f.after(&g).unwrap().same_as(&Functor::identity(f.target.clone())));
        assert!(d1_to_nabla(&glue_disk(1, &[]).unwrap()).is_err());
    }

    #[test]
    fn phi_and_glue_are_inverse() {
        let d2 = disk_category(&crate::disks::shapes_in_bounds(&[2, 1]), "D_2").unwrap();
        let d1 = disk_category(&(1..=2).map(DiskShape::interval).collect::<Vec<_>>(), "D_1").unwrap();
        let nabla = Arc::new(materialize(Site::Nabla, 3));
        let pt = Arc::new(materialize(Site::Pointed, 2));
        let omega = crate::wreath::cosegal_omega_on(nabla, pt).unwrap();
        let cw = crate::wreath::cowreath(&omega, d1.category.clone()).unwrap();
        let phi = phi_functor(&d2, &cw).unwrap();
        let g = glue_functor(&cw, &d2).unwrap();
        assert!(phi.is_functor());
        assert!(phi.check_isomorphism());
        assert!(g.after(&phi).unwrap().same_as(&Functor::identity(d2.category.clone())));
        assert!(phi.after(&g).unwrap().same_as(&Functor::identity(cw.category.clone())));
    }
}

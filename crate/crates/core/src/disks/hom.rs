//! Disk morphisms, found level by level from the definition.

use std::sync::Arc;

use super::{Disk, Levels};
use crate::error::{invalid, Result};
use crate::fincat::{from_hom_sets, FiniteCategory};
use crate::obj::{DiskShape, Obj};
use crate::payload::Payload;
use crate::sites::delta::monotone_sequences;

/// Endpoint-preserving monotone maps from a chain of `a` points to a chain of
/// `b` points, as position lists.
fn chain_maps(a: usize, b: usize) -> Vec<Vec<usize>> {
    if a == 1 {
        return if b == 1 { vec![vec![0]] } else { Vec::new() };
    }
    monotone_sequences(a - 2, 0, b - 1)
        .into_iter()
        .map(|mid| {
            let mut v = Vec::with_capacity(a);
            v.push(0);
            v.extend(mid);
            v.push(b - 1);
            v
        })
        .collect()
}

/// Every morphism `X → Y`. Level `k + 1` is chosen fiber by fiber once
/// `f_k` is known: each fiber maps monotonically onto the fiber over the
/// image, preserving its minimum and maximum.
pub fn disk_hom(x: &Disk, y: &Disk) -> Vec<Levels> {
    assert_eq!(x.dim, y.dim, "disks of different dimension");
    let mut out = Vec::new();
    let mut f: Levels = vec![vec![0]];
    for k in 1..=x.dim {
        f.push(vec![usize::MAX; x.sizes[k]]);
    }
    fill(x, y, 0, 0, &mut f, &mut out);
    out
}

fn fill(x: &Disk, y: &Disk, k: usize, e: usize, f: &mut Levels, out: &mut Vec<Levels>) {
    if k == x.dim {
        out.push(f.clone());
        return;
    }
    if e == x.sizes[k] {
        fill(x, y, k + 1, 0, f, out);
        return;
    }
    let src = &x.fiber_orders[k][e];
    let tgt = &y.fiber_orders[k][f[k][e]];
    for pos in chain_maps(src.len(), tgt.len()) {
        for (r, &z) in src.iter().enumerate() {
            f[k + 1][z] = tgt[pos[r]];
        }
        fill(x, y, k, e + 1, f, out);
    }
}

pub fn identity_levels(x: &Disk) -> Levels {
    x.sizes.iter().map(|&n| (0..n).collect()).collect()
}

/// `g ∘ f`, level by level.
pub fn compose_levels(g: &Levels, f: &Levels) -> Levels {
    f.iter()
        .zip(g)
        .map(|(fk, gk)| fk.iter().map(|&v| gk[v]).collect())
        .collect()
}

/// A full subcategory of `D_n` on canonical disks.
#[derive(Clone, Debug)]
pub struct DiskCategory {
    pub category: Arc<FiniteCategory>,
    /// The canonical disk of each object, by object id.
    pub disks: Vec<Disk>,
}

impl DiskCategory {
    pub fn shape(&self, x: usize) -> &DiskShape {
        match self.category.object(x) {
            Obj::Disk(s) => s,
            _ => unreachable!("disk categories have disk objects"),
        }
    }

    pub fn dim(&self) -> usize {
        self.disks.first().map_or(0, |d| d.dim)
    }
}

/// The category on the canonical disks of `shapes`.
pub fn disk_category(shapes: &[DiskShape], name: impl Into<String>) -> Result<DiskCategory> {
    let mut shapes = shapes.to_vec();
    shapes.sort();
    shapes.dedup();
    if shapes.windows(2).any(|w| w[0].dim != w[1].dim) {
        return Err(invalid("disk category shapes must share one dimension"));
    }
    let disks: Vec<Disk> = shapes.iter().map(Disk::from_shape).collect();
    let cat = from_hom_sets(
        name,
        shapes.iter().cloned().map(Obj::Disk).collect(),
        |a, b| {
            disk_hom(&disks[a], &disks[b])
                .into_iter()
                .map(Payload::Levels)
                .collect()
        },
        |g, f| match (g, f) {
            (Payload::Levels(g), Payload::Levels(f)) => Some(Payload::Levels(compose_levels(g, f))),
            _ => None,
        },
        |a| Payload::Levels(identity_levels(&disks[a])),
    )?;
    Ok(DiskCategory {
        category: Arc::new(cat),
        disks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disks::{enumerate_disks, shapes_in_bounds, validate_disk_morphism};
    use crate::fincat::validate_category;
    use crate::sites::nabla_hom;

    #[test]
    fn minimal_hom_is_a_point() {
        let d = Disk::interval(1);
        assert_eq!(disk_hom(&d, &d).len(), 1);
    }

    #[test]
    fn one_disk_homs_match_nabla() {
        for a in 1..=4 {
            for b in 1..=4 {
                let h = disk_hom(&Disk::interval(a), &Disk::interval(b));
                assert_eq!(h.len(), nabla_hom(a, b).len());
            }
        }
    }

    #[test]
    fn enumerated_morphisms_are_valid_and_closed() {
        let disks = enumerate_disks(2, 9);
        for x in &disks {
            for y in &disks {
                for f in disk_hom(x, y) {
                    assert!(validate_disk_morphism(x, y, &f).is_empty());
                    for z in &disks {
                        for g in disk_hom(y, z) {
                            assert!(disk_hom(x, z).contains(&compose_levels(&g, &f)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn small_category_valid() {
        let c = disk_category(&shapes_in_bounds(&[1, 1]), "D_2").unwrap();
        assert!(validate_category(&c.category).is_empty());
        assert_eq!(c.category.num_objects(), 3);
    }
}

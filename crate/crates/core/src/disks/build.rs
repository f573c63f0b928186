//! Intervals, gluing, fiber extraction `τ^i` and enumeration by shape.

use super::Disk;
use crate::error::{invalid, Result};
use crate::obj::DiskShape;

impl Disk {
    /// The 1-disk whose interval has `width + 1` points.
    pub fn interval(width: usize) -> Disk {
        Disk {
            dim: 1,
            sizes: vec![1, width + 1],
            s: vec![vec![0]],
            t: vec![vec![width]],
            p: vec![Vec::new(), vec![0; width + 1]],
            fiber_orders: vec![vec![(0..=width).collect()]],
        }
    }

    /// The canonical disk of a shape.
    pub fn from_shape(shape: &DiskShape) -> Disk {
        if shape.dim == 1 {
            return Disk::interval(shape.width);
        }
        let children: Vec<Disk> = shape.children.iter().map(Disk::from_shape).collect();
        glue_disk_dim(shape.dim - 1, shape.width, &children).expect("shapes are well formed")
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Width `ℓ = #X_1 − 1` of the underlying interval.
    pub fn width(&self) -> usize {
        self.sizes[1] - 1
    }

    /// Interior points of `X_1`, in interval order.
    pub fn interior(&self) -> &[usize] {
        let order = &self.fiber_orders[0][0];
        &order[1..order.len() - 1]
    }

    /// `τ^i X`: the `n`-disk sitting over the interior point `i ∈ X_1`,
    /// together with the inclusion of its level `m` into `X_{m+1}`.
    pub fn tau(&self, i: usize) -> Result<(Disk, Vec<Vec<usize>>)> {
        if self.dim < 2 {
            return Err(invalid("τ needs a disk of dimension at least 2"));
        }
        if i >= self.sizes[1] || i == self.s[0][0] || i == self.t[0][0] {
            return Err(invalid(format!("{i} is not an interior point of X_1")));
        }
        let n = self.dim - 1;
        let mut embed: Vec<Vec<usize>> = vec![vec![i]];
        let mut local: Vec<Vec<Option<usize>>> = Vec::new();
        for m in 0..=n {
            let mut loc = vec![None; self.sizes[m + 1]];
            if m > 0 {
                let parents = &local[m - 1];
                let level: Vec<usize> = (0..self.sizes[m + 1])
                    .filter(|&y| parents[self.p[m + 1][y]].is_some())
                    .collect();
                embed.push(level);
            }
            for (j, &g) in embed[m].iter().enumerate() {
                loc[g] = Some(j);
            }
            local.push(loc);
        }
        let lookup = |m: usize, g: usize| local[m][g].ok_or_else(|| invalid("τ^i is not closed"));
        let mut s = Vec::with_capacity(n);
        let mut t = Vec::with_capacity(n);
        let mut fiber_orders = Vec::with_capacity(n);
        for m in 0..n {
            let map = |tab: &Vec<usize>| -> Result<Vec<usize>> {
                embed[m].iter().map(|&g| lookup(m + 1, tab[g])).collect()
            };
            s.push(map(&self.s[m + 1])?);
            t.push(map(&self.t[m + 1])?);
            fiber_orders.push(
                embed[m]
                    .iter()
                    .map(|&g| {
                        self.fiber_orders[m + 1][g]
                            .iter()
                            .map(|&y| lookup(m + 1, y))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut p = vec![Vec::new()];
        for m in 1..=n {
            p.push(
                embed[m]
                    .iter()
                    .map(|&g| lookup(m - 1, self.p[m + 1][g]))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let disk = Disk {
            dim: n,
            sizes: embed.iter().map(Vec::len).collect(),
            s,
            t,
            p,
            fiber_orders,
        };
        Ok((disk, embed))
    }

    /// Isomorphism class, computed recursively through `τ`.
    pub fn shape(&self) -> Result<DiskShape> {
        if self.dim == 1 {
            return Ok(DiskShape::interval(self.width()));
        }
        let children = self
            .interior()
            .iter()
            .map(|&i| self.tau(i)?.0.shape())
            .collect::<Result<Vec<_>>>()?;
        Ok(DiskShape {
            dim: self.dim,
            width: self.width(),
            children,
        })
    }

    pub fn canonical(&self) -> Result<Disk> {
        Ok(Disk::from_shape(&self.shape()?))
    }

    pub fn is_isomorphic(&self, other: &Disk) -> Result<bool> {
        Ok(self.shape()? == other.shape()?)
    }
}

/// The `(n+1)`-disk over the interval `[width]` with `labels[i−1]` over the
/// interior point `i` and a singleton chain over each endpoint. Without
/// labels the result is a 2-disk.
pub fn glue_disk(width: usize, labels: &[Disk]) -> Result<Disk> {
    if width == 0 || labels.len() != width - 1 {
        return Err(invalid(format!(
            "an interval of width {width} needs {} labels, got {}",
            width.saturating_sub(1),
            labels.len()
        )));
    }
    glue_disk_dim(labels.first().map_or(1, |d| d.dim), width, labels)
}

/// [`glue_disk`] with the label dimension given, so that `width = 1` works.
pub fn glue_disk_dim(n: usize, width: usize, labels: &[Disk]) -> Result<Disk> {
    if n == 0 || width == 0 || labels.len() != width - 1 {
        return Err(invalid("bad gluing data"));
    }
    if labels.iter().any(|d| d.dim != n) {
        return Err(invalid("labels must share one dimension"));
    }
    let top = n + 1;
    // off[k][i]: start of label i's level k−1 inside X_k, k ≥ 1
    let mut off = vec![Vec::new(); top + 1];
    let mut sizes = vec![1];
    for k in 1..=top {
        let mut o = 1;
        for d in labels {
            off[k].push(o);
            o += d.sizes[k - 1];
        }
        sizes.push(o + 1);
    }
    let last = |k: usize| sizes[k] - 1;

    let mut p = vec![Vec::new(), vec![0; sizes[1]]];
    for k in 2..=top {
        let mut pk = vec![0; sizes[k]];
        pk[last(k)] = last(k - 1);
        for (i, d) in labels.iter().enumerate() {
            for (y, &py) in d.p[k - 1].iter().enumerate() {
                pk[off[k][i] + y] = off[k - 1][i] + py;
            }
        }
        p.push(pk);
    }

    let mut s = vec![vec![0]];
    let mut t = vec![vec![width]];
    let mut fiber_orders = vec![vec![(0..=width).collect::<Vec<_>>()]];
    for k in 1..top {
        let mut sk = vec![0; sizes[k]];
        let mut tk = vec![0; sizes[k]];
        let mut fo = vec![vec![0]; sizes[k]];
        sk[last(k)] = last(k + 1);
        tk[last(k)] = last(k + 1);
        fo[last(k)] = vec![last(k + 1)];
        for (i, d) in labels.iter().enumerate() {
            let (a, b) = (off[k][i], off[k + 1][i]);
            for y in 0..d.sizes[k - 1] {
                sk[a + y] = b + d.s[k - 1][y];
                tk[a + y] = b + d.t[k - 1][y];
                fo[a + y] = d.fiber_orders[k - 1][y].iter().map(|&z| b + z).collect();
            }
        }
        s.push(sk);
        t.push(tk);
        fiber_orders.push(fo);
    }
    Ok(Disk {
        dim: top,
        sizes,
        s,
        t,
        p,
        fiber_orders,
    })
}

fn min_size(dim: usize) -> usize {
    DiskShape {
        dim,
        width: 1,
        children: Vec::new(),
    }
    .total_size()
}

/// All shapes of dimension `n` with total size at most `bound`, sorted.
pub fn shapes_up_to(n: usize, bound: usize) -> Vec<DiskShape> {
    assert!(n >= 1);
    let mut out = Vec::new();
    if n == 1 {
        out.extend((1..=bound.saturating_sub(2)).map(DiskShape::interval));
        return out;
    }
    for width in 1.. {
        let base = 1 + (width + 1) + 2 * (n - 1);
        if base > bound {
            break;
        }
        let budget = bound - base;
        if width > 1 && (width - 1) * (min_size(n - 1) - 1) > budget {
            break;
        }
        let pool = shapes_up_to(n - 1, budget + 1);
        let mut children = Vec::new();
        extend_children(&pool, width - 1, budget, &mut children, &mut |c| {
            out.push(DiskShape {
                dim: n,
                width,
                children: c.to_vec(),
            })
        });
    }
    out.sort();
    out
}

fn extend_children(
    pool: &[DiskShape],
    remaining: usize,
    budget: usize,
    acc: &mut Vec<DiskShape>,
    emit: &mut dyn FnMut(&[DiskShape]),
) {
    if remaining == 0 {
        emit(acc);
        return;
    }
    for c in pool {
        let cost = c.total_size() - 1;
        if cost <= budget {
            acc.push(c.clone());
            extend_children(pool, remaining - 1, budget - cost, acc, emit);
            acc.pop();
        }
    }
}

/// Canonical disks of dimension `n` and total size at most `bound`, one
/// per isomorphism class.
pub fn enumerate_disks(n: usize, bound: usize) -> Vec<Disk> {
    shapes_up_to(n, bound).iter().map(Disk::from_shape).collect()
}

/// Shapes in the image of the `Θ_n` truncation with rank bounds `bounds`:
/// width at most `b_1 + 1`, children in the image of the remaining bounds.
pub fn shapes_in_bounds(bounds: &[usize]) -> Vec<DiskShape> {
    let n = bounds.len();
    assert!(n >= 1);
    if n == 1 {
        return (1..=bounds[0] + 1).map(DiskShape::interval).collect();
    }
    let pool = shapes_in_bounds(&bounds[1..]);
    let mut out = Vec::new();
    for width in 1..=bounds[0] + 1 {
        let mut acc = Vec::new();
        extend_children(&pool, width - 1, usize::MAX, &mut acc, &mut |c| {
            out.push(DiskShape {
                dim: n,
                width,
                children: c.to_vec(),
            })
        });
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disks::validate_disk;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_disks(1, 8).len(), 6);
        assert_eq!(enumerate_disks(2, 8).len(), 2);
        assert_eq!(enumerate_disks(3, 8).len(), 1);
        assert!(enumerate_disks(1, 2).is_empty());
        for n in 1..=3 {
            for d in enumerate_disks(n, 12) {
                assert!(validate_disk(&d).is_empty());
                assert!(d.total_size() <= 12);
                assert_eq!(d.total_size(), d.shape().unwrap().total_size());
            }
        }
    }

    #[test]
    fn glue_small() {
        let d = glue_disk(1, &[]).unwrap();
        assert!(validate_disk(&d).is_empty());
        assert_eq!(d.sizes, vec![1, 2, 2]);
        let e = glue_disk(2, &[Disk::interval(1)]).unwrap();
        assert!(validate_disk(&e).is_empty());
        assert_eq!(e.total_size(), 8);
        assert!(glue_disk(3, &[Disk::interval(1)]).is_err());
    }

    #[test]
    fn tau_recovers_labels() {
        let labels = vec![Disk::interval(2), Disk::interval(1), Disk::interval(3)];
        let d = glue_disk(4, &labels).unwrap();
        assert!(validate_disk(&d).is_empty());
        for (k, &i) in d.interior().iter().enumerate() {
            let (t, _) = d.tau(i).unwrap();
            assert!(validate_disk(&t).is_empty());
            assert_eq!(t, labels[k]);
        }
        assert!(d.tau(0).is_err());
        assert!(d.tau(4).is_err());
    }

    #[test]
    fn level_partition_count() {
        let d = Disk::from_shape(&shapes_in_bounds(&[2, 2, 1]).pop().unwrap());
        for k in 1..d.dim {
            let inner: usize = d.interior().iter().map(|&i| d.tau(i).unwrap().0.sizes[k]).sum();
            assert_eq!(d.sizes[k + 1], inner + 2);
        }
    }

    #[test]
    fn bounds_image_size() {
        assert_eq!(shapes_in_bounds(&[2, 2]).len(), 13);
        assert_eq!(shapes_in_bounds(&[3]).len(), 4);
    }
}

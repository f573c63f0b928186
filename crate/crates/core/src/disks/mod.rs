//! Joyal's finite combinatorial `n`-disks.
//!
//! A [`Disk`] stores levels `X_0..X_n` as sizes, with elements of `X_k`
//! numbered `0..sizes[k]`. Canonical disks number every level so that the
//! fibers of `p` are contiguous, ordered by base point and then by the fiber
//! order.

mod build;
mod hom;
mod phi;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use build::{enumerate_disks, glue_disk, glue_disk_dim, shapes_in_bounds, shapes_up_to};
pub use hom::{compose_levels, disk_category, disk_hom, identity_levels, DiskCategory};
pub use phi::{
    alpha, beta, d1_functor, d1_to_nabla, glue_functor, glue_object, nabla_to_d1, phi_functor, phi_object,
    CowreathMorphism,
};

/// Level maps `f_0..f_n` of a disk morphism.
pub type Levels = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "DiskDoc", try_from = "DiskDoc")]
pub struct Disk {
    pub dim: usize,
    pub sizes: Vec<usize>,
    /// `s[k] : X_k → X_{k+1}` for `k < n`.
    pub s: Vec<Vec<usize>>,
    pub t: Vec<Vec<usize>>,
    /// `p[k] : X_k → X_{k−1}` for `k ≥ 1`; `p[0]` is empty.
    pub p: Vec<Vec<usize>>,
    /// `fiber_orders[k][x]` lists `p_{k+1}⁻¹(x)` in increasing order.
    pub fiber_orders: Vec<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct DiskDoc {
    dim: usize,
    levels: Vec<Vec<usize>>,
    s: Vec<Vec<usize>>,
    t: Vec<Vec<usize>>,
    p: Vec<Vec<usize>>,
    fiber_orders: Vec<Vec<Vec<usize>>>,
}

impl From<Disk> for DiskDoc {
    fn from(d: Disk) -> Self {
        DiskDoc {
            dim: d.dim,
            levels: d.sizes.iter().map(|&n| (0..n).collect()).collect(),
            s: d.s,
            t: d.t,
            p: d.p,
            fiber_orders: d.fiber_orders,
        }
    }
}

impl TryFrom<DiskDoc> for Disk {
    type Error = String;

    fn try_from(d: DiskDoc) -> Result<Self, String> {
        for (k, l) in d.levels.iter().enumerate() {
            if l.iter().copied().ne(0..l.len()) {
                return Err(format!("level {k} must list 0..{}", l.len()));
            }
        }
        Ok(Disk {
            dim: d.dim,
            sizes: d.levels.iter().map(Vec::len).collect(),
            s: d.s,
            t: d.t,
            p: d.p,
            fiber_orders: d.fiber_orders,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiskViolation {
    Malformed { detail: String },
    Globular { k: usize, law: String, x: usize },
    Condition1,
    Condition2 { k: usize, x: usize },
    Condition3 { k: usize, x: usize },
}

impl fmt::Display for DiskViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiskViolation::Malformed { detail } => write!(f, "malformed: {detail}"),
            DiskViolation::Globular { k, law, x } => write!(f, "{law} fails at level {k}, x = {x}"),
            DiskViolation::Condition1 => f.write_str("condition (1): X_0 = {*} and s_0(*) ≠ t_0(*)"),
            DiskViolation::Condition2 { k, x } => {
                write!(f, "condition (2) at level {k}: x = {x} breaks Eq(s_k, t_k) = im s ∪ im t")
            }
            DiskViolation::Condition3 { k, x } => {
                write!(f, "condition (3) at level {k}: fiber over x = {x} is not ordered from s_k(x) to t_k(x)")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiskReport {
    pub violations: Vec<DiskViolation>,
    /// Checks that are not part of the definition.
    pub notes: Vec<String>,
}

impl DiskReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

fn malformed(detail: impl Into<String>) -> DiskReport {
    DiskReport {
        violations: vec![DiskViolation::Malformed {
            detail: detail.into(),
        }],
        notes: Vec::new(),
    }
}

fn table_ok(t: &[usize], len: usize, range: usize) -> bool {
    t.len() == len && t.iter().all(|&v| v < range)
}

/// Check the globular relations and conditions (1) to (3).
pub fn validate_disk(x: &Disk) -> DiskReport {
    let n = x.dim;
    if n == 0 {
        return malformed("dimension must be at least 1");
    }
    if x.sizes.len() != n + 1 || x.s.len() != n || x.t.len() != n || x.p.len() != n + 1 || x.fiber_orders.len() != n {
        return malformed("table counts do not match the dimension");
    }
    for k in 0..n {
        if !table_ok(&x.s[k], x.sizes[k], x.sizes[k + 1]) || !table_ok(&x.t[k], x.sizes[k], x.sizes[k + 1]) {
            return malformed(format!("s_{k} or t_{k} out of range"));
        }
        if x.fiber_orders[k].len() != x.sizes[k] {
            return malformed(format!("fiber orders at level {k} have the wrong count"));
        }
    }
    for k in 1..=n {
        if !table_ok(&x.p[k], x.sizes[k], x.sizes[k - 1]) {
            return malformed(format!("p_{k} out of range"));
        }
    }

    let mut r = DiskReport::default();
    if x.sizes[0] != 1 || x.s[0][0] == x.t[0][0] {
        r.violations.push(DiskViolation::Condition1);
    }
    for k in 1..=n {
        for e in 0..x.sizes[k - 1] {
            if x.p[k][x.s[k - 1][e]] != e || x.p[k][x.t[k - 1][e]] != e {
                r.violations.push(DiskViolation::Globular {
                    k,
                    law: "p s = 1 = p t".into(),
                    x: e,
                });
            }
            if k < n {
                let (se, te) = (x.s[k - 1][e], x.t[k - 1][e]);
                if x.s[k][se] != x.t[k][se] || x.s[k][te] != x.t[k][te] {
                    r.violations.push(DiskViolation::Globular {
                        k,
                        law: "s s = t s, s t = t t".into(),
                        x: e,
                    });
                }
            }
        }
    }
    for k in 1..n {
        let mut extreme = vec![false; x.sizes[k]];
        for e in 0..x.sizes[k - 1] {
            extreme[x.s[k - 1][e]] = true;
            extreme[x.t[k - 1][e]] = true;
        }
        for e in 0..x.sizes[k] {
            if (x.s[k][e] == x.t[k][e]) != extreme[e] {
                r.violations.push(DiskViolation::Condition2 { k, x: e });
            }
        }
    }
    for k in 0..n {
        let mut fibers = vec![Vec::new(); x.sizes[k]];
        for y in 0..x.sizes[k + 1] {
            fibers[x.p[k + 1][y]].push(y);
        }
        for e in 0..x.sizes[k] {
            let order = &x.fiber_orders[k][e];
            let mut sorted = order.clone();
            sorted.sort_unstable();
            let ok = sorted == fibers[e]
                && order.first() == Some(&x.s[k][e])
                && order.last() == Some(&x.t[k][e]);
            if !ok {
                r.violations.push(DiskViolation::Condition3 { k, x: e });
            }
        }
    }
    r.notes.push(format!(
        "condition (2) imposed for 1 ≤ k < {n}; at k = {n} there are no s_{n}, t_{n}"
    ));
    r
}

/// Position of every element of `X_{k+1}` inside its fiber.
pub(crate) fn fiber_positions(x: &Disk, k: usize) -> Vec<usize> {
    let mut pos = vec![0; x.sizes[k + 1]];
    for order in &x.fiber_orders[k] {
        for (i, &y) in order.iter().enumerate() {
            pos[y] = i;
        }
    }
    pos
}

/// Check that `f` commutes with `s`, `t`, `p` and is monotone on fibers.
pub fn validate_disk_morphism(x: &Disk, y: &Disk, f: &Levels) -> Vec<String> {
    let n = x.dim;
    if y.dim != n || f.len() != n + 1 {
        return vec!["dimension mismatch".into()];
    }
    for k in 0..=n {
        if !table_ok(&f[k], x.sizes[k], y.sizes[k]) {
            return vec![format!("f_{k} out of range")];
        }
    }
    let mut out = Vec::new();
    for k in 0..n {
        let ypos = fiber_positions(y, k);
        for e in 0..x.sizes[k] {
            if f[k + 1][x.s[k][e]] != y.s[k][f[k][e]] || f[k + 1][x.t[k][e]] != y.t[k][f[k][e]] {
                out.push(format!("f does not commute with s_{k}/t_{k} at {e}"));
            }
            let pos: Vec<usize> = x.fiber_orders[k][e].iter().map(|&z| ypos[f[k + 1][z]]).collect();
            if pos.windows(2).any(|w| w[0] > w[1]) {
                out.push(format!("f_{} not monotone on the fiber over {e}", k + 1));
            }
        }
        for z in 0..x.sizes[k + 1] {
            if y.p[k + 1][f[k + 1][z]] != f[k][x.p[k + 1][z]] {
                out.push(format!("f does not commute with p_{} at {z}", k + 1));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obj::DiskShape;

    #[test]
    fn minimal_disk_is_valid() {
        let d = Disk::interval(1);
        assert!(validate_disk(&d).is_empty());
        assert_eq!(d.sizes, vec![1, 2]);
    }

    #[test]
    fn condition_one() {
        let mut d = Disk::interval(1);
        d.t[0][0] = d.s[0][0];
        let r = validate_disk(&d);
        assert!(r.violations.contains(&DiskViolation::Condition1));
    }

    #[test]
    fn condition_three() {
        let mut d = Disk::interval(2);
        d.fiber_orders[0][0].swap(0, 1);
        let r = validate_disk(&d);
        assert!(r.violations.contains(&DiskViolation::Condition3 { k: 0, x: 0 }));
    }

    #[test]
    fn condition_two() {
        // collapse the fiber over an interior point to a singleton
        let shape = DiskShape {
            dim: 2,
            width: 2,
            children: vec![DiskShape::interval(1)],
        };
        let mut d = Disk::from_shape(&shape);
        assert!(validate_disk(&d).is_empty());
        let keep = d.fiber_orders[1][1][0];
        d.t[1][1] = keep;
        let r = validate_disk(&d);
        assert!(r.violations.contains(&DiskViolation::Condition2 { k: 1, x: 1 }));
    }

    #[test]
    fn serde_round_trip() {
        let shape: DiskShape = "D2[2](D1[2])".parse::<crate::obj::Obj>().map(|o| match o {
            crate::obj::Obj::Disk(s) => s,
            _ => unreachable!(),
        }).unwrap();
        let d = Disk::from_shape(&shape);
        let j = serde_json::to_string(&d).unwrap();
        assert!(j.contains("\"fiberOrders\""));
        let back: Disk = serde_json::from_str(&j).unwrap();
        assert_eq!(back, d);
    }
}

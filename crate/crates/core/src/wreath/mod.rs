//! `M`, `M^op`, wreath and cowreath products, `Θ_n` and the duality
//! isomorphism `(X ≀ A)^op ≅ X^op ⊗^{M^op} A^op`.

pub mod duality;
pub mod general;
pub mod labeled;
pub mod segal;

use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::fincat::{FiniteCategory, Functor, MorId, ObjId};
use crate::obj::Obj;
use crate::sites::{materialize, Site};

pub use duality::{duality_iso, DualityIso};
pub use general::{generalized_wreath, wreath_by_pullback, Transformer};
pub use labeled::{build_labeled, labeled_functor, map_labels, LabelScheme, LabeledCategory};
pub use segal::{
    constant_omega_on, cosegal_omega, cosegal_omega_on, interval_duality_functor, p_functor,
    p_inverse, segal_gamma, segal_gamma_on,
};

/// Largest Γ truncation a wreath may pass through.
pub const MAX_INDEX: usize = 4;

pub fn wreath_name(base: &str, labels: &str) -> String {
    format!("{base}≀{labels}")
}

pub fn cowreath_name(base: &str, labels: &str) -> String {
    format!("{base}⊗^M^op{labels}")
}

fn joined_bounds(a: &FiniteCategory, b: &FiniteCategory) -> Vec<usize> {
    a.bounds().iter().chain(b.bounds()).copied().collect()
}

/// Largest `k` such that the objects of `c` are exactly `n̄` (or `n+`) for
/// `n ≤ k`.
fn truncation_index(c: &FiniteCategory, pointed: bool) -> Result<usize> {
    let k = c.num_objects().checked_sub(1).ok_or_else(|| invalid("empty truncation"))?;
    for n in 0..=k {
        let o = if pointed { Obj::Pointed(n) } else { Obj::Set(n) };
        if c.find_object(&o).is_none() {
            return Err(invalid(format!("{} is not a truncation of its site", c.name())));
        }
    }
    if k > MAX_INDEX {
        return Err(invalid(format!("index bound {k} exceeds {MAX_INDEX}")));
    }
    Ok(k)
}

/// `M(C)` on index sets of size at most `max_index`.
pub fn m_of(c: Arc<FiniteCategory>, max_index: usize) -> Result<LabeledCategory> {
    if max_index > MAX_INDEX {
        return Err(invalid(format!("index bound {max_index} exceeds {MAX_INDEX}")));
    }
    let gamma = Arc::new(materialize(Site::Gamma, max_index));
    let id = Functor::identity(gamma.clone());
    let scheme = Arc::new(LabelScheme::from_segal(&id)?);
    let name = format!("M({})", c.name());
    let mut l = build_labeled(name, gamma, scheme, c.clone())?;
    let bounds = [vec![max_index], c.bounds().to_vec()].concat();
    l.category = Arc::new(Arc::unwrap_or_clone(l.category).with_bounds(bounds));
    Ok(l)
}

/// `M^op(C) = M(C^op)^op`.
pub fn mop_of(c: &FiniteCategory, max_index: usize) -> Result<FiniteCategory> {
    let m = m_of(Arc::new(c.opposite()), max_index)?;
    Ok(m.category.opposite().with_name(format!("M^op({})", c.name())))
}

/// `X_γ ≀ A`, built directly from labeled data.
pub fn wreath(gamma: &Functor, labels: Arc<FiniteCategory>) -> Result<LabeledCategory> {
    truncation_index(&gamma.target, false)?;
    let scheme = Arc::new(LabelScheme::from_segal(gamma)?);
    let name = wreath_name(gamma.source.name(), labels.name());
    let bounds = joined_bounds(&gamma.source, &labels);
    let mut l = build_labeled(name, gamma.source.clone(), scheme, labels)?;
    l.category = Arc::new(Arc::unwrap_or_clone(l.category).with_bounds(bounds));
    Ok(l)
}

/// `X_ω ⊗^{M^op} A` for a coSegal map `ω : X → FinSet_*`.
pub fn cowreath(omega: &Functor, labels: Arc<FiniteCategory>) -> Result<LabeledCategory> {
    truncation_index(&omega.target, true)?;
    let scheme = Arc::new(LabelScheme::from_cosegal(omega)?);
    let name = cowreath_name(omega.source.name(), labels.name());
    let bounds = joined_bounds(&omega.source, &labels);
    let mut l = build_labeled(name, omega.source.clone(), scheme, labels)?;
    l.category = Arc::new(Arc::unwrap_or_clone(l.category).with_bounds(bounds));
    Ok(l)
}

/// `Θ_1 = Δ`, `Θ_n = Δ ≀ Θ_{n−1}`, with rank bound `bounds[k]` at level `k+1`.
pub fn theta(n: usize, bounds: &[usize]) -> Result<Arc<FiniteCategory>> {
    if n == 1 {
        return theta_one(bounds);
    }
    Ok(theta_labeled(n, bounds)?.category)
}

fn theta_one(bounds: &[usize]) -> Result<Arc<FiniteCategory>> {
    match bounds {
        [b] => Ok(Arc::new(materialize(Site::Delta, *b).with_name("Θ_1"))),
        _ => Err(invalid("Θ_1 takes exactly one bound")),
    }
}

/// `Θ_n` for `n ≥ 2` together with its wreath decoding.
pub fn theta_labeled(n: usize, bounds: &[usize]) -> Result<LabeledCategory> {
    if n < 2 || bounds.len() != n {
        return Err(invalid(format!("Θ_{n} needs n ≥ 2 and {n} bounds")));
    }
    let inner = if n == 2 {
        theta_one(&bounds[1..])?
    } else {
        theta_labeled(n - 1, &bounds[1..])?.category
    };
    let mut l = wreath(&segal_gamma(bounds[0])?, inner)?;
    let cat = Arc::unwrap_or_clone(l.category)
        .with_name(format!("Θ_{n}"))
        .with_bounds(bounds.to_vec());
    l.category = Arc::new(cat);
    Ok(l)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsofibrationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IsofibrationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every object `e` and every isomorphism `f` out of `p(e)`, look for an
/// isomorphism `f̃` out of `e` with `p(f̃) = f`.
pub fn check_isofibration(p: &Functor) -> IsofibrationReport {
    let (src, tgt) = (&*p.source, &*p.target);
    let base_iso: Vec<bool> = (0..tgt.num_morphisms()).map(|f| tgt.is_iso(f)).collect();
    let mut report = IsofibrationReport::default();
    for e in 0..src.num_objects() {
        let x = p.obj(e);
        let mut lifted: Vec<MorId> = Vec::new();
        let wanted: Vec<MorId> = (0..tgt.num_objects())
            .flat_map(|y| tgt.hom(x, y))
            .filter(|&f| base_iso[f])
            .collect();
        for e2 in 0..src.num_objects() {
            for g in src.hom(e, e2) {
                let f = p.mor(g);
                if base_iso[f] && !lifted.contains(&f) && src.is_iso(g) {
                    lifted.push(f);
                }
            }
        }
        for f in wanted {
            report.checked += 1;
            if !lifted.contains(&f) {
                report.failures.push(format!(
                    "{} at {}",
                    tgt.payload(f),
                    src.object(e)
                ));
            }
        }
    }
    report
}

/// Objects of a labeled category lying over base object `x`.
pub fn objects_over(l: &LabeledCategory, x: ObjId) -> Vec<ObjId> {
    (0..l.category.num_objects())
        .filter(|&e| l.obj_data[e].0 == x)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{terminal, validate_category};

    #[test]
    fn m_of_star_is_gamma() {
        for k in 0..=3 {
            let m = m_of(Arc::new(terminal()), k).unwrap();
            let p = m.project_base();
            assert!(p.check_isomorphism(), "k = {k}");
        }
    }

    #[test]
    fn m_of_singleton_index() {
        let c = Arc::new(materialize(Site::Delta, 2));
        let m = m_of(c.clone(), 1).unwrap();
        let one = m.base.find_object(&Obj::Set(1)).unwrap();
        assert_eq!(objects_over(&m, one).len(), c.num_objects());
        let zero = m.base.find_object(&Obj::Set(0)).unwrap();
        let empty = objects_over(&m, zero);
        assert_eq!(empty.len(), 1);
        assert_eq!(m.category.hom_len(empty[0], empty[0]), 1);
        assert!(validate_category(&m.category).is_empty());
    }

    #[test]
    fn mop_of_star_is_gamma_op() {
        let mop = mop_of(&terminal(), 3).unwrap();
        let gop = materialize(Site::Gamma, 3).opposite();
        assert_eq!(mop.num_objects(), gop.num_objects());
        assert_eq!(mop.num_morphisms(), gop.num_morphisms());
        assert!(validate_category(&mop).is_empty());
    }

    #[test]
    fn delta_wreath_delta_endo_hom() {
        let t = theta_labeled(2, &[1, 1]).unwrap();
        let x = t
            .category
            .find_object(&Obj::labeled(Obj::Simplex(1), vec![Obj::Simplex(1)]))
            .unwrap();
        assert_eq!(t.category.hom_len(x, x), 5);
        assert!(validate_category(&t.category).is_empty());
    }

    #[test]
    fn wreath_over_star_is_base() {
        let g = segal_gamma(2).unwrap();
        let w = wreath(&g, Arc::new(terminal())).unwrap();
        assert!(w.project_base().check_isomorphism());
    }

    #[test]
    fn theta_two_object_counts_factor() {
        let t = theta_labeled(2, &[2, 2]).unwrap();
        for k in 0..=2 {
            let x = t.base.find_object(&Obj::Simplex(k)).unwrap();
            assert_eq!(objects_over(&t, x).len(), 3usize.pow(k as u32));
        }
        let o = Obj::labeled(Obj::Simplex(2), vec![Obj::Simplex(1), Obj::Simplex(2)]);
        assert!(t.category.find_object(&o).is_some());
        assert_eq!(theta(1, &[2]).unwrap().num_objects(), 3);
    }

    #[test]
    fn cowreath_examples() {
        let w = cosegal_omega(3).unwrap();
        let c = cowreath(&w, Arc::new(terminal())).unwrap();
        assert!(c.project_base().check_isomorphism());
        let labels = Arc::new(materialize(Site::Delta, 1));
        let c = cowreath(&w, labels.clone()).unwrap();
        let one = c.base.find_object(&Obj::Simplex(1)).unwrap();
        assert_eq!(objects_over(&c, one).len(), 1);
        let three = c.base.find_object(&Obj::Simplex(3)).unwrap();
        assert_eq!(objects_over(&c, three).len(), labels.num_objects().pow(2));
        assert!(validate_category(&c.category).is_empty());
    }

    #[test]
    fn isofibration_small() {
        let m = m_of(Arc::new(materialize(Site::Delta, 1)), 2).unwrap();
        assert!(check_isofibration(&m.project_base()).ok());
    }

    #[test]
    fn rejects_oversized_index() {
        assert!(m_of(Arc::new(terminal()), MAX_INDEX + 1).is_err());
    }
}

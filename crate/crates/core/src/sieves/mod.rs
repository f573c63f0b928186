//! Sieves on `[n]` in `Δ` and in crossed simplicial groups, their
//! classification by down-closed families of images, and the Segal functors
//! they induce through the quotient `Y_x/S`.

mod crossed;
mod quotient;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::fincat::{FiniteCategory, MorId};
use crate::payload::Payload;
use crate::sites::{delta_hom, materialize, Ambient, Site};

pub use crossed::{berger_transformation, delta_part, induce_crossed_sieve, segal_from_sieve, SegalFunctor};
pub use quotient::{
    berger_natural_iso, quotient_functor, yoneda, BergerIso, PointedPresheaf, Presheaf,
};

/// The site materializing an ambient crossed simplicial group.
pub fn ambient_site(ambient: Ambient) -> Site {
    match ambient {
        Ambient::Delta => Site::Delta,
        Ambient::Lambda => Site::Lambda,
        Ambient::Z2 => Site::Z2,
    }
}

/// A family of nonempty subsets of `{0..n}` closed under nonempty subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DownFamily {
    pub base_rank: usize,
    pub members: BTreeSet<Vec<usize>>,
}

fn subsets_of(a: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u64..1 << a.len()).map(move |mask| {
        a.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

impl DownFamily {
    pub fn new(base_rank: usize, members: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut m in members {
            m.sort_unstable();
            m.dedup();
            if m.is_empty() || m.iter().any(|&v| v > base_rank) {
                return Err(invalid(format!("{m:?} is not a nonempty subset of [{base_rank}]")));
            }
            set.insert(m);
        }
        let fam = DownFamily {
            base_rank,
            members: set,
        };
        if let Some(missing) = fam.closure_gap() {
            return Err(invalid(format!("family is not closed: {missing:?} is missing")));
        }
        Ok(fam)
    }

    fn closure_gap(&self) -> Option<Vec<usize>> {
        self.members
            .iter()
            .flat_map(|a| subsets_of(a).collect::<Vec<_>>())
            .find(|b| !self.members.contains(b))
    }

    pub fn is_valid(&self) -> bool {
        self.closure_gap().is_none()
    }

    /// Every nonempty subset.
    pub fn full(base_rank: usize) -> Self {
        let all: Vec<usize> = (0..=base_rank).collect();
        DownFamily {
            base_rank,
            members: subsets_of(&all).collect(),
        }
    }
}

/// All down-closed families on `[n]`, by filtering every set of nonempty
/// subsets. Feasible for `n ≤ 3`.
pub fn enumerate_families(n: usize) -> Result<Vec<DownFamily>> {
    if n > 3 {
        return Err(invalid("family enumeration is limited to n ≤ 3"));
    }
    let universe: Vec<Vec<usize>> = subsets_of(&(0..=n).collect::<Vec<_>>()).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << universe.len() {
        let fam = DownFamily {
            base_rank: n,
            members: (0..universe.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| universe[i].clone())
                .collect(),
        };
        if fam.is_valid() {
            out.push(fam);
        }
    }
    out.sort();
    Ok(out)
}

/// A sieve on `[n]` restricted to the window of objects `[0..K]`:
/// `members[k] ⊆ Hom([k], [n])`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SieveWindow {
    pub ambient: Ambient,
    pub base: usize,
    pub window: usize,
    pub members: Vec<Vec<Payload>>,
}

impl SieveWindow {
    pub fn empty(ambient: Ambient, base: usize, window: usize) -> Self {
        SieveWindow {
            ambient,
            base,
            window,
            members: vec![Vec::new(); window + 1],
        }
    }

    pub fn len(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, k: usize, f: &Payload) -> bool {
        self.members.get(k).is_some_and(|m| m.binary_search(f).is_ok())
    }

    /// Proper sieves miss the identity of `[n]`.
    pub fn is_proper(&self) -> bool {
        !self.contains(self.base, &self.ambient.identity(self.base))
    }

    pub fn is_subset(&self, other: &SieveWindow) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(k, m)| m.iter().all(|f| other.contains(k, f)))
    }

    /// Drop the objects above `window`.
    pub fn restrict(&self, window: usize) -> SieveWindow {
        SieveWindow {
            ambient: self.ambient,
            base: self.base,
            window,
            members: self.members[..=window.min(self.window)].to_vec(),
        }
    }

    /// Closure under precomposition with every morphism between window
    /// objects. Returns a witness `(ζ, ξ)` on failure.
    pub fn closure_witness(&self) -> Result<Option<(Payload, Payload)>> {
        for k in 0..=self.window {
            for zeta in &self.members[k] {
                for l in 0..=self.window {
                    for xi in self.ambient.hom(l, k) {
                        let c = self.ambient.compose_ranked(zeta, &xi, l, k, self.base)?;
                        if !self.contains(l, &c) {
                            return Ok(Some((zeta.clone(), xi)));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_sieve(&self) -> bool {
        matches!(self.closure_witness(), Ok(None))
    }
}

fn window_category(ambient: Ambient, n: usize, window: usize) -> Result<(FiniteCategory, usize)> {
    if window < n {
        return Err(invalid(format!("window {window} does not contain [{n}]")));
    }
    let c = materialize(ambient_site(ambient), window);
    let x = c
        .find_object(&ambient.object(n))
        .ok_or_else(|| invalid("base object missing from the window"))?;
    Ok((c, x))
}

/// Every sieve on `[n]` over the window `[0..K]`, found as unions of
/// principal sieves in the materialized window category.
pub fn enumerate_sieves(ambient: Ambient, n: usize, window: usize) -> Result<Vec<SieveWindow>> {
    let (c, x) = window_category(ambient, n, window)?;
    let elements: Vec<MorId> = (0..c.num_objects()).flat_map(|y| c.hom(y, x)).collect();
    let index = |f: MorId| elements.iter().position(|&e| e == f).expect("element of Y_x");
    let principal: Vec<Vec<bool>> = elements
        .iter()
        .map(|&e| {
            let mut bits = vec![false; elements.len()];
            for y in 0..c.num_objects() {
                for xi in c.hom(y, c.dom(e)) {
                    bits[index(c.compose(e, xi).expect("composable"))] = true;
                }
            }
            bits
        })
        .collect();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut frontier = vec![vec![false; elements.len()]];
    seen.insert(frontier[0].clone());
    while let Some(s) = frontier.pop() {
        for (i, p) in principal.iter().enumerate() {
            if s[i] {
                continue;
            }
            let u: Vec<bool> = s.iter().zip(p).map(|(a, b)| *a || *b).collect();
            if seen.insert(u.clone()) {
                frontier.push(u);
            }
        }
    }
    let mut out: Vec<SieveWindow> = seen
        .into_iter()
        .map(|bits| {
            let mut w = SieveWindow::empty(ambient, n, window);
            for (i, &e) in elements.iter().enumerate() {
                if bits[i] {
                    let k = c.object(c.dom(e)).rank().expect("ranked site");
                    w.members[k].push(c.payload(e).clone());
                }
            }
            for m in &mut w.members {
                m.sort();
            }
            w
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Increasing the window by one neither merges nor splits sieves.
pub fn window_stable(ambient: Ambient, n: usize, window: usize) -> Result<bool> {
    let small: BTreeSet<SieveWindow> = enumerate_sieves(ambient, n, window)?.into_iter().collect();
    let large = enumerate_sieves(ambient, n, window + 1)?;
    let restricted: BTreeSet<SieveWindow> = large.iter().map(|s| s.restrict(window)).collect();
    Ok(large.len() == small.len() && restricted == small)
}

fn image(f: &[usize]) -> Vec<usize> {
    let mut v = f.to_vec();
    v.dedup();
    v
}

/// `Φ(S)([k]) = {f : [k] → [n] : im f ∈ S}`.
pub fn family_to_sieve(s: &DownFamily, window: usize) -> Result<SieveWindow> {
    let n = s.base_rank;
    if window < n {
        return Err(invalid(format!("window {window} does not contain [{n}]")));
    }
    let mut w = SieveWindow::empty(Ambient::Delta, n, window);
    for k in 0..=window {
        w.members[k] = delta_hom(k, n)
            .into_iter()
            .filter(|f| s.members.contains(&image(&f.values)))
            .map(|f| f.payload())
            .collect();
        w.members[k].sort();
    }
    Ok(w)
}

/// `Ψ(I) = {im f : f ∈ I}`.
pub fn sieve_to_family(w: &SieveWindow) -> Result<DownFamily> {
    if w.ambient != Ambient::Delta {
        return Err(invalid("images classify sieves in Δ only"));
    }
    let mut members = BTreeSet::new();
    for m in &w.members {
        for f in m {
            match f {
                Payload::Seq(v) => {
                    members.insert(image(v));
                }
                p => return Err(invalid(format!("Δ payload expected, found {p}"))),
            }
        }
    }
    Ok(DownFamily {
        base_rank: w.base,
        members,
    })
}

/// The sieve of constant maps into `[1]`.
pub fn largest_proper_sieve(n: usize) -> Result<DownFamily> {
    if n != 1 {
        return Err(invalid("the largest proper sieve is stated for [1]"));
    }
    DownFamily::new(1, [vec![0], vec![1]])
}

/// The proper sieve containing every other proper sieve, if one exists.
pub fn maximum_proper_sieve(sieves: &[SieveWindow]) -> Option<&SieveWindow> {
    let proper: Vec<&SieveWindow> = sieves.iter().filter(|s| s.is_proper()).collect();
    proper
        .iter()
        .find(|m| proper.iter().all(|s| s.is_subset(m)))
        .copied()
}

/// Outcome of comparing the enumerated sieves on `[n]` with the down-closed
/// families of images.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SieveClassification {
    pub base_rank: usize,
    pub window: usize,
    pub sieves: usize,
    pub families: usize,
    pub matched: usize,
    pub window_stable: bool,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Enumerate sieves and families independently and match them through `Φ`
/// and `Ψ`.
pub fn classify_sieves(n: usize, window: usize) -> Result<SieveClassification> {
    let sieves = enumerate_sieves(Ambient::Delta, n, window)?;
    let families = enumerate_families(n)?;
    let mut failures = Vec::new();
    let sieve_set: BTreeSet<&SieveWindow> = sieves.iter().collect();
    let mut hit = BTreeSet::new();
    for f in &families {
        let s = family_to_sieve(f, window)?;
        if !sieve_set.contains(&s) {
            failures.push(format!("Φ({:?}) is not an enumerated sieve", f.members));
        }
        if &sieve_to_family(&s)? != f {
            failures.push(format!("Ψ Φ ≠ id at {:?}", f.members));
        }
        hit.insert(s);
    }
    for s in &sieves {
        let f = sieve_to_family(s)?;
        if !f.is_valid() {
            failures.push(format!("Ψ of a sieve of size {} is not down-closed", s.len()));
        } else if &family_to_sieve(&f, window)? != s {
            failures.push(format!("Φ Ψ ≠ id at {:?}", f.members));
        }
    }
    if hit.len() != families.len() {
        failures.push("Φ is not injective".into());
    }
    if sieves.len() != families.len() {
        failures.push(format!("{} sieves against {} families", sieves.len(), families.len()));
    }
    let stable = window_stable(Ambient::Delta, n, window)?;
    if !stable {
        failures.push(format!("window {window} is not stable"));
    }
    Ok(SieveClassification {
        base_rank: n,
        window,
        sieves: sieves.len(),
        families: families.len(),
        matched: hit.iter().filter(|s| sieve_set.contains(s)).count(),
        window_stable: stable,
        passed: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_counts() {
        assert_eq!(enumerate_sieves(Ambient::Delta, 1, 2).unwrap().len(), 5);
        assert_eq!(enumerate_sieves(Ambient::Delta, 2, 3).unwrap().len(), 19);
        assert_eq!(enumerate_families(1).unwrap().len(), 5);
        assert_eq!(enumerate_families(2).unwrap().len(), 19);
    }

    #[test]
    fn constants_family() {
        let s = largest_proper_sieve(1).unwrap();
        let w = family_to_sieve(&s, 2).unwrap();
        assert!(w.is_sieve() && w.is_proper());
        assert_eq!(w.members[1], vec![Payload::Seq(vec![0, 0]), Payload::Seq(vec![1, 1])]);
        assert_eq!(sieve_to_family(&w).unwrap(), s);
        let full = family_to_sieve(&DownFamily::full(1), 2).unwrap();
        assert!(!full.is_proper());
        assert_eq!(full.len(), 2 + 3 + 4);
        assert!(largest_proper_sieve(2).is_err());
    }

    #[test]
    fn empty_family_gives_empty_sieve() {
        let e = DownFamily::new(2, []).unwrap();
        let w = family_to_sieve(&e, 3).unwrap();
        assert!(w.is_empty());
        assert_eq!(sieve_to_family(&w).unwrap(), e);
    }

    #[test]
    fn non_closed_family_rejected() {
        assert!(DownFamily::new(1, [vec![0, 1]]).is_err());
        assert!(DownFamily::new(1, [vec![]]).is_err());
    }

    #[test]
    fn maximum_on_one() {
        let all = enumerate_sieves(Ambient::Delta, 1, 2).unwrap();
        let m = maximum_proper_sieve(&all).unwrap();
        assert_eq!(sieve_to_family(m).unwrap(), largest_proper_sieve(1).unwrap());
    }

    #[test]
    fn classification_report() {
        let r = classify_sieves(2, 3).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!((r.sieves, r.families, r.matched), (19, 19, 19));
        assert_eq!(classify_sieves(1, 2).unwrap().matched, 5);
    }

    #[test]
    fn stability() {
        assert!(window_stable(Ambient::Delta, 1, 1).unwrap());
        assert!(window_stable(Ambient::Delta, 2, 2).unwrap());
        assert!(window_stable(Ambient::Lambda, 1, 1).unwrap());
    }

    #[test]
    fn broken_window_has_witness() {
        let mut w = family_to_sieve(&largest_proper_sieve(1).unwrap(), 2).unwrap();
        w.members[0].clear();
        assert!(w.closure_witness().unwrap().is_some());
    }
}

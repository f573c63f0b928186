//! Presheaves of finite sets, the quotient `F/S`, and the comparison of
//! `Y_{[1]}/S` with Berger's `γ′`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::fincat::{FiniteCategory, ObjId};
use crate::sites::{delta_hom, p_to_pointed, GammaMorphism};

/// `F : C^op → FinSet`. Elements of `F(x)` are `0..sizes[x]`; `action[f]`
/// is `F(f) : F(cod f) → F(dom f)`.
#[derive(Clone, Debug)]
pub struct Presheaf {
    pub category: Arc<FiniteCategory>,
    pub sizes: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

/// `Q : C^op → FinSet_*`. Element `0` of every `Q(x)` is the basepoint and
/// `sizes[x]` counts the others; `action[f]` has `sizes[cod f] + 1` entries.
#[derive(Clone, Debug)]
pub struct PointedPresheaf {
    pub category: Arc<FiniteCategory>,
    pub sizes: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

fn law_violations(c: &FiniteCategory, action: &[Vec<usize>], sizes: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    for x in 0..c.num_objects() {
        let id = &action[c.id(x)];
        if id.iter().copied().ne(0..sizes[x]) {
            out.push(format!("identity of {} does not act trivially", c.object(x)));
        }
    }
    for f in 0..c.num_morphisms() {
        for g in (0..c.num_objects()).flat_map(|y| c.hom(c.cod(f), y)) {
            let gf = c.compose(g, f).expect("composable");
            let lhs: Vec<usize> = action[g].iter().map(|&t| action[f][t]).collect();
            if lhs != action[gf] {
                out.push(format!("F(g∘f) ≠ F(f)∘F(g) for f = {}, g = {}", c.payload(f), c.payload(g)));
            }
        }
    }
    out
}

impl Presheaf {
    pub fn violations(&self) -> Vec<String> {
        law_violations(&self.category, &self.action, &self.sizes)
    }
}

impl PointedPresheaf {
    pub fn violations(&self) -> Vec<String> {
        let full: Vec<usize> = self.sizes.iter().map(|s| s + 1).collect();
        let mut out = law_violations(&self.category, &self.action, &full);
        for (f, a) in self.action.iter().enumerate() {
            if a[0] != 0 {
                out.push(format!("{} moves the basepoint", self.category.payload(f)));
            }
        }
        out
    }
}

/// `Y_x(y) = Hom(y, x)`, elements in hom-set order.
pub fn yoneda(c: Arc<FiniteCategory>, x: ObjId) -> Presheaf {
    let sizes = (0..c.num_objects()).map(|y| c.hom_len(y, x)).collect();
    let action = (0..c.num_morphisms())
        .map(|f| {
            let (a, b) = (c.dom(f), c.cod(f));
            let start = c.hom(a, x).start;
            c.hom(b, x)
                .map(|h| c.compose(h, f).expect("composable") - start)
                .collect()
        })
        .collect();
    Presheaf {
        category: c,
        sizes,
        action,
    }
}

/// `(F/S)(x) = (F(x) ∖ S(x)) ⊔ {*}`, with everything landing in `S` sent to
/// the basepoint. `sub[x][t]` marks `t ∈ S(x)`.
pub fn quotient_functor(f: &Presheaf, sub: &[Vec<bool>]) -> Result<PointedPresheaf> {
    let c = &f.category;
    if sub.len() != f.sizes.len() || sub.iter().zip(&f.sizes).any(|(s, &n)| s.len() != n) {
        return Err(invalid("subfunctor shape does not match the presheaf"));
    }
    for m in 0..c.num_morphisms() {
        let (a, b) = (c.dom(m), c.cod(m));
        for t in 0..f.sizes[b] {
            if sub[b][t] && !sub[a][f.action[m][t]] {
                return Err(invalid(format!("S is not closed under {}", c.payload(m))));
            }
        }
    }
    // new index of each surviving element, 0 for the basepoint
    let renumber: Vec<Vec<usize>> = sub
        .iter()
        .map(|s| {
            let mut next = 0;
            s.iter()
                .map(|&inside| {
                    if inside {
                        0
                    } else {
                        next += 1;
                        next
                    }
                })
                .collect()
        })
        .collect();
    let sizes = sub.iter().map(|s| s.iter().filter(|&&b| !b).count()).collect();
    let action = (0..c.num_morphisms())
        .map(|m| {
            let (a, b) = (c.dom(m), c.cod(m));
            let mut v = vec![0];
            v.extend(
                (0..f.sizes[b])
                    .filter(|&t| !sub[b][t])
                    .map(|t| renumber[a][f.action[m][t]]),
            );
            v
        })
        .collect();
    Ok(PointedPresheaf {
        category: c.clone(),
        sizes,
        action,
    })
}

/// The components `p : γ′([n]) → (Y_{[1]}/S)([n])`, `e_i ↦ p_{e_i}`, with
/// bijectivity and naturality checked on every `f : [n] → [m]`.
#[derive(Clone, Debug, Serialize)]
pub struct BergerIso {
    pub max_rank: usize,
    /// `components[n][i]` is the surjection hit by `e_i` (index `0` is `*`),
    /// as its value list.
    pub components: Vec<Vec<Vec<usize>>>,
    pub violations: Vec<String>,
}

impl BergerIso {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `p_e : [n] → [1]`, the surjection sending the edge `e_i = (i−1, i)` to
/// `e_1`.
fn p_edge(n: usize, i: usize) -> Vec<usize> {
    (0..=n).map(|j| usize::from(j >= i)).collect()
}

/// `γ′(f)` for `f : [n] → [m]` as a pointed map `E([m])_+ → E([n])_+`.
fn gamma_prime(f: &[usize], n: usize, m: usize) -> Result<Vec<usize>> {
    let blocks = (1..=n).map(|i| (f[i - 1] + 1..=f[i]).collect()).collect();
    let g = GammaMorphism::new(n, m, blocks)?;
    let mut v = vec![0];
    v.extend(p_to_pointed(&g).values);
    Ok(v)
}

/// Compare `Y_{[1]}/S` for the constants sieve with `γ′` on `Δ≤max_rank`,
/// working with value lists directly.
pub fn berger_natural_iso(max_rank: usize) -> Result<BergerIso> {
    let is_constant = |v: &[usize]| v.iter().all(|&x| x == v[0]);
    // (Y/S)([n]) as value lists, basepoint first
    let quotient: Vec<Vec<Option<Vec<usize>>>> = (0..=max_rank)
        .map(|n| {
            let mut q = vec![None];
            q.extend(
                delta_hom(n, 1)
                    .into_iter()
                    .filter(|h| !is_constant(&h.values))
                    .map(|h| Some(h.values)),
            );
            q
        })
        .collect();
    let mut violations = Vec::new();
    let mut components = Vec::new();
    for n in 0..=max_rank {
        let comp: Vec<Option<Vec<usize>>> = std::iter::once(None)
            .chain((1..=n).map(|i| Some(p_edge(n, i))))
            .collect();
        let mut sorted_c = comp.clone();
        sorted_c.sort();
        let mut sorted_q = quotient[n].clone();
        sorted_q.sort();
        if sorted_c != sorted_q {
            violations.push(format!("p is not a bijection at [{n}]"));
        }
        components.push(comp.iter().map(|e| e.clone().unwrap_or_default()).collect());
    }
    for n in 0..=max_rank {
        for m in 0..=max_rank {
            for f in delta_hom(n, m) {
                let gp = gamma_prime(&f.values, n, m)?;
                for t in 0..=m {
                    // f^* p(t) against p γ′(f)(t)
                    let pulled = if t == 0 {
                        None
                    } else {
                        let pt = p_edge(m, t);
                        let h: Vec<usize> = f.values.iter().map(|&x| pt[x]).collect();
                        (!is_constant(&h)).then_some(h)
                    };
                    let s = gp[t];
                    let pushed = (s != 0).then(|| p_edge(n, s));
                    if pulled != pushed {
                        violations.push(format!(
                            "naturality fails for f = {:?} at e_{t}",
                            f.values
                        ));
                    }
                }
            }
        }
    }
    Ok(BergerIso {
        max_rank,
        components,
        violations,
    })
}

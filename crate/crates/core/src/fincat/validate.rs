use std::fmt;

use serde::Serialize;

use super::{FiniteCategory, MorId, ObjId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Violation {
    MissingIdentity { object: String },
    IdentityNotEndo { object: String, mor: MorId },
    MissingComposite { g: MorId, f: MorId },
    CompositeEnds { g: MorId, f: MorId, gf: MorId },
    LeftIdentity { f: MorId },
    RightIdentity { f: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingIdentity { object } => write!(out, "no identity on {object}"),
            Violation::IdentityNotEndo { object, mor } => {
                write!(out, "identity #{mor} of {object} is not an endomorphism")
            }
            Violation::MissingComposite { g, f } => write!(out, "#{g} ∘ #{f} undefined"),
            Violation::CompositeEnds { g, f, gf } => {
                write!(out, "#{g} ∘ #{f} = #{gf} has wrong domain or codomain")
            }
            Violation::LeftIdentity { f } => write!(out, "identity law fails: id ∘ #{f} ≠ #{f}"),
            Violation::RightIdentity { f } => write!(out, "identity law fails: #{f} ∘ id ≠ #{f}"),
            Violation::Associativity { h, g, f } => {
                write!(out, "associativity fails at (#{h}, #{g}, #{f})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mentions_identity_law(&self) -> bool {
        self.violations.iter().any(|v| {
            matches!(
                v,
                Violation::LeftIdentity { .. } | Violation::RightIdentity { .. }
            )
        })
    }
}

/// Exhaustive check of the category laws. Associativity is only tested on
/// triples whose inner composites are defined with the right ends, so each
/// defect is reported once at its source.
pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    let mut v = Vec::new();
    let n = c.num_objects();
    for x in 0..n {
        match c.identity(x) {
            None => v.push(Violation::MissingIdentity {
                object: c.object(x).to_string(),
            }),
            Some(id) if c.dom(id) != x || c.cod(id) != x => v.push(Violation::IdentityNotEndo {
                object: c.object(x).to_string(),
                mor: id,
            }),
            _ => {}
        }
    }

    let good = |g: MorId, f: MorId| -> Option<MorId> {
        c.compose(g, f)
            .filter(|&h| c.dom(h) == c.dom(f) && c.cod(h) == c.cod(g))
    };

    for x in 0..n {
        for y in 0..n {
            for f in c.hom(x, y) {
                for z in 0..n {
                    for g in c.hom(y, z) {
                        match c.compose(g, f) {
                            None => v.push(Violation::MissingComposite { g, f }),
                            Some(gf) if c.dom(gf) != x || c.cod(gf) != z => {
                                v.push(Violation::CompositeEnds { g, f, gf })
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }

    let ok_id = |x: ObjId| c.identity(x).filter(|&i| c.dom(i) == x && c.cod(i) == x);
    for f in 0..c.num_morphisms() {
        let (x, y) = (c.dom(f), c.cod(f));
        if let Some(iy) = ok_id(y) {
            if c.compose(iy, f) != Some(f) {
                v.push(Violation::LeftIdentity { f });
            }
        }
        if let Some(ix) = ok_id(x) {
            if c.compose(f, ix) != Some(f) {
                v.push(Violation::RightIdentity { f });
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            for f in c.hom(x, y) {
                for z in 0..n {
                    for g in c.hom(y, z) {
                        let Some(gf) = good(g, f) else { continue };
                        for w in 0..n {
                            for h in c.hom(z, w) {
                                let (Some(hg), Some(l)) = (good(h, g), good(h, gf)) else {
                                    continue;
                                };
                                if good(hg, f) != Some(l) {
                                    v.push(Violation::Associativity { h, g, f });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    ValidationReport { violations: v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;
    use crate::obj::Obj;
    use crate::payload::Payload;

    #[test]
    fn broken_right_identity_is_named() {
        // one object, idempotent e plus identity, with e ∘ id wrongly = id
        let mut b = CategoryBuilder::new("bad");
        let x = b.add_object(Obj::Star);
        let id = b.add_morphism(x, x, Payload::Unit);
        let e = b.add_morphism(x, x, Payload::Seq(vec![0]));
        b.set_identity(x, id);
        let c = b
            .build(move |g, f| match (g, f) {
                (g, f) if g == id => Some(f),
                (g, f) if g == e && f == id => Some(id),
                _ => Some(e),
            })
            .unwrap();
        let r = validate_category(&c);
        assert!(r.mentions_identity_law());
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::RightIdentity { .. })));
    }

    #[test]
    fn missing_identity_and_composite() {
        let mut b = CategoryBuilder::new("bad");
        let x = b.add_object(Obj::Star);
        b.add_morphism(x, x, Payload::Unit);
        let c = b.build(|_, _| None).unwrap();
        let r = validate_category(&c);
        assert!(r.violations.contains(&Violation::MissingIdentity {
            object: "*".into()
        }));
        assert!(r
            .violations
            .contains(&Violation::MissingComposite { g: 0, f: 0 }));
    }

    #[test]
    fn non_associative_table_detected() {
        // monoid {1, a, b} with a∘a = b, a∘b = a, b∘a = b, b∘b = b:
        // (a∘a)∘b = b∘b = b but a∘(a∘b) = a∘a = b; (a∘b)∘a = a∘a = b, a∘(b∘a) = a∘b = a
        let mut bld = CategoryBuilder::new("magma");
        let x = bld.add_object(Obj::Star);
        let one = bld.add_morphism(x, x, Payload::Unit);
        let a = bld.add_morphism(x, x, Payload::Seq(vec![1]));
        let b = bld.add_morphism(x, x, Payload::Seq(vec![2]));
        bld.set_identity(x, one);
        let c = bld
            .build(move |g, f| {
                if g == one {
                    Some(f)
                } else if f == one {
                    Some(g)
                } else if g == a && f == a {
                    Some(b)
                } else if g == a && f == b {
                    Some(a)
                } else {
                    Some(b)
                }
            })
            .unwrap();
        let r = validate_category(&c);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Associativity { .. })));
    }
}

//! Morphism payloads: the concrete combinatorial data carried by each site.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One component `f_{ji}` of a labeled morphism, from source slot `i` to
/// target slot `j`. Slots are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub target: usize,
    pub source: usize,
    pub mor: Payload,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    /// Identity of a one-object category.
    Unit,
    /// Monotone value sequence, used by Δ and ∇.
    Seq(Vec<usize>),
    /// Γ-morphism `n̄ → l̄` as `n` pairwise disjoint sorted subsets of `{1..l}`.
    Blocks(Vec<Vec<usize>>),
    /// Pointed map `n+ → m+`; entry `t-1` is the image of `t`, `0` is the basepoint.
    Pointed(Vec<usize>),
    /// Normalized paracyclic profile `F(0..=m)`.
    Cyclic(Vec<i64>),
    /// ΔZ/2 morphism: underlying set map plus orientation flag.
    Z2 { values: Vec<usize>, flip: bool },
    /// Disk morphism as level maps `f_0..f_n`.
    Levels(Vec<Vec<usize>>),
    /// Wreath-type morphism: base morphism plus components sorted by `(target, source)`.
    Labeled {
        base: Box<Payload>,
        #[serde(with = "components_map")]
        components: Vec<Component>,
    },
    /// Pullback morphism.
    Pair(Box<Payload>, Box<Payload>),
}

impl Payload {
    pub fn labeled(base: Payload, mut components: Vec<Component>) -> Payload {
        components.sort();
        Payload::Labeled {
            base: Box::new(base),
            components,
        }
    }

    pub fn pair(a: Payload, b: Payload) -> Payload {
        Payload::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match serde_json::to_string(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{self:?}"),
        }
    }
}

/// Components serialize as a JSON object keyed `"j,i"`.
mod components_map {
    use super::*;
    use serde::de::Error as _;
    use serde::ser::SerializeMap;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(comps: &[Component], s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(comps.len()))?;
        for c in comps {
            map.serialize_entry(&format!("{},{}", c.target, c.source), &c.mor)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Component>, D::Error> {
        let raw: BTreeMap<String, Payload> = BTreeMap::deserialize(d)?;
        let mut out = Vec::with_capacity(raw.len());
        for (key, mor) in raw {
            let (j, i) = key
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad component key `{key}`")))?;
            let target = j.parse().map_err(D::Error::custom)?;
            let source = i.parse().map_err(D::Error::custom)?;
            out.push(Component {
                target,
                source,
                mor,
            });
        }
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let p = Payload::labeled(
            Payload::Seq(vec![0, 1]),
            vec![
                Component {
                    target: 2,
                    source: 1,
                    mor: Payload::Seq(vec![0]),
                },
                Component {
                    target: 1,
                    source: 1,
                    mor: Payload::Seq(vec![1]),
                },
            ],
        );
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"labeled":{"base":{"seq":[0,1]},"components":{"1,1":{"seq":[1]},"2,1":{"seq":[0]}}}}"#
        );
        let back: Payload = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(
            serde_json::to_string(&Payload::Z2 {
                values: vec![1, 0],
                flip: true
            })
            .unwrap(),
            r#"{"z2":{"values":[1,0],"flip":true}}"#
        );
        assert_eq!(serde_json::to_string(&Payload::Unit).unwrap(), r#""unit""#);
    }

    #[test]
    fn component_keys_sort_numerically() {
        let s = r#"{"labeled":{"base":"unit","components":{"10,1":"unit","2,1":"unit"}}}"#;
        let p: Payload = serde_json::from_str(s).unwrap();
        let Payload::Labeled { components, .. } = p else {
            panic!()
        };
        assert_eq!(components[0].target, 2);
        assert_eq!(components[1].target, 10);
    }
}

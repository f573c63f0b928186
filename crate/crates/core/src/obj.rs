//! Structured object labels with a canonical text form.
//!
//! Every object of a materialized category carries an [`Obj`]. The text form
//! produced by `Display` is the interchange key and parses back with
//! `FromStr`:
//!
//! | label | text |
//! |-------|------|
//! | terminal object | `*` |
//! | `[n]` in Δ, ∇, ΔZ/2 | `[n]` |
//! | `⟨n⟩` in Λ | `<n>` |
//! | `n̄ = {1..n}` in Γ | `n` |
//! | `{*,1..n}` in FinSet_* | `n+` |
//! | disk shape | `D2[2](D1[1])` |
//! | labeled object | `[2]([1],[3])` |
//! | pullback pair | `(a|b)` |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Isomorphism class of a finite combinatorial disk.
///
/// A 1-disk is determined by the width `ℓ` of its interval (`ℓ + 1` points).
/// An `(n+1)`-disk is determined by its width and the `n`-disk shapes sitting
/// over its `ℓ - 1` interior points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiskShape {
    pub dim: usize,
    pub width: usize,
    pub children: Vec<DiskShape>,
}

impl DiskShape {
    pub fn interval(width: usize) -> Self {
        DiskShape {
            dim: 1,
            width,
            children: Vec::new(),
        }
    }

    /// Total number of elements `Σ_k |X_k|` of the disk with this shape.
    pub fn total_size(&self) -> usize {
        if self.dim == 1 {
            return self.width + 2;
        }
        // point + interval + one extreme singleton per endpoint per level >= 2
        let mut size = 1 + (self.width + 1) + 2 * (self.dim - 1);
        for c in &self.children {
            size += c.total_size() - 1;
        }
        size
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obj {
    Star,
    Simplex(usize),
    Cyclic(usize),
    Set(usize),
    Pointed(usize),
    Disk(DiskShape),
    Labeled { base: Box<Obj>, labels: Vec<Obj> },
    Pair(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn labeled(base: Obj, labels: Vec<Obj>) -> Obj {
        Obj::Labeled {
            base: Box::new(base),
            labels,
        }
    }

    pub fn pair(a: Obj, b: Obj) -> Obj {
        Obj::Pair(Box::new(a), Box::new(b))
    }

    /// Rank of `[n]` or `⟨n⟩`, size of `n̄` or `n+`.
    pub fn rank(&self) -> Option<usize> {
        match self {
            Obj::Simplex(n) | Obj::Cyclic(n) | Obj::Set(n) | Obj::Pointed(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for DiskShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}[{}]", self.dim, self.width)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Star => f.write_str("*"),
            Obj::Simplex(n) => write!(f, "[{n}]"),
            Obj::Cyclic(n) => write!(f, "<{n}>"),
            Obj::Set(n) => write!(f, "{n}"),
            Obj::Pointed(n) => write!(f, "{n}+"),
            Obj::Disk(d) => write!(f, "{d}"),
            Obj::Labeled { base, labels } => {
                write!(f, "{base}(")?;
                for (i, l) in labels.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str(")")
            }
            Obj::Pair(a, b) => write!(f, "({a}|{b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn disk(&mut self) -> Result<DiskShape, Error> {
        self.expect(b'D')?;
        let dim = self.number()?;
        if dim == 0 {
            return Err(self.err("disk dimension must be positive"));
        }
        self.expect(b'[')?;
        let width = self.number()?;
        self.expect(b']')?;
        if width == 0 {
            return Err(self.err("disk width must be positive"));
        }
        let mut children = Vec::new();
        if dim > 1 && width > 1 {
            self.expect(b'(')?;
            loop {
                let c = self.disk()?;
                if c.dim + 1 != dim {
                    return Err(self.err("child disk has wrong dimension"));
                }
                children.push(c);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected `,` or `)`")),
                }
            }
            if children.len() != width - 1 {
                return Err(self.err("disk needs one child per interior point"));
            }
        }
        Ok(DiskShape {
            dim,
            width,
            children,
        })
    }

    fn atom(&mut self) -> Result<Obj, Error> {
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(Obj::Star)
            }
            Some(b'[') => {
                self.pos += 1;
                let n = self.number()?;
                self.expect(b']')?;
                Ok(Obj::Simplex(n))
            }
            Some(b'<') => {
                self.pos += 1;
                let n = self.number()?;
                self.expect(b'>')?;
                Ok(Obj::Cyclic(n))
            }
            Some(b'0'..=b'9') => {
                let n = self.number()?;
                if self.peek() == Some(b'+') {
                    self.pos += 1;
                    Ok(Obj::Pointed(n))
                } else {
                    Ok(Obj::Set(n))
                }
            }
            Some(b'D') => Ok(Obj::Disk(self.disk()?)),
            Some(b'(') => {
                self.pos += 1;
                let a = self.obj()?;
                self.expect(b'|')?;
                let b = self.obj()?;
                self.expect(b')')?;
                Ok(Obj::pair(a, b))
            }
            _ => Err(self.err("unexpected character")),
        }
    }

    fn obj(&mut self) -> Result<Obj, Error> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'(') {
            self.pos += 1;
            let mut labels = Vec::new();
            if self.peek() == Some(b')') {
                self.pos += 1;
            } else {
                loop {
                    labels.push(self.obj()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected `,` or `)`")),
                    }
                }
            }
            base = Obj::labeled(base, labels);
        }
        Ok(base)
    }
}

impl FromStr for Obj {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let obj = p.obj()?;
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(obj)
    }
}

impl Serialize for Obj {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Obj {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms() {
        let o = Obj::labeled(Obj::Simplex(2), vec![Obj::Simplex(1), Obj::Simplex(3)]);
        assert_eq!(o.to_string(), "[2]([1],[3])");
        assert_eq!(Obj::labeled(Obj::Simplex(1), vec![]).to_string(), "[1]()");
        assert_eq!(Obj::Pointed(3).to_string(), "3+");
        assert_eq!(Obj::pair(Obj::Star, Obj::Set(2)).to_string(), "(*|2)");
    }

    #[test]
    fn parses_nested_labels_and_disks() {
        for s in [
            "*",
            "[0]",
            "<4>",
            "12",
            "0+",
            "[2]([1](),[0]())",
            "([1]|1([0]))",
            "D1[3]",
            "D2[3](D1[1],D1[2])",
            "D3[2](D2[1])",
            "[2](D2[2](D1[1]),D2[1])",
        ] {
            let o: Obj = s.parse().unwrap();
            assert_eq!(o.to_string(), s);
        }
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "[", "[1", "D2[2]", "D2[3](D1[1])", "(*|", "[1]x", "D0[1]"] {
            assert!(s.parse::<Obj>().is_err(), "{s}");
        }
    }

    #[test]
    fn disk_sizes() {
        assert_eq!(DiskShape::interval(1).total_size(), 3);
        let minimal2 = DiskShape {
            dim: 2,
            width: 1,
            children: vec![],
        };
        assert_eq!(minimal2.total_size(), 5);
        let glued = DiskShape {
            dim: 2,
            width: 2,
            children: vec![DiskShape::interval(1)],
        };
        assert_eq!(glued.total_size(), 8);
    }
}

//! Interchange documents, format `wreathcat/v1`.
//!
//! Every document is JSON with a `format` and a `kind` field, UTF-8 and
//! newline-terminated. Category documents are streamed with one morphism or
//! composite per line; emitting, parsing and emitting again reproduces the
//! same bytes. Functor documents name their source and target by the SHA-256
//! of the canonical category documents.

use std::collections::{BTreeMap, HashMap};
use std::io::{self, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::disks::{validate_disk, Disk};
use crate::error::{invalid, Result};
use crate::fincat::{validate_category, CategoryBuilder, FiniteCategory, Functor, MorId};
use crate::obj::Obj;
use crate::payload::Payload;
use crate::sieves::{DownFamily, SieveWindow};

pub const FORMAT: &str = "wreathcat/v1";

/// Accept `v1` and the full format tag.
pub fn check_format(version: &str) -> Result<()> {
    match version {
        "v1" | FORMAT => Ok(()),
        _ => Err(invalid(format!("unsupported format `{version}`; only v1 is available"))),
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("interchange values serialize")
}

fn io_err(e: io::Error) -> crate::Error {
    invalid(format!("I/O error: {e}"))
}

/// Stream the canonical category document.
pub fn write_category<W: Write>(c: &FiniteCategory, w: &mut W) -> Result<()> {
    let run = |w: &mut W| -> io::Result<()> {
        writeln!(
            w,
            "{{\"format\":{},\"kind\":\"category\",\"name\":{},\"bounds\":{},",
            json(FORMAT),
            json(c.name()),
            json(c.bounds())
        )?;
        writeln!(w, "\"objects\":{},", json(c.objects()))?;
        writeln!(w, "\"morphisms\":[")?;
        for f in 0..c.num_morphisms() {
            let sep = if f + 1 < c.num_morphisms() { "," } else { "" };
            writeln!(
                w,
                "{{\"id\":{f},\"dom\":{},\"cod\":{},\"payload\":{}}}{sep}",
                c.dom(f),
                c.cod(f),
                json(c.payload(f))
            )?;
        }
        writeln!(w, "],")?;
        let ids: Vec<(usize, MorId)> = (0..c.num_objects())
            .filter_map(|x| c.identity(x).map(|i| (x, i)))
            .collect();
        write!(w, "\"identities\":{{")?;
        for (k, (x, i)) in ids.iter().enumerate() {
            write!(w, "{}\"{x}\":{i}", if k == 0 { "" } else { "," })?;
        }
        writeln!(w, "}},")?;
        writeln!(w, "\"compose\":[")?;
        let mut first = true;
        for g in 0..c.num_morphisms() {
            let y = c.dom(g);
            for x in 0..c.num_objects() {
                for f in c.hom(x, y) {
                    if let Some(gf) = c.compose(g, f) {
                        if !first {
                            writeln!(w, ",")?;
                        }
                        write!(w, "[{g},{f},{gf}]")?;
                        first = false;
                    }
                }
            }
        }
        if !first {
            writeln!(w)?;
        }
        writeln!(w, "]}}")
    };
    run(w).map_err(io_err)
}

pub fn category_to_string(c: &FiniteCategory) -> String {
    let mut buf = Vec::new();
    write_category(c, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("documents are UTF-8")
}

#[derive(Deserialize)]
struct MorphismDoc {
    id: usize,
    dom: usize,
    cod: usize,
    payload: Payload,
}

#[derive(Deserialize)]
struct CategoryDoc {
    format: String,
    kind: String,
    name: String,
    bounds: Vec<usize>,
    objects: Vec<Obj>,
    morphisms: Vec<MorphismDoc>,
    identities: BTreeMap<String, usize>,
    compose: Vec<[usize; 3]>,
}

/// Parse a category document; ids must already be canonical.
pub fn read_category(text: &str) -> Result<FiniteCategory> {
    let doc: CategoryDoc =
        serde_json::from_str(text).map_err(|e| invalid(format!("bad category document: {e}")))?;
    check_format(&doc.format)?;
    if doc.kind != "category" {
        return Err(invalid(format!("expected a category document, found `{}`", doc.kind)));
    }
    let mut b = CategoryBuilder::new(doc.name);
    for o in doc.objects {
        b.add_object(o);
    }
    for (k, m) in doc.morphisms.into_iter().enumerate() {
        if m.id != k {
            return Err(invalid(format!("morphism ids must be consecutive, found {}", m.id)));
        }
        b.add_morphism(m.dom, m.cod, m.payload);
    }
    let m = b.num_morphisms();
    for (x, i) in doc.identities {
        let x: usize = x.parse().map_err(|_| invalid(format!("bad identity key `{x}`")))?;
        if i >= m {
            return Err(invalid("identity out of range"));
        }
        b.set_identity(x, i);
    }
    let table: HashMap<(usize, usize), usize> =
        doc.compose.iter().map(|&[g, f, gf]| ((g, f), gf)).collect();
    let c = b.build(|g, f| table.get(&(g, f)).copied())?;
    Ok(c.with_bounds(doc.bounds))
}

struct HashWriter(Sha256);

impl Write for HashWriter {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.0.update(buf);
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

/// SHA-256 of the canonical category document, in hex.
pub fn category_hash(c: &FiniteCategory) -> String {
    let mut h = HashWriter(Sha256::new());
    write_category(c, &mut h).expect("hashing does not fail");
    hex::encode(h.0.finalize())
}

#[derive(Serialize, Deserialize)]
struct FunctorDoc {
    format: String,
    kind: String,
    name: String,
    source: String,
    target: String,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

pub fn functor_to_string(f: &Functor) -> String {
    let doc = FunctorDoc {
        format: FORMAT.into(),
        kind: "functor".into(),
        name: f.name.clone(),
        source: category_hash(&f.source),
        target: category_hash(&f.target),
        objects: (0..f.source.num_objects()).map(|x| f.obj(x)).collect(),
        morphisms: (0..f.source.num_morphisms()).map(|g| f.mor(g)).collect(),
    };
    json(&doc) + "\n"
}

/// Parse a functor document against categories whose hashes it names.
pub fn read_functor(
    text: &str,
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
) -> Result<Functor> {
    let doc: FunctorDoc =
        serde_json::from_str(text).map_err(|e| invalid(format!("bad functor document: {e}")))?;
    check_format(&doc.format)?;
    if doc.source != category_hash(&source) || doc.target != category_hash(&target) {
        return Err(invalid("functor document refers to different categories"));
    }
    Functor::new(doc.name, source, target, doc.objects, doc.morphisms)
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    format: String,
    kind: String,
    #[serde(flatten)]
    body: T,
}

/// Wrap any serializable value as a one-line document of the given kind.
pub fn document<T: Serialize>(kind: &str, body: &T) -> String {
    json(&Envelope {
        format: FORMAT.into(),
        kind: kind.into(),
        body,
    }) + "\n"
}

/// Parse a document of the given kind.
pub fn read_document<T: for<'de> Deserialize<'de>>(kind: &str, text: &str) -> Result<T> {
    let env: Envelope<T> =
        serde_json::from_str(text).map_err(|e| invalid(format!("bad {kind} document: {e}")))?;
    check_format(&env.format)?;
    if env.kind != kind {
        return Err(invalid(format!("expected a {kind} document, found `{}`", env.kind)));
    }
    Ok(env.body)
}

/// Body of a `disks` document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiskList {
    pub dim: usize,
    pub size_bound: usize,
    pub disks: Vec<Disk>,
}

#[derive(Deserialize)]
struct Header {
    format: String,
    kind: String,
}

/// Validate a document and confirm that re-emitting it reproduces the input
/// bytes. Returns the document kind.
pub fn check_document(text: &str) -> Result<String> {
    let head: Header =
        serde_json::from_str(text).map_err(|e| invalid(format!("not an interchange document: {e}")))?;
    check_format(&head.format)?;
    let again = match head.kind.as_str() {
        "category" => {
            let c = read_category(text)?;
            let r = validate_category(&c);
            if !r.is_empty() {
                return Err(invalid(format!("category laws fail: {r:?}")));
            }
            category_to_string(&c)
        }
        "disks" => {
            let l: DiskList = read_document("disks", text)?;
            for d in &l.disks {
                let r = validate_disk(d);
                if !r.is_empty() {
                    return Err(invalid(format!("invalid disk: {r:?}")));
                }
            }
            document("disks", &l)
        }
        "sieve" => {
            let w: SieveWindow = read_document("sieve", text)?;
            if let Some((z, x)) = w.closure_witness()? {
                return Err(invalid(format!("not a sieve: {z} ∘ {x} is missing")));
            }
            document("sieve", &w)
        }
        "family" => {
            let f: DownFamily = read_document("family", text)?;
            if !f.is_valid() {
                return Err(invalid("family is not down-closed"));
            }
            document("family", &f)
        }
        _ => {
            let v: serde_json::Value = read_document(&head.kind, text)?;
            document(&head.kind, &v)
        }
    };
    if again != text {
        return Err(invalid(format!("{} document is not in canonical form", head.kind)));
    }
    Ok(head.kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disks::enumerate_disks;
    use crate::sieves::{family_to_sieve, largest_proper_sieve};
    use crate::sites::{materialize, Site};
    use crate::wreath::theta;

    #[test]
    fn category_round_trip_is_byte_stable() {
        for c in [
            materialize(Site::Lambda, 2),
            materialize(Site::Z2, 2),
            (*theta(2, &[1, 1]).unwrap()).clone(),
        ] {
            let a = category_to_string(&c);
            assert!(a.ends_with('\n'));
            let back = read_category(&a).unwrap();
            assert_eq!(back, c);
            assert_eq!(category_to_string(&back), a);
        }
    }

    #[test]
    fn opposite_is_an_involution_on_documents() {
        let c = materialize(Site::Gamma, 2);
        let a = category_to_string(&c);
        assert_eq!(category_to_string(&c.opposite().opposite()), a);
    }

    #[test]
    fn functor_round_trip() {
        let c = Arc::new(materialize(Site::Delta, 2));
        let f = Functor::identity(c.clone());
        let s = functor_to_string(&f);
        let back = read_functor(&s, c.clone(), c.clone()).unwrap();
        assert!(back.same_as(&f));
        let other = Arc::new(materialize(Site::Delta, 1));
        assert!(read_functor(&s, other, c).is_err());
    }

    #[test]
    fn other_documents() {
        let l = DiskList {
            dim: 2,
            size_bound: 10,
            disks: enumerate_disks(2, 10),
        };
        let s = document("disks", &l);
        assert_eq!(read_document::<DiskList>("disks", &s).unwrap(), l);
        assert_eq!(check_document(&s).unwrap(), "disks");
        let w = family_to_sieve(&largest_proper_sieve(1).unwrap(), 2).unwrap();
        let s = document("sieve", &w);
        assert!(s.contains("\"members\""));
        let back: SieveWindow = read_document("sieve", &s).unwrap();
        assert_eq!(back, w);
        assert_eq!(document("sieve", &back), s);
        assert!(read_document::<SieveWindow>("family", &s).is_err());
        assert_eq!(check_document(&s).unwrap(), "sieve");
        assert!(check_format("v2").is_err());
    }

    #[test]
    fn check_rejects_edits() {
        let c = materialize(Site::Delta, 1);
        let s = category_to_string(&c);
        assert_eq!(check_document(&s).unwrap(), "category");
        assert!(s.contains("[0,0,0]"));
        assert!(check_document(&s.replacen("[0,0,0]", "[0,0,1]", 1)).is_err());
        assert!(check_document(&s.replace('\n', " ")).is_err());
        assert!(check_document(&s.replace("wreathcat/v1", "wreathcat/v2")).is_err());
    }
}

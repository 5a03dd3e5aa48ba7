//! The JSON document format.
//!
//! Every document carries `format_version`. Integer vectors are written as
//! strings such as `"(1,-2)"` so that entries are unbounded; input documents
//! also accept plain arrays of numbers.
//!
//! An input document:
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "lattice_rank": 2,
//!   "cones": [["(1,0)", "(0,1)"], ["(0,1)", "(-1,-1)"], ["(-1,-1)", "(1,0)"]],
//!   "sublattice": ["(1,0)"],
//!   "options": { "saturate": false, "bound": 8 }
//! }
//! ```
//!
//! `cones` lists generators of the maximal cones; faces are added
//! automatically.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::lattice::{self, Int, IntMatrix, IntVec, Sublattice};
use crate::monoid::AffineMonoid;
use crate::polyhedra::{validate_fan, Cone, Fan};
use crate::stack::ToricStackDatum;
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// An integer vector in document form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecText(pub IntVec);

impl Serialize for VecText {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&lattice::fmt_vec(&self.0))
    }
}

pub fn parse_vec(text: &str) -> std::result::Result<IntVec, String> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| format!("expected a vector like \"(1,0)\", got {t:?}"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| Int::from_str(x.trim()).map_err(|_| format!("bad integer {:?} in {t:?}", x.trim())))
        .collect()
}

impl<'de> Deserialize<'de> for VecText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = VecText;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a vector string \"(a,b,...)\" or an array of integers")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<VecText, E> {
                parse_vec(v).map(VecText).map_err(E::custom)
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<VecText, A::Error> {
                let mut out = Vec::new();
                while let Some(x) = seq.next_element::<serde_json::Value>()? {
                    let n = match &x {
                        serde_json::Value::Number(n) => Int::from_str(&n.to_string()).ok(),
                        serde_json::Value::String(s) => Int::from_str(s.trim()).ok(),
                        _ => None,
                    };
                    out.push(n.ok_or_else(|| de::Error::custom(format!("not an integer: {x}")))?);
                }
                Ok(VecText(out))
            }
        }
        d.deserialize_any(V)
    }
}

fn texts(vs: &[IntVec]) -> Vec<VecText> {
    vs.iter().cloned().map(VecText).collect()
}

fn untext(vs: &[VecText]) -> Vec<IntVec> {
    vs.iter().map(|v| v.0.clone()).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    #[serde(default)]
    pub saturate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub format_version: u32,
    pub lattice_rank: usize,
    pub cones: Vec<Vec<VecText>>,
    #[serde(default)]
    pub sublattice: Vec<VecText>,
    #[serde(default)]
    pub options: Options,
}

/// A parsed and validated input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub fan: Fan,
    pub sublattice: Sublattice,
    pub options: Options,
}

/// Parses an input document. `saturate` (or the document's own option)
/// replaces a non-saturated sublattice by its saturation.
pub fn parse_input(text: &str, saturate: bool) -> Result<Input> {
    let doc: InputDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    input_from_document(&doc, saturate)
}

pub fn input_from_document(doc: &InputDocument, saturate: bool) -> Result<Input> {
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "format_version: unsupported version {} (expected {FORMAT_VERSION})",
            doc.format_version
        )));
    }
    let r = doc.lattice_rank;
    let check = |v: &VecText, at: String| {
        if v.0.len() == r {
            Ok(())
        } else {
            Err(Error::Parse(format!("{at}: expected {r} entries, got {}", v.0.len())))
        }
    };
    for (i, c) in doc.cones.iter().enumerate() {
        for (j, v) in c.iter().enumerate() {
            check(v, format!("cones[{i}][{j}]"))?;
        }
    }
    for (j, v) in doc.sublattice.iter().enumerate() {
        check(v, format!("sublattice[{j}]"))?;
    }
    let cones: Vec<Cone> = doc.cones.iter().map(|c| Cone::from_generators(r, &untext(c))).collect();
    let fan = Fan::from_maximal_cones(r, &cones);
    validate_fan(&fan).into_result()?;
    let mut l = Sublattice::new(r, &untext(&doc.sublattice));
    if !l.is_saturated() {
        if saturate || doc.options.saturate {
            l = l.saturate();
        } else {
            return Err(Error::NotSaturated);
        }
    }
    Ok(Input { fan, sublattice: l, options: doc.options.clone() })
}

pub fn input_document(fan: &Fan, l: &Sublattice) -> InputDocument {
    let maximal: Vec<Vec<VecText>> = fan.maximal_cones().iter().map(|c| texts(c.rays())).collect();
    InputDocument {
        format_version: FORMAT_VERSION,
        lattice_rank: fan.ambient_rank(),
        cones: maximal,
        sublattice: texts(l.basis()),
        options: Options::default(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDoc {
    pub ambient_rank: usize,
    pub rays: Vec<VecText>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<VecText>,
    pub dim: usize,
}

impl ConeDoc {
    pub fn new(c: &Cone) -> Self {
        ConeDoc {
            ambient_rank: c.ambient_rank(),
            rays: texts(c.rays()),
            lineality: texts(c.lineality().basis()),
            dim: c.dim(),
        }
    }

    pub fn to_cone(&self) -> Result<Cone> {
        let mut gens = untext(&self.rays);
        for b in untext(&self.lineality) {
            gens.push(lattice::neg(&b));
            gens.push(b);
        }
        if gens.iter().any(|g| g.len() != self.ambient_rank) {
            return Err(Error::Parse("cone generator of the wrong length".into()));
        }
        let c = Cone::from_generators(self.ambient_rank, &gens);
        if c.dim() != self.dim {
            return Err(Error::Parse(format!("cone dimension {} does not match its generators", self.dim)));
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeDoc {
    pub ambient_rank: usize,
    pub basis: Vec<VecText>,
}

impl SublatticeDoc {
    pub fn new(l: &Sublattice) -> Self {
        SublatticeDoc { ambient_rank: l.ambient_rank(), basis: texts(l.basis()) }
    }

    pub fn to_sublattice(&self) -> Result<Sublattice> {
        let b = untext(&self.basis);
        if b.iter().any(|v| v.len() != self.ambient_rank) {
            return Err(Error::Parse("basis vector of the wrong length".into()));
        }
        Ok(Sublattice::new(self.ambient_rank, &b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDoc {
    pub ambient_rank: usize,
    pub hilbert_basis: Vec<VecText>,
    pub group: Vec<VecText>,
    pub saturated: bool,
}

impl MonoidDoc {
    pub fn new(m: &AffineMonoid) -> Self {
        MonoidDoc {
            ambient_rank: m.ambient_rank(),
            hilbert_basis: texts(m.hilbert_basis()),
            group: texts(m.group().basis()),
            saturated: m.is_saturated(),
        }
    }

    pub fn to_monoid(&self) -> Result<AffineMonoid> {
        let r = self.ambient_rank;
        let hb = untext(&self.hilbert_basis);
        if hb.iter().chain(&untext(&self.group)).any(|v| v.len() != r) {
            return Err(Error::Parse("monoid vector of the wrong length".into()));
        }
        if self.saturated {
            let group = Sublattice::new(r, &untext(&self.group));
            Ok(AffineMonoid::saturated(&Cone::from_generators(r, &hb), &group))
        } else {
            AffineMonoid::from_generators(r, &hb)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    pub ambient_rank: usize,
    /// All cones in canonical order; a cone's position is its index.
    pub cones: Vec<ConeDoc>,
    pub maximal: Vec<usize>,
}

impl FanDoc {
    pub fn new(f: &Fan) -> Self {
        FanDoc {
            ambient_rank: f.ambient_rank(),
            cones: f.cones().iter().map(ConeDoc::new).collect(),
            maximal: f.maximal_indices(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan> {
        let cones = self.cones.iter().map(ConeDoc::to_cone).collect::<Result<Vec<_>>>()?;
        let f = Fan::from_cones(self.ambient_rank, cones);
        if f.len() != self.cones.len() {
            return Err(Error::Parse("fan lists a cone twice".into()));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDoc {
    pub fan: FanDoc,
    pub monoids: Vec<MonoidDoc>,
}

impl DatumDoc {
    pub fn new(d: &ToricStackDatum) -> Self {
        DatumDoc { fan: FanDoc::new(d.fan()), monoids: d.monoids().iter().map(MonoidDoc::new).collect() }
    }

    pub fn to_datum(&self) -> Result<ToricStackDatum> {
        let monoids = self.monoids.iter().map(MonoidDoc::to_monoid).collect::<Result<Vec<_>>>()?;
        ToricStackDatum::new(self.fan.to_fan()?, monoids)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc(pub Vec<VecText>);

impl MatrixDoc {
    pub fn new(m: &IntMatrix) -> Self {
        MatrixDoc(texts(m.rows()))
    }
}

/// Serializes a document deterministically (pretty-printed, trailing newline).
pub fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

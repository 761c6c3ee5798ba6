//! The JSON input format: a versioned document holding a scalar field
//! and a name-to-record map of objects given by structure constants.
//!
//! Serialization is canonical: object keys are sorted, scalars render
//! in lowest terms, and map entries are emitted in row-major order, so
//! serialize -> parse -> serialize is the identity on documents this
//! module produces.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use pwg_core::classical::{CoveringData, ExtensionData, FiniteGroup, GSet};
use pwg_core::comodule::{CoactionData, ComoduleData, Side};
use pwg_core::error::{Error, Result};
use pwg_core::fibred::FibredCoaction;
use pwg_core::hopf::{AlgebraData, CoalgebraData, HopfData};
use pwg_core::linalg::{LinMap, Subspace};
use pwg_core::registry::{build_example, BuiltObject};
use pwg_core::scalar::{FieldSpec, Scalar};

/// Hard cap on algebra and Hopf dimensions; canonical-map matrices are
/// at most (64*64)^2 entries, which keeps exact arithmetic tractable.
pub const MAX_DIM: usize = 64;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub version: u32,
    pub field: FieldDoc,
    pub objects: BTreeMap<String, ObjectRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

/// A sparse matrix: entries are `[row, col, "scalar"]` triples in
/// row-major order with string scalars ("5", "-3/7", residues mod p).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideTag {
    Left,
    Right,
}

/// One named object. Multiplication maps are `dim x dim^2`,
/// comultiplications `dim^2 x dim`, coactions `dim*hdim x dim`; the
/// core constructors reject anything out of shape.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ObjectRecord {
    Group {
        order: usize,
        mult: Vec<Vec<usize>>,
    },
    Gset {
        group: String,
        points: usize,
        action: Vec<Vec<usize>>,
    },
    Hopf {
        dim: usize,
        mult: MapRecord,
        unit: Vec<String>,
        comult: MapRecord,
        counit: MapRecord,
        antipode: MapRecord,
    },
    Coaction {
        hopf: String,
        dim: usize,
        mult: MapRecord,
        unit: Vec<String>,
        delta: MapRecord,
    },
    Extension {
        group: String,
        dim: usize,
        mult: MapRecord,
        unit: Vec<String>,
        automorphisms: Vec<MapRecord>,
    },
    Covering {
        deck: String,
        total: usize,
        base_points: usize,
        projection: Vec<usize>,
        deck_maps: Vec<Vec<usize>>,
    },
    Fibred {
        coaction: String,
        base_points: usize,
        theta: MapRecord,
    },
    Comodule {
        hopf: String,
        side: SideTag,
        dim: usize,
        coaction: MapRecord,
    },
    Subalgebra {
        ambient: String,
        basis: Vec<Vec<String>>,
    },
}

impl ObjectRecord {
    pub fn kind(&self) -> &'static str {
        match self {
            ObjectRecord::Group { .. } => "group",
            ObjectRecord::Gset { .. } => "gset",
            ObjectRecord::Hopf { .. } => "hopf",
            ObjectRecord::Coaction { .. } => "coaction",
            ObjectRecord::Extension { .. } => "extension",
            ObjectRecord::Covering { .. } => "covering",
            ObjectRecord::Fibred { .. } => "fibred",
            ObjectRecord::Comodule { .. } => "comodule",
            ObjectRecord::Subalgebra { .. } => "subalgebra",
        }
    }
}

pub fn field_doc(spec: FieldSpec) -> FieldDoc {
    match spec {
        FieldSpec::Rationals => FieldDoc { kind: "Q".into(), p: None },
        FieldSpec::PrimeField(p) => FieldDoc { kind: "Fp".into(), p: Some(p) },
    }
}

pub fn field_from_doc(doc: &FieldDoc) -> Result<FieldSpec> {
    match (doc.kind.as_str(), doc.p) {
        ("Q", None) => Ok(FieldSpec::Rationals),
        ("Q", Some(_)) => Err(Error::Parse("field kind \"Q\" takes no modulus p".into())),
        ("Fp", Some(p)) => {
            let f = FieldSpec::PrimeField(p);
            f.validate()?;
            Ok(f)
        }
        ("Fp", None) => Err(Error::Parse("field kind \"Fp\" requires a modulus p".into())),
        (other, _) => Err(Error::Parse(format!(
            "unknown field kind \"{other}\"; expected \"Q\" or \"Fp\""
        ))),
    }
}

/// Parses the `--field` flag: `Q` or `F<p>` (e.g. `F2`, `F7`).
pub fn parse_field_flag(s: &str) -> Result<FieldSpec> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(digits) = t.strip_prefix('F').or_else(|| t.strip_prefix('f')) {
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("cannot parse field \"{s}\"; use Q or F<p>")))?;
        let f = FieldSpec::PrimeField(p);
        f.validate()?;
        return Ok(f);
    }
    Err(Error::InvalidInput(format!("cannot parse field \"{s}\"; use Q or F<p>")))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("document does not parse: {e}")))?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported format version {}; expected {FORMAT_VERSION}",
            doc.version
        )));
    }
    Ok(doc)
}

/// Parses a document and validates its field declaration in one step.
pub fn load_field(text: &str) -> Result<(FieldSpec, Document)> {
    let doc = parse_document(text)?;
    let field = field_from_doc(&doc.field)?;
    Ok((field, doc))
}

pub fn render_document(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization is infallible");
    s.push('\n');
    s
}

/// A fully built object, ready for the verdict commands.
#[derive(Debug, Clone)]
pub enum Built {
    Group(FiniteGroup),
    Action { group: FiniteGroup, gset: GSet },
    Hopf(Arc<HopfData>),
    Coaction(CoactionData),
    Extension(ExtensionData),
    Covering(CoveringData),
    Fibred(FibredCoaction),
    Comodule(ComoduleData),
    Subalgebra { ambient: String, space: Subspace },
}

impl Built {
    pub fn kind(&self) -> &'static str {
        match self {
            Built::Group(_) => "group",
            Built::Action { .. } => "gset",
            Built::Hopf(_) => "hopf",
            Built::Coaction(_) => "coaction",
            Built::Extension(_) => "extension",
            Built::Covering(_) => "covering",
            Built::Fibred(_) => "fibred",
            Built::Comodule(_) => "comodule",
            Built::Subalgebra { .. } => "subalgebra",
        }
    }
}

fn parse_scalars(field: FieldSpec, raw: &[String]) -> Result<Vec<Scalar>> {
    raw.iter().map(|s| field.parse(s)).collect()
}

fn to_linmap(field: FieldSpec, rec: &MapRecord) -> Result<LinMap> {
    let mut triples = Vec::with_capacity(rec.entries.len());
    for (i, j, raw) in &rec.entries {
        triples.push((*i, *j, field.parse(raw)?));
    }
    LinMap::from_triples(field, rec.rows, rec.cols, triples)
}

fn check_dim(what: &str, name: &str, dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidInput(format!("{what} \"{name}\" has dimension 0")));
    }
    if dim > MAX_DIM {
        return Err(Error::InvalidInput(format!(
            "{what} \"{name}\" has dimension {dim}; the supported bound is {MAX_DIM}"
        )));
    }
    Ok(())
}

fn check_table(name: &str, what: &str, table: &[Vec<usize>], rows: usize, cols: usize, bound: usize) -> Result<()> {
    if table.len() != rows || table.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!(
            "{what} of \"{name}\" must be a {rows}x{cols} table"
        )));
    }
    if let Some(bad) = table.iter().flatten().find(|&&x| x >= bound) {
        return Err(Error::InvalidInput(format!(
            "{what} of \"{name}\" contains index {bad}, outside 0..{bound}"
        )));
    }
    Ok(())
}

/// Resolves names to built objects. References form a directed graph;
/// cycles are rejected rather than recursed into.
pub struct Resolver<'a> {
    field: FieldSpec,
    doc: &'a Document,
    memo: BTreeMap<String, Built>,
    visiting: BTreeSet<String>,
}

impl<'a> Resolver<'a> {
    pub fn new(field: FieldSpec, doc: &'a Document) -> Resolver<'a> {
        Resolver { field, doc, memo: BTreeMap::new(), visiting: BTreeSet::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn build(&mut self, name: &str) -> Result<Built> {
        if let Some(b) = self.memo.get(name) {
            return Ok(b.clone());
        }
        let rec = self.doc.objects.get(name).ok_or_else(|| {
            let available: Vec<&str> = self.doc.objects.keys().map(String::as_str).collect();
            Error::InvalidInput(format!(
                "no object named \"{name}\"; available: {}",
                if available.is_empty() { "(none)".into() } else { available.join(", ") }
            ))
        })?;
        if !self.visiting.insert(name.to_string()) {
            return Err(Error::InvalidInput(format!(
                "object references form a cycle through \"{name}\""
            )));
        }
        let built = self.build_record(name, rec);
        self.visiting.remove(name);
        let built = built?;
        self.memo.insert(name.to_string(), built.clone());
        Ok(built)
    }

    fn group(&mut self, name: &str, context: &str) -> Result<FiniteGroup> {
        match self.build(name)? {
            Built::Group(g) => Ok(g),
            other => Err(Error::InvalidInput(format!(
                "{context} references \"{name}\", which is a {}, not a group",
                other.kind()
            ))),
        }
    }

    fn hopf(&mut self, name: &str, context: &str) -> Result<Arc<HopfData>> {
        match self.build(name)? {
            Built::Hopf(h) => Ok(h),
            other => Err(Error::InvalidInput(format!(
                "{context} references \"{name}\", which is a {}, not a hopf record",
                other.kind()
            ))),
        }
    }

    /// The underlying algebra of an object that has one; used to give
    /// subalgebra records an ambient space.
    fn ambient_algebra(&mut self, name: &str, context: &str) -> Result<AlgebraData> {
        match self.build(name)? {
            Built::Hopf(h) => Ok(h.algebra.clone()),
            Built::Coaction(c) => Ok(c.algebra),
            Built::Extension(e) => Ok(e.algebra),
            other => Err(Error::InvalidInput(format!(
                "{context} references \"{name}\", which is a {} without an underlying algebra",
                other.kind()
            ))),
        }
    }

    fn build_record(&mut self, name: &str, rec: &ObjectRecord) -> Result<Built> {
        let field = self.field;
        match rec {
            ObjectRecord::Group { order, mult } => {
                check_dim("group", name, *order)?;
                check_table(name, "multiplication table", mult, *order, *order, *order)?;
                Ok(Built::Group(FiniteGroup::new(name, mult.clone())?))
            }
            ObjectRecord::Gset { group, points, action } => {
                let group = self.group(group, &format!("gset \"{name}\""))?;
                check_dim("gset", name, *points)?;
                check_table(name, "action table", action, *points, group.order, *points)?;
                Ok(Built::Action { group, gset: GSet { points: *points, action: action.clone() } })
            }
            ObjectRecord::Hopf { dim, mult, unit, comult, counit, antipode } => {
                check_dim("hopf algebra", name, *dim)?;
                let algebra =
                    AlgebraData::new(field, *dim, to_linmap(field, mult)?, parse_scalars(field, unit)?)?;
                let coalgebra =
                    CoalgebraData::new(field, *dim, to_linmap(field, comult)?, to_linmap(field, counit)?)?;
                let h = HopfData::new(algebra, coalgebra, to_linmap(field, antipode)?)?;
                Ok(Built::Hopf(Arc::new(h)))
            }
            ObjectRecord::Coaction { hopf, dim, mult, unit, delta } => {
                let hopf = self.hopf(hopf, &format!("coaction \"{name}\""))?;
                check_dim("coaction algebra", name, *dim)?;
                let algebra =
                    AlgebraData::new(field, *dim, to_linmap(field, mult)?, parse_scalars(field, unit)?)?;
                Ok(Built::Coaction(CoactionData::new(algebra, hopf, to_linmap(field, delta)?)?))
            }
            ObjectRecord::Extension { group, dim, mult, unit, automorphisms } => {
                let group = self.group(group, &format!("extension \"{name}\""))?;
                check_dim("extension", name, *dim)?;
                let algebra =
                    AlgebraData::new(field, *dim, to_linmap(field, mult)?, parse_scalars(field, unit)?)?;
                let autos = automorphisms
                    .iter()
                    .map(|m| to_linmap(field, m))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Built::Extension(ExtensionData::new(name, algebra, group, autos)?))
            }
            ObjectRecord::Covering { deck, total, base_points, projection, deck_maps } => {
                let deck = self.group(deck, &format!("covering \"{name}\""))?;
                check_dim("covering", name, *total)?;
                Ok(Built::Covering(CoveringData {
                    name: name.to_string(),
                    total: *total,
                    base_points: *base_points,
                    projection: projection.clone(),
                    deck,
                    deck_maps: deck_maps.clone(),
                }))
            }
            ObjectRecord::Fibred { coaction, base_points, theta } => {
                let inner = match self.build(coaction)? {
                    Built::Coaction(c) => c,
                    other => {
                        return Err(Error::InvalidInput(format!(
                            "fibred \"{name}\" references \"{coaction}\", which is a {}, not a coaction",
                            other.kind()
                        )))
                    }
                };
                Ok(Built::Fibred(FibredCoaction::new(inner, *base_points, to_linmap(field, theta)?)?))
            }
            ObjectRecord::Comodule { hopf, side, dim, coaction } => {
                let hopf = self.hopf(hopf, &format!("comodule \"{name}\""))?;
                check_dim("comodule", name, *dim)?;
                let side = match side {
                    SideTag::Left => Side::Left,
                    SideTag::Right => Side::Right,
                };
                Ok(Built::Comodule(ComoduleData::new(hopf, side, *dim, to_linmap(field, coaction)?)?))
            }
            ObjectRecord::Subalgebra { ambient, basis } => {
                let alg = self.ambient_algebra(ambient, &format!("subalgebra \"{name}\""))?;
                let mut rows = Vec::with_capacity(basis.len());
                for row in basis {
                    if row.len() != alg.dim {
                        return Err(Error::DimensionMismatch(format!(
                            "subalgebra \"{name}\": basis vectors must have length {}",
                            alg.dim
                        )));
                    }
                    rows.push(parse_scalars(field, row)?);
                }
                Ok(Built::Subalgebra {
                    ambient: ambient.clone(),
                    space: Subspace::span(field, alg.dim, &rows),
                })
            }
        }
    }
}

// ---- emission: core objects back to records ----

pub fn map_record(m: &LinMap) -> MapRecord {
    MapRecord {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.triples().map(|(i, j, s)| (i, j, s.to_string())).collect(),
    }
}

pub fn scalar_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

pub fn group_record(g: &FiniteGroup) -> ObjectRecord {
    ObjectRecord::Group { order: g.order, mult: g.mult.clone() }
}

pub fn gset_record(group: &str, gs: &GSet) -> ObjectRecord {
    ObjectRecord::Gset { group: group.into(), points: gs.points, action: gs.action.clone() }
}

pub fn hopf_record(h: &HopfData) -> ObjectRecord {
    ObjectRecord::Hopf {
        dim: h.dim(),
        mult: map_record(h.mult()),
        unit: scalar_strings(h.unit()),
        comult: map_record(h.comult()),
        counit: map_record(h.counit()),
        antipode: map_record(&h.antipode),
    }
}

pub fn coaction_record(hopf: &str, c: &CoactionData) -> ObjectRecord {
    ObjectRecord::Coaction {
        hopf: hopf.into(),
        dim: c.dim(),
        mult: map_record(&c.algebra.mult),
        unit: scalar_strings(&c.algebra.unit),
        delta: map_record(&c.delta),
    }
}

pub fn extension_record(group: &str, e: &ExtensionData) -> ObjectRecord {
    ObjectRecord::Extension {
        group: group.into(),
        dim: e.algebra.dim,
        mult: map_record(&e.algebra.mult),
        unit: scalar_strings(&e.algebra.unit),
        automorphisms: e.automorphisms.iter().map(map_record).collect(),
    }
}

pub fn covering_record(deck: &str, c: &CoveringData) -> ObjectRecord {
    ObjectRecord::Covering {
        deck: deck.into(),
        total: c.total,
        base_points: c.base_points,
        projection: c.projection.clone(),
        deck_maps: c.deck_maps.clone(),
    }
}

pub fn fibred_record(coaction: &str, f: &FibredCoaction) -> ObjectRecord {
    ObjectRecord::Fibred {
        coaction: coaction.into(),
        base_points: f.base_points,
        theta: map_record(&f.theta),
    }
}

pub fn subalgebra_record(ambient: &str, s: &Subspace) -> ObjectRecord {
    ObjectRecord::Subalgebra {
        ambient: ambient.into(),
        basis: s.basis().iter().map(|row| scalar_strings(row)).collect(),
    }
}

/// The key under which `example_document` stores the scalar base of a
/// field-extension example.
pub fn base_key(field: FieldSpec) -> String {
    match field {
        FieldSpec::Rationals => "Q".into(),
        FieldSpec::PrimeField(p) => format!("F{p}"),
    }
}

/// Materializes a named registry example as a self-contained document.
pub fn example_document(name: &str, field: FieldSpec) -> Result<Document> {
    let mut objects = BTreeMap::new();
    match build_example(name, field)? {
        BuiltObject::Hopf(h) => {
            objects.insert(name.to_string(), hopf_record(&h));
        }
        BuiltObject::Action { group, gset } => {
            objects.insert(group.name.clone(), group_record(&group));
            objects.insert(name.to_string(), gset_record(&group.name, &gset));
        }
        BuiltObject::Extension(ext) => {
            let (_, base) = ext.coaction()?;
            objects.insert(ext.group.name.clone(), group_record(&ext.group));
            objects.insert(base_key(field), subalgebra_record(name, &base));
            objects.insert(name.to_string(), extension_record(&ext.group.name, &ext));
        }
        BuiltObject::Covering(cov) => {
            objects.insert(cov.deck.name.clone(), group_record(&cov.deck));
            objects.insert(name.to_string(), covering_record(&cov.deck.name, &cov));
        }
        BuiltObject::Fibred(fc) => {
            let hopf_key = format!("{name}-hopf");
            let total_key = format!("{name}-total");
            objects.insert(hopf_key.clone(), hopf_record(&fc.coaction.hopf));
            objects.insert(total_key.clone(), coaction_record(&hopf_key, &fc.coaction));
            objects.insert(name.to_string(), fibred_record(&total_key, &fc));
        }
    }
    Ok(Document { version: FORMAT_VERSION, field: field_doc(field), objects })
}

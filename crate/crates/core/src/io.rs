//! Self-describing JSON documents for the five object kinds.
//!
//! Every document carries a top-level `kind`. Degrees are written as
//! quantale element labels. A quantale is referenced either by fixture id
//! (a string) or inline by its tables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::approx::{ApproxRelation, ScottMap};
use crate::check::{CheckResult, Report};
use crate::closure::{ClosureOperator, ClosureSpace};
use crate::error::{Error, Result};
use crate::fixtures::{fixture, FIXTURE_IDS};
use crate::limits::Limits;
use crate::lsubset::{count_lsubsets, rank_of, subset_at_rank};
use crate::order::{is_scott_continuous, validate_lorder, LOrderedSet};
use crate::quantale::{check_residuation_laws, validate_quantale, Elem, FiniteQuantale, QuantaleDef};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleSpec {
    Fixture(String),
    Inline(QuantaleDef),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleDoc {
    Fixture { fixture: String },
    Inline(QuantaleDef),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LOrderedSetDoc {
    pub quantale: QuantaleSpec,
    pub points: Vec<String>,
    /// `degrees[i][j] = e(points[i], points[j])`.
    pub degrees: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub arg: Vec<String>,
    pub closure: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum OperatorDoc {
    /// One point closure `⟨u_x⟩` per point, in carrier order.
    Point { closures: Vec<Vec<String>> },
    /// `⟨A⟩` for every `A ∈ L^X`.
    Table { rows: Vec<TableRow> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSpaceDoc {
    pub quantale: QuantaleSpec,
    pub points: Vec<String>,
    pub operator: OperatorDoc,
}

/// A closure space given by workspace name or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Name(String),
    Inline(Box<ClosureSpaceDoc>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub source: SpaceRef,
    pub target: SpaceRef,
    /// `(x, y, degree)`; omitted pairs are 0.
    pub entries: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub from: Vec<String>,
    pub to: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScottMapDoc {
    pub source: SpaceRef,
    pub target: SpaceRef,
    pub images: Vec<MapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Document {
    #[serde(rename = "quantale")]
    Quantale(QuantaleDoc),
    #[serde(rename = "lordered-set")]
    LOrderedSet(LOrderedSetDoc),
    #[serde(rename = "closure-space")]
    ClosureSpace(ClosureSpaceDoc),
    #[serde(rename = "relation")]
    Relation(RelationDoc),
    #[serde(rename = "scott-map")]
    ScottMap(ScottMapDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Quantale(_) => "quantale",
            Document::LOrderedSet(_) => "lordered-set",
            Document::ClosureSpace(_) => "closure-space",
            Document::Relation(_) => "relation",
            Document::ScottMap(_) => "scott-map",
        }
    }

    pub fn parse(text: &str) -> Result<Document> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }
}

/// A loaded object.
#[derive(Debug, Clone)]
pub enum Object {
    Quantale(Arc<FiniteQuantale>),
    LOrderedSet(Arc<LOrderedSet>),
    ClosureSpace(Arc<ClosureSpace>),
    Relation(ApproxRelation),
    ScottMap(ScottMap),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Quantale(_) => "quantale",
            Object::LOrderedSet(_) => "lordered-set",
            Object::ClosureSpace(_) => "closure-space",
            Object::Relation(_) => "relation",
            Object::ScottMap(_) => "scott-map",
        }
    }
}

/// Looks up closure spaces referenced by name.
pub trait Resolver {
    fn space(&self, name: &str) -> Result<Arc<ClosureSpace>>;
}

/// Resolver for documents that only use inline spaces.
pub struct NoNames;

impl Resolver for NoNames {
    fn space(&self, name: &str) -> Result<Arc<ClosureSpace>> {
        Err(Error::UnknownLabel {
            label: name.to_string(),
            context: "space reference".into(),
        })
    }
}

pub fn resolve_quantale(spec: &QuantaleSpec, limits: &Limits) -> Result<Arc<FiniteQuantale>> {
    Ok(Arc::new(match spec {
        QuantaleSpec::Fixture(id) => fixture(id)?,
        QuantaleSpec::Inline(def) => FiniteQuantale::from_def_with(def, limits)?,
    }))
}

/// Fixture id when `q` is a catalog quantale, otherwise its tables.
pub fn quantale_spec(q: &FiniteQuantale) -> QuantaleSpec {
    let n = q.size();
    let mut ids: Vec<String> = FIXTURE_IDS.iter().map(|s| s.to_string()).collect();
    ids.push(format!("lukasiewicz-{n}"));
    ids.push(format!("goedel-{n}"));
    for id in ids {
        if let Ok(f) = fixture(&id) {
            if f.same_as(q) {
                return QuantaleSpec::Fixture(id);
            }
        }
    }
    QuantaleSpec::Inline(q.to_def())
}

fn elems(q: &FiniteQuantale, labels: &[String], n: usize, what: &str) -> Result<Vec<Elem>> {
    if labels.len() != n {
        return Err(Error::CarrierMismatch(format!("{what} has {} entries, expected {n}", labels.len())));
    }
    labels.iter().map(|l| q.elem(l)).collect()
}

fn names(q: &FiniteQuantale, v: &[Elem]) -> Vec<String> {
    v.iter().map(|&e| q.label(e).to_string()).collect()
}

fn check_points(points: &[String]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::structural(format!("duplicate point label {p}")));
        }
    }
    Ok(())
}

fn lorder_parts(doc: &LOrderedSetDoc, limits: &Limits) -> Result<(Arc<FiniteQuantale>, Vec<Elem>)> {
    let q = resolve_quantale(&doc.quantale, limits)?;
    check_points(&doc.points)?;
    let n = doc.points.len();
    if doc.degrees.len() != n {
        return Err(Error::CarrierMismatch(format!("{} degree rows for {n} points", doc.degrees.len())));
    }
    let mut e = Vec::with_capacity(n * n);
    for row in &doc.degrees {
        e.extend(elems(&q, row, n, "degree row")?);
    }
    Ok((q, e))
}

pub fn build_space(doc: &ClosureSpaceDoc, limits: &Limits) -> Result<ClosureSpace> {
    let q = resolve_quantale(&doc.quantale, limits)?;
    check_points(&doc.points)?;
    let n = doc.points.len();
    match &doc.operator {
        OperatorDoc::Point { closures } => {
            if closures.len() != n {
                return Err(Error::CarrierMismatch(format!("{} point closures for {n} points", closures.len())));
            }
            let c = closures.iter().map(|row| elems(&q, row, n, "point closure")).collect::<Result<_>>()?;
            Ok(ClosureSpace::point_generated(q, doc.points.clone(), c)?.with_limits(*limits))
        }
        OperatorDoc::Table { rows } => {
            let count = count_lsubsets(&q, n, limits)?;
            let mut table: Vec<Option<Vec<Elem>>> = vec![None; count as usize];
            for row in rows {
                let arg = elems(&q, &row.arg, n, "table argument")?;
                let r = rank_of(q.size(), &arg) as usize;
                if table[r].is_some() {
                    return Err(Error::structural(format!("table lists [{}] twice", row.arg.join(","))));
                }
                table[r] = Some(elems(&q, &row.closure, n, "table value")?);
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(r, v)| {
                    v.ok_or_else(|| {
                        let arg = subset_at_rank(q.size(), n, r as u64);
                        Error::structural(format!("table misses [{}]", names(&q, &arg).join(",")))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            ClosureSpace::table_backed(q, doc.points.clone(), table, limits)
        }
    }
}

fn resolve_space(r: &SpaceRef, resolver: &dyn Resolver, limits: &Limits) -> Result<Arc<ClosureSpace>> {
    match r {
        SpaceRef::Name(n) => resolver.space(n),
        SpaceRef::Inline(doc) => Ok(Arc::new(build_space(doc, limits)?)),
    }
}

fn relation_table(doc: &RelationDoc, xs: &ClosureSpace, ys: &ClosureSpace) -> Result<Vec<Elem>> {
    let q = xs.quantale();
    let m = ys.size();
    let mut theta = vec![q.bottom(); xs.size() * m];
    let mut seen = vec![false; theta.len()];
    for (x, y, d) in &doc.entries {
        let k = xs.point(x)? * m + ys.point(y)?;
        if seen[k] {
            return Err(Error::structural(format!("relation lists ({x}, {y}) twice")));
        }
        seen[k] = true;
        theta[k] = q.elem(d)?;
    }
    Ok(theta)
}

/// Image indices of a map document, or the directed-closedness violation of
/// the first listed set that is not in `𝔠`.
fn map_images(doc: &ScottMapDoc, xs: &ClosureSpace, ys: &ClosureSpace) -> Result<Result<Vec<usize>, CheckResult>> {
    let q = xs.quantale();
    let cx = xs.dir_closed_members()?;
    let cy = ys.dir_closed_members()?;
    let mut images: Vec<Option<usize>> = vec![None; cx.len()];
    let find = |s: &ClosureSpace, members: &[Vec<Elem>], v: &[String], side: &str| -> Result<Result<usize, CheckResult>> {
        let e = elems(q, v, s.size(), "map entry")?;
        if let Ok(i) = members.binary_search(&e) {
            return Ok(Ok(i));
        }
        let dc = s.directed_closed_values(&e);
        if !dc.passed {
            return Ok(Err(dc));
        }
        Err(Error::UnknownLabel {
            label: format!("[{}]", v.join(",")),
            context: format!("𝔠 of the {side} space"),
        })
    };
    for entry in &doc.images {
        let i = match find(xs, &cx, &entry.from, "source")? {
            Ok(i) => i,
            Err(c) => return Ok(Err(c)),
        };
        if images[i].is_some() {
            return Err(Error::structural(format!("map lists [{}] twice", entry.from.join(","))));
        }
        images[i] = match find(ys, &cy, &entry.to, "target")? {
            Ok(j) => Some(j),
            Err(c) => return Ok(Err(c)),
        };
    }
    images
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| Error::structural(format!("map misses [{}]", names(q, &cx[i]).join(","))))
        })
        .collect::<Result<Vec<_>>>()
        .map(Ok)
}

/// Builds the object, refusing documents whose axioms fail.
pub fn build(doc: &Document, resolver: &dyn Resolver, limits: &Limits) -> Result<Object> {
    Ok(match doc {
        Document::Quantale(QuantaleDoc::Fixture { fixture: id }) => Object::Quantale(Arc::new(fixture(id)?)),
        Document::Quantale(QuantaleDoc::Inline(def)) => {
            Object::Quantale(Arc::new(FiniteQuantale::from_def_with(def, limits)?))
        }
        Document::LOrderedSet(d) => {
            let (q, e) = lorder_parts(d, limits)?;
            Object::LOrderedSet(Arc::new(LOrderedSet::new(q, d.points.clone(), e)?.with_limits(*limits)))
        }
        Document::ClosureSpace(d) => {
            let s = build_space(d, limits)?;
            let g = s.validate_generalized()?;
            if !g.passed {
                return Err(Error::Axiom(g.to_string()));
            }
            Object::ClosureSpace(Arc::new(s))
        }
        Document::Relation(d) => {
            let xs = resolve_space(&d.source, resolver, limits)?;
            let ys = resolve_space(&d.target, resolver, limits)?;
            let theta = relation_table(d, &xs, &ys)?;
            let r = ApproxRelation::new(xs, ys, theta)?;
            let v = r.validate()?;
            if !v.passed {
                return Err(Error::Axiom(v.to_string()));
            }
            Object::Relation(r)
        }
        Document::ScottMap(d) => {
            let xs = resolve_space(&d.source, resolver, limits)?;
            let ys = resolve_space(&d.target, resolver, limits)?;
            let images = map_images(d, &xs, &ys)?.map_err(|c| Error::Axiom(c.to_string()))?;
            Object::ScottMap(ScottMap::new(xs, ys, images)?)
        }
    })
}

/// Axiom checks that a document must pass, and informational properties.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub kind: String,
    pub required: Report,
    pub info: Report,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.required.all_passed()
    }
}

/// Checks the axioms of a document without building a trusted object.
pub fn validate_document(doc: &Document, resolver: &dyn Resolver, limits: &Limits) -> Result<Validation> {
    let mut v = Validation {
        kind: doc.kind().to_string(),
        ..Validation::default()
    };
    match doc {
        Document::Quantale(qd) => {
            let def = match qd {
                QuantaleDoc::Fixture { fixture: id } => crate::fixtures::fixture_def(id)?,
                QuantaleDoc::Inline(def) => def.clone(),
            };
            v.required = validate_quantale(&def, limits)?;
            if v.required.all_passed() {
                let q = FiniteQuantale::from_def_with(&def, limits)?;
                v.required.extend(check_residuation_laws(&q));
                v.info.push(CheckResult::from_bool("integral", q.is_integral(), "unit is not top"));
            }
        }
        Document::LOrderedSet(d) => {
            let (q, e) = lorder_parts(d, limits)?;
            v.required = validate_lorder(&q, &d.points, &e)?;
            if v.required.all_passed() {
                let p = LOrderedSet::new(q, d.points.clone(), e)?.with_limits(*limits);
                v.info.push(p.is_ldcpo()?);
            }
        }
        Document::ClosureSpace(d) => {
            let s = build_space(d, limits)?;
            let g = s.validate_generalized()?;
            v.required.push(g.clone());
            if g.passed {
                v.info.push(s.is_interpolative()?);
                v.info.push(s.is_l_closure_space()?);
            }
        }
        Document::Relation(d) => {
            let xs = resolve_space(&d.source, resolver, limits)?;
            let ys = resolve_space(&d.target, resolver, limits)?;
            let theta = relation_table(d, &xs, &ys)?;
            v.required.push(ApproxRelation::new(xs, ys, theta)?.validate()?);
        }
        Document::ScottMap(d) => {
            let xs = resolve_space(&d.source, resolver, limits)?;
            let ys = resolve_space(&d.target, resolver, limits)?;
            match map_images(d, &xs, &ys)? {
                Ok(images) => {
                    let cx = xs.dir_closed_sets()?;
                    let cy = ys.dir_closed_sets()?;
                    v.required.push(is_scott_continuous(&images, &cx, &cy)?);
                }
                Err(c) => v.required.push(c),
            }
        }
    }
    Ok(v)
}

pub fn lordered_doc(p: &LOrderedSet) -> LOrderedSetDoc {
    let q = p.quantale();
    let n = p.size();
    LOrderedSetDoc {
        quantale: quantale_spec(q),
        points: p.labels().to_vec(),
        degrees: (0..n).map(|x| names(q, &p.up_values(x))).collect(),
    }
}

pub fn space_doc(s: &ClosureSpace) -> ClosureSpaceDoc {
    let q = s.quantale();
    let n = s.size();
    let operator = match s.operator() {
        ClosureOperator::PointGenerated { closures } => OperatorDoc::Point {
            closures: closures.iter().map(|c| names(q, c)).collect(),
        },
        ClosureOperator::TableBacked { table } => OperatorDoc::Table {
            rows: table
                .iter()
                .enumerate()
                .map(|(r, c)| TableRow {
                    arg: names(q, &subset_at_rank(q.size(), n, r as u64)),
                    closure: names(q, c),
                })
                .collect(),
        },
    };
    ClosureSpaceDoc {
        quantale: quantale_spec(q),
        points: s.labels().to_vec(),
        operator,
    }
}

fn space_ref(s: &ClosureSpace, name: Option<&str>) -> SpaceRef {
    match name {
        Some(n) => SpaceRef::Name(n.to_string()),
        None => SpaceRef::Inline(Box::new(space_doc(s))),
    }
}

/// Serializes an object; spaces referenced by relations and maps are named
/// when `names` supplies `(source, target)`, otherwise inlined.
pub fn to_document(obj: &Object, space_names: Option<(&str, &str)>) -> Result<Document> {
    let (sn, tn) = match space_names {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    Ok(match obj {
        Object::Quantale(q) => Document::Quantale(match quantale_spec(q) {
            QuantaleSpec::Fixture(id) => QuantaleDoc::Fixture { fixture: id },
            QuantaleSpec::Inline(def) => QuantaleDoc::Inline(def),
        }),
        Object::LOrderedSet(p) => Document::LOrderedSet(lordered_doc(p)),
        Object::ClosureSpace(s) => Document::ClosureSpace(space_doc(s)),
        Object::Relation(r) => {
            let q = r.quantale();
            let (xs, ys) = (r.source(), r.target());
            let mut entries = Vec::new();
            for x in 0..xs.size() {
                for y in 0..ys.size() {
                    let d = r.get(x, y);
                    if d != q.bottom() {
                        entries.push((xs.labels()[x].clone(), ys.labels()[y].clone(), q.label(d).to_string()));
                    }
                }
            }
            Document::Relation(RelationDoc {
                source: space_ref(xs, sn),
                target: space_ref(ys, tn),
                entries,
            })
        }
        Object::ScottMap(m) => {
            let q = m.source().quantale();
            let cx = m.source().dir_closed_members()?;
            let cy = m.target().dir_closed_members()?;
            Document::ScottMap(ScottMapDoc {
                source: space_ref(m.source(), sn),
                target: space_ref(m.target(), tn),
                images: m
                    .images()
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| MapEntry {
                        from: names(q, &cx[i]),
                        to: names(q, &cy[j]),
                    })
                    .collect(),
            })
        }
    })
}

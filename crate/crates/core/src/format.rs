//! The JSON presentation format: parsing with paths, canonical emission.
//!
//! See `docs/file-format.md` for the schema.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bimodule::Bimodule;
use crate::category::{basis_of, DgCategory};
use crate::comma::CommaObject;
use crate::dg_kmod::DgModule;
use crate::error::{Error, Result};
use crate::functor::DgFunctor;
use crate::linalg::{Dims, Field, GradedMap, GradedModule, Matrix, Scalar};
use crate::triangular::{build_lambda_unchecked, Lambda};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

type RawMatrix = Vec<Vec<Value>>;
type RawBlocks = BTreeMap<i64, RawMatrix>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    dims: BTreeMap<i64, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    differential: RawBlocks,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHom {
    source: String,
    target: String,
    dims: BTreeMap<i64, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    differential: RawBlocks,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComposite {
    source: String,
    middle: String,
    target: String,
    g: (i64, usize),
    f: (i64, usize),
    value: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    name: String,
    objects: Vec<String>,
    #[serde(default)]
    homs: Vec<RawHom>,
    #[serde(default)]
    identities: BTreeMap<String, Vec<Value>>,
    #[serde(default)]
    composition: Vec<RawComposite>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    source: String,
    target: String,
    morphism: (i64, usize),
    map: RawBlocks,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    over: Option<String>,
    #[serde(default)]
    values: BTreeMap<String, RawComplex>,
    #[serde(default)]
    action: Vec<RawAction>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBimoduleValue {
    u: String,
    t: String,
    dims: BTreeMap<i64, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    differential: RawBlocks,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSidedAction {
    fixed: String,
    source: String,
    target: String,
    morphism: (i64, usize),
    map: RawBlocks,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBimodule {
    name: String,
    left: String,
    right: String,
    #[serde(default)]
    values: Vec<RawBimoduleValue>,
    #[serde(default)]
    left_action: Vec<RawSidedAction>,
    #[serde(default)]
    right_action: Vec<RawSidedAction>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPairing {
    t: String,
    u: String,
    x: (i64, usize),
    m: (i64, usize),
    value: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComma {
    name: String,
    bimodule: String,
    a: String,
    b: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    degree: i64,
    #[serde(default)]
    pairing: Vec<RawPairing>,
}

fn is_zero(n: &i64) -> bool {
    *n == 0
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    name: String,
    bimodule: String,
    #[serde(default)]
    comma_objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    lambda_modules: Vec<RawModule>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    representables: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    field: RawField,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    categories: Vec<RawCategory>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bimodules: Vec<RawBimodule>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    modules: Vec<RawModule>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    comma_objects: Vec<RawComma>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    fixtures: Vec<RawFixture>,
}

/// A bimodule `M ∈ DgMod(U ⊗ T^op)` with the names of `U` and `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleEntry {
    pub u: String,
    pub t: String,
    pub bimodule: Bimodule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleEntry {
    pub over: String,
    pub module: DgFunctor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommaEntry {
    pub bimodule: String,
    pub object: CommaObject,
}

/// A bimodule together with the comma objects and Λ-modules to test on it.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub bimodule: String,
    pub comma_objects: Vec<String>,
    pub lambda_modules: Vec<DgFunctor>,
    pub representables: Vec<String>,
    /// Built without validation, for resolving Λ-module data.
    pub lambda: Lambda,
}

/// A parsed presentation file.
#[derive(Clone, Debug)]
pub struct Document {
    pub field: Field,
    pub categories: Vec<DgCategory>,
    pub bimodules: Vec<BimoduleEntry>,
    pub modules: Vec<ModuleEntry>,
    pub comma_objects: Vec<CommaEntry>,
    pub fixtures: Vec<Fixture>,
}

fn perr(path: impl Into<String>, message: impl std::fmt::Display) -> Error {
    Error::Parse { path: path.into(), message: message.to_string() }
}

fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse { path: p, message } if p.is_empty() => perr(path, message),
        Error::Parse { .. } => e,
        other => perr(path, other),
    }
}

fn parse_scalar(field: Field, v: &Value, path: &str) -> Result<Scalar> {
    match (field, v) {
        (Field::Rationals, Value::String(s)) => field.parse_scalar(s).map_err(at(path)),
        (Field::Rationals, Value::Number(n)) => match n.as_i64() {
            Some(i) => Ok(Scalar::Rational(BigInt::from(i).into())),
            None => Err(perr(path, format!("{n} is not an integer"))),
        },
        (Field::Prime(p), Value::Number(n)) => match n.as_u64() {
            Some(i) if i < p => Ok(field.from_i64(i as i64)),
            _ => Err(perr(path, format!("{n} is not an integer in [0, {p})"))),
        },
        (Field::Rationals, _) => Err(perr(path, "expected a rational \"p/q\" string")),
        (Field::Prime(p), _) => Err(perr(path, format!("expected an integer in [0, {p})"))),
    }
}

fn emit_scalar(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_string()),
        Scalar::Modular { value, .. } => Value::from(*value),
    }
}

fn parse_vector(field: Field, v: &[Value], path: &str) -> Result<Vec<Scalar>> {
    v.iter().enumerate().map(|(i, s)| parse_scalar(field, s, &format!("{path}[{i}]"))).collect()
}

fn emit_vector(v: &[Scalar]) -> Vec<Value> {
    v.iter().map(emit_scalar).collect()
}

fn parse_matrix(field: Field, m: &RawMatrix, (rows, cols): (usize, usize), path: &str) -> Result<Matrix> {
    if m.len() != rows {
        return Err(perr(path, format!("expected {rows} rows, found {}", m.len())));
    }
    let mut out = Matrix::zeros(field, rows, cols);
    for (r, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(perr(format!("{path}[{r}]"), format!("expected {cols} columns, found {}", row.len())));
        }
        for (c, v) in row.iter().enumerate() {
            out.set(r, c, parse_scalar(field, v, &format!("{path}[{r}][{c}]"))?);
        }
    }
    Ok(out)
}

fn emit_matrix(m: &Matrix) -> RawMatrix {
    (0..m.rows()).map(|r| emit_vector(m.row(r))).collect()
}

fn parse_blocks(field: Field, degree: i64, source: &Dims, target: &Dims, raw: &RawBlocks, path: &str) -> Result<GradedMap> {
    let mut map = GradedMap::zero(field, degree, source, target);
    for (&i, m) in raw {
        let p = format!("{path}.{i}");
        let shape = map.block_shape(i);
        let block = parse_matrix(field, m, shape, &p)?;
        map.set_block(i, block).map_err(at(&p))?;
    }
    Ok(map)
}

fn emit_blocks(map: &GradedMap) -> RawBlocks {
    map.blocks().filter(|(_, b)| !b.is_zero()).map(|(i, b)| (i, emit_matrix(b))).collect()
}

fn parse_dims(raw: &BTreeMap<i64, usize>) -> Dims {
    raw.iter().map(|(&k, &v)| (k, v)).collect()
}

fn parse_complex(field: Field, dims: &BTreeMap<i64, usize>, d: &RawBlocks, path: &str) -> Result<DgModule> {
    let dims = parse_dims(dims);
    let d = parse_blocks(field, 1, &dims, &dims, d, &format!("{path}.differential"))?;
    DgModule::new(GradedModule::new(dims), d).map_err(at(path))
}

fn emit_dims(dims: &Dims) -> BTreeMap<i64, usize> {
    dims.as_map().clone()
}

fn index_of(names: &[String], name: &str, kind: &'static str, path: &str) -> Result<usize> {
    names.iter().position(|n| n == name).ok_or_else(|| perr(path, format!("unknown {kind} `{name}`")))
}

fn parse_category(field: Field, raw: &RawCategory, path: &str) -> Result<DgCategory> {
    let mut c = DgCategory::new(raw.name.clone(), field, raw.objects.clone()).map_err(at(path))?;
    let names = raw.objects.clone();
    let obj = |name: &str, p: &str| index_of(&names, name, "object", p);
    let mut seen = std::collections::BTreeSet::new();
    for (k, h) in raw.homs.iter().enumerate() {
        let p = format!("{path}.homs[{k}]");
        let (x, y) = (obj(&h.source, &p)?, obj(&h.target, &p)?);
        if !seen.insert((x, y)) {
            return Err(perr(&p, "duplicate hom entry"));
        }
        let m = parse_complex(field, &h.dims, &h.differential, &p)?;
        c.set_hom(x, y, m).map_err(at(&p))?;
    }
    // set_hom resets identities and compositions, so these come after all homs
    for (name, v) in &raw.identities {
        let p = format!("{path}.identities.{name}");
        let x = obj(name, &p)?;
        c.set_identity(x, parse_vector(field, v, &p)?).map_err(at(&p))?;
    }
    for (x, name) in names.iter().enumerate() {
        if !raw.identities.contains_key(name) && c.hom(x, x).dims().get(0) > 0 {
            return Err(perr(format!("{path}.identities"), format!("missing identity of `{name}`")));
        }
    }
    for (k, e) in raw.composition.iter().enumerate() {
        let p = format!("{path}.composition[{k}]");
        let (x, y, z) = (obj(&e.source, &p)?, obj(&e.middle, &p)?, obj(&e.target, &p)?);
        let v = parse_vector(field, &e.value, &format!("{p}.value"))?;
        c.set_composite((x, y, z), e.g, e.f, v).map_err(at(&p))?;
    }
    Ok(c)
}

fn emit_category(c: &DgCategory) -> RawCategory {
    let names = c.objects();
    let n = c.len();
    let mut homs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let h = c.hom(x, y);
            if !h.dims().is_zero() {
                homs.push(RawHom {
                    source: names[x].clone(),
                    target: names[y].clone(),
                    dims: emit_dims(h.dims()),
                    differential: emit_blocks(&h.d),
                });
            }
        }
    }
    let identities = (0..n).map(|x| (names[x].clone(), emit_vector(c.identity(x)))).filter(|(_, v)| !v.is_empty()).collect();
    let mut composition = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for g in basis_of(c.hom(y, z).dims()) {
                    for f in basis_of(c.hom(x, y).dims()) {
                        let v = c.compose_basis((x, y, z), g, f);
                        if v.iter().any(|s| !s.is_zero()) {
                            composition.push(RawComposite {
                                source: names[x].clone(),
                                middle: names[y].clone(),
                                target: names[z].clone(),
                                g,
                                f,
                                value: emit_vector(&v),
                            });
                        }
                    }
                }
            }
        }
    }
    RawCategory { name: c.name.clone(), objects: names.to_vec(), homs, identities, composition }
}

fn parse_module(field: Field, base: &DgCategory, raw: &RawModule, path: &str) -> Result<DgFunctor> {
    let names = base.objects();
    let mut values = vec![DgModule::zero(field); base.len()];
    for (name, v) in &raw.values {
        let p = format!("{path}.values.{name}");
        values[index_of(names, name, "object", &p)?] = parse_complex(field, &v.dims, &v.differential, &p)?;
    }
    let mut m = DgFunctor::new(raw.name.clone(), base, values).map_err(at(path))?;
    for (k, a) in raw.action.iter().enumerate() {
        let p = format!("{path}.action[{k}]");
        let (x, y) = (index_of(names, &a.source, "object", &p)?, index_of(names, &a.target, "object", &p)?);
        let map = parse_blocks(field, a.morphism.0, m.value(x).dims(), m.value(y).dims(), &a.map, &format!("{p}.map"))?;
        m.set_action(x, y, a.morphism, &map).map_err(at(&p))?;
    }
    Ok(m)
}

fn emit_module(base: &DgCategory, m: &DgFunctor, over: Option<String>) -> RawModule {
    let names = base.objects();
    let values = (0..m.len())
        .filter(|&x| !m.value(x).dims().is_zero())
        .map(|x| (names[x].clone(), RawComplex { dims: emit_dims(m.value(x).dims()), differential: emit_blocks(&m.value(x).d) }))
        .collect();
    let mut action = Vec::new();
    for x in 0..m.len() {
        for y in 0..m.len() {
            for b in basis_of(base.hom(x, y).dims()) {
                let map = m.act_basis(x, y, b);
                if !map.is_zero() {
                    action.push(RawAction { source: names[x].clone(), target: names[y].clone(), morphism: b, map: emit_blocks(&map) });
                }
            }
        }
    }
    RawModule { name: m.name.clone(), over, values, action }
}

fn parse_bimodule(field: Field, u: &DgCategory, t: &DgCategory, raw: &RawBimodule, path: &str) -> Result<Bimodule> {
    let mut values = vec![vec![DgModule::zero(field); t.len()]; u.len()];
    for (k, v) in raw.values.iter().enumerate() {
        let p = format!("{path}.values[{k}]");
        let (ui, ti) = (index_of(u.objects(), &v.u, "object", &p)?, index_of(t.objects(), &v.t, "object", &p)?);
        values[ui][ti] = parse_complex(field, &v.dims, &v.differential, &p)?;
    }
    let mut m = Bimodule::new(raw.name.clone(), u, t, values).map_err(at(path))?;
    for (k, a) in raw.left_action.iter().enumerate() {
        let p = format!("{path}.left_action[{k}]");
        let ti = index_of(t.objects(), &a.fixed, "object", &p)?;
        let (u1, u2) = (index_of(u.objects(), &a.source, "object", &p)?, index_of(u.objects(), &a.target, "object", &p)?);
        let map = parse_blocks(field, a.morphism.0, m.value(u1, ti).dims(), m.value(u2, ti).dims(), &a.map, &format!("{p}.map"))?;
        m.set_left(ti, u1, u2, a.morphism, &map).map_err(at(&p))?;
    }
    for (k, a) in raw.right_action.iter().enumerate() {
        let p = format!("{path}.right_action[{k}]");
        let ui = index_of(u.objects(), &a.fixed, "object", &p)?;
        let (t1, t2) = (index_of(t.objects(), &a.source, "object", &p)?, index_of(t.objects(), &a.target, "object", &p)?);
        let map = parse_blocks(field, a.morphism.0, m.value(ui, t2).dims(), m.value(ui, t1).dims(), &a.map, &format!("{p}.map"))?;
        m.set_right(ui, t1, t2, a.morphism, &map).map_err(at(&p))?;
    }
    Ok(m)
}

fn emit_bimodule(e: &BimoduleEntry, u: &DgCategory, t: &DgCategory) -> RawBimodule {
    let m = &e.bimodule;
    let mut values = Vec::new();
    for ui in 0..u.len() {
        for ti in 0..t.len() {
            let v = m.value(ui, ti);
            if !v.dims().is_zero() {
                values.push(RawBimoduleValue {
                    u: u.objects()[ui].clone(),
                    t: t.objects()[ti].clone(),
                    dims: emit_dims(v.dims()),
                    differential: emit_blocks(&v.d),
                });
            }
        }
    }
    let mut left_action = Vec::new();
    for ti in 0..t.len() {
        for u1 in 0..u.len() {
            for u2 in 0..u.len() {
                for b in basis_of(u.hom(u1, u2).dims()) {
                    let map = m.left_action_basis(ti, u1, u2, b);
                    if !map.is_zero() {
                        left_action.push(RawSidedAction {
                            fixed: t.objects()[ti].clone(),
                            source: u.objects()[u1].clone(),
                            target: u.objects()[u2].clone(),
                            morphism: b,
                            map: emit_blocks(&map),
                        });
                    }
                }
            }
        }
    }
    let mut right_action = Vec::new();
    for ui in 0..u.len() {
        for t1 in 0..t.len() {
            for t2 in 0..t.len() {
                for b in basis_of(t.hom(t1, t2).dims()) {
                    let map = m.right_action_basis(ui, t1, t2, b);
                    if !map.is_zero() {
                        right_action.push(RawSidedAction {
                            fixed: u.objects()[ui].clone(),
                            source: t.objects()[t1].clone(),
                            target: t.objects()[t2].clone(),
                            morphism: b,
                            map: emit_blocks(&map),
                        });
                    }
                }
            }
        }
    }
    RawBimodule { name: m.name.clone(), left: e.u.clone(), right: e.t.clone(), values, left_action, right_action }
}

impl Document {
    /// An empty document over `field`.
    pub fn new(field: Field) -> Self {
        Document { field, categories: Vec::new(), bimodules: Vec::new(), modules: Vec::new(), comma_objects: Vec::new(), fixtures: Vec::new() }
    }

    pub fn category(&self, name: &str) -> Result<&DgCategory> {
        self.categories.iter().find(|c| c.name == name).ok_or_else(|| Error::UnknownName { kind: "category", name: name.into() })
    }

    pub fn bimodule(&self, name: &str) -> Result<&BimoduleEntry> {
        self.bimodules.iter().find(|b| b.bimodule.name == name).ok_or_else(|| Error::UnknownName { kind: "bimodule", name: name.into() })
    }

    pub fn module(&self, name: &str) -> Result<&ModuleEntry> {
        self.modules.iter().find(|m| m.module.name == name).ok_or_else(|| Error::UnknownName { kind: "module", name: name.into() })
    }

    pub fn comma_object(&self, name: &str) -> Result<&CommaEntry> {
        self.comma_objects.iter().find(|c| c.object.name == name).ok_or_else(|| Error::UnknownName { kind: "comma object", name: name.into() })
    }

    /// `(T, U, M)` for a named bimodule.
    pub fn triple(&self, bimodule: &str) -> Result<(&DgCategory, &DgCategory, &Bimodule)> {
        let e = self.bimodule(bimodule)?;
        Ok((self.category(&e.t)?, self.category(&e.u)?, &e.bimodule))
    }

    /// A document holding `T`, `U`, `M`, the comma objects (with their
    /// modules, renamed `<object>.A` and `<object>.B`) and one fixture.
    pub fn single_fixture(
        name: &str,
        (t, u, m): (&DgCategory, &DgCategory, &Bimodule),
        objects: &[CommaObject],
        lambda_modules: Vec<DgFunctor>,
        representables: Vec<String>,
    ) -> Result<Self> {
        let mut doc = Document::new(t.field());
        doc.categories.push(t.clone());
        if u.name != t.name {
            doc.categories.push(u.clone());
        } else if u != t {
            return Err(Error::Structural(format!("two different categories named `{}`", t.name)));
        }
        doc.bimodules.push(BimoduleEntry { u: u.name.clone(), t: t.name.clone(), bimodule: m.clone() });
        let mut names = Vec::new();
        for o in objects {
            let mut o = o.clone();
            o.a.name = format!("{}.A", o.name);
            o.b.name = format!("{}.B", o.name);
            doc.modules.push(ModuleEntry { over: t.name.clone(), module: o.a.clone() });
            doc.modules.push(ModuleEntry { over: u.name.clone(), module: o.b.clone() });
            names.push(o.name.clone());
            doc.comma_objects.push(CommaEntry { bimodule: m.name.clone(), object: o });
        }
        doc.add_fixture(name, &m.name, names, lambda_modules, representables)?;
        Ok(doc)
    }

    /// Adds a fixture, building its Λ without validation.
    pub fn add_fixture(&mut self, name: &str, bimodule: &str, comma_objects: Vec<String>, lambda_modules: Vec<DgFunctor>, representables: Vec<String>) -> Result<()> {
        let (t, u, m) = self.triple(bimodule)?;
        let lambda = build_lambda_unchecked(t, u, m)?;
        self.fixtures.push(Fixture { name: name.into(), bimodule: bimodule.into(), comma_objects, lambda_modules, representables, lambda });
        Ok(())
    }
}

/// Parses a presentation file; every error carries a path into the document.
pub fn parse(text: &str) -> Result<Document> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        perr(if path == "." { String::new() } else { path }, e.into_inner())
    })?;
    let field = match &raw.field {
        RawField::Name(s) if s == "Q" => Field::Rationals,
        RawField::Name(s) => return Err(perr("field", format!("unknown field `{s}`; expected \"Q\" or {{\"Fp\": p}}"))),
        RawField::Prime { fp } => Field::prime(*fp).map_err(at("field"))?,
    };
    let mut doc = Document::new(field);
    for (k, c) in raw.categories.iter().enumerate() {
        let p = format!("categories[{k}]");
        if doc.category(&c.name).is_ok() {
            return Err(perr(p, format!("duplicate category `{}`", c.name)));
        }
        doc.categories.push(parse_category(field, c, &p)?);
    }
    for (k, b) in raw.bimodules.iter().enumerate() {
        let p = format!("bimodules[{k}]");
        if doc.bimodule(&b.name).is_ok() {
            return Err(perr(p, format!("duplicate bimodule `{}`", b.name)));
        }
        let u = doc.category(&b.left).map_err(at(&p))?;
        let t = doc.category(&b.right).map_err(at(&p))?;
        let m = parse_bimodule(field, u, t, b, &p)?;
        doc.bimodules.push(BimoduleEntry { u: b.left.clone(), t: b.right.clone(), bimodule: m });
    }
    for (k, m) in raw.modules.iter().enumerate() {
        let p = format!("modules[{k}]");
        if doc.module(&m.name).is_ok() {
            return Err(perr(p, format!("duplicate module `{}`", m.name)));
        }
        let over = m.over.clone().ok_or_else(|| perr(&p, "missing `over`"))?;
        let base = doc.category(&over).map_err(at(&p))?;
        let module = parse_module(field, base, m, &p)?;
        doc.modules.push(ModuleEntry { over, module });
    }
    for (k, c) in raw.comma_objects.iter().enumerate() {
        let p = format!("comma_objects[{k}]");
        if doc.comma_object(&c.name).is_ok() {
            return Err(perr(p, format!("duplicate comma object `{}`", c.name)));
        }
        let e = doc.bimodule(&c.bimodule).map_err(at(&p))?;
        let (a, b) = (doc.module(&c.a).map_err(at(&p))?, doc.module(&c.b).map_err(at(&p))?);
        if a.over != e.t || b.over != e.u {
            return Err(perr(&p, format!("`a` must be over `{}` and `b` over `{}`", e.t, e.u)));
        }
        let (t, u) = (doc.category(&e.t)?, doc.category(&e.u)?);
        let mut o = CommaObject::new(c.name.clone(), &e.bimodule, a.module.clone(), b.module.clone(), c.degree).map_err(at(&p))?;
        for (j, entry) in c.pairing.iter().enumerate() {
            let q = format!("{p}.pairing[{j}]");
            let ti = index_of(t.objects(), &entry.t, "object", &q)?;
            let ui = index_of(u.objects(), &entry.u, "object", &q)?;
            let v = parse_vector(field, &entry.value, &format!("{q}.value"))?;
            o.set_pairing(&e.bimodule, (ti, ui), entry.x, entry.m, v).map_err(at(&q))?;
        }
        doc.comma_objects.push(CommaEntry { bimodule: c.bimodule.clone(), object: o });
    }
    for (k, f) in raw.fixtures.iter().enumerate() {
        let p = format!("fixtures[{k}]");
        if doc.fixtures.iter().any(|g| g.name == f.name) {
            return Err(perr(p, format!("duplicate fixture `{}`", f.name)));
        }
        for (j, c) in f.comma_objects.iter().enumerate() {
            let q = format!("{p}.comma_objects[{j}]");
            let e = doc.comma_object(c).map_err(at(&q))?;
            if e.bimodule != f.bimodule {
                return Err(perr(q, format!("comma object `{c}` is over bimodule `{}`", e.bimodule)));
            }
        }
        doc.add_fixture(&f.name, &f.bimodule, f.comma_objects.clone(), Vec::new(), Vec::new()).map_err(at(&p))?;
        let lam = &doc.fixtures.last().expect("just pushed").lambda;
        let mut modules = Vec::new();
        for (j, m) in f.lambda_modules.iter().enumerate() {
            let q = format!("{p}.lambda_modules[{j}]");
            if m.over.as_ref().is_some_and(|o| *o != lam.category.name) {
                return Err(perr(q, format!("Λ-modules are over `{}`", lam.category.name)));
            }
            modules.push(parse_module(field, &lam.category, m, &q)?);
        }
        for (j, r) in f.representables.iter().enumerate() {
            index_of(lam.category.objects(), r, "object", &format!("{p}.representables[{j}]"))?;
        }
        let fx = doc.fixtures.last_mut().expect("just pushed");
        fx.lambda_modules = modules;
        fx.representables = f.representables.clone();
    }
    Ok(doc)
}

/// Canonical JSON: fixed key order, zero blocks and zero entries omitted,
/// rationals in lowest terms.
pub fn emit(doc: &Document) -> Result<String> {
    let field = match doc.field {
        Field::Rationals => RawField::Name("Q".into()),
        Field::Prime(p) => RawField::Prime { fp: p },
    };
    let categories = doc.categories.iter().map(emit_category).collect();
    let bimodules = doc
        .bimodules
        .iter()
        .map(|e| Ok(emit_bimodule(e, doc.category(&e.u)?, doc.category(&e.t)?)))
        .collect::<Result<_>>()?;
    let modules = doc.modules.iter().map(|e| Ok(emit_module(doc.category(&e.over)?, &e.module, Some(e.over.clone())))).collect::<Result<_>>()?;
    let mut comma_objects = Vec::new();
    for e in &doc.comma_objects {
        let (t, u, m) = doc.triple(&e.bimodule)?;
        let o = &e.object;
        let mut pairing = Vec::new();
        for ti in 0..t.len() {
            for ui in 0..u.len() {
                for x in basis_of(o.a.value(ti).dims()) {
                    let field = doc.field;
                    let xv = crate::dg_kmod::unit_vector(field, o.a.value(ti).dims().get(x.0), x.1);
                    let f = o.f_component(m, ti, ui, x.0, &xv);
                    for mb in basis_of(m.value(ui, ti).dims()) {
                        let v = f.apply_basis(mb.0, mb.1);
                        if v.iter().any(|s| !s.is_zero()) {
                            pairing.push(RawPairing { t: t.objects()[ti].clone(), u: u.objects()[ui].clone(), x, m: mb, value: emit_vector(&v) });
                        }
                    }
                }
            }
        }
        comma_objects.push(RawComma { name: o.name.clone(), bimodule: e.bimodule.clone(), a: o.a.name.clone(), b: o.b.name.clone(), degree: o.degree, pairing });
    }
    let fixtures = doc
        .fixtures
        .iter()
        .map(|f| RawFixture {
            name: f.name.clone(),
            bimodule: f.bimodule.clone(),
            comma_objects: f.comma_objects.clone(),
            lambda_modules: f.lambda_modules.iter().map(|m| emit_module(&f.lambda.category, m, None)).collect(),
            representables: f.representables.clone(),
        })
        .collect();
    let raw = RawFile { field, categories, bimodules, modules, comma_objects, fixtures };
    let mut out = serde_json::to_string_pretty(&raw).map_err(|e| perr("", e))?;
    out.push('\n');
    Ok(out)
}

//! The shipped fixture files and negative controls, built from presets.
//!
//! `cargo run --example export_fixtures` rewrites `fixtures/` from these
//! builders; a test checks that the files on disk are up to date.

use crate::bimodule::{hom_bimodule, trivial_bimodule, Bimodule};
use crate::category::{unit_category, DgCategory};
use crate::comma::{build_coproduct_module, extract_comma_from_module, CommaObject};
use crate::dg_kmod::DgModule;
use crate::error::Result;
use crate::format::{Document, ModuleEntry};
use crate::functor::{representable_module, DgFunctor};
use crate::linalg::{Dims, Field, GradedMap, GradedModule, Matrix};
use crate::presets::{acyclic_exterior, exterior_algebra, graded_k, koszul_bimodule, module_over_unit};
use crate::triangular::{build_lambda, build_lambda_unchecked, LambdaOptions};

/// Which command a fixture file is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    CheckEquivalence,
}

/// A corrupted fixture and the check that must be the first to fail.
#[derive(Clone, Debug)]
pub struct NegativeControl {
    pub file: &'static str,
    pub command: Command,
    pub subject: String,
    pub check: &'static str,
    pub document: Document,
}

/// Comma objects `extract(Hom_Λ(X, −))` for every object `X` but `(0, 0)`,
/// named `h<X>`.
pub fn representable_objects(t: &DgCategory, u: &DgCategory, m: &Bimodule) -> Result<(Vec<CommaObject>, Vec<String>)> {
    let lam = build_lambda_unchecked(t, u, m)?;
    let zero = lam.object(None, None);
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for x in (0..lam.category.len()).filter(|&x| x != zero) {
        let name = lam.category.objects()[x].clone();
        let mut o = extract_comma_from_module(&lam, &representable_module(&lam.category, x))?;
        o.name = format!("h{name}");
        objects.push(o);
        names.push(name);
    }
    Ok((objects, names))
}

fn representable_fixture(name: &str, t: &DgCategory, u: &DgCategory, m: &Bimodule) -> Result<Document> {
    let (objects, reps) = representable_objects(t, u, m)?;
    Document::single_fixture(name, (t, u, m), &objects, Vec::new(), reps)
}

fn scalar_object(m: &Bimodule, name: &str, t: &DgCategory, u: &DgCategory, c: i64) -> Result<CommaObject> {
    let field = t.field();
    let k = DgModule::unit(field, 0);
    let mut o = CommaObject::new(name, m, module_over_unit(t, k.clone()), module_over_unit(u, k), 0)?;
    o.set_pairing(m, (0, 0), (0, 0), (0, 0), vec![field.from_i64(c)])?;
    Ok(o)
}

/// `T = U = M = K`: Λ is the algebra of lower triangular 2×2 matrices.
pub fn kkk(field: Field) -> Result<Document> {
    let k = unit_category(field);
    let m = trivial_bimodule("M", &k, &k, 0)?;
    let objects = vec![
        scalar_object(&m, "f", &k, &k, 1)?,
        scalar_object(&m, "f_prime", &k, &k, 1)?,
        scalar_object(&m, "zero", &k, &k, 0)?,
    ];
    let (lam, _) = build_lambda(&k, &k, &m, LambdaOptions::default())?;
    let mut column = build_coproduct_module(&lam, &objects[0])?;
    column.name = "column".into();
    let reps = vec!["(*,*)".into(), "(*,0)".into(), "(0,*)".into()];
    Document::single_fixture("kkk", (&k, &k, &m), &objects, vec![column], reps)
}

/// `T = U = M = K[x]/x²` with `|x| = 1`, `M` the regular bimodule.
pub fn exterior(field: Field) -> Result<Document> {
    let e = exterior_algebra(field, "E", 1);
    let (u, t, m) = hom_bimodule("M", &e, &[0], &[0])?;
    representable_fixture("exterior", &t, &u, &m)
}

/// `T = U = M = K[x]/x²` with `|x| = −1` and `dx = 1`.
pub fn nonzero_differential(field: Field) -> Result<Document> {
    let e = acyclic_exterior(field, "E'");
    let (u, t, m) = hom_bimodule("M", &e, &[0], &[0])?;
    representable_fixture("nonzero_differential", &t, &u, &m)
}

/// `U = E(x)`, `T = E(y)`, `M = K⟨1, x, y, xy⟩` with the Koszul sign.
pub fn koszul(field: Field) -> Result<Document> {
    let (u, t, m) = koszul_bimodule(field, true);
    representable_fixture("koszul", &t, &u, &m)
}

/// `(file stem, document)` for every shipped positive fixture.
pub fn shipped(field: Field) -> Result<Vec<(&'static str, Document)>> {
    Ok(vec![("kkk", kkk(field)?), ("exterior", exterior(field)?), ("nonzero_differential", nonzero_differential(field)?), ("koszul", koszul(field)?)])
}

fn one_object(name: &str, field: Field, dims: Dims, d: GradedMap) -> DgCategory {
    let mut c = DgCategory::new(name, field, vec!["*".into()]).expect("one object");
    c.set_hom(0, 0, DgModule::new(GradedModule::new(dims), d).expect("shape")).expect("field");
    c
}

fn entry(field: Field, rows: usize, cols: usize, cells: &[(usize, usize, i64)]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for &(r, c, v) in cells {
        m.set(r, c, field.from_i64(v));
    }
    m
}

/// Sets `1 ∘ v = v ∘ 1 = v` for every basis element, with `1 = e[0][0]`.
fn unital(c: &mut DgCategory) {
    let field = c.field();
    c.set_identity(0, {
        let mut v = vec![field.zero(); c.hom(0, 0).dims().get(0)];
        v[0] = field.one();
        v
    })
    .expect("shape");
    for (deg, i) in crate::category::basis_of(&c.hom(0, 0).dims().clone()) {
        let v = crate::dg_kmod::unit_vector(field, c.hom(0, 0).dims().get(deg), i);
        c.set_composite((0, 0, 0), (0, 0), (deg, i), v.clone()).expect("1∘v");
        c.set_composite((0, 0, 0), (deg, i), (0, 0), v).expect("v∘1");
    }
}

fn category_doc(c: DgCategory) -> Document {
    let mut doc = Document::new(c.field());
    doc.categories.push(c);
    doc
}

fn module_doc(base: DgCategory, m: DgFunctor) -> Document {
    let mut doc = category_doc(base);
    let over = doc.categories[0].name.clone();
    doc.modules.push(ModuleEntry { over, module: m });
    doc
}

fn bad_d_squared(field: Field) -> Document {
    // basis: c in degree −1, (1, a) in degree 0, b in degree 1; c ↦ a ↦ b
    let dims: Dims = [(-1, 1), (0, 2), (1, 1)].into_iter().collect();
    let mut d = GradedMap::zero(field, 1, &dims, &dims);
    d.set_block(-1, entry(field, 2, 1, &[(1, 0, 1)])).expect("c ↦ a");
    d.set_block(0, entry(field, 1, 2, &[(0, 1, 1)])).expect("a ↦ b");
    let mut c = one_object("D2", field, dims, d);
    unital(&mut c);
    category_doc(c)
}

fn bad_units(field: Field) -> Document {
    let mut c = unit_category(field);
    c.name = "K2".into();
    c.set_identity(0, vec![field.from_i64(2)]).expect("shape");
    category_doc(c)
}

fn bad_identity_closed(field: Field) -> Document {
    let dims: Dims = [(0, 1), (1, 1)].into_iter().collect();
    let mut d = GradedMap::zero(field, 1, &dims, &dims);
    d.set_block(0, Matrix::identity(field, 1)).expect("1 ↦ x");
    let mut c = one_object("Ed", field, dims, d);
    unital(&mut c);
    category_doc(c)
}

fn bad_leibniz(field: Field) -> Document {
    // (1, x) in degree 0, y in degree 1, dx = y, x ∘ x = x
    let dims: Dims = [(0, 2), (1, 1)].into_iter().collect();
    let mut d = GradedMap::zero(field, 1, &dims, &dims);
    d.set_block(0, entry(field, 1, 2, &[(0, 1, 1)])).expect("x ↦ y");
    let mut c = one_object("L", field, dims, d);
    unital(&mut c);
    c.set_composite((0, 0, 0), (0, 1), (0, 1), vec![field.zero(), field.one()]).expect("x∘x");
    category_doc(c)
}

fn bad_associativity(field: Field) -> Document {
    // (1, x, y) in degree 0: x∘x = y, y∘x = x, x∘y = 0
    let dims = Dims::concentrated(0, 3);
    let mut c = one_object("A3", field, dims.clone(), GradedMap::zero(field, 1, &dims, &dims));
    unital(&mut c);
    let e = |i: usize| crate::dg_kmod::unit_vector(field, 3, i);
    c.set_composite((0, 0, 0), (0, 1), (0, 1), e(2)).expect("x∘x");
    c.set_composite((0, 0, 0), (0, 2), (0, 1), e(1)).expect("y∘x");
    category_doc(c)
}

fn bad_module_complex(field: Field) -> Document {
    let k = unit_category(field);
    let dims: Dims = [(0, 1), (1, 1), (2, 1)].into_iter().collect();
    let mut d = GradedMap::zero(field, 1, &dims, &dims);
    d.set_block(0, Matrix::identity(field, 1)).expect("shape");
    d.set_block(1, Matrix::identity(field, 1)).expect("shape");
    let value = DgModule::new(GradedModule::new(dims), d).expect("shape");
    let mut m = module_over_unit(&k, value);
    m.name = "D".into();
    module_doc(k, m)
}

fn bad_module_units(field: Field) -> Document {
    let k = unit_category(field);
    let mut m = DgFunctor::new("Twice", &k, vec![DgModule::unit(field, 0)]).expect("shape");
    let two = GradedMap::identity(field, &Dims::concentrated(0, 1)).scale(&field.from_i64(2));
    m.set_action(0, 0, (0, 0), &two).expect("shape");
    module_doc(k, m)
}

fn bad_module_functoriality(field: Field) -> Document {
    // x acts by the shift e0 ↦ e1 ↦ e2, so x∘x = 0 acts by a nonzero map
    let e = exterior_algebra(field, "E", 1);
    let value = graded_k(field, &[0, 1, 2]);
    let dims = value.dims().clone();
    let mut m = DgFunctor::new("Shift", &e, vec![value]).expect("shape");
    m.set_action(0, 0, (0, 0), &GradedMap::identity(field, &dims)).expect("shape");
    let mut x = GradedMap::zero(field, 1, &dims, &dims);
    x.set_block(0, Matrix::identity(field, 1)).expect("shape");
    x.set_block(1, Matrix::identity(field, 1)).expect("shape");
    m.set_action(0, 0, (1, 0), &x).expect("shape");
    module_doc(e, m)
}

fn bad_module_chain_map(field: Field) -> Document {
    // dx = 1 but x acts by 0 on K
    let e = acyclic_exterior(field, "E'");
    let mut m = DgFunctor::new("Trivial", &e, vec![DgModule::unit(field, 0)]).expect("shape");
    m.set_action(0, 0, (0, 0), &GradedMap::identity(field, &Dims::concentrated(0, 1))).expect("shape");
    module_doc(e, m)
}

fn bimodule_doc(t: DgCategory, u: DgCategory, m: Bimodule) -> Document {
    let mut doc = Document::new(t.field());
    let (tn, un) = (t.name.clone(), u.name.clone());
    doc.categories.push(t);
    doc.categories.push(u);
    doc.bimodules.push(crate::format::BimoduleEntry { u: un, t: tn, bimodule: m });
    doc
}

fn bad_interchange(field: Field) -> Document {
    let (u, t, m) = koszul_bimodule(field, false);
    bimodule_doc(t, u, m)
}

fn bad_differential_compatibility(field: Field) -> Document {
    // M = K⟨e0, e1, e2⟩ with d e0 = e1 and x e1 = e2: x does not commute with d
    let u = exterior_algebra(field, "E", 1);
    let t = unit_category(field);
    let dims: Dims = [(0, 1), (1, 1), (2, 1)].into_iter().collect();
    let mut d = GradedMap::zero(field, 1, &dims, &dims);
    d.set_block(0, Matrix::identity(field, 1)).expect("shape");
    let value = DgModule::new(GradedModule::new(dims.clone()), d).expect("shape");
    let mut m = Bimodule::new("N", &u, &t, vec![vec![value]]).expect("shapes");
    let id = GradedMap::identity(field, &dims);
    m.set_left(0, 0, 0, (0, 0), &id).expect("shape");
    m.set_right(0, 0, 0, (0, 0), &id).expect("shape");
    let mut x = GradedMap::zero(field, 1, &dims, &dims);
    x.set_block(1, Matrix::identity(field, 1)).expect("shape");
    m.set_left(0, 0, 0, (1, 0), &x).expect("shape");
    bimodule_doc(t, u, m)
}

fn comma_doc(t: &DgCategory, u: &DgCategory, m: &Bimodule, o: CommaObject) -> Document {
    Document::single_fixture("control", (t, u, m), &[o], Vec::new(), Vec::new()).expect("consistent")
}

fn bad_comma_degree(field: Field) -> Document {
    let k = unit_category(field);
    let m = trivial_bimodule("M", &k, &k, 0).expect("shapes");
    let unit = DgModule::unit(field, 0);
    let o = CommaObject::new("shifted", &m, module_over_unit(&k, unit.clone()), module_over_unit(&k, unit), 1).expect("shapes");
    comma_doc(&k, &k, &m, o)
}

/// `T = U = M = E`, `A = K` with `x` acting by zero, `B = E`.
fn exterior_comma(field: Field, name: &str, f_x: i64) -> Document {
    let e = exterior_algebra(field, "E", 1);
    let (u, t, m) = hom_bimodule("M", &e, &[0], &[0]).expect("shapes");
    let mut a = DgFunctor::new("K", &t, vec![DgModule::unit(field, 0)]).expect("shape");
    a.set_action(0, 0, (0, 0), &GradedMap::identity(field, &Dims::concentrated(0, 1))).expect("shape");
    let b = representable_module(&u, 0);
    let mut o = CommaObject::new(name, &m, a, b, 0).expect("shapes");
    o.set_pairing(&m, (0, 0), (0, 0), (0, 0), vec![field.one()]).expect("1 ↦ 1");
    if f_x != 0 {
        o.set_pairing(&m, (0, 0), (0, 0), (1, 0), vec![field.from_i64(f_x)]).expect("x ↦ x");
    }
    comma_doc(&t, &u, &m, o)
}

fn bad_comma_closed(field: Field) -> Document {
    // A = B = the interval K → K; f(e0) = (m ↦ e0), f(e1) = 0
    let k = unit_category(field);
    let m = trivial_bimodule("M", &k, &k, 0).expect("shapes");
    let i = DgModule::interval(field, 0);
    let mut o = CommaObject::new("open", &m, module_over_unit(&k, i.clone()), module_over_unit(&k, i), 0).expect("shapes");
    o.set_pairing(&m, (0, 0), (0, 0), (0, 0), vec![field.one()]).expect("e0 ↦ e0");
    comma_doc(&k, &k, &m, o)
}

fn bad_lambda_sign(field: Field) -> Document {
    let (u, t, m) = koszul_bimodule(field, false);
    Document::single_fixture("unsigned", (&t, &u, &m), &[], Vec::new(), Vec::new()).expect("consistent")
}

/// Every negative control, each failing first at its intended check.
pub fn negative_controls(field: Field) -> Vec<NegativeControl> {
    use Command::*;
    let nc = |file, command, subject: &str, check, document| NegativeControl { file, command, subject: subject.into(), check, document };
    vec![
        nc("d_squared", Validate, "category D2", "d_squared", bad_d_squared(field)),
        nc("unit_laws", Validate, "category K2", "unit_laws", bad_units(field)),
        nc("identity_closed", Validate, "category Ed", "identity_closed", bad_identity_closed(field)),
        nc("leibniz", Validate, "category L", "leibniz", bad_leibniz(field)),
        nc("associativity", Validate, "category A3", "associativity", bad_associativity(field)),
        nc("module_complex", Validate, "module D", "values_are_complexes", bad_module_complex(field)),
        nc("module_units", Validate, "module Twice", "units", bad_module_units(field)),
        nc("module_functoriality", Validate, "module Shift", "functoriality", bad_module_functoriality(field)),
        nc("module_chain_map", Validate, "module Trivial", "chain_map", bad_module_chain_map(field)),
        nc("bimodule_interchange", Validate, "bimodule Mxy", "interchange", bad_interchange(field)),
        nc("bimodule_differential", Validate, "bimodule N", "differential_compatibility", bad_differential_compatibility(field)),
        nc("comma_degree", Validate, "comma object shifted", "degree_zero", bad_comma_degree(field)),
        nc("comma_components", Validate, "comma object unnatural", "components_in_G", exterior_comma(field, "unnatural", 0)),
        nc("comma_naturality", Validate, "comma object untwisted", "naturality", exterior_comma(field, "untwisted", 1)),
        nc("comma_closed", Validate, "comma object open", "closed", bad_comma_closed(field)),
        nc("lambda_sign", CheckEquivalence, "unsigned: category Lambda(Ey,Ex,Mxy)", "associativity", bad_lambda_sign(field)),
    ]
}

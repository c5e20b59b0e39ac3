//! Command pipelines behind the `dgtri` binary.
//!
//! Each command takes a parsed [`Document`] and returns the text for the
//! output stream together with a [`Report`]; the binary maps the outcome to
//! an exit status with [`exit_code`].

use crate::bimodule::{g_on_objects, validate_bimodule};
use crate::category::{opposite_category, tensor_category, validate_dg_category};
use crate::comma::{check_equivalence, one_object_hom_dims, product_identities, validate_comma_object, CommaObject, EquivalenceOptions};
use crate::error::{Error, Result};
use crate::format::{emit, Document, Fixture};
use crate::functor::{representable_module, validate_dg_functor, DgFunctor};
use crate::report::Report;
use crate::triangular::{build_lambda, build_lambda_unchecked, lambda_leibniz_check, LambdaOptions};

pub const CHARACTERISTIC_TWO: &str = "characteristic 2: every sign (−1)^k equals 1, sign identities hold vacuously";

/// What a command writes to its output, and the checks it ran.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub report: Report,
}

/// 0 all checks passed, 1 a mathematical failure, 2 a structural failure.
pub fn exit_code(result: &Result<Output>) -> i32 {
    match result {
        Ok(out) if out.report.passed() => 0,
        Ok(_) | Err(Error::InvalidInput(_)) => 1,
        Err(_) => 2,
    }
}

fn new_report(command: &str, doc: &Document) -> Report {
    let mut r = Report::new(command);
    if doc.field.signs_collapse() {
        r.warn(CHARACTERISTIC_TWO);
    }
    r
}

/// Validates every category, module, bimodule and comma object, in that order.
pub fn validate(doc: &Document) -> Result<Output> {
    let mut report = new_report("validate", doc);
    for c in &doc.categories {
        report.absorb(validate_dg_category(c));
    }
    for m in &doc.modules {
        report.absorb(validate_dg_functor(doc.category(&m.over)?, &m.module));
    }
    for b in &doc.bimodules {
        report.absorb(validate_bimodule(doc.category(&b.u)?, doc.category(&b.t)?, &b.bimodule));
    }
    for e in &doc.comma_objects {
        let (t, u, m) = doc.triple(&e.bimodule)?;
        let lam = build_lambda_unchecked(t, u, m)?;
        report.absorb(validate_comma_object(&lam, &e.object));
    }
    for f in &doc.fixtures {
        for m in &f.lambda_modules {
            report.absorb_scoped(&f.name, validate_dg_functor(&f.lambda.category, m));
        }
    }
    Ok(Output { text: report.to_json(), report })
}

fn only<'a>(doc: &'a Document, name: Option<&str>) -> Result<Vec<&'a crate::category::DgCategory>> {
    match name {
        Some(n) => Ok(vec![doc.category(n)?]),
        None => Ok(doc.categories.iter().collect()),
    }
}

/// The opposite of the named category, or of every category.
pub fn oppose(doc: &Document, category: Option<&str>) -> Result<Output> {
    let mut report = new_report("oppose", doc);
    let mut out = Document::new(doc.field);
    for c in only(doc, category)? {
        report.absorb(validate_dg_category(c));
        let op = opposite_category(c);
        report.push_bool(&format!("category {}", c.name), "double_opposite", opposite_category(&op) == *c, || {
            "(C^op)^op differs from C".into()
        });
        out.categories.push(op);
    }
    Ok(Output { text: emit(&out)?, report })
}

/// `A ⊗ B`; defaults to the first two categories, or the first with itself.
pub fn tensor(doc: &Document, left: Option<&str>, right: Option<&str>) -> Result<Output> {
    let mut report = new_report("tensor", doc);
    let pick = |name: Option<&str>, k: usize| -> Result<&crate::category::DgCategory> {
        match name {
            Some(n) => doc.category(n),
            None => doc
                .categories
                .get(k)
                .or_else(|| doc.categories.first())
                .ok_or_else(|| Error::Structural("the file declares no categories".into())),
        }
    };
    let (a, b) = (pick(left, 0)?, pick(right, 1)?);
    report.absorb(validate_dg_category(a));
    if b.name != a.name {
        report.absorb(validate_dg_category(b));
    }
    let product = tensor_category(a, b)?;
    report.absorb(validate_dg_category(&product));
    let mut out = Document::new(doc.field);
    out.categories.push(product);
    Ok(Output { text: emit(&out)?, report })
}

fn default_bimodule<'a>(doc: &'a Document, bimodule: Option<&'a str>) -> Result<&'a str> {
    if let Some(b) = bimodule {
        return Ok(b);
    }
    if let Some(f) = doc.fixtures.first() {
        return Ok(&f.bimodule);
    }
    match doc.bimodules.as_slice() {
        [b] => Ok(&b.bimodule.name),
        [] => Err(Error::Structural("the file declares no bimodules".into())),
        _ => Err(Error::Structural("several bimodules and no fixture; name one with --bimodule".into())),
    }
}

/// Λ for the named bimodule, emitted as a one-category document.
pub fn lambda(doc: &Document, bimodule: Option<&str>) -> Result<Output> {
    let name = default_bimodule(doc, bimodule)?;
    let (t, u, m) = doc.triple(name)?;
    let (lam, checks) = build_lambda(t, u, m, LambdaOptions::default())?;
    let mut report = new_report("lambda", doc);
    report.absorb(checks);
    report.absorb(lambda_leibniz_check(&lam));
    let mut out = Document::new(doc.field);
    out.categories.push(lam.category);
    Ok(Output { text: emit(&out)?, report })
}

/// Options for [`check_equivalence_command`].
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub seed: u64,
    pub window: Option<(i64, i64)>,
    pub probes: usize,
    pub fixture: Option<String>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { seed: 0, window: None, probes: 8, fixture: None }
    }
}

/// Λ validation, then comma objects, then the equivalence suite, per fixture.
/// A fixture whose Λ or comma objects fail is not tested further.
pub fn check_equivalence_command(doc: &Document, opts: &CheckOptions) -> Result<Output> {
    let mut report = new_report("check-equivalence", doc);
    report.seed = Some(opts.seed);
    let fixtures: Vec<&Fixture> = match &opts.fixture {
        Some(n) => vec![doc.fixtures.iter().find(|f| &f.name == n).ok_or_else(|| Error::UnknownName { kind: "fixture", name: n.clone() })?],
        None => doc.fixtures.iter().collect(),
    };
    if fixtures.is_empty() {
        return Err(Error::Structural("the file declares no fixtures".into()));
    }
    for f in fixtures {
        report.absorb_scoped(&f.name, check_fixture(doc, f, opts)?);
    }
    Ok(Output { text: report.to_json(), report })
}

fn check_fixture(doc: &Document, f: &Fixture, opts: &CheckOptions) -> Result<Report> {
    let lam = &f.lambda;
    let mut report = Report::new("check-equivalence");
    report.absorb(validate_dg_category(&lam.category));
    report.absorb(lambda_leibniz_check(lam));
    if !report.passed() {
        report.note(format!("fixture {}: Λ failed validation; equivalence not attempted", f.name));
        return Ok(report);
    }
    let objects: Vec<CommaObject> = f.comma_objects.iter().map(|n| Ok(doc.comma_object(n)?.object.clone())).collect::<Result<_>>()?;
    let mut modules: Vec<DgFunctor> = f.lambda_modules.clone();
    for r in &f.representables {
        modules.push(representable_module(&lam.category, lam.category.object_index(r)?));
    }
    let before = report.checks.len();
    for o in &objects {
        report.absorb(validate_comma_object(lam, o));
        report.absorb(product_identities(lam, o));
    }
    for m in &f.lambda_modules {
        report.absorb(validate_dg_functor(&lam.category, m));
    }
    if report.checks[before..].iter().any(|c| !c.passed) {
        report.note(format!("fixture {}: invalid comma objects or Λ-modules; equivalence not attempted", f.name));
        return Ok(report);
    }
    let eq = EquivalenceOptions { seed: opts.seed, window: opts.window, probes: opts.probes };
    report.absorb(check_equivalence(lam, &objects, &modules, &eq)?);
    if lam.n_t() == 1 && lam.n_u() == 1 {
        for o in &objects {
            let g = g_on_objects(&lam.u, &lam.t, &lam.m, &o.b)?;
            let via_nat = g.module.value(0).dims().clone();
            let direct = one_object_hom_dims(&lam.u, lam.m.left_slice(0), &o.b);
            report.push_bool(&format!("comma object {}", o.name), "g_is_hom_over_u", via_nat == direct, || {
                format!("𝔾(B) carrier {:?} but Hom_U(N, B) {:?}", via_nat.as_map(), direct.as_map())
            });
            report.table(format!("𝔾({})", o.b.name), via_nat.as_map().clone());
        }
    }
    Ok(report)
}

/// Parses `lo:hi` (either bound may be negative).
pub fn parse_window(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse { path: "--degree-window".into(), message: format!("`{text}` is not of the form lo:hi") };
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

//! One line per acceptance criterion; exits nonzero if any is red.

mod common;

use std::process::{Command as Process, ExitCode};
use std::time::Instant;

use dg_triangular::bimodule::{g_on_objects, validate_bimodule};
use dg_triangular::category::validate_dg_category;
use dg_triangular::cli::{self, CheckOptions};
use dg_triangular::comma::{check_equivalence, product_identities, validate_comma_object, EquivalenceOptions};
use dg_triangular::fixtures::{negative_controls, Command};
use dg_triangular::format::{parse, Document};
use dg_triangular::functor::validate_dg_functor;
use dg_triangular::linalg::Field;
use dg_triangular::random::{random_fixture, random_lambda};
use dg_triangular::report::Report;
use dg_triangular::triangular::lambda_leibniz_check;

use common::*;

const RANDOM_FIXTURES: u64 = 200;
const RANDOM_LAMBDAS: u64 = 24;

type Verdict = Result<String, String>;

fn require(report: &Report, what: &str) -> Result<(), String> {
    if report.passed() {
        Ok(())
    } else {
        Err(format!("{what}: {}", report.summary()))
    }
}

fn axiom_suite(docs: &[(String, Document)]) -> Verdict {
    let start = Instant::now();
    let mut checks = 0;
    for (name, doc) in docs {
        let out = cli::validate(doc).map_err(|e| e.to_string())?;
        require(&out.report, name)?;
        checks += out.report.checks.len();
    }
    for seed in 0..RANDOM_FIXTURES {
        let f = random_fixture(seed);
        let mut r = validate_dg_category(&f.category);
        for m in &f.modules {
            r.absorb(validate_dg_functor(&f.category, m));
        }
        r.absorb(validate_dg_category(&f.yoneda.0));
        r.absorb(validate_dg_functor(&f.yoneda.0, &f.yoneda.1));
        let (u, t, m) = &f.bimodule;
        r.absorb(validate_bimodule(u, t, m));
        require(&r, &format!("random seed {seed} ({})", f.field))?;
        checks += r.checks.len();
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 60.0 {
        return Err(format!("took {secs:.1} s, over the 60 s budget"));
    }
    Ok(format!("{} shipped + {RANDOM_FIXTURES} random fixtures, {checks} checks, {secs:.1} s", docs.len()))
}

fn sign_suite(docs: &[(String, Document)]) -> Verdict {
    let mut tuples = 0;
    let mut add = |o: Outcome| -> Result<(), String> {
        tuples += o?;
        Ok(())
    };
    let mut categories: Vec<_> = docs.iter().flat_map(|(_, d)| d.categories.iter().cloned()).collect();
    for seed in 0..20 {
        categories.push(random_fixture(seed).category);
    }
    for c in &categories {
        add(opposite_signs(c))?;
        add(contravariant_hom_sign(c))?;
        for x in 0..c.len() {
            for y in 0..c.len() {
                add(hom_differential_rule(c.hom(x, y), c.hom(y, x)))?;
                add(tensor_differential_rule(c.hom(x, y), c.hom(y, x)))?;
            }
        }
    }
    for (_, d) in docs {
        for a in &d.categories {
            for b in &d.categories {
                add(tensor_signs(a, b))?;
            }
        }
        for f in &d.fixtures {
            let lam = &f.lambda;
            for m in &f.lambda_modules {
                add(naturality_sign(&lam.category, m, m))?;
            }
        }
        for e in &d.modules {
            let base = d.category(&e.over).unwrap();
            for e2 in d.modules.iter().filter(|e2| e2.over == e.over) {
                add(naturality_sign(base, &e.module, &e2.module))?;
            }
        }
    }
    for seed in 0..20 {
        let f = random_fixture(seed);
        add(naturality_sign(&f.category, &f.modules[0], &f.modules[1]))?;
    }
    Ok(format!("{tuples} basis tuples over {} categories", categories.len()))
}

fn lambda_suite(docs: &[(String, Document)]) -> Verdict {
    let mut n = 0;
    for (name, d) in docs {
        for f in &d.fixtures {
            let mut r = validate_dg_category(&f.lambda.category);
            r.absorb(lambda_leibniz_check(&f.lambda));
            require(&r, &format!("{name}/{}", f.name))?;
            n += 1;
        }
    }
    for seed in 0..RANDOM_LAMBDAS {
        let rl = random_lambda(seed).map_err(|e| e.to_string())?;
        let mut r = validate_dg_category(&rl.lambda.category);
        r.absorb(lambda_leibniz_check(&rl.lambda));
        require(&r, &format!("random Λ seed {seed}"))?;
        n += 1;
    }
    Ok(format!("{n} Λ categories validated, both Leibniz identities exact"))
}

fn products_suite(docs: &[(String, Document)]) -> Verdict {
    let mut checks = 0;
    for (name, d) in docs {
        for f in &d.fixtures {
            for o in &f.comma_objects {
                let r = product_identities(&f.lambda, &d.comma_object(o).unwrap().object);
                require(&r, &format!("{name}/{o}"))?;
                checks += r.checks.iter().map(|c| c.examined).sum::<usize>();
            }
        }
    }
    for seed in 0..RANDOM_LAMBDAS {
        let rl = random_lambda(seed).map_err(|e| e.to_string())?;
        for o in &rl.objects {
            let r = product_identities(&rl.lambda, o);
            require(&r, &format!("random Λ seed {seed}, {}", o.name))?;
            checks += r.checks.iter().map(|c| c.examined).sum::<usize>();
        }
    }
    Ok(format!("{checks} basis tuples"))
}

fn equivalence_suite(docs: &[(String, Document)]) -> Verdict {
    let mut pairs = 0;
    for (name, d) in docs {
        let out = cli::check_equivalence_command(d, &CheckOptions::default()).map_err(|e| e.to_string())?;
        require(&out.report, name)?;
        for needed in ["fully_faithful", "phi_invertible", "phi_closed"] {
            if !out.report.checks.iter().any(|c| c.name == needed) {
                return Err(format!("{name}: no {needed} check ran"));
            }
        }
        pairs += out.report.checks.iter().filter(|c| c.name == "fully_faithful").count();
    }
    for seed in 0..RANDOM_LAMBDAS {
        let rl = random_lambda(seed).map_err(|e| e.to_string())?;
        let mut r = Report::new("random");
        for o in &rl.objects {
            r.absorb(validate_comma_object(&rl.lambda, o));
        }
        let opts = EquivalenceOptions { seed, window: None, probes: 2 };
        r.absorb(check_equivalence(&rl.lambda, &rl.objects, &rl.modules, &opts).map_err(|e| e.to_string())?);
        require(&r, &format!("random Λ seed {seed}"))?;
        pairs += r.checks.iter().filter(|c| c.name == "fully_faithful").count();
    }
    Ok(format!("{pairs} ordered pairs bijective in every degree; φ invertible and closed"))
}

fn one_object_suite(docs: &[(String, Document)]) -> Verdict {
    let mut n = 0;
    let mut one = |lam: &dg_triangular::triangular::Lambda, b: &dg_triangular::functor::DgFunctor, what: &str| -> Result<(), String> {
        let g = g_on_objects(&lam.u, &lam.t, &lam.m, b).map_err(|e| e.to_string())?;
        let via_nat = g.module.value(0).dims().as_map().clone();
        let direct = one_object_hom_oracle(&lam.u, lam.m.left_slice(0), b);
        if via_nat != direct {
            return Err(format!("{what}: 𝔾 carrier {via_nat:?}, Hom_U(N, B) {direct:?}"));
        }
        n += 1;
        Ok(())
    };
    for (name, d) in docs {
        for f in d.fixtures.iter().filter(|f| f.lambda.n_t() == 1 && f.lambda.n_u() == 1) {
            for o in &f.comma_objects {
                one(&f.lambda, &d.comma_object(o).unwrap().object.b, &format!("{name}/{o}"))?;
            }
        }
    }
    for seed in 0..RANDOM_LAMBDAS {
        let rl = random_lambda(seed).map_err(|e| e.to_string())?;
        for o in &rl.objects {
            one(&rl.lambda, &o.b, &format!("random Λ seed {seed}"))?;
        }
    }
    Ok(format!("{n} modules B, all degrees"))
}

fn negative_suite() -> Verdict {
    let controls = negative_controls(Field::Rationals);
    for nc in &controls {
        let path = fixture_dir().join("negative").join(format!("{}.json", nc.file));
        let doc = parse(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let out = match nc.command {
            Command::Validate => cli::validate(&doc),
            Command::CheckEquivalence => cli::check_equivalence_command(&doc, &CheckOptions::default()),
        }
        .map_err(|e| format!("{}: {e}", nc.file))?;
        match out.report.first_failure() {
            Some(c) if c.subject == nc.subject && c.name == nc.check => {}
            Some(c) => return Err(format!("{}: first failure {} / {}, expected {} / {}", nc.file, c.subject, c.name, nc.subject, nc.check)),
            None => return Err(format!("{}: nothing failed", nc.file)),
        }
        if nc.command == Command::CheckEquivalence && out.report.checks.iter().any(|c| c.name == "fully_faithful") {
            return Err(format!("{}: equivalence was attempted", nc.file));
        }
    }
    Ok(format!("{} controls, each failing first at its intended check", controls.len()))
}

fn determinism_suite() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_dgtri");
    let mut n = 0;
    for (stem, _) in dg_triangular::fixtures::shipped(Field::Rationals).map_err(|e| e.to_string())? {
        let path = fixture_dir().join(format!("{stem}.json"));
        for cmd in ["validate", "check-equivalence", "lambda"] {
            let run = || {
                Process::new(bin)
                    .args([cmd, "--input", path.to_str().unwrap(), "--seed", "17"])
                    .output()
                    .map_err(|e| e.to_string())
            };
            let (a, b) = (run()?, run()?);
            if !a.status.success() || a.stdout != b.stdout || a.stdout.is_empty() {
                return Err(format!("{stem} {cmd}: outputs differ or command failed"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} command runs reproduced byte for byte"))
}

fn main() -> ExitCode {
    let docs = shipped_documents();
    let criteria: [(&str, &dyn Fn() -> Verdict); 8] = [
        ("axiom suite", &|| axiom_suite(&docs)),
        ("sign rules", &|| sign_suite(&docs)),
        ("Λ is a dg-category", &|| lambda_suite(&docs)),
        ("product identities", &|| products_suite(&docs)),
        ("comma equivalence", &|| equivalence_suite(&docs)),
        ("one-object 𝔾 dimensions", &|| one_object_suite(&docs)),
        ("negative controls", &negative_suite),
        ("determinism", &determinism_suite),
    ];
    let mut ok = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS ({detail}; {:.1} s)", i + 1, start.elapsed().as_secs_f64()),
            Err(why) => {
                ok = false;
                println!("criterion {} ({name}): FAIL ({why})", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

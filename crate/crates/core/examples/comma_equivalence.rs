//! Comma objects from representables, and the full equivalence check.

use dg_triangular::comma::{check_equivalence, product_identities, EquivalenceOptions};
use dg_triangular::fixtures::representable_objects;
use dg_triangular::functor::representable_module;
use dg_triangular::linalg::Field;
use dg_triangular::presets::koszul_bimodule;
use dg_triangular::triangular::build_lambda_unchecked;

fn main() -> dg_triangular::Result<()> {
    let (u, t, m) = koszul_bimodule(Field::Rationals, true);
    let lam = build_lambda_unchecked(&t, &u, &m)?;
    let (objects, _) = representable_objects(&t, &u, &m)?;
    for o in &objects {
        println!("{}: {}", o.name, product_identities(&lam, o).summary());
    }
    let modules: Vec<_> = (0..lam.category.len()).map(|x| representable_module(&lam.category, x)).collect();
    let report = check_equivalence(&lam, &objects, &modules, &EquivalenceOptions::default())?;
    for t in &report.tables {
        println!("{} {:?}", t.name, t.dims);
    }
    println!("{}", report.summary());
    Ok(())
}

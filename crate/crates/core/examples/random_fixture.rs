//! Seeded random fixtures, validated; pass a seed as the first argument.

use dg_triangular::bimodule::validate_bimodule;
use dg_triangular::category::validate_dg_category;
use dg_triangular::functor::validate_dg_functor;
use dg_triangular::random::random_fixture;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let f = random_fixture(seed);
    println!("seed {seed}, field {}, {} objects", f.field, f.category.len());
    for x in 0..f.category.len() {
        for y in 0..f.category.len() {
            println!("  Hom({x}, {y}) {:?}", f.category.hom(x, y).dims().as_map());
        }
    }
    let mut report = validate_dg_category(&f.category);
    for m in &f.modules {
        report.absorb(validate_dg_functor(&f.category, m));
    }
    let (u, t, m) = &f.bimodule;
    report.absorb(validate_bimodule(u, t, m));
    println!("{}", report.summary());
}

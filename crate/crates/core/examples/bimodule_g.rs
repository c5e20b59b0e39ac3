//! A bimodule, its validation, and the functor 𝔾 on a representable.

use dg_triangular::bimodule::{g_on_objects, validate_bimodule};
use dg_triangular::functor::{representable_module, validate_dg_functor};
use dg_triangular::linalg::Field;
use dg_triangular::presets::koszul_bimodule;

fn main() -> dg_triangular::Result<()> {
    for koszul in [true, false] {
        let (u, t, m) = koszul_bimodule(Field::Rationals, koszul);
        let report = validate_bimodule(&u, &t, &m);
        println!("Koszul sign {koszul}: {}", report.summary());
        if report.passed() {
            let b = representable_module(&u, 0);
            let g = g_on_objects(&u, &t, &m, &b)?;
            println!("  𝔾(h) dims {:?}, valid: {}", g.module.value(0).dims().as_map(), validate_dg_functor(&t, &g.module).passed());
        }
    }
    Ok(())
}

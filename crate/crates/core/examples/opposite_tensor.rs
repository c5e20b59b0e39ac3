//! Opposite and tensor product of dg-categories, validated.

use dg_triangular::category::{opposite_category, tensor_category, validate_dg_category};
use dg_triangular::linalg::Field;
use dg_triangular::presets::{arrow_category, exterior_algebra};

fn main() -> dg_triangular::Result<()> {
    let e = exterior_algebra(Field::Rationals, "E", 1);
    let a = arrow_category(Field::Rationals);
    let op = opposite_category(&e);
    let t = tensor_category(&e, &a)?;
    for c in [&e, &op, &t] {
        println!("{}: {} objects, {}", c.name, c.len(), validate_dg_category(c).summary());
    }
    println!("(E^op)^op = E: {}", opposite_category(&op) == e);
    Ok(())
}

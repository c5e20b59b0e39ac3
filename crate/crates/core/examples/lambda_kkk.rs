//! The triangular matrix category of T = U = M = K.

use dg_triangular::bimodule::trivial_bimodule;
use dg_triangular::category::unit_category;
use dg_triangular::linalg::Field;
use dg_triangular::triangular::{build_lambda, lambda_leibniz_check, LambdaOptions};

fn main() -> dg_triangular::Result<()> {
    let k = unit_category(Field::Rationals);
    let m = trivial_bimodule("M", &k, &k, 0)?;
    let (lam, report) = build_lambda(&k, &k, &m, LambdaOptions::default())?;
    println!("{}", report.summary());
    println!("{}", lambda_leibniz_check(&lam).summary());
    let c = &lam.category;
    for x in 0..c.len() {
        for y in 0..c.len() {
            println!("Hom({}, {}) total dimension {}", c.objects()[x], c.objects()[y], c.hom(x, y).dims().total());
        }
    }
    Ok(())
}

//! The Hom and tensor complexes of two small complexes of vector spaces.

use dg_triangular::dg_kmod::{hom_complex_with_layout, tensor_complex_with_layout, DgModule};
use dg_triangular::linalg::Field;

fn main() {
    let field = Field::Rationals;
    let interval = DgModule::interval(field, 0);
    let point = DgModule::unit(field, 1);
    let (h, _) = hom_complex_with_layout(&interval, &point);
    let (t, _) = tensor_complex_with_layout(&interval, &interval);
    println!("Hom(I, K[1]) dims {:?}, d² = 0: {}", h.dims().as_map(), h.is_complex());
    println!("I ⊗ I dims {:?}, d² = 0: {}", t.dims().as_map(), t.is_complex());
}

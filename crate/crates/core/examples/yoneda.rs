//! Representable modules and the dg Yoneda lemma in dimensions.

use dg_triangular::functor::{dgnat_dims, representable_module, validate_dg_functor};
use dg_triangular::linalg::Field;
use dg_triangular::presets::arrow_category;
use dg_triangular::random::{random_category, rng};

fn main() {
    let mut r = rng(7);
    let cats = [arrow_category(Field::Rationals), random_category(&mut r, Field::Prime(5), "C", 3)];
    for c in &cats {
        for a in 0..c.len() {
            let h = representable_module(c, a);
            let ok = validate_dg_functor(c, &h).passed();
            for x in 0..c.len() {
                let hx = representable_module(c, x);
                // DgNat(Hom(x, −), Hom(a, −)) ≅ Hom(a, x)
                let nat = dgnat_dims(c, &hx, &h);
                println!("{}: Nat(h{x}, h{a}) {:?} vs Hom({a}, {x}) {:?}, module valid: {ok}", c.name, nat.as_map(), c.hom(a, x).dims().as_map());
            }
        }
    }
}

//! Small hand-built dg-categories used by examples, fixtures and tests.

use crate::category::DgCategory;
use crate::dg_kmod::DgModule;
use crate::linalg::{Dims, Field, GradedMap, GradedModule};

pub use crate::category::unit_category;

/// One object `*` with `End(*) = K·1 ⊕ K·x`, `|x| = degree`, `x ∘ x = 0`, `d = 0`.
pub fn exterior_algebra(field: Field, name: &str, degree: i64) -> DgCategory {
    assert_ne!(degree, 0, "the generator must sit outside degree 0");
    let mut dims = Dims::new();
    dims.set(0, 1);
    dims.set(degree, 1);
    let mut c = DgCategory::new(name, field, vec!["*".into()]).expect("one object");
    c.set_hom(0, 0, DgModule::with_zero_differential(field, dims)).expect("field");
    c.set_identity(0, vec![field.one()]).expect("shape");
    let one = field.one();
    c.set_composite((0, 0, 0), (0, 0), (0, 0), vec![one.clone()]).expect("1∘1");
    c.set_composite((0, 0, 0), (0, 0), (degree, 0), vec![one.clone()]).expect("1∘x");
    c.set_composite((0, 0, 0), (degree, 0), (0, 0), vec![one]).expect("x∘1");
    c
}

/// A one-object category whose only morphism space is `K·1` in degree 0 but
/// whose composition is scaled: `1 ∘ 1 = s · 1`. Valid only for `s = 1`.
pub fn scaled_unit(field: Field, s: i64) -> DgCategory {
    let mut c = unit_category(field);
    c.set_composite((0, 0, 0), (0, 0), (0, 0), vec![field.from_i64(s)]).expect("shape");
    c
}

/// `K` in the listed degrees with zero differential.
pub fn graded_k(field: Field, degrees: &[i64]) -> DgModule {
    let dims: Dims = degrees.iter().map(|&d| (d, 1)).collect();
    DgModule::new(GradedModule::new(dims.clone()), GradedMap::zero(field, 1, &dims, &dims)).expect("shape")
}

/// Two objects `a`, `b` with a single degree-0 arrow `a → b` besides identities.
pub fn arrow_category(field: Field) -> DgCategory {
    let mut c = DgCategory::new("A2", field, vec!["a".into(), "b".into()]).expect("distinct");
    for (x, y) in [(0, 0), (1, 1), (0, 1)] {
        c.set_hom(x, y, DgModule::unit(field, 0)).expect("field");
    }
    let one = || vec![field.one()];
    c.set_identity(0, one()).expect("shape");
    c.set_identity(1, one()).expect("shape");
    for (x, y, z) in [(0, 0, 0), (1, 1, 1), (0, 0, 1), (0, 1, 1)] {
        c.set_composite((x, y, z), (0, 0), (0, 0), one()).expect("shape");
    }
    c
}

/// A complex viewed as a module over the unit category (`1 ↦ id`).
pub fn module_over_unit(base: &DgCategory, value: DgModule) -> crate::functor::DgFunctor {
    let field = base.field();
    let id = GradedMap::identity(field, value.dims());
    let mut m = crate::functor::DgFunctor::new("M", base, vec![value]).expect("one object");
    m.set_action(0, 0, (0, 0), &id).expect("shape");
    m
}

/// `U = E(x)`, `T = E(y)` (both generators of degree 1) and `M = K⟨1, x, y, xy⟩`
/// with `x` multiplying on the left and `y` on the right.
///
/// With `koszul = true` the right action is stored as
/// `M(1 ⊗ y^op)(m) = (−1)^{|m|} m y`, which makes `M` a bimodule; with
/// `koszul = false` the sign is dropped and only the interchange law fails.
pub fn koszul_bimodule(field: Field, koszul: bool) -> (DgCategory, DgCategory, crate::bimodule::Bimodule) {
    use crate::linalg::Matrix;
    let u = exterior_algebra(field, "Ex", 1);
    let t = exterior_algebra(field, "Ey", 1);
    let mut dims = Dims::new();
    dims.set(0, 1);
    dims.set(1, 2);
    dims.set(2, 1);
    let value = DgModule::with_zero_differential(field, dims.clone());
    let mut m = crate::bimodule::Bimodule::new("Mxy", &u, &t, vec![vec![value]]).expect("shapes");
    let id = GradedMap::identity(field, &dims);
    m.set_left(0, 0, 0, (0, 0), &id).expect("shape");
    m.set_right(0, 0, 0, (0, 0), &id).expect("shape");
    let entry = |rows: usize, cols: usize, r: usize, c: usize, v: i64| {
        let mut b = Matrix::zeros(field, rows, cols);
        b.set(r, c, field.from_i64(v));
        b
    };
    // degree-1 basis is (x, y)
    let mut lx = GradedMap::zero(field, 1, &dims, &dims);
    lx.set_block(0, entry(2, 1, 0, 0, 1)).expect("1 ↦ x");
    lx.set_block(1, entry(1, 2, 0, 1, 1)).expect("y ↦ xy");
    m.set_left(0, 0, 0, (1, 0), &lx).expect("shape");
    let mut ry = GradedMap::zero(field, 1, &dims, &dims);
    ry.set_block(0, entry(2, 1, 1, 0, 1)).expect("1 ↦ y");
    ry.set_block(1, entry(1, 2, 0, 0, if koszul { -1 } else { 1 })).expect("x ↦ ±xy");
    m.set_right(0, 0, 0, (1, 0), &ry).expect("shape");
    (u, t, m)
}

/// `E′ = K·1 ⊕ K·x` with `|x| = −1` and `dx = 1`: an acyclic dg-algebra.
pub fn acyclic_exterior(field: Field, name: &str) -> DgCategory {
    use crate::linalg::Matrix;
    let mut c = exterior_algebra(field, name, -1);
    let dims = c.hom(0, 0).dims().clone();
    let mut d = GradedMap::zero(field, 1, &dims, &dims);
    d.set_block(-1, Matrix::identity(field, 1)).expect("x ↦ 1");
    let h = DgModule::new(GradedModule::new(dims), d).expect("shape");
    c.set_hom(0, 0, h).expect("field");
    c.set_identity(0, vec![field.one()]).expect("shape");
    let one = field.one();
    c.set_composite((0, 0, 0), (0, 0), (0, 0), vec![one.clone()]).expect("1∘1");
    c.set_composite((0, 0, 0), (0, 0), (-1, 0), vec![one.clone()]).expect("1∘x");
    c.set_composite((0, 0, 0), (-1, 0), (0, 0), vec![one]).expect("x∘1");
    c
}

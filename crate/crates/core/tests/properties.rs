mod common;

use proptest::prelude::*;

use dg_triangular::bimodule::validate_bimodule;
use dg_triangular::category::{opposite_category, tensor_category, unit_category, validate_dg_category};
use dg_triangular::dg_kmod::{hom_complex_with_layout, tensor_complex_with_layout};
use dg_triangular::format::{emit, parse, Document};
use dg_triangular::functor::validate_dg_functor;
use dg_triangular::linalg::{Field, LinearSystem, Matrix, Scalar};
use dg_triangular::random::{random_category, random_complex, random_fixture, rng};

use common::{contravariant_hom_sign, hom_differential_rule, opposite_signs, tensor_differential_rule};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(5)), Just(Field::Prime(7)), Just(Field::Prime(2))]
}

fn scalar(field: Field) -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=12).prop_map(move |(n, d)| field.parse_scalar(&format!("{n}/{d}")).unwrap_or_else(|_| field.from_i64(n)))
}

fn matrix(field: Field, max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            let rows = v.chunks(c).map(|row| row.iter().map(|&x| field.from_i64(x)).collect()).collect();
            Matrix::from_rows(field, rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_print_and_parse_back((f, s) in field().prop_flat_map(|f| (Just(f), scalar(f)))) {
        let text = s.to_string();
        prop_assert_eq!(f.parse_scalar(&text).unwrap(), s);
        prop_assert!(!text.ends_with("/1"));
        if let Field::Prime(p) = f {
            let v: u64 = text.parse().unwrap();
            prop_assert!(v < p);
        }
    }

    #[test]
    fn nonzero_scalars_invert((a, b) in field().prop_flat_map(|f| (scalar(f), scalar(f)))) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
        prop_assert_eq!(&(&b * &a) * &a.inv().unwrap(), b.clone());
        prop_assert_eq!(&(&b + &a) - &a, b);
    }

    #[test]
    fn solver_agrees_with_rank(m in field().prop_flat_map(|f| matrix(f, 5))) {
        let f = m.field();
        let mut sys = LinearSystem::new(f, m.cols());
        for r in 0..m.rows() {
            sys.add_dense(m.row(r).to_vec()).unwrap();
        }
        let sol = sys.solve();
        prop_assert_eq!(sol.dim(), m.cols() - m.rank());
        for v in sol.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        let (kernel, _) = m.kernel_basis();
        prop_assert_eq!(kernel.len(), sol.dim());
    }

    #[test]
    fn inverse_is_two_sided(m in field().prop_flat_map(|f| matrix(f, 4))) {
        if let Some(inv) = m.inverse() {
            let n = m.rows();
            prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(m.field(), n));
            prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(m.field(), n));
        } else {
            prop_assert!(m.rows() != m.cols() || m.rank() < m.rows());
        }
    }

    #[test]
    fn random_fixtures_are_valid(seed in any::<u64>()) {
        let f = random_fixture(seed);
        prop_assert!(validate_dg_category(&f.category).passed());
        for m in &f.modules {
            prop_assert!(validate_dg_functor(&f.category, m).passed());
        }
        prop_assert!(validate_dg_functor(&f.yoneda.0, &f.yoneda.1).passed());
        let (u, t, m) = &f.bimodule;
        prop_assert!(validate_bimodule(u, t, m).passed());
    }

    #[test]
    fn opposite_is_an_involution(seed in any::<u64>()) {
        let c = random_fixture(seed).category;
        let op = opposite_category(&c);
        prop_assert!(validate_dg_category(&op).passed());
        prop_assert_eq!(opposite_category(&op), c.clone());
        prop_assert!(opposite_signs(&c).is_ok());
        prop_assert!(contravariant_hom_sign(&c).is_ok());
    }

    #[test]
    fn tensor_products_are_categories(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = if seed % 2 == 0 { Field::Rationals } else { Field::Prime(5) };
        let a = random_category(&mut r, f, "A", 1 + (seed % 2) as usize);
        let b = random_category(&mut r, f, "B", 2);
        let t = tensor_category(&a, &b).unwrap();
        prop_assert!(validate_dg_category(&t).passed());
        let with_unit = tensor_category(&a, &unit_category(f)).unwrap();
        prop_assert_eq!(with_unit.hom(0, 0).dims(), a.hom(0, 0).dims());
    }

    #[test]
    fn hom_and_tensor_complexes_square_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = if seed % 3 == 0 { Field::Prime(5) } else { Field::Rationals };
        let (m, n) = (random_complex(&mut r, f), random_complex(&mut r, f));
        let (h, _) = hom_complex_with_layout(&m, &n);
        let (t, _) = tensor_complex_with_layout(&m, &n);
        prop_assert!(h.is_complex());
        prop_assert!(t.is_complex());
        prop_assert!(hom_differential_rule(&m, &n).is_ok());
        prop_assert!(tensor_differential_rule(&m, &n).is_ok());
    }

    #[test]
    fn random_categories_round_trip_canonically(seed in any::<u64>()) {
        let fx = random_fixture(seed);
        let mut doc = Document::new(fx.field);
        doc.categories.push(fx.category.clone());
        let once = emit(&doc).unwrap();
        let back = parse(&once).unwrap();
        prop_assert_eq!(&back.categories[0], &fx.category);
        prop_assert_eq!(emit(&back).unwrap(), once);
    }
}

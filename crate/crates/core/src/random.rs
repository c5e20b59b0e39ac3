//! Seeded random fixtures whose validity is guaranteed by construction.
//!
//! Distributions, all uniform:
//! - field: ℚ or F_5;
//! - object count: 1 to 3;
//! - each object is a complex spanned by at most one basis vector in each of
//!   two adjacent degrees `s, s + 1` with `s ∈ {−1, 0}`: one of `K[s]`,
//!   `K[s + 1]`, `K[s] ⊕ K[s + 1]` with `d = 0`, or the interval with
//!   `d = id`, then rescaled by a random nonzero scalar per degree;
//! - the category is the full dg subcategory of `DgMod(K)` on these
//!   complexes, so Hom dimensions are at most 2 per degree and Hom windows
//!   lie in `[−2, 2]`;
//! - modules are representables, co-representables over `C^op`, direct
//!   sums of two representables, and random changes of basis of these;
//! - bimodules are Hom bimodules on random object subsets.
//!
//! Entries of random matrices are drawn from `{−2, …, 2}`.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bimodule::{hom_bimodule, Bimodule};
use crate::category::{full_subcategory, DgCategory};
use crate::comma::{extract_comma_from_module, CommaObject};
use crate::dg_kmod::DgModule;
use crate::error::Result;
use crate::functor::{change_module_basis, direct_sum_modules, representable_module, yoneda_module, DgFunctor};
use crate::linalg::{Dims, Field, GradedMap, Matrix};
use crate::triangular::{build_lambda_unchecked, Lambda};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_field(rng: &mut ChaCha8Rng) -> Field {
    if rng.random_bool(0.5) {
        Field::Rationals
    } else {
        Field::Prime(5)
    }
}

/// A random invertible `n × n` matrix and its inverse.
pub fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> (Matrix, Matrix) {
    loop {
        let mut m = Matrix::zeros(field, n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, field.from_i64(rng.random_range(-2..=2)));
            }
        }
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

/// A random degree-0 automorphism of a graded space and its inverse.
pub fn random_automorphism(rng: &mut ChaCha8Rng, field: Field, dims: &Dims) -> (GradedMap, GradedMap) {
    let mut p = GradedMap::zero(field, 0, dims, dims);
    let mut q = GradedMap::zero(field, 0, dims, dims);
    for (n, d) in dims.iter() {
        let (a, b) = random_invertible(rng, field, d);
        p.set_block(n, a).expect("square");
        q.set_block(n, b).expect("square");
    }
    (p, q)
}

pub fn random_complex(rng: &mut ChaCha8Rng, field: Field) -> DgModule {
    let s = *[-1, 0].choose(rng).expect("nonempty");
    let shape = rng.random_range(0..4);
    let c = match shape {
        0 => DgModule::unit(field, s),
        1 => DgModule::unit(field, s + 1),
        2 => DgModule::with_zero_differential(field, [(s, 1), (s + 1, 1)].into_iter().collect()),
        _ => DgModule::interval(field, s),
    };
    let (p, q) = random_automorphism(rng, field, &c.dims().clone());
    c.change_basis(&p, &q).expect("shape")
}

pub fn random_category(rng: &mut ChaCha8Rng, field: Field, name: &str, objects: usize) -> DgCategory {
    let objs: Vec<(String, DgModule)> = (0..objects).map(|i| (format!("c{i}"), random_complex(rng, field))).collect();
    full_subcategory(name, field, &objs).expect("valid by construction")
}

/// Transports `m` along random objectwise automorphisms.
pub fn random_basis_change(rng: &mut ChaCha8Rng, base: &DgCategory, m: &DgFunctor) -> DgFunctor {
    let field = base.field();
    let (p, q): (Vec<_>, Vec<_>) = (0..base.len()).map(|x| random_automorphism(rng, field, m.value(x).dims())).unzip();
    change_module_basis(base, m, &p, &q).expect("shapes")
}

/// A random module over `c`: representable, a sum of two, or either up to
/// a random change of basis.
pub fn random_module(rng: &mut ChaCha8Rng, c: &DgCategory) -> DgFunctor {
    let a = rng.random_range(0..c.len());
    let mut m = if rng.random_bool(0.5) {
        representable_module(c, a)
    } else {
        let b = rng.random_range(0..c.len());
        direct_sum_modules("sum", c, &[&representable_module(c, a), &representable_module(c, b)]).expect("same base")
    };
    if rng.random_bool(0.5) {
        m = random_basis_change(rng, c, &m);
    }
    m
}

fn subset(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    let k = rng.random_range(1..=n.min(max));
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        all.swap(i, j);
    }
    let mut s = all[..k].to_vec();
    s.sort_unstable();
    s
}

/// Everything the axiom suite checks for one seed.
#[derive(Clone, Debug)]
pub struct RandomFixture {
    pub seed: u64,
    pub field: Field,
    pub category: DgCategory,
    /// Modules over `category`.
    pub modules: Vec<DgFunctor>,
    /// `(C^op, Hom_C(−, A))`.
    pub yoneda: (DgCategory, DgFunctor),
    /// `(U, T, M)`.
    pub bimodule: (DgCategory, DgCategory, Bimodule),
}

pub fn random_fixture(seed: u64) -> RandomFixture {
    let mut rng = rng(seed);
    let field = random_field(&mut rng);
    let n = rng.random_range(1..=3);
    let category = random_category(&mut rng, field, "C", n);
    let modules = (0..2).map(|_| random_module(&mut rng, &category)).collect();
    let yoneda = yoneda_module(&category, rng.random_range(0..n));
    let (u_objs, t_objs) = (subset(&mut rng, n, 3), subset(&mut rng, n, 3));
    let bimodule = hom_bimodule("M", &category, &u_objs, &t_objs).expect("valid by construction");
    RandomFixture { seed, field, category, modules, yoneda, bimodule }
}

/// A random one-object `T`, `U` and Hom bimodule, its Λ, and comma objects
/// extracted from representables and from one random Λ-module.
#[derive(Clone, Debug)]
pub struct RandomLambda {
    pub seed: u64,
    pub lambda: Lambda,
    pub objects: Vec<CommaObject>,
    pub modules: Vec<DgFunctor>,
}

pub fn random_lambda(seed: u64) -> Result<RandomLambda> {
    let mut rng = rng(seed);
    let field = random_field(&mut rng);
    let c = random_category(&mut rng, field, "C", 2);
    let (u, t, m) = hom_bimodule("M", &c, &[rng.random_range(0..2)], &[rng.random_range(0..2)])?;
    let lambda = build_lambda_unchecked(&t, &u, &m)?;
    let x = lambda.object(Some(0), Some(0));
    let reps = [x, lambda.i1(0), lambda.i2(0)];
    let mut modules: Vec<DgFunctor> = reps.iter().map(|&r| representable_module(&lambda.category, r)).collect();
    modules.push(random_module(&mut rng, &lambda.category));
    let mut objects = Vec::new();
    for (k, md) in modules.iter().enumerate() {
        let mut o = extract_comma_from_module(&lambda, md)?;
        o.name = format!("o{k}");
        objects.push(o);
    }
    Ok(RandomLambda { seed, lambda, objects, modules })
}

//! The comma dg-category `(DgMod(T), 𝔾 DgMod(U))`, the functor `𝔉` into
//! Λ-modules, and the executable equivalence checks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bimodule::{Bimodule, GModule};
use crate::category::{basis_of, fmt_vec, DgCategory};
use crate::dg_kmod::{block_diagonal, hom_differential, unit_vector, DgModule, HomLayout, SumLayout};
use crate::error::{structural, Error, Result};
use crate::functor::{
    compose_nat, dgnat_differential, dgnat_space, dgnat_window, naturality_tally, validate_dg_functor, DgFunctor, NatTransformation,
};
use crate::linalg::{compose_graded, Dims, Field, GradedMap, LinearSystem, Matrix, Scalar};
use crate::report::{Report, Tally};
use crate::triangular::{restrict_module, Block, Lambda};

/// `(A, f, B)` with `f : A → 𝔾(B)` stored unfolded: for each `(T, U)` the
/// map `x ↦ [f_T(x)]_U` from `A(T)` to `Hom(M(U, T), B(U))`, of degree
/// `degree` (which must be 0 for a valid object).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommaObject {
    pub name: String,
    pub a: DgFunctor,
    pub b: DgFunctor,
    pub degree: i64,
    pairing: BTreeMap<(usize, usize), GradedMap>,
}

impl CommaObject {
    /// The object with `f = 0`.
    pub fn new(name: impl Into<String>, m: &Bimodule, a: DgFunctor, b: DgFunctor, degree: i64) -> Result<Self> {
        if a.len() != m.t_len() || b.len() != m.u_len() {
            return Err(structural("comma object modules do not match T and U"));
        }
        let mut pairing = BTreeMap::new();
        for t in 0..m.t_len() {
            for u in 0..m.u_len() {
                let l = HomLayout::new(m.value(u, t).dims(), b.value(u).dims());
                pairing.insert((t, u), GradedMap::zero(m.field(), degree, a.value(t).dims(), l.dims()));
            }
        }
        Ok(CommaObject { name: name.into(), a, b, degree, pairing })
    }

    pub fn pairing_map(&self, t: usize, u: usize) -> &GradedMap {
        &self.pairing[&(t, u)]
    }

    pub fn set_pairing_map(&mut self, t: usize, u: usize, map: GradedMap) -> Result<()> {
        let old = &self.pairing[&(t, u)];
        if map.degree() != old.degree() || map.source() != old.source() || map.target() != old.target() {
            return Err(structural("pairing map has the wrong shape"));
        }
        self.pairing.insert((t, u), map);
        Ok(())
    }

    /// Sets `[f_T(x)]_U(m) = value` for basis elements `x`, `m`.
    pub fn set_pairing(&mut self, m: &Bimodule, (t, u): (usize, usize), x: (i64, usize), mb: (i64, usize), value: Vec<Scalar>) -> Result<()> {
        let layout = HomLayout::new(m.value(u, t).dims(), self.b.value(u).dims());
        let bdim = self.b.value(u).dims().get(mb.0 + x.0 + self.degree);
        if value.len() != bdim || x.1 >= self.a.value(t).dims().get(x.0) || mb.1 >= m.value(u, t).dims().get(mb.0) {
            return Err(structural(format!("pairing entry x = {x:?}, m = {mb:?} does not fit")));
        }
        let map = self.pairing.get_mut(&(t, u)).expect("pair present");
        let mut block = map.block(x.0);
        let n = x.0 + self.degree;
        for (r, v) in value.into_iter().enumerate() {
            block.set(layout.index(n, mb.0, mb.1, r), x.1, v);
        }
        map.set_block(x.0, block)
    }

    /// `[f_T(x)]_U`, a map `M(U, T) → B(U)` of degree `|x| + degree`.
    pub fn f_component(&self, m: &Bimodule, t: usize, u: usize, xd: i64, x: &[Scalar]) -> GradedMap {
        let layout = HomLayout::new(m.value(u, t).dims(), self.b.value(u).dims());
        let v = self.pairing[&(t, u)].apply(xd, x).expect("element of A(T)");
        layout.devectorize(m.field(), xd + self.degree, &v)
    }

    /// `f_T(x) : M_T → B` as a transformation over `U`.
    pub fn f_image(&self, m: &Bimodule, t: usize, xd: i64, x: &[Scalar]) -> NatTransformation {
        let components = (0..m.u_len()).map(|u| self.f_component(m, t, u, xd, x)).collect();
        NatTransformation { degree: xd + self.degree, components }
    }

    /// `f` as a transformation `A → 𝔾(B)` in the basis of `gb`.
    pub fn to_g_transformation(&self, m: &Bimodule, gb: &GModule) -> Result<NatTransformation> {
        let field = m.field();
        let mut components = Vec::new();
        for t in 0..m.t_len() {
            let src = self.a.value(t).dims();
            let tgt = gb.module.value(t).dims();
            let mut map = GradedMap::zero(field, self.degree, src, tgt);
            for (n, dim) in src.iter() {
                let mut cols = Vec::with_capacity(dim);
                for k in 0..dim {
                    let img = self.f_image(m, t, n, &unit_vector(field, dim, k));
                    cols.push(gb.fold(t, &img).ok_or_else(|| structural("f_T(x) is not a U-natural transformation"))?);
                }
                map.set_block(n, Matrix::from_columns(field, tgt.get(n + self.degree), &cols))?;
            }
            components.push(map);
        }
        Ok(NatTransformation { degree: self.degree, components })
    }
}

/// `m · x = (−1)^{|x||m|} [f_T(x)]_U(m)` for `m ∈ M(U, T)`, `x ∈ A(T)`.
pub fn dot_product(lam: &Lambda, o: &CommaObject, (t, u): (usize, usize), (md, m): (i64, &[Scalar]), (xd, x): (i64, &[Scalar])) -> Vec<Scalar> {
    let field = lam.category.field();
    let f = o.f_component(&lam.m, t, u, xd, x);
    let sign = field.sign(xd * md);
    f.apply(md, m).expect("element of M(U, T)").iter().map(|s| &sign * s).collect()
}

/// Order: `degree_zero`, `modules`, `components_in_G`, `naturality`, `closed`.
pub fn validate_comma_object(lam: &Lambda, o: &CommaObject) -> Report {
    let mut report = Report::new("validate");
    let subject = format!("comma object {}", o.name);
    let field = lam.category.field();
    report.push_bool(&subject, "degree_zero", o.degree == 0, || format!("f has degree {}", o.degree));

    let mut tal = Tally::new();
    for (base, m) in [(&lam.t, &o.a), (&lam.u, &o.b)] {
        let r = validate_dg_functor(base, m);
        tal.record(r.passed(), || r.summary());
    }
    report.push(&subject, "modules", tal);

    let mut tal = Tally::new();
    for t in 0..lam.n_t() {
        for (xd, xi) in basis_of(o.a.value(t).dims()) {
            let x = unit_vector(field, o.a.value(t).dims().get(xd), xi);
            let img = o.f_image(&lam.m, t, xd, &x);
            let ok = naturality_tally(&lam.u, lam.m.left_slice(t), &o.b, &img).ok();
            tal.record(ok, || format!("f_{}(e[{xd}][{xi}]) is not natural over U", lam.t.objects()[t]));
        }
    }
    report.push(&subject, "components_in_G", tal);

    // (−1)^{|x||t|} [f_T(x)]_U ∘ M(1 ⊗ t^op) = [f_{T′}(A(t) x)]_U
    let mut tal = Tally::new();
    for t1 in 0..lam.n_t() {
        for t2 in 0..lam.n_t() {
            for tb in basis_of(lam.t.hom(t1, t2).dims()) {
                let at = o.a.act_basis(t1, t2, tb);
                for (xd, xi) in basis_of(o.a.value(t1).dims()) {
                    let x = unit_vector(field, o.a.value(t1).dims().get(xd), xi);
                    let tx = at.apply(xd, &x).expect("shape");
                    for u in 0..lam.n_u() {
                        let lhs = compose_graded(&o.f_component(&lam.m, t1, u, xd, &x), &lam.m.right_action_basis(u, t1, t2, tb))
                            .expect("composable")
                            .scale(&field.sign(xd * tb.0));
                        let rhs = o.f_component(&lam.m, t2, u, xd + tb.0, &tx);
                        tal.record(lhs == rhs, || {
                            format!(
                                "t = e[{}][{}] of hom_T({}, {}), x = e[{xd}][{xi}], U = {}: 𝔾(B)(t) f_T(x) ≠ f_T′(A(t) x)",
                                tb.0, tb.1, lam.t.objects()[t1], lam.t.objects()[t2], lam.u.objects()[u]
                            )
                        });
                    }
                }
            }
        }
    }
    report.push(&subject, "naturality", tal);

    // d(f_T(x)) = f_T(d x), componentwise
    let mut tal = Tally::new();
    for t in 0..lam.n_t() {
        for (xd, xi) in basis_of(o.a.value(t).dims()) {
            let x = unit_vector(field, o.a.value(t).dims().get(xd), xi);
            let dx = o.a.value(t).d.apply(xd, &x).expect("shape");
            for u in 0..lam.n_u() {
                let lhs = hom_differential(lam.m.value(u, t), o.b.value(u), &o.f_component(&lam.m, t, u, xd, &x)).expect("shape");
                let rhs = o.f_component(&lam.m, t, u, xd + 1, &dx);
                tal.record(lhs == rhs, || {
                    format!("x = e[{xd}][{xi}] of A({}), U = {}: d(f_T(x)) ≠ f_T(dx)", lam.t.objects()[t], lam.u.objects()[u])
                });
            }
        }
    }
    report.push(&subject, "closed", tal);
    report
}

/// A morphism `(α, β)` of the comma category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommaMorphism {
    pub degree: i64,
    pub alpha: NatTransformation,
    pub beta: NatTransformation,
}

/// Which form of the commuting square defines comma morphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Square {
    /// `f′ ∘ α = 𝔾(β) ∘ f`.
    Strict,
    /// `f′_T(α_T x) = (−1)^{n|x|} β ∘ f_T(x)`; diagnostic only.
    Signed,
}

/// `Hom^n` of the comma category with an exact basis of pairs `(α, β)`.
#[derive(Clone, Debug)]
pub struct CommaHomSpace {
    pub degree: i64,
    pub basis: Vec<CommaMorphism>,
}

impl CommaHomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn comma_hom_space(lam: &Lambda, o: &CommaObject, o2: &CommaObject, n: i64) -> CommaHomSpace {
    comma_hom_space_with(lam, o, o2, n, Square::Strict)
}

pub fn comma_hom_space_with(lam: &Lambda, o: &CommaObject, o2: &CommaObject, n: i64, square: Square) -> CommaHomSpace {
    let field = lam.category.field();
    let sa = dgnat_space(&lam.t, &o.a, &o2.a, n);
    let sb = dgnat_space(&lam.u, &o.b, &o2.b, n);
    let alphas: Vec<NatTransformation> = (0..sa.dim()).map(|k| sa.basis_element(k)).collect();
    let betas: Vec<NatTransformation> = (0..sb.dim()).map(|k| sb.basis_element(k)).collect();
    // One column per unknown: the defect f′_T(α_T x) − ± β ∘ f_T(x), flattened.
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(alphas.len() + betas.len());
    let defect = |alpha: Option<&NatTransformation>, beta: Option<&NatTransformation>| -> Vec<Scalar> {
        let mut out = Vec::new();
        for t in 0..lam.n_t() {
            for (xd, xi) in basis_of(o.a.value(t).dims()) {
                let x = unit_vector(field, o.a.value(t).dims().get(xd), xi);
                for u in 0..lam.n_u() {
                    let layout = HomLayout::new(lam.m.value(u, t).dims(), o2.b.value(u).dims());
                    let mut v = vec![field.zero(); layout.dims().get(xd + n)];
                    if let Some(a) = alpha {
                        let ax = a.components[t].apply(xd, &x).expect("shape");
                        v = layout.vectorize(&o2.f_component(&lam.m, t, u, xd + n, &ax));
                    }
                    if let Some(b) = beta {
                        let bf = compose_graded(&b.components[u], &o.f_component(&lam.m, t, u, xd, &x)).expect("composable");
                        let sign = match square {
                            Square::Strict => field.one(),
                            Square::Signed => field.sign(n * xd),
                        };
                        v = layout.vectorize(&bf).iter().map(|s| -(&sign * s)).collect();
                    }
                    out.extend(v);
                }
            }
        }
        out
    };
    for a in &alphas {
        columns.push(defect(Some(a), None));
    }
    for b in &betas {
        columns.push(defect(None, Some(b)));
    }
    let rows = columns.first().map_or(0, Vec::len);
    let mut sys = LinearSystem::new(field, columns.len());
    for r in 0..rows {
        sys.add_sparse(columns.iter().enumerate().filter(|(_, c)| !c[r].is_zero()).map(|(k, c)| (k, c[r].clone())))
            .expect("indices in range");
    }
    let sol = sys.solve();
    let basis = sol
        .basis()
        .iter()
        .map(|v| {
            let (va, vb) = v.split_at(alphas.len());
            CommaMorphism { degree: n, alpha: sa.element(va), beta: sb.element(vb) }
        })
        .collect();
    CommaHomSpace { degree: n, basis }
}

/// `A ∐_f B`: at `(T, U)` the complex `A(T) ⊕ B(U)`; a Λ-morphism
/// `[[t, 0], [m, u]]` acts by `(x, y) ↦ (A(t) x, m · x + B(u) y)`.
pub fn build_coproduct_module(lam: &Lambda, o: &CommaObject) -> Result<DgFunctor> {
    let field = lam.category.field();
    let n = lam.category.len();
    let a_at = |t: Option<usize>| t.map_or_else(|| DgModule::zero(field), |t| o.a.value(t).clone());
    let b_at = |u: Option<usize>| u.map_or_else(|| DgModule::zero(field), |u| o.b.value(u).clone());
    let mut values = Vec::with_capacity(n);
    let mut layouts = Vec::with_capacity(n);
    for x in 0..n {
        let (t, u) = lam.split(x);
        let (a, b) = (a_at(t), b_at(u));
        values.push(crate::dg_kmod::direct_sum(&[&a, &b], field)?);
        layouts.push(SumLayout::new(vec![a.dims().clone(), b.dims().clone()]));
    }
    let mut c = DgFunctor::new(format!("{}∐{}", o.a.name, o.b.name), &lam.category, values)?;
    for x in 0..n {
        let (t1, u1) = lam.split(x);
        for y in 0..n {
            let (t2, u2) = lam.split(y);
            for (deg, k) in basis_of(lam.category.hom(x, y).dims()) {
                let (block, i) = lam.locate(x, y, deg, k);
                let (src, tgt) = (&layouts[x], &layouts[y]);
                let map = match block {
                    Block::T => {
                        let at = o.a.act_basis(t1.unwrap(), t2.unwrap(), (deg, i));
                        block_diagonal(field, deg, src, tgt, &[at, GradedMap::zero(field, deg, &b_at(u1).dims().clone(), &b_at(u2).dims().clone())])?
                    }
                    Block::U => {
                        let bu = o.b.act_basis(u1.unwrap(), u2.unwrap(), (deg, i));
                        block_diagonal(field, deg, src, tgt, &[GradedMap::zero(field, deg, &a_at(t1).dims().clone(), &a_at(t2).dims().clone()), bu])?
                    }
                    Block::M => {
                        // m ∈ M(U₂, T₁): A(T₁) → B(U₂), x ↦ m · x
                        let (t, u) = (t1.unwrap(), u2.unwrap());
                        let adims = o.a.value(t).dims().clone();
                        let bdims = o.b.value(u).dims().clone();
                        let mv = unit_vector(field, lam.m.value(u, t).dims().get(deg), i);
                        let mut dot = GradedMap::zero(field, deg, &adims, &bdims);
                        for (xd, dim) in adims.iter() {
                            let cols: Vec<Vec<Scalar>> = (0..dim)
                                .map(|xi| dot_product(lam, o, (t, u), (deg, &mv), (xd, &unit_vector(field, dim, xi))))
                                .collect();
                            dot.set_block(xd, Matrix::from_columns(field, bdims.get(xd + deg), &cols))?;
                        }
                        compose_graded(&tgt.inclusion(field, 1), &compose_graded(&dot, &src.projection(field, 0))?)?
                    }
                };
                c.set_action(x, y, (deg, k), &map)?;
            }
        }
    }
    Ok(c)
}

/// `𝔉(α, β) = α ∐ β`: component `α_T ⊕ β_U` at `(T, U)`.
pub fn f_on_morphisms(lam: &Lambda, o: &CommaObject, o2: &CommaObject, phi: &CommaMorphism) -> Result<NatTransformation> {
    let field = lam.category.field();
    let n = phi.degree;
    let mut components = Vec::with_capacity(lam.category.len());
    for x in 0..lam.category.len() {
        let (t, u) = lam.split(x);
        let dims = |m: &DgFunctor, i: Option<usize>| i.map_or_else(Dims::new, |i| m.value(i).dims().clone());
        let src = SumLayout::new(vec![dims(&o.a, t), dims(&o.b, u)]);
        let tgt = SumLayout::new(vec![dims(&o2.a, t), dims(&o2.b, u)]);
        let al = t.map_or_else(|| GradedMap::zero(field, n, &Dims::new(), &Dims::new()), |t| phi.alpha.components[t].clone());
        let be = u.map_or_else(|| GradedMap::zero(field, n, &Dims::new(), &Dims::new()), |u| phi.beta.components[u].clone());
        components.push(block_diagonal(field, n, &src, &tgt, &[al, be])?);
    }
    Ok(NatTransformation { degree: n, components })
}

/// `(C₁, f, C₂)` with `[f_T(x)]_U(m) = (−1)^{|x||m|} C(m̄)(x)`.
pub fn extract_comma_from_module(lam: &Lambda, c: &DgFunctor) -> Result<CommaObject> {
    let field = lam.category.field();
    let (c1, c2) = restrict_module(lam, c)?;
    let mut o = CommaObject::new(format!("extract({})", c.name), &lam.m, c1, c2, 0)?;
    for t in 0..lam.n_t() {
        for u in 0..lam.n_u() {
            let (src, tgt) = (lam.i1(t), lam.i2(u));
            for (md, mi) in basis_of(lam.m.value(u, t).dims()) {
                let cm = c.act(src, tgt, md, &lam.m_bar(u, t, md, mi));
                for (xd, xi) in basis_of(o.a.value(t).dims()) {
                    let x = unit_vector(field, o.a.value(t).dims().get(xd), xi);
                    let sign = field.sign(xd * md);
                    let v: Vec<Scalar> = cm.apply(xd, &x)?.iter().map(|s| &sign * s).collect();
                    o.set_pairing(&lam.m, (t, u), (xd, xi), (md, mi), v)?;
                }
            }
        }
    }
    Ok(o)
}

/// `φ_{T,U}(x, y) = C(λ_T)(x) + C(λ_U)(y)` from `C₁ ∐_f C₂` to `C`.
pub fn phi_iso(lam: &Lambda, c: &DgFunctor) -> Result<(DgFunctor, NatTransformation)> {
    let field = lam.category.field();
    let o = extract_comma_from_module(lam, c)?;
    let cop = build_coproduct_module(lam, &o)?;
    let mut components = Vec::with_capacity(lam.category.len());
    for x in 0..lam.category.len() {
        let map = match lam.split(x) {
            (Some(t), Some(u)) => {
                let ct = c.act(lam.i1(t), x, 0, &lam.lambda_t(t, u));
                let cu = c.act(lam.i2(u), x, 0, &lam.lambda_u(t, u));
                let layout = SumLayout::new(vec![ct.source().clone(), cu.source().clone()]);
                compose_graded(&ct, &layout.projection(field, 0))?.add(&compose_graded(&cu, &layout.projection(field, 1))?)?
            }
            (Some(_), None) => SumLayout::new(vec![c.value(x).dims().clone(), Dims::new()]).projection(field, 0),
            (None, Some(_)) => SumLayout::new(vec![Dims::new(), c.value(x).dims().clone()]).projection(field, 1),
            (None, None) => GradedMap::zero(field, 0, cop.value(x).dims(), c.value(x).dims()),
        };
        if map.source() != cop.value(x).dims() || map.target() != c.value(x).dims() {
            return Err(structural(format!("φ at {} has the wrong shape", lam.category.objects()[x])));
        }
        components.push(map);
    }
    Ok((cop, NatTransformation { degree: 0, components }))
}

/// The first object at which a component of `eta` is not invertible.
pub fn first_non_invertible(eta: &NatTransformation) -> Option<usize> {
    eta.components
        .iter()
        .position(|c| c.source() != c.target() || c.source().iter().any(|(n, _)| c.block(n).inverse().is_none()))
}

/// Options for [`check_equivalence`].
#[derive(Clone, Debug, Default)]
pub struct EquivalenceOptions {
    pub seed: u64,
    /// Extra degrees to scan; must contain the shape window when given.
    pub window: Option<(i64, i64)>,
    /// Random morphism probes per ordered pair.
    pub probes: usize,
}

fn union(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    match (a, b) {
        (Some(x), Some(y)) => Some((x.0.min(y.0), x.1.max(y.1))),
        (x, None) => x,
        (None, y) => y,
    }
}

fn random_coords(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| field.from_i64(rng.random_range(-2..=2))).collect()
}

/// Runs the full equivalence suite on the supplied objects and modules.
pub fn check_equivalence(lam: &Lambda, objects: &[CommaObject], modules: &[DgFunctor], opts: &EquivalenceOptions) -> Result<Report> {
    let field = lam.category.field();
    let mut report = Report::new("check-equivalence");
    report.seed = Some(opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let images: Vec<DgFunctor> = objects.iter().map(|o| build_coproduct_module(lam, o)).collect::<Result<_>>()?;

    for (o, img) in objects.iter().zip(&images) {
        let subject = format!("comma object {}", o.name);
        let r = validate_dg_functor(&lam.category, img);
        report.push_bool(&subject, "coproduct_module_valid", r.passed(), || r.summary());
        let back = extract_comma_from_module(lam, img)?;
        let renamed = |m: &DgFunctor, name: &str| {
            let mut m = m.clone();
            m.name = name.to_string();
            m
        };
        let same = renamed(&back.a, &o.a.name) == o.a && renamed(&back.b, &o.b.name) == o.b && back.pairing == o.pairing;
        report.push_bool(&subject, "extract_after_build", same, || "extract(A ∐_f B) differs from (A, f, B)".into());
    }

    let mut signed_changes = 0;
    for (o, fo) in objects.iter().zip(&images) {
        for (o2, fo2) in objects.iter().zip(&images) {
            let subject = format!("pair ({}, {})", o.name, o2.name);
            let comma_shape = union(dgnat_window(&o.a, &o2.a), dgnat_window(&o.b, &o2.b));
            let lambda_shape = dgnat_window(fo, fo2);
            let Some(shape) = union(comma_shape, lambda_shape) else {
                report.push_bool(&subject, "fully_faithful", true, String::new);
                continue;
            };
            let (lo, hi) = match opts.window {
                Some((lo, hi)) if lo > shape.0 || hi < shape.1 => {
                    return Err(Error::Refused(format!(
                        "degree window [{lo}, {hi}] is narrower than the shape window [{}, {}] of pair ({}, {})",
                        shape.0, shape.1, o.name, o2.name
                    )));
                }
                Some(w) => w,
                None => shape,
            };
            let mut dims_c = BTreeMap::new();
            let mut dims_l = BTreeMap::new();
            let mut dims_s = BTreeMap::new();
            let mut bij = Tally::new();
            let mut outside = Tally::new();
            for n in (lo - 1)..=(hi + 1) {
                let hc = comma_hom_space(lam, o, o2, n);
                let hl = dgnat_space(&lam.category, fo, fo2, n);
                if n < lo || n > hi {
                    outside.record(hc.dim() == 0 && hl.dim() == 0, || format!("degree {n} outside the window is nonzero"));
                    continue;
                }
                dims_c.insert(n, hc.dim());
                dims_l.insert(n, hl.dim());
                dims_s.insert(n, comma_hom_space_with(lam, o, o2, n, Square::Signed).dim());
                // image of each comma basis element in the Λ-side basis
                let mut cols = Vec::with_capacity(hc.dim());
                let mut all_natural = true;
                for phi in &hc.basis {
                    let eta = f_on_morphisms(lam, o, o2, phi)?;
                    match hl.coordinates(&eta) {
                        Some(c) => cols.push(c),
                        None => all_natural = false,
                    }
                }
                let rank = if all_natural { Matrix::from_columns(field, hl.dim(), &cols).rank() } else { 0 };
                bij.record(all_natural && hc.dim() == hl.dim() && rank == hc.dim(), || {
                    format!("degree {n}: comma dim {}, Λ dim {}, rank of 𝔉 {rank}, natural images {all_natural}", hc.dim(), hl.dim())
                });
            }
            report.push(&subject, "fully_faithful", bij);
            report.push(&subject, "zero_outside_window", outside);
            report.table(format!("{subject} comma Hom"), dims_c.clone());
            report.table(format!("{subject} Λ-module Hom"), dims_l);
            if dims_s != dims_c {
                signed_changes += 1;
                report.note(format!("{subject}: the signed square would change Hom dimensions: {dims_s:?} instead of {dims_c:?}"));
            }

            // 𝔉 commutes with δ and with composition on random morphisms.
            let mut dg = Tally::new();
            let mut comp = Tally::new();
            for _ in 0..opts.probes {
                let n = rng.random_range(lo..=hi);
                let hc = comma_hom_space(lam, o, o2, n);
                if hc.dim() == 0 {
                    continue;
                }
                let coords = random_coords(&mut rng, field, hc.dim());
                let phi = combine_morphisms(&hc, &coords);
                let dphi = CommaMorphism {
                    degree: n + 1,
                    alpha: dgnat_differential(&o.a, &o2.a, &phi.alpha),
                    beta: dgnat_differential(&o.b, &o2.b, &phi.beta),
                };
                let lhs = f_on_morphisms(lam, o, o2, &dphi)?;
                let rhs = dgnat_differential(fo, fo2, &f_on_morphisms(lam, o, o2, &phi)?);
                dg.record(lhs == rhs, || format!("degree {n}: 𝔉(δφ) ≠ d𝔉(φ)"));
                // compose with a random endomorphism of the source
                let m = rng.random_range(-1..=1);
                let endo = comma_hom_space(lam, o, o, m);
                if endo.dim() == 0 {
                    continue;
                }
                let psi = combine_morphisms(&endo, &random_coords(&mut rng, field, endo.dim()));
                let composite = CommaMorphism {
                    degree: n + m,
                    alpha: compose_nat(&phi.alpha, &psi.alpha)?,
                    beta: compose_nat(&phi.beta, &psi.beta)?,
                };
                let lhs = f_on_morphisms(lam, o, o2, &composite)?;
                let rhs = compose_nat(&f_on_morphisms(lam, o, o2, &phi)?, &f_on_morphisms(lam, o, o, &psi)?)?;
                comp.record(lhs == rhs, || format!("degrees {n}, {m}: 𝔉(φψ) ≠ 𝔉(φ)𝔉(ψ)"));
            }
            report.push(&subject, "functor_commutes_with_d", dg);
            report.push(&subject, "functor_preserves_composition", comp);
        }
    }

    report.note(match signed_changes {
        0 => "signed comma square: no Hom dimension changes".to_string(),
        k => format!("signed comma square: Hom dimensions change for {k} ordered pairs"),
    });

    for c in modules {
        let subject = format!("Λ-module {}", c.name);
        let (cop, phi) = phi_iso(lam, c)?;
        report.push(&subject, "phi_natural", naturality_tally(&lam.category, &cop, c, &phi));
        let d = dgnat_differential(&cop, c, &phi);
        report.push_bool(&subject, "phi_closed", d.is_zero(), || "d(φ) ≠ 0".into());
        let bad = first_non_invertible(&phi);
        report.push_bool(&subject, "phi_invertible", bad.is_none(), || {
            format!("φ is not invertible at {}", lam.category.objects()[bad.unwrap_or_default()])
        });
    }
    Ok(report)
}

fn combine_morphisms(space: &CommaHomSpace, coords: &[Scalar]) -> CommaMorphism {
    let mut acc = CommaMorphism {
        degree: space.degree,
        alpha: space.basis[0].alpha.scale(&coords[0]),
        beta: space.basis[0].beta.scale(&coords[0]),
    };
    for (b, c) in space.basis.iter().zip(coords).skip(1) {
        acc.alpha = acc.alpha.add(&b.alpha.scale(c)).expect("parallel");
        acc.beta = acc.beta.add(&b.beta.scale(c)).expect("parallel");
    }
    acc
}

/// The action identities relating `·`, `•`, `∗` and `◇`, plus the Leibniz
/// rule for `·`, on all homogeneous basis tuples.
pub fn product_identities(lam: &Lambda, o: &CommaObject) -> Report {
    let field = lam.category.field();
    let mut report = Report::new("check-equivalence");
    let subject = format!("comma object {}", o.name);
    let (t, u, m) = (&lam.t, &lam.u, &lam.m);
    let e = |dims: &Dims, (d, i): (i64, usize)| unit_vector(field, dims.get(d), i);
    let add = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();

    // (m • t) · x = m · (t ∗ x)
    let mut tal = Tally::new();
    for uu in 0..u.len() {
        for t1 in 0..t.len() {
            for t2 in 0..t.len() {
                for mb in basis_of(m.value(uu, t2).dims()) {
                    let mv = e(m.value(uu, t2).dims(), mb);
                    for tb in basis_of(t.hom(t1, t2).dims()) {
                        let tv = e(t.hom(t1, t2).dims(), tb);
                        let mt = m.right_bullet(uu, (t1, t2), (mb.0, &mv), (tb.0, &tv));
                        let at = o.a.act_basis(t1, t2, tb);
                        for xb in basis_of(o.a.value(t1).dims()) {
                            let xv = e(o.a.value(t1).dims(), xb);
                            let lhs = dot_product(lam, o, (t1, uu), (mb.0 + tb.0, &mt), (xb.0, &xv));
                            let tx = at.apply(xb.0, &xv).expect("shape");
                            let rhs = dot_product(lam, o, (t2, uu), (mb.0, &mv), (xb.0 + tb.0, &tx));
                            tal.record(lhs == rhs, || format!("m = {mb:?}, t = {tb:?}, x = {xb:?}: (m•t)·x = {}, m·(t∗x) = {}", fmt_vec(&lhs), fmt_vec(&rhs)));
                        }
                    }
                }
            }
        }
    }
    report.push(&subject, "dot_right_bullet", tal);

    // (u • m) · x = u ◇ (m · x)
    let mut tal = Tally::new();
    for tt in 0..t.len() {
        for u1 in 0..u.len() {
            for u2 in 0..u.len() {
                for ub in basis_of(u.hom(u1, u2).dims()) {
                    let uv = e(u.hom(u1, u2).dims(), ub);
                    let bu = o.b.act_basis(u1, u2, ub);
                    for mb in basis_of(m.value(u1, tt).dims()) {
                        let mv = e(m.value(u1, tt).dims(), mb);
                        let um = m.left_bullet(tt, (u1, u2), (ub.0, &uv), (mb.0, &mv));
                        for xb in basis_of(o.a.value(tt).dims()) {
                            let xv = e(o.a.value(tt).dims(), xb);
                            let lhs = dot_product(lam, o, (tt, u2), (ub.0 + mb.0, &um), (xb.0, &xv));
                            let mx = dot_product(lam, o, (tt, u1), (mb.0, &mv), (xb.0, &xv));
                            let rhs = bu.apply(mb.0 + xb.0, &mx).expect("shape");
                            tal.record(lhs == rhs, || format!("u = {ub:?}, m = {mb:?}, x = {xb:?}: (u•m)·x = {}, u◇(m·x) = {}", fmt_vec(&lhs), fmt_vec(&rhs)));
                        }
                    }
                }
            }
        }
    }
    report.push(&subject, "dot_left_bullet", tal);

    // (m₁ • t + u • m₂) · x = (m₁ • t) · x + (u • m₂) · x
    let mut tal = Tally::new();
    for t1 in 0..t.len() {
        for t2 in 0..t.len() {
            for u1 in 0..u.len() {
                for u2 in 0..u.len() {
                    for m1b in basis_of(m.value(u2, t2).dims()) {
                        let m1 = e(m.value(u2, t2).dims(), m1b);
                        for tb in basis_of(t.hom(t1, t2).dims()) {
                            let tv = e(t.hom(t1, t2).dims(), tb);
                            let deg = m1b.0 + tb.0;
                            let mt = m.right_bullet(u2, (t1, t2), (m1b.0, &m1), (tb.0, &tv));
                            for ub in basis_of(u.hom(u1, u2).dims()) {
                                let uv = e(u.hom(u1, u2).dims(), ub);
                                for m2b in basis_of(m.value(u1, t1).dims()).into_iter().filter(|b| b.0 + ub.0 == deg) {
                                    let m2 = e(m.value(u1, t1).dims(), m2b);
                                    let um = m.left_bullet(t1, (u1, u2), (ub.0, &uv), (m2b.0, &m2));
                                    let sum = add(&mt, &um);
                                    for xb in basis_of(o.a.value(t1).dims()) {
                                        let xv = e(o.a.value(t1).dims(), xb);
                                        let lhs = dot_product(lam, o, (t1, u2), (deg, &sum), (xb.0, &xv));
                                        let rhs = add(
                                            &dot_product(lam, o, (t1, u2), (deg, &mt), (xb.0, &xv)),
                                            &dot_product(lam, o, (t1, u2), (deg, &um), (xb.0, &xv)),
                                        );
                                        tal.record(lhs == rhs, || format!("m₁ = {m1b:?}, t = {tb:?}, u = {ub:?}, m₂ = {m2b:?}, x = {xb:?}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.push(&subject, "dot_distributive", tal);

    // d(m · x) = d(m) · x + (−1)^{|m|} m · d(x)
    let mut tal = Tally::new();
    for tt in 0..t.len() {
        for uu in 0..u.len() {
            let mm = m.value(uu, tt);
            for mb in basis_of(mm.dims()) {
                let mv = e(mm.dims(), mb);
                let dm = mm.d.apply(mb.0, &mv).expect("shape");
                for xb in basis_of(o.a.value(tt).dims()) {
                    let xv = e(o.a.value(tt).dims(), xb);
                    let dx = o.a.value(tt).d.apply(xb.0, &xv).expect("shape");
                    let mx = dot_product(lam, o, (tt, uu), (mb.0, &mv), (xb.0, &xv));
                    let lhs = o.b.value(uu).d.apply(mb.0 + xb.0, &mx).expect("shape");
                    let sign = field.sign(mb.0);
                    let rhs: Vec<Scalar> = dot_product(lam, o, (tt, uu), (mb.0 + 1, &dm), (xb.0, &xv))
                        .iter()
                        .zip(dot_product(lam, o, (tt, uu), (mb.0, &mv), (xb.0 + 1, &dx)))
                        .map(|(a, b)| a + &(&sign * &b))
                        .collect();
                    tal.record(lhs == rhs, || format!("m = {mb:?}, x = {xb:?}: d(m·x) = {}, dm·x ± m·dx = {}", fmt_vec(&lhs), fmt_vec(&rhs)));
                }
            }
        }
    }
    report.push(&subject, "dot_leibniz", tal);
    report
}

/// The comma object `(A, f, B)` whose `f` is the given closed degree-0
/// element of `DgNat(A, 𝔾(B))`, in the basis of `gb`.
pub fn comma_from_g(lam: &Lambda, name: &str, a: DgFunctor, b: DgFunctor, gb: &GModule, f: &NatTransformation) -> Result<CommaObject> {
    let field = lam.category.field();
    let mut o = CommaObject::new(name, &lam.m, a, b, f.degree)?;
    for t in 0..lam.n_t() {
        for u in 0..lam.n_u() {
            let layout = HomLayout::new(lam.m.value(u, t).dims(), o.b.value(u).dims());
            let src = o.a.value(t).dims().clone();
            let mut map = GradedMap::zero(field, f.degree, &src, layout.dims());
            for (n, dim) in src.iter() {
                let mut cols = Vec::with_capacity(dim);
                for k in 0..dim {
                    let g = f.components[t].apply(n, &unit_vector(field, dim, k))?;
                    let eta = gb
                        .unfold(t, n + f.degree, &g)
                        .unwrap_or_else(|| NatTransformation::zero(lam.m.left_slice(t), &o.b, n + f.degree));
                    cols.push(layout.vectorize(&eta.components[u]));
                }
                map.set_block(n, Matrix::from_columns(field, layout.dims().get(n + f.degree), &cols))?;
            }
            o.set_pairing_map(t, u, map)?;
        }
    }
    Ok(o)
}

/// `Hom_U(N, B)` for a one-object `U`, computed on the plain Hom complex
/// as the kernel of `α ↦ (B(u) α − (−1)^{|u||α|} α N(u))_u`.
pub fn one_object_hom_dims(u: &DgCategory, n: &DgFunctor, b: &DgFunctor) -> Dims {
    let field = u.field();
    let layout = HomLayout::new(n.value(0).dims(), b.value(0).dims());
    let mut out = Dims::new();
    for (deg, dim) in layout.dims().iter() {
        let cols: Vec<Vec<Scalar>> = (0..dim)
            .map(|k| {
                let alpha = layout.basis_map(field, deg, k);
                let mut col = Vec::new();
                for ub in basis_of(u.hom(0, 0).dims()) {
                    let lhs = compose_graded(&b.act_basis(0, 0, ub), &alpha).expect("composable");
                    let rhs = compose_graded(&alpha, &n.act_basis(0, 0, ub)).expect("composable").scale(&field.sign(ub.0 * deg));
                    col.extend(layout.vectorize(&lhs.sub(&rhs).expect("parallel")));
                }
                col
            })
            .collect();
        let rows = cols.first().map_or(0, Vec::len);
        out.set(deg, dim - Matrix::from_columns(field, rows, &cols).rank());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::trivial_bimodule;
    use crate::category::unit_category;
    use crate::functor::representable_module;
    use crate::presets::{koszul_bimodule, module_over_unit};
    use crate::triangular::{build_lambda, LambdaOptions};

    fn q() -> Field {
        Field::Rationals
    }

    fn kkk() -> Lambda {
        let k = unit_category(q());
        let m = trivial_bimodule("M", &k, &k, 0).unwrap();
        build_lambda(&k, &k, &m, LambdaOptions::default()).unwrap().0
    }

    fn scalar_object(lam: &Lambda, name: &str, c: i64) -> CommaObject {
        let k = DgModule::unit(q(), 0);
        let a = module_over_unit(&lam.t, k.clone());
        let b = module_over_unit(&lam.u, k);
        let mut o = CommaObject::new(name, &lam.m, a, b, 0).unwrap();
        o.set_pairing(&lam.m, (0, 0), (0, 0), (0, 0), vec![q().from_i64(c)]).unwrap();
        o
    }

    #[test]
    fn scalar_comma_objects() {
        let lam = kkk();
        let (o3, o0) = (scalar_object(&lam, "c3", 3), scalar_object(&lam, "c0", 0));
        for o in [&o3, &o0] {
            assert!(validate_comma_object(&lam, o).passed());
            assert!(product_identities(&lam, o).passed());
        }
        // 3α = 3β; no condition; 0 = 3β; 3α = 0
        let dims = |a: &CommaObject, b: &CommaObject| comma_hom_space(&lam, a, b, 0).dim();
        assert_eq!([dims(&o3, &o3), dims(&o0, &o0), dims(&o3, &o0), dims(&o0, &o3)], [1, 2, 1, 1]);
        let c = build_coproduct_module(&lam, &o3).unwrap();
        let x = lam.object(Some(0), Some(0));
        let mid = lam.embed(lam.i1(0), lam.i2(0), Block::M, 0, &[q().one()]);
        assert_eq!(dims(&o3, &o3), dgnat_space(&lam.category, &c, &c, 0).dim());
        assert_eq!(c.value(x).dims().get(0), 2);
        assert_eq!(c.act(lam.i1(0), lam.i2(0), 0, &mid).block(0).get(0, 0), &q().from_i64(3));
        let report = check_equivalence(&lam, &[o3, o0], &[c], &EquivalenceOptions { probes: 4, ..Default::default() }).unwrap();
        assert!(report.passed(), "{}", report.to_json());
    }

    #[test]
    fn koszul_representables() {
        let (u, t, m) = koszul_bimodule(q(), true);
        let (lam, _) = build_lambda(&t, &u, &m, LambdaOptions::default()).unwrap();
        let reps: Vec<DgFunctor> = (0..lam.category.len()).map(|x| representable_module(&lam.category, x)).collect();
        let objs: Vec<CommaObject> = reps.iter().map(|r| extract_comma_from_module(&lam, r).unwrap()).collect();
        for o in &objs {
            let r = validate_comma_object(&lam, o);
            assert!(r.passed(), "{}", r.to_json());
            assert!(product_identities(&lam, o).passed());
        }
        let report = check_equivalence(&lam, &objs, &reps, &EquivalenceOptions { seed: 7, probes: 3, window: None }).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        let narrow = EquivalenceOptions { window: Some((0, 0)), ..Default::default() };
        assert!(matches!(check_equivalence(&lam, &objs, &reps, &narrow), Err(Error::Refused(_))));
    }

    #[test]
    fn g_coordinates_round_trip() {
        let (u, t, m) = koszul_bimodule(q(), true);
        let (lam, _) = build_lambda(&t, &u, &m, LambdaOptions::default()).unwrap();
        let rep = representable_module(&lam.category, lam.object(Some(0), Some(0)));
        let o = extract_comma_from_module(&lam, &rep).unwrap();
        let gb = crate::bimodule::g_on_objects(&lam.u, &lam.t, &lam.m, &o.b).unwrap();
        let f = o.to_g_transformation(&lam.m, &gb).unwrap();
        let back = comma_from_g(&lam, &o.name, o.a.clone(), o.b.clone(), &gb, &f).unwrap();
        assert_eq!(back, o);
    }

    #[test]
    fn nonzero_degree_fails_first() {
        let lam = kkk();
        let k = DgModule::unit(q(), 0);
        let a = module_over_unit(&lam.t, k.clone());
        let b = module_over_unit(&lam.u, k);
        let o = CommaObject::new("shifted", &lam.m, a, b, 1).unwrap();
        let r = validate_comma_object(&lam, &o);
        assert_eq!(r.first_failure().map(|c| c.name.as_str()), Some("degree_zero"));
    }
}

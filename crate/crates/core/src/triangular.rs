//! The triangular matrix dg-category `Λ = [[T, 0], [M, U]]`.

use std::collections::BTreeMap;

use crate::bimodule::{validate_bimodule, Bimodule};
use crate::category::{basis_of, fmt_vec, validate_dg_category, DgCategory};
use crate::dg_kmod::{direct_sum, unit_vector, DgModule, SumLayout};
use crate::error::{Error, Result};
use crate::functor::DgFunctor;
use crate::linalg::{GradedMap, Matrix, Scalar};
use crate::report::{Report, Tally};

/// Which block of a Λ-morphism a basis element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    T,
    M,
    U,
}

/// `Λ` together with the data it was built from.
///
/// Objects are pairs `(T, U)` of `T⁺ × U⁺`, where `T⁺`, `U⁺` adjoin a formal
/// zero object (index `|T|`, resp. `|U|`) with zero Hom spaces. The pair
/// `(t, u)` has index `t · (|U| + 1) + u`. The basis of each Hom space in
/// each degree is the t-block, then the m-block, then the u-block.
#[derive(Clone, Debug)]
pub struct Lambda {
    pub category: DgCategory,
    pub t: DgCategory,
    pub u: DgCategory,
    pub m: Bimodule,
    layouts: BTreeMap<(usize, usize), SumLayout>,
}

#[derive(Clone, Copy, Debug)]
pub struct LambdaOptions {
    pub validate_inputs: bool,
    pub revalidate: bool,
}

impl Default for LambdaOptions {
    fn default() -> Self {
        LambdaOptions { validate_inputs: true, revalidate: true }
    }
}

impl Lambda {
    pub fn n_t(&self) -> usize {
        self.t.len()
    }

    pub fn n_u(&self) -> usize {
        self.u.len()
    }

    /// Index of `(t, u)`; `None` stands for the formal zero object.
    pub fn object(&self, t: Option<usize>, u: Option<usize>) -> usize {
        t.unwrap_or(self.n_t()) * (self.n_u() + 1) + u.unwrap_or(self.n_u())
    }

    /// Components of an object index.
    pub fn split(&self, x: usize) -> (Option<usize>, Option<usize>) {
        let (t, u) = (x / (self.n_u() + 1), x % (self.n_u() + 1));
        ((t < self.n_t()).then_some(t), (u < self.n_u()).then_some(u))
    }

    /// `I₁(T) = (T, 0)`.
    pub fn i1(&self, t: usize) -> usize {
        self.object(Some(t), None)
    }

    /// `I₂(U) = (0, U)`.
    pub fn i2(&self, u: usize) -> usize {
        self.object(None, Some(u))
    }

    pub fn layout(&self, x: usize, y: usize) -> &SumLayout {
        &self.layouts[&(x, y)]
    }

    /// Places a homogeneous element of one block into `Λ(x, y)`.
    pub fn embed(&self, x: usize, y: usize, block: Block, deg: i64, v: &[Scalar]) -> Vec<Scalar> {
        let field = self.category.field();
        let layout = &self.layouts[&(x, y)];
        let s = match block {
            Block::T => 0,
            Block::M => 1,
            Block::U => 2,
        };
        let mut out = vec![field.zero(); layout.total().get(deg)];
        let off = layout.offset(s, deg);
        for (k, c) in v.iter().enumerate() {
            out[off + k] = c.clone();
        }
        out
    }

    /// Splits a homogeneous element of `Λ(x, y)` into its t, m and u parts.
    pub fn project(&self, x: usize, y: usize, deg: i64, v: &[Scalar]) -> [Vec<Scalar>; 3] {
        let layout = &self.layouts[&(x, y)];
        let mut parts: [Vec<Scalar>; 3] = Default::default();
        for (s, part) in parts.iter_mut().enumerate() {
            let off = layout.offset(s, deg);
            let len = self.part_dims(x, y, s).get(deg);
            *part = v[off..off + len].to_vec();
        }
        parts
    }

    fn part_dims(&self, x: usize, y: usize, s: usize) -> crate::linalg::Dims {
        let ((t1, u1), (t2, u2)) = (self.split(x), self.split(y));
        match s {
            0 => hom_or_zero(&self.t, t1, t2).dims().clone(),
            1 => m_or_zero(&self.m, u2, t1).dims().clone(),
            _ => hom_or_zero(&self.u, u1, u2).dims().clone(),
        }
    }

    /// Block and block-local basis position of a basis element of `Λ(x, y)`.
    pub fn locate(&self, x: usize, y: usize, deg: i64, idx: usize) -> (Block, usize) {
        let layout = &self.layouts[&(x, y)];
        let (o1, o2) = (layout.offset(1, deg), layout.offset(2, deg));
        if idx < o1 {
            (Block::T, idx)
        } else if idx < o2 {
            (Block::M, idx - o1)
        } else {
            (Block::U, idx - o2)
        }
    }

    /// `m̄ ∈ Λ((T, 0), (0, U)) = M(U, T)`.
    pub fn m_bar(&self, u: usize, t: usize, deg: i64, idx: usize) -> Vec<Scalar> {
        let v = unit_vector(self.category.field(), self.m.value(u, t).dims().get(deg), idx);
        self.embed(self.i1(t), self.i2(u), Block::M, deg, &v)
    }

    /// `λ_T = [[1_T, 0], [0, 0]] : (T, 0) → (T, U)`.
    pub fn lambda_t(&self, t: usize, u: usize) -> Vec<Scalar> {
        self.embed(self.i1(t), self.object(Some(t), Some(u)), Block::T, 0, self.t.identity(t))
    }

    /// `λ_U = [[0, 0], [0, 1_U]] : (0, U) → (T, U)`.
    pub fn lambda_u(&self, t: usize, u: usize) -> Vec<Scalar> {
        self.embed(self.i2(u), self.object(Some(t), Some(u)), Block::U, 0, self.u.identity(u))
    }
}

fn hom_or_zero(c: &DgCategory, x: Option<usize>, y: Option<usize>) -> DgModule {
    match (x, y) {
        (Some(x), Some(y)) => c.hom(x, y).clone(),
        _ => DgModule::zero(c.field()),
    }
}

fn m_or_zero(m: &Bimodule, u: Option<usize>, t: Option<usize>) -> DgModule {
    match (u, t) {
        (Some(u), Some(t)) => m.value(u, t).clone(),
        _ => DgModule::zero(m.field()),
    }
}

fn object_name(c: &DgCategory, x: Option<usize>) -> String {
    x.map_or_else(|| "0".to_string(), |i| c.objects()[i].clone())
}

/// Validates the inputs, builds `Λ`, and by default validates the result.
pub fn build_lambda(t: &DgCategory, u: &DgCategory, m: &Bimodule, opts: LambdaOptions) -> Result<(Lambda, Report)> {
    let mut report = Report::new("lambda");
    if opts.validate_inputs {
        report.absorb(validate_dg_category(t));
        report.absorb(validate_dg_category(u));
        report.absorb(validate_bimodule(u, t, m));
        if !report.passed() {
            return Err(Error::InvalidInput(Box::new(report)));
        }
    }
    let lam = build_lambda_unchecked(t, u, m)?;
    if opts.revalidate {
        report.absorb(validate_dg_category(&lam.category));
        report.absorb(lambda_leibniz_check(&lam));
    }
    Ok((lam, report))
}

pub fn build_lambda_unchecked(t: &DgCategory, u: &DgCategory, m: &Bimodule) -> Result<Lambda> {
    let field = t.field();
    let (nt, nu) = (t.len(), u.len());
    let pairs: Vec<(Option<usize>, Option<usize>)> = (0..=nt)
        .flat_map(|a| (0..=nu).map(move |b| ((a < nt).then_some(a), (b < nu).then_some(b))))
        .collect();
    let names = pairs.iter().map(|&(a, b)| format!("({},{})", object_name(t, a), object_name(u, b))).collect();
    let mut cat = DgCategory::new(format!("Lambda({},{},{})", t.name, u.name, m.name), field, names)?;
    let mut layouts = BTreeMap::new();
    for (x, &(t1, u1)) in pairs.iter().enumerate() {
        for (y, &(t2, u2)) in pairs.iter().enumerate() {
            let parts = [hom_or_zero(t, t1, t2), m_or_zero(m, u2, t1), hom_or_zero(u, u1, u2)];
            let hom = direct_sum(&parts.iter().collect::<Vec<_>>(), field)?;
            cat.set_hom(x, y, hom)?;
            layouts.insert((x, y), SumLayout::new(parts.iter().map(|p| p.dims().clone()).collect()));
        }
    }
    let mut lam = Lambda { category: cat, t: t.clone(), u: u.clone(), m: m.clone(), layouts };
    for (x, &(tx, ux)) in pairs.iter().enumerate() {
        let mut id = vec![field.zero(); lam.category.hom(x, x).dims().get(0)];
        if let Some(ti) = tx {
            let e = lam.embed(x, x, Block::T, 0, t.identity(ti));
            id.iter_mut().zip(e).for_each(|(a, b)| *a += b);
        }
        if let Some(ui) = ux {
            let e = lam.embed(x, x, Block::U, 0, u.identity(ui));
            id.iter_mut().zip(e).for_each(|(a, b)| *a += b);
        }
        lam.category.set_identity(x, id)?;
    }
    let n = pairs.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let map = lambda_composition(&lam, x, y, z)?;
                lam.category.set_composition_map((x, y, z), map)?;
            }
        }
    }
    Ok(lam)
}

// [[t₂, 0], [m₂, u₂]] ∘ [[t₁, 0], [m₁, u₁]] = [[t₂t₁, 0], [m₂•t₁ + u₂•m₁, u₂u₁]]
fn lambda_composition(lam: &Lambda, x: usize, y: usize, z: usize) -> Result<GradedMap> {
    let field = lam.category.field();
    let ((t1, u1), (t2, u2), (t3, u3)) = (lam.split(x), lam.split(y), lam.split(z));
    let layout = lam.category.composition_layout(x, y, z).clone();
    let target = lam.category.hom(x, z).dims().clone();
    let mut blocks: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (deg, gd, gi, fi, col) in layout.basis() {
        let fd = deg - gd;
        let (gb, g) = lam.locate(y, z, gd, gi);
        let (fb, f) = lam.locate(x, y, fd, fi);
        let value = match (gb, fb) {
            (Block::T, Block::T) => {
                let (a, b, c) = (t1.unwrap(), t2.unwrap(), t3.unwrap());
                Some((Block::T, lam.t.compose_basis((a, b, c), (gd, g), (fd, f))))
            }
            (Block::U, Block::U) => {
                let (a, b, c) = (u1.unwrap(), u2.unwrap(), u3.unwrap());
                Some((Block::U, lam.u.compose_basis((a, b, c), (gd, g), (fd, f))))
            }
            (Block::M, Block::T) => {
                // m₂ ∈ M(U₃, T₂), t₁ ∈ hom_T(T₁, T₂)
                let (uu, ta, tb) = (u3.unwrap(), t1.unwrap(), t2.unwrap());
                let mv = unit_vector(field, lam.m.value(uu, tb).dims().get(gd), g);
                let tv = unit_vector(field, lam.t.hom(ta, tb).dims().get(fd), f);
                Some((Block::M, lam.m.right_bullet(uu, (ta, tb), (gd, &mv), (fd, &tv))))
            }
            (Block::U, Block::M) => {
                // u₂ ∈ hom_U(U₂, U₃), m₁ ∈ M(U₂, T₁)
                let (tt, ua, ub) = (t1.unwrap(), u2.unwrap(), u3.unwrap());
                let uv = unit_vector(field, lam.u.hom(ua, ub).dims().get(gd), g);
                let mv = unit_vector(field, lam.m.value(ua, tt).dims().get(fd), f);
                Some((Block::M, lam.m.left_bullet(tt, (ua, ub), (gd, &uv), (fd, &mv))))
            }
            _ => None,
        };
        let Some((blk, v)) = value else { continue };
        if v.iter().all(Scalar::is_zero) {
            continue;
        }
        let full = lam.embed(x, z, blk, deg, &v);
        let block = blocks.entry(deg).or_insert_with(|| Matrix::zeros(field, target.get(deg), layout.dims().get(deg)));
        for (r, s) in full.into_iter().enumerate() {
            if !s.is_zero() {
                block.set(r, col, s);
            }
        }
    }
    GradedMap::from_blocks(field, 0, layout.dims(), &target, blocks)
}

/// Checks, on every homogeneous basis pair,
/// `d(m • t) = d(m) • t + (−1)^{|m|} m • d(t)` and
/// `d(u • m) = d(u) • m + (−1)^{|u|} u • d(m)`.
pub fn lambda_leibniz_check(lam: &Lambda) -> Report {
    let mut report = Report::new("lambda");
    let subject = format!("category {}", lam.category.name);
    let (t, u, m) = (&lam.t, &lam.u, &lam.m);
    let field = t.field();

    let mut tal = Tally::new();
    for uu in 0..u.len() {
        for ta in 0..t.len() {
            for tb in 0..t.len() {
                for (md, mi) in basis_of(m.value(uu, tb).dims()) {
                    let mv = unit_vector(field, m.value(uu, tb).dims().get(md), mi);
                    let dm = m.value(uu, tb).d.apply(md, &mv).expect("shape");
                    for (td, ti) in basis_of(t.hom(ta, tb).dims()) {
                        let tv = unit_vector(field, t.hom(ta, tb).dims().get(td), ti);
                        let dt = t.d(ta, tb, td, &tv);
                        let prod = m.right_bullet(uu, (ta, tb), (md, &mv), (td, &tv));
                        let lhs = m.value(uu, ta).d.apply(md + td, &prod).expect("shape");
                        let mut rhs = m.right_bullet(uu, (ta, tb), (md + 1, &dm), (td, &tv));
                        let sign = field.sign(md);
                        for (r, s) in rhs.iter_mut().zip(m.right_bullet(uu, (ta, tb), (md, &mv), (td + 1, &dt))) {
                            *r += &sign * &s;
                        }
                        tal.record(lhs == rhs, || {
                            format!("m = e[{md}][{mi}] of M({}, {}), t = e[{td}][{ti}]: d(m•t) = {}, d(m)•t + (−1)^|m| m•d(t) = {}",
                                u.objects()[uu], t.objects()[tb], fmt_vec(&lhs), fmt_vec(&rhs))
                        });
                    }
                }
            }
        }
    }
    report.push(&subject, "leibniz_right_bullet", tal);

    let mut tal = Tally::new();
    for tt in 0..t.len() {
        for ua in 0..u.len() {
            for ub in 0..u.len() {
                for (ud, ui) in basis_of(u.hom(ua, ub).dims()) {
                    let uv = unit_vector(field, u.hom(ua, ub).dims().get(ud), ui);
                    let du = u.d(ua, ub, ud, &uv);
                    for (md, mi) in basis_of(m.value(ua, tt).dims()) {
                        let mv = unit_vector(field, m.value(ua, tt).dims().get(md), mi);
                        let dm = m.value(ua, tt).d.apply(md, &mv).expect("shape");
                        let prod = m.left_bullet(tt, (ua, ub), (ud, &uv), (md, &mv));
                        let lhs = m.value(ub, tt).d.apply(ud + md, &prod).expect("shape");
                        let mut rhs = m.left_bullet(tt, (ua, ub), (ud + 1, &du), (md, &mv));
                        let sign = field.sign(ud);
                        for (r, s) in rhs.iter_mut().zip(m.left_bullet(tt, (ua, ub), (ud, &uv), (md + 1, &dm))) {
                            *r += &sign * &s;
                        }
                        tal.record(lhs == rhs, || {
                            format!("u = e[{ud}][{ui}], m = e[{md}][{mi}] of M({}, {}): d(u•m) = {}, d(u)•m + (−1)^|u| u•d(m) = {}",
                                u.objects()[ua], t.objects()[tt], fmt_vec(&lhs), fmt_vec(&rhs))
                        });
                    }
                }
            }
        }
    }
    report.push(&subject, "leibniz_left_bullet", tal);
    report
}

/// `(C ∘ I₁, C ∘ I₂)`: the restrictions of a Λ-module to `T` and `U`.
pub fn restrict_module(lam: &Lambda, c: &DgFunctor) -> Result<(DgFunctor, DgFunctor)> {
    let field = lam.category.field();
    let restrict = |base: &DgCategory, obj: &dyn Fn(usize) -> usize, block: Block, name: String| -> Result<DgFunctor> {
        let values = (0..base.len()).map(|i| c.value(obj(i)).clone()).collect();
        let mut r = DgFunctor::new(name, base, values)?;
        for a in 0..base.len() {
            for b in 0..base.len() {
                for (deg, k) in basis_of(base.hom(a, b).dims()) {
                    let v = unit_vector(field, base.hom(a, b).dims().get(deg), k);
                    let lv = lam.embed(obj(a), obj(b), block, deg, &v);
                    r.set_action(a, b, (deg, k), &c.act(obj(a), obj(b), deg, &lv))?;
                }
            }
        }
        Ok(r)
    };
    let c1 = restrict(&lam.t, &|i| lam.i1(i), Block::T, format!("{}_1", c.name))?;
    let c2 = restrict(&lam.u, &|i| lam.i2(i), Block::U, format!("{}_2", c.name))?;
    Ok((c1, c2))
}

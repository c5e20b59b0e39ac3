//! Dg-modules over a dg-category, dg natural transformations and Yoneda.

use std::collections::BTreeMap;

use crate::category::{basis_of, fmt_vec, opposite_category, DgCategory};
use crate::dg_kmod::{hom_complex_with_layout, hom_differential, unit_vector, DgModule, HomLayout};
use crate::error::{structural, Result};
use crate::linalg::{compose_graded, Dims, Field, GradedMap, LinearSystem, Matrix, Scalar, SolutionSpace};
use crate::report::{Report, Tally};

/// A dg-functor `C → DgMod(K)`, presented by its values and, per pair of
/// objects, the degree-0 map `hom(X, Y) → Hom(F X, F Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgFunctor {
    pub name: String,
    field: Field,
    values: Vec<DgModule>,
    layouts: BTreeMap<(usize, usize), HomLayout>,
    action: BTreeMap<(usize, usize), GradedMap>,
}

impl DgFunctor {
    /// Given values, every morphism acting by zero.
    pub fn new(name: impl Into<String>, base: &DgCategory, values: Vec<DgModule>) -> Result<Self> {
        if values.len() != base.len() {
            return Err(structural(format!("{} values for {} objects", values.len(), base.len())));
        }
        if values.iter().any(|v| v.field() != base.field()) {
            return Err(structural("module value over a different field"));
        }
        let mut layouts = BTreeMap::new();
        let mut action = BTreeMap::new();
        for x in 0..base.len() {
            for y in 0..base.len() {
                let l = HomLayout::new(values[x].dims(), values[y].dims());
                action.insert((x, y), GradedMap::zero(base.field(), 0, base.hom(x, y).dims(), l.dims()));
                layouts.insert((x, y), l);
            }
        }
        Ok(DgFunctor { name: name.into(), field: base.field(), values, layouts, action })
    }

    pub fn zero(name: impl Into<String>, base: &DgCategory) -> Self {
        let values = vec![DgModule::zero(base.field()); base.len()];
        Self::new(name, base, values).expect("shapes agree")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, x: usize) -> &DgModule {
        &self.values[x]
    }

    pub fn values(&self) -> &[DgModule] {
        &self.values
    }

    pub fn layout(&self, x: usize, y: usize) -> &HomLayout {
        &self.layouts[&(x, y)]
    }

    pub fn action_map(&self, x: usize, y: usize) -> &GradedMap {
        &self.action[&(x, y)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(DgModule::is_zero)
    }

    /// Sets `F(f)` for the basis element `f = e[deg][idx]` of `hom(x, y)`.
    pub fn set_action(&mut self, x: usize, y: usize, (deg, idx): (i64, usize), map: &GradedMap) -> Result<()> {
        let layout = &self.layouts[&(x, y)];
        if map.degree() != deg || map.source() != layout.source() || map.target() != layout.target() {
            return Err(structural(format!(
                "action of e[{deg}][{idx}] in `{}` has the wrong degree or shape",
                self.name
            )));
        }
        let act = self.action.get_mut(&(x, y)).expect("pair present");
        if idx >= act.source().get(deg) {
            return Err(structural(format!("action refers to missing basis element e[{deg}][{idx}]")));
        }
        let v = layout.vectorize(map);
        let mut block = act.block(deg);
        for (r, s) in v.into_iter().enumerate() {
            block.set(r, idx, s);
        }
        act.set_block(deg, block)
    }

    pub fn set_action_map(&mut self, x: usize, y: usize, map: GradedMap) -> Result<()> {
        let act = &self.action[&(x, y)];
        if map.degree() != 0 || map.source() != act.source() || map.target() != act.target() {
            return Err(structural("action map has the wrong shape"));
        }
        self.action.insert((x, y), map);
        Ok(())
    }

    /// `F(f)` for a homogeneous `f ∈ hom(x, y)^deg` given by coordinates.
    pub fn act(&self, x: usize, y: usize, deg: i64, f: &[Scalar]) -> GradedMap {
        let v = self.action[&(x, y)].apply(deg, f).expect("coordinates match hom dimension");
        self.layouts[&(x, y)].devectorize(self.field, deg, &v)
    }

    pub fn act_basis(&self, x: usize, y: usize, (deg, idx): (i64, usize)) -> GradedMap {
        let v = self.action[&(x, y)].apply_basis(deg, idx);
        self.layouts[&(x, y)].devectorize(self.field, deg, &v)
    }

    /// Images of every basis morphism of `hom(x, y)`, reused across constraints.
    fn basis_images(&self, base: &DgCategory, x: usize, y: usize) -> Vec<((i64, usize), GradedMap)> {
        basis_of(base.hom(x, y).dims()).into_iter().map(|b| (b, self.act_basis(x, y, b))).collect()
    }
}

/// Order: `values_are_complexes`, `units`, `functoriality`, `chain_map`.
pub fn validate_dg_functor(base: &DgCategory, f: &DgFunctor) -> Report {
    let mut report = Report::new("validate");
    let subject = format!("module {}", f.name);
    let n = base.len();
    let field = base.field();

    let mut t = Tally::new();
    for x in 0..n {
        let inner = f.value(x).d_squared_tally();
        t.record(inner.ok(), || format!("{}({}): d∘d ≠ 0", f.name, base.objects()[x]));
    }
    report.push(&subject, "values_are_complexes", t);

    let mut t = Tally::new();
    for x in 0..n {
        let img = f.act(x, x, 0, base.identity(x));
        let id = GradedMap::identity(field, f.value(x).dims());
        t.record(img == id, || format!("F(1_{}) ≠ identity: {:?}", base.objects()[x], img.blocks().collect::<Vec<_>>()));
    }
    report.push(&subject, "units", t);

    let mut t = Tally::new();
    for x in 0..n {
        for y in 0..n {
            let fs = f.basis_images(base, x, y);
            if fs.is_empty() {
                continue;
            }
            for z in 0..n {
                for g in basis_of(base.hom(y, z).dims()) {
                    let fg = f.act_basis(y, z, g);
                    for (fb, ff) in &fs {
                        let gf = base.compose_basis((x, y, z), g, *fb);
                        let lhs = f.act(x, z, g.0 + fb.0, &gf);
                        let rhs = compose_graded(&fg, ff).expect("composable");
                        t.record(lhs == rhs, || {
                            format!(
                                "g = e[{}][{}] of hom({}, {}), f = e[{}][{}] of hom({}, {}): F(g∘f) ≠ F(g)∘F(f)",
                                g.0, g.1, base.objects()[y], base.objects()[z], fb.0, fb.1, base.objects()[x], base.objects()[y]
                            )
                        });
                    }
                }
            }
        }
    }
    report.push(&subject, "functoriality", t);

    let mut t = Tally::new();
    for x in 0..n {
        for y in 0..n {
            for (b, img) in f.basis_images(base, x, y) {
                let v = unit_vector(field, base.hom(x, y).dims().get(b.0), b.1);
                let lhs = f.act(x, y, b.0 + 1, &base.d(x, y, b.0, &v));
                let rhs = hom_differential(f.value(x), f.value(y), &img).expect("shapes");
                t.record(lhs == rhs, || {
                    format!(
                        "f = e[{}][{}] of hom({}, {}): F(d f) = {}, d F(f) = {}",
                        b.0,
                        b.1,
                        base.objects()[x],
                        base.objects()[y],
                        fmt_vec(&f.layout(x, y).vectorize(&lhs)),
                        fmt_vec(&f.layout(x, y).vectorize(&rhs))
                    )
                });
            }
        }
    }
    report.push(&subject, "chain_map", t);
    report
}

/// A dg natural transformation of degree `degree`: one component per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    pub degree: i64,
    pub components: Vec<GradedMap>,
}

impl NatTransformation {
    pub fn zero(f: &DgFunctor, g: &DgFunctor, degree: i64) -> Self {
        let components = (0..f.len()).map(|x| GradedMap::zero(f.field, degree, f.value(x).dims(), g.value(x).dims())).collect();
        NatTransformation { degree, components }
    }

    pub fn identity(f: &DgFunctor) -> Self {
        let components = f.values.iter().map(|v| GradedMap::identity(f.field, v.dims())).collect();
        NatTransformation { degree: 0, components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GradedMap::is_zero)
    }

    pub fn add(&self, other: &NatTransformation) -> Result<NatTransformation> {
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(NatTransformation { degree: self.degree, components })
    }

    pub fn scale(&self, s: &Scalar) -> NatTransformation {
        NatTransformation { degree: self.degree, components: self.components.iter().map(|c| c.scale(s)).collect() }
    }
}

/// Checks `G(f) ∘ η_X = (−1)^{nm} η_Y ∘ F(f)` for every basis morphism `f` of degree `m`.
pub fn naturality_tally(base: &DgCategory, f: &DgFunctor, g: &DgFunctor, eta: &NatTransformation) -> Tally {
    let mut t = Tally::new();
    let n = eta.degree;
    for x in 0..base.len() {
        for y in 0..base.len() {
            for b in basis_of(base.hom(x, y).dims()) {
                let gf = g.act_basis(x, y, b);
                let ff = f.act_basis(x, y, b);
                let lhs = compose_graded(&gf, &eta.components[x]).expect("composable");
                let rhs = compose_graded(&eta.components[y], &ff).expect("composable").scale(&f.field.sign(n * b.0));
                t.record(lhs == rhs, || {
                    format!(
                        "f = e[{}][{}] of hom({}, {}): G(f)∘η_X ≠ (−1)^(nm) η_Y∘F(f)",
                        b.0,
                        b.1,
                        base.objects()[x],
                        base.objects()[y]
                    )
                });
            }
        }
    }
    t
}

/// The space `DgNat^n(F, G)` with an exact basis.
///
/// Unknowns are the coordinates of all components `η_X ∈ Hom^n(F X, G X)`
/// concatenated in object order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatSpace {
    pub degree: i64,
    layouts: Vec<HomLayout>,
    offsets: Vec<usize>,
    space: SolutionSpace,
}

impl NatSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unknowns(&self) -> usize {
        self.space.unknowns()
    }

    pub fn solution_space(&self) -> &SolutionSpace {
        &self.space
    }

    pub fn layout(&self, x: usize) -> &HomLayout {
        &self.layouts[x]
    }

    pub fn offset(&self, x: usize) -> usize {
        self.offsets[x]
    }

    /// Splits a vector of unknowns into components.
    pub fn to_transformation(&self, v: &[Scalar]) -> NatTransformation {
        let field = self.space.field();
        let components = self
            .layouts
            .iter()
            .enumerate()
            .map(|(x, l)| l.devectorize(field, self.degree, &v[self.offsets[x]..self.offsets[x] + l.dims().get(self.degree)]))
            .collect();
        NatTransformation { degree: self.degree, components }
    }

    pub fn to_unknowns(&self, eta: &NatTransformation) -> Vec<Scalar> {
        self.layouts.iter().zip(&eta.components).flat_map(|(l, c)| l.vectorize(c)).collect()
    }

    pub fn element(&self, coords: &[Scalar]) -> NatTransformation {
        self.to_transformation(&self.space.combine(coords))
    }

    pub fn basis_element(&self, k: usize) -> NatTransformation {
        self.to_transformation(&self.space.basis()[k])
    }

    /// Coordinates of `eta`, or `None` if it is not natural of this degree.
    pub fn coordinates(&self, eta: &NatTransformation) -> Option<Vec<Scalar>> {
        if eta.degree != self.degree {
            return None;
        }
        self.space.coordinates(&self.to_unknowns(eta))
    }
}

/// Builds the graded-naturality system for `DgNat^n(F, G)` without solving it.
pub fn dgnat_system(base: &DgCategory, f: &DgFunctor, g: &DgFunctor, n: i64) -> (LinearSystem, Vec<HomLayout>, Vec<usize>) {
    let field = base.field();
    let layouts: Vec<HomLayout> = (0..base.len()).map(|x| HomLayout::new(f.value(x).dims(), g.value(x).dims())).collect();
    let mut offsets = Vec::with_capacity(layouts.len());
    let mut total = 0;
    for l in &layouts {
        offsets.push(total);
        total += l.dims().get(n);
    }
    let mut sys = LinearSystem::new(field, total);
    for x in 0..base.len() {
        for y in 0..base.len() {
            if layouts[x].dims().get(n) == 0 && layouts[y].dims().get(n) == 0 {
                continue;
            }
            for b in basis_of(base.hom(x, y).dims()) {
                let m = b.0;
                let gf = g.act_basis(x, y, b);
                let ff = f.act_basis(x, y, b);
                let out = HomLayout::new(f.value(x).dims(), g.value(y).dims());
                let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
                let mut push = |row: usize, col: usize, v: Scalar| {
                    let e = rows.entry(row).or_default().entry(col).or_insert_with(|| field.zero());
                    *e += v;
                };
                // G(f) ∘ E for elementary E ∈ Hom^n(F X, G X)
                for k in 0..layouts[x].dims().get(n) {
                    let (i, c, r) = layouts[x].locate(n, k);
                    if let Some(bl) = gf.block_ref(i + n) {
                        for r2 in 0..bl.rows() {
                            let e = bl.get(r2, r);
                            if !e.is_zero() {
                                push(out.index(n + m, i, c, r2), offsets[x] + k, e.clone());
                            }
                        }
                    }
                }
                // −(−1)^{nm} E ∘ F(f) for elementary E ∈ Hom^n(F Y, G Y)
                let sign = -field.sign(n * m);
                for k in 0..layouts[y].dims().get(n) {
                    let (i, c, r) = layouts[y].locate(n, k);
                    if let Some(bl) = ff.block_ref(i - m) {
                        for c2 in 0..bl.cols() {
                            let e = bl.get(c, c2);
                            if !e.is_zero() {
                                push(out.index(n + m, i - m, c2, r), offsets[y] + k, &sign * e);
                            }
                        }
                    }
                }
                for (_, row) in rows {
                    sys.add_sparse(row).expect("unknown indices in range");
                }
            }
        }
    }
    (sys, layouts, offsets)
}

pub fn dgnat_space(base: &DgCategory, f: &DgFunctor, g: &DgFunctor, n: i64) -> NatSpace {
    let (sys, layouts, offsets) = dgnat_system(base, f, g, n);
    NatSpace { degree: n, layouts, offsets, space: sys.solve() }
}

/// Degrees where `DgNat^n(F, G)` can be nonzero by shape.
pub fn dgnat_window(f: &DgFunctor, g: &DgFunctor) -> Option<(i64, i64)> {
    let ws: Vec<(i64, i64)> = (0..f.len()).filter_map(|x| HomLayout::new(f.value(x).dims(), g.value(x).dims()).window()).collect();
    Some((ws.iter().map(|w| w.0).min()?, ws.iter().map(|w| w.1).max()?))
}

/// `DgNat^n(F, G)` dimensions over the shape window.
pub fn dgnat_dims(base: &DgCategory, f: &DgFunctor, g: &DgFunctor) -> Dims {
    let mut d = Dims::new();
    if let Some((lo, hi)) = dgnat_window(f, g) {
        for n in lo..=hi {
            d.set(n, dgnat_space(base, f, g, n).dim());
        }
    }
    d
}

/// `d(η)_X = d_{Hom(F X, G X)}(η_X)`.
pub fn dgnat_differential(f: &DgFunctor, g: &DgFunctor, eta: &NatTransformation) -> NatTransformation {
    let components = eta
        .components
        .iter()
        .enumerate()
        .map(|(x, c)| hom_differential(f.value(x), g.value(x), c).expect("component shapes"))
        .collect();
    NatTransformation { degree: eta.degree + 1, components }
}

/// `(ν ∘ η)_X = ν_X ∘ η_X`.
pub fn compose_nat(nu: &NatTransformation, eta: &NatTransformation) -> Result<NatTransformation> {
    if nu.components.len() != eta.components.len() {
        return Err(structural("transformations over different object sets"));
    }
    let components = nu.components.iter().zip(&eta.components).map(|(a, b)| compose_graded(a, b)).collect::<Result<_>>()?;
    Ok(NatTransformation { degree: nu.degree + eta.degree, components })
}

/// Builds a module from per-basis-morphism maps supplied by `act`.
fn module_from_basis_action(
    name: String,
    base: &DgCategory,
    values: Vec<DgModule>,
    act: impl Fn(usize, usize, (i64, usize)) -> GradedMap,
) -> DgFunctor {
    let mut m = DgFunctor::new(name, base, values).expect("shapes");
    for x in 0..base.len() {
        for y in 0..base.len() {
            for b in basis_of(base.hom(x, y).dims()) {
                let map = act(x, y, b);
                m.set_action(x, y, b, &map).expect("action shape");
            }
        }
    }
    m
}

/// Left multiplication on coordinates: the graded map `j ↦ f ∘ j`
/// from `hom(a, x)` to `hom(a, y)` for `f ∈ hom(x, y)`.
fn postcomposition(c: &DgCategory, a: usize, x: usize, y: usize, f: (i64, usize)) -> GradedMap {
    let field = c.field();
    let fv = unit_vector(field, c.hom(x, y).dims().get(f.0), f.1);
    let (src, tgt) = (c.hom(a, x).dims(), c.hom(a, y).dims());
    let mut m = GradedMap::zero(field, f.0, src, tgt);
    for (jd, dim) in src.iter() {
        let cols: Vec<Vec<Scalar>> = (0..dim).map(|k| c.compose((a, x, y), f.0, &fv, jd, &unit_vector(field, dim, k))).collect();
        m.set_block(jd, Matrix::from_columns(field, tgt.get(jd + f.0), &cols)).expect("shape");
    }
    m
}

/// `Hom_C(A, −)`: `X ↦ hom(A, X)`, `f ↦ (j ↦ f ∘ j)`.
pub fn representable_module(c: &DgCategory, a: usize) -> DgFunctor {
    let values = (0..c.len()).map(|x| c.hom(a, x).clone()).collect();
    module_from_basis_action(format!("Hom({}, -)", c.objects()[a]), c, values, |x, y, f| postcomposition(c, a, x, y, f))
}

/// `Hom_C(−, A)` as a module over `C^op`: `f ↦ (j ↦ (−1)^{|f||j|} j ∘ f)`.
///
/// Returns the module together with the opposite category it lives over.
pub fn yoneda_module(c: &DgCategory, a: usize) -> (DgCategory, DgFunctor) {
    let op = opposite_category(c);
    let field = c.field();
    let values = (0..c.len()).map(|x| c.hom(x, a).clone()).collect();
    let m = module_from_basis_action(format!("Hom(-, {})", c.objects()[a]), &op, values, |x, y, f| {
        // f ∈ hom^op(x, y) = hom(y, x); acts hom(x, a) → hom(y, a)
        let fv = unit_vector(field, c.hom(y, x).dims().get(f.0), f.1);
        let (src, tgt) = (c.hom(x, a).dims(), c.hom(y, a).dims());
        let mut m = GradedMap::zero(field, f.0, src, tgt);
        for (jd, dim) in src.iter() {
            let sign = field.sign(f.0 * jd);
            let cols: Vec<Vec<Scalar>> = (0..dim)
                .map(|k| {
                    let v = c.compose((y, x, a), jd, &unit_vector(field, dim, k), f.0, &fv);
                    v.iter().map(|s| &sign * s).collect()
                })
                .collect();
            m.set_block(jd, Matrix::from_columns(field, tgt.get(jd + f.0), &cols)).expect("shape");
        }
        m
    });
    (op, m)
}

/// The module with value `M` on every object of a one-object category and
/// the given degree-0 map `End(*) → Hom(M, M)`.
pub fn one_object_module(name: &str, base: &DgCategory, value: DgModule, action: GradedMap) -> Result<DgFunctor> {
    let mut m = DgFunctor::new(name, base, vec![value])?;
    m.set_action_map(0, 0, action)?;
    Ok(m)
}

/// Direct sum of modules over the same base, objectwise.
pub fn direct_sum_modules(name: &str, base: &DgCategory, parts: &[&DgFunctor]) -> Result<DgFunctor> {
    use crate::dg_kmod::{block_diagonal, direct_sum, SumLayout};
    let field = base.field();
    let values = (0..base.len())
        .map(|x| direct_sum(&parts.iter().map(|p| p.value(x)).collect::<Vec<_>>(), field))
        .collect::<Result<Vec<_>>>()?;
    let mut out = DgFunctor::new(name, base, values)?;
    for x in 0..base.len() {
        let sx = SumLayout::new(parts.iter().map(|p| p.value(x).dims().clone()).collect());
        for y in 0..base.len() {
            let sy = SumLayout::new(parts.iter().map(|p| p.value(y).dims().clone()).collect());
            for b in basis_of(base.hom(x, y).dims()) {
                let pieces: Vec<GradedMap> = parts.iter().map(|p| p.act_basis(x, y, b)).collect();
                let map = block_diagonal(field, b.0, &sx, &sy, &pieces)?;
                out.set_action(x, y, b, &map)?;
            }
        }
    }
    Ok(out)
}

/// Transports a module along objectwise isomorphisms `p_X` (new = p · old).
pub fn change_module_basis(base: &DgCategory, m: &DgFunctor, p: &[GradedMap], p_inv: &[GradedMap]) -> Result<DgFunctor> {
    let values = (0..base.len()).map(|x| m.value(x).change_basis(&p[x], &p_inv[x])).collect::<Result<Vec<_>>>()?;
    let mut out = DgFunctor::new(m.name.clone(), base, values)?;
    for (x, qx) in p_inv.iter().enumerate() {
        for (y, py) in p.iter().enumerate() {
            for b in basis_of(base.hom(x, y).dims()) {
                let map = compose_graded(py, &compose_graded(&m.act_basis(x, y, b), qx)?)?;
                out.set_action(x, y, b, &map)?;
            }
        }
    }
    Ok(out)
}

/// The Hom complex `Hom(M, N)` of two plain complexes, as used by the
/// one-object special case; re-exported for callers comparing dimensions.
pub fn plain_hom_dims(m: &DgModule, n: &DgModule) -> Dims {
    hom_complex_with_layout(m, n).0.dims().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{unit_category, validate_dg_category};
    use crate::presets::{arrow_category, exterior_algebra, module_over_unit};

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn zero_and_representable_modules_validate() {
        let e = exterior_algebra(q(), "E", 1);
        assert!(validate_dg_functor(&e, &DgFunctor::zero("0", &e)).passed());
        let r = representable_module(&e, 0);
        assert!(validate_dg_functor(&e, &r).passed());
        // x acts on the basis (1, x) of hom(*, *) by left multiplication: 1 ↦ x, x ↦ 0.
        let x = r.act_basis(0, 0, (1, 0));
        assert_eq!(x.block(0).column(0), vec![q().one()]);
        assert!(x.block_ref(1).is_none());
    }

    #[test]
    fn yoneda_on_exterior_algebra_signs() {
        let e = exterior_algebra(q(), "E", 1);
        let (op, y) = yoneda_module(&e, 0);
        assert!(validate_dg_category(&op).passed());
        assert!(validate_dg_functor(&op, &y).passed());
        assert_eq!(y.value(0).dims().total(), 2);
        // x^op acts by j ↦ (−1)^{|j|} j ∘ x: 1 ↦ x, x ↦ −x∘x = 0.
        let x = y.act_basis(0, 0, (1, 0));
        assert_eq!(x.block(0).column(0), vec![q().one()]);
    }

    #[test]
    fn yoneda_sign_visible_on_odd_maps() {
        // End(K[0] ⊕ K[1]) has u of degree 1 and v of degree −1 with u ∘ v ≠ 0.
        let a = crate::presets::graded_k(q(), &[0, 1]);
        let c = crate::category::full_subcategory("D", q(), &[("A".into(), a)]).unwrap();
        let (op, y) = yoneda_module(&c, 0);
        assert!(validate_dg_functor(&op, &y).passed());
        assert!(validate_dg_functor(&c, &representable_module(&c, 0)).passed());
        let one = unit_vector(q(), 1, 0);
        let u_after_v = c.compose((0, 0, 0), 1, &one, -1, &one);
        assert!(u_after_v.iter().any(|s| !s.is_zero()));
        // v^op acting on j = u gives (−1)^{(−1)·1} u ∘ v.
        let image = y.act(0, 0, -1, &one).apply(1, &one).unwrap();
        assert_eq!(image, u_after_v.iter().map(|s| -s).collect::<Vec<_>>());
        // covariant: v acting on j = u gives v ∘ u, no sign.
        let cov = representable_module(&c, 0).act(0, 0, -1, &one).apply(1, &one).unwrap();
        assert_eq!(cov, c.compose((0, 0, 0), -1, &one, 1, &one));
    }

    #[test]
    fn yoneda_on_arrow_category() {
        let c = arrow_category(q());
        for a in 0..2 {
            let (op, y) = yoneda_module(&c, a);
            assert!(validate_dg_functor(&op, &y).passed());
            assert!(validate_dg_functor(&c, &representable_module(&c, a)).passed());
        }
    }

    #[test]
    fn dgnat_on_unit_category() {
        let k = unit_category(q());
        let z = DgFunctor::zero("0", &k);
        for n in -2..=2 {
            assert_eq!(dgnat_space(&k, &z, &z, n).dim(), 0);
        }
        let m = module_over_unit(&k, DgModule::unit(q(), 0));
        assert_eq!(dgnat_space(&k, &m, &m, 0).dim(), 1);
        assert_eq!(dgnat_space(&k, &m, &m, 1).dim(), 0);
        // disjoint supports: K[0] → K[3] has nothing in degree 0
        let far = module_over_unit(&k, DgModule::unit(q(), 3));
        assert_eq!(dgnat_space(&k, &m, &far, 0).dim(), 0);
    }

    #[test]
    fn dgnat_differential_on_contractible_source() {
        let k = unit_category(q());
        let big = DgModule::interval(q(), 0);
        let f = module_over_unit(&k, big.clone());
        let g = module_over_unit(&k, DgModule::unit(q(), 0));
        let s = dgnat_space(&k, &f, &g, -1);
        assert_eq!(s.dim(), 1);
        let eta = s.basis_element(0);
        let d_eta = dgnat_differential(&f, &g, &eta);
        assert_eq!(d_eta.components[0], compose_graded(&eta.components[0], &big.d).unwrap());
        assert!(dgnat_space(&k, &f, &g, 0).coordinates(&d_eta).is_some());
        assert!(dgnat_differential(&f, &g, &d_eta).is_zero());
    }

    #[test]
    fn dgnat_basis_is_natural_and_closed_under_d() {
        let e = exterior_algebra(q(), "E", 1);
        let r = representable_module(&e, 0);
        for n in -1..=1 {
            let s = dgnat_space(&e, &r, &r, n);
            for k in 0..s.dim() {
                let eta = s.basis_element(k);
                assert!(naturality_tally(&e, &r, &r, &eta).ok());
                let next = dgnat_space(&e, &r, &r, n + 1);
                assert!(next.coordinates(&dgnat_differential(&r, &r, &eta)).is_some());
            }
        }
        // identity is natural, and composition of degree-1 transformations is natural.
        let id = NatTransformation::identity(&r);
        assert!(dgnat_space(&e, &r, &r, 0).coordinates(&id).is_some());
        let s1 = dgnat_space(&e, &r, &r, 1);
        assert!(s1.dim() > 0);
        let a = s1.basis_element(0);
        let comp = compose_nat(&a, &a).unwrap();
        assert_eq!(comp.degree, 2);
        assert!(naturality_tally(&e, &r, &r, &comp).ok());
        assert_eq!(compose_nat(&id, &a).unwrap(), a);
    }
}

//! Dg bimodules `M ∈ DgMod(U ⊗ T^op)` as two families of one-sided actions,
//! the bullet products, and the functor `𝔾`.

use std::collections::BTreeMap;

use crate::category::{basis_of, opposite_category, tensor_category, DgCategory};
use crate::dg_kmod::{hom_differential, unit_vector, DgModule, TensorLayout};
use crate::error::{structural, Error, Result};
use crate::functor::{compose_nat, dgnat_space, dgnat_window, validate_dg_functor, DgFunctor, NatSpace, NatTransformation};
use crate::linalg::{compose_graded, Dims, Field, GradedMap, GradedModule, Matrix, Scalar};
use crate::report::{Report, Tally};

/// `M(U, T)` for all objects, the left action `M(u ⊗ 1)` and the right
/// action `M(1 ⊗ t^op)`.
///
/// The left slices `M_T` are modules over `U`; the right slices `M_U` are
/// modules over `T^op`, so `t ∈ hom_T(T, T′)` acts `M(U, T′) → M(U, T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub name: String,
    field: Field,
    left: Vec<DgFunctor>,
    right: Vec<DgFunctor>,
}

impl Bimodule {
    /// `values[u][t] = M(U_u, T_t)`, all actions zero.
    pub fn new(name: impl Into<String>, u: &DgCategory, t: &DgCategory, values: Vec<Vec<DgModule>>) -> Result<Self> {
        if u.field() != t.field() {
            return Err(structural("bimodule over categories with different fields"));
        }
        if values.len() != u.len() || values.iter().any(|row| row.len() != t.len()) {
            return Err(structural("bimodule values do not match the object sets"));
        }
        let name = name.into();
        let t_op = opposite_category(t);
        let left = (0..t.len())
            .map(|ti| DgFunctor::new(format!("{name}_{}", t.objects()[ti]), u, values.iter().map(|row| row[ti].clone()).collect()))
            .collect::<Result<_>>()?;
        let right = (0..u.len())
            .map(|ui| DgFunctor::new(format!("{name}_{}", u.objects()[ui]), &t_op, values[ui].clone()))
            .collect::<Result<_>>()?;
        Ok(Bimodule { name, field: u.field(), left, right })
    }

    pub fn zero(name: impl Into<String>, u: &DgCategory, t: &DgCategory) -> Self {
        let values = vec![vec![DgModule::zero(u.field()); t.len()]; u.len()];
        Self::new(name, u, t, values).expect("shapes")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn u_len(&self) -> usize {
        self.right.len()
    }

    pub fn t_len(&self) -> usize {
        self.left.len()
    }

    pub fn value(&self, u: usize, t: usize) -> &DgModule {
        self.left[t].value(u)
    }

    /// `M_T`, a module over `U`.
    pub fn left_slice(&self, t: usize) -> &DgFunctor {
        &self.left[t]
    }

    /// `M_U`, a module over `T^op`.
    pub fn right_slice(&self, u: usize) -> &DgFunctor {
        &self.right[u]
    }

    pub fn is_zero(&self) -> bool {
        self.left.iter().all(DgFunctor::is_zero)
    }

    /// Sets `M(u ⊗ 1_T)` for the basis element `b` of `hom_U(u1, u2)`.
    pub fn set_left(&mut self, t: usize, u1: usize, u2: usize, b: (i64, usize), map: &GradedMap) -> Result<()> {
        self.left[t].set_action(u1, u2, b, map)
    }

    /// Sets `M(1_U ⊗ t^op) : M(U, T′) → M(U, T)` for the basis element `b` of `hom_T(t1, t2)`.
    pub fn set_right(&mut self, u: usize, t1: usize, t2: usize, b: (i64, usize), map: &GradedMap) -> Result<()> {
        self.right[u].set_action(t2, t1, b, map)
    }

    pub fn left_action(&self, t: usize, u1: usize, u2: usize, deg: i64, coords: &[Scalar]) -> GradedMap {
        self.left[t].act(u1, u2, deg, coords)
    }

    pub fn left_action_basis(&self, t: usize, u1: usize, u2: usize, b: (i64, usize)) -> GradedMap {
        self.left[t].act_basis(u1, u2, b)
    }

    /// `t̄ = M(1 ⊗ t^op) : M(U, T′) → M(U, T)` for `t ∈ hom_T(t1, t2)`.
    pub fn right_action(&self, u: usize, t1: usize, t2: usize, deg: i64, coords: &[Scalar]) -> GradedMap {
        self.right[u].act(t2, t1, deg, coords)
    }

    pub fn right_action_basis(&self, u: usize, t1: usize, t2: usize, b: (i64, usize)) -> GradedMap {
        self.right[u].act_basis(t2, t1, b)
    }

    /// `m • t = (−1)^{|t||m|} M(1 ⊗ t^op)(m)` for `m ∈ M(U, T′)^{md}`,
    /// `t ∈ hom_T(T, T′)^{td}`; lands in `M(U, T)^{md + td}`.
    pub fn right_bullet(&self, u: usize, (t1, t2): (usize, usize), (md, m): (i64, &[Scalar]), (td, t): (i64, &[Scalar])) -> Vec<Scalar> {
        let map = self.right_action(u, t1, t2, td, t);
        let sign = self.field.sign(td * md);
        map.apply(md, m).expect("element of M(U, T′)").iter().map(|s| &sign * s).collect()
    }

    /// `u • m = M(u ⊗ 1)(m)` for `u ∈ hom_U(U, U′)`, `m ∈ M(U, T)`.
    pub fn left_bullet(&self, t: usize, (u1, u2): (usize, usize), (ud, uc): (i64, &[Scalar]), (md, m): (i64, &[Scalar])) -> Vec<Scalar> {
        self.left_action(t, u1, u2, ud, uc).apply(md, m).expect("element of M(U, T)")
    }
}

fn slice_checks(report: &mut Report, subject: &str, name: &str, slices: &[(&DgCategory, &DgFunctor)]) {
    for check in ["units", "functoriality"] {
        let mut t = Tally::new();
        for (base, s) in slices {
            let r = validate_dg_functor(base, s);
            let c = r.find(&format!("module {}", s.name), check).expect("check exists");
            t.record(c.passed, || format!("slice {}: {}", s.name, c.witness.clone().unwrap_or_default()));
        }
        report.push(subject, &format!("{name}_{check}"), t);
    }
}

/// Order: `values_are_complexes`, `left_units`, `left_functoriality`,
/// `right_units`, `right_functoriality`, `interchange`, `differential_compatibility`.
pub fn validate_bimodule(u: &DgCategory, t: &DgCategory, m: &Bimodule) -> Report {
    let mut report = Report::new("validate");
    let subject = format!("bimodule {}", m.name);
    let field = m.field;

    let mut tal = Tally::new();
    for ui in 0..u.len() {
        for ti in 0..t.len() {
            let ok = m.value(ui, ti).is_complex();
            tal.record(ok, || format!("{}({}, {}): d∘d ≠ 0", m.name, u.objects()[ui], t.objects()[ti]));
        }
    }
    report.push(&subject, "values_are_complexes", tal);

    let left: Vec<(&DgCategory, &DgFunctor)> = m.left.iter().map(|s| (u, s)).collect();
    slice_checks(&mut report, &subject, "left", &left);
    let t_op = opposite_category(t);
    let right: Vec<(&DgCategory, &DgFunctor)> = m.right.iter().map(|s| (&t_op, s)).collect();
    slice_checks(&mut report, &subject, "right", &right);

    let u_basis: BTreeMap<(usize, usize), Vec<(i64, usize)>> =
        (0..u.len()).flat_map(|a| (0..u.len()).map(move |b| (a, b))).map(|p| (p, basis_of(u.hom(p.0, p.1).dims()))).collect();
    let t_basis: BTreeMap<(usize, usize), Vec<(i64, usize)>> =
        (0..t.len()).flat_map(|a| (0..t.len()).map(move |b| (a, b))).map(|p| (p, basis_of(t.hom(p.0, p.1).dims()))).collect();

    let mut tal = Tally::new();
    for (&(u1, u2), ub) in &u_basis {
        for (&(t1, t2), tb) in &t_basis {
            for &a in ub {
                let l1 = m.left_action_basis(t1, u1, u2, a);
                let l2 = m.left_action_basis(t2, u1, u2, a);
                for &b in tb {
                    let r1 = m.right_action_basis(u1, t1, t2, b);
                    let r2 = m.right_action_basis(u2, t1, t2, b);
                    let lhs = compose_graded(&l1, &r1).expect("composable");
                    let rhs = compose_graded(&r2, &l2).expect("composable").scale(&field.sign(a.0 * b.0));
                    tal.record(lhs == rhs, || {
                        format!(
                            "u = e[{}][{}] of hom_U({}, {}), t = e[{}][{}] of hom_T({}, {}): M(u⊗1)M(1⊗t^op) ≠ (−1)^(|u||t|) M(1⊗t^op)M(u⊗1)",
                            a.0, a.1, u.objects()[u1], u.objects()[u2], b.0, b.1, t.objects()[t1], t.objects()[t2]
                        )
                    });
                }
            }
        }
    }
    report.push(&subject, "interchange", tal);

    // M(dα ⊗ β^op) + (−1)^|α| M(α ⊗ dβ^op) = d M(α ⊗ β^op) − (−1)^{|α|+|β|} M(α ⊗ β^op) d
    let mut tal = Tally::new();
    for (&(u1, u2), ub) in &u_basis {
        for (&(t1, t2), tb) in &t_basis {
            for &a in ub {
                let av = unit_vector(field, u.hom(u1, u2).dims().get(a.0), a.1);
                let da = u.d(u1, u2, a.0, &av);
                let la = m.left_action(t1, u1, u2, a.0, &av);
                let lda = m.left_action(t1, u1, u2, a.0 + 1, &da);
                for &b in tb {
                    let bv = unit_vector(field, t.hom(t1, t2).dims().get(b.0), b.1);
                    let db = t.d(t1, t2, b.0, &bv);
                    let rb = m.right_action(u1, t1, t2, b.0, &bv);
                    let rdb = m.right_action(u1, t1, t2, b.0 + 1, &db);
                    let both = compose_graded(&la, &rb).expect("composable");
                    let lhs = compose_graded(&lda, &rb)
                        .and_then(|x| x.add(&compose_graded(&la, &rdb)?.scale(&field.sign(a.0))))
                        .expect("parallel");
                    let rhs = hom_differential(m.value(u1, t2), m.value(u2, t1), &both).expect("shapes");
                    tal.record(lhs == rhs, || {
                        format!(
                            "α = e[{}][{}] of hom_U({}, {}), β = e[{}][{}] of hom_T({}, {}): M(dα⊗β^op) + (−1)^|α| M(α⊗dβ^op) ≠ d(M(α⊗β^op))",
                            a.0, a.1, u.objects()[u1], u.objects()[u2], b.0, b.1, t.objects()[t1], t.objects()[t2]
                        )
                    });
                }
            }
        }
    }
    report.push(&subject, "differential_compatibility", tal);
    report
}

/// The same data as a single module over `U ⊗ T^op`; object `(U, T)` has
/// index `u · |T| + t`, and `α ⊗ β^op` acts by `M(α ⊗ 1) ∘ M(1 ⊗ β^op)`.
pub fn to_tensor_module(u: &DgCategory, t: &DgCategory, m: &Bimodule) -> Result<(DgCategory, DgFunctor)> {
    let t_op = opposite_category(t);
    let base = tensor_category(u, &t_op)?;
    let nt = t.len();
    let values = (0..u.len()).flat_map(|a| (0..nt).map(move |b| (a, b))).map(|(a, b)| m.value(a, b).clone()).collect();
    let mut f = DgFunctor::new(m.name.clone(), &base, values)?;
    for (u1, t2) in (0..u.len()).flat_map(|a| (0..nt).map(move |b| (a, b))) {
        for (u2, t1) in (0..u.len()).flat_map(|a| (0..nt).map(move |b| (a, b))) {
            // hom((u1, t2), (u2, t1)) = hom_U(u1, u2) ⊗ hom_T(t1, t2)
            let layout = TensorLayout::new(u.hom(u1, u2).dims(), t.hom(t1, t2).dims());
            for (deg, p, a, b, idx) in layout.basis() {
                let la = m.left_action_basis(t1, u1, u2, (p, a));
                let rb = m.right_action_basis(u1, t1, t2, (deg - p, b));
                f.set_action(u1 * nt + t2, u2 * nt + t1, (deg, idx), &compose_graded(&la, &rb)?)?;
            }
        }
    }
    Ok((base, f))
}

/// Recovers the one-sided actions from a module over `U ⊗ T^op` by
/// restricting to `α ⊗ 1` and `1 ⊗ β^op`.
pub fn from_tensor_module(name: &str, u: &DgCategory, t: &DgCategory, f: &DgFunctor) -> Result<Bimodule> {
    let nt = t.len();
    let field = u.field();
    let values = (0..u.len()).map(|a| (0..nt).map(|b| f.value(a * nt + b).clone()).collect()).collect();
    let mut m = Bimodule::new(name, u, t, values)?;
    for ti in 0..nt {
        let id = t.identity(ti);
        for u1 in 0..u.len() {
            for u2 in 0..u.len() {
                let layout = TensorLayout::new(u.hom(u1, u2).dims(), t.hom(ti, ti).dims());
                for (p, a) in basis_of(u.hom(u1, u2).dims()) {
                    let mut v = vec![field.zero(); layout.dims().get(p)];
                    for (j, s) in id.iter().enumerate() {
                        v[layout.index(p, p, a, j)] = s.clone();
                    }
                    let map = f.act(u1 * nt + ti, u2 * nt + ti, p, &v);
                    m.set_left(ti, u1, u2, (p, a), &map)?;
                }
            }
        }
    }
    for ui in 0..u.len() {
        let id = u.identity(ui);
        for t1 in 0..nt {
            for t2 in 0..nt {
                let layout = TensorLayout::new(u.hom(ui, ui).dims(), t.hom(t1, t2).dims());
                for (q, b) in basis_of(t.hom(t1, t2).dims()) {
                    let mut v = vec![field.zero(); layout.dims().get(q)];
                    for (i, s) in id.iter().enumerate() {
                        v[layout.index(q, 0, i, b)] = s.clone();
                    }
                    let map = f.act(ui * nt + t2, ui * nt + t1, q, &v);
                    m.set_right(ui, t1, t2, (q, b), &map)?;
                }
            }
        }
    }
    Ok(m)
}

/// `𝔾(B)`: the module over `T` with `𝔾(B)(T)^n = DgNat^n(M_T, B)`, in the
/// basis produced by [`dgnat_space`].
#[derive(Clone, Debug)]
pub struct GModule {
    pub module: DgFunctor,
    spaces: Vec<BTreeMap<i64, NatSpace>>,
}

impl GModule {
    pub fn space(&self, t: usize, n: i64) -> Option<&NatSpace> {
        self.spaces[t].get(&n)
    }

    /// The transformation `M_T → B` with the given coordinates.
    pub fn unfold(&self, t: usize, n: i64, coords: &[Scalar]) -> Option<NatTransformation> {
        Some(self.space(t, n)?.element(coords))
    }

    /// Coordinates of `η : M_T → B` of degree `n`; `None` unless natural.
    pub fn fold(&self, t: usize, eta: &NatTransformation) -> Option<Vec<Scalar>> {
        match self.space(t, eta.degree) {
            Some(s) => s.coordinates(eta),
            None => eta.is_zero().then(Vec::new),
        }
    }
}

fn internal(msg: String) -> Error {
    Error::Structural(msg)
}

/// `𝔾(B)(t)(η) = (−1)^{|η||t|} η ∘ t̄` with `[t̄]_U = M(1_U ⊗ t^op)`.
pub fn g_on_objects(u: &DgCategory, t: &DgCategory, m: &Bimodule, b: &DgFunctor) -> Result<GModule> {
    let field = m.field;
    let mut spaces = Vec::with_capacity(t.len());
    let mut values = Vec::with_capacity(t.len());
    for ti in 0..t.len() {
        let slice = m.left_slice(ti);
        let mut per = BTreeMap::new();
        let mut dims = Dims::new();
        if let Some((lo, hi)) = dgnat_window(slice, b) {
            for n in lo..=hi {
                let s = dgnat_space(u, slice, b, n);
                dims.set(n, s.dim());
                per.insert(n, s);
            }
        }
        let mut d = GradedMap::zero(field, 1, &dims, &dims);
        for (n, dim) in dims.iter() {
            let next = per.get(&(n + 1));
            let mut cols = Vec::with_capacity(dim);
            for k in 0..dim {
                let eta = per[&n].basis_element(k);
                let de = crate::functor::dgnat_differential(slice, b, &eta);
                let c = match next {
                    Some(s) => s.coordinates(&de),
                    None => de.is_zero().then(Vec::new),
                }
                .ok_or_else(|| internal(format!("d(η) left DgNat^{}(M_T, B)", n + 1)))?;
                cols.push(c);
            }
            d.set_block(n, Matrix::from_columns(field, dims.get(n + 1), &cols))?;
        }
        values.push(DgModule::new(GradedModule::new(dims), d)?);
        spaces.push(per);
    }
    let mut g = GModule { module: DgFunctor::new(format!("G({})", b.name), t, values)?, spaces };
    for t1 in 0..t.len() {
        for t2 in 0..t.len() {
            for tb in basis_of(t.hom(t1, t2).dims()) {
                let src = g.module.value(t1).dims().clone();
                let tgt = g.module.value(t2).dims().clone();
                let mut map = GradedMap::zero(field, tb.0, &src, &tgt);
                for (n, dim) in src.iter() {
                    let sign = field.sign(n * tb.0);
                    let mut cols = Vec::with_capacity(dim);
                    for k in 0..dim {
                        let eta = g.spaces[t1][&n].basis_element(k);
                        let comps = (0..u.len())
                            .map(|ui| Ok(compose_graded(&eta.components[ui], &m.right_action_basis(ui, t1, t2, tb))?.scale(&sign)))
                            .collect::<Result<Vec<_>>>()?;
                        let image = NatTransformation { degree: n + tb.0, components: comps };
                        let c = g.fold(t2, &image).ok_or_else(|| internal("η ∘ t̄ is not natural; M is not a bimodule".into()))?;
                        cols.push(c);
                    }
                    map.set_block(n, Matrix::from_columns(field, tgt.get(n + tb.0), &cols))?;
                }
                g.module.set_action(t1, t2, tb, &map)?;
            }
        }
    }
    Ok(g)
}

/// `𝔾(ε)_T(η) = ε ∘ η`, a transformation `𝔾(B) → 𝔾(B′)` of degree `|ε|`.
pub fn g_on_morphisms(gb: &GModule, gb2: &GModule, eps: &NatTransformation) -> Result<NatTransformation> {
    let field = gb.module.field();
    let mut components = Vec::with_capacity(gb.module.len());
    for ti in 0..gb.module.len() {
        let src = gb.module.value(ti).dims().clone();
        let tgt = gb2.module.value(ti).dims().clone();
        let mut map = GradedMap::zero(field, eps.degree, &src, &tgt);
        for (n, dim) in src.iter() {
            let mut cols = Vec::with_capacity(dim);
            for k in 0..dim {
                let eta = gb.spaces[ti][&n].basis_element(k);
                let image = compose_nat(eps, &eta)?;
                cols.push(gb2.fold(ti, &image).ok_or_else(|| internal("ε ∘ η is not natural".into()))?);
            }
            map.set_block(n, Matrix::from_columns(field, tgt.get(n + eps.degree), &cols))?;
        }
        components.push(map);
    }
    Ok(NatTransformation { degree: eps.degree, components })
}

fn composition_map_on(c: &DgCategory, (a, x, y): (usize, usize, usize), j_side: bool, f: (i64, usize), sign_by_j: bool) -> GradedMap {
    // j_side = false: j ↦ f ∘ j with j ∈ hom(a, x), f ∈ hom(x, y).
    // j_side = true:  j ↦ j ∘ f with f ∈ hom(a, x), j ∈ hom(x, y).
    let field = c.field();
    let (src, tgt, f_dims) = if j_side {
        (c.hom(x, y).dims().clone(), c.hom(a, y).dims().clone(), c.hom(a, x).dims().clone())
    } else {
        (c.hom(a, x).dims().clone(), c.hom(a, y).dims().clone(), c.hom(x, y).dims().clone())
    };
    let fv = unit_vector(field, f_dims.get(f.0), f.1);
    let mut m = GradedMap::zero(field, f.0, &src, &tgt);
    for (jd, dim) in src.iter() {
        let sign = if sign_by_j { field.sign(jd * f.0) } else { field.one() };
        let cols: Vec<Vec<Scalar>> = (0..dim)
            .map(|k| {
                let jv = unit_vector(field, dim, k);
                let v = if j_side { c.compose((a, x, y), jd, &jv, f.0, &fv) } else { c.compose((a, x, y), f.0, &fv, jd, &jv) };
                v.iter().map(|s| &sign * s).collect()
            })
            .collect();
        m.set_block(jd, Matrix::from_columns(field, tgt.get(jd + f.0), &cols)).expect("shape");
    }
    m
}

/// Restricted Hom bimodule of a dg-category `C`: with `U`, `T` the full
/// subcategories on `u_objs`, `t_objs`, set `M(U, T) = hom_C(T, U)`,
/// `u • m = u ∘ m` and `m • t = m ∘ t`.
pub fn hom_bimodule(name: &str, c: &DgCategory, u_objs: &[usize], t_objs: &[usize]) -> Result<(DgCategory, DgCategory, Bimodule)> {
    let u = crate::category::restrict_objects(c, &format!("{}_U", c.name), u_objs)?;
    let t = crate::category::restrict_objects(c, &format!("{}_T", c.name), t_objs)?;
    let values = u_objs.iter().map(|&ou| t_objs.iter().map(|&ot| c.hom(ot, ou).clone()).collect()).collect();
    let mut m = Bimodule::new(name, &u, &t, values)?;
    for (ti, &ot) in t_objs.iter().enumerate() {
        for (u1, &o1) in u_objs.iter().enumerate() {
            for (u2, &o2) in u_objs.iter().enumerate() {
                for b in basis_of(c.hom(o1, o2).dims()) {
                    m.set_left(ti, u1, u2, b, &composition_map_on(c, (ot, o1, o2), false, b, false))?;
                }
            }
        }
    }
    for (ui, &ou) in u_objs.iter().enumerate() {
        for (t1, &o1) in t_objs.iter().enumerate() {
            for (t2, &o2) in t_objs.iter().enumerate() {
                // M(1 ⊗ t^op)(m) = (−1)^{|t||m|} m ∘ t, m ∈ hom(T2, U)
                for b in basis_of(c.hom(o1, o2).dims()) {
                    m.set_right(ui, t1, t2, b, &composition_map_on(c, (o1, o2, ou), true, b, true))?;
                }
            }
        }
    }
    Ok((u, t, m))
}

/// The bimodule `M(U, T) = K` in degree 0 over categories whose Hom spaces
/// are `K·1` in degree 0 plus elements acting by zero (augmented algebras).
pub fn trivial_bimodule(name: &str, u: &DgCategory, t: &DgCategory, degree: i64) -> Result<Bimodule> {
    let field = u.field();
    let values = vec![vec![DgModule::unit(field, degree); t.len()]; u.len()];
    let mut m = Bimodule::new(name, u, t, values)?;
    let id = GradedMap::identity(field, &Dims::concentrated(degree, 1));
    for ti in 0..t.len() {
        for ui in 0..u.len() {
            m.set_left(ti, ui, ui, (0, 0), &id)?;
        }
    }
    for ui in 0..u.len() {
        for ti in 0..t.len() {
            m.set_right(ui, ti, ti, (0, 0), &id)?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{full_subcategory, unit_category, validate_dg_category};
    use crate::functor::{dgnat_differential, dgnat_space, naturality_tally, representable_module};
    use crate::presets::{exterior_algebra, graded_k, module_over_unit};

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn unit_bimodule_passes() {
        let k = unit_category(q());
        let m = trivial_bimodule("M", &k, &k, 0).unwrap();
        let r = validate_dg_bimodule_all(&k, &k, &m);
        assert!(r.passed(), "{}", r.to_json());
    }

    fn validate_dg_bimodule_all(u: &DgCategory, t: &DgCategory, m: &Bimodule) -> Report {
        let mut r = validate_bimodule(u, t, m);
        let (base, f) = to_tensor_module(u, t, m).unwrap();
        r.absorb(validate_dg_functor(&base, &f));
        assert_eq!(&from_tensor_module(&m.name, u, t, &f).unwrap(), m);
        r
    }

    #[test]
    fn regular_bimodule_of_exterior_algebra() {
        let e = exterior_algebra(q(), "E", 1);
        let (u, t, m) = hom_bimodule("reg", &e, &[0], &[0]).unwrap();
        assert!(validate_dg_bimodule_all(&u, &t, &m).passed());
        // x acting on the right of x: m • t = m ∘ t = 0; of 1: 1 • x = x, with M(1⊗x^op)(1) = x.
        let one = vec![q().one()];
        assert_eq!(m.right_bullet(0, (0, 0), (0, &one), (1, &one)), one);
        assert_eq!(m.left_bullet(0, (0, 0), (1, &one), (0, &one)), one);
    }

    #[test]
    fn right_module_over_exterior_with_unit_left() {
        // U = K, T = E, M = hom_T as a right module.
        let e = exterior_algebra(q(), "E", 1);
        let k = unit_category(q());
        let reg = representable_module(&e, 0);
        let mut m = Bimodule::new("M", &k, &e, vec![vec![reg.value(0).clone()]]).unwrap();
        let id = GradedMap::identity(q(), reg.value(0).dims());
        m.set_left(0, 0, 0, (0, 0), &id).unwrap();
        let (_, yon) = crate::functor::yoneda_module(&e, 0);
        // the right action is exactly the Yoneda action over E^op
        for b in basis_of(e.hom(0, 0).dims()) {
            m.set_right(0, 0, 0, b, &yon.act_basis(0, 0, b)).unwrap();
        }
        assert!(validate_dg_bimodule_all(&k, &e, &m).passed());
    }

    #[test]
    fn odd_bimodule_signs() {
        let y = graded_k(q(), &[0, 1]);
        let c = full_subcategory("D", q(), &[("A".into(), y.clone()), ("B".into(), DgModule::interval(q(), -1))]).unwrap();
        assert!(validate_dg_category(&c).passed());
        let (u, t, m) = hom_bimodule("H", &c, &[0, 1], &[1, 0]).unwrap();
        let r = validate_dg_bimodule_all(&u, &t, &m);
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn dropped_interchange_sign_is_caught() {
        let (u, t, good) = crate::presets::koszul_bimodule(q(), true);
        assert!(validate_dg_bimodule_all(&u, &t, &good).passed());
        let (u, t, bad) = crate::presets::koszul_bimodule(q(), false);
        let r = validate_bimodule(&u, &t, &bad);
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["interchange"]);
    }

    #[test]
    fn g_of_unit_data() {
        let k = unit_category(q());
        let m = trivial_bimodule("M", &k, &k, 0).unwrap();
        let b = module_over_unit(&k, DgModule::unit(q(), 0));
        let g = g_on_objects(&k, &k, &m, &b).unwrap();
        assert_eq!(g.module.value(0).dims(), &Dims::concentrated(0, 1));
        assert!(validate_dg_functor(&k, &g.module).passed());
        // identity acts as the identity
        let id = g.module.act(0, 0, 0, k.identity(0));
        assert_eq!(id, GradedMap::identity(q(), g.module.value(0).dims()));
        let zero = g_on_objects(&k, &k, &m, &crate::functor::DgFunctor::zero("0", &k)).unwrap();
        assert!(zero.module.is_zero());
    }

    #[test]
    fn g_is_a_dg_functor_on_an_odd_example() {
        let y = graded_k(q(), &[0, 1]);
        let c = full_subcategory("D", q(), &[("A".into(), y), ("B".into(), DgModule::interval(q(), -1))]).unwrap();
        let (u, t, m) = hom_bimodule("H", &c, &[0, 1], &[0]).unwrap();
        let b = representable_module(&u, 0);
        let b2 = representable_module(&u, 1);
        let gb = g_on_objects(&u, &t, &m, &b).unwrap();
        let gb2 = g_on_objects(&u, &t, &m, &b2).unwrap();
        assert!(validate_dg_functor(&t, &gb.module).passed());
        assert!(validate_dg_functor(&t, &gb2.module).passed());
        for n in -1..=1 {
            let s = dgnat_space(&u, &b, &b2, n);
            for k in 0..s.dim() {
                let eps = s.basis_element(k);
                let ge = g_on_morphisms(&gb, &gb2, &eps).unwrap();
                assert_eq!(ge.degree, n);
                assert!(naturality_tally(&t, &gb.module, &gb2.module, &ge).ok());
                let dge = dgnat_differential(&gb.module, &gb2.module, &ge);
                let gde = g_on_morphisms(&gb, &gb2, &dgnat_differential(&b, &b2, &eps)).unwrap();
                assert_eq!(dge, gde);
            }
        }
    }
}

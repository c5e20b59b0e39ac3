//! Finite presentations of dg-categories: validation, opposite, tensor product.

use std::collections::BTreeMap;

use crate::dg_kmod::{tensor_complex_with_layout, unit_vector, DgModule, TensorLayout};
use crate::error::{structural, Error, Result};
use crate::linalg::{compose_graded, Dims, Field, GradedMap, Matrix, Scalar};
use crate::report::{Report, Tally};

/// Every `(degree, index)` basis position of a graded space, in order.
pub fn basis_of(dims: &Dims) -> Vec<(i64, usize)> {
    dims.iter().flat_map(|(n, d)| (0..d).map(move |k| (n, k))).collect()
}

pub(crate) fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Composition {
    layout: TensorLayout,
    map: GradedMap,
}

/// A dg-category with finitely many objects and finite-dimensional Hom complexes.
///
/// Composition `hom(Y,Z) ⊗ hom(X,Y) → hom(X,Z)` is a degree-0 map on the
/// tensor complex, so checking the Leibniz rule means checking that it is a
/// chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgCategory {
    pub name: String,
    field: Field,
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), DgModule>,
    identities: Vec<Vec<Scalar>>,
    composition: BTreeMap<(usize, usize, usize), Composition>,
}

impl DgCategory {
    /// All Hom complexes zero, all compositions zero, identities unset (zero).
    pub fn new(name: impl Into<String>, field: Field, objects: Vec<String>) -> Result<Self> {
        let mut seen = objects.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != objects.len() {
            return Err(structural("duplicate object names"));
        }
        let n = objects.len();
        let mut c = DgCategory {
            name: name.into(),
            field,
            objects,
            homs: BTreeMap::new(),
            identities: vec![Vec::new(); n],
            composition: BTreeMap::new(),
        };
        for x in 0..n {
            for y in 0..n {
                c.homs.insert((x, y), DgModule::zero(field));
            }
        }
        c.rebuild_all();
        Ok(c)
    }

    fn rebuild_all(&mut self) {
        let n = self.objects.len();
        for x in 0..n {
            self.identities[x] = vec![self.field.zero(); self.homs[&(x, x)].dims().get(0)];
            for y in 0..n {
                for z in 0..n {
                    self.reset_composition(x, y, z);
                }
            }
        }
    }

    fn reset_composition(&mut self, x: usize, y: usize, z: usize) {
        let layout = TensorLayout::new(self.homs[&(y, z)].dims(), self.homs[&(x, y)].dims());
        let map = GradedMap::zero(self.field, 0, layout.dims(), self.homs[&(x, z)].dims());
        self.composition.insert((x, y, z), Composition { layout, map });
    }

    /// Replaces `hom(x, y)`; resets identities and compositions that involve it.
    pub fn set_hom(&mut self, x: usize, y: usize, m: DgModule) -> Result<()> {
        if m.field() != self.field {
            return Err(structural("hom complex over a different field"));
        }
        self.homs.insert((x, y), m);
        let n = self.objects.len();
        if x == y {
            self.identities[x] = vec![self.field.zero(); self.homs[&(x, x)].dims().get(0)];
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if [(a, b), (b, c), (a, c)].contains(&(x, y)) {
                        self.reset_composition(a, b, c);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn set_identity(&mut self, x: usize, coords: Vec<Scalar>) -> Result<()> {
        if coords.len() != self.hom(x, x).dims().get(0) {
            return Err(structural(format!(
                "identity of `{}` has {} coordinates, hom^0 has dimension {}",
                self.objects[x],
                coords.len(),
                self.hom(x, x).dims().get(0)
            )));
        }
        self.identities[x] = coords;
        Ok(())
    }

    /// Sets `g ∘ f` for basis elements `g ∈ hom(y,z)^{gd}`, `f ∈ hom(x,y)^{fd}`.
    pub fn set_composite(
        &mut self,
        (x, y, z): (usize, usize, usize),
        (gd, gi): (i64, usize),
        (fd, fi): (i64, usize),
        value: Vec<Scalar>,
    ) -> Result<()> {
        let gdim = self.hom(y, z).dims().get(gd);
        let fdim = self.hom(x, y).dims().get(fd);
        if gi >= gdim || fi >= fdim {
            return Err(structural(format!(
                "composition entry refers to basis element outside hom spaces ({gd},{gi}) / ({fd},{fi})"
            )));
        }
        let n = gd + fd;
        if value.len() != self.hom(x, z).dims().get(n) {
            return Err(structural(format!(
                "composite of degree {n} has {} coordinates, expected {}",
                value.len(),
                self.hom(x, z).dims().get(n)
            )));
        }
        let comp = self.composition.get_mut(&(x, y, z)).expect("all triples present");
        let idx = comp.layout.index(n, gd, gi, fi);
        let mut block = comp.map.block(n);
        for (r, v) in value.into_iter().enumerate() {
            block.set(r, idx, v);
        }
        comp.map.set_block(n, block)
    }

    /// Installs a whole composition map for one triple.
    pub fn set_composition_map(&mut self, (x, y, z): (usize, usize, usize), map: GradedMap) -> Result<()> {
        let comp = self.composition.get_mut(&(x, y, z)).expect("all triples present");
        if map.degree() != 0 || map.source() != comp.layout.dims() || map.target() != self.homs[&(x, z)].dims() {
            return Err(structural("composition map has the wrong shape"));
        }
        comp.map = map;
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownName { kind: "object", name: name.to_string() })
    }

    pub fn hom(&self, x: usize, y: usize) -> &DgModule {
        &self.homs[&(x, y)]
    }

    pub fn identity(&self, x: usize) -> &[Scalar] {
        &self.identities[x]
    }

    pub fn composition_map(&self, x: usize, y: usize, z: usize) -> &GradedMap {
        &self.composition[&(x, y, z)].map
    }

    pub fn composition_layout(&self, x: usize, y: usize, z: usize) -> &TensorLayout {
        &self.composition[&(x, y, z)].layout
    }

    /// `g ∘ f` for homogeneous `g ∈ hom(y,z)^{gd}` and `f ∈ hom(x,y)^{fd}`.
    pub fn compose(&self, (x, y, z): (usize, usize, usize), gd: i64, g: &[Scalar], fd: i64, f: &[Scalar]) -> Vec<Scalar> {
        let comp = &self.composition[&(x, y, z)];
        let n = gd + fd;
        let out_dim = self.hom(x, z).dims().get(n);
        let mut out = vec![self.field.zero(); out_dim];
        let Some(block) = comp.map.block_ref(n) else {
            return out;
        };
        for (a, ga) in g.iter().enumerate() {
            if ga.is_zero() {
                continue;
            }
            for (b, fb) in f.iter().enumerate() {
                if fb.is_zero() {
                    continue;
                }
                let coef = ga * fb;
                let col = comp.layout.index(n, gd, a, b);
                for (r, o) in out.iter_mut().enumerate() {
                    let e = block.get(r, col);
                    if !e.is_zero() {
                        *o += &coef * e;
                    }
                }
            }
        }
        out
    }

    /// Composite of two basis elements.
    pub fn compose_basis(&self, (x, y, z): (usize, usize, usize), (gd, a): (i64, usize), (fd, b): (i64, usize)) -> Vec<Scalar> {
        let comp = &self.composition[&(x, y, z)];
        let n = gd + fd;
        comp.map.apply_basis(n, comp.layout.index(n, gd, a, b))
    }

    /// Differential of a homogeneous element of `hom(x, y)`.
    pub fn d(&self, x: usize, y: usize, deg: i64, v: &[Scalar]) -> Vec<Scalar> {
        self.hom(x, y).d.apply(deg, v).expect("vector matches hom dimension")
    }

    /// Lowest and highest degree of any nonzero Hom space.
    pub fn window(&self) -> Option<(i64, i64)> {
        let ws: Vec<(i64, i64)> = self.homs.values().filter_map(|m| m.dims().window()).collect();
        Some((ws.iter().map(|w| w.0).min()?, ws.iter().map(|w| w.1).max()?))
    }
}

/// Full subcategory on the listed objects, in the listed order.
pub fn restrict_objects(c: &DgCategory, name: &str, objects: &[usize]) -> Result<DgCategory> {
    let names = objects.iter().map(|&i| c.objects[i].clone()).collect();
    let mut r = DgCategory::new(name, c.field, names)?;
    for (x, &ox) in objects.iter().enumerate() {
        for (y, &oy) in objects.iter().enumerate() {
            r.set_hom(x, y, c.hom(ox, oy).clone())?;
        }
    }
    for (x, &ox) in objects.iter().enumerate() {
        r.set_identity(x, c.identity(ox).to_vec())?;
        for (y, &oy) in objects.iter().enumerate() {
            for (z, &oz) in objects.iter().enumerate() {
                r.set_composition_map((x, y, z), c.composition_map(ox, oy, oz).clone())?;
            }
        }
    }
    Ok(r)
}

/// Checks every axiom on homogeneous basis tuples; all checks run even after failures.
///
/// Order: `d_squared`, `unit_laws`, `identity_closed`, `leibniz`, `associativity`.
pub fn validate_dg_category(c: &DgCategory) -> Report {
    let mut report = Report::new("validate");
    let subject = format!("category {}", c.name);
    let n = c.len();
    let field = c.field;
    if field.signs_collapse() {
        report.warn("characteristic 2: every sign (−1)^k equals 1, sign identities hold vacuously");
    }

    let mut t = Tally::new();
    for x in 0..n {
        for y in 0..n {
            let m = c.hom(x, y);
            if m.is_zero() {
                continue;
            }
            let inner = m.d_squared_tally();
            let name = format!("hom({}, {})", c.objects[x], c.objects[y]);
            t.record(inner.ok(), || name.clone() + ": d∘d ≠ 0");
        }
    }
    report.push(&subject, "d_squared", t);

    let mut t = Tally::new();
    for x in 0..n {
        for y in 0..n {
            for (deg, k) in basis_of(c.hom(x, y).dims()) {
                let f = unit_vector(field, c.hom(x, y).dims().get(deg), k);
                let left = c.compose((x, y, y), 0, c.identity(y), deg, &f);
                t.record(left == f, || {
                    format!("1_{} ∘ f = {} for basis f = e[{deg}][{k}] of hom({}, {})", c.objects[y], fmt_vec(&left), c.objects[x], c.objects[y])
                });
                let right = c.compose((x, x, y), deg, &f, 0, c.identity(x));
                t.record(right == f, || {
                    format!("f ∘ 1_{} = {} for basis f = e[{deg}][{k}] of hom({}, {})", c.objects[x], fmt_vec(&right), c.objects[x], c.objects[y])
                });
            }
        }
    }
    report.push(&subject, "unit_laws", t);

    let mut t = Tally::new();
    for x in 0..n {
        let d = c.d(x, x, 0, c.identity(x));
        t.record(d.iter().all(Scalar::is_zero), || format!("d(1_{}) = {}", c.objects[x], fmt_vec(&d)));
    }
    report.push(&subject, "identity_closed", t);

    let mut t = Tally::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                leibniz_on_triple(c, (x, y, z), &mut t);
            }
        }
    }
    report.push(&subject, "leibniz", t);

    let mut t = Tally::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    associativity_on_quadruple(c, (x, y, z, w), &mut t);
                }
            }
        }
    }
    report.push(&subject, "associativity", t);
    report
}

// Composition commutes with the tensor differential, one tensor basis vector at a time.
fn leibniz_on_triple(c: &DgCategory, (x, y, z): (usize, usize, usize), t: &mut Tally) {
    let (g_mod, f_mod) = (c.hom(y, z), c.hom(x, y));
    if g_mod.is_zero() || f_mod.is_zero() {
        return;
    }
    let (tensor, layout) = tensor_complex_with_layout(g_mod, f_mod);
    let comp = c.composition_map(x, y, z);
    let lhs = compose_graded(comp, &tensor.d).expect("composable");
    let rhs = compose_graded(&c.hom(x, z).d, comp).expect("composable");
    for (deg, dim) in tensor.dims().iter() {
        let (l, r) = (lhs.block(deg), rhs.block(deg));
        for idx in 0..dim {
            let (p, a, b) = layout.locate(deg, idx);
            let (lc, rc) = (l.column(idx), r.column(idx));
            t.record(lc == rc, || {
                format!(
                    "g = e[{p}][{a}] of hom({}, {}), f = e[{}][{b}] of hom({}, {}): d(g∘f) = {}, d(g)∘f + (−1)^|g| g∘d(f) = {}",
                    c.objects[y], c.objects[z], deg - p, c.objects[x], c.objects[y], fmt_vec(&rc), fmt_vec(&lc)
                )
            });
        }
    }
}

fn associativity_on_quadruple(c: &DgCategory, (x, y, z, w): (usize, usize, usize, usize), t: &mut Tally) {
    let (hm, gm, fm) = (c.hom(z, w), c.hom(y, z), c.hom(x, y));
    if hm.is_zero() || gm.is_zero() || fm.is_zero() {
        return;
    }
    let fb = basis_of(fm.dims());
    for h in basis_of(hm.dims()) {
        for g in basis_of(gm.dims()) {
            let hg = c.compose_basis((y, z, w), h, g);
            let hgd = h.0 + g.0;
            for &f in &fb {
                let fv = unit_vector(c.field, fm.dims().get(f.0), f.1);
                let left = c.compose((x, y, w), hgd, &hg, f.0, &fv);
                let gf = c.compose_basis((x, y, z), g, f);
                let hv = unit_vector(c.field, hm.dims().get(h.0), h.1);
                let right = c.compose((x, z, w), h.0, &hv, g.0 + f.0, &gf);
                t.record(left == right, || {
                    format!(
                        "h = e[{}][{}]: {}→{}, g = e[{}][{}]: {}→{}, f = e[{}][{}]: {}→{}: (h∘g)∘f = {}, h∘(g∘f) = {}",
                        h.0, h.1, c.objects[z], c.objects[w], g.0, g.1, c.objects[y], c.objects[z], f.0, f.1, c.objects[x], c.objects[y],
                        fmt_vec(&left), fmt_vec(&right)
                    )
                });
            }
        }
    }
}

/// The Leibniz rule evaluated from its closed formula rather than via the
/// tensor differential; used to cross-check [`validate_dg_category`].
pub fn leibniz_by_formula(c: &DgCategory) -> Tally {
    let mut t = Tally::new();
    let n = c.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for g in basis_of(c.hom(y, z).dims()) {
                    for f in basis_of(c.hom(x, y).dims()) {
                        let gv = unit_vector(c.field, c.hom(y, z).dims().get(g.0), g.1);
                        let fv = unit_vector(c.field, c.hom(x, y).dims().get(f.0), f.1);
                        let gf = c.compose_basis((x, y, z), g, f);
                        let lhs = c.d(x, z, g.0 + f.0, &gf);
                        let dg = c.d(y, z, g.0, &gv);
                        let df = c.d(x, y, f.0, &fv);
                        let mut rhs = c.compose((x, y, z), g.0 + 1, &dg, f.0, &fv);
                        let sign = c.field.sign(g.0);
                        for (r, s) in rhs.iter_mut().zip(c.compose((x, y, z), g.0, &gv, f.0 + 1, &df)) {
                            *r += &sign * &s;
                        }
                        t.record(lhs == rhs, || format!("({x},{y},{z}) g={g:?} f={f:?}"));
                    }
                }
            }
        }
    }
    t
}

/// `C^op`: `hom^op(A, B) = hom(B, A)` and `β^op ∘ α^op = (−1)^{|α||β|} (α ∘ β)^op`.
pub fn opposite_category(c: &DgCategory) -> DgCategory {
    let n = c.len();
    let mut op = DgCategory::new(format!("{}^op", c.name), c.field, c.objects.clone()).expect("names already distinct");
    if let Some(base) = c.name.strip_suffix("^op") {
        op.name = base.to_string();
    }
    for x in 0..n {
        for y in 0..n {
            op.set_hom(x, y, c.hom(y, x).clone()).expect("same field");
        }
    }
    for x in 0..n {
        op.set_identity(x, c.identity(x).to_vec()).expect("same shape");
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // op composite at (x, y, z): β ∈ hom(z, y), α ∈ hom(y, x)
                let map = {
                    let layout = op.composition_layout(x, y, z).clone();
                    let mut blocks = BTreeMap::new();
                    for (deg, p, a, b, idx) in layout.basis() {
                        let q = deg - p;
                        let mut v = c.compose_basis((z, y, x), (q, b), (p, a));
                        if (p * q).rem_euclid(2) != 0 {
                            v.iter_mut().for_each(|s| *s = -&*s);
                        }
                        let block = blocks
                            .entry(deg)
                            .or_insert_with(|| Matrix::zeros(c.field, c.hom(z, x).dims().get(deg), layout.dims().get(deg)));
                        for (r, s) in v.into_iter().enumerate() {
                            block.set(r, idx, s);
                        }
                    }
                    GradedMap::from_blocks(c.field, 0, layout.dims(), c.hom(z, x).dims(), blocks).expect("shapes")
                };
                op.set_composition_map((x, y, z), map).expect("shapes");
            }
        }
    }
    op
}

/// `A ⊗ B`: objects are pairs, homs are tensor complexes, and
/// `(α₂ ⊗ β₂) ∘ (α₁ ⊗ β₁) = (−1)^{|β₂||α₁|} (α₂α₁) ⊗ (β₂β₁)`.
///
/// The pair `(X, Y)` gets index `x · |B| + y` and name `X⊗Y`.
pub fn tensor_category(a: &DgCategory, b: &DgCategory) -> Result<DgCategory> {
    if a.field != b.field {
        return Err(structural("tensor of categories over different fields"));
    }
    let field = a.field;
    let nb = b.len();
    let names = a.objects.iter().flat_map(|x| b.objects.iter().map(move |y| format!("{x}⊗{y}"))).collect();
    let mut c = DgCategory::new(format!("{}⊗{}", a.name, b.name), field, names)?;
    let pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|x| (0..nb).map(move |y| (x, y))).collect();
    let idx = |(x, y): (usize, usize)| x * nb + y;
    let mut layouts = BTreeMap::new();
    for &s in &pairs {
        for &t in &pairs {
            let (m, layout) = tensor_complex_with_layout(a.hom(s.0, t.0), b.hom(s.1, t.1));
            c.set_hom(idx(s), idx(t), m)?;
            layouts.insert((idx(s), idx(t)), layout);
        }
    }
    for &s in &pairs {
        let layout = &layouts[&(idx(s), idx(s))];
        let mut id = vec![field.zero(); c.hom(idx(s), idx(s)).dims().get(0)];
        for (i, ia) in a.identity(s.0).iter().enumerate() {
            for (j, jb) in b.identity(s.1).iter().enumerate() {
                if !ia.is_zero() && !jb.is_zero() {
                    id[layout.index(0, 0, i, j)] = ia * jb;
                }
            }
        }
        c.set_identity(idx(s), id)?;
    }
    for &s in &pairs {
        for &m in &pairs {
            for &t in &pairs {
                let (l1, l2, l12) = (&layouts[&(idx(s), idx(m))], &layouts[&(idx(m), idx(t))], &layouts[&(idx(s), idx(t))]);
                let outer = c.composition_layout(idx(s), idx(m), idx(t)).clone();
                let target = c.hom(idx(s), idx(t)).dims().clone();
                let mut blocks: BTreeMap<i64, Matrix> = BTreeMap::new();
                // g = α₂ ⊗ β₂ ∈ hom(m, t), f = α₁ ⊗ β₁ ∈ hom(s, m)
                for (deg, gd, g, f, col) in outer.basis() {
                    let fd = deg - gd;
                    let (p2, a2, b2) = l2.locate(gd, g);
                    let (p1, a1, b1) = l1.locate(fd, f);
                    let (q2, q1) = (gd - p2, fd - p1);
                    let alpha = a.compose_basis((s.0, m.0, t.0), (p2, a2), (p1, a1));
                    if alpha.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let beta = b.compose_basis((s.1, m.1, t.1), (q2, b2), (q1, b1));
                    if beta.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let sign = field.sign(q2 * p1);
                    let block = blocks.entry(deg).or_insert_with(|| Matrix::zeros(field, target.get(deg), outer.dims().get(deg)));
                    for (i, x) in alpha.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in beta.iter().enumerate() {
                            if !y.is_zero() {
                                block.add_to(l12.index(deg, p2 + p1, i, j), col, &(&sign * &(x * y)));
                            }
                        }
                    }
                }
                let map = GradedMap::from_blocks(field, 0, outer.dims(), &target, blocks)?;
                c.set_composition_map((idx(s), idx(m), idx(t)), map)?;
            }
        }
    }
    Ok(c)
}

/// The one-object category with endomorphisms `K` in degree 0.
pub fn unit_category(field: Field) -> DgCategory {
    let mut c = DgCategory::new("K", field, vec!["*".into()]).expect("one object");
    c.set_hom(0, 0, DgModule::unit(field, 0)).expect("field");
    c.set_identity(0, vec![field.one()]).expect("shape");
    c.set_composite((0, 0, 0), (0, 0), (0, 0), vec![field.one()]).expect("shape");
    c
}

/// Full dg subcategory of `DgMod(K)` on the given complexes: homs are Hom
/// complexes, composition is composition of graded maps.
pub fn full_subcategory(name: &str, field: Field, objects: &[(String, DgModule)]) -> Result<DgCategory> {
    use crate::dg_kmod::hom_complex_with_layout;
    let n = objects.len();
    let mut c = DgCategory::new(name, field, objects.iter().map(|o| o.0.clone()).collect())?;
    let mut layouts = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let (h, l) = hom_complex_with_layout(&objects[x].1, &objects[y].1);
            c.set_hom(x, y, h)?;
            layouts.insert((x, y), l);
        }
    }
    for x in 0..n {
        let id = GradedMap::identity(field, objects[x].1.dims());
        c.set_identity(x, layouts[&(x, x)].vectorize(&id))?;
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let outer = c.composition_layout(x, y, z).clone();
                let target = c.hom(x, z).dims().clone();
                let mut blocks: BTreeMap<i64, Matrix> = BTreeMap::new();
                for (deg, gd, g, f, col) in outer.basis() {
                    let gm = layouts[&(y, z)].basis_map(field, gd, g);
                    let fm = layouts[&(x, y)].basis_map(field, deg - gd, f);
                    let v = layouts[&(x, z)].vectorize(&compose_graded(&gm, &fm)?);
                    let block = blocks.entry(deg).or_insert_with(|| Matrix::zeros(field, target.get(deg), outer.dims().get(deg)));
                    for (r, s) in v.into_iter().enumerate() {
                        if !s.is_zero() {
                            block.set(r, col, s);
                        }
                    }
                }
                c.set_composition_map((x, y, z), GradedMap::from_blocks(field, 0, outer.dims(), &target, blocks)?)?;
            }
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg_kmod::DgModule;
    use crate::presets::exterior_algebra;

    fn q() -> Field {
        Field::Rationals
    }

    fn failures(r: &Report) -> Vec<String> {
        r.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
    }

    #[test]
    fn unit_category_passes() {
        let r = validate_dg_category(&unit_category(q()));
        assert!(r.passed(), "{:?}", r);
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn nonclosed_identity_fails_identity_check() {
        // End = K·1 ⊕ K·x with d(1) = x.
        let mut c = exterior_algebra(q(), "E", 1);
        let mut m = c.hom(0, 0).clone();
        m.d.set_block(0, Matrix::identity(q(), 1)).unwrap();
        let comps: Vec<_> = [(0, 0), (1, 0)].iter().map(|&g| (g, c.compose_basis((0, 0, 0), g, (0, 0)))).collect();
        c.set_hom(0, 0, m).unwrap();
        c.set_identity(0, vec![q().one()]).unwrap();
        for (g, v) in comps {
            c.set_composite((0, 0, 0), g, (0, 0), v).unwrap();
        }
        c.set_composite((0, 0, 0), (0, 0), (1, 0), vec![q().one()]).unwrap();
        let r = validate_dg_category(&c);
        assert_eq!(r.first_failure().unwrap().name, "identity_closed");
    }

    #[test]
    fn exterior_algebra_passes() {
        for field in [q(), Field::prime(5).unwrap()] {
            let c = exterior_algebra(field, "E", 1);
            let r = validate_dg_category(&c);
            assert!(r.passed(), "{}", r.to_json());
            // x ∘ x lands in degree 2, which is zero.
            assert!(c.compose_basis((0, 0, 0), (1, 0), (1, 0)).is_empty());
        }
    }

    #[test]
    fn opposite_sign_on_odd_pair() {
        let c = exterior_algebra(q(), "E", 1);
        let op = opposite_category(&c);
        assert!(validate_dg_category(&op).passed());
        // x^op ∘ 1^op = (1 ∘ x)^op, degree 0 sign
        assert_eq!(op.compose_basis((0, 0, 0), (1, 0), (0, 0)), vec![q().one()]);
        assert_eq!(opposite_category(&op), c);
    }

    #[test]
    fn opposite_sign_with_two_odd_generators() {
        // Full subcategory on K[0] ⊕ K[1]-type complexes has odd maps whose
        // composite is nonzero, so the sign is visible.
        let a = crate::presets::graded_k(q(), &[0, 1]);
        let c = full_subcategory("D", q(), &[("A".into(), a)]).unwrap();
        let op = opposite_category(&c);
        assert!(validate_dg_category(&c).passed());
        assert!(validate_dg_category(&op).passed());
        let l = c.hom(0, 0).dims();
        assert_eq!(l.get(1), 1);
        assert_eq!(l.get(-1), 1);
        let up = (1, 0);
        let down = (-1, 0);
        let direct = c.compose_basis((0, 0, 0), up, down);
        let opposite = op.compose_basis((0, 0, 0), down, up);
        assert!(!direct.iter().all(Scalar::is_zero));
        let negated: Vec<Scalar> = direct.iter().map(|s| -s).collect();
        assert_eq!(opposite, negated);
        assert_eq!(opposite_category(&op), c);
    }

    #[test]
    fn tensor_sign_and_units() {
        let e = exterior_algebra(q(), "E", 1);
        let t = tensor_category(&e, &e).unwrap();
        assert!(validate_dg_category(&t).passed());
        // hom = E ⊗ E, degree 1 basis: (1⊗x), (x⊗1); degree 2: x⊗x.
        let h = t.hom(0, 0).dims();
        assert_eq!((h.get(0), h.get(1), h.get(2)), (1, 2, 1));
        let layout = TensorLayout::new(e.hom(0, 0).dims(), e.hom(0, 0).dims());
        let one_x = layout.index(1, 0, 0, 0);
        let x_one = layout.index(1, 1, 0, 0);
        let xx = layout.index(2, 1, 0, 0);
        // (1⊗x) ∘ (x⊗1) = (−1)^{|x||x|} (1x) ⊗ (x1) = −x⊗x
        let v = t.compose_basis((0, 0, 0), (1, one_x), (1, x_one));
        assert_eq!(v[xx], q().from_i64(-1));
        // (x⊗1) ∘ (1⊗x) = + x⊗x
        let v = t.compose_basis((0, 0, 0), (1, x_one), (1, one_x));
        assert_eq!(v[xx], q().one());
    }

    #[test]
    fn unit_tensor() {
        let e = exterior_algebra(q(), "E", 1);
        let k = unit_category(q());
        let t = tensor_category(&k, &e).unwrap();
        assert_eq!(t.hom(0, 0), e.hom(0, 0));
        assert_eq!(t.identity(0), e.identity(0));
        assert_eq!(t.composition_map(0, 0, 0), e.composition_map(0, 0, 0));
    }

    #[test]
    fn chain_map_check_matches_closed_formula() {
        let e = exterior_algebra(q(), "E", 1);
        assert!(leibniz_by_formula(&e).ok());
        let mut bad = e.clone();
        let m = {
            let mut m = bad.hom(0, 0).clone();
            m.d.set_block(0, Matrix::identity(q(), 1)).unwrap();
            m
        };
        let saved: Vec<_> = [((0, 0), (0, 0)), ((0, 0), (1, 0)), ((1, 0), (0, 0))]
            .iter()
            .map(|&(g, f)| (g, f, bad.compose_basis((0, 0, 0), g, f)))
            .collect();
        bad.set_hom(0, 0, m).unwrap();
        bad.set_identity(0, vec![q().one()]).unwrap();
        for (g, f, v) in saved {
            bad.set_composite((0, 0, 0), g, f, v).unwrap();
        }
        let r = validate_dg_category(&bad);
        let chain = r.find("category E", "leibniz").unwrap().passed;
        assert_eq!(chain, leibniz_by_formula(&bad).ok());
        assert!(!chain);
        assert_eq!(failures(&r), vec!["identity_closed", "leibniz"]);
    }

    #[test]
    fn duplicate_objects_rejected() {
        assert!(DgCategory::new("C", q(), vec!["a".into(), "a".into()]).is_err());
        let mut c = unit_category(q());
        assert!(c.set_identity(0, vec![]).is_err());
        assert!(c.set_composite((0, 0, 0), (0, 0), (0, 0), vec![]).is_err());
        assert!(c.set_hom(0, 0, DgModule::zero(Field::prime(3).unwrap())).is_err());
    }
}

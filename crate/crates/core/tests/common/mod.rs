//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use dg_triangular::category::{basis_of, opposite_category, tensor_category, DgCategory};
use dg_triangular::dg_kmod::{hom_complex_with_layout, tensor_complex_with_layout, unit_vector, DgModule, HomLayout, TensorLayout};
use dg_triangular::fixtures::shipped;
use dg_triangular::format::{parse, Document};
use dg_triangular::functor::{dgnat_space, yoneda_module, DgFunctor};
use dg_triangular::linalg::{compose_graded, Field, Matrix, Scalar};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// The shipped positive fixtures, parsed from disk.
pub fn shipped_documents() -> Vec<(String, Document)> {
    shipped(Field::Rationals)
        .expect("builders")
        .into_iter()
        .map(|(stem, _)| {
            let text = std::fs::read_to_string(fixture_dir().join(format!("{stem}.json"))).expect("fixture file");
            (stem.to_string(), parse(&text).expect("shipped fixture parses"))
        })
        .collect()
}

/// `Ok(tuples examined)` or the first violation.
pub type Outcome = Result<usize, String>;

fn sign(field: Field, e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        field.one()
    } else {
        -field.one()
    }
}

fn scaled(s: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| s * x).collect()
}

/// `β ∘_op α = (−1)^{|α||β|} α ∘ β` on every basis pair.
pub fn opposite_signs(c: &DgCategory) -> Outcome {
    let op = opposite_category(c);
    let field = c.field();
    let n = c.len();
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for (p, a) in basis_of(c.hom(y, x).dims()) {
                    for (q, b) in basis_of(c.hom(z, y).dims()) {
                        let alpha = unit_vector(field, c.hom(y, x).dims().get(p), a);
                        let beta = unit_vector(field, c.hom(z, y).dims().get(q), b);
                        let lhs = op.compose((x, y, z), q, &beta, p, &alpha);
                        let rhs = scaled(&sign(field, p * q), &c.compose((z, y, x), p, &alpha, q, &beta));
                        if lhs != rhs {
                            return Err(format!("{}: op sign fails at ({x},{y},{z}) α=({p},{a}) β=({q},{b})", c.name));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

fn outer(layout: &TensorLayout, n: i64, left: &[(i64, Vec<Scalar>)], right_deg: i64, right: &[Scalar], field: Field) -> Vec<Scalar> {
    let mut v = vec![field.zero(); layout.dims().get(n)];
    for (p, l) in left {
        debug_assert_eq!(p + right_deg, n);
        for (a, x) in l.iter().enumerate() {
            for (b, y) in right.iter().enumerate() {
                v[layout.index(n, *p, a, b)] = &v[layout.index(n, *p, a, b)] + &(x * y);
            }
        }
    }
    v
}

/// `(α₂ ⊗ β₂) ∘ (α₁ ⊗ β₁) = (−1)^{|β₂||α₁|} (α₂ α₁) ⊗ (β₂ β₁)` on every basis tuple.
pub fn tensor_signs(a: &DgCategory, b: &DgCategory) -> Outcome {
    let t = tensor_category(a, b).map_err(|e| e.to_string())?;
    let field = a.field();
    let nb = b.len();
    let idx = |x: usize, y: usize| x * nb + y;
    let lay = |s: (usize, usize), r: (usize, usize)| TensorLayout::new(a.hom(s.0, r.0).dims(), b.hom(s.1, r.1).dims());
    let pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|x| (0..nb).map(move |y| (x, y))).collect();
    let mut count = 0;
    for &s in &pairs {
        for &m in &pairs {
            for &r in &pairs {
                let (l1, l2, l12) = (lay(s, m), lay(m, r), lay(s, r));
                for (p1, i1) in basis_of(a.hom(s.0, m.0).dims()) {
                    for (q1, j1) in basis_of(b.hom(s.1, m.1).dims()) {
                        for (p2, i2) in basis_of(a.hom(m.0, r.0).dims()) {
                            for (q2, j2) in basis_of(b.hom(m.1, r.1).dims()) {
                                let e = |dims: &dg_triangular::linalg::Dims, d: i64, i: usize| unit_vector(field, dims.get(d), i);
                                let f = outer(&l1, p1 + q1, &[(p1, e(a.hom(s.0, m.0).dims(), p1, i1))], q1, &e(b.hom(s.1, m.1).dims(), q1, j1), field);
                                let g = outer(&l2, p2 + q2, &[(p2, e(a.hom(m.0, r.0).dims(), p2, i2))], q2, &e(b.hom(m.1, r.1).dims(), q2, j2), field);
                                let lhs = t.compose((idx(s.0, s.1), idx(m.0, m.1), idx(r.0, r.1)), p2 + q2, &g, p1 + q1, &f);
                                let alpha = a.compose_basis((s.0, m.0, r.0), (p2, i2), (p1, i1));
                                let beta = b.compose_basis((s.1, m.1, r.1), (q2, j2), (q1, j1));
                                let n = p1 + q1 + p2 + q2;
                                let rhs = scaled(&sign(field, q2 * p1), &outer(&l12, n, &[(p1 + p2, alpha)], q1 + q2, &beta, field));
                                if lhs != rhs {
                                    return Err(format!("{}⊗{}: tensor sign fails", a.name, b.name));
                                }
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// `d(α) = d_N α − (−1)^{|α|} α d_M` on every basis map.
pub fn hom_differential_rule(m: &DgModule, n: &DgModule) -> Outcome {
    let field = m.field();
    let (h, layout) = hom_complex_with_layout(m, n);
    let mut count = 0;
    for (deg, k) in basis_of(h.dims()) {
        let alpha = layout.basis_map(field, deg, k);
        let expected = compose_graded(&n.d, &alpha)
            .unwrap()
            .sub(&compose_graded(&alpha, &m.d).unwrap().scale(&sign(field, deg)))
            .unwrap();
        let got = h.d.apply(deg, &unit_vector(field, h.dims().get(deg), k)).unwrap();
        if got != layout.vectorize(&expected) {
            return Err(format!("Hom differential fails at basis ({deg}, {k})"));
        }
        count += 1;
    }
    Ok(count)
}

/// `d(m ⊗ n) = dm ⊗ n + (−1)^{|m|} m ⊗ dn` on every basis tensor.
pub fn tensor_differential_rule(m: &DgModule, n: &DgModule) -> Outcome {
    let field = m.field();
    let (t, layout) = tensor_complex_with_layout(m, n);
    let mut count = 0;
    for (p, a) in basis_of(m.dims()) {
        for (q, b) in basis_of(n.dims()) {
            let mv = unit_vector(field, m.dims().get(p), a);
            let nv = unit_vector(field, n.dims().get(q), b);
            let x = outer(&layout, p + q, &[(p, mv.clone())], q, &nv, field);
            let got = t.d.apply(p + q, &x).unwrap();
            let dm = m.d.apply(p, &mv).unwrap();
            let dn = n.d.apply(q, &nv).unwrap();
            let first = outer(&layout, p + q + 1, &[(p + 1, dm)], q, &nv, field);
            let second = scaled(&sign(field, p), &outer(&layout, p + q + 1, &[(p, mv)], q + 1, &dn, field));
            let expected: Vec<Scalar> = first.iter().zip(&second).map(|(x, y)| x + y).collect();
            if got != expected {
                return Err(format!("tensor differential fails at ({p},{a}) ⊗ ({q},{b})"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `Hom(−, A)(f)(j) = (−1)^{|f||j|} j ∘ f` for every basis `f`, `j`.
pub fn contravariant_hom_sign(c: &DgCategory) -> Outcome {
    let field = c.field();
    let mut count = 0;
    for a in 0..c.len() {
        let (_, y) = yoneda_module(c, a);
        for x in 0..c.len() {
            for z in 0..c.len() {
                // f ∈ hom_C(z, x) = hom_op(x, z), j ∈ hom(x, a)
                for (fd, fi) in basis_of(c.hom(z, x).dims()) {
                    let map = y.act_basis(x, z, (fd, fi));
                    for (jd, ji) in basis_of(c.hom(x, a).dims()) {
                        let j = unit_vector(field, c.hom(x, a).dims().get(jd), ji);
                        let f = unit_vector(field, c.hom(z, x).dims().get(fd), fi);
                        let expected = scaled(&sign(field, fd * jd), &c.compose((z, x, a), jd, &j, fd, &f));
                        if map.apply(jd, &j).unwrap() != expected {
                            return Err(format!("{}: Hom(−, {a}) sign fails", c.name));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Every basis element `η` of `DgNat^n(F, G)` satisfies
/// `G(f) η_X = (−1)^{n|f|} η_Y F(f)` for every basis morphism `f`.
pub fn naturality_sign(c: &DgCategory, f: &DgFunctor, g: &DgFunctor) -> Outcome {
    let field = c.field();
    let mut count = 0;
    let window = dg_triangular::functor::dgnat_window(f, g);
    let Some((lo, hi)) = window else { return Ok(0) };
    for n in lo..=hi {
        let space = dgnat_space(c, f, g, n);
        for k in 0..space.dim() {
            let eta = space.basis_element(k);
            for x in 0..c.len() {
                for y in 0..c.len() {
                    for b in basis_of(c.hom(x, y).dims()) {
                        let lhs = compose_graded(&g.act_basis(x, y, b), &eta.components[x]).unwrap();
                        let rhs = compose_graded(&eta.components[y], &f.act_basis(x, y, b)).unwrap().scale(&sign(field, n * b.0));
                        if lhs != rhs {
                            return Err(format!("naturality sign fails in degree {n}"));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// `dim Hom_U(N, B)^n` for one-object `U`, by brute force: the kernel of the
/// commutator constraints on all of `Hom_K(N, B)^n`, one row per entry.
pub fn one_object_hom_oracle(u: &DgCategory, n: &DgFunctor, b: &DgFunctor) -> std::collections::BTreeMap<i64, usize> {
    let field = u.field();
    let layout = HomLayout::new(n.value(0).dims(), b.value(0).dims());
    let mut out = std::collections::BTreeMap::new();
    for (deg, dim) in layout.dims().iter() {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for ub in basis_of(u.hom(0, 0).dims()) {
            let bu = b.act_basis(0, 0, ub);
            let nu = n.act_basis(0, 0, ub);
            let s = sign(field, ub.0 * deg);
            let cols: Vec<Vec<Scalar>> = (0..dim)
                .map(|k| {
                    let alpha = layout.basis_map(field, deg, k);
                    let d = compose_graded(&bu, &alpha).unwrap().sub(&compose_graded(&alpha, &nu).unwrap().scale(&s)).unwrap();
                    layout.vectorize(&d)
                })
                .collect();
            let m = Matrix::from_columns(field, layout.dims().get(deg + ub.0), &cols);
            rows.extend((0..m.rows()).map(|r| m.row(r).to_vec()));
        }
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(field, rows).unwrap().rank() };
        if dim - rank > 0 {
            out.insert(deg, dim - rank);
        }
    }
    out
}

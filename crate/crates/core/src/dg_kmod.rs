//! Dg K-modules, the Hom complex and the tensor complex.

use std::collections::BTreeMap;

use crate::error::{structural, Result};
use crate::linalg::{compose_graded, Dims, Field, GradedMap, GradedModule, Matrix, Scalar};
use crate::report::Tally;

/// A finite-dimensional cochain complex: graded carrier plus a degree +1 differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    pub carrier: GradedModule,
    pub d: GradedMap,
}

impl DgModule {
    pub fn new(carrier: GradedModule, d: GradedMap) -> Result<Self> {
        if d.degree() != 1 || d.source() != &carrier.dims || d.target() != &carrier.dims {
            return Err(structural("differential must be a degree +1 endomorphism of the carrier"));
        }
        Ok(DgModule { carrier, d })
    }

    pub fn zero(field: Field) -> Self {
        Self::with_zero_differential(field, Dims::new())
    }

    pub fn with_zero_differential(field: Field, dims: Dims) -> Self {
        let d = GradedMap::zero(field, 1, &dims, &dims);
        DgModule { carrier: GradedModule::new(dims), d }
    }

    /// The ground field placed in degree `degree`.
    pub fn unit(field: Field, degree: i64) -> Self {
        Self::with_zero_differential(field, Dims::concentrated(degree, 1))
    }

    /// `K` in degrees `lo` and `lo + 1` with the identity between them.
    pub fn interval(field: Field, lo: i64) -> Self {
        let mut dims = Dims::new();
        dims.set(lo, 1);
        dims.set(lo + 1, 1);
        let mut d = GradedMap::zero(field, 1, &dims, &dims);
        d.set_block(lo, Matrix::identity(field, 1)).expect("1x1 block");
        DgModule { carrier: GradedModule::new(dims), d }
    }

    pub fn field(&self) -> Field {
        self.d.field()
    }

    pub fn dims(&self) -> &Dims {
        &self.carrier.dims
    }

    pub fn is_zero(&self) -> bool {
        self.carrier.dims.is_zero()
    }

    /// Checks `d ∘ d = 0` degree by degree.
    pub fn d_squared_tally(&self) -> Tally {
        let mut t = Tally::new();
        let dd = compose_graded(&self.d, &self.d).expect("endomorphisms compose");
        for n in self.dims().degrees() {
            let ok = dd.block_ref(n).is_none();
            t.record(ok, || format!("d∘d ≠ 0 on degree {n}: {}", dd.block(n)));
        }
        t
    }

    pub fn is_complex(&self) -> bool {
        self.d_squared_tally().ok()
    }

    /// Conjugates the differential by a degreewise change of basis `p`
    /// (new coordinates `p · old`).
    pub fn change_basis(&self, p: &GradedMap, p_inv: &GradedMap) -> Result<DgModule> {
        let d = compose_graded(p, &compose_graded(&self.d, p_inv)?)?;
        DgModule::new(GradedModule::new(self.dims().clone()), d)
    }
}

/// Block layout of `M_1 ⊕ … ⊕ M_k`: summand `s` occupies indices
/// `offset(s, n) .. offset(s, n) + dim M_s^n` of degree `n`.
#[derive(Clone, Debug)]
pub struct SumLayout {
    parts: Vec<Dims>,
    total: Dims,
}

impl SumLayout {
    pub fn new(parts: Vec<Dims>) -> Self {
        let total = parts.iter().fold(Dims::new(), |acc, d| acc.direct_sum(d));
        SumLayout { parts, total }
    }

    pub fn total(&self) -> &Dims {
        &self.total
    }

    pub fn offset(&self, s: usize, n: i64) -> usize {
        self.parts[..s].iter().map(|d| d.get(n)).sum()
    }

    /// Inclusion of summand `s`.
    pub fn inclusion(&self, field: Field, s: usize) -> GradedMap {
        let mut m = GradedMap::zero(field, 0, &self.parts[s], &self.total);
        for (n, d) in self.parts[s].iter() {
            let mut b = Matrix::zeros(field, self.total.get(n), d);
            let off = self.offset(s, n);
            for k in 0..d {
                b.set(off + k, k, field.one());
            }
            m.set_block(n, b).expect("inclusion shape");
        }
        m
    }

    /// Projection onto summand `s`.
    pub fn projection(&self, field: Field, s: usize) -> GradedMap {
        let mut m = GradedMap::zero(field, 0, &self.total, &self.parts[s]);
        for (n, d) in self.parts[s].iter() {
            let mut b = Matrix::zeros(field, d, self.total.get(n));
            let off = self.offset(s, n);
            for k in 0..d {
                b.set(k, off + k, field.one());
            }
            m.set_block(n, b).expect("projection shape");
        }
        m
    }
}

/// Block-diagonal map `⊕ f_s` between sums with the given layouts.
pub fn block_diagonal(field: Field, degree: i64, src: &SumLayout, tgt: &SumLayout, parts: &[GradedMap]) -> Result<GradedMap> {
    let mut out = GradedMap::zero(field, degree, src.total(), tgt.total());
    for (s, f) in parts.iter().enumerate() {
        if f.degree() != degree {
            return Err(structural("block_diagonal: summand of the wrong degree"));
        }
        let piece = compose_graded(&tgt.inclusion(field, s), &compose_graded(f, &src.projection(field, s))?)?;
        out = out.add(&piece)?;
    }
    Ok(out)
}

pub fn direct_sum(parts: &[&DgModule], field: Field) -> Result<DgModule> {
    let layout = SumLayout::new(parts.iter().map(|m| m.dims().clone()).collect());
    let ds: Vec<GradedMap> = parts.iter().map(|m| m.d.clone()).collect();
    let d = block_diagonal(field, 1, &layout, &layout, &ds)?;
    DgModule::new(GradedModule::new(layout.total().clone()), d)
}

/// Coordinates on `Hom^n(M, N)`: the elementary map sending basis vector
/// `c` of `M^i` to basis vector `r` of `N^{i+n}` has index
/// `offset(n, i) + c · dim N^{i+n} + r`; source degrees increase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLayout {
    source: Dims,
    target: Dims,
    dims: Dims,
}

impl HomLayout {
    pub fn new(source: &Dims, target: &Dims) -> Self {
        let mut dims = Dims::new();
        for (i, a) in source.iter() {
            for (j, b) in target.iter() {
                dims.add(j - i, a * b);
            }
        }
        HomLayout { source: source.clone(), target: target.clone(), dims }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn source(&self) -> &Dims {
        &self.source
    }

    pub fn target(&self) -> &Dims {
        &self.target
    }

    /// Degree window `[lo_N − hi_M, hi_N − lo_M]`, if both sides are nonzero.
    pub fn window(&self) -> Option<(i64, i64)> {
        let (lm, hm) = self.source.window()?;
        let (ln, hn) = self.target.window()?;
        Some((ln - hm, hn - lm))
    }

    pub fn offset(&self, n: i64, i: i64) -> usize {
        self.source
            .iter()
            .take_while(|&(k, _)| k < i)
            .map(|(k, a)| a * self.target.get(k + n))
            .sum()
    }

    pub fn index(&self, n: i64, i: i64, c: usize, r: usize) -> usize {
        self.offset(n, i) + c * self.target.get(i + n) + r
    }

    /// Inverse of [`HomLayout::index`]: `(source degree, column, row)`.
    pub fn locate(&self, n: i64, idx: usize) -> (i64, usize, usize) {
        let mut rest = idx;
        for (i, a) in self.source.iter() {
            let b = self.target.get(i + n);
            if rest < a * b {
                return (i, rest / b, rest % b);
            }
            rest -= a * b;
        }
        panic!("index {idx} out of range for Hom^{n}")
    }

    pub fn vectorize(&self, f: &GradedMap) -> Vec<Scalar> {
        let n = f.degree();
        let field = f.field();
        let mut v = vec![field.zero(); self.dims.get(n)];
        for (i, b) in f.blocks() {
            let off = self.offset(n, i);
            let rows = b.rows();
            for c in 0..b.cols() {
                for r in 0..rows {
                    let x = b.get(r, c);
                    if !x.is_zero() {
                        v[off + c * rows + r] = x.clone();
                    }
                }
            }
        }
        v
    }

    pub fn devectorize(&self, field: Field, n: i64, v: &[Scalar]) -> GradedMap {
        debug_assert_eq!(v.len(), self.dims.get(n));
        let mut f = GradedMap::zero(field, n, &self.source, &self.target);
        let mut off = 0;
        for (i, a) in self.source.iter() {
            let b = self.target.get(i + n);
            if b == 0 {
                continue;
            }
            let mut m = Matrix::zeros(field, b, a);
            for c in 0..a {
                for r in 0..b {
                    let x = &v[off + c * b + r];
                    if !x.is_zero() {
                        m.set(r, c, x.clone());
                    }
                }
            }
            off += a * b;
            f.set_block(i, m).expect("hom layout shape");
        }
        f
    }

    pub fn basis_map(&self, field: Field, n: i64, idx: usize) -> GradedMap {
        let mut v = vec![field.zero(); self.dims.get(n)];
        v[idx] = field.one();
        self.devectorize(field, n, &v)
    }
}

/// `d(α) = d_N ∘ α − (−1)^{|α|} α ∘ d_M` for an arbitrary homogeneous map.
pub fn hom_differential(m: &DgModule, n: &DgModule, alpha: &GradedMap) -> Result<GradedMap> {
    let left = compose_graded(&n.d, alpha)?;
    let right = compose_graded(alpha, &m.d)?;
    let sign = m.field().sign(alpha.degree());
    left.sub(&right.scale(&sign))
}

/// The Hom complex together with its coordinate layout.
pub fn hom_complex_with_layout(m: &DgModule, n: &DgModule) -> (DgModule, HomLayout) {
    let field = m.field();
    let layout = HomLayout::new(m.dims(), n.dims());
    let dims = layout.dims().clone();
    let mut d = GradedMap::zero(field, 1, &dims, &dims);
    for (deg, dim) in dims.iter() {
        let tgt = dims.get(deg + 1);
        if tgt == 0 {
            continue;
        }
        let sign = field.sign(deg);
        let mut block = Matrix::zeros(field, tgt, dim);
        for idx in 0..dim {
            let (i, c, r) = layout.locate(deg, idx);
            // d_N ∘ E_{rc}: column c of degree i, rows from d_N on N^{i+deg}
            if let Some(dn) = n.d.block_ref(i + deg) {
                for r2 in 0..dn.rows() {
                    let x = dn.get(r2, r);
                    if !x.is_zero() {
                        block.add_to(layout.index(deg + 1, i, c, r2), idx, x);
                    }
                }
            }
            // −(−1)^deg E_{rc} ∘ d_M: source degree i − 1
            if let Some(dm) = m.d.block_ref(i - 1) {
                for c2 in 0..dm.cols() {
                    let x = dm.get(c, c2);
                    if !x.is_zero() {
                        let v = -(&sign * x);
                        block.add_to(layout.index(deg + 1, i - 1, c2, r), idx, &v);
                    }
                }
            }
        }
        d.set_block(deg, block).expect("hom differential shape");
    }
    (DgModule { carrier: GradedModule::new(dims), d }, layout)
}

pub fn hom_complex(m: &DgModule, n: &DgModule) -> DgModule {
    hom_complex_with_layout(m, n).0
}

/// True iff `f` has degree 0 and commutes with the differentials.
pub fn is_closed_degree_zero(m: &DgModule, n: &DgModule, f: &GradedMap) -> bool {
    f.degree() == 0
        && f.source() == m.dims()
        && f.target() == n.dims()
        && hom_differential(m, n, f).map(|g| g.is_zero()).unwrap_or(false)
}

/// Coordinates on `(M ⊗ N)^n`: pure tensors `e^p_a ⊗ f^{n−p}_b` ordered by
/// `(p, a, b)` lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLayout {
    left: Dims,
    right: Dims,
    dims: Dims,
}

impl TensorLayout {
    pub fn new(left: &Dims, right: &Dims) -> Self {
        let mut dims = Dims::new();
        for (p, a) in left.iter() {
            for (q, b) in right.iter() {
                dims.add(p + q, a * b);
            }
        }
        TensorLayout { left: left.clone(), right: right.clone(), dims }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn offset(&self, n: i64, p: i64) -> usize {
        self.left
            .iter()
            .take_while(|&(k, _)| k < p)
            .map(|(k, a)| a * self.right.get(n - k))
            .sum()
    }

    pub fn index(&self, n: i64, p: i64, a: usize, b: usize) -> usize {
        self.offset(n, p) + a * self.right.get(n - p) + b
    }

    /// Inverse of [`TensorLayout::index`]: `(p, a, b)`.
    pub fn locate(&self, n: i64, idx: usize) -> (i64, usize, usize) {
        let mut rest = idx;
        for (p, a) in self.left.iter() {
            let b = self.right.get(n - p);
            if rest < a * b {
                return (p, rest / b, rest % b);
            }
            rest -= a * b;
        }
        panic!("index {idx} out of range for tensor degree {n}")
    }

    /// All `(total degree, p, a, b, index)` tuples in basis order.
    pub fn basis(&self) -> Vec<(i64, i64, usize, usize, usize)> {
        let mut out = Vec::new();
        for (n, dim) in self.dims.iter() {
            for idx in 0..dim {
                let (p, a, b) = self.locate(n, idx);
                out.push((n, p, a, b, idx));
            }
        }
        out
    }
}

/// `d(m ⊗ n) = d(m) ⊗ n + (−1)^{|m|} m ⊗ d(n)`.
pub fn tensor_complex_with_layout(m: &DgModule, n: &DgModule) -> (DgModule, TensorLayout) {
    let field = m.field();
    let layout = TensorLayout::new(m.dims(), n.dims());
    let dims = layout.dims().clone();
    let mut blocks: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (deg, p, a, b, idx) in layout.basis() {
        let tgt = dims.get(deg + 1);
        if tgt == 0 {
            continue;
        }
        let block = blocks.entry(deg).or_insert_with(|| Matrix::zeros(field, tgt, dims.get(deg)));
        if let Some(dm) = m.d.block_ref(p) {
            for a2 in 0..dm.rows() {
                let x = dm.get(a2, a);
                if !x.is_zero() {
                    block.add_to(layout.index(deg + 1, p + 1, a2, b), idx, x);
                }
            }
        }
        if let Some(dn) = n.d.block_ref(deg - p) {
            let sign = field.sign(p);
            for b2 in 0..dn.rows() {
                let x = dn.get(b2, b);
                if !x.is_zero() {
                    block.add_to(layout.index(deg + 1, p, a, b2), idx, &(&sign * x));
                }
            }
        }
    }
    let d = GradedMap::from_blocks(field, 1, &dims, &dims, blocks).expect("tensor differential shape");
    (DgModule { carrier: GradedModule::new(dims), d }, layout)
}

pub fn tensor_complex(m: &DgModule, n: &DgModule) -> DgModule {
    tensor_complex_with_layout(m, n).0
}

/// Unit vector of length `len` with a one at `idx`.
pub fn unit_vector(field: Field, len: usize, idx: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    v[idx] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn hom_from_contractible_interval() {
        // M = K in degrees 0, 1 with d = id; N = K in degree 0.
        let m = DgModule::interval(q(), 0);
        let n = DgModule::unit(q(), 0);
        let (h, layout) = hom_complex_with_layout(&m, &n);
        assert_eq!(h.dims().get(0), 1);
        assert_eq!(h.dims().get(-1), 1);
        assert_eq!(h.dims().total(), 2);
        // α: M^1 → N^0 of degree −1; d(α) = α ∘ d_M (sign −(−1)^{−1} = +1).
        let alpha = layout.basis_map(q(), -1, 0);
        let direct = compose_graded(&alpha, &m.d).unwrap();
        assert!(!direct.is_zero());
        let via_formula = hom_differential(&m, &n, &alpha).unwrap();
        assert_eq!(via_formula, direct);
        let coded = h.d.apply(-1, &[q().one()]).unwrap();
        assert_eq!(layout.devectorize(q(), 0, &coded), direct);
        assert!(h.is_complex());
    }

    #[test]
    fn hom_of_unit_is_unit() {
        let k = DgModule::unit(q(), 0);
        let h = hom_complex(&k, &k);
        assert_eq!(h.dims(), &Dims::concentrated(0, 1));
        assert!(h.d.is_zero());
    }

    #[test]
    fn identity_is_closed() {
        let m = DgModule::interval(q(), -1);
        let id = GradedMap::identity(q(), m.dims());
        assert!(is_closed_degree_zero(&m, &m, &id));
        assert!(hom_differential(&m, &m, &id).unwrap().is_zero());
        let zero = GradedMap::zero(q(), 0, m.dims(), m.dims());
        assert!(is_closed_degree_zero(&m, &m, &zero));
    }

    #[test]
    fn degree_zero_maps_from_an_interval() {
        let n = DgModule::unit(q(), 0);
        // [0, 1]: f(e0) = 1 and f ∘ d lands in N^1 = 0, so f is a chain map.
        let m = DgModule::interval(q(), 0);
        let f = HomLayout::new(m.dims(), n.dims()).basis_map(q(), 0, 0);
        assert!(is_closed_degree_zero(&m, &n, &f));
        // [−1, 0]: f(d e_{−1}) = f(e0) = 1 ≠ 0.
        let m = DgModule::interval(q(), -1);
        let f = HomLayout::new(m.dims(), n.dims()).basis_map(q(), 0, 0);
        assert!(!is_closed_degree_zero(&m, &n, &f));
    }

    #[test]
    fn tensor_sign_on_degree_one() {
        // m of degree 1 in an interval [1, 2]; n of degree 0 in an interval [0, 1].
        let m = DgModule::interval(q(), 1);
        let n = DgModule::interval(q(), 0);
        let (t, layout) = tensor_complex_with_layout(&m, &n);
        let idx = layout.index(1, 1, 0, 0);
        let image = t.d.apply_basis(1, idx);
        // d(m ⊗ n) = dm ⊗ n − m ⊗ dn
        assert_eq!(image[layout.index(2, 2, 0, 0)], q().one());
        assert_eq!(image[layout.index(2, 1, 0, 0)], q().from_i64(-1));
        assert!(t.is_complex());
    }

    #[test]
    fn tensor_with_unit() {
        let k = DgModule::unit(q(), 0);
        let n = DgModule::interval(q(), -1);
        let t = tensor_complex(&k, &n);
        assert_eq!(t, n);
        let z = DgModule::with_zero_differential(q(), Dims::concentrated(1, 2));
        assert!(tensor_complex(&z, &z).d.is_zero());
    }
}

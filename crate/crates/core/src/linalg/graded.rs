use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::linalg::matrix::Matrix;
use crate::linalg::scalar::{Field, Scalar};

/// Degree-indexed dimensions. Only nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dims(BTreeMap<i64, usize>);

impl Dims {
    pub fn new() -> Self {
        Dims(BTreeMap::new())
    }

    pub fn concentrated(degree: i64, dim: usize) -> Self {
        let mut d = Dims::new();
        d.set(degree, dim);
        d
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i64, dim: usize) {
        if dim == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, dim);
        }
    }

    pub fn add(&mut self, degree: i64, dim: usize) {
        let d = self.get(degree) + dim;
        self.set(degree, d);
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Smallest and largest degree with nonzero dimension.
    pub fn window(&self) -> Option<(i64, i64)> {
        Some((*self.0.keys().next()?, *self.0.keys().next_back()?))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn direct_sum(&self, other: &Dims) -> Dims {
        let mut out = self.clone();
        for (n, d) in other.iter() {
            out.add(n, d);
        }
        out
    }

    pub fn shift(&self, by: i64) -> Dims {
        Dims(self.0.iter().map(|(&k, &v)| (k + by, v)).collect())
    }

    pub fn as_map(&self) -> &BTreeMap<i64, usize> {
        &self.0
    }
}

impl FromIterator<(i64, usize)> for Dims {
    fn from_iter<I: IntoIterator<Item = (i64, usize)>>(iter: I) -> Self {
        let mut d = Dims::new();
        for (k, v) in iter {
            d.add(k, v);
        }
        d
    }
}

/// A graded vector space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedModule {
    pub dims: Dims,
}

impl GradedModule {
    pub fn new(dims: Dims) -> Self {
        GradedModule { dims }
    }
}

/// A homogeneous linear map of a fixed degree between graded spaces.
///
/// `blocks[i]` is the matrix from degree `i` of the source to degree
/// `i + degree` of the target. Absent blocks are zero, and zero blocks are
/// never stored, so derived equality is equality of maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    field: Field,
    degree: i64,
    source: Dims,
    target: Dims,
    blocks: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    pub fn zero(field: Field, degree: i64, source: &Dims, target: &Dims) -> Self {
        GradedMap { field, degree, source: source.clone(), target: target.clone(), blocks: BTreeMap::new() }
    }

    pub fn identity(field: Field, dims: &Dims) -> Self {
        let mut m = Self::zero(field, 0, dims, dims);
        for (n, d) in dims.iter() {
            m.blocks.insert(n, Matrix::identity(field, d));
        }
        m
    }

    pub fn from_blocks(
        field: Field,
        degree: i64,
        source: &Dims,
        target: &Dims,
        blocks: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let mut m = Self::zero(field, degree, source, target);
        for (i, b) in blocks {
            m.set_block(i, b)?;
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn source(&self) -> &Dims {
        &self.source
    }

    pub fn target(&self) -> &Dims {
        &self.target
    }

    pub fn block_shape(&self, i: i64) -> (usize, usize) {
        (self.target.get(i + self.degree), self.source.get(i))
    }

    pub fn set_block(&mut self, i: i64, block: Matrix) -> Result<()> {
        let want = self.block_shape(i);
        if block.shape() != want {
            return Err(structural(format!(
                "block at degree {i} has shape {:?}, expected {:?}",
                block.shape(),
                want
            )));
        }
        if block.is_zero() {
            self.blocks.remove(&i);
        } else {
            self.blocks.insert(i, block);
        }
        Ok(())
    }

    pub fn block_ref(&self, i: i64) -> Option<&Matrix> {
        self.blocks.get(&i)
    }

    pub fn block(&self, i: i64) -> Matrix {
        match self.blocks.get(&i) {
            Some(b) => b.clone(),
            None => {
                let (r, c) = self.block_shape(i);
                Matrix::zeros(self.field, r, c)
            }
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = (i64, &Matrix)> {
        self.blocks.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Image of a vector of source degree `i`; lands in degree `i + degree`.
    pub fn apply(&self, i: i64, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.source.get(i) {
            return Err(structural(format!(
                "vector of length {} in degree {i}, expected {}",
                v.len(),
                self.source.get(i)
            )));
        }
        match self.blocks.get(&i) {
            Some(b) => b.mul_vec(v),
            None => Ok(vec![self.field.zero(); self.target.get(i + self.degree)]),
        }
    }

    /// Image of the `idx`-th basis vector of degree `i`.
    pub fn apply_basis(&self, i: i64, idx: usize) -> Vec<Scalar> {
        match self.blocks.get(&i) {
            Some(b) => b.column(idx),
            None => vec![self.field.zero(); self.target.get(i + self.degree)],
        }
    }

    fn check_parallel(&self, rhs: &GradedMap) -> Result<()> {
        if self.degree != rhs.degree || self.source != rhs.source || self.target != rhs.target {
            return Err(structural("graded maps are not parallel"));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &GradedMap) -> Result<GradedMap> {
        self.check_parallel(rhs)?;
        let mut out = self.clone();
        for (&i, b) in &rhs.blocks {
            let sum = out.block(i).add(b)?;
            out.set_block(i, sum)?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &GradedMap) -> Result<GradedMap> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> GradedMap {
        let mut out = self.clone();
        for b in out.blocks.values_mut() {
            *b = b.neg();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> GradedMap {
        if s.is_zero() {
            return Self::zero(self.field, self.degree, &self.source, &self.target);
        }
        let mut out = self.clone();
        for b in out.blocks.values_mut() {
            *b = b.scale(s);
        }
        out
    }

    /// Multiplies the block at source degree `i` by `sign(i)`.
    pub fn twist(&self, sign: impl Fn(i64) -> i64) -> GradedMap {
        let mut out = self.clone();
        for (&i, b) in out.blocks.iter_mut() {
            if sign(i).rem_euclid(2) != 0 {
                *b = b.neg();
            }
        }
        out
    }
}

/// `g ∘ f`; degrees add.
pub fn compose_graded(g: &GradedMap, f: &GradedMap) -> Result<GradedMap> {
    if f.target != g.source {
        return Err(structural("compose_graded: target of f differs from source of g"));
    }
    if f.field != g.field {
        return Err(structural("compose_graded: field mismatch"));
    }
    let mut out = GradedMap::zero(f.field, f.degree + g.degree, &f.source, &g.target);
    for (&i, fb) in &f.blocks {
        if let Some(gb) = g.blocks.get(&(i + f.degree)) {
            out.set_block(i, gb.mul(fb)?)?;
        }
    }
    Ok(out)
}

/// Degreewise kernel of `f` together with its inclusion into the source.
pub fn kernel(f: &GradedMap) -> (GradedModule, GradedMap) {
    let mut dims = Dims::new();
    let mut columns = BTreeMap::new();
    for (n, d) in f.source.iter() {
        let basis = match f.blocks.get(&n) {
            Some(b) => b.kernel_basis().0,
            None => (0..d)
                .map(|k| {
                    let mut v = vec![f.field.zero(); d];
                    v[k] = f.field.one();
                    v
                })
                .collect(),
        };
        dims.set(n, basis.len());
        columns.insert(n, Matrix::from_columns(f.field, d, &basis));
    }
    let inclusion = GradedMap::from_blocks(f.field, 0, &dims, &f.source, columns).expect("kernel shapes agree");
    (GradedModule::new(dims), inclusion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn scalar_map(v: i64) -> GradedMap {
        let d = Dims::concentrated(0, 1);
        let m = Matrix::from_rows(q(), vec![vec![q().from_i64(v)]]).unwrap();
        GradedMap::from_blocks(q(), 0, &d, &d, BTreeMap::from([(0, m)])).unwrap()
    }

    #[test]
    fn scalar_product() {
        assert_eq!(compose_graded(&scalar_map(2), &scalar_map(3)).unwrap(), scalar_map(6));
    }

    #[test]
    fn identity_and_zero() {
        let f = scalar_map(5);
        let d = Dims::concentrated(0, 1);
        assert_eq!(compose_graded(&GradedMap::identity(q(), &d), &f).unwrap(), f);
        let z = GradedMap::zero(q(), 0, &d, &d);
        assert!(compose_graded(&f, &z).unwrap().is_zero());
    }

    #[test]
    fn shape_mismatch_is_structural() {
        let f = GradedMap::zero(q(), 0, &Dims::concentrated(0, 1), &Dims::concentrated(0, 2));
        assert!(compose_graded(&f, &f).is_err());
        let mut g = GradedMap::zero(q(), 1, &Dims::concentrated(0, 1), &Dims::concentrated(1, 2));
        assert!(g.set_block(0, Matrix::zeros(q(), 1, 1)).is_err());
    }

    #[test]
    fn kernel_examples() {
        let d2 = Dims::concentrated(0, 2);
        let d1 = Dims::concentrated(0, 1);
        let sum = Matrix::from_rows(q(), vec![vec![q().one(), q().one()]]).unwrap();
        let f = GradedMap::from_blocks(q(), 0, &d2, &d1, BTreeMap::from([(0, sum)])).unwrap();
        let (k, inc) = kernel(&f);
        assert_eq!(k.dims.get(0), 1);
        assert!(compose_graded(&f, &inc).unwrap().is_zero());

        let (k, _) = kernel(&GradedMap::zero(q(), 0, &d2, &d1));
        assert_eq!(k.dims, d2);
        let (k, _) = kernel(&GradedMap::identity(q(), &d2));
        assert!(k.dims.is_zero());
    }
}

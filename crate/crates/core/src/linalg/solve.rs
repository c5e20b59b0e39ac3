use std::collections::BTreeMap;

use crate::error::{structural, Result};
use crate::linalg::scalar::{Field, Scalar};

/// A homogeneous system `A x = 0` built row by row.
///
/// Rows are reduced as they arrive, so duplicate or dependent constraints
/// cost nothing beyond the reduction itself.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    names: Vec<String>,
    // pivot column -> fully reduced row with a 1 at the pivot
    rows: BTreeMap<usize, Vec<Scalar>>,
}

impl LinearSystem {
    pub fn new(field: Field, unknowns: usize) -> Self {
        Self::with_names(field, (0..unknowns).map(|i| format!("x{i}")).collect())
    }

    pub fn with_names(field: Field, names: Vec<String>) -> Self {
        LinearSystem { field, names, rows: BTreeMap::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.names.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Adds the constraint `Σ coef · x_index = 0`. Repeated indices accumulate.
    pub fn add_sparse(&mut self, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Result<()> {
        let mut row = vec![self.field.zero(); self.names.len()];
        for (i, c) in terms {
            if i >= row.len() {
                return Err(structural(format!("constraint refers to unknown {i} of {}", row.len())));
            }
            row[i] += c;
        }
        self.add_dense(row)
    }

    /// Adds a constraint by name.
    pub fn add_named(&mut self, terms: &[(&str, Scalar)]) -> Result<()> {
        let mut idx = Vec::with_capacity(terms.len());
        for (n, c) in terms {
            let i = self
                .names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| structural(format!("undeclared unknown `{n}`")))?;
            idx.push((i, c.clone()));
        }
        self.add_sparse(idx)
    }

    pub fn add_dense(&mut self, mut row: Vec<Scalar>) -> Result<()> {
        if row.len() != self.names.len() {
            return Err(structural("constraint length differs from the number of unknowns"));
        }
        for (&p, r) in &self.rows {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return Ok(());
        };
        let inv = row[p].inv()?;
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for r in self.rows.values_mut() {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        self.rows.insert(p, row);
        Ok(())
    }

    pub fn solve(&self) -> SolutionSpace {
        let n = self.names.len();
        let free: Vec<usize> = (0..n).filter(|c| !self.rows.contains_key(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); n];
                v[f] = self.field.one();
                for (&p, r) in &self.rows {
                    if !r[f].is_zero() {
                        v[p] = -&r[f];
                    }
                }
                v
            })
            .collect();
        SolutionSpace { field: self.field, unknowns: n, free, basis }
    }

    /// Whether `v` satisfies every constraint added so far.
    pub fn satisfies(&self, v: &[Scalar]) -> bool {
        self.rows.values().all(|r| dot(r, v).is_zero())
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a.first().map_or_else(|| Field::Rationals.zero(), |x| x.field().zero());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// The solution space of a homogeneous system with a distinguished basis.
///
/// Basis vector `k` is `1` at free column `free[k]` and `0` at every other
/// free column, so the coordinates of a solution are its free entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    field: Field,
    unknowns: usize,
    free: Vec<usize>,
    basis: Vec<Vec<Scalar>>,
}

impl SolutionSpace {
    /// The whole space `K^n`.
    pub fn full(field: Field, n: usize) -> Self {
        LinearSystem::new(field, n).solve()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Linear combination of the basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.unknowns];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        v
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the space.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.unknowns {
            return None;
        }
        let coords: Vec<Scalar> = self.free.iter().map(|&f| v[f].clone()).collect();
        (self.combine(&coords) == v).then_some(coords)
    }
}

/// Basis of the solutions of the given dense homogeneous constraints.
pub fn solve_linear(field: Field, unknowns: usize, constraints: &[Vec<Scalar>]) -> Result<SolutionSpace> {
    let mut sys = LinearSystem::new(field, unknowns);
    for c in constraints {
        sys.add_dense(c.clone())?;
    }
    Ok(sys.solve())
}

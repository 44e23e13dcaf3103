use rayon::prelude::*;
use serde::Serialize;

use crate::symexpr::{simplify, Expr};

/// Index position of a tensor slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Slot {
    Co,
    Contra,
}

/// Dense multi-index array of expressions over an `n`-dimensional chart.
/// Components are stored row-major, first index slowest.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    dim: usize,
    slots: Vec<Slot>,
    comps: Vec<Expr>,
}

/// Iterator over all index tuples of a given rank.
pub fn index_tuples(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(rank as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; rank];
        for k in (0..rank).rev() {
            idx[k] = flat % dim;
            flat /= dim;
        }
        idx
    })
}

impl Tensor {
    pub fn zeros(dim: usize, slots: &[Slot]) -> Self {
        Tensor { dim, slots: slots.to_vec(), comps: vec![Expr::zero(); dim.pow(slots.len() as u32)] }
    }

    /// Build from a component function; components are simplified.
    pub fn from_fn(dim: usize, slots: &[Slot], f: impl Fn(&[usize]) -> Expr) -> Self {
        let comps = index_tuples(dim, slots.len()).map(|i| simplify(&f(&i))).collect();
        Tensor { dim, slots: slots.to_vec(), comps }
    }

    /// Parallel variant of [`Tensor::from_fn`]; the result does not depend on
    /// scheduling.
    pub fn from_fn_par(dim: usize, slots: &[Slot], f: impl Fn(&[usize]) -> Expr + Sync) -> Self {
        let idx: Vec<Vec<usize>> = index_tuples(dim, slots.len()).collect();
        let comps = idx.par_iter().map(|i| simplify(&f(i))).collect();
        Tensor { dim, slots: slots.to_vec(), comps }
    }

    pub fn covariant(dim: usize, rank: usize, f: impl Fn(&[usize]) -> Expr) -> Self {
        Self::from_fn(dim, &vec![Slot::Co; rank], f)
    }

    /// Symmetric (0,2) tensor from a square matrix.
    pub fn from_matrix(m: &[Vec<Expr>]) -> Self {
        let n = m.len();
        Self::covariant(n, 2, |i| m[i[0]][i[1]].clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.slots.len());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.comps[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Expr) {
        let f = self.flat(idx);
        self.comps[f] = v;
    }

    /// 2-index shorthand.
    pub fn at(&self, i: usize, j: usize) -> &Expr {
        self.get(&[i, j])
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Indices and values of the nonzero components.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, Expr)> {
        index_tuples(self.dim, self.rank())
            .zip(self.comps.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Tensor {
        Tensor { dim: self.dim, slots: self.slots.clone(), comps: self.comps.iter().map(|c| simplify(&f(c))).collect() }
    }

    pub fn scale(&self, s: &Expr) -> Tensor {
        self.map(|c| c.mul(s))
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.slots, other.slots, "variance mismatch");
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| simplify(&a.add(b))).collect();
        Tensor { dim: self.dim, slots: self.slots.clone(), comps }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(&Expr::int(-1)))
    }

    /// Permute slots: the result's slot `k` is this tensor's slot `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let slots: Vec<Slot> = perm.iter().map(|&p| self.slots[p]).collect();
        let mut out = Tensor::zeros(self.dim, &slots);
        for idx in index_tuples(self.dim, self.rank()) {
            let mut src = vec![0; idx.len()];
            for (k, &p) in perm.iter().enumerate() {
                src[p] = idx[k];
            }
            out.set(&idx, self.get(&src).clone());
        }
        out
    }

    /// True if a (0,2) or (2,0) tensor is symmetric.
    pub fn is_symmetric(&self) -> bool {
        self.rank() == 2
            && (0..self.dim).all(|i| (0..i).all(|j| simplify(&self.at(i, j).sub(self.at(j, i))).is_zero()))
    }

    /// Evaluate every component at a numeric point.
    pub fn eval_f64(
        &self,
        vals: &std::collections::BTreeMap<String, f64>,
    ) -> Result<Vec<f64>, crate::symexpr::ExprError> {
        self.comps.iter().map(|c| c.eval_f64(vals)).collect()
    }
}

/// Contravariant vector field components.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField(pub Vec<Expr>);

/// Covariant 1-form components.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm(pub Vec<Expr>);

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField(vec![Expr::zero(); n])
    }

    /// Coordinate basis field.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Expr::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| simplify(c).is_zero())
    }
}

impl OneForm {
    pub fn zero(n: usize) -> Self {
        OneForm(vec![Expr::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Expr::one();
        v
    }

    /// Pairing `ω(X)`.
    pub fn apply(&self, x: &VectorField) -> Expr {
        simplify(&self.0.iter().zip(&x.0).map(|(a, b)| a.mul(b)).sum())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| simplify(c).is_zero())
    }

    /// Tensor product `ω ⊗ η`.
    pub fn outer(&self, other: &OneForm) -> Tensor {
        let n = self.0.len();
        Tensor::covariant(n, 2, |i| self.0[i[0]].mul(&other.0[i[1]]))
    }
}

/// `T(X, Y)` for a (0,2) tensor.
pub fn eval2(t: &Tensor, x: &VectorField, y: &VectorField) -> Expr {
    let n = t.dim();
    let mut acc = Vec::with_capacity(n * n);
    for i in 0..n {
        if x.0[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y.0[j].is_zero() {
                continue;
            }
            acc.push(t.at(i, j).mul(&x.0[i]).mul(&y.0[j]));
        }
    }
    simplify(&acc.into_iter().sum())
}

/// Full contraction of a covariant tensor with one vector per slot.
pub fn eval_covariant(t: &Tensor, vs: &[&VectorField]) -> Expr {
    assert_eq!(vs.len(), t.rank());
    let mut acc = Vec::new();
    for idx in index_tuples(t.dim(), t.rank()) {
        let c = t.get(&idx);
        if c.is_zero() {
            continue;
        }
        let mut term = c.clone();
        let mut skip = false;
        for (k, &i) in idx.iter().enumerate() {
            let v = &vs[k].0[i];
            if v.is_zero() {
                skip = true;
                break;
            }
            term = term.mul(v);
        }
        if !skip {
            acc.push(term);
        }
    }
    simplify(&acc.into_iter().sum())
}

use nalgebra::DMatrix;

use crate::linalg::{self, Matrix};
use crate::symexpr::{is_zero, simplify, Expr};

use super::{Chart, GeometryError, OneForm, Slot, Tensor, VectorField};

/// Numeric determinant below this magnitude counts as singular at the sample point.
const SINGULAR_TOL: f64 = 1e-12;

/// A symmetric, invertible metric on a chart.
#[derive(Clone, Debug)]
pub struct Metric {
    chart: Chart,
    g: Matrix,
    inv: Matrix,
    signature: Vec<i8>,
}

impl Metric {
    /// Validate symmetry, certify invertibility at the sample point, and build
    /// the inverse, checking `g g^-1 = 1` symbolically.
    pub fn new(chart: Chart, g: Matrix) -> Result<Self, GeometryError> {
        let n = chart.dim();
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(GeometryError::Shape(format!("metric must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if !is_zero(&g[i][j].sub(&g[j][i])) {
                    return Err(GeometryError::Asymmetric(format!("g[{}][{}] != g[{}][{}]", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        let vals = chart.sample_f64();
        let num = DMatrix::from_fn(n, n, |i, j| g[i][j].eval_f64(&vals).unwrap_or(f64::NAN));
        if num.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::Singular("metric does not evaluate at the sample point".into()));
        }
        let det = num.determinant();
        if det.abs() < SINGULAR_TOL {
            return Err(GeometryError::Singular(format!("det g = {det} at the sample point")));
        }
        let eig = nalgebra::SymmetricEigen::new(num);
        let mut signature: Vec<i8> = eig.eigenvalues.iter().map(|&e| if e > 0.0 { 1 } else { -1 }).collect();
        signature.sort();
        let inv = linalg::inverse(&g).map_err(|_| GeometryError::Singular("symbolic determinant is zero".into()))?;
        if linalg::mat_mul(&g, &inv) != linalg::identity(n) {
            let prod = linalg::mat_mul(&g, &inv);
            let id = linalg::identity(n);
            for i in 0..n {
                for j in 0..n {
                    if !is_zero(&prod[i][j].sub(&id[i][j])) {
                        return Err(GeometryError::Singular("g g^-1 is not the identity".into()));
                    }
                }
            }
        }
        Ok(Metric { chart, g, inv, signature })
    }

    /// Diagonal metric shorthand.
    pub fn diagonal(chart: Chart, diag: Vec<Expr>) -> Result<Self, GeometryError> {
        let n = diag.len();
        let g = (0..n).map(|i| (0..n).map(|j| if i == j { diag[i].clone() } else { Expr::zero() }).collect()).collect();
        Self::new(chart, g)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn g(&self, i: usize, j: usize) -> &Expr {
        &self.g[i][j]
    }

    pub fn ginv(&self, i: usize, j: usize) -> &Expr {
        &self.inv[i][j]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inv
    }

    /// Eigenvalue signs at the sample point, ascending.
    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn is_riemannian(&self) -> bool {
        self.signature.iter().all(|&s| s > 0)
    }

    /// The metric as a (0,2) tensor.
    pub fn tensor(&self) -> Tensor {
        Tensor::from_matrix(&self.g)
    }

    /// The inverse metric as a (2,0) tensor.
    pub fn inverse_tensor(&self) -> Tensor {
        Tensor::from_fn(self.dim(), &[Slot::Contra, Slot::Contra], |i| self.inv[i[0]][i[1]].clone())
    }

    /// `g(X, Y)`.
    pub fn inner(&self, x: &VectorField, y: &VectorField) -> Expr {
        super::eval2(&self.tensor(), x, y)
    }

    /// Metric dual 1-form `g(·, X)`.
    pub fn flat(&self, x: &VectorField) -> OneForm {
        let n = self.dim();
        OneForm((0..n).map(|i| simplify(&(0..n).map(|j| self.g[i][j].mul(&x.0[j])).sum())).collect())
    }

    /// Metric dual vector of a 1-form.
    pub fn sharp(&self, w: &OneForm) -> VectorField {
        let n = self.dim();
        VectorField((0..n).map(|i| simplify(&(0..n).map(|j| self.inv[i][j].mul(&w.0[j])).sum())).collect())
    }

    /// Metric trace `g^{ij} A_ij` of a (0,2) tensor.
    pub fn trace(&self, a: &Tensor) -> Expr {
        let n = self.dim();
        let mut acc = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.inv[i][j].is_zero() && !a.at(i, j).is_zero() {
                    acc.push(self.inv[i][j].mul(a.at(i, j)));
                }
            }
        }
        simplify(&acc.into_iter().sum())
    }

    /// Raise the first index of a (0,2) tensor: `A^a_b = g^{ac} A_cb`.
    pub fn raise_first(&self, a: &Tensor) -> Tensor {
        let n = self.dim();
        Tensor::from_fn(n, &[Slot::Contra, Slot::Co], |i| {
            (0..n).filter(|&c| !self.inv[i[0]][c].is_zero()).map(|c| self.inv[i[0]][c].mul(a.at(c, i[1]))).sum()
        })
    }
}

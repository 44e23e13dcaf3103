//! Solve the decomposition for its scalars when the forms and tensors are given.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{CurvatureBundle, Metric, OneForm, Tensor};
use crate::linalg::{echelon, Matrix};
use crate::symexpr::{is_zero, simplify, Expr, Q};

use super::{CoQEStructure, CoqeError};

/// `a`, the ten independent `b_kl`, `c₁`, `c₂`.
pub const FIT_UNKNOWNS: usize = 13;
/// Chart points stacked in [`FitMode::Constant`].
pub const FIT_SAMPLE_POINTS: usize = 26;

const B_INDEX: [(usize, usize); 10] = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitMode {
    /// Scalars may be functions: one equation per component, solved over the
    /// field of expressions.
    Pointwise,
    /// Scalars must be constant on the chart: the component equations are
    /// stacked over sampled points with exact rational coordinates.
    Constant { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct FitResult {
    pub mode: FitMode,
    /// Particular solution with free unknowns set to zero.
    pub values: Vec<Expr>,
    /// Basis of the homogeneous solutions; empty when the fit is unique.
    pub null_space: Vec<Vec<Expr>>,
    pub rank: usize,
    system: (Matrix, Vec<Expr>),
}

impl FitResult {
    pub fn unknown_names() -> Vec<String> {
        let mut v = vec!["a".to_string()];
        v.extend(B_INDEX.iter().map(|(i, j)| format!("b{}{}", i + 1, j + 1)));
        v.push("c1".into());
        v.push("c2".into());
        v
    }

    pub fn nullity(&self) -> usize {
        self.null_space.len()
    }

    pub fn a(&self) -> &Expr {
        &self.values[0]
    }

    pub fn b(&self) -> [[Expr; 4]; 4] {
        b_matrix(&self.values)
    }

    pub fn c1(&self) -> &Expr {
        &self.values[11]
    }

    pub fn c2(&self) -> &Expr {
        &self.values[12]
    }

    /// Whether a candidate unknown vector solves the same system.
    pub fn satisfies(&self, x: &[Expr]) -> bool {
        let (a, rhs) = &self.system;
        a.iter().zip(rhs).all(|(row, r)| {
            let lhs: Expr = row.iter().zip(x).filter(|(c, _)| !c.is_zero()).map(|(c, v)| c.mul(v)).sum();
            is_zero(&lhs.sub(r))
        })
    }

    pub fn into_structure(&self, omega: [OneForm; 4], d1: Tensor, d2: Tensor) -> Result<CoQEStructure, CoqeError> {
        CoQEStructure::new(self.a().clone(), self.b(), self.c1().clone(), self.c2().clone(), omega, d1, d2)
    }
}

/// Unknown vector in fit order for an existing structure.
pub fn structure_unknowns(st: &CoQEStructure) -> Vec<Expr> {
    let mut v = vec![st.a.clone()];
    v.extend(B_INDEX.iter().map(|&(i, j)| st.b[i][j].clone()));
    v.push(st.c1.clone());
    v.push(st.c2.clone());
    v
}

fn b_matrix(values: &[Expr]) -> [[Expr; 4]; 4] {
    let mut b: [[Expr; 4]; 4] = Default::default();
    for (k, &(i, j)) in B_INDEX.iter().enumerate() {
        b[i][j] = values[1 + k].clone();
        b[j][i] = values[1 + k].clone();
    }
    b
}

fn component_system(metric: &Metric, ricci: &Tensor, omega: &[OneForm; 4], d1: &Tensor, d2: &Tensor) -> (Matrix, Vec<Expr>) {
    let n = metric.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row = vec![metric.g(i, j).clone()];
            for &(k, l) in &B_INDEX {
                let mut e = omega[k].0[i].mul(&omega[l].0[j]);
                if k != l {
                    e = e.add(&omega[l].0[i].mul(&omega[k].0[j]));
                }
                row.push(simplify(&e));
            }
            row.push(d1.at(i, j).clone());
            row.push(d2.at(i, j).clone());
            rows.push(row);
            rhs.push(ricci.at(i, j).clone());
        }
    }
    (rows, rhs)
}

fn sample_points(metric: &Metric, seed: u64) -> Vec<HashMap<crate::symexpr::Symbol, Expr>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..FIT_SAMPLE_POINTS)
        .map(|_| {
            metric
                .chart()
                .coords()
                .iter()
                .map(|c| {
                    let p: i64 = rng.gen_range(1..=6);
                    let q: i64 = rng.gen_range(1..=4);
                    (c.clone(), Expr::rational(Q::new(p.into(), q.into())))
                })
                .collect()
        })
        .collect()
}

/// Least-squares residual norm of the system at the chart's sample point.
fn numeric_residual(metric: &Metric, a: &Matrix, rhs: &[Expr]) -> Result<f64, CoqeError> {
    let vals: BTreeMap<String, f64> = metric.chart().sample_f64();
    let (m, k) = (a.len(), FIT_UNKNOWNS);
    let mut am = DMatrix::zeros(m, k);
    let mut bm = DVector::zeros(m);
    for i in 0..m {
        for j in 0..k {
            am[(i, j)] = a[i][j].eval_f64(&vals)?;
        }
        bm[i] = rhs[i].eval_f64(&vals)?;
    }
    let svd = am.clone().svd(true, true);
    let x = svd.solve(&bm, 1e-12).map_err(|_| CoqeError::NoExactFit { residual_norm: f64::NAN })?;
    Ok((am * x - bm).norm())
}

/// Fit `a, b_kl, c₁, c₂` so that `S = a g + Σ b_kl ω^k ω^l + c₁ d₁ + c₂ d₂`.
///
/// Rank deficiency is reported through [`FitResult::null_space`]; an
/// inconsistent system is [`CoqeError::NoExactFit`].
pub fn fit_decomposition(
    bundle: &CurvatureBundle,
    omega: &[OneForm; 4],
    d1: &Tensor,
    d2: &Tensor,
    mode: FitMode,
) -> Result<FitResult, CoqeError> {
    let metric = bundle.metric();
    let n = metric.dim();
    for (k, w) in omega.iter().enumerate() {
        if w.0.len() != n {
            return Err(CoqeError::Shape(format!("ω^{} has {} components, expected {n}", k + 1, w.0.len())));
        }
        if w.is_zero() {
            return Err(CoqeError::ZeroForm(k + 1));
        }
    }
    if bundle.ricci().is_zero() {
        return Err(CoqeError::RicciZero);
    }
    let (a, rhs) = component_system(metric, bundle.ricci(), omega, d1, d2);
    let (sys_a, sys_rhs) = match mode {
        FitMode::Pointwise => (a.clone(), rhs.clone()),
        FitMode::Constant { seed } => {
            let mut ra = Vec::new();
            let mut rr = Vec::new();
            for pt in sample_points(metric, seed) {
                for (row, r) in a.iter().zip(&rhs) {
                    let row: Result<Vec<Expr>, _> = row.iter().map(|e| e.subs(&pt)).collect();
                    ra.push(row?);
                    rr.push(r.subs(&pt)?);
                }
            }
            (ra, rr)
        }
    };
    let ech = echelon(&sys_a, &sys_rhs)?;
    if !ech.consistent() {
        let residual_norm = numeric_residual(metric, &a, &rhs)?;
        return Err(CoqeError::NoExactFit { residual_norm });
    }
    Ok(FitResult {
        mode,
        values: ech.particular(),
        null_space: ech.null_space(),
        rank: ech.rank(),
        system: (sys_a, sys_rhs),
    })
}

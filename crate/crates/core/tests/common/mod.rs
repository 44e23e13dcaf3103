//! Shared helpers for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use coqe::geometry::{Metric, Tensor};
use coqe::symexpr::Expr;
use rand::Rng;

/// Random expression in `x` and `y` built from every kernel, with `log` and
/// `sqrt` applied only to arguments bounded away from zero.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let x = Expr::var("x");
    let y = Expr::var("y");
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => x,
            1 => y,
            _ => Expr::frac(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => a.add(&random_expr(rng, depth - 1)),
        1 => a.sub(&random_expr(rng, depth - 1)),
        2 | 3 => a.mul(&random_expr(rng, depth - 1)),
        4 => a.powi(2).unwrap(),
        5 => a.exp(),
        6 => a.sin(),
        7 => a.cos(),
        _ => {
            let pos = Expr::int(2).add(&a.mul(&a));
            if rng.gen_bool(0.5) {
                pos.log().unwrap()
            } else {
                pos.sqrt().unwrap()
            }
        }
    }
}

pub fn xy(x: f64, y: f64) -> BTreeMap<String, f64> {
    BTreeMap::from([("x".to_string(), x), ("y".to_string(), y)])
}

/// Coordinates of `metric` bound to `coords`, on top of its sample point.
pub fn point(metric: &Metric, coords: &[f64]) -> BTreeMap<String, f64> {
    let mut p = metric.chart().sample_f64();
    for (s, v) in metric.chart().coords().iter().zip(coords) {
        p.insert(s.name().to_string(), *v);
    }
    p
}

pub fn max_abs(t: &Tensor, p: &BTreeMap<String, f64>) -> f64 {
    t.eval_f64(p).unwrap().into_iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

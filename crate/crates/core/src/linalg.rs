//! Exact linear algebra over [`Expr`] entries.

use crate::symexpr::{is_zero, simplify, Expr, ExprError};

pub type Matrix = Vec<Vec<Expr>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Expr::one() } else { Expr::zero() }).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| simplify(&(0..m).filter(|&k| !a[i][k].is_zero() && !b[k][j].is_zero()).map(|k| a[i][k].mul(&b[k][j])).sum()))
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the sparsest row.
pub fn det(a: &Matrix) -> Expr {
    let n = a.len();
    if n == 0 {
        return Expr::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    if n == 2 {
        return simplify(&a[0][0].mul(&a[1][1]).sub(&a[0][1].mul(&a[1][0])));
    }
    let row = (0..n).min_by_key(|&i| a[i].iter().filter(|e| !e.is_zero()).count()).unwrap();
    let mut acc = Expr::zero();
    for j in 0..n {
        if a[row][j].is_zero() {
            continue;
        }
        let m = minor(a, row, j);
        let term = a[row][j].mul(&det(&m));
        acc = if (row + j) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    simplify(&acc)
}

fn minor(a: &Matrix, r: usize, c: usize) -> Matrix {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, e)| e.clone()).collect())
        .collect()
}

/// Inverse via the adjugate, one connected block at a time.
pub fn inverse(a: &Matrix) -> Result<Matrix, ExprError> {
    let n = a.len();
    let mut out = vec![vec![Expr::zero(); n]; n];
    for block in blocks(a) {
        let sub: Matrix = block.iter().map(|&i| block.iter().map(|&j| a[i][j].clone()).collect()).collect();
        let d = det(&sub);
        if is_zero(&d) {
            return Err(ExprError::ZeroDivisor);
        }
        let inv_d = d.recip()?;
        let m = block.len();
        for (bi, &i) in block.iter().enumerate() {
            for (bj, &j) in block.iter().enumerate() {
                let cof = if m == 1 { Expr::one() } else { det(&minor(&sub, bj, bi)) };
                let cof = if (bi + bj) % 2 == 0 { cof } else { cof.neg() };
                out[i][j] = simplify(&cof.mul(&inv_d));
            }
        }
    }
    Ok(out)
}

/// Connected components of the nonzero pattern of a square matrix.
fn blocks(a: &Matrix) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && (!a[i][j].is_zero() || !a[j][i].is_zero()) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Reduced row echelon form of an augmented system `[A | rhs]` over the
/// expression field. Pivots are certified nonzero with the exact zero test.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Pivot column for each pivot row.
    pub pivots: Vec<usize>,
    /// Rows after elimination (the last entry of each row is the rhs).
    pub rows: Matrix,
    pub cols: usize,
}

pub fn echelon(a: &Matrix, rhs: &[Expr]) -> Result<Echelon, ExprError> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut rows: Matrix = a.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        // prefer the simplest nonzero pivot
        let pick = (r..rows.len()).filter(|&i| !is_zero(&rows[i][c])).min_by_key(|&i| rows[i][c].size());
        let Some(p) = pick else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip()?;
        rows[r] = rows[r].iter().map(|e| simplify(&e.mul(&inv))).collect();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            let pr = rows[r].clone();
            rows[i] = rows[i].iter().zip(&pr).map(|(e, p)| simplify(&e.sub(&f.mul(p)))).collect();
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Ok(Echelon { pivots, rows, cols })
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rows beyond the rank with a nonzero right-hand side.
    pub fn consistent(&self) -> bool {
        self.rows[self.rank()..].iter().all(|r| is_zero(&r[self.cols]))
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Particular solution with all free variables set to zero.
    pub fn particular(&self) -> Vec<Expr> {
        let mut x = vec![Expr::zero(); self.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = self.rows[r][self.cols].clone();
        }
        x
    }

    /// Null-space basis, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Expr>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Expr::zero(); self.cols];
                v[f] = Expr::one();
                for (r, &c) in self.pivots.iter().enumerate() {
                    v[c] = self.rows[r][f].neg();
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse;

    fn m(rows: &[&[&str]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|s| parse(s).unwrap()).collect()).collect()
    }

    #[test]
    fn inverse_of_block_metric() {
        let g = m(&[&["k^2", "0", "k^2*exp(x)"], &["0", "-k^2", "0"], &["k^2*exp(x)", "0", "k^2*exp(2*x)/2"]]);
        let inv = inverse(&g).unwrap();
        assert_eq!(mat_mul(&g, &inv), identity(3));
        assert_eq!(inv[1][1], parse("-1/k^2").unwrap());
        assert_eq!(inv[0][0], parse("-1/k^2").unwrap());
    }

    #[test]
    fn singular_matrix_rejected() {
        let g = m(&[&["x", "x"], &["1", "1"]]);
        assert!(inverse(&g).is_err());
    }

    #[test]
    fn echelon_null_space() {
        let a = m(&[&["1", "2", "3"], &["2", "4", "6"]]);
        let e = echelon(&a, &[Expr::int(1), Expr::int(2)]).unwrap();
        assert_eq!(e.rank(), 1);
        assert!(e.consistent());
        assert_eq!(e.null_space().len(), 2);
        let e = echelon(&a, &[Expr::int(1), Expr::int(3)]).unwrap();
        assert!(!e.consistent());
    }
}

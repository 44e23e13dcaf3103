use std::fmt;

use serde::Serialize;

use crate::geometry::{Metric, Tensor};
use crate::symexpr::is_zero;

use super::structure::decomposition_residual_for;
use super::{CoQEStructure, CoqeError};

/// Named quasi-Einstein families, plus the general case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassLabel {
    Einstein,
    QuasiEinstein,
    GeneralizedQE,
    MixedGeneralizedQE,
    NearlyQE,
    PseudoQE,
    PseudoGeneralizedQE,
    SuperQE,
    MixedQE,
    MixedSuperQE,
    HyperGeneralizedQE,
    ComprehensiveQE,
    NoneOfListed,
}

impl ClassLabel {
    /// Every label that corresponds to a row of the taxonomy, in table order.
    pub const ROWS: [ClassLabel; 11] = [
        ClassLabel::Einstein,
        ClassLabel::QuasiEinstein,
        ClassLabel::GeneralizedQE,
        ClassLabel::MixedGeneralizedQE,
        ClassLabel::NearlyQE,
        ClassLabel::PseudoQE,
        ClassLabel::PseudoGeneralizedQE,
        ClassLabel::SuperQE,
        ClassLabel::MixedQE,
        ClassLabel::MixedSuperQE,
        ClassLabel::HyperGeneralizedQE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::Einstein => "Einstein",
            ClassLabel::QuasiEinstein => "quasi-Einstein",
            ClassLabel::GeneralizedQE => "generalized QE",
            ClassLabel::MixedGeneralizedQE => "mixed generalized QE",
            ClassLabel::NearlyQE => "nearly QE",
            ClassLabel::PseudoQE => "pseudo QE",
            ClassLabel::PseudoGeneralizedQE => "pseudo generalized QE",
            ClassLabel::SuperQE => "super QE",
            ClassLabel::MixedQE => "mixed QE",
            ClassLabel::MixedSuperQE => "mixed super QE",
            ClassLabel::HyperGeneralizedQE => "hyper-generalized QE",
            ClassLabel::ComprehensiveQE => "comprehensive QE",
            ClassLabel::NoneOfListed => "none-of-listed",
        }
    }

    /// Required nonzero upper-triangle `b` entries (1-based) and whether `c₁`
    /// must be nonzero. Every other entry, and `c₂`, must vanish; `a` must not.
    pub fn pattern(self) -> Option<(&'static [(usize, usize)], bool)> {
        Some(match self {
            ClassLabel::Einstein => (&[], false),
            ClassLabel::QuasiEinstein => (&[(1, 1)], false),
            ClassLabel::GeneralizedQE => (&[(1, 1), (2, 2)], false),
            ClassLabel::MixedGeneralizedQE => (&[(1, 1), (2, 2), (1, 2)], false),
            ClassLabel::NearlyQE => (&[], true),
            ClassLabel::PseudoQE => (&[(1, 1)], true),
            ClassLabel::PseudoGeneralizedQE => (&[(1, 1), (2, 2)], true),
            ClassLabel::SuperQE => (&[(1, 1), (1, 2)], true),
            ClassLabel::MixedQE => (&[(1, 2)], false),
            ClassLabel::MixedSuperQE => (&[(1, 1), (2, 2), (1, 2)], true),
            ClassLabel::HyperGeneralizedQE => (&[(1, 1), (1, 2), (1, 3)], false),
            ClassLabel::ComprehensiveQE | ClassLabel::NoneOfListed => return None,
        })
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Label from the zero pattern of `(a, b, c₁, c₂)` alone. Rows are tried
/// with the most required entries first.
pub fn classify(st: &CoQEStructure) -> ClassLabel {
    let a = !is_zero(&st.a);
    let c1 = !is_zero(&st.c1);
    let c2 = !is_zero(&st.c2);
    let nz: Vec<(usize, usize)> = st.b_upper().into_iter().filter(|(_, e)| !is_zero(e)).map(|(ij, _)| ij).collect();
    if !a && !c1 && !c2 && nz.is_empty() {
        return ClassLabel::NoneOfListed;
    }
    let mut rows = ClassLabel::ROWS.to_vec();
    rows.sort_by_key(|r| {
        let (b, c) = r.pattern().unwrap();
        std::cmp::Reverse(b.len() + c as usize)
    });
    for row in rows {
        let (req, need_c1) = row.pattern().unwrap();
        let mut want: Vec<(usize, usize)> = req.to_vec();
        want.sort();
        let mut have = nz.clone();
        have.sort();
        if a && !c2 && c1 == need_c1 && want == have {
            return row;
        }
    }
    ClassLabel::ComprehensiveQE
}

/// Classify only after certifying that the structure reproduces `ricci`.
pub fn classify_verified(ricci: &Tensor, metric: &Metric, st: &CoQEStructure) -> Result<ClassLabel, CoqeError> {
    let r = decomposition_residual_for(ricci, metric, st)?;
    if !r.is_zero() {
        return Err(CoqeError::Unverified(r.nonzero().len()));
    }
    Ok(classify(st))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coqe::testing::{godel_bundle, godel_structure};
    use crate::geometry::{OneForm, Tensor};
    use crate::symexpr::Expr;

    fn synthetic(b: &[(usize, usize)], c1: bool) -> CoQEStructure {
        let mut bm: [[Expr; 4]; 4] = Default::default();
        for (k, &(i, j)) in b.iter().enumerate() {
            bm[i - 1][j - 1] = Expr::int(k as i64 + 2);
            bm[j - 1][i - 1] = Expr::int(k as i64 + 2);
        }
        let omega = [0, 1, 2, 3].map(|i| OneForm::basis(5, i));
        let d = Tensor::covariant(5, 2, |i| match (i[0], i[1]) {
            (1, 1) => Expr::one(),
            (2, 2) => Expr::int(-1),
            _ => Expr::zero(),
        });
        let c = if c1 { Expr::int(3) } else { Expr::zero() };
        CoQEStructure::new(Expr::one(), bm, c, Expr::zero(), omega, d.clone(), d).unwrap()
    }

    #[test]
    fn each_row_is_recognized() {
        for row in ClassLabel::ROWS {
            let (b, c1) = row.pattern().unwrap();
            assert_eq!(classify(&synthetic(b, c1)), row, "{row}");
        }
    }

    #[test]
    fn godel_is_comprehensive() {
        let bundle = godel_bundle();
        let st = godel_structure(&bundle);
        let label = classify_verified(bundle.ricci(), bundle.metric(), &st).unwrap();
        assert_eq!(label, ClassLabel::ComprehensiveQE);
    }

    #[test]
    fn c2_forces_comprehensive() {
        let mut st = synthetic(&[(1, 1)], false);
        st.c2 = Expr::one();
        assert_eq!(classify(&st), ClassLabel::ComprehensiveQE);
    }
}

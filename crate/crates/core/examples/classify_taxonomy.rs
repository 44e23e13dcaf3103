//! Classify one synthetic structure per quasi-Einstein family.

use coqe::coqe::{classify_verified, ClassLabel};
use coqe::harness::taxonomy_fixture;

fn main() {
    let mut labels = ClassLabel::ROWS.to_vec();
    labels.push(ClassLabel::ComprehensiveQE);
    for l in labels {
        let (g, st, ricci) = taxonomy_fixture(l).unwrap();
        let nz: Vec<String> =
            st.b_upper().into_iter().filter(|(_, e)| !e.is_zero()).map(|((i, j), _)| format!("b{i}{j}")).collect();
        let got = classify_verified(&ricci, &g, &st).unwrap();
        println!("{:<22} nonzero {:<16} c1={} c2={} -> {got}", l.name(), nz.join(","), st.c1, st.c2);
    }
}

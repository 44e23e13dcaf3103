//! The space-matter tensor and its divergence, by closed form and by direct
//! differentiation.

use coqe::geometry::CurvatureBundle;
use coqe::harness::resolve_manifest;
use coqe::relativity::{div_space_matter, div_space_matter_direct, sigma_gradient_from_div_p, space_matter};

fn main() {
    for name in ["round-sphere-4", "einstein-desitter"] {
        let m = resolve_manifest(name).unwrap();
        let b = CurvatureBundle::new(m.metric.clone());
        let consts = m.constants.clone().unwrap();
        let sigma = m.sigma.clone().unwrap();
        let closed = div_space_matter(&b, &sigma);
        let direct = div_space_matter_direct(&b, &consts, &sigma).unwrap();
        println!("{name}: div P zero {}, routes agree {}", closed.is_zero(), closed.sub(&direct).is_zero());
        if let Some((r, mat)) = &m.fluids {
            let t = coqe::relativity::stress_energy(r, mat, b.metric()).unwrap();
            let p = space_matter(&b, &t, &consts.kappa, &sigma).unwrap();
            println!("  P has {} nonzero components", p.p.nonzero().len());
        }
    }
    let g = sigma_gradient_from_div_p(&CurvatureBundle::new(resolve_manifest("godel").unwrap().metric)).unwrap();
    let ds: Vec<String> = g.dsigma.0.iter().map(|e| e.to_string()).collect();
    println!("contracting div P = 0: {} dσ + remainder = 0, so dσ = [{}]", g.coefficient, ds.join(", "));
}

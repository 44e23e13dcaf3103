//! Parse, differentiate, simplify and compare expressions.

use coqe::symexpr::{equivalent, parse, simplify, Symbol};

fn main() {
    let e = parse("k^2*exp(2*x)/2 - sin(x)^2 + tan(y)").unwrap();
    let x = Symbol::new("x");
    println!("e        = {e}");
    println!("de/dx    = {}", e.diff(&x));
    println!("d2e/dxdy = {}", e.diff(&x).diff(&Symbol::new("y")));

    let pythagoras = parse("sin(x)^2 + cos(x)^2 - 1").unwrap();
    println!("sin² + cos² - 1 simplifies to {}", simplify(&pythagoras));

    let a = parse("sqrt(8)*exp(x)^2").unwrap();
    let b = parse("2*sqrt(2)*exp(2*x)").unwrap();
    println!("{a} vs {b}: {}", equivalent(&a, &b, 42).label());
}

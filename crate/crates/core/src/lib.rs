pub mod coqe;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod relativity;
pub mod symexpr;

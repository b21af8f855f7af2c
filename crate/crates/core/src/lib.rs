pub mod models;
pub mod primefield;
pub mod matroid;
pub mod symmetry;
pub mod enumeration;
pub mod counting;
pub mod limits;
pub mod moves;
pub mod polykit;

//! Exact computation engine for the Jones polynomial and Khovanov-type
//! link homology: even, odd, reduced and deformed variants, the Lee
//! deformation with its spectral sequence and s-invariant, crossingless
//! matching algebras, and a divide-and-conquer scanning algorithm.

pub mod arcs;
pub mod bracket;
pub mod cli;
pub mod corpus;
pub mod cube;
pub mod diagram;
pub mod frobenius;
pub mod homalg;
pub mod lee;
pub mod odd;
pub mod poly;
pub mod ring;
pub mod scan;
pub mod snf;

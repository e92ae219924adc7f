pub mod catalog;
pub mod cohomology;
pub mod construct;
pub mod error;
pub mod exactmath;
pub mod exterior;
pub mod lattice;
pub mod lcs;
pub mod liealg;
pub mod parse;

pub mod error;
pub mod lattice;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod fermion;
pub mod em;
pub mod identity;
pub mod analysis;
pub mod cli;

//! Exact computation of homological invariants and certified deficiency
//! intervals for torsion-free virtually poly-Z groups.

pub mod cli;
pub mod commensurator;
pub mod defengine;
pub mod exactalg;
pub mod groups;
pub mod laurent;
pub mod quadform;

//! Alternating sign trapezoids and column strict shifted plane partitions of
//! a fixed class, with three independent routes to their joint `(P, Q, R)`
//! generating function: direct enumeration, the monotone-triangle operator
//! formula, and a binomial determinant.

pub mod cli;
pub mod cssp;
pub mod detform;
pub mod exactalg;
pub mod operatorform;
pub mod pathfam;
pub mod sttree;
pub mod trapezoid;
pub mod verify;

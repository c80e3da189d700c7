//! Exact computational algebra for symplectic reductions of polar representations.

pub mod arith;
pub mod poly;
pub mod groebner;
pub mod group;
pub mod invariants;
pub mod chevalley;
pub mod poisson;
pub mod darboux;
pub mod scenario;

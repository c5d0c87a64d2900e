//! Exact computation of orders of even K-groups `K_{2k}(O_F)` for totally
//! real abelian fields `F`, together with p-divisibility verdicts, explicit
//! lower bounds on the p-part, and supporting number theory (Bernoulli
//! numbers, power-sum polynomials, Dirichlet characters, generalized
//! Bernoulli numbers, cyclotomic rings).
//!
//! All arithmetic is exact; nothing in this crate uses floating point.

pub mod arith;
pub mod characters;
pub mod error;
pub mod ktheory;
pub mod lfun;
pub mod powersum;

pub use error::{Error, Result};

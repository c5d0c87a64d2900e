//! Orders of `K_{2k}` of totally real abelian fields and guaranteed
//! p-divisibility of those of cyclotomic rings.

mod bound;
mod density;
mod lichtenbaum;
mod verdict;

pub use bound::{
    degree_adjoin_zeta, delta, lower_bound_exponent, lower_bound_for_profile, s_profile, SProfile,
    Variant,
};
pub use density::{browkin_density, BrowkinDensity};
pub use lichtenbaum::{k_order, w_invariant, w_invariant_of_group, KOrderReport};
pub use verdict::{browkin_divisible, divisibility_verdict, Rule, Verdict};

//! Exact arithmetic: finite fields, `A = F_q[t]`, primes and residue fields.

pub mod bivariate;
pub mod field;
pub mod poly;
pub mod prime;

pub use bivariate::BiPoly;
pub use field::{prime_power, Fe, Gf};
pub use poly::{check_irreducible, formal_derivative, is_irreducible, monic_of_degree, polys_below, roots_in_ext, PolyA};
pub use prime::{residue_field, PrimeData};

//! Carlitz and Anderson modules over `A = F_q[t]` in a truncated model of
//! `C_∞`: exponentials and periods, Anderson generating functions, Gauss–Thakur
//! sums and Pellarin L-series, together with numerical checks of the
//! identities relating them.

pub mod algebra;
pub mod anderson;
pub mod error;
pub mod gauss;
pub mod lseries;
pub mod par;
pub mod series;
pub mod special;
pub mod tate;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};

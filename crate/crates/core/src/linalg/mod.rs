//! Exact linear algebra over Z, Q, and F_p.

mod matrix;
mod modp;
mod rational;
mod smith;

pub use matrix::{bareiss_determinant, IntMatrix};
pub use modp::{enumerate_subspaces, gaussian_binomial, is_odd_prime, ModPSubspace};
pub use rational::{rational_inverse, RatMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};

//! Exact integer and prime-field linear algebra.

mod complex;
mod echelon;
mod group;
mod matrix;
mod snf;

pub use complex::{BaseRing, CochainComplex};
pub use echelon::RowEchelon;
pub use group::{is_prime, FgAbelianGroup};
pub use matrix::IntegerMatrix;
pub use snf::{invariant_factors, smith_normal_form, SmithDecomposition};

/// Free-function form of [`FgAbelianGroup::localize`].
pub fn localize(group: &FgAbelianGroup, inverted_primes: &[u64]) -> FgAbelianGroup {
    group.localize(inverted_primes)
}

/// Free-function form of [`FgAbelianGroup::mod_p_dims`].
pub fn mod_p_dims(group: &FgAbelianGroup, p: u64) -> crate::Result<(usize, usize)> {
    group.mod_p_dims(p)
}

/// Free-function form of [`CochainComplex::cohomology_at`].
pub fn cohomology_at(complex: &CochainComplex, n: usize) -> crate::Result<FgAbelianGroup> {
    complex.cohomology_at(n)
}

//! Array-based stringology toolkit: suffix arrays with LCP and LCE, runs,
//! Lyndon factorization, minimal suffixes and naive property predicates.

mod array;
mod lyndon;
mod predicates;
mod rmq;
mod runs;
mod sais;

pub use array::SuffixArray;
pub use lyndon::{
    lyndon_factorize, minimal_suffix_scan, minimal_suffixes, minimal_suffixes_into,
    RangeCrossesBoundary,
};
pub use predicates::{
    check_property, is_lyndon, is_palindrome, is_periodic, is_square, is_square_free,
    smallest_period, Property, UnknownProperty,
};
pub use rmq::RangeMin;
pub use runs::{compute_runs, Run};
pub use sais::suffix_array;

use crate::corpus::GlobalText;

/// Suffix array bundle over the sentinel-separated corpus text.
pub fn build_suffix_bundle(text: &GlobalText) -> SuffixArray {
    SuffixArray::new(text.symbols(), text.sigma() + text.k() as u32)
}

//! Shared fixtures for the benchmark targets.

use nary_ell::Params;

/// Arities the benchmarks sweep over.
pub const ARITIES: [u64; 3] = [2, 4, 10];

pub fn params(n: u64) -> Params {
    Params::new(n).expect("benchmark arity")
}

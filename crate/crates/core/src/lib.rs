//! n-ary elliptic groups and rings over ℤ, ℤ/m and ℤ[1/(n+1)].
//!
//! An n-ary group (G, ∗) replaces the binary product with an n-ary one;
//! here the standard integral construction a₁ ∗ ⋯ ∗ aₙ = g − Σaᵢ is
//! paired with the multiplication a ∘ b = a + b − (n+1)ab (the g = 1
//! case) to form the n-ary elliptic ring nEll(R).  The crate checks the
//! defining axioms on opaque operations, does norm-based arithmetic
//! (units, divisibility, irreducibles, primes, factorization), realizes
//! the ideal correspondence J(m) with quotients and kernels, computes
//! the class group, and runs a constructive Euclid argument.
//!
//! The entry points:
//!
//! - [`Params`] fixes the arity n ≥ 2; most functions take it first.
//! - [`BaseElem`] and [`Carrier`] pick the base ring.
//! - [`ops`] has ∗ and ∘, [`axioms`] the law checker.
//! - [`norm`] maps everything multiplicative onto Σₙ(a) = 1 − (n+1)a.
//! - [`arith`] classifies irreducibles and primes and factors.
//! - [`ideal`], [`class_group`], [`euclid`] carry the structure theory.
//!
//! ```
//! use num_bigint::BigInt;
//! use nary_ell::{circ, factor_irreducibles, norm_int, BaseElem, Params};
//!
//! let p = Params::new(2)?; // ternary star, a ∘ b = a + b - 3ab
//! let prod = circ(&p, &BaseElem::int(4), &BaseElem::int(-1))?;
//! assert_eq!(prod, BaseElem::int(15));
//! assert_eq!(norm_int(&p, &BigInt::from(15)), BigInt::from(-44)); // (-11)·4
//!
//! let f = factor_irreducibles(&p, &BigInt::from(-9));
//! assert_eq!(f.to_string(), "(-2) ∘ 1^2");
//! # Ok::<(), nary_ell::Error>(())
//! ```

pub mod arith;
pub mod axioms;
pub mod base;
pub mod class_group;
pub mod error;
pub mod euclid;
pub mod ideal;
pub mod norm;
pub mod ops;
pub mod params;
pub mod primes;

pub use arith::{
    all_factorizations, enumerate_irreducibles, enumerate_primes, factor_irreducibles,
    integrality_test, irred_equals_prime, is_irreducible, is_prime_elem, loc_is_prime,
    Factorization, FactorizationSet,
};
pub use axioms::{check_axioms, check_distributivity, AxiomReport, OpaqueOps, SamplePlan};
pub use base::{BaseElem, Carrier};
pub use class_group::{
    class_elements, class_group_is_trivial, class_group_order, class_of_ideal, is_principal,
    psi, FracIdeal, IdealClass,
};
pub use error::{Error, Result};
pub use euclid::{euclid_trace, EuclidCase, EuclidTrace};
pub use ideal::{
    congruent, j_ideal, j_member, CongruenceOutcome, CongruenceWitness, NIdealZ, QuotientMap,
};
pub use norm::{divides, is_unit, norm, norm_int, norm_preimage, unit_inverse};
pub use ops::{absorbing_elem, circ, star, star_with, NEllElem, StandardStar};
pub use params::Params;

//! Multiplicative arithmetic of nEll(ℤ): irreducibles, ∘-primes,
//! factorization into irreducible blocks, and the collapse of the same
//! notions over the localization ℤ[1/(n+1)].
//!
//! Everything routes through the norm.  Over ℤ the non-units are the
//! a ≠ 0, and a = b ∘ c splits Σ(a) = Σ(b)Σ(c) into factors ≡ 1
//! (mod n+1).  Since −1 ≢ 1 (n+1 ≥ 3), a factor is a unit norm exactly
//! when it equals 1, so reducibility is a statement about unsigned
//! divisors u of |Σ(a)| with 1 < u < |Σ(a)| and u ≡ ±1 (mod n+1).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::base::{base_is_unit, coprime_part, BaseElem};
use crate::error::{Error, Result};
use crate::norm::{norm, norm_int};
use crate::params::Params;
use crate::primes::{divisors, is_prime, is_prime_u64};

/// A multiset of irreducible blocks with multiplicities, keyed by the
/// element value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    blocks: BTreeMap<BigInt, u32>,
}

impl Factorization {
    pub fn empty() -> Self {
        Factorization { blocks: BTreeMap::new() }
    }

    pub fn from_elems(elems: &[BigInt]) -> Self {
        let mut blocks = BTreeMap::new();
        for e in elems {
            *blocks.entry(e.clone()).or_insert(0) += 1;
        }
        Factorization { blocks }
    }

    pub fn blocks(&self) -> &BTreeMap<BigInt, u32> {
        &self.blocks
    }

    /// Total number of blocks counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.blocks.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The ∘-product of all blocks; the empty product is the unit 0.
    pub fn product(&self, params: &Params) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, mult) in &self.blocks {
            for _ in 0..*mult {
                let prod = &acc + e - params.q() * &acc * e;
                acc = prod;
            }
        }
        acc
    }

    /// Blocks sorted by (|e|, e), the order the greedy factorizer uses.
    pub fn sorted_elems(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::new();
        for (e, mult) in &self.blocks {
            for _ in 0..*mult {
                out.push(e.clone());
            }
        }
        out.sort_by_key(block_key);
        out
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, mult) in &self.blocks {
            if !first {
                write!(f, " ∘ ")?;
            }
            first = false;
            if e.is_negative() {
                write!(f, "({e})")?;
            } else {
                write!(f, "{e}")?;
            }
            if *mult > 1 {
                write!(f, "^{mult}")?;
            }
        }
        Ok(())
    }
}

/// A bounded enumeration of all factorizations into irreducibles, up to
/// reordering of blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    pub factorizations: Vec<Factorization>,
    pub cap_exceeded: bool,
}

fn block_key(e: &BigInt) -> (BigInt, BigInt) {
    (e.abs(), e.clone())
}

/// The unique a with |Σₙ(a)| = t for t ≥ 1, if any.  Σ is injective over
/// ℤ and Σ(a) = −Σ(b) never happens (it would force n+1 | 2), so at most
/// one of ±t is a norm.
pub fn element_of_norm_magnitude(params: &Params, t: &BigInt) -> Option<BigInt> {
    if t < &BigInt::one() {
        return None;
    }
    let q = params.q();
    let r = t.mod_floor(&q);
    if r.is_one() {
        Some((BigInt::one() - t) / q)
    } else if r == &q - 1 {
        Some((BigInt::one() + t) / q)
    } else {
        None
    }
}

/// The candidate divisor blocks of a norm value s ≡ 1 (mod n+1): each
/// unsigned divisor u > 1 of |s| with u ≡ ±1 (mod n+1), signed so that
/// the block's norm is ≡ 1, returned as elements.
fn candidate_blocks(params: &Params, s: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    for u in divisors(s).expect("s is a norm, hence nonzero") {
        if u.is_one() {
            continue;
        }
        if let Some(e) = element_of_norm_magnitude(params, &u) {
            out.push(e);
        }
    }
    out
}

/// Irreducible: a nonzero a admitting no splitting a = b ∘ c with both
/// factors nonzero.
pub fn is_irreducible(params: &Params, a: &BigInt) -> bool {
    if a.is_zero() {
        return false;
    }
    let s_abs = norm_int(params, a).abs();
    let q = params.q();
    for u in divisors(&s_abs).expect("nonzero") {
        if u.is_one() || u == s_abs {
            continue;
        }
        let r = u.mod_floor(&q);
        if r.is_one() || r == &q - 1 {
            return false;
        }
    }
    true
}

/// Prime: a nonzero a with (a | b∘c ⟹ a | b or a | c).  Equivalent to
/// |Σₙ(a)| being a classical prime.
pub fn is_prime_elem(params: &Params, a: &BigInt) -> bool {
    if a.is_zero() {
        return false;
    }
    is_prime(&norm_int(params, a).abs())
}

/// Greedy factorization into irreducibles: repeatedly split off the
/// irreducible block of smallest (|e|, e).  Units (only a = 0) get the
/// empty factorization.
pub fn factor_irreducibles(params: &Params, a: &BigInt) -> Factorization {
    let mut blocks = BTreeMap::new();
    let mut s = norm_int(params, a);
    while !s.is_one() {
        let e = candidate_blocks(params, &s)
            .into_iter()
            .filter(|e| is_irreducible(params, e))
            .min_by_key(block_key)
            .expect("a non-unit norm always has an irreducible block");
        let se = norm_int(params, &e);
        s /= se;
        *blocks.entry(e).or_insert(0) += 1;
    }
    Factorization { blocks }
}

/// All factorizations of a into irreducibles, distinct as multisets, in
/// lexicographic order of their sorted block lists.  Stops early once
/// `cap` factorizations are found.
pub fn all_factorizations(params: &Params, a: &BigInt, cap: usize) -> FactorizationSet {
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    let mut capped = false;
    let mut stack: Vec<BigInt> = Vec::new();
    let s = norm_int(params, a);
    descend(params, &s, None, &mut stack, &mut found, cap, &mut capped);
    found.sort();
    found.dedup();
    FactorizationSet {
        factorizations: found.iter().map(|elems| Factorization::from_elems(elems)).collect(),
        cap_exceeded: capped,
    }
}

fn descend(
    params: &Params,
    s: &BigInt,
    floor: Option<(BigInt, BigInt)>,
    stack: &mut Vec<BigInt>,
    found: &mut Vec<Vec<BigInt>>,
    cap: usize,
    capped: &mut bool,
) {
    if found.len() >= cap {
        *capped = true;
        return;
    }
    if s.is_one() {
        let mut elems = stack.clone();
        elems.sort_by_key(block_key);
        found.push(elems);
        return;
    }
    let mut blocks: Vec<BigInt> = candidate_blocks(params, s)
        .into_iter()
        .filter(|e| is_irreducible(params, e))
        .collect();
    blocks.sort_by_key(block_key);
    for e in blocks {
        let key = block_key(&e);
        if let Some(fl) = &floor {
            if key < *fl {
                continue;
            }
        }
        let se = norm_int(params, &e);
        let rest = s / &se;
        stack.push(e);
        descend(params, &rest, Some(key), stack, found, cap, capped);
        stack.pop();
        if *capped {
            return;
        }
    }
}

/// All irreducibles with |Σₙ| up to the bound, in ascending |Σₙ|.
pub fn enumerate_irreducibles(params: &Params, norm_bound: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut t = BigInt::from(2);
    while &t <= norm_bound {
        if let Some(e) = element_of_norm_magnitude(params, &t) {
            if is_irreducible(params, &e) {
                out.push(e);
            }
        }
        t += 1;
    }
    out
}

/// All ∘-primes with |Σₙ| up to the bound, in ascending |Σₙ|.  These are
/// exactly the elements whose norm magnitude is a classical prime
/// ≡ ±1 (mod n+1); the enumeration works directly on that criterion.
pub fn enumerate_primes(params: &Params, norm_bound: &BigInt) -> Vec<BigInt> {
    if let Some(bound) = norm_bound.to_u64() {
        // fast path in machine words
        let q = params.q_u64();
        let mut out = Vec::new();
        for t in 2..=bound {
            let r = t % q;
            if (r == 1 || r == q - 1) && is_prime_u64(t) {
                let e = if r == 1 {
                    (1 - t as i128) / q as i128
                } else {
                    (1 + t as i128) / q as i128
                };
                out.push(BigInt::from(e));
            }
        }
        return out;
    }
    let mut out = Vec::new();
    let mut t = BigInt::from(2);
    while &t <= norm_bound {
        if let Some(e) = element_of_norm_magnitude(params, &t) {
            if is_prime(&t) {
                out.push(e);
            }
        }
        t += 1;
    }
    out
}

/// The norm magnitudes |Σₙ| of ∘-primes up to the bound, ascending:
/// exactly the classical primes ≡ ±1 (mod n+1).
pub fn prime_norms(params: &Params, norm_bound: &BigInt) -> Vec<BigInt> {
    enumerate_primes(params, norm_bound)
        .iter()
        .map(|e| norm_int(params, e).abs())
        .collect()
}

/// Whether irreducible ⟺ prime in nEll(ℤ), which holds exactly when the
/// units of ℤ/(n+1) are just ±1, i.e. n ∈ {2, 3, 5}.
pub fn irred_equals_prime(params: &Params) -> bool {
    let q = params.q_u64();
    for u in 2..q.saturating_sub(1) {
        if num_integer::gcd(u, q) == 1 {
            return false;
        }
    }
    true
}

/// Primality in nEll(ℤ[1/(n+1)]).  The base ring is a PID there, so
/// irreducible and prime coincide; the test strips the unit part
/// (sign and primes of n+1) off the norm numerator and asks whether a
/// classical prime remains.  Units and the absorbing element are
/// rejected rather than classified.
pub fn loc_is_prime(params: &Params, a: &BaseElem) -> Result<bool> {
    if !matches!(a, BaseElem::Loc { .. }) {
        return Err(Error::UnsupportedCarrier);
    }
    let s = norm(params, a)?;
    if s.is_zero() {
        return Err(Error::AbsorbingInput);
    }
    if base_is_unit(params, &s) {
        return Err(Error::UnitInput(a.clone()));
    }
    let num = match &s {
        BaseElem::Loc { num, .. } => num,
        _ => unreachable!(),
    };
    Ok(is_prime(&coprime_part(&params.q(), num)))
}

/// Whether a localization element lies in the image of nEll(ℤ), decided
/// on the norm side: Σ(a) must have denominator 1 and numerator
/// ≡ 1 (mod n+1).
pub fn integrality_test(params: &Params, a: &BaseElem) -> Result<bool> {
    if !matches!(a, BaseElem::Loc { .. }) {
        return Err(Error::UnsupportedCarrier);
    }
    let s = norm(params, a)?;
    let (num, k) = match &s {
        BaseElem::Loc { num, k } => (num, *k),
        _ => unreachable!(),
    };
    Ok(k == 0 && (num - BigInt::one()).mod_floor(&params.q()).is_zero())
}

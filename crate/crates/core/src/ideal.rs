//! n-ary ideals of nEll(ℤ), the J(m) correspondence, congruences and
//! quotient maps.
//!
//! An n-ary ideal I must satisfy
//!   (I1)  i₁ ∗ ⋯ ∗ iₙ ∈ I for all iⱼ ∈ I,
//!   (I2)  a ∘ i ∈ I for all a in the ring, i ∈ I.
//! Over ℤ every nonempty n-ary ideal is J(m) = {a : (n+1)a ≡ 1 (mod m)}
//! for a unique m ≥ 1, the set of elements whose norm m divides; J(m) is
//! nonempty exactly when gcd(m, n+1) = 1.  The empty set is an ideal too
//! and behaves like the prime "at infinity" in the ideal arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::base::{carrier_elements, inv_mod, BaseElem, Carrier};
use crate::error::{Error, Result};
use crate::ops::{circ, star};
use crate::params::Params;
use crate::primes::is_prime;

/// An n-ary ideal of nEll(ℤ): empty, or J(m) for some m ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NIdealZ {
    Empty,
    Gen(BigInt),
}

impl NIdealZ {
    /// The modulus m of J(m), if nonempty.
    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            NIdealZ::Empty => None,
            NIdealZ::Gen(m) => Some(m),
        }
    }
}

impl std::fmt::Display for NIdealZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NIdealZ::Empty => write!(f, "∅"),
            NIdealZ::Gen(m) => write!(f, "J({m})"),
        }
    }
}

/// J(m) as an ideal value.  m must be ≥ 1; when gcd(m, n+1) > 1 the
/// congruence (n+1)a ≡ 1 has no solution and the ideal is empty.
pub fn j_ideal(params: &Params, m: &BigInt) -> Result<NIdealZ> {
    if m < &BigInt::one() {
        return Err(Error::BadGenerator(m.clone()));
    }
    if m.gcd(&params.q()).is_one() {
        Ok(NIdealZ::Gen(m.clone()))
    } else {
        Ok(NIdealZ::Empty)
    }
}

/// Membership x ∈ J(m), i.e. (n+1)x ≡ 1 (mod m).  J(1) is everything.
pub fn j_member(params: &Params, m: &BigInt, x: &BigInt) -> Result<bool> {
    if m < &BigInt::one() {
        return Err(Error::BadGenerator(m.clone()));
    }
    Ok((params.q() * x - BigInt::one()).mod_floor(m).is_zero())
}

/// Membership in an ideal value.
pub fn ideal_member(params: &Params, ideal: &NIdealZ, x: &BigInt) -> Result<bool> {
    match ideal {
        NIdealZ::Empty => Ok(false),
        NIdealZ::Gen(m) => j_member(params, m, x),
    }
}

/// Ideal product: J(m)·J(k) = J(mk), and anything times the empty ideal
/// is empty.
pub fn ideal_mul(a: &NIdealZ, b: &NIdealZ) -> NIdealZ {
    match (a, b) {
        (NIdealZ::Gen(m), NIdealZ::Gen(k)) => NIdealZ::Gen(m * k),
        _ => NIdealZ::Empty,
    }
}

/// The principal ideal of a ∈ nEll(ℤ): the set of ∘-multiples of a,
/// which is J(|Σₙ(a)|).
pub fn principal_ideal_of(params: &Params, a: &BigInt) -> NIdealZ {
    let s = crate::norm::norm_int(params, a);
    NIdealZ::Gen(s.abs())
}

/// Prime ideals: J(m) is prime exactly when m is a classical prime.
/// The empty ideal is prime; J(1) (the whole ring) is not.
pub fn is_prime_ideal(ideal: &NIdealZ) -> bool {
    match ideal {
        NIdealZ::Empty => true,
        NIdealZ::Gen(m) => is_prime(m),
    }
}

/// A found congruence witness: x ∗ â = y ∗ b̂ with âᵢ, b̂ᵢ ∈ I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub lhs: Vec<BaseElem>,
    pub rhs: Vec<BaseElem>,
}

/// Result of a bounded congruence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceOutcome {
    /// Witness tuples found (empty for the degenerate x = y over the
    /// empty ideal, where ∼ is equality).
    Witnessed(CongruenceWitness),
    /// Proven impossible on the carrier.
    NotCongruent,
    /// The search budget ran out before a decision.
    Inconclusive { attempts: u64 },
}

/// Check closure of a finite subset under (I1) and (I2), so that callers
/// cannot feed a non-ideal into the congruence search unnoticed.  Only
/// finite carriers can be validated exhaustively.
pub fn check_ideal_subset(params: &Params, carrier: &Carrier, subset: &[BaseElem]) -> Result<()> {
    let n = params.n() as usize;
    if subset.is_empty() {
        return Ok(());
    }
    let elems = carrier_elements(params, carrier)?;
    let inside = |v: &BaseElem| subset.contains(v);
    // (I1): all n-tuples from the subset
    let mut idx = vec![0usize; n];
    loop {
        let tuple: Vec<BaseElem> = idx.iter().map(|&i| subset[i].clone()).collect();
        let s = star(params, &tuple)?;
        if !inside(&s) {
            return Err(Error::NotAnIdeal {
                reason: format!("star of {tuple:?} escapes to {s}"),
            });
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return check_i2(params, &elems, subset);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < subset.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn check_i2(params: &Params, elems: &[BaseElem], subset: &[BaseElem]) -> Result<()> {
    for a in elems {
        for i in subset {
            let ai = circ(params, a, i)?;
            if !subset.contains(&ai) {
                return Err(Error::NotAnIdeal {
                    reason: format!("{a} ∘ {i} = {ai} escapes"),
                });
            }
        }
    }
    Ok(())
}

/// x ∼_I y over a finite carrier, by bounded search for witnesses.
///
/// Searches tuples b̂ ∈ I^(n−1) and for each solves for the â side via
/// x = (y ∗ b̂) ∗ â, checking the candidate â really lies in I^(n−1):
/// since (s ∗ â) ∗ â = s, it suffices to test every â ∈ I^(n−1) directly.
/// The subset is validated as an ideal first.
pub fn congruent(
    params: &Params,
    carrier: &Carrier,
    ideal: &[BaseElem],
    x: &BaseElem,
    y: &BaseElem,
    budget: u64,
) -> Result<CongruenceOutcome> {
    check_ideal_subset(params, carrier, ideal)?;
    if ideal.is_empty() {
        return Ok(if x == y {
            CongruenceOutcome::Witnessed(CongruenceWitness { lhs: vec![], rhs: vec![] })
        } else {
            CongruenceOutcome::NotCongruent
        });
    }
    let n = params.n() as usize;
    let k = n - 1;
    let mut attempts = 0u64;
    // enumerate pairs (â, b̂) ∈ I^(n−1) × I^(n−1)
    let mut idx = vec![0usize; 2 * k];
    loop {
        if attempts >= budget {
            return Ok(CongruenceOutcome::Inconclusive { attempts });
        }
        attempts += 1;
        let a_hat: Vec<BaseElem> = idx[..k].iter().map(|&i| ideal[i].clone()).collect();
        let b_hat: Vec<BaseElem> = idx[k..].iter().map(|&i| ideal[i].clone()).collect();
        let mut lhs_args = vec![x.clone()];
        lhs_args.extend(a_hat.iter().cloned());
        let mut rhs_args = vec![y.clone()];
        rhs_args.extend(b_hat.iter().cloned());
        if star(params, &lhs_args)? == star(params, &rhs_args)? {
            return Ok(CongruenceOutcome::Witnessed(CongruenceWitness {
                lhs: a_hat,
                rhs: b_hat,
            }));
        }
        let mut pos = 2 * k;
        loop {
            if pos == 0 {
                return Ok(CongruenceOutcome::NotCongruent);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < ideal.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// The quotient map f: nEll(ℤ) → nEll(ℤ/m), a ↦ a mod m, defined when
/// gcd(m, n+1) = 1 so that ℤ/m admits the absorbing element z and the
/// kernel fiber f⁻¹(z) equals J(m).
#[derive(Debug, Clone)]
pub struct QuotientMap {
    params: Params,
    m: BigInt,
}

impl QuotientMap {
    pub fn new(params: &Params, m: &BigInt) -> Result<Self> {
        if m < &BigInt::from(2) {
            return Err(Error::BadModulus(m.clone()));
        }
        let g = m.gcd(&params.q());
        if !g.is_one() {
            return Err(Error::ModulusNotCoprime { m: m.clone(), q: params.q() });
        }
        Ok(QuotientMap { params: *params, m: m.clone() })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.m
    }

    pub fn apply(&self, a: &BigInt) -> BaseElem {
        BaseElem::Mod { v: a.mod_floor(&self.m), m: self.m.clone() }
    }

    /// z = (n+1)⁻¹ in ℤ/m, the image of every kernel element.
    pub fn absorbing(&self) -> BaseElem {
        let z = inv_mod(&self.params.q(), &self.m).expect("coprime by construction");
        BaseElem::Mod { v: z, m: self.m.clone() }
    }

    /// The kernel fiber f⁻¹(z) as an ideal of nEll(ℤ).
    pub fn kernel(&self) -> NIdealZ {
        NIdealZ::Gen(self.m.clone())
    }
}

/// Kernel of reduction mod m as an ideal, allowing m = 1 (everything).
pub fn kernel(params: &Params, m: &BigInt) -> Result<NIdealZ> {
    if m < &BigInt::one() {
        return Err(Error::BadGenerator(m.clone()));
    }
    j_ideal(params, m)
}

/// The fiber of z under reduction, listed inside a window, for tests and
/// the CLI table view.
pub fn kernel_window(params: &Params, m: &BigInt, lo: i64, hi: i64) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for x in lo..=hi {
        let xv = BigInt::from(x);
        if j_member(params, m, &xv)? {
            out.push(xv);
        }
    }
    Ok(out)
}

/// z exists in ℤ/m exactly when gcd(m, n+1) = 1; re-exported here for
/// the correspondence tests.
pub fn admits_quotient(params: &Params, m: &BigInt) -> bool {
    m >= &BigInt::from(2) && m.gcd(&params.q()).is_one()
}

/// Convenience for tests: J(m) ∩ [lo, hi] as carrier elements.
pub fn ideal_window(
    params: &Params,
    ideal: &NIdealZ,
    lo: i64,
    hi: i64,
) -> Result<Vec<BaseElem>> {
    match ideal {
        NIdealZ::Empty => Ok(vec![]),
        NIdealZ::Gen(m) => Ok(kernel_window(params, m, lo, hi)?
            .into_iter()
            .map(BaseElem::Int)
            .collect()),
    }
}

/// The members of J(m) reduced into ℤ/M for a finite model, used when a
/// test wants the ideal of a finite carrier rather than of ℤ: the image
/// of J(m) in ℤ/M when m | M.
pub fn j_image_mod(params: &Params, m: &BigInt, big_m: &BigInt) -> Result<Vec<BaseElem>> {
    if !(big_m % m).is_zero() {
        return Err(Error::BadGenerator(m.clone()));
    }
    let carrier = Carrier::modulus(big_m.clone())?;
    let mut out = Vec::new();
    for a in carrier_elements(params, &carrier)? {
        if let BaseElem::Mod { v, .. } = &a {
            if j_member(params, m, v)? {
                out.push(a);
            }
        }
    }
    Ok(out)
}

/// Absorbing-element membership test used by fiber checks: whether the
/// image of x under reduction mod m is z.
pub fn maps_to_absorbing(params: &Params, m: &BigInt, x: &BigInt) -> Result<bool> {
    let f = QuotientMap::new(params, m)?;
    Ok(f.apply(x) == f.absorbing())
}

//! The n-ary class group of nEll(ℤ).
//!
//! Fractional-ideal classes modulo principal ideals.  J(m) is principal
//! exactly when m ≡ ±1 (mod n+1), so the class of J(m) only remembers
//! m mod n+1 up to sign: the group is (ℤ/(n+1))×/{±1}, of order
//! φ(n+1)/2, trivial exactly for n ∈ {2, 3, 5}.  On prime ideals the
//! isomorphism is ψ(J(p)) = [p mod n+1].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::base::inv_mod;
use crate::error::{Error, Result};
use crate::ideal::NIdealZ;
use crate::norm::norm_int;
use crate::params::Params;
use crate::primes::{factor_int, is_prime, totient};

/// An element of the class group, stored as the canonical residue
/// min(u, n+1−u) of a unit u mod n+1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdealClass {
    q: BigInt,
    rep: BigInt,
}

fn canonical(q: &BigInt, u: &BigInt) -> BigInt {
    let u = u.mod_floor(q);
    let flip = q - &u;
    if u <= flip {
        u
    } else {
        flip
    }
}

impl IdealClass {
    /// The class represented by a residue u coprime to n+1.
    pub fn new(params: &Params, u: &BigInt) -> Result<IdealClass> {
        let q = params.q();
        let red = u.mod_floor(&q);
        if !red.gcd(&q).is_one() {
            return Err(Error::BadGenerator(u.clone()));
        }
        Ok(IdealClass { rep: canonical(&q, &red), q })
    }

    pub fn identity(params: &Params) -> IdealClass {
        IdealClass { rep: BigInt::one(), q: params.q() }
    }

    pub fn rep(&self) -> &BigInt {
        &self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_one()
    }

    pub fn mul(&self, other: &IdealClass) -> IdealClass {
        assert_eq!(self.q, other.q, "classes from different arities");
        let prod = (&self.rep * &other.rep).mod_floor(&self.q);
        IdealClass { rep: canonical(&self.q, &prod), q: self.q.clone() }
    }

    pub fn inverse(&self) -> IdealClass {
        let inv = inv_mod(&self.rep, &self.q).expect("reps are coprime to q");
        IdealClass { rep: canonical(&self.q, &inv), q: self.q.clone() }
    }

    pub fn pow(&self, e: i64) -> IdealClass {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = IdealClass { rep: BigInt::one(), q: self.q.clone() };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

impl std::fmt::Display for IdealClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{} mod {}]", self.rep, self.q)
    }
}

/// A fractional ideal ∏ J(pᵢ)^eᵢ with prime moduli and integer (possibly
/// negative) exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FracIdeal {
    exps: BTreeMap<BigInt, i64>,
}

impl FracIdeal {
    pub fn new(params: &Params, exps: &[(BigInt, i64)]) -> Result<FracIdeal> {
        let mut map = BTreeMap::new();
        for (p, e) in exps {
            if !is_prime(p) || !p.gcd(&params.q()).is_one() {
                return Err(Error::BadGenerator(p.clone()));
            }
            if *e != 0 {
                *map.entry(p.clone()).or_insert(0) += e;
            }
        }
        map.retain(|_, e| *e != 0);
        Ok(FracIdeal { exps: map })
    }

    pub fn exponents(&self) -> &BTreeMap<BigInt, i64> {
        &self.exps
    }
}

/// ψ on prime ideals: the class of J(p) is [p mod n+1].  p must be a
/// classical prime not dividing n+1.
pub fn psi(params: &Params, p: &BigInt) -> Result<IdealClass> {
    if !is_prime(p) {
        return Err(Error::NotPrimeElement(p.clone()));
    }
    if !p.gcd(&params.q()).is_one() {
        return Err(Error::BadGenerator(p.clone()));
    }
    IdealClass::new(params, p)
}

/// The class of a fractional ideal: ψ extended multiplicatively.
pub fn class_of_frac(params: &Params, f: &FracIdeal) -> Result<IdealClass> {
    let mut acc = IdealClass::identity(params);
    for (p, e) in f.exponents() {
        acc = acc.mul(&psi(params, p)?.pow(*e));
    }
    Ok(acc)
}

/// |Clₙ(ℤ)| = φ(n+1)/2.
pub fn class_group_order(params: &Params) -> BigInt {
    totient(&params.q()).expect("n+1 ≥ 3") / 2
}

/// Whether the class group is trivial, i.e. every ideal is principal.
pub fn class_group_is_trivial(params: &Params) -> bool {
    class_group_order(params).is_one()
}

/// All classes, ascending by canonical representative.
pub fn class_elements(params: &Params) -> Vec<IdealClass> {
    let q = params.q();
    let mut out = Vec::new();
    let mut u = BigInt::one();
    let half = &q / 2;
    while u <= half {
        if u.gcd(&q).is_one() {
            out.push(IdealClass { rep: u.clone(), q: q.clone() });
        }
        u += 1;
    }
    out
}

/// Whether J(m) is principal, i.e. equals the multiples of some single
/// element: exactly when m ≡ ±1 (mod n+1).  The empty ideal is not a
/// J(m) and is refused, as is a generator sharing a factor with n+1.
pub fn is_principal(params: &Params, ideal: &NIdealZ) -> Result<bool> {
    let m = match ideal {
        NIdealZ::Empty => return Err(Error::EmptyIdeal),
        NIdealZ::Gen(m) => m,
    };
    let q = params.q();
    if !m.gcd(&q).is_one() {
        return Err(Error::BadGenerator(m.clone()));
    }
    let r = m.mod_floor(&q);
    Ok(r.is_one() || r == &q - 1)
}

/// J(m) = ∏ J(p)^e along m = ∏ p^e.  Needs gcd(m, n+1) = 1 so each
/// factor is a genuine prime ideal; J(1) is the empty product.
pub fn ideal_factor(params: &Params, m: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if m < &BigInt::one() || !m.gcd(&params.q()).is_one() {
        return Err(Error::BadGenerator(m.clone()));
    }
    if m.is_one() {
        return Ok(vec![]);
    }
    Ok(factor_int(m).expect("m ≥ 2").factors)
}

/// The class of a nonempty ideal, computed through its prime ideal
/// factorization.
pub fn class_of_ideal(params: &Params, ideal: &NIdealZ) -> Result<IdealClass> {
    let m = match ideal {
        NIdealZ::Empty => return Err(Error::EmptyIdeal),
        NIdealZ::Gen(m) => m,
    };
    let mut acc = IdealClass::identity(params);
    for (p, e) in ideal_factor(params, m)? {
        acc = acc.mul(&psi(params, &p)?.pow(e as i64));
    }
    // ψ is multiplicative, so the product is just [m mod n+1]
    debug_assert_eq!(acc, IdealClass::new(params, m)?);
    Ok(acc)
}

/// The prime ideal attached to a ∘-prime element: J(|Σₙ(a)|).
pub fn prime_ideal_of_element(params: &Params, a: &BigInt) -> Result<NIdealZ> {
    let s = norm_int(params, a).abs();
    if !is_prime(&s) {
        return Err(Error::NotPrimeElement(a.clone()));
    }
    Ok(NIdealZ::Gen(s))
}

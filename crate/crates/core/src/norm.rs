//! The norm Σₙ(a) = 1 − (n+1)a and what it buys.
//!
//! Σₙ turns ∘ into ring multiplication: Σ(a∘b) = Σ(a)Σ(b) and Σ(0) = 1,
//! and it is injective whenever n+1 ≠ 0 in the carrier, with image
//! 1 + (n+1)R.  Units, divisibility, cancellation and idempotents in
//! nEll(R) all reduce to statements about norms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::base::{
    base_from_int, base_inv, base_is_unit, base_mul, base_neg, base_scale, base_sub,
    carrier_elements, inv_mod, BaseElem, Carrier,
};
use crate::error::{Error, Result};
use crate::ops::{absorbing_elem, circ};
use crate::params::Params;

/// Σₙ(a) = 1 − (n+1)a, in the same carrier.
pub fn norm(params: &Params, a: &BaseElem) -> Result<BaseElem> {
    let one = base_from_int(params, &a.carrier(), 1);
    base_sub(params, &one, &base_scale(params, &params.q(), a))
}

/// Σₙ over ℤ, on plain integers.
pub fn norm_int(params: &Params, a: &BigInt) -> BigInt {
    BigInt::one() - params.q() * a
}

/// The unique a with Σₙ(a) = s, when it exists and is unique.
///
/// Over ℤ that means (n+1) | (1−s).  Over the localization it always
/// exists: a = (1−s)/(n+1).  Over ℤ/m it is unique exactly when n+1 is
/// invertible; a solvable but ambiguous congruence returns `None`.
pub fn norm_preimage(params: &Params, s: &BaseElem) -> Result<Option<BaseElem>> {
    let q = params.q();
    match s {
        BaseElem::Int(sv) => {
            let diff = BigInt::one() - sv;
            if (&diff % &q).is_zero() {
                Ok(Some(BaseElem::Int(diff / q)))
            } else {
                Ok(None)
            }
        }
        BaseElem::Mod { v, m } => match inv_mod(&q, m) {
            Ok(qinv) => {
                let a = ((BigInt::one() - v) * qinv).mod_floor(m);
                Ok(Some(BaseElem::Mod { v: a, m: m.clone() }))
            }
            Err(_) => Ok(None),
        },
        BaseElem::Loc { num, k } => {
            // (1 − num/(n+1)^k) / (n+1) = ((n+1)^k − num) / (n+1)^(k+1)
            let diff = q.pow(*k) - num;
            Ok(Some(BaseElem::loc(params, diff, k + 1)))
        }
    }
}

/// ∘-units: u is invertible for ∘ exactly when Σₙ(u) is a unit of the
/// base ring.
pub fn is_unit(params: &Params, u: &BaseElem) -> Result<bool> {
    Ok(base_is_unit(params, &norm(params, u)?))
}

/// The ∘-inverse of a unit: v = −u · Σₙ(u)⁻¹.
pub fn unit_inverse(params: &Params, u: &BaseElem) -> Result<BaseElem> {
    let s = norm(params, u)?;
    if !base_is_unit(params, &s) {
        return Err(Error::NotAUnit(u.clone()));
    }
    let s_inv = base_inv(params, &s)?;
    Ok(base_neg(params, &base_mul(params, u, &s_inv)?))
}

/// Norm divisibility over ℤ or the localization: p ∘-divides a exactly
/// when Σₙ(p) | Σₙ(a) in the base ring, and then r = a − p·k with
/// k = Σₙ(a)/Σₙ(p) satisfies p ∘ r = a.  Returns that witness.
pub fn divides(params: &Params, p: &BaseElem, a: &BaseElem) -> Result<Option<BaseElem>> {
    if p.carrier() != a.carrier() {
        return Err(Error::CarrierMismatch);
    }
    let sp = norm(params, p)?;
    let sa = norm(params, a)?;
    let k = match (&sp, &sa) {
        (BaseElem::Int(x), BaseElem::Int(y)) => {
            // Σ never vanishes over ℤ (it is ≡ 1 mod n+1)
            if (y % x).is_zero() {
                Some(BaseElem::Int(y / x))
            } else {
                None
            }
        }
        (BaseElem::Loc { .. }, BaseElem::Loc { .. }) => {
            if sp.is_zero() {
                // p = z: the only multiple of z is z itself
                return Ok(if a == p {
                    Some(base_from_int(params, &a.carrier(), 0))
                } else {
                    None
                });
            }
            loc_div(params, &sa, &sp)
        }
        _ => return Err(Error::UnsupportedCarrier),
    };
    match k {
        None => Ok(None),
        Some(k) => {
            let r = base_sub(params, a, &base_mul(params, p, &k)?)?;
            debug_assert_eq!(circ(params, p, &r)?, *a);
            Ok(Some(r))
        }
    }
}

/// t / s in the localization, when the quotient lies there.
pub(crate) fn loc_div(params: &Params, t: &BaseElem, s: &BaseElem) -> Option<BaseElem> {
    let (t_num, t_k, s_num, s_k) = match (t, s) {
        (BaseElem::Loc { num: tn, k: tk }, BaseElem::Loc { num: sn, k: sk }) => {
            (tn, *tk, sn, *sk)
        }
        _ => return None,
    };
    if s_num.is_zero() {
        return None;
    }
    if t_num.is_zero() {
        return Some(base_from_int(params, &Carrier::Loc, 0));
    }
    let q = params.q();
    // t/s = (t_num · (n+1)^s_k) / (s_num · (n+1)^t_k)
    let num = t_num * q.pow(s_k);
    let den = s_num * q.pow(t_k);
    let g = num.gcd(&den);
    let mut num = num / &g;
    let mut den = den / g;
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    // in the localization iff every prime of the reduced denominator
    // divides n+1; then scale both sides up to a clean (n+1)^j
    if !crate::base::coprime_part(&q, &den).is_one() {
        return None;
    }
    let mut j = 0u32;
    let mut pow = BigInt::one();
    while !(&pow % &den).is_zero() {
        pow *= &q;
        j += 1;
    }
    Some(BaseElem::loc(params, num * (pow / den), j))
}

/// Whether a ∘ b = a ∘ c.  Equivalent to (b − c)·Σₙ(a) = 0 in the carrier.
pub fn cancellation_defect(
    params: &Params,
    a: &BaseElem,
    b: &BaseElem,
    c: &BaseElem,
) -> Result<bool> {
    Ok(circ(params, a, b)? == circ(params, a, c)?)
}

/// nEll(R) is ∘-cancellative exactly when no nonzero value of Σₙ is a
/// zero-divisor of R.  The absorbing element z (norm 0) is exempt: it
/// never cancels and is not asked to.  ℤ and the localization are
/// integral domains, so they always qualify; finite carriers are scanned.
pub fn is_cancellative_carrier(params: &Params, carrier: &Carrier) -> Result<bool> {
    match carrier {
        Carrier::Int | Carrier::Loc => Ok(true),
        Carrier::Mod(m) => {
            for a in carrier_elements(params, carrier)? {
                let s = norm(params, &a)?;
                if let BaseElem::Mod { v, .. } = &s {
                    if !v.is_zero() && !v.gcd(m).is_one() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// All ∘-idempotents of a finite carrier, found by direct evaluation of
/// a ∘ a = a.  They are exactly {a : a·Σₙ(a) = 0}: always 0, and z when
/// it exists.
pub fn idempotents(params: &Params, carrier: &Carrier) -> Result<Vec<BaseElem>> {
    let elems = carrier_elements(params, carrier)?;
    let mut out = Vec::new();
    for a in elems {
        if circ(params, &a, &a)? == a {
            out.push(a);
        }
    }
    Ok(out)
}

/// Convenience: the absorbing element's defining property checked on a
/// finite carrier, used by callers that want the witness rather than the
/// formula.
pub fn absorbing_if_any(params: &Params, carrier: &Carrier) -> Option<BaseElem> {
    absorbing_elem(params, carrier).ok()
}

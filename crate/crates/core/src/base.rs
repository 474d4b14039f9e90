//! Base carriers: ℤ, ℤ/m, and the localization ℤ_(n+1) of ℤ at the
//! multiplicative set {(n+1)^k : k ≥ 0}.
//!
//! Elements are tagged with their carrier and mixing carriers is an error.
//! A `Loc` value num/(n+1)^k is kept normalized: k = 0, or (n+1) ∤ num.
//! Equality on normalized values is structural equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::Params;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Carrier {
    /// The rational integers.
    Int,
    /// ℤ/m for a modulus m ≥ 2.
    Mod(BigInt),
    /// ℤ localized at powers of n + 1 (n taken from `Params`).
    Loc,
}

impl Carrier {
    pub fn modulus(m: impl Into<BigInt>) -> Result<Carrier> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(Error::BadModulus(m));
        }
        Ok(Carrier::Mod(m))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Mod(_))
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Int => write!(f, "Z"),
            Carrier::Mod(m) => write!(f, "Z/{m}"),
            Carrier::Loc => write!(f, "Z_(n+1)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseElem {
    Int(BigInt),
    /// Residue v with 0 ≤ v < m, m ≥ 2.
    Mod { v: BigInt, m: BigInt },
    /// num/(n+1)^k, normalized.
    Loc { num: BigInt, k: u32 },
}

impl BaseElem {
    pub fn int(v: impl Into<BigInt>) -> BaseElem {
        BaseElem::Int(v.into())
    }

    pub fn modular(v: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<BaseElem> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(Error::BadModulus(m));
        }
        let v = v.into().mod_floor(&m);
        Ok(BaseElem::Mod { v, m })
    }

    pub fn loc(params: &Params, num: impl Into<BigInt>, k: u32) -> BaseElem {
        let (num, k) = loc_normalize(params, num.into(), k);
        BaseElem::Loc { num, k }
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            BaseElem::Int(_) => Carrier::Int,
            BaseElem::Mod { m, .. } => Carrier::Mod(m.clone()),
            BaseElem::Loc { .. } => Carrier::Loc,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            BaseElem::Int(v) => v.is_zero(),
            BaseElem::Mod { v, .. } => v.is_zero(),
            BaseElem::Loc { num, .. } => num.is_zero(),
        }
    }

    /// The integer under an `Int` value, if that is what this is.
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            BaseElem::Int(v) => Some(v),
            _ => None,
        }
    }

    /// Carrier-aware rendering; the plain `Display` form cannot spell out
    /// (n+1) for `Loc` values because they do not store it.
    pub fn render(&self, params: &Params) -> String {
        match self {
            BaseElem::Int(v) => v.to_string(),
            BaseElem::Mod { v, m } => format!("{v} (mod {m})"),
            BaseElem::Loc { num, k } => {
                if *k == 0 {
                    num.to_string()
                } else {
                    format!("{num}/{}", params.q().pow(*k))
                }
            }
        }
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseElem::Int(v) => write!(f, "{v}"),
            BaseElem::Mod { v, m } => write!(f, "{v} (mod {m})"),
            BaseElem::Loc { num, k } => {
                if *k == 0 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/(n+1)^{k}")
                }
            }
        }
    }
}

fn loc_normalize(params: &Params, mut num: BigInt, mut k: u32) -> (BigInt, u32) {
    if num.is_zero() {
        return (num, 0);
    }
    let q = params.q();
    while k > 0 && (&num % &q).is_zero() {
        num /= &q;
        k -= 1;
    }
    (num, k)
}

fn loc_pair<'a>(a: &'a BaseElem, b: &'a BaseElem) -> Option<(&'a BigInt, u32, &'a BigInt, u32)> {
    match (a, b) {
        (BaseElem::Loc { num: n1, k: k1 }, BaseElem::Loc { num: n2, k: k2 }) => {
            Some((n1, *k1, n2, *k2))
        }
        _ => None,
    }
}

pub fn base_add(params: &Params, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
    match (a, b) {
        (BaseElem::Int(x), BaseElem::Int(y)) => Ok(BaseElem::Int(x + y)),
        (BaseElem::Mod { v: x, m }, BaseElem::Mod { v: y, m: m2 }) if m == m2 => {
            Ok(BaseElem::Mod { v: (x + y).mod_floor(m), m: m.clone() })
        }
        _ => {
            if let Some((n1, k1, n2, k2)) = loc_pair(a, b) {
                let q = params.q();
                let k = k1.max(k2);
                let num = n1 * q.pow(k - k1) + n2 * q.pow(k - k2);
                Ok(BaseElem::loc(params, num, k))
            } else {
                Err(Error::CarrierMismatch)
            }
        }
    }
}

pub fn base_neg(_params: &Params, a: &BaseElem) -> BaseElem {
    match a {
        BaseElem::Int(v) => BaseElem::Int(-v),
        BaseElem::Mod { v, m } => BaseElem::Mod { v: (-v).mod_floor(m), m: m.clone() },
        BaseElem::Loc { num, k } => BaseElem::Loc { num: -num, k: *k },
    }
}

pub fn base_sub(params: &Params, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
    base_add(params, a, &base_neg(params, b))
}

pub fn base_mul(params: &Params, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
    match (a, b) {
        (BaseElem::Int(x), BaseElem::Int(y)) => Ok(BaseElem::Int(x * y)),
        (BaseElem::Mod { v: x, m }, BaseElem::Mod { v: y, m: m2 }) if m == m2 => {
            Ok(BaseElem::Mod { v: (x * y).mod_floor(m), m: m.clone() })
        }
        _ => {
            if let Some((n1, k1, n2, k2)) = loc_pair(a, b) {
                Ok(BaseElem::loc(params, n1 * n2, k1 + k2))
            } else {
                Err(Error::CarrierMismatch)
            }
        }
    }
}

/// c · a for an integer scalar c.
pub fn base_scale(params: &Params, c: &BigInt, a: &BaseElem) -> BaseElem {
    match a {
        BaseElem::Int(v) => BaseElem::Int(c * v),
        BaseElem::Mod { v, m } => BaseElem::Mod { v: (c * v).mod_floor(m), m: m.clone() },
        BaseElem::Loc { num, k } => BaseElem::loc(params, c * num, *k),
    }
}

/// Lift an integer into a carrier.
pub fn base_from_int(params: &Params, carrier: &Carrier, v: impl Into<BigInt>) -> BaseElem {
    let v = v.into();
    match carrier {
        Carrier::Int => BaseElem::Int(v),
        Carrier::Mod(m) => BaseElem::Mod { v: v.mod_floor(m), m: m.clone() },
        Carrier::Loc => BaseElem::loc(params, v, 0),
    }
}

pub fn base_zero(params: &Params, carrier: &Carrier) -> BaseElem {
    base_from_int(params, carrier, 0)
}

pub fn base_one(params: &Params, carrier: &Carrier) -> BaseElem {
    base_from_int(params, carrier, 1)
}

/// Units of the base ring itself: ±1 in ℤ, residues coprime to m in ℤ/m,
/// and in the localization the elements whose numerator has every prime
/// factor dividing n+1 (inverting n+1 inverts each of its primes).
pub fn base_is_unit(params: &Params, a: &BaseElem) -> bool {
    match a {
        BaseElem::Int(v) => v.abs().is_one(),
        BaseElem::Mod { v, m } => v.gcd(m).is_one(),
        BaseElem::Loc { num, .. } => {
            !num.is_zero() && coprime_part(&params.q(), num).is_one()
        }
    }
}

/// Multiplicative inverse in the base ring.
pub fn base_inv(params: &Params, a: &BaseElem) -> Result<BaseElem> {
    match a {
        BaseElem::Int(v) => {
            if v.abs().is_one() {
                Ok(a.clone())
            } else {
                Err(Error::NotAUnit(a.clone()))
            }
        }
        BaseElem::Mod { v, m } => {
            let inv = inv_mod(v, m).map_err(|_| Error::NotAUnit(a.clone()))?;
            Ok(BaseElem::Mod { v: inv, m: m.clone() })
        }
        BaseElem::Loc { num, k } => {
            if num.is_zero() || !coprime_part(&params.q(), num).is_one() {
                return Err(Error::NotAUnit(a.clone()));
            }
            // |num| divides (n+1)^j for some j; then
            // (num/(n+1)^k)^-1 = sign · (n+1)^k · ((n+1)^j/|num|) / (n+1)^j
            let q = params.q();
            let nabs = num.abs();
            let mut j = 0u32;
            let mut pow = BigInt::one();
            while !(&pow % &nabs).is_zero() {
                pow *= &q;
                j += 1;
            }
            let sign = if num.is_negative() { BigInt::from(-1) } else { BigInt::one() };
            Ok(BaseElem::loc(params, sign * q.pow(*k) * (pow / nabs), j))
        }
    }
}

/// |v| with every prime factor of q divided out; zero stays zero.
pub(crate) fn coprime_part(q: &BigInt, v: &BigInt) -> BigInt {
    let mut rest = v.abs();
    if rest.is_zero() {
        return rest;
    }
    loop {
        let g = rest.gcd(q);
        if g.is_one() {
            return rest;
        }
        rest /= g;
    }
}

/// Inverse of a modulo m (m ≥ 2), by the extended Euclidean algorithm.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if m < &BigInt::from(2) {
        return Err(Error::BadModulus(m.clone()));
    }
    let a_red = a.mod_floor(m);
    let ext = a_red.extended_gcd(m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible { a: a.clone(), m: m.clone() });
    }
    Ok(ext.x.mod_floor(m))
}

/// All elements of a finite carrier, in residue order.
pub fn carrier_elements(params: &Params, carrier: &Carrier) -> Result<Vec<BaseElem>> {
    let _ = params;
    match carrier {
        Carrier::Mod(m) => {
            let mut out = Vec::new();
            let mut v = BigInt::zero();
            while &v < m {
                out.push(BaseElem::Mod { v: v.clone(), m: m.clone() });
                v += 1;
            }
            Ok(out)
        }
        _ => Err(Error::InfiniteCarrier),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Params {
        Params::new(n).unwrap()
    }

    #[test]
    fn modular_values_are_reduced() {
        let a = BaseElem::modular(-1, 7).unwrap();
        assert_eq!(a, BaseElem::Mod { v: BigInt::from(6), m: BigInt::from(7) });
        assert!(matches!(BaseElem::modular(3, 1), Err(Error::BadModulus(_))));
        assert!(matches!(BaseElem::modular(3, -5), Err(Error::BadModulus(_))));
    }

    #[test]
    fn loc_values_normalize() {
        let params = p(2); // n + 1 = 3
        assert_eq!(BaseElem::loc(&params, 9, 2), BaseElem::Loc { num: BigInt::one(), k: 0 });
        assert_eq!(BaseElem::loc(&params, 6, 1), BaseElem::Loc { num: BigInt::from(2), k: 0 });
        assert_eq!(BaseElem::loc(&params, 2, 1), BaseElem::Loc { num: BigInt::from(2), k: 1 });
        assert_eq!(BaseElem::loc(&params, 0, 5), BaseElem::Loc { num: BigInt::zero(), k: 0 });
    }

    #[test]
    fn loc_arithmetic_is_exact() {
        let params = p(2);
        // 1/3 + 2/3 = 1
        let a = BaseElem::loc(&params, 1, 1);
        let b = BaseElem::loc(&params, 2, 1);
        assert_eq!(base_add(&params, &a, &b).unwrap(), BaseElem::loc(&params, 1, 0));
        // (2/3) · (1/9) = 2/27
        let c = BaseElem::loc(&params, 1, 2);
        assert_eq!(base_mul(&params, &b, &c).unwrap(), BaseElem::loc(&params, 2, 3));
    }

    #[test]
    fn carriers_do_not_mix() {
        let params = p(2);
        let a = BaseElem::int(1);
        let b = BaseElem::modular(1, 7).unwrap();
        let c = BaseElem::modular(1, 5).unwrap();
        assert_eq!(base_add(&params, &a, &b).unwrap_err(), Error::CarrierMismatch);
        assert_eq!(base_mul(&params, &b, &c).unwrap_err(), Error::CarrierMismatch);
    }

    #[test]
    fn base_units() {
        let params = p(4); // n + 1 = 5
        assert!(base_is_unit(&params, &BaseElem::int(-1)));
        assert!(!base_is_unit(&params, &BaseElem::int(2)));
        assert!(base_is_unit(&params, &BaseElem::modular(3, 7).unwrap()));
        assert!(!base_is_unit(&params, &BaseElem::modular(6, 9).unwrap()));
        // 5 = (n+1)^1 is a unit of the localization, 10 = 2·5 is not.
        assert!(base_is_unit(&params, &BaseElem::loc(&params, 5, 0)));
        assert!(base_is_unit(&params, &BaseElem::loc(&params, -25, 1)));
        assert!(!base_is_unit(&params, &BaseElem::loc(&params, 10, 0)));
        assert!(!base_is_unit(&params, &BaseElem::loc(&params, 0, 0)));
    }

    #[test]
    fn base_inverse_round_trips() {
        let params = p(4);
        for (num, k) in [(5, 0), (-25, 1), (1, 3), (-1, 0)] {
            let u = BaseElem::loc(&params, num, k);
            let v = base_inv(&params, &u).unwrap();
            assert_eq!(base_mul(&params, &u, &v).unwrap(), BaseElem::loc(&params, 1, 0));
        }
        let u = BaseElem::modular(4, 9).unwrap();
        let v = base_inv(&params, &u).unwrap();
        assert_eq!(base_mul(&params, &u, &v).unwrap(), BaseElem::modular(1, 9).unwrap());
        assert!(matches!(base_inv(&params, &BaseElem::int(3)), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn inv_mod_matches_exhaustive_scan() {
        for m in 2i64..=40 {
            let mb = BigInt::from(m);
            for a in -m..(2 * m) {
                let ab = BigInt::from(a);
                // brute-force inverse search, the oracle
                let mut brute = None;
                for x in 0..m {
                    if (a * x).rem_euclid(m) == 1 % m {
                        brute = Some(BigInt::from(x));
                        break;
                    }
                }
                match inv_mod(&ab, &mb) {
                    Ok(inv) => assert_eq!(Some(inv), brute, "a={a} m={m}"),
                    Err(Error::NotInvertible { .. }) => assert_eq!(brute, None, "a={a} m={m}"),
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn ring_laws_hold_on_small_windows() {
        // Int: exhaustive triples in a window.
        let params = p(3);
        let w: Vec<BaseElem> = (-6i64..=6).map(BaseElem::int).collect();
        for a in &w {
            for b in &w {
                assert_eq!(
                    base_add(&params, a, b).unwrap(),
                    base_add(&params, b, a).unwrap()
                );
                assert_eq!(
                    base_mul(&params, a, b).unwrap(),
                    base_mul(&params, b, a).unwrap()
                );
                for c in &w {
                    let ab_c =
                        base_mul(&params, &base_mul(&params, a, b).unwrap(), c).unwrap();
                    let a_bc =
                        base_mul(&params, a, &base_mul(&params, b, c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                    let lhs =
                        base_mul(&params, a, &base_add(&params, b, c).unwrap()).unwrap();
                    let rhs = base_add(
                        &params,
                        &base_mul(&params, a, b).unwrap(),
                        &base_mul(&params, a, c).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn ring_laws_hold_mod_m_exhaustively() {
        let params = p(2);
        for m in 2u64..=9 {
            let carrier = Carrier::modulus(m).unwrap();
            let elems = carrier_elements(&params, &carrier).unwrap();
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        let ab_c =
                            base_mul(&params, &base_mul(&params, a, b).unwrap(), c).unwrap();
                        let a_bc =
                            base_mul(&params, a, &base_mul(&params, b, c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let lhs =
                            base_mul(&params, a, &base_add(&params, b, c).unwrap()).unwrap();
                        let rhs = base_add(
                            &params,
                            &base_mul(&params, a, b).unwrap(),
                            &base_mul(&params, a, c).unwrap(),
                        )
                        .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn loc_ring_laws_on_a_window() {
        let params = p(2);
        let mut w = Vec::new();
        for num in -5i64..=5 {
            for k in 0u32..=2 {
                w.push(BaseElem::loc(&params, num, k));
            }
        }
        for a in &w {
            for b in &w {
                assert_eq!(
                    base_add(&params, a, b).unwrap(),
                    base_add(&params, b, a).unwrap()
                );
                for c in &w {
                    let lhs =
                        base_mul(&params, a, &base_add(&params, b, c).unwrap()).unwrap();
                    let rhs = base_add(
                        &params,
                        &base_mul(&params, a, b).unwrap(),
                        &base_mul(&params, a, c).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

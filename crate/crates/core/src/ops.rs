//! The standard n-ary elliptic operations over a commutative base ring:
//!
//!   a₁ ∗ ⋯ ∗ aₙ = g − (a₁ + ⋯ + aₙ)        (group level, constant g)
//!   a ∘ b       = a + b − (n+1)·a·b         (ring level, star constant 1)
//!
//! The ∘ unit is 0.  When n+1 is invertible in the carrier, z = 1/(n+1)
//! absorbs: a ∘ z = z and z ∗ ⋯ ∗ z = z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::base::{
    base_add, base_from_int, base_mul, base_scale, base_sub, base_zero, BaseElem, Carrier,
};
use crate::error::{Error, Result};
use crate::params::Params;

fn check_same_carrier(elems: &[BaseElem]) -> Result<()> {
    if let Some(first) = elems.first() {
        let c = first.carrier();
        if elems.iter().any(|e| e.carrier() != c) {
            return Err(Error::CarrierMismatch);
        }
    }
    Ok(())
}

/// g − Σ aᵢ for a tuple of exactly n elements.
pub fn star_with(params: &Params, g: &BaseElem, elems: &[BaseElem]) -> Result<BaseElem> {
    if elems.len() != params.n() as usize {
        return Err(Error::ArityMismatch { expected: params.n() as usize, got: elems.len() });
    }
    check_same_carrier(elems)?;
    if g.carrier() != elems[0].carrier() {
        return Err(Error::CarrierMismatch);
    }
    let mut acc = g.clone();
    for e in elems {
        acc = base_sub(params, &acc, e)?;
    }
    Ok(acc)
}

/// The ring-level star, with g = 1.
pub fn star(params: &Params, elems: &[BaseElem]) -> Result<BaseElem> {
    if elems.is_empty() {
        return Err(Error::ArityMismatch { expected: params.n() as usize, got: 0 });
    }
    let one = base_from_int(params, &elems[0].carrier(), 1);
    star_with(params, &one, elems)
}

/// a ∘ b = a + b − (n+1)ab.
pub fn circ(params: &Params, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
    let sum = base_add(params, a, b)?;
    let prod = base_mul(params, a, b)?;
    base_sub(params, &sum, &base_scale(params, &params.q(), &prod))
}

/// Fold of ∘ over a list; the empty product is the ∘ unit 0.
pub fn circ_many(params: &Params, carrier: &Carrier, elems: &[BaseElem]) -> Result<BaseElem> {
    let mut acc = base_zero(params, carrier);
    for e in elems {
        acc = circ(params, &acc, e)?;
    }
    Ok(acc)
}

/// The absorbing element z = 1/(n+1), where it exists.
pub fn absorbing_elem(params: &Params, carrier: &Carrier) -> Result<BaseElem> {
    match carrier {
        Carrier::Int => Err(Error::NoAbsorbingElement),
        Carrier::Mod(m) => {
            let inv = crate::base::inv_mod(&params.q(), m)
                .map_err(|_| Error::NoAbsorbingElement)?;
            Ok(BaseElem::Mod { v: inv, m: m.clone() })
        }
        Carrier::Loc => Ok(BaseElem::loc(params, 1, 1)),
    }
}

/// A standard star operation of some arity with constant g.  Descending
/// fixes one argument to o, which lands on the standard operation again
/// with constant g − o; the arity drops by one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardStar {
    params: Params,
    arity: u64,
    g: BaseElem,
}

impl StandardStar {
    /// The group-level star of arity n with an integer constant g.
    pub fn group(params: &Params, carrier: &Carrier, g: impl Into<BigInt>) -> StandardStar {
        StandardStar {
            params: *params,
            arity: params.n(),
            g: base_from_int(params, carrier, g),
        }
    }

    /// The ring-level star: g = 1.
    pub fn ring(params: &Params, carrier: &Carrier) -> StandardStar {
        Self::group(params, carrier, 1)
    }

    pub fn arity(&self) -> u64 {
        self.arity
    }

    pub fn g(&self) -> &BaseElem {
        &self.g
    }

    pub fn apply(&self, elems: &[BaseElem]) -> Result<BaseElem> {
        if elems.len() != self.arity as usize {
            return Err(Error::ArityMismatch { expected: self.arity as usize, got: elems.len() });
        }
        check_same_carrier(elems)?;
        let mut acc = self.g.clone();
        for e in elems {
            acc = base_sub(&self.params, &acc, e)?;
        }
        Ok(acc)
    }

    /// Fix the last argument to o.  Defined only while the result is still
    /// at least binary.
    pub fn descend(&self, o: &BaseElem) -> Result<StandardStar> {
        if self.arity <= 2 {
            return Err(Error::ArityTooSmall(self.arity - 1));
        }
        if o.carrier() != self.g.carrier() {
            return Err(Error::CarrierMismatch);
        }
        Ok(StandardStar {
            params: self.params,
            arity: self.arity - 1,
            g: base_sub(&self.params, &self.g, o)?,
        })
    }
}

/// Descend the ring-level star through a chain of n−2 constants, then build
/// the derived abelian group operation  a +ₒ b = o ∗ (a ∗ b)  on the
/// resulting binary star.  For the standard construction this comes out as
/// a + b − o, so o is the neutral element.
pub fn derived_group_add(
    params: &Params,
    chain: &[BaseElem],
    o: &BaseElem,
    a: &BaseElem,
    b: &BaseElem,
) -> Result<BaseElem> {
    if chain.len() as u64 != params.n() - 2 {
        return Err(Error::ArityMismatch {
            expected: params.n() as usize - 2,
            got: chain.len(),
        });
    }
    let carrier = o.carrier();
    let mut s = StandardStar::ring(params, &carrier);
    for c in chain {
        s = s.descend(c)?;
    }
    let inner = s.apply(&[a.clone(), b.clone()])?;
    s.apply(&[o.clone(), inner])
}

/// An element of nEll(R): a carrier value together with the arity it is
/// read under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NEllElem {
    params: Params,
    value: BaseElem,
}

impl NEllElem {
    pub fn new(params: &Params, value: BaseElem) -> NEllElem {
        NEllElem { params: *params, value }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn value(&self) -> &BaseElem {
        &self.value
    }

    pub fn carrier(&self) -> Carrier {
        self.value.carrier()
    }

    pub fn circ(&self, other: &NEllElem) -> Result<NEllElem> {
        if self.params != other.params {
            return Err(Error::CarrierMismatch);
        }
        Ok(NEllElem {
            params: self.params,
            value: circ(&self.params, &self.value, &other.value)?,
        })
    }

    pub fn norm(&self) -> Result<BaseElem> {
        crate::norm::norm(&self.params, &self.value)
    }
}

/// True when n+1 is invertible modulo m, i.e. when ℤ/m has an absorbing
/// element and the J-correspondence is faithful there.
pub fn modulus_admits_z(params: &Params, m: &BigInt) -> bool {
    m.gcd(&params.q()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::carrier_elements;

    fn p(n: u64) -> Params {
        Params::new(n).unwrap()
    }

    #[test]
    fn circ_evaluates() {
        let params = p(2);
        let r = circ(&params, &BaseElem::int(-1), &BaseElem::int(-2)).unwrap();
        assert_eq!(r, BaseElem::int(-9));
        let r = circ(&params, &BaseElem::int(0), &BaseElem::int(17)).unwrap();
        assert_eq!(r, BaseElem::int(17));
    }

    #[test]
    fn star_evaluates() {
        let params = p(4);
        let z = BaseElem::loc(&params, 1, 1);
        let r = star(&params, &[z.clone(), z.clone(), z.clone(), z.clone()]).unwrap();
        assert_eq!(r, z);
        let r = star_with(
            &params,
            &BaseElem::int(3),
            &[BaseElem::int(1), BaseElem::int(2), BaseElem::int(3), BaseElem::int(4)],
        )
        .unwrap();
        assert_eq!(r, BaseElem::int(-7));
    }

    #[test]
    fn star_checks_arity() {
        let params = p(3);
        let e = star(&params, &[BaseElem::int(1), BaseElem::int(2)]).unwrap_err();
        assert_eq!(e, Error::ArityMismatch { expected: 3, got: 2 });
    }

    #[test]
    fn circ_is_commutative_associative_with_unit_mod_m() {
        for n in [2u64, 3] {
            let params = p(n);
            for m in [5u64, 7, 9] {
                let c = Carrier::modulus(m).unwrap();
                let elems = carrier_elements(&params, &c).unwrap();
                let zero = base_zero(&params, &c);
                for a in &elems {
                    assert_eq!(circ(&params, a, &zero).unwrap(), *a);
                    for b in &elems {
                        assert_eq!(circ(&params, a, b).unwrap(), circ(&params, b, a).unwrap());
                        for cc in &elems {
                            let lhs =
                                circ(&params, &circ(&params, a, b).unwrap(), cc).unwrap();
                            let rhs =
                                circ(&params, a, &circ(&params, b, cc).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn absorbing_element_where_it_exists() {
        let params = p(2);
        assert_eq!(
            absorbing_elem(&params, &Carrier::Int).unwrap_err(),
            Error::NoAbsorbingElement
        );
        let c7 = Carrier::modulus(7).unwrap();
        let z = absorbing_elem(&params, &c7).unwrap();
        assert_eq!(z, BaseElem::modular(5, 7).unwrap());
        for a in carrier_elements(&params, &c7).unwrap() {
            assert_eq!(circ(&params, &a, &z).unwrap(), z);
        }
        assert_eq!(star(&params, &[z.clone(), z.clone()]).unwrap(), z);
        // no z when gcd(n+1, m) > 1
        let c6 = Carrier::modulus(6).unwrap();
        assert_eq!(absorbing_elem(&params, &c6).unwrap_err(), Error::NoAbsorbingElement);
    }

    #[test]
    fn descend_shifts_the_constant() {
        let params = p(3);
        let s = StandardStar::ring(&params, &Carrier::Int);
        let s2 = s.descend(&BaseElem::int(1)).unwrap();
        assert_eq!(s2.arity(), 2);
        assert_eq!(s2.g(), &BaseElem::int(0));
        // (a ∗₃ b ∗₃ 1) = 1 - a - b - 1 = 0 - a - b
        let direct = s
            .apply(&[BaseElem::int(4), BaseElem::int(-2), BaseElem::int(1)])
            .unwrap();
        assert_eq!(s2.apply(&[BaseElem::int(4), BaseElem::int(-2)]).unwrap(), direct);
        assert_eq!(s2.descend(&BaseElem::int(0)).unwrap_err(), Error::ArityTooSmall(1));
    }

    #[test]
    fn derived_addition_matches_closed_form() {
        // a +ₒ b = a + b − o, exhaustively over Z/7 for n = 2, 3, 4.
        for n in [2u64, 3, 4] {
            let params = p(n);
            let c = Carrier::modulus(7).unwrap();
            let elems = carrier_elements(&params, &c).unwrap();
            let chain: Vec<BaseElem> = std::iter::repeat(BaseElem::modular(1, 7).unwrap())
                .take(n as usize - 2)
                .collect();
            for o in &elems {
                for a in &elems {
                    for b in &elems {
                        let got = derived_group_add(&params, &chain, o, a, b).unwrap();
                        let want = base_sub(
                            &params,
                            &base_add(&params, a, b).unwrap(),
                            o,
                        )
                        .unwrap();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn derived_addition_over_int_with_zero_origin() {
        let params = p(2);
        let got = derived_group_add(
            &params,
            &[],
            &BaseElem::int(0),
            &BaseElem::int(11),
            &BaseElem::int(-4),
        )
        .unwrap();
        assert_eq!(got, BaseElem::int(7));
    }

    #[test]
    fn derived_addition_group_laws() {
        // identity o and inverse 2o − a, over Z/5, n = 3
        let params = p(3);
        let c = Carrier::modulus(5).unwrap();
        let elems = carrier_elements(&params, &c).unwrap();
        let chain = vec![BaseElem::modular(2, 5).unwrap()];
        let o = BaseElem::modular(3, 5).unwrap();
        for a in &elems {
            assert_eq!(derived_group_add(&params, &chain, &o, a, &o).unwrap(), *a);
            let two_o = base_add(&params, &o, &o).unwrap();
            let inv = base_sub(&params, &two_o, a).unwrap();
            assert_eq!(derived_group_add(&params, &chain, &o, a, &inv).unwrap(), o);
        }
    }
}

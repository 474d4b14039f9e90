use num_bigint::BigInt;

use crate::error::{Error, Result};

/// The arity parameter.  Everything in this crate is relative to a fixed
/// n ≥ 2; the quantity that actually shows up in formulas is n + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    n: u64,
}

impl Params {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ArityTooSmall(n));
        }
        Ok(Params { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// n + 1 as a machine word.
    pub fn q_u64(&self) -> u64 {
        self.n + 1
    }

    /// n + 1 as a big integer.
    pub fn q(&self) -> BigInt {
        BigInt::from(self.n + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_must_be_at_least_two() {
        assert_eq!(Params::new(0).unwrap_err(), Error::ArityTooSmall(0));
        assert_eq!(Params::new(1).unwrap_err(), Error::ArityTooSmall(1));
        let p = Params::new(2).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.q(), BigInt::from(3));
    }
}

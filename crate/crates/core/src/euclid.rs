//! A constructive Euclid argument: no finite list of irreducibles of
//! nEll(ℤ) is complete.
//!
//! Given seeds q₁, …, q_r, form N = q₁ ∘ ⋯ ∘ q_r and M = 1 − N (the
//! ∗-flip of N past 1).  Each qᵢ divides N.  If M = 0 the list must be
//! exactly {1} (the norm product forces it), and the probe 2 factors
//! into irreducibles of norm dividing 2n+1, coprime to Σ(1) = −n.
//! Otherwise no qᵢ divides M: a common divisor's norm would divide
//! Σ(N) + Σ(M) = 1 − n, impossible since non-unit norms have magnitude
//! at least n.  Either way a fresh irreducible falls out of an explicit
//! factorization.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factor_irreducibles, is_irreducible, Factorization};
use crate::base::BaseElem;
use crate::error::{Error, Result};
use crate::norm::{divides, norm_int};
use crate::params::Params;

/// Which branch of the argument fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EuclidCase {
    /// M = 0: the seed list is {1}; a fixed probe element supplies the
    /// new irreducible.
    UnitGap { probe: BigInt },
    /// M ≠ 0: M itself factors into irreducibles outside the list.
    NormGap,
}

/// Per-seed divisibility data backing the contradiction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedCheck {
    pub seed: BigInt,
    pub norm: BigInt,
    pub divides_n: bool,
    pub divides_m: bool,
}

/// The full trace: inputs, intermediate values, the case taken, the
/// factorization consulted and the exhibited new irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidTrace {
    pub seeds: Vec<BigInt>,
    pub n_value: BigInt,
    pub m_value: BigInt,
    pub case: EuclidCase,
    pub checks: Vec<SeedCheck>,
    pub factored: Factorization,
    pub new_irreducible: BigInt,
}

/// Run the argument on a list of irreducible seeds.  The empty list is
/// allowed (N = 0, M = 1) and produces 1, the irreducible of smallest
/// norm.  Seeds must be irreducible; 0 or a reducible value is refused.
pub fn euclid_trace(params: &Params, seeds: &[BigInt]) -> Result<EuclidTrace> {
    for s in seeds {
        if s.is_zero() {
            return Err(Error::InvalidSeed("0 is the unit, not an irreducible".into()));
        }
        if !is_irreducible(params, s) {
            return Err(Error::InvalidSeed(format!("{s} is reducible at n = {}", params.n())));
        }
    }
    let mut n_value = BigInt::zero();
    for s in seeds {
        let prod = &n_value + s - params.q() * &n_value * s;
        n_value = prod;
    }
    let m_value = BigInt::one() - &n_value;

    let div = |p: &BigInt, a: &BigInt| -> bool {
        divides(params, &BaseElem::Int(p.clone()), &BaseElem::Int(a.clone()))
            .map(|w| w.is_some())
            .unwrap_or(false)
    };
    let checks: Vec<SeedCheck> = seeds
        .iter()
        .map(|s| SeedCheck {
            seed: s.clone(),
            norm: norm_int(params, s),
            divides_n: div(s, &n_value),
            divides_m: div(s, &m_value),
        })
        .collect();

    let (case, factored) = if m_value.is_zero() {
        let probe = BigInt::from(2);
        (EuclidCase::UnitGap { probe: probe.clone() }, factor_irreducibles(params, &probe))
    } else {
        (EuclidCase::NormGap, factor_irreducibles(params, &m_value))
    };

    let new_irreducible = factored
        .sorted_elems()
        .into_iter()
        .find(|e| !seeds.contains(e))
        .expect("some factor lies outside the seed list");

    Ok(EuclidTrace { seeds: seeds.to_vec(), n_value, m_value, case, checks, factored, new_irreducible })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Params {
        Params::new(n).unwrap()
    }

    fn ints(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn the_unit_gap_case() {
        // seeds = {1} at n = 2: N = 1, M = 0, probe 2 is itself
        // irreducible (Σ = −5) and new
        let params = p(2);
        let t = euclid_trace(&params, &ints(&[1])).unwrap();
        assert_eq!(t.n_value, BigInt::one());
        assert!(t.m_value.is_zero());
        assert_eq!(t.case, EuclidCase::UnitGap { probe: BigInt::from(2) });
        assert_eq!(t.new_irreducible, BigInt::from(2));
    }

    #[test]
    fn the_norm_gap_case() {
        // seeds = {1, 2} at n = 2: N = −3, M = 4, Σ(4) = −11 prime
        let params = p(2);
        let t = euclid_trace(&params, &ints(&[1, 2])).unwrap();
        assert_eq!(t.n_value, BigInt::from(-3));
        assert_eq!(t.m_value, BigInt::from(4));
        assert_eq!(t.case, EuclidCase::NormGap);
        assert_eq!(t.new_irreducible, BigInt::from(4));
        for c in &t.checks {
            assert!(c.divides_n, "seed {} must divide N", c.seed);
            assert!(!c.divides_m, "seed {} must not divide M", c.seed);
        }
    }

    #[test]
    fn the_empty_list_yields_one() {
        for n in [2u64, 3, 4, 7] {
            let params = p(n);
            let t = euclid_trace(&params, &[]).unwrap();
            assert!(t.n_value.is_zero());
            assert!(t.m_value.is_one());
            assert_eq!(t.new_irreducible, BigInt::one());
        }
    }

    #[test]
    fn bad_seeds_are_refused() {
        let params = p(2);
        assert!(matches!(
            euclid_trace(&params, &ints(&[0])),
            Err(Error::InvalidSeed(_))
        ));
        assert!(matches!(
            euclid_trace(&params, &ints(&[-1])), // −1 = 1 ∘ 1 at n = 2
            Err(Error::InvalidSeed(_))
        ));
    }

    #[test]
    fn every_trace_exhibits_a_genuinely_new_irreducible() {
        let params = p(3);
        // irreducibles at n = 3: Σ values −3, 5, −7, −11, 13, 17, ...
        let lists: Vec<Vec<i64>> = vec![
            vec![],
            vec![1],
            vec![1, -1],
            vec![1, -1, 2],
            vec![3, -3],
            vec![1, 1, 1],
        ];
        for vs in lists {
            let seeds = ints(&vs);
            let t = euclid_trace(&params, &seeds).unwrap();
            assert!(is_irreducible(&params, &t.new_irreducible), "{vs:?}");
            assert!(!seeds.contains(&t.new_irreducible), "{vs:?}");
            for c in &t.checks {
                assert!(c.divides_n);
                if !t.m_value.is_zero() {
                    assert!(!c.divides_m);
                }
            }
        }
    }

    #[test]
    fn norm_bookkeeping_matches() {
        // Σ(N) + Σ(M) = 1 − n whenever M = 1 − N
        let params = p(5);
        let t = euclid_trace(&params, &ints(&[1, -1, 2])).unwrap();
        let sn = norm_int(&params, &t.n_value);
        let sm = norm_int(&params, &t.m_value);
        assert_eq!(sn + sm, BigInt::from(1i64 - 5));
    }
}

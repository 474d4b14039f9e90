//! Law checking for n-ary elliptic operations.
//!
//! The three group laws:
//!   EG1  total symmetry of ∗ under permutation of its n inputs
//!   EG2  (s ∗ â) ∗ â = s for every (n−1)-tuple â
//!   EG3  x̂ ∗ (ŷ ∗ (z ∗ ŵ)) = ŵ ∗ (ŷ ∗ (z ∗ x̂)) on 3n−2 inputs
//! plus ring-level distributivity:
//!   (a₁ ∗ ⋯ ∗ aₙ) ∘ b = (a₁ ∘ b) ∗ ⋯ ∗ (aₙ ∘ b)
//!
//! Operations are passed in as opaque closures, so deliberately broken
//! variants (a star with the wrong constant, a ∘ with the wrong λ) are
//! checked by exactly the same code path as the standard ones.  Tuple
//! spaces that fit under `exhaustive_cutoff` are enumerated; anything
//! larger is sampled deterministically from the recorded seed.

use num_bigint::{BigInt, RandBigInt};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{base_from_int, base_scale, base_sub, carrier_elements, BaseElem, Carrier};
use crate::error::{Error, Result};
use crate::ops::circ as standard_circ;
use crate::params::Params;

pub const DEFAULT_SEED: u64 = 0x4E41_5259;

type StarFn<'a> = dyn Fn(&[BaseElem]) -> Result<BaseElem> + 'a;
type CircFn<'a> = dyn Fn(&BaseElem, &BaseElem) -> Result<BaseElem> + 'a;

/// An n-ary star and an optional binary ∘, treated as black boxes.
pub struct OpaqueOps<'a> {
    arity: u64,
    star: Box<StarFn<'a>>,
    circ: Option<Box<CircFn<'a>>>,
}

impl<'a> OpaqueOps<'a> {
    pub fn new(
        arity: u64,
        star: Box<StarFn<'a>>,
        circ: Option<Box<CircFn<'a>>>,
    ) -> Result<OpaqueOps<'a>> {
        if arity < 2 {
            return Err(Error::ArityTooSmall(arity));
        }
        Ok(OpaqueOps { arity, star, circ })
    }

    /// The standard pair: star with constant g, ∘ with λ = n+1.
    pub fn standard(params: &Params, carrier: &Carrier, g: impl Into<BigInt>) -> OpaqueOps<'a> {
        let p = *params;
        let g = base_from_int(&p, carrier, g);
        let star = move |elems: &[BaseElem]| {
            let mut acc = g.clone();
            for e in elems {
                acc = base_sub(&p, &acc, e)?;
            }
            Ok(acc)
        };
        let circ = move |a: &BaseElem, b: &BaseElem| standard_circ(&p, a, b);
        OpaqueOps { arity: p.n(), star: Box::new(star), circ: Some(Box::new(circ)) }
    }

    /// Star with constant r paired with a ∘ variant a + b − λab.  The pair
    /// distributes exactly when λ·r = n+1 in the carrier.
    pub fn variant(
        params: &Params,
        carrier: &Carrier,
        r: impl Into<BigInt>,
        lambda: impl Into<BigInt>,
    ) -> OpaqueOps<'a> {
        let p = *params;
        let r = base_from_int(&p, carrier, r);
        let lambda: BigInt = lambda.into();
        let star = move |elems: &[BaseElem]| {
            let mut acc = r.clone();
            for e in elems {
                acc = base_sub(&p, &acc, e)?;
            }
            Ok(acc)
        };
        let circ = move |a: &BaseElem, b: &BaseElem| {
            let sum = crate::base::base_add(&p, a, b)?;
            let prod = crate::base::base_mul(&p, a, b)?;
            base_sub(&p, &sum, &base_scale(&p, &lambda, &prod))
        };
        OpaqueOps { arity: p.n(), star: Box::new(star), circ: Some(Box::new(circ)) }
    }

    pub fn arity(&self) -> u64 {
        self.arity
    }

    pub fn star(&self, elems: &[BaseElem]) -> Result<BaseElem> {
        (self.star)(elems)
    }

    pub fn circ(&self, a: &BaseElem, b: &BaseElem) -> Result<BaseElem> {
        match &self.circ {
            Some(f) => f(a, b),
            None => Err(Error::UnsupportedCarrier),
        }
    }
}

/// How to walk a tuple space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePlan {
    /// Enumerate the whole space when its size is at most this.
    pub exhaustive_cutoff: u64,
    /// Number of tuples drawn per law otherwise.
    pub sample_size: u64,
    pub seed: u64,
    /// Inclusive integer window for infinite carriers.
    pub window: Option<(i64, i64)>,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            exhaustive_cutoff: 1_000_000,
            sample_size: 10_000,
            seed: DEFAULT_SEED,
            window: None,
        }
    }
}

impl SamplePlan {
    pub fn windowed(lo: i64, hi: i64) -> SamplePlan {
        SamplePlan { window: Some((lo, hi)), ..SamplePlan::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Eg1,
    Eg2,
    Eg3,
    Distributivity,
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Law::Eg1 => write!(f, "EG1"),
            Law::Eg2 => write!(f, "EG2"),
            Law::Eg3 => write!(f, "EG3"),
            Law::Distributivity => write!(f, "distributivity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub law: Law,
    pub inputs: Vec<BaseElem>,
    pub detail: String,
}

/// Outcome of a law check.  `counterexample` is present exactly when one of
/// the flags is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub eg1_ok: bool,
    pub eg2_ok: bool,
    pub eg3_ok: bool,
    pub dist_ok: bool,
    pub counterexample: Option<Counterexample>,
    pub samples_checked: u64,
    pub exhaustive: bool,
    /// Recorded only when sampling actually happened.
    pub seed: Option<u64>,
}

impl AxiomReport {
    fn clean() -> AxiomReport {
        AxiomReport {
            eg1_ok: true,
            eg2_ok: true,
            eg3_ok: true,
            dist_ok: true,
            counterexample: None,
            samples_checked: 0,
            exhaustive: true,
            seed: None,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.eg1_ok && self.eg2_ok && self.eg3_ok && self.dist_ok
    }

    /// Combine two reports (flags and-ed, first counterexample kept).
    pub fn merge(mut self, other: AxiomReport) -> AxiomReport {
        self.eg1_ok &= other.eg1_ok;
        self.eg2_ok &= other.eg2_ok;
        self.eg3_ok &= other.eg3_ok;
        self.dist_ok &= other.dist_ok;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self.samples_checked += other.samples_checked;
        self.exhaustive &= other.exhaustive;
        self.seed = self.seed.or(other.seed);
        self
    }
}

enum TupleSource {
    Exhaustive(Vec<BaseElem>),
    Sampled { rng: ChaCha8Rng, kind: SampleKind },
}

enum SampleKind {
    Mod(BigInt),
    Int { lo: BigInt, hi: BigInt },
    Loc { lo: BigInt, hi: BigInt },
}

fn tuple_space_size(base: usize, len: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..len {
        acc = acc.checked_mul(base as u64)?;
    }
    Some(acc)
}

fn source_for(
    params: &Params,
    carrier: &Carrier,
    plan: &SamplePlan,
    tuple_len: u32,
) -> Result<(TupleSource, bool)> {
    match carrier {
        Carrier::Mod(m) => {
            let size = m.to_usize().and_then(|s| tuple_space_size(s, tuple_len));
            match size {
                Some(total) if total <= plan.exhaustive_cutoff => {
                    Ok((TupleSource::Exhaustive(carrier_elements(params, carrier)?), true))
                }
                _ => Ok((
                    TupleSource::Sampled {
                        rng: ChaCha8Rng::seed_from_u64(plan.seed),
                        kind: SampleKind::Mod(m.clone()),
                    },
                    false,
                )),
            }
        }
        Carrier::Int | Carrier::Loc => {
            let (lo, hi) = plan.window.ok_or(Error::MissingWindow)?;
            let kind = match carrier {
                Carrier::Int => SampleKind::Int { lo: BigInt::from(lo), hi: BigInt::from(hi) },
                _ => SampleKind::Loc { lo: BigInt::from(lo), hi: BigInt::from(hi) },
            };
            Ok((
                TupleSource::Sampled { rng: ChaCha8Rng::seed_from_u64(plan.seed), kind },
                false,
            ))
        }
    }
}

impl TupleSource {
    fn draw(&mut self, params: &Params, out: &mut Vec<BaseElem>, len: usize) {
        out.clear();
        if let TupleSource::Sampled { rng, kind } = self {
            for _ in 0..len {
                let e = match kind {
                    SampleKind::Mod(m) => BaseElem::Mod {
                        v: rng.gen_bigint_range(&BigInt::zero(), m),
                        m: m.clone(),
                    },
                    SampleKind::Int { lo, hi } => {
                        BaseElem::Int(rng.gen_bigint_range(lo, &(hi.clone() + 1)))
                    }
                    SampleKind::Loc { lo, hi } => {
                        let num = rng.gen_bigint_range(lo, &(hi.clone() + 1));
                        let k = rng.gen_range(0u32..=2);
                        BaseElem::loc(params, num, k)
                    }
                };
                out.push(e);
            }
        }
    }
}

/// Run `check` over the tuple space of the given length.  Returns
/// (ok, first counterexample tuple, comparisons made, exhaustive).
fn run_law<F>(
    params: &Params,
    carrier: &Carrier,
    plan: &SamplePlan,
    tuple_len: u32,
    mut check: F,
) -> Result<(Option<Vec<BaseElem>>, u64, bool)>
where
    F: FnMut(&[BaseElem]) -> Result<bool>,
{
    let (mut source, exhaustive) = source_for(params, carrier, plan, tuple_len)?;
    let mut checked = 0u64;
    match &mut source {
        TupleSource::Exhaustive(elems) => {
            let len = tuple_len as usize;
            let mut idx = vec![0usize; len];
            let mut tuple: Vec<BaseElem> = idx.iter().map(|&i| elems[i].clone()).collect();
            loop {
                checked += 1;
                if !check(&tuple)? {
                    return Ok((Some(tuple), checked, exhaustive));
                }
                // odometer
                let mut pos = len;
                loop {
                    if pos == 0 {
                        return Ok((None, checked, exhaustive));
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < elems.len() {
                        tuple[pos] = elems[idx[pos]].clone();
                        break;
                    }
                    idx[pos] = 0;
                    tuple[pos] = elems[0].clone();
                }
            }
        }
        TupleSource::Sampled { .. } => {
            let mut tuple = Vec::with_capacity(tuple_len as usize);
            for _ in 0..plan.sample_size {
                source.draw(params, &mut tuple, tuple_len as usize);
                checked += 1;
                if !check(&tuple)? {
                    return Ok((Some(tuple), checked, exhaustive));
                }
            }
            Ok((None, checked, exhaustive))
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // all of S_n for small n, otherwise the adjacent transpositions, which
    // generate S_n; invariance under generators gives invariance everywhere
    if n <= 4 {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        heap_permute(&mut items, n, &mut out);
        out.retain(|p| p.iter().enumerate().any(|(i, &v)| i != v));
        out
    } else {
        (0..n - 1)
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(i, i + 1);
                p
            })
            .collect()
    }
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// Check EG1, EG2 and EG3 for the star of `ops`.  `dist_ok` is left true;
/// see `check_distributivity`.
pub fn check_axioms(
    params: &Params,
    ops: &OpaqueOps,
    carrier: &Carrier,
    plan: &SamplePlan,
) -> Result<AxiomReport> {
    let n = ops.arity() as usize;
    let mut report = AxiomReport::clean();
    let mut sampled_any = false;

    // EG1
    let perms = permutations(n);
    let (ce, count, exhaustive) = run_law(params, carrier, plan, n as u32, |tuple| {
        let base = ops.star(tuple)?;
        let mut permuted = tuple.to_vec();
        for p in &perms {
            for (slot, &src) in p.iter().enumerate() {
                permuted[slot] = tuple[src].clone();
            }
            if ops.star(&permuted)? != base {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    report.samples_checked += count;
    report.exhaustive &= exhaustive;
    sampled_any |= !exhaustive;
    if let Some(inputs) = ce {
        report.eg1_ok = false;
        report.counterexample.get_or_insert(Counterexample {
            law: Law::Eg1,
            inputs,
            detail: "star is not invariant under some permutation".into(),
        });
    }

    // EG2: tuple (s, a₁..a_{n−1})
    let (ce, count, exhaustive) = run_law(params, carrier, plan, n as u32, |tuple| {
        let s = &tuple[0];
        let mut args = tuple.to_vec();
        let inner = ops.star(&args)?;
        args[0] = inner;
        Ok(&ops.star(&args)? == s)
    })?;
    report.samples_checked += count;
    report.exhaustive &= exhaustive;
    sampled_any |= !exhaustive;
    if let Some(inputs) = ce {
        report.eg2_ok = false;
        report.counterexample.get_or_insert(Counterexample {
            law: Law::Eg2,
            inputs,
            detail: "(s ∗ a) ∗ a did not return s".into(),
        });
    }

    // EG3: tuple (x̂, ŷ, z, ŵ) of size 3n−2
    let eg3_len = (3 * n - 2) as u32;
    let (ce, count, exhaustive) = run_law(params, carrier, plan, eg3_len, |tuple| {
        let x = &tuple[..n - 1];
        let y = &tuple[n - 1..2 * (n - 1)];
        let z = &tuple[2 * (n - 1)];
        let w = &tuple[2 * n - 1..];
        let side = |outer: &[BaseElem], inner_last: &[BaseElem]| -> Result<BaseElem> {
            let mut args: Vec<BaseElem> = vec![z.clone()];
            args.extend_from_slice(inner_last);
            let mut t = ops.star(&args)?;
            args.clear();
            args.extend_from_slice(y);
            args.push(t);
            t = ops.star(&args)?;
            args.clear();
            args.extend_from_slice(outer);
            args.push(t);
            ops.star(&args)
        };
        Ok(side(x, w)? == side(w, x)?)
    })?;
    report.samples_checked += count;
    report.exhaustive &= exhaustive;
    sampled_any |= !exhaustive;
    if let Some(inputs) = ce {
        report.eg3_ok = false;
        report.counterexample.get_or_insert(Counterexample {
            law: Law::Eg3,
            inputs,
            detail: "the two EG3 associations disagree".into(),
        });
    }

    if sampled_any {
        report.seed = Some(plan.seed);
    }
    Ok(report)
}

/// Check distributivity of ∘ over star.  EG flags are left true.
pub fn check_distributivity(
    params: &Params,
    ops: &OpaqueOps,
    carrier: &Carrier,
    plan: &SamplePlan,
) -> Result<AxiomReport> {
    let n = ops.arity() as usize;
    let mut report = AxiomReport::clean();
    let (ce, count, exhaustive) = run_law(params, carrier, plan, (n + 1) as u32, |tuple| {
        let args = &tuple[..n];
        let b = &tuple[n];
        let lhs = ops.circ(&ops.star(args)?, b)?;
        let mut mapped = Vec::with_capacity(n);
        for a in args {
            mapped.push(ops.circ(a, b)?);
        }
        Ok(lhs == ops.star(&mapped)?)
    })?;
    report.samples_checked = count;
    report.exhaustive = exhaustive;
    if !exhaustive {
        report.seed = Some(plan.seed);
    }
    if let Some(inputs) = ce {
        report.dist_ok = false;
        report.counterexample = Some(Counterexample {
            law: Law::Distributivity,
            inputs,
            detail: "(a₁∗⋯∗aₙ)∘b differs from (a₁∘b)∗⋯∗(aₙ∘b)".into(),
        });
    }
    Ok(report)
}

/// Whether the star with constant r distributes over a ∘ b = a + b − λab.
/// Agrees with the algebraic criterion λ·r = n+1 in the carrier.
pub fn compatible_pair(
    params: &Params,
    carrier: &Carrier,
    r: impl Into<BigInt>,
    lambda: impl Into<BigInt>,
    plan: &SamplePlan,
) -> Result<bool> {
    let ops = OpaqueOps::variant(params, carrier, r, lambda);
    Ok(check_distributivity(params, &ops, carrier, plan)?.dist_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn p(n: u64) -> Params {
        Params::new(n).unwrap()
    }

    #[test]
    fn standard_ops_pass_exhaustively() {
        let params = p(2);
        let carrier = Carrier::modulus(5).unwrap();
        let ops = OpaqueOps::standard(&params, &carrier, 1);
        let report = check_axioms(&params, &ops, &carrier, &SamplePlan::default()).unwrap();
        assert!(report.eg1_ok && report.eg2_ok && report.eg3_ok && report.dist_ok);
        assert!(report.counterexample.is_none());
        assert!(report.exhaustive);
        assert_eq!(report.seed, None);
        let dist =
            check_distributivity(&params, &ops, &carrier, &SamplePlan::default()).unwrap();
        assert!(dist.dist_ok && dist.exhaustive);
    }

    #[test]
    fn standard_ops_pass_for_arity_three() {
        let params = p(3);
        let carrier = Carrier::modulus(7).unwrap();
        let ops = OpaqueOps::standard(&params, &carrier, 2);
        let report = check_axioms(&params, &ops, &carrier, &SamplePlan::default()).unwrap();
        assert!(report.all_ok());
        // 7^7 = 823543 fits the default cutoff, so EG3 ran exhaustively
        assert!(report.exhaustive);
    }

    #[test]
    fn a_gcd_degenerate_modulus_is_still_a_ring() {
        // gcd(n+1, m) > 1 kills the absorbing element, not the laws
        let params = p(2);
        let carrier = Carrier::modulus(12).unwrap();
        let ops = OpaqueOps::standard(&params, &carrier, 1);
        let report = check_axioms(&params, &ops, &carrier, &SamplePlan::default()).unwrap();
        assert!(report.all_ok());
        assert!(
            check_distributivity(&params, &ops, &carrier, &SamplePlan::default())
                .unwrap()
                .dist_ok
        );
    }

    #[test]
    fn a_corrupted_star_fails_with_a_counterexample() {
        let params = p(2);
        let carrier = Carrier::modulus(5).unwrap();
        let pc = params;
        let cc = carrier.clone();
        // star' = 1 − a − b + a depends on the position of its arguments
        let star = move |elems: &[BaseElem]| {
            let one = base_from_int(&pc, &cc, 1);
            let mut acc = one;
            for e in elems {
                acc = base_sub(&pc, &acc, e)?;
            }
            crate::base::base_add(&pc, &acc, &elems[0])
        };
        let ops = OpaqueOps::new(2, Box::new(star), None).unwrap();
        let report = check_axioms(&params, &ops, &carrier, &SamplePlan::default()).unwrap();
        assert!(!report.eg1_ok);
        let ce = report.counterexample.expect("counterexample required on failure");
        assert_eq!(ce.law, Law::Eg1);
        // replay the counterexample
        let base = ops.star(&ce.inputs).unwrap();
        let mut swapped = ce.inputs.clone();
        swapped.reverse();
        assert_ne!(ops.star(&swapped).unwrap(), base);
    }

    #[test]
    fn compatible_pairs_match_the_lambda_r_criterion() {
        // every (r, λ) over Z/7 and Z/9, n = 2 and 3
        for n in [2u64, 3] {
            let params = p(n);
            for m in [7i64, 9] {
                let carrier = Carrier::modulus(m).unwrap();
                for r in 0..m {
                    for lambda in 0..m {
                        let got = compatible_pair(
                            &params,
                            &carrier,
                            r,
                            lambda,
                            &SamplePlan::default(),
                        )
                        .unwrap();
                        let want = (r * lambda - params.q_u64() as i64).mod_floor(&m) == 0;
                        assert_eq!(got, want, "n={n} m={m} r={r} λ={lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn incompatible_variant_rejected() {
        let params = p(2);
        let carrier = Carrier::modulus(7).unwrap();
        assert!(!compatible_pair(&params, &carrier, 2, 2, &SamplePlan::default()).unwrap());
        assert!(compatible_pair(&params, &carrier, 1, 3, &SamplePlan::default()).unwrap());
        // λr = 10 ≡ 3 (mod 7) also works
        assert!(compatible_pair(&params, &carrier, 5, 2, &SamplePlan::default()).unwrap());
    }

    #[test]
    fn infinite_carriers_need_a_window() {
        let params = p(2);
        let ops = OpaqueOps::standard(&params, &Carrier::Int, 1);
        let err =
            check_axioms(&params, &ops, &Carrier::Int, &SamplePlan::default()).unwrap_err();
        assert_eq!(err, Error::MissingWindow);
        let plan = SamplePlan::windowed(-50, 50);
        let report = check_axioms(&params, &ops, &Carrier::Int, &plan).unwrap();
        assert!(report.all_ok());
        assert!(!report.exhaustive);
        assert_eq!(report.seed, Some(DEFAULT_SEED));
    }

    #[test]
    fn loc_carrier_samples_pass() {
        let params = p(4);
        let ops = OpaqueOps::standard(&params, &Carrier::Loc, 1);
        let plan = SamplePlan { sample_size: 2_000, ..SamplePlan::windowed(-30, 30) };
        let report = check_axioms(&params, &ops, &Carrier::Loc, &plan).unwrap();
        assert!(report.all_ok());
        let dist = check_distributivity(&params, &ops, &Carrier::Loc, &plan).unwrap();
        assert!(dist.dist_ok);
    }

    #[test]
    fn sampling_is_deterministic() {
        let params = p(3);
        let carrier = Carrier::modulus(13).unwrap();
        let ops = OpaqueOps::standard(&params, &carrier, 1);
        // 13^7 tuple space for EG3 forces sampling at this cutoff
        let plan = SamplePlan { exhaustive_cutoff: 10_000, sample_size: 500, seed: 99, ..SamplePlan::default() };
        let a = check_axioms(&params, &ops, &carrier, &plan).unwrap();
        let b = check_axioms(&params, &ops, &carrier, &plan).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(99));
        assert!(!a.exhaustive);
    }
}

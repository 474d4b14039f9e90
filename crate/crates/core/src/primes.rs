//! Classical integer primality and factorization.
//!
//! Values that fit in a u64 take a fast path: deterministic Miller-Rabin
//! (the 12-witness set is exact far beyond u64) and trial division plus
//! Brent's variant of Pollard rho.  Larger values run the same algorithms
//! on big integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Sign and prime-power decomposition of a nonzero integer.
/// `factors` is empty exactly for ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactors {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl IntFactors {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    // m < 2^64 here, so the product of two reduced values fits in u128.
    (a * b) % m
}

fn powmod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u128(acc, b, mm);
        }
        b = mulmod_u128(b, b, mm);
        exp >>= 1;
    }
    acc as u64
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in MR_WITNESSES.iter() {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u128(x as u128, x as u128, n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigInt) -> bool {
    // deterministic for everything the desk scale reaches; the witness set
    // covers all n below 3.3·10^24
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for p in MR_WITNESSES {
        let pb = BigInt::from(p);
        if n == &pb {
            return true;
        }
        if (n % pb).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in MR_WITNESSES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of a nonnegative integer.  Negative inputs are not prime.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => is_prime_big(n),
    }
}

fn pollard_rho_u64(n: u64) -> u64 {
    // Brent's cycle-finding; n must be odd, composite, and not a prime power
    // caught earlier.  Returns a nontrivial factor.
    let nn = n as u128;
    let mut c: u128 = 1;
    loop {
        let f = |x: u128| (mulmod_u128(x, x, nn) + c) % nn;
        let mut x: u128 = 2;
        let mut y: u128 = 2;
        let mut d: u64 = 1;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = if x > y { x - y } else { y - x };
            d = (diff as u64).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(mut n: u64, out: &mut BTreeMap<u64, u32>) {
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    // wheel over 6k±1 up to a fixed trial bound
    let mut p = 7u64;
    let mut step = 4u64; // alternates 4, 2
    while p <= 1_000_003 && p.checked_mul(p).map(|pp| pp <= n).unwrap_or(false) {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += step;
        step = 6 - step;
    }
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

fn factor_big_into(n: BigInt, out: &mut BTreeMap<BigInt, u32>) {
    if let Some(v) = n.to_u64() {
        let mut small = BTreeMap::new();
        factor_u64_into(v, &mut small);
        for (p, e) in small {
            *out.entry(BigInt::from(p)).or_insert(0) += e;
        }
        return;
    }
    if is_prime_big(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    // Pollard rho on big integers; only reached past u64.
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % &n;
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(&n);
        }
        if d != n {
            let q = &n / &d;
            factor_big_into(d, out);
            factor_big_into(q, out);
            return;
        }
        c += &one;
    }
}

/// Factor a nonzero integer into classical primes, smallest prime first.
pub fn factor_int(v: &BigInt) -> Result<IntFactors> {
    if v.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if v.is_negative() { -1 } else { 1 };
    let mut map = BTreeMap::new();
    let abs = v.abs();
    if !abs.is_one() {
        factor_big_into(abs, &mut map);
    }
    Ok(IntFactors { sign, factors: map.into_iter().collect() })
}

/// Euler's totient, for m ≥ 1.
pub fn totient(m: &BigInt) -> Result<BigInt> {
    if m < &BigInt::one() {
        return Err(Error::BadGenerator(m.clone()));
    }
    if m.is_one() {
        return Ok(BigInt::one());
    }
    let f = factor_int(m)?;
    let mut t = BigInt::one();
    for (p, e) in &f.factors {
        t *= p.pow(e - 1) * (p - 1);
    }
    Ok(t)
}

/// All positive divisors of |v|, unordered output sorted ascending.
pub fn divisors(v: &BigInt) -> Result<Vec<BigInt>> {
    let f = factor_int(v)?;
    let mut out = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        let mut pk = BigInt::one();
        for _ in 0..=*e {
            for d in &out {
                next.push(d * &pk);
            }
            pk *= p;
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

//! Classical prime counting by a segmented sieve of Eratosthenes,
//! deliberately independent of the Miller–Rabin path the library uses,
//! so the two can check each other.

use std::collections::BTreeMap;
use std::thread;

const SEGMENT: u64 = 1 << 16;

/// All primes up to `limit` by a plain sieve.
fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for v in 2..=n {
        if !composite[v] {
            out.push(v as u64);
            let mut w = v * v;
            while w <= n {
                composite[w] = true;
                w += v;
            }
        }
    }
    out
}

fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// How many worker threads to use: NARY_ELL_THREADS if set (clamped to
/// 1..=64), otherwise whatever the machine reports.
fn thread_count() -> usize {
    if let Ok(s) = std::env::var("NARY_ELL_THREADS") {
        if let Ok(v) = s.trim().parse::<usize>() {
            return v.clamp(1, 64);
        }
    }
    thread::available_parallelism().map(|v| v.get()).unwrap_or(1).clamp(1, 64)
}

fn count_segment(lo: u64, hi: u64, base: &[u64], q: u64, counts: &mut BTreeMap<u64, u64>) {
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p > hi {
            break;
        }
        let mut start = p * p;
        if start < lo {
            start = lo.div_ceil(p) * p;
        }
        let mut w = start;
        while w <= hi {
            composite[(w - lo) as usize] = true;
            w += p;
        }
    }
    for (i, &c) in composite.iter().enumerate() {
        let v = lo + i as u64;
        if v >= 2 && !c {
            *counts.entry(v % q).or_insert(0) += 1;
        }
    }
}

/// Counts of primes ≤ bound in each residue class mod q, computed with a
/// segmented sieve spread over worker threads.  Only classes that hold
/// at least one prime appear.
pub fn prime_counts_mod(bound: u64, q: u64) -> BTreeMap<u64, u64> {
    assert!(q >= 2, "need a modulus of at least 2");
    let mut total: BTreeMap<u64, u64> = BTreeMap::new();
    if bound < 2 {
        return total;
    }
    let base = small_primes(isqrt(bound));
    let segments: Vec<(u64, u64)> = (0..)
        .map(|i| 2 + i * SEGMENT)
        .take_while(|&lo| lo <= bound)
        .map(|lo| (lo, (lo + SEGMENT - 1).min(bound)))
        .collect();
    let workers = thread_count().min(segments.len().max(1));
    let partials: Vec<BTreeMap<u64, u64>> = thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in segments.chunks(segments.len().div_ceil(workers)) {
            let base = &base;
            handles.push(scope.spawn(move || {
                let mut counts = BTreeMap::new();
                for &(lo, hi) in chunk {
                    count_segment(lo, hi, base, q, &mut counts);
                }
                counts
            }));
        }
        handles.into_iter().map(|h| h.join().expect("sieve worker")).collect()
    });
    for part in partials {
        for (r, c) in part {
            *total.entry(r).or_insert(0) += c;
        }
    }
    total
}

/// Primes ≤ bound with residue ±1 mod q.
pub fn count_pm_one(bound: u64, q: u64) -> u64 {
    let counts = prime_counts_mod(bound, q);
    let mut total = *counts.get(&1).unwrap_or(&0);
    if q > 2 {
        total += *counts.get(&(q - 1)).unwrap_or(&0);
    }
    total
}

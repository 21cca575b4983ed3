//! Word-sized prime-field arithmetic used by the modular polynomial gcd.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

const PRIME_CACHE: usize = 128;
const PRIME_CEILING: u64 = (1 << 62) - 1;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn next_prime_below(mut n: u64) -> u64 {
    loop {
        n -= 1;
        if is_prime(n) {
            return n;
        }
    }
}

fn cached_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_CACHE);
        let mut p = PRIME_CEILING + 1;
        for _ in 0..PRIME_CACHE {
            p = next_prime_below(p);
            out.push(p);
        }
        out
    })
}

/// Descending primes below 2^62; unbounded.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    let cached = cached_primes();
    let last = *cached.last().expect("prime cache is nonempty");
    cached
        .iter()
        .copied()
        .chain(std::iter::successors(Some(last), |&p| Some(next_prime_below(p))).skip(1))
}

pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in a word")
}

pub(crate) fn reduce_poly(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
    trim(&mut out);
    out
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv_lc = inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let f = mul_mod(r[top], inv_lc, p);
        if f != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = sub_mod(r[shift + j], mul_mod(f, bj, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Monic gcd over F_p. Both inputs must be nonzero.
pub(crate) fn gcd_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    let inv_lc = inv_mod(*x.last().expect("nonzero gcd"), p);
    for c in x.iter_mut() {
        *c = mul_mod(*c, inv_lc, p);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_descending() {
        let ps: Vec<u64> = primes().take(PRIME_CACHE + 3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime(p)));
        assert!(!is_prime(561));
        assert!(is_prime(2_305_843_009_213_693_951));
    }

    #[test]
    fn gcd_mod_p_of_shared_factor() {
        let p = 1_000_000_007;
        // (x + 1)(x + 2) and (x + 1)(x + 3)
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd_monic(&a, &b, p), vec![1, 1]);
    }
}

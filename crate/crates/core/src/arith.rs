//! Small integer helpers shared by the ring, group and niceness modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// `a * b mod m` without overflow for any `m < 2^64`.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Square-and-multiply modular exponentiation.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Prime factorisation by trial division, as `(prime, multiplicity)` pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Smallest prime factor of `n >= 2`.
pub fn least_prime_factor(n: u64) -> Option<u64> {
    factorize(n).first().map(|&(p, _)| p)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Reduce an arbitrary integer into `[0, m)`.
pub fn reduce_bigint(value: &BigInt, m: u64) -> u64 {
    let r = value.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue fits below modulus")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        assert_eq!(totient(7), 6);
        assert_eq!(totient(9), 6);
        assert_eq!(totient(299), 264);
        assert_eq!(totient(1), 1);
    }

    #[test]
    fn factorization_and_primality() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(is_prime(13));
        assert!(!is_prime(1));
        assert!(!is_prime(24));
        assert_eq!(least_prime_factor(132), Some(2));
    }

    #[test]
    fn negative_reduction() {
        assert_eq!(reduce_bigint(&BigInt::from(-264), 299), 35);
        assert_eq!(reduce_bigint(&BigInt::from(-6), 9), 3);
        assert_eq!(pow_mod(8, 4, 13), 1);
    }
}

//! Small integer helpers shared by the modular solver and the group code.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Non-negative residue of `a` modulo `m`.
pub fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// p-adic valuation of a non-zero integer.
pub fn valuation(mut a: u64, p: u64) -> u32 {
    debug_assert!(a != 0);
    let mut v = 0;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    v
}

/// Prime factorization by trial division, as (prime, exponent) pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

pub fn pow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power overflow")
}

/// Chinese remaindering helper: the element of Z_m that is 1 mod `pe` and 0 mod `m / pe`.
pub fn crt_idempotent(m: u64, pe: u64) -> u64 {
    let co = m / pe;
    let inv = inv_mod(co % pe, pe).expect("coprime cofactor");
    mul_mod(co, inv, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        for m in 2..40u64 {
            for a in 0..m {
                if gcd(a, m) == 1 {
                    let i = inv_mod(a, m).unwrap();
                    assert_eq!(mul_mod(a, i, m), 1 % m);
                }
            }
        }
    }

    #[test]
    fn idempotents() {
        let m = 12;
        let e4 = crt_idempotent(m, 4);
        let e3 = crt_idempotent(m, 3);
        assert_eq!(e4 % 4, 1);
        assert_eq!(e4 % 3, 0);
        assert_eq!(e3 % 3, 1);
        assert_eq!(e3 % 4, 0);
    }
}

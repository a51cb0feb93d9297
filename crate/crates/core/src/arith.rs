//! Rational-integer helpers: primality, factorization, modular powers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Trial division limit used by [`factorize`].
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Bases for which Miller–Rabin is a proof of primality below 3.3 * 10^24.
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Beyond 3.3 * 10^24 this many extra pseudo-random rounds are run.
/// A composite survives a single round with probability at most 1/4, so the
/// error bound there is 4^-(12 + 24) < 10^-21.
const MR_EXTRA_ROUNDS: usize = 24;

/// Deterministic Miller–Rabin. Exact for m < 3.3 * 10^24 (in particular for
/// every m < 2^64); above that the error probability is below 10^-21.
pub fn is_prime(m: &BigInt) -> bool {
    if m.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = m.to_u64() {
        return is_prime_u64(small);
    }
    for p in MR_BASES {
        if (m % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let m_minus_1 = m - &one;
    let s = m_minus_1.trailing_zeros().unwrap_or(0);
    let d = &m_minus_1 >> s;

    let witness = |a: &BigInt| -> bool {
        let mut x = a.modpow(&d, m);
        if x.is_one() || x == m_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % m;
            if x == m_minus_1 {
                return true;
            }
        }
        false
    };

    if !MR_BASES.iter().all(|&a| witness(&BigInt::from(a))) {
        return false;
    }
    // Seeded from the input so the answer is reproducible.
    let seed = (m % BigInt::from(u64::MAX)).to_u64().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits = m.bits();
    (0..MR_EXTRA_ROUNDS).all(|_| {
        let a = BigInt::from(rng.gen::<u128>()) << (bits.saturating_sub(128) as usize);
        let a = a % (&m_minus_1 - 2u32) + 2u32;
        witness(&a)
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller–Rabin with the first twelve prime bases; exact on all of u64.
pub fn is_prime_u64(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for p in MR_BASES {
        let p = p as u64;
        if m % p == 0 {
            return m == p;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'bases: for a in MR_BASES {
        let mut x = pow_mod(a as u64, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Full factorization of m > 0 as (prime, exponent) pairs in ascending order.
///
/// Trial division up to [`TRIAL_DIVISION_LIMIT`], then Miller–Rabin on the
/// cofactor and Pollard–Brent rho for whatever composite part remains.
pub fn factorize(m: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(m.is_positive(), "factorize expects a positive integer");
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = m.clone();

    let push = |p: BigInt, out: &mut Vec<(BigInt, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    };

    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT {
        if rest.to_u64().map_or(false, |r| p.saturating_mul(p) > r) {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            push(BigInt::from(p), &mut out);
        }
        p = if p == 2 { 3 } else { p + 2 };
    }

    let mut stack = vec![rest];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            push(c, &mut out);
            continue;
        }
        let d = pollard_brent(&c);
        stack.push(&c / &d);
        stack.push(d);
    }
    out.sort();
    out
}

/// A non-trivial divisor of the odd composite c (no factor below the trial
/// division limit).
fn pollard_brent(c: &BigInt) -> BigInt {
    let root = c.sqrt();
    if &root * &root == *c {
        return root;
    }
    let one = BigInt::one();
    for offset in 1u32.. {
        let f = |x: &BigInt| (x * x + offset) % c;
        let mut y = BigInt::from(2u32);
        let mut g = one.clone();
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % c;
                }
                g = q.gcd(c);
                k += m;
            }
            r *= 2;
        }
        if &g == c {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(c);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != c {
            return g;
        }
    }
    unreachable!("rho exhausted every polynomial offset")
}

/// Exact integer cube root, if it exists (negative inputs allowed).
pub fn exact_cbrt(m: &BigInt) -> Option<BigInt> {
    let r = m.cbrt();
    (&r * &r * &r == *m).then_some(r)
}

/// Non-negative residue of m modulo the positive modulus.
pub fn modulo(m: &BigInt, modulus: &BigInt) -> BigInt {
    m.mod_floor(modulus)
}

/// m mod 9 as a small integer in 0..9.
pub fn mod9(m: &BigInt) -> u8 {
    m.mod_floor(&BigInt::from(9u8)).to_u8().expect("residue below 9")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(m: u64) -> bool {
        m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
    }

    #[test]
    fn small_primes_match_trial_division() {
        for m in 0..20_000u64 {
            assert_eq!(is_prime(&BigInt::from(m)), trial_is_prime(m), "m = {m}");
        }
    }

    #[test]
    fn named_values() {
        assert!(is_prime(&BigInt::from(467)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(0)));
        assert!(!is_prime(&BigInt::from(-7)));
        // 561 = 3 * 11 * 17, the smallest Carmichael number.
        assert_eq!(561 % 3, 0);
        assert!(!is_prime(&BigInt::from(561)));
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // Strong pseudoprime to bases 2..=37 would be needed to fool the u64
        // path; these are classic base-2 strong pseudoprimes.
        for m in [2047u64, 3215031751, 3825123056546413051] {
            assert!(!is_prime(&BigInt::from(m)), "m = {m}");
        }
    }

    #[test]
    fn large_primes() {
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes.
        let m89 = (BigInt::one() << 89usize) - 1;
        let m127 = (BigInt::one() << 127usize) - 1;
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m89 * &m127)));
        // 2^83 - 1 = 167 * 57912614113275649087721
        assert!(!is_prime(&((BigInt::one() << 83usize) - 1)));
    }

    #[test]
    fn factorize_small_and_large() {
        let f = factorize(&BigInt::from(1729));
        assert_eq!(
            f,
            vec![(BigInt::from(7), 1), (BigInt::from(13), 1), (BigInt::from(19), 1)]
        );
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let m = &p * &p * &q;
        assert_eq!(factorize(&m), vec![(p.clone(), 2), (q.clone(), 1)]);
        let big_p = (BigInt::one() << 61usize) - 1;
        let m = &big_p * &q;
        assert_eq!(factorize(&m), vec![(q, 1), (big_p, 1)]);
    }

    #[test]
    fn cube_roots() {
        assert_eq!(exact_cbrt(&BigInt::from(6859)), Some(BigInt::from(19)));
        assert_eq!(exact_cbrt(&BigInt::from(-8)), Some(BigInt::from(-2)));
        assert_eq!(exact_cbrt(&BigInt::from(9)), None);
        assert_eq!(exact_cbrt(&BigInt::zero()), Some(BigInt::zero()));
    }
}

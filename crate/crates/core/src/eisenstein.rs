//! Exact arithmetic in the Eisenstein integers Z[ζ], ζ² + ζ + 1 = 0.
//!
//! Elements are stored as `re + zc·ζ` with arbitrary-precision coordinates.
//! The ring is Euclidean for the norm `re² − re·zc + zc²`, which is all the
//! machinery needed to split a rational prime ℓ ≡ 1 (mod 3) into a conjugate
//! pair of primary primes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Default seed for the randomized root search in [`split_prime`].
pub const DEFAULT_SEED: u64 = 0x5eed_3_2023;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub re: BigInt,
    pub zc: BigInt,
}

impl EisensteinInt {
    pub fn new(re: impl Into<BigInt>, zc: impl Into<BigInt>) -> Self {
        EisensteinInt { re: re.into(), zc: zc.into() }
    }

    pub fn from_int(m: impl Into<BigInt>) -> Self {
        EisensteinInt { re: m.into(), zc: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The primitive cube root of unity ζ.
    pub fn zeta() -> Self {
        Self::new(0, 1)
    }

    /// 1 − ζ, the unique prime above 3 (up to units).
    pub fn p() -> Self {
        Self::new(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.zc.is_zero()
    }

    /// True when the element is a rational integer.
    pub fn is_rational(&self) -> bool {
        self.zc.is_zero()
    }

    /// Complex conjugate: (a + bζ)‾ = (a − b) − bζ.
    pub fn conj(&self) -> Self {
        EisensteinInt { re: &self.re - &self.zc, zc: -&self.zc }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re - &self.re * &self.zc + &self.zc * &self.zc
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// The six units ±1, ±ζ, ±ζ².
    pub fn units() -> [Self; 6] {
        [
            Self::new(1, 0),
            Self::new(0, 1),
            Self::new(-1, -1),
            Self::new(-1, 0),
            Self::new(0, -1),
            Self::new(1, 1),
        ]
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// True when `self = u·other` for one of the six units.
    pub fn is_associate_of(&self, other: &Self) -> bool {
        Self::units().iter().any(|u| &(u * other) == self)
    }

    /// re ≡ 2 and zc ≡ 0 (mod 3).
    pub fn is_primary(&self) -> bool {
        let three = BigInt::from(3);
        self.re.mod_floor(&three) == BigInt::from(2) && self.zc.mod_floor(&three).is_zero()
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = divmod(self, d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }
}

impl From<i64> for EisensteinInt {
    fn from(m: i64) -> Self {
        Self::from_int(m)
    }
}

impl From<BigInt> for EisensteinInt {
    fn from(m: BigInt) -> Self {
        Self::from_int(m)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.zc.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}ζ", fmt_coeff(&self.zc)),
            (false, false) => {
                let sign = if self.zc.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}ζ", self.re, sign, fmt_coeff(&self.zc.abs()))
            }
        }
    }
}

fn fmt_coeff(c: &BigInt) -> String {
    if c.is_one() {
        String::new()
    } else if *c == BigInt::from(-1) {
        "-".to_string()
    } else {
        c.to_string()
    }
}

impl<'a> Add<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { re: &self.re + &rhs.re, zc: &self.zc + &rhs.zc }
    }
}

impl<'a> Sub<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { re: &self.re - &rhs.re, zc: &self.zc - &rhs.zc }
    }
}

impl<'a> Mul<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    // (a + bζ)(c + dζ) = ac + (ad + bc)ζ + bdζ², with ζ² = −1 − ζ.
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        let bd = &self.zc * &rhs.zc;
        EisensteinInt {
            re: &self.re * &rhs.re - &bd,
            zc: &self.re * &rhs.zc + &self.zc * &rhs.re - bd,
        }
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { re: -&self.re, zc: -&self.zc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for EisensteinInt {
            type Output = EisensteinInt;
            fn $m(self, rhs: EisensteinInt) -> EisensteinInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        -&self
    }
}

/// Round num/den to the nearest integer, ties toward zero. `den > 0`.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    // num/den = q + r/den with 0 <= r < den
    let twice: BigInt = &r * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        // exact tie at q + 1/2: toward zero
        std::cmp::Ordering::Equal => {
            if q.is_negative() {
                q + 1
            } else {
                q
            }
        }
    }
}

/// Euclidean division: `a = q·b + r` with `norm(r) < norm(b)`.
///
/// The exact quotient `a·conj(b)/norm(b)` is rounded coordinate-wise to the
/// nearest integers (ties toward zero).
pub fn divmod(a: &EisensteinInt, b: &EisensteinInt) -> Result<(EisensteinInt, EisensteinInt)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let nb = b.norm();
    let num = a * &b.conj();
    let q = EisensteinInt { re: round_div(&num.re, &nb), zc: round_div(&num.zc, &nb) };
    let r = a - &(&q * b);
    debug_assert!(r.norm() < nb);
    Ok((q, r))
}

/// A greatest common divisor, determined up to units.
pub fn gcd(a: &EisensteinInt, b: &EisensteinInt) -> Result<EisensteinInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = divmod(&x, &y)?;
        x = y;
        y = r;
    }
    Ok(x)
}

/// The unique associate `u·z` with re ≡ 2, zc ≡ 0 (mod 3).
pub fn primary_associate(z: &EisensteinInt) -> Result<EisensteinInt> {
    if (z.norm() % 3u32).is_zero() {
        return Err(Error::NoPrimaryAssociate(z.to_string()));
    }
    EisensteinInt::units()
        .iter()
        .map(|u| u * z)
        .find(EisensteinInt::is_primary)
        .ok_or_else(|| Error::InternalInconsistency(format!("no primary associate of {z}")))
}

/// A rational prime ℓ ≡ 1 (mod 3) with its factorization ℓ = π·π′.
///
/// Both factors are primary, `pi_conj = conj(pi)` and `pi.zc > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplitting {
    pub ell: BigInt,
    pub pi: EisensteinInt,
    pub pi_conj: EisensteinInt,
}

impl PrimeSplitting {
    /// The same splitting with the roles of π and π′ exchanged.
    pub fn swapped(&self) -> Self {
        PrimeSplitting { ell: self.ell.clone(), pi: self.pi_conj.clone(), pi_conj: self.pi.clone() }
    }
}

/// Split ℓ ≡ 1 (mod 3) using a seeded RNG; see [`split_prime_with_rng`].
pub fn split_prime(ell: &BigInt, seed: Option<u64>) -> Result<PrimeSplitting> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(DEFAULT_SEED));
    split_prime_with_rng(ell, &mut rng)
}

/// Find r with r² + r + 1 ≡ 0 (mod ℓ) as a^((ℓ−1)/3) for random a, take
/// gcd(ℓ, r − ζ), normalize to the primary associate and label by `zc > 0`.
///
/// The result does not depend on the random choices.
pub fn split_prime_with_rng<R: Rng>(ell: &BigInt, rng: &mut R) -> Result<PrimeSplitting> {
    if (ell % 3u32) != BigInt::one() || !is_prime(ell) {
        return Err(Error::NotSplitPrime(ell.clone()));
    }
    let root = nontrivial_cube_root_of_unity(ell, rng);
    let g = gcd(&EisensteinInt::from_int(ell.clone()), &EisensteinInt::new(root, -1))?;
    let pi = primary_associate(&g)?;
    if pi.norm() != *ell {
        return Err(Error::InternalInconsistency(format!("gcd step produced {pi} of norm {}", pi.norm())));
    }
    let (pi, pi_conj) = if pi.zc.is_positive() { (pi.clone(), pi.conj()) } else { (pi.conj(), pi) };
    Ok(PrimeSplitting { ell: ell.clone(), pi, pi_conj })
}

/// A root of x² + x + 1 modulo the prime ℓ ≡ 1 (mod 3).
pub fn nontrivial_cube_root_of_unity<R: Rng>(ell: &BigInt, rng: &mut R) -> BigInt {
    let exp = (ell - 1u32) / 3u32;
    let small = ell.to_u64();
    loop {
        let a = match small {
            Some(m) => BigInt::from(rng.gen_range(2..m)),
            None => BigInt::from(rng.gen::<u128>()) % (ell - 2u32) + 2u32,
        };
        let r = a.modpow(&exp, ell);
        if !r.is_one() {
            return r;
        }
    }
}

//! Cube tests in residue fields, the cubic residue symbol, and arithmetic in
//! Z[ζ]/9.
//!
//! Every residue field that occurs is either F_ℓ (a degree-one prime above a
//! split ℓ) or F_ℓ[τ]/(τ² + τ + 1) (an inert ℓ). In both, the cube classes of
//! the unit group form a cyclic group of order 3 (F₄* is the exception for
//! the inert prime 2, where every unit is a cube). The unique prime above 3
//! is handled modulo 9, which is the fourth power of 1 − ζ up to a unit.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};

/// A cube root of unity ζ^exponent, stored as the exponent mod 3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubicSymbolValue {
    pub exponent: u8,
}

impl CubicSymbolValue {
    pub const ONE: Self = CubicSymbolValue { exponent: 0 };

    pub fn new(exponent: i64) -> Self {
        CubicSymbolValue { exponent: exponent.rem_euclid(3) as u8 }
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(self.exponent as i64 * k)
    }
}

impl Add for CubicSymbolValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new((self.exponent + rhs.exponent) as i64)
    }
}

impl Neg for CubicSymbolValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-(self.exponent as i64))
    }
}

impl fmt::Display for CubicSymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "1"),
            1 => write!(f, "ζ"),
            _ => write!(f, "ζ²"),
        }
    }
}

/// Is `a` a cube modulo the prime `ell` (ℓ ≠ 3)?
pub fn is_cube_mod_ell(a: &BigInt, ell: &BigInt) -> Result<bool> {
    if a.mod_floor(ell).is_zero() {
        return Err(Error::DivisibleByPrime { value: a.to_string(), prime: ell.to_string() });
    }
    if ell % 3u32 == BigInt::from(2) {
        return Ok(true);
    }
    let exp = (ell - 1u32) / 3u32;
    Ok(a.modpow(&exp, ell).is_one())
}

/// The reduction map Z[ζ] → F_ℓ for a prime π of norm ℓ ≡ 1 (mod 3).
///
/// If π = a + bζ then ζ ≡ −a·b⁻¹ (mod π), and that value is a primitive
/// cube root of unity in F_ℓ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResidueMap {
    pub ell: BigInt,
    /// Image of ζ.
    pub zeta: BigInt,
    exp: BigInt,
}

impl SplitResidueMap {
    pub fn new(pi: &EisensteinInt) -> Result<Self> {
        let ell = pi.norm();
        if ell.mod_floor(&BigInt::from(3)) != BigInt::one() || !is_prime(&ell) {
            return Err(Error::NotSplitPrime(ell));
        }
        let b_inv = mod_inverse(&pi.zc, &ell)
            .ok_or_else(|| Error::InternalInconsistency(format!("zeta-coordinate of {pi} not invertible")))?;
        let zeta = (-&pi.re * b_inv).mod_floor(&ell);
        let exp = (&ell - 1u32) / 3u32;
        Ok(SplitResidueMap { ell, zeta, exp })
    }

    pub fn reduce(&self, alpha: &EisensteinInt) -> BigInt {
        (&alpha.re + &alpha.zc * &self.zeta).mod_floor(&self.ell)
    }

    /// The k with α^((ℓ−1)/3) ≡ ζ^k (mod π).
    pub fn symbol(&self, alpha: &EisensteinInt) -> Result<CubicSymbolValue> {
        self.class_of_residue(&self.reduce(alpha))
            .ok_or_else(|| Error::DivisibleByPrime { value: alpha.to_string(), prime: self.ell.to_string() })
    }

    /// Cube class of a nonzero residue; `None` for zero.
    pub fn class_of_residue(&self, x: &BigInt) -> Option<CubicSymbolValue> {
        let x = x.mod_floor(&self.ell);
        if x.is_zero() {
            return None;
        }
        let s = x.modpow(&self.exp, &self.ell);
        if s.is_one() {
            Some(CubicSymbolValue::new(0))
        } else if s == self.zeta {
            Some(CubicSymbolValue::new(1))
        } else if s == (&self.zeta * &self.zeta).mod_floor(&self.ell) {
            Some(CubicSymbolValue::new(2))
        } else {
            None
        }
    }
}

/// The cubic residue symbol (α/π)₃ for a prime π of norm ℓ ≡ 1 (mod 3).
pub fn cubic_symbol(alpha: &EisensteinInt, pi: &EisensteinInt) -> Result<CubicSymbolValue> {
    SplitResidueMap::new(pi)?.symbol(alpha)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// x + yτ in F_ℓ[τ]/(τ² + τ + 1), ℓ ≡ 2 (mod 3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fp2Elem {
    pub x: BigInt,
    pub y: BigInt,
}

impl Fp2Elem {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, ell: &BigInt) -> Self {
        Fp2Elem { x: x.into().mod_floor(ell), y: y.into().mod_floor(ell) }
    }

    pub fn one() -> Self {
        Fp2Elem { x: BigInt::one(), y: BigInt::zero() }
    }

    /// The reduction of a + bζ modulo the inert prime ℓ, with ζ ↦ τ.
    pub fn reduce(alpha: &EisensteinInt, ell: &BigInt) -> Self {
        Self::new(alpha.re.clone(), alpha.zc.clone(), ell)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn mul(&self, other: &Self, ell: &BigInt) -> Self {
        let yy = &self.y * &other.y;
        Self::new(&self.x * &other.x - &yy, &self.x * &other.y + &self.y * &other.x - yy, ell)
    }

    pub fn pow(&self, exp: &BigInt, ell: &BigInt) -> Self {
        let mut acc = Self::one();
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc, ell);
            if exp.bit(i) {
                acc = acc.mul(self, ell);
            }
        }
        acc
    }
}

/// True iff z^((ℓ²−1)/3) = 1 in F_{ℓ²}.
pub fn is_cube_in_fp2(z: &Fp2Elem, ell: &BigInt) -> Result<bool> {
    Ok(cube_class_fp2(z, ell)?.is_one())
}

/// Cube class of a nonzero element of F_{ℓ²}, measured against τ.
pub fn cube_class_fp2(z: &Fp2Elem, ell: &BigInt) -> Result<CubicSymbolValue> {
    if ell.mod_floor(&BigInt::from(3)) != BigInt::from(2) {
        return Err(Error::NotInertPrime(ell.clone()));
    }
    if z.is_zero() {
        return Err(Error::DivisibleByPrime { value: format!("{}+{}τ", z.x, z.y), prime: ell.to_string() });
    }
    let exp = (ell * ell - 1u32) / 3u32;
    let s = z.pow(&exp, ell);
    let tau = Fp2Elem::new(0, 1, ell);
    if s == Fp2Elem::one() {
        Ok(CubicSymbolValue::new(0))
    } else if s == tau {
        Ok(CubicSymbolValue::new(1))
    } else if s == tau.mul(&tau, ell) {
        Ok(CubicSymbolValue::new(2))
    } else {
        Err(Error::InternalInconsistency(format!("{}+{}τ has no cube class mod {ell}", z.x, z.y)))
    }
}

/// An element of Z[ζ]/9, coordinates in 0..9.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mod9Elem {
    pub re: u8,
    pub zc: u8,
}

impl Mod9Elem {
    pub fn new(re: i64, zc: i64) -> Self {
        Mod9Elem { re: re.rem_euclid(9) as u8, zc: zc.rem_euclid(9) as u8 }
    }

    pub const ONE: Self = Mod9Elem { re: 1, zc: 0 };

    /// Units are the classes not divisible by 1 − ζ, i.e. re + zc ≢ 0 (mod 3).
    pub fn is_unit(self) -> bool {
        (self.re + self.zc) % 3 != 0
    }

    pub fn pow(self, mut exp: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mod9_mul(acc, base);
            }
            base = mod9_mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for Mod9Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}ζ (mod 9)", self.re, self.zc)
    }
}

pub fn mod9_reduce(z: &EisensteinInt) -> Mod9Elem {
    let nine = BigInt::from(9);
    let re = z.re.mod_floor(&nine).to_u32_digits().1.first().copied().unwrap_or(0);
    let zc = z.zc.mod_floor(&nine).to_u32_digits().1.first().copied().unwrap_or(0);
    Mod9Elem { re: re as u8, zc: zc as u8 }
}

pub fn mod9_mul(a: Mod9Elem, b: Mod9Elem) -> Mod9Elem {
    let (a0, a1, b0, b1) = (a.re as i64, a.zc as i64, b.re as i64, b.zc as i64);
    let bd = a1 * b1;
    Mod9Elem::new(a0 * b0 - bd, a0 * b1 + a1 * b0 - bd)
}

/// Inverse of a unit by exhaustive search over the 81 residues.
pub fn mod9_inv(a: Mod9Elem) -> Result<Mod9Elem> {
    if !a.is_unit() {
        return Err(Error::NotInvertible(a.to_string()));
    }
    all_mod9()
        .find(|&b| mod9_mul(a, b) == Mod9Elem::ONE)
        .ok_or_else(|| Error::InternalInconsistency(format!("unit {a} has no inverse")))
}

fn all_mod9() -> impl Iterator<Item = Mod9Elem> {
    (0..9u8).flat_map(|re| (0..9u8).map(move |zc| Mod9Elem { re, zc }))
}

/// {u³ : u a unit of Z[ζ]/9}, computed once by enumeration.
pub fn unit_cubes_mod9() -> &'static BTreeSet<Mod9Elem> {
    static CUBES: OnceLock<BTreeSet<Mod9Elem>> = OnceLock::new();
    CUBES.get_or_init(|| all_mod9().filter(|u| u.is_unit()).map(|u| u.pow(3)).collect())
}

pub fn is_unit_cube_mod9(u: Mod9Elem) -> Result<bool> {
    if !u.is_unit() {
        return Err(Error::NotInvertible(u.to_string()));
    }
    Ok(unit_cubes_mod9().contains(&u))
}

/// 1 + (1 − ζ)³ reduced mod 9.
pub fn one_plus_p_cubed() -> Mod9Elem {
    mod9_reduce(&(&EisensteinInt::one() + &EisensteinInt::p().pow(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime_u64;
    use crate::eisenstein::{primary_associate, split_prime};
    use proptest::prelude::*;

    fn big(m: i64) -> BigInt {
        BigInt::from(m)
    }

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    fn split_primes_below(limit: u64) -> Vec<u64> {
        (7..limit).filter(|&m| m % 3 == 1 && is_prime_u64(m)).collect()
    }

    #[test]
    fn cube_mod_ell_examples() {
        assert!(is_cube_mod_ell(&big(29), &big(37)).unwrap());
        assert!(!is_cube_mod_ell(&big(317), &big(19)).unwrap());
        assert!(is_cube_mod_ell(&big(5), &big(11)).unwrap());
        assert!(is_cube_mod_ell(&big(14), &big(7)).is_err());
    }

    #[test]
    fn cube_subgroup_sizes() {
        for ell in (2u64..200).filter(|&m| m != 3 && is_prime_u64(m)) {
            let count = (1..ell).filter(|&a| is_cube_mod_ell(&big(a as i64), &big(ell as i64)).unwrap()).count() as u64;
            // oracle: the set of actual cubes
            let cubes: BTreeSet<u64> = (1..ell).map(|a| a * a % ell * a % ell).collect();
            assert_eq!(count, cubes.len() as u64, "ell = {ell}");
            let expected = if ell % 3 == 1 { (ell - 1) / 3 } else { ell - 1 };
            assert_eq!(count, expected, "ell = {ell}");
        }
    }

    #[test]
    fn symbol_examples() {
        let s37 = split_prime(&big(37), None).unwrap();
        assert!(cubic_symbol(&EisensteinInt::from(29), &s37.pi).unwrap().is_one());
        let s7 = split_prime(&big(7), None).unwrap();
        // cubes in F_7 are {1, 6}
        assert!(!cubic_symbol(&EisensteinInt::from(2), &s7.pi).unwrap().is_one());
        assert!(cubic_symbol(&EisensteinInt::from(7), &s7.pi).is_err());
        assert!(cubic_symbol(&EisensteinInt::from(2), &e(2, 0)).is_err());
    }

    #[test]
    fn symbol_of_zeta_matches_definition() {
        // (ζ/π)₃ = ζ^((ℓ−1)/3)
        for ell in split_primes_below(500) {
            let s = split_prime(&big(ell as i64), None).unwrap();
            let v = cubic_symbol(&EisensteinInt::zeta(), &s.pi).unwrap();
            assert_eq!(v, CubicSymbolValue::new(((ell - 1) / 3) as i64));
        }
    }

    #[test]
    fn symbol_agrees_with_rational_cube_test() {
        for ell in split_primes_below(200) {
            let s = split_prime(&big(ell as i64), None).unwrap();
            for a in 1..ell as i64 {
                let v = cubic_symbol(&EisensteinInt::from(a), &s.pi).unwrap();
                assert_eq!(v.is_one(), is_cube_mod_ell(&big(a), &big(ell as i64)).unwrap());
            }
        }
    }

    #[test]
    fn conjugation_negates_symbol() {
        for ell in split_primes_below(200) {
            let s = split_prime(&big(ell as i64), None).unwrap();
            for (a, b) in [(2, 5), (-3, 7), (11, -1), (1, 1), (4, 9), (13, 2)] {
                let alpha = e(a, b);
                let Ok(v) = cubic_symbol(&alpha, &s.pi) else { continue };
                let w = cubic_symbol(&alpha.conj(), &s.pi_conj).unwrap();
                assert_eq!(w, -v, "alpha = {alpha}, ell = {ell}");
            }
        }
    }

    #[test]
    fn reciprocity_for_primary_split_primes() {
        let primes: Vec<_> = split_primes_below(200)
            .into_iter()
            .flat_map(|ell| {
                let s = split_prime(&big(ell as i64), None).unwrap();
                [s.pi, s.pi_conj]
            })
            .collect();
        for p in &primes {
            for q in &primes {
                if p.norm() != q.norm() {
                    assert_eq!(cubic_symbol(p, q).unwrap(), cubic_symbol(q, p).unwrap(), "{p} vs {q}");
                }
            }
        }
    }

    #[test]
    fn symbol_is_associate_sensitive_only_through_units() {
        // Replacing π by an associate does not change the residue field or
        // the symbol.
        let s = split_prime(&big(19), None).unwrap();
        for u in EisensteinInt::units() {
            let pi = &u * &s.pi;
            for a in 1..19 {
                assert_eq!(
                    cubic_symbol(&EisensteinInt::from(a), &pi).unwrap(),
                    cubic_symbol(&EisensteinInt::from(a), &s.pi).unwrap()
                );
            }
        }
        assert!(primary_associate(&s.pi).unwrap().is_primary());
    }

    #[test]
    fn fp2_f4_only_one_is_a_cube() {
        // F₄* has order 3, so cubing kills it
        let two = big(2);
        assert!(is_cube_in_fp2(&Fp2Elem::new(1, 0, &two), &two).unwrap());
        for (x, y) in [(0, 1), (1, 1)] {
            assert!(!is_cube_in_fp2(&Fp2Elem::new(x, y, &two), &two).unwrap());
        }
        assert!(is_cube_in_fp2(&Fp2Elem::new(0, 0, &two), &two).is_err());
        assert!(is_cube_in_fp2(&Fp2Elem::new(1, 0, &big(7)), &big(7)).is_err());
    }

    #[test]
    fn fp2_exhaustive_against_cube_set() {
        for ell in [5i64, 11, 17, 23, 29] {
            let l = big(ell);
            let elems: Vec<Fp2Elem> = (0..ell)
                .flat_map(|x| (0..ell).map(move |y| (x, y)))
                .filter(|&(x, y)| (x, y) != (0, 0))
                .map(|(x, y)| Fp2Elem::new(x, y, &l))
                .collect();
            let cubes: BTreeSet<(BigInt, BigInt)> = elems
                .iter()
                .map(|z| {
                    let c = z.mul(z, &l).mul(z, &l);
                    (c.x, c.y)
                })
                .collect();
            assert_eq!(cubes.len() as i64, (ell * ell - 1) / 3);
            for z in &elems {
                assert_eq!(is_cube_in_fp2(z, &l).unwrap(), cubes.contains(&(z.x.clone(), z.y.clone())));
            }
            // τ lies in F_ℓ² but every element of F_ℓ* is a cube
            let tau = Fp2Elem::new(0, 1, &l);
            assert_eq!(is_cube_in_fp2(&tau, &l).unwrap(), cubes.contains(&(tau.x.clone(), tau.y.clone())));
            for a in 1..ell {
                assert!(is_cube_in_fp2(&Fp2Elem::new(a, 0, &l), &l).unwrap());
            }
        }
    }

    #[test]
    fn fp2_tau_for_five() {
        // (25 − 1)/3 = 8 and τ has order 3, so τ⁸ = τ² ≠ 1.
        let l = big(5);
        assert!(!is_cube_in_fp2(&Fp2Elem::new(0, 1, &l), &l).unwrap());
        assert_eq!(cube_class_fp2(&Fp2Elem::new(0, 1, &l), &l).unwrap(), CubicSymbolValue::new(2));
    }

    #[test]
    fn mod9_examples() {
        assert_eq!(one_plus_p_cubed(), Mod9Elem::new(7, 3));
        let z = mod9_reduce(&EisensteinInt::zeta());
        assert_eq!(mod9_mul(z, mod9_mul(z, z)), Mod9Elem::ONE);
        assert_eq!(mod9_inv(Mod9Elem::new(2, 0)).unwrap(), Mod9Elem::new(5, 0));
        assert!(mod9_inv(Mod9Elem::new(3, 0)).is_err());
        assert_eq!(mod9_reduce(&e(-1, 19)), Mod9Elem::new(8, 1));
    }

    #[test]
    fn mod9_unit_cubes() {
        let units = all_mod9().filter(|u| u.is_unit()).count();
        assert_eq!(units, 54);
        let cubes = unit_cubes_mod9();
        assert_eq!(units / cubes.len(), 27);
        let expected: BTreeSet<_> = [Mod9Elem::new(1, 0), Mod9Elem::new(-1, 0)].into_iter().collect();
        assert_eq!(*cubes, expected);
        assert!(is_unit_cube_mod9(Mod9Elem::ONE).unwrap());
        assert!(!is_unit_cube_mod9(mod9_reduce(&EisensteinInt::zeta())).unwrap());
        assert!(!is_unit_cube_mod9(Mod9Elem::new(4, 0)).unwrap());
        assert!(is_unit_cube_mod9(Mod9Elem::new(3, 3)).is_err());
    }

    proptest! {
        #[test]
        fn symbol_is_multiplicative(a in -500i64..500, b in -500i64..500, c in -500i64..500, d in -500i64..500,
                                    idx in 0usize..20) {
            let ell = split_primes_below(200)[idx];
            let s = split_prime(&big(ell as i64), None).unwrap();
            let (x, y) = (e(a, b), e(c, d));
            if let (Ok(u), Ok(v)) = (cubic_symbol(&x, &s.pi), cubic_symbol(&y, &s.pi)) {
                prop_assert_eq!(cubic_symbol(&(&x * &y), &s.pi).unwrap(), u + v);
                prop_assert!(cubic_symbol(&x.pow(3), &s.pi).unwrap().is_one());
            }
        }

        #[test]
        fn constructed_cubes_pass(x in 0i64..1000, y in 0i64..1000, idx in 0usize..5) {
            let ell = [2i64, 5, 11, 17, 23][idx];
            let l = big(ell);
            let w = Fp2Elem::new(x, y, &l);
            prop_assume!(!w.is_zero());
            let c = w.mul(&w, &l).mul(&w, &l);
            prop_assert!(is_cube_in_fp2(&c, &l).unwrap());
        }

        #[test]
        fn mod9_reduce_is_a_ring_map(a in -10_000i64..10_000, b in -10_000i64..10_000,
                                     c in -10_000i64..10_000, d in -10_000i64..10_000) {
            let (x, y) = (e(a, b), e(c, d));
            prop_assert_eq!(mod9_reduce(&(&x * &y)), mod9_mul(mod9_reduce(&x), mod9_reduce(&y)));
        }
    }
}

//! Search for rational solutions of x³ + y³ = n and their images on
//! E_{−432n²}: v² = u³ − 432n².
//!
//! A witness is a triple (a, b, c) with a³ + b³ = n·c³. For each
//! denominator c the search is exhaustive: d = a + b must be a positive
//! divisor of N = n·c³ with d³ ≤ 4N, and then a, b are the roots of
//! X² − dX + (d² − N/d)/3. So "no witness up to B" means no solution with
//! denominator at most B exists.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factorize;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeSumWitness {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl CubeSumWitness {
    /// a³ + b³ = n·c³, checked by direct expansion.
    pub fn verifies(&self, n: &BigInt) -> bool {
        self.a.pow(3) + self.b.pow(3) == n * self.c.pow(3)
    }
}

impl fmt::Display for CubeSumWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{})^3 + ({}/{})^3", self.a, self.c, self.b, self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub u: BigRational,
    pub v: BigRational,
}

impl CurvePoint {
    /// v² = u³ − 432n², exactly.
    pub fn on_curve(&self, n: &BigInt) -> bool {
        let rhs = self.u.pow(3) - BigRational::from_integer(BigInt::from(432) * n * n);
        self.v.pow(2) == rhs
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// The witness with the smallest denominator c ≤ `bound`, and among those
/// the largest a. Returned witnesses are primitive with a ≥ b.
pub fn search_cube_sum(n: &BigInt, bound: u64) -> Option<CubeSumWitness> {
    if n <= &BigInt::zero() {
        return None;
    }
    let n_factors = factorize(n);
    (1..=bound).find_map(|c| {
        let mut factors = n_factors.clone();
        for (p, e) in factorize(&BigInt::from(c)) {
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some(entry) => entry.1 += 3 * e,
                None => factors.push((p, 3 * e)),
            }
        }
        let c = BigInt::from(c);
        let nc3 = n * c.pow(3);
        best_for_denominator(&nc3, &factors)
            .into_iter()
            .filter(|(a, b)| a.gcd(b).gcd(&c) == BigInt::from(1))
            .max_by(|x, y| x.0.cmp(&y.0))
            .map(|(a, b)| CubeSumWitness { a, b, c: c.clone() })
    })
}

/// All (a, b), a ≥ b, with a³ + b³ = N, given the factorization of N.
fn best_for_denominator(big_n: &BigInt, factors: &[(BigInt, u32)]) -> Vec<(BigInt, BigInt)> {
    let four_n = big_n * 4u32;
    if let (Some(n128), Some(_)) = (big_n.to_u128(), (&four_n * 4u32).to_u128()) {
        let small: Option<Vec<(u128, u32)>> = factors.iter().map(|(p, e)| p.to_u128().map(|p| (p, *e))).collect();
        if let Some(small) = small {
            return pairs_u128(n128, &small)
                .into_iter()
                .map(|(a, b)| (BigInt::from(a), BigInt::from(b)))
                .collect();
        }
    }
    pairs_big(big_n, factors)
}

fn pairs_u128(n: u128, factors: &[(u128, u32)]) -> Vec<(i128, i128)> {
    let limit = (4 * n).cbrt() + 1;
    let mut out = Vec::new();
    for_each_divisor(factors, 0, 1u128, &|d: &u128, p: &u128| d.checked_mul(*p).filter(|&x| x <= limit), &mut |d| {
        if d * d * d > 4 * n {
            return;
        }
        let q = n / d;
        // 3·disc = 4N/d − d²
        let lhs = 4 * q;
        if lhs < d * d || (lhs - d * d) % 3 != 0 {
            return;
        }
        let disc = (lhs - d * d) / 3;
        let s = disc.sqrt();
        if s * s != disc || (d + s) % 2 != 0 {
            return;
        }
        let a = ((d + s) / 2) as i128;
        let b = d as i128 - a;
        out.push((a, b));
    });
    out
}

fn pairs_big(n: &BigInt, factors: &[(BigInt, u32)]) -> Vec<(BigInt, BigInt)> {
    let four_n = n * 4u32;
    let limit = four_n.cbrt() + 1u32;
    let mut out = Vec::new();
    let step = |d: &BigInt, p: &BigInt| Some(d * p).filter(|x| x <= &limit);
    for_each_divisor(factors, 0, BigInt::from(1), &step, &mut |d: BigInt| {
        if d.pow(3) > four_n {
            return;
        }
        let lhs = (n / &d) * 4u32 - &d * &d;
        if lhs < BigInt::zero() || !(&lhs % 3u32).is_zero() {
            return;
        }
        let disc = lhs / 3u32;
        let s = disc.sqrt();
        if &s * &s != disc || (&d + &s).is_odd() {
            return;
        }
        let a: BigInt = (&d + &s) / 2u32;
        let b = &d - &a;
        out.push((a, b));
    });
    out
}

/// Visit every divisor of ∏ pᵢ^eᵢ that `step` allows, pruning a branch as
/// soon as `step` returns `None` (divisors only grow along a branch).
fn for_each_divisor<T: Clone>(
    factors: &[(T, u32)],
    idx: usize,
    d: T,
    step: &dyn Fn(&T, &T) -> Option<T>,
    visit: &mut dyn FnMut(T),
) {
    if idx == factors.len() {
        visit(d);
        return;
    }
    let (p, e) = &factors[idx];
    let mut cur = d;
    for k in 0..=*e {
        for_each_divisor(factors, idx + 1, cur.clone(), step, visit);
        if k == *e {
            break;
        }
        match step(&cur, p) {
            Some(next) => cur = next,
            None => break,
        }
    }
}

/// (a/c)³ + (b/c)³ = n ↦ (u, v) = (12nc/(a+b), 36n(a−b)/(a+b)).
pub fn witness_to_point(w: &CubeSumWitness, n: &BigInt) -> Result<CurvePoint> {
    let s = &w.a + &w.b;
    if s.is_zero() {
        return Err(Error::DegenerateWitness);
    }
    let u = BigRational::new(BigInt::from(12) * n * &w.c, s.clone());
    let v = BigRational::new(BigInt::from(36) * n * (&w.a - &w.b), s);
    Ok(CurvePoint { u, v })
}

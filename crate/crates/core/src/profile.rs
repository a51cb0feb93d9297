//! Validation and classification of n = ℓ₁^e₁ · ℓ₂^e₂.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use crate::arith::is_prime;
use crate::arith::{factorize, mod9};
use crate::eisenstein::{primary_associate, split_prime, EisensteinInt, PrimeSplitting};
use crate::error::{Error, Result};
use crate::modular::{cubic_symbol, CubicSymbolValue};

/// One prime factor ℓ^e of n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub ell: BigInt,
    pub e: u32,
    pub mod9: u8,
    /// Present exactly when ℓ ≡ 1 (mod 3).
    pub splitting: Option<PrimeSplitting>,
}

impl PrimePower {
    /// Builds the record for ℓ^e, splitting ℓ when ℓ ≡ 1 (mod 3).
    pub fn new(ell: BigInt, e: u32, seed: Option<u64>) -> Result<Self> {
        let splitting = if &ell % 3u32 == BigInt::one() { Some(split_prime(&ell, seed)?) } else { None };
        let mod9 = mod9(&ell);
        Ok(PrimePower { ell, e, mod9, splitting })
    }

    pub fn is_split(&self) -> bool {
        self.splitting.is_some()
    }

    /// Number of primes of Z[ζ] above ℓ.
    pub fn places(&self) -> usize {
        if self.is_split() {
            2
        } else {
            1
        }
    }

    pub fn value(&self) -> BigInt {
        num_traits::pow(self.ell.clone(), self.e as usize)
    }
}

/// Cubic residue symbols consulted by the closed-form dimension.
///
/// Symbols are always evaluated on primary associates, so they do not
/// depend on which associate of π the profile happens to store.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSymbols {
    /// (ℓ₂/π_ℓ₁)₃ when exactly one prime splits.
    pub ell2_mod_pi1: Option<CubicSymbolValue>,
    /// (π_ℓ₁/π_ℓ₂)₃ when both primes split.
    pub pi1_mod_pi2: Option<CubicSymbolValue>,
    /// (π′_ℓ₁/π_ℓ₂)₃ when both primes split.
    pub pi1_conj_mod_pi2: Option<CubicSymbolValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPrimeProfile {
    pub n: BigInt,
    /// ℓ₁ then ℓ₂. A split prime comes first when exactly one prime splits;
    /// otherwise ascending, except that ℓ₁ℓ₂² with both split is relabeled
    /// to the ℓ₁²ℓ₂ form.
    pub primes: [PrimePower; 2],
    pub k1: u32,
    pub k2: u32,
    pub n_mod_9: u8,
    /// True when the two split primes were swapped to reach the ℓ₁²ℓ₂ form.
    pub relabeled: bool,
    pub symbols: ProfileSymbols,
}

/// Parses a decimal integer, rejecting anything else.
pub fn parse_n(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::NotAnInteger(s.to_string()))
}

/// Validates n and builds its profile using the default splitting seed.
pub fn factor_two_primes(n: &BigInt) -> Result<TwoPrimeProfile> {
    factor_two_primes_seeded(n, None)
}

pub fn factor_two_primes_seeded(n: &BigInt, seed: Option<u64>) -> Result<TwoPrimeProfile> {
    if n <= &BigInt::one() {
        return Err(Error::TooSmall(n.clone()));
    }
    let factors = factorize(n);
    if let Some((p, e)) = factors.iter().find(|(_, e)| *e >= 3) {
        return Err(Error::NotCubeFree { n: n.clone(), prime: p.clone(), exponent: *e });
    }
    if factors.len() != 2 {
        return Err(Error::WrongFactorCount { n: n.clone(), count: factors.len() });
    }
    if factors.iter().any(|(p, _)| *p == BigInt::from(3)) {
        return Err(Error::DivisibleByThree(n.clone()));
    }
    let mut powers = factors
        .into_iter()
        .map(|(p, e)| PrimePower::new(p, e, seed))
        .collect::<Result<Vec<_>>>()?;
    // ascending already; put a lone split prime first
    let k1 = powers.iter().filter(|p| p.is_split()).count() as u32;
    if k1 == 1 && !powers[0].is_split() {
        powers.swap(0, 1);
    }
    let mut relabeled = false;
    if k1 == 2 && powers[0].e == 1 && powers[1].e == 2 {
        powers.swap(0, 1);
        relabeled = true;
    }
    let [first, second]: [PrimePower; 2] = powers.try_into().expect("two prime powers");
    TwoPrimeProfile::from_parts(n.clone(), [first, second], relabeled)
}

impl TwoPrimeProfile {
    /// Assembles a profile from already ordered prime powers and computes
    /// the symbol data. The caller is responsible for the ordering.
    pub fn from_parts(n: BigInt, primes: [PrimePower; 2], relabeled: bool) -> Result<Self> {
        let k1 = primes.iter().filter(|p| p.is_split()).count() as u32;
        let symbols = compute_symbols(&primes)?;
        Ok(TwoPrimeProfile { n_mod_9: mod9(&n), n, k1, k2: 2 - k1, primes, relabeled, symbols })
    }

    /// |S_n|: the number of primes of Z[ζ] dividing n.
    pub fn s_n_size(&self) -> usize {
        self.primes.iter().map(PrimePower::places).sum()
    }

    pub fn exponents(&self) -> (u32, u32) {
        (self.primes[0].e, self.primes[1].e)
    }

    pub fn n_is_pm1_mod_9(&self) -> bool {
        matches!(self.n_mod_9, 1 | 8)
    }

    /// The same n with every splitting transformed by `f`, symbols
    /// recomputed. Used to check that nothing depends on the choice of π.
    pub fn map_splittings(&self, mut f: impl FnMut(&PrimeSplitting) -> PrimeSplitting) -> Result<Self> {
        let mut primes = self.primes.clone();
        for p in primes.iter_mut() {
            if let Some(s) = &p.splitting {
                p.splitting = Some(f(s));
            }
        }
        Self::from_parts(self.n.clone(), primes, self.relabeled)
    }

    /// Shape label such as "l1^2*l2".
    pub fn shape(&self) -> String {
        let part = |i: usize| match self.primes[i].e {
            1 => format!("l{}", i + 1),
            e => format!("l{}^{e}", i + 1),
        };
        format!("{}*{}", part(0), part(1))
    }
}

fn compute_symbols(primes: &[PrimePower; 2]) -> Result<ProfileSymbols> {
    let primary = |z: &EisensteinInt| primary_associate(z);
    Ok(match (&primes[0].splitting, &primes[1].splitting) {
        (Some(s1), None) => ProfileSymbols {
            ell2_mod_pi1: Some(cubic_symbol(&EisensteinInt::from_int(primes[1].ell.clone()), &s1.pi)?),
            ..Default::default()
        },
        (Some(s1), Some(s2)) => {
            let pi2 = primary(&s2.pi)?;
            ProfileSymbols {
                pi1_mod_pi2: Some(cubic_symbol(&primary(&s1.pi)?, &pi2)?),
                pi1_conj_mod_pi2: Some(cubic_symbol(&primary(&s1.pi_conj)?, &pi2)?),
                ..Default::default()
            }
        }
        _ => ProfileSymbols::default(),
    })
}

impl fmt::Display for TwoPrimeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {} ({}), n mod 9 = {}", self.n, self.shape(), self.n_mod_9)?;
        for (i, p) in self.primes.iter().enumerate() {
            write!(f, "  l{} = {} ^{}  mod 9 = {}", i + 1, p.ell, p.e, p.mod9)?;
            match &p.splitting {
                Some(s) => writeln!(f, "  split: pi = {}, pi' = {}", s.pi, s.pi_conj)?,
                None => writeln!(f, "  inert")?,
            }
        }
        write!(f, "  k1 = {}, k2 = {}, |S_n| = {}", self.k1, self.k2, self.s_n_size())?;
        if self.relabeled {
            write!(f, " (primes swapped to the l1^2*l2 form)")?;
        }
        if let Some(s) = self.symbols.ell2_mod_pi1 {
            write!(f, "\n  (l2/pi_l1)_3 = {s}")?;
        }
        if let (Some(a), Some(b)) = (self.symbols.pi1_mod_pi2, self.symbols.pi1_conj_mod_pi2) {
            write!(f, "\n  (pi_l1/pi_l2)_3 = {a}, (pi'_l1/pi_l2)_3 = {b}")?;
        }
        Ok(())
    }
}

/// Every admissible n = ℓ₁^e₁ ℓ₂^e₂ with primes ≠ 3 up to `max_prime` and
/// e ∈ {1, 2}, sorted.
pub fn admissible_two_prime_values(max_prime: u64) -> Vec<BigInt> {
    let primes: Vec<u64> = (2..=max_prime).filter(|&p| p != 3 && crate::arith::is_prime_u64(p)).collect();
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            for (a, b) in [(1u32, 1u32), (2, 1), (1, 2), (2, 2)] {
                out.push(BigInt::from(p).pow(a) * BigInt::from(q).pow(b));
            }
        }
    }
    out.sort();
    out
}

/// Convenience for callers holding a small n.
pub fn profile_of(n: u64) -> Result<TwoPrimeProfile> {
    factor_two_primes(&BigInt::from(n))
}

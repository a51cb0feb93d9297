//! The F₃-dimension of the φ-Selmer group of E_{16n²} over Q(ζ).
//!
//! Two independent routes:
//!
//! * [`dim_selmer_closed`] dispatches on the residue classes of the primes
//!   mod 9 and on cubic residue symbols.
//! * [`dim_selmer_direct`] enumerates every class x of S_n-units modulo
//!   cubes, written as an exponent vector over `[ζ, g₁, …, g_m]`, and keeps
//!   those whose pair (x̄², x̄) lies in the local image at each prime q | n
//!   and at 1 − ζ. Primes outside S_n ∪ {1 − ζ} impose no condition on
//!   S_n-units and are not visited.
//!
//! At q | n the local image is generated by n̄, so the test is whether
//! x·n^(−j) is a cube in K_q for some j. At 1 − ζ the image is generated by
//! 1 + (1 − ζ)³ together with n (if n ≢ ±1 mod 9) or ζ (if n ≡ ±1 mod 9);
//! membership is decided modulo 9.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::mod9;
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::modular::{
    cube_class_fp2, is_unit_cube_mod9, mod9_inv, mod9_mul, mod9_reduce, one_plus_p_cubed, CubicSymbolValue, Fp2Elem,
    Mod9Elem, SplitResidueMap,
};
use crate::profile::{PrimePower, TwoPrimeProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    ClosedForm,
    DirectEnumeration,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed",
            Method::DirectEnumeration => "direct",
        })
    }
}

/// A generator of the S_n-units modulo ±1: ζ, an inert rational prime, or
/// a prime of Z[ζ] above a split prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SUnitGenerator {
    pub value: EisensteinInt,
    pub label: String,
}

/// The class of the pair (x̄², x̄), x = ζ^a₀ ∏ gᵢ^aᵢ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SelmerBasisElement {
    pub exponents: Vec<u8>,
    pub label: String,
}

/// Pass/fail of every candidate at every place (direct method only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectTrace {
    /// Place names; the last one is always 1 − ζ.
    pub places: Vec<String>,
    pub candidates: Vec<CandidateTrace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateTrace {
    pub exponents: Vec<u8>,
    /// Indexed like `DirectTrace::places`.
    pub passes: Vec<bool>,
}

impl CandidateTrace {
    pub fn accepted(&self) -> bool {
        self.passes.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerReport {
    pub dim: u32,
    pub method: Method,
    pub generators: Vec<String>,
    /// Echelonized basis, starting with the class of n. Empty for the
    /// closed form.
    pub basis: Vec<SelmerBasisElement>,
    /// Which case of the closed form applied.
    pub rule: Option<String>,
    pub trace: Option<DirectTrace>,
}

impl DirectTrace {
    pub fn render(&self) -> String {
        let mut out = format!("candidate  | {}\n", self.places.join(" | "));
        for c in &self.candidates {
            let exps: String = c.exponents.iter().map(|e| e.to_string()).collect();
            let marks: Vec<&str> = c.passes.iter().map(|&p| if p { "pass" } else { "FAIL" }).collect();
            out.push_str(&format!("{exps:<10} | {}{}\n", marks.join(" | "), if c.accepted() { "  <- accepted" } else { "" }));
        }
        out
    }
}

/// Generators of the S_n-units modulo ±1, ordered `[ζ, g₁, …, g_m]`.
///
/// Inert ℓ contributes ℓ itself; a split ℓ contributes π then π′.
pub fn sunit_generators(profile: &TwoPrimeProfile) -> Vec<SUnitGenerator> {
    generators_for(&profile.primes)
}

fn generators_for(primes: &[PrimePower]) -> Vec<SUnitGenerator> {
    let mut gens = vec![SUnitGenerator { value: EisensteinInt::zeta(), label: "ζ".into() }];
    for p in primes {
        match &p.splitting {
            Some(s) => {
                for pi in [&s.pi, &s.pi_conj] {
                    gens.push(SUnitGenerator { value: pi.clone(), label: format!("({pi})") });
                }
            }
            None => gens.push(SUnitGenerator { value: EisensteinInt::from_int(p.ell.clone()), label: p.ell.to_string() }),
        }
    }
    gens
}

/// Strip the largest power of `uniformizer` dividing `z`.
fn split_off(z: &EisensteinInt, uniformizer: &EisensteinInt) -> (u32, EisensteinInt) {
    let mut v = 0;
    let mut rest = z.clone();
    while let Some(q) = rest.div_exact(uniformizer) {
        rest = q;
        v += 1;
    }
    (v, rest)
}

enum Residue {
    Split(SplitResidueMap),
    Inert(BigInt),
}

impl Residue {
    fn class(&self, unit: &EisensteinInt) -> Result<CubicSymbolValue> {
        match self {
            Residue::Split(map) => map.symbol(unit),
            Residue::Inert(ell) => cube_class_fp2(&Fp2Elem::reduce(unit, ell), ell),
        }
    }
}

/// Data at one prime q | n: valuation mod 3 and residue cube class of the
/// unit part of every generator and of n, relative to a fixed uniformizer.
struct PlaceData {
    name: String,
    gen_val: Vec<u8>,
    gen_class: Vec<CubicSymbolValue>,
    n_val: u8,
    n_class: CubicSymbolValue,
}

impl PlaceData {
    fn new(name: String, uniformizer: &EisensteinInt, residue: Residue, gens: &[SUnitGenerator], n: &BigInt) -> Result<Self> {
        let mut gen_val = Vec::with_capacity(gens.len());
        let mut gen_class = Vec::with_capacity(gens.len());
        for g in gens {
            let (v, unit) = split_off(&g.value, uniformizer);
            gen_val.push((v % 3) as u8);
            gen_class.push(residue.class(&unit)?);
        }
        let (v, unit) = split_off(&EisensteinInt::from_int(n.clone()), uniformizer);
        if v == 0 {
            return Err(Error::InternalInconsistency(format!("{name} does not divide n = {n}")));
        }
        Ok(PlaceData { name, gen_val, gen_class, n_val: (v % 3) as u8, n_class: residue.class(&unit)? })
    }

    /// x ∈ ⟨n⟩·K_q*³ for the candidate with the given exponents.
    fn accepts(&self, exps: &[u8]) -> bool {
        let val: u32 = exps.iter().zip(&self.gen_val).map(|(&a, &v)| a as u32 * v as u32).sum();
        let class = exps
            .iter()
            .zip(&self.gen_class)
            .fold(CubicSymbolValue::ONE, |acc, (&a, &c)| acc + c.scale(a as i64));
        (0..3u32).any(|j| {
            (val + 2 * j * self.n_val as u32) % 3 == 0 && (class + -self.n_class.scale(j as i64)).is_one()
        })
    }
}

/// The local image at 1 − ζ, as cosets of the unit cubes mod 9.
struct PData {
    gen_mod9: Vec<Mod9Elem>,
    /// f^j · (1 + (1 − ζ)³)^k inverted, for j, k ∈ {0, 1, 2}.
    inverse_image_gens: Vec<Mod9Elem>,
}

impl PData {
    fn new(gens: &[SUnitGenerator], n: &BigInt) -> Result<Self> {
        let n9 = mod9(n);
        let f = if n9 == 1 || n9 == 8 { mod9_reduce(&EisensteinInt::zeta()) } else { Mod9Elem::new(n9 as i64, 0) };
        let w = one_plus_p_cubed();
        let mut inverse_image_gens = Vec::with_capacity(9);
        for j in 0..3 {
            for k in 0..3 {
                inverse_image_gens.push(mod9_inv(mod9_mul(f.pow(j), w.pow(k)))?);
            }
        }
        let gen_mod9 = gens.iter().map(|g| mod9_reduce(&g.value)).collect();
        Ok(PData { gen_mod9, inverse_image_gens })
    }

    fn accepts(&self, exps: &[u8]) -> Result<bool> {
        let x = exps.iter().zip(&self.gen_mod9).fold(Mod9Elem::ONE, |acc, (&a, &g)| mod9_mul(acc, g.pow(a as u32)));
        for h in &self.inverse_image_gens {
            if is_unit_cube_mod9(mod9_mul(x, *h))? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// All local data needed to decide Selmer membership of S_n-unit classes.
pub struct LocalConditions {
    n: BigInt,
    generators: Vec<SUnitGenerator>,
    places: Vec<PlaceData>,
    p: PData,
}

impl LocalConditions {
    pub fn new(profile: &TwoPrimeProfile) -> Result<Self> {
        Self::for_primes(&profile.n, &profile.primes)
    }

    /// Works for any cube-free n prime to 3, given its prime powers.
    pub fn for_primes(n: &BigInt, primes: &[PrimePower]) -> Result<Self> {
        let generators = generators_for(primes);
        let mut places = Vec::new();
        for p in primes {
            match &p.splitting {
                Some(s) => {
                    for pi in [&s.pi, &s.pi_conj] {
                        let map = SplitResidueMap::new(pi)?;
                        places.push(PlaceData::new(format!("({pi})"), pi, Residue::Split(map), &generators, n)?);
                    }
                }
                None => {
                    let ell = EisensteinInt::from_int(p.ell.clone());
                    places.push(PlaceData::new(p.ell.to_string(), &ell, Residue::Inert(p.ell.clone()), &generators, n)?);
                }
            }
        }
        let p = PData::new(&generators, n)?;
        Ok(LocalConditions { n: n.clone(), generators, places, p })
    }

    pub fn generators(&self) -> &[SUnitGenerator] {
        &self.generators
    }

    pub fn place_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.places.iter().map(|p| p.name.clone()).collect();
        names.push("(1-ζ)".into());
        names
    }

    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    pub fn at_q(&self, exps: &[u8], q: usize) -> bool {
        self.places[q].accepts(exps)
    }

    pub fn at_p(&self, exps: &[u8]) -> Result<bool> {
        self.p.accepts(exps)
    }

    /// Exponent vector of an S_n-unit (modulo ±1 and cubes). All generators
    /// after ζ are pairwise non-associate primes, so this is unique.
    pub fn exponent_vector(&self, z: &EisensteinInt) -> Result<Vec<u8>> {
        let mut exps = vec![0u8; self.generators.len()];
        let mut rest = z.clone();
        for (i, g) in self.generators.iter().enumerate().skip(1) {
            let (v, r) = split_off(&rest, &g.value);
            exps[i] = (v % 3) as u8;
            rest = r;
        }
        let zeta = EisensteinInt::zeta();
        let k = (0..3u32)
            .find(|&k| rest == zeta.pow(k) || rest == -zeta.pow(k))
            .ok_or_else(|| Error::InternalInconsistency(format!("{z} is not an S-unit for n = {}", self.n)))?;
        exps[0] = k as u8;
        Ok(exps)
    }

    pub fn n_vector(&self) -> Result<Vec<u8>> {
        self.exponent_vector(&EisensteinInt::from_int(self.n.clone()))
    }

    fn label(&self, exps: &[u8], n_vec: &[u8]) -> String {
        if exps == n_vec {
            return "(n^2, n)".into();
        }
        let factors: Vec<String> = exps
            .iter()
            .zip(&self.generators)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, g)| if a == 1 { g.label.clone() } else { format!("{}^{a}", g.label) })
            .collect();
        let x = factors.join("*");
        if x.is_empty() {
            "(1, 1)".into()
        } else {
            format!("(x^2, x), x = {x}")
        }
    }
}

/// Does x pass the local condition at the q-th prime of S_n?
pub fn local_condition_at_q(x: &SelmerBasisElement, q: usize, profile: &TwoPrimeProfile) -> Result<bool> {
    let lc = LocalConditions::new(profile)?;
    if q >= lc.num_places() {
        return Err(Error::InternalInconsistency(format!("place index {q} out of range")));
    }
    Ok(lc.at_q(&x.exponents, q))
}

/// Does x pass the local condition at 1 − ζ?
pub fn local_condition_at_p(x: &SelmerBasisElement, profile: &TwoPrimeProfile) -> Result<bool> {
    LocalConditions::new(profile)?.at_p(&x.exponents)
}

fn all_vectors(len: usize) -> impl Iterator<Item = Vec<u8>> {
    let count = 3usize.pow(len as u32);
    (0..count).map(move |mut idx| {
        let mut v = vec![0u8; len];
        for slot in v.iter_mut() {
            *slot = (idx % 3) as u8;
            idx /= 3;
        }
        v
    })
}

fn add_mod3(a: &[u8], b: &[u8], k: u8) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| (x + k * y) % 3).collect()
}

/// Direct enumeration for a two-prime profile.
pub fn dim_selmer_direct(profile: &TwoPrimeProfile) -> Result<SelmerReport> {
    dim_selmer_direct_for(&profile.n, &profile.primes)
}

/// Direct enumeration for any cube-free n prime to 3 (any number of
/// primes), given its prime powers.
pub fn dim_selmer_direct_for(n: &BigInt, primes: &[PrimePower]) -> Result<SelmerReport> {
    let lc = LocalConditions::for_primes(n, primes)?;
    let m = lc.generators.len();
    let mut candidates = Vec::with_capacity(3usize.pow(m as u32));
    let mut accepted: Vec<Vec<u8>> = Vec::new();
    for exps in all_vectors(m) {
        let mut passes: Vec<bool> = (0..lc.num_places()).map(|q| lc.at_q(&exps, q)).collect();
        passes.push(lc.at_p(&exps)?);
        if passes.iter().all(|&b| b) {
            accepted.push(exps.clone());
        }
        candidates.push(CandidateTrace { exponents: exps, passes });
    }

    let count = accepted.len();
    let set: HashSet<&Vec<u8>> = accepted.iter().collect();
    for a in &accepted {
        for b in &accepted {
            if !set.contains(&add_mod3(a, b, 1)) {
                return Err(Error::InternalInconsistency(format!("accepted classes for n = {n} are not closed under products")));
            }
        }
    }
    let dim = (0..=m as u32)
        .find(|&d| 3usize.pow(d) == count)
        .ok_or_else(|| Error::InternalInconsistency(format!("{count} accepted classes for n = {n}, not a power of 3")))?;

    let n_vec = lc.n_vector()?;
    if !set.contains(&n_vec) {
        return Err(Error::InternalInconsistency(format!("class of n = {n} failed a local condition")));
    }
    let basis = echelon_basis(&n_vec, &accepted);
    if basis.len() as u32 != dim {
        return Err(Error::InternalInconsistency(format!("basis of size {} for dimension {dim}", basis.len())));
    }
    let max = m as u32;
    if dim < 1 || dim > max {
        return Err(Error::DimensionOutOfRange { t: dim, max });
    }
    Ok(SelmerReport {
        dim,
        method: Method::DirectEnumeration,
        generators: lc.generators.iter().map(|g| g.label.clone()).collect(),
        basis: basis
            .into_iter()
            .map(|exponents| SelmerBasisElement { label: lc.label(&exponents, &n_vec), exponents })
            .collect(),
        rule: None,
        trace: Some(DirectTrace { places: lc.place_names(), candidates }),
    })
}

/// Greedy basis: the class of n first, then accepted vectors in
/// enumeration order that enlarge the span.
fn echelon_basis(n_vec: &[u8], accepted: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let zero = vec![0u8; n_vec.len()];
    let mut span: HashSet<Vec<u8>> = [zero.clone()].into_iter().collect();
    let mut basis = Vec::new();
    for v in std::iter::once(&n_vec.to_vec()).chain(accepted) {
        if span.contains(v) {
            continue;
        }
        let mut next = HashSet::with_capacity(span.len() * 3);
        for s in &span {
            for k in 0..3 {
                next.insert(add_mod3(s, v, k));
            }
        }
        span = next;
        basis.push(v.clone());
    }
    basis
}

/// The dimension from the residue classes mod 9 and cubic residue symbols.
pub fn dim_selmer_closed(profile: &TwoPrimeProfile) -> Result<SelmerReport> {
    let (dim, rule) = closed_form(profile)?;
    let max = profile.s_n_size() as u32 + 1;
    if dim < 1 || dim > max {
        return Err(Error::DimensionOutOfRange { t: dim, max });
    }
    Ok(SelmerReport {
        dim,
        method: Method::ClosedForm,
        generators: sunit_generators(profile).into_iter().map(|g| g.label).collect(),
        basis: Vec::new(),
        rule: Some(rule),
        trace: None,
    })
}

fn closed_form(profile: &TwoPrimeProfile) -> Result<(u32, String)> {
    let (r1, r2) = (profile.primes[0].mod9, profile.primes[1].mod9);
    let (e1, e2) = profile.exponents();
    let n9 = profile.n_mod_9;
    let pm1 = profile.n_is_pm1_mod_9();
    let unreachable = || Error::UnreachableCase(format!("k1 = {}, residues ({r1}, {r2}), n = {n9} mod 9", profile.k1));
    let hit = |d: u32, s: &str| Ok((d, s.to_string()));
    match profile.k1 {
        0 if e1 == e2 => {
            if (r1, r2) == (2, 5) || (r1, r2) == (5, 2) {
                hit(1, "both inert, l1*l2 or l1^2*l2^2, residues {2, 5} mod 9")
            } else if r1 == 8 && r2 == 8 {
                hit(3, "both inert, l1*l2 or l1^2*l2^2, both 8 mod 9")
            } else if n9 == 4 || n9 == 7 {
                hit(2, "both inert, l1*l2 or l1^2*l2^2, n = 4 or 7 mod 9")
            } else {
                Err(unreachable())
            }
        }
        0 => {
            if r1 == r2 && (r1 == 2 || r1 == 5) {
                hit(1, "both inert, l1^2*l2, equal residues 2 or 5 mod 9")
            } else if r1 == 8 && r2 == 8 {
                hit(3, "both inert, l1^2*l2, both 8 mod 9")
            } else if n9 == 2 || n9 == 5 {
                hit(2, "both inert, l1^2*l2, n = 2 or 5 mod 9")
            } else {
                Err(unreachable())
            }
        }
        1 => {
            let cube = profile.symbols.ell2_mod_pi1.ok_or_else(unreachable)?.is_one();
            match (pm1, cube) {
                (false, true) => hit(3, "one split, n != +-1 mod 9, l2 a cube mod l1"),
                (false, false) => hit(1, "one split, n != +-1 mod 9, l2 not a cube mod l1"),
                (true, true) if r1 == 1 && r2 == 8 => {
                    hit(4, "one split, n = +-1 mod 9, l1 = 1 and l2 = 8 mod 9, l2 a cube mod l1")
                }
                (true, _) => hit(2, "one split, n = +-1 mod 9, otherwise"),
            }
        }
        2 => {
            let s1 = profile.symbols.pi1_mod_pi2.ok_or_else(unreachable)?;
            let s2 = profile.symbols.pi1_conj_mod_pi2.ok_or_else(unreachable)?;
            let cubes = s1.is_one() && s2.is_one();
            match n9 {
                1 if r1 == 1 && r2 == 1 && cubes => {
                    hit(5, "both split, n = 1 mod 9, l1 = l2 = 1 mod 9, pi_l1 and pi'_l1 cubes mod pi_l2")
                }
                1 => hit(3, "both split, n = 1 mod 9, otherwise"),
                4 | 7 if cubes => hit(4, "both split, n = 4 or 7 mod 9, pi_l1 and pi'_l1 cubes mod pi_l2"),
                4 | 7 => hit(2, "both split, n = 4 or 7 mod 9, otherwise"),
                _ => Err(unreachable()),
            }
        }
        _ => Err(unreachable()),
    }
}

/// Closed form when every prime divisor is ≡ 2 (mod 3), for any number k
/// of primes.
pub fn dim_selmer_all_inert(primes: &[(BigInt, u32)]) -> Result<u32> {
    let three = BigInt::from(3);
    let mut n = BigInt::from(1);
    for (ell, e) in primes {
        if ell == &three {
            return Err(Error::DivisibleByThree(ell.clone()));
        }
        if ell % 3u32 != BigInt::from(2) || !crate::arith::is_prime(ell) {
            return Err(Error::NotInertPrime(ell.clone()));
        }
        if !(1..=2).contains(e) {
            return Err(Error::NotCubeFree { n: ell.clone(), prime: ell.clone(), exponent: *e });
        }
        n *= num_traits::pow(ell.clone(), *e as usize);
    }
    let k = primes.len() as u32;
    if k == 0 {
        return Err(Error::TooSmall(n));
    }
    let n9 = mod9(&n);
    Ok(if n9 != 1 && n9 != 8 {
        k
    } else if primes.iter().all(|(ell, _)| mod9(ell) == 8) {
        k + 1
    } else {
        k - 1
    })
}

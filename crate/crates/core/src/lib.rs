//! Selmer ranks and cube-sum verdicts for n = ℓ₁^e₁ ℓ₂^e₂.
//!
//! For cube-free n prime to 3 with exactly two prime factors this crate
//! computes t = dim_{F₃} Sel^φ(E_{16n²}/Q(ζ)) in two independent ways, turns
//! t into rank bounds and root-number data for E_{−432n²}: y² = x³ − 432n²,
//! and searches for rational solutions of x³ + y³ = n.
//!
//! ```
//! use cubesum_core::{factor_two_primes, dim_selmer_closed, dim_selmer_direct, rank_verdict, CubeSumStatus};
//! use num_bigint::BigInt;
//!
//! let profile = factor_two_primes(&BigInt::from(262)).unwrap();
//! let direct = dim_selmer_direct(&profile).unwrap();
//! assert_eq!(direct.dim, dim_selmer_closed(&profile).unwrap().dim);
//! let verdict = rank_verdict(&profile, &direct).unwrap();
//! assert_eq!(verdict.cube_sum_status, CubeSumStatus::ProvenNotCubeSum);
//! ```

pub mod arith;
pub mod eisenstein;
pub mod error;
pub mod known_examples;
pub mod modular;
pub mod profile;
pub mod rank;
pub mod scan;
pub mod search;
pub mod selmer;

pub use eisenstein::{divmod, gcd, primary_associate, split_prime, EisensteinInt, PrimeSplitting};
pub use error::{Error, Result};
pub use modular::{
    cubic_symbol, is_cube_in_fp2, is_cube_mod_ell, is_unit_cube_mod9, mod9_inv, mod9_mul, mod9_reduce,
    unit_cubes_mod9, CubicSymbolValue, Fp2Elem, Mod9Elem,
};
pub use profile::{factor_two_primes, factor_two_primes_seeded, is_prime, parse_n, PrimePower, TwoPrimeProfile};
pub use rank::{consistency_check, rank_verdict, root_number, CubeSumStatus, RankVerdict, Unconditional};
pub use search::{search_cube_sum, witness_to_point, CubeSumWitness, CurvePoint};
pub use selmer::{
    dim_selmer_all_inert, dim_selmer_closed, dim_selmer_direct, local_condition_at_p, local_condition_at_q,
    sunit_generators, Method, SelmerBasisElement, SelmerReport,
};

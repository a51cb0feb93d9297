//! Rank bounds, parity, root number and cube-sum verdicts for E_{−432n²},
//! derived from the Selmer dimension t alone.
//!
//! E_{−432n²} is isogenous to E_{16n²}, so both have the same rank r, and
//! r ≤ t − 1. If the 3-torsion of Ш(E_{16n²}/Q) has even F₃-dimension then
//! also r ≡ t − 1 (mod 2); that hypothesis is a flag here, never computed.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::TwoPrimeProfile;
use crate::selmer::SelmerReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unconditional {
    /// t = 1 forces rank 0 without any hypothesis.
    RankZeroProven,
    NoUnconditionalClaim,
}

impl Unconditional {
    pub fn as_str(self) -> &'static str {
        match self {
            Unconditional::RankZeroProven => "rank_zero",
            Unconditional::NoUnconditionalClaim => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubeSumStatus {
    /// Rank 0: n is not a sum of two rational cubes.
    ProvenNotCubeSum,
    /// Even t: the rank is odd, hence positive, if Ш[3] is even.
    CubeSumIfShaEven,
    /// Odd t ≥ 3: the rank is even, in {0, 2, …, t − 1}, if Ш[3] is even;
    /// whether it is 0 is left open.
    EvenRankSetIfShaEven,
}

impl CubeSumStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CubeSumStatus::ProvenNotCubeSum => "proven_not",
            CubeSumStatus::CubeSumIfShaEven => "if_sha_even",
            CubeSumStatus::EvenRankSetIfShaEven => "even_rank_set_if_sha_even",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVerdict {
    pub n: BigInt,
    pub selmer_dim: u32,
    pub rank_upper: u32,
    pub rank_parity_if_sha_even: u32,
    /// {t − 1, t − 3, …} ∩ [0, t − 1], ascending.
    pub possible_ranks_if_sha_even: Vec<u32>,
    pub unconditional: Unconditional,
    pub cube_sum_status: CubeSumStatus,
    pub root_number: i8,
}

/// Global root number of E_{−432n²} for cube-free n prime to 3:
/// (−1)^k₂ if n ≡ ±1 (mod 9), else (−1)^(1 + k₂).
pub fn root_number(profile: &TwoPrimeProfile) -> i8 {
    root_number_from(profile.k2, profile.n_mod_9)
}

pub fn root_number_from(k2: u32, n_mod_9: u8) -> i8 {
    let exponent = if n_mod_9 == 1 || n_mod_9 == 8 { k2 } else { k2 + 1 };
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn rank_verdict(profile: &TwoPrimeProfile, selmer: &SelmerReport) -> Result<RankVerdict> {
    let t = selmer.dim;
    let max = profile.s_n_size() as u32 + 1;
    if t < 1 || t > max {
        return Err(Error::DimensionOutOfRange { t, max });
    }
    Ok(verdict_from_dim(profile.n.clone(), t, root_number(profile)))
}

/// The verdict for Selmer dimension `t ≥ 1`.
pub fn verdict_from_dim(n: BigInt, t: u32, root_number: i8) -> RankVerdict {
    assert!(t >= 1, "Selmer dimension is at least 1");
    let upper = t - 1;
    let possible: Vec<u32> = (0..=upper).rev().step_by(2).collect::<Vec<_>>().into_iter().rev().collect();
    let (unconditional, status) = if t == 1 {
        (Unconditional::RankZeroProven, CubeSumStatus::ProvenNotCubeSum)
    } else if t % 2 == 0 {
        (Unconditional::NoUnconditionalClaim, CubeSumStatus::CubeSumIfShaEven)
    } else {
        (Unconditional::NoUnconditionalClaim, CubeSumStatus::EvenRankSetIfShaEven)
    };
    RankVerdict {
        n,
        selmer_dim: t,
        rank_upper: upper,
        rank_parity_if_sha_even: upper % 2,
        possible_ranks_if_sha_even: possible,
        unconditional,
        cube_sum_status: status,
        root_number,
    }
}

/// The root number agrees with the parity predicted by t.
pub fn consistency_check(verdict: &RankVerdict) -> bool {
    let expected = if verdict.rank_parity_if_sha_even == 0 { 1 } else { -1 };
    verdict.root_number == expected
}

/// Is an externally known rank compatible with the verdict?
pub fn rank_compatible(verdict: &RankVerdict, rank: u32) -> bool {
    rank <= verdict.rank_upper && rank % 2 == verdict.rank_parity_if_sha_even
}

impl fmt::Display for RankVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Selmer dimension t = {}", self.selmer_dim)?;
        writeln!(f, "rank E_{{-432n^2}}(Q) <= {}", self.rank_upper)?;
        writeln!(f, "root number = {:+}", self.root_number)?;
        match self.unconditional {
            Unconditional::RankZeroProven => writeln!(f, "rank = 0 (unconditional)")?,
            Unconditional::NoUnconditionalClaim => {
                let ranks: Vec<String> = self.possible_ranks_if_sha_even.iter().map(u32::to_string).collect();
                writeln!(f, "if dim Sha[3] is even: rank in {{{}}}", ranks.join(", "))?
            }
        }
        let status = match self.cube_sum_status {
            CubeSumStatus::ProvenNotCubeSum => format!("{} is not a sum of two rational cubes", self.n),
            CubeSumStatus::CubeSumIfShaEven => {
                format!("{} is a sum of two rational cubes if dim Sha[3] is even", self.n)
            }
            CubeSumStatus::EvenRankSetIfShaEven => {
                "rank is even if dim Sha[3] is even; cube-sum status not decided".to_string()
            }
        };
        write!(f, "{status}")
    }
}

//! Machine-readable output. Big integers are strings so that consumers
//! with 64-bit (or 53-bit) JSON numbers never lose precision; small counts
//! stay numbers.

use serde::{Deserialize, Serialize};

use cubesum_core::known_examples::CaseOutcome;
use cubesum_core::scan::ScanSummary;
use cubesum_core::{CubeSumWitness, CurvePoint, RankVerdict, SelmerReport, TwoPrimeProfile};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub n: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selmer: Option<SelmerJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingJson>,
}

impl Report {
    pub fn new(n: &num_bigint::BigInt) -> Self {
        Report { schema_version: SCHEMA_VERSION.into(), n: n.to_string(), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeJson {
    pub l: String,
    pub e: u32,
    pub mod9: u8,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub primes: Vec<PrimeJson>,
    pub k1: u32,
    pub k2: u32,
    pub n_mod_9: u8,
}

impl From<&TwoPrimeProfile> for ProfileJson {
    fn from(p: &TwoPrimeProfile) -> Self {
        ProfileJson {
            primes: p
                .primes
                .iter()
                .map(|q| PrimeJson { l: q.ell.to_string(), e: q.e, mod9: q.mod9, split: q.is_split() })
                .collect(),
            k1: p.k1,
            k2: p.k2,
            n_mod_9: p.n_mod_9,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SelmerJson {
    pub closed: Option<u32>,
    pub direct: Option<u32>,
    pub basis: Vec<String>,
}

impl SelmerJson {
    pub fn from_reports(closed: Option<&SelmerReport>, direct: Option<&SelmerReport>) -> Self {
        SelmerJson {
            closed: closed.map(|r| r.dim),
            direct: direct.map(|r| r.dim),
            basis: direct.map(|r| r.basis.iter().map(|b| b.label.clone()).collect()).unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub t: u32,
    pub rank_upper: u32,
    pub parity: u32,
    pub possible_ranks: Vec<u32>,
    pub unconditional: String,
    pub cube_sum: String,
    pub root_number: i8,
}

impl From<&RankVerdict> for VerdictJson {
    fn from(v: &RankVerdict) -> Self {
        VerdictJson {
            t: v.selmer_dim,
            rank_upper: v.rank_upper,
            parity: v.rank_parity_if_sha_even,
            possible_ranks: v.possible_ranks_if_sha_even.clone(),
            unconditional: v.unconditional.as_str().into(),
            cube_sum: v.cube_sum_status.as_str().into(),
            root_number: v.root_number,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub point: Option<PointJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchJson {
    pub bound: String,
    pub witness: Option<WitnessJson>,
}

impl SearchJson {
    pub fn new(bound: u64, witness: Option<&CubeSumWitness>, point: Option<&CurvePoint>) -> Self {
        SearchJson {
            bound: bound.to_string(),
            witness: witness.map(|w| WitnessJson {
                a: w.a.to_string(),
                b: w.b.to_string(),
                c: w.c.to_string(),
                point: point.map(|p| PointJson { u: p.u.to_string(), v: p.v.to_string() }),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingJson {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseJson {
    pub group: String,
    pub shape: String,
    pub n: String,
    pub expected_t: Option<u32>,
    pub quoted_rank: Option<u32>,
    pub closed: u32,
    pub direct: u32,
    pub verdict: VerdictJson,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl From<&CaseOutcome> for CaseJson {
    fn from(o: &CaseOutcome) -> Self {
        CaseJson {
            group: o.case.group.into(),
            shape: o.case.shape(),
            n: o.case.n().to_string(),
            expected_t: o.case.t,
            quoted_rank: o.case.rank,
            closed: o.closed,
            direct: o.direct,
            verdict: (&o.verdict).into(),
            passed: o.passed,
            notes: o.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExamplesReport {
    pub schema_version: String,
    pub cases: Vec<CaseJson>,
    pub all_passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub n: String,
    pub messages: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: String,
    pub max_prime: String,
    pub checked: usize,
    /// Count of n with t = 0..=5 (index 0 is always empty).
    pub histogram: Vec<usize>,
    pub proven_not_cube_sums: usize,
    pub violation_count: usize,
    pub violations: Vec<ViolationJson>,
}

impl From<&ScanSummary> for ScanReport {
    fn from(s: &ScanSummary) -> Self {
        ScanReport {
            schema_version: SCHEMA_VERSION.into(),
            max_prime: s.max_prime.to_string(),
            checked: s.rows.len(),
            histogram: s.histogram().to_vec(),
            proven_not_cube_sums: s.proven_not_cube_sums().count(),
            violation_count: s.violation_count(),
            violations: s
                .rows
                .iter()
                .filter(|r| !r.violations.is_empty())
                .map(|r| ViolationJson { n: r.n.to_string(), messages: r.violations.clone() })
                .collect(),
        }
    }
}

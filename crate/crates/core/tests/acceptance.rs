//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use cubesum_core::known_examples::{check_case, KNOWN_CASES};
use cubesum_core::rank::rank_compatible;
use cubesum_core::scan::{scan, ScanSummary};
use cubesum_core::{
    cubic_symbol, dim_selmer_closed, dim_selmer_direct, factor_two_primes, is_prime, rank_verdict, search_cube_sum,
    split_prime, witness_to_point, CubeSumStatus, CubeSumWitness, Unconditional,
};

type Check = std::result::Result<(), String>;

fn big(m: i64) -> BigInt {
    BigInt::from(m)
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&m| is_prime(&BigInt::from(m))).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures() -> Check {
    for case in KNOWN_CASES {
        let out = check_case(case).map_err(|e| format!("{} {}: {e}", case.group, case.shape()))?;
        let label = format!("{} {}", case.group, case.shape());
        ensure(out.closed == out.direct, || format!("{label}: closed {} vs direct {}", out.closed, out.direct))?;
        if let Some(t) = case.t {
            ensure(out.direct == t, || format!("{label}: t = {} expected {t}", out.direct))?;
        }
        if let Some(r) = case.rank {
            ensure(r < out.direct && (out.direct - 1 - r) % 2 == 0, || {
                format!("{label}: quoted rank {r} not compatible with t = {}", out.direct)
            })?;
            ensure(rank_compatible(&out.verdict, r), || format!("{label}: verdict rejects rank {r}"))?;
        }
        let v = &out.verdict;
        ensure(v.rank_upper + 1 == out.direct, || format!("{label}: rank bound {}", v.rank_upper))?;
        let expected_status = match out.direct {
            1 => CubeSumStatus::ProvenNotCubeSum,
            t if t % 2 == 0 => CubeSumStatus::CubeSumIfShaEven,
            _ => CubeSumStatus::EvenRankSetIfShaEven,
        };
        ensure(v.cube_sum_status == expected_status, || format!("{label}: status {:?}", v.cube_sum_status))?;
        ensure((v.unconditional == Unconditional::RankZeroProven) == (out.direct == 1), || {
            format!("{label}: unconditional {:?}", v.unconditional)
        })?;
    }
    Ok(())
}

/// Every ℓ₁^e₁ ℓ₂^e₂ with 2 ≤ ℓ₁ < ℓ₂ ≤ `limit`, ℓᵢ ≠ 3, eᵢ ∈ {1, 2}.
fn grid(limit: u64) -> Vec<BigInt> {
    let ps: Vec<u64> = primes_up_to(limit).into_iter().filter(|&p| p != 3).collect();
    let mut out = Vec::new();
    for (i, &p) in ps.iter().enumerate() {
        for &q in &ps[i + 1..] {
            for (e1, e2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                out.push(BigInt::from(p).pow(e1) * BigInt::from(q).pow(e2));
            }
        }
    }
    out.sort();
    out
}

fn oracle_equivalence(values: &[BigInt]) -> Check {
    let mismatches: Vec<String> = values
        .par_iter()
        .filter_map(|n| {
            let profile = match factor_two_primes(n) {
                Ok(p) => p,
                Err(e) => return Some(format!("n = {n}: {e}")),
            };
            match (dim_selmer_closed(&profile), dim_selmer_direct(&profile)) {
                (Ok(c), Ok(d)) if c.dim == d.dim => None,
                (Ok(c), Ok(d)) => Some(format!("n = {n}: closed {} vs direct {}", c.dim, d.dim)),
                (c, d) => Some(format!("n = {n}: {:?} / {:?}", c.err(), d.err())),
            }
        })
        .collect();
    ensure(mismatches.is_empty(), || format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))
}

fn invariant_suite(summary: &ScanSummary, values: &[BigInt]) -> Check {
    let scanned: Vec<&BigInt> = summary.rows.iter().map(|r| &r.n).collect();
    ensure(scanned == values.iter().collect::<Vec<_>>(), || "scan does not cover the prime-pair grid".into())?;
    ensure(summary.violation_count() == 0, || {
        let row = summary.rows.iter().find(|r| !r.violations.is_empty()).unwrap();
        format!("{} violations, first at n = {}: {:?}", summary.violation_count(), row.n, row.violations)
    })?;
    // recheck the numeric invariants from the rows and a fresh profile
    for row in &summary.rows {
        let p = factor_two_primes(&row.n).map_err(|e| e.to_string())?;
        let s = p.s_n_size() as u32;
        let t = row.direct;
        let pm1 = row.n_mod_9 == 1 || row.n_mod_9 == 8;
        ensure(t >= 1 && t <= s + 1, || format!("n = {}: t = {t}, |S_n| = {s}", row.n))?;
        ensure(pm1 || t <= s, || format!("n = {}: t = {t} > |S_n| with n != +-1 mod 9", row.n))?;
        let parity = if pm1 { p.k2 + 1 } else { p.k2 } % 2;
        ensure(t % 2 == parity, || format!("n = {}: parity of t = {t}", row.n))?;
        let sign = if (t - 1) % 2 == 0 { 1 } else { -1 };
        ensure(row.root_number == sign, || format!("n = {}: root number {}", row.n, row.root_number))?;
    }
    // the accepted set is a subgroup of order 3^t, recounted from the trace
    for n in values.iter().step_by(7) {
        let p = factor_two_primes(n).map_err(|e| e.to_string())?;
        let d = dim_selmer_direct(&p).map_err(|e| e.to_string())?;
        let trace = d.trace.as_ref().ok_or("direct method returned no trace")?;
        let accepted: std::collections::HashSet<&Vec<u8>> =
            trace.candidates.iter().filter(|c| c.accepted()).map(|c| &c.exponents).collect();
        ensure(accepted.len() == 3usize.pow(d.dim), || format!("n = {n}: {} accepted classes", accepted.len()))?;
        for a in &accepted {
            for b in &accepted {
                let sum: Vec<u8> = a.iter().zip(b.iter()).map(|(x, y)| (x + y) % 3).collect();
                ensure(accepted.contains(&sum), || format!("n = {n}: accepted classes not closed"))?;
            }
        }
    }
    Ok(())
}

fn positive_control() -> Check {
    let n = big(20);
    let p = factor_two_primes(&n).map_err(|e| e.to_string())?;
    let closed = dim_selmer_closed(&p).map_err(|e| e.to_string())?.dim;
    let direct = dim_selmer_direct(&p).map_err(|e| e.to_string())?;
    ensure(closed == 2 && direct.dim == 2, || format!("t = {closed} / {}", direct.dim))?;
    let v = rank_verdict(&p, &direct).map_err(|e| e.to_string())?;
    ensure(v.cube_sum_status == CubeSumStatus::CubeSumIfShaEven, || format!("status {:?}", v.cube_sum_status))?;
    let w = search_cube_sum(&n, 10).ok_or("no witness up to 10")?;
    ensure(w == CubeSumWitness { a: big(19), b: big(1), c: big(7) }, || format!("witness {w}"))?;
    ensure(big(19).pow(3) + big(1) == big(20) * big(7).pow(3), || "19^3 + 1 != 20 * 7^3".into())?;
    let pt = witness_to_point(&w, &n).map_err(|e| e.to_string())?;
    // v² = u³ − 432n², checked on numerators and denominators
    let (u, v) = (&pt.u, &pt.v);
    let lhs = v.numer().pow(2) * u.denom().pow(3);
    let rhs = (u.numer().pow(3) - big(432) * &n * &n * u.denom().pow(3)) * v.denom().pow(2);
    ensure(lhs == rhs, || format!("point {pt} is not on the curve"))
}

fn negative_controls(summary: &ScanSummary) -> Check {
    let proven: Vec<&BigInt> = summary.proven_not_cube_sums().collect();
    ensure(!proven.is_empty(), || "no rank-zero values in the scan".into())?;
    let found: Vec<String> = proven
        .par_iter()
        .filter_map(|n| search_cube_sum(n, 200).map(|w| format!("n = {n}: {w}")))
        .collect();
    ensure(found.is_empty(), || format!("witnesses for proven non-sums: {found:?}"))?;
    ensure(search_cube_sum(&big(14), 1000).is_none(), || "14 has a witness up to 1000".into())
}

fn reciprocity() -> Check {
    let primes: Vec<_> = primes_up_to(499)
        .into_iter()
        .filter(|&m| m % 3 == 1)
        .map(|m| split_prime(&BigInt::from(m), None))
        .collect::<cubesum_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let all: Vec<_> = primes.iter().flat_map(|s| [s.pi.clone(), s.pi_conj.clone()]).collect();
    for p in &all {
        ensure(p.is_primary(), || format!("{p} is not primary"))?;
    }
    for p in &all {
        for q in &all {
            if p.norm() == q.norm() {
                continue;
            }
            let (a, b) = (cubic_symbol(p, q).map_err(|e| e.to_string())?, cubic_symbol(q, p).map_err(|e| e.to_string())?);
            ensure(a == b, || format!("({p}/{q}) = {a} but ({q}/{p}) = {b}"))?;
            let c = cubic_symbol(&p.conj(), &q.conj()).map_err(|e| e.to_string())?;
            ensure(c == -a, || format!("conjugation: ({p}/{q}) = {a}, conjugate gives {c}"))?;
        }
    }
    ensure(all.len() == 2 * primes.len() && !all.is_empty(), || "no split primes".into())
}

fn run(name: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let over = limit.filter(|l| elapsed > *l);
    let pass = result.is_ok() && over.is_none();
    let detail = match (&result, over) {
        (Err(e), _) => format!(": {e}"),
        (Ok(()), Some(l)) => format!(": over the {l:?} limit"),
        _ => String::new(),
    };
    println!("{} {name} ({:.2?}){detail}", if pass { "PASS" } else { "FAIL" }, elapsed);
    pass
}

fn main() -> ExitCode {
    let values = grid(200);
    let mut summary = None;
    let mut ok = true;
    ok &= run("1 fixtures", Some(Duration::from_secs(1)), fixtures);
    ok &= run("2 closed form = direct enumeration, primes <= 200", Some(Duration::from_secs(60)), || {
        oracle_equivalence(&values)
    });
    ok &= run("3 invariant suite, primes <= 200", None, || {
        let s = scan(200, 0).map_err(|e| e.to_string())?;
        let r = invariant_suite(&s, &values);
        summary = Some(s);
        r
    });
    ok &= run("4 positive control n = 20", Some(Duration::from_secs(1)), positive_control);
    ok &= run("5 negative controls", Some(Duration::from_secs(30)), || match &summary {
        Some(s) => negative_controls(s),
        None => Err("scan unavailable".into()),
    });
    ok &= run("6 cubic reciprocity, norms < 500", Some(Duration::from_secs(5)), reciprocity);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

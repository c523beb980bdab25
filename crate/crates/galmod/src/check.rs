//! Seeded property runner behind `galmod check`.

use std::fmt::Write;

use galmod_core::cover_tower::{
    kani_pushforward, pushforward_alpha, validate_strict, CoverTower, InvariantDivisor,
};
use galmod_core::cyclic_rep::{regular_decomposition, to_simple_basis, Basis, K0Vector};
use galmod_core::decomposition::{
    decompose, decompose_pullback, degree_bound, euler_characteristic, gr0_divisor,
    min_pullback_degree, recursive_gr0_divisor, Method,
};
use galmod_core::sampling::{corpus, Case};
use rayon::prelude::*;

use crate::input::InputDocument;
use crate::{to_json, worker_pool, CliError, Output, EXIT_PROPERTY};

/// Extra pullback degree used for the stability check.
const PULLBACK_STEP: i64 = 3;
const MAX_SHRINK_STEPS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFailure {
    pub check: &'static str,
    pub detail: String,
}

fn fail(check: &'static str, detail: impl Into<String>) -> CaseFailure {
    CaseFailure {
        check,
        detail: detail.into(),
    }
}

fn ensure(
    ok: bool,
    check: &'static str,
    detail: impl FnOnce() -> String,
) -> Result<(), CaseFailure> {
    if ok {
        Ok(())
    } else {
        Err(fail(check, detail()))
    }
}

/// Runs every cross-method and invariant check on one case and returns the
/// closed-form multiplicities.
pub fn check_case(case: &Case) -> Result<Vec<i64>, CaseFailure> {
    let (t, d) = (&case.tower, &case.divisor);
    let strict = validate_strict(t);
    ensure(strict.passed(), "strict-validation", || {
        strict.violations.join("; ")
    })?;

    let reports = Method::ALL
        .iter()
        .map(|&m| decompose(m, d, t).map_err(|e| fail("degree-precondition", e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let closed = &reports[0];
    for r in &reports[1..] {
        ensure(
            r.multiplicities == closed.multiplicities,
            "method-agreement",
            || {
                format!(
                    "{}: {:?} vs closed: {:?}",
                    r.method, r.multiplicities, closed.multiplicities
                )
            },
        )?;
        ensure(r.degrees == closed.degrees, "method-agreement", || {
            format!(
                "{} degrees {:?} vs {:?}",
                r.method, r.degrees, closed.degrees
            )
        })?;
    }
    ensure(
        closed.total_dimension() == closed.dim_h0,
        "dimension-identity",
        || {
            format!(
                "Σ j·m_j = {} but deg D + 1 - g_X = {}",
                closed.total_dimension(),
                closed.dim_h0
            )
        },
    )?;
    ensure(closed.is_realizable(), "nonnegativity", || {
        format!("{:?}", closed.multiplicities)
    })?;
    ensure(closed.degrees_monotone(), "monotonicity", || {
        format!("{:?}", closed.degrees)
    })?;

    let standard = K0Vector::new(t.group(), Basis::Standard, closed.multiplicities.clone())
        .map_err(|e| fail("euler", e.to_string()))?;
    let euler = euler_characteristic(d, t);
    let simple = to_simple_basis(&standard).map_err(|e| fail("euler", e.to_string()))?;
    ensure(simple == euler, "euler", || {
        format!("{:?} vs {:?}", simple.coords(), euler.coords())
    })?;

    let kani = kani_pushforward(d, t);
    let mut composite = d.at_level_zero();
    for _ in 0..t.group().v() {
        composite = pushforward_alpha(&composite, t, 0).map_err(|e| fail("kani", e.to_string()))?;
    }
    let digit = gr0_divisor(d, t, 1).map_err(|e| fail("kani", e.to_string()))?;
    let recursive = recursive_gr0_divisor(d, t, 1).map_err(|e| fail("kani", e.to_string()))?;
    ensure(
        kani == composite && kani == digit && kani == recursive,
        "kani",
        || format!("{kani:?} / {composite:?} / {digit:?} / {recursive:?}"),
    )?;

    check_pullbacks(t)?;
    if t.orbits().is_empty() {
        let expected = 1 - t.base_genus() + d.base_degree();
        let reg = regular_decomposition(t.group()).to_dense(t.group().order());
        let scaled: Vec<i64> = reg.iter().map(|&x| x as i64 * expected).collect();
        ensure(closed.multiplicities == scaled, "free-symmetry", || {
            format!(
                "{:?} is not {expected} copies of k[G]",
                closed.multiplicities
            )
        })?;
    }
    Ok(closed.multiplicities.clone())
}

fn check_pullbacks(t: &CoverTower) -> Result<(), CaseFailure> {
    let b = min_pullback_degree(t);
    let low = decompose_pullback(b, t).map_err(|e| fail("pullback", e.to_string()))?;
    let high =
        decompose_pullback(b + PULLBACK_STEP, t).map_err(|e| fail("pullback", e.to_string()))?;
    let n = t.group().order();
    let diff: Vec<i64> = high
        .multiplicities
        .iter()
        .zip(&low.multiplicities)
        .map(|(a, b)| a - b)
        .collect();
    let expected: Vec<i64> = (1..=n)
        .map(|j| if j == n { PULLBACK_STEP } else { 0 })
        .collect();
    ensure(diff == expected, "pullback", || {
        format!("deg {} vs {}: difference {diff:?}", b + PULLBACK_STEP, b)
    })
}

fn shrink_candidates(case: &Case) -> Vec<Case> {
    let t = &case.tower;
    let d = &case.divisor;
    let mut out = Vec::new();
    let mut push = |tower: &CoverTower, base: i64, coeffs: Vec<i64>| {
        if let Ok(divisor) = InvariantDivisor::from_coeffs(tower, base, coeffs) {
            out.push(Case {
                tower: tower.clone(),
                divisor,
            });
        }
    };
    for i in 0..t.orbits().len() {
        let c = d.coeffs()[i];
        if c == 0 {
            continue;
        }
        for smaller in [c / 2, c - c.signum()] {
            let mut coeffs = d.coeffs().to_vec();
            coeffs[i] = smaller;
            push(t, d.base_degree(), coeffs);
        }
    }
    push(t, d.base_degree() - 1, d.coeffs().to_vec());
    for i in 0..t.orbits().len() {
        let mut orbits = t.orbits().to_vec();
        orbits.remove(i);
        if let Ok(smaller) = CoverTower::new(*t.group(), t.base_genus(), orbits) {
            let mut coeffs = d.coeffs().to_vec();
            coeffs.remove(i);
            push(&smaller, d.base_degree(), coeffs);
        }
    }
    out
}

/// Greedy shrinking: keeps taking the first smaller case that still fails.
pub fn minimize(case: Case, still_fails: &dyn Fn(&Case) -> bool) -> Case {
    let mut current = case;
    for _ in 0..MAX_SHRINK_STEPS {
        match shrink_candidates(&current)
            .into_iter()
            .find(|c| still_fails(c))
        {
            Some(next) => current = next,
            None => break,
        }
    }
    current
}

/// FNV-1a over the multiplicity lists; summarizes the run for diffing.
fn digest(results: &[Vec<i64>]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for mults in results {
        for byte in format!("{mults:?};").bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

pub fn cmd_check(seed: u64, cases: usize) -> Result<Output, CliError> {
    let corpus = corpus(seed, cases);
    let pool = worker_pool()?;
    let results: Vec<Result<Vec<i64>, CaseFailure>> =
        pool.install(|| corpus.par_iter().map(check_case).collect());

    let mut text = String::new();
    if let Some((index, failure)) = results
        .iter()
        .enumerate()
        .find_map(|(i, r)| r.as_ref().err().map(|f| (i, f)))
    {
        writeln!(
            text,
            "check seed={seed} cases={cases}: FAIL at case {index} [{}]: {}",
            failure.check, failure.detail
        )
        .unwrap();
        let small = minimize(corpus[index].clone(), &|c: &Case| {
            check_case(c).is_err_and(|f| f.check == failure.check)
        });
        text.push_str(&to_json(&InputDocument::from_case(&small)));
        return Ok(Output {
            text,
            code: EXIT_PROPERTY,
        });
    }

    let results: Vec<Vec<i64>> = results.into_iter().map(Result::unwrap).collect();
    writeln!(text, "check seed={seed} cases={cases}: all pass").unwrap();
    for p in [2, 3, 5] {
        let of_p: Vec<&Case> = corpus.iter().filter(|c| c.tower.group().p() == p).collect();
        let trivial = of_p.iter().filter(|c| c.tower.group().v() == 0).count();
        let free = of_p
            .iter()
            .filter(|c| c.tower.orbits().is_empty() && c.tower.group().v() > 0)
            .count();
        let deepest = of_p
            .iter()
            .map(|c| c.tower.ramification_exponent())
            .max()
            .unwrap_or(0);
        writeln!(
            text,
            "  p={p}: {} towers, {trivial} with v=0, {free} free, deepest stabilizer p^{deepest}",
            of_p.len()
        )
        .unwrap();
    }
    let total_dim: i64 = corpus
        .iter()
        .map(|c| c.divisor.degree(&c.tower) + 1 - c.tower.top_genus())
        .sum();
    let tight = corpus
        .iter()
        .filter(|c| {
            c.divisor.degree(&c.tower) - degree_bound(&c.tower) <= c.tower.group().order() as i64
        })
        .count();
    writeln!(
        text,
        "  total dim H^0: {total_dim}; cases within p^v of the degree bound: {tight}"
    )
    .unwrap();
    writeln!(text, "  digest: {:016x}", digest(&results)).unwrap();
    Ok(Output::ok(text))
}

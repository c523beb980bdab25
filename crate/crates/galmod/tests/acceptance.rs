//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact integer equality; each criterion also has a wall-clock budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use galmod_core::as_oracle::AsCurve;
use galmod_core::cover_tower::{
    kani_pushforward, pushforward_alpha, validate_strict, CoverTower, RamifiedOrbit,
};
use galmod_core::cyclic_rep::{
    cartan_inverse, cartan_matrix, is_relatively_projective, regular_decomposition,
};
use galmod_core::decomposition::{
    decompose, decompose_closed_form, decompose_pullback, gr0_divisor, level_degrees,
    min_pullback_degree, noether_check, Method, NoetherSampling,
};
use galmod_core::sampling::{corpus, Case};
use galmod_core::GroupSpec;

const CORPUS_SEED: u64 = 1;
const CORPUS_CASES: usize = 1000;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn(&[Case]) -> Outcome,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn oracle_equivalence(_: &[Case]) -> Outcome {
    let fixtures = [((2, 3, 4), vec![2, 1]), ((3, 2, 5), vec![0, 1, 1])];
    for ((p, m, n), expected) in fixtures {
        let curve = AsCurve::new(p, m).unwrap();
        let oracle: Vec<i64> = curve
            .jordan_type(n)
            .unwrap()
            .to_dense(p as usize)
            .into_iter()
            .map(|x| x as i64)
            .collect();
        if oracle != expected {
            return Err(format!(
                "fixture p={p} m={m} n={n}: oracle {oracle:?}, expected {expected:?}"
            ));
        }
    }
    let mut count = 0;
    for p in [2u32, 3] {
        for m in (1..=9u32).filter(|m| m % p != 0) {
            let curve = AsCurve::new(p, m).unwrap();
            let tower = curve.to_tower();
            for n in (2 * curve.genus() - 1).max(0)..=30 {
                let oracle: Vec<i64> = curve
                    .jordan_type(n)
                    .map_err(|e| e.to_string())?
                    .to_dense(p as usize)
                    .into_iter()
                    .map(|x| x as i64)
                    .collect();
                let d = curve.divisor(&tower, n).map_err(|e| e.to_string())?;
                let formula = decompose_closed_form(&d, &tower)
                    .map_err(|e| e.to_string())?
                    .multiplicities;
                if oracle != formula {
                    return Err(format!(
                        "p={p} m={m} n={n}: oracle {oracle:?} formula {formula:?}"
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} curves/degrees plus 2 fixtures"))
}

fn dimension_identity(cases: &[Case]) -> Outcome {
    for (i, c) in cases.iter().enumerate() {
        let r =
            decompose_closed_form(&c.divisor, &c.tower).map_err(|e| format!("case {i}: {e}"))?;
        let expected = c.divisor.degree(&c.tower) + 1 - c.tower.top_genus();
        if r.total_dimension() != expected || r.dim_h0 != expected {
            return Err(format!(
                "case {i}: sum j*m_j = {}, expected {expected}",
                r.total_dimension()
            ));
        }
    }
    Ok(format!("{} cases", cases.len()))
}

fn method_agreement(cases: &[Case]) -> Outcome {
    for (i, c) in cases.iter().enumerate() {
        let reports: Vec<_> = Method::ALL
            .iter()
            .map(|&m| decompose(m, &c.divisor, &c.tower).map(|r| (r.multiplicities, r.degrees)))
            .collect::<Result<_, _>>()
            .map_err(|e| format!("case {i}: {e}"))?;
        if reports.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("case {i}: {reports:?}"));
        }
    }
    Ok(format!(
        "{} cases x {} methods",
        cases.len(),
        Method::ALL.len()
    ))
}

fn nonnegativity(cases: &[Case]) -> Outcome {
    for (i, c) in cases.iter().enumerate() {
        if !validate_strict(&c.tower).passed() {
            return Err(format!("case {i}: corpus tower is not strict-valid"));
        }
        let r = decompose_closed_form(&c.divisor, &c.tower).map_err(|e| e.to_string())?;
        if !r.is_realizable() || !r.degrees_monotone() {
            return Err(format!(
                "case {i}: m = {:?}, deg = {:?}",
                r.multiplicities, r.degrees
            ));
        }
    }
    Ok(format!("{} cases", cases.len()))
}

fn cartan_duality(_: &[Case]) -> Outcome {
    let orders = [
        (2, 1),
        (3, 1),
        (2, 2),
        (5, 1),
        (2, 3),
        (3, 2),
        (2, 4),
        (5, 2),
        (3, 3),
        (2, 5),
        (3, 4),
        (5, 3),
    ];
    for (p, v) in orders {
        let g = GroupSpec::new(p, v).unwrap();
        let (c, inv) = (cartan_matrix(&g), cartan_inverse(&g));
        let n = g.order();
        for (i, row) in c.iter().enumerate() {
            for j in 0..n {
                let entry: i64 = row.iter().zip(&inv).map(|(l, r)| l * r[j]).sum();
                if entry != i64::from(i == j) {
                    return Err(format!("order {n}: entry ({i},{j}) = {entry}"));
                }
            }
        }
    }
    Ok(format!("{} orders up to 125", orders.len()))
}

fn pullback_theorem(cases: &[Case]) -> Outcome {
    let mut pairs = 0;
    for (i, c) in cases.iter().enumerate() {
        let t = &c.tower;
        let n = t.group().order();
        let start = min_pullback_degree(t);
        let reports: Vec<Vec<i64>> = (start..start + 6)
            .map(|b| decompose_pullback(b, t).map(|r| r.multiplicities))
            .collect::<Result<_, _>>()
            .map_err(|e| format!("case {i}: {e}"))?;
        for (lo, a) in reports.iter().enumerate() {
            for (hi, b) in reports.iter().enumerate().skip(lo) {
                let diff: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                let step = (hi - lo) as i64;
                let expected: Vec<i64> = (1..=n).map(|j| if j == n { step } else { 0 }).collect();
                if diff != expected {
                    return Err(format!(
                        "case {i}: b={} b'={}: difference {diff:?}",
                        start + lo as i64,
                        start + hi as i64
                    ));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (b, b') pairs"))
}

fn symmetry_principle(cases: &[Case]) -> Outcome {
    let mut free = 0;
    for (i, c) in cases
        .iter()
        .enumerate()
        .filter(|(_, c)| c.tower.orbits().is_empty())
    {
        let t = &c.tower;
        let copies = 1 - t.base_genus() + c.divisor.base_degree();
        let expected: Vec<i64> = regular_decomposition(t.group())
            .to_dense(t.group().order())
            .into_iter()
            .map(|x| x as i64 * copies)
            .collect();
        let r = decompose_closed_form(&c.divisor, t).map_err(|e| e.to_string())?;
        if r.multiplicities != expected {
            return Err(format!("case {i}: {:?} vs {expected:?}", r.multiplicities));
        }
        free += 1;
    }
    if free == 0 {
        return Err("corpus has no free towers".into());
    }
    Ok(format!("{free} free towers"))
}

fn single_orbit_towers(p: u32, v: u32) -> Vec<CoverTower> {
    let g = GroupSpec::new(p, v).unwrap();
    let mut out = Vec::new();
    for depth in 1..=v {
        let mut jumps = vec![1i64; depth as usize];
        loop {
            for base_genus in [0, 1] {
                let orbit = RamifiedOrbit::new("P", jumps.clone());
                if let Ok(t) = CoverTower::new(g, base_genus, vec![orbit]) {
                    if validate_strict(&t).passed() {
                        out.push(t);
                    }
                }
            }
            // odometer over [1, 9]^depth
            let mut k = 0;
            while k < jumps.len() && jumps[k] == 9 {
                jumps[k] = 1;
                k += 1;
            }
            if k == jumps.len() {
                break;
            }
            jumps[k] += 1;
        }
    }
    out
}

fn noether_equivalence(_: &[Case]) -> Outcome {
    let mut checked = 0;
    let mut witnesses = 0;
    for p in [2u32, 3] {
        for v in 1..=2u32 {
            for t in single_orbit_towers(p, v) {
                let g = *t.group();
                for w in 0..=v {
                    let containment = t.ramification_exponent() <= w;
                    let index = g.order() / g.subgroup(w).unwrap().order();
                    let start = min_pullback_degree(&t);
                    let mut all_projective = true;
                    let mut witness = None;
                    for b in start..=start + 10 {
                        let r = decompose_pullback(b, &t).map_err(|e| e.to_string())?;
                        let dec = r.decomposition().map_err(|e| e.to_string())?;
                        if !is_relatively_projective(&dec, &g, w).map_err(|e| e.to_string())? {
                            all_projective = false;
                        }
                        if witness.is_none() {
                            witness = (1..=g.order())
                                .find(|&j| j % index != 0 && r.multiplicities[j - 1] > 0);
                        }
                    }
                    let label = format!(
                        "p={p} v={v} jumps={:?} g_Y={} w={w}",
                        t.orbits()[0].jumps,
                        t.base_genus()
                    );
                    if containment != all_projective {
                        return Err(format!(
                            "{label}: containment {containment}, projective {all_projective}"
                        ));
                    }
                    if !containment {
                        if witness.is_none() {
                            return Err(format!("{label}: no witness"));
                        }
                        witnesses += 1;
                    }
                    let report = noether_check(&t, w, &NoetherSampling::default())
                        .map_err(|e| e.to_string())?;
                    if !report.consistent() {
                        return Err(format!("{label}: sampled report inconsistent"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (tower, w) pairs, {witnesses} witnesses"))
}

fn kani_consistency(cases: &[Case]) -> Outcome {
    for (i, c) in cases.iter().enumerate() {
        let t = &c.tower;
        let kani = kani_pushforward(&c.divisor, t);
        let mut composite = c.divisor.at_level_zero();
        for _ in 0..t.group().v() {
            composite = pushforward_alpha(&composite, t, 0).map_err(|e| e.to_string())?;
        }
        let gr0 = gr0_divisor(&c.divisor, t, 1).map_err(|e| e.to_string())?;
        let deg1 = level_degrees(&c.divisor, t, 1).map_err(|e| e.to_string())?;
        let kani_degree = galmod_core::cover_tower::divisor_degree(&kani, t);
        if kani != composite || kani != gr0 || kani_degree != deg1 {
            return Err(format!("case {i}: {kani:?} / {composite:?} / {gr0:?}"));
        }
    }
    Ok(format!("{} divisors", cases.len()))
}

fn determinism(_: &[Case]) -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_galmod"))
            .args(["check", "--seed", "1", "--cases", "1000"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.status.code() != Some(0) {
        return Err(format!(
            "exit {:?}: {}",
            a.status.code(),
            String::from_utf8_lossy(&a.stdout)
        ));
    }
    if a.stdout != b.stdout {
        return Err("outputs differ".into());
    }
    let first = String::from_utf8_lossy(&a.stdout);
    Ok(format!(
        "{} identical bytes; {}",
        a.stdout.len(),
        first.lines().next().unwrap_or("")
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "oracle-equivalence",
            budget: secs(5),
            run: oracle_equivalence,
        },
        Criterion {
            name: "dimension-identity",
            budget: secs(10),
            run: dimension_identity,
        },
        Criterion {
            name: "method-agreement",
            budget: secs(10),
            run: method_agreement,
        },
        Criterion {
            name: "nonnegativity-monotonicity",
            budget: secs(10),
            run: nonnegativity,
        },
        Criterion {
            name: "cartan-duality",
            budget: secs(5),
            run: cartan_duality,
        },
        Criterion {
            name: "pullback-theorem",
            budget: secs(10),
            run: pullback_theorem,
        },
        Criterion {
            name: "symmetry-principle",
            budget: secs(5),
            run: symmetry_principle,
        },
        Criterion {
            name: "noether-equivalence",
            budget: secs(30),
            run: noether_equivalence,
        },
        Criterion {
            name: "kani-consistency",
            budget: secs(5),
            run: kani_consistency,
        },
        Criterion {
            name: "determinism",
            budget: secs(30),
            run: determinism,
        },
    ];
    let cases = corpus(CORPUS_SEED, CORPUS_CASES);
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)(&cases);
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => {
                Err(format!("{detail}; over budget {:?}", c.budget))
            }
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "{tag} {:<28} {:>8.3}s  exact  {detail}",
            c.name,
            elapsed.as_secs_f64()
        );
        failed += usize::from(outcome.is_err());
    }
    println!("acceptance: {} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

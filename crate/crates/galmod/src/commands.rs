use std::path::Path;

use galmod_core::as_oracle::AsCurve;
use galmod_core::cover_tower::validate_strict;
use galmod_core::decomposition::{
    decompose, degree_bound, euler_characteristic, gr0_degrees, noether_check, DecompositionReport,
    Method, NoetherSampling,
};
use galmod_core::sampling::Case;
use rayon::prelude::*;
use serde::Serialize;

use crate::check::minimize;
use crate::input::InputDocument;
use crate::report::{
    DecomposeReport, EulerReport, GenusReport, NoetherOutput, OracleCase, OracleReport, Validation,
};
use crate::{to_json, worker_pool, CliError, Format, Output, EXIT_PROPERTY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    All,
    Closed,
    Recursive,
    SecondDiff,
    SimpleBasis,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::All => Method::ALL.to_vec(),
            MethodArg::Closed => vec![Method::ClosedForm],
            MethodArg::Recursive => vec![Method::Recursive],
            MethodArg::SecondDiff => vec![Method::SecondDifference],
            MethodArg::SimpleBasis => vec![Method::SimpleBasis],
        }
    }
}

fn render<T: Serialize>(format: Format, value: &T, table: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => to_json(value),
        Format::Table => table(value),
    }
}

fn validation(case: &Case, enforced: bool) -> Validation {
    Validation {
        structural: true,
        strict_enforced: enforced,
        strict: validate_strict(&case.tower),
    }
}

fn run_methods(case: &Case, methods: &[Method]) -> Result<Vec<DecompositionReport>, CliError> {
    methods
        .iter()
        .map(|&m| decompose(m, &case.divisor, &case.tower).map_err(CliError::from))
        .collect()
}

fn diverges(reports: &[DecompositionReport]) -> bool {
    reports
        .windows(2)
        .any(|w| w[0].multiplicities != w[1].multiplicities || w[0].degrees != w[1].degrees)
}

#[derive(Serialize)]
struct DivergenceDump {
    error: &'static str,
    case: InputDocument,
    results: Vec<(String, Vec<i64>)>,
}

pub fn cmd_decompose(
    path: &Path,
    method: MethodArg,
    format: Format,
    strict: bool,
) -> Result<Output, CliError> {
    let doc = InputDocument::read(path)?;
    let case = doc.build(strict)?;
    let methods = method.methods();
    let reports = run_methods(&case, &methods)?;

    if diverges(&reports) {
        let small = minimize(case, &|c: &Case| {
            run_methods(c, &methods).is_ok_and(|r| diverges(&r))
        });
        let results = run_methods(&small, &methods)?
            .into_iter()
            .map(|r| (r.method.to_string(), r.multiplicities))
            .collect();
        let dump = DivergenceDump {
            error: "methods disagree",
            case: InputDocument::from_case(&small),
            results,
        };
        return Ok(Output {
            text: to_json(&dump),
            code: EXIT_PROPERTY,
        });
    }

    let first = &reports[0];
    let validation = validation(&case, strict || doc.options.strict_validation);
    let mut diagnostics = Vec::new();
    for (j, &m) in first.multiplicities.iter().enumerate() {
        if m < 0 {
            diagnostics.push(format!(
                "negative multiplicity m_{} = {m}: the ramification data is not realizable",
                j + 1
            ));
        }
    }
    if !validation.strict.passed() && !validation.strict_enforced {
        diagnostics.push("strict validation failed; the tower may not exist".to_string());
    }
    let report = DecomposeReport {
        order: case.tower.group().order(),
        genus: case.tower.genera().to_vec(),
        divisor_degree: first.divisor_degree,
        degree_bound: degree_bound(&case.tower),
        degrees: first.degrees.clone(),
        multiplicities: first.multiplicities.clone(),
        dim_h0: first.dim_h0,
        euler: euler_characteristic(&case.divisor, &case.tower).into_coords(),
        methods: methods.iter().map(|m| m.to_string()).collect(),
        realizable: first.is_realizable(),
        validation,
        diagnostics,
        input: doc,
    };
    Ok(Output::ok(render(
        format,
        &report,
        DecomposeReport::render_table,
    )))
}

pub fn cmd_genus(path: &Path, format: Format, strict: bool) -> Result<Output, CliError> {
    let doc = InputDocument::read(path)?;
    let case = doc.build(strict)?;
    let report = GenusReport {
        genus: case.tower.genera().to_vec(),
        validation: validation(&case, strict || doc.options.strict_validation),
        input: doc,
    };
    Ok(Output::ok(render(
        format,
        &report,
        GenusReport::render_table,
    )))
}

pub fn cmd_euler(path: &Path, format: Format, strict: bool) -> Result<Output, CliError> {
    let doc = InputDocument::read(path)?;
    let case = doc.build(strict)?;
    let report = EulerReport {
        divisor_degree: case.divisor.degree(&case.tower),
        degrees: gr0_degrees(&case.divisor, &case.tower),
        euler: euler_characteristic(&case.divisor, &case.tower).into_coords(),
        input: doc,
    };
    Ok(Output::ok(render(
        format,
        &report,
        EulerReport::render_table,
    )))
}

pub fn cmd_noether(
    path: &Path,
    w: u32,
    seed: u64,
    format: Format,
    strict: bool,
) -> Result<Output, CliError> {
    let doc = InputDocument::read(path)?;
    let case = doc.build(strict)?;
    let v = case.tower.group().v();
    if w > v {
        return Err(CliError::Usage(format!(
            "--w {w} exceeds the group exponent {v}"
        )));
    }
    let sampling = NoetherSampling {
        seed,
        ..NoetherSampling::default()
    };
    let report = noether_check(&case.tower, w, &sampling)?;
    let out = NoetherOutput {
        consistent: report.consistent(),
        report,
        input: doc,
    };
    let code = if out.consistent { 0 } else { EXIT_PROPERTY };
    Ok(Output {
        text: render(format, &out, NoetherOutput::render_table),
        code,
    })
}

pub const ORACLE_PRIMES: [u32; 3] = [2, 3, 5];

pub struct OracleArgs {
    pub p: u32,
    pub m_max: u32,
    pub n_max: i64,
    pub m: Option<u32>,
    pub n: Option<i64>,
}

fn oracle_case(p: u32, m: u32, n: i64) -> OracleCase {
    let curve = AsCurve::new(p, m).expect("p prime, m prime to p");
    let tower = curve.to_tower();
    let divisor = curve.divisor(&tower, n).expect("single orbit");
    let oracle = curve
        .jordan_type(n)
        .expect("n above 2g - 2")
        .to_dense(p as usize);
    let formula = decompose(Method::ClosedForm, &divisor, &tower)
        .expect("n above 2g - 2")
        .multiplicities;
    let pass = oracle.iter().zip(&formula).all(|(&a, &b)| a as i64 == b);
    OracleCase {
        p,
        m,
        n,
        oracle,
        formula,
        pass,
    }
}

pub fn cmd_oracle(args: &OracleArgs, format: Format) -> Result<Output, CliError> {
    let p = args.p;
    if !ORACLE_PRIMES.contains(&p) {
        return Err(CliError::Usage(format!(
            "--p must be one of 2, 3, 5 (got {p})"
        )));
    }
    let ms: Vec<u32> = match args.m {
        Some(m) if m == 0 || m % p == 0 => {
            return Err(CliError::Usage(format!(
                "--m {m} must be positive and prime to p"
            )))
        }
        Some(m) => vec![m],
        None => (1..=args.m_max).filter(|m| m % p != 0).collect(),
    };
    let mut triples = Vec::new();
    for m in ms {
        let genus = (p as i64 - 1) * (m as i64 - 1) / 2;
        let bound = 2 * genus - 2;
        match args.n {
            Some(n) if n <= bound => {
                return Err(CliError::Degree(format!(
                    "n = {n} does not exceed 2g - 2 = {bound}"
                )))
            }
            Some(n) => triples.push((p, m, n)),
            None => triples.extend(((bound + 1).max(0)..=args.n_max).map(|n| (p, m, n))),
        }
    }
    let pool = worker_pool()?;
    let cases: Vec<OracleCase> = pool.install(|| {
        triples
            .par_iter()
            .map(|&(p, m, n)| oracle_case(p, m, n))
            .collect()
    });
    let failures = cases.iter().filter(|c| !c.pass).count();
    let report = OracleReport { p, cases, failures };
    let code = if failures == 0 { 0 } else { EXIT_PROPERTY };
    Ok(Output {
        text: render(format, &report, OracleReport::render_table),
        code,
    })
}

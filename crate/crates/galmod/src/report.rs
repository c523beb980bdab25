//! Report objects and their table rendering. Tables are a pure function of
//! the same objects that are serialized to JSON.

use std::fmt::Write;

use galmod_core::cover_tower::StrictReport;
use galmod_core::decomposition::{NoetherReport, NoetherWitness};
use serde::{Deserialize, Serialize};

use crate::input::InputDocument;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub structural: bool,
    pub strict_enforced: bool,
    pub strict: StrictReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub input: InputDocument,
    pub order: usize,
    /// Genus of `X_0, ..., X_v`.
    pub genus: Vec<i64>,
    pub divisor_degree: i64,
    /// `2g_X - 2`.
    pub degree_bound: i64,
    pub degrees: Vec<i64>,
    /// Dense `m_1 .. m_{p^v}`.
    pub multiplicities: Vec<i64>,
    pub dim_h0: i64,
    /// Euler characteristic in the simple basis.
    pub euler: Vec<i64>,
    pub methods: Vec<String>,
    pub realizable: bool,
    pub validation: Validation,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub input: InputDocument,
    pub genus: Vec<i64>,
    pub validation: Validation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub input: InputDocument,
    pub divisor_degree: i64,
    pub degrees: Vec<i64>,
    pub euler: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoetherOutput {
    pub input: InputDocument,
    pub report: NoetherReport,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCase {
    pub p: u32,
    pub m: u32,
    pub n: i64,
    pub oracle: Vec<u64>,
    pub formula: Vec<i64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub p: u32,
    pub cases: Vec<OracleCase>,
    pub failures: usize,
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn group_line(input: &InputDocument) -> String {
    format!(
        "group        Z/{}^{}  (order {})\n",
        input.group.p,
        input.group.v,
        (input.group.p as u64).pow(input.group.v)
    )
}

fn validation_lines(out: &mut String, v: &Validation) {
    let strict = if v.strict.passed() { "pass" } else { "FAIL" };
    let enforced = if v.strict_enforced {
        "enforced"
    } else {
        "advisory"
    };
    writeln!(
        out,
        "structural   {}",
        if v.structural { "pass" } else { "FAIL" }
    )
    .unwrap();
    writeln!(out, "strict       {strict} ({enforced})").unwrap();
    for violation in &v.strict.violations {
        writeln!(out, "  - {violation}").unwrap();
    }
}

impl DecomposeReport {
    pub fn render_table(&self) -> String {
        let mut out = group_line(&self.input);
        let genus: Vec<String> = self
            .genus
            .iter()
            .enumerate()
            .map(|(n, g)| format!("X_{n}={g}"))
            .collect();
        writeln!(out, "genus        {}", genus.join(" ")).unwrap();
        writeln!(
            out,
            "deg D        {}  (2g_X-2 = {})",
            self.divisor_degree, self.degree_bound
        )
        .unwrap();
        writeln!(out, "methods      {}", self.methods.join(", ")).unwrap();
        validation_lines(&mut out, &self.validation);
        writeln!(
            out,
            "{:>6} {:>8} {:>8} {:>8}",
            "j", "deg_j", "m_j", "euler_j"
        )
        .unwrap();
        for j in 0..self.multiplicities.len() {
            writeln!(
                out,
                "{:>6} {:>8} {:>8} {:>8}",
                j + 1,
                self.degrees[j],
                self.multiplicities[j],
                self.euler[j]
            )
            .unwrap();
        }
        writeln!(out, "dim H^0      {}", self.dim_h0).unwrap();
        writeln!(out, "m            {}", join(&self.multiplicities)).unwrap();
        for d in &self.diagnostics {
            writeln!(out, "note: {d}").unwrap();
        }
        out
    }
}

impl GenusReport {
    pub fn render_table(&self) -> String {
        let mut out = group_line(&self.input);
        for (n, g) in self.genus.iter().enumerate() {
            writeln!(out, "g(X_{n})      {g}").unwrap();
        }
        validation_lines(&mut out, &self.validation);
        out
    }
}

impl EulerReport {
    pub fn render_table(&self) -> String {
        let mut out = group_line(&self.input);
        writeln!(out, "deg D        {}", self.divisor_degree).unwrap();
        writeln!(out, "{:>6} {:>8} {:>8}", "j", "deg_j", "euler_j").unwrap();
        for j in 0..self.euler.len() {
            writeln!(
                out,
                "{:>6} {:>8} {:>8}",
                j + 1,
                self.degrees[j],
                self.euler[j]
            )
            .unwrap();
        }
        writeln!(out, "euler        {}", join(&self.euler)).unwrap();
        out
    }
}

fn witness_line(w: &NoetherWitness) -> String {
    let expected = match w.expected {
        Some(e) => format!(", predicted {e}"),
        None => String::new(),
    };
    format!(
        "witness      pullback of degree {}: m_{} = {}{expected}",
        w.base_degree, w.j, w.multiplicity
    )
}

impl NoetherOutput {
    pub fn render_table(&self) -> String {
        let r = &self.report;
        let mut out = group_line(&self.input);
        writeln!(out, "subgroup     order p^{}", r.w).unwrap();
        writeln!(out, "ram exponent {}", r.ramification_exponent).unwrap();
        writeln!(out, "containment  {}", r.containment).unwrap();
        writeln!(out, "projective   {}", r.all_projective).unwrap();
        for s in &r.samples {
            writeln!(
                out,
                "  base {:>4} coeffs [{}]  m = [{}]  {}",
                s.base_degree,
                join(&s.coeffs),
                join(&s.multiplicities),
                if s.projective {
                    "projective"
                } else {
                    "not projective"
                }
            )
            .unwrap();
        }
        if let Some(w) = &r.witness {
            writeln!(out, "{}", witness_line(w)).unwrap();
        }
        writeln!(out, "consistent   {}", self.consistent).unwrap();
        out
    }
}

impl OracleReport {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let oracle: Vec<i64> = c.oracle.iter().map(|&x| x as i64).collect();
            writeln!(
                out,
                "p={} m={} n={:<3} oracle [{}]  formula [{}]  {}",
                c.p,
                c.m,
                c.n,
                join(&oracle),
                join(&c.formula),
                if c.pass { "pass" } else { "FAIL" }
            )
            .unwrap();
        }
        writeln!(
            out,
            "oracle p={}: {} cases, {} failures",
            self.p,
            self.cases.len(),
            self.failures
        )
        .unwrap();
        out
    }
}

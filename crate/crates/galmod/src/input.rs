//! The JSON input document shared by every subcommand.

use std::collections::BTreeMap;

use galmod_core::cover_tower::{validate_strict, CoverTower, InvariantDivisor, RamifiedOrbit};
use galmod_core::sampling::Case;
use galmod_core::{Error as CoreError, GroupSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    pub p: u32,
    pub v: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitInput {
    pub id: String,
    pub depth: u32,
    pub jumps: Vec<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorInput {
    #[serde(default)]
    pub base_degree: i64,
    #[serde(default)]
    pub orbit_coeffs: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub strict_validation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub group: GroupInput,
    pub base_genus: i64,
    #[serde(default)]
    pub orbits: Vec<OrbitInput>,
    #[serde(default)]
    pub divisor: DivisorInput,
    #[serde(default)]
    pub options: Options,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn from_case(case: &Case) -> Self {
        let t = &case.tower;
        InputDocument {
            group: GroupInput {
                p: t.group().p(),
                v: t.group().v(),
            },
            base_genus: t.base_genus(),
            orbits: t
                .orbits()
                .iter()
                .map(|o| OrbitInput {
                    id: o.id.clone(),
                    depth: o.depth(),
                    jumps: o.jumps.clone(),
                })
                .collect(),
            divisor: DivisorInput {
                base_degree: case.divisor.base_degree(),
                orbit_coeffs: case.divisor.coeff_map(t),
            },
            options: Options {
                strict_validation: true,
            },
        }
    }

    /// Structural validation, plus the strict checks when requested here or
    /// in the document's options.
    pub fn build(&self, force_strict: bool) -> Result<Case, CliError> {
        let group = GroupSpec::new(self.group.p, self.group.v).map_err(validation)?;
        let mut orbits = Vec::with_capacity(self.orbits.len());
        for o in &self.orbits {
            if o.depth as usize != o.jumps.len() {
                return Err(CliError::Validation(format!(
                    "orbit `{}`: depth {} but {} jumps",
                    o.id,
                    o.depth,
                    o.jumps.len()
                )));
            }
            orbits.push(RamifiedOrbit::new(o.id.clone(), o.jumps.clone()));
        }
        let tower = CoverTower::new(group, self.base_genus, orbits).map_err(validation)?;
        let divisor =
            InvariantDivisor::new(&tower, self.divisor.base_degree, &self.divisor.orbit_coeffs)
                .map_err(validation)?;
        if force_strict || self.options.strict_validation {
            let report = validate_strict(&tower);
            if !report.passed() {
                return Err(CliError::Validation(report.violations.join("; ")));
            }
        }
        Ok(Case { tower, divisor })
    }
}

fn validation(e: CoreError) -> CliError {
    CliError::Validation(e.to_string())
}

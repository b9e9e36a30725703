//! The published tables, one CSV per `(family, r, p)` configuration.
//!
//! Rows are kept exactly as printed, including entries that cannot be right;
//! the verifier classifies those instead of this module correcting them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::FamilySelector;
use crate::census::GroupShape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing header `order,count,shapes,success`")]
    MissingHeader,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureRow {
    pub order: u64,
    pub count: u64,
    /// As printed; compared as a set.
    pub shapes: Vec<GroupShape>,
    pub success: bool,
}

pub const FIXTURE_HEADER: &str = "order,count,shapes,success";

/// Parses a fixture CSV. Blank lines are ignored.
pub fn parse_fixture(text: &str) -> Result<Vec<FixtureRow>, FixtureError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == FIXTURE_HEADER => {}
        _ => return Err(FixtureError::MissingHeader),
    }
    lines
        .map(|(i, line)| {
            let bad = |msg: String| FixtureError::Malformed { line: i + 1, msg };
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            let [order, count, shapes, success] = cols[..] else {
                return Err(bad(format!("expected 4 columns, found {}", cols.len())));
            };
            let order = order.parse().map_err(|_| bad(format!("bad order {order:?}")))?;
            let count = count.parse().map_err(|_| bad(format!("bad count {count:?}")))?;
            let shapes = shapes
                .split(';')
                .map(|s| s.parse::<GroupShape>().map_err(|e| bad(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let success = match success {
                "true" => true,
                "false" => false,
                other => return Err(bad(format!("bad success flag {other:?}"))),
            };
            Ok(FixtureRow {
                order,
                count,
                shapes,
                success,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AppendixConfig {
    pub family: FamilySelector,
    pub r: u32,
    pub p: u64,
}

impl AppendixConfig {
    /// File stem, e.g. `j0_r1_p7`.
    pub fn name(&self) -> String {
        format!("{}_r{}_p{}", self.family.label(), self.r, self.p)
    }

    pub fn fixture_text(&self) -> Option<&'static str> {
        FIXTURES
            .iter()
            .find(|(c, _)| c == self)
            .map(|(_, text)| *text)
    }

    pub fn fixture(&self) -> Result<Vec<FixtureRow>, FixtureError> {
        parse_fixture(self.fixture_text().expect("every listed config has a fixture"))
    }
}

impl fmt::Display for AppendixConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for AppendixConfig {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        APPENDIX_CONFIGS
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown appendix configuration {s:?}"))
    }
}

const fn cfg(family: FamilySelector, r: u32, p: u64) -> AppendixConfig {
    AppendixConfig { family, r, p }
}

use FamilySelector::{J0, J1728};

macro_rules! fixture {
    ($fam:ident, $r:literal, $p:literal, $file:literal) => {
        (cfg($fam, $r, $p), include_str!(concat!("../../fixtures/appendix/", $file)))
    };
}

/// The six published tables, split per characteristic.
const FIXTURES: &[(AppendixConfig, &str)] = &[
    fixture!(J0, 1, 5, "j0_r1_p5.csv"),
    fixture!(J0, 1, 7, "j0_r1_p7.csv"),
    fixture!(J0, 1, 11, "j0_r1_p11.csv"),
    fixture!(J0, 1, 13, "j0_r1_p13.csv"),
    fixture!(J0, 1, 17, "j0_r1_p17.csv"),
    fixture!(J0, 2, 5, "j0_r2_p5.csv"),
    fixture!(J0, 2, 7, "j0_r2_p7.csv"),
    fixture!(J0, 2, 11, "j0_r2_p11.csv"),
    fixture!(J0, 3, 5, "j0_r3_p5.csv"),
    fixture!(J0, 3, 7, "j0_r3_p7.csv"),
    fixture!(J0, 3, 11, "j0_r3_p11.csv"),
    fixture!(J1728, 1, 5, "j1728_r1_p5.csv"),
    fixture!(J1728, 1, 7, "j1728_r1_p7.csv"),
    fixture!(J1728, 1, 11, "j1728_r1_p11.csv"),
    fixture!(J1728, 1, 13, "j1728_r1_p13.csv"),
    fixture!(J1728, 1, 17, "j1728_r1_p17.csv"),
    fixture!(J1728, 2, 5, "j1728_r2_p5.csv"),
    fixture!(J1728, 2, 7, "j1728_r2_p7.csv"),
    fixture!(J1728, 2, 11, "j1728_r2_p11.csv"),
    fixture!(J1728, 3, 5, "j1728_r3_p5.csv"),
    fixture!(J1728, 3, 7, "j1728_r3_p7.csv"),
    fixture!(J1728, 3, 11, "j1728_r3_p11.csv"),
];

pub const APPENDIX_CONFIGS: &[AppendixConfig] = &[
    cfg(J0, 1, 5),
    cfg(J0, 1, 7),
    cfg(J0, 1, 11),
    cfg(J0, 1, 13),
    cfg(J0, 1, 17),
    cfg(J0, 2, 5),
    cfg(J0, 2, 7),
    cfg(J0, 2, 11),
    cfg(J0, 3, 5),
    cfg(J0, 3, 7),
    cfg(J0, 3, 11),
    cfg(J1728, 1, 5),
    cfg(J1728, 1, 7),
    cfg(J1728, 1, 11),
    cfg(J1728, 1, 13),
    cfg(J1728, 1, 17),
    cfg(J1728, 2, 5),
    cfg(J1728, 2, 7),
    cfg(J1728, 2, 11),
    cfg(J1728, 3, 5),
    cfg(J1728, 3, 7),
    cfg(J1728, 3, 11),
];

//! Family enumeration, isogeny-class surveys and appendix reproduction.
//!
//! Curves over a finite field are isogenous exactly when they have the same
//! number of points, so a survey groups a family by order and records which
//! group structures each class realizes.

mod fixtures;
mod render;
mod verify;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::census::{self, GroupShape};
use crate::curve::Curve;
use crate::field::Field;
use crate::vladut::{self, ClassInstance};

pub use fixtures::{parse_fixture, AppendixConfig, FixtureError, FixtureRow, APPENDIX_CONFIGS};
pub use render::{render, Format};
pub use verify::{verify_appendix, verify_config, DiffReport, RowDiff};

/// Field size cap for scanning every `(A, B)` pair.
pub const ALL_FAMILY_BOUND: u64 = 1 << 10;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("field size {q} exceeds the {bound} cap for this family")]
    BoundExceeded { q: u64, bound: u64 },
    #[error("unknown appendix configuration {0}")]
    UnknownConfiguration(String),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySelector {
    /// `y^2 = x^3 + B`, `B != 0`.
    J0,
    /// `y^2 = x^3 + Ax`, `A != 0`.
    J1728,
    /// Every nonsingular `(A, B)`.
    All,
}

impl FamilySelector {
    pub fn label(self) -> &'static str {
        match self {
            FamilySelector::J0 => "j0",
            FamilySelector::J1728 => "j1728",
            FamilySelector::All => "all",
        }
    }
}

impl fmt::Display for FamilySelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FamilySelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "j0" => Ok(FamilySelector::J0),
            "j1728" => Ok(FamilySelector::J1728),
            "all" => Ok(FamilySelector::All),
            other => Err(format!("unknown family {other:?} (expected j0, j1728 or all)")),
        }
    }
}

/// Curves of a family in enumeration order, singular pairs skipped.
pub fn enumerate_family(field: &Field, sel: FamilySelector) -> Result<Vec<Curve>, SurveyError> {
    let zero = field.zero();
    let curves = match sel {
        FamilySelector::J0 => field
            .enumerate()
            .skip(1)
            .filter_map(|b| Curve::new(field, zero, b).ok())
            .collect(),
        FamilySelector::J1728 => field
            .enumerate()
            .skip(1)
            .filter_map(|a| Curve::new(field, a, zero).ok())
            .collect(),
        FamilySelector::All => {
            if field.q() > ALL_FAMILY_BOUND {
                return Err(SurveyError::BoundExceeded {
                    q: field.q(),
                    bound: ALL_FAMILY_BOUND,
                });
            }
            field
                .enumerate()
                .flat_map(|a| field.enumerate().map(move |b| (a, b)))
                .filter_map(|(a, b)| Curve::new(field, a, b).ok())
                .collect()
        }
    };
    Ok(curves)
}

/// One isogeny class of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub order: u64,
    pub curve_count: u64,
    /// Distinct structures in the class, ascending by `(n1, n2)`.
    pub shapes: Vec<GroupShape>,
    pub success: bool,
    pub trace: i64,
    pub supersingular: bool,
    /// Whether the admissibility cases alone force a single structure, as
    /// opposed to the family merely realizing one.
    pub forced_unique: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyTable {
    pub p: u64,
    pub r: u32,
    pub family: FamilySelector,
    /// Ordered by first occurrence in enumeration order.
    pub rows: Vec<SurveyRow>,
}

impl SurveyTable {
    pub fn family_size(&self) -> u64 {
        self.rows.iter().map(|r| r.curve_count).sum()
    }
}

/// Groups the curves of a family into isogeny classes.
pub fn survey(field: &Field, sel: FamilySelector) -> Result<SurveyTable, SurveyError> {
    let curves = enumerate_family(field, sel)?;
    let censuses: Vec<_> = curves.par_iter().map(census::census).collect();

    let mut rows: Vec<SurveyRow> = Vec::new();
    for c in censuses {
        match rows.iter_mut().find(|r| r.order == c.order) {
            Some(row) => {
                row.curve_count += 1;
                if let Err(pos) = row.shapes.binary_search(&c.shape) {
                    row.shapes.insert(pos, c.shape);
                }
            }
            None => rows.push(SurveyRow {
                order: c.order,
                curve_count: 1,
                shapes: vec![c.shape],
                success: true,
                trace: c.trace,
                supersingular: c.supersingular,
                forced_unique: false,
            }),
        }
    }
    for row in &mut rows {
        row.success = row.shapes.len() == 1;
        row.forced_unique = ClassInstance::new(field.q(), field.p(), field.r(), row.trace)
            .map(|inst| vladut::structure_unique(&inst))
            .unwrap_or(false);
    }
    Ok(SurveyTable {
        p: field.p(),
        r: field.r(),
        family: sel,
        rows,
    })
}

//! Row-by-row comparison of a computed survey against a published table.

use std::collections::BTreeSet;
use std::fmt;

use super::fixtures::{AppendixConfig, FixtureRow, APPENDIX_CONFIGS};
use super::{survey, FamilySelector, SurveyError, SurveyRow};
use crate::census::{within_hasse, GroupShape};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowDiff {
    /// Order, count, structure set and success flag all agree.
    Match { order: u64 },
    /// The printed order is outside the Hasse interval, so no curve can have
    /// it. `computed` is the otherwise unexplained class, when there is one.
    FixtureViolatesHasse {
        printed: FixtureRow,
        computed: Option<SurveyRow>,
    },
    Mismatch {
        printed: Option<FixtureRow>,
        computed: Option<SurveyRow>,
        fields: Vec<&'static str>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub config: AppendixConfig,
    pub entries: Vec<RowDiff>,
}

impl DiffReport {
    pub fn matches(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e, RowDiff::Match { .. }))
            .count()
    }

    pub fn hasse_violations(&self) -> impl Iterator<Item = &RowDiff> {
        self.entries
            .iter()
            .filter(|e| matches!(e, RowDiff::FixtureViolatesHasse { .. }))
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &RowDiff> {
        self.entries
            .iter()
            .filter(|e| matches!(e, RowDiff::Mismatch { .. }))
    }

    /// No row disagrees; flagged impossible rows do not count against it.
    pub fn is_clean(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

fn shape_set(shapes: &[GroupShape]) -> BTreeSet<GroupShape> {
    shapes.iter().copied().collect()
}

fn differing_fields(printed: &FixtureRow, computed: &SurveyRow) -> Vec<&'static str> {
    let mut fields = Vec::new();
    if printed.count != computed.curve_count {
        fields.push("count");
    }
    if shape_set(&printed.shapes) != shape_set(&computed.shapes) {
        fields.push("shapes");
    }
    if printed.success != computed.success {
        fields.push("success");
    }
    fields
}

fn diff(config: AppendixConfig, q: u64, printed: Vec<FixtureRow>, computed: Vec<SurveyRow>) -> DiffReport {
    let mut unclaimed: Vec<Option<SurveyRow>> = computed.into_iter().map(Some).collect();
    let mut entries = Vec::new();
    let mut impossible = Vec::new();

    for row in printed {
        if !within_hasse(q, row.order) {
            impossible.push(entries.len());
            entries.push(RowDiff::FixtureViolatesHasse {
                printed: row,
                computed: None,
            });
            continue;
        }
        let found = unclaimed
            .iter_mut()
            .find(|c| c.as_ref().is_some_and(|c| c.order == row.order))
            .and_then(Option::take);
        entries.push(match found {
            Some(c) => {
                let fields = differing_fields(&row, &c);
                if fields.is_empty() {
                    RowDiff::Match { order: row.order }
                } else {
                    RowDiff::Mismatch {
                        printed: Some(row),
                        computed: Some(c),
                        fields,
                    }
                }
            }
            None => RowDiff::Mismatch {
                printed: Some(row),
                computed: None,
                fields: vec!["order"],
            },
        });
    }

    let leftover: Vec<SurveyRow> = unclaimed.into_iter().flatten().collect();
    if leftover.len() == impossible.len() {
        // Each impossible printed row stands in for exactly one computed class.
        for (idx, c) in impossible.into_iter().zip(leftover) {
            if let RowDiff::FixtureViolatesHasse { computed, .. } = &mut entries[idx] {
                *computed = Some(c);
            }
        }
    } else {
        entries.extend(leftover.into_iter().map(|c| RowDiff::Mismatch {
            printed: None,
            computed: Some(c),
            fields: vec!["order"],
        }));
    }
    DiffReport { config, entries }
}

pub fn verify_config(config: AppendixConfig) -> Result<DiffReport, SurveyError> {
    let field = Field::new(config.p, config.r)?;
    let table = survey(&field, config.family)?;
    Ok(diff(config, field.q(), config.fixture()?, table.rows))
}

/// Compares the survey of `(field, sel)` with the published table for it.
pub fn verify_appendix(field: &Field, sel: FamilySelector) -> Result<DiffReport, SurveyError> {
    let config = APPENDIX_CONFIGS
        .iter()
        .copied()
        .find(|c| c.family == sel && c.r == field.r() && c.p == field.p())
        .ok_or_else(|| {
            SurveyError::UnknownConfiguration(format!("{}_r{}_p{}", sel, field.r(), field.p()))
        })?;
    let table = survey(field, sel)?;
    Ok(diff(config, field.q(), config.fixture()?, table.rows))
}

fn shapes_text(shapes: &[GroupShape]) -> String {
    shapes
        .iter()
        .map(GroupShape::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for RowDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowDiff::Match { order } => write!(f, "match     order {order}"),
            RowDiff::FixtureViolatesHasse { printed, computed } => {
                write!(
                    f,
                    "impossible printed order {} ({} curve(s), {}) is outside the Hasse interval",
                    printed.order,
                    printed.count,
                    shapes_text(&printed.shapes)
                )?;
                if let Some(c) = computed {
                    write!(
                        f,
                        "; computed {} ({} curve(s), {})",
                        c.order,
                        c.curve_count,
                        shapes_text(&c.shapes)
                    )?;
                }
                Ok(())
            }
            RowDiff::Mismatch {
                printed,
                computed,
                fields,
            } => {
                write!(f, "MISMATCH  [{}]", fields.join(","))?;
                if let Some(p) = printed {
                    write!(
                        f,
                        " printed {} x{} {{{}}} {}",
                        p.order,
                        p.count,
                        shapes_text(&p.shapes),
                        p.success
                    )?;
                }
                if let Some(c) = computed {
                    write!(
                        f,
                        " computed {} x{} {{{}}} {}",
                        c.order,
                        c.curve_count,
                        shapes_text(&c.shapes),
                        c.success
                    )?;
                }
                Ok(())
            }
        }
    }
}

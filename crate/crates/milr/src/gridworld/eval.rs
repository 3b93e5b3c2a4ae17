//! The exact rubric evaluator: the ground-truth reward for the whole crate.

use serde::{Deserialize, Serialize};

use super::{Category, GridSpec, TaskSpec};
use crate::rewards::RewardScore;

/// Graded returns the mean of the binary criteria; AllOrNothing collapses the
/// score to 1.0 iff every criterion passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RubricMode {
    #[default]
    Graded,
    AllOrNothing,
}

/// Scores a (task, grid) pair as the mean of binary rubric criteria:
///
/// - per required object: the number of matching cells equals the required
///   count;
/// - per bound attribute pair (attribute-binding tasks): at least one cell
///   matches both shape and color;
/// - for the optional relation: it holds between the centroids of the two
///   referenced object sets, with strict inequality on the relevant axis.
///
/// Pure and deterministic; the breakdown lists each criterion as 0.0/1.0.
pub fn evaluate(task: &TaskSpec, grid: &GridSpec) -> RewardScore {
    evaluate_with_mode(task, grid, RubricMode::Graded)
}

pub fn evaluate_with_mode(task: &TaskSpec, grid: &GridSpec, mode: RubricMode) -> RewardScore {
    let mut criteria: Vec<(String, bool)> = Vec::new();

    for (i, obj) in task.objects.iter().enumerate() {
        let matching = grid.matching_cells(obj).len();
        criteria.push((
            format!("count[{i}]:{}", obj.describe()),
            matching == obj.count,
        ));
    }

    if task.category == Category::AttrBinding {
        for (i, obj) in task.objects.iter().enumerate() {
            if obj.color.is_some() {
                criteria.push((
                    format!("binding[{i}]:{}", obj.describe()),
                    !grid.matching_cells(obj).is_empty(),
                ));
            }
        }
    }

    if let Some(rel) = task.relation {
        let a = centroid(grid, grid.matching_cells(&task.objects[0]));
        let b = centroid(grid, grid.matching_cells(&task.objects[1]));
        let ok = match (a, b) {
            (Some(a), Some(b)) => rel.holds(a, b),
            _ => false,
        };
        criteria.push((format!("relation:{}", rel.word()), ok));
    }

    let passed = criteria.iter().filter(|(_, ok)| *ok).count();
    let graded = passed as f64 / criteria.len() as f64;
    let value = match mode {
        RubricMode::Graded => graded,
        RubricMode::AllOrNothing => {
            if passed == criteria.len() {
                1.0
            } else {
                0.0
            }
        }
    };
    RewardScore {
        value,
        breakdown: criteria
            .into_iter()
            .map(|(name, ok)| (name, if ok { 1.0 } else { 0.0 }))
            .collect(),
    }
}

fn centroid(grid: &GridSpec, cells: Vec<usize>) -> Option<(f64, f64)> {
    if cells.is_empty() {
        return None;
    }
    let n = cells.len() as f64;
    let (sx, sy) = cells.iter().fold((0.0, 0.0), |(sx, sy), &i| {
        (sx + (i % grid.width) as f64, sy + (i / grid.width) as f64)
    });
    Some((sx / n, sy / n))
}

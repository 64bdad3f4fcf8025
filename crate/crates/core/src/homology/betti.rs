//! Boundary matrices, pointwise Betti numbers and Betti step functions.

use std::collections::BTreeSet;

use crate::complex::{with_midpoints, StaticComplex, VariableComplex};
use crate::exec::{map_slice, Strategy};
use crate::rational::Rational;

use super::field::{rank_over, FieldTag};
use super::HomologyError;

/// Matrix of `∂_n : C_n → C_{n-1}`; rows are (n-1)-cells, columns n-cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub field: FieldTag,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    /// Row-major integer representatives; reduced mod 2 for [`FieldTag::F2`].
    pub entries: Vec<Vec<i64>>,
}

impl BoundaryMatrix {
    pub fn rank(&self) -> usize {
        rank_over(self.field, &self.entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v == 0)
    }

    /// Nonzero entries in column `j`.
    pub fn column_weight(&self, j: usize) -> usize {
        self.entries.iter().filter(|row| row[j] != 0).count()
    }
}

/// Builds `∂_n` with coefficient `(-1)^i` on the i-th face over Q and `1`
/// over F2. For `n = 0` the matrix has no rows.
pub fn boundary_matrix(s: &StaticComplex, n: usize, field: FieldTag) -> BoundaryMatrix {
    let cols: Vec<String> = s.cells(n).iter().map(|c| c.id.clone()).collect();
    let rows: Vec<String> = if n == 0 {
        Vec::new()
    } else {
        s.cells(n - 1).iter().map(|c| c.id.clone()).collect()
    };
    let mut entries = vec![vec![0i64; cols.len()]; rows.len()];
    if n > 0 {
        for (j, cell) in s.cells(n).iter().enumerate() {
            for (i, &face) in cell.faces.iter().enumerate() {
                let sign = match field {
                    FieldTag::F2 => 1,
                    FieldTag::Q if i % 2 == 0 => 1,
                    FieldTag::Q => -1,
                };
                entries[face][j] += sign;
            }
        }
        if field == FieldTag::F2 {
            entries.iter_mut().flatten().for_each(|v| *v = v.rem_euclid(2));
        }
    }
    BoundaryMatrix {
        dim: n,
        field,
        rows,
        cols,
        entries,
    }
}

/// Whether `∂_n ∘ ∂_{n+1}` vanishes over the field.
pub fn chain_condition_holds(s: &StaticComplex, n: usize, field: FieldTag) -> bool {
    if n == 0 {
        return true;
    }
    let lower = boundary_matrix(s, n, field);
    let upper = boundary_matrix(s, n + 1, field);
    (0..lower.rows.len()).all(|r| {
        (0..upper.cols.len()).all(|c| {
            let v: i64 = (0..lower.cols.len())
                .map(|k| lower.entries[r][k] * upper.entries[k][c])
                .sum();
            match field {
                FieldTag::F2 => v % 2 == 0,
                FieldTag::Q => v == 0,
            }
        })
    })
}

/// `dim C_n − rank ∂_n − rank ∂_{n+1}`, after checking `∂_n ∘ ∂_{n+1} = 0`.
pub fn betti(s: &StaticComplex, n: usize, field: FieldTag) -> Result<usize, HomologyError> {
    if !chain_condition_holds(s, n, field) {
        return Err(HomologyError::ChainCondition { dim: n, field });
    }
    let cells = s.count(n);
    let below = if n == 0 { 0 } else { boundary_matrix(s, n, field).rank() };
    let above = boundary_matrix(s, n + 1, field).rank();
    Ok(cells - below - above)
}

/// One constant piece of a Betti curve.
///
/// Steps tile the time range in order. A step includes its start unless the
/// previous step included that endpoint; `end_included` says whether the
/// step owns its right endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiStep {
    pub start: Rational,
    pub end: Rational,
    pub end_included: bool,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiCurve {
    pub dimension: usize,
    pub steps: Vec<BettiStep>,
}

impl BettiCurve {
    /// Rank at time `t`, or `None` outside the covered range.
    pub fn rank_at(&self, t: &Rational) -> Option<usize> {
        let mut start_included = true;
        for step in &self.steps {
            let after_start = if start_included { &step.start <= t } else { &step.start < t };
            let before_end = if step.end_included { t <= &step.end } else { t < &step.end };
            if after_start && before_end {
                return Some(step.rank);
            }
            start_included = !step.end_included;
        }
        None
    }
}

/// Betti number of the slice at `t`.
pub fn betti_at(
    c: &VariableComplex,
    t: &Rational,
    n: usize,
    field: FieldTag,
) -> Result<usize, HomologyError> {
    betti(&c.slice(t), n, field)
}

/// The rank step function `t ↦ β_n(slice at t)` over `[first, last]`
/// critical value.
pub fn betti_curve(
    c: &VariableComplex,
    n: usize,
    field: FieldTag,
    strategy: Strategy,
) -> Result<BettiCurve, HomologyError> {
    betti_curve_refined(c, n, field, &[], strategy)
}

/// As [`betti_curve`], also evaluating at `extra` points inside the range.
/// The merged curve does not depend on the extra points.
pub fn betti_curve_refined(
    c: &VariableComplex,
    n: usize,
    field: FieldTag,
    extra: &[Rational],
    strategy: Strategy,
) -> Result<BettiCurve, HomologyError> {
    let critical = c.critical_values();
    let (Some(lo), Some(hi)) = (critical.first(), critical.last()) else {
        return Ok(BettiCurve {
            dimension: n,
            steps: Vec::new(),
        });
    };
    let breakpoints: Vec<Rational> = critical
        .iter()
        .chain(extra.iter().filter(|t| lo <= *t && *t <= hi))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // even positions are breakpoints, odd ones gap midpoints
    let samples = with_midpoints(&breakpoints);
    let ranks = map_slice(&samples, strategy, |t| betti_at(c, t, n, field))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    let mut steps: Vec<BettiStep> = Vec::new();
    for (k, rank) in ranks.into_iter().enumerate() {
        let (start, end, end_included) = if k % 2 == 0 {
            let p = &breakpoints[k / 2];
            (p, p, true)
        } else {
            (&breakpoints[k / 2], &breakpoints[k / 2 + 1], false)
        };
        match steps.last_mut() {
            Some(last) if last.rank == rank => {
                last.end = end.clone();
                last.end_included = end_included;
            }
            _ => steps.push(BettiStep {
                start: start.clone(),
                end: end.clone(),
                end_included,
                rank,
            }),
        }
    }
    Ok(BettiCurve { dimension: n, steps })
}

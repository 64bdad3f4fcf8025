//! Persistence pairs of filtrations and persistence diagrams.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::complex::{StaticComplex, VariableComplex};
use crate::lifetime::{AlgebraError, Bounds, Lifetime, Orientation};
use crate::rational::Rational;

use super::betti::chain_condition_holds;
use super::field::{Coefficient, FieldTag, Gf2};
use super::HomologyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairClass {
    Ordinary,
    Relative,
    Essential,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Ordinary => "ordinary",
            PairClass::Relative => "relative",
            PairClass::Essential => "essential",
        })
    }
}

/// A birth-death pair; `death == None` is the essential (never dies) sentinel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistencePair {
    pub dimension: usize,
    pub birth: Rational,
    pub death: Option<Rational>,
    pub class: PairClass,
}

impl PersistencePair {
    pub fn finite(dimension: usize, birth: Rational, death: Rational) -> Self {
        let class = if birth < death {
            PairClass::Ordinary
        } else {
            PairClass::Relative
        };
        PersistencePair {
            dimension,
            birth,
            death: Some(death),
            class,
        }
    }

    pub fn essential(dimension: usize, birth: Rational) -> Self {
        PersistencePair {
            dimension,
            birth,
            death: None,
            class: PairClass::Essential,
        }
    }

    /// Born at or before `t` and not yet dead at `t`.
    pub fn alive_at(&self, t: &Rational) -> bool {
        &self.birth <= t && self.death.as_ref().map_or(true, |d| d > t)
    }
}

/// True when nothing dies inside the window, i.e. every death is `eps2`.
pub fn is_filtration(c: &VariableComplex) -> bool {
    let end = c.bounds().eps2();
    c.entries().iter().all(|e| e.death() == end)
}

/// Simplices in reduction order: birth, then dimension, then file order.
pub fn filtration_order(c: &VariableComplex) -> Vec<usize> {
    let mut order: Vec<usize> = (0..c.len()).collect();
    let e = c.entries();
    order.sort_by(|&a, &b| {
        e[a].birth()
            .cmp(e[b].birth())
            .then(e[a].dim.cmp(&e[b].dim))
            .then(a.cmp(&b))
    });
    order
}

/// Sparse column keyed by row position.
type Column<C> = BTreeMap<usize, C>;

/// Standard left-to-right column reduction. Returns `low[j]` for each
/// column after reduction (`None` for zero columns).
fn reduce<C: Coefficient>(mut columns: Vec<Column<C>>) -> Vec<Option<usize>> {
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut lows = vec![None; columns.len()];
    for j in 0..columns.len() {
        while let Some((&low, coeff)) = columns[j].iter().next_back() {
            let Some(&k) = owner.get(&low) else { break };
            let factor = coeff.mul(&columns[k][&low].inv()).neg();
            let pivot_col = columns[k].clone();
            let col = &mut columns[j];
            for (row, v) in pivot_col {
                let updated = col.get(&row).cloned().unwrap_or_else(C::zero).add(&factor.mul(&v));
                if updated.is_zero() {
                    col.remove(&row);
                } else {
                    col.insert(row, updated);
                }
            }
        }
        if let Some((&low, _)) = columns[j].iter().next_back() {
            owner.insert(low, j);
            lows[j] = Some(low);
        }
    }
    lows
}

fn boundary_columns<C: Coefficient>(
    c: &VariableComplex,
    order: &[usize],
    signed: bool,
) -> Vec<Column<C>> {
    let mut position = vec![0; c.len()];
    for (pos, &idx) in order.iter().enumerate() {
        position[idx] = pos;
    }
    order
        .iter()
        .map(|&idx| {
            let mut col: Column<C> = BTreeMap::new();
            for (i, face) in c.entries()[idx].faces.iter().enumerate() {
                let row = position[c.position(face).expect("validated face")];
                let sign = if signed && i % 2 == 1 { -1 } else { 1 };
                let v = col.get(&row).cloned().unwrap_or_else(C::zero).add(&C::from_int(sign));
                if v.is_zero() {
                    col.remove(&row);
                } else {
                    col.insert(row, v);
                }
            }
            col
        })
        .collect()
}

/// Persistence pairs of a filtration by column reduction.
///
/// Zero-length pairs (a simplex killed by one born at the same time) are
/// omitted. Output is sorted by dimension, birth, then death (essential last).
pub fn persistence_pairs(
    c: &VariableComplex,
    field: FieldTag,
) -> Result<Vec<PersistencePair>, HomologyError> {
    if !is_filtration(c) {
        return Err(HomologyError::NotFiltration);
    }
    let everything = StaticComplex::from_selection(c, |_| true);
    let top = everything.max_dim().unwrap_or(0);
    if let Some(dim) = (1..=top).find(|&n| !chain_condition_holds(&everything, n, field)) {
        return Err(HomologyError::ChainCondition { dim, field });
    }
    let order = filtration_order(c);
    let lows = match field {
        FieldTag::F2 => reduce(boundary_columns::<Gf2>(c, &order, false)),
        FieldTag::Q => reduce(boundary_columns::<Rational>(c, &order, true)),
    };
    let entry = |pos: usize| &c.entries()[order[pos]];
    let mut killed = vec![false; order.len()];
    let mut pairs = Vec::new();
    for (j, low) in lows.iter().enumerate() {
        if let Some(i) = *low {
            killed[i] = true;
            let (birth, death) = (entry(i).birth(), entry(j).birth());
            if birth < death {
                pairs.push(PersistencePair::finite(entry(i).dim, birth.clone(), death.clone()));
            }
        }
    }
    for (j, low) in lows.iter().enumerate() {
        if low.is_none() && !killed[j] {
            pairs.push(PersistencePair::essential(entry(j).dim, entry(j).birth().clone()));
        }
    }
    pairs.sort_by(|a, b| {
        a.dimension
            .cmp(&b.dimension)
            .then_with(|| a.birth.cmp(&b.birth))
            .then_with(|| match (&a.death, &b.death) {
                (Some(x), Some(y)) => x.cmp(y),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
    });
    Ok(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    Ordinary,
    Relative,
    Diagonal,
}

pub fn classify_point(p: &Lifetime) -> PointClass {
    match p.orientation() {
        Orientation::Positive => PointClass::Ordinary,
        Orientation::Negative => PointClass::Relative,
        Orientation::Degenerate => PointClass::Diagonal,
    }
}

/// Multiset of diagram points, ordered by birth then death.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceDiagram {
    bounds: Bounds,
    points: BTreeMap<(Rational, Rational), usize>,
}

impl PersistenceDiagram {
    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distinct points with their multiplicities.
    pub fn points(&self) -> Vec<(Lifetime, usize)> {
        self.points
            .iter()
            .map(|((b, d), &m)| {
                let p = self.bounds.lifetime(b.clone(), d.clone()).expect("checked on insert");
                (p, m)
            })
            .collect()
    }

    pub fn multiplicity(&self, p: &Lifetime) -> usize {
        self.points
            .get(&(p.x1().clone(), p.x2().clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.points.values().sum()
    }

    /// Same support, every multiplicity set to one.
    pub fn collapse_multiplicity(&self) -> Self {
        PersistenceDiagram {
            bounds: self.bounds.clone(),
            points: self.points.keys().map(|k| (k.clone(), 1)).collect(),
        }
    }
}

/// Aggregates pairs into diagram points; essential deaths map to `eps2`.
pub fn diagram(
    pairs: &[PersistencePair],
    bounds: &Bounds,
) -> Result<PersistenceDiagram, AlgebraError> {
    let mut points = BTreeMap::new();
    for pair in pairs {
        let death = pair.death.clone().unwrap_or_else(|| bounds.eps2().clone());
        let p = bounds.lifetime(pair.birth.clone(), death)?;
        *points.entry((p.x1().clone(), p.x2().clone())).or_insert(0) += 1;
    }
    Ok(PersistenceDiagram {
        bounds: bounds.clone(),
        points,
    })
}

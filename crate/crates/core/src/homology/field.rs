//! Coefficient fields and exact Gaussian elimination.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Coefficient field selector for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldTag {
    #[default]
    F2,
    Q,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::F2 => "f2",
            FieldTag::Q => "q",
        })
    }
}

impl FromStr for FieldTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f2" => Ok(FieldTag::F2),
            "q" => Ok(FieldTag::Q),
            other => Err(format!("unknown field `{other}` (expected f2 or q)")),
        }
    }
}

/// Minimal field interface used by elimination and column reduction.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; only called on nonzero values.
    fn inv(&self) -> Self;
}

/// The two-element field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2(pub bool);

impl Coefficient for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn from_int(n: i64) -> Self {
        Gf2(n.rem_euclid(2) == 1)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        debug_assert!(self.0, "inverse of zero");
        *self
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn from_int(n: i64) -> Self {
        crate::rational::int(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Rational::one() / self
    }
}

/// Rank of a dense row-major matrix by exact row reduction.
pub fn rank<C: Coefficient>(mut rows: Vec<Vec<C>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv();
        let pivot_row: Vec<C> = rows[rank].iter().map(|v| v.mul(&inv)).collect();
        for r in (rank + 1)..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].neg();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                rows[r][c] = rows[r][c].add(&factor.mul(pv));
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix after mapping entries into the field.
pub fn rank_over(field: FieldTag, entries: &[Vec<i64>]) -> usize {
    fn lift<C: Coefficient>(entries: &[Vec<i64>]) -> Vec<Vec<C>> {
        entries
            .iter()
            .map(|row| row.iter().map(|&v| C::from_int(v)).collect())
            .collect()
    }
    match field {
        FieldTag::F2 => rank(lift::<Gf2>(entries)),
        FieldTag::Q => rank(lift::<Rational>(entries)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let zero = vec![vec![0; 3]; 3];
        assert_eq!(rank_over(FieldTag::F2, &zero), 0);
        assert_eq!(rank_over(FieldTag::Q, &zero), 0);
        let id: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| i64::from(i == j)).collect())
            .collect();
        assert_eq!(rank_over(FieldTag::F2, &id), 3);
        assert_eq!(rank_over(FieldTag::Q, &id), 3);
        assert_eq!(rank_over(FieldTag::Q, &[]), 0);
    }

    #[test]
    fn field_dependent_rank() {
        // 2 is zero in F2
        let m = vec![vec![2, 0], vec![0, 1]];
        assert_eq!(rank_over(FieldTag::F2, &m), 1);
        assert_eq!(rank_over(FieldTag::Q, &m), 2);
        // triangle boundary: rank 2 over both fields
        let tri = vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(rank_over(FieldTag::F2, &tri), 2);
        let signed = vec![vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]];
        assert_eq!(rank_over(FieldTag::Q, &signed), 2);
        // the unsigned version has rank 3 over Q
        assert_eq!(rank_over(FieldTag::Q, &tri), 3);
    }

    #[test]
    fn parses_tags() {
        assert_eq!("F2".parse::<FieldTag>().unwrap(), FieldTag::F2);
        assert_eq!("q".parse::<FieldTag>().unwrap(), FieldTag::Q);
        assert!("z".parse::<FieldTag>().is_err());
    }
}

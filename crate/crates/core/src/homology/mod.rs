//! Homology of lifetime-indexed complexes.
//!
//! Pointwise Betti numbers of slices are glued into rank step functions over
//! time. For filtrations (nothing dies inside the window) the classical
//! column reduction additionally pairs births with deaths.

mod betti;
mod field;
mod persistence;

use std::fmt::Write as _;

use thiserror::Error;

pub use betti::{
    betti, betti_at, betti_curve, betti_curve_refined, boundary_matrix, chain_condition_holds,
    BettiCurve, BettiStep, BoundaryMatrix,
};
pub use field::{rank, rank_over, Coefficient, FieldTag, Gf2};
pub use persistence::{
    classify_point, diagram, filtration_order, is_filtration, persistence_pairs, PairClass,
    PersistenceDiagram, PersistencePair, PointClass,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary maps do not compose to zero at dimension {dim} over {field}")]
    ChainCondition { dim: usize, field: FieldTag },
    #[error("not a filtration: some simplex dies inside the window; use Betti curves instead")]
    NotFiltration,
}

/// `dim,start,end,end_included,rank`, one step per line, no header.
pub fn curves_csv(curves: &[BettiCurve]) -> String {
    let mut out = String::new();
    for curve in curves {
        for s in &curve.steps {
            writeln!(
                out,
                "{},{},{},{},{}",
                curve.dimension, s.start, s.end, s.end_included, s.rank
            )
            .unwrap();
        }
    }
    out
}

/// `dim,birth,death,class`, one pair per line, `inf` for essential deaths.
pub fn pairs_csv(pairs: &[PersistencePair]) -> String {
    let mut out = String::new();
    for p in pairs {
        let death = p.death.as_ref().map_or_else(|| "inf".to_string(), ToString::to_string);
        writeln!(out, "{},{},{},{}", p.dimension, p.birth, death, p.class).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{VariableComplex, WORKED_EXAMPLE};
    use crate::exec::Strategy;
    use crate::rational::int;

    #[test]
    fn csv_renderings() {
        let c = VariableComplex::parse(WORKED_EXAMPLE).unwrap();
        let curve = betti_curve(&c, 0, FieldTag::F2, Strategy::Sequential).unwrap();
        assert_eq!(curves_csv(&[curve]), "0,0,1,false,2\n0,1,5,true,1\n");
        let pairs = [
            PersistencePair::finite(0, int(0), int(1)),
            PersistencePair::essential(0, int(0)),
        ];
        assert_eq!(pairs_csv(&pairs), "0,0,1,ordinary\n0,0,inf,essential\n");
    }
}

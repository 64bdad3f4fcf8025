//! Semi-simplicial sets whose simplices carry lifetimes.
//!
//! A simplex exists on the closed interval `[birth, death]` and must not
//! outlive any of its faces, i.e. its lifetime sits below each face's
//! lifetime in the algebra. Slicing at a time `t` yields an ordinary static
//! complex. Simplicial identities between face maps are deliberately not
//! enforced; the chain condition is checked over the chosen field instead.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lifetime::{AlgebraError, Bounds, Lifetime, Orientation};
use crate::rational::{parse_rational, Rational};

/// The shipped time-varying triangle (three vertices, three edges, one 2-cell).
pub const WORKED_EXAMPLE: &str = include_str!("../../../fixtures/worked_example.pc");

const HEADER: &str = "pcomplex v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate simplex id `{id}`")]
    DuplicateId { id: String },
    #[error("simplex `{id}` references unknown face `{face}`")]
    UnknownFace { id: String, face: String },
    #[error("simplex `{id}` of dimension {dim} needs {expected} faces, found {found}")]
    FaceCount {
        id: String,
        dim: usize,
        expected: usize,
        found: usize,
    },
    #[error("face `{face}` of `{id}` has dimension {found}, expected {expected}")]
    FaceDimension {
        id: String,
        face: String,
        expected: usize,
        found: usize,
    },
    #[error("simplex `{id}` {lifetime} outlives its face `{face}` {face_lifetime}")]
    LifetimeContainment {
        id: String,
        face: String,
        lifetime: Lifetime,
        face_lifetime: Lifetime,
    },
    #[error("simplex `{id}` has a negatively oriented lifetime ({birth},{death})")]
    NegativeLifetime {
        id: String,
        birth: Rational,
        death: Rational,
    },
    #[error("simplex `{id}`: {source}")]
    Algebra {
        id: String,
        #[source]
        source: AlgebraError,
    },
}

impl ComplexError {
    /// Short stable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            ComplexError::Parse { .. } => "parse",
            ComplexError::DuplicateId { .. } => "duplicate-id",
            ComplexError::UnknownFace { .. } => "unknown-face",
            ComplexError::FaceCount { .. } => "face-count",
            ComplexError::FaceDimension { .. } => "face-dimension",
            ComplexError::LifetimeContainment { .. } => "lifetime-containment",
            ComplexError::NegativeLifetime { .. } => "negative-lifetime",
            ComplexError::Algebra { .. } => "bounds",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexEntry {
    pub id: String,
    pub dim: usize,
    pub lifetime: Lifetime,
    pub faces: Vec<String>,
}

impl SimplexEntry {
    pub fn birth(&self) -> &Rational {
        self.lifetime.x1()
    }

    pub fn death(&self) -> &Rational {
        self.lifetime.x2()
    }

    pub fn alive_at(&self, t: &Rational) -> bool {
        self.birth() <= t && t <= self.death()
    }
}

/// Unvalidated entry data, as read from a file or produced by a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntrySpec {
    pub id: String,
    pub dim: usize,
    pub birth: Rational,
    pub death: Rational,
    pub faces: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableComplex {
    entries: Vec<SimplexEntry>,
    bounds: Bounds,
    index: HashMap<String, usize>,
}

fn valid_id(id: &str) -> bool {
    let mut chars = id.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableComplex {
    /// Validates entries against `bounds`, or against square bounds at the
    /// largest death when none are given.
    pub fn new(specs: Vec<EntrySpec>, bounds: Option<Bounds>) -> Result<Self, ComplexError> {
        let bounds = match bounds {
            Some(b) => b,
            None => default_bounds(&specs),
        };
        let mut index = HashMap::with_capacity(specs.len());
        for (i, s) in specs.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(ComplexError::DuplicateId { id: s.id.clone() });
            }
        }
        let mut entries = Vec::with_capacity(specs.len());
        for s in specs {
            if s.birth > s.death {
                return Err(ComplexError::NegativeLifetime {
                    id: s.id,
                    birth: s.birth,
                    death: s.death,
                });
            }
            let lifetime = bounds
                .lifetime(s.birth.clone(), s.death.clone())
                .map_err(|source| ComplexError::Algebra {
                    id: s.id.clone(),
                    source,
                })?;
            entries.push(SimplexEntry {
                id: s.id,
                dim: s.dim,
                lifetime,
                faces: s.faces,
            });
        }
        for e in &entries {
            let expected = if e.dim == 0 { 0 } else { e.dim + 1 };
            if e.faces.len() != expected {
                return Err(ComplexError::FaceCount {
                    id: e.id.clone(),
                    dim: e.dim,
                    expected,
                    found: e.faces.len(),
                });
            }
            let mut outlived: Option<&SimplexEntry> = None;
            for face in &e.faces {
                let fe = index
                    .get(face)
                    .map(|&k| &entries[k])
                    .ok_or_else(|| ComplexError::UnknownFace {
                        id: e.id.clone(),
                        face: face.clone(),
                    })?;
                if fe.dim + 1 != e.dim {
                    return Err(ComplexError::FaceDimension {
                        id: e.id.clone(),
                        face: face.clone(),
                        expected: e.dim - 1,
                        found: fe.dim,
                    });
                }
                // report the most constraining face: earliest death, then latest birth
                if !e.lifetime.leq(&fe.lifetime).expect("shared bounds")
                    && outlived.map_or(true, |o| {
                        (fe.death(), std::cmp::Reverse(fe.birth()))
                            < (o.death(), std::cmp::Reverse(o.birth()))
                    })
                {
                    outlived = Some(fe);
                }
            }
            if let Some(fe) = outlived {
                return Err(ComplexError::LifetimeContainment {
                    id: e.id.clone(),
                    face: fe.id.clone(),
                    lifetime: e.lifetime.clone(),
                    face_lifetime: fe.lifetime.clone(),
                });
            }
        }
        Ok(VariableComplex {
            entries,
            bounds,
            index,
        })
    }

    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let perr = |line: usize, message: String| ComplexError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, HEADER)) => {}
            Some((n, other)) => return Err(perr(n, format!("expected `{HEADER}`, found `{other}`"))),
            None => return Err(perr(1, format!("missing `{HEADER}` header"))),
        }
        let rat = |line: usize, s: &str| parse_rational(s).map_err(|e| perr(line, e.to_string()));
        let mut bounds = None;
        let mut specs = Vec::new();
        for (n, line) in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "bounds" => {
                    if bounds.is_some() || !specs.is_empty() {
                        return Err(perr(n, "`bounds` must appear once, before any simplex".into()));
                    }
                    if words.len() != 3 {
                        return Err(perr(n, "expected `bounds <eps1> <eps2>`".into()));
                    }
                    let b = Bounds::new(rat(n, words[1])?, rat(n, words[2])?)
                        .map_err(|e| perr(n, e.to_string()))?;
                    bounds = Some(b);
                }
                "simplex" => {
                    if words.len() < 5 {
                        return Err(perr(
                            n,
                            "expected `simplex <id> <dim> <birth> <death> [faces...]`".into(),
                        ));
                    }
                    let id = words[1];
                    if !valid_id(id) {
                        return Err(perr(n, format!("invalid identifier `{id}`")));
                    }
                    let dim: usize = words[2]
                        .parse()
                        .map_err(|_| perr(n, format!("invalid dimension `{}`", words[2])))?;
                    let faces: Vec<String> = words[5..].iter().map(|s| s.to_string()).collect();
                    if let Some(bad) = faces.iter().find(|f| !valid_id(f)) {
                        return Err(perr(n, format!("invalid face identifier `{bad}`")));
                    }
                    specs.push(EntrySpec {
                        id: id.to_string(),
                        dim,
                        birth: rat(n, words[3])?,
                        death: rat(n, words[4])?,
                        faces,
                    });
                }
                other => return Err(perr(n, format!("unknown directive `{other}`"))),
            }
        }
        Self::new(specs, bounds)
    }

    pub fn entries(&self) -> &[SimplexEntry] {
        &self.entries
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn get(&self, id: &str) -> Option<&SimplexEntry> {
        self.index.get(id).map(|&i| &self.entries[i])
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.dim).max()
    }

    /// The static complex of simplices alive at `t` (closed intervals).
    pub fn slice(&self, t: &Rational) -> StaticComplex {
        StaticComplex::from_selection(self, |e| e.alive_at(t))
    }

    /// Simplices alive throughout `q`, i.e. those whose lifetime lies above `q`.
    pub fn alive_over(&self, q: &Lifetime) -> Result<Vec<&str>, AlgebraError> {
        if q.orientation() == Orientation::Negative {
            return Err(AlgebraError::NegativeOrientation(q.clone()));
        }
        let mut out = Vec::new();
        for e in &self.entries {
            if q.leq(&e.lifetime)? {
                out.push(e.id.as_str());
            }
        }
        Ok(out)
    }

    /// All births and deaths, sorted and deduplicated.
    pub fn critical_values(&self) -> Vec<Rational> {
        let set: BTreeSet<Rational> = self
            .entries
            .iter()
            .flat_map(|e| [e.birth().clone(), e.death().clone()])
            .collect();
        set.into_iter().collect()
    }

    /// Critical values with the midpoint of every consecutive gap inserted.
    pub fn sample_points(&self) -> Vec<Rational> {
        with_midpoints(&self.critical_values())
    }
}

pub(crate) fn with_midpoints(points: &[Rational]) -> Vec<Rational> {
    let two = Rational::one() + Rational::one();
    let mut out = Vec::with_capacity(points.len() * 2);
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            out.push((&points[i - 1] + p) / &two);
        }
        out.push(p.clone());
    }
    out
}

fn default_bounds(specs: &[EntrySpec]) -> Bounds {
    let max_death = specs
        .iter()
        .map(|s| s.death.clone())
        .max()
        .filter(|d| *d > Rational::zero())
        .unwrap_or_else(Rational::one);
    Bounds::new(max_death.clone(), max_death).expect("positive by construction")
}

impl fmt::Display for VariableComplex {
    /// Canonical rendering; parsing it back yields an equal complex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}")?;
        writeln!(f, "bounds {} {}", self.bounds.eps1(), self.bounds.eps2())?;
        for e in &self.entries {
            let mut line = format!("simplex {} {} {} {}", e.id, e.dim, e.birth(), e.death());
            for face in &e.faces {
                write!(line, " {face}").unwrap();
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    /// Positions of the faces in the previous dimension's cell list, in face order.
    pub faces: Vec<usize>,
}

/// A finite semi-simplicial set without time: cells grouped by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StaticComplex {
    cells: Vec<Vec<Cell>>,
}

impl StaticComplex {
    /// Keeps the selected entries, in entry order. The selection must be
    /// closed under faces.
    pub fn from_selection<F>(complex: &VariableComplex, mut keep: F) -> Self
    where
        F: FnMut(&SimplexEntry) -> bool,
    {
        let mut cells: Vec<Vec<Cell>> = Vec::new();
        let mut position: HashMap<&str, usize> = HashMap::new();
        let mut selected: Vec<&SimplexEntry> =
            complex.entries().iter().filter(|e| keep(e)).collect();
        // lower dimensions first so face positions are known; stable keeps entry order
        selected.sort_by_key(|e| e.dim);
        for e in selected {
            if cells.len() <= e.dim {
                cells.resize_with(e.dim + 1, Vec::new);
            }
            let faces = e
                .faces
                .iter()
                .map(|f| {
                    *position
                        .get(f.as_str())
                        .unwrap_or_else(|| panic!("selection not closed under faces: `{f}`"))
                })
                .collect();
            position.insert(e.id.as_str(), cells[e.dim].len());
            cells[e.dim].push(Cell {
                id: e.id.clone(),
                faces,
            });
        }
        StaticComplex { cells }
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.cells.iter().rposition(|c| !c.is_empty())
    }

    pub fn ids(&self) -> Vec<&str> {
        self.cells.iter().flatten().map(|c| c.id.as_str()).collect()
    }

    pub fn is_closed_under_faces(&self) -> bool {
        self.cells.iter().enumerate().all(|(d, cs)| {
            cs.iter().all(|c| {
                if d == 0 {
                    c.faces.is_empty()
                } else {
                    c.faces.iter().all(|&f| f < self.count(d - 1))
                }
            })
        })
    }

    /// Alternating count of cells.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, cs)| if d % 2 == 0 { cs.len() as i64 } else { -(cs.len() as i64) })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn fixture() -> VariableComplex {
        VariableComplex::parse(WORKED_EXAMPLE).unwrap()
    }

    fn sorted(mut v: Vec<&str>) -> Vec<&str> {
        v.sort_unstable();
        v
    }

    #[test]
    fn fixture_parses() {
        let c = fixture();
        assert_eq!(c.len(), 7);
        assert_eq!(c.bounds(), &Bounds::square(5));
        assert_eq!(c.get("t").unwrap().faces, ["d", "e", "f"]);
        assert_eq!(c.max_dim(), Some(2));
    }

    #[test]
    fn containment_violation_names_simplex_and_face() {
        let text = WORKED_EXAMPLE.replace("simplex t 2 2 3", "simplex t 2 2 5");
        match VariableComplex::parse(&text) {
            Err(ComplexError::LifetimeContainment { id, face, .. }) => {
                assert_eq!((id.as_str(), face.as_str()), ("t", "e"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn each_error_kind() {
        let cases = [
            ("pcomplex v1\nsimplex a 0 0 x\n", "parse"),
            ("simplex a 0 0 1\n", "parse"),
            ("pcomplex v1\nsimplex a 0 0 1\nsimplex a 0 0 1\n", "duplicate-id"),
            ("pcomplex v1\nsimplex a 0 0 1\nsimplex e 1 0 1 a q\n", "unknown-face"),
            ("pcomplex v1\nsimplex a 0 0 1\nsimplex e 1 0 1 a\n", "face-count"),
            (
                "pcomplex v1\nsimplex a 0 0 1\nsimplex e 1 0 1 a a\nsimplex g 1 0 1 a e\n",
                "face-dimension",
            ),
            ("pcomplex v1\nsimplex a 0 1 2\nsimplex b 0 0 2\nsimplex e 1 0 2 a b\n", "lifetime-containment"),
            ("pcomplex v1\nsimplex a 0 2 1\n", "negative-lifetime"),
            ("pcomplex v1\nbounds 1 1\nsimplex a 0 0 2\n", "bounds"),
        ];
        for (text, kind) in cases {
            let err = VariableComplex::parse(text).unwrap_err();
            assert_eq!(err.kind(), kind, "{text:?} gave {err}");
        }
    }

    #[test]
    fn parse_errors_report_lines() {
        let err = VariableComplex::parse("pcomplex v1\n# c\n\nsimplex 9x 0 0 1\n").unwrap_err();
        assert!(matches!(err, ComplexError::Parse { line: 4, .. }));
        let err = VariableComplex::parse("pcomplex v1\nsimplex a 0 0 1\nbounds 2 2\n").unwrap_err();
        assert!(matches!(err, ComplexError::Parse { line: 3, .. }));
    }

    #[test]
    fn slices() {
        let c = fixture();
        assert_eq!(sorted(c.slice(&int(0)).ids()), ["x", "y"]);
        assert_eq!(c.slice(&int(2)).ids().len(), 7);
        assert_eq!(sorted(c.slice(&ratio(7, 2)).ids()), ["d", "x", "y"]);
        for t in c.sample_points() {
            assert!(c.slice(&t).is_closed_under_faces());
        }
    }

    #[test]
    fn alive_over_queries() {
        let c = fixture();
        let b = c.bounds().clone();
        let q = b.point(1, 3).unwrap();
        assert_eq!(c.alive_over(&q).unwrap(), ["x", "y", "z", "d", "e", "f"]);
        assert_eq!(c.alive_over(&b.point(2, 3).unwrap()).unwrap().len(), 7);
        for t in c.sample_points() {
            let q = b.lifetime(t.clone(), t.clone()).unwrap();
            assert_eq!(sorted(c.alive_over(&q).unwrap()), sorted(c.slice(&t).ids()));
        }
        assert!(matches!(
            c.alive_over(&b.point(3, 1).unwrap()),
            Err(AlgebraError::NegativeOrientation(_))
        ));
    }

    #[test]
    fn critical_and_sample_points() {
        let c = fixture();
        assert_eq!(c.critical_values(), (0..=5).map(int).collect::<Vec<_>>());
        let expected: Vec<Rational> = (0..=10).map(|k| ratio(k, 2)).collect();
        assert_eq!(c.sample_points(), expected);

        let single = VariableComplex::parse("pcomplex v1\nsimplex a 0 1 1\n").unwrap();
        assert_eq!(single.critical_values(), [int(1)]);
        assert_eq!(single.sample_points(), [int(1)]);
    }

    #[test]
    fn canonical_rendering_round_trips() {
        let c = fixture();
        let text = c.to_string();
        assert!(text.starts_with("pcomplex v1\nbounds 5 5\nsimplex x 0 0 5\n"));
        let back = VariableComplex::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn empty_complex() {
        let c = VariableComplex::parse("pcomplex v1\n").unwrap();
        assert!(c.is_empty());
        assert!(c.critical_values().is_empty());
        assert_eq!(c.slice(&int(0)).max_dim(), None);
    }
}

//! The canonical sheaf `x ↦ ↓x` over the lifetime algebra.
//!
//! A section over `x` is any element below `x`, and restriction along `y <= x`
//! is meet with `y`. Sections are kept symbolic (a single [`Lifetime`]); every
//! sheaf condition reduces to a lattice identity. The subobject classifier has
//! the same sections, so [`omega_contains`] is a membership test on `↓x`.

use thiserror::Error;

use crate::lifetime::{join_family, AlgebraError, Bounds, Lifetime, RawPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("restriction target {to} is not below {from}")]
    BadNesting { from: Lifetime, to: Lifetime },
    #[error("{section} is not a section over {over}")]
    BadSection { section: Lifetime, over: Lifetime },
    #[error("a cover needs at least one item")]
    EmptyCover,
    #[error("item {index}: section {section} is not below its patch {patch}")]
    SectionOutsidePatch {
        index: usize,
        section: Lifetime,
        patch: Lifetime,
    },
    #[error("declared base {declared} differs from the join of the patches {actual}")]
    BaseMismatch { declared: Lifetime, actual: Lifetime },
    #[error("incompatible family: items {i} and {j} disagree on their overlap ({left} vs {right})")]
    Incompatible {
        i: usize,
        j: usize,
        left: Lifetime,
        right: Lifetime,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Restriction `z ↦ z ^ to` from sections over `from` to sections over `to`.
pub fn restrict(z: &Lifetime, from: &Lifetime, to: &Lifetime) -> Result<Lifetime, SheafError> {
    if !to.leq(from)? {
        return Err(SheafError::BadNesting {
            from: from.clone(),
            to: to.clone(),
        });
    }
    if !z.leq(from)? {
        return Err(SheafError::BadSection {
            section: z.clone(),
            over: from.clone(),
        });
    }
    Ok(z.meet(to)?)
}

/// Membership in the classifier's sections `Ω(x) = ↓x`.
pub fn omega_contains(x: &Lifetime, z: &Lifetime) -> Result<bool, AlgebraError> {
    z.leq(x)
}

/// Restriction in the up-set presheaf `x ↦ ↑x`: for `to <= from` we have
/// `↑from ⊆ ↑to`, so restriction is the inclusion and returns `z` unchanged.
pub fn knowledge_restrict(
    z: &Lifetime,
    from: &Lifetime,
    to: &Lifetime,
) -> Result<Lifetime, SheafError> {
    if !to.leq(from)? {
        return Err(SheafError::BadNesting {
            from: from.clone(),
            to: to.clone(),
        });
    }
    if !from.leq(z)? {
        return Err(SheafError::BadSection {
            section: z.clone(),
            over: from.clone(),
        });
    }
    Ok(z.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverItem {
    pub patch: Lifetime,
    pub section: Lifetime,
}

/// A finite cover of `base` by patches, each carrying a section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    items: Vec<CoverItem>,
    base: Lifetime,
}

impl Cover {
    /// Builds a cover whose base is the join of the patches.
    pub fn new(items: Vec<CoverItem>) -> Result<Self, SheafError> {
        let first = items.first().ok_or(SheafError::EmptyCover)?;
        let patches: Vec<Lifetime> = items.iter().map(|it| it.patch.clone()).collect();
        let base = join_family(first.patch.bounds(), &patches)?;
        for (index, it) in items.iter().enumerate() {
            if !it.section.leq(&it.patch)? {
                return Err(SheafError::SectionOutsidePatch {
                    index,
                    section: it.section.clone(),
                    patch: it.patch.clone(),
                });
            }
        }
        Ok(Cover { items, base })
    }

    /// Like [`Cover::new`] but checks a declared base against the join.
    pub fn with_base(items: Vec<CoverItem>, declared: Lifetime) -> Result<Self, SheafError> {
        let cover = Self::new(items)?;
        if cover.base != declared {
            return Err(SheafError::BaseMismatch {
                declared,
                actual: cover.base,
            });
        }
        Ok(cover)
    }

    pub fn items(&self) -> &[CoverItem] {
        &self.items
    }

    pub fn base(&self) -> &Lifetime {
        &self.base
    }

    pub fn patches(&self) -> Vec<Lifetime> {
        self.items.iter().map(|it| it.patch.clone()).collect()
    }

    /// First pair `(i, j)`, `i < j`, whose sections disagree on the overlap.
    ///
    /// Restricting `z_i` and `z_j` to `x_i ^ x_j` gives `z_i ^ x_j` and
    /// `z_j ^ x_i` (as `z_i <= x_i`), so those are compared directly.
    pub fn first_incompatibility(&self) -> Option<(usize, usize, Lifetime, Lifetime)> {
        for (i, a) in self.items.iter().enumerate() {
            for (j, b) in self.items.iter().enumerate().skip(i + 1) {
                let left = a.section.meet(&b.patch).expect("cover shares bounds");
                let right = b.section.meet(&a.patch).expect("cover shares bounds");
                if left != right {
                    return Some((i, j, left, right));
                }
            }
        }
        None
    }

    pub fn is_compatible(&self) -> bool {
        self.first_incompatibility().is_none()
    }

    /// Glues a compatible family into the unique section over the base that
    /// restricts to each item: the join of the sections.
    pub fn glue(&self) -> Result<Lifetime, SheafError> {
        if let Some((i, j, left, right)) = self.first_incompatibility() {
            return Err(SheafError::Incompatible { i, j, left, right });
        }
        let sections: Vec<Lifetime> = self.items.iter().map(|it| it.section.clone()).collect();
        Ok(join_family(self.base.bounds(), &sections)?)
    }

    /// Parses the cover file format:
    ///
    /// ```text
    /// # comment
    /// bounds 10 10          (optional; defaults to the supplied bounds)
    /// base=(1,8)            (optional; checked against the join of patches)
    /// patch=(1,5) section=(2,5)
    /// ```
    pub fn parse(text: &str, default_bounds: &Bounds) -> Result<Self, SheafError> {
        let mut bounds = default_bounds.clone();
        let mut base: Option<(usize, RawPair)> = None;
        let mut raw_items: Vec<(usize, RawPair, RawPair)> = Vec::new();
        let err = |line: usize, message: String| SheafError::Parse { line, message };
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("bounds") {
                if !raw_items.is_empty() || base.is_some() {
                    return Err(err(line_no, "bounds must precede items".into()));
                }
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(err(line_no, "expected `bounds <eps1> <eps2>`".into()));
                }
                let parse = |s: &str| {
                    crate::rational::parse_rational(s).map_err(|e| err(line_no, e.to_string()))
                };
                bounds = Bounds::new(parse(parts[0])?, parse(parts[1])?)
                    .map_err(|e| err(line_no, e.to_string()))?;
            } else if let Some(rest) = line.strip_prefix("base=") {
                if base.is_some() {
                    return Err(err(line_no, "duplicate base".into()));
                }
                let pair = rest.parse().map_err(|e: crate::lifetime::LifetimeParseError| {
                    err(line_no, e.to_string())
                })?;
                base = Some((line_no, pair));
            } else if let Some(rest) = line.strip_prefix("patch=") {
                let (patch, section) = rest
                    .split_once("section=")
                    .ok_or_else(|| err(line_no, "expected `patch=(a,b) section=(c,d)`".into()))?;
                let pp = patch.parse().map_err(|e: crate::lifetime::LifetimeParseError| {
                    err(line_no, e.to_string())
                })?;
                let sp = section.parse().map_err(|e: crate::lifetime::LifetimeParseError| {
                    err(line_no, e.to_string())
                })?;
                raw_items.push((line_no, pp, sp));
            } else {
                return Err(err(line_no, format!("unrecognised line `{line}`")));
            }
        }
        let attach = |line: usize, RawPair(a, b): RawPair| {
            bounds.lifetime(a, b).map_err(|e| err(line, e.to_string()))
        };
        let items = raw_items
            .into_iter()
            .map(|(line, p, s)| {
                Ok(CoverItem {
                    patch: attach(line, p)?,
                    section: attach(line, s)?,
                })
            })
            .collect::<Result<Vec<_>, SheafError>>()?;
        match base {
            Some((line, pair)) => Cover::with_base(items, attach(line, pair)?),
            None => Cover::new(items),
        }
    }
}

/// Whether agreement of `s` and `t` on every patch forces `s = t`.
/// For this sheaf the answer is always yes; the function exists to drive
/// randomized checks.
pub fn separated_check(
    base: &Lifetime,
    patches: &[Lifetime],
    s: &Lifetime,
    t: &Lifetime,
) -> Result<bool, SheafError> {
    let mut agree = true;
    for x in patches {
        let rs = restrict(s, base, x)?;
        let rt = restrict(t, base, x)?;
        if rs != rt {
            agree = false;
        }
    }
    Ok(!agree || s == t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Bounds {
        Bounds::square(10)
    }

    fn p(x1: i64, x2: i64) -> Lifetime {
        b().point(x1, x2).unwrap()
    }

    fn item(patch: (i64, i64), section: (i64, i64)) -> CoverItem {
        CoverItem {
            patch: p(patch.0, patch.1),
            section: p(section.0, section.1),
        }
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restrict(&p(5, 7), &p(2, 8), &p(4, 6)).unwrap(), p(5, 6));
        assert_eq!(restrict(&p(5, 7), &p(2, 8), &p(2, 8)).unwrap(), p(5, 7));
        let step = restrict(&p(5, 7), &p(2, 8), &p(4, 6)).unwrap();
        let composite = restrict(&step, &p(4, 6), &p(5, 5)).unwrap();
        assert_eq!(composite, restrict(&p(5, 7), &p(2, 8), &p(5, 5)).unwrap());
        assert_eq!(composite, p(5, 5));
    }

    #[test]
    fn restriction_errors_are_distinct() {
        assert!(matches!(
            restrict(&p(5, 7), &p(4, 6), &p(2, 8)),
            Err(SheafError::BadNesting { .. })
        ));
        assert!(matches!(
            restrict(&p(1, 9), &p(2, 8), &p(4, 6)),
            Err(SheafError::BadSection { .. })
        ));
    }

    #[test]
    fn compatibility_and_gluing() {
        let good = Cover::new(vec![item((1, 5), (2, 5)), item((3, 8), (3, 6))]).unwrap();
        assert!(good.is_compatible());
        assert_eq!(good.base(), &p(1, 8));
        let glued = good.glue().unwrap();
        assert_eq!(glued, p(2, 6));
        assert_eq!(restrict(&glued, good.base(), &p(1, 5)).unwrap(), p(2, 5));
        assert_eq!(restrict(&glued, good.base(), &p(3, 8)).unwrap(), p(3, 6));

        let bad = Cover::new(vec![item((1, 5), (2, 4)), item((3, 8), (4, 6))]).unwrap();
        assert!(!bad.is_compatible());
        match bad.glue() {
            Err(SheafError::Incompatible { i, j, left, right }) => {
                assert_eq!((i, j), (0, 1));
                assert_eq!((left, right), (p(3, 4), p(4, 5)));
            }
            other => panic!("expected incompatibility, got {other:?}"),
        }

        let single = Cover::new(vec![item((2, 7), (3, 6))]).unwrap();
        assert!(single.is_compatible());
        assert_eq!(single.glue().unwrap(), p(3, 6));
    }

    #[test]
    fn cover_validation() {
        assert_eq!(Cover::new(vec![]), Err(SheafError::EmptyCover));
        assert!(matches!(
            Cover::new(vec![item((3, 5), (1, 5))]),
            Err(SheafError::SectionOutsidePatch { index: 0, .. })
        ));
        assert!(matches!(
            Cover::with_base(vec![item((1, 5), (2, 5))], p(0, 9)),
            Err(SheafError::BaseMismatch { .. })
        ));
    }

    #[test]
    fn separated_examples() {
        let patches = [p(1, 5), p(3, 8)];
        assert!(separated_check(&p(1, 8), &patches, &p(2, 6), &p(2, 6)).unwrap());
        assert!(separated_check(&p(1, 8), &[p(1, 8)], &p(2, 6), &p(2, 5)).unwrap());
    }

    #[test]
    fn omega_sections() {
        assert!(omega_contains(&p(3, 7), &p(5, 6)).unwrap());
        assert!(!omega_contains(&p(3, 7), &p(2, 6)).unwrap());
        assert!(omega_contains(&p(3, 7), &p(3, 7)).unwrap());
    }

    #[test]
    fn knowledge_presheaf_is_inclusion() {
        assert_eq!(knowledge_restrict(&p(1, 9), &p(2, 8), &p(4, 6)).unwrap(), p(1, 9));
        assert!(knowledge_restrict(&p(3, 7), &p(2, 8), &p(4, 6)).is_err());
    }

    #[test]
    fn parses_cover_files() {
        let text = "# two patches\nbase=(1,8)\npatch=(1,5) section=(2,5)\npatch=(3,8) section=(3,6)\n";
        let cover = Cover::parse(text, &b()).unwrap();
        assert_eq!(cover.items().len(), 2);
        assert_eq!(cover.glue().unwrap(), p(2, 6));

        let with_bounds = "bounds 20 20\npatch=(1,15) section=(2,5)\n";
        let c = Cover::parse(with_bounds, &b()).unwrap();
        assert_eq!(c.base().bounds(), &Bounds::square(20));

        assert!(matches!(
            Cover::parse("patch=(1,5)\n", &b()),
            Err(SheafError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Cover::parse("patch=(1,5) section=(2,5)\nwhat\n", &b()),
            Err(SheafError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Cover::parse("patch=(1,50) section=(2,5)\n", &b()),
            Err(SheafError::Parse { line: 1, .. })
        ));
    }
}

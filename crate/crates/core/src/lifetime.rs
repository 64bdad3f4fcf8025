//! The algebra of lifetimes.
//!
//! Elements are points `(x1, x2)` of the closed rectangle `[0, eps1] x [0, eps2]`,
//! ordered by `a <= b` iff `b.x1 <= a.x1` and `a.x2 <= b.x2`: a lifetime sits
//! below another when it is born no earlier and dies no later. The top element
//! is `(0, eps2)` and the bottom is `(eps1, 0)`. Meets take the later birth and
//! the earlier death; joins the reverse. The result is a complete Heyting
//! algebra, and everything here is computed exactly.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{parse_rational, Rational, RationalParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("bounds must be positive, got ({eps1}, {eps2})")]
    InvalidBounds { eps1: Rational, eps2: Rational },
    #[error("lifetime ({x1},{x2}) lies outside the bounds ({eps1},{eps2})")]
    OutOfBounds {
        x1: Rational,
        x2: Rational,
        eps1: Rational,
        eps2: Rational,
    },
    #[error("lifetimes from different bounds cannot be combined: {left} vs {right}")]
    BoundsMismatch { left: Bounds, right: Bounds },
    #[error("operation needs a nonempty family")]
    EmptyFamily,
    #[error("{0} is not a prime element")]
    NotPrime(Lifetime),
    #[error("{0} is negatively oriented")]
    NegativeOrientation(Lifetime),
    #[error(transparent)]
    Parse(#[from] LifetimeParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LifetimeParseError {
    #[error("expected a pair `(a,b)`, found `{0}`")]
    Shape(String),
    #[error(transparent)]
    Rational(#[from] RationalParseError),
}

/// The ambient rectangle fixing the carrier, top and bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bounds {
    eps1: Rational,
    eps2: Rational,
}

impl Bounds {
    pub fn new(eps1: Rational, eps2: Rational) -> Result<Self, AlgebraError> {
        if !eps1.is_positive() || !eps2.is_positive() {
            return Err(AlgebraError::InvalidBounds { eps1, eps2 });
        }
        Ok(Bounds { eps1, eps2 })
    }

    /// Integer square bounds, the common case in tests and the CLI.
    pub fn square(eps: i64) -> Self {
        Self::new(crate::rational::int(eps), crate::rational::int(eps))
            .expect("square bounds must be positive")
    }

    pub fn eps1(&self) -> &Rational {
        &self.eps1
    }

    pub fn eps2(&self) -> &Rational {
        &self.eps2
    }

    pub fn top(&self) -> Lifetime {
        Lifetime::raw(Rational::zero(), self.eps2.clone(), self.clone())
    }

    pub fn bottom(&self) -> Lifetime {
        Lifetime::raw(self.eps1.clone(), Rational::zero(), self.clone())
    }

    pub fn lifetime(&self, x1: Rational, x2: Rational) -> Result<Lifetime, AlgebraError> {
        Lifetime::new(x1, x2, self)
    }

    /// Convenience constructor for integer coordinates.
    pub fn point(&self, x1: i64, x2: i64) -> Result<Lifetime, AlgebraError> {
        self.lifetime(crate::rational::int(x1), crate::rational::int(x2))
    }

    pub fn contains(&self, x1: &Rational, x2: &Rational) -> bool {
        !x1.is_negative() && !x2.is_negative() && x1 <= &self.eps1 && x2 <= &self.eps2
    }

    /// Parses `(p,q)` and checks it against these bounds.
    pub fn parse_lifetime(&self, text: &str) -> Result<Lifetime, AlgebraError> {
        let RawPair(x1, x2) = text.parse()?;
        self.lifetime(x1, x2)
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.eps1, self.eps2)
    }
}

/// A coordinate pair not yet attached to bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPair(pub Rational, pub Rational);

impl FromStr for RawPair {
    type Err = LifetimeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| LifetimeParseError::Shape(t.to_string()))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| LifetimeParseError::Shape(t.to_string()))?;
        Ok(RawPair(parse_rational(a)?, parse_rational(b)?))
    }
}

/// A point of the algebra: birth coordinate `x1`, death coordinate `x2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lifetime {
    x1: Rational,
    x2: Rational,
    bounds: Bounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
    Degenerate,
}

/// The unordered interval spanned by a lifetime's coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BarInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl BarInterval {
    pub fn contains_interval(&self, other: &BarInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }
}

impl fmt::Display for BarInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl Lifetime {
    pub fn new(x1: Rational, x2: Rational, bounds: &Bounds) -> Result<Self, AlgebraError> {
        if !bounds.contains(&x1, &x2) {
            return Err(AlgebraError::OutOfBounds {
                x1,
                x2,
                eps1: bounds.eps1.clone(),
                eps2: bounds.eps2.clone(),
            });
        }
        Ok(Self::raw(x1, x2, bounds.clone()))
    }

    fn raw(x1: Rational, x2: Rational, bounds: Bounds) -> Self {
        Lifetime { x1, x2, bounds }
    }

    pub fn x1(&self) -> &Rational {
        &self.x1
    }

    pub fn x2(&self) -> &Rational {
        &self.x2
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn is_top(&self) -> bool {
        self.x1.is_zero() && self.x2 == self.bounds.eps2
    }

    pub fn is_bottom(&self) -> bool {
        self.x1 == self.bounds.eps1 && self.x2.is_zero()
    }

    fn same_bounds(&self, other: &Lifetime) -> Result<(), AlgebraError> {
        if self.bounds == other.bounds {
            Ok(())
        } else {
            Err(AlgebraError::BoundsMismatch {
                left: self.bounds.clone(),
                right: other.bounds.clone(),
            })
        }
    }

    /// `self <= other`: born no earlier, dies no later.
    pub fn leq(&self, other: &Lifetime) -> Result<bool, AlgebraError> {
        self.same_bounds(other)?;
        Ok(other.x1 <= self.x1 && self.x2 <= other.x2)
    }

    pub fn meet(&self, other: &Lifetime) -> Result<Lifetime, AlgebraError> {
        self.same_bounds(other)?;
        Ok(Self::raw(
            (&self.x1).max(&other.x1).clone(),
            (&self.x2).min(&other.x2).clone(),
            self.bounds.clone(),
        ))
    }

    pub fn join(&self, other: &Lifetime) -> Result<Lifetime, AlgebraError> {
        self.same_bounds(other)?;
        Ok(Self::raw(
            (&self.x1).min(&other.x1).clone(),
            (&self.x2).max(&other.x2).clone(),
            self.bounds.clone(),
        ))
    }

    /// Relative pseudo-complement `self => other`, the largest `x` with
    /// `x ^ self <= other`.
    ///
    /// Each coordinate is decided independently: the birth coordinate is
    /// unconstrained (0) when `other` is born no later than `self`, and the
    /// death coordinate is unconstrained (`eps2`) when `self` dies no later
    /// than `other`.
    pub fn implies(&self, other: &Lifetime) -> Result<Lifetime, AlgebraError> {
        self.same_bounds(other)?;
        let c1 = if other.x1 <= self.x1 {
            Rational::zero()
        } else {
            other.x1.clone()
        };
        let c2 = if self.x2 <= other.x2 {
            self.bounds.eps2.clone()
        } else {
            other.x2.clone()
        };
        Ok(Self::raw(c1, c2, self.bounds.clone()))
    }

    /// `self => bottom`.
    pub fn pseudo_complement(&self) -> Lifetime {
        self.implies(&self.bounds.bottom())
            .expect("bottom shares bounds")
    }

    /// The Boolean complement, when one exists. Each coordinate must sit on
    /// an edge of the rectangle, so only the four corners are complemented.
    pub fn complement(&self) -> Option<Lifetime> {
        let flip = |v: &Rational, max: &Rational| {
            if v.is_zero() {
                Some(max.clone())
            } else if v == max {
                Some(Rational::zero())
            } else {
                None
            }
        };
        let c1 = flip(&self.x1, &self.bounds.eps1)?;
        let c2 = flip(&self.x2, &self.bounds.eps2)?;
        Some(Self::raw(c1, c2, self.bounds.clone()))
    }

    pub fn orientation(&self) -> Orientation {
        match self.x1.cmp(&self.x2) {
            std::cmp::Ordering::Less => Orientation::Positive,
            std::cmp::Ordering::Greater => Orientation::Negative,
            std::cmp::Ordering::Equal => Orientation::Degenerate,
        }
    }

    pub fn length(&self) -> Rational {
        (&self.x2 - &self.x1).abs()
    }

    pub fn bar_interval(&self) -> BarInterval {
        BarInterval {
            lo: (&self.x1).min(&self.x2).clone(),
            hi: (&self.x1).max(&self.x2).clone(),
        }
    }

    /// Rendering with both coordinates as decimals (human output only).
    pub fn to_decimal_string(&self, places: usize) -> String {
        format!(
            "({},{})",
            crate::rational::to_decimal(&self.x1, places),
            crate::rational::to_decimal(&self.x2, places)
        )
    }
}

impl fmt::Display for Lifetime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x1, self.x2)
    }
}

/// Meet of a finite family; the empty family meets to top.
pub fn meet_family(bounds: &Bounds, xs: &[Lifetime]) -> Result<Lifetime, AlgebraError> {
    xs.iter().try_fold(bounds.top(), |acc, x| acc.meet(x))
}

/// Join of a finite family; the empty family joins to bottom.
pub fn join_family(bounds: &Bounds, xs: &[Lifetime]) -> Result<Lifetime, AlgebraError> {
    xs.iter().try_fold(bounds.bottom(), |acc, x| acc.join(x))
}

//! Ideals, filters, irreducible and prime elements of the lifetime algebra.
//!
//! Principal ideals and filters are axis-aligned rectangles, so they are
//! represented as such. Only principal ideals are modelled; ideals closed
//! under arbitrary joins are principal anyway.

use std::fmt;

use num_traits::Zero;

use crate::lifetime::{join_family, meet_family, AlgebraError, Bounds, Lifetime};
use crate::rational::Rational;

/// Closed product `[lo1, hi1] x [lo2, hi2]` inside the carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub lo1: Rational,
    pub hi1: Rational,
    pub lo2: Rational,
    pub hi2: Rational,
    bounds: Bounds,
}

impl Rectangle {
    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn contains(&self, z: &Lifetime) -> bool {
        z.bounds() == &self.bounds
            && &self.lo1 <= z.x1()
            && z.x1() <= &self.hi1
            && &self.lo2 <= z.x2()
            && z.x2() <= &self.hi2
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.lo1, self.hi1, self.lo2, self.hi2)
    }
}

/// `↓a = [a1, eps1] x [0, a2]`.
pub fn principal_ideal(a: &Lifetime) -> Rectangle {
    Rectangle {
        lo1: a.x1().clone(),
        hi1: a.bounds().eps1().clone(),
        lo2: Rational::zero(),
        hi2: a.x2().clone(),
        bounds: a.bounds().clone(),
    }
}

/// `↑a = [0, a1] x [a2, eps2]`.
pub fn principal_filter(a: &Lifetime) -> Rectangle {
    Rectangle {
        lo1: Rational::zero(),
        hi1: a.x1().clone(),
        lo2: a.x2().clone(),
        hi2: a.bounds().eps2().clone(),
        bounds: a.bounds().clone(),
    }
}

fn family_bounds(xs: &[Lifetime]) -> Result<&Bounds, AlgebraError> {
    xs.first().map(Lifetime::bounds).ok_or(AlgebraError::EmptyFamily)
}

/// The ideal generated by a finite family: principal on its meet.
pub fn ideal_generated(xs: &[Lifetime]) -> Result<Rectangle, AlgebraError> {
    let bounds = family_bounds(xs)?;
    Ok(principal_ideal(&meet_family(bounds, xs)?))
}

/// The filter generated by a finite family: principal on its join.
pub fn filter_generated(xs: &[Lifetime]) -> Result<Rectangle, AlgebraError> {
    let bounds = family_bounds(xs)?;
    Ok(principal_filter(&join_family(bounds, xs)?))
}

/// Join-irreducible elements lie on the bottom edge (`x2 = 0`) or the right
/// edge (`x1 = eps1`), excluding the bottom element itself.
pub fn is_join_irreducible(a: &Lifetime) -> bool {
    !a.is_bottom() && (a.x2().is_zero() || a.x1() == a.bounds().eps1())
}

/// Meet-irreducible elements lie on the left edge (`x1 = 0`) or the top edge
/// (`x2 = eps2`), excluding the top element itself.
pub fn is_meet_irreducible(a: &Lifetime) -> bool {
    !a.is_top() && (a.x1().is_zero() || a.x2() == a.bounds().eps2())
}

/// Whether `↓a` is a prime ideal: `a = (0, x2)` or `a = (x1, eps2)`.
/// Top qualifies (its ideal is the whole algebra).
pub fn is_prime_element(a: &Lifetime) -> bool {
    a.x1().is_zero() || a.x2() == a.bounds().eps2()
}

/// Writes `a` as the meet of the primes `(0, a2)` and `(a1, eps2)`.
pub fn prime_decompose(a: &Lifetime) -> (Lifetime, Lifetime) {
    let b = a.bounds();
    let px = b
        .lifetime(Rational::zero(), a.x2().clone())
        .expect("coordinates already in bounds");
    let py = b
        .lifetime(a.x1().clone(), b.eps2().clone())
        .expect("coordinates already in bounds");
    (px, py)
}

/// Basic open of the dual space: the primes above `(0, x2)` or above `(x1, eps2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualOpen {
    pub vertical_base: Lifetime,
    pub horizontal_base: Lifetime,
}

pub fn dual_open(a: &Lifetime) -> DualOpen {
    let (vertical_base, horizontal_base) = prime_decompose(a);
    DualOpen {
        vertical_base,
        horizontal_base,
    }
}

impl DualOpen {
    /// Membership of a point of the dual space, i.e. a prime element.
    pub fn contains(&self, p: &Lifetime) -> Result<bool, AlgebraError> {
        if !is_prime_element(p) {
            return Err(AlgebraError::NotPrime(p.clone()));
        }
        Ok(self.vertical_base.leq(p)? || self.horizontal_base.leq(p)?)
    }
}

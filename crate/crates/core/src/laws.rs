//! Seeded law checks for the lifetime algebra and its sheaf.
//!
//! Each check draws `samples` independent instances and reports how many
//! failed, along with the lowest-index counterexample. The operations under
//! test are passed in as an [`Ops`] table so that a deliberately broken
//! implementation can be plugged in to exercise the failure path.

use std::fmt;

use crate::exec::{map_range, Strategy};
use crate::lifetime::{Bounds, Lifetime};
use crate::sample::{self, rng_for};
use crate::sheaf::{restrict, separated_check};

type Binary = fn(&Lifetime, &Lifetime) -> Lifetime;

/// The algebra operations exercised by the checks.
#[derive(Clone, Copy)]
pub struct Ops {
    pub meet: Binary,
    pub join: Binary,
    pub implies: Binary,
    pub leq: fn(&Lifetime, &Lifetime) -> bool,
}

impl Ops {
    pub fn standard() -> Self {
        Ops {
            meet: |a, b| a.meet(b).expect("shared bounds"),
            join: |a, b| a.join(b).expect("shared bounds"),
            implies: |a, b| a.implies(b).expect("shared bounds"),
            leq: |a, b| a.leq(b).expect("shared bounds"),
        }
    }

    fn join_all(&self, bounds: &Bounds, xs: &[Lifetime]) -> Lifetime {
        xs.iter().fold(bounds.bottom(), |acc, x| (self.join)(&acc, x))
    }
}

impl Default for Ops {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone)]
pub struct LawConfig {
    pub bounds: Bounds,
    pub samples: usize,
    pub seed: u64,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: &'static str,
    pub checked: usize,
    pub failures: usize,
    /// Lowest failing sample index and a description of the instance.
    pub counterexample: Option<(usize, String)>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<16} {}/{} passed",
            self.law,
            self.checked - self.failures,
            self.checked
        )?;
        if let Some((idx, msg)) = &self.counterexample {
            write!(f, "; first counterexample (sample {idx}): {msg}")?;
        }
        Ok(())
    }
}

fn run<F>(law: &'static str, stream: u64, cfg: &LawConfig, check: F) -> LawReport
where
    F: Fn(&mut sample::SampleRng) -> Option<String> + Sync + Send,
{
    let outcomes = map_range(cfg.samples, cfg.strategy, |i| {
        let mut rng = rng_for(cfg.seed, stream, i as u64);
        check(&mut rng)
    });
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    let counterexample = outcomes
        .into_iter()
        .enumerate()
        .find_map(|(i, o)| o.map(|msg| (i, msg)));
    LawReport {
        law,
        checked: cfg.samples,
        failures,
        counterexample,
    }
}

/// `x ^ a <= b` iff `x <= (a => b)`.
pub fn check_adjunction(cfg: &LawConfig, ops: Ops) -> LawReport {
    let bounds = cfg.bounds.clone();
    run("adjunction", 1, cfg, move |rng| {
        let (a, b, x) = (
            sample::lifetime(rng, &bounds),
            sample::lifetime(rng, &bounds),
            sample::lifetime(rng, &bounds),
        );
        let imp = (ops.implies)(&a, &b);
        let lhs = (ops.leq)(&(ops.meet)(&x, &a), &b);
        let rhs = (ops.leq)(&x, &imp);
        (lhs != rhs).then(|| {
            format!("a={a} b={b} x={x}: x^a<=b is {lhs} but x<=(a->b)={imp} is {rhs}")
        })
    })
}

/// `a ^ (y_1 v ... v y_k) = (a ^ y_1) v ... v (a ^ y_k)` for `k <= 8`.
pub fn check_distributivity(cfg: &LawConfig, ops: Ops) -> LawReport {
    let bounds = cfg.bounds.clone();
    run("distributivity", 2, cfg, move |rng| {
        use rand::Rng;
        let a = sample::lifetime(rng, &bounds);
        let k = rng.random_range(0..=8);
        let ys = sample::lifetimes(rng, &bounds, k);
        let lhs = (ops.meet)(&a, &ops.join_all(&bounds, &ys));
        let meets: Vec<Lifetime> = ys.iter().map(|y| (ops.meet)(&a, y)).collect();
        let rhs = ops.join_all(&bounds, &meets);
        (lhs != rhs).then(|| {
            let family: Vec<String> = ys.iter().map(ToString::to_string).collect();
            format!("a={a} family=[{}]: {lhs} != {rhs}", family.join(", "))
        })
    })
}

/// Associativity, commutativity, idempotence, absorption, bounds, and
/// agreement between the order and the operations.
pub fn check_lattice(cfg: &LawConfig, ops: Ops) -> LawReport {
    let bounds = cfg.bounds.clone();
    run("lattice", 3, cfg, move |rng| {
        let (a, b, c) = (
            sample::lifetime(rng, &bounds),
            sample::lifetime(rng, &bounds),
            sample::lifetime(rng, &bounds),
        );
        let (m, j, leq) = (ops.meet, ops.join, ops.leq);
        let failed = if m(&m(&a, &b), &c) != m(&a, &m(&b, &c)) {
            "meet associativity"
        } else if j(&j(&a, &b), &c) != j(&a, &j(&b, &c)) {
            "join associativity"
        } else if m(&a, &b) != m(&b, &a) || j(&a, &b) != j(&b, &a) {
            "commutativity"
        } else if m(&a, &a) != a || j(&a, &a) != a {
            "idempotence"
        } else if m(&a, &j(&a, &b)) != a || j(&a, &m(&a, &b)) != a {
            "absorption"
        } else if leq(&a, &b) != (m(&a, &b) == a) || leq(&a, &b) != (j(&a, &b) == b) {
            "order agreement"
        } else if !leq(&m(&a, &b), &a) || !leq(&m(&a, &b), &b) {
            "meet is a lower bound"
        } else if leq(&c, &a) && leq(&c, &b) && !leq(&c, &m(&a, &b)) {
            "meet is greatest"
        } else if !leq(&a, &j(&a, &b)) || !leq(&b, &j(&a, &b)) {
            "join is an upper bound"
        } else if leq(&a, &c) && leq(&b, &c) && !leq(&j(&a, &b), &c) {
            "join is least"
        } else if !leq(&bounds.bottom(), &a) || !leq(&a, &bounds.top()) {
            "bounds"
        } else {
            return None;
        };
        Some(format!("{failed} fails at a={a} b={b} c={c}"))
    })
}

/// `a => a = top`, `top => b = b`, `a ^ (a => b) <= b`.
pub fn check_implication_identities(cfg: &LawConfig, ops: Ops) -> LawReport {
    let bounds = cfg.bounds.clone();
    run("implication", 4, cfg, move |rng| {
        let (a, b) = (sample::lifetime(rng, &bounds), sample::lifetime(rng, &bounds));
        let top = bounds.top();
        let failed = if (ops.implies)(&a, &a) != top {
            "a->a = top"
        } else if (ops.implies)(&top, &b) != b {
            "top->b = b"
        } else if !(ops.leq)(&(ops.meet)(&a, &(ops.implies)(&a, &b)), &b) {
            "modus ponens"
        } else {
            return None;
        };
        Some(format!("{failed} fails at a={a} b={b}"))
    })
}

/// Random compatible covers glue to a section over the base that restricts
/// back to every item, and sections agreeing on a cover coincide.
pub fn check_gluing(cfg: &LawConfig, max_patches: usize) -> LawReport {
    let bounds = cfg.bounds.clone();
    run("gluing", 5, cfg, move |rng| {
        let cover = sample::compatible_cover(rng, &bounds, max_patches);
        let base = cover.base().clone();
        let glued = match cover.glue() {
            Ok(z) => z,
            Err(e) => return Some(format!("glue failed: {e}")),
        };
        if !glued.leq(&base).expect("shared bounds") {
            return Some(format!("glued {glued} not below base {base}"));
        }
        for (i, item) in cover.items().iter().enumerate() {
            match restrict(&glued, &base, &item.patch) {
                Ok(r) if r == item.section => {}
                Ok(r) => return Some(format!("item {i}: glued restricts to {r}, expected {}", item.section)),
                Err(e) => return Some(format!("item {i}: {e}")),
            }
        }
        let patches = cover.patches();
        let s = sample::lifetime(rng, &bounds).meet(&base).expect("shared bounds");
        let t = sample::lifetime(rng, &bounds).meet(&base).expect("shared bounds");
        // the section recovered from s's restrictions must be s itself
        let rebuilt = patches
            .iter()
            .map(|x| s.meet(x).expect("shared bounds"))
            .fold(bounds.bottom(), |acc, r| acc.join(&r).expect("shared bounds"));
        let separated = [(&s, &t), (&s, &rebuilt), (&glued, &s)]
            .into_iter()
            .all(|(u, v)| separated_check(&base, &patches, u, v).unwrap_or(false));
        if !separated || rebuilt != s {
            return Some(format!("separatedness fails for s={s} t={t} over base {base}"));
        }
        None
    })
}

/// Every suite run by `algebra laws`.
pub fn run_all(cfg: &LawConfig, ops: Ops) -> Vec<LawReport> {
    vec![
        check_adjunction(cfg, ops),
        check_distributivity(cfg, ops),
        check_lattice(cfg, ops),
        check_implication_identities(cfg, ops),
        check_gluing(cfg, 5),
    ]
}

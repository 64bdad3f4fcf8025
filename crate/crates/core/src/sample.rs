//! Seeded random generators for lifetimes, covers and complexes.
//!
//! Every generator takes the RNG explicitly. [`rng_for`] derives an
//! independent stream per `(seed, stream, index)` so batched checks give the
//! same draws whether they run sequentially or in parallel.

use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{EntrySpec, VariableComplex};
use crate::lifetime::{meet_family, Bounds, Lifetime};
use crate::rational::{ratio, Rational};
use crate::sheaf::{Cover, CoverItem};

pub type SampleRng = ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

/// A rational in `[0, max]`, biased towards the endpoints and small
/// denominators so that ties and boundary cases come up often.
pub fn rational_upto<R: Rng>(rng: &mut R, max: &Rational) -> Rational {
    match rng.random_range(0..8) {
        0 => Rational::zero(),
        1 => max.clone(),
        _ => {
            let den: i64 = rng.random_range(1..=12);
            let top = (max * ratio(den, 1)).floor().to_integer().to_i64().unwrap_or(i64::MAX);
            ratio(rng.random_range(0..=top), den)
        }
    }
}

/// A rational in `[lo, hi]` on a coarse grid (quarters of the span at most).
pub fn rational_between<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational) -> Rational {
    if lo >= hi {
        return lo.clone();
    }
    let den: i64 = rng.random_range(1..=4);
    let k: i64 = rng.random_range(0..=den);
    lo + (hi - lo) * ratio(k, den)
}

pub fn lifetime<R: Rng>(rng: &mut R, bounds: &Bounds) -> Lifetime {
    let x1 = rational_upto(rng, bounds.eps1());
    let x2 = rational_upto(rng, bounds.eps2());
    bounds.lifetime(x1, x2).expect("drawn inside bounds")
}

pub fn lifetimes<R: Rng>(rng: &mut R, bounds: &Bounds, count: usize) -> Vec<Lifetime> {
    (0..count).map(|_| lifetime(rng, bounds)).collect()
}

/// A compatible cover with `1..=max_patches` items: each section is the
/// restriction of one hidden global section to its patch.
pub fn compatible_cover<R: Rng>(rng: &mut R, bounds: &Bounds, max_patches: usize) -> Cover {
    let count = rng.random_range(1..=max_patches.max(1));
    let global = lifetime(rng, bounds);
    let items = (0..count)
        .map(|_| {
            let patch = lifetime(rng, bounds);
            let section = meet_family(bounds, &[global.clone(), patch.clone()]).expect("same bounds");
            CoverItem { patch, section }
        })
        .collect();
    Cover::new(items).expect("sections lie in their patches")
}

/// Shape parameters for [`complex`].
#[derive(Debug, Clone)]
pub struct ComplexShape {
    pub max_simplices: usize,
    pub max_dim: usize,
    /// When set, every simplex lives until `eps` (a filtration).
    pub filtration: bool,
    pub eps: i64,
    /// Shuffle the file order of entries.
    pub shuffle: bool,
}

impl Default for ComplexShape {
    fn default() -> Self {
        ComplexShape {
            max_simplices: 12,
            max_dim: 2,
            filtration: true,
            eps: 8,
            shuffle: false,
        }
    }
}

/// A random simplicial complex with lifetimes, at most `max_simplices`
/// simplices of dimension at most `max_dim` (capped at 2). Faces are listed
/// in the standard order (the i-th face omits the i-th vertex), so the
/// chain condition holds over every field.
pub fn complex<R: Rng>(rng: &mut R, shape: &ComplexShape) -> VariableComplex {
    let eps = ratio(shape.eps, 1);
    let bounds = Bounds::new(eps.clone(), eps.clone()).expect("positive eps");
    let budget = shape.max_simplices.max(1);
    let n_vertices = rng.random_range(1..=(budget / 2).clamp(1, 16));

    struct Node {
        spec: EntrySpec,
        verts: Vec<usize>,
    }
    let mut nodes: Vec<Node> = Vec::new();
    let draw_life = |rng: &mut R, faces: &[&EntrySpec]| -> Option<(Rational, Rational)> {
        let lo = faces.iter().map(|f| f.birth.clone()).max().unwrap_or_else(Rational::zero);
        let hi = faces.iter().map(|f| f.death.clone()).min().unwrap_or_else(|| eps.clone());
        if lo > hi {
            return None;
        }
        if shape.filtration {
            let top = if faces.is_empty() { &eps * ratio(1, 2) } else { eps.clone() };
            let birth = rational_between(rng, &lo, &top.max(lo.clone()));
            Some((birth, eps.clone()))
        } else {
            let birth = rational_between(rng, &lo, &hi);
            let death = rational_between(rng, &birth, &hi);
            Some((birth, death))
        }
    };

    for v in 0..n_vertices {
        let (birth, death) = draw_life(rng, &[]).expect("vertices always fit");
        nodes.push(Node {
            spec: EntrySpec {
                id: format!("v{v}"),
                dim: 0,
                birth,
                death,
                faces: Vec::new(),
            },
            verts: vec![v],
        });
    }
    let find = |nodes: &[Node], verts: &[usize]| nodes.iter().position(|n| n.verts == verts);

    if shape.max_dim >= 1 {
        let mut pairs: Vec<(usize, usize)> = (0..n_vertices)
            .flat_map(|a| ((a + 1)..n_vertices).map(move |b| (a, b)))
            .collect();
        pairs.shuffle(rng);
        for (a, b) in pairs {
            if nodes.len() >= budget {
                break;
            }
            if !rng.random_bool(0.6) {
                continue;
            }
            let (fa, fb) = (find(&nodes, &[b]).unwrap(), find(&nodes, &[a]).unwrap());
            let faces = [&nodes[fa].spec, &nodes[fb].spec];
            if let Some((birth, death)) = draw_life(rng, &faces) {
                let spec = EntrySpec {
                    id: format!("e{a}_{b}"),
                    dim: 1,
                    birth,
                    death,
                    faces: vec![faces[0].id.clone(), faces[1].id.clone()],
                };
                nodes.push(Node {
                    spec,
                    verts: vec![a, b],
                });
            }
        }
    }
    if shape.max_dim >= 2 {
        let mut triples: Vec<[usize; 3]> = Vec::new();
        for a in 0..n_vertices {
            for b in (a + 1)..n_vertices {
                for c in (b + 1)..n_vertices {
                    triples.push([a, b, c]);
                }
            }
        }
        triples.shuffle(rng);
        for [a, b, c] in triples {
            if nodes.len() >= budget {
                break;
            }
            let edges = [
                find(&nodes, &[b, c]),
                find(&nodes, &[a, c]),
                find(&nodes, &[a, b]),
            ];
            let [Some(e0), Some(e1), Some(e2)] = edges else { continue };
            if !rng.random_bool(0.7) {
                continue;
            }
            let faces = [&nodes[e0].spec, &nodes[e1].spec, &nodes[e2].spec];
            if let Some((birth, death)) = draw_life(rng, &faces) {
                let spec = EntrySpec {
                    id: format!("t{a}_{b}_{c}"),
                    dim: 2,
                    birth,
                    death,
                    faces: faces.iter().map(|f| f.id.clone()).collect(),
                };
                nodes.push(Node {
                    spec,
                    verts: vec![a, b, c],
                });
            }
        }
    }
    let mut specs: Vec<EntrySpec> = nodes.into_iter().map(|n| n.spec).collect();
    if shape.shuffle {
        specs.shuffle(rng);
    }
    VariableComplex::new(specs, Some(bounds)).expect("generator respects containment")
}

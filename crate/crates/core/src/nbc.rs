//! Affine independence, circuits, broken circuits and NBC sets over the
//! labels of an arrangement (multi-arrangements included).
//!
//! A label set is *independent* when its members meet and the meet has
//! codimension equal to its size. Sets whose members do not meet are neither
//! independent nor dependent, so NBC sets are taken among the independent
//! sets.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::arrangement::{restriction, Arrangement, SemiLattice};
use crate::error::{Error, Result};
use crate::exactq::{Field, Flat, Intersection};

/// Sorted, duplicate-free set of labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LabelSet(Vec<usize>);

impl LabelSet {
    pub fn new(mut labels: Vec<usize>) -> Self {
        labels.sort_unstable();
        labels.dedup();
        Self(labels)
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitCatalog {
    pub circuits: Vec<LabelSet>,
    /// Each circuit minus its order-minimal label, in the order of `circuits`.
    #[serde(rename = "brokenCircuits")]
    pub broken_circuits: Vec<LabelSet>,
}

/// Label ranks for the given total order; `None` means ascending labels.
pub type Ranks = HashMap<usize, usize>;

fn positions<F: Field>(a: &Arrangement<F>, labels: &[usize]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|&l| a.position_of_label(l).ok_or(Error::UnknownLabel(l)))
        .collect()
}

fn to_labels<F: Field>(a: &Arrangement<F>, positions: &[usize]) -> LabelSet {
    LabelSet::new(positions.iter().map(|&i| a.labels()[i]).collect())
}

/// The meet of the members at `positions` when they are independent.
fn independent_meet<F: Field>(a: &Arrangement<F>, positions: &[usize]) -> Option<Flat<F::Elem>> {
    let field = a.field();
    positions
        .iter()
        .try_fold(Flat::ambient(field, a.dim()), |f, &i| {
            match f.intersect(field, &a.hyperplanes()[i]) {
                Intersection::Proper(g) => Some(g),
                _ => None,
            }
        })
}

pub fn is_independent<F: Field>(a: &Arrangement<F>, labels: &[usize]) -> Result<bool> {
    Ok(independent_meet(a, &positions(a, labels)?).is_some())
}

/// Size of a largest independent subset of `labels`. When the members meet,
/// this is the codimension of their meet.
pub fn rank_of_labels<F: Field>(a: &Arrangement<F>, labels: &[usize]) -> Result<usize> {
    let mut pos = positions(a, labels)?;
    pos.sort_unstable();
    pos.dedup();
    let mut best = 0;
    for_each_independent(a, &pos, &mut |set, _| best = best.max(set.len()));
    Ok(best)
}

/// Depth-first walk over every independent subset of `pool` (positions,
/// ascending), passing the subset and its meet.
fn for_each_independent<F: Field>(
    a: &Arrangement<F>,
    pool: &[usize],
    visit: &mut dyn FnMut(&[usize], &Flat<F::Elem>),
) {
    fn walk<F: Field>(
        a: &Arrangement<F>,
        pool: &[usize],
        start: usize,
        set: &mut Vec<usize>,
        meet: &Flat<F::Elem>,
        visit: &mut dyn FnMut(&[usize], &Flat<F::Elem>),
    ) {
        visit(set, meet);
        for k in start..pool.len() {
            let i = pool[k];
            if let Intersection::Proper(g) = meet.intersect(a.field(), &a.hyperplanes()[i]) {
                set.push(i);
                walk(a, pool, k + 1, set, &g, visit);
                set.pop();
            }
        }
    }
    let ambient = Flat::ambient(a.field(), a.dim());
    walk(a, pool, 0, &mut Vec::new(), &ambient, visit);
}

/// Minimal dependent label sets whose members meet.
pub fn affine_circuits<F: Field>(a: &Arrangement<F>) -> Vec<LabelSet> {
    let field = a.field();
    let all: Vec<usize> = (0..a.len()).collect();
    let mut circuits = Vec::new();
    // A circuit minus its last position is independent, and the last
    // member contains that meet.
    for_each_independent(a, &all, &mut |set, meet| {
        let start = set.last().map_or(0, |&l| l + 1);
        for i in start..a.len() {
            if !matches!(meet.intersect(field, &a.hyperplanes()[i]), Intersection::Unchanged) {
                continue;
            }
            let minimal = set.iter().all(|&j| {
                let rest: Vec<usize> = set.iter().copied().filter(|&x| x != j).chain([i]).collect();
                independent_meet(a, &rest).is_some()
            });
            if minimal {
                let mut c = set.to_vec();
                c.push(i);
                circuits.push(to_labels(a, &c));
            }
        }
    });
    circuits.sort();
    circuits
}

pub fn circuit_catalog<F: Field>(a: &Arrangement<F>, order: Option<&[usize]>) -> Result<CircuitCatalog> {
    let ranks = a.order_ranks(order)?;
    let circuits = affine_circuits(a);
    let broken_circuits = circuits.iter().map(|c| broken(c, &ranks)).collect();
    Ok(CircuitCatalog {
        circuits,
        broken_circuits,
    })
}

fn broken(circuit: &LabelSet, ranks: &Ranks) -> LabelSet {
    let min = *circuit
        .labels()
        .iter()
        .min_by_key(|l| ranks[l])
        .expect("circuits are nonempty");
    LabelSet::new(circuit.labels().iter().copied().filter(|&l| l != min).collect())
}

/// NBC sets of every size, for label ranks covering at least `a`'s labels.
fn nbc_by_size<F: Field>(a: &Arrangement<F>, ranks: &Ranks) -> Vec<Vec<LabelSet>> {
    let broken_masks: Vec<FixedBitSet> = affine_circuits(a)
        .iter()
        .map(|c| {
            let b = broken(c, ranks);
            let mut mask = FixedBitSet::with_capacity(a.len());
            for &l in b.labels() {
                mask.insert(a.position_of_label(l).unwrap());
            }
            mask
        })
        .collect();
    let mut out = vec![Vec::new(); a.dim() + 1];
    let all: Vec<usize> = (0..a.len()).collect();
    for_each_independent(a, &all, &mut |set, _| {
        let mut mask = FixedBitSet::with_capacity(a.len());
        set.iter().for_each(|&i| mask.insert(i));
        if broken_masks.iter().all(|b| !b.is_subset(&mask)) {
            out[set.len()].push(to_labels(a, set));
        }
    });
    for sets in &mut out {
        sets.sort();
    }
    out
}

/// All NBC sets of size `k` under `order` (ascending labels when `None`).
pub fn nbc_sets<F: Field>(a: &Arrangement<F>, k: usize, order: Option<&[usize]>) -> Result<Vec<LabelSet>> {
    let ranks = a.order_ranks(order)?;
    Ok(nbc_by_size(a, &ranks).into_iter().nth(k).unwrap_or_default())
}

/// `#NBC_k` for `k = 0..=d`.
pub fn nbc_counts<F: Field>(a: &Arrangement<F>, order: Option<&[usize]>) -> Result<Vec<u64>> {
    let ranks = a.order_ranks(order)?;
    Ok(nbc_by_size(a, &ranks).iter().map(|s| s.len() as u64).collect())
}

/// `c_ij = Σ_{dim X = i} #NBC_j(A/X)`, the restrictions inheriting labels
/// and order.
pub fn cij_via_nbc<F: Field>(a: &Arrangement<F>, order: Option<&[usize]>) -> Result<Vec<Vec<u64>>> {
    let d = a.dim();
    if a.has_ambient_member() {
        return Ok((0..=d).map(|i| vec![0; i + 1]).collect());
    }
    let ranks = a.order_ranks(order)?;
    let lattice = SemiLattice::build(a);
    let mut grid: Vec<Vec<u64>> = (0..=d).map(|i| vec![0; i + 1]).collect();
    for x in lattice.flats() {
        let i = x.dim();
        let counts = nbc_by_size(&restriction(a, x), &ranks);
        for (j, sets) in counts.iter().enumerate() {
            grid[i][j] += sets.len() as u64;
        }
    }
    Ok(grid)
}

//! Finite posets and order-isomorphism testing.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::arrangement::SemiLattice;
use crate::exactq::Field;

/// A finite poset stored as reflexive up-sets, with a rank per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    up: Vec<FixedBitSet>,
    rank: Vec<usize>,
}

impl Poset {
    /// `up[x]` must contain `x` and be transitively closed.
    pub fn from_up_sets(up: Vec<FixedBitSet>, rank: Vec<usize>) -> Self {
        assert_eq!(up.len(), rank.len());
        Self { up, rank }
    }

    pub fn from_semilattice<F: Field>(l: &SemiLattice<F>) -> Self {
        let up = (0..l.len()).map(|x| l.up_set(x).clone()).collect();
        let rank = (0..l.len()).map(|x| l.dim() - l.dim_of(x)).collect();
        Self { up, rank }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// `P × C₂`: element `(x, b)` is `2x + b`.
    pub fn times_chain2(&self) -> Self {
        let n = self.len();
        let mut up = Vec::with_capacity(2 * n);
        let mut rank = Vec::with_capacity(2 * n);
        for x in 0..n {
            for b in 0..2 {
                let mut set = FixedBitSet::with_capacity(2 * n);
                for y in self.up[x].ones() {
                    set.insert(2 * y + 1);
                    if b == 0 {
                        set.insert(2 * y);
                    }
                }
                up.push(set);
                rank.push(self.rank[x] + b);
            }
        }
        Self { up, rank }
    }

    fn down_counts(&self) -> Vec<usize> {
        let mut down = vec![0; self.len()];
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                down[y] += 1;
            }
        }
        down
    }

    fn covers(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|x| {
                self.up[x]
                    .ones()
                    .filter(|&y| {
                        y != x && !self.up[x].ones().any(|z| z != x && z != y && self.leq(z, y))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Whether an order-isomorphism exists, found by backtracking over
/// fingerprint-compatible candidates.
pub fn isomorphic(p: &Poset, q: &Poset) -> bool {
    find_isomorphism(p, q).is_some()
}

/// An order-isomorphism `p → q` as an image vector.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let (fp, fq) = joint_fingerprints(p, q);
    let mut hist: HashMap<&Fp, i64> = HashMap::new();
    for c in &fp {
        *hist.entry(c).or_default() += 1;
    }
    for c in &fq {
        *hist.entry(c).or_default() -= 1;
    }
    if hist.values().any(|&v| v != 0) {
        return None;
    }
    let ids = |f: &[Fp]| -> Vec<usize> {
        let mut palette: Vec<&Fp> = fp.iter().collect();
        palette.sort();
        palette.dedup();
        f.iter().map(|c| palette.binary_search(&c).unwrap()).collect()
    };
    let cp = ids(&fp);
    let cq = ids(&fq);
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        candidates[x] = (0..n).filter(|&y| cq[y] == cp[x]).collect();
    }
    // Most constrained first, then by rank.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (candidates[x].len(), p.rank(x), x));

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(p, q, &order, 0, &candidates, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

/// Rank, up/down sizes, and the same data for the upper and lower covers.
type Fp = (usize, usize, usize, Vec<(usize, usize, usize)>, Vec<(usize, usize, usize)>);

fn joint_fingerprints(p: &Poset, q: &Poset) -> (Vec<Fp>, Vec<Fp>) {
    let raw = |s: &Poset| -> Vec<Fp> {
        let down = s.down_counts();
        let base: Vec<(usize, usize, usize)> = (0..s.len())
            .map(|x| (s.rank[x], s.up[x].count_ones(..), down[x]))
            .collect();
        let covers = s.covers();
        let mut lower = vec![Vec::new(); s.len()];
        for (x, ys) in covers.iter().enumerate() {
            for &y in ys {
                lower[y].push(base[x]);
            }
        }
        (0..s.len())
            .map(|x| {
                let mut upper: Vec<_> = covers[x].iter().map(|&y| base[y]).collect();
                upper.sort_unstable();
                let mut low = lower[x].clone();
                low.sort_unstable();
                (base[x].0, base[x].1, base[x].2, upper, low)
            })
            .collect()
    };
    (raw(p), raw(q))
}

fn assign(
    p: &Poset,
    q: &Poset,
    order: &[usize],
    k: usize,
    candidates: &[Vec<usize>],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(k) else {
        return true;
    };
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..k].iter().all(|&a| {
            let b = image[a];
            p.leq(a, x) == q.leq(b, y) && p.leq(x, a) == q.leq(y, b)
        });
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if assign(p, q, order, k + 1, candidates, image, used) {
            return true;
        }
        used[y] = false;
    }
    image[x] = usize::MAX;
    false
}

/// Order-isomorphism of two intersection semi-lattices, possibly over
/// different fields.
pub fn poset_isomorphic<F: Field, G: Field>(a: &SemiLattice<F>, b: &SemiLattice<G>) -> bool {
    isomorphic(&Poset::from_semilattice(a), &Poset::from_semilattice(b))
}

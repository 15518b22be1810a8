use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::arrangement::model::Arrangement;
use crate::error::{Error, Result};
use crate::exactq::{Field, Flat, Intersection};

/// The intersection semi-lattice `L(A)`: every nonempty intersection of
/// members, ordered by reverse inclusion.
///
/// Elements are indexed in order of increasing codimension; index 0 is the
/// ambient space. Within a level they are sorted by their sets of containing
/// members, so the indexing is deterministic.
#[derive(Debug, Clone)]
pub struct SemiLattice<F: Field> {
    arrangement: Arrangement<F>,
    flats: Vec<Flat<F::Elem>>,
    /// Positions (not labels) of the members containing each flat.
    members: Vec<FixedBitSet>,
    /// `up[x]` = `{y : x <= y}`, i.e. flats contained in `x`.
    up: Vec<FixedBitSet>,
    by_members: HashMap<Vec<usize>, usize>,
    mobius_bottom: Vec<i64>,
}

impl<F: Field> SemiLattice<F> {
    /// Builds `L(A)` by level saturation: each flat of codimension `k` is cut
    /// by every member and the proper intersections, deduplicated by their
    /// canonical form, become the level `k + 1`.
    pub fn build(arrangement: &Arrangement<F>) -> Self {
        let field = arrangement.field();
        let m = arrangement.len();
        let mut flats = vec![Flat::ambient(field, arrangement.dim())];
        let mut level = flats.clone();
        while !level.is_empty() {
            let mut next: HashMap<Flat<F::Elem>, ()> = HashMap::new();
            for f in &level {
                for h in arrangement.hyperplanes() {
                    if let Intersection::Proper(g) = f.intersect(field, h) {
                        next.entry(g).or_insert(());
                    }
                }
            }
            let mut keyed: Vec<(Vec<usize>, Flat<F::Elem>)> = next
                .into_keys()
                .map(|g| (containing(arrangement, &g), g))
                .collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            level = keyed.into_iter().map(|(_, g)| g).collect();
            flats.extend(level.iter().cloned());
        }

        let member_lists: Vec<Vec<usize>> =
            flats.iter().map(|f| containing(arrangement, f)).collect();
        let members: Vec<FixedBitSet> = member_lists
            .iter()
            .map(|list| {
                let mut b = FixedBitSet::with_capacity(m);
                list.iter().for_each(|&i| b.insert(i));
                b
            })
            .collect();
        let n = flats.len();
        let up = (0..n)
            .map(|x| {
                let mut b = FixedBitSet::with_capacity(n);
                for y in x..n {
                    if members[x].is_subset(&members[y]) {
                        b.insert(y);
                    }
                }
                b
            })
            .collect();
        let by_members = member_lists
            .into_iter()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let mut lattice = Self {
            arrangement: arrangement.clone(),
            flats,
            members,
            up,
            by_members,
            mobius_bottom: Vec::new(),
        };
        lattice.mobius_bottom = lattice.mobius_from(0);
        lattice
    }

    pub fn arrangement(&self) -> &Arrangement<F> {
        &self.arrangement
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.arrangement.dim()
    }

    pub fn flats(&self) -> &[Flat<F::Elem>] {
        &self.flats
    }

    pub fn flat(&self, x: usize) -> &Flat<F::Elem> {
        &self.flats[x]
    }

    pub fn dim_of(&self, x: usize) -> usize {
        self.flats[x].dim()
    }

    /// Positions of members containing `x` (the localization `A_X`).
    pub fn member_positions(&self, x: usize) -> Vec<usize> {
        self.members[x].ones().collect()
    }

    /// Labels of members containing `x`, ascending.
    pub fn labels_of(&self, x: usize) -> Vec<usize> {
        let mut l: Vec<usize> = self
            .members[x]
            .ones()
            .map(|i| self.arrangement.labels()[i])
            .collect();
        l.sort_unstable();
        l
    }

    pub fn member_set(&self, x: usize) -> &FixedBitSet {
        &self.members[x]
    }

    /// `x <= y`, i.e. `flat(y) ⊆ flat(x)`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Elements of the given dimension.
    pub fn level(&self, dim: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.dim_of(x) == dim).collect()
    }

    pub fn index_of(&self, flat: &Flat<F::Elem>) -> Option<usize> {
        self.by_members
            .get(&containing(&self.arrangement, flat))
            .copied()
            .filter(|&i| &self.flats[i] == flat)
    }

    /// Index of the flat whose containing members are exactly `positions`.
    pub fn index_of_members(&self, positions: &[usize]) -> Option<usize> {
        self.by_members.get(positions).copied()
    }

    /// The inclusion-minimal element containing the point `x`.
    pub fn locate(&self, x: &[F::Elem]) -> usize {
        let field = self.arrangement.field();
        let on: Vec<usize> = self
            .arrangement
            .hyperplanes()
            .iter()
            .enumerate()
            .filter(|(_, h)| h.contains_point(field, x))
            .map(|(i, _)| i)
            .collect();
        // The intersection of the members through x is a flat containing x,
        // and every member through it also passes through x.
        self.by_members[&on]
    }

    /// `μ(x, ·)` as a dense vector, zero outside the up-set of `x`.
    pub fn mobius_from(&self, x: usize) -> Vec<i64> {
        let n = self.len();
        let mut mu = vec![0i64; n];
        let mut acc = vec![0i64; n];
        for z in self.up[x].ones() {
            mu[z] = if z == x { 1 } else { -acc[z] };
            if mu[z] != 0 {
                for w in self.up[z].ones() {
                    if w != z {
                        acc[w] += mu[z];
                    }
                }
            }
        }
        mu
    }

    /// `μ(V, x)` for the minimum `V`.
    pub fn mobius_bottom(&self) -> &[i64] {
        &self.mobius_bottom
    }

    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        if x >= self.len() || y >= self.len() || !self.leq(x, y) {
            return Err(Error::NotComparable { x, y });
        }
        if x == 0 {
            return Ok(self.mobius_bottom[y]);
        }
        Ok(self.mobius_from(x)[y])
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph L {\n  rankdir=BT;\n");
        for x in 0..self.len() {
            let labels: Vec<String> = self.labels_of(x).iter().map(|l| l.to_string()).collect();
            out.push_str(&format!(
                "  n{x} [label=\"dim={}; labels={{{}}}\"];\n",
                self.dim_of(x),
                labels.join(",")
            ));
        }
        for (x, y) in self.cover_pairs() {
            out.push_str(&format!("  n{x} -> n{y};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Covering pairs `x ⋖ y`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                if y != x && self.dim_of(y) + 1 == self.dim_of(x) {
                    pairs.push((x, y));
                }
            }
        }
        pairs
    }
}

fn containing<F: Field>(arrangement: &Arrangement<F>, flat: &Flat<F::Elem>) -> Vec<usize> {
    let field = arrangement.field();
    arrangement
        .hyperplanes()
        .iter()
        .enumerate()
        .filter(|(_, h)| {
            h.contains_point(field, flat.point())
                && flat
                    .basis()
                    .iter()
                    .all(|v| field.is_zero(&field.dot(h.normal(), v)))
        })
        .map(|(i, _)| i)
        .collect()
}

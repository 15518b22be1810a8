use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactq::{rank_of, Degeneracy, Field, Hyperplane};

/// A finite list of distinct labeled hyperplanes in `F^d`.
///
/// Labels default to `1..=m` in input order and define the total order used
/// for broken circuits. A restriction keeps the labels it inherited, and may
/// contain several labels for the same point set (a multi-arrangement).
///
/// The ambient space itself can be flagged as a member; every invariant of
/// such an arrangement is zero by convention.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement<F: Field> {
    field: F,
    dim: usize,
    hyperplanes: Vec<Hyperplane<F::Elem>>,
    labels: Vec<usize>,
    ambient_member: bool,
}

impl<F: Field> Arrangement<F> {
    pub fn empty(field: F, dim: usize) -> Self {
        Self {
            field,
            dim,
            hyperplanes: Vec::new(),
            labels: Vec::new(),
            ambient_member: false,
        }
    }

    /// A simple arrangement labeled `1..=m`. Rejects duplicates.
    pub fn new(field: F, dim: usize, hyperplanes: Vec<Hyperplane<F::Elem>>) -> Result<Self> {
        let labels = (1..=hyperplanes.len()).collect();
        let arr = Self::multi(field, dim, hyperplanes, labels)?;
        let mut seen = HashMap::new();
        for (i, h) in arr.hyperplanes.iter().enumerate() {
            if let Some(first) = seen.insert(h, i + 1) {
                return Err(Error::DuplicateHyperplane {
                    first,
                    second: i + 1,
                });
            }
        }
        Ok(arr)
    }

    /// Canonicalizes raw `(normal, offset)` pairs. A zero normal is an error.
    pub fn from_coefficients(
        field: F,
        dim: usize,
        raw: Vec<(Vec<F::Elem>, F::Elem)>,
    ) -> Result<Self> {
        let mut hyperplanes = Vec::with_capacity(raw.len());
        for (i, (normal, offset)) in raw.into_iter().enumerate() {
            if normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: normal.len(),
                });
            }
            let h = Hyperplane::new(&field, normal, offset)
                .map_err(|_| Error::ZeroNormal { index: i + 1 })?;
            hyperplanes.push(h);
        }
        Self::new(field, dim, hyperplanes)
    }

    /// A labeled multi-arrangement; repeated point sets are allowed but labels
    /// must be distinct.
    pub fn multi(
        field: F,
        dim: usize,
        hyperplanes: Vec<Hyperplane<F::Elem>>,
        labels: Vec<usize>,
    ) -> Result<Self> {
        assert_eq!(hyperplanes.len(), labels.len(), "one label per hyperplane");
        if let Some(h) = hyperplanes.iter().find(|h| h.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidOrder(format!("label {} repeated", w[0])));
        }
        Ok(Self {
            field,
            dim,
            hyperplanes,
            labels,
            ambient_member: false,
        })
    }

    /// Flags the whole space as a member.
    pub fn with_ambient_member(mut self) -> Self {
        self.ambient_member = true;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane<F::Elem>] {
        &self.hyperplanes
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn has_ambient_member(&self) -> bool {
        self.ambient_member
    }

    pub fn position_of_label(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn by_label(&self, label: usize) -> Option<&Hyperplane<F::Elem>> {
        self.position_of_label(label).map(|i| &self.hyperplanes[i])
    }

    /// Index of a hyperplane equal (as a point set) to `h`.
    pub fn position_of(&self, h: &Hyperplane<F::Elem>) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    /// True when two members share a point set.
    pub fn has_repeats(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        !self.hyperplanes.iter().all(|h| seen.insert(h))
    }

    /// Rank of the normal vectors of the members at the given positions.
    pub fn rank_of_normals(&self, positions: &[usize]) -> usize {
        let normals: Vec<_> = positions
            .iter()
            .map(|&i| self.hyperplanes[i].normal().to_vec())
            .collect();
        rank_of(&self.field, &normals)
    }

    pub fn rank(&self) -> usize {
        self.rank_of_normals(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// All members pass through the origin.
    pub fn is_linear(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.is_linear(&self.field))
    }

    pub fn require_essential(&self) -> Result<()> {
        let rank = self.rank();
        if rank == self.dim {
            Ok(())
        } else {
            Err(Error::NonEssential {
                rank,
                dim: self.dim,
            })
        }
    }

    /// Members at the given positions, labels preserved.
    pub fn subarrangement(&self, positions: &[usize]) -> Self {
        Self {
            field: self.field.clone(),
            dim: self.dim,
            hyperplanes: positions.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
            labels: positions.iter().map(|&i| self.labels[i]).collect(),
            ambient_member: false,
        }
    }

    /// `A ∪ {h}` with set semantics. Returns the arrangement and the label of
    /// `h` in it (an existing label when `h` was already a member).
    pub fn with_hyperplane(&self, h: Hyperplane<F::Elem>) -> (Self, usize) {
        if let Some(i) = self.position_of(&h) {
            return (self.clone(), self.labels[i]);
        }
        let label = self.labels.iter().max().map_or(1, |m| m + 1);
        let mut out = self.clone();
        out.hyperplanes.push(h);
        out.labels.push(label);
        (out, label)
    }

    /// One-element extension by raw coefficients, honoring the zero-normal
    /// conventions: `0 = 0` makes the ambient space a member and `0 = a`
    /// leaves the semi-lattice unchanged.
    pub fn extended(&self, normal: Vec<F::Elem>, offset: F::Elem) -> Result<Extended<F>> {
        if normal.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: normal.len(),
            });
        }
        Ok(match Hyperplane::new(&self.field, normal, offset) {
            Ok(h) => {
                let duplicate = self.position_of(&h).is_some();
                let (arrangement, label) = self.with_hyperplane(h);
                Extended {
                    arrangement,
                    label: Some(label),
                    duplicate,
                    degeneracy: None,
                }
            }
            Err(Degeneracy::AmbientMember) => Extended {
                arrangement: self.clone().with_ambient_member(),
                label: None,
                duplicate: false,
                degeneracy: Some(Degeneracy::AmbientMember),
            },
            Err(Degeneracy::EmptyHyperplane) => Extended {
                arrangement: self.clone(),
                label: None,
                duplicate: false,
                degeneracy: Some(Degeneracy::EmptyHyperplane),
            },
        })
    }

    /// Replaces the label order: `order[k]` is the label ranked `k`.
    pub fn order_ranks(&self, order: Option<&[usize]>) -> Result<HashMap<usize, usize>> {
        match order {
            None => {
                let mut sorted = self.labels.clone();
                sorted.sort_unstable();
                Ok(sorted.into_iter().enumerate().map(|(k, l)| (l, k)).collect())
            }
            Some(order) => {
                let mut a = order.to_vec();
                let mut b = self.labels.clone();
                a.sort_unstable();
                b.sort_unstable();
                if a != b {
                    return Err(Error::InvalidOrder(format!(
                        "order {order:?} is not a permutation of the labels {:?}",
                        self.labels
                    )));
                }
                Ok(order.iter().enumerate().map(|(k, &l)| (l, k)).collect())
            }
        }
    }
}

/// Result of [`Arrangement::extended`].
#[derive(Debug, Clone)]
pub struct Extended<F: Field> {
    pub arrangement: Arrangement<F>,
    /// Label of the added hyperplane, `None` for a zero normal.
    pub label: Option<usize>,
    /// The hyperplane was already a member.
    pub duplicate: bool,
    pub degeneracy: Option<Degeneracy>,
}

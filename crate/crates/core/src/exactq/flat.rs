use std::hash::{Hash, Hasher};

use crate::exactq::field::Field;
use crate::exactq::hyperplane::Hyperplane;
use crate::exactq::linalg::{eliminate, free_basis, Matrix};

/// Nonempty affine subspace `{x : R x = c}` with `(R, c)` in reduced row
/// echelon form.
///
/// The RREF pair is unique per subspace, so equality and hashing only look at
/// it. The chart `point + basis · t` puts the free variables of the RREF in
/// increasing column order; `point` has all free variables zero.
#[derive(Debug, Clone)]
pub struct Flat<E> {
    ambient: usize,
    system: Matrix<E>,
    rhs: Vec<E>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    point: Vec<E>,
    basis: Vec<Vec<E>>,
}

impl<E: PartialEq> PartialEq for Flat<E> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.system == other.system && self.rhs == other.rhs
    }
}

impl<E: Eq> Eq for Flat<E> {}

impl<E: Hash> Hash for Flat<E> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.system.hash(state);
        self.rhs.hash(state);
    }
}

/// Outcome of intersecting a flat with a hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection<E> {
    Empty,
    /// The flat already lies in the hyperplane.
    Unchanged,
    /// Dimension dropped by exactly one.
    Proper(Flat<E>),
}

/// A hyperplane seen in the chart coordinates of a flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trace<E> {
    /// The flat lies inside the hyperplane.
    Contains,
    /// The flat misses the hyperplane.
    Disjoint,
    Hyperplane(Hyperplane<E>),
}

impl<E: Clone + Eq> Flat<E> {
    /// The whole space `F^d`.
    pub fn ambient<F: Field<Elem = E>>(field: &F, d: usize) -> Self {
        Self::from_system(field, d, Vec::new(), Vec::new()).expect("empty system is consistent")
    }

    /// Solution set of `rows · x = rhs`, or `None` when it is empty.
    pub fn from_system<F: Field<Elem = E>>(
        field: &F,
        ambient: usize,
        rows: Vec<Vec<E>>,
        rhs: Vec<E>,
    ) -> Option<Self> {
        debug_assert_eq!(rows.len(), rhs.len());
        let mut aug: Vec<Vec<E>> = rows
            .into_iter()
            .zip(rhs)
            .map(|(mut r, b)| {
                debug_assert_eq!(r.len(), ambient);
                r.push(b);
                r
            })
            .collect();
        let pivots = eliminate(field, &mut aug, ambient);
        let rank = pivots.len();
        if aug[rank..].iter().any(|r| !field.is_zero(&r[ambient])) {
            return None;
        }
        aug.truncate(rank);
        let rhs: Vec<E> = aug.iter_mut().map(|r| r.pop().unwrap()).collect();
        let basis = free_basis(field, &aug, &pivots, ambient);
        let mut point = vec![field.zero(); ambient];
        for (i, &p) in pivots.iter().enumerate() {
            point[p] = rhs[i].clone();
        }
        let free = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        Some(Self {
            ambient,
            system: Matrix::from_rows(ambient, aug).expect("rows have ambient length"),
            rhs,
            pivots,
            free,
            point,
            basis,
        })
    }

    /// The single point `x`.
    pub fn point_flat<F: Field<Elem = E>>(field: &F, x: &[E]) -> Self {
        let d = x.len();
        let rows = (0..d)
            .map(|i| {
                let mut r = vec![field.zero(); d];
                r[i] = field.one();
                r
            })
            .collect();
        Self::from_system(field, d, rows, x.to_vec()).expect("point system is consistent")
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn system(&self) -> &Matrix<E> {
        &self.system
    }

    pub fn rhs(&self) -> &[E] {
        &self.rhs
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn point(&self) -> &[E] {
        &self.point
    }

    /// Direction vectors, one per free column.
    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    /// Canonical chart `(point, basis)`.
    pub fn parametrize(&self) -> (Vec<E>, Vec<Vec<E>>) {
        (self.point.clone(), self.basis.clone())
    }

    pub fn is_ambient(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, field: &F, x: &[E]) -> bool {
        (0..self.system.rows()).all(|r| field.dot(self.system.row(r), x) == self.rhs[r])
    }

    /// Chart coordinates of `x`; `None` if `x` is not on the flat.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, x: &[E]) -> Option<Vec<E>> {
        self.contains_point(field, x)
            .then(|| self.free.iter().map(|&c| x[c].clone()).collect())
    }

    /// `point + basis · t`.
    pub fn embed<F: Field<Elem = E>>(&self, field: &F, t: &[E]) -> Vec<E> {
        debug_assert_eq!(t.len(), self.basis.len());
        let mut x = self.point.clone();
        for (coef, dir) in t.iter().zip(&self.basis) {
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi = field.add(xi, &field.mul(coef, di));
            }
        }
        x
    }

    /// `self ⊆ other`.
    pub fn is_subset_of<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        other.contains_point(field, &self.point)
            && self.basis.iter().all(|v| {
                (0..other.system.rows()).all(|r| field.is_zero(&field.dot(other.system.row(r), v)))
            })
    }

    pub fn trace<F: Field<Elem = E>>(&self, field: &F, h: &Hyperplane<E>) -> Trace<E> {
        let normal: Vec<E> = self.basis.iter().map(|v| field.dot(h.normal(), v)).collect();
        let offset = field.sub(h.offset(), &field.dot(h.normal(), &self.point));
        match Hyperplane::new(field, normal, offset) {
            Ok(restricted) => Trace::Hyperplane(restricted),
            Err(crate::exactq::Degeneracy::AmbientMember) => Trace::Contains,
            Err(crate::exactq::Degeneracy::EmptyHyperplane) => Trace::Disjoint,
        }
    }

    pub fn intersect<F: Field<Elem = E>>(&self, field: &F, h: &Hyperplane<E>) -> Intersection<E> {
        match self.trace(field, h) {
            Trace::Contains => Intersection::Unchanged,
            Trace::Disjoint => Intersection::Empty,
            Trace::Hyperplane(_) => {
                let mut rows = self.system.row_vecs();
                let mut rhs = self.rhs.clone();
                rows.push(h.normal().to_vec());
                rhs.push(h.offset().clone());
                let g = Self::from_system(field, self.ambient, rows, rhs)
                    .expect("transverse intersection is nonempty");
                debug_assert_eq!(g.dim() + 1, self.dim());
                Intersection::Proper(g)
            }
        }
    }

    /// `self ∩ other`, or `None` when empty.
    pub fn meet<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Option<Self> {
        let mut rows = self.system.row_vecs();
        rows.extend(other.system.row_vecs());
        let mut rhs = self.rhs.clone();
        rhs.extend(other.rhs.iter().cloned());
        Self::from_system(field, self.ambient, rows, rhs)
    }
}

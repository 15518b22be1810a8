use crate::exactq::field::Field;
use crate::exactq::flat::Flat;

/// Affine hyperplane `normal · x = offset` in canonical form.
///
/// The normal is never zero. Over the rationals it is a primitive integer
/// vector with positive leading entry; over `F_p` its leading entry is 1.
/// Two hyperplanes describe the same point set iff they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane<E> {
    normal: Vec<E>,
    offset: E,
}

/// What a zero normal vector means: `0 = 0` is the whole space, `0 = a` with
/// `a != 0` is the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Degeneracy {
    AmbientMember,
    EmptyHyperplane,
}

impl<E: Clone + Eq> Hyperplane<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, normal: Vec<E>, offset: E) -> Result<Self, Degeneracy> {
        if normal.iter().all(|x| field.is_zero(x)) {
            return Err(if field.is_zero(&offset) {
                Degeneracy::AmbientMember
            } else {
                Degeneracy::EmptyHyperplane
            });
        }
        let mut coeffs = normal;
        coeffs.push(offset);
        field.canonical_scale(&mut coeffs);
        let offset = coeffs.pop().unwrap();
        Ok(Self {
            normal: coeffs,
            offset,
        })
    }

    /// The linear hyperplane `normal · x = 0`.
    pub fn linear<F: Field<Elem = E>>(field: &F, normal: Vec<E>) -> Result<Self, Degeneracy> {
        Self::new(field, normal, field.zero())
    }

    pub fn normal(&self) -> &[E] {
        &self.normal
    }

    pub fn offset(&self) -> &E {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn is_linear<F: Field<Elem = E>>(&self, field: &F) -> bool {
        field.is_zero(&self.offset)
    }

    /// Parallel translate through the origin.
    pub fn linear_part<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Self {
            normal: self.normal.clone(),
            offset: field.zero(),
        }
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, field: &F, x: &[E]) -> bool {
        field.dot(&self.normal, x) == self.offset
    }

    pub fn to_flat<F: Field<Elem = E>>(&self, field: &F) -> Flat<E> {
        Flat::from_system(field, self.dim(), vec![self.normal.clone()], vec![self.offset.clone()])
            .expect("a hyperplane is consistent")
    }

    /// Coefficient vector `(normal, offset)`.
    pub fn coefficients(&self) -> Vec<E> {
        let mut v = self.normal.clone();
        v.push(self.offset.clone());
        v
    }
}

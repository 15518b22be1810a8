use crate::arrangement::model::Arrangement;
use crate::arrangement::poly::{BiPoly, Poly};
use crate::arrangement::semilattice::SemiLattice;
use crate::error::{Error, Result};
use crate::exactq::{linalg::null_space, Field, Flat, Trace};

/// `χ(A, t) = Σ μ(V, X) t^dim(X)`; zero when the ambient space is a member.
pub fn char_poly_of<F: Field>(lattice: &SemiLattice<F>) -> Poly {
    if lattice.arrangement().has_ambient_member() {
        return Poly::zero();
    }
    let mut c = vec![0i64; lattice.dim() + 1];
    for (x, mu) in lattice.mobius_bottom().iter().enumerate() {
        c[lattice.dim_of(x)] += mu;
    }
    Poly::new(c)
}

pub fn char_poly<F: Field>(a: &Arrangement<F>) -> Poly {
    char_poly_of(&SemiLattice::build(a))
}

/// The members containing `x`, with their labels. `x` must be a flat of `A`.
pub fn localization<F: Field>(a: &Arrangement<F>, x: &Flat<F::Elem>) -> Result<Arrangement<F>> {
    let field = a.field();
    let positions: Vec<usize> = a
        .hyperplanes()
        .iter()
        .enumerate()
        .filter(|(_, h)| x.is_subset_of(field, &h.to_flat(field)))
        .map(|(i, _)| i)
        .collect();
    let meet = positions
        .iter()
        .try_fold(Flat::ambient(field, a.dim()), |f, &i| {
            f.meet(field, &a.hyperplanes()[i].to_flat(field))
        });
    if meet.as_ref() != Some(x) {
        return Err(Error::NotAFlat);
    }
    Ok(a.subarrangement(&positions))
}

/// `A/X`: the traces on `x` of the members neither containing nor missing
/// it, written in the canonical chart of `x`. Coinciding traces are kept as
/// separately labeled copies.
pub fn restriction<F: Field>(a: &Arrangement<F>, x: &Flat<F::Elem>) -> Arrangement<F> {
    let field = a.field();
    let mut hyperplanes = Vec::new();
    let mut labels = Vec::new();
    for (h, &label) in a.hyperplanes().iter().zip(a.labels()) {
        if let Trace::Hyperplane(g) = x.trace(field, h) {
            hyperplanes.push(g);
            labels.push(label);
        }
    }
    Arrangement::multi(field.clone(), x.dim(), hyperplanes, labels)
        .expect("restricted labels are inherited and distinct")
}

/// The smallest flat of `A` containing the point `x`.
pub fn locate<F: Field>(a: &Arrangement<F>, x: &[F::Elem]) -> Result<Flat<F::Elem>> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: x.len(),
        });
    }
    let field = a.field();
    let (rows, rhs): (Vec<_>, Vec<_>) = a
        .hyperplanes()
        .iter()
        .filter(|h| h.contains_point(field, x))
        .map(|h| (h.normal().to_vec(), h.offset().clone()))
        .unzip();
    Ok(Flat::from_system(field, a.dim(), rows, rhs).expect("x lies on every selected member"))
}

/// Result of [`essentialize`].
#[derive(Debug, Clone)]
pub struct Essentialization<F: Field> {
    /// `A/O` in the chart coordinates of `O`.
    pub arrangement: Arrangement<F>,
    /// The span `O` of the normals, as a linear flat of `F^d`.
    pub span: Flat<F::Elem>,
}

/// Restricts `A` to the span `O` of its normals, where it is essential.
pub fn essentialize<F: Field>(a: &Arrangement<F>) -> Essentialization<F> {
    let field = a.field();
    let d = a.dim();
    let normals: Vec<Vec<F::Elem>> = a.hyperplanes().iter().map(|h| h.normal().to_vec()).collect();
    // O = (O^⊥)^⊥, with O^⊥ the null space of the normals.
    let complement = null_space(field, &normals, d);
    let rhs = vec![field.zero(); complement.len()];
    let span = Flat::from_system(field, d, complement, rhs).expect("linear system");
    let mut arrangement = restriction(a, &span);
    if a.has_ambient_member() {
        arrangement = arrangement.with_ambient_member();
    }
    Essentialization { arrangement, span }
}

/// The Whitney polynomial from its definition `Σ_{X<=Y} μ(X,Y) s^(d-dim X) t^dim Y`.
pub fn whitney_poly_of<F: Field>(lattice: &SemiLattice<F>) -> BiPoly {
    crate::arrangement::InvariantBundle::from_lattice(lattice).whitney
}

/// The Whitney polynomial as `Σ_X χ(A/X, t) s^(d - dim X)`, building every
/// restriction and its own semi-lattice.
pub fn whitney_poly_via_restrictions<F: Field>(a: &Arrangement<F>) -> BiPoly {
    let d = a.dim();
    let mut w = BiPoly::zero(d);
    if a.has_ambient_member() {
        return w;
    }
    let lattice = SemiLattice::build(a);
    for x in lattice.flats() {
        let chi = char_poly(&restriction(a, x));
        for (k, &c) in chi.coeffs().iter().enumerate() {
            w.add_to(d - x.dim(), k, c);
        }
    }
    w
}

/// `f_k = Σ_{dim X = k} (-1)^k χ(A/X, -1)`, computed from restrictions.
pub fn faces_via_restrictions<F: Field>(a: &Arrangement<F>) -> Vec<i128> {
    let mut f = vec![0i128; a.dim() + 1];
    if a.has_ambient_member() {
        return f;
    }
    for x in SemiLattice::build(a).flats() {
        let k = x.dim();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        f[k] += sign * char_poly(&restriction(a, x)).eval(-1);
    }
    f
}

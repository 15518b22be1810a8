//! Linearization, vertices and lines, and the adjoint arrangements built
//! from them: `σA°` and `Ā` in `F^d`, and the induced adjoint `Ã` in
//! `F^(d+1)` whose semi-lattice classifies one-element extensions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arrangement::{Arrangement, SemiLattice};
use crate::error::Result;
use crate::exactq::{Field, Hyperplane};

/// `A°`, with each linear member mapped to the labels of `A` it came from.
#[derive(Debug, Clone)]
pub struct Linearization<F: Field> {
    pub arrangement: Arrangement<F>,
    pub sources: BTreeMap<usize, Vec<usize>>,
}

/// The members `αᵢ·x = 0` of `A°`, duplicates merged and labeled `1..` in
/// order of first appearance.
pub fn linearize<F: Field>(a: &Arrangement<F>) -> Linearization<F> {
    let field = a.field();
    let mut hyperplanes: Vec<Hyperplane<F::Elem>> = Vec::new();
    let mut sources: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (h, &label) in a.hyperplanes().iter().zip(a.labels()) {
        let lin = h.linear_part(field);
        let k = match hyperplanes.iter().position(|g| *g == lin) {
            Some(k) => k,
            None => {
                hyperplanes.push(lin);
                hyperplanes.len() - 1
            }
        };
        sources.entry(k + 1).or_default().push(label);
    }
    let arrangement = Arrangement::new(field.clone(), a.dim(), hyperplanes).expect("merged");
    Linearization {
        arrangement,
        sources,
    }
}

/// Scales a nonzero direction the way hyperplane normals are scaled.
pub fn canonical_direction<F: Field>(field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
    let mut coeffs = v.to_vec();
    coeffs.push(field.zero());
    field.canonical_scale(&mut coeffs);
    coeffs.pop();
    coeffs
}

/// The 0-flats of `L(A)` as points, ordered like the semi-lattice, and the
/// 1-flats of `L(A°)` as canonical directions, in decreasing lexicographic
/// order.
pub fn vertices_and_lines<F: Field>(a: &Arrangement<F>) -> Result<(Vec<Vec<F::Elem>>, Vec<Vec<F::Elem>>)> {
    a.require_essential()?;
    let field = a.field();
    let lattice = SemiLattice::build(a);
    let vertices = lattice
        .level(0)
        .into_iter()
        .map(|x| lattice.flat(x).point().to_vec())
        .collect();
    let lin = linearize(a).arrangement;
    let lin_lattice = SemiLattice::build(&lin);
    let mut lines: Vec<Vec<F::Elem>> = lin_lattice
        .level(1)
        .into_iter()
        .map(|x| canonical_direction(field, &lin_lattice.flat(x).basis()[0]))
        .collect();
    lines.sort_by(|x, y| y.cmp(x));
    Ok((vertices, lines))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SourceKind {
    #[serde(rename = "v")]
    Vertex,
    #[serde(rename = "u")]
    Line,
}

/// Where a member of `Ã` came from: the vertex or line vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub kind: SourceKind,
    pub source: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct AdjointData<F: Field> {
    pub linearization: Linearization<F>,
    pub vertices: Vec<Vec<F::Elem>>,
    pub lines: Vec<Vec<F::Elem>>,
    /// `σA° = {uᵢ·x = 0}` in `F^d`, labeled like the lines.
    pub sigma: Arrangement<F>,
    /// `Ã` in `F^(d+1)`: labels `1..=n₁` for `ũᵢ = (uᵢ, 0)`, then
    /// `n₁+1..=n₁+n₀` for `ṽᵢ = (vᵢ, -1)`.
    pub induced: Arrangement<F>,
    /// Labels of `Ã₀`, the `ṽ` members.
    pub part0: Vec<usize>,
    /// Labels of `Ã₁`, the `ũ` members.
    pub part1: Vec<usize>,
    /// `Ā = A₀ ∪ σA°` in `F^d`, where `A₀ = {vᵢ·x = 0}`; the zero vertex is
    /// dropped and coinciding members merged.
    pub bar: Arrangement<F>,
    /// One entry per member of `induced`, by position.
    pub provenance: Vec<Provenance>,
}

impl<F: Field> AdjointData<F> {
    /// The label in `Ã` of `x_{d+1} = 0`, present iff the origin is a vertex.
    pub fn last_axis_label(&self) -> Option<usize> {
        let field = self.induced.field();
        let d = self.induced.dim() - 1;
        let mut normal = vec![field.zero(); d + 1];
        normal[d] = field.one();
        let h = Hyperplane::linear(field, normal).expect("nonzero");
        self.induced.position_of(&h).map(|i| self.induced.labels()[i])
    }
}

pub fn induced_adjoint<F: Field>(a: &Arrangement<F>) -> Result<AdjointData<F>> {
    let (vertices, lines) = vertices_and_lines(a)?;
    let field = a.field();
    let d = a.dim();
    let fmt = |v: &[F::Elem]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();

    let mut induced = Vec::new();
    let mut provenance = Vec::new();
    let mut sigma = Vec::new();
    for u in &lines {
        let mut n = u.clone();
        sigma.push(Hyperplane::linear(field, n.clone()).expect("nonzero line"));
        n.push(field.zero());
        induced.push(Hyperplane::linear(field, n).expect("nonzero line"));
        provenance.push(Provenance {
            kind: SourceKind::Line,
            source: fmt(u),
        });
    }
    let mut bar_members = Vec::new();
    for v in &vertices {
        let mut n = v.clone();
        if let Ok(h) = Hyperplane::linear(field, n.clone()) {
            bar_members.push(h);
        }
        n.push(field.neg(&field.one()));
        induced.push(Hyperplane::linear(field, n).expect("last entry nonzero"));
        provenance.push(Provenance {
            kind: SourceKind::Vertex,
            source: fmt(v),
        });
    }
    for h in &sigma {
        bar_members.push(h.clone());
    }
    let mut bar = Vec::new();
    for h in bar_members {
        if !bar.contains(&h) {
            bar.push(h);
        }
    }

    let n1 = lines.len();
    let n0 = vertices.len();
    Ok(AdjointData {
        linearization: linearize(a),
        sigma: Arrangement::new(field.clone(), d, sigma)?,
        induced: Arrangement::new(field.clone(), d + 1, induced)?,
        part0: (n1 + 1..=n1 + n0).collect(),
        part1: (1..=n1).collect(),
        bar: Arrangement::new(field.clone(), d, bar)?,
        provenance,
        vertices,
        lines,
    })
}

/// `L(Ã)`.
pub fn adjoint_lattice<F: Field>(a: &Arrangement<F>) -> Result<SemiLattice<F>> {
    Ok(SemiLattice::build(&induced_adjoint(a)?.induced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::error::Error;
    use crate::exactq::field::{int, int_vec};
    use crate::exactq::{Rational, Rationals};

    fn q(rows: &[(&[i64], i64)]) -> Arrangement<Rationals> {
        let d = rows[0].0.len();
        Arrangement::from_coefficients(
            Rationals,
            d,
            rows.iter().map(|(n, o)| (int_vec(n), int(*o))).collect(),
        )
        .unwrap()
    }

    fn normals(a: &Arrangement<Rationals>) -> Vec<Vec<Rational>> {
        a.hyperplanes().iter().map(|h| h.normal().to_vec()).collect()
    }

    #[test]
    fn linearize_examples() {
        let lin = linearize(&corpus::example());
        assert_eq!(normals(&lin.arrangement), vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
        assert_eq!(lin.sources[&1], vec![1, 2]);
        let p = corpus::pencil();
        assert_eq!(linearize(&p).arrangement, p);
        let single = linearize(&q(&[(&[1], 5)])).arrangement;
        assert_eq!(single.hyperplanes()[0].offset(), &int(0));
    }

    #[test]
    fn vertices_and_lines_examples() {
        let (v, l) = vertices_and_lines(&corpus::example()).unwrap();
        assert_eq!(v, vec![int_vec(&[0, 0]), int_vec(&[1, 0])]);
        assert_eq!(l, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);

        let (v, l) = vertices_and_lines(&corpus::boolean(2)).unwrap();
        assert_eq!(v, vec![int_vec(&[0, 0])]);
        assert_eq!(l, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);

        let (v, l) = vertices_and_lines(&q(&[(&[1], 0), (&[1], 1)])).unwrap();
        assert_eq!(v, vec![int_vec(&[0]), int_vec(&[1])]);
        assert_eq!(l, vec![int_vec(&[1])]);

        let flat = q(&[(&[1, 0], 0)]);
        assert!(matches!(vertices_and_lines(&flat), Err(Error::NonEssential { .. })));
    }

    #[test]
    fn induced_example() {
        let data = induced_adjoint(&corpus::example()).unwrap();
        assert_eq!(
            normals(&data.induced),
            vec![int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1]), int_vec(&[1, 0, -1])]
        );
        assert_eq!(data.part1, vec![1, 2]);
        assert_eq!(data.part0, vec![3, 4]);
        assert_eq!(data.last_axis_label(), Some(3));
        assert_eq!(normals(&data.bar), vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
        assert_eq!(normals(&data.sigma), vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
        assert_eq!(data.provenance[3].kind, SourceKind::Vertex);
        assert_eq!(data.provenance[3].source, vec!["1", "0"]);

        let lattice = adjoint_lattice(&corpus::example()).unwrap();
        let sizes: Vec<usize> = (0..=3).rev().map(|k| lattice.level(k).len()).collect();
        assert_eq!(sizes, vec![1, 4, 4, 1]);
    }

    #[test]
    fn induced_small_cases() {
        let data = induced_adjoint(&corpus::boolean(2)).unwrap();
        assert_eq!(
            normals(&data.induced),
            vec![int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1])]
        );
        let lattice = SemiLattice::build(&data.induced);
        assert_eq!(lattice.len(), 8);

        let line = q(&[(&[1], 0), (&[1], 1)]);
        let data = induced_adjoint(&line).unwrap();
        assert_eq!(
            normals(&data.induced),
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, -1])]
        );
        assert_eq!(SemiLattice::build(&data.induced).len(), 5);
    }

    #[test]
    fn induced_is_central_and_lines_annihilate_normals() {
        let field = Rationals;
        for (name, a) in corpus::standard() {
            let data = induced_adjoint(&a).unwrap();
            assert!(data.induced.is_linear(), "{name}");
            for u in &data.lines {
                assert!(u.iter().any(|x| x != &int(0)));
                let lead = u.iter().find(|x| **x != int(0)).unwrap();
                assert!(*lead > int(0), "{name}");
                assert!(u.iter().all(|x| x.is_integer()), "{name}");
                // Every member whose linear part contains the line is orthogonal to it.
                let count = a
                    .hyperplanes()
                    .iter()
                    .filter(|h| field.is_zero(&field.dot(h.normal(), u)))
                    .count();
                assert!(count >= a.dim() - 1, "{name}");
            }
            for v in &data.vertices {
                let on: Vec<usize> = a
                    .hyperplanes()
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| h.contains_point(&field, v))
                    .map(|(i, _)| i)
                    .collect();
                assert_eq!(a.rank_of_normals(&on), a.dim(), "{name}");
            }
        }
    }
}

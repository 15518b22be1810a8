//! One-element extensions `A + H_{α,a}`: locating `(α, a)` in `L(Ã)`,
//! representatives of strata, classification reports and the
//! classification and monotonicity checks.

pub mod poset;

pub use poset::{find_isomorphism, isomorphic, poset_isomorphic, Poset};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjoint::{induced_adjoint, AdjointData};
use crate::arrangement::{Arrangement, Extended, InvariantBundle, SemiLattice};
use crate::error::{Error, Result};
use crate::exactq::{Degeneracy, Field, FieldKind, Flat, Hyperplane};

/// `A ∪ {α·x = a}` with the zero-normal conventions.
pub fn extend<F: Field>(a: &Arrangement<F>, alpha: Vec<F::Elem>, offset: F::Elem) -> Result<Extended<F>> {
    a.extended(alpha, offset)
}

/// Splits `(α, a)` into the normal and offset.
fn split<E: Clone>(point: &[E]) -> (Vec<E>, E) {
    let (alpha, a) = point.split_at(point.len() - 1);
    (alpha.to_vec(), a[0].clone())
}

/// The smallest flat of `L(Ã)` containing `(α, a)`.
pub fn stratum_of<F: Field>(a: &Arrangement<F>, alpha: &[F::Elem], offset: &F::Elem) -> Result<Flat<F::Elem>> {
    if alpha.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: alpha.len(),
        });
    }
    let lattice = SemiLattice::build(&induced_adjoint(a)?.induced);
    let mut point = alpha.to_vec();
    point.push(offset.clone());
    Ok(lattice.flat(lattice.locate(&point)).clone())
}

/// The members of `lattice`'s arrangement not containing flat `x`.
fn forbidden<F: Field>(lattice: &SemiLattice<F>, x: usize) -> Vec<&Hyperplane<F::Elem>> {
    let on = lattice.member_set(x);
    lattice
        .arrangement()
        .hyperplanes()
        .iter()
        .enumerate()
        .filter(|(i, _)| !on.contains(*i))
        .map(|(_, h)| h)
        .collect()
}

fn avoids<F: Field>(field: &F, point: &[F::Elem], forbidden: &[&Hyperplane<F::Elem>]) -> bool {
    forbidden.iter().all(|h| !h.contains_point(field, point))
}

/// Largest `N` tried on the moment curve; over `F_p` the curve repeats
/// after `p - 1` steps.
fn moment_limit<F: Field>(field: &F) -> i64 {
    match field.kind() {
        FieldKind::Rationals => 100_000,
        FieldKind::Prime(p) => (p as i64 - 1).min(100_000),
    }
}

/// A point of `x` on no member missing it: the chart point plus
/// `Σ N^(j+1) bⱼ` over the chart basis, for the smallest `N >= 1` that works.
pub fn representative_point<F: Field>(lattice: &SemiLattice<F>, x: usize) -> Option<Vec<F::Elem>> {
    let field = lattice.arrangement().field();
    let flat = lattice.flat(x);
    let bad = forbidden(lattice, x);
    let k = flat.dim();
    for n in 1..=moment_limit(field) {
        let base = field.from_i64(n);
        let mut t = Vec::with_capacity(k);
        let mut power = field.one();
        for _ in 0..k {
            power = field.mul(&power, &base);
            t.push(power.clone());
        }
        let point = flat.embed(field, &t);
        if avoids(field, &point, &bad) {
            return Some(point);
        }
    }
    None
}

/// A random point of the stratum of `x`, from integer chart coordinates in
/// a window that widens after repeated misses.
pub fn random_point<F: Field, R: Rng>(lattice: &SemiLattice<F>, x: usize, rng: &mut R) -> Option<Vec<F::Elem>> {
    let field = lattice.arrangement().field();
    let flat = lattice.flat(x);
    let bad = forbidden(lattice, x);
    let mut radius = 8i64;
    let tries = match field.kind() {
        FieldKind::Rationals => 10_000,
        FieldKind::Prime(_) => 400,
    };
    for attempt in 1..=tries {
        let t: Vec<F::Elem> = (0..flat.dim())
            .map(|_| field.from_i64(rng.gen_range(-radius..=radius)))
            .collect();
        let point = flat.embed(field, &t);
        if avoids(field, &point, &bad) {
            return Some(point);
        }
        if attempt % 32 == 0 && radius < 1 << 40 {
            radius *= 2;
        }
    }
    None
}

/// `A + H` for a point `(α, a)`: its bundle, its semi-lattice (absent when
/// the ambient space became a member) and the degeneracy flag.
#[derive(Debug, Clone)]
pub struct Outcome<F: Field> {
    pub bundle: InvariantBundle,
    pub lattice: Option<SemiLattice<F>>,
    pub degeneracy: Option<Degeneracy>,
}

pub fn evaluate<F: Field>(a: &Arrangement<F>, point: &[F::Elem]) -> Outcome<F> {
    let (alpha, offset) = split(point);
    let ext = a.extended(alpha, offset).expect("point has d + 1 coordinates");
    if ext.degeneracy == Some(Degeneracy::AmbientMember) {
        return Outcome {
            bundle: InvariantBundle::zero(a.dim()),
            lattice: None,
            degeneracy: ext.degeneracy,
        };
    }
    let lattice = SemiLattice::build(&ext.arrangement);
    Outcome {
        bundle: InvariantBundle::from_lattice(&lattice),
        lattice: Some(lattice),
        degeneracy: ext.degeneracy,
    }
}

impl<F: Field> Outcome<F> {
    /// Same bundle, same degeneracy, isomorphic semi-lattices.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.bundle == other.bundle
            && (self.degeneracy == Some(Degeneracy::AmbientMember))
                == (other.degeneracy == Some(Degeneracy::AmbientMember))
            && match (&self.lattice, &other.lattice) {
                (Some(p), Some(q)) => poset_isomorphic(p, q),
                (None, None) => true,
                _ => false,
            }
    }
}

#[derive(Debug, Clone)]
pub struct Stratum<F: Field> {
    /// Index of the flat in `L(Ã)`.
    pub index: usize,
    pub flat: Flat<F::Elem>,
    /// Labels of the members of `Ã` containing the flat.
    pub labels: Vec<usize>,
    pub representative: Vec<F::Elem>,
    pub degenerate: Option<Degeneracy>,
    pub bundle: InvariantBundle,
    /// Strata share a class iff their extensions have isomorphic
    /// semi-lattices (and equal bundles); numbered by first appearance.
    pub class_id: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Which stratification the pair comes from: `induced`, `sigma`,
    /// `sigma-affine`, `bar` or `restriction`.
    pub family: String,
    /// Stratum indices with `smaller ⊆ larger`.
    pub smaller: usize,
    pub larger: usize,
    pub details: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport<F: Field> {
    pub adjoint: AdjointData<F>,
    /// `L(Ã)`; stratum `i` is its element `i`.
    pub lattice: SemiLattice<F>,
    pub strata: Vec<Stratum<F>>,
    /// Covering pairs `(x, y)` of `L(Ã)`: `y ⊂ x` with dimension one less.
    pub order: Vec<(usize, usize)>,
    pub monotonicity_violations: Vec<Violation>,
    pub class_count: usize,
}

/// Groups outcomes into classes; returns the class id per outcome.
pub fn class_ids<F: Field>(outcomes: &[Outcome<F>]) -> (Vec<usize>, usize) {
    let mut reps: Vec<usize> = Vec::new();
    let mut ids = Vec::with_capacity(outcomes.len());
    for (i, o) in outcomes.iter().enumerate() {
        let found = reps.iter().position(|&r| outcomes[r].equivalent(o));
        ids.push(found.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }
    (ids, reps.len())
}

/// Pairs `x <= y` of `lattice` (so `y ⊆ x`) where `bundles[y] <= bundles[x]`
/// fails.
pub fn monotonicity_over<F: Field>(family: &str, lattice: &SemiLattice<F>, bundles: &[InvariantBundle]) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in 0..lattice.len() {
        for y in lattice.up_set(x).ones() {
            if y == x {
                continue;
            }
            let details = bundles[y].violations_against(&bundles[x]);
            if !details.is_empty() {
                out.push(Violation {
                    family: family.to_string(),
                    smaller: y,
                    larger: x,
                    details,
                });
            }
        }
    }
    out
}

/// One stratum per element of `L(Ã)` with its representative, bundle and
/// class, and the monotonicity check over all comparable pairs.
pub fn classify_extensions<F: Field>(a: &Arrangement<F>) -> Result<ClassificationReport<F>> {
    let adjoint = induced_adjoint(a)?;
    let lattice = SemiLattice::build(&adjoint.induced);
    let computed: Vec<(Vec<F::Elem>, Outcome<F>)> = (0..lattice.len())
        .into_par_iter()
        .map(|x| {
            let rep = representative_point(&lattice, x).expect("moment curve leaves every stratum");
            let outcome = evaluate(a, &rep);
            (rep, outcome)
        })
        .collect();
    let outcomes: Vec<Outcome<F>> = computed.iter().map(|(_, o)| o.clone()).collect();
    let (ids, class_count) = class_ids(&outcomes);
    let bundles: Vec<InvariantBundle> = outcomes.iter().map(|o| o.bundle.clone()).collect();
    let monotonicity_violations = monotonicity_over("induced", &lattice, &bundles);
    let strata = computed
        .into_iter()
        .zip(ids)
        .enumerate()
        .map(|(x, ((representative, outcome), class_id))| Stratum {
            index: x,
            flat: lattice.flat(x).clone(),
            labels: lattice.labels_of(x),
            representative,
            degenerate: outcome.degeneracy,
            bundle: outcome.bundle,
            class_id,
        })
        .collect();
    Ok(ClassificationReport {
        order: lattice.cover_pairs(),
        adjoint,
        lattice,
        strata,
        monotonicity_violations,
        class_count,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub strata: usize,
    pub comparisons: usize,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.strata += other.strata;
        self.comparisons += other.comparisons;
        self.failures.extend(other.failures);
    }
}

/// A stratification of some space of extension parameters: a lattice whose
/// points map to the point `(α, a)` of `F^(d+1)` to extend by.
struct Family<'a, F: Field> {
    name: &'static str,
    lattice: &'a SemiLattice<F>,
    lift: Box<dyn Fn(&[F::Elem], &mut ChaCha8Rng) -> Vec<F::Elem> + Sync + 'a>,
}

fn families<'a, F: Field>(
    a: &Arrangement<F>,
    induced: &'a SemiLattice<F>,
    sigma: &'a SemiLattice<F>,
    bar: &'a SemiLattice<F>,
) -> Vec<Family<'a, F>> {
    let field = a.field().clone();
    let with_zero = move |p: &[F::Elem], _: &mut ChaCha8Rng| {
        let mut v = p.to_vec();
        v.push(field.zero());
        v
    };
    let field = a.field().clone();
    let with_nonzero = move |p: &[F::Elem], rng: &mut ChaCha8Rng| {
        let mut v = p.to_vec();
        let mut off = 0;
        while off == 0 {
            off = rng.gen_range(-9i64..=9);
        }
        v.push(field.from_i64(off));
        v
    };
    let mut out = vec![Family {
        name: "induced",
        lattice: induced,
        lift: Box::new(|p: &[F::Elem], _: &mut ChaCha8Rng| p.to_vec()),
    }];
    if a.is_linear() {
        out.push(Family {
            name: "sigma",
            lattice: sigma,
            lift: Box::new(with_zero.clone()),
        });
        out.push(Family {
            name: "sigma-affine",
            lattice: sigma,
            lift: Box::new(with_nonzero),
        });
    }
    out.push(Family {
        name: "bar",
        lattice: bar,
        lift: Box::new(with_zero),
    });
    out
}

/// For every stratum of `L(Ã)`, of `L(σA)` when `A` is linear (with `a = 0`
/// and with `a != 0`), and of `L(Ā)` (with `a = 0`): `trials` random
/// representatives give extensions equivalent to the deterministic one.
pub fn verify_classification<F: Field>(a: &Arrangement<F>, trials: usize, seed: u64) -> Result<VerificationReport> {
    let adjoint = induced_adjoint(a)?;
    let induced = SemiLattice::build(&adjoint.induced);
    let sigma = SemiLattice::build(&adjoint.sigma);
    let bar = SemiLattice::build(&adjoint.bar);
    let mut report = VerificationReport::default();
    for (k, family) in families(a, &induced, &sigma, &bar).iter().enumerate() {
        let results: Vec<VerificationReport> = (0..family.lattice.len())
            .into_par_iter()
            .map(|x| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 48) ^ x as u64);
                let mut r = VerificationReport {
                    strata: 1,
                    ..Default::default()
                };
                let Some(base) = representative_point(family.lattice, x) else {
                    r.failures.push(format!("{} stratum {x}: no representative", family.name));
                    return r;
                };
                let reference = evaluate(a, &(family.lift)(&base, &mut rng));
                for _ in 0..trials {
                    let Some(p) = random_point(family.lattice, x, &mut rng) else {
                        r.failures.push(format!("{} stratum {x}: no random point", family.name));
                        break;
                    };
                    let point = (family.lift)(&p, &mut rng);
                    r.comparisons += 1;
                    if !evaluate(a, &point).equivalent(&reference) {
                        let shown: Vec<String> = point.iter().map(|e| e.to_string()).collect();
                        r.failures.push(format!(
                            "{} stratum {x}: ({}) differs from the representative",
                            family.name,
                            shown.join(", ")
                        ));
                    }
                }
                r
            })
            .collect();
        results.into_iter().for_each(|r| report.merge(r));
    }
    Ok(report)
}

/// Monotonicity over `L(Ã)`, over `L(σA)` for linear `A` (linear and affine
/// extensions, including linear below affine), and over `L(Ā)`.
pub fn verify_monotonicity<F: Field>(a: &Arrangement<F>) -> Result<Vec<Violation>> {
    let mut out = classify_extensions(a)?.monotonicity_violations;
    let adjoint = induced_adjoint(a)?;
    let field = a.field();
    let bundles_with = |lattice: &SemiLattice<F>, offset: i64| -> Vec<InvariantBundle> {
        (0..lattice.len())
            .into_par_iter()
            .map(|x| {
                let mut p = representative_point(lattice, x).expect("moment curve leaves every stratum");
                p.push(field.from_i64(offset));
                evaluate(a, &p).bundle
            })
            .collect()
    };
    if a.is_linear() {
        let sigma = SemiLattice::build(&adjoint.sigma);
        let linear = bundles_with(&sigma, 0);
        let affine = bundles_with(&sigma, 1);
        out.extend(monotonicity_over("sigma", &sigma, &linear));
        out.extend(monotonicity_over("sigma-affine", &sigma, &affine));
        // INV(A + H_α) <= INV(A + H_{α',a}) whenever X_α ⊆ X_α'.
        for x in 0..sigma.len() {
            for y in sigma.up_set(x).ones() {
                let details = linear[y].violations_against(&affine[x]);
                if !details.is_empty() {
                    out.push(Violation {
                        family: "sigma-mixed".into(),
                        smaller: y,
                        larger: x,
                        details,
                    });
                }
            }
        }
    }
    let bar = SemiLattice::build(&adjoint.bar);
    out.extend(monotonicity_over("bar", &bar, &bundles_with(&bar, 0)));
    Ok(out)
}

/// For non-essential `A`: extensions by hyperplanes whose normal leaves the
/// span of the normals have `L(A + H) ≅ L(A) × C₂`.
pub fn verify_product_extension<F: Field>(a: &Arrangement<F>, trials: usize, seed: u64) -> Result<VerificationReport> {
    let field = a.field();
    let base = Poset::from_semilattice(&SemiLattice::build(a)).times_chain2();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport {
        strata: 1,
        ..Default::default()
    };
    let rank = a.rank();
    if rank == a.dim() {
        return Ok(report);
    }
    let normals: Vec<Vec<F::Elem>> = a.hyperplanes().iter().map(|h| h.normal().to_vec()).collect();
    let mut done = 0;
    while done < trials {
        let alpha: Vec<F::Elem> = (0..a.dim()).map(|_| field.from_i64(rng.gen_range(-5..=5))).collect();
        let mut with = normals.clone();
        with.push(alpha.clone());
        if crate::exactq::rank_of(field, &with) == rank {
            continue;
        }
        let offset = field.from_i64(rng.gen_range(-5..=5));
        let ext = a.extended(alpha, offset)?;
        let lattice = SemiLattice::build(&ext.arrangement);
        report.comparisons += 1;
        if !isomorphic(&Poset::from_semilattice(&lattice), &base) {
            report.failures.push(format!("extension {} is not L(A) x C2", done + 1));
        }
        done += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::invariants;
    use crate::corpus;
    use crate::exactq::field::{int, int_vec};
    use crate::exactq::Rationals;

    #[test]
    fn extend_examples() {
        let a = corpus::example();
        let dup = extend(&a, int_vec(&[1, 0]), int(0)).unwrap();
        assert!(dup.duplicate);
        assert_eq!(dup.arrangement, a);
        let four = extend(&a, int_vec(&[0, 1]), int(1)).unwrap();
        assert_eq!(four.arrangement.len(), 4);
        assert_eq!(invariants(&four.arrangement).regions, 9);
        let empty = extend(&a, int_vec(&[0, 0]), int(3)).unwrap();
        assert_eq!(empty.degeneracy, Some(Degeneracy::EmptyHyperplane));
        assert_eq!(empty.arrangement, a);
        assert!(matches!(extend(&a, int_vec(&[1]), int(0)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn stratum_examples() {
        let a = corpus::example();
        let s = stratum_of(&a, &int_vec(&[0, 1]), &int(1)).unwrap();
        let x1 = Hyperplane::linear(&Rationals, int_vec(&[1, 0, 0])).unwrap().to_flat(&Rationals);
        assert_eq!(s, x1);
        let s = stratum_of(&a, &int_vec(&[1, 1]), &int(-1)).unwrap();
        assert!(s.is_ambient());
        let s = stratum_of(&a, &int_vec(&[0, 0]), &int(0)).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn representative_examples() {
        let a = corpus::example();
        let lattice = SemiLattice::build(&induced_adjoint(&a).unwrap().induced);
        let x2 = Hyperplane::linear(&Rationals, int_vec(&[0, 1, 0])).unwrap().to_flat(&Rationals);
        let x = lattice.index_of(&x2).unwrap();
        let p = representative_point(&lattice, x).unwrap();
        assert_eq!(p[1], int(0));
        assert!(p[0] != int(0) && p[2] != int(0) && p[0] != p[2]);
        assert_eq!(lattice.locate(&p), x);

        let origin = lattice.level(0)[0];
        assert_eq!(representative_point(&lattice, origin).unwrap(), int_vec(&[0, 0, 0]));
        let top = representative_point(&lattice, 0).unwrap();
        assert_eq!(lattice.locate(&top), 0);
    }

    #[test]
    fn representatives_land_in_their_strata() {
        for (name, a) in corpus::standard().into_iter().take(10) {
            let lattice = SemiLattice::build(&induced_adjoint(&a).unwrap().induced);
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for x in 0..lattice.len() {
                let p = representative_point(&lattice, x).unwrap();
                assert_eq!(lattice.locate(&p), x, "{name}");
                let q = random_point(&lattice, x, &mut rng).unwrap();
                assert_eq!(lattice.locate(&q), x, "{name}");
            }
        }
    }

    fn r_values(report: &ClassificationReport<Rationals>) -> Vec<u64> {
        let mut r: Vec<u64> = report.strata.iter().map(|s| s.bundle.regions).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    #[test]
    fn classify_example() {
        let report = classify_extensions(&corpus::example()).unwrap();
        assert_eq!(report.strata.len(), 10);
        assert_eq!(report.class_count, 6);
        assert!(report.monotonicity_violations.is_empty());
        assert_eq!(r_values(&report), vec![0, 6, 8, 9, 10]);
        let generic = &report.strata[0];
        assert_eq!(generic.bundle.regions, 10);
        assert_eq!(generic.bundle.whitney.to_text(), "5s^2 + 4st - 10s + t^2 - 4t + 5");
        let origin = report.strata.last().unwrap();
        assert_eq!(origin.degenerate, Some(Degeneracy::AmbientMember));
        assert_eq!(origin.bundle, InvariantBundle::zero(2));
        // Every 1-dimensional stratum gives back L(A).
        let base = invariants(&corpus::example());
        for s in report.strata.iter().filter(|s| s.flat.dim() == 1) {
            assert_eq!(s.bundle, base);
        }
    }

    #[test]
    fn classify_boolean() {
        let report = classify_extensions(&corpus::boolean(2)).unwrap();
        assert_eq!(report.strata[0].bundle.regions, 7);
        assert!(report.monotonicity_violations.is_empty());
        let max = report.strata.iter().map(|s| s.bundle.regions).max().unwrap();
        assert_eq!(report.strata[0].bundle.regions, max);
    }

    #[test]
    fn classification_holds_on_example() {
        let r = verify_classification(&corpus::example(), 5, 1).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.comparisons, 5 * r.strata);
        let linear = corpus::pencil();
        let r = verify_classification(&linear, 3, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn monotone_on_small_corpus() {
        for (name, a) in corpus::standard().into_iter().take(10) {
            let v = verify_monotonicity(&a).unwrap();
            assert!(v.is_empty(), "{name}: {v:?}");
        }
    }

    #[test]
    fn product_for_nonessential() {
        let a = Arrangement::from_coefficients(
            Rationals,
            2,
            vec![(int_vec(&[1, 0]), int(0)), (int_vec(&[1, 0]), int(1))],
        )
        .unwrap();
        let r = verify_product_extension(&a, 5, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.comparisons, 5);
    }

    #[test]
    fn isomorphic_representatives_of_a_plane() {
        let a = corpus::example();
        let lattice = SemiLattice::build(&induced_adjoint(&a).unwrap().induced);
        let x1 = Hyperplane::linear(&Rationals, int_vec(&[1, 0, 0])).unwrap().to_flat(&Rationals);
        let x = lattice.index_of(&x1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = random_point(&lattice, x, &mut rng).unwrap();
        let q = random_point(&lattice, x, &mut rng).unwrap();
        let (op, oq) = (evaluate(&a, &p), evaluate(&a, &q));
        assert!(poset_isomorphic(op.lattice.as_ref().unwrap(), oq.lattice.as_ref().unwrap()));
    }
}

//! Restrictions `A/H` to arbitrary hyperplanes, classified by the strata of
//! `L(Ã)` that `(α, a)` falls in.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::adjoint::induced_adjoint;
use crate::arrangement::{restriction, Arrangement, InvariantBundle, SemiLattice};
use crate::error::{Error, Result};
use crate::exactq::{Field, Hyperplane};
use crate::extension::{poset_isomorphic, random_point, representative_point, VerificationReport, Violation};

/// `A/H` in the canonical chart of `H`, labels inherited.
pub fn restrict_to<F: Field>(a: &Arrangement<F>, h: &Hyperplane<F::Elem>) -> Arrangement<F> {
    restriction(a, &h.to_flat(a.field()))
}

/// `A/H` for `H: α·x = a` given by raw coefficients.
pub fn restrict_to_coefficients<F: Field>(a: &Arrangement<F>, alpha: Vec<F::Elem>, offset: F::Elem) -> Result<Arrangement<F>> {
    if alpha.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: alpha.len(),
        });
    }
    let h = Hyperplane::new(a.field(), alpha, offset).map_err(|_| Error::DegenerateHyperplane)?;
    Ok(restrict_to(a, &h))
}

/// `L(A/H)` and its bundle for `(α, a)`; `None` when `α = 0`.
fn restricted<F: Field>(a: &Arrangement<F>, point: &[F::Elem]) -> Option<(SemiLattice<F>, InvariantBundle)> {
    let d = a.dim();
    let h = Hyperplane::new(a.field(), point[..d].to_vec(), point[d].clone()).ok()?;
    let lattice = SemiLattice::build(&restrict_to(a, &h));
    let bundle = InvariantBundle::from_lattice(&lattice);
    Some((lattice, bundle))
}

#[derive(Debug, Clone)]
pub struct RestrictionEntry<F: Field> {
    /// Index of the stratum in `L(Ã)`.
    pub index: usize,
    pub dim: usize,
    pub labels: Vec<usize>,
    pub representative: Vec<F::Elem>,
    /// `α = 0` on the whole stratum; the bundle is then zero.
    pub degenerate: bool,
    /// Members of `A/H` and elements of `L(A/H)`.
    pub members: usize,
    pub lattice_size: usize,
    pub bundle: InvariantBundle,
    /// A second representative gave the same `L(A/H)` and bundle.
    pub constant: bool,
}

#[derive(Debug, Clone)]
pub struct RestrictionReport<F: Field> {
    pub entries: Vec<RestrictionEntry<F>>,
    pub violations: Vec<Violation>,
}

/// One entry per stratum of `L(Ã)`, with a within-stratum check against a
/// second, seeded random representative.
pub fn classify_restrictions<F: Field>(a: &Arrangement<F>, seed: u64) -> Result<RestrictionReport<F>> {
    let tilde = SemiLattice::build(&induced_adjoint(a)?.induced);
    let d = a.dim();
    let entries: Vec<RestrictionEntry<F>> = (0..tilde.len())
        .into_par_iter()
        .map(|x| {
            let rep = representative_point(&tilde, x).expect("moment curve leaves every stratum");
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ x as u64);
            let other = random_point(&tilde, x, &mut rng).expect("stratum is nonempty");
            let (first, second) = (restricted(a, &rep), restricted(a, &other));
            let constant = match (&first, &second) {
                (Some((l1, b1)), Some((l2, b2))) => b1 == b2 && poset_isomorphic(l1, l2),
                (None, None) => true,
                _ => false,
            };
            let (members, lattice_size, bundle) = match first {
                Some((l, b)) => (l.arrangement().len(), l.len(), b),
                None => (0, 0, InvariantBundle::zero(d.saturating_sub(1))),
            };
            RestrictionEntry {
                index: x,
                dim: tilde.dim_of(x),
                labels: tilde.labels_of(x),
                degenerate: rep[..d].iter().all(|c| a.field().is_zero(c)),
                representative: rep,
                members,
                lattice_size,
                bundle,
                constant,
            }
        })
        .collect();
    let bundles: Vec<InvariantBundle> = entries.iter().map(|e| e.bundle.clone()).collect();
    Ok(RestrictionReport {
        violations: restriction_monotonicity(&tilde, &bundles),
        entries,
    })
}

/// `w⁺`, `W` and `r` of `A/H` componentwise below those of `A/H'` whenever
/// `X_(α,a) ⊆ X_(α',a')`.
fn restriction_monotonicity<F: Field>(tilde: &SemiLattice<F>, bundles: &[InvariantBundle]) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in 0..tilde.len() {
        for y in tilde.up_set(x).ones() {
            if y == x {
                continue;
            }
            let (lo, hi) = (&bundles[y], &bundles[x]);
            let mut details = Vec::new();
            for (name, u, v) in [("wPlus", &lo.w_plus, &hi.w_plus), ("W", &lo.whitney_second, &hi.whitney_second)] {
                for (k, (s, t)) in u.iter().zip(v.iter()).enumerate() {
                    if s > t {
                        details.push(format!("{name}[{k}]: {s} > {t}"));
                    }
                }
            }
            if lo.regions > hi.regions {
                details.push(format!("r: {} > {}", lo.regions, hi.regions));
            }
            if !details.is_empty() {
                out.push(Violation {
                    family: "restriction".into(),
                    smaller: y,
                    larger: x,
                    details,
                });
            }
        }
    }
    out
}

pub fn verify_restriction_monotonicity<F: Field>(a: &Arrangement<F>) -> Result<Vec<Violation>> {
    Ok(classify_restrictions(a, 0)?.violations)
}

/// `trials` random representatives per stratum give isomorphic `L(A/H)`
/// and equal bundles (so equal `χ(A/H, t)`).
pub fn verify_restriction_classification<F: Field>(a: &Arrangement<F>, trials: usize, seed: u64) -> Result<VerificationReport> {
    let tilde = SemiLattice::build(&induced_adjoint(a)?.induced);
    let parts: Vec<VerificationReport> = (0..tilde.len())
        .into_par_iter()
        .map(|x| {
            let mut r = VerificationReport {
                strata: 1,
                ..Default::default()
            };
            let rep = representative_point(&tilde, x).expect("moment curve leaves every stratum");
            let reference = restricted(a, &rep);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ x as u64);
            for _ in 0..trials {
                let Some(p) = random_point(&tilde, x, &mut rng) else {
                    r.failures.push(format!("stratum {x}: no random point"));
                    break;
                };
                r.comparisons += 1;
                let same = match (&reference, restricted(a, &p)) {
                    (Some((l1, b1)), Some((l2, b2))) => *b1 == b2 && poset_isomorphic(l1, &l2),
                    (None, None) => true,
                    _ => false,
                };
                if !same {
                    r.failures.push(format!("stratum {x}: restriction differs from the representative"));
                }
            }
            r
        })
        .collect();
    let mut report = VerificationReport::default();
    parts.into_iter().for_each(|p| report.merge(p));
    Ok(report)
}

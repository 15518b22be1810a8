//! Reduction mod `p`, good-prime certification, complement counting over
//! `F_p`, and the convolution identity for the characteristic polynomial.

use std::collections::{BTreeSet, HashMap};

use num::{BigInt, Integer, One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjoint::{induced_adjoint, linearize};
use crate::arrangement::{char_poly, char_poly_of, restriction, Arrangement, Poly, SemiLattice};
use crate::error::{Error, Result};
use crate::exactq::field::{is_prime, next_prime};
use crate::exactq::{Degeneracy, Field, Hyperplane, PrimeField, Rational, Rationals};
use crate::extension::{evaluate, random_point, representative_point};

/// Default limit on enumerated points.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Scales a rational vector to coprime integers.
pub fn clear_denominators(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|n| n / &gcd).collect()
}

fn prime_field(p: u64) -> Result<PrimeField> {
    PrimeField::new(p).ok_or_else(|| Error::BadPrime {
        p,
        reason: if is_prime(p) {
            "modulus too large".into()
        } else {
            "not a prime".into()
        },
    })
}

/// `(α, a)` as residues after clearing denominators; `None` if `α ≡ 0`.
fn reduce_coefficients(field: &PrimeField, normal: &[Rational], offset: &Rational) -> (Vec<u64>, u64) {
    let mut all = normal.to_vec();
    all.push(offset.clone());
    let mut res: Vec<u64> = clear_denominators(&all).iter().map(|n| field.reduce(n)).collect();
    let off = res.pop().unwrap();
    (res, off)
}

/// `A_p`: every member written with coprime integer coefficients and reduced.
/// Labels are kept. Fails if a normal vanishes or two members coincide.
pub fn reduce_mod_p(a: &Arrangement<Rationals>, p: u64) -> Result<Arrangement<PrimeField>> {
    let field = prime_field(p)?;
    let mut hyperplanes = Vec::with_capacity(a.len());
    let mut seen: HashMap<Hyperplane<u64>, usize> = HashMap::new();
    for (h, &label) in a.hyperplanes().iter().zip(a.labels()) {
        let (normal, offset) = reduce_coefficients(&field, h.normal(), h.offset());
        let hp = Hyperplane::new(&field, normal, offset).map_err(|_| Error::BadPrime {
            p,
            reason: format!("normal of hyperplane {label} vanishes"),
        })?;
        if let Some(first) = seen.insert(hp.clone(), label) {
            return Err(Error::BadPrime {
                p,
                reason: format!("hyperplanes {first} and {label} coincide"),
            });
        }
        hyperplanes.push(hp);
    }
    let mut out = Arrangement::multi(field, a.dim(), hyperplanes, a.labels().to_vec())?;
    if a.has_ambient_member() {
        out = out.with_ambient_member();
    }
    Ok(out)
}

fn member_family<F: Field>(l: &SemiLattice<F>) -> BTreeSet<Vec<usize>> {
    (0..l.len()).map(|x| l.member_positions(x)).collect()
}

/// Whether the flats of both semi-lattices are cut out by the same sets of
/// members; this is an isomorphism that also preserves labels.
pub fn same_lattice<F: Field, G: Field>(a: &SemiLattice<F>, b: &SemiLattice<G>) -> bool {
    a.len() == b.len() && member_family(a) == member_family(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodPrimeCertificate {
    pub p: u64,
    /// `L(A) = L(A_p)` and `L(A°) = L(A°_p)`.
    pub base: bool,
    /// `L(Ã) = L(Ã_p)`.
    pub adjoint: bool,
    /// Strata of `L(Ã)` compared: a representative over `Q` and one over
    /// `F_p` give the same semi-lattice of `A + H`.
    #[serde(rename = "strataChecked")]
    pub strata_checked: usize,
    #[serde(rename = "strataFailed")]
    pub strata_failed: usize,
    /// Strata without a point over `F_p`.
    #[serde(rename = "strataEmpty")]
    pub strata_empty: usize,
}

impl GoodPrimeCertificate {
    pub fn passed(&self) -> bool {
        self.base && self.adjoint && self.strata_failed == 0
    }
}

/// Runs every good-prime check at `p`, cheapest first. Reduction failures
/// are errors; lattice mismatches are recorded in the certificate.
pub fn certify(a: &Arrangement<Rationals>, p: u64) -> Result<GoodPrimeCertificate> {
    let ap = reduce_mod_p(a, p)?;
    let lin = linearize(a).arrangement;
    let lin_p = reduce_mod_p(&lin, p)?;
    let induced = induced_adjoint(a)?.induced;
    let induced_p = reduce_mod_p(&induced, p)?;
    let mut cert = GoodPrimeCertificate {
        p,
        base: same_lattice(&SemiLattice::build(a), &SemiLattice::build(&ap))
            && same_lattice(&SemiLattice::build(&lin), &SemiLattice::build(&lin_p)),
        adjoint: false,
        strata_checked: 0,
        strata_failed: 0,
        strata_empty: 0,
    };
    if !cert.base {
        return Ok(cert);
    }
    let tilde = SemiLattice::build(&induced);
    let tilde_p = SemiLattice::build(&induced_p);
    cert.adjoint = same_lattice(&tilde, &tilde_p);
    if !cert.adjoint {
        return Ok(cert);
    }
    let outcomes: Vec<Option<bool>> = (0..tilde.len())
        .into_par_iter()
        .map(|x| {
            let xp = tilde_p.index_of_members(&tilde.member_positions(x)).expect("same lattice");
            let mut rng = ChaCha8Rng::seed_from_u64(p ^ x as u64);
            let rep_p = representative_point(&tilde_p, xp).or_else(|| random_point(&tilde_p, xp, &mut rng))?;
            let rep = representative_point(&tilde, x).expect("moment curve leaves every stratum");
            let (q, f) = (evaluate(a, &rep), evaluate(&ap, &rep_p));
            Some(match (&q.lattice, &f.lattice) {
                (Some(lq), Some(lf)) => same_lattice(lq, lf),
                (None, None) => true,
                _ => false,
            })
        })
        .collect();
    cert.strata_checked = outcomes.iter().flatten().count();
    cert.strata_failed = outcomes.iter().filter(|o| **o == Some(false)).count();
    cert.strata_empty = outcomes.iter().filter(|o| o.is_none()).count();
    Ok(cert)
}

/// Primes tried by [`good_prime`] before giving up.
const PRIME_SEARCH_LIMIT: u64 = 1 << 20;

/// The smallest prime `>= floor` passing [`certify`].
pub fn good_prime(a: &Arrangement<Rationals>, floor: u64) -> Result<(u64, GoodPrimeCertificate)> {
    let mut p = next_prime(floor);
    while p < PRIME_SEARCH_LIMIT {
        match certify(a, p) {
            Ok(cert) if cert.passed() => return Ok((p, cert)),
            Ok(_) | Err(Error::BadPrime { .. }) => {}
            Err(e) => return Err(e),
        }
        p = next_prime(p + 1);
    }
    Err(Error::BadPrime {
        p,
        reason: format!("no good prime below {PRIME_SEARCH_LIMIT}"),
    })
}

fn check_budget(p: u64, d: usize, budget: u64) -> Result<u128> {
    let points = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if points > budget as u128 {
        return Err(Error::BudgetExceeded { points, budget });
    }
    Ok(points)
}

/// Members as raw residue rows, for fast point tests.
struct Rows {
    p: u64,
    rows: Vec<(Vec<u64>, u64)>,
}

impl Rows {
    fn new(a: &Arrangement<PrimeField>) -> Self {
        Self {
            p: a.field().modulus(),
            rows: a.hyperplanes().iter().map(|h| (h.normal().to_vec(), *h.offset())).collect(),
        }
    }

    fn on(&self, k: usize, x: &[u64]) -> bool {
        let (n, o) = &self.rows[k];
        let mut acc = 0u64;
        for (a, b) in n.iter().zip(x) {
            acc = (acc + a * b % self.p) % self.p;
        }
        acc == *o
    }

    fn on_any(&self, x: &[u64]) -> bool {
        (0..self.rows.len()).any(|k| self.on(k, x))
    }
}

/// Visits every point of `F_p^d` whose first coordinate is `first`.
fn for_each_with_first(p: u64, d: usize, first: u64, mut f: impl FnMut(&[u64])) {
    let mut x = vec![0u64; d];
    x[0] = first;
    loop {
        f(&x);
        let mut k = d;
        loop {
            if k == 1 {
                return;
            }
            k -= 1;
            x[k] += 1;
            if x[k] < p {
                break;
            }
            x[k] = 0;
        }
    }
}

/// `#(F_p^d ∖ ⋃ H)` by enumeration, split over the first coordinate.
pub fn count_complement(ap: &Arrangement<PrimeField>, budget: u64) -> Result<u128> {
    let p = ap.field().modulus();
    let d = ap.dim();
    check_budget(p, d, budget)?;
    if ap.has_ambient_member() {
        return Ok(0);
    }
    if d == 0 {
        return Ok(1);
    }
    let rows = Rows::new(ap);
    Ok((0..p)
        .into_par_iter()
        .map(|first| {
            let mut n = 0u128;
            for_each_with_first(p, d, first, |x| {
                if !rows.on_any(x) {
                    n += 1;
                }
            });
            n
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvolutionCheck {
    pub lhs: Poly,
    pub rhs: Poly,
    pub equal: bool,
}

/// `Σ_{X ∈ L(Ã)} χ(Ã/X, t) χ(X, t)` against `t^d (t - 1) χ(A, t)`, where
/// `χ(X, t)` is the characteristic polynomial of `A` extended by a
/// representative of `X`.
pub fn verify_convolution<F: Field>(a: &Arrangement<F>) -> Result<ConvolutionCheck> {
    let induced = induced_adjoint(a)?.induced;
    let tilde = SemiLattice::build(&induced);
    let terms: Vec<Poly> = (0..tilde.len())
        .into_par_iter()
        .map(|x| {
            let rep = representative_point(&tilde, x).expect("stratum has a representative");
            let chi_x = match evaluate(a, &rep).lattice {
                Some(l) => char_poly_of(&l),
                None => Poly::zero(),
            };
            char_poly(&restriction(&induced, tilde.flat(x))).mul(&chi_x)
        })
        .collect();
    let lhs = terms.iter().fold(Poly::zero(), |acc, t| acc.add(t));
    let d = a.dim();
    let rhs = Poly::monomial(d).mul(&Poly::new(vec![-1, 1])).mul(&char_poly(a));
    Ok(ConvolutionCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub p: u64,
    /// `Σ_X #M(Ã_p/X) · #M(A_p + H_X)` with both factors counted; needs
    /// `A` essential.
    pub lhs: Option<u128>,
    /// `p^d (p - 1) #M(A_p)`.
    pub rhs: u128,
    /// Strata of `L(Ã_p)` met by points of `F_p^(d+1)`.
    pub strata: usize,
    /// `Σ_{(α,a)} #M(A_p + H_{α,a})` over all of `F_p^(d+1)`, when that
    /// enumeration fits the budget.
    pub direct: Option<u128>,
    pub equal: bool,
}

/// `#M(A_p + H_{α,a})` with the zero-normal conventions.
fn extension_count(ap: &Arrangement<PrimeField>, point: &[u64], budget: u64) -> Result<u128> {
    let d = ap.dim();
    let ext = ap.extended(point[..d].to_vec(), point[d])?;
    match ext.degeneracy {
        Some(Degeneracy::AmbientMember) => Ok(0),
        _ => count_complement(&ext.arrangement, budget),
    }
}

/// Both sides of the convolution identity evaluated at `t = p` by counting.
/// For essential `A`, points of `F_p^(d+1)` are grouped by the members of
/// `Ã_p` through them and each group's extension is counted once in
/// `F_p^d`. When it fits the budget, every extension is also counted
/// directly.
pub fn ff_convolution_spot_check(a: &Arrangement<Rationals>, p: u64, budget: u64) -> Result<SpotCheck> {
    let d = a.dim();
    check_budget(p, d + 1, budget)?;
    let ap = reduce_mod_p(a, p)?;
    let (lhs, strata) = if a.is_essential() {
        let cert = certify(a, p)?;
        if !cert.passed() {
            return Err(Error::BadPrime {
                p,
                reason: "semi-lattices change mod p".into(),
            });
        }
        let tilde_p = reduce_mod_p(&induced_adjoint(a)?.induced, p)?;
        let (sum, n) = grouped_count(&ap, &tilde_p, budget)?;
        (Some(sum), n)
    } else {
        if !same_lattice(&SemiLattice::build(a), &SemiLattice::build(&ap)) {
            return Err(Error::BadPrime {
                p,
                reason: "semi-lattice changes mod p".into(),
            });
        }
        (None, 0)
    };
    let pd = (p as u128).pow(d as u32);
    let rhs = pd * (p as u128 - 1) * count_complement(&ap, budget)?;

    let direct = match check_budget(p, 2 * d + 1, budget) {
        Ok(_) => {
            let sums: Result<Vec<u128>> = (0..p)
                .into_par_iter()
                .map(|first| {
                    let mut points = Vec::new();
                    for_each_with_first(p, d + 1, first, |x| points.push(x.to_vec()));
                    points.iter().map(|x| extension_count(&ap, x, budget)).sum()
                })
                .collect();
            Some(sums?.into_iter().sum())
        }
        Err(_) => None,
    };
    let sides = [lhs, direct];
    Ok(SpotCheck {
        p,
        lhs,
        rhs,
        strata,
        equal: sides.iter().any(Option::is_some) && sides.iter().flatten().all(|&v| v == rhs),
        direct,
    })
}

/// `Σ_X #M(Ã_p/X) · #M(A_p + H_X)` and the number of strata met.
fn grouped_count(ap: &Arrangement<PrimeField>, tilde_p: &Arrangement<PrimeField>, budget: u64) -> Result<(u128, usize)> {
    let p = ap.field().modulus();
    let d = ap.dim();
    let rows = Rows::new(tilde_p);
    // Label set -> (point count, smallest point).
    type Tally = HashMap<Vec<usize>, (u128, Vec<u64>)>;
    let tally: Tally = (0..p)
        .into_par_iter()
        .map(|first| {
            let mut t: Tally = HashMap::new();
            for_each_with_first(p, d + 1, first, |x| {
                let key: Vec<usize> = (0..rows.rows.len()).filter(|&k| rows.on(k, x)).collect();
                t.entry(key).or_insert_with(|| (0, x.to_vec())).0 += 1;
            });
            t
        })
        .reduce(HashMap::new, |mut acc, t| {
            for (k, (n, x)) in t {
                let e = acc.entry(k).or_insert_with(|| (0, x.clone()));
                e.0 += n;
                if x < e.1 {
                    e.1 = x;
                }
            }
            acc
        });
    let mut sum = 0u128;
    for (count, point) in tally.values() {
        sum += count * extension_count(ap, point, budget)?;
    }
    Ok((sum, tally.len()))
}

/// Evaluates an integer polynomial at `p` (exact, signed).
pub fn eval_at(poly: &Poly, p: u64) -> BigInt {
    poly.coeffs()
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * BigInt::from(p) + BigInt::from(c))
}

/// `true` iff `v` is a nonnegative integer equal to `n`.
pub fn matches_count(v: &BigInt, n: u128) -> bool {
    !v.is_negative() && *v == BigInt::from(n)
}

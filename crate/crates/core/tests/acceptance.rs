//! The acceptance criteria, one line each. Runs without the libtest
//! harness so the lines always show; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use arrangement_core::arrangement::{
    char_poly, faces_via_restrictions, invariants, whitney_poly_via_restrictions, Arrangement, BiPoly, InvariantBundle,
    SemiLattice,
};
use arrangement_core::corpus;
use arrangement_core::exactq::Rationals;
use arrangement_core::extension::{classify_extensions, verify_classification, verify_monotonicity, verify_product_extension};
use arrangement_core::finitefield::{
    count_complement, eval_at, ff_convolution_spot_check, good_prime, matches_count, reduce_mod_p, verify_convolution,
    DEFAULT_BUDGET,
};
use arrangement_core::nbc::{cij_via_nbc, nbc_counts};
use arrangement_core::restriction::{verify_restriction_classification, verify_restriction_monotonicity};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Arrangement<Rationals>;

const SEED: u64 = 20240611;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(failures: &[String], summary: String) -> Verdict {
    let detail = match failures.first() {
        None => summary,
        Some(first) => format!("{summary}; {} failure(s), first: {first}", failures.len()),
    };
    Verdict {
        passed: failures.is_empty(),
        detail,
    }
}

/// Columns `st, s, t^2, t, 1` of a planar Whitney polynomial.
fn displayed_columns(w: &BiPoly) -> [i64; 5] {
    [w.coeff(1, 1), w.coeff(1, 0), w.coeff(0, 2), w.coeff(0, 1), w.coeff(0, 0)]
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let a = corpus::example();
    let report = classify_extensions(&a).expect("example is essential");
    let elapsed = start.elapsed();
    // Keyed by the labels of the members of Ã through the stratum:
    // ũ₁ = 1, ũ₂ = 2, ṽ₁ = 3, ṽ₂ = 4.
    let generic = [4, -10, 1, -4, 5];
    let u1 = [4, -8, 1, -4, 4];
    let u2 = [4, -6, 1, -4, 3];
    let v = [4, -7, 1, -4, 4];
    let l1 = [3, -4, 1, -3, 2];
    let mut failures = Vec::new();
    let mut s2 = Vec::new();
    for s in &report.strata {
        let expected = match (s.flat.dim(), s.labels.as_slice()) {
            (3, _) => Some(generic),
            (2, [1]) => Some(u1),
            (2, [2]) => Some(u2),
            (2, [3]) | (2, [4]) => Some(v),
            (1, _) => Some(l1),
            (0, _) => None,
            other => {
                failures.push(format!("unexpected stratum {other:?}"));
                continue;
            }
        };
        match expected {
            Some(cols) => {
                let got = displayed_columns(&s.bundle.whitney);
                if got != cols {
                    failures.push(format!("stratum {:?}: columns {got:?}, expected {cols:?}", s.labels));
                }
                s2.push(format!("{:?}:{}", s.labels, s.bundle.whitney.coeff(2, 0)));
            }
            None => {
                if !s.bundle.whitney.is_zero() {
                    failures.push(format!("origin stratum has w = {}", s.bundle.whitney));
                }
            }
        }
    }
    if report.strata.len() != 10 {
        failures.push(format!("{} strata, expected 10", report.strata.len()));
    }
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(
        &failures,
        format!(
            "10 strata, st/s/t^2/t/1 columns exact, {} classes; s^2 column computed (absent from the reference values): {}",
            report.class_count,
            s2.join(" ")
        ),
    )
}

/// `χ(t) = Σ_S (-1)^|S| t^dim(∩S)` over member subsets with nonempty
/// intersection, coefficients by degree.
fn chi_by_subsets(a: &Q) -> Vec<i64> {
    use arrangement_core::exactq::{Flat, Intersection};
    let d = a.dim();
    let mut chi = vec![0i64; d + 1];
    let m = a.len();
    for mask in 0u32..(1 << m) {
        let mut flat = Some(Flat::ambient(&Rationals, d));
        for i in 0..m {
            if mask & (1 << i) != 0 {
                flat = flat.and_then(|f| match f.intersect(&Rationals, &a.hyperplanes()[i]) {
                    Intersection::Empty => None,
                    Intersection::Unchanged => Some(f),
                    Intersection::Proper(g) => Some(g),
                });
            }
        }
        if let Some(f) = flat {
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            chi[f.dim()] += sign;
        }
    }
    chi
}

fn criterion_2(corpus: &[(String, Q)]) -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, a) in corpus {
        let bundle = invariants(a);
        let chi = chi_by_subsets(a);
        let oracle: Vec<u64> = (0..=a.dim()).map(|k| chi[a.dim() - k].unsigned_abs()).collect();
        if oracle != bundle.w_plus {
            failures.push(format!("{name}: wPlus {:?} but the subset expansion gives {oracle:?}", bundle.w_plus));
        }
        for _ in 0..3 {
            let mut order = a.labels().to_vec();
            order.shuffle(&mut rng);
            let counts = nbc_counts(a, Some(&order)).unwrap();
            if counts != oracle {
                failures.push(format!("{name} order {order:?}: #NBC {counts:?} != {oracle:?}"));
            }
            let cij = cij_via_nbc(a, Some(&order)).unwrap();
            if cij != bundle.cij {
                failures.push(format!("{name} order {order:?}: NBC c_ij {cij:?} != {:?}", bundle.cij));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(
        &failures,
        format!("{} arrangements x 3 orders, #NBC_k = w_k+ and c_ij grids", corpus.len()),
    )
}

/// Three certified good primes; each has `p^d` within the budget.
fn good_primes(a: &Q) -> Vec<u64> {
    let mut out = Vec::new();
    let mut floor = 2;
    while out.len() < 3 {
        let (p, _) = good_prime(a, floor).expect("a good prime exists");
        out.push(p);
        floor = p + 1;
    }
    out
}

fn criterion_3(corpus: &[(String, Q)], primes: &[Vec<u64>]) -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for ((name, a), ps) in corpus.iter().zip(primes) {
        let chi = char_poly(a);
        for &p in ps {
            if (p as u128).pow(a.dim() as u32) > DEFAULT_BUDGET as u128 {
                failures.push(format!("{name}: p = {p} exceeds the budget"));
                continue;
            }
            let n = count_complement(&reduce_mod_p(a, p).unwrap(), DEFAULT_BUDGET).unwrap();
            checked += 1;
            if !matches_count(&eval_at(&chi, p), n) {
                failures.push(format!("{name}: #M(A_{p}) = {n} but chi({p}) = {}", eval_at(&chi, p)));
            }
        }
    }
    let example = count_complement(&reduce_mod_p(&corpus::example(), 5).unwrap(), DEFAULT_BUDGET).unwrap();
    if example != 12 {
        failures.push(format!("example at p = 5 counts {example}, expected 12"));
    }
    verdict(&failures, format!("{checked} (arrangement, good prime) counts equal chi(p); example at p = 5 gives {example}"))
}

fn criterion_4(corpus: &[(String, Q)], primes: &[Vec<u64>]) -> Verdict {
    let mut failures = Vec::new();
    let mut spots = 0;
    for ((name, a), ps) in corpus.iter().zip(primes) {
        let c = verify_convolution(a).unwrap();
        if !c.equal {
            failures.push(format!("{name}: {} != {}", c.lhs, c.rhs));
        }
        let Some(&p) = ps.iter().find(|&&p| (p as u128).pow(a.dim() as u32 + 1) <= DEFAULT_BUDGET as u128) else {
            failures.push(format!("{name}: no good prime within the budget"));
            continue;
        };
        let spot = ff_convolution_spot_check(a, p, DEFAULT_BUDGET).unwrap();
        spots += 1;
        if !spot.equal {
            failures.push(format!("{name} at p = {p}: {spot:?}"));
        }
    }
    let ex = ff_convolution_spot_check(&corpus::example(), 5, DEFAULT_BUDGET).unwrap();
    if !(ex.equal && ex.lhs == Some(1200) && ex.rhs == 1200) {
        failures.push(format!("example at p = 5: {ex:?}"));
    }
    verdict(
        &failures,
        format!(
            "polynomial identity on {} arrangements, {spots} spot checks; example at p = 5: {} = {}",
            corpus.len(),
            ex.lhs.unwrap_or(0),
            ex.rhs
        ),
    )
}

fn criterion_5(corpus: &[(String, Q)]) -> Verdict {
    let mut failures = Vec::new();
    let (mut strata, mut comparisons) = (0, 0);
    for (name, a) in corpus {
        let r = verify_classification(a, 5, SEED).unwrap();
        strata += r.strata;
        comparisons += r.comparisons;
        failures.extend(r.failures.into_iter().map(|f| format!("{name}: {f}")));
    }
    verdict(&failures, format!("{strata} strata, {comparisons} random representatives, 5 per stratum"))
}

fn criterion_6(corpus: &[(String, Q)]) -> Verdict {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (name, a) in corpus {
        let tilde = classify_extensions(a).unwrap().lattice;
        pairs += (0..tilde.len()).map(|x| tilde.up_set(x).count_ones(..) - 1).sum::<usize>();
        for v in verify_monotonicity(a).unwrap() {
            failures.push(format!("{name}: {} {} <= {}: {}", v.family, v.smaller, v.larger, v.details.join(", ")));
        }
    }
    verdict(&failures, format!("{pairs} comparable pairs of L(Ã), plus sigma and bar families"))
}

fn criterion_7(corpus: &[(String, Q)]) -> Verdict {
    let mut failures = Vec::new();
    let mut comparisons = 0;
    for (name, a) in corpus {
        let r = verify_restriction_classification(a, 3, SEED).unwrap();
        comparisons += r.comparisons;
        failures.extend(r.failures.into_iter().map(|f| format!("{name}: {f}")));
        for v in verify_restriction_monotonicity(a).unwrap() {
            failures.push(format!("{name}: {} <= {}: {}", v.smaller, v.larger, v.details.join(", ")));
        }
    }
    verdict(&failures, format!("{comparisons} within-stratum restriction comparisons, monotone across strata"))
}

fn structural(name: &str, a: &Q, failures: &mut Vec<String>) {
    let lattice = SemiLattice::build(a);
    let b = InvariantBundle::from_lattice(&lattice);
    let d = a.dim();
    if b.whitney.at_s_zero() != b.chi {
        failures.push(format!("{name}: w(0, t) != chi"));
    }
    for (i, row) in b.cij.iter().enumerate() {
        if row.iter().sum::<u64>() != b.faces[i] {
            failures.push(format!("{name}: f_{i} != sum_j c_{i}j"));
        }
    }
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    if b.faces[d] != b.regions || b.regions as i128 != sign * b.chi.eval(-1) {
        failures.push(format!("{name}: f_d, r and (-1)^d chi(-1) disagree"));
    }
    let euler: i128 = b.faces.iter().enumerate().map(|(k, &f)| if k.is_multiple_of(2) { f as i128 } else { -(f as i128) }).sum();
    if euler != sign {
        failures.push(format!("{name}: sum (-1)^k f_k = {euler}"));
    }
    if whitney_poly_via_restrictions(a) != b.whitney {
        failures.push(format!("{name}: the two Whitney polynomial formulas differ"));
    }
    let faces: Vec<i128> = b.faces.iter().map(|&f| f as i128).collect();
    if faces_via_restrictions(a) != faces {
        failures.push(format!("{name}: faces differ from the restriction count"));
    }
}

fn criterion_8(corpus: &[(String, Q)]) -> Verdict {
    let mut failures = Vec::new();
    let mut products = 0;
    for (name, a) in corpus {
        structural(name, a, &mut failures);
        let padded = corpus::pad_dimension(a, a.dim() + 1);
        structural(&format!("{name} padded"), &padded, &mut failures);
        let r = verify_product_extension(&padded, 5, SEED).unwrap();
        products += r.comparisons;
        failures.extend(r.failures.into_iter().map(|f| format!("{name} padded: {f}")));
    }
    verdict(
        &failures,
        format!("identities on {} arrangements and their padded copies, {products} extensions are L(A) x C2", corpus.len()),
    )
}

fn main() {
    let corpus = corpus::standard();
    assert!(corpus.len() >= 20);
    let start = Instant::now();
    let primes: Vec<Vec<u64>> = corpus.iter().map(|(_, a)| good_primes(a)).collect();
    println!("good primes certified for {} arrangements in {:.1?}", corpus.len(), start.elapsed());
    let mut rows: Vec<(usize, &str, Box<dyn Fn() -> Verdict>)> = Vec::new();
    let c = &corpus;
    let p = &primes;
    rows.push((1, "golden example", Box::new(criterion_1)));
    rows.push((2, "NBC counts", Box::new(move || criterion_2(c))));
    rows.push((3, "finite-field counts", Box::new(move || criterion_3(c, p))));
    rows.push((4, "convolution identity", Box::new(move || criterion_4(c, p))));
    rows.push((5, "classification invariance", Box::new(move || criterion_5(c))));
    rows.push((6, "monotonicity", Box::new(move || criterion_6(c))));
    rows.push((7, "restriction corollaries", Box::new(move || criterion_7(c))));
    rows.push((8, "structural self-checks", Box::new(move || criterion_8(c))));
    let mut failed = 0;
    for (n, title, f) in &rows {
        let t = Instant::now();
        let v = f();
        println!(
            "criterion {n} ({title}): {} [{:.1?}] {}",
            if v.passed { "PASS" } else { "FAIL" },
            t.elapsed(),
            v.detail
        );
        failed += usize::from(!v.passed);
    }
    println!("acceptance: {} of {} criteria passed in {:.1?}", rows.len() - failed, rows.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Property tests over seeded random arrangements.

use arrangement_core::adjoint::induced_adjoint;
use arrangement_core::arrangement::{invariants, Arrangement, InvariantBundle, SemiLattice};
use arrangement_core::corpus;
use arrangement_core::exactq::field::int;
use arrangement_core::exactq::{rank_of, Field, Rational, Rationals};
use arrangement_core::extension::{evaluate, extend, poset::poset_isomorphic, random_point, representative_point, stratum_of};
use arrangement_core::nbc::{is_independent, nbc_counts, nbc_sets, rank_of_labels};
use arrangement_core::restriction::{restrict_to, restrict_to_coefficients};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Arrangement<Rationals>;

fn arrangement() -> impl Strategy<Value = Q> {
    (any::<u64>(), 1usize..=3, 0usize..=3).prop_map(|(seed, d, extra)| corpus::random(seed, d, d + extra))
}

fn small_point(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

fn rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn order_is_label_containment_and_mobius_sums_vanish(a in arrangement()) {
        let l = SemiLattice::build(&a);
        for x in 0..l.len() {
            let mu = l.mobius_from(x);
            for y in 0..l.len() {
                let contained = l.flat(y).is_subset_of(&Rationals, l.flat(x));
                let labels_x = l.labels_of(x);
                let labels_y = l.labels_of(y);
                let label_sub = labels_x.iter().all(|k| labels_y.contains(k));
                prop_assert_eq!(contained, label_sub);
                prop_assert_eq!(l.leq(x, y), contained);
                if x != y && l.leq(x, y) {
                    let sum: i64 = (0..l.len()).filter(|&z| l.leq(x, z) && l.leq(z, y)).map(|z| mu[z]).sum();
                    prop_assert_eq!(sum, 0);
                }
            }
        }
    }

    #[test]
    fn whitney_numbers_agree(a in arrangement()) {
        let b = invariants(&a);
        let d = a.dim();
        prop_assert_eq!(b.whitney.at_s_zero(), b.chi.clone());
        for k in 0..=d {
            prop_assert_eq!(b.w_plus[k], b.chi.coeff(d - k).unsigned_abs());
            let sign = if k % 2 == 0 { 1 } else { -1 };
            prop_assert!(b.chi.coeff(d - k) * sign >= 0);
        }
        // c_ij = (-1)^j w_{d-i, d+j-i}, with w indexed by codimension.
        for i in 0..=d {
            for j in 0..=i {
                let w = b.doubly[d - i][d + j - i];
                let sign = if j % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(b.cij[i][j] as i64, sign * w);
            }
        }
    }

    #[test]
    fn nbc_sets_are_independent_and_counts_ignore_order(a in arrangement(), seed in any::<u64>()) {
        let w = invariants(&a).w_plus;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            let mut order = a.labels().to_vec();
            order.shuffle(&mut rng);
            prop_assert_eq!(nbc_counts(&a, Some(&order)).unwrap(), w.clone());
            for k in 0..=a.dim() {
                for s in nbc_sets(&a, k, Some(&order)).unwrap() {
                    prop_assert!(is_independent(&a, s.labels()).unwrap());
                }
            }
        }
    }

    #[test]
    fn adjoint_is_central_and_lines_are_cut_out(a in arrangement()) {
        let data = induced_adjoint(&a).unwrap();
        let origin = vec![int(0); a.dim() + 1];
        for h in data.induced.hyperplanes() {
            prop_assert!(h.contains_point(&Rationals, &origin));
        }
        // Each line is cut out by the linearized members orthogonal to it.
        for u in &data.lines {
            let normals: Vec<Vec<Rational>> = a
                .hyperplanes()
                .iter()
                .filter(|h| Rationals.dot(h.normal(), u) == int(0))
                .map(|h| h.normal().to_vec())
                .collect();
            prop_assert_eq!(rank_of(&Rationals, &normals), a.dim() - 1);
        }
    }

    #[test]
    fn points_lie_in_their_strata(a in arrangement(), raw in prop::collection::vec(small_point(4), 8)) {
        let tilde = SemiLattice::build(&induced_adjoint(&a).unwrap().induced);
        let d = a.dim();
        for r in raw {
            let p = rationals(&r[..=d]);
            let x = stratum_of(&a, &p[..d], &p[d]).unwrap();
            prop_assert!(x.contains_point(&Rationals, &p));
            let idx = tilde.index_of(&x).unwrap();
            // In M(Ã/X): on no member of Ã that misses X.
            for (i, h) in tilde.arrangement().hyperplanes().iter().enumerate() {
                prop_assert_eq!(h.contains_point(&Rationals, &p), tilde.member_set(idx).contains(i));
            }
        }
    }

    #[test]
    fn duplicate_extension_changes_nothing(a in arrangement(), k in 0usize..8) {
        let h = &a.hyperplanes()[k % a.len()];
        let e = extend(&a, h.normal().to_vec(), h.offset().clone()).unwrap();
        prop_assert!(e.duplicate);
        prop_assert_eq!(InvariantBundle::from_lattice(&SemiLattice::build(&e.arrangement)), invariants(&a));
    }

    #[test]
    fn restriction_ignores_the_new_member(a in arrangement(), n in small_point(3), off in -3i64..=3) {
        let d = a.dim();
        let normal = rationals(&n[..d]);
        prop_assume!(normal.iter().any(|x| *x != int(0)));
        let r = restrict_to_coefficients(&a, normal.clone(), int(off)).unwrap();
        let e = extend(&a, normal, int(off)).unwrap();
        prop_assume!(!e.duplicate);
        let h = e.arrangement.hyperplanes().last().unwrap().clone();
        let mut without_self = restrict_to(&e.arrangement, &h);
        let label = e.label.unwrap();
        let keep: Vec<usize> = (0..without_self.len()).filter(|&i| without_self.labels()[i] != label).collect();
        without_self = without_self.subarrangement(&keep);
        prop_assert_eq!(&r, &without_self);
        prop_assert_eq!(r.dim() + 1, d);
    }

    #[test]
    fn same_stratum_same_extension(a in arrangement(), seed in any::<u64>()) {
        let tilde = SemiLattice::build(&induced_adjoint(&a).unwrap().induced);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = (seed as usize) % tilde.len();
        let base = evaluate(&a, &representative_point(&tilde, x).unwrap());
        let p = random_point(&tilde, x, &mut rng).unwrap();
        let other = evaluate(&a, &p);
        prop_assert_eq!(&base.bundle, &other.bundle);
        if let (Some(l), Some(m)) = (&base.lattice, &other.lattice) {
            prop_assert!(poset_isomorphic(l, m));
        }
    }
}

/// Rank of `J ∪ {H}` only grows from a stratum to a larger one.
#[test]
fn extension_ranks_are_monotone() {
    let mut arrangements = vec![corpus::example(), corpus::pencil(), corpus::boolean(2)];
    arrangements.extend((0..4).map(|s| corpus::random(s, 2, 4)));
    for a in arrangements {
        let tilde = SemiLattice::build(&induced_adjoint(&a).unwrap().induced);
        let points: Vec<Vec<Rational>> = (0..tilde.len()).map(|x| representative_point(&tilde, x).unwrap()).collect();
        let d = a.dim();
        let extended: Vec<_> = points
            .iter()
            .map(|p| a.extended(p[..d].to_vec(), p[d].clone()).unwrap())
            .collect();
        let m = a.len();
        for x in 0..tilde.len() {
            for y in tilde.up_set(x).ones() {
                let (big, small) = (&extended[x], &extended[y]);
                let (Some(lb), Some(ls)) = (big.label, small.label) else { continue };
                if big.duplicate || small.duplicate {
                    continue;
                }
                for mask in 0u32..(1 << m) {
                    let j: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| a.labels()[i]).collect();
                    let mut jb = j.clone();
                    jb.push(lb);
                    let mut js = j;
                    js.push(ls);
                    let rb = rank_of_labels(&big.arrangement, &jb).unwrap();
                    let rs = rank_of_labels(&small.arrangement, &js).unwrap();
                    assert!(rs <= rb, "strata {y} <= {x}, J = {mask:b}: {rs} > {rb}");
                }
            }
        }
    }
}

//! Named test arrangements, including seeded random ones, shared by the test
//! suites and the CLI's self-checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{essentialize, Arrangement};
use crate::exactq::field::{int, int_vec};
use crate::exactq::{Hyperplane, Rational, Rationals};

pub type QArrangement = Arrangement<Rationals>;

fn from_ints(d: usize, hs: &[(&[i64], i64)]) -> QArrangement {
    Arrangement::from_coefficients(
        Rationals,
        d,
        hs.iter().map(|(n, a)| (int_vec(n), int(*a))).collect(),
    )
    .expect("corpus arrangements are valid")
}

/// `{x1 = 0, x1 = 1, x2 = 0}` in the plane.
pub fn example() -> QArrangement {
    from_ints(2, &[(&[1, 0], 0), (&[1, 0], 1), (&[0, 1], 0)])
}

/// The coordinate hyperplanes of `Q^d`.
pub fn boolean(d: usize) -> QArrangement {
    let hs = (0..d)
        .map(|i| {
            let mut n = vec![0; d];
            n[i] = 1;
            Hyperplane::new(&Rationals, int_vec(&n), int(0)).unwrap()
        })
        .collect();
    Arrangement::new(Rationals, d, hs).unwrap()
}

/// Three lines through the origin of the plane.
pub fn pencil() -> QArrangement {
    from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, -1], 0)])
}

/// Copies `a` into `Q^d` for `d >= a.dim()`, padding normals with zeros.
pub fn pad_dimension(a: &QArrangement, d: usize) -> QArrangement {
    assert!(d >= a.dim());
    let raw = a
        .hyperplanes()
        .iter()
        .map(|h| {
            let mut n = h.normal().to_vec();
            n.resize(d, int(0));
            (n, h.offset().clone())
        })
        .collect();
    Arrangement::from_coefficients(Rationals, d, raw).unwrap()
}

/// Shi arrangement `x_i - x_j ∈ {0, 1}` for `1 <= i < j <= 3`, essentialized
/// to the plane.
pub fn shi3() -> QArrangement {
    let a = from_ints(
        3,
        &[
            (&[1, -1, 0], 0),
            (&[1, -1, 0], 1),
            (&[1, 0, -1], 0),
            (&[1, 0, -1], 1),
            (&[0, 1, -1], 0),
            (&[0, 1, -1], 1),
        ],
    );
    essentialize(&a).arrangement
}

/// A seeded random essential arrangement with small integer coefficients.
pub fn random(seed: u64, d: usize, m: usize) -> QArrangement {
    random_with(seed, d, m, false)
}

/// A seeded random essential linear arrangement.
pub fn random_linear(seed: u64, d: usize, m: usize) -> QArrangement {
    random_with(seed, d, m, true)
}

fn random_with(seed: u64, d: usize, m: usize, linear: bool) -> QArrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut hs: Vec<Hyperplane<Rational>> = Vec::new();
        while hs.len() < m {
            let normal: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
            let offset = if linear { 0 } else { rng.gen_range(-2..=2) };
            if let Ok(h) = Hyperplane::new(&Rationals, int_vec(&normal), int(offset)) {
                if !hs.contains(&h) {
                    hs.push(h);
                }
            }
        }
        let a = Arrangement::new(Rationals, d, hs).unwrap();
        if a.is_essential() {
            return a;
        }
    }
}

/// The standard corpus used by the verification suites; every member is
/// essential with `d <= 3` and `m <= 7`.
pub fn standard() -> Vec<(String, QArrangement)> {
    let mut out: Vec<(String, QArrangement)> = vec![
        ("example".into(), example()),
        ("boolean1".into(), boolean(1)),
        ("boolean2".into(), boolean(2)),
        ("boolean3".into(), boolean(3)),
        ("pencil".into(), pencil()),
        ("two-points".into(), from_ints(1, &[(&[1], 0), (&[1], 1)])),
        (
            "parallel-family".into(),
            from_ints(2, &[(&[1, 0], 0), (&[1, 0], 1), (&[1, 0], 2), (&[0, 1], 0)]),
        ),
        (
            "linear-d3".into(),
            from_ints(3, &[(&[1, 0, 0], 0), (&[0, 1, 0], 0), (&[0, 0, 1], 0), (&[1, -1, 0], 0)]),
        ),
        ("shi3".into(), shi3()),
        (
            "triangle".into(),
            from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1)]),
        ),
    ];
    let shapes = [
        (2, 4),
        (2, 5),
        (2, 5),
        (2, 6),
        (2, 7),
        (3, 4),
        (3, 4),
        (3, 5),
        (3, 5),
        (3, 5),
    ];
    for (k, &(d, m)) in shapes.iter().enumerate() {
        let seed = 1000 + k as u64;
        out.push((format!("random-d{d}-m{m}-s{seed}"), random(seed, d, m)));
    }
    out.push(("random-linear-d3-m5".into(), random_linear(77, 3, 5)));
    out
}

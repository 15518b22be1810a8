//! Scalar fields: the rationals and prime fields `F_p`.
//!
//! Linear algebra in this crate is written against [`Field`], a ring object
//! in the style of "pass the field, not just the element". Elements are plain
//! values; the field supplies arithmetic and the canonical scaling used to
//! give hyperplanes a unique representation.

use std::fmt;
use std::hash::Hash;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

/// Exact rational scalar, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Rescales `coeffs` (a normal vector followed by its offset) in place to
    /// the canonical representative of its projective class. The normal part
    /// must be nonzero.
    fn canonical_scale(&self, coeffs: &mut [Self::Elem]);

    fn kind(&self) -> FieldKind;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

/// Which field an arrangement lives over; this is what the file format records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    /// Primitive integer normal with positive leading entry; the offset is
    /// scaled by the same factor and may stay fractional.
    fn canonical_scale(&self, coeffs: &mut [Rational]) {
        let (normal, _) = coeffs.split_at(coeffs.len() - 1);
        let lcm = normal
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let gcd = normal
            .iter()
            .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        assert!(!gcd.is_zero(), "canonical_scale on a zero normal");
        let lead_negative = normal
            .iter()
            .find(|q| !q.is_zero())
            .is_some_and(|q| q.is_negative());
        let mut factor = Rational::new(lcm, gcd);
        if lead_negative {
            factor = -factor;
        }
        for c in coeffs.iter_mut() {
            *c = &*c * &factor;
        }
    }

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
}

/// The prime field `F_p`; elements are residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is prime and small enough that products of
    /// residues fit in `u128` arithmetic comfortably (`p < 2^32`).
    pub fn new(p: u64) -> Option<Self> {
        (is_prime(p) && p < (1 << 32)).then_some(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an integer into `0..p`.
    pub fn reduce(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = ((acc as u128 * base as u128) % self.p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % self.p as u128) as u64;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - *a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    /// Leading normal entry scaled to 1.
    fn canonical_scale(&self, coeffs: &mut [u64]) {
        let n = coeffs.len() - 1;
        let lead = *coeffs[..n]
            .iter()
            .find(|&&c| c != 0)
            .expect("canonical_scale on a zero normal");
        let factor = self.inv(&lead);
        for c in coeffs.iter_mut() {
            *c = self.mul(c, &factor);
        }
    }

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
}

/// Deterministic trial division; moduli here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n.max(2);
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn int_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| int(n)).collect()
}

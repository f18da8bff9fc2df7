//! Ground fields: the rationals (exact, arbitrary precision) and prime fields.
//!
//! Rationals keep a machine-word fast path and only allocate once a numerator
//! or denominator leaves `i64`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;

/// The active ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Prime field constructor; rejects non-primes.
    pub fn prime(p: u32) -> Result<Field, LinalgError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(Rational::Small(n, 1)),
            Field::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(self.from_i64(num).div(&d))
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (Field::Rational, Scalar::Q(_))
        ) || matches!((self, s), (Field::Prime(p), Scalar::Fp { p: q, .. }) if p == q)
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u32 {
        match *self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact rational in lowest terms with positive denominator.
///
/// `Small` is used whenever both parts fit in `i64`, so structural equality is
/// value equality.
#[derive(Clone, Debug)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, 1), Rational::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Rational::Small(s, 1),
                None => Rational::from_i128(*a as i128 + *c as i128, 1),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, 1), Rational::Small(c, 1)) => match a.checked_mul(*c) {
                Some(s) => Rational::Small(s, 1),
                None => Rational::from_i128(*a as i128 * *c as i128, 1),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * c, b * d)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Rational::from_i128(-(*n as i128), *d as i128),
            },
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Rational::from_big(b.recip()),
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, o: &Rational) -> bool {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(a), Rational::Big(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Rational::Small(n, d) => {
                n.hash(h);
                d.hash(h);
            }
            Rational::Big(b) => {
                b.numer().hash(h);
                b.denom().hash(h);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Rational) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Rational {
    fn cmp(&self, o: &Rational) -> Ordering {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// A field element. Arithmetic between elements of different fields panics;
/// matrix constructors reject such mixtures up front.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { v: u32, p: u32 },
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => matches!(r, Rational::Small(1, 1)),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.inv()),
            Scalar::Fp { v, p } => {
                // Fermat: v^(p-2)
                let (mut base, mut e, m) = (*v as u64, *p as u64 - 2, *p as u64);
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Scalar::Fp { v: acc as u32, p: *p }
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    /// `self -= a * b`, the inner step of elimination.
    #[inline]
    pub fn sub_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (&mut *self, a, b) {
            (Scalar::Fp { v, p }, Scalar::Fp { v: x, .. }, Scalar::Fp { v: y, .. }) => {
                let m = *p as u64;
                let prod = *x as u64 * *y as u64 % m;
                *v = ((*v as u64 + m - prod) % m) as u32;
            }
            _ => *self = self.sub(&a.mul(b)),
        }
    }

    /// Rational value when the field is the rationals.
    pub fn as_big_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(r) => Some(r.to_big()),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn from_big_rational(r: BigRational) -> Scalar {
        Scalar::Q(Rational::from_big(r))
    }

    /// Integer value when this is a rational with denominator 1 fitting `i64`,
    /// or a prime-field residue.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rational::Small(n, 1)) => Some(*n),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rational::Small(n, _)) => *n < 0,
            Scalar::Q(Rational::Big(b)) => b.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_fast_path_overflows_into_big() {
        let q = Field::Rational;
        let big = q.from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Scalar::Q(Rational::Big(_))));
        let back = sq.div(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rational::Small(_, 1))));
    }

    #[test]
    fn rationals_are_normalized() {
        let q = Field::Rational;
        let a = q.from_fraction(2, -4).unwrap();
        assert_eq!(a, q.from_fraction(-1, 2).unwrap());
        assert_eq!(a.to_string(), "-1/2");
        assert!(a.add(&q.from_fraction(1, 2).unwrap()).is_zero());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(7).unwrap();
        for n in 1..7 {
            let x = f.from_i64(n);
            assert!(x.mul(&x.inv()).is_one());
        }
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert!(Field::prime(8).is_err());
    }

    #[test]
    fn sub_mul_assign_matches_plain_ops() {
        for f in [Field::Rational, Field::Prime(101)] {
            let mut x = f.from_i64(5);
            x.sub_mul_assign(&f.from_i64(3), &f.from_i64(4));
            assert_eq!(x, f.from_i64(-7));
        }
    }
}

//! Rational coefficients with an `i64` fast path that promotes to big rationals on overflow.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// A rational number. Canonical: `Small` exactly when the reduced numerator and
/// denominator both fit in `i64`, so derived equality and hashing agree with value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Coeff {
    /// `n / d` in lowest terms with `d > 0`.
    Small(i64, i64),
    Big(BigRational),
}

impl Coeff {
    pub(crate) const ZERO: Coeff = Coeff::Small(0, 1);
    pub(crate) const ONE: Coeff = Coeff::Small(1, 1);

    /// Reduces `n / d` with `d != 0`, demoting to `Small` when it fits.
    fn from_i128(n: i128, d: i128) -> Coeff {
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Coeff::Small(n, d),
            _ => Coeff::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub(crate) fn from_big(q: BigRational) -> Coeff {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Coeff::Small(n, d),
            _ => Coeff::Big(q),
        }
    }

    pub(crate) fn to_big(&self) -> BigRational {
        match self {
            Coeff::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Coeff::Big(q) => q.clone(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0, _))
    }

    pub(crate) fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(1, 1))
    }

    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(n, _) => *n < 0,
            Coeff::Big(q) => q.is_negative(),
        }
    }

    pub(crate) fn recip(&self) -> Coeff {
        match self {
            Coeff::Small(n, d) => Coeff::from_i128(i128::from(*d), i128::from(*n)),
            Coeff::Big(q) => Coeff::from_big(q.recip()),
        }
    }

    pub(crate) fn mul_int(&self, k: i64) -> Coeff {
        match self {
            Coeff::Small(n, d) => Coeff::from_i128(i128::from(*n) * i128::from(k), i128::from(*d)),
            Coeff::Big(q) => Coeff::from_big(q * BigRational::from_integer(BigInt::from(k))),
        }
    }

    fn big_op(&self, o: &Coeff, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Coeff {
        Coeff::from_big(f(&self.to_big(), &o.to_big()))
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Small(0, _), _) => o.clone(),
            (_, Coeff::Small(0, _)) => self.clone(),
            (Coeff::Small(a, b), Coeff::Small(c, d)) => {
                let (a, b, c, d) = (i128::from(*a), i128::from(*b), i128::from(*c), i128::from(*d));
                if b == d {
                    Coeff::from_i128(a + c, b)
                } else {
                    Coeff::from_i128(a * d + c * b, b * d)
                }
            }
            _ => self.big_op(o, |x, y| x + y),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &-o
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Small(0, _), _) | (_, Coeff::Small(0, _)) => Coeff::ZERO,
            (Coeff::Small(1, 1), _) => o.clone(),
            (_, Coeff::Small(1, 1)) => self.clone(),
            (Coeff::Small(a, b), Coeff::Small(c, d)) => Coeff::from_i128(i128::from(*a) * i128::from(*c), i128::from(*b) * i128::from(*d)),
            _ => self.big_op(o, |x, y| x * y),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Small(n, d) => match n.checked_neg() {
                Some(m) => Coeff::Small(m, *d),
                None => Coeff::from_big(-self.to_big()),
            },
            Coeff::Big(q) => Coeff::from_big(-q),
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::ZERO
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(n, 1) => write!(f, "{n}"),
            Coeff::Small(n, d) => write!(f, "{n}/{d}"),
            Coeff::Big(q) => write!(f, "{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = Coeff::Small(i64::MAX, 1);
        let sq = &m * &m;
        assert!(matches!(sq, Coeff::Big(_)));
        assert_eq!(sq.to_big(), big(i64::MAX, 1) * big(i64::MAX, 1));
        assert_eq!(&sq * &Coeff::from_big(big(1, i64::MAX)), m);
        assert_eq!(-&Coeff::Small(i64::MIN, 1), Coeff::from_big(-big(i64::MIN, 1)));
    }

    #[test]
    fn agrees_with_big_rationals() {
        let vals = [(0, 1), (1, 1), (-3, 7), (5, 2), (i64::MAX, 3), (i64::MIN + 1, 5), (2, i64::MAX)];
        for &(a, b) in &vals {
            for &(c, d) in &vals {
                let (x, y) = (Coeff::from_big(big(a, b)), Coeff::from_big(big(c, d)));
                assert_eq!((&x + &y).to_big(), big(a, b) + big(c, d));
                assert_eq!((&x - &y).to_big(), big(a, b) - big(c, d));
                assert_eq!((&x * &y).to_big(), big(a, b) * big(c, d));
                assert_eq!(&x + &y, Coeff::from_big(big(a, b) + big(c, d)));
            }
        }
    }
}

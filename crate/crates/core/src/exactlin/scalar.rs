//! Exact arithmetic in K = Q(i, sqrt 2).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::coeff::Coeff;
use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ScalarParse(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// `c[0] + c[1]*i + c[2]*r2 + c[3]*i*r2` where `r2` is the square root of 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    c: [Coeff; 4],
}

impl Scalar {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Scalar { c: [Coeff::from_big(c0), Coeff::from_big(c1), Coeff::from_big(c2), Coeff::from_big(c3)] }
    }

    pub fn zero() -> Self {
        Scalar { c: [Coeff::ZERO, Coeff::ZERO, Coeff::ZERO, Coeff::ZERO] }
    }

    pub fn one() -> Self {
        Scalar { c: [Coeff::ONE, Coeff::ZERO, Coeff::ZERO, Coeff::ZERO] }
    }

    pub fn i() -> Self {
        Scalar { c: [Coeff::ZERO, Coeff::ONE, Coeff::ZERO, Coeff::ZERO] }
    }

    pub fn r2() -> Self {
        Scalar { c: [Coeff::ZERO, Coeff::ZERO, Coeff::ONE, Coeff::ZERO] }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar { c: [Coeff::from_big(q), Coeff::ZERO, Coeff::ZERO, Coeff::ZERO] }
    }

    pub fn int(n: i64) -> Self {
        Scalar { c: [Coeff::Small(n, 1), Coeff::ZERO, Coeff::ZERO, Coeff::ZERO] }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// The rational coordinates on `1, i, r2, i*r2`.
    pub fn coeffs(&self) -> [Rational; 4] {
        [self.c[0].to_big(), self.c[1].to_big(), self.c[2].to_big(), self.c[3].to_big()]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Coeff::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Coeff::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(Coeff::is_zero) {
            Some(self.c[0].to_big())
        } else {
            None
        }
    }

    /// Complex conjugation, `i -> -i`.
    pub fn conj_i(&self) -> Self {
        Scalar { c: [self.c[0].clone(), -&self.c[1], self.c[2].clone(), -&self.c[3]] }
    }

    /// The Galois automorphism `r2 -> -r2`.
    pub fn conj_r2(&self) -> Self {
        Scalar { c: [self.c[0].clone(), self.c[1].clone(), -&self.c[2], -&self.c[3]] }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // a * conj_i(a) lies in Q(r2); its r2-conjugate product lies in Q.
        let ai = self.conj_i();
        let n1 = self * &ai;
        let n1c = n1.conj_r2();
        let n = &n1 * &n1c;
        debug_assert!(n.c[1..].iter().all(Coeff::is_zero));
        let qi = n.c[0].recip();
        let num = &ai * &n1c;
        Some(Scalar { c: core::array::from_fn(|k| &num.c[k] * &qi) })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let q = Coeff::from_big(q.clone());
        Scalar { c: core::array::from_fn(|k| &self.c[k] * &q) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    fn is_real(&self) -> bool {
        self.c[1].is_zero() && self.c[3].is_zero()
    }

    /// Square root inside Q(r2) for an element `n0 + n1*r2`.
    fn sqrt_real(&self) -> Option<Scalar> {
        debug_assert!(self.is_real());
        let (n0, n1) = (&self.c[0].to_big(), &self.c[2].to_big());
        let cand: Vec<Scalar> = if n1.is_zero() {
            let mut v = Vec::new();
            if let Some(s) = rational_sqrt(n0) {
                v.push(Scalar::from_rational(s));
            }
            if let Some(s) = rational_sqrt(&(n0 / Rational::from_integer(2.into()))) {
                v.push(Scalar::r2().scale(&s));
            }
            v
        } else {
            let disc = n0 * n0 - n1 * n1 * Rational::from_integer(2.into());
            let mut v = Vec::new();
            if let Some(d) = rational_sqrt(&disc) {
                for p2 in [(n0 + &d) / Rational::from_integer(2.into()), (n0 - &d) / Rational::from_integer(2.into())] {
                    if let Some(p) = rational_sqrt(&p2) {
                        if p.is_zero() {
                            continue;
                        }
                        let q = n1 / (&p * Rational::from_integer(2.into()));
                        v.push(Scalar::new(p, Rational::zero(), q, Rational::zero()));
                    }
                }
            }
            v
        };
        cand.into_iter().find(|s| &(s * s) == self)
    }

    /// A square root in K when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let alpha = Scalar { c: [self.c[0].clone(), Coeff::ZERO, self.c[2].clone(), Coeff::ZERO] };
        let beta = Scalar { c: [self.c[1].clone(), Coeff::ZERO, self.c[3].clone(), Coeff::ZERO] };
        let found = if beta.is_zero() {
            alpha.sqrt_real().or_else(|| (-&alpha).sqrt_real().map(|v| &v * &Scalar::i()))
        } else {
            // (u + v i)^2 = alpha + beta i with u, v real: u^2 = (alpha +- |a|) / 2.
            let norm = &(&alpha * &alpha) + &(&beta * &beta);
            let half = Scalar::frac(1, 2);
            norm.sqrt_real().and_then(|s| {
                [&alpha + &s, &alpha - &s].into_iter().find_map(|t| {
                    let u = (&t * &half).sqrt_real()?;
                    if u.is_zero() {
                        return None;
                    }
                    let v = (&beta * &half).checked_div(&u).ok()?;
                    Some(&u + &(&v * &Scalar::i()))
                })
            })
        };
        found.filter(|s| &(s * s) == self)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2], &self.c[3] + &o.c[3]] }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2], &self.c[3] - &o.c[3]] }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        // basis products: e_a * e_b = sign * factor * e_{a xor b}
        // with 1, i, r2, i*r2 encoded as 0, 1, 2, 3 (bit 0 = i, bit 1 = r2).
        const TABLE: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, 2, 2], [1, -1, 2, -2]];
        let mut out = Scalar::zero();
        for a in 0..4 {
            if self.c[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                if o.c[b].is_zero() {
                    continue;
                }
                let t = &self.c[a] * &o.c[b];
                let f = TABLE[a][b];
                let slot = &mut out.c[a ^ b];
                *slot = if f == 1 { &*slot + &t } else { &*slot + &t.mul_int(f) };
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]] }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for k in 0..4 {
            if !o.c[k].is_zero() {
                self.c[k] = &self.c[k] + &o.c[k];
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for k in 0..4 {
            if !o.c[k].is_zero() {
                self.c[k] = &self.c[k] - &o.c[k];
            }
        }
    }
}

/// `scalar_arith` operation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

const TOKENS: [&str; 4] = ["", "i", "r2", "i*r2"];

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = if neg { -q } else { q.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = if k == 0 {
                mag.to_string()
            } else if mag.is_one() {
                TOKENS[k].to_string()
            } else {
                format!("{}*{}", mag, TOKENS[k])
            };
            f.write_str(&body)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts sums of signed products of rationals, `i` and `r2`,
    /// e.g. `1/2 - 3*i*r2` or `-1/2*r2`.
    fn from_str(s: &str) -> Result<Scalar> {
        let bad = || Error::ScalarParse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && !(idx > 0 && compact[..idx].ends_with('*')) {
                if idx > 0 {
                    if cur.is_empty() {
                        return Err(bad());
                    }
                    terms.push((neg, core::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        terms.push((neg, cur));
        let mut total = Scalar::zero();
        for (neg, term) in terms {
            let mut value = Scalar::one();
            for factor in term.split('*') {
                let v = match factor {
                    "i" => Scalar::i(),
                    "r2" => Scalar::r2(),
                    "" => return Err(bad()),
                    lit => Scalar::from_rational(parse_rational(lit).map_err(|_| bad())?),
                };
                value = &value * &v;
            }
            if neg {
                value = -value;
            }
            total += &value;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn defining_relations() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::int(-1));
        assert_eq!(&Scalar::r2() * &Scalar::r2(), Scalar::int(2));
        let h = Scalar::r2().scale(&rat(1, 2));
        assert_eq!(&h * &h, Scalar::frac(1, 2));
        assert_eq!((&(&h * &h) * &Scalar::int(2)), Scalar::one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(scalar_arith(&Scalar::one(), &Scalar::zero(), ArithOp::Div), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let a = s("1 + 2*i - 3*r2 + 1/2*i*r2");
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn text_round_trip() {
        for t in ["0", "1", "-1/2", "i", "-i", "1/2 - 1/2*i", "r2", "3 + i*r2", "-2/3*r2 - 5*i*r2", "1 + i + r2 + i*r2"] {
            assert_eq!(s(t).to_string(), t);
        }
        assert_eq!(s("r2*i").to_string(), "i*r2");
        assert_eq!(s("2*1/4").to_string(), "1/2");
        assert!("".parse::<Scalar>().is_err());
        assert!("1 +".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn square_roots() {
        for t in ["4", "2", "-1", "-2", "i", "1/2", "3 + 2*r2", "2*i", "-1/2*r2 + 1/2*i*r2", "-1/2 + 1/2*i"] {
            let a = s(t);
            let sq = &a * &a;
            let r = sq.sqrt().unwrap_or_else(|| panic!("no sqrt of {sq}"));
            assert_eq!(&r * &r, sq);
        }
        assert_eq!(s("5/4").sqrt(), None);
        assert_eq!(s("3").sqrt(), None);
        assert_eq!(s("r2").sqrt(), None);
        // a primitive 8th root of unity has no square root in K
        assert_eq!(s("1/2*r2 + 1/2*i*r2").sqrt(), None);
    }
}

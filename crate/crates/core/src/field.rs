//! Exact scalars: rationals and residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl Field {
    /// The prime field of order `p`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..1 << 62).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime { p } => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_i64(*self, n)
    }

    /// Parses `"n"`, `"-n"` or `"n/d"`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        Scalar::parse(*self, s)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let witnesses = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'outer: for &a in &witnesses {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 || p == 2 {
        return Some(a % p);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// An element of Q or of F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime { p } => Scalar::Mod { v: 0, p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::one()),
            Field::Prime { p } => Scalar::Mod { v: 1 % p, p },
        }
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::from_integer(n.into())),
            Field::Prime { p } => Scalar::Mod { v: (n as i128).rem_euclid(p as i128) as u64, p },
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::from_integer(n.clone())),
            Field::Prime { p } => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod { v: r.to_u64().unwrap_or(0), p }
            }
        }
    }

    /// Maps a rational into `field`; fails when the denominator vanishes mod p.
    pub fn from_rational(field: Field, q: &BigRational) -> Result<Scalar> {
        match field {
            Field::Rational => Ok(Scalar::Rat(q.clone())),
            Field::Prime { .. } => {
                let n = Scalar::from_bigint(field, q.numer());
                let d = Scalar::from_bigint(field, q.denom());
                let di =
                    d.inv().ok_or_else(|| Error::InvalidInput(format!("denominator of {q} vanishes in {field}")))?;
                Ok(n * di)
            }
        }
    }

    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("malformed coefficient {s:?}"));
        let parse_int = |t: &str| -> Result<BigInt> {
            let t = t.trim();
            let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(parse_int(s)?),
        };
        Scalar::from_rational(field, &q)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Mod { v, .. } => Some(*v),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { v, p } => Scalar::Mod { v: pow_mod(*v, p - 2, *p), p: *p },
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut r = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    /// A square root in the base field, when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Scalar::Rat(BigRational::new(n, d)))
            }
            Scalar::Mod { v, p } => sqrt_mod(*v, *p).map(|r| Scalar::Mod { v: r, p: *p }),
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => {
                let s = a + b;
                Ok(Scalar::Mod { v: if s >= *p { s - p } else { s }, p: *p })
            }
            _ => Err(Error::FieldMismatch(self.field(), o.field())),
        }
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a - b)),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => {
                Ok(Scalar::Mod { v: if a >= b { a - b } else { a + p - b }, p: *p })
            }
            _ => Err(Error::FieldMismatch(self.field(), o.field())),
        }
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => {
                Ok(Scalar::Mod { v: mul_mod(*a, *b, *p), p: *p })
            }
            _ => Err(Error::FieldMismatch(self.field(), o.field())),
        }
    }

    /// Canonical decimal form: `"n"` or `"n/d"` over Q, the residue over F_p.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    /// Lift of a residue to the symmetric range, or the rational itself.
    pub fn to_bigrational_lift(&self) -> BigRational {
        match self {
            Scalar::Rat(q) => q.clone(),
            Scalar::Mod { v, p } => {
                let v = *v as i128;
                let p = *p as i128;
                let c = if v > p / 2 { v - p } else { v };
                BigRational::from_integer(BigInt::from(c))
            }
        }
    }

    /// Numerator sign for rationals; residues are treated as nonnegative.
    pub fn sign(&self) -> Sign {
        match self {
            Scalar::Rat(q) => {
                if q.is_zero() {
                    Sign::NoSign
                } else if q.is_negative() {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            }
            Scalar::Mod { v, .. } => {
                if *v == 0 {
                    Sign::NoSign
                } else {
                    Sign::Plus
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$try(o).expect("mixed-field arithmetic")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * o.inv().expect("division by zero")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        &self / &o
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Mod { v, p } => Scalar::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rationals() {
        let q = Field::Rational;
        let a = q.parse("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(q.parse("0/5").unwrap().to_string(), "0");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("1.5").is_err());
        assert!(q.parse("").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.int(5);
        let b = f.int(-3);
        assert_eq!(b.residue(), Some(4));
        assert_eq!((&a + &b).residue(), Some(2));
        assert_eq!((&a * &b).residue(), Some(6));
        assert_eq!((&a * &a.inv().unwrap()).residue(), Some(1));
        assert_eq!(f.parse("1/2").unwrap().residue(), Some(4));
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn rejects_composites() {
        assert!(Field::prime(10007).is_ok());
        assert!(Field::prime(101).is_ok());
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Field::Rational.int(1);
        let b = Field::prime(5).unwrap().int(1);
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
        let c = Field::prime(7).unwrap().int(1);
        assert!(b.try_mul(&c).is_err());
    }

    #[test]
    fn square_roots() {
        let f = Field::prime(10007).unwrap();
        for x in [0i64, 1, 2, 5, 1234, 10006] {
            let sq = f.int(x) * f.int(x);
            let r = sq.sqrt().unwrap();
            assert_eq!(&r * &r, sq);
        }
        assert!(f.int(5).sqrt().is_none_or(|r| &r * &r == f.int(5)));
        assert_eq!(Field::Rational.parse("9/4").unwrap().sqrt().unwrap().to_string(), "3/2");
        assert!(Field::Rational.int(2).sqrt().is_none());
        assert!(Field::Rational.int(-4).sqrt().is_none());
    }

    #[test]
    fn pow_and_neg() {
        let f = Field::prime(10007).unwrap();
        let a = f.int(3);
        assert_eq!(a.pow(10006).residue(), Some(1));
        assert_eq!((-f.zero()).residue(), Some(0));
        let q = Field::Rational.parse("-2/3").unwrap();
        assert_eq!(q.pow(3).to_string(), "-8/27");
    }
}

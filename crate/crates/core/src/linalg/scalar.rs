use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::P(0, p),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::one()),
            Field::Prime(p) => Scalar::P(1 % p, p),
        }
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::P(n.rem_euclid(p as i64) as u32, p),
        }
    }

    /// `num/den` in this field; `None` if `den` vanishes.
    pub fn ratio(self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.int(den);
        if d.is_zero() {
            return None;
        }
        Some(&self.int(num) * &d.inv())
    }

    pub fn is_prime(p: u32) -> bool {
        if p < 2 {
            return false;
        }
        let mut d = 2u32;
        while (d as u64) * (d as u64) <= p as u64 {
            if p.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Parses one scalar token: `n`, `-n` or `n/d` (the latter only over the rationals,
    /// or over a prime field when `d` is invertible).
    pub fn parse_scalar(self, tok: &str) -> Option<Scalar> {
        let (n, d) = match tok.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (tok, None),
        };
        match self {
            Field::Rational => {
                let n: BigInt = n.parse().ok()?;
                let d: BigInt = match d {
                    Some(d) => d.parse().ok()?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return None;
                }
                Some(Scalar::Q(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let n: BigInt = n.parse().ok()?;
                let pm = BigInt::from(p);
                let nv = ((n % &pm) + &pm) % &pm;
                let nv: u32 = nv.try_into().ok()?;
                let s = Scalar::P(nv, p);
                match d {
                    None => Some(s),
                    Some(d) => {
                        let d: BigInt = d.parse().ok()?;
                        let dv: u32 = (((d % &pm) + &pm) % &pm).try_into().ok()?;
                        if dv == 0 {
                            return None;
                        }
                        Some(&s * &Scalar::P(dv, p).inv())
                    }
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P(u32, u32),
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P(v, _) => *v == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::P(v, p) => Scalar::P(mod_pow(*v as u64, *p as u64 - 2, *p as u64) as u32, *p),
        }
    }

    /// Numerator and denominator as decimal strings (denominator `1` for residues).
    pub fn num_den(&self) -> (String, String) {
        match self {
            Scalar::Q(q) => (q.numer().to_string(), q.denom().to_string()),
            Scalar::P(v, _) => (v.to_string(), "1".to_string()),
        }
    }

    /// Small integer value when this is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.numer().try_into().ok(),
            Scalar::Q(_) => None,
            Scalar::P(v, _) => Some(*v as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }

    fn check(&self, o: &Scalar) {
        if self.field() != o.field() {
            panic!("mixed fields: {} and {}", self.field(), o.field());
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::P(v, _) => write!(f, "{v}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::P(a, p), Scalar::P(b, _)) => Scalar::P(((*a as u64 + *b as u64) % *p as u64) as u32, *p),
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::P(a, p), Scalar::P(b, _)) => {
                Scalar::P(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, *p)
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::P(a, p), Scalar::P(b, _)) => Scalar::P(((*a as u64 * *b as u64) % *p as u64) as u32, *p),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::P(a, p) => Scalar::P((*p - *a) % *p, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let f = Field::Rational;
        let a = f.parse_scalar("6/-4").unwrap();
        assert_eq!(a.num_den(), ("-3".to_string(), "2".to_string()));
        assert!(f.parse_scalar("1/0").is_none());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(7);
        let three = f.int(3);
        assert_eq!(&three * &three.inv(), f.one());
        assert_eq!(f.int(-1), f.int(6));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.int(4));
    }

    #[test]
    fn primality() {
        assert!(Field::is_prime(5) && Field::is_prime(7) && !Field::is_prime(9) && !Field::is_prime(1));
    }
}

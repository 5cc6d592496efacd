use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OInt;
use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i128) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// An element `a + b·τ` of K = Q(i√7).
///
/// Ordering is lexicographic on `(a, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KNum {
    pub a: Rat,
    pub b: Rat,
}

impl KNum {
    pub fn new(a: Rat, b: Rat) -> Self {
        KNum { a, b }
    }

    pub fn zero() -> Self {
        KNum::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        KNum::from_int(1)
    }

    pub fn tau() -> Self {
        KNum::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i128) -> Self {
        KNum::new(rint(n), Rat::zero())
    }

    pub fn from_rat(q: Rat) -> Self {
        KNum::new(q, Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        KNum::new(&self.a + &self.b, -&self.b)
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b * BigInt::from(2)
    }

    /// Real part, `a + b/2`.
    pub fn re(&self) -> Rat {
        &self.a + &self.b / BigInt::from(2)
    }

    /// Imaginary part divided by `√7`, i.e. `b/2`.
    pub fn im_over_sqrt7(&self) -> Rat {
        &self.b / BigInt::from(2)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(KNum::new(c.a / &n, c.b / n))
    }

    pub fn scale(&self, q: &Rat) -> Self {
        KNum::new(&self.a * q, &self.b * q)
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_oint(&self) -> Option<OInt> {
        if !self.is_integral() {
            return None;
        }
        Some(OInt::new(
            self.a.to_integer().to_i128()?,
            self.b.to_integer().to_i128()?,
        ))
    }

    /// Least common multiple of the two coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let re = self.re().to_f64().unwrap_or(f64::NAN);
        let im = self.im_over_sqrt7().to_f64().unwrap_or(f64::NAN) * 7f64.sqrt();
        (re, im)
    }
}

impl From<OInt> for KNum {
    fn from(x: OInt) -> Self {
        KNum::new(rint(x.a), rint(x.b))
    }
}

impl From<&OInt> for KNum {
    fn from(x: &OInt) -> Self {
        KNum::from(*x)
    }
}

impl From<i64> for KNum {
    fn from(n: i64) -> Self {
        KNum::from_int(n as i128)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<KNum> for KNum {
            type Output = KNum;
            fn $m(self, o: KNum) -> KNum {
                (&self).$m(&o)
            }
        }
        impl $tr<&KNum> for KNum {
            type Output = KNum;
            fn $m(self, o: &KNum) -> KNum {
                (&self).$m(o)
            }
        }
        impl $tr<KNum> for &KNum {
            type Output = KNum;
            fn $m(self, o: KNum) -> KNum {
                self.$m(&o)
            }
        }
    };
}

impl Add<&KNum> for &KNum {
    type Output = KNum;
    fn add(self, o: &KNum) -> KNum {
        KNum::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub<&KNum> for &KNum {
    type Output = KNum;
    fn sub(self, o: &KNum) -> KNum {
        KNum::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul<&KNum> for &KNum {
    type Output = KNum;
    fn mul(self, o: &KNum) -> KNum {
        let bd = &self.b * &o.b;
        KNum::new(
            &self.a * &o.a - &bd * BigInt::from(2),
            &self.a * &o.b + &self.b * &o.a + bd,
        )
    }
}

impl Div<&KNum> for &KNum {
    type Output = KNum;
    fn div(self, o: &KNum) -> KNum {
        self * &o.inv().expect("division by zero in K")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for KNum {
    type Output = KNum;
    fn neg(self) -> KNum {
        KNum::new(-self.a, -self.b)
    }
}

impl Neg for &KNum {
    type Output = KNum;
    fn neg(self) -> KNum {
        KNum::new(-&self.a, -&self.b)
    }
}

impl AddAssign<&KNum> for KNum {
    fn add_assign(&mut self, o: &KNum) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&KNum> for KNum {
    fn sub_assign(&mut self, o: &KNum) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl fmt::Display for KNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coef = |q: &Rat| {
            if q.is_one() {
                "tau".to_string()
            } else {
                format!("{q}*tau")
            }
        };
        if self.a.is_zero() {
            if self.b == -Rat::one() {
                return write!(f, "-tau");
            }
            return write!(f, "{}", coef(&self.b));
        }
        if self.b.is_negative() {
            write!(f, "{}-{}", self.a, coef(&-&self.b))
        } else {
            write!(f, "{}+{}", self.a, coef(&self.b))
        }
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let err = || Error::Parse(format!("bad rational '{s}'"));
    if s.is_empty() {
        return Err(err());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl FromStr for KNum {
    type Err = Error;

    /// Accepts sums of terms `q`, `q*tau`, `tau` and `i7` (for `i√7`), with
    /// `q` an integer or fraction, e.g. `-1/2+3*tau`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            let starts_term = (ch == '+' || ch == '-') && !matches!(prev, None | Some('*'));
            if starts_term {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        terms.push((neg, cur));
        let mut acc = KNum::zero();
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(Error::Parse(format!("empty term in '{s}'")));
            }
            let (q, unit) = match t.rsplit_once('*') {
                Some((q, u)) => (parse_rat(q)?, u),
                None => {
                    if t == "tau" || t == "i7" {
                        (Rat::one(), t.as_str())
                    } else {
                        (parse_rat(&t)?, "")
                    }
                }
            };
            let base = match unit {
                "" => KNum::one(),
                "tau" => KNum::tau(),
                "i7" => KNum::from(OInt::I_SQRT7),
                u => return Err(Error::Parse(format!("unknown symbol '{u}'"))),
            };
            let term = base.scale(&q);
            if neg {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        Ok(acc)
    }
}

impl Serialize for KNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for KNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(KNum::from(n)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

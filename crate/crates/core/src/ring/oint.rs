use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::KNum;
use crate::error::{Error, Result};

/// An element `a + b·τ` of the ring of integers O₇, with `τ = (1 + i√7)/2`.
///
/// The derived ordering is lexicographic on `(a, b)`; it is the total order
/// used to pick canonical signs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OInt {
    pub a: i128,
    pub b: i128,
}

#[inline]
fn ck(x: Option<i128>) -> i128 {
    x.expect("O7 coefficient overflow")
}

impl OInt {
    pub const ZERO: OInt = OInt { a: 0, b: 0 };
    pub const ONE: OInt = OInt { a: 1, b: 0 };
    pub const TAU: OInt = OInt { a: 0, b: 1 };
    /// `τ̄ = 1 − τ`.
    pub const TAU_BAR: OInt = OInt { a: 1, b: -1 };
    /// `i√7 = 2τ − 1`.
    pub const I_SQRT7: OInt = OInt { a: -1, b: 2 };

    pub const fn new(a: i128, b: i128) -> Self {
        OInt { a, b }
    }

    pub const fn int(a: i128) -> Self {
        OInt { a, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conj(&self) -> Self {
        OInt {
            a: ck(self.a.checked_add(self.b)),
            b: ck(self.b.checked_neg()),
        }
    }

    /// `N(a + bτ) = a² + ab + 2b²`.
    pub fn norm(&self) -> i128 {
        let aa = ck(self.a.checked_mul(self.a));
        let ab = ck(self.a.checked_mul(self.b));
        let bb = ck(self.b.checked_mul(self.b));
        ck(ck(aa.checked_add(ab)).checked_add(ck(bb.checked_mul(2))))
    }

    /// Twice the real part, `2a + b`, always an integer.
    pub fn trace(&self) -> i128 {
        ck(ck(self.a.checked_mul(2)).checked_add(self.b))
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn is_positive(&self) -> bool {
        *self > OInt::ZERO
    }

    pub fn scale(&self, k: i128) -> Self {
        OInt {
            a: ck(self.a.checked_mul(k)),
            b: ck(self.b.checked_mul(k)),
        }
    }

    pub fn to_knum(&self) -> KNum {
        KNum::from(*self)
    }

    /// Exact quotient, if `other` divides `self` in O₇.
    pub fn div_exact(&self, other: &OInt) -> Option<OInt> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let num = *self * other.conj();
        if num.a % n == 0 && num.b % n == 0 {
            Some(OInt::new(num.a / n, num.b / n))
        } else {
            None
        }
    }

    /// Quotient rounded to a nearest lattice point; the remainder
    /// `self − q·other` always has norm strictly below `N(other)`.
    pub fn div_round(&self, other: &OInt) -> OInt {
        assert!(!other.is_zero(), "division by zero in O7");
        let n = BigInt::from(other.norm());
        let num = *self * other.conj();
        let b = BigRational::new(BigInt::from(num.b), n.clone());
        let qb = round_half_down(&b);
        let beta = &b - BigRational::from_integer(qb.clone());
        let a = BigRational::new(BigInt::from(num.a), n) + beta / BigInt::from(2);
        let qa = round_half_down(&a);
        OInt::new(to_i128(&qa), to_i128(&qb))
    }

    pub fn rem_round(&self, other: &OInt) -> OInt {
        *self - self.div_round(other) * *other
    }

    /// Euclidean gcd, normalized to be positive in the ring order.
    pub fn gcd(x: &OInt, y: &OInt) -> Result<OInt> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::GcdUndefined);
        }
        let (mut p, mut q) = (*x, *y);
        while !q.is_zero() {
            let r = p.rem_round(&q);
            p = q;
            q = r;
        }
        Ok(if p.is_positive() { p } else { -p })
    }

    pub fn checked_add(&self, o: &OInt) -> Option<OInt> {
        Some(OInt::new(self.a.checked_add(o.a)?, self.b.checked_add(o.b)?))
    }

    pub fn checked_mul(&self, o: &OInt) -> Option<OInt> {
        let ac = self.a.checked_mul(o.a)?;
        let bd = self.b.checked_mul(o.b)?;
        let ad = self.a.checked_mul(o.b)?;
        let bc = self.b.checked_mul(o.a)?;
        Some(OInt::new(
            ac.checked_sub(bd.checked_mul(2)?)?,
            ad.checked_add(bc)?.checked_add(bd)?,
        ))
    }

    /// Residue in F_p under `τ ↦ tau_image`.
    pub fn residue(&self, p: i64, tau_image: i64) -> i64 {
        let p128 = p as i128;
        let v = (self.a.rem_euclid(p128) + self.b.rem_euclid(p128) * tau_image as i128) % p128;
        v as i64
    }
}

fn round_half_down(x: &BigRational) -> BigInt {
    // nearest integer; exact halves go down
    let twice = x * BigInt::from(2);
    let c = (twice - BigRational::from_integer(BigInt::from(1))) / BigInt::from(2);
    c.ceil().to_integer()
}

fn to_i128(x: &BigInt) -> i128 {
    i128::try_from(x).expect("O7 coefficient overflow")
}

impl From<i128> for OInt {
    fn from(a: i128) -> Self {
        OInt::int(a)
    }
}

impl Add for OInt {
    type Output = OInt;
    fn add(self, o: OInt) -> OInt {
        OInt::new(ck(self.a.checked_add(o.a)), ck(self.b.checked_add(o.b)))
    }
}

impl AddAssign for OInt {
    fn add_assign(&mut self, o: OInt) {
        *self = *self + o;
    }
}

impl Sub for OInt {
    type Output = OInt;
    fn sub(self, o: OInt) -> OInt {
        OInt::new(ck(self.a.checked_sub(o.a)), ck(self.b.checked_sub(o.b)))
    }
}

impl Neg for OInt {
    type Output = OInt;
    fn neg(self) -> OInt {
        OInt::new(ck(self.a.checked_neg()), ck(self.b.checked_neg()))
    }
}

impl Mul for OInt {
    type Output = OInt;
    // (a + bτ)(c + dτ) = ac − 2bd + (ad + bc + bd)τ, using τ² = τ − 2
    fn mul(self, o: OInt) -> OInt {
        let ac = ck(self.a.checked_mul(o.a));
        let bd = ck(self.b.checked_mul(o.b));
        let ad = ck(self.a.checked_mul(o.b));
        let bc = ck(self.b.checked_mul(o.a));
        OInt::new(
            ck(ac.checked_sub(ck(bd.checked_mul(2)))),
            ck(ck(ad.checked_add(bc)).checked_add(bd)),
        )
    }
}

impl fmt::Display for OInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_knum())
    }
}

impl serde::Serialize for OInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

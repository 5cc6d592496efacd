//! Complex dyadic balls.
//!
//! A ball at precision `p` stores integers `re`, `im`, `rad` and encloses every
//! complex number within distance `rad·2⁻ᵖ` of `(re + i·im)·2⁻ᵖ`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{KNum, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub re: BigInt,
    pub im: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

fn shift(p: u32) -> BigInt {
    BigInt::one() << p
}

/// `⌊x/2ᵖ⌋`
fn floor_shr(x: &BigInt, p: u32) -> BigInt {
    x.div_floor(&shift(p))
}

fn ceil_shr(x: &BigInt, p: u32) -> BigInt {
    let (q, r) = x.div_mod_floor(&shift(p));
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Upper bound on `√(a² + b²)`.
fn hypot_up(a: &BigInt, b: &BigInt) -> BigInt {
    let n = a * a + b * b;
    let s = n.sqrt();
    if &s * &s == n {
        s
    } else {
        s + 1
    }
}

fn hypot_down(a: &BigInt, b: &BigInt) -> BigInt {
    (a * a + b * b).sqrt()
}

/// `⌊√7·2ᵖ⌋`
pub fn sqrt7_floor(p: u32) -> BigInt {
    (BigInt::from(7) << (2 * p)).sqrt()
}

impl CBall {
    pub fn exact_int(n: &BigInt, p: u32) -> Self {
        CBall {
            re: n << p,
            im: BigInt::zero(),
            rad: BigInt::zero(),
            prec: p,
        }
    }

    pub fn zero(p: u32) -> Self {
        CBall::exact_int(&BigInt::zero(), p)
    }

    pub fn from_rat(q: &Rat, p: u32) -> Self {
        let num = q.numer() << p;
        let (c, r) = num.div_mod_floor(q.denom());
        CBall {
            re: c,
            im: BigInt::zero(),
            rad: if r.is_zero() { BigInt::zero() } else { BigInt::one() },
            prec: p,
        }
    }

    pub fn sqrt7(p: u32) -> Self {
        CBall {
            re: sqrt7_floor(p),
            im: BigInt::zero(),
            rad: BigInt::one(),
            prec: p,
        }
    }

    /// `τ = (1 + i√7)/2`
    pub fn tau(p: u32) -> Self {
        let s = sqrt7_floor(p);
        CBall {
            re: shift(p) >> 1,
            im: &s >> 1,
            rad: BigInt::from(2),
            prec: p,
        }
    }

    pub fn from_knum(x: &KNum, p: u32) -> Self {
        // a + b/2 + i·(b/2)·√7
        let re = CBall::from_rat(&x.re(), p);
        if x.b.is_zero() {
            return re;
        }
        let im = CBall::from_rat(&x.im_over_sqrt7(), p).mul(&CBall::sqrt7(p));
        CBall {
            re: re.re,
            im: im.re,
            rad: re.rad + im.rad,
            prec: p,
        }
    }

    pub fn from_f64(re: f64, im: f64, p: u32) -> Self {
        let conv = |v: f64| -> BigInt {
            let r = Rat::from_float(v).unwrap_or_else(Rat::zero);
            (r * Rat::from_integer(shift(p))).floor().to_integer()
        };
        CBall {
            re: conv(re),
            im: conv(im),
            rad: BigInt::zero(),
            prec: p,
        }
    }

    pub fn center(&self) -> CBall {
        CBall {
            rad: BigInt::zero(),
            ..self.clone()
        }
    }

    pub fn add(&self, o: &CBall) -> CBall {
        debug_assert_eq!(self.prec, o.prec);
        CBall {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CBall {
        CBall {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let p = self.prec;
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        let m1 = self.re.abs() + self.im.abs();
        let m2 = o.re.abs() + o.im.abs();
        let err = &m1 * &o.rad + &m2 * &self.rad + &self.rad * &o.rad;
        CBall {
            re: floor_shr(&re, p),
            im: floor_shr(&im, p),
            rad: ceil_shr(&err, p) + 2,
            prec: p,
        }
    }

    /// Center-only quotient, used by Newton refinement; carries no radius.
    pub fn div_center(&self, o: &CBall) -> CBall {
        let p = self.prec;
        let d = &o.re * &o.re + &o.im * &o.im;
        let nre = (&self.re * &o.re + &self.im * &o.im) << p;
        let nim = (&self.im * &o.re - &self.re * &o.im) << p;
        CBall {
            re: nre.div_floor(&d),
            im: nim.div_floor(&d),
            rad: BigInt::zero(),
            prec: p,
        }
    }

    /// Upper bound on the modulus of any enclosed value, in units of 2⁻ᵖ.
    pub fn abs_upper(&self) -> BigInt {
        hypot_up(&self.re, &self.im) + &self.rad
    }

    /// Lower bound on the modulus of any enclosed value, in units of 2⁻ᵖ.
    pub fn abs_lower(&self) -> BigInt {
        let v = hypot_down(&self.re, &self.im) - &self.rad;
        if v.is_negative() {
            BigInt::zero()
        } else {
            v
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    /// Sign of the real part if the enclosure decides it.
    pub fn real_sign(&self) -> Option<Ordering> {
        if &self.re - &self.rad > BigInt::zero() {
            Some(Ordering::Greater)
        } else if &self.re + &self.rad < BigInt::zero() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Floor of the real part if no integer lies inside the real interval.
    pub fn real_floor(&self) -> Option<BigInt> {
        let lo = floor_shr(&(&self.re - &self.rad), self.prec);
        let hi = floor_shr(&(&self.re + &self.rad), self.prec);
        (lo == hi).then_some(lo)
    }

    /// Nearest integer to the real part, ignoring the radius.
    pub fn real_round(&self) -> BigInt {
        floor_shr(&(&self.re + (shift(self.prec) >> 1)), self.prec)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let scale = |x: &BigInt| -> f64 {
            let bits = x.bits() as i64;
            let drop = (bits - 60).max(0) as u32;
            let m = (x >> drop).to_f64().unwrap_or(0.0);
            m * 2f64.powi(drop as i32 - self.prec as i32)
        };
        (scale(&self.re), scale(&self.im))
    }

    /// `|self − o|² > bound²`, with `bound` in units of 2⁻ᵖ; centers only.
    pub fn center_far(&self, o: &CBall, bound: &BigInt) -> bool {
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        dr.clone() * dr + di.clone() * di > bound * bound
    }

}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        let r = self.rad.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(self.prec as i32));
        write!(f, "[{re:.17e} + {im:.17e}i ± {r:.3e}]")
    }
}

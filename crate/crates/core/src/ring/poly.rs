use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::KNum;

/// Dense univariate polynomial over K, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KPoly {
    c: Vec<KNum>,
}

impl KPoly {
    pub fn new(mut c: Vec<KNum>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        KPoly { c }
    }

    pub fn zero() -> Self {
        KPoly { c: vec![] }
    }

    pub fn constant(a: KNum) -> Self {
        KPoly::new(vec![a])
    }

    pub fn x() -> Self {
        KPoly::new(vec![KNum::zero(), KNum::one()])
    }

    /// `x − a`
    pub fn linear(a: &KNum) -> Self {
        KPoly::new(vec![-a, KNum::one()])
    }

    pub fn coeffs(&self) -> &[KNum] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> KNum {
        self.c.get(i).cloned().unwrap_or_else(KNum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> KNum {
        self.c.last().cloned().unwrap_or_else(KNum::zero)
    }

    pub fn eval(&self, x: &KNum) -> KNum {
        let mut acc = KNum::zero();
        for a in self.c.iter().rev() {
            acc = &acc * x + a;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        KPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * &KNum::from_int(i as i128))
                .collect(),
        )
    }

    pub fn add(&self, o: &KPoly) -> KPoly {
        let n = self.c.len().max(o.c.len());
        KPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &KPoly) -> KPoly {
        let n = self.c.len().max(o.c.len());
        KPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &KPoly) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![KNum::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        KPoly::new(out)
    }

    pub fn scale(&self, k: &KNum) -> KPoly {
        KPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn monic(&self) -> KPoly {
        let l = self.lead().inv().expect("zero polynomial has no monic form");
        self.scale(&l)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &KPoly) -> (KPoly, KPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let linv = d.lead().inv().unwrap();
        let mut r = self.c.clone();
        let Some(n) = self.degree() else {
            return (KPoly::zero(), KPoly::zero());
        };
        if n < dd {
            return (KPoly::zero(), self.clone());
        }
        let mut q = vec![KNum::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let t = &r[i + dd] * &linv;
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[i + j] -= &(&t * b);
            }
            q[i] = t;
        }
        r.truncate(dd);
        (KPoly::new(q), KPoly::new(r))
    }

    pub fn rem(&self, d: &KPoly) -> KPoly {
        self.div_rem(d).1
    }

    /// Monic gcd together with Bezout cofactors `s, t` with `s·self + t·o = g`.
    pub fn xgcd(&self, o: &KPoly) -> (KPoly, KPoly, KPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (KPoly::constant(KNum::one()), KPoly::zero());
        let (mut t0, mut t1) = (KPoly::zero(), KPoly::constant(KNum::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lead().inv().unwrap();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> KPoly {
        KPoly::new(self.c.iter().map(|a| a.conj()).collect())
    }

    /// `xⁿ·p(1/x)` with `n` the degree.
    pub fn reversed(&self) -> KPoly {
        KPoly::new(self.c.iter().rev().cloned().collect())
    }

    /// Strips every factor `x − r` for `r` in `roots`, returning the
    /// multiplicities removed and the cofactor.
    pub fn strip_roots(&self, roots: &[KNum]) -> (Vec<usize>, KPoly) {
        let mut p = self.clone();
        let mut mult = vec![0; roots.len()];
        for (i, r) in roots.iter().enumerate() {
            let lin = KPoly::linear(r);
            while p.degree().is_some_and(|d| d > 0) && p.eval(r).is_zero() {
                p = p.div_rem(&lin).0;
                mult[i] += 1;
            }
        }
        (mult, p)
    }

    /// Floating-point roots by Durand–Kerner iteration.
    pub fn approx_roots(&self) -> Vec<Complex64> {
        let Some(n) = self.degree() else {
            return vec![];
        };
        if n == 0 {
            return vec![];
        }
        let lead = {
            let (re, im) = self.lead().to_f64_pair();
            Complex64::new(re, im)
        };
        let cs: Vec<Complex64> = self
            .c
            .iter()
            .map(|a| {
                let (re, im) = a.to_f64_pair();
                Complex64::new(re, im) / lead
            })
            .collect();
        let eval = |z: Complex64| cs.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a);
        let seed = Complex64::new(0.4, 0.9);
        let mut zs: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32 + 1)).collect();
        for _ in 0..500 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= zs[i] - zs[j];
                    }
                }
                let step = eval(zs[i]) / den;
                zs[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 {
                break;
            }
        }
        zs
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})x")?,
                _ => write!(f, "({a})x^{i}")?,
            }
        }
        Ok(())
    }
}

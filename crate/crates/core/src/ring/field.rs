//! Number fields `K(λ) = K[x]/(f)` with a chosen complex embedding.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::{CBall, KNum, KPoly};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;
pub const MAX_PRECISION: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start: DEFAULT_PRECISION,
            cap: MAX_PRECISION,
        }
    }
}

impl Precision {
    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        let mut p = self.start.max(16);
        std::iter::from_fn(move || {
            if p > self.cap.max(self.start) {
                return None;
            }
            let cur = p;
            p = p.saturating_mul(2);
            Some(cur)
        })
    }
}

/// `K[x]/(f)` for monic irreducible `f`, embedded by sending `x` to one
/// certified root.
pub struct NumField {
    modulus: KPoly,
    index: usize,
    precision: Precision,
    seed: Complex64,
    /// Images of `x⁰, …, x^{d−1}` under complex conjugation, when the roots
    /// of `f` are closed under `r ↦ 1/r̄`.
    conj_images: Option<Vec<Vec<KNum>>>,
    enclosures: Mutex<Vec<CBall>>,
}

impl fmt::Debug for NumField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumField({}, root #{})", self.modulus, self.index)
    }
}

impl PartialEq for NumField {
    fn eq(&self, o: &Self) -> bool {
        self.modulus == o.modulus && self.index == o.index
    }
}

fn newton(f: &KPoly, df: &KPoly, z: &CBall, steps: usize) -> CBall {
    let mut z = z.center();
    for _ in 0..steps {
        let fz = eval_ball(f.coeffs(), &z);
        let dz = eval_ball(df.coeffs(), &z);
        if dz.re.is_zero() && dz.im.is_zero() {
            break;
        }
        z = z.sub(&fz.center().div_center(&dz.center())).center();
    }
    z
}

fn eval_ball(c: &[KNum], z: &CBall) -> CBall {
    let mut acc = CBall::zero(z.prec);
    for a in c.iter().rev() {
        acc = acc.mul(z).add(&CBall::from_knum(a, z.prec));
    }
    acc
}

/// Radius of a disc about the center of `z` that must contain a root of `f`,
/// in units of `2⁻ᵖ`. `None` when `f′` may vanish there.
fn root_radius(f: &KPoly, df: &KPoly, z: &CBall) -> Option<BigInt> {
    let d = f.degree()? as u64;
    let fz = eval_ball(f.coeffs(), &z.center());
    let dz = eval_ball(df.coeffs(), &z.center());
    let lo = dz.abs_lower();
    if lo.is_zero() {
        return None;
    }
    let num = fz.abs_upper() * BigInt::from(d);
    Some(num / &lo + 1)
}

fn newton_steps(prec: u32) -> usize {
    (prec.max(64) / 32).ilog2() as usize + 4
}

impl NumField {
    /// The field K itself, presented as `K[x]/(x − 1)`.
    pub fn base() -> Arc<NumField> {
        static BASE: OnceLock<Arc<NumField>> = OnceLock::new();
        BASE.get_or_init(|| {
            NumField::new(KPoly::linear(&KNum::one()), 0, Precision::default())
                .expect("linear modulus")
        })
        .clone()
    }

    /// Builds the field with `x` sent to the `index`-th root of `f`, roots
    /// ordered by their approximate `(re, im)`.
    pub fn new(f: KPoly, index: usize, precision: Precision) -> Result<Arc<NumField>> {
        let d = f
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Invalid("modulus must have positive degree".into()))?;
        let f = f.monic();
        let mut seeds = if d == 1 {
            let r = -f.coeff(0);
            let (re, im) = r.to_f64_pair();
            vec![Complex64::new(re, im)]
        } else {
            f.approx_roots()
        };
        seeds.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .unwrap_or(Ordering::Equal)
        });
        if index >= d {
            return Err(Error::Invalid(format!("root index {index} out of range")));
        }
        let df = f.derivative();
        let p = precision.start;
        let discs: Vec<(CBall, BigInt)> = if d == 1 {
            let c = CBall::from_knum(&-f.coeff(0), p);
            vec![(c, BigInt::zero())]
        } else {
            seeds
                .iter()
                .map(|s| {
                    let z = newton(&f, &df, &CBall::from_f64(s.re, s.im, p), newton_steps(p));
                    let r = root_radius(&f, &df, &z).ok_or_else(|| Error::Precision {
                        bits: p,
                        enclosure: format!("derivative vanishes near root of {f}"),
                    })?;
                    Ok((z, r))
                })
                .collect::<Result<_>>()?
        };
        for i in 0..discs.len() {
            for j in i + 1..discs.len() {
                let bound = &discs[i].1 + &discs[j].1;
                if !discs[i].0.center_far(&discs[j].0, &bound) {
                    return Err(Error::Precision {
                        bits: p,
                        enclosure: format!("roots of {f} not separated"),
                    });
                }
            }
        }
        let (c, r) = discs[index].clone();
        let base = if d == 1 {
            // the linear case is exact up to the rounding of K into balls
            CBall::from_knum(&-f.coeff(0), p)
        } else {
            CBall { rad: r, ..c }
        };
        let mut field = NumField {
            modulus: f,
            index,
            precision,
            seed: seeds[index],
            conj_images: None,
            enclosures: Mutex::new(vec![base]),
        };
        field.conj_images = field.compute_conj_images();
        Ok(Arc::new(field))
    }

    fn compute_conj_images(&self) -> Option<Vec<Vec<KNum>>> {
        let f = &self.modulus;
        let d = self.degree();
        // roots closed under r ↦ 1/r̄ iff the reversed conjugate is proportional to f
        if f.coeff(0).is_zero() {
            return None;
        }
        let g = f.conj().reversed();
        let ratio = &g.lead() / &f.lead();
        if g != f.scale(&ratio) {
            return None;
        }
        let x = self.reduce(&KPoly::x());
        let xinv = self.inv_poly(&x)?;
        let mut out = Vec::with_capacity(d);
        let mut cur = self.reduce(&KPoly::constant(KNum::one()));
        for _ in 0..d {
            out.push(pad(&cur, d));
            cur = self.reduce(&cur.mul(&xinv));
        }
        Some(out)
    }

    pub fn modulus(&self) -> &KPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn root_index(&self) -> usize {
        self.index
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn approx_root(&self) -> Complex64 {
        self.seed
    }

    pub fn has_conjugation(&self) -> bool {
        self.conj_images.is_some()
    }

    fn reduce(&self, p: &KPoly) -> KPoly {
        p.rem(&self.modulus)
    }

    fn inv_poly(&self, p: &KPoly) -> Option<KPoly> {
        if p.is_zero() {
            return None;
        }
        let (g, s, _) = p.xgcd(&self.modulus);
        (g.degree() == Some(0)).then(|| self.reduce(&s.scale(&g.lead().inv().unwrap())))
    }

    /// Enclosure of the chosen root at precision `p`, a level of the
    /// precision ladder.
    pub fn root_ball(&self, p: u32) -> Result<CBall> {
        let mut enc = self.enclosures.lock().expect("enclosure cache poisoned");
        if let Some(b) = enc.iter().find(|b| b.prec == p) {
            return Ok(b.clone());
        }
        if self.degree() == 1 {
            let b = CBall::from_knum(&-self.modulus.coeff(0), p);
            enc.push(b.clone());
            return Ok(b);
        }
        let df = self.modulus.derivative();
        loop {
            let last = enc.last().unwrap().clone();
            if last.prec >= p {
                break;
            }
            let np = (last.prec * 2).min(p.max(last.prec + 1));
            let sh = np - last.prec;
            let start = CBall {
                re: &last.re << sh,
                im: &last.im << sh,
                rad: BigInt::zero(),
                prec: np,
            };
            let z = newton(&self.modulus, &df, &start, newton_steps(np));
            let r = root_radius(&self.modulus, &df, &z).ok_or_else(|| Error::Precision {
                bits: np,
                enclosure: last.to_string(),
            })?;
            // nested inside the previous disc, so it encloses the same root
            let prev_rad = &last.rad << sh;
            let dr = &z.re - (&last.re << sh);
            let di = &z.im - (&last.im << sh);
            let dist_up = (dr.clone() * dr + di.clone() * di).sqrt() + 1;
            if dist_up + &r > prev_rad {
                return Err(Error::Precision {
                    bits: np,
                    enclosure: format!("refinement of {last} left its disc"),
                });
            }
            enc.push(CBall { rad: r, ..z });
        }
        Ok(enc.iter().find(|b| b.prec == p).cloned().unwrap_or_else(|| enc.last().unwrap().clone()))
    }
}

fn pad(p: &KPoly, d: usize) -> Vec<KNum> {
    (0..d).map(|i| p.coeff(i)).collect()
}

/// An element of a [`NumField`], stored as its reduced coefficient vector.
#[derive(Clone)]
pub struct AlgNum {
    field: Arc<NumField>,
    c: Vec<KNum>,
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = KPoly::new(self.c.clone());
        if self.field.degree() == 1 {
            return write!(f, "{}", p.coeff(0));
        }
        write!(f, "{p} mod {}", self.field.modulus)
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, o: &Self) -> bool {
        same_field(&self.field, &o.field) && self.c == o.c
    }
}

pub fn same_field(a: &Arc<NumField>, b: &Arc<NumField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgNum {
    pub fn from_knum(field: &Arc<NumField>, x: KNum) -> AlgNum {
        let d = field.degree();
        let mut c = vec![KNum::zero(); d];
        c[0] = x;
        AlgNum {
            field: field.clone(),
            c,
        }
    }

    pub fn generator(field: &Arc<NumField>) -> AlgNum {
        let p = field.reduce(&KPoly::x());
        AlgNum {
            field: field.clone(),
            c: pad(&p, field.degree()),
        }
    }

    pub fn from_poly(field: &Arc<NumField>, p: &KPoly) -> AlgNum {
        let r = field.reduce(p);
        AlgNum {
            field: field.clone(),
            c: pad(&r, field.degree()),
        }
    }

    pub fn field(&self) -> &Arc<NumField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[KNum] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// The value as an element of K, when it lies there.
    pub fn as_knum(&self) -> Option<KNum> {
        self.c[1..].iter().all(|x| x.is_zero()).then(|| self.c[0].clone())
    }

    fn check(&self, o: &AlgNum) {
        assert!(same_field(&self.field, &o.field), "mixing elements of different fields");
    }

    pub fn add(&self, o: &AlgNum) -> AlgNum {
        self.check(o);
        AlgNum {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &AlgNum) -> AlgNum {
        self.check(o);
        AlgNum {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, o: &AlgNum) -> AlgNum {
        self.check(o);
        if self.field.degree() == 1 {
            return AlgNum::from_knum(&self.field, &self.c[0] * &o.c[0]);
        }
        let p = KPoly::new(self.c.clone()).mul(&KPoly::new(o.c.clone()));
        AlgNum::from_poly(&self.field, &p)
    }

    pub fn scale(&self, k: &KNum) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    pub fn inv(&self) -> Option<AlgNum> {
        if self.field.degree() == 1 {
            return self.c[0].inv().map(|x| AlgNum::from_knum(&self.field, x));
        }
        let p = self.field.inv_poly(&KPoly::new(self.c.clone()))?;
        Some(AlgNum::from_poly(&self.field, &p))
    }

    pub fn div(&self, o: &AlgNum) -> Option<AlgNum> {
        Some(self.mul(&o.inv()?))
    }

    /// Complex conjugate, available when the field is closed under it.
    pub fn conj(&self) -> Option<AlgNum> {
        let imgs = self.field.conj_images.as_ref()?;
        let d = self.field.degree();
        let mut out = vec![KNum::zero(); d];
        for (a, img) in self.c.iter().zip(imgs) {
            let ac = a.conj();
            for (o, v) in out.iter_mut().zip(img) {
                *o += &(&ac * v);
            }
        }
        Some(AlgNum {
            field: self.field.clone(),
            c: out,
        })
    }

    /// `|x|²`
    pub fn norm(&self) -> Option<AlgNum> {
        Some(self.mul(&self.conj()?))
    }

    pub fn ball(&self, p: u32) -> Result<CBall> {
        if let Some(k) = self.as_knum() {
            return Ok(CBall::from_knum(&k, p));
        }
        let z = self.field.root_ball(p)?;
        Ok(eval_ball(&self.c, &z))
    }

    pub fn approx(&self) -> Complex64 {
        match self.ball(self.field.precision.start) {
            Ok(b) => {
                let (re, im) = b.to_f64();
                Complex64::new(re, im)
            }
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    }

    /// Sign of a real element.
    pub fn sign(&self) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(k) = self.as_knum() {
            return Ok(k.re().cmp(&super::Rat::zero()));
        }
        let mut last = None;
        for p in self.field.precision.levels() {
            let b = self.ball(p)?;
            if let Some(s) = b.real_sign() {
                return Ok(s);
            }
            last = Some(b);
        }
        Err(Error::Precision {
            bits: self.field.precision.cap,
            enclosure: last.map(|b| b.to_string()).unwrap_or_default(),
        })
    }

    /// `⌊x⌋` of a real element.
    pub fn floor(&self) -> Result<BigInt> {
        if let Some(k) = self.as_knum() {
            return Ok(k.re().floor().to_integer());
        }
        let mut last = None;
        for p in self.field.precision.levels() {
            let b = self.ball(p)?;
            if let Some(k) = b.real_floor() {
                return Ok(k);
            }
            let k = b.real_round();
            if self
                .sub(&AlgNum::from_knum(&self.field, KNum::from_rat(super::Rat::from_integer(k.clone()))))
                .is_zero()
            {
                return Ok(k);
            }
            last = Some(b);
        }
        Err(Error::Precision {
            bits: self.field.precision.cap,
            enclosure: last.map(|b| b.to_string()).unwrap_or_default(),
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.approx().re
    }
}

impl NumField {
    /// Convenience for the real embedding of `√n` with `n > 0` squarefree.
    pub fn real_sqrt(n: i64) -> Result<Arc<NumField>> {
        let f = KPoly::new(vec![KNum::from_int(-(n as i128)), KNum::zero(), KNum::one()]);
        let approx = (n as f64).sqrt();
        let tmp = NumField::new(f.clone(), 0, Precision::default())?;
        let idx = if (tmp.seed.re - approx).abs() < 1e-6 { 0 } else { 1 };
        NumField::new(f, idx, Precision::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use num_traits::One;

    fn int(n: i128) -> KNum {
        KNum::from_int(n)
    }

    /// Oracle: bisection on a real polynomial with 200-bit rational arithmetic.
    fn bisect_root(coeffs: &[i64], mut lo: crate::ring::Rat, mut hi: crate::ring::Rat) -> crate::ring::Rat {
        let eval = |x: &crate::ring::Rat| {
            coeffs
                .iter()
                .rev()
                .fold(crate::ring::Rat::zero(), |acc, &c| acc * x + crate::ring::Rat::from_integer(BigInt::from(c)))
        };
        let s_lo = eval(&lo) < crate::ring::Rat::zero();
        for _ in 0..200 {
            let mid = (&lo + &hi) / BigInt::from(2);
            if (eval(&mid) < crate::ring::Rat::zero()) == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn floor_of_sqrt7() {
        let f = NumField::real_sqrt(7).unwrap();
        let s = AlgNum::generator(&f);
        assert_eq!(s.floor().unwrap(), BigInt::from(2));
        assert_eq!(s.neg().floor().unwrap(), BigInt::from(-3));
        assert_eq!(s.mul(&s).floor().unwrap(), BigInt::from(7));
        assert_eq!(s.sign().unwrap(), Ordering::Greater);
    }

    #[test]
    fn floor_of_rational() {
        let x = AlgNum::from_knum(&NumField::base(), KNum::from_rat(rat(7, 2)));
        assert_eq!(x.floor().unwrap(), BigInt::from(3));
    }

    #[test]
    fn cube_root_floor_matches_bisection() {
        // real root of x³ − 3x − 5 ≈ 2.279, checked with 200 bisection steps
        let f = KPoly::new(vec![int(-5), int(-3), int(0), int(1)]);
        let tmp = NumField::new(f.clone(), 0, Precision::default()).unwrap();
        let idx = (0..3)
            .find(|&i| {
                let fi = NumField::new(f.clone(), i, Precision::default()).unwrap();
                fi.approx_root().im.abs() < 1e-9
            })
            .unwrap();
        drop(tmp);
        let field = NumField::new(f, idx, Precision::default()).unwrap();
        let x = AlgNum::generator(&field);
        let oracle = bisect_root(&[-5, -3, 0, 1], rat(2, 1), rat(3, 1));
        let scaled = x.scale(&int(1000));
        let want = (oracle * BigInt::from(1000)).floor().to_integer();
        assert_eq!(scaled.floor().unwrap(), want);
    }

    #[test]
    fn conjugation_on_cyclotomic_field() {
        // x² + x + 1 over K: primitive cube roots of unity
        let f = KPoly::new(vec![int(1), int(1), int(1)]);
        let field = NumField::new(f, 1, Precision::default()).unwrap();
        assert!(field.has_conjugation());
        let w = AlgNum::generator(&field);
        let wbar = w.conj().unwrap();
        assert!(w.mul(&wbar).sub(&AlgNum::from_knum(&field, int(1))).is_zero());
        let t = AlgNum::from_knum(&field, KNum::tau());
        let z = w.add(&t);
        let n = z.norm().unwrap();
        assert_eq!(n.conj().unwrap(), n);
        assert_eq!(n.sign().unwrap(), Ordering::Greater);
        let inv = z.inv().unwrap();
        assert!(inv.mul(&z).sub(&AlgNum::from_knum(&field, int(1))).is_zero());
    }

    #[test]
    fn refinement_is_consistent() {
        let f = KPoly::new(vec![int(1), int(1), int(1)]);
        let field = NumField::new(f, 0, Precision::default()).unwrap();
        let a = field.root_ball(128).unwrap();
        let b = field.root_ball(1024).unwrap();
        let (ar, ai) = a.to_f64();
        let (br, bi) = b.to_f64();
        assert!((ar - br).abs() < 1e-15 && (ai - bi).abs() < 1e-15);
        // refining never flips a resolved sign
        let x = AlgNum::generator(&field).add(&AlgNum::generator(&field).conj().unwrap());
        assert_eq!(x.sign().unwrap(), Ordering::Less);
    }

    #[test]
    fn exact_zero_fallback() {
        let f = KPoly::new(vec![int(1), int(1), int(1)]);
        let field = NumField::new(f, 0, Precision::default()).unwrap();
        let w = AlgNum::generator(&field);
        // w + w̄ + 1 = 0 exactly
        let s = w.add(&w.conj().unwrap()).add(&AlgNum::from_knum(&field, int(1)));
        assert_eq!(s.sign().unwrap(), Ordering::Equal);
        assert_eq!(s.floor().unwrap(), BigInt::zero());
    }

    #[test]
    fn precision_error_carries_enclosure() {
        let f = KPoly::new(vec![int(-7), int(0), int(1)]);
        let tight = Precision { start: 64, cap: 64 };
        let field = NumField::new(f, 1, tight).unwrap();
        // √7 minus its 200-bit truncation lies in (0, 2⁻²⁰⁰)
        let s = AlgNum::generator(&field);
        let trunc = crate::ring::Rat::new(crate::ring::sqrt7_floor(200), BigInt::one() << 200);
        let x = s.sub(&AlgNum::from_knum(&field, KNum::from_rat(trunc)));
        match x.floor() {
            Err(Error::Precision { bits, enclosure }) => {
                assert_eq!(bits, 64);
                assert!(!enclosure.is_empty());
            }
            other => panic!("expected precision error, got {other:?}"),
        }
    }
}

//! The Hermitian form J, vectors and matrices over K, projective points and
//! horospherical coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{AlgNum, KNum, NumField, OInt, Rat};

pub type Vec3K = [KNum; 3];
pub type Vec3O = [OInt; 3];
pub type Mat3 = [[OInt; 3]; 3];
pub type KMat3 = [[KNum; 3]; 3];

/// `⟨v, w⟩ = w* J v = v₁w̄₃ + v₂w̄₂ + v₃w̄₁`
pub fn herm_inner(v: &Vec3K, w: &Vec3K) -> KNum {
    &(&(&v[0] * &w[2].conj()) + &(&v[1] * &w[1].conj())) + &(&v[2] * &w[0].conj())
}

pub fn herm_o(v: &Vec3O, w: &Vec3O) -> OInt {
    v[0] * w[2].conj() + v[1] * w[1].conj() + v[2] * w[0].conj()
}

/// Square norm of an integral vector, an integer.
pub fn norm_o(v: &Vec3O) -> i128 {
    herm_o(v, v).a
}

pub fn herm_alg(v: &[AlgNum; 3], w: &[AlgNum; 3]) -> AlgNum {
    let c = |x: &AlgNum| x.conj().expect("field without complex conjugation");
    v[0].mul(&c(&w[2])).add(&v[1].mul(&c(&w[1]))).add(&v[2].mul(&c(&w[0])))
}

pub fn to_kvec(v: &Vec3O) -> Vec3K {
    [v[0].to_knum(), v[1].to_knum(), v[2].to_knum()]
}

fn first_nonzero_negative<'a>(it: impl IntoIterator<Item = &'a OInt>) -> bool {
    it.into_iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| *x < OInt::ZERO)
}

/// Canonical sign: first nonzero coordinate positive in the ring order.
pub fn canonical_vec(v: Vec3O) -> Vec3O {
    if first_nonzero_negative(&v) {
        [-v[0], -v[1], -v[2]]
    } else {
        v
    }
}

/// Primitive integral representative with canonical sign.
pub fn primitive_rep(v: &Vec3K) -> Result<Vec3O> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let l = v
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, &x.denom_lcm()));
    let lq = Rat::from_integer(l);
    let mut o = [OInt::ZERO; 3];
    for (i, x) in v.iter().enumerate() {
        o[i] = x
            .scale(&lq)
            .to_oint()
            .ok_or_else(|| Error::Invalid("coordinate too large for O7".into()))?;
    }
    Ok(primitive_o(o))
}

pub fn primitive_o(o: Vec3O) -> Vec3O {
    let g = OInt::gcd(&OInt::gcd(&o[0], &o[1]).unwrap_or(OInt::ZERO), &o[2])
        .expect("nonzero vector");
    let d = |x: &OInt| x.div_exact(&g).expect("gcd divides");
    canonical_vec([d(&o[0]), d(&o[1]), d(&o[2])])
}

/// Depth `N(v₃)` of a K-rational null point other than q∞.
pub fn depth(v: &Vec3K) -> Result<i128> {
    let p = primitive_rep(v)?;
    if p[2].is_zero() {
        return Err(Error::DepthUndefined);
    }
    Ok(p[2].norm())
}

/// Horospherical coordinates `(z, t = s√7, u)` of a K-rational point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoroPoint {
    pub z: KNum,
    #[serde(with = "rat_str")]
    pub s: Rat,
    #[serde(with = "rat_str")]
    pub u: Rat,
}

pub(crate) mod rat_str {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn horo_coords(v: &Vec3K) -> Result<HoroPoint> {
    let v3inv = v[2].inv().ok_or(Error::AtInfinity)?;
    let z = &v[1] * &v3inv;
    let w = &(&(&v[0] * &v3inv) * &KNum::from_int(2)) + &KNum::from_rat(z.norm());
    Ok(HoroPoint {
        s: w.im_over_sqrt7(),
        u: -w.re(),
        z,
    })
}

/// `((−|z|² − u + it)/2, z, 1)`
pub fn lift(h: &HoroPoint) -> Vec3K {
    let it = KNum::from(OInt::I_SQRT7).scale(&h.s);
    let v1 = (&it - &KNum::from_rat(h.z.norm() + &h.u)).scale(&Rat::new(1.into(), 2.into()));
    [v1, h.z.clone(), KNum::one()]
}

pub fn kmat_mul(a: &KMat3, b: &KMat3) -> KMat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(KNum::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j]))
        })
    })
}

fn kmat_star(a: &KMat3) -> KMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].conj()))
}

fn j_kmat() -> KMat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if i + j == 2 { KNum::one() } else { KNum::zero() })
    })
}

/// `M*JM = J` with all entries in O₇.
pub fn is_in_gamma(m: &KMat3) -> bool {
    m.iter().flatten().all(|x| x.is_integral()) && kmat_mul(&kmat_mul(&kmat_star(m), &j_kmat()), m) == j_kmat()
}

/// `cosh²(d/2) = |⟨v,w⟩|² / (⟨v,v⟩⟨w,w⟩)` for two negative points.
pub fn dist_invariant(v: &Vec3K, w: &Vec3K) -> Result<Rat> {
    let nv = herm_inner(v, v).re();
    let nw = herm_inner(w, w).re();
    for n in [&nv, &nw] {
        if !n.is_negative() {
            return Err(Error::NotNegative(n.to_string()));
        }
    }
    Ok(herm_inner(v, w).norm() / (nv * nw))
}

/// `r⁴ = 4/N(a₃₁)` for `r = √(2/|a₃₁|)`.
pub fn radius4_from_entry(a31_norm: i128) -> Rat {
    Rat::new(4.into(), a31_norm.into())
}

/// `r⁴ = 4/d²` for `r = √(2/d)` with `d` the depth.
pub fn radius4_from_depth(depth: i128) -> Rat {
    Rat::new(4.into(), (depth * depth).into())
}

#[inline]
fn ck<T>(x: Option<T>) -> T {
    x.expect("O7 coefficient overflow")
}

fn mat_checked_mul(a: &Mat3, b: &Mat3) -> Option<Mat3> {
    let mut out = [[OInt::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = OInt::ZERO;
            for k in 0..3 {
                acc = acc.checked_add(&a[i][k].checked_mul(&b[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Some(out)
}

pub fn mat_identity() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| OInt::int((i == j) as i128)))
}

fn mat_neg(m: &Mat3) -> Mat3 {
    m.map(|r| r.map(|x| -x))
}

fn canonical_mat(m: Mat3) -> Mat3 {
    if first_nonzero_negative(m.iter().flatten()) {
        mat_neg(&m)
    } else {
        m
    }
}

/// An element of PU(J, O₇): a matrix in U(J, O₇) up to sign, with an
/// optional defining word.
#[derive(Clone, Debug)]
pub struct GroupElt {
    m: Mat3,
    word: Option<String>,
}

impl PartialEq for GroupElt {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m
    }
}

impl Eq for GroupElt {}

impl Hash for GroupElt {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.m.hash(h)
    }
}

impl PartialOrd for GroupElt {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for GroupElt {
    fn cmp(&self, o: &Self) -> Ordering {
        self.m.cmp(&o.m)
    }
}

impl GroupElt {
    /// Checks membership in U(J, O₇).
    pub fn new(m: Mat3) -> Result<GroupElt> {
        let g = GroupElt::new_unchecked(m);
        if g.mul_unsigned(&g.star_j()) != mat_identity() {
            return Err(Error::NotInGroup);
        }
        Ok(g)
    }

    pub(crate) fn new_unchecked(m: Mat3) -> GroupElt {
        GroupElt {
            m: canonical_mat(m),
            word: None,
        }
    }

    pub fn from_kmat(m: &KMat3) -> Result<GroupElt> {
        if !is_in_gamma(m) {
            return Err(Error::NotInGroup);
        }
        let mut o = [[OInt::ZERO; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                o[i][j] = m[i][j].to_oint().ok_or(Error::NotInGroup)?;
            }
        }
        GroupElt::new(o)
    }

    pub fn from_rows<T: Into<OInt> + Copy>(rows: [[T; 3]; 3]) -> Result<GroupElt> {
        GroupElt::new(rows.map(|r| r.map(Into::into)))
    }

    pub fn identity() -> GroupElt {
        GroupElt::new_unchecked(mat_identity()).named("Id")
    }

    pub fn named(mut self, w: impl Into<String>) -> GroupElt {
        self.word = Some(w.into());
        self
    }

    pub fn without_word(mut self) -> GroupElt {
        self.word = None;
        self
    }

    pub fn word(&self) -> Option<&str> {
        self.word.as_deref()
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn kmat(&self) -> KMat3 {
        self.m.map(|r| r.map(KNum::from))
    }

    pub fn entry(&self, i: usize, j: usize) -> OInt {
        self.m[i][j]
    }

    /// First column, the image of q∞ = (1, 0, 0).
    pub fn col(&self, j: usize) -> Vec3O {
        [self.m[0][j], self.m[1][j], self.m[2][j]]
    }

    fn mul_unsigned(&self, o: &Mat3) -> Mat3 {
        ck(mat_checked_mul(&self.m, o))
    }

    /// `J M* J`
    fn star_j(&self) -> Mat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| self.m[2 - j][2 - i].conj()))
    }

    fn join_words(a: &Option<String>, b: &Option<String>) -> Option<String> {
        match (a.as_deref(), b.as_deref()) {
            (Some("Id"), w) | (w, Some("Id")) => w.map(str::to_string),
            (Some(x), Some(y)) => Some(format!("{x} {y}")),
            _ => None,
        }
    }

    pub fn mul(&self, o: &GroupElt) -> GroupElt {
        GroupElt {
            m: canonical_mat(self.mul_unsigned(&o.m)),
            word: GroupElt::join_words(&self.word, &o.word),
        }
    }

    pub fn checked_mul(&self, o: &GroupElt) -> Option<GroupElt> {
        Some(GroupElt {
            m: canonical_mat(mat_checked_mul(&self.m, &o.m)?),
            word: GroupElt::join_words(&self.word, &o.word),
        })
    }

    pub fn inv(&self) -> GroupElt {
        GroupElt {
            m: canonical_mat(self.star_j()),
            word: self.word.as_ref().map(|w| invert_word(w)),
        }
    }

    pub fn pow(&self, n: i64) -> GroupElt {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = GroupElt::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base).without_word();
        }
        let word = self.word.as_ref().map(|w| match n {
            0 => "Id".to_string(),
            1 => w.clone(),
            _ if w.contains(' ') => format!("({w})^{n}"),
            _ => format!("{w}^{n}"),
        });
        GroupElt { word, ..acc }
    }

    pub fn conj_by(&self, g: &GroupElt) -> GroupElt {
        g.mul(self).mul(&g.inv())
    }

    pub fn is_identity(&self) -> bool {
        self.m == mat_identity()
    }

    pub fn trace(&self) -> OInt {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    /// True when the first column is proportional to q∞.
    pub fn fixes_infinity(&self) -> bool {
        self.m[1][0].is_zero() && self.m[2][0].is_zero()
    }

    pub fn apply_o(&self, v: &Vec3O) -> Vec3O {
        std::array::from_fn(|i| (0..3).fold(OInt::ZERO, |acc, k| acc + self.m[i][k] * v[k]))
    }

    pub fn apply_k(&self, v: &Vec3K) -> Vec3K {
        std::array::from_fn(|i| {
            (0..3).fold(KNum::zero(), |acc, k| &acc + &(&self.m[i][k].to_knum() * &v[k]))
        })
    }

    pub fn apply_alg(&self, v: &[AlgNum; 3]) -> [AlgNum; 3] {
        let f = v[0].field().clone();
        std::array::from_fn(|i| {
            (0..3).fold(AlgNum::from_knum(&f, KNum::zero()), |acc, k| {
                acc.add(&v[k].scale(&self.m[i][k].to_knum()))
            })
        })
    }

    /// Both signs of the matrix, the full preimage in U(J, O₇).
    pub fn lifts(&self) -> [Mat3; 2] {
        [self.m, mat_neg(&self.m)]
    }

    pub fn to_strings(&self) -> [[String; 3]; 3] {
        self.m.map(|r| r.map(|x| x.to_string()))
    }
}

/// Inverse of a word written as space-separated factors.
pub fn invert_word(w: &str) -> String {
    if w == "Id" {
        return w.to_string();
    }
    format!("({w})^-1")
}

impl fmt::Display for GroupElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for GroupElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m: [[KNum; 3]; 3] = Deserialize::deserialize(d)?;
        GroupElt::from_kmat(&m).map_err(serde::de::Error::custom)
    }
}

/// Parses a matrix given as a JSON 3×3 array of K-number strings or integers.
pub fn parse_matrix_json(s: &str) -> Result<GroupElt> {
    let m: [[KNum; 3]; 3] = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    GroupElt::from_kmat(&m)
}

/// Parses a point given as a JSON 3-array of K-number strings or integers.
pub fn parse_point_json(s: &str) -> Result<Vec3K> {
    let v: [KNum; 3] = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(v)
}

/// A point of P²_C with coordinates in some `K(λ)`, together with an optional
/// element whose unique fixed point in H²_C it is.
#[derive(Clone, Debug)]
pub struct Point {
    pub v: [AlgNum; 3],
    pub fixer: Option<GroupElt>,
}

impl Point {
    pub fn from_kvec(v: &Vec3K) -> Point {
        let f = NumField::base();
        Point {
            v: v.clone().map(|x| AlgNum::from_knum(&f, x)),
            fixer: None,
        }
    }

    pub fn from_ovec(v: &Vec3O) -> Point {
        Point::from_kvec(&to_kvec(v))
    }

    pub fn with_fixer(mut self, g: GroupElt) -> Point {
        self.fixer = Some(g);
        self
    }

    pub fn field(&self) -> &Arc<NumField> {
        self.v[0].field()
    }

    /// K-rational coordinates, when available.
    pub fn as_kvec(&self) -> Option<Vec3K> {
        Some([self.v[0].as_knum()?, self.v[1].as_knum()?, self.v[2].as_knum()?])
    }

    pub fn primitive(&self) -> Option<Vec3O> {
        self.as_kvec().and_then(|k| primitive_rep(&k).ok())
    }

    pub fn square_norm(&self) -> AlgNum {
        herm_alg(&self.v, &self.v)
    }

    pub fn apply(&self, g: &GroupElt) -> Point {
        Point {
            v: g.apply_alg(&self.v),
            fixer: self.fixer.as_ref().map(|h| h.conj_by(g)),
        }
    }

    /// Scales so that the third coordinate is 1.
    pub fn normalized(&self) -> Result<Point> {
        let inv = self.v[2].inv().ok_or(Error::AtInfinity)?;
        Ok(Point {
            v: [self.v[0].mul(&inv), self.v[1].mul(&inv), AlgNum::from_knum(self.field(), KNum::one())],
            fixer: self.fixer.clone(),
        })
    }

    pub fn is_proportional(&self, w: &[AlgNum; 3]) -> bool {
        (0..3).all(|i| {
            (i + 1..3).all(|j| self.v[i].mul(&w[j]).sub(&self.v[j].mul(&w[i])).is_zero())
        })
    }

    /// Projective equality, exact. Points over different fields are compared
    /// through a fixer element when one is known.
    pub fn same_point(&self, o: &Point) -> bool {
        if let (Some(a), Some(b)) = (self.primitive(), o.primitive()) {
            return a == b;
        }
        if crate::ring::same_field(self.field(), o.field()) {
            return self.is_proportional(&o.v);
        }
        if let Some(h) = &self.fixer {
            return o.is_proportional(&h.apply_alg(&o.v));
        }
        if let Some(h) = &o.fixer {
            return self.is_proportional(&h.apply_alg(&self.v));
        }
        false
    }

    /// Horospherical coordinates `(z, s, u)` with `t = s√7`, as elements of
    /// the coordinate field.
    pub fn horo(&self) -> Result<Horo> {
        let n = self.normalized()?;
        let z = n.v[1].clone();
        let zn = z.norm().expect("conjugation");
        let w = n.v[0].scale(&KNum::from_int(2)).add(&zn);
        let wc = w.conj().expect("conjugation");
        // s = (w − w̄)/(2i√7), u = −(w + w̄)/2
        let i7 = KNum::from(OInt::I_SQRT7);
        let s = w.sub(&wc).scale(&(KNum::from_int(2) * i7).inv().unwrap());
        let u = w.add(&wc).scale(&KNum::from_rat(Rat::new((-1).into(), 2.into())));
        Ok(Horo { z, s, u })
    }

    pub fn approx(&self) -> [Complex64; 3] {
        [self.v[0].approx(), self.v[1].approx(), self.v[2].approx()]
    }

    pub fn to_strings(&self) -> Vec<String> {
        match self.primitive() {
            Some(p) => p.iter().map(|x| x.to_string()).collect(),
            None => self.v.iter().map(|x| x.to_string()).collect(),
        }
    }
}

/// Horospherical coordinates over an arbitrary coordinate field.
#[derive(Clone, Debug)]
pub struct Horo {
    pub z: AlgNum,
    pub s: AlgNum,
    pub u: AlgNum,
}

impl Horo {
    /// Coordinates `(a, b)` with `z = a + bτ`, both real.
    pub fn ab(&self) -> (AlgNum, AlgNum) {
        let zc = self.z.conj().expect("conjugation");
        let b = self.z.sub(&zc).scale(&KNum::from(OInt::I_SQRT7).inv().unwrap());
        let a = self.z.sub(&b.scale(&KNum::tau()));
        (a, b)
    }

    pub fn approx(&self) -> (Complex64, f64, f64) {
        (self.z.approx(), self.s.to_f64(), self.u.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use num_traits::Zero;

    fn k(a: i64, b: i64) -> KNum {
        KNum::new(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn inner_products() {
        let e2 = [k(0, 0), k(1, 0), k(0, 0)];
        assert_eq!(herm_inner(&e2, &e2), k(1, 0));
        let v = [k(1, 0), k(0, 0), k(1, 0)];
        assert_eq!(herm_inner(&v, &v), k(2, 0));
        let w = [-KNum::from(OInt::TAU_BAR), k(0, 0), k(1, 0)];
        assert_eq!(herm_inner(&w, &w), k(-1, 0));
    }

    #[test]
    fn primitive_representatives() {
        assert_eq!(
            primitive_rep(&[k(2, 0), k(0, 0), k(2, 0)]).unwrap(),
            [OInt::ONE, OInt::ZERO, OInt::ONE]
        );
        let t = KNum::tau();
        assert_eq!(
            primitive_rep(&[t.clone(), &t * &t, k(0, 0)]).unwrap(),
            [OInt::ONE, OInt::TAU, OInt::ZERO]
        );
        let half = KNum::new(rat(0, 1), rat(1, 2));
        assert_eq!(
            primitive_rep(&[KNum::from_rat(rat(1, 2)), k(0, 0), half]).unwrap(),
            [OInt::ONE, OInt::ZERO, OInt::TAU]
        );
        assert_eq!(primitive_rep(&[k(0, 0), k(0, 0), k(0, 0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn depths() {
        assert_eq!(depth(&[k(0, 0), k(0, 0), k(1, 0)]).unwrap(), 1);
        let a2 = [k(2, 0), KNum::from(OInt::TAU_BAR), -KNum::tau()];
        assert_eq!(depth(&a2).unwrap(), 2);
        let a6 = [KNum::from(OInt::I_SQRT7), k(0, 0), k(2, 0)];
        assert_eq!(depth(&a6).unwrap(), 4);
        assert_eq!(depth(&[k(1, 0), k(0, 0), k(0, 0)]), Err(Error::DepthUndefined));
    }

    #[test]
    fn horospherical_coordinates() {
        let v = [-KNum::from(OInt::TAU_BAR), k(0, 0), k(1, 0)];
        let h = horo_coords(&v).unwrap();
        assert_eq!((h.z.clone(), h.s.clone(), h.u.clone()), (k(0, 0), rat(1, 1), rat(1, 1)));
        assert_eq!(primitive_rep(&lift(&h)).unwrap(), primitive_rep(&v).unwrap());
        let h = horo_coords(&[k(-1, 0), k(0, 0), k(1, 0)]).unwrap();
        assert_eq!((h.s.clone(), h.u.clone()), (rat(0, 1), rat(2, 1)));
        let h = horo_coords(&[k(0, 0), k(0, 0), k(1, 0)]).unwrap();
        assert!(h.z.is_zero() && h.s.is_zero() && h.u.is_zero());
        assert_eq!(horo_coords(&[k(1, 0), k(0, 0), k(0, 0)]), Err(Error::AtInfinity));
    }

    #[test]
    fn gamma_membership() {
        let i = [[k(0, 0), k(0, 0), k(1, 0)], [k(0, 0), k(-1, 0), k(0, 0)], [k(1, 0), k(0, 0), k(0, 0)]];
        assert!(is_in_gamma(&i));
        let r = [[k(1, 0), k(0, 0), k(0, 0)], [k(0, 0), k(-1, 0), k(0, 0)], [k(0, 0), k(0, 0), k(1, 0)]];
        assert!(is_in_gamma(&r));
        let d = [
            [k(2, 0), k(0, 0), k(0, 0)],
            [k(0, 0), k(1, 0), k(0, 0)],
            [k(0, 0), k(0, 0), KNum::from_rat(rat(1, 2))],
        ];
        assert!(!is_in_gamma(&d));
    }

    #[test]
    fn distances() {
        let p = [k(-1, 0), k(0, 0), k(1, 0)];
        let q = [k(-2, 0), k(0, 0), k(1, 0)];
        assert_eq!(dist_invariant(&p, &p).unwrap(), rat(1, 1));
        assert_eq!(dist_invariant(&p, &q).unwrap(), rat(9, 8));
        assert_eq!(dist_invariant(&q, &p).unwrap(), rat(9, 8));
        assert!(matches!(
            dist_invariant(&p, &[k(0, 0), k(1, 0), k(0, 0)]),
            Err(Error::NotNegative(_))
        ));
    }

    #[test]
    fn group_element_sign_and_inverse() {
        let a6 = GroupElt::from_rows([
            [OInt::I_SQRT7, OInt::ZERO, OInt::int(4)],
            [OInt::ZERO, OInt::ONE, OInt::ZERO],
            [OInt::int(2), OInt::ZERO, -OInt::I_SQRT7],
        ])
        .unwrap();
        assert!(a6.mul(&a6.inv()).is_identity());
        let neg = GroupElt::new(a6.lifts()[1]).unwrap();
        assert_eq!(neg, a6);
        assert!(a6.entry(0, 0) > OInt::ZERO);
    }

    #[test]
    fn algebraic_point_horo_matches_rational() {
        let v = [-KNum::from(OInt::TAU_BAR), k(0, 0), k(1, 0)];
        let p = Point::from_kvec(&v);
        let h = p.horo().unwrap();
        assert_eq!(h.s.as_knum().unwrap(), k(1, 0));
        assert_eq!(h.u.as_knum().unwrap(), k(1, 0));
        assert!(p.square_norm().as_knum().unwrap() == k(-1, 0));
    }
}

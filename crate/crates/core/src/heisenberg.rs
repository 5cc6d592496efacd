//! The cusp group Γ∞ acting on the Heisenberg group, the prism P and its
//! neighbours.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{rat_str, GroupElt, Mat3, Point};
use crate::ring::{AlgNum, KNum, OInt, Rat};

/// A boundary point `(z, t)` with `t = s√7`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisPt {
    pub z: KNum,
    #[serde(with = "rat_str")]
    pub s: Rat,
}

fn coeff_tau(x: &KNum) -> Rat {
    x.b.clone()
}

impl HeisPt {
    pub fn new(z: KNum, s: Rat) -> Self {
        HeisPt { z, s }
    }

    pub fn origin() -> Self {
        HeisPt::new(KNum::zero(), Rat::zero())
    }

    /// `(z, t)⋆(z′, t′) = (z + z′, t + t′ + 2 Im(z z̄′))`; in `s` units the
    /// correction is the τ-coefficient of `z z̄′`.
    pub fn mul(&self, o: &HeisPt) -> HeisPt {
        let c = coeff_tau(&(&self.z * &o.z.conj()));
        HeisPt::new(&self.z + &o.z, &self.s + &o.s + c)
    }

    pub fn inv(&self) -> HeisPt {
        HeisPt::new(-&self.z, -&self.s)
    }

    /// `z ↦ −z`
    pub fn rotate(&self) -> HeisPt {
        HeisPt::new(-&self.z, self.s.clone())
    }

    /// Coordinates `(a, b)` of `z = a + bτ`.
    pub fn ab(&self) -> (Rat, Rat) {
        (self.z.a.clone(), self.z.b.clone())
    }
}

impl fmt::Display for HeisPt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}·√7)", self.z, self.s)
    }
}

/// The matrix `T(z, t)` with `t = s√7`.
pub fn t_matrix(z: &KNum, s: &Rat) -> Result<GroupElt> {
    let i7 = KNum::from(OInt::I_SQRT7);
    let corner = (&i7.scale(s) - &KNum::from_rat(z.norm())).scale(&Rat::new(1.into(), 2.into()));
    let o = |x: &KNum| x.to_oint().ok_or(Error::NotInGroup);
    GroupElt::new([
        [OInt::ONE, o(&-z.conj())?, o(&corner)?],
        [OInt::ZERO, OInt::ONE, o(z)?],
        [OInt::ZERO, OInt::ZERO, OInt::ONE],
    ])
}

pub fn r_matrix() -> GroupElt {
    GroupElt::new_unchecked([
        [OInt::ONE, OInt::ZERO, OInt::ZERO],
        [OInt::ZERO, -OInt::ONE, OInt::ZERO],
        [OInt::ZERO, OInt::ZERO, OInt::ONE],
    ])
    .named("R")
}

pub fn t1() -> GroupElt {
    t_matrix(&KNum::one(), &Rat::one()).unwrap().named("T1")
}

pub fn ttau() -> GroupElt {
    t_matrix(&KNum::tau(), &Rat::zero()).unwrap().named("Ttau")
}

pub fn ttaubar() -> GroupElt {
    t_matrix(&KNum::from(OInt::TAU_BAR), &Rat::zero()).unwrap().named("Ttaubar")
}

pub fn tv() -> GroupElt {
    t_matrix(&KNum::zero(), &Rat::from_integer(2.into())).unwrap().named("Tv")
}

/// `T₁ᵐ Tτⁿ Rᵉ T_vˡ`, the normal form of an element of Γ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspElt {
    pub m: i64,
    pub n: i64,
    pub eps: u8,
    pub l: i64,
}

impl CuspElt {
    pub const ID: CuspElt = CuspElt { m: 0, n: 0, eps: 0, l: 0 };

    pub fn new(m: i64, n: i64, eps: u8, l: i64) -> Self {
        CuspElt { m, n, eps: eps & 1, l }
    }

    /// The translation part `T₁ᵐTτⁿT_vˡ` as a Heisenberg point.
    pub fn translation(&self) -> HeisPt {
        let (m, n) = (self.m as i128, self.n as i128);
        // (m, m)⋆(nτ, 0) = (m + nτ, m − mn)
        HeisPt::new(
            KNum::from(OInt::new(m, n)),
            Rat::from_integer((m - m * n + 2 * self.l as i128).into()),
        )
    }

    pub fn to_matrix(&self) -> GroupElt {
        let h = self.translation();
        let t = t_matrix(&h.z, &h.s).expect("cusp normal form is integral");
        let g = if self.eps == 1 { t.mul(&r_matrix()) } else { t };
        g.named(self.to_string())
    }

    /// Decodes an element of Γ∞; `None` when the matrix does not fix q∞.
    pub fn from_matrix(g: &GroupElt) -> Option<CuspElt> {
        if !g.fixes_infinity() {
            return None;
        }
        let m: &Mat3 = g.matrix();
        let eps = if m[1][1] == m[0][0] { 0 } else { 1 };
        let z = m[1][2];
        let zk = KNum::from(z);
        let w = &KNum::from(m[0][2]).scale(&Rat::from_integer(2.into())) + &KNum::from_rat(zk.norm());
        let s = coeff_tau(&w) / Rat::from_integer(2.into());
        let (mm, nn) = (z.a, z.b);
        let l2 = s - Rat::from_integer((mm - mm * nn).into());
        let l = l2 / Rat::from_integer(2.into());
        if !l.is_integer() {
            return None;
        }
        Some(CuspElt::new(mm as i64, nn as i64, eps, l.to_integer().to_i64()?))
    }

    pub fn mul(&self, o: &CuspElt) -> CuspElt {
        CuspElt::from_matrix(&self.to_matrix().mul(&o.to_matrix())).expect("Γ∞ is a group")
    }

    pub fn inv(&self) -> CuspElt {
        CuspElt::from_matrix(&self.to_matrix().inv()).expect("Γ∞ is a group")
    }

    /// Action on the Heisenberg group.
    pub fn act(&self, p: &HeisPt) -> HeisPt {
        let q = if self.eps == 1 { p.rotate() } else { p.clone() };
        self.translation().mul(&q)
    }

    pub fn is_identity(&self) -> bool {
        *self == CuspElt::ID
    }
}

impl fmt::Display for CuspElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        let mut push = |name: &str, k: i64| match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        };
        push("T1", self.m);
        push("Ttau", self.n);
        push("R", self.eps as i64);
        push("Tv", self.l);
        if parts.is_empty() {
            write!(f, "Id")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A side of the prism `P = D × [0, 2√7]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Facet {
    /// `a = 0`, paired with itself by TτR.
    A0,
    /// `b = 0`, mapped to itself by the glide reflection T₁R.
    B0,
    /// `a + b = 1`, paired with itself by T₁TτR.
    AB1,
    /// `t = 0`, paired with the top by T_v.
    Bottom,
    /// `t = 2√7`
    Top,
}

impl Facet {
    pub fn pairing(&self) -> CuspElt {
        match self {
            Facet::A0 => CuspElt::new(0, 1, 1, 0),
            Facet::B0 => CuspElt::new(1, 0, 1, 0),
            Facet::AB1 => CuspElt::new(1, 1, 1, 0),
            Facet::Bottom => CuspElt::new(0, 0, 0, 1),
            Facet::Top => CuspElt::new(0, 0, 0, -1),
        }
    }

    pub fn pairing_word(&self) -> &'static str {
        match self {
            Facet::A0 => "Ttau R",
            Facet::B0 => "T1 R",
            Facet::AB1 => "T1 Ttau R",
            Facet::Bottom => "Tv",
            Facet::Top => "Tv^-1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PrismStatus {
    Interior,
    Boundary(Vec<Facet>),
    Outside,
}

impl PrismStatus {
    pub fn is_inside(&self) -> bool {
        !matches!(self, PrismStatus::Outside)
    }

    pub fn facets(&self) -> &[Facet] {
        match self {
            PrismStatus::Boundary(f) => f,
            _ => &[],
        }
    }
}

/// Classifies from the signs of `a, b, 1 − a − b, s, 2 − s`.
fn status_from_signs(signs: [Ordering; 5]) -> PrismStatus {
    if signs.iter().any(|s| *s == Ordering::Less) {
        return PrismStatus::Outside;
    }
    let names = [Facet::A0, Facet::B0, Facet::AB1, Facet::Bottom, Facet::Top];
    let on: Vec<Facet> = signs
        .iter()
        .zip(names)
        .filter(|(s, _)| **s == Ordering::Equal)
        .map(|(_, f)| f)
        .collect();
    if on.is_empty() {
        PrismStatus::Interior
    } else {
        PrismStatus::Boundary(on)
    }
}

pub fn prism_status(h: &HeisPt) -> PrismStatus {
    let (a, b) = h.ab();
    let one = Rat::one();
    let two = Rat::from_integer(2.into());
    let sg = |x: Rat| x.cmp(&Rat::zero());
    status_from_signs([
        sg(a.clone()),
        sg(b.clone()),
        sg(&one - &a - &b),
        sg(h.s.clone()),
        sg(&two - &h.s),
    ])
}

/// Prism status of the horizontal projection of an arbitrary point.
pub fn prism_status_point(p: &Point) -> Result<PrismStatus> {
    let h = p.horo()?;
    let (a, b) = h.ab();
    let f = a.field().clone();
    let c = |x: i64| AlgNum::from_knum(&f, KNum::from_int(x as i128));
    Ok(status_from_signs([
        a.sign()?,
        b.sign()?,
        c(1).sub(&a).sub(&b).sign()?,
        h.s.sign()?,
        c(2).sub(&h.s).sign()?,
    ]))
}

fn int_of(x: &num_bigint::BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Invalid("coordinate too large to reduce".into()))
}

/// Moves a boundary point into P; returns the cusp element used and the image.
pub fn reduce_to_prism(h: &HeisPt) -> (CuspElt, HeisPt) {
    let (a, b) = h.ab();
    let k = a.floor().to_integer().to_i64().expect("coordinate range");
    let l = b.floor().to_integer().to_i64().expect("coordinate range");
    let mut g = CuspElt::new(-k, 0, 0, 0).mul(&CuspElt::new(0, -l, 0, 0));
    let mut p = g.act(h);
    let (a, b) = p.ab();
    if a + b > Rat::one() {
        let f = Facet::AB1.pairing();
        p = f.act(&p);
        g = f.mul(&g);
    }
    let q = (&p.s / Rat::from_integer(2.into())).floor().to_integer().to_i64().expect("range");
    let v = CuspElt::new(0, 0, 0, -q);
    (v.mul(&g), v.act(&p))
}

/// Same as [`reduce_to_prism`] on the horizontal projection of a point of
/// H²_C with arbitrary algebraic coordinates.
pub fn reduce_point_to_prism(p: &Point) -> Result<(CuspElt, Point)> {
    let h = p.horo()?;
    let (a, b) = h.ab();
    let k = int_of(&a.floor()?)?;
    let l = int_of(&b.floor()?)?;
    let mut g = CuspElt::new(-k, -l, 0, 0);
    // T₁^{-k}Tτ^{-l} differs from the normal form (−k, −l) by a power of T_v,
    // which does not move z
    let mut q = p.apply(&g.to_matrix());
    let h = q.horo()?;
    let (a, b) = h.ab();
    let f = a.field().clone();
    let one = AlgNum::from_knum(&f, KNum::one());
    if a.add(&b).sub(&one).sign()? == Ordering::Greater {
        let e = Facet::AB1.pairing();
        q = q.apply(&e.to_matrix());
        g = e.mul(&g);
    }
    let s = q.horo()?.s;
    let half = s.scale(&KNum::from_rat(Rat::new(1.into(), 2.into())));
    let qv = int_of(&half.floor()?)?;
    let v = CuspElt::new(0, 0, 0, -qv);
    Ok((v.mul(&g), q.apply(&v.to_matrix())))
}

/// The three vertices `0, 1, τ` of D.
fn d_vertices() -> [KNum; 3] {
    [KNum::zero(), KNum::one(), KNum::tau()]
}

/// An element of Γ∞ whose image of P meets P, with an exact common point.
#[derive(Clone, Debug, Serialize)]
pub struct Overlap {
    pub elt: CuspElt,
    pub witness: HeisPt,
}

/// Affine height function: the `s`-coordinate of the image of `(w, 0)`.
fn image_height(g: &CuspElt, w: &KNum) -> (KNum, Rat) {
    let im = g.act(&HeisPt::new(w.clone(), Rat::zero()));
    (im.z, im.s)
}

/// Exact test whether `g(P) ∩ P ≠ ∅`, with a witness point when nonempty.
pub fn prism_overlap(g: &CuspElt) -> Option<HeisPt> {
    let two = Rat::from_integer(2.into());
    // vertices of D ∩ gD: the triangles belong to an edge-to-edge tiling,
    // so the intersection is the hull of the shared vertices
    let shared: Vec<(KNum, Rat)> = d_vertices()
        .iter()
        .map(|w| image_height(g, w))
        .filter(|(z, _)| d_vertices().contains(z))
        .collect();
    if shared.is_empty() {
        return None;
    }
    // over a point z of D ∩ gD, g(P) spans s ∈ [f(z), f(z) + 2]; f is affine
    let inside = |f: &Rat| f >= &-two.clone() && f <= &two;
    let pick = |z: &KNum, f: &Rat| -> HeisPt {
        HeisPt::new(z.clone(), if f.is_negative() { Rat::zero() } else { f.clone() })
    };
    if let Some((z, f)) = shared.iter().find(|(_, f)| inside(f)) {
        return Some(pick(z, f));
    }
    let lo = shared.iter().find(|(_, f)| f < &-two.clone())?;
    let hi = shared.iter().find(|(_, f)| f > &two)?;
    // interpolate to f = 0 on the segment
    let lam = -&lo.1 / (&hi.1 - &lo.1);
    let z = &lo.0 + &(&hi.0 - &lo.0).scale(&lam);
    Some(pick(&z, &Rat::zero()))
}

/// Search box for cusp neighbours; the result is checked not to touch it.
const OVERLAP_BOX: i64 = 4;

/// All γ ∈ Γ∞ with γ(P) ∩ P ≠ ∅, sorted by normal form.
pub fn enumerate_cusp_overlaps() -> Vec<Overlap> {
    let b = OVERLAP_BOX;
    let mut out = vec![];
    for m in -b..=b {
        for n in -b..=b {
            for eps in 0..2 {
                for l in -b..=b {
                    let g = CuspElt::new(m, n, eps, l);
                    if let Some(w) = prism_overlap(&g) {
                        assert!(
                            m.abs() < b && n.abs() < b && l.abs() < b,
                            "overlap search box too small"
                        );
                        out.push(Overlap { elt: g, witness: w });
                    }
                }
            }
        }
    }
    out.sort_by_key(|o| o.elt);
    out
}

/// The nontrivial elements of finite order among the overlaps.
pub fn overlap_torsion(ov: &[Overlap]) -> Vec<Overlap> {
    ov.iter()
        .filter(|o| o.elt.eps == 1 && o.elt.translation().s.is_zero())
        .cloned()
        .collect()
}

/// Rewrites an element as `T₁ʲ Tτᵏ (T₁TτR)^ε T_vˡ`.
pub fn tiling_form(g: &CuspElt) -> (i64, i64, u8, i64) {
    let e = g.eps;
    let (j, k) = (g.m - e as i64, g.n - e as i64);
    let base = CuspElt::new(j, 0, 0, 0)
        .mul(&CuspElt::new(0, k, 0, 0))
        .mul(&if e == 1 { Facet::AB1.pairing() } else { CuspElt::ID });
    let rest = base.inv().mul(g);
    debug_assert!(rest.m == 0 && rest.n == 0 && rest.eps == 0);
    (j, k, e, rest.l)
}

/// Square of `T(w, t₀)R`, which is `T(0, 2t₀)`.
pub fn half_turn_square(w: &KNum, s0: &Rat) -> HeisPt {
    let h = HeisPt::new(w.clone(), s0.clone());
    h.mul(&h.rotate())
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspTorsion {
    pub family: String,
    pub k: i64,
    pub normal_form: CuspElt,
    pub matrix: GroupElt,
    pub order: Option<u32>,
}

/// Orders of `X T_vᵏ` for `X ∈ {R, T₁R, TτR, T₁TτR}` and `|k| ≤ kmax`.
pub fn cusp_torsion_classes(kmax: i64) -> Vec<CuspTorsion> {
    let fams = [
        ("R", CuspElt::new(0, 0, 1, 0)),
        ("T1 R", CuspElt::new(1, 0, 1, 0)),
        ("Ttau R", CuspElt::new(0, 1, 1, 0)),
        ("T1 Ttau R", CuspElt::new(1, 1, 1, 0)),
    ];
    let mut out = vec![];
    for (name, f) in fams {
        for k in -kmax..=kmax {
            let g = f.mul(&CuspElt::new(0, 0, 0, k));
            let t = g.translation();
            let sq = half_turn_square(&t.z, &t.s);
            debug_assert!(sq.z.is_zero());
            out.push(CuspTorsion {
                family: name.to_string(),
                k,
                normal_form: g,
                matrix: g.to_matrix(),
                order: sq.s.is_zero().then_some(2),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn hp(a: i64, b: i64, s: Rat) -> HeisPt {
        HeisPt::new(KNum::new(rat(a, 1), rat(b, 1)), s)
    }

    #[test]
    fn group_law_examples() {
        let p = hp(1, 0, rat(1, 1));
        assert_eq!(HeisPt::origin().mul(&p), p);
        assert_eq!(p.mul(&p), hp(2, 0, rat(2, 1)));
        let c = ttau().mul(&t1()).mul(&ttau().inv()).mul(&t1().inv());
        assert_eq!(c, tv());
    }

    #[test]
    fn normal_forms() {
        assert!(CuspElt::ID.to_matrix().is_identity());
        assert_eq!(CuspElt::new(0, 0, 1, 0).to_matrix(), r_matrix());
        assert_eq!(CuspElt::new(1, 0, 0, 0).to_matrix(), t1());
        let t = t1().matrix()[0][2];
        // (−1 + i√7)/2 = τ − 1
        assert_eq!(t, OInt::new(-1, 1));
        for m in -2..=2 {
            for n in -2..=2 {
                for e in 0..2 {
                    for l in -2..=2 {
                        let g = CuspElt::new(m, n, e, l);
                        assert_eq!(CuspElt::from_matrix(&g.to_matrix()), Some(g));
                    }
                }
            }
        }
        let w = t1().pow(2).mul(&ttau().pow(-3)).mul(&r_matrix()).mul(&tv().pow(5));
        let g = CuspElt::from_matrix(&w).unwrap();
        assert_eq!(g.to_matrix(), w);
    }

    #[test]
    fn action_matches_matrices() {
        let pts = [hp(0, 0, rat(0, 1)), hp(1, 2, rat(3, 2)), hp(-2, 1, rat(-5, 3))];
        for g in [CuspElt::new(1, -1, 1, 2), CuspElt::new(-3, 2, 0, -1), CuspElt::new(0, 1, 1, 0)] {
            for p in &pts {
                let lifted = crate::hermitian::lift(&crate::hermitian::HoroPoint {
                    z: p.z.clone(),
                    s: p.s.clone(),
                    u: Rat::zero(),
                });
                let img = crate::hermitian::horo_coords(&g.to_matrix().apply_k(&lifted)).unwrap();
                let q = g.act(p);
                assert_eq!((img.z, img.s), (q.z, q.s));
            }
        }
    }

    #[test]
    fn prism_reduction() {
        let p = hp(2, 3, rat(5, 1));
        let (g, q) = reduce_to_prism(&p);
        assert!(prism_status(&q).is_inside());
        assert_eq!(g.act(&p), q);
        let p = HeisPt::new(KNum::new(rat(0, 1), rat(1, 2)), rat(1, 2));
        let (g, q) = reduce_to_prism(&p);
        assert!(g.is_identity() && q == p);
        let p = hp(-1, 0, rat(-1, 1));
        let (g, q) = reduce_to_prism(&p);
        assert!(prism_status(&q).is_inside());
        assert_eq!(g.act(&p), q);
    }

    #[test]
    fn overlaps() {
        let ov = enumerate_cusp_overlaps();
        let elts: Vec<CuspElt> = ov.iter().map(|o| o.elt).collect();
        assert!(elts.contains(&CuspElt::ID));
        assert!(elts.contains(&CuspElt::new(0, 0, 1, 0)));
        assert!(elts.contains(&CuspElt::new(0, 1, 1, 0)));
        for o in &ov {
            assert!(prism_status(&o.witness).is_inside());
            assert!(prism_status(&o.elt.inv().act(&o.witness)).is_inside());
        }
        let mut tri: Vec<(i64, i64, u8)> = ov.iter().map(|o| (o.elt.m, o.elt.n, o.elt.eps)).collect();
        tri.dedup();
        for t in &tri {
            let ls: Vec<i64> = ov.iter().filter(|o| (o.elt.m, o.elt.n, o.elt.eps) == *t).map(|o| o.elt.l).collect();
            assert!(ls.len() <= 3 && ls.windows(2).all(|w| w[1] == w[0] + 1));
        }
        // D and the twelve triangles sharing a vertex with it
        assert_eq!(tri.len(), 13);
        let tors: Vec<CuspElt> = overlap_torsion(&ov).iter().map(|o| o.elt).collect();
        let r = r_matrix();
        let want = [
            r.clone(),
            r.conj_by(&t1()),
            r.conj_by(&ttau()),
            ttau().mul(&r),
            t1().mul(&ttau()).mul(&r),
        ];
        let mut want: Vec<CuspElt> = want.iter().map(|g| CuspElt::from_matrix(g).unwrap()).collect();
        want.sort();
        assert_eq!(tors, want);
    }

    #[test]
    fn cusp_family_orders() {
        let cl = cusp_torsion_classes(2);
        let ord = |f: &str, k: i64| cl.iter().find(|c| c.family == f && c.k == k).unwrap().order;
        assert_eq!(ord("R", 0), Some(2));
        assert_eq!(ord("Ttau R", 0), Some(2));
        assert_eq!(ord("T1 Ttau R", 0), Some(2));
        assert_eq!(ord("T1 R", 0), None);
        assert_eq!(ord("R", 1), None);
        assert_eq!(r_matrix().mul(&t1()).pow(2), tv());
    }
}

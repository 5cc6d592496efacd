//! Isometric spheres of the fourteen generators, their Γ∞-translates, and
//! reduction into Ω = F_Γ ∩ C_P.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gens::generator;
use crate::heisenberg::{
    enumerate_cusp_overlaps, prism_status_point, reduce_point_to_prism, CuspElt, HeisPt, Overlap,
    PrismStatus,
};
use crate::hermitian::{
    herm_alg, herm_inner, horo_coords, primitive_o, rat_str, to_kvec, GroupElt, HoroPoint, Point,
    Vec3O,
};
use crate::ring::{AlgNum, KNum, OInt, Rat};

/// `d⁴ = (|z−z′|² + |u−u′|)² + |t − t′ + 2 Im(z z̄′)|²`
pub fn cygan_dist4(p: &HoroPoint, q: &HoroPoint) -> Rat {
    let dz = &p.z - &q.z;
    let h = dz.norm() + (&p.u - &q.u).abs();
    let v = &p.s - &q.s + (&p.z * &q.z.conj()).b;
    &h * &h + v.clone() * v * Rat::from_integer(7.into())
}

fn cygan_dist4_f64(z: Complex64, s: f64, u: f64, c: Complex64, sc: f64) -> f64 {
    let h = (z - c).norm_sqr() + u;
    let v = 7f64.sqrt() * (s - sc) + 2.0 * (z * c.conj()).im;
    h * h + v * v
}

/// Position relative to a closed Cygan ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    /// In the open ball; the Ford inequality fails strictly.
    Interior,
    Boundary,
    Exterior,
}

fn side_of(c: Ordering) -> Side {
    match c {
        Ordering::Less => Side::Interior,
        Ordering::Equal => Side::Boundary,
        Ordering::Greater => Side::Exterior,
    }
}

/// The translate `α(I(A_j)) = I(αA_j)`.
#[derive(Clone, Debug, Serialize)]
pub struct IsomSphere {
    pub j: usize,
    pub alpha: CuspElt,
    pub elt: GroupElt,
    pub center: HeisPt,
    #[serde(skip)]
    pub cvec: Vec3O,
    pub a31norm: i128,
    #[serde(with = "rat_str")]
    pub r4: Rat,
}

impl IsomSphere {
    pub fn new(j: usize, alpha: CuspElt) -> IsomSphere {
        let elt = alpha.to_matrix().mul(&generator(j));
        let cvec = primitive_o(elt.col(0));
        let h = horo_coords(&to_kvec(&cvec)).expect("sphere centre is finite");
        let a31norm = cvec[2].norm();
        IsomSphere {
            j,
            alpha,
            elt,
            center: HeisPt::new(h.z, h.s),
            cvec,
            a31norm,
            r4: Rat::new(4.into(), a31norm.into()),
        }
    }

    pub fn label(&self) -> String {
        if self.alpha.is_identity() {
            format!("I(A{})", self.j)
        } else {
            format!("{}(I(A{}))", self.alpha, self.j)
        }
    }

    fn center_f64(&self) -> (Complex64, f64) {
        let (re, im) = self.center.z.to_f64_pair();
        (Complex64::new(re, im), self.center.s.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact membership of a point given in horospherical coordinates.
    pub fn membership(&self, h: &HoroPoint) -> Side {
        let c = HoroPoint {
            z: self.center.z.clone(),
            s: self.center.s.clone(),
            u: Rat::zero(),
        };
        side_of(cygan_dist4(h, &c).cmp(&self.r4))
    }

    /// Exact side of an arbitrary point, from `N(⟨x, c⟩)` against `N(x₃)`.
    pub fn side(&self, x: &Point) -> Result<Side> {
        if let Some(k) = x.as_kvec() {
            let lhs = herm_inner(&k, &to_kvec(&self.cvec)).norm();
            return Ok(side_of(lhs.cmp(&k[2].norm())));
        }
        let f = x.field();
        let c = self.cvec.map(|o| AlgNum::from_knum(f, KNum::from(o)));
        let ip = herm_alg(&x.v, &c);
        let lhs = ip.norm().ok_or_else(|| Error::Invalid("no conjugation".into()))?;
        let rhs = x.v[2].norm().ok_or_else(|| Error::Invalid("no conjugation".into()))?;
        Ok(side_of(lhs.sub(&rhs).sign()?))
    }

    /// `N(⟨x, c⟩)/N(x₃)`, below 1 exactly inside the ball.
    fn ratio(&self, x: &Point) -> AlgNum {
        let f = x.field();
        let c = self.cvec.map(|o| AlgNum::from_knum(f, KNum::from(o)));
        let ip = herm_alg(&x.v, &c);
        ip.norm().unwrap().div(&x.v[2].norm().unwrap()).unwrap()
    }
}

impl fmt::Display for IsomSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Side of `x` relative to `I(γ)`, centred at `γ(q∞)`.
pub fn ford_side(x: &Point, g: &GroupElt) -> Result<Side> {
    if g.fixes_infinity() {
        return Err(Error::InCuspGroup);
    }
    let c = primitive_o(g.col(0));
    let f = x.field();
    let ca = c.map(|o| AlgNum::from_knum(f, KNum::from(o)));
    let lhs = herm_alg(&x.v, &ca).norm().ok_or(Error::Invalid("no conjugation".into()))?;
    let rhs = x.v[2].norm().ok_or(Error::Invalid("no conjugation".into()))?;
    Ok(side_of(lhs.sub(&rhs).sign()?))
}

/// Squared Euclidean distance from `p` to D = hull{0, 1, τ}.
pub fn dist2_to_d(p: &KNum) -> Rat {
    let (a, b) = (&p.a, &p.b);
    if !a.is_negative() && !b.is_negative() && a + b <= Rat::one() {
        return Rat::zero();
    }
    let verts = [KNum::zero(), KNum::one(), KNum::tau()];
    (0..3)
        .map(|i| {
            let (p0, p1) = (&verts[i], &verts[(i + 1) % 3]);
            let u = p1 - p0;
            let w = p - p0;
            let t = (&w * &u.conj()).re() / u.norm();
            let t = t.clamp(Rat::zero(), Rat::one());
            (&w - &u.scale(&t)).norm()
        })
        .min()
        .unwrap()
}

/// Values of `coeff_τ(z c̄)` at the vertices of D, as `(min, max)`.
fn twist_range(c: &KNum) -> (Rat, Rat) {
    let vals: Vec<Rat> = [KNum::zero(), KNum::one(), KNum::tau()]
        .iter()
        .map(|z| (z * &c.conj()).b)
        .collect();
    (
        vals.iter().min().unwrap().clone(),
        vals.iter().max().unwrap().clone(),
    )
}

/// Necessary condition for a ball of radius `r` centred at `c` to meet the
/// cone over P: `dist(c, D)⁴ ≤ r⁴` and `dist(s_c, [lo, hi])² ≤ r⁴/7`.
fn may_meet_cone(c: &HeisPt, r4: &Rat) -> bool {
    let d2 = dist2_to_d(&c.z);
    if &(&d2 * &d2) > r4 {
        return false;
    }
    let (lo, hi) = twist_range(&c.z);
    let hi = hi + Rat::from_integer(2.into());
    let gap = if c.s < lo {
        &lo - &c.s
    } else if c.s > hi {
        &c.s - &hi
    } else {
        Rat::zero()
    };
    &gap * &gap * Rat::from_integer(7.into()) <= *r4
}

const TRANSLATE_BOX: i64 = 6;

/// A superset of `{α ∈ Γ∞ : α(I(A_j)) ∩ C_P ≠ ∅}`, the complement of E_j.
pub fn enumerate_cone_translates(j: usize) -> Vec<CuspElt> {
    let base = IsomSphere::new(j, CuspElt::ID);
    let b = TRANSLATE_BOX;
    let mut out = vec![];
    for eps in 0..2u8 {
        for m in -b..=b {
            for n in -b..=b {
                let a0 = CuspElt::new(m, n, eps, 0);
                let c0 = a0.act(&base.center);
                if {
                    let d2 = dist2_to_d(&c0.z);
                    &d2 * &d2 > base.r4
                } {
                    continue;
                }
                assert!(m.abs() < b && n.abs() < b, "translate box too small");
                // r²/√7 < 1, so two steps of T_v past the interval suffice
                let (lo, hi) = twist_range(&c0.z);
                let lmin = ((&lo - &c0.s) / Rat::from_integer(2.into())).floor().to_integer();
                let lmax = ((&hi - &c0.s) / Rat::from_integer(2.into())).ceil().to_integer();
                let lmin = lmin.to_i64().unwrap() - 2;
                let lmax = lmax.to_i64().unwrap() + 3;
                for l in lmin..=lmax {
                    let c = HeisPt::new(c0.z.clone(), &c0.s + Rat::from_integer((2 * l).into()));
                    if may_meet_cone(&c, &base.r4) {
                        assert!(l > lmin && l < lmax, "vertical range too small");
                        out.push(CuspElt::new(m, n, eps, l));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// All spheres that can meet C_P, one per centre, in `(j, α)` order.
pub fn candidate_spheres() -> &'static [IsomSphere] {
    static SPHERES: OnceLock<Vec<IsomSphere>> = OnceLock::new();
    SPHERES.get_or_init(|| {
        let mut seen = std::collections::HashSet::new();
        let mut out = vec![];
        for j in 1..=14 {
            for a in enumerate_cone_translates(j) {
                let s = IsomSphere::new(j, a);
                if seen.insert(s.cvec) {
                    out.push(s);
                }
            }
        }
        out
    })
}

fn horo_f64(x: &Point) -> Option<(Complex64, f64, f64)> {
    let v = x.approx();
    let z = v[1] / v[2];
    let w = v[0] / v[2] * 2.0 + z.norm_sqr();
    let r = (z, w.im / 7f64.sqrt(), -w.re);
    (r.0.re.is_finite() && r.1.is_finite() && r.2.is_finite()).then_some(r)
}

/// Candidate spheres whose closed ball may contain `x`, by a floating-point
/// screen with a wide margin.
fn near_spheres(x: &Point) -> Vec<&'static IsomSphere> {
    let all = candidate_spheres();
    match horo_f64(x) {
        Some((z, s, u)) => all
            .iter()
            .filter(|sp| {
                let (c, sc) = sp.center_f64();
                let r4 = sp.r4.to_f64().unwrap();
                cygan_dist4_f64(z, s, u, c, sc) <= r4 * (1.0 + 1e-6) + 1e-9
            })
            .collect(),
        None => all.iter().collect(),
    }
}

/// Spheres whose closed ball contains `x`, with their side.
pub fn spheres_containing(x: &Point) -> Result<Vec<(IsomSphere, Side)>> {
    let mut out = vec![];
    for s in near_spheres(x) {
        let side = s.side(x)?;
        if side != Side::Exterior {
            out.push((s.clone(), side));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaStatus {
    pub prism: PrismStatus,
    pub spheres: Vec<(String, Side)>,
}

impl OmegaStatus {
    pub fn inside(&self) -> bool {
        self.prism.is_inside() && self.spheres.iter().all(|(_, s)| *s != Side::Interior)
    }
}

pub fn omega_status(x: &Point) -> Result<OmegaStatus> {
    Ok(OmegaStatus {
        prism: prism_status_point(x)?,
        spheres: spheres_containing(x)?
            .into_iter()
            .map(|(s, side)| (s.label(), side))
            .collect(),
    })
}

fn height(x: &Point) -> Result<AlgNum> {
    Ok(x.horo()?.u)
}

fn simplify(x: Point) -> Result<Point> {
    if let Some(p) = x.primitive() {
        let fixer = x.fixer.clone();
        let mut q = Point::from_ovec(&p);
        q.fixer = fixer;
        return Ok(q);
    }
    x.normalized()
}

/// Moves `x` into Ω; returns `(g, g·x)`.
pub fn reduce_to_domain(x: &Point, cfg: &Config) -> Result<(GroupElt, Point)> {
    if x.square_norm().sign()? != Ordering::Less {
        return Err(Error::NotNegative(x.square_norm().to_string()));
    }
    let mut g = GroupElt::identity();
    let mut y = simplify(x.clone())?;
    for _ in 0..cfg.max_reduce_iters {
        let (c, z) = reduce_point_to_prism(&y)?;
        if !c.is_identity() {
            g = c.to_matrix().mul(&g);
        }
        y = simplify(z)?;
        let mut best: Option<(&IsomSphere, AlgNum)> = None;
        for s in near_spheres(&y) {
            if s.side(&y)? != Side::Interior {
                continue;
            }
            let r = s.ratio(&y);
            let better = match &best {
                None => true,
                Some((_, b)) => r.sub(b).sign()? == Ordering::Less,
            };
            if better {
                best = Some((s, r));
            }
        }
        let Some((s, _)) = best else {
            return Ok((g, y));
        };
        let h0 = height(&y)?;
        let step = s.elt.inv();
        let next = simplify(y.apply(&step))?;
        let h1 = height(&next)?;
        if h1.sub(&h0).sign()? != Ordering::Greater {
            return Err(Error::Invalid(format!("height did not increase at {}", s.label())));
        }
        g = step.mul(&g);
        y = next;
    }
    Err(Error::IterationLimit(cfg.max_reduce_iters))
}

/// `γ ∈ Γ∞` with `γ(P) ∩ P ≠ ∅`, cached.
pub fn cusp_overlaps() -> &'static [Overlap] {
    static OV: OnceLock<Vec<Overlap>> = OnceLock::new();
    OV.get_or_init(enumerate_cusp_overlaps)
}

/// All `γ ∈ Γ` with `γ x₁ = x₂`, for `x₁, x₂ ∈ Ω`.
///
/// Such γ is either a cusp element from the overlap list or of the form
/// `δ ρ γ_S⁻¹` with `x₁` on the sphere S, ρ the prism reduction of
/// `γ_S⁻¹ x₁` and δ again an overlap element.
pub fn elements_mapping(x1: &Point, x2: &Point) -> Result<Vec<GroupElt>> {
    let mut out = std::collections::BTreeSet::new();
    let try_cusp = |pre: &GroupElt, y: &Point, out: &mut std::collections::BTreeSet<GroupElt>| {
        for o in cusp_overlaps() {
            let d = o.elt.to_matrix();
            if y.apply(&d).same_point(x2) {
                out.insert(d.mul(pre));
            }
        }
    };
    try_cusp(&GroupElt::identity(), x1, &mut out);
    for (s, side) in spheres_containing(x1)? {
        if side != Side::Boundary {
            continue;
        }
        let step = s.elt.inv();
        let y = x1.apply(&step);
        let (rho, z) = reduce_point_to_prism(&y)?;
        let pre = rho.to_matrix().mul(&step);
        try_cusp(&pre, &z, &mut out);
    }
    Ok(out.into_iter().collect())
}

/// Pairs `(j, k)` with `A_j A_k = Id`.
pub const INVERSE_PAIRS: [(usize, usize); 14] = [
    (1, 1),
    (2, 3),
    (3, 2),
    (4, 5),
    (5, 4),
    (6, 6),
    (7, 7),
    (8, 8),
    (9, 14),
    (14, 9),
    (10, 11),
    (11, 10),
    (12, 13),
    (13, 12),
];

/// Rational upper bound for `r = (4/N)^{1/4}`.
fn radius_upper(n: i128) -> Rat {
    let r = (4.0 / n as f64).powf(0.25);
    let scaled = ((r + 1e-9) * 1e12).ceil() as i64;
    Rat::new(scaled.into(), 1_000_000_000_000i64.into())
}

const TJK_BOX: i64 = 8;

/// A superset of `{α ∈ Γ∞ : α(I(A_j)) ∩ I(A_k) ≠ ∅}` for `A_j A_k = Id`.
pub fn enumerate_tjk(j: usize, k: usize) -> Result<Vec<CuspElt>> {
    if !(1..=14).contains(&j) || !(1..=14).contains(&k) || !generator(j).mul(&generator(k)).is_identity() {
        return Err(Error::InvalidPair(j, k));
    }
    let sj = IsomSphere::new(j, CuspElt::ID);
    let sk = IsomSphere::new(k, CuspElt::ID);
    let rsum = radius_upper(sj.a31norm) + radius_upper(sk.a31norm);
    let bound = rsum.clone() * &rsum * &rsum * &rsum;
    let ck = HoroPoint { z: sk.center.z.clone(), s: sk.center.s.clone(), u: Rat::zero() };
    let b = TJK_BOX;
    let mut out = vec![];
    for eps in 0..2u8 {
        for m in -b..=b {
            for n in -b..=b {
                for l in -b..=b {
                    let a = CuspElt::new(m, n, eps, l);
                    let c = a.act(&sj.center);
                    let cj = HoroPoint { z: c.z, s: c.s, u: Rat::zero() };
                    if cygan_dist4(&cj, &ck) <= bound {
                        assert!(
                            m.abs() < b && n.abs() < b && l.abs() < b,
                            "search box too small"
                        );
                        out.push(a);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The inverse index of `A_j` in the table.
pub fn inverse_index(j: usize) -> usize {
    match j {
        1 => 1,
        2 => 3,
        3 => 2,
        4 => 5,
        5 => 4,
        6 => 6,
        7 => 7,
        8 => 8,
        9 => 14,
        14 => 9,
        10 => 11,
        11 => 10,
        12 => 13,
        13 => 12,
        _ => panic!("generator index out of range"),
    }
}

/// Elements of O₇ of norm `d`.
pub fn elements_of_norm(d: i128) -> Vec<OInt> {
    // 4N(a + bτ) = (2a + b)² + 7b²
    let bmax = ((4 * d / 7) as f64).sqrt() as i128 + 1;
    let mut out = vec![];
    for b in -bmax..=bmax {
        let rest = 4 * d - 7 * b * b;
        if rest < 0 {
            continue;
        }
        let r = (rest as f64).sqrt() as i128;
        for s in [r - 1, r, r + 1] {
            if s >= 0 && s * s == rest {
                for x in if s == 0 { vec![0] } else { vec![s, -s] } {
                    if (x - b) % 2 == 0 {
                        out.push(OInt::new((x - b) / 2, b));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A primitive null vector with `N(v₃) = d`, if one exists.
///
/// Translations in Γ∞ move `v₂` by multiples of `v₃`, so `v₂` runs over
/// residues mod `v₃`. The null condition `Tr(v₁ v̄₃) = −N(v₂)` is linear in
/// the coordinates of `v₁`, and primitivity is periodic along its solutions.
pub fn depth_witness(d: i128) -> Option<Vec3O> {
    use num_integer::Integer;
    for v3 in elements_of_norm(d) {
        let w = v3.conj();
        let (p, q) = (2 * w.a + w.b, w.a - 3 * w.b);
        let eg = p.extended_gcd(&q);
        let g = eg.gcd;
        for a2 in 0..d {
            for b2 in 0..d {
                let v2 = OInt::new(a2, b2);
                let rhs = -v2.norm();
                if rhs % g != 0 {
                    continue;
                }
                let k = rhs / g;
                let base = OInt::new(eg.x * k, eg.y * k);
                let step = OInt::new(q / g, -p / g);
                let common = OInt::gcd(&v2, &v3).expect("v3 nonzero");
                for t in 0..common.norm().max(1) {
                    let v1 = base + step.scale(t);
                    let unit = OInt::gcd(&v1, &common).map(|c| c.norm() == 1).unwrap_or(false);
                    if unit {
                        return Some([v1, v2, v3]);
                    }
                }
            }
        }
    }
    None
}

/// Depths `1..=max` of primitive null vectors.
pub fn realizable_depths(max: i128) -> Vec<i128> {
    (1..=max).filter(|&d| depth_witness(d).is_some()).collect()
}

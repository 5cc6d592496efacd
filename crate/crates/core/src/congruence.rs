//! Reduction modulo the primes `⟨i√7⟩` and `⟨τ⟩` of O₇.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gens::ab_lifts;
use crate::heisenberg::{r_matrix, t1, ttau, tv};
use crate::hermitian::{GroupElt, Mat3};
use crate::torsion::TorsionClasses;

pub type FpMat = [[u8; 3]; 3];

/// `O₇ → F₇` with `τ ↦ 4`, or `O₇ → F₂` with `τ ↦ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ideal {
    Isqrt7,
    Tau,
}

impl Ideal {
    pub fn p(self) -> u8 {
        match self {
            Ideal::Isqrt7 => 7,
            Ideal::Tau => 2,
        }
    }

    pub fn tau_image(self) -> u8 {
        match self {
            Ideal::Isqrt7 => 4,
            Ideal::Tau => 0,
        }
    }

    /// `x² − x + 2 ≡ 0` at the image of τ.
    pub fn is_ring_map(self) -> bool {
        let (p, t) = (self.p() as i64, self.tau_image() as i64);
        (t * t - t + 2).rem_euclid(p) == 0
    }
}

impl FromStr for Ideal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ideal> {
        match s {
            "isqrt7" => Ok(Ideal::Isqrt7),
            "tau" => Ok(Ideal::Tau),
            _ => Err(Error::Parse(format!("unknown ideal {s:?}, expected isqrt7 or tau"))),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ideal::Isqrt7 => "isqrt7",
            Ideal::Tau => "tau",
        })
    }
}

/// Reduces the sign-canonical matrix of `g`.
pub fn reduce_mod(g: &GroupElt, r: Ideal) -> FpMat {
    reduce_lift(g.matrix(), r)
}

pub fn reduce_lift(m: &Mat3, r: Ideal) -> FpMat {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].residue(r.p() as i64, r.tau_image() as i64) as u8))
}

pub fn fp_mul(a: &FpMat, b: &FpMat, p: u8) -> FpMat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| ((0..3).map(|k| a[i][k] as u32 * b[k][j] as u32).sum::<u32>() % p as u32) as u8)
    })
}

pub fn fp_identity() -> FpMat {
    std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u8))
}

pub fn fp_neg(a: &FpMat, p: u8) -> FpMat {
    a.map(|r| r.map(|x| (p - x) % p))
}

pub fn is_scalar(a: &FpMat) -> bool {
    (0..3).all(|i| (0..3).all(|j| if i == j { a[i][i] == a[0][0] } else { a[i][j] == 0 }))
}

/// Order in GL(3, F_p).
pub fn fp_order(a: &FpMat, p: u8) -> u32 {
    fp_order_until(a, p, |m| *m == fp_identity())
}

/// Order in PGL(3, F_p).
pub fn fp_proj_order(a: &FpMat, p: u8) -> u32 {
    fp_order_until(a, p, is_scalar)
}

fn fp_order_until(a: &FpMat, p: u8, done: impl Fn(&FpMat) -> bool) -> u32 {
    let mut x = *a;
    let mut n = 1;
    while !done(&x) {
        x = fp_mul(&x, a, p);
        n += 1;
    }
    n
}

#[derive(Clone, Debug)]
pub struct FpMatGroup {
    pub p: u8,
    pub generators: Vec<FpMat>,
    pub elements: BTreeSet<FpMat>,
}

impl FpMatGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn center(&self) -> Vec<FpMat> {
        self.elements
            .iter()
            .filter(|z| self.generators.iter().all(|g| fp_mul(z, g, self.p) == fp_mul(g, z, self.p)))
            .copied()
            .collect()
    }

    pub fn scalars(&self) -> usize {
        self.elements.iter().filter(|m| is_scalar(m)).count()
    }

    /// Order of the image in PGL(3, F_p).
    pub fn proj_order(&self) -> usize {
        self.order() / self.scalars()
    }

    pub fn contains(&self, m: &FpMat) -> bool {
        self.elements.contains(m)
    }
}

/// Closure of the reduced generators.
pub fn image_group(gens: &[Mat3], r: Ideal, cap: usize) -> Result<FpMatGroup> {
    let p = r.p();
    let generators: Vec<FpMat> = gens.iter().map(|g| reduce_lift(g, r)).collect();
    let mut elements = BTreeSet::from([fp_identity()]);
    let mut queue = VecDeque::from([fp_identity()]);
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y = fp_mul(&x, g, p);
            if elements.insert(y) {
                if elements.len() > cap {
                    return Err(Error::ClosureCap(cap));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(FpMatGroup { p, generators, elements })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCert {
    pub class: String,
    pub order: u32,
    pub image_proj_order: u32,
    /// Orders of the images of both signs of the matrix in GL(3, F_p).
    pub image_linear_orders: [u32; 2],
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspCert {
    pub tv_image_order: u32,
    /// `φ(T₁R) φ(T_v)^k` is not scalar, for `k = 0, 1, 2, 3`.
    pub products_nontrivial: Vec<bool>,
    /// No `T(z, s)R` lies in the kernel: `φ(R)` is outside the image of the
    /// translations, up to scalars.
    pub no_rotation_in_kernel: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub ideal: Ideal,
    pub p: u8,
    pub tau_image: u8,
    pub phi_a: FpMat,
    pub phi_b: FpMat,
    /// `⟨φ(A), φ(B)⟩` for the printed signs of `A` and `B`.
    pub order: usize,
    pub proj_order: usize,
    pub center_order: usize,
    /// Image of the full preimage of Γ in U(J, O₇), which contains `−Id`.
    pub full_preimage_order: usize,
    pub classes: Vec<ClassCert>,
    pub cusp: CuspCert,
    pub torsion_free: bool,
    pub cusp_torsion_free: bool,
}

fn class_cert(class: String, g: &GroupElt, n: u32, r: Ideal) -> ClassCert {
    let p = r.p();
    let m = reduce_mod(g, r);
    let image_proj_order = fp_proj_order(&m, p);
    ClassCert {
        class,
        order: n,
        image_proj_order,
        image_linear_orders: [fp_order(&m, p), fp_order(&fp_neg(&m, p), p)],
        pass: image_proj_order == n,
    }
}

fn cusp_cert(r: Ideal, cap: usize) -> Result<CuspCert> {
    let p = r.p();
    let tv_m = reduce_mod(&tv(), r);
    let t1r = reduce_mod(&t1().mul(&r_matrix()), r);
    let mut products_nontrivial = vec![];
    let mut x = t1r;
    for _ in 0..4 {
        products_nontrivial.push(!is_scalar(&x));
        x = fp_mul(&x, &tv_m, p);
    }
    let translations = image_group(&[t1(), ttau(), t1().inv(), ttau().inv()].map(|g| *g.matrix()), r, cap)?;
    let rinv = reduce_mod(&r_matrix().inv(), r);
    let no_rotation_in_kernel = !(1..p).any(|c| {
        let s = rinv.map(|row| row.map(|x| ((x as u32 * c as u32) % p as u32) as u8));
        translations.contains(&s)
    });
    let pass = products_nontrivial.iter().all(|&b| b) && no_rotation_in_kernel;
    Ok(CuspCert {
        tv_image_order: fp_order(&tv_m, p),
        products_nontrivial,
        no_rotation_in_kernel,
        pass,
    })
}

/// Image of `⟨A, B⟩`, and whether each torsion class keeps its order.
pub fn torsion_free_certificate(r: Ideal, classes: &TorsionClasses, cap: usize) -> Result<Certificate> {
    let [a, b] = ab_lifts();
    let group = image_group(&[a, b], r, cap)?;
    let minus = *GroupElt::identity().lifts().last().expect("two lifts");
    let full = image_group(&[a, b, minus], r, cap)?;
    let mut certs = vec![];
    for (i, c) in classes.reflections.iter().enumerate() {
        certs.push(class_cert(format!("reflection {i} (polar norm {})", c.polar_norm), &c.rep, 2, r));
    }
    for (i, c) in classes.isolated.iter().enumerate() {
        certs.push(class_cert(format!("isolated {i} (order {})", c.order), &c.rep, c.order, r));
    }
    let cusp = cusp_cert(r, cap)?;
    Ok(Certificate {
        ideal: r,
        p: r.p(),
        tau_image: r.tau_image(),
        phi_a: reduce_lift(&a, r),
        phi_b: reduce_lift(&b, r),
        order: group.order(),
        proj_order: group.proj_order(),
        center_order: group.center().len(),
        full_preimage_order: full.order(),
        torsion_free: certs.iter().all(|c| c.pass),
        cusp_torsion_free: cusp.pass,
        classes: certs,
        cusp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens::{a_matrix, b_matrix};

    #[test]
    fn residue_maps() {
        assert!(Ideal::Isqrt7.is_ring_map());
        assert!(Ideal::Tau.is_ring_map());
        assert_eq!(reduce_mod(&GroupElt::identity(), Ideal::Isqrt7), fp_identity());
    }

    #[test]
    fn printed_images() {
        let s = |m: [[i64; 3]; 3]| m.map(|r| r.map(|x| x.rem_euclid(7) as u8));
        let [a, b] = ab_lifts();
        assert_eq!(reduce_lift(&a, Ideal::Isqrt7), s([[1, 0, 0], [-1, 1, 0], [3, 1, 1]]));
        assert_eq!(reduce_lift(&b, Ideal::Isqrt7), s([[1, 4, -1], [0, -1, 4], [0, 0, 1]]));
        assert_eq!(GroupElt::new(a).unwrap(), a_matrix());
        assert_eq!(GroupElt::new(b).unwrap(), b_matrix());
    }

    #[test]
    fn image_orders() {
        let ab = ab_lifts();
        let g = image_group(&ab, Ideal::Isqrt7, 10_000).unwrap();
        assert_eq!(g.order(), 336);
        assert_eq!(g.center().len(), 1);
        assert_eq!(336 % 84, 0);
        let h = image_group(&ab, Ideal::Tau, 10_000).unwrap();
        assert_eq!(h.order(), 168);
        assert!(image_group(&ab, Ideal::Isqrt7, 100).is_err());
    }
}

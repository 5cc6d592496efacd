//! Stabilizers of the mirrors of `R` and of `TτR`.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ford::reduce_to_domain;
use crate::gens::{generator, i_matrix, s1_matrix, s2_matrix};
use crate::heisenberg::{r_matrix, t1, tv};
use crate::hermitian::{
    canonical_vec, herm_inner, herm_o, is_in_gamma, norm_o, primitive_o, to_kvec, GroupElt, Vec3K, Vec3O,
};
use crate::ring::{KNum, OInt};
use crate::tables::fixes_kvec;
use crate::torsion::{classify_elliptic, make_reflection, projective_order, stabilizer, Elliptic};
use crate::words::parse_word;

/// A complex line given by its polar vector, with a basis of `polar⊥`.
#[derive(Clone, Debug, Serialize)]
pub struct MirrorContext {
    pub name: String,
    pub polar: Vec3O,
    pub basis: [Vec3O; 2],
}

impl MirrorContext {
    /// Mirror of `R`: `e₂⊥`.
    pub fn of_r() -> MirrorContext {
        let (o, z) = (OInt::ONE, OInt::ZERO);
        MirrorContext {
            name: "R".into(),
            polar: [z, o, z],
            basis: [[o, z, z], [z, z, o]],
        }
    }

    /// Mirror `L` of `TτR`: `(1, −τ, 0)⊥`.
    pub fn of_l() -> MirrorContext {
        let (o, z) = (OInt::ONE, OInt::ZERO);
        MirrorContext {
            name: "L".into(),
            polar: [o, -OInt::TAU, z],
            basis: [[o, z, z], [z, o, OInt::TAU_BAR]],
        }
    }

    /// The form restricted to the basis is indefinite and the basis is
    /// orthogonal to the polar vector.
    pub fn is_valid(&self) -> bool {
        let [b1, b2] = &self.basis;
        let g12 = herm_o(b1, b2);
        let det = norm_o(b1) * norm_o(b2) - g12.norm();
        det < 0 && self.basis.iter().all(|b| herm_o(b, &self.polar).is_zero())
    }
}

fn proportional(v: &Vec3K, w: &Vec3K) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| (&v[i] * &w[j] - &v[j] * &w[i]).is_zero()))
}

/// `γ` maps the mirror to itself, i.e. fixes its polar vector projectively.
pub fn preserves_mirror(g: &GroupElt, ctx: &MirrorContext) -> bool {
    fixes_kvec(g, &to_kvec(&ctx.polar))
}

/// `γ` acts on the mirror as the identity: it is a scalar on `polar⊥`.
pub fn trivial_on_mirror(g: &GroupElt, ctx: &MirrorContext) -> bool {
    let b: Vec<Vec3K> = ctx.basis.iter().map(to_kvec).collect();
    let w: Vec<Vec3K> = b.iter().map(|v| g.apply_k(v)).collect();
    if !proportional(&w[0], &b[0]) || !proportional(&w[1], &b[1]) {
        return false;
    }
    let ratio = |w: &Vec3K, v: &Vec3K| {
        let i = (0..3).find(|&i| !v[i].is_zero()).unwrap();
        &w[i] / &v[i]
    };
    ratio(&w[0], &b[0]) == ratio(&w[1], &b[1])
}

/// Order of the action on the mirror, up to `max`.
pub fn order_on_mirror(g: &GroupElt, ctx: &MirrorContext, max: u32) -> Option<u32> {
    let mut p = g.clone();
    for n in 1..=max {
        if trivial_on_mirror(&p, ctx) {
            return Some(n);
        }
        p = p.checked_mul(g)?;
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool) -> Check {
        Check { name: name.into(), pass, detail: None }
    }

    fn with(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: Some(detail.into()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitPoint {
    pub element: String,
    pub on_mirror: bool,
    pub stab_order: usize,
    pub one_lines: usize,
    pub two_lines: usize,
    pub expected: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct MirrorReport {
    pub mirror: MirrorContext,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub orbit_points: Vec<OrbitPoint>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub orders_on_mirror: Vec<(String, Option<u32>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relator_permutation: Option<Vec<usize>>,
}

impl MirrorReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The mirror of `R`: generators `ι = I`, `μ = M`, `υ = T_v`, `ρ = R`, the
/// relators of the central extension, and the three special orbits.
pub fn verify_mirror_r(cfg: &Config) -> Result<MirrorReport> {
    let ctx = MirrorContext::of_r();
    let (iota, mu, ups, rho) = (i_matrix(), generator(6), tv(), r_matrix());
    let mti = mu.mul(&ups).mul(&iota);
    let mut checks = vec![
        Check::new("form on mirror has signature (1,1)", ctx.is_valid()),
        Check::new("I preserves mirror", preserves_mirror(&iota, &ctx)),
        Check::new("M preserves mirror", preserves_mirror(&mu, &ctx)),
        Check::new("Tv preserves mirror", preserves_mirror(&ups, &ctx)),
        Check::new("T1 does not preserve mirror", !preserves_mirror(&t1(), &ctx)),
        Check::with(
            "M Tv I has order 6",
            projective_order(&mti) == Some(6),
            format!("{:?}", projective_order(&mti)),
        ),
        Check::new("(M Tv I)^3 = R", mti.pow(3) == rho),
        Check::with(
            "M Tv I has order 3 on the mirror",
            order_on_mirror(&mti, &ctx, 18) == Some(3),
            format!("{:?}", order_on_mirror(&mti, &ctx, 18)),
        ),
    ];
    let comm = |x: &GroupElt, y: &GroupElt| x.mul(y).mul(&x.inv()).mul(&y.inv());
    let relators = [
        ("iota^2", iota.pow(2)),
        ("mu^2", mu.pow(2)),
        ("rho^2", rho.pow(2)),
        ("(mu upsilon iota)^3 rho^-1", mti.pow(3).mul(&rho.inv())),
        ("[rho, iota]", comm(&rho, &iota)),
        ("[rho, mu]", comm(&rho, &mu)),
        ("[rho, upsilon]", comm(&rho, &ups)),
    ];
    for (name, g) in relators {
        checks.push(Check::new(format!("relator {name}"), g.is_identity()));
    }
    let specs: [(&str, GroupElt, (usize, usize)); 3] = [
        ("I R", iota.mul(&rho), (1, 1)),
        ("(R T1 I T1^-1)^2", parse_word("(R T1 I T1^-1)^2")?, (2, 2)),
        ("M Tv I", mti.clone(), (1, 0)),
    ];
    let orbit_points = specs
        .par_iter()
        .map(|(name, g, expected)| orbit_point(name, g, *expected, &ctx, cfg))
        .collect::<Result<Vec<_>>>()?;
    for p in &orbit_points {
        checks.push(Check::with(
            format!("special orbit of {}", p.element),
            p.on_mirror && (p.one_lines, p.two_lines) == p.expected,
            format!("stab {} lines {}/{}", p.stab_order, p.one_lines, p.two_lines),
        ));
    }
    let joint = iota.mul(&rho);
    if let Elliptic::Isolated { fixed, .. } = classify_elliptic(&joint, 2, cfg.precision())? {
        let on_both = [&iota, &rho].iter().all(|g| fixed.same_point(&fixed.apply(g)));
        checks.push(Check::new("I and R share the fixed point of I R", on_both));
    }
    Ok(MirrorReport {
        mirror: ctx,
        checks,
        orbit_points,
        orders_on_mirror: vec![],
        relator_permutation: None,
    })
}

fn orbit_point(
    name: &str,
    g: &GroupElt,
    expected: (usize, usize),
    ctx: &MirrorContext,
    cfg: &Config,
) -> Result<OrbitPoint> {
    let n = projective_order(g).ok_or_else(|| Error::Invalid(format!("{name} has infinite order")))?;
    let Elliptic::Isolated { fixed, .. } = classify_elliptic(g, n, cfg.precision())? else {
        return Err(Error::Invalid(format!("{name} is a reflection")));
    };
    let polar = crate::hermitian::Point::from_ovec(&ctx.polar);
    let on_mirror = crate::hermitian::herm_alg(&fixed.v, &polar_in(&fixed, &polar)).is_zero();
    let (_, y) = reduce_to_domain(&fixed, cfg)?;
    let (_, st) = stabilizer(&y, cfg)?;
    Ok(OrbitPoint {
        element: name.to_string(),
        on_mirror,
        stab_order: st.proj_order,
        one_lines: st.one_lines,
        two_lines: st.two_lines,
        expected,
    })
}

fn polar_in(x: &crate::hermitian::Point, polar: &crate::hermitian::Point) -> [crate::ring::AlgNum; 3] {
    let f = x.field();
    std::array::from_fn(|i| {
        let k = polar.v[i].as_knum().expect("rational polar");
        crate::ring::AlgNum::from_knum(f, k)
    })
}

/// Primitive `v` with `⟨v, v⟩ = norm` and `⟨v, polar⟩ = 0`, coordinates
/// `a + bτ` with `|a|, |b| ≤ height`, canonical sign, sorted.
pub fn search_orthogonal_mirrors(ctx: &MirrorContext, norm: i128, height: i64) -> Result<Vec<Vec3O>> {
    if height < 1 {
        return Err(Error::Invalid("height must be at least 1".into()));
    }
    let h = height as i128;
    let p = ctx.polar;
    // ⟨v, p⟩ = v₀ p̄₂ + v₁ p̄₁ + v₂ p̄₀; solve for the coordinate with a
    // nonzero coefficient.
    let coeff = [p[2].conj(), p[1].conj(), p[0].conj()];
    let k = (0..3).rev().find(|&i| !coeff[i].is_zero()).ok_or(Error::ZeroVector)?;
    let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let box_elts: Vec<OInt> = (-h..=h).flat_map(|a| (-h..=h).map(move |b| OInt::new(a, b))).collect();
    let mut out: Vec<Vec3O> = box_elts
        .par_iter()
        .flat_map_iter(|&x| {
            let box_elts = &box_elts;
            let free = &free;
            box_elts.iter().filter_map(move |&y| {
                let mut v = [OInt::ZERO; 3];
                v[free[0]] = x;
                v[free[1]] = y;
                let rest = coeff[free[0]] * x + coeff[free[1]] * y;
                let vk = (-rest).div_exact(&coeff[k])?;
                if vk.a.abs() > h || vk.b.abs() > h {
                    return None;
                }
                v[k] = vk;
                if norm_o(&v) != norm || primitive_o(v) != v && primitive_o(v) != neg(v) {
                    return None;
                }
                Some(canonical_vec(v))
            })
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn neg(v: Vec3O) -> Vec3O {
    [-v[0], -v[1], -v[2]]
}

/// The four polar vectors `v₁, …, v₄` for the reflections `r₁, …, r₄`.
pub fn l_polars() -> [Vec3O; 4] {
    let (o, z, t, tb, i7) = (OInt::ONE, OInt::ZERO, OInt::TAU, OInt::TAU_BAR, OInt::I_SQRT7);
    [[o, o, tb], [-i7, t, OInt::int(2)], [i7, t, OInt::int(2)], [z, o, tb]]
}

fn relators_l(r: &[GroupElt; 4], s1: &GroupElt, s2: &GroupElt, t: &GroupElt) -> Vec<(String, GroupElt)> {
    vec![
        ("r1^2".into(), r[0].pow(2)),
        ("r2^3".into(), r[1].pow(3)),
        ("r3^2".into(), r[2].pow(2)),
        ("r4^2".into(), r[3].pow(2)),
        ("(s2^-1 s1)^2".into(), s2.inv().mul(s1).pow(2)),
        (
            "s1^-1 r4 r1 r3 tv r2".into(),
            s1.inv().mul(&r[3]).mul(&r[0]).mul(&r[2]).mul(t).mul(&r[1]),
        ),
    ]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The mirror `L` of `TτR` and the presentation of its stabilizer acting
/// on `L`.
pub fn verify_mirror_l(cfg: &Config) -> Result<MirrorReport> {
    let ctx = MirrorContext::of_l();
    let polars = l_polars();
    let r: [GroupElt; 4] = std::array::from_fn(|i| make_reflection(&polars[i]).expect("norm 1 or 2"));
    let (s1, s2, t) = (s1_matrix(), s2_matrix(), tv());
    let mut checks = vec![Check::new("form on L has signature (1,1)", ctx.is_valid())];
    for (i, v) in polars.iter().enumerate() {
        checks.push(Check::new(format!("v{} orthogonal to polar", i + 1), herm_o(v, &ctx.polar).is_zero()));
        checks.push(Check::with(
            format!("v{} has square norm 2", i + 1),
            norm_o(v) == 2,
            format!("{}", norm_o(v)),
        ));
    }
    let found2 = search_orthogonal_mirrors(&ctx, 2, 5)?;
    let found1 = search_orthogonal_mirrors(&ctx, 1, 5)?;
    for (i, v) in polars.iter().enumerate() {
        let c = canonical_vec(*v);
        let at = if found2.contains(&c) {
            "norm 2"
        } else if found1.contains(&c) {
            "norm 1 only"
        } else {
            "not found"
        };
        checks.push(Check::with(format!("v{} found by norm-2 search", i + 1), found2.contains(&c), at));
    }
    for (name, g) in [("s1", &s1), ("s2", &s2), ("Tv", &t), ("Ttau R", &parse_word("Ttau R")?)] {
        checks.push(Check::new(format!("{name} preserves L"), preserves_mirror(g, &ctx)));
    }
    for (i, g) in r.iter().enumerate() {
        checks.push(Check::new(format!("r{} preserves L", i + 1), preserves_mirror(g, &ctx)));
    }
    checks.push(Check::new("Ttau R is trivial on L", trivial_on_mirror(&parse_word("Ttau R")?, &ctx)));
    let null: Vec3K = ["-1", "1", "1-tau"].map(|x| x.parse::<KNum>().expect("literal"));
    let s2_null = s2.apply_k(&null);
    let eig = s2_null.iter().zip(&null).find(|(_, b)| !b.is_zero()).map(|(a, b)| a / b).unwrap();
    checks.push(Check::new("(-1, 1, taubar) is null", herm_inner(&null, &null).is_zero()));
    checks.push(Check::new("s2 fixes (-1, 1, taubar)", fixes_kvec(&s2, &null)));
    checks.push(Check::with(
        "s2 eigenvalue on the null vector has modulus 1",
        eig.norm() == num_rational::BigRational::from_integer(1.into()),
        eig.to_string(),
    ));
    checks.push(Check::new("s2 has infinite order", projective_order(&s2).is_none()));
    checks.push(Check::new("s1 and s2 lie in Γ", is_in_gamma(&s1.kmat()) && is_in_gamma(&s2.kmat())));
    let rels = relators_l(&r, &s1, &s2, &t);
    let results: Vec<bool> = rels.par_iter().map(|(_, g)| trivial_on_mirror(g, &ctx)).collect();
    for ((name, _), ok) in rels.iter().zip(&results) {
        checks.push(Check::new(format!("relator {name} trivial on L"), *ok));
    }
    let relator_permutation = if results.iter().all(|&b| b) {
        None
    } else {
        permutations(4).into_iter().find(|perm| {
            let rp: [GroupElt; 4] = std::array::from_fn(|i| r[perm[i]].clone());
            relators_l(&rp, &s1, &s2, &t).iter().all(|(_, g)| trivial_on_mirror(g, &ctx))
        })
    };
    checks.push(Check::with(
        "two cusps: no short word in the generators sends the s2 fixed point to infinity",
        !joins_cusps(&r, &s1, &s2, &t, &null, cfg.word_search_len.min(4)),
        format!("words up to length {}", cfg.word_search_len.min(4)),
    ));
    let mut orders_on_mirror: Vec<(String, Option<u32>)> = r
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("r{}", i + 1), order_on_mirror(g, &ctx, 18)))
        .collect();
    orders_on_mirror.push(("s2^-1 s1".into(), order_on_mirror(&s2.inv().mul(&s1), &ctx, 18)));
    let long = &rels[5];
    orders_on_mirror.push((long.0.clone(), order_on_mirror(&long.1, &ctx, 18)));
    Ok(MirrorReport {
        mirror: ctx,
        checks,
        orbit_points: vec![],
        orders_on_mirror,
        relator_permutation,
    })
}

fn joins_cusps(r: &[GroupElt; 4], s1: &GroupElt, s2: &GroupElt, t: &GroupElt, p: &Vec3K, len: usize) -> bool {
    let mut gens: Vec<GroupElt> = r.to_vec();
    for g in [s1, s2, t] {
        gens.push(g.clone());
        gens.push(g.inv());
    }
    let inf: Vec3K = [KNum::one(), KNum::zero(), KNum::zero()];
    let mut frontier = vec![p.clone()];
    for _ in 0..len {
        let next: Vec<Vec3K> = frontier.iter().flat_map(|v| gens.iter().map(move |g| g.apply_k(v))).collect();
        if next.iter().any(|v| proportional(v, &inf)) {
            return true;
        }
        frontier = next;
    }
    false
}

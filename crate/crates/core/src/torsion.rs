//! Elliptic elements: orders, fixed loci, conjugacy classes and the
//! stabilizers of their fixed points.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ford::{
    elements_mapping, enumerate_tjk, omega_status, reduce_to_domain, spheres_containing, Side, INVERSE_PAIRS,
};
use crate::gens::{generator, i_matrix};
use crate::heisenberg::{
    overlap_torsion, prism_status_point, Facet, r_matrix, t1, ttau, enumerate_cusp_overlaps,
};
use crate::hermitian::{herm_alg, norm_o, primitive_o, GroupElt, Point, Vec3O};
use crate::ring::{AlgNum, KNum, KPoly, NumField, OInt, Precision};

/// Largest projective order of a torsion element: the eigenvalues are roots
/// of unity of degree at most 6 over Q.
pub const MAX_TORSION_ORDER: u32 = 18;

/// Smallest `n` with `γⁿ = ±Id`, or `None` for infinite order.
pub fn projective_order(g: &GroupElt) -> Option<u32> {
    if g.trace().norm() > 9 {
        return None;
    }
    let mut p = g.clone().without_word();
    for n in 1..=MAX_TORSION_ORDER {
        if p.is_identity() {
            return Some(n);
        }
        p = p.checked_mul(g)?.without_word();
    }
    None
}

/// `det(x·Id − M)` over K.
pub fn char_poly(g: &GroupElt) -> KPoly {
    let m = g.matrix();
    let k = |x: OInt| KNum::from(x);
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minor = |i: usize, j: usize| m[i][i] * m[j][j] - m[i][j] * m[j][i];
    let c2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    KPoly::new(vec![-k(det), k(c2), -k(tr), KNum::one()])
}

fn shifted(g: &GroupElt, lambda: i128) -> [[OInt; 3]; 3] {
    let mut a = *g.matrix();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i] - OInt::int(lambda);
    }
    a
}

fn rank_one(a: &[[OInt; 3]; 3]) -> bool {
    let nonzero = a.iter().flatten().any(|x| !x.is_zero());
    let minors_vanish = (0..3).all(|i| {
        (i + 1..3).all(|k| (0..3).all(|j| (j + 1..3).all(|l| (a[i][j] * a[k][l] - a[i][l] * a[k][j]).is_zero())))
    });
    nonzero && minors_vanish
}

fn cross_o(r: &[OInt; 3], s: &[OInt; 3]) -> Vec3O {
    [
        r[1] * s[2] - r[2] * s[1],
        r[2] * s[0] - r[0] * s[2],
        r[0] * s[1] - r[1] * s[0],
    ]
}

fn cross_alg(r: &[AlgNum; 3], s: &[AlgNum; 3]) -> [AlgNum; 3] {
    [
        r[1].mul(&s[2]).sub(&r[2].mul(&s[1])),
        r[2].mul(&s[0]).sub(&r[0].mul(&s[2])),
        r[0].mul(&s[1]).sub(&r[1].mul(&s[0])),
    ]
}

/// Kernel of a rank-two integral matrix.
fn kernel_o(a: &[[OInt; 3]; 3]) -> Option<Vec3O> {
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| cross_o(&a[i], &a[j]))
        .find(|v| v.iter().any(|x| !x.is_zero()))
        .map(primitive_o)
}

/// Fixed locus of an elliptic element.
#[derive(Clone, Debug)]
pub enum Elliptic {
    /// Complex reflection in the line polar to `polar`.
    Reflection { polar: Vec3O, polar_norm: i128 },
    /// Isolated fixed point; `norm` is the square norm of the primitive
    /// representative when the point is K-rational.
    Isolated { fixed: Point, norm: Option<i128> },
}

impl Elliptic {
    pub fn is_reflection(&self) -> bool {
        matches!(self, Elliptic::Reflection { .. })
    }
}

/// Classifies an element of projective order `n ≥ 2`.
pub fn classify_elliptic(g: &GroupElt, n: u32, prec: Precision) -> Result<Elliptic> {
    let actual = projective_order(g);
    if actual != Some(n) || n < 2 {
        return Err(Error::OrderMismatch {
            expected: n,
            actual,
        });
    }
    // a repeated eigenvalue lies in K, hence is ±1
    for lambda in [1, -1] {
        let a = shifted(g, lambda);
        if rank_one(&a) {
            let w = (0..3)
                .map(|j| [a[0][j], a[1][j], a[2][j]])
                .find(|c| c.iter().any(|x| !x.is_zero()))
                .map(primitive_o)
                .unwrap();
            let nw = norm_o(&w);
            return Ok(match nw.cmp(&0) {
                Ordering::Greater => Elliptic::Reflection { polar: w, polar_norm: nw },
                _ => Elliptic::Isolated {
                    fixed: Point::from_ovec(&w).with_fixer(g.clone()),
                    norm: Some(nw),
                },
            });
        }
    }
    let f = char_poly(g);
    for lambda in [1, -1] {
        if f.eval(&KNum::from_int(lambda)).is_zero() {
            if let Some(v) = kernel_o(&shifted(g, lambda)) {
                let nv = norm_o(&v);
                if nv < 0 {
                    return Ok(Elliptic::Isolated {
                        fixed: Point::from_ovec(&v).with_fixer(g.clone()),
                        norm: Some(nv),
                    });
                }
            }
        }
    }
    let (_, rest) = f.strip_roots(&[KNum::one(), KNum::from_int(-1)]);
    let d = rest.degree().unwrap_or(0);
    for i in 0..d {
        let field = NumField::new(rest.clone(), i, prec)?;
        let lam = AlgNum::generator(&field);
        let rows: [[AlgNum; 3]; 3] = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let x = AlgNum::from_knum(&field, KNum::from(g.entry(r, c)));
                if r == c {
                    x.sub(&lam)
                } else {
                    x
                }
            })
        });
        let v = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| cross_alg(&rows[a], &rows[b]))
            .find(|v| v.iter().any(|x| !x.is_zero()));
        let Some(v) = v else { continue };
        if herm_alg(&v, &v).sign()? == Ordering::Less {
            let p = Point { v, fixer: Some(g.clone()) };
            return Ok(Elliptic::Isolated { fixed: p.normalized()?, norm: None });
        }
    }
    Err(Error::Invalid("no negative eigenvector".into()))
}

/// `R_v(x) = x − 2⟨x, v⟩/⟨v, v⟩ · v`
pub fn make_reflection(v: &Vec3O) -> Result<GroupElt> {
    let n = norm_o(v);
    if n != 1 && n != 2 {
        return Err(Error::NotIntegralForm(format!("square norm {n}")));
    }
    // ⟨x, v⟩ = Σ x_k conj(v_{2−k})
    let m: [[OInt; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            let e = OInt::int((i == k) as i128);
            let c = (v[i] * v[2 - k].conj()).scale(2);
            let q = c.div_exact(&OInt::int(n)).expect("entries integral for norm 1 or 2");
            e - q
        })
    });
    GroupElt::new(m)
}

/// Polar vectors of reflections conjugate under `{T₁^±, Tτ^±, R, I}`.
fn bfs_polars(start: Vec3O, depth: usize) -> HashMap<Vec3O, GroupElt> {
    let gens = [t1(), t1().inv(), ttau(), ttau().inv(), r_matrix(), i_matrix()];
    let mut seen: HashMap<Vec3O, GroupElt> = HashMap::new();
    seen.insert(start, GroupElt::identity());
    let mut frontier = vec![start];
    for _ in 0..depth {
        let mut next = vec![];
        for v in &frontier {
            let w = seen[v].clone();
            for g in &gens {
                let Some(u) = checked_apply(g, v) else { continue };
                let u = primitive_o(u);
                if !seen.contains_key(&u) {
                    seen.insert(u, g.mul(&w));
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    seen
}

fn checked_apply(g: &GroupElt, v: &Vec3O) -> Option<Vec3O> {
    let m = g.matrix();
    let mut out = [OInt::ZERO; 3];
    for i in 0..3 {
        let mut acc = OInt::ZERO;
        for k in 0..3 {
            acc = acc.checked_add(&m[i][k].checked_mul(&v[k])?)?;
        }
        out[i] = acc;
    }
    Some(out)
}

/// A word `g` with `g γ₁ g⁻¹ = γ₂`, searched by meeting in the middle on
/// polar vectors; `None` when the invariants differ or nothing is found.
pub fn reflection_conjugacy(g1: &GroupElt, g2: &GroupElt, max_len: usize) -> Option<GroupElt> {
    let o1 = projective_order(g1)?;
    if projective_order(g2)? != o1 {
        return None;
    }
    let prec = Precision::default();
    let (Ok(Elliptic::Reflection { polar: p1, polar_norm: n1 }), Ok(Elliptic::Reflection { polar: p2, polar_norm: n2 })) =
        (classify_elliptic(g1, o1, prec), classify_elliptic(g2, o1, prec))
    else {
        return None;
    };
    if n1 != n2 {
        return None;
    }
    let a = bfs_polars(p1, max_len.div_ceil(2));
    let b = bfs_polars(p2, max_len / 2);
    let mut best: Option<GroupElt> = None;
    for (v, ga) in &a {
        if let Some(gb) = b.get(v) {
            let g = gb.inv().mul(ga);
            if g1.conj_by(&g) == *g2 {
                let better = best.as_ref().is_none_or(|h| g.word().map(str::len) < h.word().map(str::len));
                if better {
                    best = Some(g);
                }
            }
        }
    }
    best
}

/// Elements of finite order ≥ 2 among `α A_j` with `α ∈ T_jk`, together
/// with the nontrivial torsion among the cusp overlaps.
pub fn torsion_candidates() -> Result<Vec<(GroupElt, u32)>> {
    let mut elts: Vec<GroupElt> = vec![];
    for (j, k) in INVERSE_PAIRS {
        for a in enumerate_tjk(j, k)? {
            let w = if a.is_identity() { format!("A{j}") } else { format!("{a} A{j}") };
            elts.push(a.to_matrix().mul(&generator(j)).named(w));
        }
    }
    for o in overlap_torsion(&enumerate_cusp_overlaps()) {
        elts.push(o.elt.to_matrix());
    }
    let mut seen = BTreeSet::new();
    elts.retain(|g| seen.insert(g.clone()));
    let mut out: Vec<(GroupElt, u32)> = elts
        .par_iter()
        .filter_map(|g| projective_order(g).filter(|&n| n >= 2).map(|n| (g.clone(), n)))
        .collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// `{γᵏ : gcd(k, n) = 1}`
pub fn generating_powers(g: &GroupElt, n: u32) -> Vec<GroupElt> {
    let mut out = vec![];
    let mut p = g.clone().without_word();
    for k in 1..n {
        if num_integer::gcd(k, n) == 1 {
            out.push(p.clone());
        }
        p = p.mul(g).without_word();
    }
    out
}

/// A conjugator `h` with `h γ₁ h⁻¹` generating the same cyclic group as γ₂,
/// for fixed points `x₁, x₂` in Ω.
pub fn isolated_conjugator(
    g1: &GroupElt,
    x1: &Point,
    g2: &GroupElt,
    x2: &Point,
    n: u32,
) -> Result<Option<GroupElt>> {
    let powers = generating_powers(g2, n);
    for h in elements_mapping(x1, x2)? {
        let c = g1.conj_by(&h);
        if powers.contains(&c) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct ReflectionClass {
    pub rep: GroupElt,
    pub polar: Vec3O,
    pub polar_norm: i128,
    pub members: usize,
}

#[derive(Clone, Debug)]
pub struct IsolatedClass {
    pub rep: GroupElt,
    pub order: u32,
    pub fixed: Point,
    pub norm: Option<i128>,
    pub members: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TorsionClasses {
    pub reflections: Vec<ReflectionClass>,
    pub isolated: Vec<IsolatedClass>,
    pub candidates: usize,
}

/// Candidates up to conjugacy of the cyclic groups they generate.
pub fn enumerate_torsion(cfg: &Config) -> Result<TorsionClasses> {
    let cands = torsion_candidates()?;
    let prec = cfg.precision();
    let classified: Vec<(GroupElt, u32, Elliptic)> = cands
        .par_iter()
        .map(|(g, n)| classify_elliptic(g, *n, prec).map(|e| (g.clone(), *n, e)))
        .collect::<Result<_>>()?;
    let mut out = TorsionClasses { candidates: classified.len(), ..Default::default() };
    let mut isolated_in_omega = vec![];
    for (g, n, e) in classified {
        match e {
            Elliptic::Reflection { polar, polar_norm } => {
                let mut merged = false;
                for c in out.reflections.iter_mut().filter(|c| c.polar_norm == polar_norm) {
                    if c.polar == polar || reflection_conjugacy(&g, &c.rep, cfg.word_search_len).is_some() {
                        c.members += 1;
                        merged = true;
                        break;
                    }
                }
                if !merged {
                    out.reflections.push(ReflectionClass { rep: g, polar, polar_norm, members: 1 });
                }
            }
            Elliptic::Isolated { fixed, norm } => isolated_in_omega.push((g, n, fixed, norm)),
        }
    }
    let reduced: Vec<(GroupElt, u32, Point, Option<i128>)> = isolated_in_omega
        .par_iter()
        .map(|(g, n, x, norm)| {
            let (h, y) = reduce_to_domain(x, cfg)?;
            let rep = g.conj_by(&h);
            let y = Point { v: y.v, fixer: Some(rep.clone()) };
            Ok((rep, *n, y, *norm))
        })
        .collect::<Result<_>>()?;
    for (g, n, x, norm) in reduced {
        let mut merged = false;
        for c in out.isolated.iter_mut().filter(|c| c.order == n && c.norm == norm) {
            if isolated_conjugator(&g, &x, &c.rep, &c.fixed, n)?.is_some() {
                c.members += 1;
                merged = true;
                break;
            }
        }
        if !merged {
            out.isolated.push(IsolatedClass { rep: g, order: n, fixed: x, norm, members: 1 });
        }
    }
    out.isolated.sort_by(|a, b| a.order.cmp(&b.order).then(b.norm.cmp(&a.norm)));
    out.reflections.sort_by_key(|c| c.polar_norm);
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: GroupElt,
    pub side: String,
}

/// Points of Ω in one Γ-orbit joined by side-pairings.
#[derive(Clone, Debug)]
pub struct CycleGraph {
    pub vertices: Vec<Point>,
    /// `paths[i]` maps vertex 0 to vertex `i`.
    pub paths: Vec<GroupElt>,
    pub edges: Vec<Edge>,
}

impl CycleGraph {
    pub fn loops(&self) -> usize {
        self.edges.iter().filter(|e| e.from == e.to).count()
    }
}

const MAX_GRAPH_VERTICES: usize = 256;

/// The component of `x ∈ Ω` in the graph of side-pairings.
pub fn build_cycle_graph(x: &Point, cfg: &Config) -> Result<CycleGraph> {
    let mut g = CycleGraph { vertices: vec![x.clone()], paths: vec![GroupElt::identity()], edges: vec![] };
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let pu = g.vertices[u].clone();
        let mut moves: Vec<(GroupElt, String)> = vec![];
        for (s, side) in spheres_containing(&pu)? {
            if side == Side::Boundary {
                moves.push((s.elt.inv(), s.label()));
            }
        }
        // top and bottom of P are identified: vertices are taken with t < 2√7
        for f in prism_status_point(&pu)?.facets() {
            if !matches!(f, Facet::Top | Facet::Bottom) {
                moves.push((f.pairing().to_matrix(), format!("{f:?}")));
            }
        }
        for (step, side) in moves {
            let y = pu.apply(&step);
            let (label, z) = if omega_status(&y)?.inside() {
                (step, y)
            } else {
                let (h, z) = reduce_to_domain(&y, cfg)?;
                (h.mul(&step), z)
            };
            let (label, z) = if prism_status_point(&z)?.facets().contains(&Facet::Top) {
                let down = Facet::Top.pairing().to_matrix();
                (down.mul(&label), z.apply(&down))
            } else {
                (label, z)
            };
            let to = match g.vertices.iter().position(|v| v.same_point(&z)) {
                Some(i) => i,
                None => {
                    if g.vertices.len() >= MAX_GRAPH_VERTICES {
                        return Err(Error::ClosureCap(MAX_GRAPH_VERTICES));
                    }
                    g.vertices.push(z);
                    g.paths.push(label.mul(&g.paths[u]));
                    queue.push_back(g.vertices.len() - 1);
                    g.vertices.len() - 1
                }
            };
            g.edges.push(Edge { from: u, to, label, side });
        }
    }
    Ok(g)
}

/// A finite subgroup of Γ given by its elements.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub elements: BTreeSet<GroupElt>,
}

impl FiniteGroup {
    pub fn generate(gens: &[GroupElt], cap: usize) -> Result<FiniteGroup> {
        let mut elements: BTreeSet<GroupElt> = BTreeSet::new();
        elements.insert(GroupElt::identity());
        let gens: Vec<GroupElt> = gens.iter().map(|g| g.clone().without_word()).collect();
        let mut frontier = vec![GroupElt::identity()];
        while !frontier.is_empty() {
            let mut next = vec![];
            for a in &frontier {
                for g in &gens {
                    let p = a.checked_mul(g).ok_or(Error::ClosureCap(cap))?.without_word();
                    if elements.insert(p.clone()) {
                        if elements.len() > cap {
                            return Err(Error::ClosureCap(cap));
                        }
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        Ok(FiniteGroup { elements })
    }

    /// Order in PU(2,1).
    pub fn proj_order(&self) -> usize {
        self.elements.len()
    }

    /// Order of the preimage in U(J, O₇), which contains −Id.
    pub fn linear_order(&self) -> usize {
        2 * self.elements.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MirrorInfo {
    pub reflection: GroupElt,
    pub polar: Vec<String>,
    pub polar_norm: i128,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub point: Vec<String>,
    pub proj_order: usize,
    pub linear_order: usize,
    pub mirrors: Vec<MirrorInfo>,
    pub one_lines: usize,
    pub two_lines: usize,
    pub one_line_orbits: Vec<usize>,
    pub two_line_orbits: Vec<usize>,
    pub graph_vertices: usize,
    pub graph_edges: usize,
    pub graph_loops: usize,
    pub agrees_with_direct: bool,
    pub generators: Vec<GroupElt>,
}

/// Sizes of the orbits of `refl` under conjugation by `group`.
fn conjugation_orbits(group: &FiniteGroup, refl: &[GroupElt]) -> Vec<usize> {
    let mut left: BTreeSet<GroupElt> = refl.iter().cloned().collect();
    let mut sizes = vec![];
    while let Some(r) = left.iter().next().cloned() {
        let orbit: BTreeSet<GroupElt> = group.elements.iter().map(|g| r.conj_by(g).without_word()).collect();
        for o in &orbit {
            left.remove(o);
        }
        sizes.push(orbit.len());
    }
    sizes.sort();
    sizes
}

/// Stabilizer of `x ∈ Ω` from its cycle graph, checked against the direct
/// enumeration of elements fixing `x`.
pub fn stabilizer(x: &Point, cfg: &Config) -> Result<(FiniteGroup, StabilizerReport)> {
    let graph = build_cycle_graph(x, cfg)?;
    let gens: Vec<GroupElt> = graph
        .edges
        .iter()
        .map(|e| graph.paths[e.to].inv().mul(&e.label).mul(&graph.paths[e.from]))
        .collect();
    let group = FiniteGroup::generate(&gens, cfg.closure_cap)?;
    let direct: BTreeSet<GroupElt> =
        elements_mapping(x, x)?.into_iter().map(|g| g.without_word()).collect();
    let prec = cfg.precision();
    let mut mirrors = vec![];
    for g in &group.elements {
        if let Some(n) = projective_order(g) {
            if n < 2 {
                continue;
            }
            if let Elliptic::Reflection { polar, polar_norm } = classify_elliptic(g, n, prec)? {
                mirrors.push(MirrorInfo {
                    reflection: g.clone(),
                    polar: polar.iter().map(|x| x.to_string()).collect(),
                    polar_norm,
                });
            }
        }
    }
    let by_norm = |k: i128| -> Vec<GroupElt> {
        mirrors.iter().filter(|m| m.polar_norm == k).map(|m| m.reflection.clone()).collect()
    };
    let ones = by_norm(1);
    let twos = by_norm(2);
    let report = StabilizerReport {
        point: x.to_strings(),
        proj_order: group.proj_order(),
        linear_order: group.linear_order(),
        one_lines: ones.len(),
        two_lines: twos.len(),
        one_line_orbits: conjugation_orbits(&group, &ones),
        two_line_orbits: conjugation_orbits(&group, &twos),
        mirrors,
        graph_vertices: graph.vertices.len(),
        graph_edges: graph.edges.len(),
        graph_loops: graph.loops(),
        agrees_with_direct: direct == group.elements,
        generators: dedup_words(gens),
    };
    Ok((group, report))
}

fn dedup_words(gens: Vec<GroupElt>) -> Vec<GroupElt> {
    let mut seen: BTreeMap<GroupElt, GroupElt> = BTreeMap::new();
    for g in gens {
        if !g.is_identity() {
            seen.entry(g.clone()).or_insert(g);
        }
    }
    seen.into_values().collect()
}

/// An enumerated torsion class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum ClassRef {
    Reflection(usize),
    Isolated(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassMatch {
    pub class: ClassRef,
    pub witness: GroupElt,
}

/// The class of a finite-order `g`, with `w` such that `w g w⁻¹` is the
/// reflection representative, or a generating power of the isolated one.
pub fn locate_class(g: &GroupElt, classes: &TorsionClasses, cfg: &Config) -> Result<Option<ClassMatch>> {
    let Some(n) = projective_order(g).filter(|&n| n >= 2) else {
        return Ok(None);
    };
    match classify_elliptic(g, n, cfg.precision())? {
        Elliptic::Reflection { polar_norm, .. } => {
            for (i, c) in classes.reflections.iter().enumerate() {
                if c.polar_norm != polar_norm {
                    continue;
                }
                if let Some(w) = reflection_conjugacy(g, &c.rep, cfg.word_search_len) {
                    return Ok(Some(ClassMatch { class: ClassRef::Reflection(i), witness: w }));
                }
            }
        }
        Elliptic::Isolated { fixed, norm } => {
            let (h, y) = reduce_to_domain(&fixed, cfg)?;
            let g1 = g.conj_by(&h);
            let y = Point { v: y.v, fixer: Some(g1.clone()) };
            for (i, c) in classes.isolated.iter().enumerate() {
                if c.order != n || c.norm != norm {
                    continue;
                }
                if let Some(k) = isolated_conjugator(&g1, &y, &c.rep, &c.fixed, n)? {
                    return Ok(Some(ClassMatch { class: ClassRef::Isolated(i), witness: k.mul(&h) }));
                }
            }
        }
    }
    Ok(None)
}

/// Checks a witness returned by [`locate_class`].
pub fn check_match(g: &GroupElt, m: &ClassMatch, classes: &TorsionClasses) -> bool {
    let c = g.conj_by(&m.witness);
    match m.class {
        ClassRef::Reflection(i) => c == classes.reflections[i].rep,
        ClassRef::Isolated(i) => {
            let rep = &classes.isolated[i];
            generating_powers(&rep.rep, rep.order).contains(&c)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionRow {
    pub rep: GroupElt,
    pub polar: Vec<String>,
    pub polar_norm: i128,
    pub members: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedRow {
    pub rep: GroupElt,
    pub order: u32,
    pub fixed: Vec<String>,
    pub norm: Option<i128>,
    pub members: usize,
    pub stabilizer: StabilizerReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub candidates: usize,
    pub reflections: Vec<ReflectionRow>,
    pub isolated: Vec<IsolatedRow>,
}

/// Class list with the stabilizer of every isolated fixed point.
pub fn torsion_report(classes: &TorsionClasses, cfg: &Config) -> Result<TorsionReport> {
    let isolated = classes
        .isolated
        .par_iter()
        .map(|c| {
            let (_, st) = stabilizer(&c.fixed, cfg)?;
            Ok(IsolatedRow {
                rep: c.rep.clone(),
                order: c.order,
                fixed: c.fixed.to_strings(),
                norm: c.norm,
                members: c.members,
                stabilizer: st,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let reflections = classes
        .reflections
        .iter()
        .map(|c| ReflectionRow {
            rep: c.rep.clone(),
            polar: c.polar.iter().map(|x| x.to_string()).collect(),
            polar_norm: c.polar_norm,
            members: c.members,
        })
        .collect();
    Ok(TorsionReport { candidates: classes.candidates, reflections, isolated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn orders() {
        assert_eq!(projective_order(&r_matrix()), Some(2));
        assert_eq!(projective_order(&parse_word("I R T1").unwrap()), Some(7));
        assert_eq!(projective_order(&t1()), None);
        assert_eq!(projective_order(&generator(9)), None);
    }

    #[test]
    fn classification() {
        let p = Precision::default();
        match classify_elliptic(&r_matrix(), 2, p).unwrap() {
            Elliptic::Reflection { polar, polar_norm } => {
                assert_eq!(polar, [OInt::ZERO, OInt::ONE, OInt::ZERO]);
                assert_eq!(polar_norm, 1);
            }
            e => panic!("{e:?}"),
        }
        match classify_elliptic(&i_matrix(), 2, p).unwrap() {
            Elliptic::Reflection { polar, polar_norm } => {
                assert_eq!(polar, [OInt::ONE, OInt::ZERO, OInt::ONE]);
                assert_eq!(polar_norm, 2);
            }
            e => panic!("{e:?}"),
        }
        match classify_elliptic(&parse_word("I R").unwrap(), 2, p).unwrap() {
            Elliptic::Isolated { fixed, norm } => {
                assert_eq!(fixed.primitive().unwrap(), [OInt::ONE, OInt::ZERO, -OInt::ONE]);
                assert_eq!(norm, Some(-2));
            }
            e => panic!("{e:?}"),
        }
        assert!(classify_elliptic(&r_matrix(), 3, p).is_err());
    }

    #[test]
    fn reflections_from_polars() {
        assert_eq!(make_reflection(&[OInt::ZERO, OInt::ONE, OInt::ZERO]).unwrap(), r_matrix());
        assert_eq!(make_reflection(&[OInt::ONE, OInt::ZERO, OInt::ONE]).unwrap(), i_matrix());
        assert!(make_reflection(&[OInt::ONE, OInt::ZERO, OInt::int(2)]).is_err());
    }

    #[test]
    fn reflection_conjugacy_examples() {
        let trr = ttau().mul(&r_matrix());
        let g = reflection_conjugacy(&trr, &i_matrix(), 12).unwrap();
        assert_eq!(trr.conj_by(&g), i_matrix());
        assert!(reflection_conjugacy(&r_matrix(), &i_matrix(), 12).is_none());
    }

    fn v1() -> Point {
        Point::from_ovec(&[-OInt::TAU_BAR, OInt::ZERO, OInt::ONE])
    }

    #[test]
    fn stabilizer_of_order_eight_point() {
        let (g, rep) = stabilizer(&v1(), &Config::default()).unwrap();
        assert_eq!(g.proj_order(), 8);
        assert_eq!(rep.linear_order, 16);
        let mut norms: Vec<i128> = rep.mirrors.iter().map(|m| m.polar_norm).collect();
        norms.sort();
        assert_eq!(norms, vec![1, 1, 2, 2]);
        assert_eq!(rep.graph_vertices, 3);
        assert!(rep.agrees_with_direct);
    }

    #[test]
    fn order_six_point() {
        let cfg = Config::default();
        let g = parse_word("Ttau R T1 R (T1 I)^2 T1^-1 R T1 I T1^-1 R Ttau^-1").unwrap();
        let Elliptic::Isolated { fixed: w0, .. } = classify_elliptic(&g, 6, cfg.precision()).unwrap() else {
            panic!()
        };
        // the stated conjugate fixes a point on the prism vertex z = τ, outside Ω
        assert!(!crate::ford::omega_status(&w0).unwrap().inside());
        let (_, w) = reduce_to_domain(&w0, &cfg).unwrap();
        let status = crate::ford::omega_status(&w).unwrap();
        assert!(status.inside());
        assert_eq!(status.prism, crate::heisenberg::PrismStatus::Interior);
        let mut got: Vec<Vec3O> = spheres_containing(&w).unwrap().iter().map(|(s, _)| s.cvec).collect();
        let cusp = |w: &str| crate::heisenberg::CuspElt::from_matrix(&parse_word(w).unwrap()).unwrap();
        let mut want: Vec<Vec3O> = [
            (2, "Id"),
            (3, "Id"),
            (4, "R Ttau^-1"),
            (5, "R Ttau^-1 T1^-1"),
            (6, "Ttau"),
        ]
        .iter()
        .map(|(j, a)| crate::ford::IsomSphere::new(*j, cusp(a)).cvec)
        .collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        let (h, y) = reduce_to_domain(&w.apply(&generator(2).inv()), &cfg).unwrap();
        assert!(y.same_point(&w));
        assert_eq!(h, ttau().mul(&r_matrix()));
        let (st, rep) = stabilizer(&w, &cfg).unwrap();
        assert_eq!(st.proj_order(), 6);
        assert_eq!(rep.linear_order, 12);
        assert_eq!(rep.graph_vertices, 1);
        assert_eq!(rep.graph_loops, 5);
        assert_eq!(rep.one_lines + rep.two_lines, 1);
    }
}

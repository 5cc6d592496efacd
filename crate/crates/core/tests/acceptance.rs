//! One line per acceptance criterion. Criteria in `KNOWN_RED` are reported
//! as failing without aborting the run; any other failure, or a known-red
//! criterion turning green, exits nonzero.

use std::collections::BTreeSet;
use std::process::ExitCode;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use picard::config::Config;
use picard::congruence::{fp_mul, fp_neg, reduce_mod, torsion_free_certificate, Ideal};
use picard::ford::{
    candidate_spheres, cygan_dist4, ford_side, omega_status, realizable_depths, reduce_to_domain, spheres_containing,
    IsomSphere, Side,
};
use picard::gens::{b_matrix, generator, generator_table};
use picard::heisenberg::{overlap_torsion, prism_status_point, r_matrix, t1, ttau, CuspElt, HeisPt, PrismStatus};
use picard::hermitian::{horo_coords, is_in_gamma, lift, GroupElt, HoroPoint, Point, Vec3O};
use picard::mirror::{verify_mirror_l, verify_mirror_r};
use picard::presentation::{coverage, verify_relators, verify_tables_7_8};
use picard::ring::{KNum, OInt, Rat};
use picard::tables::{check_printed, reflection_identities};
use picard::torsion::{
    classify_elliptic, enumerate_torsion, projective_order, stabilizer, torsion_report, Elliptic, TorsionClasses,
};
use picard::words::parse_word;

/// Criteria whose printed claims do not hold; see the decisions ledger.
const KNOWN_RED: [u32; 3] = [2, 7, 11];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c1() -> Outcome {
    let a = generator_table();
    let integral = a.iter().all(|g| is_in_gamma(&g.kmat()));
    let rel = [
        ("A3 = A2^-1", a[2] == a[1].inv()),
        ("A4 = A2^-2", a[3] == a[1].pow(-2)),
        ("A5 = A4^-1", a[4] == a[3].inv()),
        ("A11 = A10^-1", a[10] == a[9].inv()),
        ("A13 = A12^-1", a[12] == a[11].inv()),
        ("A14 = A9^-1", a[13] == a[8].inv()),
    ];
    let bad: Vec<&str> = rel.iter().filter(|r| !r.1).map(|r| r.0).collect();
    outcome(integral && bad.is_empty(), format!("14 matrices in U(J,O7): {integral}; failing identities: {bad:?}"))
}

fn c2(classes: &TorsionClasses) -> Outcome {
    let norms: Vec<i128> = classes.reflections.iter().map(|c| c.polar_norm).collect();
    let ids = reflection_identities().expect("identities parse");
    let holds: Vec<bool> = ids.iter().map(|c| c.holds).collect();
    outcome(
        norms == [1, 2] && holds.iter().all(|&h| h),
        format!("reflection classes with polar norms {norms:?}; identities hold as printed: {holds:?}"),
    )
}

fn c3(classes: &TorsionClasses, cfg: &Config) -> Outcome {
    let report = torsion_report(classes, cfg).expect("torsion report");
    let count = |n: u32| classes.isolated.iter().filter(|c| c.order == n).count();
    let counts: Vec<usize> = [2, 3, 4, 6, 7].iter().map(|&n| count(n)).collect();
    let norms: Vec<Option<i128>> = classes.isolated.iter().map(|c| c.norm).collect();
    let stabs: Vec<usize> = report.isolated.iter().map(|r| r.stabilizer.proj_order).collect();
    let printed = check_printed(classes, &report, cfg).expect("printed rows");
    let rows_ok = printed.iter().all(|p| p.pass());
    let distinct: BTreeSet<String> = printed.iter().filter_map(|p| p.class.map(|c| format!("{c:?}"))).collect();
    let pass = counts == [3, 3, 2, 1, 1]
        && norms == [Some(-1), Some(-2), Some(-2), Some(-3), Some(-3), None, Some(-1), Some(-2), None, None]
        && stabs == [8, 4, 8, 6, 6, 6, 8, 8, 6, 7]
        && rows_ok
        && distinct.len() == printed.len();
    outcome(
        pass,
        format!(
            "counts {counts:?}, stabilizers {stabs:?}, printed rows {}/{} pass with distinct classes {}",
            printed.iter().filter(|p| p.pass()).count(),
            printed.len(),
            distinct.len()
        ),
    )
}

fn c4(cfg: &Config) -> Outcome {
    let v1 = Point::from_ovec(&[-OInt::TAU_BAR, OInt::ZERO, OInt::ONE]);
    let sides = match prism_status_point(&v1).expect("prism") {
        PrismStatus::Boundary(f) => f.len(),
        _ => 0,
    };
    let mut labels: Vec<String> = spheres_containing(&v1).expect("spheres").iter().map(|(s, _)| s.label()).collect();
    labels.sort();
    let (_, rep) = stabilizer(&v1, cfg).expect("stabilizer");
    let mut norms: Vec<i128> = rep.mirrors.iter().map(|m| m.polar_norm).collect();
    norms.sort();
    let first = sides == 2
        && labels == ["I(A6)", "T1(I(A1))", "T1^-1 Tv(I(A1))"]
        && rep.linear_order == 16
        && rep.proj_order == 8
        && rep.linear_order / rep.proj_order == 2
        && norms == [1, 1, 2, 2];

    let g = parse_word("Ttau R T1 R (T1 I)^2 T1^-1 R T1 I T1^-1 R Ttau^-1").expect("word");
    let Elliptic::Isolated { fixed, .. } = classify_elliptic(&g, 6, cfg.precision()).expect("order 6") else {
        return outcome(false, "order-6 element is a reflection");
    };
    let (_, w) = reduce_to_domain(&fixed, cfg).expect("reduce");
    let cusp = |s: &str| CuspElt::from_matrix(&parse_word(s).expect("word")).expect("cusp");
    let mut want: Vec<Vec3O> = [(2, "Id"), (3, "Id"), (4, "R Ttau^-1"), (5, "R Ttau^-1 T1^-1"), (6, "Ttau")]
        .iter()
        .map(|(j, a)| IsomSphere::new(*j, cusp(a)).cvec)
        .collect();
    let mut got: Vec<Vec3O> = spheres_containing(&w).expect("spheres").iter().map(|(s, _)| s.cvec).collect();
    want.sort();
    got.sort();
    let (_, rep6) = stabilizer(&w, cfg).expect("stabilizer");
    let second = omega_status(&w).expect("omega").inside() && got == want && rep6.linear_order == 12 && rep6.proj_order == 6;
    outcome(
        first && second,
        format!(
            "(-taubar,0,1): {sides} prism sides, spheres {labels:?}, stabilizer {}/{} with mirror norms {norms:?}; order-6 point: {} spheres, stabilizer {}/{}",
            rep.linear_order,
            rep.proj_order,
            got.len(),
            rep6.linear_order,
            rep6.proj_order
        ),
    )
}

fn c5() -> Outcome {
    let tors: BTreeSet<GroupElt> = overlap_torsion(picard::ford::cusp_overlaps())
        .iter()
        .map(|o| o.elt.to_matrix().without_word())
        .collect();
    let want: BTreeSet<GroupElt> = ["R", "T1 R T1^-1", "Ttau R Ttau^-1", "Ttau R", "T1 Ttau R"]
        .iter()
        .map(|w| parse_word(w).expect("word").without_word())
        .collect();
    let orders_ok = tors.iter().all(|g| projective_order(g) == Some(2));
    outcome(tors == want && orders_ok, format!("{} torsion elements, all of order 2: {orders_ok}", tors.len()))
}

fn c6(cfg: &Config) -> Outcome {
    let r = verify_mirror_r(cfg).expect("mirror R");
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let orbits_ok = r.orbit_points.len() == 3;
    outcome(
        r.pass() && orbits_ok,
        format!("{} checks, failing {failed:?}, special orbits {}", r.checks.len(), r.orbit_points.len()),
    )
}

fn c7(cfg: &Config) -> Outcome {
    let r = verify_mirror_l(cfg).expect("mirror L");
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    outcome(r.pass(), format!("{} checks, failing {failed:?}", r.checks.len()))
}

fn c8(classes: &TorsionClasses, cfg: &Config) -> Outcome {
    let rel = verify_relators().expect("relators");
    let rel_ok = rel.iter().all(|r| r.trivial);
    let b_ok = b_matrix() == ttau().mul(&r_matrix());
    let rows = verify_tables_7_8(cfg).expect("rows");
    let rows_ok = rows.iter().all(|r| r.pass());
    let cov = coverage(classes, cfg).expect("coverage");
    let cov_ok = cov.iter().all(|c| c.verified);
    outcome(
        rel_ok && b_ok && rows_ok && cov_ok,
        format!(
            "relators {}/{}, B = Ttau R: {b_ok}, rows {}/{}, classes covered {}/{}",
            rel.iter().filter(|r| r.trivial).count(),
            rel.len(),
            rows.iter().filter(|r| r.pass()).count(),
            rows.len(),
            cov.iter().filter(|c| c.verified).count(),
            cov.len()
        ),
    )
}

fn c9(classes: &TorsionClasses, cfg: &Config) -> Outcome {
    let p7 = torsion_free_certificate(Ideal::Isqrt7, classes, cfg.closure_cap).expect("mod i sqrt 7");
    let p2 = torsion_free_certificate(Ideal::Tau, classes, cfg.closure_cap).expect("mod tau");
    let pass = p7.order == 336
        && p7.center_order == 1
        && p7.torsion_free
        && p7.cusp_torsion_free
        && p2.order == 168
        && !p2.torsion_free;
    outcome(
        pass,
        format!(
            "mod isqrt7: order {}, centre {}, torsion-free {}, cusp {}; mod tau: order {}, torsion-free {}",
            p7.order, p7.center_order, p7.torsion_free, p7.cusp_torsion_free, p2.order, p2.torsion_free
        ),
    )
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=12).into())
}

fn rand_horo(rng: &mut ChaCha8Rng) -> HoroPoint {
    HoroPoint {
        z: KNum::new(rand_rat(rng), rand_rat(rng)),
        s: rand_rat(rng),
        u: Rat::new(rng.gen_range(1i64..=60).into(), rng.gen_range(1i64..=20).into()),
    }
}

fn rand_cusp(rng: &mut ChaCha8Rng) -> CuspElt {
    CuspElt::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(0..2), rng.gen_range(-3..=3))
}

fn rand_word(rng: &mut ChaCha8Rng) -> GroupElt {
    let n = rng.gen_range(1..7);
    (0..n).fold(GroupElt::identity(), |g, _| {
        let x = match rng.gen_range(0..19) {
            0 => t1(),
            1 => t1().inv(),
            2 => ttau(),
            3 => ttau().inv(),
            4 => r_matrix(),
            k => generator(k - 4),
        };
        g.mul(&x)
    })
}

fn act(g: &GroupElt, h: &HoroPoint) -> HoroPoint {
    horo_coords(&g.apply_k(&lift(h))).expect("finite")
}

fn flip(s: Side) -> Side {
    match s {
        Side::Interior => Side::Exterior,
        Side::Boundary => Side::Boundary,
        Side::Exterior => Side::Interior,
    }
}

fn c10(cfg: &Config) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fails = [0usize; 5];
    for _ in 0..200 {
        let h = |rng: &mut ChaCha8Rng| HeisPt::new(KNum::new(rand_rat(rng), rand_rat(rng)), rand_rat(rng));
        let (a, b, c) = (h(&mut rng), h(&mut rng), h(&mut rng));
        if a.mul(&b).mul(&c) != a.mul(&b.mul(&c)) || a.mul(&a.inv()) != HeisPt::origin() {
            fails[0] += 1;
        }
        let g = rand_cusp(&mut rng).to_matrix();
        let (p, q) = (rand_horo(&mut rng), rand_horo(&mut rng));
        if cygan_dist4(&act(&g, &p), &act(&g, &q)) != cygan_dist4(&p, &q) {
            fails[1] += 1;
        }
        let spheres = candidate_spheres();
        let s = &spheres[rng.gen_range(0..spheres.len())];
        let x = Point::from_kvec(&lift(&p));
        if s.membership(&p) != s.side(&x).expect("side") {
            fails[2] += 1;
        }
        let w = rand_word(&mut rng);
        if !w.fixes_infinity() {
            let wi = w.inv();
            if ford_side(&x.apply(&wi), &wi).expect("side") != flip(ford_side(&x, &w).expect("side")) {
                fails[3] += 1;
            }
        }
    }
    let third = Rat::new(1.into(), 3.into());
    let base = Point::from_kvec(&lift(&HoroPoint {
        z: KNum::new(third.clone(), third),
        s: Rat::one(),
        u: Rat::from_integer(3.into()),
    }));
    for _ in 0..500 {
        let w = rand_word(&mut rng);
        match reduce_to_domain(&base.apply(&w), cfg) {
            Ok((h, y)) if y.same_point(&base) && h.mul(&w).is_identity() => {}
            _ => fails[4] += 1,
        }
    }
    let mut mod_fails = 0;
    for _ in 0..200 {
        let (g, h) = (rand_word(&mut rng), rand_word(&mut rng));
        for r in [Ideal::Isqrt7, Ideal::Tau] {
            let prod = fp_mul(&reduce_mod(&g, r), &reduce_mod(&h, r), r.p());
            let gh = reduce_mod(&g.mul(&h), r);
            if gh != prod && gh != fp_neg(&prod, r.p()) {
                mod_fails += 1;
            }
        }
    }
    let total: usize = fails.iter().sum::<usize>() + mod_fails;
    outcome(
        total == 0,
        format!(
            "failures: group law {}, Cygan invariance {}, Ford/Cygan agreement {}, inverse spheres {}, reductions {}/500, reduction mod p {}",
            fails[0], fails[1], fails[2], fails[3], fails[4], mod_fails
        ),
    )
}

fn c11() -> Outcome {
    let depths: BTreeSet<i128> = generator_table().iter().map(|g| g.entry(2, 0).norm()).collect();
    let gen_ok = depths.iter().all(|d| [1, 2, 4, 7].contains(d));
    let found = realizable_depths(11);
    let pass = gen_ok && found == [1, 2, 4, 7, 11];
    outcome(pass, format!("generator depths {depths:?}; realizable depths up to 11: {found:?}"))
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let classes = enumerate_torsion(&cfg).expect("enumeration");
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "generator table", c1()),
        (2, "reflection classes and conjugation identities", c2(&classes)),
        (3, "isolated torsion classes", c3(&classes, &cfg)),
        (4, "worked stabilizer examples", c4(&cfg)),
        (5, "cusp torsion", c5()),
        (6, "mirror of R", c6(&cfg)),
        (7, "mirror of L", c7(&cfg)),
        (8, "presentation and tables 7, 8", c8(&classes, &cfg)),
        (9, "congruence certificates", c9(&classes, &cfg)),
        (10, "property suites", c10(&cfg)),
        (11, "depth spectrum", c11()),
    ];
    let mut unexpected = vec![];
    for (n, name, o) in &results {
        println!("criterion {n:>2} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if o.pass == KNOWN_RED.contains(n) {
            unexpected.push(*n);
        }
    }
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}

use num_traits::{One, Zero};
use proptest::prelude::*;

use picard::config::Config;
use picard::congruence::{fp_mul, fp_neg, reduce_mod, Ideal};
use picard::ford::{candidate_spheres, cygan_dist4, ford_side, reduce_to_domain, Side};
use picard::gens::generator;
use picard::heisenberg::{r_matrix, t1, ttau, CuspElt, HeisPt};
use picard::hermitian::{horo_coords, lift, GroupElt, HoroPoint, Point};
use picard::ring::{KNum, Rat};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn knum() -> impl Strategy<Value = KNum> {
    (small_rat(), small_rat()).prop_map(|(a, b)| KNum::new(a, b))
}

fn heis() -> impl Strategy<Value = HeisPt> {
    (knum(), small_rat()).prop_map(|(z, s)| HeisPt::new(z, s))
}

fn horo() -> impl Strategy<Value = HoroPoint> {
    (knum(), small_rat(), 1i64..=60, 1i64..=20).prop_map(|(z, s, n, d)| HoroPoint {
        z,
        s,
        u: Rat::new(n.into(), d.into()),
    })
}

fn cusp_elt() -> impl Strategy<Value = CuspElt> {
    (-3i64..=3, -3i64..=3, 0u8..2, -3i64..=3).prop_map(|(m, n, e, l)| CuspElt::new(m, n, e, l))
}

/// Γ∞ generators and the fourteen side pairings.
fn letter(i: usize) -> GroupElt {
    match i {
        0 => t1(),
        1 => t1().inv(),
        2 => ttau(),
        3 => ttau().inv(),
        4 => r_matrix(),
        k => generator(k - 4),
    }
}

fn word() -> impl Strategy<Value = GroupElt> {
    prop::collection::vec(0usize..19, 1..7)
        .prop_map(|w| w.iter().fold(GroupElt::identity(), |g, &i| g.mul(&letter(i))))
}

fn flip(s: Side) -> Side {
    match s {
        Side::Interior => Side::Exterior,
        Side::Boundary => Side::Boundary,
        Side::Exterior => Side::Interior,
    }
}

fn act(g: &GroupElt, h: &HoroPoint) -> HoroPoint {
    horo_coords(&g.apply_k(&lift(h))).unwrap()
}

proptest! {
    #[test]
    fn heisenberg_group_law(a in heis(), b in heis(), c in heis()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&a.inv()), HeisPt::origin());
        prop_assert_eq!(a.inv().mul(&a), HeisPt::origin());
        prop_assert_eq!(a.mul(&HeisPt::origin()), a.clone());
        prop_assert_eq!(a.inv(), HeisPt::new(-&a.z, -&a.s));
        prop_assert_eq!(a.rotate().mul(&b.rotate()), a.mul(&b).rotate());
    }

    #[test]
    fn cusp_normal_forms_multiply_like_matrices(g in cusp_elt(), h in cusp_elt()) {
        prop_assert_eq!(g.mul(&h).to_matrix(), g.to_matrix().mul(&h.to_matrix()));
        prop_assert_eq!(g.inv().to_matrix(), g.to_matrix().inv());
        prop_assert_eq!(CuspElt::from_matrix(&g.to_matrix()), Some(g));
        let r = r_matrix();
        if g.eps == 0 {
            let t = g.translation();
            let conj = CuspElt::from_matrix(&r.mul(&g.to_matrix()).mul(&r)).unwrap();
            prop_assert_eq!(conj.translation(), t.rotate());
        }
    }

    #[test]
    fn translations_act_by_left_multiplication(g in cusp_elt(), p in horo()) {
        prop_assume!(g.eps == 0);
        let q = act(&g.to_matrix(), &p);
        let t = g.translation().mul(&HeisPt::new(p.z.clone(), p.s.clone()));
        prop_assert_eq!((q.z, q.s, q.u), (t.z, t.s, p.u));
    }

    #[test]
    fn cygan_left_invariance(g in cusp_elt(), p in horo(), q in horo()) {
        let m = g.to_matrix();
        prop_assert_eq!(cygan_dist4(&act(&m, &p), &act(&m, &q)), cygan_dist4(&p, &q));
        prop_assert!(cygan_dist4(&p, &p).is_zero());
        prop_assert_eq!(cygan_dist4(&p, &q), cygan_dist4(&q, &p));
    }

    #[test]
    fn ford_and_cygan_membership_agree(p in horo(), i in 0usize..190) {
        let spheres = candidate_spheres();
        let s = &spheres[i % spheres.len()];
        let x = Point::from_kvec(&lift(&p));
        prop_assert_eq!(s.membership(&p), s.side(&x).unwrap());
        prop_assert_eq!(ford_side(&x, &s.elt).unwrap(), s.side(&x).unwrap());
    }

    #[test]
    fn inverse_maps_isometric_sphere(g in word(), p in horo()) {
        prop_assume!(!g.fixes_infinity());
        let x = Point::from_kvec(&lift(&p));
        let gi = g.inv();
        prop_assert_eq!(ford_side(&x.apply(&gi), &gi).unwrap(), flip(ford_side(&x, &g).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reduction_round_trip(g in word()) {
        let cfg = Config::default();
        let third = Rat::new(1.into(), 3.into());
        let base = Point::from_kvec(&lift(&HoroPoint {
            z: KNum::new(third.clone(), third),
            s: Rat::one(),
            u: Rat::from_integer(3.into()),
        }));
        let (h, y) = reduce_to_domain(&base.apply(&g), &cfg).unwrap();
        prop_assert!(y.same_point(&base));
        prop_assert!(h.mul(&g).is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_multiplicative(g in word(), h in word()) {
        for r in [Ideal::Isqrt7, Ideal::Tau] {
            let p = r.p();
            let prod = fp_mul(&reduce_mod(&g, r), &reduce_mod(&h, r), p);
            let gh = reduce_mod(&g.mul(&h), r);
            prop_assert!(gh == prod || gh == fp_neg(&prod, p));
        }
    }
}

use picard::hermitian::{canonical_vec, herm_o, norm_o, Vec3O};
use picard::mirror::{l_polars, search_orthogonal_mirrors, MirrorContext};
use picard::ring::OInt;

/// Every vector in the box, tested directly.
fn naive(ctx: &MirrorContext, norm: i128, h: i128) -> Vec<Vec3O> {
    let n = 2 * h + 1;
    let mut out = vec![];
    for k in 0..n.pow(6) {
        let c: Vec<i128> = (0..6).map(|i| (k / n.pow(i)) % n - h).collect();
        let v = [OInt::new(c[0], c[1]), OInt::new(c[2], c[3]), OInt::new(c[4], c[5])];
        if v.iter().all(|x| x.is_zero()) || norm_o(&v) != norm || !herm_o(&v, &ctx.polar).is_zero() {
            continue;
        }
        let g = OInt::gcd(&OInt::gcd(&v[0], &v[1]).unwrap_or(OInt::ZERO), &v[2]).unwrap();
        if g.is_unit() {
            out.push(canonical_vec(v));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn search_matches_box_enumeration() {
    for ctx in [MirrorContext::of_l(), MirrorContext::of_r()] {
        for norm in [1, 2] {
            for h in 1..=2 {
                assert_eq!(
                    search_orthogonal_mirrors(&ctx, norm, h as i64).unwrap(),
                    naive(&ctx, norm, h),
                    "{} norm {norm} height {h}",
                    ctx.name
                );
            }
        }
    }
}

#[test]
fn printed_polars_are_in_the_box() {
    let ctx = MirrorContext::of_l();
    let found1 = naive(&ctx, 1, 3);
    let found2 = naive(&ctx, 2, 3);
    for v in l_polars() {
        let v = canonical_vec(v);
        assert!(found1.contains(&v) || found2.contains(&v), "{v:?}");
    }
}

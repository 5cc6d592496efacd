//! The two-generator presentation with `a ↦ A`, `b ↦ B`, `c = ab`, `d = ba`.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::error::Result;
use crate::gens::{a_matrix, b_matrix};
use crate::hermitian::{herm_inner, GroupElt, Vec3K};
use crate::ring::KNum;
use crate::tables::fixes_kvec;
use crate::torsion::{
    check_match, classify_elliptic, locate_class, projective_order, ClassRef, Elliptic, TorsionClasses,
};
use crate::words::parse_word;

pub fn ab_matrices() -> (GroupElt, GroupElt) {
    (a_matrix(), b_matrix())
}

pub const RELATORS: [&str; 10] = [
    "a^7",
    "b^2",
    "c^6",
    "(a d^2)^4",
    "(c^-2 d^2)^4",
    "(c d^-1 c^2 d^-2)^3",
    "(c d^-2 c^2 d^-1)^3",
    "(d^2 c^-1 a^-2 d^3 c^2 a^-2)^2",
    "c^-1 a b",
    "d^-1 b a",
];

#[derive(Clone, Debug, Serialize)]
pub struct RelatorCheck {
    pub relator: String,
    pub trivial: bool,
}

pub fn verify_relators() -> Result<Vec<RelatorCheck>> {
    RELATORS
        .par_iter()
        .map(|w| Ok(RelatorCheck { relator: w.to_string(), trivial: parse_word(w)?.is_identity() }))
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub table: u8,
    pub row: u8,
    pub order: u32,
    pub word: &'static str,
    /// Other words printed as equal to `word`.
    pub aliases: &'static [&'static str],
    pub fixed: Option<[&'static str; 3]>,
    pub norm: Option<i128>,
    pub other: &'static str,
}

const fn tr(
    table: u8,
    row: u8,
    order: u32,
    word: &'static str,
    aliases: &'static [&'static str],
    fixed: Option<[&'static str; 3]>,
    norm: Option<i128>,
    other: &'static str,
) -> TableRow {
    TableRow { table, row, order, word, aliases, fixed, norm, other }
}

pub const ROWS: [TableRow; 12] = [
    tr(7, 1, 2, "b", &[], Some(["1", "-tau", "0"]), Some(2), "Ttau R"),
    tr(7, 2, 2, "(b a)^3", &["d^3", "a^-1 c^3 a"], Some(["tau", "0", "1"]), Some(1), "T1 I T1^-1 R T1 I T1^-1"),
    tr(
        7,
        3,
        2,
        "((a b a)^-1 b a b a b)^2",
        &["(d^-2 c^2)^2"],
        Some(["tau", "1", "1-tau"]),
        Some(-2),
        "T1^2 I (T1^-1 I)^2 T1^2 I",
    ),
    tr(
        7,
        4,
        2,
        "(a b a b a)^2",
        &["(a d^2)^2"],
        Some(["tau+1", "1", "1-tau"]),
        Some(-1),
        "A2 (R T1 I T1^-1)^2 A2^-1",
    ),
    tr(7, 5, 3, "(b a)^2", &["d^2"], None, None, "T1 (I T1^-1 R)^3"),
    tr(
        7,
        6,
        3,
        "[b, a^-1 b a b a b]",
        &["c^-1 d^2 c^-2 d"],
        Some(["3+i7", "1", "1-tau"]),
        Some(-3),
        "Tv I Ttau J I Tv^-1",
    ),
    tr(
        7,
        7,
        4,
        "(a b a)^-1 b a b a b",
        &["d^-2 c^2"],
        Some(["tau", "1", "1-tau"]),
        Some(-2),
        "I T1^-1 (I T1)^2 I T1^-1",
    ),
    tr(
        7,
        8,
        4,
        "a b a b a",
        &["a d"],
        Some(["tau+1", "1", "1-tau"]),
        Some(-1),
        "T1 I (T1^-1 I)^2 T1 I R T1 I T1^-1",
    ),
    tr(7, 9, 6, "a b", &["c"], None, None, "R T1 I R (T1 I)^2 T1^-2"),
    tr(7, 10, 7, "a", &[], None, None, "T1 R T1 I R T1 I"),
    tr(
        8,
        1,
        2,
        "(a b a)^-1 (d^2 c^-1 a^-2 d^3 c^2 a^-2) a b a",
        &[],
        Some(["1", "0", "-1"]),
        Some(-2),
        "J",
    ),
    tr(
        8,
        2,
        3,
        "a^-1 b a^-1 b a b a b a^-1 b a b",
        &["d^-2 c^2 d^-1 c"],
        Some(["tau+1", "1-tau", "-tau"]),
        Some(-3),
        "T1 I Ttaubar^-1 J I T1^-1",
    ),
];

#[derive(Clone, Debug, Serialize)]
pub struct AliasCheck {
    pub alias: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowCheck {
    pub paper_table: u8,
    pub row: u8,
    pub word: String,
    pub order: Option<u32>,
    pub order_ok: bool,
    /// Fixed point fixed and of the printed norm, or, when none is printed,
    /// the fixed point is not K-rational.
    pub fixed_ok: bool,
    pub other: String,
    pub other_ok: bool,
    pub aliases: Vec<AliasCheck>,
}

impl RowCheck {
    pub fn pass(&self) -> bool {
        self.order_ok && self.fixed_ok && self.other_ok
    }
}

fn kvec(v: &[&str; 3]) -> Vec3K {
    v.map(|x| x.parse::<KNum>().expect("literal"))
}

fn check_row(r: &TableRow, cfg: &Config) -> Result<RowCheck> {
    let g = parse_word(r.word)?;
    let order = projective_order(&g);
    let order_ok = order == Some(r.order);
    let fixed_ok = order_ok
        && match r.fixed {
            Some(v) => {
                let v = kvec(&v);
                fixes_kvec(&g, &v) && r.norm.is_some_and(|n| herm_inner(&v, &v) == KNum::from_int(n))
            }
            None => matches!(
                classify_elliptic(&g, r.order, cfg.precision())?,
                Elliptic::Isolated { norm: None, .. }
            ),
        };
    let aliases = r
        .aliases
        .iter()
        .map(|a| Ok(AliasCheck { alias: a.to_string(), equal: parse_word(a)? == g }))
        .collect::<Result<_>>()?;
    Ok(RowCheck {
        paper_table: r.table,
        row: r.row,
        word: r.word.to_string(),
        order,
        order_ok,
        fixed_ok,
        other: r.other.to_string(),
        other_ok: parse_word(r.other)? == g,
        aliases,
    })
}

pub fn verify_tables_7_8(cfg: &Config) -> Result<Vec<RowCheck>> {
    ROWS.par_iter().map(|r| check_row(r, cfg)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Coverage {
    pub class: ClassRef,
    pub element: Option<String>,
    pub witness: Option<GroupElt>,
    pub verified: bool,
}

/// For every enumerated class, a power of a table element conjugate to it.
pub fn coverage(classes: &TorsionClasses, cfg: &Config) -> Result<Vec<Coverage>> {
    let mut powers: Vec<(String, GroupElt)> = vec![];
    for r in &ROWS {
        let g = parse_word(r.word)?;
        let n = projective_order(&g).unwrap_or(1);
        for k in 1..n {
            if n % k == 0 {
                let name = if k == 1 { r.word.to_string() } else { format!("({})^{k}", r.word) };
                powers.push((name, g.pow(k as i64)));
            }
        }
    }
    let located: Vec<(String, GroupElt, Option<crate::torsion::ClassMatch>)> = powers
        .into_par_iter()
        .map(|(name, g)| {
            let m = locate_class(&g, classes, cfg)?;
            Ok((name, g, m))
        })
        .collect::<Result<_>>()?;
    let all = (0..classes.reflections.len())
        .map(ClassRef::Reflection)
        .chain((0..classes.isolated.len()).map(ClassRef::Isolated));
    Ok(all
        .map(|c| {
            let hit = located.iter().find(|(_, _, m)| m.as_ref().is_some_and(|m| m.class == c));
            match hit {
                Some((name, g, Some(m))) => Coverage {
                    class: c,
                    element: Some(name.clone()),
                    witness: Some(m.witness.clone()),
                    verified: check_match(g, m, classes),
                },
                _ => Coverage { class: c, element: None, witness: None, verified: false },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{r_matrix, ttau};
    use crate::hermitian::is_in_gamma;

    #[test]
    fn generators() {
        let (a, b) = ab_matrices();
        assert!(is_in_gamma(&a.kmat()) && is_in_gamma(&b.kmat()));
        assert_eq!(b, ttau().mul(&r_matrix()));
        assert_eq!(projective_order(&a), Some(7));
        assert!(b.pow(2).is_identity());
    }

    #[test]
    fn relators_hold() {
        assert!(verify_relators().unwrap().iter().all(|r| r.trivial));
    }
}

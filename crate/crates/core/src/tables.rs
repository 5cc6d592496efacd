//! Printed representatives of the torsion classes, checked against the
//! enumeration.

use serde::Serialize;

use crate::config::Config;
use crate::error::Result;
use crate::hermitian::{herm_inner, GroupElt, Vec3K};
use crate::ring::KNum;
use crate::torsion::{
    classify_elliptic, locate_class, projective_order, ClassRef, Elliptic, TorsionClasses, TorsionReport,
};
use crate::words::parse_word;

#[derive(Clone, Copy, Debug)]
pub struct PrintedClass {
    pub table: u8,
    pub row: u8,
    pub order: u32,
    pub word: &'static str,
    pub matrix: [[&'static str; 3]; 3],
    /// Polar vector for reflections, fixed point otherwise; `None` when the
    /// fixed point is not K-rational.
    pub point: Option<[&'static str; 3]>,
    pub norm: Option<i128>,
    pub stab: Option<usize>,
    pub one_lines: usize,
    pub two_lines: usize,
    pub two_line_orbits: Option<&'static [usize]>,
}

const fn row(
    table: u8,
    row: u8,
    order: u32,
    word: &'static str,
    matrix: [[&'static str; 3]; 3],
    point: Option<[&'static str; 3]>,
    norm: Option<i128>,
    stab: Option<usize>,
    lines: (usize, usize),
) -> PrintedClass {
    PrintedClass {
        table,
        row,
        order,
        word,
        matrix,
        point,
        norm,
        stab,
        one_lines: lines.0,
        two_lines: lines.1,
        two_line_orbits: None,
    }
}

pub const PRINTED: [PrintedClass; 12] = [
    row(1, 1, 2, "R", [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]], Some(["0", "1", "0"]), Some(1), None, (0, 0)),
    row(1, 2, 2, "I", [["0", "0", "1"], ["0", "-1", "0"], ["1", "0", "0"]], Some(["1", "0", "1"]), Some(2), None, (0, 0)),
    row(
        2,
        1,
        2,
        "(R T1 I T1^-1)^2",
        [["i7", "0", "4"], ["0", "1", "0"], ["2", "0", "-i7"]],
        Some(["tau-1", "0", "1"]),
        Some(-1),
        Some(8),
        (2, 2),
    ),
    row(2, 2, 2, "I R", [["0", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]], Some(["-1", "0", "1"]), Some(-2), Some(4), (1, 1)),
    row(
        2,
        3,
        2,
        "T1^2 I (T1^-1 I)^2 T1^2 I",
        [["tau-1", "tau", "2"], ["tau", "2", "1-tau"], ["2", "1-tau", "-tau"]],
        Some(["tau", "1", "1-tau"]),
        Some(-2),
        Some(8),
        (0, 4),
    ),
    row(
        3,
        1,
        3,
        "T1 (I T1^-1)^2 (I T1)^2",
        [["-1", "tau", "1"], ["tau-1", "1", "0"], ["1", "0", "0"]],
        Some(["tau", "1", "-tau"]),
        Some(-3),
        Some(6),
        (0, 3),
    ),
    row(
        3,
        2,
        3,
        "T1^2 (I T1^-1)^2 (I T1)^2",
        [["-1", "tau-1", "1"], ["tau", "1", "0"], ["1", "0", "0"]],
        Some(["tau-1", "1", "1-tau"]),
        Some(-3),
        Some(6),
        (0, 3),
    ),
    row(
        3,
        3,
        3,
        "(R T1)^2 I T1 I T1^-1 R T1 I T1^-1",
        [["5", "0", "-3*i7"], ["0", "-1", "0"], ["-i7", "0", "-4"]],
        None,
        None,
        Some(6),
        (1, 0),
    ),
    row(
        4,
        1,
        4,
        "I T1^-1 R T1",
        [["0", "0", "1"], ["0", "1", "2"], ["1", "-2", "-2"]],
        Some(["-1", "-1", "1"]),
        Some(-1),
        Some(8),
        (2, 2),
    ),
    PrintedClass {
        two_line_orbits: Some(&[2, 2]),
        ..row(
            4,
            2,
            4,
            "(T1^-1 I)^2 (T1 I)^2",
            [["0", "0", "1"], ["0", "1", "2-tau"], ["1", "-1-tau", "-2"]],
            Some(["1-tau", "-tau", "tau-1"]),
            Some(-2),
            Some(8),
            (0, 4),
        )
    },
    row(
        5,
        1,
        6,
        "T1 R (T1 I)^2 T1^-1 R T1 I T1^-1",
        [["-5", "0", "3*i7"], ["0", "-1", "0"], ["i7", "0", "4"]],
        None,
        None,
        Some(6),
        (1, 0),
    ),
    row(6, 1, 7, "I R T1", [["0", "0", "1"], ["0", "1", "1"], ["1", "-1", "tau-1"]], None, None, Some(7), (0, 0)),
];

fn kvec(v: &[&str; 3]) -> Vec3K {
    v.map(|x| x.parse::<KNum>().expect("literal"))
}

/// `g v ∥ v`
pub fn fixes_kvec(g: &GroupElt, v: &Vec3K) -> bool {
    let w = g.apply_k(v);
    (0..3).all(|i| (i + 1..3).all(|j| (&w[i] * &v[j] - &w[j] * &v[i]).is_zero()))
}

#[derive(Clone, Debug, Serialize)]
pub struct PrintedCheck {
    pub paper_table: u8,
    pub row: u8,
    pub word: String,
    pub word_matches_matrix: bool,
    pub order: Option<u32>,
    pub order_ok: bool,
    pub point_ok: bool,
    pub class: Option<ClassRef>,
    pub witness_ok: bool,
    pub stab_ok: bool,
    pub lines_ok: bool,
}

impl PrintedCheck {
    pub fn pass(&self) -> bool {
        self.word_matches_matrix && self.order_ok && self.point_ok && self.witness_ok && self.stab_ok && self.lines_ok
    }
}

/// Checks every printed row and locates it among the enumerated classes.
pub fn check_printed(classes: &TorsionClasses, report: &TorsionReport, cfg: &Config) -> Result<Vec<PrintedCheck>> {
    PRINTED.iter().map(|p| check_row(p, classes, report, cfg)).collect()
}

fn check_row(p: &PrintedClass, classes: &TorsionClasses, report: &TorsionReport, cfg: &Config) -> Result<PrintedCheck> {
    let g = parse_word(p.word)?;
    let printed = GroupElt::from_kmat(&p.matrix.map(|r| r.map(|x| x.parse::<KNum>().expect("literal"))))?;
    let order = projective_order(&g);
    let order_ok = order == Some(p.order);
    let point_ok = order_ok
        && match (p.point, classify_elliptic(&g, p.order, cfg.precision())?) {
            (Some(v), Elliptic::Reflection { polar, polar_norm }) => {
                let v = kvec(&v);
                p.norm == Some(polar_norm)
                    && fixes_kvec(&g, &v)
                    && crate::hermitian::primitive_rep(&v)? == polar
            }
            (Some(v), Elliptic::Isolated { norm, .. }) => {
                let v = kvec(&v);
                fixes_kvec(&g, &v) && herm_inner(&v, &v) == KNum::from_int(p.norm.unwrap_or(0)) && norm == p.norm
            }
            (None, Elliptic::Isolated { norm, .. }) => norm.is_none(),
            (None, Elliptic::Reflection { .. }) => false,
        };
    let found = locate_class(&g, classes, cfg)?;
    let witness_ok = found.as_ref().is_some_and(|m| crate::torsion::check_match(&g, m, classes));
    let (stab_ok, lines_ok) = match found.as_ref().map(|m| m.class) {
        Some(ClassRef::Isolated(i)) => {
            let st = &report.isolated[i].stabilizer;
            let orbits_ok = p.two_line_orbits.is_none_or(|o| st.two_line_orbits == o);
            (
                p.stab == Some(st.proj_order),
                st.one_lines == p.one_lines && st.two_lines == p.two_lines && orbits_ok,
            )
        }
        Some(ClassRef::Reflection(_)) => (p.stab.is_none(), true),
        None => (false, false),
    };
    Ok(PrintedCheck {
        paper_table: p.table,
        row: p.row,
        word: p.word.to_string(),
        word_matches_matrix: g == printed,
        order,
        order_ok,
        point_ok,
        class: found.map(|m| m.class),
        witness_ok,
        stab_ok,
        lines_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

fn identity(lhs: &str, rhs: &str) -> Result<IdentityCheck> {
    Ok(IdentityCheck {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds: parse_word(lhs)? == parse_word(rhs)?,
    })
}

/// The three printed conjugations between reflections, as printed.
pub fn reflection_identities() -> Result<Vec<IdentityCheck>> {
    let n = GroupElt::from_kmat(&[["i7", "0", "4"], ["0", "-1", "0"], ["2", "0", "-i7"]].map(|r| {
        r.map(|x| x.parse::<KNum>().expect("literal"))
    }))?;
    let rhs = parse_word("T1 I T1^-1 R (T1 I T1)^-1")?;
    Ok(vec![
        identity("(T1 R)^2 T1^-1 Ttau R ((T1 R)^2 T1^-1)^-1", "I")?,
        identity("[T1, I] Ttau R [T1, I]^-1", "T1 Ttau R")?,
        IdentityCheck {
            lhs: n.to_string(),
            rhs: "T1 I T1^-1 R (T1 I T1)^-1".into(),
            holds: n == rhs,
        },
    ])
}

/// Nearby variants of the two failing identities that do hold.
pub fn reflection_identity_variants() -> Result<Vec<IdentityCheck>> {
    let n = GroupElt::from_kmat(&[["i7", "0", "4"], ["0", "-1", "0"], ["2", "0", "-i7"]].map(|r| {
        r.map(|x| x.parse::<KNum>().expect("literal"))
    }))?;
    let rhs = parse_word("T1 I T1^-1 R (T1 I T1^-1)^-1")?;
    Ok(vec![
        identity("(T1 I)^2 T1^-1 Ttau R ((T1 I)^2 T1^-1)^-1", "I")?,
        IdentityCheck {
            lhs: n.to_string(),
            rhs: "T1 I T1^-1 R (T1 I T1^-1)^-1".into(),
            holds: n == rhs,
        },
    ])
}

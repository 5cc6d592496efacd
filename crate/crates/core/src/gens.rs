//! Named matrices: the fourteen Ford generators, the two-generator pair
//! `a, b` and the mirror elements `s₁, s₂`.

use std::sync::OnceLock;

use crate::heisenberg::{r_matrix, t1, ttau, ttaubar, tv};
use crate::hermitian::{GroupElt, Mat3};
use crate::ring::KNum;

fn mat(rows: [[&str; 3]; 3], name: &str) -> GroupElt {
    let k = rows.map(|r| r.map(|x| x.parse::<KNum>().expect("literal")));
    GroupElt::from_kmat(&k).expect("generator lies in Γ").named(name)
}

pub fn i_matrix() -> GroupElt {
    mat([["0", "0", "1"], ["0", "-1", "0"], ["1", "0", "0"]], "I")
}

/// `J = RI`
pub fn j_matrix() -> GroupElt {
    r_matrix().mul(&i_matrix()).named("J")
}

const A_ROWS: [[&str; 3]; 3] = [["-tau-2", "i7", "i7"], ["-1", "1", "0"], ["tau-1", "1", "1"]];
const B_ROWS: [[&str; 3]; 3] = [["1", "1-tau", "-1"], ["0", "-1", "tau"], ["0", "0", "1"]];

pub fn a_matrix() -> GroupElt {
    mat(A_ROWS, "a")
}

pub fn b_matrix() -> GroupElt {
    mat(B_ROWS, "b")
}

/// `A` and `B` with their printed signs; a [`GroupElt`] keeps a canonical sign.
pub fn ab_lifts() -> [Mat3; 2] {
    [A_ROWS, B_ROWS].map(|m| m.map(|r| r.map(|x| x.parse::<KNum>().ok().and_then(|k| k.to_oint()).expect("literal"))))
}

pub fn s1_matrix() -> GroupElt {
    mat(
        [["-tau-1", "tau-2", "3-tau"], ["3*tau", "4", "-5"], ["6", "3-3*tau", "5*tau-4"]],
        "s1",
    )
}

pub fn s2_matrix() -> GroupElt {
    mat(
        [["tau-3", "i7", "-i7"], ["4-tau", "1-i7", "i7"], ["-2*i7", "-tau-3", "tau+4"]],
        "s2",
    )
}

/// `A₁, …, A₁₄`, indexed from 0.
pub fn generator_table() -> &'static [GroupElt; 14] {
    static TABLE: OnceLock<[GroupElt; 14]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let a1 = i_matrix();
        let a2 = mat(
            [["2", "-tau", "1-3*tau"], ["1-tau", "0", "-2-tau"], ["-tau", "-1", "-3+tau"]],
            "",
        );
        let a6 = mat([["i7", "0", "4"], ["0", "1", "0"], ["2", "0", "-i7"]], "");
        let a7 = mat([["tau-1", "1", "1"], ["tau", "0", "1"], ["2", "1-tau", "-tau"]], "");
        let a8 = mat(
            [["1", "2-tau", "-2"], ["-1-tau", "-3", "1+tau"], ["-2", "-2+tau", "1"]],
            "",
        );
        let a9 = mat([["-1", "0", "i7"], ["0", "1", "0"], ["i7", "0", "6"]], "");
        let a10 = mat([["-2", "0", "i7"], ["0", "1", "0"], ["i7", "0", "3"]], "");
        let a12 = mat([["-4", "0", "3*i7"], ["0", "1", "0"], ["i7", "0", "5"]], "");
        let a4 = a2.pow(-2);
        let list = [
            a1,
            a2.clone(),
            a2.inv(),
            a4.clone(),
            a4.inv(),
            a6,
            a7,
            a8,
            a9.clone(),
            a10.clone(),
            a10.inv(),
            a12.clone(),
            a12.inv(),
            a9.inv(),
        ];
        let mut i = 0;
        list.map(|g| {
            i += 1;
            g.named(format!("A{i}"))
        })
    })
}

/// `A_j` for `j` in `1..=14`.
pub fn generator(j: usize) -> GroupElt {
    generator_table()[j - 1].clone()
}

/// Looks up a single generator symbol.
pub fn by_name(name: &str) -> Option<GroupElt> {
    let g = match name {
        "Id" => GroupElt::identity(),
        "T1" => t1(),
        "Ttau" => ttau(),
        "Ttaubar" => ttaubar(),
        "Tv" => tv(),
        "R" => r_matrix(),
        "I" => i_matrix(),
        "J" => j_matrix(),
        "M" => generator(6).named("M"),
        "a" => a_matrix(),
        "b" => b_matrix(),
        "c" => a_matrix().mul(&b_matrix()).named("c"),
        "d" => b_matrix().mul(&a_matrix()).named("d"),
        "s1" => s1_matrix(),
        "s2" => s2_matrix(),
        _ => {
            let j: usize = name.strip_prefix('A')?.parse().ok()?;
            if !(1..=14).contains(&j) {
                return None;
            }
            generator(j)
        }
    };
    Some(g)
}

pub const SYMBOLS: &[&str] = &[
    "Id", "T1", "Ttau", "Ttaubar", "Tv", "R", "I", "J", "M", "a", "b", "c", "d", "s1", "s2",
    "A1..A14",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{depth, to_kvec};

    #[test]
    fn generator_relations() {
        let a = generator_table();
        let id = GroupElt::identity();
        for (j, k) in [(1, 1), (2, 3), (4, 5), (6, 6), (7, 7), (8, 8), (9, 14), (10, 11), (12, 13)] {
            assert_eq!(a[j - 1].mul(&a[k - 1]), id, "A{j} A{k}");
        }
        assert_eq!(a[3], a[1].pow(-2));
        let depths: Vec<i128> = a.iter().map(|g| depth(&to_kvec(&g.col(0))).unwrap()).collect();
        assert_eq!(depths, vec![1, 2, 2, 4, 4, 4, 4, 4, 7, 7, 7, 7, 7, 7]);
        assert_eq!(b_matrix(), ttau().mul(&r_matrix()));
    }

    #[test]
    fn names() {
        assert_eq!(by_name("A6").unwrap(), by_name("M").unwrap());
        assert!(by_name("A15").is_none());
        assert!(by_name("Q").is_none());
    }
}

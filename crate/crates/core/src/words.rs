//! Words in named generators.
//!
//! Grammar: a word is a sequence of factors separated by optional spaces.
//! A factor is a symbol from [`crate::gens::SYMBOLS`], a parenthesised
//! word, or a commutator `[x, y] = x y x⁻¹ y⁻¹`, optionally followed by
//! `^n` or `^-n`. Symbols are matched greedily, so `T1I` reads as `T1 I`.

use crate::error::{Error, Result};
use crate::gens::by_name;
use crate::hermitian::GroupElt;

/// Ordered so that longer names win.
const NAMES: &[&str] = &[
    "Ttaubar", "Ttau", "T1", "Tv", "Id", "s1", "s2", "R", "I", "J", "M", "a", "b", "c", "d",
];

/// Nesting cap for untrusted input.
const MAX_DEPTH: usize = 64;
const MAX_EXP: i64 = 10_000;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<GroupElt> {
        let mut acc = GroupElt::identity();
        let mut parts: Vec<String> = vec![];
        while let Some(c) = self.peek() {
            if c == b')' || c == b',' || c == b']' {
                break;
            }
            let (g, w) = self.factor()?;
            acc = acc.checked_mul(&g).ok_or_else(|| self.err("overflow"))?;
            parts.push(w);
        }
        let w = if parts.is_empty() { "Id".to_string() } else { parts.join(" ") };
        Ok(acc.named(w))
    }

    fn factor(&mut self) -> Result<(GroupElt, String)> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        let (g, w) = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let g = self.word()?;
                self.expect(b')')?;
                let w = format!("({})", g.word().unwrap_or("Id"));
                (g, w)
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(b',')?;
                let y = self.word()?;
                self.expect(b']')?;
                let g = x
                    .checked_mul(&y)
                    .and_then(|g| g.checked_mul(&x.inv()))
                    .and_then(|g| g.checked_mul(&y.inv()))
                    .ok_or_else(|| self.err("overflow"))?;
                let w = format!("[{}, {}]", x.word().unwrap_or("Id"), y.word().unwrap_or("Id"));
                (g, w)
            }
            Some(_) => self.symbol()?,
            None => return Err(self.err("unexpected end")),
        };
        self.depth -= 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.exponent()?;
            let p = checked_pow(&g, n).ok_or_else(|| self.err("overflow"))?;
            let w = if w.len() > 1 && !w.starts_with('(') && !w.starts_with('[') {
                format!("({w})^{n}")
            } else {
                format!("{w}^{n}")
            };
            return Ok((p, w));
        }
        Ok((g, w))
    }

    fn symbol(&mut self) -> Result<(GroupElt, String)> {
        let rest = &self.s[self.pos..];
        if rest.first() == Some(&b'A') {
            let digits: usize = rest[1..].iter().take_while(|c| c.is_ascii_digit()).count();
            if digits > 0 {
                let name = std::str::from_utf8(&rest[..1 + digits]).unwrap();
                let g = by_name(name).ok_or_else(|| self.err(&format!("unknown symbol {name}")))?;
                self.pos += 1 + digits;
                return Ok((g, name.to_string()));
            }
        }
        for name in NAMES {
            if rest.starts_with(name.as_bytes()) {
                self.pos += name.len();
                return Ok((by_name(name).unwrap(), name.to_string()));
            }
        }
        Err(self.err("unknown symbol"))
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.s.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("missing exponent"));
        }
        let n: i64 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("bad exponent"))?;
        if n > MAX_EXP {
            return Err(self.err("exponent too large"));
        }
        Ok(if neg { -n } else { n })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }
}

fn checked_pow(g: &GroupElt, n: i64) -> Option<GroupElt> {
    let base = if n < 0 { g.inv() } else { g.clone() };
    let mut acc = GroupElt::identity();
    let mut sq = base;
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.checked_mul(&sq)?;
        }
        k >>= 1;
        if k > 0 {
            sq = sq.checked_mul(&sq)?;
        }
    }
    Some(acc)
}

/// Evaluates a word to a group element carrying the word as its name.
pub fn parse_word(s: &str) -> Result<GroupElt> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, depth: 0 };
    let g = p.word()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(g.named(s.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens::generator;
    use crate::heisenberg::{r_matrix, t1, ttau, tv};

    #[test]
    fn basic_words() {
        assert!(parse_word("").unwrap().is_identity());
        assert_eq!(parse_word("Ttau R").unwrap(), ttau().mul(&r_matrix()));
        assert_eq!(parse_word("TtauR").unwrap(), ttau().mul(&r_matrix()));
        assert_eq!(parse_word("[Ttau, T1]").unwrap(), tv());
        assert_eq!(parse_word("T1^-3").unwrap(), t1().pow(-3));
        assert_eq!(parse_word("(R T1)^2").unwrap(), tv());
        assert_eq!(parse_word("A12 A13").unwrap(), GroupElt::identity());
        assert_eq!(parse_word("M").unwrap(), generator(6));
        assert_eq!(parse_word("c").unwrap(), parse_word("a b").unwrap());
    }

    #[test]
    fn table_word() {
        // (RT₁IT₁⁻¹)² = A₆
        assert_eq!(parse_word("(R T1 I T1^-1)^2").unwrap(), generator(6));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["(", "T1^", "[T1 T1]", "X", "T1)", "A0", "A15", "T1^99999999999999999999"] {
            assert!(parse_word(s).is_err(), "{s}");
        }
    }
}

//! Arithmetic in K = Q(i√7), its ring of integers O₇, and certified
//! enclosures of algebraic numbers over K.

mod ball;
mod field;
mod knum;
mod oint;
mod poly;

pub use ball::{sqrt7_floor, CBall};
pub use field::{same_field, AlgNum, NumField, Precision, DEFAULT_PRECISION, MAX_PRECISION};
pub use knum::{rat, rint, KNum, Rat};
pub use oint::OInt;
pub use poly::KPoly;

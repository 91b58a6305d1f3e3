//! Exact-arithmetic toolkit for symmetric tensor-rank decompositions of
//! finite-field multiplication, built on linearized polynomials, plus the
//! symmetric tensor rank of symmetric rank-metric codes.

pub mod arith;
pub mod basis;
pub mod decomp;
pub mod field;
pub mod linpoly;
pub mod matrix;
pub mod multtensor;
pub mod refdata;
pub mod reproduce;
pub mod symcodes;

//! Coefficient systems for symmetric decompositions and their exact solvers.
//!
//! Writing the slice of xi^i as a combination of rank-one terms a Tr(a x)
//! with unknown F_q coefficients y_j leads, coefficient by coefficient, to
//! the system  sum_j y_j alpha_j^{q^t + 1} = delta_{t0} xi^i  (t < m).
//! Conjugating any equation by Frobenius yields another valid equation with
//! exponent pair shifted by one, so the system closes up to rows indexed by
//! unordered exponent pairs {a, b}; that closure is the starred system,
//! and it has the same F_q solution set.

pub mod construct;
pub mod fpoly;
pub mod search;

use crate::field::{Elt, Field, FieldError};
use crate::matrix::MatrixGf;
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum DecompError {
    ZeroAlpha { index: usize },
    NotSquare,
    Singular,
    SolutionNotInBase,
    UnsupportedDegree { m: usize },
    UnsupportedOrder { q: u64 },
    NoAdmissibleElement,
    CapExceeded { needed: u128 },
    Field(FieldError),
}

impl fmt::Display for DecompError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompError::ZeroAlpha { index } => write!(f, "alpha {index} is zero"),
            DecompError::NotSquare => write!(f, "system is not square"),
            DecompError::Singular => write!(f, "system matrix is singular"),
            DecompError::SolutionNotInBase => {
                write!(f, "unique solution has components outside F_q")
            }
            DecompError::UnsupportedDegree { m } => {
                write!(f, "no construction implemented for m = {m}")
            }
            DecompError::UnsupportedOrder { q } => {
                write!(f, "no reference data for q = {q}")
            }
            DecompError::NoAdmissibleElement => {
                write!(f, "no admissible element found in the field")
            }
            DecompError::CapExceeded { needed } => {
                write!(f, "field has {needed} elements, past the configured cap")
            }
            DecompError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DecompError {}

impl From<FieldError> for DecompError {
    fn from(e: FieldError) -> Self {
        DecompError::Field(e)
    }
}

/// A linear system over F_{q^m} whose unknowns are constrained to F_q.
pub struct ConstrainedSystem {
    pub field: Field,
    /// rows x R over the top field.
    pub matrix: MatrixGf,
    pub rhs: Vec<Elt>,
}

fn check_alphas(field: &Field, alphas: &[Elt]) -> Result<(), DecompError> {
    for (index, a) in alphas.iter().enumerate() {
        if field.is_zero(a) {
            return Err(DecompError::ZeroAlpha { index });
        }
    }
    Ok(())
}

/// The plain system: m rows, row t has entries alpha_j^{q^t + 1} and
/// right-hand side delta_{t0} xi^i.
pub fn build_sigma(
    field: &Field,
    alphas: &[Elt],
    xi: &Elt,
    i: usize,
) -> Result<ConstrainedSystem, DecompError> {
    check_alphas(field, alphas)?;
    let m = field.ext_degree();
    let target = field.pow(xi, i as u128);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for t in 0..m {
        let row: Vec<Elt> = alphas
            .iter()
            .map(|a| field.mul(&field.frobenius_pow(a, t), a))
            .collect();
        rows.push(row);
        rhs.push(if t == 0 { target.clone() } else { field.zero() });
    }
    Ok(ConstrainedSystem {
        field: field.clone(),
        matrix: MatrixGf::from_rows(field, rows),
        rhs,
    })
}

/// The Frobenius closure: one row per unordered exponent pair {a, b},
/// emitted orbit by orbit (the diagonal orbit of row 0 first, then the
/// orbits of rows 1, 2, ...), each pair only the first time it appears.
/// Right-hand sides are the Frobenius conjugates of xi^i on the diagonal
/// orbit and zero elsewhere.
pub fn build_sigma_star(
    field: &Field,
    alphas: &[Elt],
    xi: &Elt,
    i: usize,
) -> Result<ConstrainedSystem, DecompError> {
    check_alphas(field, alphas)?;
    let m = field.ext_degree();
    let target = field.pow(xi, i as u128);
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for t in 0..m {
        for j in 0..m {
            let pair = ((t + j) % m, j);
            let key = (pair.0.max(pair.1), pair.0.min(pair.1));
            if !seen.insert(key) {
                continue;
            }
            let row: Vec<Elt> = alphas
                .iter()
                .map(|a| {
                    field.mul(
                        &field.frobenius_pow(a, pair.0),
                        &field.frobenius_pow(a, pair.1),
                    )
                })
                .collect();
            rows.push(row);
            rhs.push(if t == 0 {
                field.frobenius_pow(&target, j)
            } else {
                field.zero()
            });
        }
    }
    Ok(ConstrainedSystem {
        field: field.clone(),
        matrix: MatrixGf::from_rows(field, rows),
        rhs,
    })
}

/// Exponent pairs {a, b} of the starred system in emission order.
pub fn sigma_star_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in 0..m {
        for j in 0..m {
            let pair = ((t + j) % m, j);
            let key = (pair.0.max(pair.1), pair.0.min(pair.1));
            if seen.insert(key) {
                out.push(key);
            }
        }
    }
    out
}

/// Expands each F_{q^m} equation into m power-basis coordinate equations
/// over F_q and solves all right-hand sides against the shared matrix with
/// one elimination (free variables zero).
pub fn solve_fq_constrained_multi(
    field: &Field,
    matrix: &MatrixGf,
    rhs_list: &[Vec<Elt>],
) -> Vec<Option<Vec<Elt>>> {
    let base = field.base();
    let m = field.ext_degree();
    let rows = matrix.rows();
    let cols = matrix.cols();
    let coords: Vec<Vec<Vec<Elt>>> = (0..rows)
        .map(|t| (0..cols).map(|j| field.coords(matrix.get(t, j))).collect())
        .collect();
    let expanded = MatrixGf::from_fn(&base, rows * m, cols, |r, j| {
        coords[r / m][j][r % m].clone()
    });
    let expanded_rhs: Vec<Vec<Elt>> = rhs_list
        .iter()
        .map(|rhs| {
            assert_eq!(rhs.len(), rows, "rhs length mismatch");
            let mut v = Vec::with_capacity(rows * m);
            for e in rhs {
                v.extend(field.coords(e));
            }
            v
        })
        .collect();
    expanded.solve_many(&expanded_rhs)
}

/// F_q solution of one constrained system, if any.
pub fn solve_fq_constrained(sys: &ConstrainedSystem) -> Option<Vec<Elt>> {
    solve_fq_constrained_multi(&sys.field, &sys.matrix, &[sys.rhs.clone()])
        .pop()
        .unwrap()
}

/// Fast path for square systems: solve over F_{q^m} and project. When the
/// system is Frobenius-closed and nonsingular its unique solution lies in
/// F_q automatically; the projection is still checked exactly and a
/// component outside the base is an error.
pub fn frobenius_unique_criterion(sys: &ConstrainedSystem) -> Result<Vec<Elt>, DecompError> {
    let f = &sys.field;
    if sys.matrix.rows() != sys.matrix.cols() {
        return Err(DecompError::NotSquare);
    }
    let sol = sys.matrix.solve(&sys.rhs).ok_or(DecompError::Singular)?;
    // a consistent square system may still be underdetermined
    if sys.matrix.rank() != sys.matrix.cols() {
        return Err(DecompError::Singular);
    }
    sol.iter()
        .map(|x| f.try_to_base(x).ok_or(DecompError::SolutionNotInBase))
        .collect()
}

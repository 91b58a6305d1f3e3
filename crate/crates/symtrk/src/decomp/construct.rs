//! Closed-form decompositions of the multiplication tensor for extension
//! degrees up to four.
//!
//! Degrees 1 to 3 work over any presentation of the field. Degree 2 scans
//! for the first eta outside F_q whose square is also outside F_q; for such
//! an eta the terms Tr(x), eta Tr(eta x), eta^2 Tr(eta^2 x) span the slice
//! space. Degree 3 scans for the first element of full degree that is not a
//! root of the admissibility polynomial and uses its first six powers.
//! Degree 4 replays the recorded exponent sequences inside the quartic
//! fields they were found in.

use super::{
    build_sigma_star, frobenius_unique_criterion, solve_fq_constrained_multi, DecompError,
};
use crate::decomp::fpoly;
use crate::field::{Elt, Field};
use crate::matrix::MatrixGf;
use crate::multtensor::DecompositionCertificate;
use crate::refdata;

fn assemble(
    field: &Field,
    xi: &Elt,
    alphas: Vec<Elt>,
    coefficients: MatrixGf,
) -> DecompositionCertificate {
    DecompositionCertificate {
        field: field.clone(),
        xi: xi.clone(),
        scalars: vec![field.one(); alphas.len()],
        alphas,
        coefficients,
    }
}

/// Solves every slice target against one alpha set with a single
/// elimination. Returns the m x R coefficient matrix over F_q when all m
/// targets are expressible, None when any of them is not.
///
/// The closed system matrix does not depend on the target, so it is built
/// once; the target for slice i contributes frob^j(xi^i) on the first m
/// rows (the diagonal orbit) and zero elsewhere.
pub fn solve_slices(
    field: &Field,
    xi: &Elt,
    alphas: &[Elt],
) -> Result<Option<MatrixGf>, DecompError> {
    let m = field.ext_degree();
    let first = build_sigma_star(field, alphas, xi, 0)?;
    let rows_total = first.matrix.rows();
    let mut rhs_list = vec![first.rhs];
    let mut target = xi.clone();
    for _ in 1..m {
        let mut rhs = Vec::with_capacity(rows_total);
        for j in 0..m {
            rhs.push(field.frobenius_pow(&target, j));
        }
        rhs.resize(rows_total, field.zero());
        rhs_list.push(rhs);
        target = field.mul(&target, xi);
    }
    let sols = solve_fq_constrained_multi(field, &first.matrix, &rhs_list);
    let mut rows = Vec::with_capacity(m);
    for sol in sols {
        match sol {
            Some(r) => rows.push(r),
            None => return Ok(None),
        }
    }
    Ok(Some(MatrixGf::from_rows(&field.base(), rows)))
}

/// Rank-one decomposition of multiplication in a degree-1 extension.
pub fn m1_construct(field: &Field) -> Result<DecompositionCertificate, DecompError> {
    let m = field.ext_degree();
    if m != 1 {
        return Err(DecompError::UnsupportedDegree { m });
    }
    let one = field.one();
    let coefficients = MatrixGf::identity(&field.base(), 1);
    Ok(assemble(field, &one, vec![one.clone()], coefficients))
}

/// The scalar whose non-vanishing was the original admissibility test for
/// eta in a quadratic extension:
/// eta^2q - eta^(2q-1) - eta^(q+1) + eta^(q-1) + eta - 1.
/// It factors as (eta - 1)(eta^q - 1)(eta^(q-1) - 1) and so vanishes
/// exactly on the nonzero elements of F_q; see `m2_admissible` for the
/// test that actually characterizes spanning.
pub fn m2_condition(field: &Field, eta: &Elt) -> Elt {
    let q = field.base_size();
    let term = |e: u128| field.pow(eta, e);
    let mut acc = term(2 * q);
    acc = field.sub(&acc, &term(2 * q - 1));
    acc = field.sub(&acc, &term(q + 1));
    acc = field.add(&acc, &term(q - 1));
    acc = field.add(&acc, eta);
    field.sub(&acc, &field.one())
}

/// Whether 1, eta, eta^2 carry a rank-3 decomposition: both eta and eta^2
/// must lie outside F_q. The 3 x 3 system matrix has determinant
/// -eta^(q+5) (eta^(q-1) - 1)^3 (eta^(q-1) + 1), which vanishes exactly
/// when eta or eta^2 falls in F_q.
pub fn m2_admissible(field: &Field, eta: &Elt) -> bool {
    field.degree_over_base(eta) == 2 && field.degree_over_base(&field.mul(eta, eta)) == 2
}

/// First admissible eta in enumeration order.
pub fn m2_first_admissible(field: &Field) -> Result<Elt, DecompError> {
    for idx in 1..field.order() {
        let eta = field.element(idx);
        if m2_admissible(field, &eta) {
            return Ok(eta);
        }
    }
    Err(DecompError::NoAdmissibleElement)
}

/// Rank-3 decomposition of multiplication in a quadratic extension.
pub fn m2_construct(field: &Field) -> Result<DecompositionCertificate, DecompError> {
    let m = field.ext_degree();
    if m != 2 {
        return Err(DecompError::UnsupportedDegree { m });
    }
    let eta = m2_first_admissible(field)?;
    let eta2 = field.mul(&eta, &eta);
    let alphas = vec![field.one(), eta.clone(), eta2];
    let mut rows = Vec::with_capacity(2);
    for i in 0..2 {
        let sys = build_sigma_star(field, &alphas, &eta, i)?;
        rows.push(frobenius_unique_criterion(&sys)?);
    }
    let coefficients = MatrixGf::from_rows(&field.base(), rows);
    Ok(assemble(field, &eta, alphas, coefficients))
}

/// First full-degree element of a cubic extension that is not a root of the
/// admissibility polynomial, in enumeration order.
pub fn m3_first_admissible(field: &Field) -> Result<Elt, DecompError> {
    let m = field.ext_degree();
    if m != 3 {
        return Err(DecompError::UnsupportedDegree { m });
    }
    let q = field.base_size() as u64;
    let f = fpoly::m3_f(q)?;
    for idx in 1..field.order() {
        let xi = field.element(idx);
        if field.degree_over_base(&xi) != 3 {
            continue;
        }
        if !field.is_zero(&f.eval(field, &xi)) {
            return Ok(xi);
        }
    }
    Err(DecompError::NoAdmissibleElement)
}

/// Rank-6 decomposition of multiplication in a cubic extension, from the
/// first six powers 1, xi, ..., xi^5 of an admissible xi.
pub fn m3_construct(field: &Field) -> Result<DecompositionCertificate, DecompError> {
    let xi = m3_first_admissible(field)?;
    let mut alphas = Vec::with_capacity(6);
    let mut p = field.one();
    for _ in 0..6 {
        alphas.push(p.clone());
        p = field.mul(&p, &xi);
    }
    let mut rows = Vec::with_capacity(3);
    for i in 0..3 {
        let sys = build_sigma_star(field, &alphas, &xi, i)?;
        rows.push(frobenius_unique_criterion(&sys)?);
    }
    let coefficients = MatrixGf::from_rows(&field.base(), rows);
    Ok(assemble(field, &xi, alphas, coefficients))
}

/// Tries the terms xi^e Tr(xi^e x), e over `exponents`, in a quartic field.
pub fn m4_try_sequence(
    field: &Field,
    xi: &Elt,
    exponents: &[u64],
) -> Result<Option<DecompositionCertificate>, DecompError> {
    let m = field.ext_degree();
    if m != 4 {
        return Err(DecompError::UnsupportedDegree { m });
    }
    let alphas: Vec<Elt> = exponents
        .iter()
        .map(|&e| field.pow(xi, e as u128))
        .collect();
    match solve_slices(field, xi, &alphas)? {
        Some(coefficients) => Ok(Some(assemble(field, xi, alphas, coefficients))),
        None => Ok(None),
    }
}

/// Decomposition of multiplication in the recorded quartic field for q,
/// replaying the effective exponent sequence. The returned certificate
/// lives in the field built by `refdata::m4_field_spec`.
pub fn m4_construct_from_table(q: u64) -> Result<DecompositionCertificate, DecompError> {
    let row = refdata::m4_row(q).ok_or(DecompError::UnsupportedOrder { q })?;
    let spec = refdata::m4_field_spec(q).expect("row and spec cover the same q");
    let field = spec.build()?;
    let xi = field.generator();
    match m4_try_sequence(&field, &xi, row.effective)? {
        Some(cert) => Ok(cert),
        None => Err(DecompError::NoAdmissibleElement),
    }
}

/// Closed-form decomposition for multiplication in F_{q^m} over F_q.
/// Degrees 1 to 3 use the standard field; degree 4 uses the recorded
/// quartic field for q in {2, 3, 4, 5}.
pub fn construct_qm(q: u64, m: u32) -> Result<DecompositionCertificate, DecompError> {
    match m {
        1 => m1_construct(&Field::standard(q, 1)?),
        2 => m2_construct(&Field::standard(q, 2)?),
        3 => m3_construct(&Field::standard(q, 3)?),
        4 => m4_construct_from_table(q),
        m => Err(DecompError::UnsupportedDegree { m: m as usize }),
    }
}

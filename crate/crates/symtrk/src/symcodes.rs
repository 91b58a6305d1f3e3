//! Symmetric rank-metric codes: F_q-linear spaces of symmetric m x m
//! matrices, stored together with their linearized-polynomial model. Covers
//! the Singleton-type dimension bound, the standard MRD family, brute-force
//! minimum distance, congruence transforms, and the symmetric tensor rank
//! (the smallest number of symmetric rank-one matrices whose span contains
//! the code).

use crate::basis::OrderedBasis;
use crate::field::{Elt, Field, FieldSpec};
use crate::linpoly::LinearizedPoly;
use crate::matrix::MatrixGf;
use crate::multtensor::DecompositionCertificate;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum CodeError {
    BadDistance { m: usize, d: usize },
    /// m - d odd: the family built here requires an even defect.
    OddDefect { m: usize, d: usize },
    NotSymmetric { index: usize },
    /// No nonzero codewords to take a minimum over.
    BadCode,
    CapExceeded { needed: u128 },
    SingularP,
    InvalidCertificate(String),
    Json(String),
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::BadDistance { m, d } => {
                write!(f, "distance {d} outside 1..={m}")
            }
            CodeError::OddDefect { m, d } => {
                write!(f, "m - d = {} is odd; this family needs an even defect", m - d)
            }
            CodeError::NotSymmetric { index } => {
                write!(f, "generator {index} is not symmetric")
            }
            CodeError::BadCode => write!(f, "the code has no nonzero codewords"),
            CodeError::CapExceeded { needed } => {
                write!(f, "enumeration needs {needed} steps, past the configured cap")
            }
            CodeError::SingularP => write!(f, "transform matrix is singular"),
            CodeError::InvalidCertificate(e) => write!(f, "invalid certificate: {e}"),
            CodeError::Json(e) => write!(f, "malformed code JSON: {e}"),
        }
    }
}

impl std::error::Error for CodeError {}

/// Singleton-type dimension bound for a symmetric rank-metric code in
/// Sym_q(m) with minimum distance d.
pub fn singleton_bound(m: usize, d: usize) -> Result<u64, CodeError> {
    if d == 0 || d > m {
        return Err(CodeError::BadDistance { m, d });
    }
    let (m, d) = (m as u64, d as u64);
    Ok(if (m - d) % 2 == 0 {
        m * (m - d + 2) / 2
    } else {
        (m + 1) * (m - d + 1) / 2
    })
}

/// An F_q-linear code of symmetric matrices, kept in both models: the
/// symmetric linearized polynomials and their Gram matrices with respect to
/// a fixed basis. Generators are reduced to an independent set on
/// construction, so `dim` is their count.
#[derive(Clone)]
pub struct SymCode {
    field: Field,
    basis: OrderedBasis,
    polys: Vec<LinearizedPoly>,
    grams: Vec<MatrixGf>,
}

impl SymCode {
    /// Keeps the lexicographically first independent subset of the given
    /// symmetric generators.
    pub fn from_generators(
        field: &Field,
        basis: &OrderedBasis,
        gens: &[LinearizedPoly],
    ) -> Result<SymCode, CodeError> {
        let m = field.ext_degree();
        let base = field.base();
        let mut polys = Vec::new();
        let mut grams = Vec::new();
        // stacked vectorized grams, re-reduced as generators join
        let mut stack: Vec<Vec<Elt>> = Vec::new();
        let mut rank = 0;
        for (index, g) in gens.iter().enumerate() {
            if !g.is_symmetric() {
                return Err(CodeError::NotSymmetric { index });
            }
            let gram = g.to_gram(basis);
            let flat: Vec<Elt> = (0..m * m).map(|i| gram.get(i / m, i % m).clone()).collect();
            stack.push(flat);
            let mat = MatrixGf::from_rows(&base, stack.clone());
            if mat.rank() > rank {
                rank += 1;
                polys.push(g.clone());
                grams.push(gram);
            } else {
                stack.pop();
            }
        }
        Ok(SymCode {
            field: field.clone(),
            basis: basis.clone(),
            polys,
            grams,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> &OrderedBasis {
        &self.basis
    }

    /// Dimension over F_q.
    pub fn dim(&self) -> usize {
        self.polys.len()
    }

    pub fn generators(&self) -> &[LinearizedPoly] {
        &self.polys
    }

    pub fn grams(&self) -> &[MatrixGf] {
        &self.grams
    }

    /// The codeword for a coefficient vector over F_q, as a matrix.
    pub fn codeword(&self, coeffs: &[Elt]) -> MatrixGf {
        let m = self.field.ext_degree();
        let base = self.field.base();
        let mut acc = MatrixGf::zeros(&base, m, m);
        for (c, g) in coeffs.iter().zip(&self.grams) {
            if !base.is_zero(c) {
                acc = acc.add(&g.scalar_mul(c));
            }
        }
        acc
    }

    /// Minimum rank over all nonzero codewords, by full enumeration.
    pub fn min_distance(&self, cap: u128) -> Result<usize, CodeError> {
        let k = self.dim();
        if k == 0 {
            return Err(CodeError::BadCode);
        }
        let base = self.field.base();
        let q = base.order();
        let total = q
            .checked_pow(k as u32)
            .ok_or(CodeError::CapExceeded { needed: u128::MAX })?;
        if total > cap {
            return Err(CodeError::CapExceeded { needed: total });
        }
        let min = (1..total)
            .into_par_iter()
            .map(|idx| {
                let mut rem = idx;
                let coeffs: Vec<Elt> = (0..k)
                    .map(|_| {
                        let c = base.element(rem % q);
                        rem /= q;
                        c
                    })
                    .collect();
                self.codeword(&coeffs).rank()
            })
            .min()
            .expect("nonzero codewords exist");
        Ok(min)
    }

    /// Whether the dimension meets the Singleton-type bound at the code's
    /// measured minimum distance.
    pub fn is_mrd(&self, cap: u128) -> Result<bool, CodeError> {
        let d = self.min_distance(cap)?;
        let bound = singleton_bound(self.field.ext_degree(), d)?;
        Ok(self.dim() as u64 == bound)
    }

    /// The congruent code with generators P^T A P.
    pub fn congruence_transform(&self, p: &MatrixGf) -> Result<SymCode, CodeError> {
        let m = self.field.ext_degree();
        if p.rows() != m || p.cols() != m || p.inverse().is_none() {
            return Err(CodeError::SingularP);
        }
        let pt = p.transpose();
        let grams: Vec<MatrixGf> = self
            .grams
            .iter()
            .map(|a| pt.mul(&a.mul(p)))
            .collect();
        let polys: Vec<LinearizedPoly> = grams
            .iter()
            .map(|g| {
                LinearizedPoly::from_gram(g, &self.basis)
                    .expect("congruence preserves the matrix shape")
            })
            .collect();
        Ok(SymCode {
            field: self.field.clone(),
            basis: self.basis.clone(),
            polys,
            grams,
        })
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        json!({
            "field": serde_json::to_value(f.spec()).unwrap(),
            "basis": self
                .basis
                .elements()
                .iter()
                .map(|b| f.format_elt(b))
                .collect::<Vec<_>>(),
            "generators": self
                .polys
                .iter()
                .map(|p| {
                    p.coeffs()
                        .iter()
                        .map(|c| f.format_elt(c))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<SymCode, CodeError> {
        let spec: FieldSpec = serde_json::from_value(
            v.get("field")
                .ok_or_else(|| CodeError::Json("missing field".into()))?
                .clone(),
        )
        .map_err(|e| CodeError::Json(e.to_string()))?;
        let field = spec.build().map_err(|e| CodeError::Json(e.to_string()))?;
        let strings = |key: &str| -> Result<Vec<Vec<String>>, CodeError> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| CodeError::Json(format!("missing {key}")))?;
            arr.iter()
                .map(|row| match row {
                    Value::Array(items) => items
                        .iter()
                        .map(|s| {
                            s.as_str()
                                .map(String::from)
                                .ok_or_else(|| CodeError::Json("expected string".into()))
                        })
                        .collect(),
                    _ => Err(CodeError::Json(format!("{key} rows must be arrays"))),
                })
                .collect()
        };
        let basis_strs = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| CodeError::Json("missing basis".into()))?;
        let basis_elts: Result<Vec<Elt>, CodeError> = basis_strs
            .iter()
            .map(|s| {
                let text = s
                    .as_str()
                    .ok_or_else(|| CodeError::Json("basis entries must be strings".into()))?;
                field.parse_elt(text).map_err(|e| CodeError::Json(e.to_string()))
            })
            .collect();
        let basis = OrderedBasis::new(&field, basis_elts?)
            .map_err(|e| CodeError::Json(e.to_string()))?;
        let mut gens = Vec::new();
        for row in strings("generators")? {
            let coeffs: Result<Vec<Elt>, CodeError> = row
                .iter()
                .map(|s| field.parse_elt(s).map_err(|e| CodeError::Json(e.to_string())))
                .collect();
            let poly = LinearizedPoly::new(&field, coeffs?)
                .map_err(|e| CodeError::Json(e.to_string()))?;
            gens.push(poly);
        }
        SymCode::from_generators(&field, &basis, &gens)
    }
}

impl fmt::Debug for SymCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SymCode(m={}, q={}, dim={})",
            self.field.ext_degree(),
            self.field.base_size(),
            self.dim()
        )
    }
}

/// The standard symmetric MRD family for even defect m - d: spanned by
/// b x for b over a basis, plus b x^{q^j} + b^{q^{m-j}} x^{q^{m-j}} for
/// j = 1..(m-d)/2. Uses the power basis of the field.
pub fn build_sqmd(field: &Field, d: usize) -> Result<SymCode, CodeError> {
    let m = field.ext_degree();
    if d == 0 || d > m {
        return Err(CodeError::BadDistance { m, d });
    }
    if (m - d) % 2 != 0 {
        return Err(CodeError::OddDefect { m, d });
    }
    let basis = OrderedBasis::power(field);
    let mut gens = Vec::new();
    for b in basis.elements() {
        gens.push(LinearizedPoly::monomial(field, b, 0).expect("degree at least 1"));
    }
    for j in 1..=(m - d) / 2 {
        for b in basis.elements() {
            let head = LinearizedPoly::monomial(field, b, j).expect("j < m");
            let twin = LinearizedPoly::monomial(field, &field.frobenius_pow(b, m - j), m - j)
                .expect("m - j < m");
            gens.push(head.add(&twin));
        }
    }
    SymCode::from_generators(field, &basis, &gens)
}

/// Representatives of the lines of symmetric rank-one matrices: v v^T for
/// v over the projective representatives (first nonzero coordinate 1) of
/// F_q^m, in coordinate-index order. There are (q^m - 1)/(q - 1) of them.
pub fn rank_one_symmetric_lines(base: &Field, m: usize) -> Vec<MatrixGf> {
    let q = base.order();
    let total = q.pow(m as u32);
    let mut out = Vec::new();
    for idx in 1..total {
        let mut rem = idx;
        let v: Vec<Elt> = (0..m)
            .map(|_| {
                let c = base.element(rem % q);
                rem /= q;
                c
            })
            .collect();
        let lead = v.iter().find(|c| !base.is_zero(c)).expect("nonzero index");
        if !base.is_one(lead) {
            continue;
        }
        out.push(MatrixGf::from_fn(base, m, m, |i, j| base.mul(&v[i], &v[j])));
    }
    out
}

/// All rank-one lines, symmetric or not: u v^T over pairs of projective
/// representatives. Pool for the unconstrained covering number.
pub fn rank_one_lines(base: &Field, m: usize) -> Vec<MatrixGf> {
    let q = base.order();
    let total = q.pow(m as u32);
    let mut vecs = Vec::new();
    for idx in 1..total {
        let mut rem = idx;
        let v: Vec<Elt> = (0..m)
            .map(|_| {
                let c = base.element(rem % q);
                rem /= q;
                c
            })
            .collect();
        let lead = v.iter().find(|c| !base.is_zero(c)).expect("nonzero index");
        if base.is_one(lead) {
            vecs.push(v);
        }
    }
    let mut out = Vec::new();
    for u in &vecs {
        for v in &vecs {
            out.push(MatrixGf::from_fn(base, m, m, |i, j| base.mul(&u[i], &v[j])));
        }
    }
    out
}

#[derive(Debug)]
pub enum CoverOutcome {
    /// Smallest size of a pool subset whose span contains the code, with
    /// the lexicographically first witness.
    Exact {
        value: usize,
        witness: Vec<MatrixGf>,
    },
    /// Every subset of size up to rmax was tried; none works.
    NoneWithin { rmax: usize, tested: u64 },
    /// Budget ran out before the sweep finished.
    Indeterminate { tested: u64 },
}

/// Smallest R in rmin..=rmax such that some R-subset of `pool` spans a
/// space containing all `targets`; subsets at each level run in parallel
/// and the lexicographically first hit wins.
fn smallest_cover(
    base: &Field,
    m: usize,
    targets: &[MatrixGf],
    pool: &[MatrixGf],
    rmin: usize,
    rmax: usize,
    budget: u64,
) -> CoverOutcome {
    let n = m * m;
    let flat_targets: Vec<Vec<Elt>> = targets
        .iter()
        .map(|t| (0..n).map(|i| t.get(i / m, i % m).clone()).collect())
        .collect();
    let flat_pool: Vec<Vec<Elt>> = pool
        .iter()
        .map(|t| (0..n).map(|i| t.get(i / m, i % m).clone()).collect())
        .collect();
    let mut tested: u64 = 0;
    for r in rmin..=rmax.min(pool.len()) {
        let subsets = super_combinations(pool.len() as u64, r);
        let remaining = budget - tested;
        let todo = subsets.min(remaining as u128) as u64;
        let hit = combos_par_scan(todo, pool.len() as u64, r, |cur| {
            let a = MatrixGf::from_fn(base, n, r, |i, j| {
                flat_pool[cur[j] as usize][i].clone()
            });
            a.solve_many(&flat_targets).iter().all(Option::is_some)
        });
        match hit {
            Some((_, cur)) => {
                let witness = cur.iter().map(|&i| pool[i as usize].clone()).collect();
                return CoverOutcome::Exact { value: r, witness };
            }
            None => {
                tested += todo;
                if (todo as u128) < subsets {
                    return CoverOutcome::Indeterminate { tested };
                }
            }
        }
    }
    CoverOutcome::NoneWithin { rmax, tested }
}

fn super_combinations(n: u64, k: usize) -> u128 {
    // same saturating binomial the searcher uses
    let k = k as u128;
    let n = n as u128;
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul(n - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Blocked deterministic parallel sweep over the first `todo` k-subsets of
/// 0..n in lexicographic order; returns the first (index, subset) accepted.
fn combos_par_scan<F>(todo: u64, n: u64, k: usize, accept: F) -> Option<(u64, Vec<u64>)>
where
    F: Fn(&[u64]) -> bool + Sync,
{
    if todo == 0 || (k as u64) > n {
        return None;
    }
    const BLOCK: u64 = 64;
    let mut cur: Vec<u64> = (0..k as u64).collect();
    let mut starts = vec![cur.clone()];
    let mut pos = 0;
    while pos + BLOCK < todo {
        for _ in 0..BLOCK {
            advance_combo(&mut cur, n);
        }
        pos += BLOCK;
        starts.push(cur.clone());
    }
    starts.par_iter().enumerate().find_map_first(|(bi, start)| {
        let lo = bi as u64 * BLOCK;
        let len = BLOCK.min(todo - lo);
        let mut state = start.clone();
        for off in 0..len {
            if accept(&state) {
                return Some((lo + off, state));
            }
            if !advance_combo(&mut state, n) {
                break;
            }
        }
        None
    })
}

fn advance_combo(cur: &mut [u64], n: u64) -> bool {
    let k = cur.len();
    let mut j = k;
    while j > 0 {
        j -= 1;
        if cur[j] < n - (k - j) as u64 {
            cur[j] += 1;
            for t in j + 1..k {
                cur[t] = cur[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Symmetric tensor rank of the code by exhaustive subset sweep over the
/// symmetric rank-one lines, starting at the code dimension (smaller
/// subsets cannot span a k-dimensional space).
pub fn strk_exact(code: &SymCode, rmax: usize, budget: u64) -> CoverOutcome {
    let m = code.field().ext_degree();
    let base = code.field().base();
    let pool = rank_one_symmetric_lines(&base, m);
    smallest_cover(&base, m, code.grams(), &pool, code.dim().max(1), rmax, budget)
}

/// Covering number with the symmetry requirement dropped: subsets of all
/// rank-one lines. Never exceeds the symmetric value.
pub fn trk_upper_exact(code: &SymCode, rmax: usize, budget: u64) -> CoverOutcome {
    let m = code.field().ext_degree();
    let base = code.field().base();
    let pool = rank_one_lines(&base, m);
    smallest_cover(&base, m, code.grams(), &pool, 1, rmax, budget)
}

/// The rank of a verified multiplication decomposition is an upper bound
/// for the symmetric tensor rank of the code {beta x : beta} of that field.
pub fn strk_upper_from_cert(cert: &DecompositionCertificate) -> Result<usize, CodeError> {
    cert.verify()
        .map_err(|e| CodeError::InvalidCertificate(e.to_string()))?;
    Ok(cert.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    const CAP: u128 = 1 << 24;

    fn gabidulin(q: u64, m: usize) -> SymCode {
        let f = Field::standard(q, m).unwrap();
        build_sqmd(&f, m).unwrap()
    }

    #[test]
    fn singleton_bound_values() {
        assert_eq!(singleton_bound(4, 2).unwrap(), 8);
        assert_eq!(singleton_bound(3, 3).unwrap(), 3);
        assert_eq!(singleton_bound(4, 3).unwrap(), 5);
        assert_eq!(singleton_bound(2, 2).unwrap(), 2);
        assert!(matches!(
            singleton_bound(4, 0),
            Err(CodeError::BadDistance { .. })
        ));
        assert!(matches!(
            singleton_bound(4, 5),
            Err(CodeError::BadDistance { .. })
        ));
    }

    #[test]
    fn gabidulin_code_shape() {
        // d = m: the span of {b x}, dimension m, all ranks m
        let code = gabidulin(2, 3);
        assert_eq!(code.dim(), 3);
        assert_eq!(code.min_distance(CAP).unwrap(), 3);
        assert!(code.is_mrd(CAP).unwrap());
        for g in code.generators() {
            assert!(g.is_symmetric());
        }
    }

    #[test]
    fn mrd_grid() {
        for (q, m, d) in [
            (2u64, 2usize, 2usize),
            (2, 3, 3),
            (2, 4, 2),
            (2, 4, 4),
            (3, 3, 3),
            (3, 4, 2),
        ] {
            let f = Field::standard(q, m).unwrap();
            let code = build_sqmd(&f, d).unwrap();
            assert_eq!(
                code.dim() as u64,
                singleton_bound(m, d).unwrap(),
                "dim at ({q}, {m}, {d})"
            );
            assert_eq!(code.min_distance(CAP).unwrap(), d, "distance at ({q}, {m}, {d})");
            assert!(code.is_mrd(CAP).unwrap(), "mrd at ({q}, {m}, {d})");
        }
    }

    #[test]
    fn build_rejects_bad_parameters() {
        let f = Field::standard(2, 4).unwrap();
        assert!(matches!(
            build_sqmd(&f, 3),
            Err(CodeError::OddDefect { m: 4, d: 3 })
        ));
        assert!(matches!(
            build_sqmd(&f, 0),
            Err(CodeError::BadDistance { .. })
        ));
        assert!(matches!(
            build_sqmd(&f, 5),
            Err(CodeError::BadDistance { .. })
        ));
    }

    #[test]
    fn min_distance_needs_nonzero_words() {
        let f = Field::standard(2, 2).unwrap();
        let basis = OrderedBasis::power(&f);
        let code = SymCode::from_generators(&f, &basis, &[]).unwrap();
        assert_eq!(code.dim(), 0);
        assert!(matches!(code.min_distance(CAP), Err(CodeError::BadCode)));
    }

    #[test]
    fn dependent_generators_are_dropped() {
        let f = Field::standard(2, 2).unwrap();
        let basis = OrderedBasis::power(&f);
        let x = LinearizedPoly::x(&f);
        let gens = vec![x.clone(), x.clone(), x.add(&x)];
        let code = SymCode::from_generators(&f, &basis, &gens).unwrap();
        assert_eq!(code.dim(), 1);
    }

    #[test]
    fn asymmetric_generator_rejected() {
        let f = Field::standard(2, 3).unwrap();
        let basis = OrderedBasis::power(&f);
        let bad = LinearizedPoly::monomial(&f, &f.one(), 1).unwrap();
        assert!(!bad.is_symmetric());
        let err = SymCode::from_generators(&f, &basis, &[bad]).unwrap_err();
        assert_eq!(err, CodeError::NotSymmetric { index: 0 });
    }

    #[test]
    fn line_counts() {
        for (q, m, count) in [(2u64, 2usize, 3usize), (2, 3, 7), (3, 3, 13), (2, 4, 15)] {
            let base = Field::prime(q).unwrap();
            let lines = rank_one_symmetric_lines(&base, m);
            assert_eq!(lines.len(), count, "(q, m) = ({q}, {m})");
            for l in &lines {
                assert_eq!(l.rank(), 1);
                assert!(l.is_symmetric());
            }
        }
        // unconstrained pool: one line per ordered pair of projective reps
        let f2 = Field::prime(2).unwrap();
        assert_eq!(rank_one_lines(&f2, 2).len(), 9);
    }

    #[test]
    fn strk_of_f4_gabidulin_is_three() {
        let code = gabidulin(2, 2);
        match strk_exact(&code, 3, 1 << 20) {
            CoverOutcome::Exact { value, witness } => {
                assert_eq!(value, 3);
                assert_eq!(witness.len(), 3);
            }
            other => panic!("expected exact 3, got {other:?}"),
        }
        // no pair of the three lines suffices
        match strk_exact(&code, 2, 1 << 20) {
            CoverOutcome::NoneWithin { rmax: 2, .. } => {}
            other => panic!("expected a definitive no at 2, got {other:?}"),
        }
    }

    #[test]
    fn strk_of_f8_gabidulin_is_six() {
        let code = gabidulin(2, 3);
        match strk_exact(&code, 5, 1 << 22) {
            CoverOutcome::NoneWithin { rmax: 5, .. } => {}
            other => panic!("expected a definitive no at 5, got {other:?}"),
        }
        match strk_exact(&code, 6, 1 << 22) {
            CoverOutcome::Exact { value, witness } => {
                assert_eq!(value, 6);
                // witness really spans the code
                let base = code.field().base();
                let m = 3;
                let n = 9;
                let a = MatrixGf::from_fn(&base, n, 6, |i, j| {
                    witness[j].get(i / m, i % m).clone()
                });
                for g in code.grams() {
                    let flat: Vec<Elt> =
                        (0..n).map(|i| g.get(i / m, i % m).clone()).collect();
                    assert!(a.solve(&flat).is_some());
                }
            }
            other => panic!("expected exact 6, got {other:?}"),
        }
    }

    #[test]
    fn strk_single_line_code() {
        let f = Field::standard(2, 2).unwrap();
        let basis = OrderedBasis::power(&f);
        let tr = LinearizedPoly::trace(&f);
        let code = SymCode::from_generators(&f, &basis, &[tr]).unwrap();
        match strk_exact(&code, 3, 1 << 16) {
            CoverOutcome::Exact { value, .. } => assert_eq!(value, 1),
            other => panic!("expected exact 1, got {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let code = gabidulin(2, 3);
        match strk_exact(&code, 6, 10) {
            CoverOutcome::Indeterminate { tested } => assert_eq!(tested, 10),
            other => panic!("expected indeterminate, got {other:?}"),
        }
    }

    #[test]
    fn trk_never_exceeds_strk_on_solved_instances() {
        // F_4 Gabidulin: both sides exactly 3
        let code = gabidulin(2, 2);
        let strk = match strk_exact(&code, 3, 1 << 20) {
            CoverOutcome::Exact { value, .. } => value,
            other => panic!("{other:?}"),
        };
        let trk = match trk_upper_exact(&code, 3, 1 << 20) {
            CoverOutcome::Exact { value, .. } => value,
            other => panic!("{other:?}"),
        };
        assert!(trk <= strk);
        assert_eq!(trk, 3);

        // one-line code: both 1
        let f = Field::standard(2, 2).unwrap();
        let basis = OrderedBasis::power(&f);
        let tr = LinearizedPoly::trace(&f);
        let one_line = SymCode::from_generators(&f, &basis, &[tr]).unwrap();
        let s = match strk_exact(&one_line, 2, 1 << 16) {
            CoverOutcome::Exact { value, .. } => value,
            other => panic!("{other:?}"),
        };
        let t = match trk_upper_exact(&one_line, 2, 1 << 16) {
            CoverOutcome::Exact { value, .. } => value,
            other => panic!("{other:?}"),
        };
        assert!(t <= s);
        assert_eq!((s, t), (1, 1));
    }

    #[test]
    fn certificate_rank_bounds_gabidulin_strk() {
        let cert = crate::decomp::construct::construct_qm(3, 2).unwrap();
        assert_eq!(strk_upper_from_cert(&cert).unwrap(), 3);
        let cert = crate::decomp::construct::construct_qm(2, 4).unwrap();
        assert_eq!(strk_upper_from_cert(&cert).unwrap(), 9);
        let cert = crate::decomp::construct::construct_qm(4, 3).unwrap();
        assert_eq!(strk_upper_from_cert(&cert).unwrap(), 6);

        let mut broken = crate::decomp::construct::construct_qm(3, 2).unwrap();
        broken.xi = broken.field.one();
        assert!(matches!(
            strk_upper_from_cert(&broken),
            Err(CodeError::InvalidCertificate(_))
        ));
    }

    fn random_invertible(base: &Field, m: usize, rng: &mut ChaCha12Rng) -> MatrixGf {
        let q = base.order();
        loop {
            let p = MatrixGf::from_fn(base, m, m, |_, _| base.element(rng.gen_range(0..q)));
            if p.inverse().is_some() {
                return p;
            }
        }
    }

    #[test]
    fn congruence_preserves_distance_and_witnesses() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for (q, m, d) in [(2u64, 3usize, 3usize), (3, 3, 3), (2, 4, 2)] {
            let f = Field::standard(q, m).unwrap();
            let code = build_sqmd(&f, d).unwrap();
            let dist = code.min_distance(CAP).unwrap();
            for _ in 0..20 {
                let p = random_invertible(&f.base(), m, &mut rng);
                let moved = code.congruence_transform(&p).unwrap();
                assert_eq!(moved.dim(), code.dim());
                assert_eq!(moved.min_distance(CAP).unwrap(), dist);
            }
        }

        // witnesses transform to witnesses: P^T A P stays rank-one
        // symmetric and spans the transformed code
        let code = gabidulin(2, 2);
        let witness = match strk_exact(&code, 3, 1 << 16) {
            CoverOutcome::Exact { witness, .. } => witness,
            other => panic!("{other:?}"),
        };
        let base = code.field().base();
        for _ in 0..20 {
            let p = random_invertible(&base, 2, &mut rng);
            let moved = code.congruence_transform(&p).unwrap();
            let pt = p.transpose();
            let moved_witness: Vec<MatrixGf> =
                witness.iter().map(|a| pt.mul(&a.mul(&p))).collect();
            for w in &moved_witness {
                assert_eq!(w.rank(), 1);
                assert!(w.is_symmetric());
            }
            let n = 4;
            let a = MatrixGf::from_fn(&base, n, 3, |i, j| {
                moved_witness[j].get(i / 2, i % 2).clone()
            });
            for g in moved.grams() {
                let flat: Vec<Elt> = (0..n).map(|i| g.get(i / 2, i % 2).clone()).collect();
                assert!(a.solve(&flat).is_some());
            }
        }
    }

    #[test]
    fn identity_transform_is_identity() {
        let code = gabidulin(3, 2);
        let id = MatrixGf::identity(&code.field().base(), 2);
        let same = code.congruence_transform(&id).unwrap();
        assert_eq!(same.grams(), code.grams());

        let zero = MatrixGf::zeros(&code.field().base(), 2, 2);
        assert!(matches!(
            code.congruence_transform(&zero),
            Err(CodeError::SingularP)
        ));
    }

    #[test]
    fn polynomial_and_matrix_models_round_trip() {
        for (q, m, d) in [(2u64, 4usize, 2usize), (3, 3, 3)] {
            let f = Field::standard(q, m).unwrap();
            let code = build_sqmd(&f, d).unwrap();
            for (p, g) in code.generators().iter().zip(code.grams()) {
                assert_eq!(&p.to_gram(code.basis()), g);
                let back = LinearizedPoly::from_gram(g, code.basis()).unwrap();
                assert_eq!(&back, p);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let code = build_sqmd(&Field::standard(2, 4).unwrap(), 2).unwrap();
        let v = code.to_json();
        let back = SymCode::from_json(&v).unwrap();
        assert_eq!(back.dim(), code.dim());
        assert_eq!(back.grams(), code.grams());

        let mut missing = v.clone();
        missing.as_object_mut().unwrap().remove("basis");
        assert!(matches!(
            SymCode::from_json(&missing),
            Err(CodeError::Json(_))
        ));
    }
}

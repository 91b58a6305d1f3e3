//! The multiplication tensor of F_{q^m} over F_q through its Gram slices.
//!
//! For a generating element xi of degree m, the maps x -> xi^i x for
//! i < m give m symmetric Gram matrices spanning the slice space of the
//! tensor. A symmetric decomposition of rank R writes every slice as an
//! F_q-combination of R symmetric rank-one matrices; certificates carry the
//! witnessing data and are verified coefficientwise, exactly.

use crate::basis::OrderedBasis;
use crate::field::{Elt, Field, FieldSpec};
use crate::linpoly::LinearizedPoly;
use crate::matrix::MatrixGf;
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum MultError {
    DegenerateGenerator,
    NotRankOne { index: usize },
    NotSymmetric { index: usize },
    WrongShape { index: usize },
    CapExceeded { needed: u128, cap: u128 },
}

impl fmt::Display for MultError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultError::DegenerateGenerator => {
                write!(f, "generator does not have full degree m")
            }
            MultError::NotRankOne { index } => write!(f, "matrix {index} is not rank one"),
            MultError::NotSymmetric { index } => write!(f, "matrix {index} is not symmetric"),
            MultError::WrongShape { index } => write!(f, "matrix {index} has the wrong shape"),
            MultError::CapExceeded { needed, cap } => {
                write!(f, "enumeration needs {needed} elements, cap is {cap}")
            }
        }
    }
}

impl std::error::Error for MultError {}

/// The m Gram slices of multiplication, relative to a basis and a generator.
pub struct SliceSpace {
    pub field: Field,
    pub basis: OrderedBasis,
    pub xi: Elt,
    /// generators[i] is the Gram matrix of x -> xi^i x (over the base).
    pub generators: Vec<MatrixGf>,
}

/// Builds the slice space for a generator xi of full degree m.
pub fn slice_space(
    field: &Field,
    basis: &OrderedBasis,
    xi: &Elt,
) -> Result<SliceSpace, MultError> {
    let m = field.ext_degree();
    if field.degree_over_base(xi) != m {
        return Err(MultError::DegenerateGenerator);
    }
    let mut generators = Vec::with_capacity(m);
    let mut power = field.one();
    for i in 0..m {
        let mult = LinearizedPoly::monomial(field, &power, 0).expect("arity 0 < m");
        generators.push(mult.to_gram(basis));
        if i + 1 < m {
            power = field.mul(&power, xi);
        }
    }
    Ok(SliceSpace {
        field: field.clone(),
        basis: basis.clone(),
        xi: xi.clone(),
        generators,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KruskalBound {
    pub value: usize,
    pub span_dim: usize,
    pub min_rank: usize,
    /// True when min_rank came from enumerating the whole slice span;
    /// false when the field was past the cap and the invertibility of
    /// multiplication by nonzero elements was used instead.
    pub enumerated: bool,
}

/// Lower bound span_dim + min_rank - 1 for the symmetric rank, computed from
/// the slice span. Equals 2m - 1 here: every nonzero combination of the
/// generators is the Gram matrix of multiplication by a nonzero element,
/// which is invertible.
pub fn kruskal_bound(s: &SliceSpace, cap: u128) -> KruskalBound {
    let m = s.field.ext_degree();
    let span_dim = stack_rank(&s.generators);
    let total = s.field.order();
    if total > cap {
        return KruskalBound {
            value: span_dim + m - 1,
            span_dim,
            min_rank: m,
            enumerated: false,
        };
    }
    let base = s.field.base();
    let q = base.order();
    let mut min_rank = usize::MAX;
    for idx in 1..total {
        let mut rem = idx;
        let mut combo = MatrixGf::zeros(&base, m, m);
        for g in &s.generators {
            let c = base.element(rem % q);
            rem /= q;
            if !base.is_zero(&c) {
                combo = combo.add(&g.scalar_mul(&c));
            }
        }
        min_rank = min_rank.min(combo.rank());
        if min_rank == 1 {
            break;
        }
    }
    KruskalBound {
        value: span_dim + min_rank - 1,
        span_dim,
        min_rank,
        enumerated: true,
    }
}

fn stack_rank(mats: &[MatrixGf]) -> usize {
    let f = mats[0].field();
    let n = mats[0].rows() * mats[0].cols();
    let stacked = MatrixGf::from_fn(f, mats.len(), n, |i, j| {
        mats[i].get(j / mats[i].cols(), j % mats[i].cols()).clone()
    });
    stacked.rank()
}

fn check_candidates(
    s: &SliceSpace,
    mats: &[MatrixGf],
    require_symmetric: bool,
) -> Result<(), MultError> {
    let m = s.field.ext_degree();
    for (index, a) in mats.iter().enumerate() {
        if a.rows() != m || a.cols() != m {
            return Err(MultError::WrongShape { index });
        }
        if require_symmetric && !a.is_symmetric() {
            return Err(MultError::NotSymmetric { index });
        }
        if a.rank() != 1 {
            return Err(MultError::NotRankOne { index });
        }
    }
    Ok(())
}

fn spanning_coefficients(s: &SliceSpace, mats: &[MatrixGf]) -> Option<MatrixGf> {
    let base = s.field.base();
    let m = s.field.ext_degree();
    let n = m * m;
    // column j = vectorized candidate j; solve for every slice at once
    let a = MatrixGf::from_fn(&base, n, mats.len(), |i, j| {
        mats[j].get(i / m, i % m).clone()
    });
    let targets: Vec<Vec<Elt>> = s
        .generators
        .iter()
        .map(|g| {
            (0..n)
                .map(|i| g.get(i / m, i % m).clone())
                .collect()
        })
        .collect();
    let sols = a.solve_many(&targets);
    let mut rows = Vec::with_capacity(m);
    for sol in sols {
        rows.push(sol?);
    }
    Some(MatrixGf::from_rows(&base, rows))
}

/// Do the symmetric rank-one candidates span every slice? On success returns
/// the m x R coefficient matrix writing generator i as row i over the
/// candidates.
pub fn verify_spanning(
    s: &SliceSpace,
    mats: &[MatrixGf],
) -> Result<Option<MatrixGf>, MultError> {
    check_candidates(s, mats, true)?;
    Ok(spanning_coefficients(s, mats))
}

/// Spanning check for rank-one candidates that need not be symmetric
/// (ordinary tensor-rank upper bounds).
pub fn verify_spanning_unconstrained(
    s: &SliceSpace,
    mats: &[MatrixGf],
) -> Result<Option<MatrixGf>, MultError> {
    check_candidates(s, mats, false)?;
    Ok(spanning_coefficients(s, mats))
}

#[derive(Debug, Clone, PartialEq)]
pub enum CertError {
    Field(String),
    Shape(String),
    ZeroAlpha { index: usize },
    BadScalar { index: usize },
    DegenerateGenerator,
    GeneratorMismatch { index: usize },
    Json(String),
}

impl fmt::Display for CertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertError::Field(e) => write!(f, "field: {e}"),
            CertError::Shape(e) => write!(f, "shape: {e}"),
            CertError::ZeroAlpha { index } => write!(f, "alpha {index} is zero"),
            CertError::BadScalar { index } => {
                write!(f, "scalar {index} is zero or outside the base field")
            }
            CertError::DegenerateGenerator => write!(f, "xi does not generate the extension"),
            CertError::GeneratorMismatch { index } => {
                write!(f, "combination does not reproduce generator {index}")
            }
            CertError::Json(e) => write!(f, "json: {e}"),
        }
    }
}

impl std::error::Error for CertError {}

/// A symmetric decomposition witness: xi^i x = sum_j X[i][j] c_j a_j Tr(a_j x)
/// for i < m, with X over F_q. Rank R = number of columns of X.
#[derive(Clone)]
pub struct DecompositionCertificate {
    pub field: Field,
    pub xi: Elt,
    pub alphas: Vec<Elt>,
    pub scalars: Vec<Elt>,
    /// m x R over the base field.
    pub coefficients: MatrixGf,
}

impl DecompositionCertificate {
    pub fn rank(&self) -> usize {
        self.coefficients.cols()
    }

    /// Exact coefficientwise check of all m defining identities.
    pub fn verify(&self) -> Result<(), CertError> {
        let f = &self.field;
        let m = f.ext_degree();
        let r = self.alphas.len();
        if self.scalars.len() != r || self.coefficients.cols() != r || self.coefficients.rows() != m
        {
            return Err(CertError::Shape(format!(
                "expected {m} coefficient rows of width {r}"
            )));
        }
        if f.degree_over_base(&self.xi) != m {
            return Err(CertError::DegenerateGenerator);
        }
        for (index, a) in self.alphas.iter().enumerate() {
            if f.is_zero(a) {
                return Err(CertError::ZeroAlpha { index });
            }
        }
        let mut terms = Vec::with_capacity(r);
        for (index, (a, c)) in self.alphas.iter().zip(&self.scalars).enumerate() {
            match LinearizedPoly::rank_one_symmetric(f, a, c) {
                Ok(p) => terms.push(p),
                Err(_) => return Err(CertError::BadScalar { index }),
            }
        }
        let mut power = f.one();
        for i in 0..m {
            let mut acc = LinearizedPoly::zero(f);
            for (j, t) in terms.iter().enumerate() {
                let x = self.coefficients.get(i, j);
                if f.base().is_zero(x) {
                    continue;
                }
                acc = acc.add(&t.scale(&f.embed(x)));
            }
            let want = LinearizedPoly::monomial(f, &power, 0).unwrap();
            if acc != want {
                return Err(CertError::GeneratorMismatch { index: i });
            }
            if i + 1 < m {
                power = f.mul(&power, &self.xi);
            }
        }
        Ok(())
    }

    /// Gram matrices of the R rank-one terms with respect to a basis.
    pub fn rank_one_grams(&self, basis: &OrderedBasis) -> Vec<MatrixGf> {
        self.alphas
            .iter()
            .zip(&self.scalars)
            .map(|(a, c)| {
                LinearizedPoly::rank_one_symmetric(&self.field, a, c)
                    .expect("verified certificate")
                    .to_gram(basis)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let base = f.base();
        json!({
            "field": serde_json::to_value(f.spec()).unwrap(),
            "xi": f.format_elt(&self.xi),
            "alphas": self.alphas.iter().map(|a| f.format_elt(a)).collect::<Vec<_>>(),
            "scalars": self.scalars.iter().map(|c| f.format_elt(c)).collect::<Vec<_>>(),
            "coefficients": (0..self.coefficients.rows()).map(|i| {
                (0..self.coefficients.cols())
                    .map(|j| base.format_elt(self.coefficients.get(i, j)))
                    .collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<DecompositionCertificate, CertError> {
        let spec: FieldSpec = serde_json::from_value(
            v.get("field")
                .ok_or_else(|| CertError::Json("missing field".into()))?
                .clone(),
        )
        .map_err(|e| CertError::Json(e.to_string()))?;
        let field = spec.build().map_err(|e| CertError::Field(e.to_string()))?;
        let get_str = |val: &Value, what: &str| -> Result<String, CertError> {
            val.as_str()
                .map(str::to_string)
                .ok_or_else(|| CertError::Json(format!("{what} must be a string")))
        };
        let xi = field
            .parse_elt(&get_str(
                v.get("xi").ok_or_else(|| CertError::Json("missing xi".into()))?,
                "xi",
            )?)
            .map_err(|e| CertError::Field(e.to_string()))?;
        let parse_list = |key: &str| -> Result<Vec<Elt>, CertError> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| CertError::Json(format!("missing list {key}")))?;
            arr.iter()
                .map(|item| {
                    field
                        .parse_elt(&get_str(item, key)?)
                        .map_err(|e| CertError::Field(e.to_string()))
                })
                .collect()
        };
        let alphas = parse_list("alphas")?;
        let scalars = parse_list("scalars")?;
        let rows_json = v
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| CertError::Json("missing coefficients".into()))?;
        let base = field.base();
        let mut rows = Vec::with_capacity(rows_json.len());
        for row in rows_json {
            let cells = row
                .as_array()
                .ok_or_else(|| CertError::Json("coefficient rows must be lists".into()))?;
            let parsed: Result<Vec<Elt>, CertError> = cells
                .iter()
                .map(|c| {
                    base.parse_elt(&get_str(c, "coefficient")?)
                        .map_err(|e| CertError::Field(e.to_string()))
                })
                .collect();
            rows.push(parsed?);
        }
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(CertError::Shape("ragged coefficient rows".into()));
        }
        let coefficients = MatrixGf::from_rows(&base, rows);
        Ok(DecompositionCertificate {
            field,
            xi,
            alphas,
            scalars,
            coefficients,
        })
    }
}

impl fmt::Debug for DecompositionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DecompositionCertificate(q^m={}, R={})",
            self.field.order(),
            self.rank()
        )
    }
}

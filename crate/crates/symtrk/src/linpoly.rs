//! Linearized polynomials over F_{q^m}: reduced q-polynomials
//! f(x) = a_0 x + a_1 x^q + ... + a_{m-1} x^{q^{m-1}}, the F_q-linear
//! endomorphisms of F_{q^m}. Includes the trace-form adjoint, Gram matrices
//! with respect to a basis, and the symmetric rank-one family c a Tr(a x).

use crate::basis::OrderedBasis;
use crate::field::{Elt, Field};
use crate::matrix::MatrixGf;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum LinPolyError {
    WrongArity { expected: usize, found: usize },
    ZeroArgument,
    ScalarNotInBase,
    CapExceeded { needed: u128, cap: u128 },
}

impl fmt::Display for LinPolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinPolyError::WrongArity { expected, found } => {
                write!(f, "expected {expected} coefficients, found {found}")
            }
            LinPolyError::ZeroArgument => write!(f, "argument must be nonzero"),
            LinPolyError::ScalarNotInBase => write!(f, "scalar must lie in the relative base"),
            LinPolyError::CapExceeded { needed, cap } => {
                write!(f, "enumeration needs {needed} elements, cap is {cap}")
            }
        }
    }
}

impl std::error::Error for LinPolyError {}

#[derive(Clone, PartialEq)]
pub struct LinearizedPoly {
    field: Field,
    /// coeffs[i] multiplies x^{q^i}; always exactly m entries.
    coeffs: Vec<Elt>,
}

impl LinearizedPoly {
    pub fn new(field: &Field, coeffs: Vec<Elt>) -> Result<LinearizedPoly, LinPolyError> {
        let m = field.ext_degree();
        if coeffs.len() != m {
            return Err(LinPolyError::WrongArity {
                expected: m,
                found: coeffs.len(),
            });
        }
        Ok(LinearizedPoly {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn zero(field: &Field) -> LinearizedPoly {
        LinearizedPoly {
            field: field.clone(),
            coeffs: vec![field.zero(); field.ext_degree()],
        }
    }

    /// The identity map x.
    pub fn x(field: &Field) -> LinearizedPoly {
        Self::monomial(field, &field.one(), 0).unwrap()
    }

    /// a x^{q^i}; a zero coefficient gives the zero map, i is reduced mod m.
    pub fn monomial(field: &Field, a: &Elt, i: usize) -> Result<LinearizedPoly, LinPolyError> {
        let m = field.ext_degree();
        let mut coeffs = vec![field.zero(); m];
        coeffs[i % m] = a.clone();
        Ok(LinearizedPoly {
            field: field.clone(),
            coeffs,
        })
    }

    /// The relative trace map x + x^q + ... + x^{q^{m-1}}.
    pub fn trace(field: &Field) -> LinearizedPoly {
        LinearizedPoly {
            field: field.clone(),
            coeffs: vec![field.one(); field.ext_degree()],
        }
    }

    /// c a Tr(a x) with c a nonzero base scalar and a nonzero:
    /// coefficients c a^{q^i + 1}. Its Gram matrix has rank one, and every
    /// symmetric rank-one linearized polynomial has this shape.
    pub fn rank_one_symmetric(
        field: &Field,
        alpha: &Elt,
        c: &Elt,
    ) -> Result<LinearizedPoly, LinPolyError> {
        if field.is_zero(alpha) || field.is_zero(c) {
            return Err(LinPolyError::ZeroArgument);
        }
        if !field.is_in_base(c) {
            return Err(LinPolyError::ScalarNotInBase);
        }
        let m = field.ext_degree();
        let ca = field.mul(c, alpha);
        let mut coeffs = Vec::with_capacity(m);
        let mut fr = alpha.clone();
        coeffs.push(field.mul(&ca, &fr));
        for _ in 1..m {
            fr = field.frobenius(&fr);
            coeffs.push(field.mul(&ca, &fr));
        }
        Ok(LinearizedPoly {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn eval(&self, x: &Elt) -> Elt {
        let f = &self.field;
        let mut acc = f.mul(&self.coeffs[0], x);
        let mut fr = x.clone();
        for c in &self.coeffs[1..] {
            fr = f.frobenius(&fr);
            if !f.is_zero(c) {
                acc = f.add(&acc, &f.mul(c, &fr));
            }
        }
        acc
    }

    pub fn add(&self, other: &LinearizedPoly) -> LinearizedPoly {
        let f = &self.field;
        LinearizedPoly {
            field: f.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinearizedPoly) -> LinearizedPoly {
        let f = &self.field;
        LinearizedPoly {
            field: f.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> LinearizedPoly {
        let f = &self.field;
        LinearizedPoly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|a| f.neg(a)).collect(),
        }
    }

    /// a f, i.e. the map x -> a * f(x).
    pub fn scale(&self, a: &Elt) -> LinearizedPoly {
        let f = &self.field;
        LinearizedPoly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|c| f.mul(a, c)).collect(),
        }
    }

    /// Composition x -> self(other(x)); exponents wrap since x^{q^m} = x.
    pub fn compose(&self, other: &LinearizedPoly) -> LinearizedPoly {
        let f = &self.field;
        let m = self.coeffs.len();
        let mut coeffs = vec![f.zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let term = f.mul(a, &f.frobenius_pow(b, i));
                let k = (i + j) % m;
                coeffs[k] = f.add(&coeffs[k], &term);
            }
        }
        LinearizedPoly {
            field: f.clone(),
            coeffs,
        }
    }

    /// Adjoint with respect to the trace form: Tr(x f(y)) = Tr(f^T(x) y).
    /// Coefficientwise: (f^T)_0 = a_0 and (f^T)_k = a_{m-k}^{q^k}.
    pub fn adjoint(&self) -> LinearizedPoly {
        let f = &self.field;
        let m = self.coeffs.len();
        let mut coeffs = vec![f.zero(); m];
        coeffs[0] = self.coeffs[0].clone();
        for k in 1..m {
            coeffs[k] = f.frobenius_pow(&self.coeffs[m - k], k);
        }
        LinearizedPoly {
            field: f.clone(),
            coeffs,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self == &self.adjoint()
    }

    /// Rank as an F_q-linear endomorphism.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let m = self.coeffs.len();
        let basis = OrderedBasis::power(f);
        let cols: Vec<Vec<Elt>> = basis
            .elements()
            .iter()
            .map(|b| f.coords(&self.eval(b)))
            .collect();
        MatrixGf::from_fn(&f.base(), m, m, |i, j| cols[j][i].clone()).rank()
    }

    /// Gram matrix over the base with respect to `basis`: column j holds the
    /// basis-B coordinates of f(b*_j) where B* is the trace dual of B.
    /// Equivalently entry (i, j) = Tr(b*_i f(b*_j)).
    pub fn to_gram(&self, basis: &OrderedBasis) -> MatrixGf {
        let f = &self.field;
        let m = self.coeffs.len();
        let dual = basis.trace_dual();
        let cols: Vec<Vec<Elt>> = dual
            .elements()
            .iter()
            .map(|bd| basis.coords(&self.eval(bd)))
            .collect();
        MatrixGf::from_fn(&f.base(), m, m, |i, j| cols[j][i].clone())
    }

    /// Inverse of [`to_gram`]: the unique linearized polynomial whose Gram
    /// matrix with respect to `basis` is `m`. Interpolates on the trace-dual
    /// basis through a Moore system, which is nonsingular for any basis.
    pub fn from_gram(
        m: &MatrixGf,
        basis: &OrderedBasis,
    ) -> Result<LinearizedPoly, LinPolyError> {
        let f = basis.field();
        let deg = basis.len();
        if m.rows() != deg || m.cols() != deg {
            return Err(LinPolyError::WrongArity {
                expected: deg,
                found: m.rows(),
            });
        }
        let dual = basis.trace_dual();
        // values v_j = f(b*_j) recovered from column j
        let values: Vec<Elt> = (0..deg)
            .map(|j| {
                let col: Vec<Elt> = (0..deg).map(|i| m.get(i, j).clone()).collect();
                basis.from_coords(&col)
            })
            .collect();
        // Moore system: sum_t a_t (b*_j)^{q^t} = v_j
        let moore = MatrixGf::from_fn(f, deg, deg, |j, t| {
            f.frobenius_pow(&dual.elements()[j], t)
        });
        let coeffs = moore
            .solve(&values)
            .expect("Moore matrix of a basis is nonsingular");
        LinearizedPoly::new(f, coeffs)
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| self.field.format_elt(c))
            .collect();
        write!(f, "LinPoly[{}]", parts.join(", "))
    }
}

/// Streams every symmetric rank-one linearized polynomial exactly once, in
/// (alpha index, scalar index) order with alpha restricted to the minimal
/// representative of its F_q^* scaling class. There are q^m - 1 of them.
pub fn rank_one_symmetric_all(
    field: &Field,
    cap: u128,
) -> Result<RankOneSymIter, LinPolyError> {
    let needed = field.order();
    if needed > cap {
        return Err(LinPolyError::CapExceeded { needed, cap });
    }
    Ok(RankOneSymIter {
        field: field.clone(),
        alpha_idx: 0,
        c_idx: 0,
        scalars: Vec::new(),
    })
}

pub struct RankOneSymIter {
    field: Field,
    alpha_idx: u128,
    c_idx: usize,
    scalars: Vec<Elt>,
}

/// True if alpha has the smallest enumeration index within {s * alpha} for
/// nonzero base scalars s.
pub fn is_scaling_class_rep(field: &Field, alpha: &Elt) -> bool {
    let idx = field.index_of(alpha);
    let base = field.base();
    for s in base.elements().skip(1) {
        let scaled = field.mul(&field.embed(&s), alpha);
        if field.index_of(&scaled) < idx {
            return false;
        }
    }
    true
}

impl Iterator for RankOneSymIter {
    type Item = LinearizedPoly;

    fn next(&mut self) -> Option<LinearizedPoly> {
        let f = &self.field;
        if self.scalars.is_empty() {
            self.scalars = f.base().elements().skip(1).collect();
            self.alpha_idx = 1;
            self.c_idx = 0;
            while self.alpha_idx < f.order()
                && !is_scaling_class_rep(f, &f.element(self.alpha_idx))
            {
                self.alpha_idx += 1;
            }
        }
        loop {
            if self.alpha_idx >= f.order() {
                return None;
            }
            if self.c_idx < self.scalars.len() {
                let alpha = f.element(self.alpha_idx);
                let c = f.embed(&self.scalars[self.c_idx]);
                self.c_idx += 1;
                return Some(
                    LinearizedPoly::rank_one_symmetric(f, &alpha, &c)
                        .expect("nonzero by construction"),
                );
            }
            self.c_idx = 0;
            self.alpha_idx += 1;
            while self.alpha_idx < f.order()
                && !is_scaling_class_rep(f, &f.element(self.alpha_idx))
            {
                self.alpha_idx += 1;
            }
        }
    }
}

//! Ordered bases of F_{q^m} over its relative base, coordinate extraction,
//! and trace-dual bases.

use crate::field::{Elt, Field};
use crate::matrix::MatrixGf;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum BasisError {
    WrongLength { expected: usize, found: usize },
    Dependent,
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisError::WrongLength { expected, found } => {
                write!(f, "expected {expected} basis elements, found {found}")
            }
            BasisError::Dependent => write!(f, "elements are linearly dependent"),
        }
    }
}

impl std::error::Error for BasisError {}

/// An ordered F_q-basis of F_{q^m}, with cached change-of-basis matrices
/// from and to the power basis.
#[derive(Clone)]
pub struct OrderedBasis {
    field: Field,
    elements: Vec<Elt>,
    /// inverse of the matrix whose column j holds the power-basis
    /// coordinates of elements[j]
    inv: MatrixGf,
}

impl OrderedBasis {
    pub fn new(field: &Field, elements: Vec<Elt>) -> Result<OrderedBasis, BasisError> {
        let m = field.ext_degree();
        if elements.len() != m {
            return Err(BasisError::WrongLength {
                expected: m,
                found: elements.len(),
            });
        }
        let base = field.base();
        let cols: Vec<Vec<Elt>> = elements.iter().map(|b| field.coords(b)).collect();
        let mat = MatrixGf::from_fn(&base, m, m, |i, j| cols[j][i].clone());
        let inv = mat.inverse().ok_or(BasisError::Dependent)?;
        Ok(OrderedBasis {
            field: field.clone(),
            elements,
            inv,
        })
    }

    /// The power basis (1, g, ..., g^{m-1}).
    pub fn power(field: &Field) -> OrderedBasis {
        let m = field.ext_degree();
        let g = field.generator();
        let elements = (0..m).map(|i| field.pow(&g, i as u128)).collect();
        Self::new(field, elements).expect("power basis is independent")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Elt] {
        &self.elements
    }

    /// Coordinates of x in this basis (base-level elements).
    pub fn coords(&self, x: &Elt) -> Vec<Elt> {
        let pc = self.field.coords(x);
        mul_vec(&self.inv, &pc)
    }

    pub fn from_coords(&self, coords: &[Elt]) -> Elt {
        assert_eq!(coords.len(), self.elements.len(), "coordinate arity");
        let f = &self.field;
        let mut acc = f.zero();
        for (c, b) in coords.iter().zip(&self.elements) {
            let t = f.mul(&f.embed(c), b);
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Matrix of relative traces Tr(b_i b_j) over the base.
    pub fn trace_gram(&self) -> MatrixGf {
        let f = &self.field;
        let m = self.elements.len();
        MatrixGf::from_fn(&f.base(), m, m, |i, j| {
            f.trace_to_base(&f.mul(&self.elements[i], &self.elements[j]))
        })
    }

    /// The unique basis with Tr(b_i b*_j) = delta_ij. Always exists because
    /// the trace form is nondegenerate.
    pub fn trace_dual(&self) -> OrderedBasis {
        let g = self.trace_gram();
        let ginv = g.inverse().expect("trace form is nondegenerate");
        let m = self.elements.len();
        let dual: Vec<Elt> = (0..m)
            .map(|j| {
                let col: Vec<Elt> = (0..m).map(|t| ginv.get(t, j).clone()).collect();
                self.from_coords(&col)
            })
            .collect();
        Self::new(&self.field, dual).expect("dual of a basis is a basis")
    }

    /// Checks Tr(a_i b_j) = delta_ij.
    pub fn is_trace_dual_pair(a: &OrderedBasis, b: &OrderedBasis) -> bool {
        let f = &a.field;
        let m = a.elements.len();
        if b.elements.len() != m {
            return false;
        }
        let base = f.base();
        for i in 0..m {
            for j in 0..m {
                let t = f.trace_to_base(&f.mul(&a.elements[i], &b.elements[j]));
                let want = if i == j { base.one() } else { base.zero() };
                if t != want {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for OrderedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .elements
            .iter()
            .map(|e| self.field.format_elt(e))
            .collect();
        write!(f, "OrderedBasis[{}]", parts.join(", "))
    }
}

/// Matrix-vector product.
pub fn mul_vec(m: &MatrixGf, v: &[Elt]) -> Vec<Elt> {
    assert_eq!(m.cols(), v.len());
    let f = m.field();
    (0..m.rows())
        .map(|i| {
            let mut acc = f.zero();
            for j in 0..v.len() {
                acc = f.add(&acc, &f.mul(m.get(i, j), &v[j]));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_basis_coords_round_trip() {
        for f in [
            Field::standard(2, 2).unwrap(),
            Field::standard(3, 2).unwrap(),
            Field::standard(4, 2).unwrap(),
            Field::standard(2, 4).unwrap(),
            Field::standard(5, 1).unwrap(),
        ] {
            let b = OrderedBasis::power(&f);
            for x in f.elements() {
                let c = b.coords(&x);
                assert_eq!(b.from_coords(&c), x);
                // power-basis coords agree with the field's own
                assert_eq!(c, f.coords(&x));
            }
        }
    }

    #[test]
    fn rejects_dependent_sets() {
        let f = Field::standard(2, 2).unwrap();
        let w = f.generator();
        assert!(matches!(
            OrderedBasis::new(&f, vec![w.clone(), w.clone()]),
            Err(BasisError::Dependent)
        ));
        assert!(matches!(
            OrderedBasis::new(&f, vec![w]),
            Err(BasisError::WrongLength { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn dual_of_f16_power_basis() {
        // over F_2 with x^4 + x + 1: dual of (1, a, a^2, a^3) is
        // (1 + a^3, a^2, a, 1), i.e. packed indices 9, 4, 2, 1
        let f = Field::standard(2, 4).unwrap();
        let b = OrderedBasis::power(&f);
        let d = b.trace_dual();
        let idx: Vec<u128> = d.elements().iter().map(|e| f.index_of(e)).collect();
        assert_eq!(idx, vec![9, 4, 2, 1]);
        assert!(OrderedBasis::is_trace_dual_pair(&b, &d));
        assert!(OrderedBasis::is_trace_dual_pair(&d, &b));
    }

    #[test]
    fn dual_involution_and_duality_everywhere() {
        for f in [
            Field::standard(3, 2).unwrap(),
            Field::standard(4, 2).unwrap(),
            Field::standard(2, 3).unwrap(),
            Field::standard(3, 3).unwrap(),
        ] {
            let b = OrderedBasis::power(&f);
            let d = b.trace_dual();
            assert!(OrderedBasis::is_trace_dual_pair(&b, &d));
            let dd = d.trace_dual();
            assert_eq!(dd.elements(), b.elements());
        }
    }

    #[test]
    fn dual_coords_are_traces() {
        // coords in B equal traces against B*: x = sum Tr(b*_i x) b_i
        let f = Field::standard(3, 2).unwrap();
        let b = OrderedBasis::power(&f);
        let d = b.trace_dual();
        for x in f.elements() {
            let c = b.coords(&x);
            for (i, ci) in c.iter().enumerate() {
                let t = f.trace_to_base(&f.mul(&d.elements()[i], &x));
                assert_eq!(&t, ci);
            }
        }
    }

    #[test]
    fn non_power_basis() {
        let f = Field::standard(2, 3).unwrap();
        let g = f.generator();
        // (g, g+1, g^2) is a basis of F_8 over F_2
        let b = OrderedBasis::new(
            &f,
            vec![g.clone(), f.add(&g, &f.one()), f.mul(&g, &g)],
        )
        .unwrap();
        for x in f.elements() {
            assert_eq!(b.from_coords(&b.coords(&x)), x);
        }
        let d = b.trace_dual();
        assert!(OrderedBasis::is_trace_dual_pair(&b, &d));
    }

    #[test]
    fn degenerate_m1_basis() {
        let f = Field::standard(4, 1).unwrap();
        let b = OrderedBasis::power(&f);
        assert_eq!(b.len(), 1);
        assert_eq!(b.elements()[0], f.one());
        let d = b.trace_dual();
        assert_eq!(d.elements()[0], f.one());
    }
}

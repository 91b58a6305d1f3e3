//! The univariate admissibility polynomial for cubic extensions.
//!
//! Taking alpha_j = T^j (j < 6) in the six starred coefficient equations
//! gives a 6x6 matrix whose (t, j) entry is T^{j e_t}, with e the starred
//! exponent list (2, 2q, 2q^2, q+1, q^2+q, q^2+1). Its determinant f(T)
//! expands into signed monomials with +/-1 contributions, so f has prime
//! subfield coefficients; any xi with f(xi) != 0 makes the system
//! nonsingular. Since T^{q^3} = T on field elements, exponents fold modulo
//! q^3 - 1 (keeping 0 fixed) before evaluating.

use super::DecompError;
use crate::arith;
use crate::field::{Elt, Field};
use crate::matrix::MatrixGf;

/// Dense polynomial over F_p, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> UniPoly {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { p, coeffs }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, e: usize) -> u64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<(u64, usize)> {
        self.coeffs.last().map(|&c| (c, self.coeffs.len() - 1))
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Horner evaluation after embedding the coefficients; the field must
    /// have the same characteristic.
    pub fn eval(&self, field: &Field, x: &Elt) -> Elt {
        assert_eq!(
            field.characteristic(),
            self.p,
            "characteristic mismatch in evaluation"
        );
        let mut acc = field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = field.mul(&acc, x);
            if c != 0 {
                acc = field.add(&acc, &field.from_u64(c));
            }
        }
        acc
    }

    /// Folds exponents by T^e = T^{((e-1) mod (q^m - 1)) + 1} for e >= 1,
    /// which preserves values on every element of F_{q^m} (including 0).
    pub fn reduce_functional(&self, q: u64, m: u32) -> UniPoly {
        let modulus = (q as u128).pow(m) - 1;
        let modulus = usize::try_from(modulus).expect("folded exponent range fits");
        let mut out = vec![0u64; (modulus + 1).min(self.coeffs.len().max(1))];
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let target = if e == 0 { 0 } else { (e - 1) % modulus + 1 };
            if target >= out.len() {
                out.resize(target + 1, 0);
            }
            out[target] = (out[target] + c) % self.p;
        }
        UniPoly::new(self.p, out)
    }
}

/// The starred exponent pairs for m = 3 in emission order, as Frobenius
/// power pairs {a, b} meaning q^a + q^b.
const M3_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 0), (2, 1), (2, 0)];

/// Signed permutation expansion of the 6x6 determinant as a polynomial in T
/// over the prime subfield of F_q.
pub fn m3_f(q: u64) -> Result<UniPoly, DecompError> {
    let (p, _) = arith::prime_power(q).ok_or(DecompError::UnsupportedOrder { q })?;
    let e: Vec<u128> = M3_PAIRS
        .iter()
        .map(|&(a, b)| (q as u128).pow(a as u32) + (q as u128).pow(b as u32))
        .collect();
    let max_exp: u128 = e.iter().map(|&v| v * 5).sum();
    let mut coeffs = vec![0u64; usize::try_from(max_exp).expect("exponent fits") + 1];
    for_each_permutation(&mut |sigma| {
        let exp: u128 = (0..6).map(|t| e[t] * sigma[t] as u128).sum();
        let idx = usize::try_from(exp).unwrap();
        let delta = if parity(sigma) { 1 } else { p - 1 };
        coeffs[idx] = (coeffs[idx] + delta) % p;
    });
    Ok(UniPoly::new(p, coeffs))
}

/// True for even permutations (inversion count).
fn parity(sigma: &[usize; 6]) -> bool {
    let mut inversions = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn for_each_permutation(f: &mut impl FnMut(&[usize; 6])) {
    fn go(a: &mut [usize; 6], k: usize, f: &mut impl FnMut(&[usize; 6])) {
        if k == 6 {
            f(a);
            return;
        }
        for i in k..6 {
            a.swap(k, i);
            go(a, k + 1, f);
            a.swap(k, i);
        }
    }
    let mut a = [0, 1, 2, 3, 4, 5];
    go(&mut a, 0, f);
}

/// The 6x6 starred matrix determinant for explicit alphas over F_{q^3}.
pub fn m3_det(field: &Field, alphas: &[Elt]) -> Result<Elt, DecompError> {
    if field.ext_degree() != 3 {
        return Err(DecompError::UnsupportedDegree {
            m: field.ext_degree(),
        });
    }
    if alphas.len() != 6 {
        return Err(DecompError::NotSquare);
    }
    for (index, a) in alphas.iter().enumerate() {
        if field.is_zero(a) {
            return Err(DecompError::ZeroAlpha { index });
        }
    }
    let m = MatrixGf::from_fn(field, 6, 6, |t, j| {
        let (a, b) = M3_PAIRS[t];
        field.mul(
            &field.frobenius_pow(&alphas[j], a),
            &field.frobenius_pow(&alphas[j], b),
        )
    });
    Ok(m.det())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipoly_basics() {
        let f = UniPoly::new(3, vec![1, 0, 5, 0, 0]);
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.coeff(2), 2);
        assert_eq!(f.leading(), Some((2, 2)));
        assert_eq!(f.weight(), 2);
        assert!(UniPoly::new(3, vec![0, 3]).is_zero());
    }

    #[test]
    fn eval_and_reduce_agree_on_field_elements() {
        let f = m3_f(2).unwrap();
        let field = Field::standard(2, 3).unwrap();
        let reduced = f.reduce_functional(2, 3);
        assert!(reduced.degree() <= Some(7));
        for x in field.elements() {
            assert_eq!(f.eval(&field, &x), reduced.eval(&field, &x));
        }
    }

    #[test]
    fn determinant_matches_polynomial_at_powers() {
        for q in [2u64, 3] {
            let field = Field::standard(q, 3).unwrap();
            let f = m3_f(q).unwrap();
            // pick a primitive element so the powers are distinct and nonzero
            let xi = field.primitive_element().unwrap();
            let alphas: Vec<Elt> = (0..6).map(|j| field.pow(&xi, j)).collect();
            let det = m3_det(&field, &alphas).unwrap();
            assert_eq!(det, f.eval(&field, &xi), "q={q}");
        }
    }

    #[test]
    fn every_base_element_is_a_root() {
        for q in [2u64, 3, 4] {
            let f = m3_f(q).unwrap();
            let field = Field::standard(q, 3).unwrap();
            let base = field.base();
            for a in base.elements() {
                let x = field.embed(&a);
                assert!(field.is_zero(&f.eval(&field, &x)), "q={q}");
            }
        }
    }

    #[test]
    fn degree_formula_for_large_q() {
        // past all cancellations the degree is 17q^2 + 9q + 4 with leading
        // coefficient -1
        for q in [19u64, 23] {
            let f = m3_f(q).unwrap();
            let (lc, deg) = f.leading().unwrap();
            assert_eq!(deg as u64, 17 * q * q + 9 * q + 4, "q={q}");
            assert_eq!(lc, q - 1, "q={q}"); // -1 mod p, q prime here
        }
    }

    #[test]
    fn swapping_equal_rows_kills_determinant() {
        let field = Field::standard(2, 3).unwrap();
        let xi = field.find_generator();
        // repeated alpha forces two equal columns
        let alphas: Vec<Elt> = vec![
            xi.clone(),
            xi.clone(),
            field.pow(&xi, 2),
            field.pow(&xi, 3),
            field.pow(&xi, 4),
            field.pow(&xi, 5),
        ];
        assert!(field.is_zero(&m3_det(&field, &alphas).unwrap()));
    }

    #[test]
    fn rejects_bad_inputs() {
        let f4 = Field::standard(2, 2).unwrap();
        assert!(matches!(
            m3_det(&f4, &vec![f4.one(); 6]),
            Err(DecompError::UnsupportedDegree { m: 2 })
        ));
        let f8 = Field::standard(2, 3).unwrap();
        assert!(matches!(
            m3_det(&f8, &vec![f8.one(); 5]),
            Err(DecompError::NotSquare)
        ));
        assert!(matches!(m3_f(6), Err(DecompError::UnsupportedOrder { q: 6 })));
    }
}

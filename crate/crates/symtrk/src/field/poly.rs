//! Dense univariate polynomial arithmetic over a tower level, used only for
//! irreducibility testing of extension-step moduli. Polynomials are ascending
//! coefficient vectors with no trailing zeros (except the zero polynomial).

use super::{Elt, Field};
use crate::arith;

fn trim(k: &Field, v: &mut Vec<Elt>) {
    while v.len() > 1 && k.is_zero(v.last().unwrap()) {
        v.pop();
    }
    if v.len() == 1 && k.is_zero(&v[0]) {
        v.clear();
    }
}

fn deg(v: &[Elt]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn sub(k: &Field, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| k.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| k.zero());
        out.push(k.sub(&x, &y));
    }
    trim(k, &mut out);
    out
}

/// Remainder of a modulo the monic polynomial f.
fn rem(k: &Field, a: &[Elt], f: &[Elt]) -> Vec<Elt> {
    let d = f.len() - 1;
    let mut r: Vec<Elt> = a.to_vec();
    while r.len() > d {
        let lead = r.pop().unwrap();
        if k.is_zero(&lead) {
            continue;
        }
        let shift = r.len() - d;
        for t in 0..d {
            let s = k.mul(&lead, &f[t]);
            r[shift + t] = k.sub(&r[shift + t], &s);
        }
    }
    trim(k, &mut r);
    r
}

fn mulmod(k: &Field, a: &[Elt], b: &[Elt], f: &[Elt]) -> Vec<Elt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let p = k.mul(x, y);
            acc[i + j] = k.add(&acc[i + j], &p);
        }
    }
    rem(k, &acc, f)
}

fn powmod(k: &Field, a: &[Elt], mut e: u128, f: &[Elt]) -> Vec<Elt> {
    let mut base = rem(k, a, f);
    let mut acc = rem(k, &[k.one()], f);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(k, &acc, &base, f);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(k, &base, &base, f);
        }
    }
    acc
}

/// Monic gcd.
fn gcd(k: &Field, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(k, &mut x);
    trim(k, &mut y);
    while !y.is_empty() {
        // reduce x mod y after making y monic
        let lead_inv = k.inv(y.last().unwrap()).unwrap();
        let ym: Vec<Elt> = y.iter().map(|c| k.mul(c, &lead_inv)).collect();
        let r = rem(k, &x, &ym);
        x = ym;
        y = r;
    }
    if let Some(l) = x.last() {
        if !k.is_one(l) {
            let li = k.inv(l).unwrap();
            x = x.iter().map(|c| k.mul(c, &li)).collect();
        }
    }
    x
}

fn format_poly(k: &Field, v: &[Elt]) -> String {
    let inner: Vec<String> = v.iter().map(|c| k.format_elt(c)).collect();
    format!("[{}]", inner.join(", "))
}

/// Irreducibility of a monic polynomial f of degree d >= 1 over k:
/// x^{Q^d} = x mod f, and gcd(x^{Q^{d/r}} - x, f) = 1 for every prime r | d.
/// On failure returns a human-readable witness.
pub(crate) fn is_irreducible(k: &Field, f: &[Elt]) -> Result<(), String> {
    let d = f.len() - 1;
    debug_assert!(d >= 1 && k.is_one(&f[d]));
    let q = k.order();
    let x: Vec<Elt> = vec![k.zero(), k.one()];
    // chain[i] = x^{Q^i} mod f, extended lazily up to d
    let mut frob = rem(k, &x, f);
    let mut powers = vec![rem(k, &x, f)];
    frob = powmod(k, &frob, q, f);
    powers.push(frob.clone());
    for _ in 2..=d {
        frob = powmod(k, &frob, q, f);
        powers.push(frob.clone());
    }
    let xr = rem(k, &x, f);
    if powers[d] != xr {
        return Err("x^(Q^d) != x".to_string());
    }
    for r in arith::prime_divisors(d as u64) {
        let e = d / r as usize;
        let diff = sub(k, &powers[e], &xr);
        let g = gcd(k, &diff, f);
        match deg(&g) {
            Some(0) => {}
            Some(gd) if gd == d => {
                return Err(format!(
                    "all irreducible factors have degree dividing {e}"
                ));
            }
            Some(_) => {
                return Err(format!("factor {}", format_poly(k, &g)));
            }
            None => unreachable!("gcd with a monic modulus is nonzero"),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn poly(k: &Field, coeffs: &[u64]) -> Vec<Elt> {
        coeffs.iter().map(|&c| k.from_u64(c)).collect()
    }

    #[test]
    fn classifies_quadratics_over_f2() {
        let f2 = Field::prime(2).unwrap();
        assert!(is_irreducible(&f2, &poly(&f2, &[1, 1, 1])).is_ok());
        assert!(is_irreducible(&f2, &poly(&f2, &[0, 0, 1])).is_err()); // x^2
        assert!(is_irreducible(&f2, &poly(&f2, &[1, 0, 1])).is_err()); // (x+1)^2
        assert!(is_irreducible(&f2, &poly(&f2, &[0, 1, 1])).is_err()); // x(x+1)
    }

    #[test]
    fn counts_match_moebius_formula() {
        // number of monic irreducible quartics over F_2 is 3; cubics over F_3 is 8
        let f2 = Field::prime(2).unwrap();
        let mut n = 0;
        for idx in 0..16u64 {
            let c = [idx & 1, (idx >> 1) & 1, (idx >> 2) & 1, (idx >> 3) & 1, 1];
            if is_irreducible(&f2, &poly(&f2, &c)).is_ok() {
                n += 1;
            }
        }
        assert_eq!(n, 3);

        let f3 = Field::prime(3).unwrap();
        let mut n = 0;
        for idx in 0..27u64 {
            let c = [idx % 3, (idx / 3) % 3, (idx / 9) % 3, 1];
            if is_irreducible(&f3, &poly(&f3, &c)).is_ok() {
                n += 1;
            }
        }
        assert_eq!(n, 8);
    }

    #[test]
    fn linear_always_irreducible() {
        let f5 = Field::prime(5).unwrap();
        for c in 0..5 {
            assert!(is_irreducible(&f5, &poly(&f5, &[c, 1])).is_ok());
        }
    }

    #[test]
    fn detects_degree_two_factor_over_extension() {
        // over F_4: x^2 + x + w splits check: count irreducible monic quadratics
        // over F_4 must be (16 - 4) / 2 = 6
        let f4 = Field::standard(2, 2).unwrap();
        let mut n = 0;
        for i in 0..4u128 {
            for j in 0..4u128 {
                let c = vec![f4.element(i), f4.element(j), f4.one()];
                if is_irreducible(&f4, &c).is_ok() {
                    n += 1;
                }
            }
        }
        assert_eq!(n, 6);
    }
}

//! Finite field towers with exact arithmetic.
//!
//! A tower starts at a prime field F_p and climbs through a sequence of monic
//! irreducible extension steps. Elements are recursive coordinate vectors over
//! the immediate base of each level, little-endian (entry 0 multiplies g^0).
//! A [`Field`] is a view of one level of a shared tower; its *relative base*
//! is the level directly below, so an empty tower is F_p viewed over itself
//! with extension degree 1.

mod poly;
mod spec;
mod text;

pub use spec::{CoeffSpec, FieldSpec};

use crate::arith;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Repr {
    Prime(u64),
    Ext(Vec<Repr>),
}

/// Element of one tower level. Only meaningful together with the [`Field`]
/// view that produced it; operations panic if the level does not match.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Elt {
    pub(crate) level: usize,
    pub(crate) repr: Repr,
}

#[derive(Debug)]
struct Step {
    degree: usize,
    /// Monic modulus, length degree+1, coefficients one level down.
    modulus: Vec<Repr>,
    /// (g^i)^Q for i < degree, where Q is the size of the level below;
    /// these make the relative Frobenius a coordinate-linear map.
    frob_img: Vec<Repr>,
    /// Size of the level this step builds.
    size: u128,
}

#[derive(Debug)]
struct Tower {
    p: u64,
    steps: Vec<Step>,
}

/// A view of one level of a field tower, relative to the level below it.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tower>,
    top: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldError {
    NonPrimeCharacteristic(u64),
    NotPrimePower(u64),
    BadStepDegree { step: usize },
    NotMonic { step: usize },
    BadCoefficient { step: usize, detail: String },
    Reducible { step: usize, witness: String },
    TooLarge,
    Parse(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NonPrimeCharacteristic(p) => write!(f, "{p} is not prime"),
            FieldError::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            FieldError::BadStepDegree { step } => write!(f, "step {step}: degree must be >= 1"),
            FieldError::NotMonic { step } => write!(f, "step {step}: modulus is not monic"),
            FieldError::BadCoefficient { step, detail } => {
                write!(f, "step {step}: bad coefficient: {detail}")
            }
            FieldError::Reducible { step, witness } => {
                write!(f, "step {step}: modulus is reducible ({witness})")
            }
            FieldError::TooLarge => write!(f, "field too large for this operation"),
            FieldError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for FieldError {}

impl Tower {
    fn size_at(&self, lvl: usize) -> u128 {
        if lvl == 0 {
            self.p as u128
        } else {
            self.steps[lvl - 1].size
        }
    }

    fn deg_at(&self, lvl: usize) -> usize {
        debug_assert!(lvl >= 1);
        self.steps[lvl - 1].degree
    }

    fn zero_r(&self, lvl: usize) -> Repr {
        if lvl == 0 {
            Repr::Prime(0)
        } else {
            Repr::Ext(vec![self.zero_r(lvl - 1); self.deg_at(lvl)])
        }
    }

    fn from_u64_r(&self, lvl: usize, n: u64) -> Repr {
        if lvl == 0 {
            Repr::Prime(n % self.p)
        } else {
            let mut v = vec![self.zero_r(lvl - 1); self.deg_at(lvl)];
            v[0] = self.from_u64_r(lvl - 1, n);
            Repr::Ext(v)
        }
    }

    fn one_r(&self, lvl: usize) -> Repr {
        self.from_u64_r(lvl, 1)
    }

    fn is_zero_r(r: &Repr) -> bool {
        match r {
            Repr::Prime(v) => *v == 0,
            Repr::Ext(v) => v.iter().all(Self::is_zero_r),
        }
    }

    fn add_r(&self, lvl: usize, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Prime(x), Repr::Prime(y)) => {
                Repr::Prime(((*x as u128 + *y as u128) % self.p as u128) as u64)
            }
            (Repr::Ext(x), Repr::Ext(y)) => {
                debug_assert_eq!(x.len(), y.len());
                Repr::Ext(
                    x.iter()
                        .zip(y)
                        .map(|(u, v)| self.add_r(lvl - 1, u, v))
                        .collect(),
                )
            }
            _ => panic!("mixed element shapes"),
        }
    }

    fn neg_r(&self, lvl: usize, a: &Repr) -> Repr {
        match a {
            Repr::Prime(x) => Repr::Prime(if *x == 0 { 0 } else { self.p - *x }),
            Repr::Ext(x) => Repr::Ext(x.iter().map(|u| self.neg_r(lvl - 1, u)).collect()),
        }
    }

    fn sub_r(&self, lvl: usize, a: &Repr, b: &Repr) -> Repr {
        self.add_r(lvl, a, &self.neg_r(lvl, b))
    }

    /// Multiply a level-`lvl` element by a scalar from the level below.
    fn scale_r(&self, lvl: usize, s: &Repr, x: &Repr) -> Repr {
        match x {
            Repr::Ext(v) => Repr::Ext(v.iter().map(|u| self.mul_r(lvl - 1, s, u)).collect()),
            Repr::Prime(_) => panic!("scale at prime level"),
        }
    }

    fn mul_r(&self, lvl: usize, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Prime(x), Repr::Prime(y)) => {
                Repr::Prime(((*x as u128 * *y as u128) % self.p as u128) as u64)
            }
            (Repr::Ext(x), Repr::Ext(y)) => {
                let d = self.deg_at(lvl);
                debug_assert!(x.len() == d && y.len() == d);
                let mut acc = vec![self.zero_r(lvl - 1); 2 * d - 1];
                for (i, xi) in x.iter().enumerate() {
                    if Self::is_zero_r(xi) {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        let prod = self.mul_r(lvl - 1, xi, yj);
                        acc[i + j] = self.add_r(lvl - 1, &acc[i + j], &prod);
                    }
                }
                // x^d = -(f_0 + f_1 x + ... + f_{d-1} x^{d-1}) for the monic modulus f
                let modulus = &self.steps[lvl - 1].modulus;
                for k in (d..2 * d - 1).rev() {
                    if Self::is_zero_r(&acc[k]) {
                        continue;
                    }
                    let c = std::mem::replace(&mut acc[k], self.zero_r(lvl - 1));
                    for t in 0..d {
                        if Self::is_zero_r(&modulus[t]) {
                            continue;
                        }
                        let sub = self.mul_r(lvl - 1, &c, &modulus[t]);
                        acc[k - d + t] = self.sub_r(lvl - 1, &acc[k - d + t], &sub);
                    }
                }
                acc.truncate(d);
                Repr::Ext(acc)
            }
            _ => panic!("mixed element shapes"),
        }
    }

    fn pow_r(&self, lvl: usize, a: &Repr, mut e: u128) -> Repr {
        let mut base = a.clone();
        let mut acc = self.one_r(lvl);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_r(lvl, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_r(lvl, &base, &base);
            }
        }
        acc
    }

    fn inv_r(&self, lvl: usize, a: &Repr) -> Option<Repr> {
        if Self::is_zero_r(a) {
            return None;
        }
        Some(self.pow_r(lvl, a, self.size_at(lvl) - 2))
    }

    /// Relative Frobenius x -> x^Q at level lvl >= 1 (Q = size of level below).
    fn frob_q_r(&self, lvl: usize, a: &Repr) -> Repr {
        let coords = match a {
            Repr::Ext(v) => v,
            Repr::Prime(_) => panic!("frobenius at prime level"),
        };
        let step = &self.steps[lvl - 1];
        let mut acc = self.zero_r(lvl);
        for (i, c) in coords.iter().enumerate() {
            if Self::is_zero_r(c) {
                continue;
            }
            let term = self.scale_r(lvl, c, &step.frob_img[i]);
            acc = self.add_r(lvl, &acc, &term);
        }
        acc
    }

    fn index_r(&self, lvl: usize, a: &Repr) -> u128 {
        match a {
            Repr::Prime(v) => *v as u128,
            Repr::Ext(coords) => {
                let radix = self.size_at(lvl - 1);
                let mut idx = 0u128;
                for c in coords.iter().rev() {
                    idx = idx * radix + self.index_r(lvl - 1, c);
                }
                idx
            }
        }
    }

    fn from_index_r(&self, lvl: usize, mut idx: u128) -> Repr {
        if lvl == 0 {
            Repr::Prime(idx as u64)
        } else {
            let radix = self.size_at(lvl - 1);
            let d = self.deg_at(lvl);
            let mut coords = Vec::with_capacity(d);
            for _ in 0..d {
                coords.push(self.from_index_r(lvl - 1, idx % radix));
                idx /= radix;
            }
            Repr::Ext(coords)
        }
    }
}

impl Field {
    /// The prime field F_p as an empty tower.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        Ok(Field {
            inner: Arc::new(Tower { p, steps: Vec::new() }),
            top: 0,
        })
    }

    /// Extends this view by one step with the given monic modulus
    /// (coefficients in this field, ascending, length degree+1).
    /// Any levels above this view are discarded in the result.
    pub fn extend(&self, modulus: &[Elt]) -> Result<Field, FieldError> {
        let step_no = self.top;
        if modulus.len() < 2 {
            return Err(FieldError::BadStepDegree { step: step_no });
        }
        let degree = modulus.len() - 1;
        for c in modulus {
            if c.level != self.top {
                return Err(FieldError::BadCoefficient {
                    step: step_no,
                    detail: "coefficient from a different level".into(),
                });
            }
        }
        if !self.is_one(&modulus[degree]) {
            return Err(FieldError::NotMonic { step: step_no });
        }
        if let Err(witness) = poly::is_irreducible(self, modulus) {
            return Err(FieldError::Reducible {
                step: step_no,
                witness,
            });
        }
        let size = self
            .order()
            .checked_pow(u32::try_from(degree).map_err(|_| FieldError::TooLarge)?)
            .ok_or(FieldError::TooLarge)?;

        let mut steps: Vec<Step> = Vec::with_capacity(self.top + 1);
        for s in &self.inner.steps[..self.top] {
            steps.push(Step {
                degree: s.degree,
                modulus: s.modulus.clone(),
                frob_img: s.frob_img.clone(),
                size: s.size,
            });
        }
        steps.push(Step {
            degree,
            modulus: modulus.iter().map(|e| e.repr.clone()).collect(),
            frob_img: Vec::new(),
            size,
        });
        let mut tower = Tower { p: self.inner.p, steps };

        // Frobenius images of the power basis; for degree 1 the basis is (1).
        let lvl = self.top + 1;
        let q = tower.size_at(lvl - 1);
        let g = if degree == 1 {
            // root of x + c is -c, embedded
            Repr::Ext(vec![tower.neg_r(lvl - 1, &tower.steps[lvl - 1].modulus[0])])
        } else {
            let mut v = vec![tower.zero_r(lvl - 1); degree];
            v[1] = tower.one_r(lvl - 1);
            Repr::Ext(v)
        };
        let mut imgs = Vec::with_capacity(degree);
        for i in 0..degree {
            let gi = tower.pow_r(lvl, &g, i as u128);
            imgs.push(tower.pow_r(lvl, &gi, q));
        }
        tower.steps[lvl - 1].frob_img = imgs;

        Ok(Field {
            inner: Arc::new(tower),
            top: lvl,
        })
    }

    /// F_{q^m} over F_q with the first monic irreducible step polynomials in
    /// enumeration order. m = 1 over a prime q yields the bare prime field;
    /// m = 1 over a proper prime power appends a degree-1 step so the
    /// relative base is F_q.
    pub fn standard(q: u64, m: usize) -> Result<Field, FieldError> {
        let (p, k) = arith::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if m == 0 {
            return Err(FieldError::BadStepDegree { step: 0 });
        }
        let mut f = Field::prime(p)?;
        if k >= 2 {
            let irr = f.first_irreducible(k as usize)?;
            f = f.extend(&irr)?;
        }
        if m >= 2 {
            let irr = f.first_irreducible(m)?;
            f = f.extend(&irr)?;
        } else if k >= 2 {
            let x = vec![f.zero(), f.one()];
            f = f.extend(&x)?;
        }
        Ok(f)
    }

    /// First monic irreducible of the given degree over this field, by packed
    /// index of the non-leading coefficient tuple (little-endian).
    pub fn first_irreducible(&self, degree: usize) -> Result<Vec<Elt>, FieldError> {
        if degree == 0 {
            return Err(FieldError::BadStepDegree { step: self.top });
        }
        let q = self.order();
        let total = q
            .checked_pow(u32::try_from(degree).map_err(|_| FieldError::TooLarge)?)
            .ok_or(FieldError::TooLarge)?;
        let mut idx = 0u128;
        while idx < total {
            let mut coeffs = Vec::with_capacity(degree + 1);
            let mut rem = idx;
            for _ in 0..degree {
                coeffs.push(self.element(rem % q));
                rem /= q;
            }
            coeffs.push(self.one());
            if poly::is_irreducible(self, &coeffs).is_ok() {
                return Ok(coeffs);
            }
            idx += 1;
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn chk<'a>(&self, e: &'a Elt) -> &'a Elt {
        assert_eq!(
            e.level, self.top,
            "element belongs to a different tower level"
        );
        e
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    /// Size of the relative base (q). For an empty tower this is p.
    pub fn base_size(&self) -> u128 {
        if self.top == 0 {
            self.inner.p as u128
        } else {
            self.inner.size_at(self.top - 1)
        }
    }

    /// Extension degree m over the relative base (1 for an empty tower).
    pub fn ext_degree(&self) -> usize {
        if self.top == 0 {
            1
        } else {
            self.inner.deg_at(self.top)
        }
    }

    /// Number of elements of this level.
    pub fn order(&self) -> u128 {
        self.inner.size_at(self.top)
    }

    /// View of the relative base. The base of an empty tower is itself.
    pub fn base(&self) -> Field {
        Field {
            inner: Arc::clone(&self.inner),
            top: self.top.saturating_sub(1),
        }
    }

    /// Height of the view (number of steps below it).
    pub fn height(&self) -> usize {
        self.top
    }

    pub fn zero(&self) -> Elt {
        Elt {
            level: self.top,
            repr: self.inner.zero_r(self.top),
        }
    }

    pub fn one(&self) -> Elt {
        Elt {
            level: self.top,
            repr: self.inner.one_r(self.top),
        }
    }

    pub fn from_u64(&self, n: u64) -> Elt {
        Elt {
            level: self.top,
            repr: self.inner.from_u64_r(self.top, n),
        }
    }

    /// Root of the top step's modulus (the power-basis generator g).
    /// Degenerate cases: 1 for an empty tower; the embedded root for a
    /// degree-1 step.
    pub fn generator(&self) -> Elt {
        if self.top == 0 {
            return self.one();
        }
        let d = self.inner.deg_at(self.top);
        if d == 1 {
            let c0 = &self.inner.steps[self.top - 1].modulus[0];
            let root = self.inner.neg_r(self.top - 1, c0);
            return Elt {
                level: self.top,
                repr: Repr::Ext(vec![root]),
            };
        }
        let mut v = vec![self.inner.zero_r(self.top - 1); d];
        v[1] = self.inner.one_r(self.top - 1);
        Elt {
            level: self.top,
            repr: Repr::Ext(v),
        }
    }

    pub fn is_zero(&self, a: &Elt) -> bool {
        Tower::is_zero_r(&self.chk(a).repr)
    }

    pub fn is_one(&self, a: &Elt) -> bool {
        self.chk(a).repr == self.inner.one_r(self.top)
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        Elt {
            level: self.top,
            repr: self
                .inner
                .add_r(self.top, &self.chk(a).repr, &self.chk(b).repr),
        }
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        Elt {
            level: self.top,
            repr: self
                .inner
                .sub_r(self.top, &self.chk(a).repr, &self.chk(b).repr),
        }
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        Elt {
            level: self.top,
            repr: self.inner.neg_r(self.top, &self.chk(a).repr),
        }
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        Elt {
            level: self.top,
            repr: self
                .inner
                .mul_r(self.top, &self.chk(a).repr, &self.chk(b).repr),
        }
    }

    pub fn pow(&self, a: &Elt, e: u128) -> Elt {
        Elt {
            level: self.top,
            repr: self.inner.pow_r(self.top, &self.chk(a).repr, e),
        }
    }

    pub fn inv(&self, a: &Elt) -> Option<Elt> {
        self.inner
            .inv_r(self.top, &self.chk(a).repr)
            .map(|repr| Elt {
                level: self.top,
                repr,
            })
    }

    pub fn div(&self, a: &Elt, b: &Elt) -> Option<Elt> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Relative Frobenius x -> x^q (identity on an empty tower).
    pub fn frobenius(&self, a: &Elt) -> Elt {
        if self.top == 0 {
            return self.chk(a).clone();
        }
        Elt {
            level: self.top,
            repr: self.inner.frob_q_r(self.top, &self.chk(a).repr),
        }
    }

    /// j-fold relative Frobenius x -> x^{q^j}.
    pub fn frobenius_pow(&self, a: &Elt, j: usize) -> Elt {
        let m = self.ext_degree();
        let mut x = self.chk(a).clone();
        for _ in 0..(j % m) {
            x = self.frobenius(&x);
        }
        x
    }

    /// Relative trace x + x^q + ... + x^{q^{m-1}}, as a top-level element.
    pub fn rel_trace(&self, a: &Elt) -> Elt {
        let m = self.ext_degree();
        let mut acc = self.chk(a).clone();
        let mut x = a.clone();
        for _ in 1..m {
            x = self.frobenius(&x);
            acc = self.add(&acc, &x);
        }
        acc
    }

    /// Relative trace as an element of the base view.
    pub fn trace_to_base(&self, a: &Elt) -> Elt {
        let t = self.rel_trace(a);
        self.try_to_base(&t)
            .expect("trace lies in the relative base")
    }

    /// Power-basis coordinates over the relative base (length m, entry 0 the
    /// constant term). For an empty tower this is the singleton [a].
    pub fn coords(&self, a: &Elt) -> Vec<Elt> {
        self.chk(a);
        if self.top == 0 {
            return vec![a.clone()];
        }
        match &a.repr {
            Repr::Ext(v) => v
                .iter()
                .map(|r| Elt {
                    level: self.top - 1,
                    repr: r.clone(),
                })
                .collect(),
            Repr::Prime(_) => unreachable!(),
        }
    }

    pub fn from_coords(&self, coords: &[Elt]) -> Elt {
        if self.top == 0 {
            assert_eq!(coords.len(), 1);
            return self.chk(&coords[0]).clone();
        }
        let d = self.inner.deg_at(self.top);
        assert_eq!(coords.len(), d, "coordinate arity mismatch");
        let v: Vec<Repr> = coords
            .iter()
            .map(|c| {
                assert_eq!(c.level, self.top - 1, "coordinate from a different level");
                c.repr.clone()
            })
            .collect();
        Elt {
            level: self.top,
            repr: Repr::Ext(v),
        }
    }

    /// Embeds an element of the relative base into this level.
    pub fn embed(&self, a: &Elt) -> Elt {
        if self.top == 0 {
            return self.chk(a).clone();
        }
        assert_eq!(a.level, self.top - 1, "embed expects a base element");
        let mut v = vec![self.inner.zero_r(self.top - 1); self.inner.deg_at(self.top)];
        v[0] = a.repr.clone();
        Elt {
            level: self.top,
            repr: Repr::Ext(v),
        }
    }

    /// Projects to the relative base if the element lies there.
    pub fn try_to_base(&self, a: &Elt) -> Option<Elt> {
        self.chk(a);
        if self.top == 0 {
            return Some(a.clone());
        }
        match &a.repr {
            Repr::Ext(v) => {
                if v[1..].iter().all(Tower::is_zero_r) {
                    Some(Elt {
                        level: self.top - 1,
                        repr: v[0].clone(),
                    })
                } else {
                    None
                }
            }
            Repr::Prime(_) => unreachable!(),
        }
    }

    pub fn is_in_base(&self, a: &Elt) -> bool {
        self.try_to_base(a).is_some()
    }

    /// Packed little-endian enumeration index (0 -> 0, 1 -> 1, ...).
    pub fn index_of(&self, a: &Elt) -> u128 {
        self.inner.index_r(self.top, &self.chk(a).repr)
    }

    pub fn element(&self, idx: u128) -> Elt {
        assert!(idx < self.order(), "element index out of range");
        Elt {
            level: self.top,
            repr: self.inner.from_index_r(self.top, idx),
        }
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// Degree of the minimal polynomial over the relative base: the smallest
    /// d >= 1 with x^{q^d} = x.
    pub fn degree_over_base(&self, a: &Elt) -> usize {
        if self.top == 0 {
            return 1;
        }
        let mut x = self.frobenius(self.chk(a));
        let mut d = 1;
        while &x != a {
            x = self.frobenius(&x);
            d += 1;
        }
        d
    }

    /// First nonzero element of full degree m in enumeration order.
    pub fn find_generator(&self) -> Elt {
        let m = self.ext_degree();
        self.elements()
            .skip(1)
            .find(|x| self.degree_over_base(x) == m)
            .expect("generating elements exist")
    }

    fn order_u64(&self) -> Result<u64, FieldError> {
        u64::try_from(self.order()).map_err(|_| FieldError::TooLarge)
    }

    /// Multiplicative order; errors on zero input and on fields past u64.
    pub fn multiplicative_order(&self, a: &Elt) -> Result<u128, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::Parse("order of zero is undefined".into()));
        }
        let n = self.order_u64()? - 1;
        let mut o = n;
        for (p, _) in arith::factor(n) {
            while o % p == 0 && self.is_one(&self.pow(a, (o / p) as u128)) {
                o /= p;
            }
        }
        Ok(o as u128)
    }

    pub fn is_primitive(&self, a: &Elt) -> Result<bool, FieldError> {
        if self.is_zero(a) {
            return Ok(false);
        }
        let n = self.order_u64()? - 1;
        for p in arith::prime_divisors(n) {
            if self.is_one(&self.pow(a, (n / p) as u128)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First primitive element in enumeration order.
    pub fn primitive_element(&self) -> Result<Elt, FieldError> {
        for x in self.elements().skip(1) {
            if self.is_primitive(&x)? {
                return Ok(x);
            }
        }
        unreachable!("finite multiplicative groups are cyclic")
    }

    /// True if the two views are levels of the same underlying tower at the
    /// same height.
    pub fn same_view(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) && self.top == other.top
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(p={}, level {} of {}, |F|={})",
            self.inner.p,
            self.top,
            self.inner.steps.len(),
            self.order()
        )
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top
            && (Arc::ptr_eq(&self.inner, &other.inner) || self.spec() == other.spec())
    }
}

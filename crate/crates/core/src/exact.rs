//! Exact arithmetic in `Q[f_1, ..., f_k] / (f_i^2 - F_i)`.
//!
//! A [`Surd`] is a rational linear combination of square-free monomials in
//! formal square roots `f_i` of rational radicands `F_i`. The multilinear
//! normal form is canonical in the quotient ring, so an expression reduces to
//! zero exactly when the underlying identity holds for every choice of signs
//! of the roots. Areas of tetrahedra with rational vertices live naturally in
//! this ring, which lets the area identities be verified without rounding.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub struct Surd {
    radicands: Arc<Vec<BigRational>>,
    terms: BTreeMap<u32, BigRational>,
}

impl Surd {
    /// The formal roots `f_i` with `f_i^2 = radicands[i]`.
    pub fn generators(radicands: Vec<BigRational>) -> Vec<Surd> {
        assert!(radicands.len() <= 31, "too many radicands");
        let ctx = Arc::new(radicands);
        (0..ctx.len())
            .map(|i| {
                let mut terms = BTreeMap::new();
                terms.insert(1u32 << i, BigRational::one());
                Surd { radicands: ctx.clone(), terms }
            })
            .collect()
    }

    pub fn rational(q: BigRational) -> Surd {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(0, q);
        }
        Surd { radicands: Arc::new(Vec::new()), terms }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The rational value when the element has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn ctx(&self, other: &Surd) -> Arc<Vec<BigRational>> {
        if self.radicands.is_empty() {
            return other.radicands.clone();
        }
        if !other.radicands.is_empty() && !Arc::ptr_eq(&self.radicands, &other.radicands) {
            assert_eq!(*self.radicands, *other.radicands, "mixing surd contexts");
        }
        self.radicands.clone()
    }

    fn with_terms(ctx: Arc<Vec<BigRational>>, terms: BTreeMap<u32, BigRational>) -> Surd {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Surd { radicands: ctx, terms }
    }

    fn mask_product(&self, mask: u32) -> BigRational {
        let mut p = BigRational::one();
        for (i, f) in self.radicands.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p *= f;
            }
        }
        p
    }

    fn mul_ref(&self, other: &Surd) -> Surd {
        let ctx = self.ctx(other);
        let probe = Surd { radicands: ctx.clone(), terms: BTreeMap::new() };
        let mut out: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb * probe.mask_product(ma & mb);
                *out.entry(ma ^ mb).or_insert_with(BigRational::zero) += c;
            }
        }
        Surd::with_terms(ctx, out)
    }

    fn add_ref(&self, other: &Surd, sign: i32) -> Surd {
        let ctx = self.ctx(other);
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            let e = out.entry(*m).or_insert_with(BigRational::zero);
            if sign > 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
        Surd::with_terms(ctx, out)
    }

    /// Multiplicative inverse by successive conjugation.
    ///
    /// Panics if the element is a zero divisor of the ring.
    pub fn inv(&self) -> Surd {
        let top = self.terms.keys().fold(0u32, |acc, m| acc | m);
        if top == 0 {
            let q = self.terms.get(&0).cloned().unwrap_or_else(BigRational::zero);
            assert!(!q.is_zero(), "division by zero surd");
            return Surd::with_terms(self.radicands.clone(), [(0, q.recip())].into());
        }
        let bit = 31 - top.leading_zeros();
        let b = 1u32 << bit;
        let conj_terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, if m & b != 0 { -c.clone() } else { c.clone() }))
            .collect();
        let conj = Surd::with_terms(self.radicands.clone(), conj_terms);
        let norm = self.mul_ref(&conj);
        debug_assert!(norm.terms.keys().all(|m| m & b == 0));
        conj.mul_ref(&norm.inv())
    }

    /// Numerical value with every root taken positive.
    pub fn value(&self) -> f64 {
        let roots: Vec<f64> = self
            .radicands
            .iter()
            .map(|f| ToPrimitive::to_f64(f).unwrap_or(f64::NAN).sqrt())
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
                for (i, r) in roots.iter().enumerate() {
                    if m & (1 << i) != 0 {
                        v *= r;
                    }
                }
                v
            })
            .sum()
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let roots: Vec<String> = (0..32)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| format!("f{i}"))
                    .collect();
                if roots.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", roots.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.add_ref(other, -1).terms.is_empty()
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        self.add_ref(&rhs, 1)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self.add_ref(&rhs, -1)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        self.mul_ref(&rhs)
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, rhs: Surd) -> Surd {
        if let Some(q) = rhs.as_rational() {
            assert!(!q.is_zero(), "division by zero surd");
            let r = q.recip();
            let terms = self.terms.iter().map(|(m, c)| (*m, c * &r)).collect();
            return Surd::with_terms(self.radicands.clone(), terms);
        }
        self.mul_ref(&rhs.inv())
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        Surd { radicands: self.radicands, terms }
    }
}

impl crate::scalar::Scalar for Surd {
    fn zero() -> Self {
        Surd::rational(<BigRational as Zero>::zero())
    }
    fn one() -> Self {
        Surd::rational(<BigRational as One>::one())
    }
    fn from_i64(n: i64) -> Self {
        Surd::rational(BigRational::from_integer(n.into()))
    }
    fn to_f64(&self) -> f64 {
        self.value()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// True when every coefficient of a rational is exactly representable sign-wise.
pub fn is_nonnegative(q: &BigRational) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn root_squares_to_radicand() {
        let g = Surd::generators(vec![q(2), q(3)]);
        assert_eq!(g[0].clone() * g[0].clone(), Surd::from_i64(2));
        let p = g[0].clone() * g[1].clone();
        assert_eq!(p.clone() * p, Surd::from_i64(6));
    }

    #[test]
    fn inverse_of_sum_of_roots() {
        let g = Surd::generators(vec![q(2), q(3), q(5)]);
        let s = g[0].clone() + g[1].clone() + g[2].clone() + Surd::from_i64(1);
        let inv = s.inv();
        assert_eq!(s * inv, Surd::one());
    }

    #[test]
    fn numeric_value_matches() {
        let g = Surd::generators(vec![q(2), q(3)]);
        let e = (g[0].clone() + g[1].clone()) / (g[0].clone() - Surd::from_i64(7));
        let want = (2f64.sqrt() + 3f64.sqrt()) / (2f64.sqrt() - 7.0);
        assert!((e.value() - want).abs() < 1e-14);
    }
}

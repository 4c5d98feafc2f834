//! Rational functions in `q`: the coefficient field for unrolled recurrences.
//!
//! Values are kept in a unique canonical form (coprime numerator/denominator,
//! coprime integer contents, positive leading denominator coefficient), so
//! equality is plain structural comparison.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::{Int, PolyQ};

/// A fraction of integer polynomials in `q`, always canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalQ {
    num: PolyQ,
    den: PolyQ,
}

impl RationalQ {
    /// Build `num / den`, reducing to canonical form.
    ///
    /// Panics if `den` is zero; all call sites divide by structurally nonzero
    /// polynomials (leading recurrence coefficients are checked beforehand).
    pub fn new(num: PolyQ, den: PolyQ) -> Self {
        assert!(!den.is_zero(), "RationalQ denominator must be nonzero");
        let mut r = RationalQ { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RationalQ { num: p, den: PolyQ::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(PolyQ::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(PolyQ::one())
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = PolyQ::one();
            return;
        }
        let g = PolyQ::gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        let c = self.num.content().gcd(&self.den.content());
        let low = self.den.coeff(self.den.valuation().expect("nonzero den"));
        let c = if low.is_negative() { -c } else { c };
        if !c.is_one() {
            self.num = self
                .num
                .div_exact(&PolyQ::monomial(c.clone(), 0))
                .expect("content divides numerator");
            self.den = self
                .den
                .div_exact(&PolyQ::monomial(c, 0))
                .expect("content divides denominator");
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalQ::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalQ::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RationalQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Cross-reduce before multiplying to keep intermediate degrees down.
        let g1 = PolyQ::gcd(&self.num, &other.den);
        let g2 = PolyQ::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RationalQ::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero RationalQ");
        self.mul(&RationalQ {
            num: other.den.clone(),
            den: other.num.clone(),
        })
    }

    pub fn mul_poly(&self, p: &PolyQ) -> Self {
        self.mul(&RationalQ::from_poly(p.clone()))
    }

    /// Equality by cross-multiplication; avoids normalizing large operands
    /// when a plain comparison has already failed.
    pub fn eq_cross(&self, other: &Self) -> bool {
        self == other || self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Debug for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}

/// Sum of a slice of rationals (zero for an empty slice).
pub fn sum(values: &[RationalQ]) -> RationalQ {
    let mut acc = RationalQ::zero();
    for v in values {
        acc = acc.add(v);
    }
    acc
}

/// Convenience: `q^a / (1 - q^b)`-style building blocks for tests and goldens.
pub fn q_power_over(num_exp: usize, den_factors: &[usize]) -> RationalQ {
    let mut den = PolyQ::one();
    for &b in den_factors {
        den = den.mul(&PolyQ::one_minus_q(b));
    }
    RationalQ::new(PolyQ::monomial(Int::from(1), num_exp), den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_reduction() {
        // (2q + 2) / 2 -> (q + 1) / 1
        let r = RationalQ::new(PolyQ::from_terms([(1, 2), (0, 2)]), PolyQ::from_terms([(0, 2)]));
        assert_eq!(r.num(), &PolyQ::from_terms([(1, 1), (0, 1)]));
        assert!(r.den().is_one());

        // (q^2 - 1) / (q - 1) -> q + 1
        let r = RationalQ::new(
            PolyQ::from_terms([(2, 1), (0, -1)]),
            PolyQ::from_terms([(1, 1), (0, -1)]),
        );
        assert_eq!(r.num(), &PolyQ::from_terms([(1, 1), (0, 1)]));
        assert!(r.den().is_one());
    }

    #[test]
    fn denominator_sign_is_normalized() {
        // q / (-1 + q) == -q / (1 - q)
        let a = RationalQ::new(
            PolyQ::from_terms([(1, 1)]),
            PolyQ::from_terms([(1, 1), (0, -1)]),
        );
        let b = RationalQ::new(
            PolyQ::from_terms([(1, -1)]),
            PolyQ::from_terms([(0, 1), (1, -1)]),
        );
        assert_eq!(a, b);
    }

    #[test]
    fn field_arithmetic() {
        let a = q_power_over(1, &[1]); // q/(1-q)
        let b = q_power_over(2, &[2]); // q^2/(1-q^2)
        let s = a.add(&b);
        // q/(1-q) + q^2/(1-q^2) = (q(1+q) + q^2)/(1-q^2) = (q + 2q^2)/(1-q^2)
        assert_eq!(
            s,
            RationalQ::new(
                PolyQ::from_terms([(1, 1), (2, 2)]),
                PolyQ::one_minus_q(2)
            )
        );
        assert!(a.mul(&b).div(&b).eq_cross(&a));
        assert!(a.sub(&a).is_zero());
    }
}

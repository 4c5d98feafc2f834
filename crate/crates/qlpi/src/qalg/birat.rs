//! Bivariate rational functions: entries of transfer matrices and the
//! intermediate values of the q-difference elimination.
//!
//! Canonical form: numerator and denominator coprime in `Z[x, q]`, integer
//! contents coprime, and the denominator's lexicographically leading
//! coefficient positive. Equality is then structural.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bipoly::BiPoly;
use super::poly::Int;

#[derive(Clone, PartialEq, Eq)]
pub struct BiRat {
    num: BiPoly,
    den: BiPoly,
}

impl BiRat {
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        assert!(!den.is_zero(), "BiRat denominator must be nonzero");
        let mut r = BiRat { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: BiPoly) -> Self {
        BiRat { num: p, den: BiPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(BiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    /// The monomial `c * x^xe * q^qe`.
    pub fn monomial(c: Int, xe: usize, qe: usize) -> Self {
        Self::from_poly(BiPoly::monomial(c, xe, qe))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some((coeff, xe, qe))` when the value is a single monomial.
    pub fn as_monomial(&self) -> Option<(Int, i64, i64)> {
        if self.num.num_terms() != 1 && !self.num.is_zero() {
            return None;
        }
        if self.den.num_terms() != 1 {
            return None;
        }
        let ((nx, nq), nc) = self.num.lowest_term()?;
        let ((dx, dq), dc) = self.den.lowest_term().unwrap();
        if !dc.is_one() && !nc.mod_floor(&dc).is_zero() {
            return None;
        }
        let c = if dc.is_one() { nc } else { nc / dc };
        Some((c, nx as i64 - dx as i64, nq as i64 - dq as i64))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = BiPoly::one();
            return;
        }
        let g = BiPoly::gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        let c = self.num.int_content().gcd(&self.den.int_content());
        let low = self.den.lowest_term().expect("nonzero den").1;
        let c = if low.is_negative() { -c } else { c };
        if !c.is_one() {
            self.num = self.num.div_int_exact(&c);
            self.den = self.den.div_int_exact(&c);
        }
    }

    pub fn neg(&self) -> Self {
        BiRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        BiRat::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        BiRat::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Cross-reduction keeps the PRS gcd calls on small operands.
        let g1 = BiPoly::gcd(&self.num, &other.den);
        let g2 = BiPoly::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        BiRat::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero BiRat");
        self.mul(&BiRat {
            num: other.den.clone(),
            den: other.num.clone(),
        })
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero BiRat");
        BiRat::new(self.den.clone(), self.num.clone())
    }

    /// Substitute `x -> x * q^s`, any integer `s`.
    pub fn shift_x(&self, s: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (n, lift_n) = self.num.shift_x_laurent(s);
        let (d, lift_d) = self.den.shift_x_laurent(s);
        // self(x q^s) = (n / q^lift_n) / (d / q^lift_d) = n q^lift_d / (d q^lift_n)
        if lift_d >= lift_n {
            BiRat::new(n.mul_monomial(0, lift_d - lift_n), d)
        } else {
            BiRat::new(n, d.mul_monomial(0, lift_n - lift_d))
        }
    }
}

impl fmt::Debug for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_is_a_group_action() {
        // x q^3 / (1 + x q^4) shifted by 3 -> x q^6 / (1 + x q^7)
        let f = BiRat::new(
            BiPoly::from_terms([(1, 3, 1)]),
            BiPoly::from_terms([(0, 0, 1), (1, 4, 1)]),
        );
        let s3 = f.shift_x(3);
        assert_eq!(
            s3,
            BiRat::new(
                BiPoly::from_terms([(1, 6, 1)]),
                BiPoly::from_terms([(0, 0, 1), (1, 7, 1)]),
            )
        );
        assert_eq!(s3.shift_x(-3), f);
        assert_eq!(f.shift_x(-5).shift_x(5), f);
    }

    #[test]
    fn shift_introduces_q_denominator() {
        // x at s = -1 -> x/q
        let x = BiRat::from_poly(BiPoly::from_terms([(1, 0, 1)]));
        let shifted = x.shift_x(-1);
        assert_eq!(shifted.num(), &BiPoly::from_terms([(1, 0, 1)]));
        assert_eq!(shifted.den(), &BiPoly::from_terms([(0, 1, 1)]));
    }

    #[test]
    fn monomial_detection() {
        let m = BiRat::new(
            BiPoly::from_terms([(1, 2, 3)]),
            BiPoly::from_terms([(0, 1, 1)]),
        );
        assert_eq!(m.as_monomial(), Some((Int::from(3), 1, 1)));
        let nm = BiRat::new(
            BiPoly::from_terms([(1, 2, 1), (0, 0, 1)]),
            BiPoly::one(),
        );
        assert_eq!(nm.as_monomial(), None);
    }
}

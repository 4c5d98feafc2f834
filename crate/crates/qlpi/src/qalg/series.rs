//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! Every series carries an exclusive truncation order `N`: coefficients of
//! `q^0 .. q^(N-1)` are exact, everything beyond is unknown. Binary
//! operations truncate to the smaller order of the operands.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Int, PolyQ};
use super::rational::RationalQ;

/// Exact rational scalar for series coefficients.
pub type Rat = BigRational;

#[derive(Clone, PartialEq, Eq)]
pub struct SeriesQ {
    coeffs: Vec<Rat>,
}

impl SeriesQ {
    /// The zero series known to order `n`.
    pub fn zero(n: usize) -> Self {
        SeriesQ { coeffs: vec![Rat::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        let mut s = SeriesQ::zero(n);
        if n > 0 {
            s.coeffs[0] = Rat::one();
        }
        s
    }

    pub fn monomial(c: Rat, exp: usize, n: usize) -> Self {
        let mut s = SeriesQ::zero(n);
        if exp < n {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn from_poly(p: &PolyQ, n: usize) -> Self {
        let mut s = SeriesQ::zero(n);
        for (e, c) in p.terms() {
            if e < n {
                s.coeffs[e] = Rat::from_integer(c.clone());
            }
        }
        s
    }

    /// Exclusive truncation order.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, e: usize) -> Rat {
        self.coeffs.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Integer coefficient accessor; panics when the coefficient is not an
    /// integer (series from partition counts always are).
    pub fn coeff_int(&self, e: usize) -> Int {
        let c = self.coeff(e);
        assert!(c.is_integer(), "coefficient of q^{e} is not an integer");
        c.to_integer()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Reduce the truncation order (never extends knowledge).
    pub fn truncate(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n);
        SeriesQ { coeffs }
    }

    pub fn set_coeff(&mut self, e: usize, c: Rat) {
        if e < self.coeffs.len() {
            self.coeffs[e] = c;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut s = SeriesQ::zero(n);
        for i in 0..n {
            s.coeffs[i] = &self.coeffs[i] + &other.coeffs[i];
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut s = SeriesQ::zero(n);
        for i in 0..n {
            s.coeffs[i] = &self.coeffs[i] - &other.coeffs[i];
        }
        s
    }

    pub fn neg(&self) -> Self {
        SeriesQ { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        SeriesQ { coeffs: self.coeffs.iter().map(|v| v * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut s = SeriesQ::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    s.coeffs[i + j] += a * b;
                }
            }
        }
        s
    }

    /// Multiply by a sparse integer polynomial (cheaper than converting).
    pub fn mul_poly(&self, p: &PolyQ) -> Self {
        let n = self.order();
        let mut s = SeriesQ::zero(n);
        for (e, c) in p.terms() {
            if e >= n {
                continue;
            }
            let cr = Rat::from_integer(c.clone());
            for (i, a) in self.coeffs.iter().enumerate().take(n - e) {
                if !a.is_zero() {
                    s.coeffs[i + e] += a * &cr;
                }
            }
        }
        s
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Self {
        let n = self.order();
        assert!(n > 0 && !self.coeffs[0].is_zero(), "series inverse needs c0 != 0");
        let c0_inv = Rat::one() / &self.coeffs[0];
        let mut inv = SeriesQ::zero(n);
        inv.coeffs[0] = c0_inv.clone();
        for k in 1..n {
            let mut acc = Rat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !inv.coeffs[k - j].is_zero() {
                    acc += &self.coeffs[j] * &inv.coeffs[k - j];
                }
            }
            inv.coeffs[k] = -acc * &c0_inv;
        }
        inv
    }

    /// Multiply by `q^k` (coefficients shift up, order preserved).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut s = SeriesQ::zero(n);
        for i in 0..n.saturating_sub(k) {
            s.coeffs[i + k] = self.coeffs[i].clone();
        }
        s
    }

    /// Divide by `q^k`. The result is known only to order `n - k`; panics if
    /// any of the lowest `k` coefficients is nonzero (callers have already
    /// established the valuation).
    pub fn shift_down(&self, k: usize) -> Self {
        let n = self.order();
        for i in 0..k.min(n) {
            assert!(
                self.coeffs[i].is_zero(),
                "shift_down would drop a nonzero coefficient at q^{i}"
            );
        }
        SeriesQ { coeffs: self.coeffs[k.min(n)..].to_vec() }
    }

    /// Substitute `q -> q^k`, `k >= 1`.
    pub fn inflate(&self, k: usize) -> Self {
        let n = self.order();
        let mut s = SeriesQ::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && i * k < n {
                s.coeffs[i * k] = c.clone();
            }
        }
        s
    }

    /// First exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Debug for SeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{}", term_text(c, e))?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", term_text(&-c, e))?;
            } else {
                write!(f, " + {}", term_text(c, e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

fn term_text(c: &Rat, e: usize) -> String {
    if e == 0 {
        format!("{c}")
    } else if c.is_one() {
        if e == 1 { "q".into() } else { format!("q^{e}") }
    } else if e == 1 {
        format!("{c}*q")
    } else {
        format!("{c}*q^{e}")
    }
}

/// Expand a rational function as a power series. Requires `den(0) != 0`.
pub fn expand_rational(f: &RationalQ, n: usize) -> Result<SeriesQ, super::ExpandError> {
    if f.den().constant_term().is_zero() {
        return Err(super::ExpandError::DenominatorVanishesAtZero);
    }
    let num = SeriesQ::from_poly(f.num(), n);
    let den = SeriesQ::from_poly(f.den(), n);
    Ok(num.mul(&den.inverse()))
}

/// Expand `num/den` where numerator and denominator may share a power of `q`:
/// strips `q^v` from both sides first, requiring the result to be a genuine
/// power series (numerator valuation at least the denominator's).
pub fn expand_rational_valuation(f: &RationalQ, n: usize) -> Result<SeriesQ, super::ExpandError> {
    if f.is_zero() {
        return Ok(SeriesQ::zero(n));
    }
    let vd = f.den().valuation().unwrap_or(0);
    let vn = f.num().valuation().unwrap_or(0);
    if vn < vd {
        return Err(super::ExpandError::NegativeValuation);
    }
    if vd == 0 {
        return expand_rational(f, n);
    }
    let shift = vn - vd;
    let num = f.num().div_q_power(vn).unwrap();
    let den = f.den().div_q_power(vd).unwrap();
    let base = expand_rational(&RationalQ::new(num, den), n)?;
    Ok(base.shift_up(shift))
}

/// The partition-number series `1 / prod_(k>=1) (1 - q^k)` to order `n`,
/// optionally restricted to parts from `allowed` residues mod `modulus`.
pub fn partition_product_series(n: usize, residues: Option<(&[usize], usize)>) -> SeriesQ {
    let mut acc = SeriesQ::one(n);
    for k in 1..n {
        let keep = match residues {
            None => true,
            Some((allowed, m)) => allowed.contains(&(k % m)),
        };
        if keep {
            acc = acc.mul(&SeriesQ::from_poly(&PolyQ::one_minus_q(k), n));
        }
    }
    acc.inverse()
}

/// Helper for integer-coefficient assertions in tests and oracles.
pub fn int_rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        // q/(1-q) to order 5: q + q^2 + q^3 + q^4
        let f = RationalQ::new(
            PolyQ::from_terms([(1, 1)]),
            PolyQ::one_minus_q(1),
        );
        let s = expand_rational(&f, 5).unwrap();
        assert_eq!(
            s.coeffs(),
            &[int_rat(0), int_rat(1), int_rat(1), int_rat(1), int_rat(1)]
        );
    }

    #[test]
    fn vanishing_denominator_rejected() {
        let f = RationalQ::new(PolyQ::one(), PolyQ::from_terms([(1, 1), (2, -1)]));
        assert!(expand_rational(&f, 4).is_err());
        // but q/(q - q^2) = 1/(1-q) expands after valuation stripping
        let s = expand_rational_valuation(
            &RationalQ::new(PolyQ::from_terms([(1, 1)]), PolyQ::from_terms([(1, 1), (2, -1)])),
            4,
        )
        .unwrap();
        assert_eq!(s.coeffs(), &[int_rat(1), int_rat(1), int_rat(1), int_rat(1)]);
    }

    #[test]
    fn partition_numbers() {
        let p = partition_product_series(10, None);
        let expect = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(p.coeff_int(n), Int::from(e));
        }
    }
}

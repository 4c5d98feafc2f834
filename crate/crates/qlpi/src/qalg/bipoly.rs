//! Sparse bivariate polynomials over `Z`.
//!
//! [`BiPoly`] is used in two readings that share all arithmetic:
//! as polynomials in `(x, q)` for q-difference systems and equations, and as
//! polynomials in `(S, q)` for coefficient recurrences, where `S` stands for
//! `q^M` and advancing `M` by one substitutes `S -> qS`. The first key
//! component is the x- (or S-) exponent, the second the q-exponent.
//!
//! The GCD works in the recursive representation `Z[q][x]`: contents split
//! off with the fast univariate GCD, and a primitive remainder sequence
//! handles the x-direction, whose degrees stay small here.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Int, PolyQ};

/// A polynomial in `x` and `q` with integer coefficients, stored sparsely
/// with no zero entries.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: BTreeMap<(usize, usize), Int>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(Int::one(), 0, 0)
    }

    /// The monomial `c * x^xe * q^qe`.
    pub fn monomial(c: Int, xe: usize, qe: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((xe, qe), c);
        }
        BiPoly { coeffs }
    }

    /// Build from `(x-exponent, q-exponent, coefficient)` triples.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize, i64)>>(terms: I) -> Self {
        let mut p = BiPoly::zero();
        for (xe, qe, c) in terms {
            p.add_term(xe, qe, Int::from(c));
        }
        p
    }

    /// Embed a univariate polynomial in `q` at a given x-power.
    pub fn from_poly_q(p: &PolyQ, xe: usize) -> Self {
        let mut out = BiPoly::zero();
        for (qe, c) in p.terms() {
            out.add_term(xe, qe, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&(0, 0)).map_or(false, |c| c.is_one())
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|&(xe, _)| xe).max()
    }

    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|&(_, qe)| qe).max()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Int)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, xe: usize, qe: usize) -> Int {
        self.coeffs.get(&(xe, qe)).cloned().unwrap_or_else(Int::zero)
    }

    pub fn add_term(&mut self, xe: usize, qe: usize, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&(xe, qe)) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.coeffs.remove(&(xe, qe));
                }
            }
            None => {
                self.coeffs.insert((xe, qe), c);
            }
        }
    }

    /// Coefficient of `x^xe` as a polynomial in `q`.
    pub fn x_coeff(&self, xe: usize) -> PolyQ {
        let mut p = PolyQ::zero();
        for (&(a, b), c) in &self.coeffs {
            if a == xe {
                p.add_term(b, c.clone());
            }
        }
        p
    }

    /// View as a vector of q-polynomials indexed by x-degree (dense in x).
    pub fn x_coeff_vec(&self) -> Vec<PolyQ> {
        let deg = match self.x_degree() {
            Some(d) => d,
            None => return Vec::new(),
        };
        let mut out = vec![PolyQ::zero(); deg + 1];
        for (&(a, b), c) in &self.coeffs {
            out[a].add_term(b, c.clone());
        }
        out
    }

    pub fn from_x_coeffs(coeffs: &[PolyQ]) -> Self {
        let mut out = BiPoly::zero();
        for (xe, p) in coeffs.iter().enumerate() {
            for (qe, c) in p.terms() {
                out.add_term(xe, qe, c.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_term(a, b, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut out = BiPoly::zero();
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &other.coeffs {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn mul_int(&self, c: &Int) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, xe: usize, qe: usize) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(a, b), c)| ((a + xe, b + qe), c.clone()))
                .collect(),
        }
    }

    /// Integer content (gcd of all coefficients), nonnegative.
    pub fn int_content(&self) -> Int {
        let mut g = Int::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, c: &Int) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| {
                    let (quot, rem) = v.div_rem(c);
                    debug_assert!(rem.is_zero());
                    (*k, quot)
                })
                .collect(),
        }
    }

    /// Leading coefficient under lexicographic (x-degree, q-degree) order.
    pub fn leading_coeff_lex(&self) -> Int {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Int::zero)
    }

    /// Lowest monomial under lexicographic (x-degree, q-degree) order.
    pub fn lowest_term(&self) -> Option<((usize, usize), Int)> {
        self.coeffs.iter().next().map(|(k, c)| (*k, c.clone()))
    }

    /// Substitute `x -> x * q^s` for nonnegative `s` (stays polynomial).
    pub fn shift_x_up(&self, s: usize) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(a, b), c)| ((a, b + s * a), c.clone()))
                .collect(),
        }
    }

    /// Substitute `x -> x * q^s` for any integer `s`, splitting off the
    /// q-power deficit: returns `(p, d)` with the substitution equal to
    /// `p / q^d` and `p` having no common positive q-power when `d > 0`.
    pub fn shift_x_laurent(&self, s: i64) -> (Self, usize) {
        if self.is_zero() {
            return (BiPoly::zero(), 0);
        }
        let shifted: Vec<((usize, i64), Int)> = self
            .coeffs
            .iter()
            .map(|(&(a, b), c)| ((a, b as i64 + s * a as i64), c.clone()))
            .collect();
        let min_q = shifted.iter().map(|&((_, b), _)| b).min().unwrap();
        let lift = if min_q < 0 { (-min_q) as usize } else { 0 };
        let mut out = BiPoly::zero();
        for ((a, b), c) in shifted {
            out.add_term(a, (b + lift as i64) as usize, c);
        }
        (out, lift)
    }

    /// Evaluate the first variable at `q^m` (the `S -> q^M` substitution of
    /// recurrence coefficients). Exponents collapse to `q^(b + a*m)`.
    pub fn eval_x_at_q_power(&self, m: usize) -> PolyQ {
        let mut p = PolyQ::zero();
        for (&(a, b), c) in &self.coeffs {
            p.add_term(b + a * m, c.clone());
        }
        p
    }

    /// Evaluate at `x = 0`: the q-polynomial of x-degree-0 terms.
    pub fn eval_x_zero(&self) -> PolyQ {
        self.x_coeff(0)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let dvec = divisor.x_coeff_vec();
        let dd = dvec.len() - 1;
        let dl = &dvec[dd];
        let mut rem = self.x_coeff_vec();
        let mut quot: Vec<PolyQ> = Vec::new();
        loop {
            while rem.last().map_or(false, |p| p.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
            let rd = rem.len() - 1;
            if rd < dd {
                return None;
            }
            let c = rem[rd].div_exact(dl)?;
            let shift = rd - dd;
            if quot.len() < shift + 1 {
                quot.resize(shift + 1, PolyQ::zero());
            }
            quot[shift] = quot[shift].add(&c);
            for (i, d) in dvec.iter().enumerate() {
                let t = c.mul(d);
                rem[i + shift] = rem[i + shift].sub(&t);
            }
        }
        Some(BiPoly::from_x_coeffs(&quot))
    }

    /// Full content in `Z[q]` of the recursive representation `Z[q][x]`.
    fn content_q(&self) -> PolyQ {
        let mut g = PolyQ::zero();
        for p in self.x_coeff_vec() {
            if p.is_zero() {
                continue;
            }
            let pg = PolyQ::gcd(&g, &p);
            // Track integer content separately: PolyQ::gcd is primitive.
            g = if g.is_zero() {
                p.clone()
            } else {
                let ic = g.content().gcd(&p.content());
                pg.mul_int(&ic)
            };
            if g.is_one() {
                break;
            }
        }
        if g.leading_coeff().is_negative() {
            g.neg()
        } else {
            g
        }
    }

    /// GCD in `Z[x, q]`, primitive with positive lex-leading coefficient.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalized_sign();
        }
        if b.is_zero() {
            return a.normalized_sign();
        }
        let ca = a.content_q();
        let cb = b.content_q();
        let ic = ca.content().gcd(&cb.content());
        let content_gcd = PolyQ::gcd(&ca, &cb).mul_int(&ic);
        let pa = a.div_poly_q_exact(&ca);
        let pb = b.div_poly_q_exact(&cb);
        let core = Self::primitive_prs_gcd(pa, pb);
        let g = core.mul_poly_q(&content_gcd);
        g.normalized_sign()
    }

    fn normalized_sign(&self) -> Self {
        if self.leading_coeff_lex().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn mul_poly_q(&self, p: &PolyQ) -> Self {
        self.mul(&BiPoly::from_poly_q(p, 0))
    }

    fn div_poly_q_exact(&self, p: &PolyQ) -> Self {
        self.div_exact(&BiPoly::from_poly_q(p, 0))
            .expect("content divides")
    }

    /// Primitive remainder sequence on x-primitive inputs.
    fn primitive_prs_gcd(mut r0: Self, mut r1: Self) -> Self {
        let d0 = r0.x_degree().unwrap();
        let d1 = r1.x_degree().unwrap();
        if d0 < d1 {
            std::mem::swap(&mut r0, &mut r1);
        }
        loop {
            let deg1 = match r1.x_degree() {
                None => return r0.make_x_primitive(),
                Some(0) => return BiPoly::one(),
                Some(d) => d,
            };
            let rem = Self::pseudo_rem(&r0, &r1, deg1);
            r0 = r1;
            r1 = rem.make_x_primitive();
        }
    }

    fn make_x_primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let c = self.content_q();
        if c.is_one() {
            return self;
        }
        self.div_poly_q_exact(&c)
    }

    /// Pseudo-remainder of `a` by `b` in `Z[q][x]`: `lc(b)^(da-db+1) * a mod b`.
    fn pseudo_rem(a: &Self, b: &Self, db: usize) -> Self {
        let bvec = b.x_coeff_vec();
        let bl = bvec[db].clone();
        let mut rvec = a.x_coeff_vec();
        loop {
            while rvec.last().map_or(false, |p| p.is_zero()) {
                rvec.pop();
            }
            if rvec.is_empty() || rvec.len() - 1 < db {
                return BiPoly::from_x_coeffs(&rvec);
            }
            let ra = rvec.len() - 1;
            let lead = rvec[ra].clone();
            let shift = ra - db;
            for p in rvec.iter_mut() {
                *p = p.mul(&bl);
            }
            for (i, bc) in bvec.iter().enumerate() {
                let t = lead.mul(bc);
                rvec[i + shift] = rvec[i + shift].sub(&t);
            }
        }
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::qalg::text::bipoly_text(self, "x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_examples() {
        // (1 + x q^4) shifted by s = -3 -> 1 + x q
        let p = BiPoly::from_terms([(0, 0, 1), (1, 4, 1)]);
        let (shifted, lift) = p.shift_x_laurent(-3);
        assert_eq!(lift, 0);
        assert_eq!(shifted, BiPoly::from_terms([(0, 0, 1), (1, 1, 1)]));

        // x shifted by s = -1 -> x / q
        let x = BiPoly::from_terms([(1, 0, 1)]);
        let (shifted, lift) = x.shift_x_laurent(-1);
        assert_eq!(lift, 1);
        assert_eq!(shifted, x);
    }

    #[test]
    fn gcd_with_common_factor() {
        // (1 + x q^4) * (1 + x q) vs (1 + x q^4) * (x^2 q^3)
        let f = BiPoly::from_terms([(0, 0, 1), (1, 4, 1)]);
        let a = f.mul(&BiPoly::from_terms([(0, 0, 1), (1, 1, 1)]));
        let b = f.mul(&BiPoly::from_terms([(2, 3, 1)]));
        assert_eq!(BiPoly::gcd(&a, &b), f);
    }

    #[test]
    fn div_exact_bivariate() {
        let a = BiPoly::from_terms([(0, 0, 1), (1, 1, 2), (2, 3, -1)]);
        let b = BiPoly::from_terms([(1, 2, 3), (0, 1, 1)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(b.div_exact(&BiPoly::from_terms([(1, 0, 2)])), None);
    }

    #[test]
    fn eval_substitutions() {
        // 1 - q^18 S^3 at S = q^M, M = 4: 1 - q^30
        let c = BiPoly::from_terms([(0, 0, 1), (3, 18, -1)]);
        assert_eq!(c.eval_x_at_q_power(4), PolyQ::from_terms([(0, 1), (30, -1)]));
    }
}

//! Sparse univariate polynomials in `q` over the integers.
//!
//! [`PolyQ`] stores only nonzero coefficients keyed by exponent, so the huge
//! but sparse coefficient polynomials arising from q-difference eliminations
//! (q-degrees beyond 100 with a handful of terms) stay cheap. All arithmetic
//! is exact over `Z`; the GCD is computed modulo machine-word primes and
//! reconstructed by CRT, which keeps degree-several-hundred inputs fast.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact integer coefficients used throughout the crate.
pub type Int = BigInt;

/// A polynomial in `q` with integer coefficients, stored sparsely.
///
/// Invariant: the map never holds a zero coefficient, so structural equality
/// is semantic equality and the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyQ {
    coeffs: BTreeMap<usize, Int>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ::default()
    }

    pub fn one() -> Self {
        PolyQ::monomial(Int::one(), 0)
    }

    /// The monomial `c * q^exp` (zero if `c == 0`).
    pub fn monomial(c: Int, exp: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        PolyQ { coeffs }
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (usize, i64)>>(terms: I) -> Self {
        let mut p = PolyQ::zero();
        for (e, c) in terms {
            p.add_term(e, Int::from(c));
        }
        p
    }

    /// `1 - q^exp`, the ubiquitous q-Pochhammer factor.
    pub fn one_minus_q(exp: usize) -> Self {
        let mut p = PolyQ::one();
        p.add_term(exp, -Int::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    /// `true` for a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.contains_key(&0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient (the q-adic valuation).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Int {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Int::zero)
    }

    pub fn coeff(&self, exp: usize) -> Int {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Int::zero)
    }

    pub fn constant_term(&self) -> Int {
        self.coeff(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Int)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, exp: usize, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.coeffs.remove(&exp);
                }
            }
            None => {
                self.coeffs.insert(exp, c);
            }
        }
    }

    pub fn neg(&self) -> Self {
        PolyQ {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let mut out = PolyQ::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn mul_int(&self, c: &Int) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by the monomial `q^exp`.
    pub fn mul_q_power(&self, exp: usize) -> Self {
        PolyQ {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + exp, c.clone())).collect(),
        }
    }

    /// Divide by `q^exp`; `None` if some term has a smaller exponent.
    pub fn div_q_power(&self, exp: usize) -> Option<Self> {
        if self.valuation().map_or(true, |v| v >= exp) {
            Some(PolyQ {
                coeffs: self.coeffs.iter().map(|(e, c)| (e - exp, c.clone())).collect(),
            })
        } else {
            None
        }
    }

    /// GCD of the integer coefficients, always nonnegative (0 for the zero poly).
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, with sign chosen so the leading coefficient is positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_int_exact(&c)
    }

    fn div_int_exact(&self, c: &Int) -> Self {
        PolyQ {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| {
                    let (quot, rem) = v.div_rem(c);
                    debug_assert!(rem.is_zero());
                    (*e, quot)
                })
                .collect(),
        }
    }

    /// Exact division in `Z[q]`; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        let dd = divisor.degree().unwrap();
        let dl = divisor.leading_coeff();
        let mut rem = self.clone();
        let mut quot = PolyQ::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let rl = rem.leading_coeff();
            let (c, r) = rl.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            let shift = rd - dd;
            quot.add_term(shift, c.clone());
            let factor = PolyQ::monomial(c, shift);
            rem = rem.sub(&factor.mul(divisor));
        }
        Some(quot)
    }

    /// Evaluate at an integer point (used by tests and heuristics).
    pub fn eval_int(&self, x: &Int) -> Int {
        let Some(deg) = self.degree() else {
            return Int::zero();
        };
        let mut acc = Int::zero();
        let mut prev = deg;
        for (e, c) in self.coeffs.iter().rev() {
            acc *= x.pow((prev - e) as u32);
            acc += c;
            prev = *e;
        }
        acc * x.pow(prev as u32)
    }

    /// Substitute `q -> q^k` (exponent scaling), `k >= 1`.
    pub fn inflate(&self, k: usize) -> Self {
        PolyQ {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Primitive GCD with positive leading coefficient; `gcd(0, b)` is the
    /// normalized `b`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        // Common q-power factors come off first; they are frequent and free.
        let va = a.valuation().unwrap();
        let vb = b.valuation().unwrap();
        let v = va.min(vb);
        let pa = a.div_q_power(va).unwrap().primitive_part();
        let pb = b.div_q_power(vb).unwrap().primitive_part();
        let core = if pa.is_constant() || pb.is_constant() {
            PolyQ::one()
        } else {
            modular_gcd(&pa, &pb)
        };
        core.mul_q_power(v)
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::qalg::text::poly_q_text(self))
    }
}

// ---------------------------------------------------------------------------
// Modular GCD (Brown's algorithm, small-prime CRT)
// ---------------------------------------------------------------------------

/// 62-bit primes for the CRT reconstruction.
const GCD_PRIMES: [u64; 24] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
    4611686018427387323,
    4611686018427387301,
    4611686018427387271,
    4611686018427387241,
    4611686018427387139,
    4611686018427387131,
    4611686018427387127,
    4611686018427387113,
];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn int_mod(v: &Int, p: u64) -> u64 {
    let m = v.mod_floor(&Int::from(p));
    m.to_u64().expect("residue fits u64")
}

/// Dense coefficient vector mod p; trailing zeros trimmed.
fn to_dense_mod(a: &PolyQ, p: u64) -> Vec<u64> {
    let deg = a.degree().unwrap_or(0);
    let mut v = vec![0u64; deg + 1];
    for (e, c) in a.terms() {
        v[e] = int_mod(c, p);
    }
    trim(&mut v);
    v
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic GCD in `F_p[q]` by Euclid's algorithm on dense vectors.
fn gcd_mod_p(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        rem_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in &mut a {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn rem_in_place(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let binv = inv_mod(*b.last().unwrap(), p);
    while a.len() >= b.len() && !a.is_empty() {
        let da = a.len() - 1;
        let factor = mul_mod(*a.last().unwrap(), binv, p);
        let shift = da - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = mul_mod(factor, bc, p);
            let idx = i + shift;
            a[idx] = (a[idx] + p - sub) % p;
        }
        trim(a);
    }
}

/// GCD of two nonconstant primitive polynomials.
fn modular_gcd(a: &PolyQ, b: &PolyQ) -> PolyQ {
    // gamma multiplies the monic image so that the true integer leading
    // coefficient is recoverable before taking the primitive part.
    let gamma = a.leading_coeff().gcd(&b.leading_coeff());
    let mut best_deg = usize::MAX;
    let mut crt: BTreeMap<usize, Int> = BTreeMap::new();
    let mut modulus = Int::one();
    let mut stable: Option<PolyQ> = None;

    for &p in GCD_PRIMES.iter() {
        let pi = Int::from(p);
        if (a.leading_coeff().mod_floor(&pi)).is_zero()
            || (b.leading_coeff().mod_floor(&pi)).is_zero()
        {
            continue;
        }
        let g = gcd_mod_p(to_dense_mod(a, p), to_dense_mod(b, p), p);
        let deg = g.len().saturating_sub(1);
        if g.len() <= 1 {
            return PolyQ::one();
        }
        if deg > best_deg {
            continue; // unlucky prime
        }
        if deg < best_deg {
            best_deg = deg;
            crt.clear();
            modulus = Int::one();
            stable = None;
        }
        let gm = int_mod(&gamma, p);
        let scaled: Vec<u64> = g.iter().map(|&c| mul_mod(c, gm, p)).collect();
        crt_combine(&mut crt, &modulus, &scaled, p);
        modulus *= &pi;

        let candidate = symmetric_poly(&crt, &modulus).primitive_part();
        if let Some(prev) = &stable {
            if *prev == candidate
                && a.div_exact(&candidate).is_some()
                && b.div_exact(&candidate).is_some()
            {
                return candidate;
            }
        }
        stable = Some(candidate);
    }
    // All primes exhausted without stabilising: fall back to the last
    // verified candidate or to 1.
    if let Some(candidate) = stable {
        if a.div_exact(&candidate).is_some() && b.div_exact(&candidate).is_some() {
            return candidate;
        }
    }
    PolyQ::one()
}

fn crt_combine(acc: &mut BTreeMap<usize, Int>, modulus: &Int, new: &[u64], p: u64) {
    if modulus.is_one() {
        for (e, &c) in new.iter().enumerate() {
            if c != 0 {
                acc.insert(e, Int::from(c));
            }
        }
        return;
    }
    // x = a (mod m), x = b (mod p)  =>  x = a + m * ((b - a) * m^{-1} mod p)
    let m_inv = inv_mod(int_mod(modulus, p), p);
    let max_e = acc.keys().next_back().copied().unwrap_or(0).max(new.len().saturating_sub(1));
    for e in 0..=max_e {
        let a = acc.get(&e).cloned().unwrap_or_else(Int::zero);
        let b = new.get(e).copied().unwrap_or(0);
        let a_mod_p = int_mod(&a, p);
        let diff = (b + p - a_mod_p) % p;
        let t = mul_mod(diff, m_inv, p);
        let x = a + modulus * Int::from(t);
        if x.is_zero() {
            acc.remove(&e);
        } else {
            acc.insert(e, x);
        }
    }
}

fn symmetric_poly(crt: &BTreeMap<usize, Int>, modulus: &Int) -> PolyQ {
    let half = modulus / 2;
    let mut p = PolyQ::zero();
    for (e, c) in crt {
        let v = if c > &half { c - modulus } else { c.clone() };
        p.add_term(*e, v);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> PolyQ {
        PolyQ::monomial(Int::one(), 1)
    }

    #[test]
    fn gcd_spec_examples() {
        // (q^2 - 1, q^3 - 1) -> q - 1
        let a = PolyQ::from_terms([(2, 1), (0, -1)]);
        let b = PolyQ::from_terms([(3, 1), (0, -1)]);
        let g = PolyQ::gcd(&a, &b);
        assert_eq!(g, PolyQ::from_terms([(1, 1), (0, -1)]));

        // gcd(0, 2q + 2) -> q + 1 (primitive, positive leading coefficient)
        let z = PolyQ::zero();
        let c = PolyQ::from_terms([(1, 2), (0, 2)]);
        assert_eq!(PolyQ::gcd(&z, &c), PolyQ::from_terms([(1, 1), (0, 1)]));

        // gcd(q^5 - 1, q^5 - 1) = q^5 - 1
        let d = PolyQ::from_terms([(5, 1), (0, -1)]);
        assert_eq!(PolyQ::gcd(&d, &d), d);
    }

    #[test]
    fn gcd_large_cyclotomic_products() {
        // prod (1 - q^k) over overlapping ranges: degrees in the hundreds.
        let mut a = PolyQ::one();
        for k in 1..=25 {
            a = a.mul(&PolyQ::one_minus_q(k));
        }
        let mut b = PolyQ::one();
        for k in 5..=30 {
            b = b.mul(&PolyQ::one_minus_q(k));
        }
        let g = PolyQ::gcd(&a, &b);
        let qa = a.div_exact(&g).expect("gcd divides a");
        let qb = b.div_exact(&g).expect("gcd divides b");
        // Cofactors must be coprime, and (1 - q^5)..(1 - q^25) must divide g.
        assert!(PolyQ::gcd(&qa, &qb).is_one());
        let mut common = PolyQ::one();
        for k in 5..=25 {
            common = common.mul(&PolyQ::one_minus_q(k));
        }
        assert!(g.div_exact(&common.primitive_part()).is_some());
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = PolyQ::from_terms([(0, 1), (1, 2), (3, -4)]);
        let b = PolyQ::from_terms([(0, 3), (2, 5)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn eval_and_valuation() {
        let p = q().mul(&PolyQ::one_minus_q(2)); // q - q^3
        assert_eq!(p.valuation(), Some(1));
        assert_eq!(p.eval_int(&Int::from(2)), Int::from(2 - 8));
    }
}

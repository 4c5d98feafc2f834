//! Reduction of a k-state q-difference system to a single q-difference
//! equation for a chosen state.
//!
//! The driver mirrors a hand elimination in matrix form. At step s the
//! substitution `u_s(xq^m) = p[s-1][s] F_s(xq^m) + ... + p[s-1][k-1] F_(k-1)(xq^m)`
//! is the invertible row operation `T(x)`, and the matrix updates as
//! `T(x q^-m) P T(x)^{-1}`. After each step the top rows must carry a unit
//! superdiagonal with zeros beyond it; that structural shape is asserted at
//! runtime, and the final triangular system back-substitutes into one
//! relation `sum_i p_(i m)(x, q) G(x q^(i m)) = 0`.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::qalg::{BiPoly, BiRat, SeriesQ};
use crate::transfer::QDiffSystem;

/// A single-function q-difference equation with shift step `m`:
/// `sum_i coeffs[i](x, q) * G(x q^(i m)) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDiffEquation {
    pub m: usize,
    /// `p_0, p_m, ..., p_(r m)` with integer entries, collective content 1.
    pub coeffs: Vec<BiPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElimError {
    #[error("state index {0} out of range for a {1}-state system")]
    BadState(usize, usize),
    #[error("elimination produced a matrix violating the expected shape at step {step}, entry ({row},{col})")]
    InternalShapeViolation { step: usize, row: usize, col: usize },
    #[error("prefactor is not a monomial in x and q")]
    NonMonomialPrefactor,
    #[error("series truncation too shallow to test the relation")]
    TruncationTooShallow,
    #[error("equation is identically zero; nothing to check")]
    DegenerateEquation,
}

impl QDiffEquation {
    /// Order of the equation (largest shift multiple).
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Largest x-degree over all coefficients.
    pub fn max_x_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(|c| c.x_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        use crate::qalg::text::bipoly_text;
        serde_json::json!({
            "m": self.m,
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(|c| bipoly_text(c, "x")).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<QDiffEquation> {
        use crate::qalg::text::parse_bipoly;
        let m = v["m"].as_u64()? as usize;
        let coeffs: Vec<BiPoly> = v["coeffs"]
            .as_array()?
            .iter()
            .map(|c| parse_bipoly(c.as_str()?, "x").ok())
            .collect::<Option<_>>()?;
        Some(QDiffEquation { m, coeffs })
    }
}

/// Eliminate the system down to a q-difference equation for the chosen
/// state. The target's row is moved first; remaining states keep their
/// relative order, and a zero pivot swaps in the lowest-index nonzero
/// column.
pub fn eliminate(system: &QDiffSystem, target: usize) -> Result<QDiffEquation, ElimError> {
    let k = system.labels.len();
    if target >= k {
        return Err(ElimError::BadState(target, k));
    }
    let m = system.m as i64;

    // Permute the target to position 0.
    let perm: Vec<usize> = std::iter::once(target)
        .chain((0..k).filter(|&i| i != target))
        .collect();
    let mut p: Vec<Vec<BiRat>> = (0..k)
        .map(|i| (0..k).map(|j| system.matrix[perm[i]][perm[j]].clone()).collect())
        .collect();

    // ell = number of u-states when the iteration stops.
    let mut ell = k;
    for s in 1..k {
        // Tail of row s-1 decides between terminating and forming u_s.
        if (s..k).all(|c| p[s - 1][c].is_zero()) {
            ell = s;
            break;
        }
        if p[s - 1][s].is_zero() {
            let t = (s + 1..k)
                .find(|&c| !p[s - 1][c].is_zero())
                .expect("nonzero tail entry exists");
            swap_state(&mut p, s, t);
        }
        // T(x) is the identity except row s: T[s][c] = p[s-1][c] for c >= s.
        let trow: Vec<BiRat> = (0..k)
            .map(|c| if c >= s { p[s - 1][c].clone() } else { BiRat::zero() })
            .collect();
        let trow_back: Vec<BiRat> = trow.iter().map(|e| e.shift_x(-m)).collect();

        // Left multiply by T(x q^-m): replaces row s by the combination.
        let mut new_row = vec![BiRat::zero(); k];
        for c in s..k {
            if trow_back[c].is_zero() {
                continue;
            }
            for j in 0..k {
                if p[c][j].is_zero() {
                    continue;
                }
                new_row[j] = new_row[j].add(&trow_back[c].mul(&p[c][j]));
            }
        }
        p[s] = new_row;

        // Right multiply by T(x)^{-1}: column s divides by the pivot and
        // columns c > s subtract the scaled pivot column.
        let pivot = trow[s].clone();
        for i in 0..k {
            let col_s = p[i][s].clone();
            for c in s + 1..k {
                if !trow[c].is_zero() && !col_s.is_zero() {
                    p[i][c] = p[i][c].sub(&col_s.mul(&trow[c]).div(&pivot));
                }
            }
            p[i][s] = col_s.div(&pivot);
        }

        check_shape(&p, s)?;
    }

    // Back-substitution. u_j(x) is carried as coefficients over F(x q^(i m))
    // for i in -j..=0.
    let mut us: Vec<BTreeMap<i64, BiRat>> = Vec::with_capacity(ell);
    us.push(BTreeMap::from([(0i64, BiRat::one())]));
    for j in 1..ell {
        let mut next: BTreeMap<i64, BiRat> = BTreeMap::new();
        // u_(j-1)(x q^-m)
        for (i, a) in &us[j - 1] {
            add_to(&mut next, i - 1, a.shift_x(-m));
        }
        // - sum_t p[j-1][t](x q^-m) u_t(x)
        for t in 0..j {
            let coeff = p[j - 1][t].shift_x(-m);
            if coeff.is_zero() {
                continue;
            }
            for (i, a) in &us[t] {
                add_to(&mut next, *i, coeff.mul(a).neg());
            }
        }
        us.push(next);
    }

    // Final relation: u_(ell-1)(x) - sum_t p[ell-1][t](x) u_t(x q^m) = 0.
    let mut relation: BTreeMap<i64, BiRat> = us[ell - 1].clone();
    for t in 0..ell {
        let coeff = p[ell - 1][t].clone();
        if coeff.is_zero() {
            continue;
        }
        for (i, a) in &us[t] {
            add_to(&mut relation, i + 1, coeff.mul(&a.shift_x(m)).neg());
        }
    }
    relation.retain(|_, v| !v.is_zero());

    Ok(normalize_relation(&relation, system.m))
}

fn add_to(map: &mut BTreeMap<i64, BiRat>, key: i64, value: BiRat) {
    let entry = map.entry(key).or_insert_with(BiRat::zero);
    *entry = entry.add(&value);
}

fn swap_state(p: &mut [Vec<BiRat>], a: usize, b: usize) {
    p.swap(a, b);
    for row in p.iter_mut() {
        row.swap(a, b);
    }
}

/// Shape check: after step `s`, rows r < s carry a unit superdiagonal and
/// zeros beyond it.
fn check_shape(p: &[Vec<BiRat>], s: usize) -> Result<(), ElimError> {
    let k = p.len();
    for r in 0..s {
        if !p[r][r + 1].is_one() {
            return Err(ElimError::InternalShapeViolation { step: s, row: r, col: r + 1 });
        }
        for c in r + 2..k {
            if !p[r][c].is_zero() {
                return Err(ElimError::InternalShapeViolation { step: s, row: r, col: c });
            }
        }
    }
    Ok(())
}

/// Clear denominators, strip content, fix sign, and rebase the shift window
/// to start at zero.
fn normalize_relation(relation: &BTreeMap<i64, BiRat>, m: usize) -> QDiffEquation {
    if relation.is_empty() {
        return QDiffEquation { m, coeffs: vec![] };
    }
    let lo = *relation.keys().next().unwrap();
    let hi = *relation.keys().next_back().unwrap();
    // Substitute x -> x q^(-lo m) so shifts run 0..=(hi-lo).
    let shift = -lo * m as i64;
    let shifted: BTreeMap<i64, BiRat> = relation
        .iter()
        .map(|(i, a)| (i - lo, a.shift_x(shift)))
        .collect();
    // Common denominator.
    let mut lcm = BiPoly::one();
    for a in shifted.values() {
        let g = BiPoly::gcd(&lcm, a.den());
        lcm = lcm.mul(&a.den().div_exact(&g).unwrap());
    }
    let mut coeffs: Vec<BiPoly> = Vec::with_capacity((hi - lo + 1) as usize);
    for i in 0..=(hi - lo) {
        match shifted.get(&i) {
            None => coeffs.push(BiPoly::zero()),
            Some(a) => {
                let scale = lcm.div_exact(a.den()).expect("lcm divisible by denominator");
                coeffs.push(a.num().mul(&scale));
            }
        }
    }
    normalize_coeffs(&mut coeffs);
    QDiffEquation { m, coeffs }
}

/// Divide by the collective content and make the lowest monomial of the
/// first nonzero coefficient positive.
fn normalize_coeffs(coeffs: &mut [BiPoly]) {
    use num_integer::Integer;
    use num_traits::Zero;
    let mut content = crate::qalg::Int::zero();
    let mut poly_content: Option<BiPoly> = None;
    for c in coeffs.iter() {
        if c.is_zero() {
            continue;
        }
        content = content.gcd(&c.int_content());
        poly_content = Some(match poly_content {
            None => c.clone(),
            Some(g) => BiPoly::gcd(&g, c),
        });
    }
    let Some(gpoly) = poly_content else { return };
    for c in coeffs.iter_mut() {
        if !gpoly.is_one() {
            *c = c.div_exact(&gpoly).unwrap();
        }
    }
    // gpoly is sign-normalised; integer content may remain.
    let mut content = crate::qalg::Int::zero();
    for c in coeffs.iter() {
        content = content.gcd(&c.int_content());
    }
    let first = coeffs.iter().find(|c| !c.is_zero()).cloned();
    if let Some(f) = first {
        let (_, low) = f.lowest_term().unwrap();
        if low.is_negative() {
            content = -content;
        }
    }
    if !content.is_zero() && content != crate::qalg::Int::from(1) {
        for c in coeffs.iter_mut() {
            *c = c.div_int_exact(&content);
        }
    }
}

/// Convert an equation for `F` into one for `G(x) = prefactor * F(x q^shift)`,
/// where `prefactor` is a monomial `c x^a q^b` and `shift` a raw q-exponent.
pub fn rebase_to_target(
    eq: &QDiffEquation,
    prefactor: &BiRat,
    shift: i64,
) -> Result<QDiffEquation, ElimError> {
    let (_, a, _) = prefactor.as_monomial().ok_or(ElimError::NonMonomialPrefactor)?;
    let m = eq.m as i64;
    let mut rats: Vec<BiRat> = Vec::with_capacity(eq.coeffs.len());
    for (i, p) in eq.coeffs.iter().enumerate() {
        let shifted = BiRat::from_poly(p.clone()).shift_x(shift);
        // times q^(-i m a)
        let e = -(i as i64) * m * a;
        let factor = if e >= 0 {
            BiRat::from_poly(BiPoly::monomial(crate::qalg::Int::from(1), 0, e as usize))
        } else {
            BiRat::new(
                BiPoly::one(),
                BiPoly::monomial(crate::qalg::Int::from(1), 0, (-e) as usize),
            )
        };
        rats.push(shifted.mul(&factor));
    }
    let relation: BTreeMap<i64, BiRat> = rats
        .into_iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i as i64, a))
        .collect();
    Ok(normalize_relation(&relation, eq.m))
}

/// Check that the equation annihilates a per-x-power series list to the
/// available truncation.
pub fn check_annihilation(
    eq: &QDiffEquation,
    series: &[SeriesQ],
) -> Result<bool, ElimError> {
    if eq.is_zero() || eq.coeffs.is_empty() {
        return Err(ElimError::DegenerateEquation);
    }
    if series.len() < 2 || series.iter().all(|s| s.order() == 0) {
        return Err(ElimError::TruncationTooShallow);
    }
    let m = eq.m;
    for big_m in 0..series.len() {
        // q-order available for this x-slice.
        let order = (0..=big_m)
            .map(|d| series[d].order())
            .min()
            .unwrap_or(0);
        let mut acc = SeriesQ::zero(order);
        for (i, p) in eq.coeffs.iter().enumerate() {
            for ((xe, qe), c) in p.terms() {
                if xe > big_m {
                    continue;
                }
                let d = big_m - xe;
                // p-term c x^xe q^qe applied to G(x q^(i m)): contributes
                // c q^(qe + i m d) g_d to the x^big_m coefficient.
                let e = qe + i * m * d;
                if e >= order {
                    continue;
                }
                let term = series[d]
                    .truncate(order)
                    .shift_up(e)
                    .scale(&crate::qalg::Rat::from_integer(c.clone()));
                acc = acc.add(&term);
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

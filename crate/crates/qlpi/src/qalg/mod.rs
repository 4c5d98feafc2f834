//! Exact arithmetic kernel: integers of arbitrary precision, sparse
//! polynomials and rational functions in `q` and in `(x, q)`, and truncated
//! power series with rational coefficients.
//!
//! No floating point appears anywhere downstream of this module; every
//! comparison in the crate reduces to structural equality of canonical forms
//! or exact series coefficients.

pub mod bipoly;
pub mod birat;
pub mod poly;
pub mod rational;
pub mod series;
pub mod text;

pub use bipoly::BiPoly;
pub use birat::BiRat;
pub use poly::{Int, PolyQ};
pub use rational::RationalQ;
pub use series::{expand_rational, expand_rational_valuation, Rat, SeriesQ};

/// Errors from series expansion of rational functions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpandError {
    #[error("denominator vanishes at q = 0")]
    DenominatorVanishesAtZero,
    #[error("expression has negative q-valuation, not a power series")]
    NegativeValuation,
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = PolyQ> {
        proptest::collection::vec((0usize..12, -6i64..=6), 0..6)
            .prop_map(PolyQ::from_terms)
    }

    fn arb_bipoly() -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec((0usize..4, 0usize..8, -5i64..=5), 0..5)
            .prop_map(BiPoly::from_terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn poly_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.sub(&a), PolyQ::zero());
        }

        #[test]
        fn bipoly_ring_axioms(a in arb_bipoly(), b in arb_bipoly(), c in arb_bipoly()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            let g = PolyQ::gcd(&a, &b);
            if !g.is_zero() {
                prop_assert!(a.div_exact(&g).is_some());
                prop_assert!(b.div_exact(&g).is_some());
            } else {
                prop_assert!(a.is_zero() && b.is_zero());
            }
        }

        #[test]
        fn series_multiplicativity(a in arb_poly(), b in arb_poly(), da in 1usize..4, db in 1usize..4) {
            // For random f, g with den(0) != 0: expand(f*g) = expand(f)*expand(g).
            let dena = PolyQ::one().add(&PolyQ::from_terms([(da, -1)]));
            let denb = PolyQ::one().add(&PolyQ::from_terms([(db, 1)]));
            let f = RationalQ::new(a, dena);
            let g = RationalQ::new(b, denb);
            let n = 24;
            let lhs = expand_rational(&f.mul(&g), n).unwrap();
            let rhs = expand_rational(&f, n).unwrap().mul(&expand_rational(&g, n).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn shift_x_group_action(p in arb_bipoly(), s in -4i64..=4, t in -4i64..=4) {
            let f = BiRat::from_poly(p).add(&BiRat::one());
            let lhs = f.shift_x(s).shift_x(t);
            let rhs = f.shift_x(s + t);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonicalization_idempotent(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let r = RationalQ::new(a, b);
            let again = RationalQ::new(r.num().clone(), r.den().clone());
            prop_assert_eq!(r, again);
        }

        #[test]
        fn text_roundtrip(p in arb_bipoly()) {
            let t = text::bipoly_text(&p, "x");
            prop_assert_eq!(text::parse_bipoly(&t, "x").unwrap(), p);
        }
    }
}

//! Canonical text form for polynomials and rational functions.
//!
//! The format is an expanded monomial sum with explicit `^` powers and terms
//! sorted by (x-degree, q-degree) ascending, e.g. `1 + x*q^4 + x*q^6`. It is
//! used verbatim in JSON output and golden files, so producing it must be
//! deterministic and parsing must round-trip exactly.

use num_traits::{One, Signed};

use super::bipoly::BiPoly;
use super::birat::BiRat;
use super::poly::{Int, PolyQ};
use super::rational::RationalQ;

/// Render one `c * v1^a * q^b` term, assuming `c > 0`.
fn push_term(out: &mut String, c: &Int, var: &str, xe: usize, qe: usize) {
    let mut parts: Vec<String> = Vec::new();
    if !c.is_one() || (xe == 0 && qe == 0) {
        parts.push(c.to_string());
    }
    match xe {
        0 => {}
        1 => parts.push(var.to_string()),
        _ => parts.push(format!("{var}^{xe}")),
    }
    match qe {
        0 => {}
        1 => parts.push("q".to_string()),
        _ => parts.push(format!("q^{qe}")),
    }
    out.push_str(&parts.join("*"));
}

/// Canonical text of a bivariate polynomial; `var` names the first variable
/// (`x` for q-difference data, `S` for recurrence coefficients).
pub fn bipoly_text(p: &BiPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, ((xe, qe), c)) in p.terms().enumerate() {
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        push_term(&mut out, &c.abs(), var, xe, qe);
    }
    out
}

pub fn poly_q_text(p: &PolyQ) -> String {
    bipoly_text(&BiPoly::from_poly_q(p, 0), "x")
}

pub fn birat_text(r: &BiRat, var: &str) -> String {
    if r.is_polynomial() {
        bipoly_text(r.num(), var)
    } else {
        format!("({}) / ({})", bipoly_text(r.num(), var), bipoly_text(r.den(), var))
    }
}

pub fn rational_q_text(r: &RationalQ) -> String {
    if r.den().is_one() {
        poly_q_text(r.num())
    } else {
        format!("({}) / ({})", poly_q_text(r.num()), poly_q_text(r.den()))
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {0:?} in polynomial text")]
    UnexpectedChar(char),
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error("empty polynomial text")]
    Empty,
}

/// Parse canonical (or reasonably close) polynomial text into a [`BiPoly`].
///
/// Accepts signed integer coefficients, `var` and `q` factors with optional
/// `^exp`, separated by `*`; terms separated by `+` / `-`.
pub fn parse_bipoly(text: &str, var: &str) -> Result<BiPoly, ParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut out = BiPoly::zero();
    let mut rest = text;
    let mut sign = 1i64;
    // Leading sign.
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let (term, remainder) = split_term(rest);
        let (c, xe, qe) = parse_term(term.trim(), var)?;
        out.add_term(xe, qe, c * Int::from(sign));
        match remainder {
            None => break,
            Some((next_sign, r)) => {
                sign = next_sign;
                rest = r.trim_start();
            }
        }
    }
    Ok(out)
}

/// Split off the leading term; returns the term text and, when more terms
/// follow, the sign of the next term and the remaining text.
fn split_term(text: &str) -> (&str, Option<(i64, &str)>) {
    let mut depth = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' if depth == 0 && i > 0 => return (&text[..i], Some((1, &text[i + 1..]))),
            '-' if depth == 0 && i > 0 => {
                // A '-' directly after '^' or '*' would be part of the term;
                // canonical text never produces that for polynomials.
                let prev = text[..i].trim_end().chars().next_back();
                if !matches!(prev, Some('^') | Some('*')) {
                    return (&text[..i], Some((-1, &text[i + 1..])));
                }
            }
            _ => {}
        }
    }
    (text, None)
}

fn parse_term(term: &str, var: &str) -> Result<(Int, usize, usize), ParseError> {
    if term.is_empty() {
        return Err(ParseError::MalformedTerm(term.to_string()));
    }
    let mut c = Int::one();
    let mut xe = 0usize;
    let mut qe = 0usize;
    let mut saw_factor = false;
    for factor in term.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(ParseError::MalformedTerm(term.to_string()));
        }
        saw_factor = true;
        if let Some(rest) = f.strip_prefix(var) {
            if rest.is_empty() {
                xe += 1;
                continue;
            }
            if let Some(exp) = rest.strip_prefix('^') {
                let e: usize = exp
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::MalformedTerm(term.to_string()))?;
                xe += e;
                continue;
            }
        }
        if let Some(rest) = f.strip_prefix('q') {
            if rest.is_empty() {
                qe += 1;
                continue;
            }
            if let Some(exp) = rest.strip_prefix('^') {
                let e: usize = exp
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::MalformedTerm(term.to_string()))?;
                qe += e;
                continue;
            }
        }
        // Plain integer coefficient.
        let v: Int = f
            .parse()
            .map_err(|_| ParseError::MalformedTerm(term.to_string()))?;
        c *= v;
    }
    if !saw_factor {
        return Err(ParseError::MalformedTerm(term.to_string()));
    }
    Ok((c, xe, qe))
}

pub fn parse_poly_q(text: &str) -> Result<PolyQ, ParseError> {
    let bp = parse_bipoly(text, "x")?;
    let mut p = PolyQ::zero();
    for ((xe, qe), c) in bp.terms() {
        if xe != 0 {
            return Err(ParseError::MalformedTerm(format!(
                "unexpected x-power in univariate text: {text}"
            )));
        }
        p.add_term(qe, c.clone());
    }
    Ok(p)
}

/// Parse `num` or `(num) / (den)` into a [`BiRat`].
pub fn parse_birat(text: &str, var: &str) -> Result<BiRat, ParseError> {
    let t = text.trim();
    if let Some((num, den)) = split_fraction(t) {
        let n = parse_bipoly(strip_parens(num), var)?;
        let d = parse_bipoly(strip_parens(den), var)?;
        Ok(BiRat::new(n, d))
    } else {
        Ok(BiRat::from_poly(parse_bipoly(strip_parens(t), var)?))
    }
}

fn split_fraction(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '/' if depth == 0 => return Some((&text[..i], &text[i + 1..])),
            _ => {}
        }
    }
    None
}

fn strip_parens(text: &str) -> &str {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        // Only strip when the parens wrap the whole expression.
        let mut depth = 0i64;
        for ch in inner.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth < 0 {
                return t;
            }
        }
        inner.trim()
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_roundtrip() {
        let p = BiPoly::from_terms([(1, 4, 1), (0, 0, 1), (1, 6, 1)]);
        let t = bipoly_text(&p, "x");
        assert_eq!(t, "1 + x*q^4 + x*q^6");
        assert_eq!(parse_bipoly(&t, "x").unwrap(), p);

        let neg = BiPoly::from_terms([(0, 0, -1), (2, 6, -2), (3, 7, 1)]);
        let t = bipoly_text(&neg, "x");
        assert_eq!(t, "-1 - 2*x^2*q^6 + x^3*q^7");
        assert_eq!(parse_bipoly(&t, "x").unwrap(), neg);
    }

    #[test]
    fn recurrence_variable_name() {
        let p = BiPoly::from_terms([(0, 0, 1), (3, 18, -1)]);
        assert_eq!(bipoly_text(&p, "S"), "1 - S^3*q^18");
        assert_eq!(parse_bipoly("1 - S^3*q^18", "S").unwrap(), p);
    }

    #[test]
    fn fraction_roundtrip() {
        let r = BiRat::new(
            BiPoly::from_terms([(1, 3, 1)]),
            BiPoly::from_terms([(0, 0, 1), (1, 4, 1)]),
        );
        let t = birat_text(&r, "x");
        assert_eq!(t, "(x*q^3) / (1 + x*q^4)");
        assert_eq!(parse_birat(&t, "x").unwrap(), r);
    }
}

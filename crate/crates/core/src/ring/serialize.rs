//! Canonical text serialization, one term per line:
//!
//! ```text
//! <eighths> <gen>^<exp>[*<gen>^<exp>...] <num>/<den>
//! ```
//!
//! * `<eighths>` is the q exponent on the 1/8 grid (0 for plain forms);
//! * the monomial lists generators in table order, `1` when empty;
//! * the coefficient is a normalized rational with positive denominator.
//!
//! Terms are sorted by (q exponent, exponent vector in table order), so a
//! serialize/parse/serialize round trip is the identity on bytes. Golden
//! files use exactly this format.

use super::poly::{GenTable, GradedPoly};
use super::qseries::QSeries;
use super::RingError;
use num::{BigInt, BigRational, Zero};
use std::fmt::Write as _;
use std::sync::Arc;

fn write_monomial(out: &mut String, table: &GenTable, exps: &[u16]) {
    if exps.iter().all(|e| *e == 0) {
        out.push('1');
        return;
    }
    let mut first = true;
    for (i, e) in exps.iter().enumerate() {
        if *e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        let _ = write!(out, "{}^{}", table.name(i), e);
    }
}

fn write_line(out: &mut String, eighths: u32, table: &GenTable, exps: &[u16], c: &BigRational) {
    let _ = write!(out, "{} ", eighths);
    write_monomial(out, table, exps);
    let _ = writeln!(out, " {}/{}", c.numer(), c.denom());
}

/// Canonical text of a graded polynomial (q exponent column fixed at 0).
pub fn poly_to_text(p: &GradedPoly<BigRational>) -> String {
    let mut out = String::new();
    for (exps, c) in p.terms() {
        write_line(&mut out, 0, p.table(), exps, c);
    }
    out
}

/// Canonical text of a rational q-series (monomial column fixed at `1`).
pub fn qseries_to_text(s: &QSeries<BigRational>) -> String {
    let mut out = String::new();
    let empty: Vec<u16> = Vec::new();
    let table = GenTable::new(Vec::new());
    for (e, c) in s.terms() {
        write_line(&mut out, *e, &table, &empty, c);
    }
    out
}

/// Canonical text of a q-series with polynomial coefficients.
pub fn qseries_poly_to_text(s: &QSeries<GradedPoly<BigRational>>) -> String {
    let mut out = String::new();
    for (e, p) in s.terms() {
        for (exps, c) in p.terms() {
            write_line(&mut out, *e, p.table(), exps, c);
        }
    }
    out
}

fn parse_coeff(tok: &str) -> Result<BigRational, RingError> {
    let (n, d) = tok.split_once('/').ok_or_else(|| RingError::Parse {
        detail: format!("coefficient `{tok}` is not num/den"),
    })?;
    let num: BigInt = n.parse().map_err(|_| RingError::Parse {
        detail: format!("bad numerator `{n}`"),
    })?;
    let den: BigInt = d.parse().map_err(|_| RingError::Parse {
        detail: format!("bad denominator `{d}`"),
    })?;
    if num::Zero::is_zero(&den) {
        return Err(RingError::Parse {
            detail: "zero denominator".into(),
        });
    }
    Ok(BigRational::new(num, den))
}

fn parse_monomial(tok: &str, table: &GenTable) -> Result<Vec<u16>, RingError> {
    let mut exps = vec![0u16; table.len()];
    if tok == "1" {
        return Ok(exps);
    }
    for factor in tok.split('*') {
        let (name, pow) = factor.split_once('^').ok_or_else(|| RingError::Parse {
            detail: format!("factor `{factor}` is not gen^exp"),
        })?;
        let idx = table.index_of(name).ok_or_else(|| RingError::Parse {
            detail: format!("unknown generator `{name}`"),
        })?;
        let e: u16 = pow.parse().map_err(|_| RingError::Parse {
            detail: format!("bad exponent `{pow}`"),
        })?;
        exps[idx] = e;
    }
    Ok(exps)
}

fn parse_lines(text: &str) -> impl Iterator<Item = Result<(u32, &str, &str), RingError>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(|line| {
        let mut parts = line.split_whitespace();
        let (a, b, c) = (parts.next(), parts.next(), parts.next());
        match (a, b, c, parts.next()) {
            (Some(a), Some(b), Some(c), None) => {
                let eighths: u32 = a.parse().map_err(|_| RingError::Parse {
                    detail: format!("bad q exponent `{a}`"),
                })?;
                Ok((eighths, b, c))
            }
            _ => Err(RingError::Parse {
                detail: format!("malformed line `{line}`"),
            }),
        }
    })
}

/// Parse the canonical format into a graded polynomial over `table`.
pub fn poly_from_text(
    text: &str,
    table: &Arc<GenTable>,
    bound: u32,
) -> Result<GradedPoly<BigRational>, RingError> {
    let mut terms = Vec::new();
    for item in parse_lines(text) {
        let (eighths, mono, coeff) = item?;
        if eighths != 0 {
            return Err(RingError::Parse {
                detail: "polynomial line with nonzero q exponent".into(),
            });
        }
        terms.push((parse_monomial(mono, table)?, parse_coeff(coeff)?));
    }
    Ok(GradedPoly::from_terms(
        table.clone(),
        bound,
        BigRational::zero(),
        terms,
    ))
}

/// Parse the canonical format into a rational q-series.
pub fn qseries_from_text(text: &str, cutoff: u32) -> Result<QSeries<BigRational>, RingError> {
    let mut out = QSeries::zero(cutoff, BigRational::zero());
    for item in parse_lines(text) {
        let (eighths, mono, coeff) = item?;
        if mono != "1" {
            return Err(RingError::Parse {
                detail: format!("scalar series line with monomial `{mono}`"),
            });
        }
        out.accumulate(eighths, parse_coeff(coeff)?);
    }
    Ok(out)
}

/// Parse the canonical format into a q-series with polynomial coefficients.
pub fn qseries_poly_from_text(
    text: &str,
    table: &Arc<GenTable>,
    bound: u32,
    cutoff: u32,
) -> Result<QSeries<GradedPoly<BigRational>>, RingError> {
    let zero = GradedPoly::zero(table.clone(), bound, BigRational::zero());
    let mut out = QSeries::zero(cutoff, zero.clone());
    for item in parse_lines(text) {
        let (eighths, mono, coeff) = item?;
        let exps = parse_monomial(mono, table)?;
        let term = GradedPoly::from_terms(
            table.clone(),
            bound,
            BigRational::zero(),
            [(exps, parse_coeff(coeff)?)],
        );
        out.accumulate(eighths, term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coeff::{rat, rint};

    #[test]
    fn roundtrip_poly_bytes() {
        let t = GenTable::new(vec![("ps_x2".into(), 4), ("c".into(), 2)]);
        let p = GradedPoly::from_terms(
            t.clone(),
            8,
            BigRational::zero(),
            [
                (vec![1, 0], rat(-3, 7)),
                (vec![0, 2], rint(5)),
                (vec![1, 2], rat(1, 2)),
            ],
        );
        let text = poly_to_text(&p);
        let q = poly_from_text(&text, &t, 8).unwrap();
        assert_eq!(p, q);
        assert_eq!(text, poly_to_text(&q));
    }

    #[test]
    fn qseries_text_format() {
        let mut s = QSeries::zero(16, BigRational::zero());
        s.set(1, rint(2));
        s.set(8, rat(-1, 3));
        let text = qseries_to_text(&s);
        assert_eq!(text, "1 1 2/1\n8 1 -1/3\n");
        assert_eq!(qseries_from_text(&text, 16).unwrap(), s);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(qseries_from_text("1 1", 8).is_err());
        assert!(qseries_from_text("x 1 1/1", 8).is_err());
        assert!(qseries_from_text("1 1 1/0", 8).is_err());
    }
}

//! Exact univariate Taylor expansions used by the characteristic-form and
//! theta pipelines. All of them are polynomials over a single weighted
//! generator, so the graded ring does the truncation bookkeeping.

use super::poly::{GenTable, GradedPoly};
use num::{BigInt, BigRational, One};
use std::sync::Arc;

pub type RatPoly = GradedPoly<BigRational>;

fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    f
}

/// sum over m of f(m) * x^m for the generator `gen`, while the term weight
/// fits the bound. `f` returns None to drop a power.
pub fn taylor(
    table: &Arc<GenTable>,
    bound: u32,
    gen: usize,
    mut f: impl FnMut(u32) -> Option<BigRational>,
) -> RatPoly {
    let w = table.weight(gen);
    let zero = BigRational::from(BigInt::from(0));
    let mut terms = Vec::new();
    let mut m = 0u32;
    while m * w <= bound {
        if let Some(c) = f(m) {
            let mut exps = vec![0u16; table.len()];
            exps[gen] = m as u16;
            terms.push((exps, c));
        }
        m += 1;
    }
    GradedPoly::from_terms(table.clone(), bound, zero, terms)
}

fn inv_fact_scaled(m: u32, num: &BigInt, den: &BigInt) -> BigRational {
    BigRational::new(num.clone(), den * factorial(m as u64))
}

/// sin x = sum (-1)^m x^{2m+1} / (2m+1)!
pub fn sin(table: &Arc<GenTable>, bound: u32, gen: usize) -> RatPoly {
    taylor(table, bound, gen, |m| {
        if m % 2 == 1 {
            let sign = if (m / 2) % 2 == 0 { 1 } else { -1 };
            Some(inv_fact_scaled(m, &BigInt::from(sign), &BigInt::one()))
        } else {
            None
        }
    })
}

/// cos(a*x) for integer a.
pub fn cos_scaled(table: &Arc<GenTable>, bound: u32, gen: usize, a: i64) -> RatPoly {
    taylor(table, bound, gen, |m| {
        if m % 2 == 0 {
            let sign: i64 = if (m / 2) % 2 == 0 { 1 } else { -1 };
            let an = BigInt::from(a).pow(m) * sign;
            Some(inv_fact_scaled(m, &an, &BigInt::one()))
        } else {
            None
        }
    })
}

pub fn cos(table: &Arc<GenTable>, bound: u32, gen: usize) -> RatPoly {
    cos_scaled(table, bound, gen, 1)
}

/// exp(a*x/b) for integers a, b != 0: coefficient of x^m is (a/b)^m / m!.
pub fn exp_scaled(table: &Arc<GenTable>, bound: u32, gen: usize, a: i64, b: i64) -> RatPoly {
    assert!(b != 0);
    taylor(table, bound, gen, |m| {
        let num = BigInt::from(a).pow(m);
        let den = BigInt::from(b).pow(m);
        Some(inv_fact_scaled(m, &num, &den))
    })
}

/// sinh(x/2) / (x/2) = sum x^{2m} / (4^m (2m+1)!), a unit with constant 1.
pub fn sinh_half_over_half(table: &Arc<GenTable>, bound: u32, gen: usize) -> RatPoly {
    taylor(table, bound, gen, |m| {
        if m % 2 == 0 {
            Some(BigRational::new(
                BigInt::one(),
                BigInt::from(4).pow(m / 2) * factorial(m as u64 + 1),
            ))
        } else {
            None
        }
    })
}

/// cosh(x/2) = sum x^{2m} / (4^m (2m)!).
pub fn cosh_half(table: &Arc<GenTable>, bound: u32, gen: usize) -> RatPoly {
    taylor(table, bound, gen, |m| {
        if m % 2 == 0 {
            Some(BigRational::new(
                BigInt::one(),
                BigInt::from(4).pow(m / 2) * factorial(m as u64),
            ))
        } else {
            None
        }
    })
}

/// 2 sinh(x/2) = x * (1 + x^2/24 + ...); returned in full (odd series).
pub fn two_sinh_half(table: &Arc<GenTable>, bound: u32, gen: usize) -> RatPoly {
    taylor(table, bound, gen, |m| {
        if m % 2 == 1 {
            Some(BigRational::new(
                BigInt::from(2),
                BigInt::from(2).pow(m) * factorial(m as u64),
            ))
        } else {
            None
        }
    })
}

/// 2 sinh(x) = 2x + x^3/3 + ...
pub fn two_sinh(table: &Arc<GenTable>, bound: u32, gen: usize) -> RatPoly {
    taylor(table, bound, gen, |m| {
        if m % 2 == 1 {
            Some(BigRational::new(BigInt::from(2), factorial(m as u64)))
        } else {
            None
        }
    })
}

/// 2 cosh(d*x) = e^{dx} + e^{-dx} = sum 2 d^{2m} x^{2m}/(2m)!.
pub fn two_cosh_scaled(table: &Arc<GenTable>, bound: u32, gen: usize, d: i64) -> RatPoly {
    taylor(table, bound, gen, |m| {
        if m % 2 == 0 {
            Some(BigRational::new(
                BigInt::from(2) * BigInt::from(d).pow(m),
                factorial(m as u64),
            ))
        } else {
            None
        }
    })
}

/// Even log-Taylor coefficients of (x/2)/sinh(x/2): returns the rationals
/// g_{2m} with log((x/2)/sinh(x/2)) = sum g_{2m} x^{2m}, indexed by m >= 1.
pub fn log_ahat_coeffs(max_m: u32) -> Vec<BigRational> {
    let table = GenTable::new(vec![("x".into(), 2)]);
    let bound = 4 * max_m;
    let unit = sinh_half_over_half(&table, bound, 0);
    let log = unit
        .series_inv()
        .expect("unit")
        .series_log()
        .expect("constant 1");
    read_even_coeffs(&log, max_m)
}

/// Even log-Taylor coefficients of x/(2 tanh(x/2)) (constant part 1).
pub fn log_lhat_coeffs(max_m: u32) -> Vec<BigRational> {
    let table = GenTable::new(vec![("x".into(), 2)]);
    let bound = 4 * max_m;
    // x/(2 tanh(x/2)) = cosh(x/2) * (x/2)/sinh(x/2)
    let unit = cosh_half(&table, bound, 0).mul(
        &sinh_half_over_half(&table, bound, 0)
            .series_inv()
            .expect("unit"),
    );
    let log = unit.series_log().expect("constant 1");
    read_even_coeffs(&log, max_m)
}

/// Even log-Taylor coefficients of cosh(x/2).
pub fn log_cosh_half_coeffs(max_m: u32) -> Vec<BigRational> {
    let table = GenTable::new(vec![("x".into(), 2)]);
    let bound = 4 * max_m;
    let log = cosh_half(&table, bound, 0)
        .series_log()
        .expect("constant 1");
    read_even_coeffs(&log, max_m)
}

fn read_even_coeffs(p: &RatPoly, max_m: u32) -> Vec<BigRational> {
    (1..=max_m)
        .map(|m| p.coefficient(&[(2 * m) as u16]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coeff::rat;

    #[test]
    fn ahat_log_leading_term() {
        // (x/2)/sinh(x/2) = 1 - x^2/24 + ..., so g_2 = -1/24
        let g = log_ahat_coeffs(2);
        assert_eq!(g[0], rat(-1, 24));
    }

    #[test]
    fn lhat_log_leading_term() {
        // x/(2 tanh(x/2)) = 1 + x^2/12 - ..., so g_2 = 1/12
        let g = log_lhat_coeffs(2);
        assert_eq!(g[0], rat(1, 12));
    }

    #[test]
    fn cosh_log_leading_term() {
        // cosh(x/2) = 1 + x^2/8 + ..., log -> x^2/8
        let g = log_cosh_half_coeffs(1);
        assert_eq!(g[0], rat(1, 8));
    }

    #[test]
    fn sinh_division_example() {
        // (e + e^3/24)/e = 1 + e^2/24: the 2 sinh(e/2) numerator
        let t = GenTable::new(vec![("e".into(), 2)]);
        let num = two_sinh_half(&t, 6, 0);
        let q = num.divide_by_generator(0).unwrap();
        assert_eq!(q.coefficient(&[0]), rat(1, 1));
        assert_eq!(q.coefficient(&[2]), rat(1, 24));
    }
}

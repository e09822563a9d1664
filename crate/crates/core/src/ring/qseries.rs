//! Truncated power series in q with exponents on the 1/8-integer grid.
//!
//! The exponent key `n` means q^{n/8}; the grid makes theta prefactors
//! q^{1/8} exactly representable. Exponents above the cutoff are unknown,
//! products and sums propagate the minimum cutoff of their operands.

use super::coeff::{Coeff, FieldCoeff};
use super::RingError;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse q-series: map from exponent-in-eighths to nonzero coefficients,
/// exact for exponents <= `cutoff`.
#[derive(Clone)]
pub struct QSeries<C: Coeff> {
    cutoff: u32,
    terms: BTreeMap<u32, C>,
    zero: C,
}

impl<C: Coeff> PartialEq for QSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff && self.terms == other.terms
    }
}

impl<C: Coeff> fmt::Debug for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.terms {
            writeln!(f, "q^{}/8: {:?}", e, c)?;
        }
        write!(f, "O(q^{}/8)", self.cutoff + 1)
    }
}

impl<C: Coeff> QSeries<C> {
    /// Zero series; `zero` supplies the coefficient-ring context.
    pub fn zero(cutoff: u32, zero: C) -> Self {
        debug_assert!(zero.is_zero());
        QSeries {
            cutoff,
            terms: BTreeMap::new(),
            zero,
        }
    }

    pub fn constant(cutoff: u32, value: C) -> Self {
        let mut s = QSeries::zero(cutoff, value.zero_like());
        s.set(0, value);
        s
    }

    pub fn one(cutoff: u32, like: &C) -> Self {
        QSeries::constant(cutoff, like.one_like())
    }

    /// c * q^{eighths}.
    pub fn monomial(cutoff: u32, eighths: u32, value: C) -> Self {
        let mut s = QSeries::zero(cutoff, value.zero_like());
        s.set(eighths, value);
        s
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &C)> {
        self.terms.iter()
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    /// Coefficient of q^{eighths/8}; zero when absent.
    pub fn coefficient(&self, eighths: u32) -> C {
        self.terms
            .get(&eighths)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn set(&mut self, eighths: u32, value: C) {
        if eighths > self.cutoff {
            return;
        }
        if value.is_zero() {
            self.terms.remove(&eighths);
        } else {
            self.terms.insert(eighths, value);
        }
    }

    pub fn accumulate(&mut self, eighths: u32, value: C) {
        if eighths > self.cutoff || value.is_zero() {
            return;
        }
        let cur = self.coefficient(eighths);
        self.set(eighths, cur.add_ref(&value));
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let cutoff = self.cutoff.min(rhs.cutoff);
        let mut out = QSeries::zero(cutoff, self.zero.clone());
        for (e, c) in &self.terms {
            out.accumulate(*e, c.clone());
        }
        for (e, c) in &rhs.terms {
            out.accumulate(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg_ref();
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let cutoff = self.cutoff.min(rhs.cutoff);
        let mut out = QSeries::zero(cutoff, self.zero.clone());
        for (ea, ca) in &self.terms {
            if *ea > cutoff {
                continue;
            }
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if e > cutoff {
                    break;
                }
                out.accumulate(e, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = QSeries::zero(self.cutoff, self.zero.clone());
        for (e, v) in &self.terms {
            out.accumulate(*e, v.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = QSeries::one(self.cutoff, &self.zero);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn truncate(&self, cutoff: u32) -> Self {
        let mut out = QSeries::zero(cutoff.min(self.cutoff), self.zero.clone());
        for (e, c) in &self.terms {
            if *e <= out.cutoff {
                out.terms.insert(*e, c.clone());
            }
        }
        out
    }

    /// Multiplicative inverse; requires an invertible coefficient at q^0.
    pub fn inv(&self) -> Result<Self, RingError> {
        let c0 = self.coefficient(0);
        let c0_inv = c0.try_inv().ok_or(RingError::NotInvertible)?;
        let mut out = QSeries::zero(self.cutoff, self.zero.clone());
        out.set(0, c0_inv.clone());
        // b_n = -c0^{-1} * sum_{0<k<=n} a_k b_{n-k}
        for n in 1..=self.cutoff {
            let mut acc = self.zero.clone();
            for (k, ak) in self.terms.range(1..=n) {
                if let Some(b) = out.terms.get(&(n - k)) {
                    acc = acc.add_ref(&ak.mul_ref(b));
                }
            }
            if !acc.is_zero() {
                out.set(n, acc.mul_ref(&c0_inv).neg_ref());
            }
        }
        Ok(out)
    }

    pub fn map<D: Coeff>(&self, zero: D, mut f: impl FnMut(&C) -> D) -> QSeries<D> {
        let mut out = QSeries::zero(self.cutoff, zero);
        for (e, c) in &self.terms {
            out.set(*e, f(c));
        }
        out
    }
}

impl<C: FieldCoeff> QSeries<C> {
    pub fn scale_rat(&self, num: i64, den: i64) -> Self {
        let mut out = QSeries::zero(self.cutoff, self.zero.clone());
        for (e, c) in &self.terms {
            out.set(*e, c.mul_rat_i64(num, den));
        }
        out
    }

    /// exp of a series with no q^0 term.
    pub fn exp(&self) -> Result<Self, RingError> {
        if !self.coefficient(0).is_zero() {
            return Err(RingError::NonzeroConstantTerm);
        }
        let mut out = QSeries::one(self.cutoff, &self.zero);
        let mut term = out.clone();
        let mut n: i64 = 1;
        loop {
            term = term.mul(self).scale_rat(1, n);
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
            n += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coeff::rint;
    use num::BigRational;

    fn z() -> BigRational {
        rint(0)
    }

    #[test]
    fn half_power_product() {
        // (1 - q^{1/2})(1 + q^{1/2}) = 1 - q
        let mut a = QSeries::one(16, &z());
        a.set(4, rint(-1));
        let mut b = QSeries::one(16, &z());
        b.set(4, rint(1));
        let mut expect = QSeries::one(16, &z());
        expect.set(8, rint(-1));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1-q) = 1 + q + q^2 to order q^2
        let mut a = QSeries::one(16, &z());
        a.set(8, rint(-1));
        let inv = a.inv().unwrap();
        let mut expect = QSeries::one(16, &z());
        expect.set(8, rint(1));
        expect.set(16, rint(1));
        assert_eq!(inv, expect);
    }

    #[test]
    fn coefficient_lookup() {
        let s = QSeries::monomial(8, 1, rint(2));
        assert_eq!(s.coefficient(1), rint(2));
        assert_eq!(s.coefficient(5), rint(0));
    }

    #[test]
    fn inv_requires_unit_constant() {
        let s = QSeries::monomial(8, 4, rint(1));
        assert!(s.inv().is_err());
    }

    #[test]
    fn min_cutoff_propagates() {
        let a = QSeries::one(24, &z());
        let b = QSeries::one(16, &z());
        assert_eq!(a.mul(&b).cutoff(), 16);
        assert_eq!(a.add(&b).cutoff(), 16);
    }
}

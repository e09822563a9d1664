//! Sparse weighted-graded truncated polynomials.
//!
//! A `GradedPoly` is a sparse multivariate polynomial over an exact
//! coefficient domain. Generators carry positive cohomological weights and
//! every stored term has total weight (sum of exponent * generator weight)
//! at most the truncation bound `W`. Stored coefficients are never zero, so
//! two values over the same generator table are equal iff their term maps
//! are identical.

use super::coeff::{Coeff, FieldCoeff};
use super::RingError;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Generator table: ordered list of (name, weight) pairs shared by all
/// polynomials of one ring.
#[derive(Debug, PartialEq, Eq)]
pub struct GenTable {
    gens: Vec<(String, u32)>,
}

impl GenTable {
    pub fn new(gens: Vec<(String, u32)>) -> Arc<Self> {
        assert!(
            gens.iter().all(|(_, w)| *w > 0),
            "generator weights must be positive"
        );
        Arc::new(GenTable { gens })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.gens[i].1
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|(n, _)| n == name)
    }

    /// Total weight of an exponent vector.
    pub fn weight_of(&self, exps: &[u16]) -> u32 {
        exps.iter()
            .zip(&self.gens)
            .map(|(e, (_, w))| *e as u32 * *w)
            .sum()
    }
}

/// Sparse graded polynomial truncated at total weight `bound`.
#[derive(Clone)]
pub struct GradedPoly<C: Coeff> {
    table: Arc<GenTable>,
    bound: u32,
    terms: BTreeMap<Vec<u16>, C>,
    /// Zero exemplar of the coefficient domain (carries ring context).
    zero: C,
}

impl<C: Coeff> PartialEq for GradedPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.terms == other.terms
    }
}

impl<C: Coeff> fmt::Debug for GradedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            for (i, e) in exps.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*{}^{}", self.table.name(i), e)?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> GradedPoly<C> {
    pub fn zero(table: Arc<GenTable>, bound: u32, zero: C) -> Self {
        debug_assert!(zero.is_zero());
        GradedPoly {
            table,
            bound,
            terms: BTreeMap::new(),
            zero,
        }
    }

    pub fn constant(table: Arc<GenTable>, bound: u32, value: C) -> Self {
        let zero = value.zero_like();
        let mut p = GradedPoly::zero(table, bound, zero);
        if !value.is_zero() {
            p.terms.insert(vec![0; p.table.len()], value);
        }
        p
    }

    pub fn one(table: Arc<GenTable>, bound: u32, like: &C) -> Self {
        GradedPoly::constant(table, bound, like.one_like())
    }

    /// The polynomial consisting of the single generator `i`.
    pub fn generator(table: Arc<GenTable>, bound: u32, i: usize, like: &C) -> Self {
        let mut p = GradedPoly::zero(table.clone(), bound, like.zero_like());
        if table.weight(i) <= bound {
            let mut exps = vec![0u16; table.len()];
            exps[i] = 1;
            p.terms.insert(exps, like.one_like());
        }
        p
    }

    pub fn table(&self) -> &Arc<GenTable> {
        &self.table
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &C)> {
        self.terms.iter()
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    fn compatible(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table)
            && self.bound == other.bound
    }

    fn require_compatible(&self, other: &Self) -> Result<(), RingError> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(RingError::IncompatibleRings)
        }
    }

    /// Insert with zero-stripping and truncation. Internal invariant keeper.
    fn add_term(&mut self, exps: Vec<u16>, c: C) {
        if c.is_zero() || self.table.weight_of(&exps) > self.bound {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Build from raw terms; zero coefficients and over-bound terms dropped.
    pub fn from_terms<I>(table: Arc<GenTable>, bound: u32, zero: C, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, C)>,
    {
        let mut p = GradedPoly::zero(table, bound, zero);
        for (e, c) in terms {
            assert_eq!(e.len(), p.table.len(), "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn coefficient(&self, exps: &[u16]) -> C {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![0; self.table.len()])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("incompatible rings")
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, RingError> {
        self.require_compatible(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
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

    /// Truncated sparse product.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, RingError> {
        self.require_compatible(rhs)?;
        let mut out = GradedPoly::zero(self.table.clone(), self.bound, self.zero.clone());
        for (ea, ca) in &self.terms {
            let wa = self.table.weight_of(ea);
            for (eb, cb) in &rhs.terms {
                if wa + self.table.weight_of(eb) > self.bound {
                    continue;
                }
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("incompatible rings")
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = GradedPoly::zero(self.table.clone(), self.bound, self.zero.clone());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = GradedPoly::one(self.table.clone(), self.bound, &self.zero);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Re-truncate to a smaller bound.
    pub fn truncate(&self, bound: u32) -> Self {
        let mut out = GradedPoly::zero(self.table.clone(), bound, self.zero.clone());
        for (e, c) in &self.terms {
            if self.table.weight_of(e) <= bound {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Sum of terms of total weight exactly `w`.
    pub fn weight_component(&self, w: u32) -> Self {
        let mut out = GradedPoly::zero(self.table.clone(), self.bound, self.zero.clone());
        for (e, c) in &self.terms {
            if self.table.weight_of(e) == w {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Largest weight with a nonzero component.
    pub fn max_weight(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| self.table.weight_of(e))
            .max()
            .unwrap_or(0)
    }

    /// Exact quotient by generator `g`; every term must contain it.
    pub fn divide_by_generator(&self, g: usize) -> Result<Self, RingError> {
        let mut out = GradedPoly::zero(self.table.clone(), self.bound, self.zero.clone());
        for (e, c) in &self.terms {
            if e[g] == 0 {
                return Err(RingError::NotDivisible {
                    generator: self.table.name(g).to_string(),
                });
            }
            let mut exps = e.clone();
            exps[g] -= 1;
            out.terms.insert(exps, c.clone());
        }
        Ok(out)
    }

    /// Substitute each generator by the given polynomial (over any target
    /// ring). Weight-preserving substitutions keep gradedness; the target
    /// bound does the truncation.
    pub fn substitute(&self, images: &[GradedPoly<C>]) -> GradedPoly<C> {
        assert_eq!(images.len(), self.table.len(), "one image per generator");
        let proto = &images[0];
        let mut out = GradedPoly::zero(proto.table.clone(), proto.bound, proto.zero.clone());
        for (e, c) in &self.terms {
            let mut term = GradedPoly::constant(proto.table.clone(), proto.bound, c.clone());
            for (i, exp) in e.iter().enumerate() {
                for _ in 0..*exp {
                    term = term.mul(&images[i]);
                    if term.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Change the coefficient domain termwise.
    pub fn map_coeffs<D: Coeff>(&self, zero: D, mut f: impl FnMut(&C) -> D) -> GradedPoly<D> {
        let mut out = GradedPoly::zero(self.table.clone(), self.bound, zero);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Rebuild each term through `f: (exps, coeff) -> coeff`, e.g. for
    /// exponent-dependent rescalings.
    pub fn map_terms(&self, mut f: impl FnMut(&[u16], &C) -> C) -> Self {
        let mut out = GradedPoly::zero(self.table.clone(), self.bound, self.zero.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(e, c));
        }
        out
    }

    /// Multiplicative inverse, requires invertible constant term.
    pub fn series_inv(&self) -> Result<Self, RingError> {
        let c0 = self.constant_term();
        let c0_inv = c0.try_inv().ok_or(RingError::NotInvertible)?;
        // a = c0 (1 + y), 1/a = c0^{-1} sum (-y)^n
        let y =
            self.scale(&c0_inv)
                .sub(&GradedPoly::one(self.table.clone(), self.bound, &self.zero));
        let mut out = GradedPoly::one(self.table.clone(), self.bound, &self.zero);
        let mut pow = out.clone();
        loop {
            pow = pow.mul(&y).neg();
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow);
        }
        Ok(out.scale(&c0_inv))
    }
}

impl<C: FieldCoeff> GradedPoly<C> {
    pub fn scale_rat(&self, num: i64, den: i64) -> Self {
        let mut out = GradedPoly::zero(self.table.clone(), self.bound, self.zero.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul_rat_i64(num, den));
        }
        out
    }

    /// exp(a) = sum a^n / n!, requires zero constant term.
    pub fn series_exp(&self) -> Result<Self, RingError> {
        if !self.constant_term().is_zero() {
            return Err(RingError::NonzeroConstantTerm);
        }
        let mut out = GradedPoly::one(self.table.clone(), self.bound, &self.zero);
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

    /// log(a), requires constant term 1.
    pub fn series_log(&self) -> Result<Self, RingError> {
        if self.constant_term() != self.zero.one_like() {
            return Err(RingError::ConstantTermNotOne);
        }
        let mut x = self.clone();
        let one = GradedPoly::one(self.table.clone(), self.bound, &self.zero);
        x = x.sub(&one);
        let mut out = GradedPoly::zero(self.table.clone(), self.bound, self.zero.clone());
        let mut pow = one;
        let mut n: i64 = 1;
        loop {
            pow = pow.mul(&x);
            if pow.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = out.add(&pow.scale_rat(sign, n));
            n += 1;
        }
        Ok(out)
    }
}

impl<C: Coeff> Coeff for GradedPoly<C> {
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        GradedPoly::zero(self.table.clone(), self.bound, self.zero.clone())
    }
    fn one_like(&self) -> Self {
        GradedPoly::one(self.table.clone(), self.bound, &self.zero)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn try_inv(&self) -> Option<Self> {
        self.series_inv().ok()
    }
}

impl<C: FieldCoeff> FieldCoeff for GradedPoly<C> {
    fn mul_rat_i64(&self, num: i64, den: i64) -> Self {
        self.scale_rat(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coeff::{rat, rint};
    use num::BigRational;

    fn ctable() -> Arc<GenTable> {
        GenTable::new(vec![("ps_x2".into(), 4), ("c".into(), 2)])
    }

    fn gen(t: &Arc<GenTable>, bound: u32, i: usize) -> GradedPoly<BigRational> {
        GradedPoly::generator(t.clone(), bound, i, &rint(0))
    }

    #[test]
    fn difference_of_squares() {
        let t = ctable();
        let one = GradedPoly::one(t.clone(), 4, &rint(0));
        let c = gen(&t, 4, 1);
        let lhs = one.add(&c).mul(&one.sub(&c));
        let expect = one.sub(&c.mul(&c));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn truncation_drops_overweight() {
        let t = ctable();
        let one = GradedPoly::one(t.clone(), 2, &rint(0));
        let c = gen(&t, 2, 1);
        // (1+c)(1+c) at W=2 -> 1 + 2c, c^2 truncated
        let sq = one.add(&c).mul(&one.add(&c));
        let expect = one.add(&c.scale(&rint(2)));
        assert_eq!(sq, expect);
    }

    #[test]
    fn power_sum_square_retained() {
        let t = ctable();
        let p = gen(&t, 8, 0);
        let sq = p.mul(&p);
        assert_eq!(sq.max_weight(), 8);
        assert_eq!(sq.num_terms(), 1);
    }

    #[test]
    fn incompatible_tables_error() {
        let t1 = ctable();
        let t2 = GenTable::new(vec![("e".into(), 2)]);
        let a = GradedPoly::one(t1, 4, &rint(0));
        let b = GradedPoly::one(t2, 4, &rint(0));
        assert!(matches!(a.try_mul(&b), Err(RingError::IncompatibleRings)));
    }

    #[test]
    fn exp_of_c() {
        let t = ctable();
        let c = gen(&t, 4, 1);
        let e = c.series_exp().unwrap();
        // 1 + c + c^2/2
        let mut expect = GradedPoly::one(t.clone(), 4, &rint(0)).add(&c);
        expect = expect.add(&c.mul(&c).scale(&rat(1, 2)));
        assert_eq!(e, expect);
        // exp(0) = 1
        let z = GradedPoly::zero(t.clone(), 4, rint(0));
        assert_eq!(z.series_exp().unwrap(), GradedPoly::one(t, 4, &rint(0)));
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        let t = ctable();
        let one = GradedPoly::one(t, 4, &rint(0));
        assert!(matches!(
            one.series_exp(),
            Err(RingError::NonzeroConstantTerm)
        ));
    }

    #[test]
    fn exp_log_roundtrip() {
        let t = ctable();
        let one = GradedPoly::one(t.clone(), 8, &rint(0));
        let c = gen(&t, 8, 1);
        let lhs = one.add(&c).series_log().unwrap().series_exp().unwrap();
        assert_eq!(lhs, one.add(&c));
        // log(1) = 0
        assert_eq!(one.series_log().unwrap(), GradedPoly::zero(t, 8, rint(0)));
    }

    #[test]
    fn geometric_inverse() {
        let t = ctable();
        let one = GradedPoly::one(t.clone(), 4, &rint(0));
        let c = gen(&t, 4, 1);
        let inv = one.sub(&c).series_inv().unwrap();
        let expect = one.add(&c).add(&c.mul(&c));
        assert_eq!(inv, expect);
    }

    #[test]
    fn inverse_is_defining_property() {
        let t = ctable();
        let one = GradedPoly::one(t.clone(), 8, &rint(0));
        let p = gen(&t, 8, 0);
        let c = gen(&t, 8, 1);
        let a = one.add(&p).add(&c.mul(&c));
        assert_eq!(a.mul(&a.series_inv().unwrap()), one);
    }

    #[test]
    fn divide_by_generator_cases() {
        let t = GenTable::new(vec![("e".into(), 2), ("c".into(), 2)]);
        let e = GradedPoly::<BigRational>::generator(t.clone(), 6, 0, &rint(0));
        let c = GradedPoly::generator(t.clone(), 6, 1, &rint(0));
        let one = GradedPoly::one(t.clone(), 6, &rint(0));
        // (e + e^2)/e = 1 + e
        let q = e.add(&e.mul(&e)).divide_by_generator(0).unwrap();
        assert_eq!(q, one.add(&e));
        // (c e)/e = c
        assert_eq!(c.mul(&e).divide_by_generator(0).unwrap(), c);
        // missing factor fails
        assert!(e.add(&c).divide_by_generator(0).is_err());
    }

    #[test]
    fn weight_component_cases() {
        let t = ctable();
        let one = GradedPoly::one(t.clone(), 8, &rint(0));
        let p = gen(&t, 8, 0);
        let c = gen(&t, 8, 1);
        let f = one.add(&c).add(&c.mul(&c)).add(&p.mul(&c));
        assert_eq!(f.weight_component(4), c.mul(&c));
        assert_eq!(f.weight_component(0), one);
        assert_eq!(f.weight_component(6), p.mul(&c));
    }
}

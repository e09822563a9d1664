//! A free lambda-ring on a rank-N generator T and the rank-two oriented
//! symbol s, used to expand the twisted series bundles with integer
//! coefficients and to verify the ring congruences.
//!
//! Elements are integer-coefficient polynomials in lam1..lamN (exterior
//! powers of T) and s. Total exterior powers multiply over sums and invert
//! over differences; symmetric powers are never independent symbols, they
//! come from S_t = 1/Lambda_{-t}. The oriented rank-two symbol satisfies
//! Lambda_t(s) = 1 + s t + t^2.

use crate::charforms::{CharForm, Context};
use crate::report::Check;
use crate::ring::poly::{GenTable, GradedPoly};
use crate::ring::qseries::QSeries;
use num::{BigInt, BigRational, Zero};
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

pub type BundleElem = GradedPoly<BigInt>;
pub type BundleQSeries = QSeries<BundleElem>;

/// Degree headroom for the symbol ring: generators carry weight 1 and the
/// bound is set high enough that no product in the tested q-range ever
/// truncates.
const DEGREE_ROOM: u32 = 1 << 16;

#[derive(Debug, Error)]
pub enum LambdaError {
    #[error("not divisible by (s - 2): remainder {0}")]
    NotDivisible(String),
    #[error("quotient has odd coefficients: {0}")]
    OddQuotient(String),
}

/// The symbol ring with its generator table.
pub struct BundleRing {
    pub n: u32,
    pub table: Arc<GenTable>,
}

/// Which twisted series bundle variant to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theta2Variant {
    /// Theta_2(T, T, xi)
    Twisted,
    /// Theta_2(T, T, C^2)
    Untwisted,
    /// Theta_2(T + C^2 - xi, ..., C^2)
    Shifted,
}

impl BundleRing {
    pub fn new(n: u32) -> BundleRing {
        let mut gens: Vec<(String, u32)> = (1..=n).map(|i| (format!("lam{i}"), 1)).collect();
        gens.push(("s".into(), 1));
        BundleRing {
            n,
            table: GenTable::new(gens),
        }
    }

    pub fn zero(&self) -> BundleElem {
        BundleElem::zero(self.table.clone(), DEGREE_ROOM, BigInt::zero())
    }

    pub fn one(&self) -> BundleElem {
        BundleElem::one(self.table.clone(), DEGREE_ROOM, &BigInt::zero())
    }

    pub fn int(&self, v: i64) -> BundleElem {
        BundleElem::constant(self.table.clone(), DEGREE_ROOM, BigInt::from(v))
    }

    /// lam^i T for 1 <= i <= N.
    pub fn lam(&self, i: u32) -> BundleElem {
        assert!(i >= 1 && i <= self.n, "exterior power out of range");
        BundleElem::generator(
            self.table.clone(),
            DEGREE_ROOM,
            (i - 1) as usize,
            &BigInt::zero(),
        )
    }

    pub fn s(&self) -> BundleElem {
        BundleElem::generator(
            self.table.clone(),
            DEGREE_ROOM,
            self.n as usize,
            &BigInt::zero(),
        )
    }

    /// s - 2, the rank-reduced twist symbol.
    pub fn s_tilde(&self) -> BundleElem {
        self.s().sub(&self.int(2))
    }

    /// Lambda_{sign * q^{e8}}(T) = sum_i lam^i(T) sign^i q^{i e8}.
    fn lambda_t_full(&self, q8: u32, e8: u32, sign: i64) -> BundleQSeries {
        let mut out = QSeries::constant(q8, self.one());
        for i in 1..=self.n {
            let e = i * e8;
            if e > q8 {
                break;
            }
            let v = if sign < 0 && i % 2 == 1 {
                self.lam(i).neg()
            } else {
                self.lam(i)
            };
            out.accumulate(e, v);
        }
        out
    }

    /// Lambda_{sign * q^{e8}}(xi_C) = 1 + sign s q^{e8} + q^{2 e8}.
    fn lambda_t_xi(&self, q8: u32, e8: u32, sign: i64) -> BundleQSeries {
        let mut out = QSeries::constant(q8, self.one());
        out.accumulate(e8, if sign < 0 { self.s().neg() } else { self.s() });
        out.accumulate(2 * e8, self.one());
        out
    }

    /// (1 + sign q^{e8})^p as a series with integer coefficients.
    fn lambda_t_trivial(&self, q8: u32, e8: u32, sign: i64, p: i64) -> BundleQSeries {
        let mut base = QSeries::constant(q8, self.one());
        base.accumulate(e8, if sign < 0 { self.int(-1) } else { self.one() });
        let (abs, invert) = (p.unsigned_abs() as u32, p < 0);
        let pow = base.pow(abs);
        if invert {
            pow.inv().expect("unit leading coefficient")
        } else {
            pow
        }
    }

    /// q^{1/2}-expansion of the chosen variant with virtual-bundle
    /// coefficients.
    pub fn theta2_bundle(&self, variant: Theta2Variant, qhalf: u32) -> BundleQSeries {
        let q8 = 4 * qhalf;
        let n = self.n as i64;
        let mut out = QSeries::constant(q8, self.one());

        // integer-power family at q^n
        let mut j = 1u32;
        while 8 * j <= q8 {
            let e8 = 8 * j;
            let f = match variant {
                // S_{q^j}(T~) = (1-q^j)^N / Lambda_{-q^j}(T)
                Theta2Variant::Twisted | Theta2Variant::Untwisted => self
                    .lambda_t_trivial(q8, e8, -1, n)
                    .mul(&self.lambda_t_full(q8, e8, -1).inv().expect("unit")),
                // S_{q^j}(T~ - xi~) = (1-q^j)^{N-2} (1 - s q^j + q^{2j}) / Lambda_{-q^j}(T)
                Theta2Variant::Shifted => self
                    .lambda_t_trivial(q8, e8, -1, n - 2)
                    .mul(&self.lambda_t_xi(q8, e8, -1))
                    .mul(&self.lambda_t_full(q8, e8, -1).inv().expect("unit")),
            };
            out = out.mul(&f);
            // twisted-only xi family at integer powers: Lambda_{q^j}(xi~)
            if variant == Theta2Variant::Twisted {
                let xi = self
                    .lambda_t_xi(q8, e8, 1)
                    .mul(&self.lambda_t_trivial(q8, e8, 1, -2));
                out = out.mul(&xi);
            }
            j += 1;
        }

        // half-integer families at q^{m-1/2}
        let mut m = 1u32;
        while 8 * m - 4 <= q8 {
            let e8 = 8 * m - 4;
            let f = match variant {
                // Lambda_{-q^h}(T~ - 2 xi~)
                //   = Lambda_{-q^h}(T) (1-q^h)^{4-N} (1 - s q^h + q^{2h})^{-2}
                Theta2Variant::Twisted => self
                    .lambda_t_full(q8, e8, -1)
                    .mul(&self.lambda_t_trivial(q8, e8, -1, 4 - n))
                    .mul(&self.lambda_t_xi(q8, e8, -1).pow(2).inv().expect("unit")),
                // Lambda_{-q^h}(T~) = Lambda_{-q^h}(T) (1-q^h)^{-N}
                Theta2Variant::Untwisted => self
                    .lambda_t_full(q8, e8, -1)
                    .mul(&self.lambda_t_trivial(q8, e8, -1, -n)),
                // Lambda_{-q^h}(T~ - xi~)
                //   = Lambda_{-q^h}(T) (1-q^h)^{2-N} (1 - s q^h + q^{2h})^{-1}
                Theta2Variant::Shifted => self
                    .lambda_t_full(q8, e8, -1)
                    .mul(&self.lambda_t_trivial(q8, e8, -1, 2 - n))
                    .mul(&self.lambda_t_xi(q8, e8, -1).inv().expect("unit")),
            };
            out = out.mul(&f);
            // twisted-only xi family at half powers: Lambda_{q^{m-1/2}}(xi~)
            if variant == Theta2Variant::Twisted {
                let xi = self
                    .lambda_t_xi(q8, e8, 1)
                    .mul(&self.lambda_t_trivial(q8, e8, 1, -2));
                out = out.mul(&xi);
            }
            m += 1;
        }
        out
    }

    /// The xi~ correction series Lambda_{sign q^{e8}}(xi~) =
    /// Lambda_{sign q^{e8}}(xi) / (1 + sign q^{e8})^2 as a product over a
    /// family of exponents.
    fn xi_tilde_family(
        &self,
        q8: u32,
        mut next: impl FnMut(u32) -> Option<u32>,
        sign: i64,
    ) -> BundleQSeries {
        let mut out = QSeries::constant(q8, self.one());
        let mut idx = 1u32;
        while let Some(e8) = next(idx) {
            if e8 > q8 {
                break;
            }
            out = out.mul(
                &self
                    .lambda_t_xi(q8, e8, sign)
                    .mul(&self.lambda_t_trivial(q8, e8, sign, -2)),
            );
            idx += 1;
        }
        out
    }

    /// Substitute s := 2 (trivial twist); stays in the same ring.
    pub fn eval_s2(&self, p: &BundleElem) -> BundleElem {
        let images: Vec<BundleElem> = (0..self.table.len())
            .map(|i| {
                if i == self.n as usize {
                    self.int(2)
                } else {
                    BundleElem::generator(self.table.clone(), DEGREE_ROOM, i, &BigInt::zero())
                }
            })
            .collect();
        p.substitute(&images)
    }

    /// Exact division by (s - 2): synthetic division in s, the remainder is
    /// the evaluation at s = 2 and must vanish.
    pub fn divide_by_s_minus_2(&self, p: &BundleElem) -> Result<BundleElem, LambdaError> {
        let s_idx = self.n as usize;
        // group by s-degree
        let mut by_degree: std::collections::BTreeMap<u16, Vec<(Vec<u16>, BigInt)>> =
            std::collections::BTreeMap::new();
        for (exps, c) in p.terms() {
            let d = exps[s_idx];
            let mut stripped = exps.clone();
            stripped[s_idx] = 0;
            by_degree.entry(d).or_default().push((stripped, c.clone()));
        }
        let degree = by_degree.keys().next_back().copied().unwrap_or(0);
        let poly_of = |terms: &[(Vec<u16>, BigInt)], s_pow: u16| {
            BundleElem::from_terms(
                self.table.clone(),
                DEGREE_ROOM,
                BigInt::zero(),
                terms.iter().map(|(e, c)| {
                    let mut e = e.clone();
                    e[s_idx] = s_pow;
                    (e, c.clone())
                }),
            )
        };
        let part = |d: u16| -> BundleElem {
            by_degree
                .get(&d)
                .map(|t| poly_of(t, 0))
                .unwrap_or_else(|| self.zero())
        };
        // quotient q_{d-1} = P_d; q_{i-1} = P_i + 2 q_i; remainder P_0 + 2 q_0
        let mut quotient = self.zero();
        let mut carry = self.zero(); // q_i while descending
        for d in (1..=degree).rev() {
            let qi = part(d).add(&carry.scale(&BigInt::from(2)));
            // accumulate qi * s^{d-1}
            let s_term = if d - 1 > 0 {
                self.s().pow((d - 1) as u32)
            } else {
                self.one()
            };
            quotient = quotient.add(&qi.mul(&s_term));
            carry = qi;
        }
        let remainder = part(0).add(&carry.scale(&BigInt::from(2)));
        if !remainder.is_zero() {
            return Err(LambdaError::NotDivisible(format!("{remainder:?}")));
        }
        Ok(quotient)
    }

    /// Exact halving of every coefficient.
    pub fn halve(&self, p: &BundleElem) -> Result<BundleElem, LambdaError> {
        let two = BigInt::from(2);
        let mut terms = Vec::new();
        for (e, c) in p.terms() {
            if num::Zero::is_zero(&(c % &two)) {
                terms.push((e.clone(), c / &two));
            } else {
                return Err(LambdaError::OddQuotient(format!("{c} at {e:?}")));
            }
        }
        Ok(BundleElem::from_terms(
            self.table.clone(),
            DEGREE_ROOM,
            BigInt::zero(),
            terms,
        ))
    }

    /// Divisibility by 2(s-2) with the quotient returned.
    pub fn divide_by_twice_s_tilde(&self, p: &BundleElem) -> Result<BundleElem, LambdaError> {
        self.halve(&self.divide_by_s_minus_2(p)?)
    }

    /// Chern character into the characteristic-form ring of `ctx`:
    /// ch(lam^i T) from the generating series exp(sum (-1)^{d-1} N_d t^d/d)
    /// with N_d = ch of the d-th power-scaled roots, and ch(s) = e^c+e^{-c}.
    pub fn ch(&self, p: &BundleElem, ctx: &Context) -> CharForm {
        let ch_lams = self.ch_exterior_powers(ctx);
        let ch_s = ctx.two_cosh_c_scaled(1);
        let mut acc = ctx.zero();
        for (exps, c) in p.terms() {
            let mut term = ctx.constant(BigRational::from(c.clone()));
            for (i, e) in exps.iter().enumerate() {
                for _ in 0..*e {
                    term = if i == self.n as usize {
                        term.mul(&ch_s)
                    } else {
                        term.mul(&ch_lams[i])
                    };
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// ch(lam^i T) for i = 1..N via the t-series of the total exterior
    /// power: log ch(Lambda_t T) = sum_d (-1)^{d-1} (N_d(TM~) + dim) t^d / d.
    fn ch_exterior_powers(&self, ctx: &Context) -> Vec<CharForm> {
        let dim = ctx.spec.dim() as i64;
        // build log as a polynomial in t with CharForm-valued coefficients:
        // represented as QSeries over eighths with t ~ q^{1/8} placeholder
        let mut log: QSeries<CharForm> = QSeries::zero(self.n, ctx.zero());
        for d in 1..=self.n {
            let nd = ctx
                .n_tm(d as i64)
                .add(&ctx.constant(BigRational::from(BigInt::from(dim))));
            let sign = if d % 2 == 1 { 1 } else { -1 };
            log.accumulate(d, nd.scale_rat(sign, d as i64));
        }
        let series = log.exp().expect("no constant part");
        (1..=self.n).map(|i| series.coefficient(i)).collect()
    }
}

/// The three displayed factorizations relating the variants, each side
/// expanded independently.
pub fn verify_factorizations(n: u32, qhalf: u32) -> Vec<Check> {
    let ring = BundleRing::new(n);
    let q8 = 4 * qhalf;
    let twisted = ring.theta2_bundle(Theta2Variant::Twisted, qhalf);
    let untwisted = ring.theta2_bundle(Theta2Variant::Untwisted, qhalf);
    let shifted = ring.theta2_bundle(Theta2Variant::Shifted, qhalf);

    let int_pows = |i: u32| Some(8 * i);
    let half_pows = |i: u32| Some(8 * i - 4);

    let mut checks = Vec::new();
    {
        let started = Instant::now();
        // shifted = untwisted (x) prod Lambda_{-q^n}(xi~) / prod Lambda_{-q^{m-1/2}}(xi~)
        let num = ring.xi_tilde_family(q8, int_pows, -1);
        let den = ring.xi_tilde_family(q8, half_pows, -1);
        let rhs = untwisted.mul(&num).mul(&den.inv().expect("unit"));
        let ok = shifted == rhs;
        checks.push(
            Check::exact(
                "lambda.factorization.shifted",
                "shifted variant factors through the untwisted one",
                ok,
                first_mismatch(&shifted, &rhs),
            )
            .timed(started),
        );
    }
    {
        let started = Instant::now();
        // twisted = untwisted (x) [prod Lambda_{q^{r-1/2}} prod Lambda_{q^s}] / prod Lambda_{-q^{m-1/2}}^2
        let num = ring
            .xi_tilde_family(q8, half_pows, 1)
            .mul(&ring.xi_tilde_family(q8, int_pows, 1));
        let den = ring.xi_tilde_family(q8, half_pows, -1).pow(2);
        let rhs = untwisted.mul(&num).mul(&den.inv().expect("unit"));
        let ok = twisted == rhs;
        checks.push(
            Check::exact(
                "lambda.factorization.twisted",
                "twisted variant factors through the untwisted one",
                ok,
                first_mismatch(&twisted, &rhs),
            )
            .timed(started),
        );
    }
    {
        let started = Instant::now();
        // twisted = shifted (x) [prod Lambda_{q^{r-1/2}} prod Lambda_{q^s}]
        //             / [prod Lambda_{-q^{m-1/2}} prod Lambda_{-q^n}]
        let num = ring
            .xi_tilde_family(q8, half_pows, 1)
            .mul(&ring.xi_tilde_family(q8, int_pows, 1));
        let den = ring
            .xi_tilde_family(q8, half_pows, -1)
            .mul(&ring.xi_tilde_family(q8, int_pows, -1));
        let rhs = shifted.mul(&num).mul(&den.inv().expect("unit"));
        let ok = twisted == rhs;
        checks.push(
            Check::exact(
                "lambda.factorization.twisted_vs_shifted",
                "twisted variant factors through the shifted one",
                ok,
                first_mismatch(&twisted, &rhs),
            )
            .timed(started),
        );
    }
    checks
}

fn first_mismatch(a: &BundleQSeries, b: &BundleQSeries) -> Option<String> {
    let d = a.sub(b);
    let at = d.terms().next().map(|(e, _)| *e);
    at.map(|e| format!("first mismatch at q^{e}/8"))
}

/// Lambda_t(xi~) - Lambda_{-t}(xi~) has every t-coefficient divisible by
/// 2(s - 2); reported for both the integer-power and half-integer-power
/// substitutions of t.
pub fn check_congruence_310(t_order: u32) -> Vec<Check> {
    let started = Instant::now();
    let ring = BundleRing::new(4);
    // t-series encoded on the integer grid: t ~ q
    let q8 = 8 * t_order;
    let plus = ring
        .lambda_t_xi(q8, 8, 1)
        .mul(&ring.lambda_t_trivial(q8, 8, 1, -2));
    let minus = ring
        .lambda_t_xi(q8, 8, -1)
        .mul(&ring.lambda_t_trivial(q8, 8, -1, -2));
    let diff = plus.sub(&minus);
    let mut witness = None;
    // t^1 coefficient is exactly 2(s-2)
    let t1 = diff.coefficient(8);
    if t1 != ring.s_tilde().scale(&BigInt::from(2)) {
        witness = Some("t coefficient is not 2(s-2)".to_string());
    }
    for (e, c) in diff.terms() {
        if witness.is_some() {
            break;
        }
        match ring.divide_by_twice_s_tilde(c) {
            Ok(_) => {}
            Err(err) => witness = Some(format!("t-power {}: {err}", e / 8)),
        }
        // trivial-twist collapse
        if !ring.eval_s2(c).is_zero() {
            witness = Some(format!("t-power {}: survives s = 2", e / 8));
        }
    }
    let ok = witness.is_none();
    let mk = |id: &str, detail: &str| Check::exact(id, detail, ok, witness.clone()).timed(started);
    vec![
        mk(
            "lambda.congruence.integer_powers",
            "exterior-power twist difference divisible by 2(s-2) at t = q^r",
        ),
        mk(
            "lambda.congruence.half_powers",
            "same divisibility at t = q^{r-1/2}",
        ),
    ]
}

/// With the given extraction rows, b_r(twisted) - b_r(shifted) is divisible
/// by 2(s-2); returns the integral quotients.
pub fn extract_cr(
    z_rows: &[Vec<BigInt>],
    n: u32,
    qhalf: u32,
) -> Result<(Vec<BundleElem>, Check), LambdaError> {
    let started = Instant::now();
    let ring = BundleRing::new(n);
    let twisted = ring.theta2_bundle(Theta2Variant::Twisted, qhalf);
    let shifted = ring.theta2_bundle(Theta2Variant::Shifted, qhalf);
    let mut quotients = Vec::new();
    for row in z_rows {
        let mut diff = ring.zero();
        for (j, zc) in row.iter().enumerate() {
            if num::Zero::is_zero(zc) {
                continue;
            }
            let b_tw = twisted.coefficient(4 * j as u32);
            let b_sh = shifted.coefficient(4 * j as u32);
            diff = diff.add(&b_tw.sub(&b_sh).scale(zc));
        }
        quotients.push(ring.divide_by_twice_s_tilde(&diff)?);
    }
    let check = Check::exact(
        "lambda.cr_extraction",
        "b_r differences divisible by 2(s-2) with integral quotients",
        true,
        None,
    )
    .timed(started);
    Ok((quotients, check))
}

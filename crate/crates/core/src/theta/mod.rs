//! Exact q-expansions of the four Jacobi theta functions, theta constants,
//! the derivative series, and the level-2 modular forms delta/epsilon.
//!
//! With z = pi*v the products depend on v only through sin z, cos z and
//! cos 2z, so every stored Taylor coefficient is rational; the single
//! transcendental pi of the derivative convention is handled by always
//! working with theta'(0,tau)/pi.
//!
//! Conventions (q = e^{2 pi i tau}, prefactors carry q^{1/8}):
//!
//! ```text
//! theta  = 2 q^{1/8} sin z  prod (1-q^j)(1 - 2cos(2z) q^j       + q^{2j})
//! theta1 = 2 q^{1/8} cos z  prod (1-q^j)(1 + 2cos(2z) q^j       + q^{2j})
//! theta2 =                  prod (1-q^j)(1 - 2cos(2z) q^{j-1/2} + q^{2j-1})
//! theta3 =                  prod (1-q^j)(1 + 2cos(2z) q^{j-1/2} + q^{2j-1})
//! ```

pub mod numeric;

use crate::report::Check;
use crate::ring::coeff::{Coeff, GaussRat};
use crate::ring::poly::{GenTable, GradedPoly};
use crate::ring::qseries::QSeries;
use crate::ring::univar;
use crate::ring::RingError;
use num::{BigRational, One, Zero};
use std::sync::Arc;
use std::time::Instant;

/// The four Jacobi theta functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaId {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

/// The level-2 modular forms built from fourth powers of theta constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModularFormId {
    Delta1,
    Epsilon1,
    Delta2,
    Epsilon2,
}

/// q-series whose coefficients are truncated Taylor polynomials in z = pi*v.
///
/// theta's coefficient polynomials are odd in z; theta1..theta3's are even.
/// q-exponents of theta and theta1 lie in 1/8 + Z>=0, of theta2 and theta3
/// in (1/2) Z>=0.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaTaylorSeries {
    pub series: QSeries<GradedPoly<BigRational>>,
    /// Maximum retained power of z.
    pub taylor_bound: u32,
}

fn z_table() -> Arc<GenTable> {
    GenTable::new(vec![("z".into(), 2)])
}

/// Triple product part (no prefactor): prod over j of
/// (1-q^j) * (1 + sign*2cos(2z) q^{j-h} + q^{2j-2h}) with h = 0 or 1/2,
/// assembled over an arbitrary table with `gen` playing the role of z.
pub(crate) fn triple_product(
    table: &Arc<GenTable>,
    bound: u32,
    gen: usize,
    q8: u32,
    sign: i64,
    half_shift: bool,
) -> QSeries<GradedPoly<BigRational>> {
    let one = GradedPoly::one(table.clone(), bound, &BigRational::zero());
    let cos2z = univar::cos_scaled(table, bound, gen, 2).scale_rat(2 * sign, 1);
    let mut out = QSeries::constant(q8, one.clone());
    let mut j = 1u32;
    loop {
        let e_int = 8 * j;
        let e_mid = if half_shift { 8 * j - 4 } else { 8 * j };
        if e_mid > q8 && e_int > q8 {
            break;
        }
        // (1 - q^j)
        if e_int <= q8 {
            let mut f = QSeries::constant(q8, one.clone());
            f.set(e_int, one.neg());
            out = out.mul(&f);
        }
        // (1 + sign*2cos(2z) q^{j-h} + q^{2(j-h)})
        if e_mid <= q8 {
            let mut f = QSeries::constant(q8, one.clone());
            f.set(e_mid, cos2z.clone());
            if 2 * e_mid <= q8 {
                f.accumulate(2 * e_mid, one.clone());
            }
            out = out.mul(&f);
        }
        j += 1;
    }
    out
}

/// Truncated product expansion of a theta function; exact rationals.
pub fn theta_qexp(id: ThetaId, taylor_bound: u32, q8: u32) -> ThetaTaylorSeries {
    let table = z_table();
    let bound = 2 * taylor_bound;
    let (sign, half_shift) = match id {
        ThetaId::Theta => (-1, false),
        ThetaId::Theta1 => (1, false),
        ThetaId::Theta2 => (-1, true),
        ThetaId::Theta3 => (1, true),
    };
    let mut series = triple_product(&table, bound, 0, q8, sign, half_shift);
    match id {
        ThetaId::Theta => {
            let pre = univar::sin(&table, bound, 0).scale_rat(2, 1);
            series = series.mul(&QSeries::monomial(q8, 1, pre));
        }
        ThetaId::Theta1 => {
            let pre = univar::cos(&table, bound, 0).scale_rat(2, 1);
            series = series.mul(&QSeries::monomial(q8, 1, pre));
        }
        _ => {}
    }
    ThetaTaylorSeries {
        series,
        taylor_bound,
    }
}

/// Theta constant theta_j(0, tau) as a scalar q-series (j = 1, 2, 3).
pub fn theta_const(id: ThetaId, q8: u32) -> QSeries<BigRational> {
    assert!(id != ThetaId::Theta, "theta(0, tau) vanishes identically");
    let t = theta_qexp(id, 0, q8);
    t.series.map(BigRational::zero(), |p| p.constant_term())
}

/// theta'(0, tau)/pi: termwise z-derivative of the product expansion at
/// z = 0, i.e. the coefficient of z^1 in each q-coefficient.
pub fn theta_prime_over_pi(q8: u32) -> QSeries<BigRational> {
    let t = theta_qexp(ThetaId::Theta, 1, q8);
    t.series
        .map(BigRational::zero(), |p| p.coefficient(&[1u16]))
}

/// Exact expansion of delta_1, epsilon_1, delta_2, epsilon_2 from fourth
/// powers of theta constants.
pub fn modular_form_qexp(id: ModularFormId, q8: u32) -> QSeries<BigRational> {
    let t1 = || theta_const(ThetaId::Theta1, q8).pow(4);
    let t2 = || theta_const(ThetaId::Theta2, q8).pow(4);
    let t3 = || theta_const(ThetaId::Theta3, q8).pow(4);
    match id {
        ModularFormId::Delta1 => t2().add(&t3()).scale_rat(1, 8),
        ModularFormId::Epsilon1 => t2().mul(&t3()).scale_rat(1, 16),
        ModularFormId::Delta2 => t1().add(&t3()).scale_rat(-1, 8),
        ModularFormId::Epsilon2 => t1().mul(&t3()).scale_rat(1, 16),
    }
}

/// theta'(0,tau) = pi theta1(0,tau) theta2(0,tau) theta3(0,tau), exactly as
/// q-series after dividing out pi.
pub fn verify_jacobi_identity(q8: u32) -> Check {
    let started = Instant::now();
    let lhs = theta_prime_over_pi(q8);
    let rhs = theta_const(ThetaId::Theta1, q8)
        .mul(&theta_const(ThetaId::Theta2, q8))
        .mul(&theta_const(ThetaId::Theta3, q8));
    let diff = lhs.sub(&rhs);
    let witness = diff
        .terms()
        .next()
        .map(|(e, c)| format!("q^{e}/8 coefficient differs by {c}"));
    Check::exact(
        "theta.jacobi_identity",
        "derivative series equals the product of the three theta constants",
        diff.is_zero(),
        witness,
    )
    .timed(started)
}

/// Exponent-wise phase of tau -> tau + 1 on an exact series: the coefficient
/// of q^{n/8} picks up e^{2 pi i n/8}. Defined over the Gaussian rationals,
/// hence only for series supported on even eighths.
pub fn t_transform(s: &QSeries<GaussRat>) -> Result<QSeries<GaussRat>, RingError> {
    let mut out = QSeries::zero(s.cutoff(), s.zero_coeff().clone());
    for (e, c) in s.terms() {
        let phase = match e % 8 {
            0 => GaussRat::from_i64(1, 0),
            2 => GaussRat::from_i64(0, 1),
            4 => GaussRat::from_i64(-1, 0),
            6 => GaussRat::from_i64(0, -1),
            _ => {
                return Err(RingError::Parse {
                    detail: format!(
                        "exponent {e}/8 needs a primitive eighth root of unity, \
                         not representable over the Gaussian rationals"
                    ),
                })
            }
        };
        out.set(*e, c.mul_ref(&phase));
    }
    Ok(out)
}

/// Lift a rational series into the Gaussian-rational domain.
pub fn to_gaussian(s: &QSeries<BigRational>) -> QSeries<GaussRat> {
    s.map(GaussRat::from_i64(0, 0), |c| {
        GaussRat::from_rational(c.clone())
    })
}

/// Integrality of the expansions: all coefficients past the stated constant
/// terms are integers.
pub fn verify_modular_integrality(q8: u32) -> Check {
    let started = Instant::now();
    let cases = [
        (ModularFormId::Delta1, BigRational::new(1.into(), 4.into())),
        (
            ModularFormId::Epsilon1,
            BigRational::new(1.into(), 16.into()),
        ),
        (
            ModularFormId::Delta2,
            BigRational::new((-1).into(), 8.into()),
        ),
        (ModularFormId::Epsilon2, BigRational::zero()),
    ];
    let mut witness = None;
    'outer: for (id, c0) in cases {
        let s = modular_form_qexp(id, q8);
        if s.coefficient(0) != c0 {
            witness = Some(format!("{id:?} constant term is {}", s.coefficient(0)));
            break;
        }
        for (e, c) in s.terms() {
            if *e > 0 && !c.denom().is_one() {
                witness = Some(format!("{id:?} coefficient at q^{e}/8 is {c}"));
                break 'outer;
            }
        }
    }
    Check::exact(
        "theta.modular_integrality",
        "delta/epsilon expansions have the stated constants and integral tails",
        witness.is_none(),
        witness,
    )
    .timed(started)
}

//! Complex double-precision theta evaluation and the numeric verification
//! of the S/T transformation laws.
//!
//! The S-laws carry branch-sensitive constants; we verify them in their
//! classical normalization with the principal square root of -i*tau:
//!
//! ```text
//! theta (v,-1/tau) = -i (-i tau)^{1/2} e^{i pi tau v^2} theta (tau v, tau)
//! theta1(v,-1/tau) =    (-i tau)^{1/2} e^{i pi tau v^2} theta2(tau v, tau)
//! theta2(v,-1/tau) =    (-i tau)^{1/2} e^{i pi tau v^2} theta1(tau v, tau)
//! theta3(v,-1/tau) =    (-i tau)^{1/2} e^{i pi tau v^2} theta3(tau v, tau)
//! ```
//!
//! Under T the integer-power factors are fixed while the q^{1/8} prefactor
//! contributes e^{i pi/4} to theta and theta1, and theta2 <-> theta3 swap.

use super::{ModularFormId, ThetaId};
use crate::report::Check;
use crate::ring::qseries::QSeries;
use num::complex::Complex64;
use num::{BigRational, ToPrimitive};
use std::f64::consts::PI;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("tau must lie in the upper half plane")]
    TauNotInUpperHalfPlane,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Product terms needed so the neglected tail is below double precision.
pub fn product_terms(tau: Complex64) -> usize {
    let abs_q = (-2.0 * PI * tau.im).exp();
    if abs_q <= 0.0 {
        return 24;
    }
    let j = (16.0 * std::f64::consts::LN_10 / -abs_q.ln()).ceil();
    (j.max(24.0) as usize).min(4000)
}

/// Complex value of the truncated theta product with `terms` factors.
pub fn numeric_theta(
    id: ThetaId,
    v: Complex64,
    tau: Complex64,
    terms: usize,
) -> Result<Complex64, NumericError> {
    if tau.im <= 0.0 {
        return Err(NumericError::TauNotInUpperHalfPlane);
    }
    let e_plus = (2.0 * PI * I * v).exp();
    let e_minus = 1.0 / e_plus;
    let q_pow = |x: f64| (2.0 * PI * I * tau * x).exp();
    let mut r = match id {
        ThetaId::Theta => 2.0 * q_pow(0.125) * (PI * v).sin(),
        ThetaId::Theta1 => 2.0 * q_pow(0.125) * (PI * v).cos(),
        _ => Complex64::new(1.0, 0.0),
    };
    for j in 1..=terms {
        let qj = q_pow(j as f64);
        let qh = q_pow(j as f64 - 0.5);
        r *= match id {
            ThetaId::Theta => (1.0 - qj) * (1.0 - e_plus * qj) * (1.0 - e_minus * qj),
            ThetaId::Theta1 => (1.0 - qj) * (1.0 + e_plus * qj) * (1.0 + e_minus * qj),
            ThetaId::Theta2 => (1.0 - qj) * (1.0 - e_plus * qh) * (1.0 - e_minus * qh),
            ThetaId::Theta3 => (1.0 - qj) * (1.0 + e_plus * qh) * (1.0 + e_minus * qh),
        };
    }
    Ok(r)
}

/// theta'(0, tau) = 2 pi q^{1/8} prod (1-q^j)^3.
pub fn numeric_theta_prime0(tau: Complex64, terms: usize) -> Result<Complex64, NumericError> {
    if tau.im <= 0.0 {
        return Err(NumericError::TauNotInUpperHalfPlane);
    }
    let mut r = 2.0 * PI * (2.0 * PI * I * tau / 8.0).exp();
    for j in 1..=terms {
        let qj = (2.0 * PI * I * tau * j as f64).exp();
        let f = 1.0 - qj;
        r *= f * f * f;
    }
    Ok(r)
}

/// Numeric value of a modular-form constant at tau.
pub fn numeric_modular_form(
    id: ModularFormId,
    tau: Complex64,
    terms: usize,
) -> Result<Complex64, NumericError> {
    let t1 = numeric_theta(ThetaId::Theta1, Complex64::new(0.0, 0.0), tau, terms)?.powu(4);
    let t2 = numeric_theta(ThetaId::Theta2, Complex64::new(0.0, 0.0), tau, terms)?.powu(4);
    let t3 = numeric_theta(ThetaId::Theta3, Complex64::new(0.0, 0.0), tau, terms)?.powu(4);
    Ok(match id {
        ModularFormId::Delta1 => (t2 + t3) / 8.0,
        ModularFormId::Epsilon1 => t2 * t3 / 16.0,
        ModularFormId::Delta2 => -(t1 + t3) / 8.0,
        ModularFormId::Epsilon2 => t1 * t3 / 16.0,
    })
}

/// Evaluate an exact rational q-series at a numeric q given by tau.
pub fn eval_qseries(s: &QSeries<BigRational>, tau: Complex64) -> Complex64 {
    let q8 = (2.0 * PI * I * tau / 8.0).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    for (e, c) in s.terms() {
        let cf = c.to_f64().expect("finite rational");
        acc += cf * q8.powu(*e);
    }
    acc
}

fn rel_residual(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm())
}

/// All eight S/T laws plus the two S-laws of the delta/epsilon pair at one
/// sample point. Failures become fail entries, not errors.
pub fn verify_transformation_laws(
    tau: Complex64,
    v: Complex64,
    tol: f64,
) -> Result<Vec<Check>, NumericError> {
    if tau.im <= 0.0 {
        return Err(NumericError::TauNotInUpperHalfPlane);
    }
    let started = Instant::now();
    let s_tau = -1.0 / tau;
    let terms = product_terms(tau)
        .max(product_terms(s_tau))
        .max(product_terms(tau + 1.0));
    let th = |id, v, t| numeric_theta(id, v, t, terms).expect("upper half plane");
    let phase_t = (I * PI / 4.0).exp();
    let pref = (-I * tau).sqrt() * (I * PI * tau * v * v).exp();
    let sample = format!("tau={tau}, v={v}");

    let mut checks = Vec::new();
    let mut push = |name: &str, lhs: Complex64, rhs: Complex64| {
        let c = Check::numeric(
            &format!("theta.law.{name}"),
            &format!("{name} at {sample}"),
            rel_residual(lhs, rhs),
            tol,
        );
        checks.push(c);
    };

    push(
        "T.theta",
        th(ThetaId::Theta, v, tau + 1.0),
        phase_t * th(ThetaId::Theta, v, tau),
    );
    push(
        "T.theta1",
        th(ThetaId::Theta1, v, tau + 1.0),
        phase_t * th(ThetaId::Theta1, v, tau),
    );
    push(
        "T.theta2",
        th(ThetaId::Theta2, v, tau + 1.0),
        th(ThetaId::Theta3, v, tau),
    );
    push(
        "T.theta3",
        th(ThetaId::Theta3, v, tau + 1.0),
        th(ThetaId::Theta2, v, tau),
    );
    push(
        "S.theta",
        th(ThetaId::Theta, v, s_tau),
        -I * pref * th(ThetaId::Theta, tau * v, tau),
    );
    push(
        "S.theta1",
        th(ThetaId::Theta1, v, s_tau),
        pref * th(ThetaId::Theta2, tau * v, tau),
    );
    push(
        "S.theta2",
        th(ThetaId::Theta2, v, s_tau),
        pref * th(ThetaId::Theta1, tau * v, tau),
    );
    push(
        "S.theta3",
        th(ThetaId::Theta3, v, s_tau),
        pref * th(ThetaId::Theta3, tau * v, tau),
    );

    let mf = |id, t| numeric_modular_form(id, t, terms).expect("upper half plane");
    push(
        "S.delta2",
        mf(ModularFormId::Delta2, s_tau),
        tau * tau * mf(ModularFormId::Delta1, tau),
    );
    push(
        "S.epsilon2",
        mf(ModularFormId::Epsilon2, s_tau),
        tau.powu(4) * mf(ModularFormId::Epsilon1, tau),
    );

    let elapsed = started.elapsed();
    for c in &mut checks {
        c.elapsed_ms = elapsed.as_millis();
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::theta_const;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta_vanishes_at_origin() {
        let v = numeric_theta(ThetaId::Theta, c(0.0, 0.0), c(0.3, 1.1), 60).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn truncation_tail_is_negligible() {
        let tau = c(0.0, 1.0);
        let a = numeric_theta(ThetaId::Theta3, c(0.0, 0.0), tau, 60).unwrap();
        let b = numeric_theta(ThetaId::Theta3, c(0.0, 0.0), tau, 120).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn theta1_real_positive_on_imaginary_axis() {
        let v = numeric_theta(ThetaId::Theta1, c(0.0, 0.0), c(0.0, 2.0), 80).unwrap();
        assert!(v.im.abs() < 1e-15 && v.re > 0.0);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(numeric_theta(ThetaId::Theta3, c(0.0, 0.0), c(0.0, -1.0), 10).is_err());
        assert!(verify_transformation_laws(c(0.0, -1.0), c(0.1, 0.0), 1e-8).is_err());
    }

    #[test]
    fn all_laws_pass_at_reference_sample() {
        let checks = verify_transformation_laws(c(0.37, 1.29), c(0.11, -0.05), 1e-8).unwrap();
        assert_eq!(checks.len(), 10);
        for ch in &checks {
            assert!(ch.passed(), "{} residual {:?}", ch.id, ch.error_max);
        }
    }

    #[test]
    fn delta_swap_on_the_imaginary_axis() {
        // delta_2(-1/tau) = tau^2 delta_1(tau) at tau = 1.5i
        let tau = c(0.0, 1.5);
        let terms = product_terms(tau);
        let lhs = numeric_modular_form(ModularFormId::Delta2, -1.0 / tau, terms).unwrap();
        let rhs = tau * tau * numeric_modular_form(ModularFormId::Delta1, tau, terms).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn exact_series_matches_numeric_evaluation() {
        // |q| <= 0.2 at these samples; agreement to 1e-10
        for tau in [c(0.0, 0.3), c(0.25, 0.28)] {
            let terms = product_terms(tau);
            for id in [ThetaId::Theta1, ThetaId::Theta2, ThetaId::Theta3] {
                let exact = eval_qseries(&theta_const(id, 280), tau);
                let num = numeric_theta(id, c(0.0, 0.0), tau, terms).unwrap();
                assert!(
                    (exact - num).norm() < 1e-10,
                    "{id:?} at {tau}: {}",
                    (exact - num).norm()
                );
            }
        }
    }
}

//! Numeric modularity of the top-degree coefficients: weight 4k+2 under
//! the index-2 congruence subgroups, plus the S-relation tying the two
//! series together.
//!
//! The top-degree coefficient is extracted from the analytic theta-quotient
//! product by averaging over scaled roots at the M-th roots of unity; with
//! root magnitudes ~0.1 and M = 64 the aliasing error is far below double
//! precision. The character of the forms is not pinned down, so the check
//! asserts |f(g tau)| = |c tau + d|^{4k+2} |f(tau)|, constancy of the
//! unimodular ratio across samples, and the exact S-relation with the 2^l
//! factor.

use crate::report::Check;
use crate::theta::numeric::{numeric_theta, numeric_theta_prime0, product_terms, NumericError};
use crate::theta::ThetaId;
use num::complex::Complex64;
use std::f64::consts::PI;
use std::time::Instant;

/// Integer matrices acting on the upper half plane.
#[derive(Debug, Clone, Copy)]
pub struct Mobius {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub name: &'static str,
}

impl Mobius {
    pub fn apply(&self, tau: Complex64) -> Complex64 {
        (self.a as f64 * tau + self.b as f64) / (self.c as f64 * tau + self.d as f64)
    }
    pub fn automorphy(&self, tau: Complex64) -> Complex64 {
        self.c as f64 * tau + self.d as f64
    }
}

/// Generators of the subgroup fixing the first series (lower-left entry
/// even): T and S T^2 S T.
pub const GAMMA_0_GENS: [Mobius; 2] = [
    Mobius {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
        name: "T",
    },
    Mobius {
        a: -1,
        b: -1,
        c: 2,
        d: 1,
        name: "ST2ST",
    },
];

/// Generators of the subgroup fixing the second series (upper-right entry
/// even): S T S and T^2 S T S.
pub const GAMMA_UPPER_0_GENS: [Mobius; 2] = [
    Mobius {
        a: -1,
        b: 0,
        c: 1,
        d: -1,
        name: "STS",
    },
    Mobius {
        a: 1,
        b: -2,
        c: 1,
        d: -1,
        name: "T2STS",
    },
];

const IDENTITY: Mobius = Mobius {
    a: 1,
    b: 0,
    c: 0,
    d: 1,
    name: "identity",
};

/// Numeric root data satisfying the first-Pontrjagin matching
/// sum x^2 = sum y^2.
pub struct NumericRoots {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub u: f64,
    pub l: u32,
    pub weight: u32, // 4k+2
}

impl NumericRoots {
    pub fn for_k(k: u32, l: u32) -> NumericRoots {
        let n = (4 * k + 2) as usize;
        // deterministic spread of magnitudes ~0.1
        let xs: Vec<f64> = (0..n).map(|j| 0.07 + 0.01 * (j as f64 % 7.0)).collect();
        let s2: f64 = xs.iter().map(|x| x * x).sum();
        let y = (s2 / l as f64).sqrt();
        NumericRoots {
            xs,
            ys: vec![y; l as usize],
            u: 0.06,
            l,
            weight: 4 * k + 2,
        }
    }
}

fn theta_quotient(
    which: u8,
    roots: &NumericRoots,
    scale: Complex64,
    tau: Complex64,
    terms: usize,
) -> Result<Complex64, NumericError> {
    let th = |id, v| numeric_theta(id, v, tau, terms);
    let tp = numeric_theta_prime0(tau, terms)?;
    let mut r = Complex64::new(1.0, 0.0);
    for &x in &roots.xs {
        let xs = scale * x;
        r *= xs * tp / th(ThetaId::Theta, xs)?;
    }
    let u = scale * roots.u;
    match which {
        1 => {
            for &y in &roots.ys {
                let ys = scale * y;
                r *= th(ThetaId::Theta1, ys)? / th(ThetaId::Theta1, Complex64::new(0.0, 0.0))?;
            }
            let t10 = th(ThetaId::Theta1, Complex64::new(0.0, 0.0))?;
            let t1u = th(ThetaId::Theta1, u)?;
            r *= (t10 / t1u).powu(2);
            r *= th(ThetaId::Theta3, u)? / th(ThetaId::Theta3, Complex64::new(0.0, 0.0))?;
            r *= th(ThetaId::Theta2, u)? / th(ThetaId::Theta2, Complex64::new(0.0, 0.0))?;
        }
        _ => {
            for &y in &roots.ys {
                let ys = scale * y;
                r *= th(ThetaId::Theta2, ys)? / th(ThetaId::Theta2, Complex64::new(0.0, 0.0))?;
            }
            let t20 = th(ThetaId::Theta2, Complex64::new(0.0, 0.0))?;
            let t2u = th(ThetaId::Theta2, u)?;
            r *= (t20 / t2u).powu(2);
            r *= th(ThetaId::Theta3, u)? / th(ThetaId::Theta3, Complex64::new(0.0, 0.0))?;
            r *= th(ThetaId::Theta1, u)? / th(ThetaId::Theta1, Complex64::new(0.0, 0.0))?;
        }
    }
    Ok(r)
}

/// Top-degree (weight 4k+2 in the roots) coefficient of the quotient
/// product, by discrete Fourier extraction over M scalings.
pub fn top_coefficient(
    which: u8,
    roots: &NumericRoots,
    tau: Complex64,
) -> Result<Complex64, NumericError> {
    if tau.im <= 0.0 {
        return Err(NumericError::TauNotInUpperHalfPlane);
    }
    let m = 64usize;
    let terms = product_terms(tau);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let ang = 2.0 * PI * j as f64 / m as f64;
        let w = Complex64::new(ang.cos(), ang.sin());
        let val = theta_quotient(which, roots, w, tau, terms)?;
        let back = Complex64::new(0.0, -(roots.weight as f64) * ang).exp();
        acc += val * back;
    }
    let mut out = acc / m as f64;
    if which == 1 {
        out *= (2.0f64).powi(roots.l as i32);
    }
    Ok(out)
}

/// Modularity and the S-relation at the given samples.
pub fn verify_modularity_numeric(
    k: u32,
    l: u32,
    taus: &[Complex64],
    tol: f64,
) -> Result<Vec<Check>, NumericError> {
    let started = Instant::now();
    let roots = NumericRoots::for_k(k, l);
    let weight = roots.weight as i32;
    let mut checks = Vec::new();

    for (which, gens, label) in [
        (1u8, &GAMMA_0_GENS, "first"),
        (2u8, &GAMMA_UPPER_0_GENS, "second"),
    ] {
        // identity sanity: ratio is exactly 1
        {
            let tau = taus[0];
            let f = top_coefficient(which, &roots, tau)?;
            let ratio = top_coefficient(which, &roots, IDENTITY.apply(tau))? / f;
            checks.push(Check::numeric(
                &format!("charforms.modularity.{label}.identity"),
                "identity element gives ratio exactly 1",
                (ratio - Complex64::new(1.0, 0.0)).norm(),
                tol.max(1e-12),
            ));
        }
        for g in gens.iter() {
            let mut ratios = Vec::new();
            let mut worst = 0.0f64;
            for &tau in taus {
                let f = top_coefficient(which, &roots, tau)?;
                let fg = top_coefficient(which, &roots, g.apply(tau))?;
                let j = g.automorphy(tau).powi(weight);
                let resid = ((fg.norm() / (j.norm() * f.norm())) - 1.0).abs();
                worst = worst.max(resid);
                ratios.push(fg / (j * f));
            }
            checks.push(Check::numeric(
                &format!("charforms.modularity.{label}.{}", g.name),
                &format!(
                    "|f(g tau)| = |c tau + d|^{weight} |f(tau)| for g = {} on the {label} series",
                    g.name
                ),
                worst,
                tol,
            ));
            let mut constancy = 0.0f64;
            for r in &ratios {
                constancy = constancy.max((r.norm() - 1.0).abs());
                constancy = constancy.max((r - ratios[0]).norm());
            }
            checks.push(Check::numeric(
                &format!("charforms.modularity.{label}.{}.character", g.name),
                "unimodular ratio constant across samples",
                constancy,
                tol,
            ));
        }
    }

    // S-relation: f1(-1/tau) = 2^l tau^{4k+2} f2(tau)
    let mut worst = 0.0f64;
    for &tau in taus {
        let lhs = top_coefficient(1, &roots, -1.0 / tau)?;
        let rhs = (2.0f64).powi(l as i32) * tau.powi(weight) * top_coefficient(2, &roots, tau)?;
        worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    checks.push(Check::numeric(
        "charforms.modularity.s_relation",
        "first series at -1/tau equals 2^l tau^{4k+2} times the second",
        worst,
        tol,
    ));

    let elapsed = started.elapsed();
    for c in &mut checks {
        c.elapsed_ms = elapsed.as_millis();
    }
    Ok(checks)
}

//! The theta-quotient route to the modular series and its exact comparison
//! with the bundle route, in explicit-root mode.
//!
//! Each bundle factor family equals a quotient of theta functions evaluated
//! at a root; with z = pi * root all coefficients stay rational:
//!
//! ```text
//! x theta'(0)/theta(x)            -> (z/sin z) * prod(1-q^n)^3 / P_-(z, q)
//! theta1(y)/theta1(0)             -> cos z * P_+(z, q) / prod(1+q^n)^2
//! theta2(u)/theta2(0)             -> H_-(z, q) / prod(1-q^{n-1/2})^2
//! theta3(u)/theta3(0)             -> H_+(z, q) / prod(1+q^{n-1/2})^2
//! ```
//!
//! where P_{+-} and H_{+-} are the triple products with the 2cos(2z)
//! middle factor at integer and half-integer powers. The bundle route is
//! carried over by the exponent scaling a = 2iz, i.e. a^alpha ->
//! (-4)^{|alpha|/2} z^alpha (total degrees are even throughout).

use super::{CharForm, CharQSeries, CharformError, Context, GeometrySpec, ThetaKind};
use crate::report::Check;
use crate::ring::poly::{GenTable, GradedPoly};
use crate::ring::qseries::QSeries;
use crate::ring::univar;
use crate::theta::triple_product;
use num::{BigInt, BigRational, Zero};
use std::sync::Arc;
use std::time::Instant;

/// Explicit-root context together with the z-side generator table.
pub struct ThetaRoute {
    pub ctx: Context,
    pub z_table: Arc<GenTable>,
    /// z generator index for each ambient generator (same order).
    pub bound: u32,
}

impl ThetaRoute {
    pub fn new(spec: GeometrySpec) -> Result<ThetaRoute, CharformError> {
        if spec.tm_explicit.is_none()
            || (!spec.v_equals_tm && spec.l > 0 && spec.v_explicit.is_none())
        {
            return Err(CharformError::NotExplicit);
        }
        let ctx = Context::new(spec)?;
        // mirror the ambient generators: x_j -> zx_j, y_v -> zy_v, c -> zu
        let gens: Vec<(String, u32)> = (0..ctx.table.len())
            .map(|i| (format!("z{}", ctx.table.name(i)), ctx.table.weight(i)))
            .collect();
        let z_table = GenTable::new(gens);
        let bound = ctx.bound;
        Ok(ThetaRoute {
            ctx,
            z_table,
            bound,
        })
    }

    fn zero(&self) -> CharForm {
        GradedPoly::zero(self.z_table.clone(), self.bound, BigRational::zero())
    }

    fn one(&self) -> CharForm {
        GradedPoly::one(self.z_table.clone(), self.bound, &BigRational::zero())
    }

    /// (1 +- q^{j - shift})^0->... scalar product series prod_j (1 + sign q^{j-h}).
    fn scalar_product(&self, q8: u32, sign: i64, half_shift: bool) -> QSeries<CharForm> {
        let one = self.one();
        let mut out = QSeries::constant(q8, one.clone());
        let mut j = 1u32;
        loop {
            let e = if half_shift { 8 * j - 4 } else { 8 * j };
            if e > q8 {
                break;
            }
            let mut f = QSeries::constant(q8, one.clone());
            f.set(e, if sign > 0 { one.clone() } else { one.neg() });
            out = out.mul(&f);
            j += 1;
        }
        out
    }

    /// x theta'(0,tau)/theta(x,tau) at z-generator `g`.
    fn factor_x(&self, g: usize, q8: u32) -> QSeries<CharForm> {
        // (z/sin z) = inverse of the unit sin(z)/z
        let sin_over_z = univar::sin(&self.z_table, self.bound + 2, g)
            .divide_by_generator(g)
            .expect("sin has the linear term")
            .truncate(self.bound);
        let z_over_sin = sin_over_z.series_inv().expect("unit");
        // prod (1-q^n)^3
        let cube = self.scalar_product(q8, -1, false).pow(3);
        // P_-(z, q) = prod (1-q^n)(1 - 2cos 2z q^n + q^{2n})
        let p_minus = triple_product(&self.z_table, self.bound, g, q8, -1, false);
        QSeries::constant(q8, z_over_sin)
            .mul(&cube)
            .mul(&p_minus.inv().expect("unit"))
    }

    /// theta1(v,tau)/theta1(0,tau) at z-generator `g`.
    fn factor_theta1_ratio(&self, g: usize, q8: u32) -> QSeries<CharForm> {
        let cosz = univar::cos(&self.z_table, self.bound, g);
        let p_plus = triple_product(&self.z_table, self.bound, g, q8, 1, false);
        let denom = self
            .scalar_product(q8, 1, false)
            .pow(2)
            .mul(&self.scalar_product(q8, -1, false));
        // p_plus includes prod(1-q^n); theta1(0) = prod(1-q^n)(1+q^n)^2
        QSeries::constant(q8, cosz)
            .mul(&p_plus)
            .mul(&denom.inv().expect("unit"))
    }

    /// theta2(v,tau)/theta2(0,tau) (sign -) or theta3 ratio (sign +) at `g`.
    fn factor_half_ratio(&self, g: usize, q8: u32, sign: i64) -> QSeries<CharForm> {
        let h = triple_product(&self.z_table, self.bound, g, q8, sign, true);
        let denom = self
            .scalar_product(q8, sign, true)
            .pow(2)
            .mul(&self.scalar_product(q8, -1, false));
        h.mul(&denom.inv().expect("unit"))
    }

    fn z_gen_of(&self, ambient_gen: usize) -> usize {
        ambient_gen // same ordering by construction
    }

    /// The theta-quotient product for the requested series, as a full form
    /// over the z generators (not top-degree extracted).
    pub fn integrand(&self, which: ThetaKind, qhalf: u32) -> CharQSeries {
        let q8 = 4 * qhalf;
        let mut out = QSeries::constant(q8, self.one());
        // x-factors over the TM roots
        for &g in &self.ctx.tm_roots {
            out = out.mul(&self.factor_x(self.z_gen_of(g), q8));
        }
        // V factors
        for &g in &self.ctx.v_roots {
            let f = match which {
                ThetaKind::First => self.factor_theta1_ratio(self.z_gen_of(g), q8),
                ThetaKind::Second => self.factor_half_ratio(self.z_gen_of(g), q8, -1),
            };
            out = out.mul(&f);
        }
        if self.ctx.spec.v_equals_tm {
            for &g in &self.ctx.tm_roots {
                let f = match which {
                    ThetaKind::First => self.factor_theta1_ratio(self.z_gen_of(g), q8),
                    ThetaKind::Second => self.factor_half_ratio(self.z_gen_of(g), q8, -1),
                };
                out = out.mul(&f);
            }
        }
        // xi factors at u
        if !self.ctx.spec.xi_trivial {
            let gu = self.z_gen_of(self.ctx.table.index_of("c").expect("c generator"));
            match which {
                ThetaKind::First => {
                    // theta1^2(0)/theta1^2(u) * theta3(u)/theta3(0) * theta2(u)/theta2(0)
                    let t1 = self.factor_theta1_ratio(gu, q8);
                    out = out.mul(&t1.mul(&t1).inv().expect("unit"));
                    out = out.mul(&self.factor_half_ratio(gu, q8, 1));
                    out = out.mul(&self.factor_half_ratio(gu, q8, -1));
                }
                ThetaKind::Second => {
                    // theta2^2(0)/theta2^2(u) * theta3(u)/theta3(0) * theta1(u)/theta1(0)
                    let t2 = self.factor_half_ratio(gu, q8, -1);
                    out = out.mul(&t2.mul(&t2).inv().expect("unit"));
                    out = out.mul(&self.factor_half_ratio(gu, q8, 1));
                    out = out.mul(&self.factor_theta1_ratio(gu, q8));
                }
            }
        }
        // overall 2^l for the first kind
        if let ThetaKind::First = which {
            let two_l = BigRational::from(BigInt::from(2).pow(self.ctx.spec.l));
            out = out.scale(&GradedPoly::constant(
                self.z_table.clone(),
                self.bound,
                two_l,
            ));
        }
        out
    }

    /// Top-degree components of the theta-quotient product per q-power,
    /// in the z variables.
    pub fn p_series_z(&self, which: ThetaKind, qhalf: u32) -> CharQSeries {
        let dim = self.ctx.spec.dim();
        self.integrand(which, qhalf)
            .map(self.zero(), |p| p.weight_component(dim))
    }

    /// Carry a bundle-route form into the z ring: a^alpha ->
    /// (-4)^{|alpha|/2} z^alpha. Odd total degree would make the scaling
    /// irrational; it cannot occur for the even integrands handled here.
    pub fn to_z_ring(&self, p: &CharForm) -> Result<CharForm, String> {
        let mut terms: Vec<(Vec<u16>, BigRational)> = Vec::new();
        for (exps, c) in p.terms() {
            let total: u32 = exps.iter().map(|e| *e as u32).sum();
            if !total.is_multiple_of(2) {
                return Err(format!("odd total degree {total} in {exps:?}"));
            }
            let scale = BigRational::from(BigInt::from(-4).pow(total / 2));
            terms.push((exps.clone(), c * scale));
        }
        Ok(GradedPoly::from_terms(
            self.z_table.clone(),
            self.bound,
            BigRational::zero(),
            terms,
        ))
    }
}

/// Exact comparison of the bundle route against the theta-quotient route,
/// coefficient by coefficient on the full forms.
pub fn verify_prop_cross_route(spec: GeometrySpec, qhalf: u32) -> Check {
    let started = Instant::now();
    let route = match ThetaRoute::new(spec) {
        Ok(r) => r,
        Err(e) => {
            return Check::exact(
                "charforms.cross_route",
                "bundle route equals theta-quotient route",
                false,
                Some(e.to_string()),
            )
            .timed(started)
        }
    };
    let mut witness = None;
    for which in [ThetaKind::First, ThetaKind::Second] {
        let bundle = route.ctx.p_integrand(which, qhalf);
        let theta = route.integrand(which, qhalf);
        let mut mapped = QSeries::zero(theta.cutoff(), route.zero());
        for (e, p) in bundle.terms() {
            match route.to_z_ring(p) {
                Ok(z) => mapped.set(*e, z),
                Err(w) => {
                    witness = Some(format!("{which:?}: {w}"));
                    continue;
                }
            }
        }
        if witness.is_none() && mapped != theta {
            let diff = mapped.sub(&theta);
            let at = diff.terms().next().map(|(e, _)| *e).unwrap_or(0);
            witness = Some(format!("{which:?}: first mismatch at q-exponent {at}/8"));
        }
        if witness.is_some() {
            break;
        }
    }
    Check::exact(
        "charforms.cross_route",
        "bundle route equals theta-quotient route under a = 2iz",
        witness.is_none(),
        witness,
    )
    .timed(started)
}

//! Localized form identities: the ambient dimension-(8k+4) engine under
//! the substitution TM|_B = TB + N, xi|_B = N.
//!
//! The substitution map sends ps_x[2m] to ps_b[2m] + e^{2m} and c to e; it
//! is weight-preserving, so it commutes with taking weight components. The
//! localized identity divides by 2 sinh(e/2): the bracket vanishes at
//! e = 0, the quotient by the generator is exact, and the remaining unit
//! is inverted in the truncated ring.

use crate::cancel::{build_extraction_table, CancelError};
use crate::charforms::{CharForm, Context, Family, GeometrySpec, ThetaKind};
use crate::report::Check;
use crate::ring::poly::{GenTable, GradedPoly};
use crate::ring::univar;
use num::{BigInt, BigRational, Zero};
use std::sync::Arc;
use std::time::Instant;

/// Target ring of the localization: TB power sums (free up to weight) and
/// the Euler form e of the normal bundle.
pub struct LocalizedSpec {
    pub k: u32,
    pub bound: u32,
    pub table: Arc<GenTable>,
}

impl LocalizedSpec {
    /// dim B = 8k+2; the default bound is dim B, a larger bound is used by
    /// the ambient-consistency route.
    pub fn new(k: u32, bound: u32) -> LocalizedSpec {
        let mut gens: Vec<(String, u32)> = Vec::new();
        for m in 1..=(bound / 4) {
            gens.push((format!("ps_b{}", 2 * m), 4 * m));
        }
        gens.push(("e".into(), 2));
        LocalizedSpec {
            k,
            bound,
            table: GenTable::new(gens),
        }
    }

    pub fn dim_b(&self) -> u32 {
        8 * self.k + 2
    }

    pub fn zero(&self) -> CharForm {
        CharForm::zero(self.table.clone(), self.bound, BigRational::zero())
    }

    pub fn one(&self) -> CharForm {
        CharForm::one(self.table.clone(), self.bound, &BigRational::zero())
    }

    pub fn e_gen(&self) -> usize {
        self.table.index_of("e").expect("Euler generator")
    }

    pub fn e_form(&self) -> CharForm {
        CharForm::generator(
            self.table.clone(),
            self.bound,
            self.e_gen(),
            &BigRational::zero(),
        )
    }

    fn ps_b(&self, m: u32) -> CharForm {
        match self.table.index_of(&format!("ps_b{}", 2 * m)) {
            Some(i) => CharForm::generator(self.table.clone(), self.bound, i, &BigRational::zero()),
            None => self.zero(), // weight exceeds the bound
        }
    }

    /// A-hat form of TB from the free TB power sums.
    pub fn ahat_tb(&self) -> CharForm {
        let coeffs = univar::log_ahat_coeffs(self.bound / 4);
        let mut acc = self.zero();
        for (m, c) in coeffs.iter().enumerate() {
            if !num::Zero::is_zero(c) {
                acc = acc.add(&self.ps_b(m as u32 + 1).scale(c));
            }
        }
        acc.series_exp().expect("zero constant")
    }

    /// L-hat form of TB; constant 2^{4k+1} from the root count of TB.
    pub fn lhat_tb(&self) -> CharForm {
        let coeffs = univar::log_lhat_coeffs(self.bound / 4);
        let mut acc = self.zero();
        for (m, c) in coeffs.iter().enumerate() {
            if !num::Zero::is_zero(c) {
                acc = acc.add(&self.ps_b(m as u32 + 1).scale(c));
            }
        }
        let body = acc.series_exp().expect("zero constant");
        body.scale(&BigRational::from(BigInt::from(2).pow(4 * self.k + 1)))
    }
}

/// Image of an ambient form under ps_x[2m] -> ps_b[2m] + e^{2m}, c -> e.
/// The ambient context must be in tangent mode (its table carries only
/// ps_x generators and optionally c).
pub fn localize_form(f: &CharForm, ambient: &Context, target: &LocalizedSpec) -> CharForm {
    let e = target.e_form();
    let images: Vec<CharForm> = (0..ambient.table.len())
        .map(|i| {
            let name = ambient.table.name(i);
            if name == "c" {
                e.clone()
            } else if let Some(rest) = name.strip_prefix("ps_x") {
                let two_m: u32 = rest.parse().expect("power-sum generator name");
                target.ps_b(two_m / 2).add(&e.pow(two_m))
            } else {
                panic!("ambient generator {name} has no localized image");
            }
        })
        .collect();
    f.substitute(&images)
}

fn localized_ch_b(
    k: u32,
    xi_trivial: bool,
    target: &LocalizedSpec,
    qhalf: u32,
) -> Result<Vec<CharForm>, CancelError> {
    let mut spec = GeometrySpec::tangent(k, Family::EightKPlusFour);
    spec.xi_trivial = xi_trivial;
    let ctx = Context::new(spec)?;
    let table = build_extraction_table(k, Family::EightKPlusFour)?;
    let ch_theta2 = ctx.ch_theta(ThetaKind::Second, qhalf);
    let full_forms = table.combine_rows(&ctx, &ch_theta2);
    Ok(full_forms
        .iter()
        .map(|f| localize_form(f, &ctx, target))
        .collect())
}

/// Both sides of the localized cancellation identity; only the top-weight
/// (8k+2) equality is asserted, lower weights are compared informationally.
pub struct LocalizedComparison {
    pub check: Check,
    /// (weight, sides agree) for every even weight below the top.
    pub lower_weights: Vec<(u32, bool)>,
}

/// The localized identity at dimension 8k+2. The target ring keeps one
/// weight step above dim B: the exact division by the Euler generator
/// pulls the top component of the quotient from the bracket one step up.
pub fn verify_localized_identity(k: u32, qhalf: u32) -> Result<LocalizedComparison, CancelError> {
    let started = Instant::now();
    let target = LocalizedSpec::new(k, 8 * k + 4);
    let (lhs, rhs) = localized_sides(k, qhalf, &target)?;

    let dim_b = target.dim_b();
    let top_ok = lhs.weight_component(dim_b) == rhs.weight_component(dim_b);
    let mut lower = Vec::new();
    for w in (0..dim_b).step_by(2) {
        lower.push((w, lhs.weight_component(w) == rhs.weight_component(w)));
    }
    let check = Check::exact(
        "localize.identity",
        &format!("localized cancellation at dim B = {dim_b}"),
        top_ok,
        if top_ok {
            None
        } else {
            Some("top-weight components differ".to_string())
        },
    )
    .timed(started);
    Ok(LocalizedComparison {
        check,
        lower_weights: lower,
    })
}

/// Shared assembly of the two sides over the given target ring.
pub fn localized_sides(
    k: u32,
    qhalf: u32,
    target: &LocalizedSpec,
) -> Result<(CharForm, CharForm), CancelError> {
    let e_gen = target.e_gen();
    let bound = target.bound;

    // LHS: (1/8) L-hat(TB) sinh(e/2)/cosh(e/2)
    let sinh_half = univar::two_sinh_half(&target.table, bound, e_gen).scale_rat(1, 2);
    let cosh_half = univar::cosh_half(&target.table, bound, e_gen);
    let lhs = target
        .lhat_tb()
        .mul(&sinh_half)
        .mul(&cosh_half.series_inv().expect("unit"))
        .scale_rat(1, 8);

    // RHS: sum_r 2^{6k-6r} A-hat(TB) [ch b_r(triv) - cosh(e/2) ch b_r(tw)] / (2 sinh(e/2))
    let chb_triv = localized_ch_b(k, true, target, qhalf)?;
    let chb_tw = localized_ch_b(k, false, target, qhalf)?;
    let ahat_tb = target.ahat_tb();
    // 2 sinh(e/2) = e * unit
    let unit = univar::two_sinh_half(&target.table, bound + 2, e_gen)
        .divide_by_generator(e_gen)
        .expect("odd series")
        .truncate(bound);
    let unit_inv = unit.series_inv().expect("unit");
    let mut rhs = target.zero();
    for r in 0..=(k as usize) {
        let bracket = chb_triv[r].sub(&cosh_half.mul(&chb_tw[r]));
        // the bracket must vanish at e = 0 before dividing
        let at_e0: Vec<_> = bracket
            .terms()
            .filter(|(exps, _)| exps[e_gen] == 0)
            .collect();
        if !at_e0.is_empty() {
            return Err(CancelError::NotIntegral {
                detail: format!("bracket r={r} does not vanish at e = 0"),
            });
        }
        let quotient = bracket.divide_by_generator(e_gen).expect("checked at e=0");
        let coeff = BigRational::from(BigInt::from(2).pow(6 * k - 6 * r as u32));
        rhs = rhs.add(&ahat_tb.mul(&quotient).mul(&unit_inv).scale(&coeff));
    }
    Ok((lhs, rhs))
}

/// The hyperbolic quotient identity: cosh(e/2)/sinh(e/2) * (e^e + e^{-e} - 2)
/// equals 2 sinh(e), exactly to the configured Taylor order.
pub fn verify_hyperbolic_identity(taylor_order: u32) -> Check {
    let started = Instant::now();
    let table = GenTable::new(vec![("e".into(), 2)]);
    let bound = 2 * taylor_order;
    let e_gen = 0usize;
    let twist = univar::two_cosh_scaled(&table, bound, e_gen, 1).sub(&GradedPoly::constant(
        table.clone(),
        bound,
        BigRational::from(BigInt::from(2)),
    ));
    let cosh_half = univar::cosh_half(&table, bound, e_gen);
    // divide cosh(e/2)*(e^e+e^{-e}-2) by sinh(e/2) = e * (unit/2)... the
    // numerator carries e^2, one factor clears the generator
    let numerator = cosh_half.mul(&twist);
    let unit = univar::two_sinh_half(&table, bound + 2, e_gen)
        .divide_by_generator(e_gen)
        .expect("odd series")
        .truncate(bound);
    let lhs = numerator
        .divide_by_generator(e_gen)
        .expect("twist vanishes doubly at e = 0")
        .mul(&unit.series_inv().expect("unit"))
        .scale_rat(2, 1);
    let rhs = univar::two_sinh(&table, bound, e_gen);
    let diff = lhs.sub(&rhs);
    // parity: both sides odd under e -> -e
    let parity_ok = lhs.terms().all(|(exps, _)| exps[0] % 2 == 1)
        && rhs.terms().all(|(exps, _)| exps[0] % 2 == 1);
    let ok = diff.is_zero() && parity_ok;
    Check::exact(
        "localize.hyperbolic_identity",
        "cosh(e/2)/sinh(e/2) (e^e + e^{-e} - 2) = 2 sinh(e)",
        ok,
        if ok { None } else { Some(format!("{diff:?}")) },
    )
    .timed(started)
}

//! Chern-root characteristic-form calculus in power-sum coordinates.
//!
//! Curvature eigenvalue pairs +-2*pi*i*x are absorbed into real generators
//! a = 2*pi*i*x, so the per-root factors are (a/2)/sinh(a/2) for the A-hat
//! form, a/tanh(a/2) for the L-hat form, 2cosh(y/2) for the half
//! determinant, and e^c + e^{-c} for the rank-two twist. Every factor is
//! even in each root, so all dependence on the tangent and auxiliary
//! bundles is carried by the even power sums ps_x[2m] (weight 4m) and
//! ps_y[2m]; equality in the abstract ring implies the identity for all
//! bundles.

pub mod modularity;
pub mod theta_route;

use crate::ring::poly::{GenTable, GradedPoly};
use crate::ring::qseries::QSeries;
use crate::ring::univar;
use num::{BigInt, BigRational, One, Zero};
use std::sync::Arc;
use thiserror::Error;

pub type CharForm = GradedPoly<BigRational>;
pub type CharQSeries = QSeries<CharForm>;

#[derive(Debug, Error)]
pub enum CharformError {
    #[error("V = TM requires rank 2l = dim, got l = {l} at dim {dim}")]
    RankMismatch { l: u32, dim: u32 },
    #[error("the 8k family needs k >= 1")]
    DegenerateDimension,
    #[error("operation requires the first Pontrjagin identification")]
    P1NotIdentified,
    #[error("operation requires explicit-root mode")]
    NotExplicit,
}

/// Which dimension family the geometry lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// dim = 8k + 4
    EightKPlusFour,
    /// dim = 8k
    EightK,
}

/// Geometric shape of a verification run: dimension family, V rank, the
/// triviality/identification switches, and whether roots are kept as
/// explicit symbols (small brute-force configurations) or compressed into
/// power sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometrySpec {
    pub k: u32,
    pub family: Family,
    /// Half-rank of V.
    pub l: u32,
    /// xi = R^2 with c = 0.
    pub xi_trivial: bool,
    /// V = TM with the induced connection; aliases the V power sums.
    pub v_equals_tm: bool,
    /// Impose ps_y[2] := ps_x[2] by generator elimination.
    pub p1_identified: bool,
    /// Number of explicit nonzero TM root pairs (None: power-sum mode).
    pub tm_explicit: Option<u32>,
    /// Number of explicit nonzero V root pairs (None: power-sum mode).
    pub v_explicit: Option<u32>,
}

impl GeometrySpec {
    /// Power-sum mode spec with general xi.
    pub fn new(k: u32, family: Family, l: u32) -> Self {
        GeometrySpec {
            k,
            family,
            l,
            xi_trivial: false,
            v_equals_tm: false,
            p1_identified: false,
            tm_explicit: None,
            v_explicit: None,
        }
    }

    pub fn with_xi_trivial(mut self) -> Self {
        self.xi_trivial = true;
        self
    }

    pub fn with_p1_identified(mut self) -> Self {
        self.p1_identified = true;
        self
    }

    /// V = TM; forces 2l = dim.
    pub fn tangent(k: u32, family: Family) -> Self {
        let mut s = GeometrySpec::new(k, family, 0);
        s.l = s.dim() / 2;
        s.v_equals_tm = true;
        s.p1_identified = true;
        s
    }

    pub fn dim(&self) -> u32 {
        match self.family {
            Family::EightKPlusFour => 8 * self.k + 4,
            Family::EightK => 8 * self.k,
        }
    }

    /// Number of TM root pairs (dim/2).
    pub fn tm_pairs(&self) -> u32 {
        self.dim() / 2
    }

    pub fn validate(&self) -> Result<(), CharformError> {
        if self.dim() == 0 {
            return Err(CharformError::DegenerateDimension);
        }
        if self.v_equals_tm && 2 * self.l != self.dim() {
            return Err(CharformError::RankMismatch {
                l: self.l,
                dim: self.dim(),
            });
        }
        Ok(())
    }
}

/// A geometry spec with its generator table and cached power sums; all
/// characteristic forms of one verification run are built through this.
pub struct Context {
    pub spec: GeometrySpec,
    pub table: Arc<GenTable>,
    /// Truncation bound, the manifold dimension.
    pub bound: u32,
    /// ps_x[2m] as ring elements, index m-1, for 1 <= m <= dim/4.
    tm_power_sums: Vec<CharForm>,
    /// ps_y[2m] as ring elements (aliased / Newton-completed), same indexing.
    v_power_sums: Vec<CharForm>,
    /// The Euler form generator c, or zero when xi is trivial.
    c_form: CharForm,
    /// Explicit TM root generators (explicit mode only).
    pub tm_roots: Vec<usize>,
    /// Explicit V root generators (explicit mode only).
    pub v_roots: Vec<usize>,
}

impl Context {
    pub fn new(spec: GeometrySpec) -> Result<Context, CharformError> {
        spec.validate()?;
        let dim = spec.dim();
        let max_m = dim / 4; // highest power sum weight 4m <= dim

        let mut gens: Vec<(String, u32)> = Vec::new();
        let mut tm_roots = Vec::new();
        let mut v_roots = Vec::new();

        match spec.tm_explicit {
            Some(n) => {
                for j in 1..=n {
                    tm_roots.push(gens.len());
                    gens.push((format!("x{j}"), 2));
                }
            }
            None => {
                for m in 1..=max_m {
                    gens.push((format!("ps_x{}", 2 * m), 4 * m));
                }
            }
        }
        if !spec.v_equals_tm && spec.l > 0 {
            match spec.v_explicit {
                Some(n) => {
                    for v in 1..=n {
                        v_roots.push(gens.len());
                        gens.push((format!("y{v}"), 2));
                    }
                }
                None => {
                    for m in 1..=max_m.min(spec.l) {
                        if m == 1 && spec.p1_identified {
                            continue; // eliminated: ps_y2 := ps_x2
                        }
                        gens.push((format!("ps_y{}", 2 * m), 4 * m));
                    }
                }
            }
        }
        if !spec.xi_trivial {
            gens.push(("c".into(), 2));
        }

        let table = GenTable::new(gens);
        let zero = CharForm::zero(table.clone(), dim, BigRational::zero());

        let gen_by_name = |name: &str| {
            CharForm::generator(
                table.clone(),
                dim,
                table.index_of(name).expect("generator present"),
                &BigRational::zero(),
            )
        };

        // TM power sums
        let tm_power_sums: Vec<CharForm> = if spec.tm_explicit.is_some() {
            (1..=max_m)
                .map(|m| explicit_power_sum(&table, dim, &tm_roots, 2 * m))
                .collect()
        } else {
            (1..=max_m)
                .map(|m| gen_by_name(&format!("ps_x{}", 2 * m)))
                .collect()
        };

        // V power sums: aliased to TM, explicit, or generators completed by
        // Newton's identities above the free range m <= l.
        let v_power_sums: Vec<CharForm> = if spec.v_equals_tm {
            tm_power_sums.clone()
        } else if spec.l == 0 {
            vec![zero.clone(); max_m as usize]
        } else if spec.v_explicit.is_some() {
            (1..=max_m)
                .map(|m| explicit_power_sum(&table, dim, &v_roots, 2 * m))
                .collect()
        } else {
            let free: Vec<CharForm> = (1..=max_m.min(spec.l))
                .map(|m| {
                    if m == 1 && spec.p1_identified {
                        tm_power_sums[0].clone()
                    } else {
                        gen_by_name(&format!("ps_y{}", 2 * m))
                    }
                })
                .collect();
            newton_complete(&table, dim, spec.l, &free, max_m)
        };

        let c_form = if spec.xi_trivial {
            zero
        } else {
            gen_by_name("c")
        };

        Ok(Context {
            spec,
            table,
            bound: dim,
            tm_power_sums,
            v_power_sums,
            c_form,
            tm_roots,
            v_roots,
        })
    }

    pub fn zero(&self) -> CharForm {
        CharForm::zero(self.table.clone(), self.bound, BigRational::zero())
    }

    pub fn one(&self) -> CharForm {
        CharForm::one(self.table.clone(), self.bound, &BigRational::zero())
    }

    pub fn constant(&self, c: BigRational) -> CharForm {
        CharForm::constant(self.table.clone(), self.bound, c)
    }

    pub fn c_form(&self) -> &CharForm {
        &self.c_form
    }

    /// Power sum of the TM roots: sum_j a_j^{2m}.
    pub fn tm_power_sum(&self, m: u32) -> &CharForm {
        &self.tm_power_sums[(m - 1) as usize]
    }

    pub fn v_power_sum(&self, m: u32) -> &CharForm {
        &self.v_power_sums[(m - 1) as usize]
    }

    fn max_m(&self) -> u32 {
        self.bound / 4
    }

    /// exp of sum_m coeffs[m-1] * ps[2m] for the given power-sum family.
    fn exp_power_sum_combination(&self, coeffs: &[BigRational], sums: &[CharForm]) -> CharForm {
        let mut acc = self.zero();
        for (m, c) in coeffs.iter().enumerate() {
            if !num::Zero::is_zero(c) {
                acc = acc.add(&sums[m].scale(c));
            }
        }
        acc.series_exp().expect("zero constant term")
    }

    /// A-hat form of TM: product over roots of (a/2)/sinh(a/2).
    pub fn ahat(&self) -> CharForm {
        self.exp_power_sum_combination(&univar::log_ahat_coeffs(self.max_m()), &self.tm_power_sums)
    }

    /// L-hat form of TM: product over roots of a/tanh(a/2); the per-root
    /// constant 2 puts 2^{dim/2} in front.
    pub fn lhat(&self) -> CharForm {
        let body = self
            .exp_power_sum_combination(&univar::log_lhat_coeffs(self.max_m()), &self.tm_power_sums);
        body.scale(&pow2(self.spec.tm_pairs() as i64))
    }

    /// det^{1/2}(2 cosh) of V: product over V roots of 2cosh(y/2), constant
    /// term 2^l.
    pub fn dethalf_2cosh(&self) -> CharForm {
        let body = self.exp_power_sum_combination(
            &univar::log_cosh_half_coeffs(self.max_m()),
            &self.v_power_sums,
        );
        body.scale(&pow2(self.spec.l as i64))
    }

    /// cosh(c/2) as a univariate series in the Euler form (1 when trivial).
    pub fn cosh_half_c(&self) -> CharForm {
        match self.table.index_of("c") {
            Some(i) => univar::cosh_half(&self.table, self.bound, i),
            None => self.one(),
        }
    }

    /// e^{dc} + e^{-dc} (2 when xi is trivial).
    pub fn two_cosh_c_scaled(&self, d: i64) -> CharForm {
        match self.table.index_of("c") {
            Some(i) => univar::two_cosh_scaled(&self.table, self.bound, i, d),
            None => self.constant(BigRational::from(BigInt::from(2))),
        }
    }

    /// ch of the rank-reduced twist: N_d(xi~) = e^{dc} + e^{-dc} - 2.
    pub fn n_xi(&self, d: i64) -> CharForm {
        self.two_cosh_c_scaled(d)
            .sub(&self.constant(BigRational::from(BigInt::from(2))))
    }

    /// Rank-reduced Adams character of TM: N_d(TM~) = sum_j (e^{d a_j} +
    /// e^{-d a_j}) - dim = sum_m 2 d^{2m}/(2m)! ps_x[2m].
    pub fn n_tm(&self, d: i64) -> CharForm {
        self.adams_reduced(d, &self.tm_power_sums)
    }

    /// Same for V: N_d(V~) with rank 2l subtracted.
    pub fn n_v(&self, d: i64) -> CharForm {
        self.adams_reduced(d, &self.v_power_sums)
    }

    fn adams_reduced(&self, d: i64, sums: &[CharForm]) -> CharForm {
        let mut acc = self.zero();
        let mut fact = BigInt::one(); // (2m)!
        let mut dpow = BigInt::one(); // d^{2m}
        for m in 1..=self.max_m() {
            fact *= BigInt::from(2 * m - 1) * BigInt::from(2 * m);
            dpow *= BigInt::from(d) * BigInt::from(d);
            let c = BigRational::new(BigInt::from(2) * &dpow, fact.clone());
            acc = acc.add(&sums[(m - 1) as usize].scale(&c));
        }
        acc
    }

    /// ch(T_C M) = dim + N_1(TM~).
    pub fn ch_tm(&self) -> CharForm {
        self.n_tm(1)
            .add(&self.constant(BigRational::from(BigInt::from(self.spec.dim() as i64))))
    }

    /// ch(V_C) = 2l + N_1(V~).
    pub fn ch_v(&self) -> CharForm {
        self.n_v(1)
            .add(&self.constant(BigRational::from(BigInt::from(2 * self.spec.l as i64))))
    }

    /// Chern character q-series of the twisted series bundle.
    ///
    /// Assembled as exp of the logarithmic sum of the factor families:
    /// symmetric powers of TM~ at integer q-powers for both series; for the
    /// first series exterior powers of V~ - 2 xi~ at integer powers and the
    /// two half-shifted xi~ families with opposite signs; for the second
    /// series exterior powers of V~ - 2 xi~ at half-integer powers and xi~
    /// families at positive half-integer and integer powers.
    pub fn ch_theta(&self, which: ThetaKind, qhalf: u32) -> CharQSeries {
        let q8 = 4 * qhalf;
        let mut log = QSeries::zero(q8, self.zero());

        // S_{q^n}(TM~) family: + sum_{n,d} q^{nd} N_d(TM~)/d
        for d in 1..=(q8 / 8) {
            let nd = self.n_tm(d as i64);
            if nd.is_zero() {
                continue;
            }
            let scaled = nd.scale_rat(1, d as i64);
            let mut n = 1;
            while 8 * n * d <= q8 {
                log.accumulate(8 * n * d, scaled.clone());
                n += 1;
            }
        }

        // V~ - 2 xi~ exterior family
        for d in 1..=(q8 / 4) {
            let nd = self.n_v(d as i64).sub(&self.n_xi(d as i64).scale_rat(2, 1));
            if nd.is_zero() {
                continue;
            }
            match which {
                ThetaKind::First => {
                    // Lambda_{q^m}: + sum (-1)^{d-1} q^{md} N_d / d
                    let sign = if d % 2 == 1 { 1 } else { -1 };
                    let scaled = nd.scale_rat(sign, d as i64);
                    let mut m = 1;
                    while 8 * m * d <= q8 {
                        log.accumulate(8 * m * d, scaled.clone());
                        m += 1;
                    }
                }
                ThetaKind::Second => {
                    // Lambda_{-q^{m-1/2}}: - sum q^{d(m-1/2)} N_d / d
                    let scaled = nd.scale_rat(-1, d as i64);
                    let mut m = 1;
                    while 4 * d * (2 * m - 1) <= q8 {
                        log.accumulate(4 * d * (2 * m - 1), scaled.clone());
                        m += 1;
                    }
                }
            }
        }

        // xi~ families
        if !self.spec.xi_trivial {
            for d in 1..=(q8 / 4) {
                let nd = self.n_xi(d as i64);
                if nd.is_zero() {
                    continue;
                }
                match which {
                    ThetaKind::First => {
                        // Lambda_{q^{r-1/2}} (x) Lambda_{-q^{s-1/2}}: odd d cancels,
                        // even d doubles: - sum_r sum_{e} q^{e(2r-1)} N_{2e}/e
                        if d % 2 == 0 {
                            let e = d / 2;
                            let scaled = nd.scale_rat(-1, e as i64);
                            let mut r = 1;
                            while 4 * d * (2 * r - 1) <= q8 {
                                log.accumulate(4 * d * (2 * r - 1), scaled.clone());
                                r += 1;
                            }
                        }
                    }
                    ThetaKind::Second => {
                        let sign = if d % 2 == 1 { 1 } else { -1 };
                        let scaled = nd.scale_rat(sign, d as i64);
                        // Lambda_{q^{r-1/2}}
                        let mut r = 1;
                        while 4 * d * (2 * r - 1) <= q8 {
                            log.accumulate(4 * d * (2 * r - 1), scaled.clone());
                            r += 1;
                        }
                        // Lambda_{q^s}
                        let mut s = 1;
                        while 8 * s * d <= q8 {
                            log.accumulate(8 * s * d, scaled.clone());
                            s += 1;
                        }
                    }
                }
            }
        }

        log.exp().expect("no q^0 part")
    }

    /// Full-form integrand of the modular series: the first kind multiplies
    /// A-hat by det^{1/2}(2cosh)/cosh^2(c/2), the second by cosh(c/2).
    pub fn p_integrand(&self, which: ThetaKind, qhalf: u32) -> CharQSeries {
        let pre = match which {
            ThetaKind::First => {
                let c2 = self.cosh_half_c();
                self.ahat()
                    .mul(&self.dethalf_2cosh())
                    .mul(&c2.mul(&c2).series_inv().expect("unit"))
            }
            ThetaKind::Second => self.ahat().mul(&self.cosh_half_c()),
        };
        self.ch_theta(which, qhalf).scale(&pre)
    }

    /// Top-degree components per q-power: the modular q-series whose
    /// coefficients are weight-dim forms.
    pub fn p_series(&self, which: ThetaKind, qhalf: u32) -> CharQSeries {
        let dim = self.spec.dim();
        let full = self.p_integrand(which, qhalf);
        let zero = self.zero();
        full.map(zero, |p| p.weight_component(dim))
    }
}

/// Which of the two twisted series bundles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    First,
    Second,
}

fn pow2(n: i64) -> BigRational {
    BigRational::from(BigInt::from(2).pow(n as u32))
}

fn explicit_power_sum(table: &Arc<GenTable>, bound: u32, roots: &[usize], two_m: u32) -> CharForm {
    let mut acc = CharForm::zero(table.clone(), bound, BigRational::zero());
    for &g in roots {
        let r = CharForm::generator(table.clone(), bound, g, &BigRational::zero());
        acc = acc.add(&r.pow(two_m));
    }
    acc
}

/// Complete the free power sums p_1..p_l (of the squared roots) to all
/// m <= max_m via Newton's identities: e_i from the free range, e_{i>l} = 0,
/// then p_m = sum_{d=1..l} (-1)^{d-1} e_d p_{m-d} for m > l.
fn newton_complete(
    table: &Arc<GenTable>,
    bound: u32,
    l: u32,
    free: &[CharForm],
    max_m: u32,
) -> Vec<CharForm> {
    let zero = CharForm::zero(table.clone(), bound, BigRational::zero());
    let lcount = free.len() as u32; // = min(l, max_m)
    let mut p: Vec<CharForm> = free.to_vec();
    if lcount == l && max_m > l {
        // elementary symmetric functions from Newton: i e_i = sum_{d=1..i}
        // (-1)^{d-1} e_{i-d} p_d
        let mut e: Vec<CharForm> = vec![zero.clone(); (l + 1) as usize];
        e[0] = CharForm::one(table.clone(), bound, &BigRational::zero());
        for i in 1..=l as usize {
            let mut acc = zero.clone();
            for d in 1..=i {
                let sign = if d % 2 == 1 { 1 } else { -1 };
                acc = acc.add(&e[i - d].mul(&p[d - 1]).scale_rat(sign, 1));
            }
            e[i] = acc.scale_rat(1, i as i64);
        }
        for m in (l + 1)..=max_m {
            let mut acc = zero.clone();
            for d in 1..=l {
                let sign = if d % 2 == 1 { 1 } else { -1 };
                let prev = if m - d == 0 {
                    CharForm::constant(
                        table.clone(),
                        bound,
                        BigRational::from(BigInt::from(l as i64)),
                    )
                } else {
                    p[(m - d - 1) as usize].clone()
                };
                acc = acc.add(&e[d as usize].mul(&prev).scale_rat(sign, 1));
            }
            p.push(acc);
        }
    }
    // When l >= max_m everything is free already.
    p
}

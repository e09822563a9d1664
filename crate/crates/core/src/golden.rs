//! Golden expansion artifacts: canonical-text serializations of the theta
//! constants, the modular forms, the twisted character series, and the
//! integral extraction tables. The verify harness compares these against a
//! golden directory (or refreshes it), and a regression test pins the
//! repository copies.

use crate::cancel::{build_extraction_table, BrTable, CancelError};
use crate::charforms::{Context, Family, GeometrySpec, ThetaKind};
use crate::lambda::extract_cr;
use crate::ring::serialize::{poly_to_text, qseries_poly_to_text, qseries_to_text};
use crate::theta::{modular_form_qexp, theta_const, theta_prime_over_pi, ModularFormId, ThetaId};
use num::Zero;

/// Orders used for the committed artifacts: q-order 20 for scalar series,
/// q-order 2 (four half steps) for the character series.
pub const GOLDEN_Q8: u32 = 160;
pub const GOLDEN_QHALF: u32 = 4;

/// All golden artifacts as (file name, canonical content).
pub fn artifacts() -> Result<Vec<(String, String)>, CancelError> {
    let mut out = Vec::new();
    for (name, id) in [
        ("theta1_const.txt", ThetaId::Theta1),
        ("theta2_const.txt", ThetaId::Theta2),
        ("theta3_const.txt", ThetaId::Theta3),
    ] {
        out.push((
            name.to_string(),
            qseries_to_text(&theta_const(id, GOLDEN_Q8)),
        ));
    }
    out.push((
        "theta_prime_over_pi.txt".to_string(),
        qseries_to_text(&theta_prime_over_pi(GOLDEN_Q8)),
    ));
    for (name, id) in [
        ("delta1.txt", ModularFormId::Delta1),
        ("epsilon1.txt", ModularFormId::Epsilon1),
        ("delta2.txt", ModularFormId::Delta2),
        ("epsilon2.txt", ModularFormId::Epsilon2),
    ] {
        out.push((
            name.to_string(),
            qseries_to_text(&modular_form_qexp(id, GOLDEN_Q8)),
        ));
    }

    let general = GeometrySpec::new(1, Family::EightKPlusFour, 3);
    let ctx = Context::new(general)?;
    out.push((
        "ch_theta2_k1_general.txt".to_string(),
        qseries_poly_to_text(&ctx.ch_theta(ThetaKind::Second, GOLDEN_QHALF)),
    ));
    let ctx_triv = Context::new(general.with_xi_trivial())?;
    out.push((
        "ch_theta2_k1_xi_trivial.txt".to_string(),
        qseries_poly_to_text(&ctx_triv.ch_theta(ThetaKind::Second, GOLDEN_QHALF)),
    ));

    let table = build_extraction_table(1, Family::EightKPlusFour)?;
    let br = BrTable::from_extraction(&table);
    out.push((
        "br_k1_8k4.json".to_string(),
        serde_json::to_string_pretty(&br).expect("serializable") + "\n",
    ));

    let (cr, _) = extract_cr(&table.z, 12, 2).map_err(|e| CancelError::NotIntegral {
        detail: e.to_string(),
    })?;
    let mut cr_text = String::new();
    for (r, q) in cr.iter().enumerate() {
        cr_text.push_str(&format!("# C_{r}\n"));
        let rational = q.map_coeffs(num::BigRational::zero(), |c| {
            num::BigRational::from(c.clone())
        });
        cr_text.push_str(&poly_to_text(&rational));
    }
    out.push(("cr_k1_8k4.txt".to_string(), cr_text));
    Ok(out)
}

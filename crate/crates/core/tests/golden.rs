//! Golden-file regression: the committed expansions pin every scalar
//! series and the character series; regeneration must be byte-identical,
//! and parsing a golden file back reproduces the in-memory value.

use mircan_core::charforms::{Context, Family, GeometrySpec, ThetaKind};
use mircan_core::golden::{artifacts, GOLDEN_Q8, GOLDEN_QHALF};
use mircan_core::ring::serialize;
use mircan_core::theta::{modular_form_qexp, ModularFormId};
use std::fs;
use std::path::PathBuf;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

#[test]
fn committed_golden_files_are_current() {
    for (name, content) in artifacts().unwrap() {
        let path = golden_dir().join(&name);
        let on_disk =
            fs::read_to_string(&path).unwrap_or_else(|e| panic!("missing golden file {name}: {e}"));
        assert_eq!(on_disk, content, "golden file {name} is stale");
    }
}

#[test]
fn golden_series_parse_back_exactly() {
    let text = fs::read_to_string(golden_dir().join("delta2.txt")).unwrap();
    let parsed = serialize::qseries_from_text(&text, GOLDEN_Q8).unwrap();
    assert_eq!(parsed, modular_form_qexp(ModularFormId::Delta2, GOLDEN_Q8));
    // byte-identity of the round trip
    assert_eq!(serialize::qseries_to_text(&parsed), text);
}

#[test]
fn golden_character_series_parses_back() {
    let ctx = Context::new(GeometrySpec::new(1, Family::EightKPlusFour, 3)).unwrap();
    let series = ctx.ch_theta(ThetaKind::Second, GOLDEN_QHALF);
    let text = fs::read_to_string(golden_dir().join("ch_theta2_k1_general.txt")).unwrap();
    let parsed =
        serialize::qseries_poly_from_text(&text, &ctx.table, ctx.bound, 4 * GOLDEN_QHALF).unwrap();
    assert_eq!(parsed, series);
    assert_eq!(serialize::qseries_poly_to_text(&parsed), text);
}

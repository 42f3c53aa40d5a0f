use eaqsc_wasm_demo::{decode, synth_random};
use serde_json::Value;

#[test]
fn synthesised_matrix_decodes_zero_syndrome_to_identity() {
    let v: Value = serde_json::from_str(&synth_random(6, 2, 1, 8, 0.5)).unwrap();
    let matrix = v["matrix"].as_str().unwrap();
    let d: Value = serde_json::from_str(&decode(matrix, "00000", "depol", 0.2, "demld")).unwrap();
    assert_eq!(d["e"], "000000|000000");
    assert_eq!(d["weight"], 0);
}

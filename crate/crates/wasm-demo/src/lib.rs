//! Browser bindings for the static demo page in `www/`.
//!
//! Every export takes plain numbers and strings and returns a JSON string, with an
//! `error` field when the input is rejected, so the same functions run under native
//! tests and in the browser.

use eaqsc::code::{random_code, CheckMatrix, CodeParams};
use eaqsc::decoding::{demld, emld, ChannelModel, Syndrome};
use eaqsc::synthesis::{synth_naive_encoder, synthesize};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_QUBITS: usize = 512;
const MAX_SHOWN_GATES: usize = 400;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn params(n: usize, k: usize, c: usize) -> Result<CodeParams, String> {
    if n > MAX_QUBITS {
        return Err(format!("the demo stops at n = {MAX_QUBITS}"));
    }
    CodeParams::new(n, k, c).map_err(|e| e.to_string())
}

fn counts(p: CodeParams, seed: u64, alpha: f64) -> Result<(CheckMatrix, Value), String> {
    let h = random_code(p, seed);
    let blocked = synthesize(&h, alpha).map_err(|e| e.to_string())?;
    let naive = synth_naive_encoder(&h).map_err(|e| e.to_string())?;
    let (b, nv) = (blocked.report.counts.total_without_swaps(), naive.report.counts.total_without_swaps());
    let n = p.n() as f64;
    let bound = n * (p.n() - p.k() + p.c()) as f64 / n.log2();
    let v = json!({
        "n": p.n(), "k": p.k(), "c": p.c(),
        "block_size": blocked.report.block_size,
        "blocked": b,
        "naive": nv,
        "blocked_counts": blocked.report.counts,
        "ratio_to_bound": if p.n() >= 2 { json!(b as f64 / bound) } else { Value::Null },
        "verified": blocked.verify().map_err(|e| e.to_string())?,
        "audits_passed": blocked.report.all_passed(),
        "circuit": if blocked.circuit.len() <= MAX_SHOWN_GATES { json!(blocked.circuit.emit()) } else { Value::Null },
    });
    Ok((h, v))
}

/// Random `[[n, k; c]]` code, its blocked and naive encoders, and the check matrix.
#[wasm_bindgen]
pub fn synth_random(n: usize, k: usize, c: usize, seed: u64, alpha: f64) -> String {
    respond((|| {
        let (h, mut v) = counts(params(n, k, c)?, seed, alpha)?;
        v["matrix"] = json!(h.emit());
        Ok(v)
    })())
}

/// Gate counts for `n:k:c` triples separated by commas.
#[wasm_bindgen]
pub fn scaling(sizes: &str, seed: u64, alpha: f64) -> String {
    respond((|| {
        let mut rows = Vec::new();
        for triple in sizes.split(',').filter(|t| !t.trim().is_empty()) {
            let nums: Vec<usize> = triple
                .trim()
                .split(':')
                .map(|x| x.parse::<usize>().map_err(|_| format!("{triple:?} is not n:k:c")))
                .collect::<Result<_, _>>()?;
            let [n, k, c] = nums[..] else {
                return Err(format!("{triple:?} is not n:k:c"));
            };
            let (_, mut v) = counts(params(n, k, c)?, seed, alpha)?;
            v["circuit"] = Value::Null;
            rows.push(v);
        }
        Ok(json!({ "rows": rows }))
    })())
}

/// EMLD or DEMLD on a check matrix in the text format.
#[wasm_bindgen]
pub fn decode(matrix: &str, syndrome: &str, channel: &str, p: f64, mode: &str) -> String {
    respond((|| {
        let h = CheckMatrix::parse(matrix).map_err(|e| e.to_string())?;
        let ch = match channel {
            "xz" => ChannelModel::xz(p),
            "depol" => ChannelModel::depolarizing(p),
            other => return Err(format!("unknown channel {other:?}")),
        }
        .map_err(|e| e.to_string())?;
        let y = Syndrome::parse(syndrome).map_err(|e| e.to_string())?;
        let r = match mode {
            "emld" => emld(&h, &y, &ch),
            "demld" => demld(&h, &y, &ch),
            other => return Err(format!("unknown mode {other:?}")),
        }
        .map_err(|e| e.to_string())?;
        Ok(json!({
            "e": CheckMatrix::format_row(&r.e),
            "weight": r.weight,
            "coset_probability": r.coset_probability,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn synth_reports_verified_counts() {
        let v = parse(&synth_random(16, 4, 2, 3, 0.75));
        assert_eq!(v["verified"], true);
        assert_eq!(v["audits_passed"], true);
        assert!(v["blocked"].as_u64().unwrap() > 0);
        assert!(v["matrix"].as_str().unwrap().starts_with("16 4 2\n"));
        assert!(v["circuit"].as_str().unwrap().starts_with("qubits 16\n"));
    }

    #[test]
    fn bad_inputs_become_error_objects() {
        assert!(parse(&synth_random(4, 4, 1, 0, 0.75))["error"].is_string());
        assert!(parse(&synth_random(4, 1, 0, 0, 1.5))["error"].is_string());
        assert!(parse(&synth_random(10_000, 1, 0, 0, 0.5))["error"].is_string());
        assert!(parse(&scaling("8:2", 0, 0.75))["error"].is_string());
        assert!(parse(&decode("3 1 0\n000|110\n000|011\n", "10", "bitflip", 0.1, "emld"))["error"].is_string());
    }

    #[test]
    fn scaling_rows_follow_input_order() {
        let v = parse(&scaling("32:16:0, 16:8:0", 1, 0.75));
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["n"], 32);
        assert_eq!(rows[1]["n"], 16);
        assert!(rows.iter().all(|r| r["verified"] == true));
    }

    #[test]
    fn decodes_repetition_code() {
        let rep = "3 1 0\n000|110\n000|011\n";
        let v = parse(&decode(rep, "10", "xz", 0.1, "emld"));
        assert_eq!(v["e"], "100|000");
        let v = parse(&decode(rep, "10", "depol", 0.1, "demld"));
        assert_eq!(v["e"], "100|000");
        assert!(v["coset_probability"].as_f64().unwrap() > 0.0);
    }
}

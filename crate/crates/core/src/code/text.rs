//! Text format:
//!
//! ```text
//! # optional comments
//! n k c
//! xxxx|zzzz      (s + 2c rows, qubit 0 leftmost)
//! ```

use crate::code::{CheckMatrix, CodeParams};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

pub(crate) fn format_xz(v: &BitVector) -> String {
    let n = v.len() / 2;
    format!("{}|{}", v.slice(0..n), v.slice(n..2 * n))
}

pub(crate) fn parse_xz(text: &str) -> std::result::Result<BitVector, String> {
    let (x, z) = text
        .split_once('|')
        .ok_or_else(|| format!("expected `x..x|z..z`, found {text:?}"))?;
    if x.len() != z.len() {
        return Err(format!("X-part has {} bits but Z-part has {}", x.len(), z.len()));
    }
    let mut bits = Vec::with_capacity(x.len() + z.len());
    for ch in x.chars().chain(z.chars()) {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(BitVector::from_bools(bits))
}

pub(crate) fn parse_check_matrix(text: &str) -> Result<CheckMatrix> {
    let mut params: Option<CodeParams> = None;
    let mut rows: Vec<BitVector> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let Some(p) = params else {
            let nums: Vec<&str> = line.split_whitespace().collect();
            if nums.len() != 3 {
                return Err(Error::parse(line_no, "header must be `n k c`"));
            }
            let mut vals = [0usize; 3];
            for (v, s) in vals.iter_mut().zip(&nums) {
                *v = s
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("header field {s:?} is not a count")))?;
            }
            params = Some(
                CodeParams::new(vals[0], vals[1], vals[2]).map_err(|e| Error::parse(line_no, e.to_string()))?,
            );
            continue;
        };
        let row = line.trim();
        if row.len() != 2 * p.n() + 1 {
            return Err(Error::parse(
                line_no,
                format!("row has {} characters, expected {}", row.len(), 2 * p.n() + 1),
            ));
        }
        if rows.len() == p.num_rows() {
            return Err(Error::parse(
                line_no,
                format!("more than the expected {} rows", p.num_rows()),
            ));
        }
        let v = parse_xz(row).map_err(|m| Error::parse(line_no, m))?;
        rows.push(v);
    }
    let p = params.ok_or_else(|| Error::parse(last_line.max(1), "missing header `n k c`"))?;
    if rows.len() != p.num_rows() {
        return Err(Error::parse(
            last_line.max(1),
            format!("expected {} rows, found {}", p.num_rows(), rows.len()),
        ));
    }
    let mat = BitMatrix::from_rows(&rows, 2 * p.n())?;
    CheckMatrix::new(p, mat)
}

pub(crate) fn emit_check_matrix(h: &CheckMatrix) -> String {
    let p = h.params();
    let mut out = format!("{} {} {}\n", p.n(), p.k(), p.c());
    for r in 0..p.num_rows() {
        out.push_str(&format_xz(&h.matrix().row(r)));
        out.push('\n');
    }
    out
}

//! Clifford gates acting on binary check matrices.
//!
//! A check matrix `[H_X | H_Z]` with `n` qubits has `2n` columns. Every gate acts by
//! column operations:
//!
//! | gate           | action                                                  |
//! |----------------|---------------------------------------------------------|
//! | `CNOT i -> j`  | X col `j` += X col `i`; Z col `i` += Z col `j`           |
//! | `CZ i j`       | Z col `j` += X col `i`; Z col `i` += X col `j`           |
//! | `H i`          | swap X col `i` with Z col `i`                           |
//! | `P i`          | Z col `i` += X col `i`                                  |
//! | `SWAP i j`     | swap qubits `i` and `j` in both halves                  |
//!
//! Signs are not tracked, so every gate is an involution on matrices and `P` and `P†`
//! are the same operation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    Cnot,
    Cz,
    H,
    P,
    Swap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    H(usize),
    P(usize),
    Swap(usize, usize),
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Cz(..) => GateKind::Cz,
            Gate::H(_) => GateKind::H,
            Gate::P(_) => GateKind::P,
            Gate::Swap(..) => GateKind::Swap,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Cz(a, b) | Gate::Swap(a, b) => vec![a, b],
            Gate::H(q) | Gate::P(q) => vec![q],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let qs = self.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= n) {
            return Err(Error::IndexOutOfRange { index: q, bound: n });
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidArgument(format!("{self} acts twice on qubit {}", qs[0])));
        }
        Ok(())
    }

    /// Symmetric two-qubit gates written with the smaller index first.
    fn canonical(self) -> Gate {
        match self {
            Gate::Cz(a, b) if a > b => Gate::Cz(b, a),
            Gate::Swap(a, b) if a > b => Gate::Swap(b, a),
            g => g,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
            Gate::H(q) => write!(f, "H {q}"),
            Gate::P(q) => write!(f, "P {q}"),
            Gate::Swap(a, b) => write!(f, "SWAP {a} {b}"),
        }
    }
}

fn split_qubits(m: &BitMatrix) -> Result<usize> {
    if m.cols() % 2 != 0 {
        return Err(Error::DimensionMismatch(format!(
            "matrix with {} columns has no X|Z split",
            m.cols()
        )));
    }
    Ok(m.cols() / 2)
}

/// Applies the column action of `g` to a `(x|z)` matrix.
pub fn apply_gate(m: &mut BitMatrix, g: Gate) -> Result<()> {
    let n = split_qubits(m)?;
    g.validate(n)?;
    apply_gate_unchecked(m, n, g);
    Ok(())
}

#[inline]
pub(crate) fn apply_gate_unchecked(m: &mut BitMatrix, n: usize, g: Gate) {
    match g {
        Gate::Cnot { control: i, target: j } => {
            m.add_col_unchecked(i, j);
            m.add_col_unchecked(n + j, n + i);
        }
        Gate::Cz(i, j) => {
            m.add_col_unchecked(i, n + j);
            m.add_col_unchecked(j, n + i);
        }
        Gate::H(i) => m.swap_cols_unchecked(i, n + i),
        Gate::P(i) => m.add_col_unchecked(i, n + i),
        Gate::Swap(i, j) => {
            m.swap_cols_unchecked(i, j);
            m.swap_cols_unchecked(n + i, n + j);
        }
    }
}

/// Same action as [`apply_gate_unchecked`] on the transpose of a check matrix, where
/// columns are rows and every column operation becomes a word-level row operation.
pub(crate) fn apply_gate_transposed(t: &mut BitMatrix, n: usize, g: Gate) {
    match g {
        Gate::Cnot { control: i, target: j } => {
            t.xor_row_unchecked(i, j);
            t.xor_row_unchecked(n + j, n + i);
        }
        Gate::Cz(i, j) => {
            t.xor_row_unchecked(i, n + j);
            t.xor_row_unchecked(j, n + i);
        }
        Gate::H(i) => {
            let _ = t.swap_rows(i, n + i);
        }
        Gate::P(i) => t.xor_row_unchecked(i, n + i),
        Gate::Swap(i, j) => {
            let _ = t.swap_rows(i, j);
            let _ = t.swap_rows(n + i, n + j);
        }
    }
}

/// True iff the GF(2) row spaces of `a` and `b` coincide.
pub fn row_space_equal(a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "row spaces over {} and {} columns",
            a.cols(),
            b.cols()
        )));
    }
    let ra = a.rank();
    Ok(ra == b.rank() && a.vstack(b)?.rank() == ra)
}

/// Expands `CZ(c, t)` into `H(t) · CNOT(c -> t) · H(t)`.
pub fn cz_decompose(g: Gate) -> Result<[Gate; 3]> {
    match g {
        Gate::Cz(c, t) => Ok([Gate::H(t), Gate::Cnot { control: c, target: t }, Gate::H(t)]),
        other => Err(Error::InvalidArgument(format!("cz_decompose on {other}"))),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub cnot: usize,
    pub cz: usize,
    pub h: usize,
    pub p: usize,
    pub swap: usize,
}

impl GateCounts {
    pub fn record(&mut self, g: &Gate) {
        match g.kind() {
            GateKind::Cnot => self.cnot += 1,
            GateKind::Cz => self.cz += 1,
            GateKind::H => self.h += 1,
            GateKind::P => self.p += 1,
            GateKind::Swap => self.swap += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.cnot + self.cz + self.h + self.p + self.swap
    }

    /// Gate count with qubit relabelling (SWAP) excluded.
    pub fn total_without_swaps(&self) -> usize {
        self.total() - self.swap
    }
}

/// An ordered gate list on `n` qubits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Self { n, gates })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        g.validate(self.n)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "appending a {}-qubit circuit to a {}-qubit circuit",
                other.n, self.n
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Gates in reverse order. Each gate is self-inverse on matrices, so this is the
    /// inverse transformation.
    pub fn reverse(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }

    pub fn apply(&self, m: &mut BitMatrix) -> Result<()> {
        let n = split_qubits(m)?;
        if n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit circuit applied to a {n}-qubit matrix",
                self.n
            )));
        }
        for &g in &self.gates {
            apply_gate_unchecked(m, n, g);
        }
        Ok(())
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            c.record(g);
        }
        c
    }

    /// Removes pairs of identical gates that are separated only by gates on
    /// disjoint qubits.
    pub fn cancel_adjacent_pairs(&self) -> Circuit {
        let mut out: Vec<Option<Gate>> = Vec::with_capacity(self.gates.len());
        let mut last: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &g in &self.gates {
            let g = g.canonical();
            let qs = g.qubits();
            let tops: Vec<Option<usize>> = qs.iter().map(|&q| last[q].last().copied()).collect();
            let cancel = match tops[0] {
                Some(idx) => tops.iter().all(|&t| t == Some(idx)) && out[idx] == Some(g),
                None => false,
            };
            if cancel {
                let idx = tops[0].unwrap();
                out[idx] = None;
                for &q in &qs {
                    last[q].pop();
                }
            } else {
                let idx = out.len();
                out.push(Some(g));
                for &q in &qs {
                    last[q].push(idx);
                }
            }
        }
        Circuit {
            n: self.n,
            gates: out.into_iter().flatten().collect(),
        }
    }

    /// Parses the circuit text format: `qubits n`, then one gate per line.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("expected a qubit index, found {s:?}")))
            };
            let Some(c) = circuit.as_mut() else {
                match tokens.as_slice() {
                    ["qubits", n] => {
                        circuit = Some(Circuit::new(num(n)?));
                        continue;
                    }
                    _ => return Err(Error::parse(line_no, "expected header `qubits <n>`")),
                }
            };
            let gate = match tokens.as_slice() {
                ["CNOT", a, b] => Gate::Cnot {
                    control: num(a)?,
                    target: num(b)?,
                },
                ["CZ", a, b] => Gate::Cz(num(a)?, num(b)?),
                ["SWAP", a, b] => Gate::Swap(num(a)?, num(b)?),
                ["H", a] => Gate::H(num(a)?),
                ["P", a] => Gate::P(num(a)?),
                _ => return Err(Error::parse(line_no, format!("unrecognised gate line {line:?}"))),
            };
            c.push(gate).map_err(|e| Error::parse(line_no, e.to_string()))?;
        }
        circuit.ok_or_else(|| Error::parse(1, "missing header `qubits <n>`"))
    }

    pub fn emit(&self) -> String {
        let mut s = format!("qubits {}\n", self.n);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Gate budget of one elimination stage (one block, or one whole pass).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetCheck {
    pub stage: String,
    pub used: usize,
    pub bound: usize,
}

impl BudgetCheck {
    pub fn within(&self) -> bool {
        self.used <= self.bound
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SynthReport {
    pub counts: GateCounts,
    pub total: usize,
    pub block_size: usize,
    pub audit: Vec<AuditCheck>,
    pub budgets: Vec<BudgetCheck>,
}

impl SynthReport {
    pub fn all_passed(&self) -> bool {
        self.audit.iter().all(|a| a.passed) && self.budgets.iter().all(BudgetCheck::within)
    }

    pub fn audit_passed(&self, name: &str) -> Option<bool> {
        self.audit.iter().find(|a| a.name == name).map(|a| a.passed)
    }
}

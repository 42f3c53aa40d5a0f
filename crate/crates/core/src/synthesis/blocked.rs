//! The working state of a synthesis run and the elimination passes that act on it.
//!
//! Every pass works on a set of pivot rows whose X-part restricted to the pivot qubits
//! is the identity. Passes only add gates; the matrix is updated as each gate is
//! emitted, so rows outside the pivot set pick up the side effects automatically.

use std::collections::HashMap;
use std::ops::Range;

use crate::circuit::{apply_gate_unchecked, AuditCheck, BudgetCheck, Gate};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::synthesis::columns::{gauss_jordan_ops, sectioned_ops};
use crate::synthesis::schedule::{build_block_schedule, restore_to_identity, BlockSchedule, ScheduleStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Strategy {
    Blocked(usize),
    Naive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Half {
    X,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    Cnot,
    Cz,
}

impl Op {
    fn gate(self, pivot: usize, target: usize) -> Gate {
        match self {
            Op::Cnot => Gate::Cnot { control: pivot, target },
            Op::Cz => Gate::Cz(pivot, target),
        }
    }
}

pub(crate) struct Workspace {
    pub n: usize,
    pub mat: BitMatrix,
    pub gates: Vec<Gate>,
    pub audit: Vec<AuditCheck>,
    pub budgets: Vec<BudgetCheck>,
    strategy: Strategy,
    schedules: HashMap<usize, BlockSchedule>,
}

impl Workspace {
    pub fn new(mat: BitMatrix, strategy: Strategy) -> Self {
        let n = mat.cols() / 2;
        Self {
            n,
            mat,
            gates: Vec::new(),
            audit: Vec::new(),
            budgets: Vec::new(),
            strategy,
            schedules: HashMap::new(),
        }
    }

    /// Uses `schedule` for every block of its width instead of the rover walk.
    pub fn with_schedule(mut self, schedule: BlockSchedule) -> Self {
        self.schedules.insert(schedule.block_size(), schedule);
        self
    }

    pub fn emit(&mut self, g: Gate) {
        apply_gate_unchecked(&mut self.mat, self.n, g);
        self.gates.push(g);
    }

    /// Records a named audit; a failed one aborts the run.
    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> Result<()> {
        let detail = detail.into();
        self.audit.push(AuditCheck {
            name: name.to_string(),
            passed,
            detail: detail.clone(),
        });
        if passed {
            Ok(())
        } else {
            Err(Error::audit(name, detail))
        }
    }

    fn col(&self, half: Half, q: usize) -> usize {
        match half {
            Half::X => q,
            Half::Z => self.n + q,
        }
    }

    pub fn block(&self, rows: Range<usize>, half: Half, qubits: Range<usize>) -> BitMatrix {
        let off = self.col(half, 0);
        self.mat.submatrix(rows, off + qubits.start..off + qubits.end)
    }

    pub fn block_is_zero(&self, rows: Range<usize>, half: Half, qubits: Range<usize>) -> bool {
        self.block(rows, half, qubits).is_zero()
    }

    pub fn block_is_identity(&self, rows: Range<usize>, half: Half, qubits: Range<usize>) -> bool {
        let b = self.block(rows, half, qubits);
        b.rows() == b.cols() && b == BitMatrix::identity(b.rows())
    }

    fn width(&self, pivots: usize) -> usize {
        match self.strategy {
            Strategy::Blocked(m) => m.min(pivots).max(1),
            Strategy::Naive => 1,
        }
    }

    fn schedule(&mut self, w: usize) -> Result<BlockSchedule> {
        if let Some(s) = self.schedules.get(&w) {
            return Ok(s.clone());
        }
        let s = build_block_schedule(w)?;
        self.schedules.insert(w, s.clone());
        Ok(s)
    }

    fn require_pivots(&self, rows: &Range<usize>, pivots: &Range<usize>, stage: &str) -> Result<()> {
        if rows.len() != pivots.len() || !self.block_is_identity(rows.clone(), Half::X, pivots.clone()) {
            return Err(Error::audit(stage, "pivot block is not the identity"));
        }
        Ok(())
    }

    /// Clears `read` on `rows` x `targets` using `op(pivot, target)` gates.
    pub fn eliminate(
        &mut self,
        rows: Range<usize>,
        pivots: Range<usize>,
        targets: Range<usize>,
        read: Half,
        op: Op,
        stage: &str,
    ) -> Result<()> {
        self.require_pivots(&rows, &pivots, stage)?;
        if rows.is_empty() || targets.is_empty() {
            return Ok(());
        }
        match self.strategy {
            Strategy::Naive => {
                for i in 0..rows.len() {
                    for t in targets.clone() {
                        if self.mat.get(rows.start + i, self.col(read, t)) {
                            self.emit(op.gate(pivots.start + i, t));
                        }
                    }
                }
            }
            Strategy::Blocked(_) => {
                let w = self.width(rows.len());
                let mut worst: Option<BudgetCheck> = None;
                let mut b = 0;
                while b < rows.len() {
                    let bw = w.min(rows.len() - b);
                    let used = self.eliminate_block(
                        rows.start + b,
                        pivots.start + b,
                        bw,
                        targets.clone(),
                        read,
                        op,
                    )?;
                    let check = BudgetCheck {
                        stage: format!("{stage} (worst block)"),
                        used,
                        bound: (1usize << bw) + targets.len() + 2 * bw * bw,
                    };
                    if !check.within() {
                        return Err(Error::audit(
                            stage,
                            format!("block at row {} used {} gates, bound {}", rows.start + b, used, check.bound),
                        ));
                    }
                    if worst.as_ref().map_or(true, |w| w.bound - w.used > check.bound - check.used) {
                        worst = Some(check);
                    }
                    b += bw;
                }
                self.budgets.extend(worst);
            }
        }
        let done = self.block_is_zero(rows.clone(), read, targets) && self.block_is_identity(rows, Half::X, pivots);
        if !done {
            return Err(Error::audit(stage, "targets not cleared on the pivot rows"));
        }
        Ok(())
    }

    /// One block of width `w`; returns the number of gates emitted.
    fn eliminate_block(
        &mut self,
        row0: usize,
        piv0: usize,
        w: usize,
        targets: Range<usize>,
        read: Half,
        op: Op,
    ) -> Result<usize> {
        let mut table: HashMap<u32, Vec<usize>> = HashMap::new();
        let mut remaining = 0usize;
        for t in targets {
            let col = self.col(read, t);
            let mut pat = 0u32;
            for i in 0..w {
                if self.mat.get(row0 + i, col) {
                    pat |= 1 << i;
                }
            }
            if pat != 0 {
                table.entry(pat).or_default().push(t);
                remaining += 1;
            }
        }
        if remaining == 0 {
            return Ok(0);
        }
        let start = self.gates.len();
        let schedule = self.schedule(w)?;
        let mut state: Vec<u32> = (0..w).map(|a| 1u32 << a).collect();
        for step in schedule.steps() {
            match *step {
                ScheduleStep::Add { src, dst } => {
                    state[dst] ^= state[src];
                    self.emit(Gate::Cnot { control: piv0 + src, target: piv0 + dst });
                }
                ScheduleStep::Visit { pattern, column } => {
                    debug_assert_eq!(state[column], pattern);
                    if let Some(ts) = table.remove(&pattern) {
                        remaining -= ts.len();
                        for t in ts {
                            self.emit(op.gate(piv0 + column, t));
                        }
                        if remaining == 0 {
                            break;
                        }
                    }
                }
            }
        }
        for (src, dst) in restore_to_identity(&state) {
            self.emit(Gate::Cnot { control: piv0 + src, target: piv0 + dst });
        }
        Ok(self.gates.len() - start)
    }

    /// Clears a symmetric Z block on the pivot rows with P and CZ gates.
    pub fn clear_symmetric(&mut self, rows: Range<usize>, pivots: Range<usize>, stage: &str) -> Result<()> {
        self.require_pivots(&rows, &pivots, stage)?;
        let b = self.block(rows.clone(), Half::Z, pivots.clone());
        if !b.is_symmetric()? {
            return Err(Error::audit(stage, "Z block is not symmetric"));
        }
        let s = rows.len();
        let start = self.gates.len();
        for i in 0..s {
            if b.get(i, i) {
                self.emit(Gate::P(pivots.start + i));
            }
        }
        let w = self.width(s);
        let mut lo = 0;
        while lo < s {
            let hi = (lo + w).min(s);
            for i in lo..hi {
                for j in i + 1..hi {
                    if self.mat.get(rows.start + i, self.n + pivots.start + j) {
                        self.emit(Gate::Cz(pivots.start + i, pivots.start + j));
                    }
                }
            }
            if hi < s {
                self.eliminate(
                    rows.start + lo..rows.start + hi,
                    pivots.start + lo..pivots.start + hi,
                    pivots.start + hi..pivots.end,
                    Half::Z,
                    Op::Cz,
                    stage,
                )?;
            }
            lo = hi;
        }
        if let Strategy::Blocked(_) = self.strategy {
            let blocks = s.div_ceil(w);
            self.budgets.push(BudgetCheck {
                stage: format!("{stage} (total)"),
                used: self.gates.len() - start,
                bound: s + blocks * (w * w + s + (1usize << w) + 2 * w * w),
            });
        }
        if !self.block_is_zero(rows, Half::Z, pivots) {
            return Err(Error::audit(stage, "symmetric block not cleared"));
        }
        Ok(())
    }

    /// Column additions among `qubits` turning X on `rows` x `qubits` into the identity.
    pub fn columns_to_identity(&mut self, rows: Range<usize>, qubits: Range<usize>, stage: &str) -> Result<()> {
        let blk = self.block(rows.clone(), Half::X, qubits.clone());
        let ops = match self.strategy {
            Strategy::Blocked(m) if blk.rows() > m => sectioned_ops(&blk, m)?,
            _ => gauss_jordan_ops(&blk)?,
        };
        for (src, dst) in ops {
            self.emit(Gate::Cnot { control: qubits.start + src, target: qubits.start + dst });
        }
        if !self.block_is_identity(rows, Half::X, qubits) {
            return Err(Error::audit(stage, "column reduction did not reach the identity"));
        }
        Ok(())
    }

    pub fn hadamards(&mut self, qubits: Range<usize>) {
        for q in qubits {
            self.emit(Gate::H(q));
        }
    }
}

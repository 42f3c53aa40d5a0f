//! Encoder synthesis.
//!
//! A pipeline starts from the standard form of the target, drives it down to the raw
//! matrix with Clifford gates, and returns the reversed gate list: applied to the raw
//! matrix it produces the target. Blocked passes group `m` pivot rows, enumerate all
//! `2^m - 1` row patterns once per block, and clear every target column carrying the
//! current pattern with a single gate.

mod blocked;
mod columns;
pub mod schedule;

use std::ops::Range;

use crate::circuit::{row_space_equal, BudgetCheck, Circuit, SynthReport};
use crate::code::{standard_form, CheckMatrix};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

use blocked::{Half, Op, Strategy, Workspace};
pub use schedule::{build_block_schedule, BlockSchedule, ScheduleStep, MAX_BLOCK};

pub const DEFAULT_ALPHA: f64 = 0.75;

/// `m = max(1, floor(alpha * log2 n))`, capped at [`MAX_BLOCK`].
pub fn select_block_size(n: usize, alpha: f64) -> Result<usize> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} outside (0, 1)")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let m = (alpha * (n as f64).log2()).floor() as usize;
    Ok(m.clamp(1, MAX_BLOCK))
}

#[derive(Clone, Debug)]
pub struct EncoderResult {
    pub circuit: Circuit,
    pub report: SynthReport,
    pub target: CheckMatrix,
    pub raw: CheckMatrix,
}

impl EncoderResult {
    pub fn verify(&self) -> Result<bool> {
        verify_encoder(&self.target, &self.circuit)
    }
}

/// True when `circuit` maps the raw matrix of the target's parameters onto the target:
/// the same row space for stabilizer codes, the same stabilizer group and pairs otherwise.
pub fn verify_encoder(target: &CheckMatrix, circuit: &Circuit) -> Result<bool> {
    let params = target.params();
    if circuit.num_qubits() != params.n() {
        return Err(Error::DimensionMismatch(format!(
            "circuit on {} qubits, code on {}",
            circuit.num_qubits(),
            params.n()
        )));
    }
    let mut m = CheckMatrix::raw(params).into_matrix();
    circuit.apply(&mut m)?;
    if params.c() == 0 {
        row_space_equal(&m, target.matrix())
    } else {
        Ok(CheckMatrix::new(params, m)?.equivalent_to(target))
    }
}

/// Blocked synthesis with `m` chosen from `alpha`, dispatching on `c`.
pub fn synthesize(h: &CheckMatrix, alpha: f64) -> Result<EncoderResult> {
    if h.params().c() == 0 {
        synth_stabilizer_encoder(h, alpha)
    } else {
        synth_eaqsc_encoder(h, alpha)
    }
}

pub fn synth_stabilizer_encoder(h: &CheckMatrix, alpha: f64) -> Result<EncoderResult> {
    if h.params().c() != 0 {
        return Err(Error::InvalidArgument(
            "stabilizer synthesis needs c = 0; use the entanglement-assisted pipeline".into(),
        ));
    }
    let m = select_block_size(h.params().n(), alpha)?;
    run(h, Strategy::Blocked(m))
}

pub fn synth_eaqsc_encoder(h: &CheckMatrix, alpha: f64) -> Result<EncoderResult> {
    if h.params().c() == 0 {
        return Err(Error::InvalidArgument(
            "entanglement-assisted synthesis needs c > 0".into(),
        ));
    }
    let m = select_block_size(h.params().n(), alpha)?;
    run(h, Strategy::Blocked(m))
}

/// Baseline: the same reduction chain with one gate per nonzero entry.
pub fn synth_naive_encoder(h: &CheckMatrix) -> Result<EncoderResult> {
    run(h, Strategy::Naive)
}

fn run(h: &CheckMatrix, strategy: Strategy) -> Result<EncoderResult> {
    let params = h.params();
    let sf = standard_form(h)?;
    let mut ws = if params.c() == 0 {
        stabilizer_chain(&sf.check, strategy)?
    } else {
        eaqsc_chain(&sf.check, strategy)?
    };
    let n = params.n();
    let mut forward = sf.pre_gates.clone();
    forward.append(&Circuit::from_gates(n, std::mem::take(&mut ws.gates))?)?;
    let circuit = forward.reverse().cancel_adjacent_pairs();
    let counts = circuit.counts();
    let report = SynthReport {
        counts,
        total: counts.total(),
        block_size: match strategy {
            Strategy::Blocked(m) => m,
            Strategy::Naive => 0,
        },
        audit: ws.audit,
        budgets: ws.budgets,
    };
    Ok(EncoderResult {
        circuit,
        report,
        target: h.clone(),
        raw: CheckMatrix::raw(params),
    })
}

fn mul_t(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    a.mul_transpose(b).expect("block shapes agree")
}

fn add(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    a.add(b).expect("block shapes agree")
}

fn gram_check(ws: &mut Workspace, gram: &BitMatrix, after: &str) -> Result<()> {
    let same = ws.mat.symplectic_gram()? == *gram;
    ws.check(&format!("symplectic products preserved after {after}"), same, "")
}

/// `[I A | B C]` plus `k` seed rows `[O I | C^T O]`, reduced to `[O O | I O]` and
/// `[O I | O O]`.
fn stabilizer_chain(sf: &CheckMatrix, strategy: Strategy) -> Result<Workspace> {
    let p = sf.params();
    let (n, s) = (p.n(), p.s());
    let (st, q): (Range<usize>, Range<usize>) = (0..s, s..n);
    let a = sf.matrix().submatrix(0..s, s..n);
    let b = sf.matrix().submatrix(0..s, n..n + s);
    let c = sf.matrix().submatrix(0..s, n + s..2 * n);

    let mut seeds = BitMatrix::zeros(n - s, 2 * n);
    for j in 0..n - s {
        seeds.set(j, s + j, true);
        for i in 0..s {
            seeds.set(j, n + i, c.get(i, j));
        }
    }
    let mut ws = Workspace::new(sf.matrix().vstack(&seeds)?, strategy);
    let gram = ws.mat.symplectic_gram()?;
    ws.check("seed rows commute with the stabilizers", gram.is_zero(), "")?;
    let seed_rows = s..n;

    ws.eliminate(st.clone(), st.clone(), q.clone(), Half::Z, Op::Cz, "clear C by CZ")?;
    let b2 = add(&b, &mul_t(&a, &c));
    let ok = ws.block(st.clone(), Half::Z, st.clone()) == b2;
    ws.check("C cleared, B becomes B + AC^T", ok, "")?;
    let ok = ws.block_is_zero(seed_rows.clone(), Half::Z, st.clone());
    ws.check("seed Z-part vanishes with C", ok, "")?;
    gram_check(&mut ws, &gram, "clearing C")?;

    ws.eliminate(st.clone(), st.clone(), q.clone(), Half::X, Op::Cnot, "clear A by CNOT")?;
    let ok = ws.block(st.clone(), Half::Z, st.clone()) == b2 && b2.is_symmetric()?;
    ws.check("A cleared, B + AC^T unchanged and symmetric", ok, "")?;
    gram_check(&mut ws, &gram, "clearing A")?;

    ws.clear_symmetric(st.clone(), st.clone(), "clear B by P and CZ")?;
    gram_check(&mut ws, &gram, "clearing B")?;
    ws.hadamards(st.clone());

    let raw = CheckMatrix::raw(p).into_matrix();
    let ok = ws.mat.select_rows(0..s) == raw;
    ws.check("stabilizer rows reach the raw matrix", ok, "")?;
    let mut want = BitMatrix::zeros(n - s, 2 * n);
    for j in 0..n - s {
        want.set(j, s + j, true);
    }
    let ok = ws.mat.select_rows(seed_rows) == want;
    ws.check("seed rows reach [O I | O O]", ok, "")?;
    Ok(ws)
}

/// Standard form with `c > 0` reduced to the raw matrix exactly.
fn eaqsc_chain(sf: &CheckMatrix, strategy: Strategy) -> Result<Workspace> {
    let p = sf.params();
    let (n, s, c) = (p.n(), p.s(), p.c());
    let (st, e, kq) = (0..s, s..s + c, s + c..n);
    let (xr, zr) = (s..s + c, s + c..s + 2 * c);
    let sub = |rows: Range<usize>, cols: Range<usize>| sf.matrix().submatrix(rows, cols);
    let (a, b, cc) = (sub(st.clone(), s..n), sub(st.clone(), n..n + s), sub(st.clone(), n + s..2 * n));
    let (m1, m3) = (sub(xr.clone(), s..n), sub(zr.clone(), s..n));
    let (m11, m12) = (sub(xr.clone(), s..s + c), sub(xr.clone(), s + c..n));
    let (m21, m22) = (sub(xr.clone(), n + s..n + s + c), sub(xr.clone(), n + s + c..2 * n));

    let mut ws = Workspace::new(sf.matrix().clone(), strategy);
    let gram = ws.mat.symplectic_gram()?;
    let all_q = s..n;

    // Stabilizer rows.
    ws.eliminate(st.clone(), st.clone(), all_q.clone(), Half::X, Op::Cnot, "clear A by CNOT")?;
    let ok = ws.block(st.clone(), Half::Z, st.clone()) == add(&b, &mul_t(&cc, &a))
        && ws.block(xr.clone(), Half::Z, st.clone()) == mul_t(&m1, &cc)
        && ws.block(zr.clone(), Half::Z, st.clone()) == mul_t(&m3, &cc);
    ws.check("A cleared, B becomes B + CA^T, M5 and M6 become M1C^T and M3C^T", ok, "")?;
    gram_check(&mut ws, &gram, "clearing A")?;

    ws.eliminate(st.clone(), st.clone(), all_q.clone(), Half::Z, Op::Cz, "clear C by CZ")?;
    let ok = ws.block_is_zero(s..s + 2 * c, Half::Z, st.clone());
    ws.check("C cleared, M5 and M6 vanish", ok, "")?;

    ws.clear_symmetric(st.clone(), st.clone(), "clear B by P and CZ")?;
    let ok = ws.block_is_zero(st.clone(), Half::X, all_q.clone())
        && ws.block_is_zero(st.clone(), Half::Z, 0..n)
        && ws.block_is_zero(s..s + 2 * c, Half::X, st.clone())
        && ws.block_is_zero(s..s + 2 * c, Half::Z, st.clone());
    ws.check("stabilizer rows reach [I O | O O]", ok, "")?;
    gram_check(&mut ws, &gram, "the stabilizer rows")?;

    // X-bar rows.
    ws.columns_to_identity(xr.clone(), e.clone(), "M11 to identity")?;
    let ok = ws.block(xr.clone(), Half::Z, e.clone()) == mul_t(&m21, &m11);
    ws.check("M11 becomes I, M21 becomes M21 M11^T", ok, "")?;

    ws.eliminate(xr.clone(), e.clone(), kq.clone(), Half::X, Op::Cnot, "clear M12 by CNOT")?;
    let k2 = ws.block(xr.clone(), Half::Z, e.clone());
    let ok = k2 == add(&mul_t(&m21, &m11), &mul_t(&m22, &m12)) && k2.is_symmetric()?;
    ws.check("K2 = M21 M11^T + M22 M12^T is symmetric", ok, "")?;

    ws.eliminate(xr.clone(), e.clone(), kq.clone(), Half::Z, Op::Cz, "clear M22 by CZ")?;
    ws.clear_symmetric(xr.clone(), e.clone(), "clear K2 by P and CZ")?;
    let ok = ws.block_is_identity(zr.clone(), Half::Z, e.clone());
    ws.check("L2 becomes I after clearing K2", ok, "")?;
    gram_check(&mut ws, &gram, "the X-bar rows")?;
    ws.hadamards(e.clone());

    // Z-bar rows.
    ws.eliminate(zr.clone(), e.clone(), kq.clone(), Half::X, Op::Cnot, "clear K3 by CNOT")?;
    let w = ws.block(zr.clone(), Half::Z, e.clone());
    ws.check("W is symmetric after clearing K3", w.is_symmetric()?, "")?;
    ws.eliminate(zr.clone(), e.clone(), kq.clone(), Half::Z, Op::Cz, "clear L4 by CZ")?;
    ws.clear_symmetric(zr.clone(), e.clone(), "clear W by P and CZ")?;
    gram_check(&mut ws, &gram, "the Z-bar rows")?;
    ws.hadamards(0..s + c);

    let raw = CheckMatrix::raw(p).into_matrix();
    let ok = ws.mat == raw;
    ws.check("all rows reach the raw matrix", ok, "")?;
    Ok(ws)
}

/// Output of the standalone reduction passes.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub circuit: Circuit,
    pub matrix: BitMatrix,
    pub budgets: Vec<BudgetCheck>,
}

fn leading_identity(mat: &BitMatrix) -> Result<(usize, usize)> {
    if mat.cols() % 2 != 0 {
        return Err(Error::DimensionMismatch(format!("{} columns is not 2n", mat.cols())));
    }
    let (r, n) = (mat.rows(), mat.cols() / 2);
    if r > n || mat.submatrix(0..r, 0..r) != BitMatrix::identity(r) {
        return Err(Error::InvalidArgument(
            "X-part must start with an identity block".into(),
        ));
    }
    Ok((r, n))
}

fn finish(ws: Workspace) -> Result<Reduction> {
    let n = ws.n;
    Ok(Reduction {
        circuit: Circuit::from_gates(n, ws.gates)?,
        matrix: ws.mat,
        budgets: ws.budgets,
    })
}

fn single_pass(mat: &BitMatrix, m: usize, read: Half, op: Op, stage: &str) -> Result<Reduction> {
    let (r, n) = leading_identity(mat)?;
    build_block_schedule(m)?;
    let mut ws = Workspace::new(mat.clone(), Strategy::Blocked(m));
    ws.eliminate(0..r, 0..r, r..n, read, op, stage)?;
    finish(ws)
}

/// `[I A | B C]` to `[I O | B + CA^T C]` with blocked CNOTs.
pub fn reduce_ia(mat: &BitMatrix, m: usize) -> Result<Reduction> {
    single_pass(mat, m, Half::X, Op::Cnot, "reduce IA")
}

/// [`reduce_ia`] with every block of the schedule's width following `schedule`.
pub fn reduce_ia_with_schedule(mat: &BitMatrix, schedule: &BlockSchedule) -> Result<Reduction> {
    let (r, n) = leading_identity(mat)?;
    let m = schedule.block_size();
    let mut ws = Workspace::new(mat.clone(), Strategy::Blocked(m)).with_schedule(schedule.clone());
    ws.eliminate(0..r, 0..r, r..n, Half::X, Op::Cnot, "reduce IA")?;
    finish(ws)
}

/// Same action as [`reduce_ia`]; named for its effect on the Z-part.
pub fn clear_a_by_cnot(mat: &BitMatrix, m: usize) -> Result<Reduction> {
    single_pass(mat, m, Half::X, Op::Cnot, "clear A by CNOT")
}

/// `[I A | B C]` to `[I A | B + AC^T O]` with blocked CZs.
pub fn clear_c_by_cz(mat: &BitMatrix, m: usize) -> Result<Reduction> {
    single_pass(mat, m, Half::Z, Op::Cz, "clear C by CZ")
}

/// `[I O | B O]` with `B` symmetric to `[I O | O O]`.
pub fn reduce_symmetric_b(mat: &BitMatrix, m: usize) -> Result<Reduction> {
    let (r, n) = leading_identity(mat)?;
    build_block_schedule(m)?;
    if !mat.submatrix(0..r, r..n).is_zero() || !mat.submatrix(0..r, n + r..2 * n).is_zero() {
        return Err(Error::InvalidArgument("expected [I O | B O]".into()));
    }
    if !mat.submatrix(0..r, n..n + r).is_symmetric()? {
        return Err(Error::InvalidArgument("B is not symmetric".into()));
    }
    let mut ws = Workspace::new(mat.clone(), Strategy::Blocked(m));
    ws.clear_symmetric(0..r, 0..r, "reduce symmetric B")?;
    finish(ws)
}

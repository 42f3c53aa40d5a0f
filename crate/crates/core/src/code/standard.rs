//! Normalisation of a check matrix into the shape
//!
//! ```text
//!        s     c+k          s     c+k
//!   s [  I      A    |      B      C  ]
//!   c [  O     M1    |     M5     M2  ]
//!   c [  O     M3    |     M6     M4  ]
//! ```
//!
//! with `M1 = [M11 M12]` and `M11` (the first `c` columns of `M1`) nonsingular.
//!
//! Only role-preserving row operations are used: stabilizer rows are combined freely
//! and may be added to pair rows, but pair rows are never added to anything. Column
//! changes are realised by Hadamard and SWAP gates, which are returned so that a
//! synthesised circuit can account for them.

use crate::circuit::{apply_gate_unchecked, AuditCheck, Circuit, Gate};
use crate::code::CheckMatrix;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub check: CheckMatrix,
    /// `qubit_perm[position] = original qubit` after the recorded SWAPs.
    pub qubit_perm: Vec<usize>,
    /// Hadamards and SWAPs applied to the input, in order.
    pub pre_gates: Circuit,
}

struct Normaliser {
    n: usize,
    mat: BitMatrix,
    gates: Vec<Gate>,
    perm: Vec<usize>,
}

impl Normaliser {
    fn apply(&mut self, g: Gate) {
        apply_gate_unchecked(&mut self.mat, self.n, g);
        if let Gate::Swap(a, b) = g {
            self.perm.swap(a, b);
        }
        self.gates.push(g);
    }

    /// Gauss-Jordan on `rows`, choosing pivots among `cols`. Rows outside the range
    /// are untouched.
    fn reduce_rows(&mut self, rows: std::ops::Range<usize>, cols: &[usize]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = rows.start;
        for &c in cols {
            if next == rows.end {
                break;
            }
            let Some(p) = (next..rows.end).find(|&r| self.mat.get(r, c)) else {
                continue;
            };
            if p != next {
                let _ = self.mat.swap_rows(p, next);
            }
            for r in rows.clone() {
                if r != next && self.mat.get(r, c) {
                    self.mat.xor_row_unchecked(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    /// Hadamards on qubits of `qubits` until the X-part of `rows` restricted to those
    /// qubits has full row rank. Relies on the rows commuting pairwise.
    fn repair_x_rank(&mut self, rows: std::ops::Range<usize>, qubits: std::ops::Range<usize>) -> Result<()> {
        let n = self.n;
        let mut probe = BitMatrix::zeros(rows.len(), 2 * qubits.len());
        for (ro, r) in rows.clone().enumerate() {
            for (qo, q) in qubits.clone().enumerate() {
                probe.set(ro, qo, self.mat.get(r, q));
                probe.set(ro, qubits.len() + qo, self.mat.get(r, n + q));
            }
        }
        let x_pivots = probe.rref_in_place(0..qubits.len());
        if x_pivots.len() == rows.len() {
            return Ok(());
        }
        // Rows below the X pivots have zero X-part; their Z-part restricted to the
        // non-pivot qubits is independent because they commute with the pivot rows.
        let mut rest = probe.select_rows(x_pivots.len()..rows.len());
        let candidates: Vec<usize> = (0..qubits.len())
            .filter(|q| !x_pivots.contains(q))
            .map(|q| qubits.len() + q)
            .collect();
        let mut z_pivots = Vec::new();
        let mut next = 0;
        for &c in &candidates {
            if next == rest.rows() {
                break;
            }
            let Some(p) = (next..rest.rows()).find(|&r| rest.get(r, c)) else {
                continue;
            };
            let _ = rest.swap_rows(p, next);
            for r in 0..rest.rows() {
                if r != next && rest.get(r, c) {
                    rest.xor_row_unchecked(next, r);
                }
            }
            z_pivots.push(c - qubits.len());
            next += 1;
        }
        if x_pivots.len() + z_pivots.len() < rows.len() {
            return Err(Error::InvalidCode(format!(
                "rows {}..{} are not independent on qubits {}..{}",
                rows.start, rows.end, qubits.start, qubits.end
            )));
        }
        for q in z_pivots {
            self.apply(Gate::H(qubits.start + q));
        }
        Ok(())
    }

    /// SWAPs so that `pivots[i]` ends up at position `base + i`.
    fn move_to_front(&mut self, pivots: &[usize], base: usize) {
        let mut target = pivots.to_vec();
        for i in 0..target.len() {
            let dst = base + i;
            let src = target[i];
            if src != dst {
                self.apply(Gate::Swap(dst, src));
                for t in target.iter_mut().skip(i + 1) {
                    if *t == dst {
                        *t = src;
                    }
                }
            }
        }
    }
}

/// Brings a valid check matrix into standard form.
pub fn standard_form(input: &CheckMatrix) -> Result<StandardForm> {
    let report = input.validate();
    if !report.full_rank {
        return Err(Error::InvalidCode(format!(
            "rank {} below the required {}",
            report.rank,
            input.params().num_rows()
        )));
    }
    if !report.pairing {
        return Err(Error::InvalidCode(
            "symplectic products differ from the required pairing".into(),
        ));
    }
    let params = input.params();
    let (n, s, c) = (params.n(), params.s(), params.c());
    let mut w = Normaliser {
        n,
        mat: input.matrix().clone(),
        gates: Vec::new(),
        perm: (0..n).collect(),
    };

    if s > 0 {
        w.repair_x_rank(0..s, 0..n)?;
        let all: Vec<usize> = (0..n).collect();
        let pivots = w.reduce_rows(0..s, &all);
        debug_assert_eq!(pivots.len(), s);
        w.move_to_front(&pivots, 0);
        for r in s..s + 2 * c {
            for q in 0..s {
                if w.mat.get(r, q) {
                    w.mat.xor_row_unchecked(q, r);
                }
            }
        }
    }

    if c > 0 {
        w.repair_x_rank(s..s + c, s..n)?;
        let mut m1 = w.mat.submatrix(s..s + c, s..n);
        let pivots: Vec<usize> = m1.rref_in_place(0..n - s).into_iter().map(|q| s + q).collect();
        if pivots.len() != c {
            return Err(Error::audit("standard form", "M1 rank repair failed"));
        }
        w.move_to_front(&pivots, s);
    }

    let check = CheckMatrix::new(params, w.mat)?;
    if !check.is_standard_form() {
        return Err(Error::audit("standard form", "normalised matrix lacks the standard shape"));
    }
    Ok(StandardForm {
        check,
        qubit_perm: w.perm,
        pre_gates: Circuit::from_gates(n, w.gates)?,
    })
}

/// The six block identities implied by the pairing, for a standard-form matrix.
pub(crate) fn block_identities(h: &CheckMatrix) -> Vec<AuditCheck> {
    let p = h.params();
    let (n, s, c) = (p.n(), p.s(), p.c());
    let m = h.matrix();
    let x = |rows: std::ops::Range<usize>| m.submatrix(rows, s..n);
    let zs = |rows: std::ops::Range<usize>| m.submatrix(rows, n..n + s);
    let zq = |rows: std::ops::Range<usize>| m.submatrix(rows, n + s..2 * n);
    let (st, xr, zr) = (0..s, s..s + c, s + c..s + 2 * c);
    let (a, b, cc) = (x(st.clone()), zs(st.clone()), zq(st));
    let (m1, m5, m2) = (x(xr.clone()), zs(xr.clone()), zq(xr));
    let (m3, m6, m4) = (x(zr.clone()), zs(zr.clone()), zq(zr));

    let mul = |l: &BitMatrix, r: &BitMatrix| l.mul_transpose(r).expect("block shapes agree");
    let add = |l: &BitMatrix, r: &BitMatrix| l.add(r).expect("block shapes agree");
    let check = |name: &str, lhs: BitMatrix, rhs: BitMatrix| AuditCheck {
        name: name.to_string(),
        passed: lhs == rhs,
        detail: String::new(),
    };

    let bt = b.transpose();
    vec![
        check(
            "B + CA^T + B^T + AC^T = O",
            add(&add(&b, &mul(&cc, &a)), &add(&bt, &mul(&a, &cc))),
            BitMatrix::zeros(s, s),
        ),
        check("M5 = M1 C^T + M2 A^T", m5, add(&mul(&m1, &cc), &mul(&m2, &a))),
        check("M6 = M3 C^T + M4 A^T", m6, add(&mul(&m3, &cc), &mul(&m4, &a))),
        check(
            "M1 M2^T + M2 M1^T = O",
            add(&mul(&m1, &m2), &mul(&m2, &m1)),
            BitMatrix::zeros(c, c),
        ),
        check(
            "M3 M4^T + M4 M3^T = O",
            add(&mul(&m3, &m4), &mul(&m4, &m3)),
            BitMatrix::zeros(c, c),
        ),
        check(
            "M1 M4^T + M2 M3^T = I",
            add(&mul(&m1, &m4), &mul(&m2, &m3)),
            BitMatrix::identity(c),
        ),
    ]
}

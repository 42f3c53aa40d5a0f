//! Check matrices of stabilizer and entanglement-assisted stabilizer codes.
//!
//! A [`CheckMatrix`] for an `[[n, k; c]]` code has `s + 2c` rows over `2n` columns
//! (`s = n - k - c`), split `[X-part | Z-part]`. Rows come in a fixed role order:
//!
//! 1. `s` stabilizer rows (the images of `Z̄_1 .. Z̄_s`),
//! 2. `c` rows for the `X̄` halves of the entangled pairs,
//! 3. `c` rows for the matching `Z̄` halves.
//!
//! With this order the Gram matrix of symplectic products is the fixed pairing
//! [`pairing_matrix`]`(s, c)`: everything commutes except row `s + i` with row `s + c + i`.

mod pauli;
mod standard;
mod text;

pub use pauli::{Pauli, PauliString};
pub use standard::{standard_form, StandardForm};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{apply_gate_transposed, AuditCheck, Gate};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct CodeParams {
    n: usize,
    k: usize,
    c: usize,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, c: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a code needs at least one qubit".into()));
        }
        if k + c > n {
            return Err(Error::InvalidArgument(format!(
                "k + c = {} exceeds n = {n}",
                k + c
            )));
        }
        Ok(Self { n, k, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// Number of ancillas prepared in `|0>`.
    pub fn s(&self) -> usize {
        self.n - self.k - self.c
    }

    pub fn num_rows(&self) -> usize {
        self.s() + 2 * self.c
    }
}

/// `J(s, c)`: the Gram matrix every valid check matrix must have.
pub fn pairing_matrix(s: usize, c: usize) -> BitMatrix {
    let mut j = BitMatrix::zeros(s + 2 * c, s + 2 * c);
    for i in 0..c {
        j.set(s + i, s + c + i, true);
        j.set(s + c + i, s + i, true);
    }
    j
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CheckMatrix {
    params: CodeParams,
    mat: BitMatrix,
}

impl CheckMatrix {
    /// Wraps a matrix after checking its shape. Use [`CheckMatrix::validate`] for the
    /// algebraic conditions.
    pub fn new(params: CodeParams, mat: BitMatrix) -> Result<Self> {
        if mat.rows() != params.num_rows() || mat.cols() != 2 * params.n() {
            return Err(Error::DimensionMismatch(format!(
                "[[{}, {}; {}]] needs a {}x{} matrix, got {}x{}",
                params.n(),
                params.k(),
                params.c(),
                params.num_rows(),
                2 * params.n(),
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(Self { params, mat })
    }

    /// The unencoded matrix: `Z_1..Z_s`, then `X_{s+1}..X_{s+c}`, then `Z_{s+1}..Z_{s+c}`.
    pub fn raw(params: CodeParams) -> Self {
        let (n, s, c) = (params.n(), params.s(), params.c());
        let mut mat = BitMatrix::zeros(params.num_rows(), 2 * n);
        for i in 0..s {
            mat.set(i, n + i, true);
        }
        for i in 0..c {
            mat.set(s + i, s + i, true);
            mat.set(s + c + i, n + s + i, true);
        }
        Self { params, mat }
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.mat
    }

    #[cfg(test)]
    pub(crate) fn matrix_mut(&mut self) -> &mut BitMatrix {
        &mut self.mat
    }

    pub fn apply_gate(&mut self, g: Gate) -> Result<()> {
        crate::circuit::apply_gate(&mut self.mat, g)
    }

    pub fn validate(&self) -> ValidationReport {
        let (s, c) = (self.params.s(), self.params.c());
        let rank = self.mat.rank();
        let full_rank = rank == self.params.num_rows();
        let gram = self.mat.symplectic_gram().expect("shape checked at construction");
        let pairing = gram == pairing_matrix(s, c);
        let identities = if self.is_standard_form() {
            Some(standard::block_identities(self))
        } else {
            None
        };
        ValidationReport {
            rank,
            full_rank,
            pairing,
            identities,
        }
    }

    /// True when the matrix has the `[I A | B C]` stabilizer block, zero X-part on
    /// the first `s` qubits of the pair rows, and a nonsingular `M11`.
    pub fn is_standard_form(&self) -> bool {
        let (s, c) = (self.params.s(), self.params.c());
        let rows = self.params.num_rows();
        for r in 0..rows {
            for q in 0..s {
                let want = r < s && r == q;
                if self.mat.get(r, q) != want {
                    return false;
                }
            }
        }
        c == 0 || self.mat.submatrix(s..s + c, s..s + c).rank() == c
    }

    /// Adds Bob's `c` qubits: `X` on Bob's qubit `i` for pair row `s + i`, `Z` on Bob's
    /// qubit `i` for pair row `s + c + i`. The result is an `(s + 2c) x 2(n + c)`
    /// matrix whose rows all commute.
    pub fn extend_to_full(&self) -> BitMatrix {
        let (n, s, c) = (self.params.n(), self.params.s(), self.params.c());
        let total = n + c;
        let mut out = BitMatrix::zeros(self.params.num_rows(), 2 * total);
        for r in 0..self.params.num_rows() {
            for col in self.mat.row(r).iter_ones() {
                let dst = if col < n { col } else { total + (col - n) };
                out.set(r, dst, true);
            }
        }
        for i in 0..c {
            out.set(s + i, n + i, true);
            out.set(s + c + i, total + n + i, true);
        }
        out
    }

    /// A representative that is identical for two matrices exactly when they describe
    /// the same code with the same pairing: the stabilizer rows in reduced echelon form,
    /// and every pair row reduced modulo the stabilizer span.
    pub fn canonical_rows(&self) -> BitMatrix {
        let s = self.params.s();
        let (stab, pivots) = self.mat.select_rows(0..s).rref();
        let pairs = self.mat.select_rows(s..self.params.num_rows());
        let mut reduced = pairs.clone();
        for r in 0..pairs.rows() {
            for (i, &p) in pivots.iter().enumerate() {
                if reduced.get(r, p) {
                    reduced.xor_into_row(r, &stab.row(i));
                }
            }
        }
        stab.vstack(&reduced).expect("same column count")
    }

    /// Same stabilizer group and the same anticommuting pairs, row by row.
    pub fn equivalent_to(&self, other: &CheckMatrix) -> bool {
        self.params == other.params && self.canonical_rows() == other.canonical_rows()
    }

    pub fn parse(text: &str) -> Result<Self> {
        text::parse_check_matrix(text)
    }

    pub fn emit(&self) -> String {
        text::emit_check_matrix(self)
    }

    /// Formats a single `(x|z)` vector as `x..x|z..z`.
    pub fn format_row(v: &BitVector) -> String {
        text::format_xz(v)
    }

    pub fn parse_row(text: &str) -> Result<BitVector> {
        text::parse_xz(text).map_err(|m| Error::InvalidArgument(m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub rank: usize,
    pub full_rank: bool,
    /// Gram matrix of symplectic products equals the fixed pairing `J(s, c)`.
    pub pairing: bool,
    /// The six block identities, checked only for standard-form inputs.
    pub identities: Option<Vec<AuditCheck>>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.full_rank
            && self.pairing
            && self
                .identities
                .as_ref()
                .is_none_or(|ids| ids.iter().all(|a| a.passed))
    }
}

/// Deterministic pseudo-random code: `n²` random CNOT/CZ/H/P gates applied to the raw
/// matrix, so the result is valid by construction.
pub fn random_code(params: CodeParams, seed: u64) -> CheckMatrix {
    let n = params.n();
    random_code_with_gates(params, seed, n * n)
}

pub fn random_code_with_gates(params: CodeParams, seed: u64, gates: usize) -> CheckMatrix {
    let n = params.n();
    let raw = CheckMatrix::raw(params);
    if gates == 0 {
        return raw;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = raw.mat.transpose();
    for _ in 0..gates {
        let a = rng.gen_range(0..n);
        let g = if n == 1 {
            if rng.gen() {
                Gate::H(a)
            } else {
                Gate::P(a)
            }
        } else {
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            match rng.gen_range(0..4) {
                0 => Gate::Cnot { control: a, target: b },
                1 => Gate::Cz(a, b),
                2 => Gate::H(a),
                _ => Gate::P(a),
            }
        };
        apply_gate_transposed(&mut t, n, g);
    }
    CheckMatrix {
        params,
        mat: t.transpose(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::row_space_equal;
    use crate::gf2::symplectic_product;

    fn p(n: usize, k: usize, c: usize) -> CodeParams {
        CodeParams::new(n, k, c).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(CodeParams::new(0, 0, 0).is_err());
        assert!(CodeParams::new(3, 2, 2).is_err());
        let q = p(8, 2, 2);
        assert_eq!((q.s(), q.num_rows()), (4, 8));
    }

    #[test]
    fn raw_matrix_examples() {
        assert_eq!(CheckMatrix::raw(p(3, 3, 0)).matrix().rows(), 0);
        assert_eq!(CheckMatrix::raw(p(3, 3, 0)).matrix().cols(), 6);
        assert_eq!(
            CheckMatrix::raw(p(2, 1, 0)).matrix(),
            &BitMatrix::parse_rows(&["0010"]).unwrap()
        );
        assert_eq!(
            CheckMatrix::raw(p(2, 0, 1)).matrix(),
            &BitMatrix::parse_rows(&["0010", "0100", "0001"]).unwrap()
        );
    }

    #[test]
    fn raw_matrices_validate() {
        for (n, k, c) in [(1, 0, 0), (2, 1, 0), (2, 0, 1), (5, 1, 2), (9, 0, 4), (4, 4, 0)] {
            let report = CheckMatrix::raw(p(n, k, c)).validate();
            assert!(report.passed(), "{n} {k} {c}: {report:?}");
        }
    }

    #[test]
    fn flipped_bit_breaks_pairing() {
        // Rows of raw [[3,0;1]]: Z0, Z1, X2, Z2. Turning row 1 into X0 Z1 makes it
        // anticommute with row 0.
        let mut h = CheckMatrix::raw(p(3, 0, 1));
        h.matrix_mut().flip(1, 0);
        let report = h.validate();
        assert!(!report.pairing);
        assert!(symplectic_product(&h.matrix().row(0), &h.matrix().row(1)).unwrap());
    }

    #[test]
    fn random_codes_are_valid_and_deterministic() {
        for (n, k, c) in [(1, 0, 0), (2, 1, 0), (8, 2, 2), (16, 4, 3), (33, 5, 7), (64, 16, 6)] {
            for seed in 0..3 {
                let h = random_code(p(n, k, c), seed);
                assert!(h.validate().passed(), "[[{n},{k};{c}]] seed {seed}");
                assert_eq!(h, random_code(p(n, k, c), seed));
                assert_eq!(
                    h.matrix().symplectic_gram().unwrap(),
                    CheckMatrix::raw(p(n, k, c)).matrix().symplectic_gram().unwrap()
                );
            }
        }
        assert_eq!(random_code_with_gates(p(5, 1, 1), 9, 0), CheckMatrix::raw(p(5, 1, 1)));
        assert_ne!(random_code(p(16, 4, 2), 1), random_code(p(16, 4, 2), 2));
    }

    #[test]
    fn extension_is_abelian() {
        let h = CheckMatrix::raw(p(2, 1, 0));
        assert_eq!(&h.extend_to_full(), h.matrix());

        // Raw [[2,0;1]] extended by one Bob qubit.
        let raw = CheckMatrix::raw(p(2, 0, 1)).extend_to_full();
        assert_eq!(raw, BitMatrix::parse_rows(&["000100", "011000", "000011"]).unwrap());

        for (n, k, c) in [(8, 2, 2), (12, 3, 4), (20, 0, 10)] {
            let h = standard_form(&random_code(p(n, k, c), 4)).unwrap().check;
            let full = h.extend_to_full();
            assert!(full.symplectic_gram().unwrap().is_zero());
        }
    }

    #[test]
    fn equivalence_matches_extended_row_spaces() {
        let q = p(10, 2, 3);
        let h = random_code(q, 5);
        let mut g = h.clone();
        let s = q.s();
        // Allowed: stabilizer rows mixed, stabilizer rows added to pair rows.
        g.matrix_mut().add_row(0, 1).unwrap();
        g.matrix_mut().add_row(2, s + 1).unwrap();
        g.matrix_mut().add_row(3, s + q.c() + 2).unwrap();
        assert!(h.equivalent_to(&g));
        assert!(row_space_equal(&h.extend_to_full(), &g.extend_to_full()).unwrap());

        // Not allowed: mixing two pair rows keeps the Alice row space but changes the code.
        let mut bad = h.clone();
        bad.matrix_mut().add_row(s, s + 1).unwrap();
        assert!(row_space_equal(h.matrix(), bad.matrix()).unwrap());
        assert!(!h.equivalent_to(&bad));
        assert!(!row_space_equal(&h.extend_to_full(), &bad.extend_to_full()).unwrap());
    }
}

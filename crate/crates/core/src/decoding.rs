//! Syndromes and exact, exponential-time decoders.
//!
//! EMLD returns a minimum-weight error with the given syndrome. DEMLD returns a
//! representative of the most probable coset `e + Row(H)` among the solutions. Both
//! break ties toward the lexicographically smallest bit string `x1..xn|z1..zn`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::CheckMatrix;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

pub const EMLD_MAX_QUBITS: usize = 10;
pub const DEMLD_MAX_BITS: usize = 20;
pub const COSET_MAX_ROWS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome(BitVector);

impl Syndrome {
    pub fn new(bits: BitVector) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> &BitVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        BitVector::parse(text).map(Self)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelKind {
    /// X and Z flips independently with probability `p` each.
    IndependentXz,
    /// I with probability `1 - p`, each of X, Y, Z with `p / 3`.
    Depolarizing,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelModel {
    kind: ChannelKind,
    p: f64,
}

impl ChannelModel {
    pub fn new(kind: ChannelKind, p: f64) -> Result<Self> {
        let limit = match kind {
            ChannelKind::IndependentXz => 0.5,
            ChannelKind::Depolarizing => 0.75,
        };
        if !(0.0..limit).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "p = {p} outside [0, {limit}) for this channel"
            )));
        }
        Ok(Self { kind, p })
    }

    pub fn xz(p: f64) -> Result<Self> {
        Self::new(ChannelKind::IndependentXz, p)
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(ChannelKind::Depolarizing, p)
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    fn prob(&self, wt: usize, gw: usize, n: usize) -> f64 {
        let p = self.p;
        match self.kind {
            ChannelKind::IndependentXz => p.powi(wt as i32) * (1.0 - p).powi((2 * n - wt) as i32),
            ChannelKind::Depolarizing => (p / 3.0).powi(gw as i32) * (1.0 - p).powi((n - gw) as i32),
        }
    }

    fn metric(&self, wt: usize, gw: usize) -> usize {
        match self.kind {
            ChannelKind::IndependentXz => wt,
            ChannelKind::Depolarizing => gw,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub e: BitVector,
    /// `wt(e)` for the independent channel, `gw(e)` for the depolarizing one.
    pub weight: usize,
    pub coset_probability: Option<f64>,
}

fn check_error_len(e: &BitVector, n: usize) -> Result<()> {
    if e.len() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "error has {} bits, expected {}",
            e.len(),
            2 * n
        )));
    }
    Ok(())
}

/// Bit `i` is the symplectic product of `e` with row `i` of `h`.
pub fn syndrome(e: &BitVector, h: &CheckMatrix) -> Result<Syndrome> {
    check_error_len(e, h.params().n())?;
    let m = h.matrix().swap_halves()?;
    Ok(Syndrome(m.mul_vec(e)?))
}

fn halves(e: &BitVector) -> Result<(BitVector, BitVector)> {
    if e.len() % 2 != 0 {
        return Err(Error::DimensionMismatch(format!(
            "odd length {} is not an (x|z) vector",
            e.len()
        )));
    }
    let n = e.len() / 2;
    Ok((e.slice(0..n), e.slice(n..2 * n)))
}

pub fn wt(e: &BitVector) -> Result<usize> {
    halves(e)?;
    Ok(e.weight())
}

/// Number of qubits on which `e` acts nontrivially.
pub fn gw(e: &BitVector) -> Result<usize> {
    let (x, z) = halves(e)?;
    Ok(x.or(&z).weight())
}

pub fn error_probability(e: &BitVector, ch: &ChannelModel) -> Result<f64> {
    let (x, z) = halves(e)?;
    Ok(ch.prob(e.weight(), x.or(&z).weight(), x.len()))
}

/// An `(x|z)` vector as separate word arrays, so XOR, weights and ordering run
/// without allocation inside the enumeration loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Split {
    x: Vec<u64>,
    z: Vec<u64>,
}

impl Split {
    fn new(v: &BitVector) -> Self {
        let n = v.len() / 2;
        Self {
            x: v.slice(0..n).words().to_vec(),
            z: v.slice(n..2 * n).words().to_vec(),
        }
    }

    fn to_vector(&self, n: usize) -> BitVector {
        let bits = (0..2 * n).map(|i| {
            let (half, j) = if i < n { (&self.x, i) } else { (&self.z, i - n) };
            (half[j / 64] >> (j % 64)) & 1 == 1
        });
        BitVector::from_bools(bits)
    }

    fn xor(&mut self, o: &Split) {
        for (a, b) in self.x.iter_mut().zip(&o.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&o.z) {
            *a ^= b;
        }
    }

    fn weights(&self) -> (usize, usize) {
        let mut wt = 0;
        let mut gw = 0;
        for (a, b) in self.x.iter().zip(&self.z) {
            wt += (a.count_ones() + b.count_ones()) as usize;
            gw += (a | b).count_ones() as usize;
        }
        (wt, gw)
    }

    /// Bit-string order with qubit 0 of the X-part most significant.
    fn lex_cmp(&self, o: &Split) -> Ordering {
        for (a, b) in self.x.iter().chain(&self.z).zip(o.x.iter().chain(&o.z)) {
            let d = a ^ b;
            if d != 0 {
                let low = d & d.wrapping_neg();
                return if a & low == 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    }
}

/// Calls `visit` on every element of `base + span(basis)` in Gray-code order.
fn for_each_in_span(base: &Split, basis: &[Split], mut visit: impl FnMut(&Split)) {
    let mut cur = base.clone();
    visit(&cur);
    for t in 1u64..(1u64 << basis.len()) {
        cur.xor(&basis[t.trailing_zeros() as usize]);
        visit(&cur);
    }
}

/// A particular solution of `e Λ H^T = y` and a basis of the homogeneous solutions.
fn solution_space(h: &CheckMatrix, y: &Syndrome) -> Result<(BitVector, Vec<BitVector>)> {
    let rows = h.params().num_rows();
    if y.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "syndrome has {} bits, code has {} rows",
            y.len(),
            rows
        )));
    }
    let m = h.matrix().swap_halves()?;
    let e0 = m
        .solve(y.bits())?
        .ok_or_else(|| Error::InvalidCode("no error has this syndrome; H is not full rank".into()))?;
    Ok((e0, m.kernel()))
}

/// Minimum-weight error with syndrome `y`.
pub fn emld(h: &CheckMatrix, y: &Syndrome, ch: &ChannelModel) -> Result<DecodeResult> {
    let n = h.params().n();
    if n > EMLD_MAX_QUBITS {
        return Err(Error::ResourceGuard(format!(
            "emld enumerates 2^(2n - rows) errors; n = {n} exceeds the limit {EMLD_MAX_QUBITS}"
        )));
    }
    let (e0, kernel) = solution_space(h, y)?;
    let basis: Vec<Split> = kernel.iter().map(Split::new).collect();
    let mut best: Option<(usize, Split)> = None;
    for_each_in_span(&Split::new(&e0), &basis, |v| {
        let (w, g) = v.weights();
        let score = ch.metric(w, g);
        let better = match &best {
            None => true,
            Some((bs, be)) => score < *bs || (score == *bs && v.lex_cmp(be) == Ordering::Less),
        };
        if better {
            best = Some((score, v.clone()));
        }
    });
    let (weight, e) = best.expect("the solution set is never empty");
    Ok(DecodeResult {
        e: e.to_vector(n),
        weight,
        coset_probability: None,
    })
}

/// Exact `P(e + Row(H))`, summed over all `2^rows` members.
///
/// The sum starts from the canonical member and walks the reduced rows in a fixed
/// order, so every member of a coset yields the bit-identical value.
pub fn coset_probability(e: &BitVector, h: &CheckMatrix, ch: &ChannelModel) -> Result<f64> {
    let n = h.params().n();
    check_error_len(e, n)?;
    let rows = h.params().num_rows();
    if rows > COSET_MAX_ROWS {
        return Err(Error::ResourceGuard(format!(
            "coset sum has 2^{rows} terms; more than {COSET_MAX_ROWS} rows is refused"
        )));
    }
    let (rref, pivots) = h.matrix().rref();
    let basis: Vec<Split> = (0..pivots.len()).map(|r| Split::new(&rref.row(r))).collect();
    Ok(coset_sum(&Split::new(&reduce_with(e, &rref, &pivots)), &basis, n, ch))
}

fn coset_sum(rep: &Split, basis: &[Split], n: usize, ch: &ChannelModel) -> f64 {
    let mut total = 0.0;
    for_each_in_span(rep, basis, |v| {
        let (w, g) = v.weights();
        total += ch.prob(w, g, n);
    });
    total
}

/// Canonical member of `e + Row(H)`: `e` reduced against the reduced echelon form of `H`.
pub fn coset_representative(e: &BitVector, h: &CheckMatrix) -> Result<BitVector> {
    check_error_len(e, h.params().n())?;
    let (r, pivots) = h.matrix().rref();
    Ok(reduce_with(e, &r, &pivots))
}

fn reduce_with(e: &BitVector, rref: &BitMatrix, pivots: &[usize]) -> BitVector {
    let mut out = e.clone();
    for (i, &p) in pivots.iter().enumerate() {
        if out.get(p) {
            out.xor_assign(&rref.row(i));
        }
    }
    out
}

/// Most probable coset of `Row(H)` among the solutions of `e Λ H^T = y`.
///
/// For `c > 0` the coset is taken literally, including members whose syndrome differs
/// from `y`.
pub fn demld(h: &CheckMatrix, y: &Syndrome, ch: &ChannelModel) -> Result<DecodeResult> {
    let n = h.params().n();
    if 2 * n > DEMLD_MAX_BITS {
        return Err(Error::ResourceGuard(format!(
            "demld enumerates every solution; 2n = {} exceeds the limit {DEMLD_MAX_BITS}",
            2 * n
        )));
    }
    let rows = h.params().num_rows();
    if rows > COSET_MAX_ROWS {
        return Err(Error::ResourceGuard(format!(
            "coset sum has 2^{rows} terms; more than {COSET_MAX_ROWS} rows is refused"
        )));
    }
    let (e0, kernel) = solution_space(h, y)?;
    let (rref, pivots) = h.matrix().rref();
    let row_basis: Vec<Split> = (0..pivots.len()).map(|r| Split::new(&rref.row(r))).collect();
    let basis: Vec<Split> = kernel.iter().map(Split::new).collect();
    // Smallest solution seen in each coset, keyed by the coset's canonical member.
    let mut groups: HashMap<Split, Split> = HashMap::new();
    for_each_in_span(&Split::new(&e0), &basis, |v| {
        let rep = Split::new(&reduce_with(&v.to_vector(n), &rref, &pivots));
        groups
            .entry(rep)
            .and_modify(|best| {
                if v.lex_cmp(best) == Ordering::Less {
                    *best = v.clone();
                }
            })
            .or_insert_with(|| v.clone());
    });
    let mut best: Option<(f64, Split)> = None;
    for (rep, smallest) in &groups {
        let prob = coset_sum(rep, &row_basis, n, ch);
        let better = match &best {
            None => true,
            Some((bp, be)) => prob > *bp || (prob == *bp && smallest.lex_cmp(be) == Ordering::Less),
        };
        if better {
            best = Some((prob, smallest.clone()));
        }
    }
    let (_, e) = best.expect("the solution set is never empty");
    let e = e.to_vector(n);
    let probability = coset_probability(&e, h, ch)?;
    let (w, g) = Split::new(&e).weights();
    Ok(DecodeResult {
        weight: ch.metric(w, g),
        e,
        coset_probability: Some(probability),
    })
}

/// One channel use on `n` qubits, deterministic per seed.
pub fn sample_error(n: usize, ch: &ChannelModel, seed: u64) -> BitVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = BitVector::zeros(2 * n);
    match ch.kind {
        ChannelKind::IndependentXz => {
            for i in 0..2 * n {
                if rng.gen_bool(ch.p) {
                    e.set(i, true);
                }
            }
        }
        ChannelKind::Depolarizing => {
            for q in 0..n {
                if rng.gen_bool(ch.p) {
                    match rng.gen_range(0..3) {
                        0 => e.set(q, true),
                        1 => {
                            e.set(q, true);
                            e.set(n + q, true);
                        }
                        _ => e.set(n + q, true),
                    }
                }
            }
        }
    }
    e
}

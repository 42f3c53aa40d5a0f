//! Column additions that turn an invertible matrix into the identity.
//!
//! Row additions on the transpose are computed and read back as column additions:
//! `(src, dst)` always means "column `dst` += column `src`".

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Plain Gauss-Jordan, at most `c^2` additions.
pub(crate) fn gauss_jordan_ops(m: &BitMatrix) -> Result<Vec<(usize, usize)>> {
    let mut t = square_transpose(m)?;
    let n = t.rows();
    let mut ops = Vec::new();
    for j in 0..n {
        if !t.get(j, j) {
            let r = (j + 1..n).find(|&r| t.get(r, j)).ok_or(Error::Singular)?;
            t.xor_row_unchecked(r, j);
            ops.push((r, j));
        }
        for r in 0..n {
            if r != j && t.get(r, j) {
                t.xor_row_unchecked(j, r);
                ops.push((j, r));
            }
        }
    }
    Ok(ops)
}

/// Sectioned elimination with duplicate-row removal, `O(c^2 / log c)` additions for
/// section width near `log2 c`.
pub(crate) fn sectioned_ops(m: &BitMatrix, section: usize) -> Result<Vec<(usize, usize)>> {
    let section = section.clamp(1, 63);
    let mut t = square_transpose(m)?;
    let mut ops = lower_pass(&mut t, section)?;
    let mut upper_t = t.transpose();
    let upper = lower_pass(&mut upper_t, section)?;
    ops.extend(upper.into_iter().rev().map(|(a, b)| (b, a)));
    Ok(ops)
}

fn square_transpose(m: &BitMatrix) -> Result<BitMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.transpose())
}

/// Row operations making `a` upper triangular with unit diagonal.
fn lower_pass(a: &mut BitMatrix, section: usize) -> Result<Vec<(usize, usize)>> {
    let n = a.rows();
    let mut ops = Vec::new();
    let mut lo = 0;
    while lo < n {
        let hi = (lo + section).min(n);
        let mut first: HashMap<u64, usize> = HashMap::new();
        for r in lo..n {
            let mut pat = 0u64;
            for (b, col) in (lo..hi).enumerate() {
                if a.get(r, col) {
                    pat |= 1 << b;
                }
            }
            if pat == 0 {
                continue;
            }
            match first.get(&pat) {
                Some(&f) => {
                    a.xor_row_unchecked(f, r);
                    ops.push((f, r));
                }
                None => {
                    first.insert(pat, r);
                }
            }
        }
        for col in lo..hi {
            let mut diag = a.get(col, col);
            for r in col + 1..n {
                if a.get(r, col) {
                    if !diag {
                        a.xor_row_unchecked(r, col);
                        ops.push((r, col));
                        diag = true;
                    }
                    a.xor_row_unchecked(col, r);
                    ops.push((col, r));
                }
            }
            if !diag {
                return Err(Error::Singular);
            }
        }
        lo = hi;
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(n: usize, seed: u64) -> BitMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = BitMatrix::identity(n);
        for _ in 0..4 * n * n {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                m.xor_row_unchecked(a, b);
            }
        }
        m
    }

    fn replay(m: &BitMatrix, ops: &[(usize, usize)]) -> BitMatrix {
        let mut out = m.clone();
        for &(src, dst) in ops {
            out.add_col(src, dst).unwrap();
        }
        out
    }

    #[test]
    fn both_methods_reach_identity() {
        for (n, seed) in [(1, 0), (2, 1), (5, 2), (17, 3), (64, 4), (100, 5)] {
            let m = random_invertible(n, seed);
            let gj = gauss_jordan_ops(&m).unwrap();
            assert_eq!(replay(&m, &gj), BitMatrix::identity(n));
            assert!(gj.len() <= n * n);
            for section in [1, 2, 3, 6] {
                let pm = sectioned_ops(&m, section).unwrap();
                assert_eq!(replay(&m, &pm), BitMatrix::identity(n), "n={n} section={section}");
            }
        }
    }

    #[test]
    fn sectioned_beats_gauss_on_large_dense_input() {
        let m = random_invertible(200, 9);
        let gj = gauss_jordan_ops(&m).unwrap().len();
        let pm = sectioned_ops(&m, 5).unwrap().len();
        assert!(pm < gj, "sectioned {pm} vs gauss {gj}");
    }

    #[test]
    fn singular_input_is_rejected() {
        let m = BitMatrix::parse_rows(&["11", "11"]).unwrap();
        assert!(matches!(gauss_jordan_ops(&m), Err(Error::Singular)));
        assert!(matches!(sectioned_ops(&m, 2), Err(Error::Singular)));
        assert!(gauss_jordan_ops(&BitMatrix::zeros(2, 3)).is_err());
    }
}

//! Column-addition walks over an `m x m` block that start and end at the identity and
//! pass through every nonzero `m`-bit column pattern.
//!
//! Patterns are `u32` masks: bit `r` is row `r` of the block.

use crate::error::{Error, Result};

pub const MAX_BLOCK: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleStep {
    /// Column `dst` += column `src` (one CNOT between the block's pivot qubits).
    Add { src: usize, dst: usize },
    /// Column `column` currently holds `pattern`, seen for the first time.
    Visit { pattern: u32, column: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSchedule {
    m: usize,
    steps: Vec<ScheduleStep>,
}

impl BlockSchedule {
    pub fn block_size(&self) -> usize {
        self.m
    }

    pub fn steps(&self) -> &[ScheduleStep] {
        &self.steps
    }

    pub fn additions(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ScheduleStep::Add { .. }))
            .count()
    }

    pub fn pattern_order(&self) -> impl Iterator<Item = u32> + '_ {
        self.steps.iter().filter_map(|s| match s {
            ScheduleStep::Visit { pattern, .. } => Some(*pattern),
            ScheduleStep::Add { .. } => None,
        })
    }

    /// Upper bound on additions for a block of width `m`, restoration included.
    pub fn addition_budget(m: usize) -> usize {
        (1usize << m) + 2 * m * m
    }

    /// A schedule following an explicit list of additions `(src, dst)`: the identity
    /// columns are visited first, then every newly reached pattern, and the block is
    /// brought back to the identity at the end.
    pub fn from_walk(m: usize, additions: &[(usize, usize)]) -> Result<Self> {
        check_block_size(m)?;
        let mut state: Vec<u32> = (0..m).map(|a| 1u32 << a).collect();
        let mut seen = vec![false; 1usize << m];
        let mut steps = Vec::new();
        for (a, &p) in state.iter().enumerate() {
            seen[p as usize] = true;
            steps.push(ScheduleStep::Visit { pattern: p, column: a });
        }
        for &(src, dst) in additions {
            if src >= m || dst >= m || src == dst {
                return Err(Error::InvalidArgument(format!(
                    "addition ({src}, {dst}) is not valid in a block of width {m}"
                )));
            }
            state[dst] ^= state[src];
            steps.push(ScheduleStep::Add { src, dst });
            let p = state[dst];
            if !seen[p as usize] {
                seen[p as usize] = true;
                steps.push(ScheduleStep::Visit { pattern: p, column: dst });
            }
        }
        for (src, dst) in restore_to_identity(&state) {
            steps.push(ScheduleStep::Add { src, dst });
        }
        Ok(Self { m, steps })
    }

    /// Block states (one pattern per column) after every addition, starting from the
    /// identity.
    pub fn states(&self) -> Vec<Vec<u32>> {
        let mut state: Vec<u32> = (0..self.m).map(|a| 1u32 << a).collect();
        let mut out = vec![state.clone()];
        for s in &self.steps {
            if let ScheduleStep::Add { src, dst } = *s {
                state[dst] ^= state[src];
                out.push(state.clone());
            }
        }
        out
    }
}

fn check_block_size(m: usize) -> Result<()> {
    if (1..=MAX_BLOCK).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "block size {m} outside 1..={MAX_BLOCK}"
        )))
    }
}

/// Recursive rover walk. At level `d` column `d` walks through every pattern whose
/// lowest set bit is `d`, in Gray-code order over the higher columns (which still hold
/// their unit vectors), then returns to `e_d` with one addition.
pub fn build_block_schedule(m: usize) -> Result<BlockSchedule> {
    check_block_size(m)?;
    let mut steps = Vec::with_capacity(1usize << (m + 1));
    for d in 0..m {
        let mut cur = 1u32 << d;
        steps.push(ScheduleStep::Visit { pattern: cur, column: d });
        let bits = m - 1 - d;
        for t in 1u32..(1u32 << bits) {
            let src = d + 1 + t.trailing_zeros() as usize;
            steps.push(ScheduleStep::Add { src, dst: d });
            cur ^= 1u32 << src;
            steps.push(ScheduleStep::Visit { pattern: cur, column: d });
        }
        if bits > 0 {
            steps.push(ScheduleStep::Add { src: m - 1, dst: d });
        }
    }
    Ok(BlockSchedule { m, steps })
}

/// Additions `(src, dst)` that take an invertible block back to the identity, working
/// from the bottom row up so finished rows are never disturbed.
pub(crate) fn restore_to_identity(state: &[u32]) -> Vec<(usize, usize)> {
    let m = state.len();
    let mut cur = state.to_vec();
    let mut ops = Vec::new();
    for r in (0..m).rev() {
        let bit = 1u32 << r;
        if cur[r] & bit == 0 {
            let c = (0..r)
                .find(|&c| cur[c] & bit != 0)
                .expect("block state must be invertible");
            cur[r] ^= cur[c];
            ops.push((c, r));
        }
        for c in 0..m {
            if c != r && cur[c] & bit != 0 {
                cur[c] ^= cur[r];
                ops.push((r, c));
            }
        }
    }
    debug_assert!(cur.iter().enumerate().all(|(a, &p)| p == 1u32 << a));
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coverage_ok(s: &BlockSchedule) -> bool {
        let m = s.block_size();
        let mut seen = vec![0u32; 1usize << m];
        for p in s.pattern_order() {
            seen[p as usize] += 1;
        }
        seen[0] == 0 && seen[1..].iter().all(|&c| c == 1)
    }

    /// Replays the schedule and checks every Visit reports the live column content.
    fn visits_are_live(s: &BlockSchedule) -> bool {
        let mut state: Vec<u32> = (0..s.block_size()).map(|a| 1u32 << a).collect();
        for step in s.steps() {
            match *step {
                ScheduleStep::Add { src, dst } => state[dst] ^= state[src],
                ScheduleStep::Visit { pattern, column } => {
                    if state[column] != pattern {
                        return false;
                    }
                }
            }
        }
        state.iter().enumerate().all(|(a, &p)| p == 1u32 << a)
    }

    #[test]
    fn m1_is_a_single_visit() {
        let s = build_block_schedule(1).unwrap();
        assert_eq!(s.steps(), &[ScheduleStep::Visit { pattern: 1, column: 0 }]);
        assert_eq!(s.additions(), 0);
    }

    #[test]
    fn m2_covers_three_patterns() {
        let s = build_block_schedule(2).unwrap();
        let mut pats: Vec<u32> = s.pattern_order().collect();
        pats.sort();
        assert_eq!(pats, vec![0b01, 0b10, 0b11]);
        assert!(s.additions() <= 4 + 8);
        assert!(visits_are_live(&s));
    }

    #[test]
    fn m3_covers_101() {
        let s = build_block_schedule(3).unwrap();
        assert!(coverage_ok(&s));
        assert!(s.pattern_order().any(|p| p == 0b101));
    }

    #[test]
    fn coverage_and_budget_up_to_twelve() {
        for m in 1..=12 {
            let s = build_block_schedule(m).unwrap();
            assert!(coverage_ok(&s), "m = {m}");
            assert!(visits_are_live(&s), "m = {m}");
            assert!(s.additions() <= BlockSchedule::addition_budget(m));
            assert_eq!(s, build_block_schedule(m).unwrap());
        }
    }

    #[test]
    fn out_of_range_sizes_fail() {
        assert!(build_block_schedule(0).is_err());
        assert!(build_block_schedule(21).is_err());
        assert!(BlockSchedule::from_walk(3, &[(0, 3)]).is_err());
        assert!(BlockSchedule::from_walk(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn upper_triangular_walk_for_m3() {
        // I -> D with all-ones upper triangle, four additions.
        let s = BlockSchedule::from_walk(3, &[(0, 1), (0, 2), (1, 2), (0, 2)]).unwrap();
        let states = s.states();
        let as_rows = |st: &Vec<u32>| -> [[u8; 3]; 3] {
            let mut out = [[0u8; 3]; 3];
            for (c, &p) in st.iter().enumerate() {
                for (r, row) in out.iter_mut().enumerate() {
                    row[c] = ((p >> r) & 1) as u8;
                }
            }
            out
        };
        let expected = [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 1, 1], [0, 1, 0], [0, 0, 1]],
            [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
            [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
        ];
        for (st, want) in states.iter().zip(expected.iter()) {
            assert_eq!(&as_rows(st), want);
        }
        // D back to I takes m - 1 = 2 additions.
        assert_eq!(s.additions(), 4 + 2);
        assert_eq!(as_rows(states.last().unwrap()), expected[0]);
        // This walk reaches all seven nonzero patterns.
        assert!(coverage_ok(&s));
    }

    #[test]
    fn restoration_of_rover_states_is_cheap() {
        let ops = restore_to_identity(&[0b1011, 0b0010, 0b0100, 0b1000]);
        assert_eq!(ops.len(), 2);
        assert!(restore_to_identity(&[1, 2, 4]).is_empty());
    }
}

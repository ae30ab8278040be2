use super::{block_for, SolutionSet};
use crate::caps;
use crate::error::{Error, Result};
use crate::objective::dk_codes;
use serde::Serialize;

/// Result of an exact existence search that may run out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleOutcome {
    Yes,
    No,
    Unknown,
}

/// First pair in `S1 × S2` (in code order) with `lo ≤ d_k ≤ hi`.
///
/// Errors once more than the pair cap has been examined without a hit.
pub fn find_pair_in_band(
    s1: &SolutionSet,
    s2: &SolutionSet,
    k: usize,
    lo: usize,
    hi: usize,
) -> Result<Option<(u64, u64)>> {
    let block = block_for(s1.n, k)?;
    let mut examined = 0u128;
    for &x in s1.codes() {
        for &y in s2.codes() {
            let d = dk_codes(x, y, k, block);
            if lo <= d && d <= hi {
                return Ok(Some((x, y)));
            }
        }
        examined += s2.len() as u128;
        if examined > caps::PAIR_CAP {
            return Err(Error::CapExceeded {
                what: "solution pairs",
                requested: s1.len() as u128 * s2.len() as u128,
                cap: caps::PAIR_CAP,
            });
        }
    }
    Ok(None)
}

/// Whether some `(z_1, …, z_R) ∈ S_1 × ⋯ × S_R` has every pairwise `d_k` in
/// `[lo, hi]`.
///
/// Two sets use the exact pair scan. More sets use depth-first search over
/// the compatibility graph, always branching on the replica with the fewest
/// remaining candidates; `Unknown` once `budget` nodes are expanded.
pub fn find_tuple(
    sets: &[SolutionSet],
    k: usize,
    lo: usize,
    hi: usize,
    budget: u64,
) -> Result<TupleOutcome> {
    if sets.iter().any(SolutionSet::is_empty) {
        return Ok(TupleOutcome::No);
    }
    match sets.len() {
        0 => return Ok(TupleOutcome::Yes),
        1 => {
            return Ok(if lo == 0 {
                TupleOutcome::Yes
            } else {
                TupleOutcome::No
            })
        }
        2 => {
            return Ok(match find_pair_in_band(&sets[0], &sets[1], k, lo, hi)? {
                Some(_) => TupleOutcome::Yes,
                None => TupleOutcome::No,
            })
        }
        _ => {}
    }
    let n = sets[0].n;
    if sets.iter().any(|s| s.n != n) {
        return Err(Error::DimensionMismatch {
            context: "solution sets",
            expected: n,
            got: sets.iter().map(|s| s.n).find(|&x| x != n).unwrap_or(n),
        });
    }
    let block = block_for(n, k)?;
    let mut search = Search {
        k,
        block,
        lo,
        hi,
        budget,
        nodes: 0,
    };
    let candidates: Vec<Vec<u64>> = sets.iter().map(|s| s.codes().to_vec()).collect();
    Ok(match search.dfs(candidates) {
        Some(true) => TupleOutcome::Yes,
        Some(false) => TupleOutcome::No,
        None => TupleOutcome::Unknown,
    })
}

struct Search {
    k: usize,
    block: usize,
    lo: usize,
    hi: usize,
    budget: u64,
    nodes: u64,
}

impl Search {
    /// `None` when the budget runs out.
    fn dfs(&mut self, candidates: Vec<Vec<u64>>) -> Option<bool> {
        if candidates.is_empty() {
            return Some(true);
        }
        let pick = (0..candidates.len()).min_by_key(|&i| candidates[i].len())?;
        for &x in &candidates[pick] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let mut rest = Vec::with_capacity(candidates.len() - 1);
            let mut dead = false;
            for (i, c) in candidates.iter().enumerate() {
                if i == pick {
                    continue;
                }
                let kept: Vec<u64> = c
                    .iter()
                    .copied()
                    .filter(|&y| {
                        let d = dk_codes(x, y, self.k, self.block);
                        self.lo <= d && d <= self.hi
                    })
                    .collect();
                if kept.is_empty() {
                    dead = true;
                    break;
                }
                rest.push(kept);
            }
            if dead {
                continue;
            }
            if self.dfs(rest)? {
                return Some(true);
            }
        }
        Some(false)
    }
}

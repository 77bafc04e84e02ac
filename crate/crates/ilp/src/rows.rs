//! Joint reasoning over the cardinality constraints on one adjacency row.
//!
//! A row must meet several targets at once: the degree, the number of
//! coclique neighbours and, for every decided non-neighbour `c`, the number
//! of neighbours inside `N(c)`. Vertices are grouped into atoms by the sets
//! they belong to, and a dynamic program over atom counts finds which counts
//! can still occur in a row meeting every target.

use neumaier_core::graph::{bit, bits};

/// Largest number of partial-sum states the program may track.
pub const STATE_LIMIT: usize = 1 << 10;

/// Vertices whose entries are forced by the row system.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Forced {
    pub ones: u64,
    pub zeros: u64,
}

/// Checks the row given by its decided `ones` and `undecided` entries against
/// `sets` (mask, target). Returns `None` when no row meets every target.
pub fn propagate_row(sets: &[(u64, usize)], ones: u64, undecided: u64) -> Option<Forced> {
    let candidates = ones | undecided;
    for &(mask, target) in sets {
        if (ones & mask).count_ones() as usize > target
            || ((candidates & mask).count_ones() as usize) < target
        {
            return None;
        }
    }
    // Atoms of undecided vertices: (signature, members).
    let mut atoms: Vec<(u32, u64)> = Vec::new();
    for t in bits(undecided) {
        let sig = sets
            .iter()
            .enumerate()
            .filter(|(_, (mask, _))| mask >> t & 1 == 1)
            .fold(0u32, |acc, (j, _)| acc | 1 << j);
        if sig == 0 {
            continue;
        }
        match atoms.iter_mut().find(|a| a.0 == sig) {
            Some(a) => a.1 |= bit(t),
            None => atoms.push((sig, bit(t))),
        }
    }
    let residual: Vec<usize> = sets
        .iter()
        .map(|&(mask, target)| target - (ones & mask).count_ones() as usize)
        .collect();
    let mut stride = Vec::with_capacity(sets.len());
    let mut states = 1usize;
    for &r in &residual {
        stride.push(states);
        states *= r + 1;
    }
    if states > STATE_LIMIT {
        return Some(Forced::default());
    }
    let goal: usize = residual.iter().zip(&stride).map(|(r, s)| r * s).sum();
    let step: Vec<usize> = atoms
        .iter()
        .map(|&(sig, _)| bits(sig as u64).map(|j| stride[j]).sum())
        .collect();
    let sizes: Vec<usize> = atoms.iter().map(|a| a.1.count_ones() as usize).collect();
    // Largest count atom `i` may add from `state` without overshooting.
    let room = |i: usize, state: usize| -> usize {
        bits(atoms[i].0 as u64)
            .map(|j| residual[j] - state / stride[j] % (residual[j] + 1))
            .min()
            .unwrap_or(0)
            .min(sizes[i])
    };
    let a = atoms.len();
    let mut back = vec![vec![false; states]; a + 1];
    back[a][goal] = true;
    for i in (0..a).rev() {
        let (done, rest) = back.split_at_mut(i + 1);
        let (cur, next) = (&mut done[i], &rest[0]);
        for (state, slot) in cur.iter_mut().enumerate() {
            *slot = (0..=room(i, state)).any(|v| next[state + v * step[i]]);
        }
    }
    if !back[0][0] {
        return None;
    }
    let mut forward = vec![false; states];
    forward[0] = true;
    let mut forced = Forced::default();
    for i in 0..a {
        let mut lo = usize::MAX;
        let mut hi = 0;
        let mut next = vec![false; states];
        for state in (0..states).filter(|&s| forward[s]) {
            for v in 0..=room(i, state) {
                let to = state + v * step[i];
                if back[i + 1][to] {
                    lo = lo.min(v);
                    hi = hi.max(v);
                    next[to] = true;
                }
            }
        }
        if hi == 0 {
            forced.zeros |= atoms[i].1;
        } else if lo == sizes[i] {
            forced.ones |= atoms[i].1;
        }
        forward = next;
    }
    Some(forced)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_overlapping_targets_forces_the_rest() {
        let sets = [
            (0b000_011, 1),
            (0b000_110, 1),
            (0b000_101, 1),
            (0b111_111, 3),
        ];
        assert_eq!(propagate_row(&sets, 0, 0b111_111), None);
        let sets = [
            (0b000_011, 2),
            (0b000_110, 2),
            (0b000_101, 2),
            (0b111_111, 3),
        ];
        let forced = propagate_row(&sets, 0, 0b111_111).unwrap();
        assert_eq!(
            forced,
            Forced {
                ones: 0b000_111,
                zeros: 0b111_000
            }
        );
    }

    #[test]
    fn detects_infeasible_system() {
        let sets = [(0b0011, 2), (0b1100, 2), (0b1111, 3)];
        assert_eq!(propagate_row(&sets, 0, 0b1111), None);
    }
}

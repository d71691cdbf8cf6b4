//! Pairwise global alignment of secondary-structure sequences.

mod matrix;
mod nw;

use rayon::prelude::*;

use crate::error::{MascotError, Result};
use crate::sse::SseSequence;

pub use matrix::SimilarityMatrix;
pub use nw::{edit_distance, nw_align, score_alignment, GapParams, PairwiseAlignment};

/// One alignment per unordered pair `i < j`, with `S_i` as the first row.
#[derive(Debug, Clone)]
pub struct PairwiseTable {
    n: usize,
    entries: Vec<Option<PairwiseAlignment>>,
}

impl PairwiseTable {
    pub fn new(n: usize) -> Self {
        PairwiseTable {
            n,
            entries: vec![None; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn insert(&mut self, i: usize, j: usize, alignment: PairwiseAlignment) -> Result<()> {
        if i >= j || j >= self.n {
            return Err(MascotError::Internal(format!(
                "pair ({i}, {j}) is not an ordered pair below {}",
                self.n
            )));
        }
        let k = self.slot(i, j);
        self.entries[k] = Some(alignment);
        Ok(())
    }

    /// Alignment with `S_i` as the first row; rows are exchanged for `i > j`.
    pub fn get(&self, i: usize, j: usize) -> Option<PairwiseAlignment> {
        if i == j || i.max(j) >= self.n {
            return None;
        }
        let al = self.entries[self.slot(i.min(j), i.max(j))].as_ref()?;
        Some(if i < j { al.clone() } else { al.swapped() })
    }

    /// Stored edit distance for the unordered pair.
    pub fn distance(&self, i: usize, j: usize) -> Option<usize> {
        if i == j || i.max(j) >= self.n {
            return None;
        }
        self.entries[self.slot(i.min(j), i.max(j))]
            .as_ref()
            .map(|a| a.edit_distance)
    }
}

/// Aligns every unordered pair, in parallel on the current rayon pool.
pub fn align_all_pairs(
    sequences: &[SseSequence],
    matrix: &SimilarityMatrix,
    gaps: GapParams,
) -> Result<PairwiseTable> {
    let n = sequences.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results: Vec<Result<PairwiseAlignment>> = pairs
        .par_iter()
        .map(|&(i, j)| nw_align(&sequences[i].symbols, &sequences[j].symbols, matrix, gaps))
        .collect();
    let mut table = PairwiseTable::new(n);
    for ((i, j), al) in pairs.into_iter().zip(results) {
        table.insert(i, j, al?)?;
    }
    Ok(table)
}

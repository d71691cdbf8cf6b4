//! Center selection by minimum sum of pairwise edit distances, and the merge
//! of center-vs-other alignments into one correspondence matrix.

use std::fmt::Write as _;

use serde::Serialize;

use crate::align::{PairwiseAlignment, PairwiseTable};
use crate::error::{MascotError, Result};
use crate::sse::{gapped_to_string, parse_gapped, SseSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<usize>,
}

impl DistanceMatrix {
    /// Symmetric matrix from its strict lower triangle (`d[i][j]` for `i > j`);
    /// diagonal and upper-triangle entries of `rows` are ignored.
    pub fn from_lower_triangle(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MascotError::InvalidParameter("distance matrix must be square".into()));
        }
        let mut d = vec![0; n * n];
        for i in 0..n {
            for j in 0..i {
                d[i * n + j] = rows[i][j];
                d[j * n + i] = rows[i][j];
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.d[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.d.chunks(self.n.max(1)).map(<[usize]>::to_vec).collect()
    }

    /// Σ_{j≠i} d[i][j] for every i.
    pub fn sp_scores(&self) -> Vec<usize> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).sum()).collect()
    }
}

/// Fills the matrix from each unordered pair's edit distance.
pub fn build_distance_matrix(table: &PairwiseTable) -> Result<DistanceMatrix> {
    let n = table.n();
    let mut d = vec![0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let dist = table
                .distance(i, j)
                .ok_or_else(|| MascotError::Internal(format!("no alignment for pair ({i}, {j})")))?;
            d[i * n + j] = dist;
            d[j * n + i] = dist;
        }
    }
    Ok(DistanceMatrix { n, d })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterSelection {
    pub center_index: usize,
    pub sp_scores: Vec<usize>,
}

/// Index with the smallest sum of distances; the lowest index wins ties.
pub fn select_center(d: &DistanceMatrix) -> Result<CenterSelection> {
    if d.n() < 2 {
        return Err(MascotError::InvalidParameter(format!(
            "center selection needs at least 2 proteins, got {}",
            d.n()
        )));
    }
    let sp_scores = d.sp_scores();
    let center_index = sp_scores
        .iter()
        .enumerate()
        .min_by_key(|&(i, &s)| (s, i))
        .map(|(i, _)| i)
        .expect("n >= 2");
    Ok(CenterSelection {
        center_index,
        sp_scores,
    })
}

/// N×l gapped matrix in input order, one row per protein.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceMatrix {
    rows: Vec<Vec<Option<SseSymbol>>>,
    residue_index: Vec<Vec<Option<usize>>>,
    center_row: usize,
}

impl CorrespondenceMatrix {
    /// Builds the matrix from gapped rows, numbering residues 1.. along each row.
    pub fn from_rows(rows: Vec<Vec<Option<SseSymbol>>>, center_row: usize) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(MascotError::InvalidParameter("correspondence rows differ in length".into()));
        }
        if center_row >= rows.len() {
            return Err(MascotError::InvalidParameter(format!(
                "center row {center_row} out of range for {} rows",
                rows.len()
            )));
        }
        let residue_index = rows
            .iter()
            .map(|row| {
                let mut k = 0;
                row.iter()
                    .map(|cell| {
                        cell.map(|_| {
                            k += 1;
                            k
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(CorrespondenceMatrix {
            rows,
            residue_index,
            center_row,
        })
    }

    /// Rows written as `-`-gapped strings, e.g. `"--HHTIE-G"`.
    pub fn from_gapped_strings(rows: &[&str], center_row: usize) -> Result<Self> {
        let parsed = rows.iter().map(|r| parse_gapped(r)).collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed, center_row)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Column count `l`.
    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn center_row(&self) -> usize {
        self.center_row
    }

    pub fn row(&self, i: usize) -> &[Option<SseSymbol>] {
        &self.rows[i]
    }

    /// 1-based residue ordinal per cell, `None` on gaps.
    pub fn residue_indices(&self, i: usize) -> &[Option<usize>] {
        &self.residue_index[i]
    }

    pub fn row_string(&self, i: usize) -> String {
        gapped_to_string(&self.rows[i])
    }

    /// Row `i` with gaps removed.
    pub fn degapped(&self, i: usize) -> Vec<SseSymbol> {
        self.rows[i].iter().flatten().copied().collect()
    }

    /// Checks the structural properties against the input sequences: every
    /// row de-gaps to its sequence, no column is all gaps, and
    /// `max |S_i| <= l <= Σ |S_i|`.
    pub fn check(&self, sequences: &[&[SseSymbol]]) -> std::result::Result<(), String> {
        if sequences.len() != self.n_rows() {
            return Err(format!("{} rows for {} sequences", self.n_rows(), sequences.len()));
        }
        for (i, s) in sequences.iter().enumerate() {
            if self.degapped(i) != *s {
                return Err(format!("row {i} does not de-gap to its input sequence"));
            }
        }
        if let Some(c) = (0..self.width()).find(|&c| self.rows.iter().all(|r| r[c].is_none())) {
            return Err(format!("column {c} is all gaps"));
        }
        let longest = sequences.iter().map(|s| s.len()).max().unwrap_or(0);
        let total: usize = sequences.iter().map(|s| s.len()).sum();
        let l = self.width();
        if l < longest || l > total {
            return Err(format!("width {l} outside [{longest}, {total}]"));
        }
        for (i, idx) in self.residue_index.iter().enumerate() {
            let numbered: Vec<usize> = idx.iter().flatten().copied().collect();
            if numbered != (1..=numbered.len()).collect::<Vec<_>>() {
                return Err(format!("residue numbering of row {i} is not 1..n"));
            }
        }
        Ok(())
    }

    /// FASTA-style dump, one gapped row per protein.
    pub fn to_fasta(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (i, label) in labels.iter().enumerate().take(self.n_rows()) {
            let tag = if i == self.center_row { " center" } else { "" };
            let _ = writeln!(out, ">{label}{tag}");
            let _ = writeln!(out, "{}", self.row_string(i));
        }
        out
    }
}

/// Merges center-vs-other alignments into one matrix, once a gap always a gap.
///
/// `others` holds `(row, alignment)` with the center as the alignment's first
/// row; rows are merged in the order given and placed at their `row` index.
/// A gap already in the running center row pushes a gap into the incoming
/// protein; a gap new to the incoming center row inserts a gap column into
/// every row merged so far.
pub fn merge_alignments(
    center_seq: &[SseSymbol],
    center_row: usize,
    others: &[(usize, PairwiseAlignment)],
) -> Result<CorrespondenceMatrix> {
    let n_rows = others.len() + 1;
    if center_row >= n_rows {
        return Err(MascotError::InvalidParameter(format!(
            "center row {center_row} out of range for {n_rows} rows"
        )));
    }
    let mut placed: Vec<usize> = vec![center_row];
    for &(r, _) in others {
        if r >= n_rows || placed.contains(&r) {
            return Err(MascotError::Internal(format!("row {r} is invalid or repeated")));
        }
        placed.push(r);
    }

    // msa[0] is the center; later entries follow `others`.
    let mut msa: Vec<Vec<Option<SseSymbol>>> = vec![center_seq.iter().copied().map(Some).collect()];
    for (r, al) in others {
        let incoming_center: Vec<SseSymbol> = al.gapped_a.iter().flatten().copied().collect();
        if incoming_center != center_seq || al.gapped_a.len() != al.gapped_b.len() {
            return Err(MascotError::Internal(format!(
                "alignment for row {r} does not carry the center sequence as its first row"
            )));
        }
        if al.gapped_a.iter().zip(&al.gapped_b).any(|(x, y)| x.is_none() && y.is_none()) {
            return Err(MascotError::Internal(format!("alignment for row {r} has an all-gap column")));
        }

        let master = msa[0].clone();
        let width_hint = master.len() + al.len();
        let mut merged: Vec<Vec<Option<SseSymbol>>> = vec![Vec::with_capacity(width_hint); msa.len()];
        let mut incoming = Vec::with_capacity(width_hint);
        let (mut p, mut q) = (0, 0);
        while p < master.len() || q < al.len() {
            let master_gap = p < master.len() && master[p].is_none();
            let incoming_gap = q < al.len() && al.gapped_a[q].is_none();
            if p < master.len() && (master_gap || q == al.len()) {
                // existing column; the new protein gets a gap
                for (row, out) in msa.iter().zip(merged.iter_mut()) {
                    out.push(row[p]);
                }
                incoming.push(None);
                p += 1;
            } else if q < al.len() && (incoming_gap || p == master.len()) {
                // new gap column for everything merged so far
                for out in merged.iter_mut() {
                    out.push(None);
                }
                incoming.push(al.gapped_b[q]);
                q += 1;
            } else {
                // both center copies hold the same residue
                for (row, out) in msa.iter().zip(merged.iter_mut()) {
                    out.push(row[p]);
                }
                incoming.push(al.gapped_b[q]);
                p += 1;
                q += 1;
            }
        }
        merged.push(incoming);
        msa = merged;
    }

    let mut rows = vec![Vec::new(); n_rows];
    for (row, r) in msa.into_iter().zip(placed) {
        rows[r] = row;
    }
    CorrespondenceMatrix::from_rows(rows, center_row)
}

/// Merges every other protein's alignment against `center` in input order.
pub fn correspondence_from_table(
    table: &PairwiseTable,
    center: usize,
    center_seq: &[SseSymbol],
) -> Result<CorrespondenceMatrix> {
    let others = (0..table.n())
        .filter(|&i| i != center)
        .map(|i| {
            table
                .get(center, i)
                .map(|al| (i, al))
                .ok_or_else(|| MascotError::Internal(format!("no alignment for pair ({center}, {i})")))
        })
        .collect::<Result<Vec<_>>>()?;
    merge_alignments(center_seq, center, &others)
}

//! Global alignment with affine gaps (three-state Gotoh recurrences).

use crate::align::SimilarityMatrix;
use crate::error::{MascotError, Result};
use crate::sse::{gapped_to_string, SseSymbol};

/// Affine gap costs: a run of `k` gaps costs `open + (k - 1) * extend`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapParams {
    open: f64,
    extend: f64,
}

impl GapParams {
    pub const DEFAULT_OPEN: f64 = 1.0;
    pub const DEFAULT_EXTEND: f64 = 0.1;

    pub fn new(open: f64, extend: f64) -> Result<Self> {
        if !(open.is_finite() && extend.is_finite()) || open < 0.0 || extend < 0.0 {
            return Err(MascotError::InvalidParameter(format!(
                "gap penalties must be finite and non-negative (open {open}, extend {extend})"
            )));
        }
        if extend > open {
            return Err(MascotError::InvalidParameter(format!(
                "gap extension ({extend}) may not exceed gap opening ({open})"
            )));
        }
        Ok(GapParams { open, extend })
    }

    pub fn open(&self) -> f64 {
        self.open
    }

    pub fn extend(&self) -> f64 {
        self.extend
    }

    /// Cost of a single gap run of length `len` (zero for an empty run).
    pub fn run_cost(&self, len: usize) -> f64 {
        if len == 0 {
            0.0
        } else {
            self.open + (len - 1) as f64 * self.extend
        }
    }
}

impl Default for GapParams {
    fn default() -> Self {
        GapParams {
            open: Self::DEFAULT_OPEN,
            extend: Self::DEFAULT_EXTEND,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseAlignment {
    pub gapped_a: Vec<Option<SseSymbol>>,
    pub gapped_b: Vec<Option<SseSymbol>>,
    pub score: f64,
    pub edit_distance: usize,
}

impl PairwiseAlignment {
    pub fn len(&self) -> usize {
        self.gapped_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gapped_a.is_empty()
    }

    /// Same alignment with the rows exchanged.
    pub fn swapped(&self) -> PairwiseAlignment {
        PairwiseAlignment {
            gapped_a: self.gapped_b.clone(),
            gapped_b: self.gapped_a.clone(),
            score: self.score,
            edit_distance: self.edit_distance,
        }
    }

    pub fn row_strings(&self) -> (String, String) {
        (gapped_to_string(&self.gapped_a), gapped_to_string(&self.gapped_b))
    }
}

/// Total score of a gapped pair under the matrix and affine gap model.
/// Adjacent runs in opposite rows are separate runs, each paying `open`.
pub fn score_alignment(
    a: &[Option<SseSymbol>],
    b: &[Option<SseSymbol>],
    matrix: &SimilarityMatrix,
    gaps: GapParams,
) -> f64 {
    let mut score = 0.0;
    let mut prev: Option<bool> = None; // Some(true): gap in a, Some(false): gap in b
    for (x, y) in a.iter().zip(b) {
        let state = match (x, y) {
            (Some(x), Some(y)) => {
                score += f64::from(matrix.score(*x, *y));
                None
            }
            (None, _) => Some(true),
            (_, None) => Some(false),
        };
        if let Some(s) = state {
            score -= if prev == Some(s) { gaps.extend } else { gaps.open };
        }
        prev = state;
    }
    score
}

/// Columns that are not similarity matches: any gap column plus symbol pairs
/// scoring 0.
pub fn edit_distance(a: &[Option<SseSymbol>], b: &[Option<SseSymbol>], matrix: &SimilarityMatrix) -> usize {
    a.iter()
        .zip(b)
        .filter(|(x, y)| match (x, y) {
            (Some(x), Some(y)) => !matrix.is_match(*x, *y),
            _ => true,
        })
        .count()
}

const TIE_EPS: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[repr(u8)]
enum State {
    /// symbol over symbol
    Diag = 0,
    /// symbol of `a` over a gap in `b`
    GapB = 1,
    /// gap in `a` over a symbol of `b`
    GapA = 2,
}

/// Best of three candidates, preferring Diag, then GapB, then GapA on ties.
#[inline]
fn best(cands: [f64; 3]) -> (f64, State) {
    let mut state = State::Diag;
    let mut value = cands[0];
    for (v, s) in [(cands[1], State::GapB), (cands[2], State::GapA)] {
        if v > value + TIE_EPS {
            value = v;
            state = s;
        }
    }
    (value, state)
}

/// Optimal global alignment of `a` against `b`.
///
/// End gaps cost the same as interior gaps. Traceback ties resolve to the
/// diagonal first, then a gap in `b`, then a gap in `a`.
pub fn nw_align(
    a: &[SseSymbol],
    b: &[SseSymbol],
    matrix: &SimilarityMatrix,
    gaps: GapParams,
) -> Result<PairwiseAlignment> {
    if a.is_empty() || b.is_empty() {
        return Err(MascotError::InvalidParameter(
            "cannot align an empty sequence".into(),
        ));
    }
    let (n, m) = (a.len(), b.len());
    let w = m + 1;
    let neg = f64::NEG_INFINITY;
    // score[state][i * w + j], back[state][..] = predecessor state
    let mut score = [vec![neg; (n + 1) * w], vec![neg; (n + 1) * w], vec![neg; (n + 1) * w]];
    let mut back = [vec![0u8; (n + 1) * w], vec![0u8; (n + 1) * w], vec![0u8; (n + 1) * w]];
    let (open, ext) = (gaps.open, gaps.extend);

    score[0][0] = 0.0;
    for i in 1..=n {
        score[1][i * w] = -gaps.run_cost(i);
        back[1][i * w] = if i == 1 { State::Diag } else { State::GapB } as u8;
    }
    for j in 1..=m {
        score[2][j] = -gaps.run_cost(j);
        back[2][j] = if j == 1 { State::Diag } else { State::GapA } as u8;
    }

    for i in 1..=n {
        for j in 1..=m {
            let here = i * w + j;
            let diag = (i - 1) * w + j - 1;
            let up = (i - 1) * w + j;
            let left = i * w + j - 1;

            let s = f64::from(matrix.score(a[i - 1], b[j - 1]));
            let (v, st) = best([score[0][diag], score[1][diag], score[2][diag]]);
            score[0][here] = v + s;
            back[0][here] = st as u8;

            let (v, st) = best([score[0][up] - open, score[1][up] - ext, score[2][up] - open]);
            score[1][here] = v;
            back[1][here] = st as u8;

            let (v, st) = best([score[0][left] - open, score[1][left] - open, score[2][left] - ext]);
            score[2][here] = v;
            back[2][here] = st as u8;
        }
    }

    let end = n * w + m;
    let (total, mut state) = best([score[0][end], score[1][end], score[2][end]]);

    let mut gapped_a = Vec::with_capacity(n + m);
    let mut gapped_b = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let prev = back[state as usize][i * w + j];
        match state {
            State::Diag => {
                gapped_a.push(Some(a[i - 1]));
                gapped_b.push(Some(b[j - 1]));
                i -= 1;
                j -= 1;
            }
            State::GapB => {
                gapped_a.push(Some(a[i - 1]));
                gapped_b.push(None);
                i -= 1;
            }
            State::GapA => {
                gapped_a.push(None);
                gapped_b.push(Some(b[j - 1]));
                j -= 1;
            }
        }
        state = match prev {
            0 => State::Diag,
            1 => State::GapB,
            _ => State::GapA,
        };
    }
    gapped_a.reverse();
    gapped_b.reverse();

    let edit_distance = edit_distance(&gapped_a, &gapped_b, matrix);
    Ok(PairwiseAlignment {
        gapped_a,
        gapped_b,
        score: total,
        edit_distance,
    })
}

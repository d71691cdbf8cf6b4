use std::fmt;
use std::str::FromStr;

use crate::error::{MascotError, Result};
use crate::sse::SseSymbol;

/// Symmetric 8×8 integer scores over the secondary-structure alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityMatrix {
    scores: [[i32; 8]; 8],
}

/// Helices {H,G,I}, beta {B,E}, turn/bend {T,S} and {Z} score 1 within a
/// group and 0 across groups.
const GROUPS: [u8; 8] = [0, 1, 0, 1, 2, 2, 0, 3];

impl Default for SimilarityMatrix {
    fn default() -> Self {
        let mut scores = [[0; 8]; 8];
        for (a, row) in scores.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = i32::from(GROUPS[a] == GROUPS[b]);
            }
        }
        SimilarityMatrix { scores }
    }
}

impl SimilarityMatrix {
    /// Builds a matrix, enforcing symmetry and a unit diagonal.
    pub fn new(scores: [[i32; 8]; 8]) -> Result<Self> {
        for a in 0..8 {
            if scores[a][a] != 1 {
                return Err(MascotError::InvalidParameter(format!(
                    "similarity matrix diagonal for {} must be 1, found {}",
                    SseSymbol::ALL[a],
                    scores[a][a]
                )));
            }
            for b in 0..a {
                if scores[a][b] != scores[b][a] {
                    return Err(MascotError::InvalidParameter(format!(
                        "similarity matrix is not symmetric at ({}, {})",
                        SseSymbol::ALL[a],
                        SseSymbol::ALL[b]
                    )));
                }
            }
        }
        Ok(SimilarityMatrix { scores })
    }

    #[inline]
    pub fn score(&self, a: SseSymbol, b: SseSymbol) -> i32 {
        self.scores[a.index()][b.index()]
    }

    /// A column counts as a match when its score is positive.
    #[inline]
    pub fn is_match(&self, a: SseSymbol, b: SseSymbol) -> bool {
        self.score(a, b) > 0
    }

    pub fn scores(&self) -> &[[i32; 8]; 8] {
        &self.scores
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| MascotError::io(path, e))?;
        text.parse()
    }
}

/// Text layout: a header row of the eight symbols, then one row per symbol
/// starting with its label, whitespace-separated. Blank lines and lines
/// starting with `#` are ignored; rows and columns may come in any order.
impl FromStr for SimilarityMatrix {
    type Err = MascotError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: String| MascotError::InvalidParameter(format!("similarity matrix: {msg}"));
        let mut rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));

        let header = rows.next().ok_or_else(|| bad("empty input".into()))?;
        let columns = header
            .split_whitespace()
            .filter(|t| *t != "-")
            .map(|t| label(t).ok_or_else(|| bad(format!("bad column label {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if columns.len() != 8 || !all_distinct(&columns) {
            return Err(bad("header must list each of H B G E T S I Z once".into()));
        }

        let mut scores = [[0i32; 8]; 8];
        let mut seen = Vec::with_capacity(8);
        for row in rows {
            let mut tokens = row.split_whitespace();
            let first = tokens.next().unwrap_or_default();
            let sym = label(first).ok_or_else(|| bad(format!("bad row label {first:?}")))?;
            let values = tokens
                .map(|t| t.parse::<i32>().map_err(|_| bad(format!("bad score {t:?} in row {sym}"))))
                .collect::<Result<Vec<_>>>()?;
            if values.len() != 8 {
                return Err(bad(format!("row {sym} has {} scores, expected 8", values.len())));
            }
            for (col, v) in columns.iter().zip(values) {
                scores[sym.index()][col.index()] = v;
            }
            seen.push(sym);
        }
        if seen.len() != 8 || !all_distinct(&seen) {
            return Err(bad("expected exactly one row per symbol".into()));
        }
        SimilarityMatrix::new(scores)
    }
}

fn label(token: &str) -> Option<SseSymbol> {
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => SseSymbol::from_char(c),
        _ => None,
    }
}

fn all_distinct(symbols: &[SseSymbol]) -> bool {
    (0..symbols.len()).all(|i| !symbols[..i].contains(&symbols[i]))
}

impl fmt::Display for SimilarityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "-")?;
        for s in SseSymbol::ALL {
            write!(f, " {s}")?;
        }
        writeln!(f)?;
        for a in SseSymbol::ALL {
            write!(f, "{a}")?;
            for b in SseSymbol::ALL {
                write!(f, " {}", self.score(a, b))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

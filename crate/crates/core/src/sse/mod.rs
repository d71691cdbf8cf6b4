//! Eight-letter secondary-structure sequences: from DSSP files or assigned
//! from backbone geometry.

mod assign;
mod dssp;

use std::fmt;
use std::path::{Path, PathBuf};

use log::warn;
use serde::Serialize;

use crate::error::{MascotError, Result};
use crate::structure::{ProteinStructure, StructureId};

pub use assign::{assign_sse, hbond_energy, BEND_KAPPA_DEG, HBOND_CUTOFF_KCAL, MIN_RESIDUES};
pub use dssp::{parse_dssp_bytes, parse_dssp_file};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SseSymbol {
    /// `H`
    AlphaHelix,
    /// `B`
    BetaBridge,
    /// `G`, 3-10 helix
    Helix310,
    /// `E`
    Strand,
    /// `T`
    Turn,
    /// `S`
    Bend,
    /// `I`, pi helix
    PiHelix,
    /// `Z`, no motif (blank in DSSP output)
    NoMotif,
}

impl SseSymbol {
    /// Matrix order: H B G E T S I Z.
    pub const ALL: [SseSymbol; 8] = [
        SseSymbol::AlphaHelix,
        SseSymbol::BetaBridge,
        SseSymbol::Helix310,
        SseSymbol::Strand,
        SseSymbol::Turn,
        SseSymbol::Bend,
        SseSymbol::PiHelix,
        SseSymbol::NoMotif,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_char(c: char) -> Option<SseSymbol> {
        Some(match c {
            'H' => SseSymbol::AlphaHelix,
            'B' => SseSymbol::BetaBridge,
            'G' => SseSymbol::Helix310,
            'E' => SseSymbol::Strand,
            'T' => SseSymbol::Turn,
            'S' => SseSymbol::Bend,
            'I' => SseSymbol::PiHelix,
            'Z' => SseSymbol::NoMotif,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        b"HBGETSIZ"[self.index()] as char
    }
}

impl fmt::Display for SseSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Parses a string over `HBGETSIZ`; anything else is rejected.
pub fn parse_symbols(s: &str) -> Result<Vec<SseSymbol>> {
    s.chars()
        .map(|c| {
            SseSymbol::from_char(c)
                .ok_or_else(|| MascotError::InvalidParameter(format!("unknown secondary-structure symbol {c:?}")))
        })
        .collect()
}

pub fn symbols_to_string(symbols: &[SseSymbol]) -> String {
    symbols.iter().map(|s| s.as_char()).collect()
}

/// Gapped row rendering, `-` for gaps.
pub fn gapped_to_string(row: &[Option<SseSymbol>]) -> String {
    row.iter().map(|s| s.map_or('-', SseSymbol::as_char)).collect()
}

/// Inverse of [`gapped_to_string`].
pub fn parse_gapped(s: &str) -> Result<Vec<Option<SseSymbol>>> {
    s.chars()
        .map(|c| match c {
            '-' => Ok(None),
            c => SseSymbol::from_char(c)
                .map(Some)
                .ok_or_else(|| MascotError::InvalidParameter(format!("unknown secondary-structure symbol {c:?}"))),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseSequence {
    pub structure_id: StructureId,
    pub symbols: Vec<SseSymbol>,
}

impl SseSequence {
    pub fn new(structure_id: StructureId, symbols: Vec<SseSymbol>) -> Self {
        SseSequence { structure_id, symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for SseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&symbols_to_string(&self.symbols))
    }
}

/// Where a sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SseProvenance {
    #[serde(rename = "dssp-file")]
    DsspFile,
    #[serde(rename = "builtin")]
    Builtin,
    /// Too short for the assigner; every residue set to `Z`.
    #[serde(rename = "builtin-all-z")]
    BuiltinAllZ,
}

impl fmt::Display for SseProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SseProvenance::DsspFile => "dssp-file",
            SseProvenance::Builtin => "builtin",
            SseProvenance::BuiltinAllZ => "builtin-all-z",
        })
    }
}

fn dssp_candidates(id: &StructureId, dir: &Path) -> Vec<PathBuf> {
    let mut stems = vec![id.file_stem(), id.code().to_string()];
    stems.extend(stems.clone().iter().map(|s| s.to_ascii_lowercase()));
    stems.dedup();
    stems.into_iter().map(|s| dir.join(format!("{s}.dssp"))).collect()
}

/// Uses `{stem}.dssp` from `dssp_dir` when present, else the built-in assigner.
pub fn sequence_for(structure: &ProteinStructure, dssp_dir: Option<&Path>) -> Result<(SseSequence, SseProvenance)> {
    if let Some(dir) = dssp_dir {
        if let Some(path) = dssp_candidates(&structure.id, dir).into_iter().find(|p| p.is_file()) {
            let seq = parse_dssp_file(&path, &structure.id)?;
            if seq.len() != structure.len() {
                return Err(MascotError::LengthMismatch {
                    id: structure.id.to_string(),
                    expected: structure.len(),
                    found: seq.len(),
                });
            }
            return Ok((seq, SseProvenance::DsspFile));
        }
    }
    match assign_sse(structure) {
        Ok(seq) => Ok((seq, SseProvenance::Builtin)),
        Err(MascotError::DegenerateInput(msg)) => {
            warn!("{}: {msg}; using all-Z sequence", structure.id);
            let symbols = vec![SseSymbol::NoMotif; structure.len()];
            Ok((SseSequence::new(structure.id.clone(), symbols), SseProvenance::BuiltinAllZ))
        }
        Err(e) => Err(e),
    }
}

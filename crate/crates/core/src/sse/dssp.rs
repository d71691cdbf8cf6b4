//! Classic DSSP output: header lines, then one record per residue after the
//! `  #  RESIDUE` line. Chain is column 12, the structure letter column 17.

use std::path::Path;

use crate::error::{MascotError, Result};
use crate::sse::{SseSequence, SseSymbol};
use crate::structure::StructureId;

const TABLE_MARKER: &[u8] = b"  #  RESIDUE";

pub fn parse_dssp_file(path: &Path, id: &StructureId) -> Result<SseSequence> {
    let bytes = std::fs::read(path).map_err(|e| MascotError::io(path, e))?;
    let symbols = parse_dssp_bytes(&bytes, id.chain(), &path.display().to_string())?;
    Ok(SseSequence::new(id.clone(), symbols))
}

/// Per-residue symbols for `chain` (first chain in the table when `None`).
/// Break records (`!`) are skipped; blank and DSSP's `P` map to `Z`.
pub fn parse_dssp_bytes(bytes: &[u8], chain: Option<char>, source_name: &str) -> Result<Vec<SseSymbol>> {
    let mut lines = bytes
        .split(|&b| b == b'\n')
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l));

    if !lines.by_ref().any(|(_, l)| l.starts_with(TABLE_MARKER)) {
        return Err(MascotError::dssp(source_name, None, "missing per-residue section"));
    }

    let mut selected = chain.map(|c| c as u32);
    let mut symbols = Vec::new();
    for (lineno, line) in lines {
        if line.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        if line.get(13) == Some(&b'!') {
            continue;
        }
        if line.len() < 17 {
            return Err(MascotError::dssp(source_name, Some(lineno), "truncated residue record"));
        }
        let line_chain = line[11] as u32;
        match selected {
            None => selected = Some(line_chain),
            Some(c) if c != line_chain => continue,
            Some(_) => {}
        }
        let symbol = match line[16] {
            b' ' | b'P' => SseSymbol::NoMotif,
            b => SseSymbol::from_char(b as char).ok_or_else(|| {
                MascotError::dssp(
                    source_name,
                    Some(lineno),
                    format!("unknown structure letter {:?}", b as char),
                )
            })?,
        };
        symbols.push(symbol);
    }
    if symbols.is_empty() {
        let what = match chain {
            Some(c) => format!("no residue records for chain '{c}'"),
            None => "no residue records".to_string(),
        };
        return Err(MascotError::dssp(source_name, None, what));
    }
    Ok(symbols)
}

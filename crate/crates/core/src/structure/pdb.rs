//! Fixed-column PDB reading and writing, restricted to protein backbone atoms.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{MascotError, Result};
use crate::geometry::Vec3;
use crate::structure::id::StructureId;

#[derive(Debug, Clone, PartialEq)]
pub struct Residue {
    /// 1-based ordinal within the parsed chain.
    pub seq_index: usize,
    /// Author residue number as written in the file.
    pub pdb_resseq: i32,
    pub icode: Option<char>,
    pub name: String,
    pub chain: char,
    pub n: Option<Vec3>,
    pub ca: Vec3,
    pub c: Option<Vec3>,
    pub o: Option<Vec3>,
}

impl Residue {
    /// True when N, C and O are all present (needed for hydrogen-bond geometry).
    pub fn has_full_backbone(&self) -> bool {
        self.n.is_some() && self.c.is_some() && self.o.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProteinStructure {
    pub id: StructureId,
    pub residues: Vec<Residue>,
    pub source_path: PathBuf,
}

impl ProteinStructure {
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn ca_coords(&self) -> Vec<Vec3> {
        self.residues.iter().map(|r| r.ca).collect()
    }

    pub fn ca_centroid(&self) -> Vec3 {
        let sum = self.residues.iter().fold(Vec3::zeros(), |acc, r| acc + r.ca);
        sum / self.residues.len() as f64
    }

    /// Copy of the structure with `f` applied to every stored atom position.
    pub fn map_coords(&self, f: impl Fn(&Vec3) -> Vec3) -> ProteinStructure {
        let residues = self
            .residues
            .iter()
            .map(|r| Residue {
                n: r.n.as_ref().map(&f),
                ca: f(&r.ca),
                c: r.c.as_ref().map(&f),
                o: r.o.as_ref().map(&f),
                ..r.clone()
            })
            .collect();
        ProteinStructure {
            id: self.id.clone(),
            residues,
            source_path: self.source_path.clone(),
        }
    }
}

/// Reads a PDB file. The structure id is taken from the HEADER record when it
/// carries a valid entry code, otherwise from the file name.
pub fn parse_pdb(path: &Path, chain: Option<char>) -> Result<ProteinStructure> {
    let bytes = std::fs::read(path).map_err(|e| MascotError::io(path, e))?;
    let id = match header_code(&bytes).or_else(|| code_from_file_name(path)) {
        Some(code) => StructureId::new(&code, chain)?,
        None => {
            return Err(MascotError::InputFormat {
                token: path.display().to_string(),
                reason: "cannot derive a 4-character entry code from HEADER or file name".into(),
            })
        }
    };
    let mut s = parse_pdb_bytes(&bytes, id, &path.display().to_string())?;
    s.source_path = path.to_path_buf();
    Ok(s)
}

/// Reads a PDB file under an id that is already known (chain taken from `id`).
pub fn load_structure(path: &Path, id: &StructureId) -> Result<ProteinStructure> {
    let bytes = std::fs::read(path).map_err(|e| MascotError::io(path, e))?;
    let mut s = parse_pdb_bytes(&bytes, id.clone(), &path.display().to_string())?;
    s.source_path = path.to_path_buf();
    Ok(s)
}

/// Entry code from a file name such as `1mbc.pdb`, `1MBC_aligned.pdb` or `pdb1mbc.ent`.
pub fn code_from_file_name(path: &Path) -> Option<String> {
    let name = path.file_name()?.to_str()?;
    let stem = name.split('.').next()?;
    let stem = stem
        .strip_prefix("pdb")
        .filter(|s| s.len() == 4)
        .unwrap_or(stem);
    let code = stem.get(..4)?;
    let well_formed = code.chars().all(|c| c.is_ascii_alphanumeric())
        && (stem.len() == 4 || stem.as_bytes()[4] == b'_');
    well_formed.then(|| code.to_ascii_uppercase())
}

fn header_code(bytes: &[u8]) -> Option<String> {
    let line = lines(bytes).next()?;
    if !line.starts_with(b"HEADER") {
        return None;
    }
    let code = std::str::from_utf8(line.get(62..66)?).ok()?;
    code.chars()
        .all(|c| c.is_ascii_alphanumeric())
        .then(|| code.to_ascii_uppercase())
}

fn lines(bytes: &[u8]) -> impl Iterator<Item = &[u8]> {
    bytes
        .split(|&b| b == b'\n')
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
}

fn field(line: &[u8], range: std::ops::Range<usize>) -> &str {
    line.get(range)
        .and_then(|b| std::str::from_utf8(b).ok())
        .map(str::trim)
        .unwrap_or("")
}

#[derive(Default)]
struct PartialResidue {
    resseq: i32,
    icode: Option<char>,
    name: String,
    chain: char,
    ca_line: Option<usize>,
    n: Option<Vec3>,
    ca: Option<Vec3>,
    c: Option<Vec3>,
    o: Option<Vec3>,
}

/// Parses PDB text. Only the first model is read; HETATM records and
/// alternate locations other than blank/`A` are ignored. The chain comes from
/// `id`; when absent the first chain with ATOM records is used.
pub fn parse_pdb_bytes(bytes: &[u8], id: StructureId, source_name: &str) -> Result<ProteinStructure> {
    let want_chain = id.chain().map(|c| c as u32 as u8);
    let mut selected: Option<u8> = want_chain;
    let mut saw_atom = false;
    let mut partials: Vec<PartialResidue> = Vec::new();
    let mut index: HashMap<(i32, Option<char>, String), usize> = HashMap::new();

    for (lineno, line) in lines(bytes).enumerate().map(|(i, l)| (i + 1, l)) {
        if line.starts_with(b"ENDMDL") {
            if saw_atom {
                break;
            }
            continue;
        }
        if !line.starts_with(b"ATOM  ") {
            continue;
        }
        saw_atom = true;
        if line.len() < 54 {
            return Err(MascotError::parse(source_name, Some(lineno), "truncated ATOM record"));
        }
        let altloc = line[16];
        if altloc != b' ' && altloc != b'A' {
            continue;
        }
        let chain = line[21];
        match selected {
            None => selected = Some(chain),
            Some(c) if c != chain => continue,
            Some(_) => {}
        }
        let slot = match field(line, 12..16) {
            "N" => 0,
            "CA" => 1,
            "C" => 2,
            "O" => 3,
            _ => continue,
        };
        let resname = field(line, 17..20).to_string();
        let resseq: i32 = field(line, 22..26).parse().map_err(|_| {
            MascotError::parse(source_name, Some(lineno), "invalid residue sequence number")
        })?;
        let icode = match line[26] {
            b' ' => None,
            b => Some(b as char),
        };
        let mut xyz = [0.0f64; 3];
        for (k, start) in [30usize, 38, 46].into_iter().enumerate() {
            let v: f64 = field(line, start..start + 8).parse().map_err(|_| {
                MascotError::parse(source_name, Some(lineno), "invalid coordinate field")
            })?;
            if !v.is_finite() {
                return Err(MascotError::parse(source_name, Some(lineno), "non-finite coordinate"));
            }
            xyz[k] = v;
        }
        let pos = Vec3::new(xyz[0], xyz[1], xyz[2]);

        let key = (resseq, icode, resname.clone());
        let idx = *index.entry(key).or_insert_with(|| {
            partials.push(PartialResidue {
                resseq,
                icode,
                name: resname,
                chain: chain as char,
                ..Default::default()
            });
            partials.len() - 1
        });
        let p = &mut partials[idx];
        let target = match slot {
            0 => &mut p.n,
            1 => &mut p.ca,
            2 => &mut p.c,
            _ => &mut p.o,
        };
        if target.is_none() {
            *target = Some(pos);
            if slot == 1 {
                p.ca_line = Some(lineno);
            }
        }
    }

    if !saw_atom {
        return Err(MascotError::parse(source_name, None, "no ATOM records"));
    }
    if partials.is_empty() {
        let chain = want_chain.map(|c| c as char).unwrap_or(' ');
        return Err(MascotError::parse(
            source_name,
            None,
            format!("chain '{chain}' not present"),
        ));
    }
    let mut with_ca: Vec<PartialResidue> = partials.into_iter().filter(|p| p.ca.is_some()).collect();
    if with_ca.is_empty() {
        return Err(MascotError::parse(
            source_name,
            None,
            format!(
                "no residues with a CA atom in chain '{}'",
                selected.map(|c| c as char).unwrap_or(' ')
            ),
        ));
    }
    with_ca.sort_by_key(|p| p.ca_line);
    let residues = with_ca
        .into_iter()
        .enumerate()
        .map(|(i, p)| Residue {
            seq_index: i + 1,
            pdb_resseq: p.resseq,
            icode: p.icode,
            name: p.name,
            chain: p.chain,
            n: p.n,
            ca: p.ca.expect("filtered on CA"),
            c: p.c,
            o: p.o,
        })
        .collect();
    Ok(ProteinStructure {
        id,
        residues,
        source_path: PathBuf::from(source_name),
    })
}

/// Renders backbone atoms as PDB ATOM records.
pub fn write_pdb(structure: &ProteinStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "REMARK   1 {} aligned by mascot", structure.id);
    let mut serial = 1usize;
    for r in &structure.residues {
        let atoms = [("N", r.n), ("CA", Some(r.ca)), ("C", r.c), ("O", r.o)];
        for (name, pos) in atoms {
            let Some(p) = pos else { continue };
            let _ = writeln!(
                out,
                "ATOM  {:>5} {:<4} {:>3} {}{:>4}{}   {:>8.3}{:>8.3}{:>8.3}{:>6.2}{:>6.2}          {:>2}",
                serial % 100_000,
                format!(" {name}"),
                r.name,
                r.chain,
                r.pdb_resseq,
                r.icode.unwrap_or(' '),
                p.x,
                p.y,
                p.z,
                1.0,
                0.0,
                &name[..1],
            );
            serial += 1;
        }
    }
    out.push_str("TER\nEND\n");
    out
}

/// Writes the structure to `path` through a temporary file and an atomic rename.
pub fn write_pdb_file(structure: &ProteinStructure, path: &Path) -> Result<()> {
    write_atomic(path, write_pdb(structure).as_bytes())
}

pub(crate) fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| MascotError::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| MascotError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| MascotError::io(path, e.error))?;
    Ok(())
}

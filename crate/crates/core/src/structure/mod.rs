//! Structure identifiers, PDB parsing/writing and the download cache.

mod fetch;
mod id;
mod pdb;

pub use fetch::{cache_path, default_cache_dir, fetch_structure, Fetcher, CACHE_DIR_ENV, RCSB_DOWNLOAD_URL};
pub use id::{parse_structure_spec, StructureId};
pub use pdb::{
    code_from_file_name, load_structure, parse_pdb, parse_pdb_bytes, write_pdb, write_pdb_file,
    ProteinStructure, Residue,
};

//! Multiple protein structure alignment around a center protein.
//!
//! Each structure is reduced to a string of secondary-structure symbols.
//! All pairs are aligned with an affine-gap global alignment, the protein
//! with the smallest summed edit distance becomes the center, and the
//! center-vs-other alignments are merged into a correspondence matrix.
//! Residues that share a column with the center seed a Kabsch fit, which is
//! refined with CA pairs closer than a distance threshold.
//!
//! ```no_run
//! use mascot::pipeline::{run_pipeline, RunConfig};
//!
//! let mut cfg = RunConfig::new(vec!["1DM1".into(), "1MBC".into(), "1MBA".into()]);
//! cfg.allow_remote = true;
//! let outcome = run_pipeline(&cfg)?;
//! println!("center {}, centerRMSD {:?}", outcome.report.center_id, outcome.report.center_rmsd);
//! # Ok::<(), mascot::MascotError>(())
//! ```

pub mod align;
pub mod centerstar;
pub mod error;
pub mod geometry;
pub mod pipeline;
pub mod sse;
pub mod structure;
pub mod superpose;

pub use error::{MascotError, Result};

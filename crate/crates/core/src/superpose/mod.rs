//! Rigid-body superposition onto the center protein.
//!
//! Seed equivalences come from the correspondence matrix (every column where
//! both rows hold a residue). Each protein is fitted to the center with
//! Kabsch, then the equivalence set is rebuilt from CA pairs closer than the
//! distance threshold and refitted, `refine_rounds` times.

mod kabsch;

use rayon::prelude::*;
use serde::Serialize;

use crate::centerstar::CorrespondenceMatrix;
use crate::error::{MascotError, Result};
use crate::geometry::Vec3;
use crate::structure::{ProteinStructure, StructureId};

pub use kabsch::{center_rmsd, kabsch, rmsd, RigidTransform};

pub const DEFAULT_THRESHOLD: f64 = 5.0;
pub const DEFAULT_REFINE_ROUNDS: usize = 1;

/// Residue pairs `(center, other)`, 1-based ordinals.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct EquivalenceSet {
    pub pairs: Vec<(usize, usize)>,
}

impl EquivalenceSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// CA coordinates of the paired residues, center side first.
    pub fn coordinates(&self, center: &[Vec3], other: &[Vec3]) -> (Vec<Vec3>, Vec<Vec3>) {
        self.pairs
            .iter()
            .map(|&(c, o)| (center[c - 1], other[o - 1]))
            .unzip()
    }
}

/// Every column where the center row and row `i` both hold a residue.
pub fn extract_equivalences(m: &CorrespondenceMatrix, i: usize) -> EquivalenceSet {
    let center = m.residue_indices(m.center_row());
    let other = m.residue_indices(i);
    EquivalenceSet {
        pairs: center
            .iter()
            .zip(other)
            .filter_map(|(c, o)| Some(((*c)?, (*o)?)))
            .collect(),
    }
}

/// One-to-one CA pairs closer than `threshold` after moving `other_ca`
/// with `t`, chosen greedily by ascending distance.
pub fn refine_pairs(center_ca: &[Vec3], other_ca: &[Vec3], t: &RigidTransform, threshold: f64) -> EquivalenceSet {
    let moved: Vec<Vec3> = other_ca.iter().map(|p| t.apply(p)).collect();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (ci, c) in center_ca.iter().enumerate() {
        for (oi, o) in moved.iter().enumerate() {
            let d = (c - o).norm();
            if d < threshold {
                candidates.push((d, ci, oi));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_center = vec![false; center_ca.len()];
    let mut used_other = vec![false; other_ca.len()];
    let mut pairs = Vec::new();
    for (_, ci, oi) in candidates {
        if !used_center[ci] && !used_other[oi] {
            used_center[ci] = true;
            used_other[oi] = true;
            pairs.push((ci + 1, oi + 1));
        }
    }
    pairs.sort_unstable();
    EquivalenceSet { pairs }
}

/// [`refine_pairs`] on the CA atoms of two structures.
pub fn refine_equivalences(
    center: &ProteinStructure,
    other: &ProteinStructure,
    t: &RigidTransform,
    threshold: f64,
) -> EquivalenceSet {
    refine_pairs(&center.ca_coords(), &other.ca_coords(), t, threshold)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProteinFit {
    pub index: usize,
    pub id: StructureId,
    pub is_center: bool,
    pub seed_equivalences: usize,
    pub equivalence_count: usize,
    pub rmsd: Option<f64>,
    pub transform: Option<RigidTransform>,
    pub refine_rounds_run: usize,
    pub error: Option<String>,
}

impl ProteinFit {
    pub fn succeeded(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct Superposition {
    pub center_index: usize,
    pub fits: Vec<ProteinFit>,
    /// Mean RMSD over the non-center proteins that could be fitted.
    pub center_rmsd: Option<f64>,
    /// Input structures moved into the frame of the centered center protein;
    /// `None` for proteins that could not be fitted.
    pub transformed: Vec<Option<ProteinStructure>>,
}

struct FitOutcome {
    transform: RigidTransform,
    equivalences: EquivalenceSet,
    rmsd: f64,
    rounds: usize,
}

fn fit_one(
    center_ca: &[Vec3],
    other_ca: &[Vec3],
    seeds: &EquivalenceSet,
    threshold: f64,
    refine_rounds: usize,
) -> Result<FitOutcome> {
    let (p, q) = seeds.coordinates(center_ca, other_ca);
    let mut transform = kabsch(&p, &q)?;
    let mut equivalences = seeds.clone();
    let mut rounds = 0;
    for _ in 0..refine_rounds {
        let refined = refine_pairs(center_ca, other_ca, &transform, threshold);
        if refined.len() < 3 {
            break;
        }
        let (p, q) = refined.coordinates(center_ca, other_ca);
        let Ok(next) = kabsch(&p, &q) else { break };
        transform = next;
        equivalences = refined;
        rounds += 1;
    }
    let (p, q) = equivalences.coordinates(center_ca, other_ca);
    let moved: Vec<Vec3> = q.iter().map(|x| transform.apply(x)).collect();
    let rmsd = rmsd(&p, &moved)?;
    Ok(FitOutcome {
        transform,
        equivalences,
        rmsd,
        rounds,
    })
}

/// Moves the center's CA centroid to the origin and fits every other protein
/// onto it. A protein with fewer than 3 usable equivalences is reported as
/// failed; the others are unaffected.
pub fn superpose_all(
    structures: &[ProteinStructure],
    m: &CorrespondenceMatrix,
    threshold: f64,
    refine_rounds: usize,
) -> Result<Superposition> {
    if structures.len() != m.n_rows() {
        return Err(MascotError::Internal(format!(
            "{} structures for a {}-row correspondence matrix",
            structures.len(),
            m.n_rows()
        )));
    }
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(MascotError::InvalidParameter(format!("threshold must be positive, got {threshold}")));
    }
    for (i, s) in structures.iter().enumerate() {
        let residues = m.residue_indices(i).iter().flatten().count();
        if residues != s.len() {
            return Err(MascotError::Internal(format!(
                "row {i} covers {residues} residues but {} has {}",
                s.id,
                s.len()
            )));
        }
    }

    let c = m.center_row();
    let to_origin = RigidTransform::translation(-structures[c].ca_centroid());
    let center_ca: Vec<Vec3> = structures[c].ca_coords().iter().map(|p| to_origin.apply(p)).collect();

    let fits: Vec<ProteinFit> = (0..structures.len())
        .into_par_iter()
        .map(|i| {
            let s = &structures[i];
            if i == c {
                return ProteinFit {
                    index: i,
                    id: s.id.clone(),
                    is_center: true,
                    seed_equivalences: 0,
                    equivalence_count: 0,
                    rmsd: None,
                    transform: Some(to_origin),
                    refine_rounds_run: 0,
                    error: None,
                };
            }
            let seeds = extract_equivalences(m, i);
            let outcome = if seeds.len() < 3 {
                Err(MascotError::NumericDegeneracy(format!(
                    "only {} seed equivalences with the center",
                    seeds.len()
                )))
            } else {
                fit_one(&center_ca, &s.ca_coords(), &seeds, threshold, refine_rounds)
            };
            match outcome {
                Ok(f) => ProteinFit {
                    index: i,
                    id: s.id.clone(),
                    is_center: false,
                    seed_equivalences: seeds.len(),
                    equivalence_count: f.equivalences.len(),
                    rmsd: Some(f.rmsd),
                    transform: Some(f.transform),
                    refine_rounds_run: f.rounds,
                    error: None,
                },
                Err(e) => ProteinFit {
                    index: i,
                    id: s.id.clone(),
                    is_center: false,
                    seed_equivalences: seeds.len(),
                    equivalence_count: 0,
                    rmsd: None,
                    transform: None,
                    refine_rounds_run: 0,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let rmsds: Vec<f64> = fits.iter().filter_map(|f| f.rmsd).collect();
    let center_rmsd = center_rmsd(&rmsds).ok();
    let transformed = fits
        .iter()
        .zip(structures)
        .map(|(f, s)| f.transform.map(|t| s.map_coords(|p| t.apply(p))))
        .collect();
    Ok(Superposition {
        center_index: c,
        fits,
        center_rmsd,
        transformed,
    })
}

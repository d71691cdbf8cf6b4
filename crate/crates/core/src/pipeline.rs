//! End-to-end driver: resolve inputs, assign secondary structure, align all
//! pairs, pick the center, merge, superpose and write the outputs.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{info, warn};
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::align::{align_all_pairs, GapParams, SimilarityMatrix};
use crate::centerstar::{build_distance_matrix, correspondence_from_table, select_center};
use crate::error::{MascotError, Result};
use crate::sse::{sequence_for, symbols_to_string, SseProvenance, SseSequence};
use crate::structure::{
    code_from_file_name, default_cache_dir, load_structure, parse_structure_spec, write_pdb, Fetcher,
    ProteinStructure, StructureId,
};
use crate::superpose::{superpose_all, ProteinFit, DEFAULT_REFINE_ROUNDS, DEFAULT_THRESHOLD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    Json,
    Text,
    #[default]
    Both,
}

impl ReportFormat {
    fn json(self) -> bool {
        matches!(self, ReportFormat::Json | ReportFormat::Both)
    }

    fn text(self) -> bool {
        matches!(self, ReportFormat::Text | ReportFormat::Both)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// PDB codes (`1TTQ`, `1TTQ:B`) or paths to PDB files.
    pub inputs: Vec<String>,
    pub pdb_dir: Option<PathBuf>,
    pub dssp_dir: Option<PathBuf>,
    pub cache_dir: PathBuf,
    pub out_dir: PathBuf,
    pub gap_open: f64,
    pub gap_extend: f64,
    pub threshold: f64,
    pub refine_rounds: usize,
    pub allow_remote: bool,
    pub report_format: ReportFormat,
    /// Worker threads; 0 uses every available core.
    pub jobs: usize,
    pub matrix: Option<PathBuf>,
    pub dump_msa: bool,
    pub fetcher: Fetcher,
}

impl RunConfig {
    pub fn new(inputs: Vec<String>) -> Self {
        RunConfig {
            inputs,
            pdb_dir: None,
            dssp_dir: None,
            cache_dir: default_cache_dir(),
            out_dir: PathBuf::from("."),
            gap_open: GapParams::DEFAULT_OPEN,
            gap_extend: GapParams::DEFAULT_EXTEND,
            threshold: DEFAULT_THRESHOLD,
            refine_rounds: DEFAULT_REFINE_ROUNDS,
            allow_remote: false,
            report_format: ReportFormat::default(),
            jobs: 0,
            matrix: None,
            dump_msa: false,
            fetcher: Fetcher::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.inputs.len() < 2 {
            return Err(MascotError::InvalidParameter(format!(
                "at least 2 structures are required, got {}",
                self.inputs.len()
            )));
        }
        if !(self.threshold > 0.0 && self.threshold.is_finite()) {
            return Err(MascotError::InvalidParameter(format!(
                "distance threshold must be positive, got {}",
                self.threshold
            )));
        }
        GapParams::new(self.gap_open, self.gap_extend)?;
        for token in self.inputs.iter().filter(|t| !looks_like_path(t)) {
            parse_structure_spec(token)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Parameters {
    pub gap_open: f64,
    pub gap_extend: f64,
    pub threshold: f64,
    pub refine_rounds: usize,
    pub matrix: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputSummary {
    pub token: String,
    pub id: StructureId,
    pub source: String,
    pub residues: usize,
    pub sse_provenance: SseProvenance,
    pub sse: String,
}

/// A protein dropped before alignment.
#[derive(Debug, Clone, Serialize)]
pub struct InputFailure {
    pub token: String,
    pub stage: &'static str,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub parameters: Parameters,
    pub inputs: Vec<InputSummary>,
    pub dropped: Vec<InputFailure>,
    pub distance_matrix: Vec<Vec<usize>>,
    pub sp_scores: Vec<usize>,
    pub center_index: usize,
    pub center_id: StructureId,
    pub per_protein: Vec<ProteinFit>,
    pub center_rmsd: Option<f64>,
    /// centerRMSD below half the distance threshold.
    pub good_alignment: Option<bool>,
    pub elapsed_seconds: f64,
}

impl RunReport {
    pub fn is_complete(&self) -> bool {
        self.dropped.is_empty() && self.per_protein.iter().all(ProteinFit::succeeded)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "MASCOT multiple structure alignment");
        let _ = writeln!(
            out,
            "center: {} (SP distance {})",
            self.center_id, self.sp_scores[self.center_index]
        );
        match self.center_rmsd {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "centerRMSD: {r:.3} A{}",
                    if self.good_alignment == Some(true) { " (good alignment)" } else { "" }
                );
            }
            None => {
                let _ = writeln!(out, "centerRMSD: n/a");
            }
        }
        let p = &self.parameters;
        let _ = writeln!(
            out,
            "gap open {} extend {}, threshold {} A, refine rounds {}, matrix {}",
            p.gap_open, p.gap_extend, p.threshold, p.refine_rounds, p.matrix
        );
        let _ = writeln!(out, "elapsed: {:.2} s", self.elapsed_seconds);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<10} {:<14} {:>8} {:>6} {:>6} {:>8}",
            "protein", "sse", "residues", "seeds", "equiv", "rmsd"
        );
        for (input, fit) in self.inputs.iter().zip(&self.per_protein) {
            let rmsd = match (fit.is_center, fit.rmsd) {
                (true, _) => "center".to_string(),
                (false, Some(r)) => format!("{r:.3}"),
                (false, None) => "failed".to_string(),
            };
            let _ = writeln!(
                out,
                "{:<10} {:<14} {:>8} {:>6} {:>6} {:>8}",
                fit.id.to_string(),
                input.sse_provenance.to_string(),
                input.residues,
                fit.seed_equivalences,
                fit.equivalence_count,
                rmsd
            );
        }
        let failed: Vec<_> = self.per_protein.iter().filter(|f| !f.succeeded()).collect();
        if !failed.is_empty() || !self.dropped.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "failures:");
            for d in &self.dropped {
                let _ = writeln!(out, "  {} ({}): {}", d.token, d.stage, d.error);
            }
            for f in failed {
                let _ = writeln!(out, "  {} (superposition): {}", f.id, f.error.as_deref().unwrap_or(""));
            }
        }
        out
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    pub written: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.is_complete() {
            0
        } else {
            3
        }
    }
}

/// Exit status for a fatal pipeline error: 1 for bad arguments, 2 for
/// input that could not be found, fetched or read.
pub fn exit_code_for(err: &MascotError) -> i32 {
    match err {
        MascotError::InvalidParameter(_) | MascotError::InputFormat { .. } => 1,
        _ => 2,
    }
}

fn looks_like_path(token: &str) -> bool {
    let lower = token.to_ascii_lowercase();
    token.contains('/')
        || token.contains(std::path::MAIN_SEPARATOR)
        || [".pdb", ".ent", ".cif"].iter().any(|ext| lower.ends_with(ext))
        || Path::new(token).is_file()
}

/// A literal file, optionally followed by `:CHAIN`.
fn path_token(token: &str) -> Result<(PathBuf, StructureId)> {
    let (path, chain) = match token.rsplit_once(':') {
        Some((p, c)) if !Path::new(token).is_file() && c.chars().count() == 1 => (p, c.chars().next()),
        _ => (token, None),
    };
    let path = PathBuf::from(path);
    if !path.is_file() {
        return Err(MascotError::MissingInput {
            id: token.to_string(),
            searched: path.display().to_string(),
        });
    }
    let code = code_from_file_name(&path).unwrap_or_else(|| "XXXX".to_string());
    let id = StructureId::new(&code, chain).or_else(|_| StructureId::new("XXXX", chain))?;
    Ok((path, id))
}

fn pdb_dir_candidates(id: &StructureId, dir: &Path) -> Vec<PathBuf> {
    let code = id.code();
    let lower = code.to_ascii_lowercase();
    let mut names = vec![format!("{}.pdb", id.file_stem()), format!("{code}.pdb"), format!("{lower}.pdb")];
    names.extend([format!("pdb{lower}.ent"), format!("{lower}.ent"), format!("{code}.ent")]);
    names.dedup();
    names.into_iter().map(|n| dir.join(n)).collect()
}

fn resolve(token: &str, cfg: &RunConfig) -> Result<(PathBuf, StructureId)> {
    if looks_like_path(token) {
        return path_token(token);
    }
    let id = parse_structure_spec(token)?;
    if let Some(dir) = &cfg.pdb_dir {
        if let Some(p) = pdb_dir_candidates(&id, dir).into_iter().find(|p| p.is_file()) {
            return Ok((p, id));
        }
    }
    let path = cfg.fetcher.fetch(&id, &cfg.cache_dir, cfg.allow_remote).map_err(|e| match e {
        MascotError::MissingInput { id, searched } => MascotError::MissingInput {
            id,
            searched: match &cfg.pdb_dir {
                Some(d) => format!("{}, {searched}", d.display()),
                None => searched,
            },
        },
        other => other,
    })?;
    Ok((path, id))
}

/// Temp files in the output directory, renamed into place together.
struct Staged {
    files: Vec<(NamedTempFile, PathBuf)>,
}

impl Staged {
    fn add(&mut self, dir: &Path, name: &str, contents: &[u8]) -> Result<()> {
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| MascotError::io(dir, e))?;
        tmp.write_all(contents).map_err(|e| MascotError::io(tmp.path(), e))?;
        self.files.push((tmp, dir.join(name)));
        Ok(())
    }

    fn commit(self) -> Result<Vec<PathBuf>> {
        let mut written = Vec::with_capacity(self.files.len());
        for (tmp, dest) in self.files {
            tmp.persist(&dest).map_err(|e| MascotError::io(&dest, e.error))?;
            written.push(dest);
        }
        Ok(written)
    }
}

fn output_names(ids: &[StructureId]) -> Vec<String> {
    ids.iter()
        .enumerate()
        .map(|(i, id)| {
            let stem = id.file_stem();
            let repeated = ids.iter().filter(|o| o.file_stem() == stem).count() > 1;
            if repeated {
                format!("{stem}_{}_aligned.pdb", i + 1)
            } else {
                format!("{stem}_aligned.pdb")
            }
        })
        .collect()
}

/// Runs the whole alignment. Fatal problems (bad configuration, unresolvable
/// input, fewer than 2 usable structures) return an error and leave no
/// output files behind; single proteins that fail later are recorded in the
/// report.
pub fn run_pipeline(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let gaps = GapParams::new(cfg.gap_open, cfg.gap_extend)?;
    let matrix = match &cfg.matrix {
        Some(p) => SimilarityMatrix::from_file(p)?,
        None => SimilarityMatrix::default(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| MascotError::Internal(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_inner(cfg, gaps, &matrix))
}

fn run_inner(cfg: &RunConfig, gaps: GapParams, matrix: &SimilarityMatrix) -> Result<RunOutcome> {
    let start = Instant::now();

    let resolved = cfg
        .inputs
        .iter()
        .map(|t| resolve(t, cfg).map(|r| (t.clone(), r)))
        .collect::<Result<Vec<_>>>()?;

    let mut dropped = Vec::new();
    let mut structures: Vec<ProteinStructure> = Vec::new();
    let mut tokens = Vec::new();
    let mut sequences: Vec<(SseSequence, SseProvenance)> = Vec::new();
    for (token, (path, id)) in resolved {
        let s = match load_structure(&path, &id) {
            Ok(s) => s,
            Err(e) => {
                warn!("{token}: {e}");
                dropped.push(InputFailure {
                    token,
                    stage: "parse",
                    error: e.to_string(),
                });
                continue;
            }
        };
        match sequence_for(&s, cfg.dssp_dir.as_deref()) {
            Ok(seq) => {
                info!("{}: {} residues, {}", s.id, s.len(), seq.1);
                sequences.push(seq);
                structures.push(s);
                tokens.push(token);
            }
            Err(e) => {
                warn!("{token}: {e}");
                dropped.push(InputFailure {
                    token,
                    stage: "secondary structure",
                    error: e.to_string(),
                });
            }
        }
    }
    if structures.len() < 2 {
        let detail: Vec<String> = dropped.iter().map(|d| format!("{}: {}", d.token, d.error)).collect();
        return Err(MascotError::DegenerateInput(format!(
            "fewer than 2 structures could be read ({})",
            detail.join("; ")
        )));
    }

    let seqs: Vec<SseSequence> = sequences.iter().map(|(s, _)| s.clone()).collect();
    let table = align_all_pairs(&seqs, matrix, gaps)?;
    let distances = build_distance_matrix(&table)?;
    let center = select_center(&distances)?;
    let c = center.center_index;
    let correspondence = correspondence_from_table(&table, c, &seqs[c].symbols)?;
    let seq_refs: Vec<&[_]> = seqs.iter().map(|s| s.symbols.as_slice()).collect();
    correspondence.check(&seq_refs).map_err(MascotError::Internal)?;
    info!("center {} with SP distance {}", structures[c].id, center.sp_scores[c]);

    let sup = superpose_all(&structures, &correspondence, cfg.threshold, cfg.refine_rounds)?;

    let inputs = tokens
        .iter()
        .zip(&structures)
        .zip(&sequences)
        .map(|((token, s), (seq, prov))| InputSummary {
            token: token.clone(),
            id: s.id.clone(),
            source: s.source_path.display().to_string(),
            residues: s.len(),
            sse_provenance: *prov,
            sse: symbols_to_string(&seq.symbols),
        })
        .collect();
    let report = RunReport {
        parameters: Parameters {
            gap_open: gaps.open(),
            gap_extend: gaps.extend(),
            threshold: cfg.threshold,
            refine_rounds: cfg.refine_rounds,
            matrix: cfg
                .matrix
                .as_ref()
                .map_or_else(|| "default".to_string(), |p| p.display().to_string()),
        },
        inputs,
        dropped,
        distance_matrix: distances.rows(),
        sp_scores: center.sp_scores.clone(),
        center_index: c,
        center_id: structures[c].id.clone(),
        center_rmsd: sup.center_rmsd,
        good_alignment: sup.center_rmsd.map(|r| r < cfg.threshold / 2.0),
        per_protein: sup.fits,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    };

    fs::create_dir_all(&cfg.out_dir).map_err(|e| MascotError::io(&cfg.out_dir, e))?;
    let mut staged = Staged { files: Vec::new() };
    let ids: Vec<StructureId> = structures.iter().map(|s| s.id.clone()).collect();
    for (name, moved) in output_names(&ids).iter().zip(&sup.transformed) {
        if let Some(s) = moved {
            staged.add(&cfg.out_dir, name, write_pdb(s).as_bytes())?;
        }
    }
    if cfg.report_format.json() {
        staged.add(&cfg.out_dir, "report.json", report.to_json().as_bytes())?;
    }
    if cfg.report_format.text() {
        staged.add(&cfg.out_dir, "report.txt", report.to_text().as_bytes())?;
    }
    if cfg.dump_msa {
        let labels: Vec<String> = ids.iter().map(ToString::to_string).collect();
        staged.add(&cfg.out_dir, "msa.fasta", correspondence.to_fasta(&labels).as_bytes())?;
    }
    let written = staged.commit()?;
    Ok(RunOutcome { report, written })
}

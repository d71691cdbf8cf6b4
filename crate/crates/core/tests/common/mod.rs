//! Test-only helpers: ideal backbones, random sequences and brute-force
//! reference implementations.

#![allow(dead_code)]

use mascot::geometry::{Mat3, Vec3};
use mascot::sse::SseSymbol;
use mascot::structure::{ProteinStructure, Residue, StructureId};
use rand::Rng;
use rand_distr::StandardNormal;

const N_CA: f64 = 1.458;
const CA_C: f64 = 1.525;
const C_N: f64 = 1.329;
const C_O: f64 = 1.231;
const ANGLE_N_CA_C: f64 = 111.2;
const ANGLE_CA_C_N: f64 = 116.2;
const ANGLE_C_N_CA: f64 = 121.7;
const ANGLE_CA_C_O: f64 = 120.5;

/// Places `d` so that |cd| = `len`, angle bcd = `angle`, torsion abcd = `torsion` (degrees).
pub fn place(a: &Vec3, b: &Vec3, c: &Vec3, len: f64, angle: f64, torsion: f64) -> Vec3 {
    let (theta, phi) = (angle.to_radians(), torsion.to_radians());
    let bc = (c - b).normalize();
    let n = (b - a).cross(&bc).normalize();
    let m = n.cross(&bc);
    let d2 = Vec3::new(-len * theta.cos(), len * theta.sin() * phi.cos(), len * theta.sin() * phi.sin());
    c + bc * d2.x + m * d2.y + n * d2.z
}

/// Backbone with the given (phi, psi) per residue and trans peptides.
pub fn backbone(code: &str, torsions: &[(f64, f64)]) -> ProteinStructure {
    let mut n = Vec3::new(0.0, 0.0, 0.0);
    let mut ca = Vec3::new(N_CA, 0.0, 0.0);
    let a = ANGLE_N_CA_C.to_radians();
    let mut c = ca + Vec3::new(-CA_C * a.cos(), CA_C * a.sin(), 0.0);
    let mut residues = Vec::with_capacity(torsions.len());
    for (i, &(_, psi)) in torsions.iter().enumerate() {
        let o = place(&n, &ca, &c, C_O, ANGLE_CA_C_O, psi + 180.0);
        residues.push(Residue {
            seq_index: i + 1,
            pdb_resseq: i as i32 + 1,
            icode: None,
            name: "ALA".into(),
            chain: 'A',
            n: Some(n),
            ca,
            c: Some(c),
            o: Some(o),
        });
        if let Some(&(phi_next, _)) = torsions.get(i + 1) {
            let n_next = place(&n, &ca, &c, C_N, ANGLE_CA_C_N, psi);
            let ca_next = place(&ca, &c, &n_next, N_CA, ANGLE_C_N_CA, 180.0);
            let c_next = place(&c, &n_next, &ca_next, CA_C, ANGLE_N_CA_C, phi_next);
            n = n_next;
            ca = ca_next;
            c = c_next;
        }
    }
    ProteinStructure {
        id: StructureId::new(code, None).unwrap(),
        residues,
        source_path: format!("{code}.pdb").into(),
    }
}

pub const HELIX: (f64, f64) = (-57.0, -47.0);
pub const STRAND: (f64, f64) = (-120.0, 130.0);
pub const LOOP: (f64, f64) = (-70.0, 150.0);

pub fn helix(len: usize) -> ProteinStructure {
    backbone("HLXA", &vec![HELIX; len])
}

pub fn extended(len: usize) -> ProteinStructure {
    backbone("EXTD", &vec![(-180.0, 180.0); len])
}

/// Helix, loop, helix, loop, helix: a small all-alpha fold.
pub fn three_helix(code: &str, lens: [usize; 3]) -> ProteinStructure {
    let mut t = Vec::new();
    for (k, &l) in lens.iter().enumerate() {
        if k > 0 {
            t.extend([LOOP, (-90.0, 0.0), (60.0, 40.0), LOOP]);
        }
        t.extend(std::iter::repeat_n(HELIX, l));
    }
    backbone(code, &t)
}

pub fn random_backbone<R: Rng>(rng: &mut R, code: &str, len: usize) -> ProteinStructure {
    let mut t = Vec::with_capacity(len);
    while t.len() < len {
        let run = rng.random_range(3..12);
        let kind = match rng.random_range(0..3) {
            0 => HELIX,
            1 => STRAND,
            _ => LOOP,
        };
        for _ in 0..run {
            let jitter: (f64, f64) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
            t.push((kind.0 + jitter.0, kind.1 + jitter.1));
        }
    }
    t.truncate(len);
    backbone(code, &t)
}

pub fn random_symbols<R: Rng>(rng: &mut R, len: usize) -> Vec<SseSymbol> {
    (0..len).map(|_| SseSymbol::ALL[rng.random_range(0..8)]).collect()
}

/// Uniformly distributed proper rotation from a normalized Gaussian quaternion.
pub fn random_rotation<R: Rng>(rng: &mut R) -> Mat3 {
    let mut q = [0.0f64; 4];
    for x in q.iter_mut() {
        *x = rng.sample(StandardNormal);
    }
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|v| v / norm);
    Mat3::new(
        1.0 - 2.0 * (y * y + z * z),
        2.0 * (x * y - w * z),
        2.0 * (x * z + w * y),
        2.0 * (x * y + w * z),
        1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z - w * x),
        2.0 * (x * z - w * y),
        2.0 * (y * z + w * x),
        1.0 - 2.0 * (x * x + y * y),
    )
}

pub fn random_cloud<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Vec<Vec3> {
    (0..n)
        .map(|_| {
            Vec3::new(
                rng.random_range(-scale..scale),
                rng.random_range(-scale..scale),
                rng.random_range(-scale..scale),
            )
        })
        .collect()
}

fn mean(points: &[Vec3]) -> Vec3 {
    points.iter().fold(Vec3::zeros(), |a, p| a + p) / points.len() as f64
}

/// Best residual RMSD of `mobile` onto `target` over `samples` random
/// rotations about the matched centroids.
pub fn sampled_best_rmsd<R: Rng>(rng: &mut R, target: &[Vec3], mobile: &[Vec3], samples: usize) -> f64 {
    let (ct, cm) = (mean(target), mean(mobile));
    let p: Vec<Vec3> = target.iter().map(|x| x - ct).collect();
    let q: Vec<Vec3> = mobile.iter().map(|x| x - cm).collect();
    let norms: f64 = p.iter().chain(&q).map(|x| x.norm_squared()).sum();
    // Σ‖R q − p‖² = Σ‖p‖² + Σ‖q‖² − 2 tr(R M), M = Σ q pᵀ
    let mut m = Mat3::zeros();
    for (a, b) in p.iter().zip(&q) {
        m += b * a.transpose();
    }
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        let r = random_rotation(rng);
        let residual = norms - 2.0 * (r * m).trace();
        best = best.min(residual);
    }
    (best.max(0.0) / p.len() as f64).sqrt()
}

/// Direct residual of a rotation about matched centroids.
pub fn direct_rmsd(target: &[Vec3], mobile: &[Vec3], r: &Mat3) -> f64 {
    let (ct, cm) = (mean(target), mean(mobile));
    let s: f64 = target
        .iter()
        .zip(mobile)
        .map(|(p, q)| (r * (q - cm) - (p - ct)).norm_squared())
        .sum();
    (s / target.len() as f64).sqrt()
}

/// Same-group similarity written out by hand: {H,G,I}, {B,E}, {T,S}, {Z}.
pub fn reference_similarity(a: SseSymbol, b: SseSymbol) -> f64 {
    fn group(s: SseSymbol) -> u8 {
        match s.as_char() {
            'H' | 'G' | 'I' => 0,
            'B' | 'E' => 1,
            'T' | 'S' => 2,
            _ => 3,
        }
    }
    if group(a) == group(b) {
        1.0
    } else {
        0.0
    }
}

/// Best global alignment score by walking every possible alignment path.
pub fn exhaustive_best_score(a: &[SseSymbol], b: &[SseSymbol], open: f64, extend: f64) -> f64 {
    // prev: 0 match, 1 gap in b, 2 gap in a
    fn walk(a: &[SseSymbol], b: &[SseSymbol], prev: u8, open: f64, extend: f64) -> f64 {
        if a.is_empty() && b.is_empty() {
            return 0.0;
        }
        let mut best = f64::NEG_INFINITY;
        if !a.is_empty() && !b.is_empty() {
            let s = reference_similarity(a[0], b[0]) + walk(&a[1..], &b[1..], 0, open, extend);
            best = best.max(s);
        }
        if !a.is_empty() {
            let cost = if prev == 1 { extend } else { open };
            best = best.max(walk(&a[1..], b, 1, open, extend) - cost);
        }
        if !b.is_empty() {
            let cost = if prev == 2 { extend } else { open };
            best = best.max(walk(a, &b[1..], 2, open, extend) - cost);
        }
        best
    }
    walk(a, b, 0, open, extend)
}

/// Per-column check of a gapped matrix: every row de-gaps to its input, no
/// column is all gaps, and the width lies between the longest input and the
/// total input length.
pub fn correspondence_violations(rows: &[Vec<Option<SseSymbol>>], inputs: &[Vec<SseSymbol>]) -> Vec<String> {
    let mut v = Vec::new();
    let width = rows.first().map_or(0, Vec::len);
    for (i, (row, input)) in rows.iter().zip(inputs).enumerate() {
        if row.len() != width {
            v.push(format!("row {i} has width {} instead of {width}", row.len()));
        }
        let degapped: Vec<SseSymbol> = row.iter().flatten().copied().collect();
        if &degapped != input {
            v.push(format!("row {i} does not de-gap to its input"));
        }
    }
    for col in 0..width {
        if rows.iter().all(|r| r.get(col).copied().flatten().is_none()) {
            v.push(format!("column {col} is all gaps"));
        }
    }
    let longest = inputs.iter().map(Vec::len).max().unwrap_or(0);
    let total: usize = inputs.iter().map(Vec::len).sum();
    if width < longest || width > total {
        v.push(format!("width {width} outside [{longest}, {total}]"));
    }
    v
}

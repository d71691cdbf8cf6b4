//! Simplified Kabsch–Sander assignment from backbone hydrogen bonds.
//!
//! Amide hydrogens are placed one ångström from N along the previous
//! residue's C→O direction. Bonds use the electrostatic energy
//! `0.084·332·(1/r_ON + 1/r_CH − 1/r_OH − 1/r_CN)` with a −0.5 kcal/mol
//! cutoff; each donor keeps its two strongest acceptors. From the bonds:
//! n-turns (n = 3, 4, 5), minimal helices (two consecutive n-turns), bridges
//! and ladders, and CA-trace bends. Residues take the first matching class in
//! the order H, B, E, G, I, T, S, falling back to Z.

use crate::error::{MascotError, Result};
use crate::geometry::{angle_deg, Vec3};
use crate::sse::{SseSequence, SseSymbol};
use crate::structure::ProteinStructure;

const COUPLING: f64 = 0.084 * 332.0;
pub const HBOND_CUTOFF_KCAL: f64 = -0.5;
pub const BEND_KAPPA_DEG: f64 = 70.0;
pub const MIN_RESIDUES: usize = 5;

const MIN_ENERGY: f64 = -9.9;
const MIN_ATOM_DISTANCE: f64 = 0.5;
/// CA pairs further apart than this cannot reach the energy cutoff.
const MAX_CA_DISTANCE: f64 = 9.0;
const PEPTIDE_BOND_MAX: f64 = 2.5;
const CA_TRACE_MAX: f64 = 4.2;

/// Energy of the N-H(donor)···O=C(acceptor) bond in kcal/mol.
pub fn hbond_energy(n: &Vec3, h: &Vec3, c: &Vec3, o: &Vec3) -> f64 {
    let r_on = (o - n).norm();
    let r_ch = (c - h).norm();
    let r_oh = (o - h).norm();
    let r_cn = (c - n).norm();
    if [r_on, r_ch, r_oh, r_cn].iter().any(|&r| r < MIN_ATOM_DISTANCE) {
        return MIN_ENERGY;
    }
    (COUPLING * (1.0 / r_on + 1.0 / r_ch - 1.0 / r_oh - 1.0 / r_cn)).max(MIN_ENERGY)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BridgeKind {
    Parallel,
    Antiparallel,
}

struct Backbone<'a> {
    s: &'a ProteinStructure,
    /// `breaks[k]` counts chain breaks between residues `0..=k`.
    breaks: Vec<usize>,
    /// Two strongest acceptors per donor: (acceptor index, energy).
    acceptors: Vec<[Option<(usize, f64)>; 2]>,
}

impl<'a> Backbone<'a> {
    fn new(s: &'a ProteinStructure) -> Self {
        let res = &s.residues;
        let n = res.len();
        let mut breaks = vec![0usize; n];
        for i in 1..n {
            let linked = match (res[i - 1].c, res[i].n) {
                (Some(c), Some(nn)) => (nn - c).norm() < PEPTIDE_BOND_MAX,
                _ => (res[i].ca - res[i - 1].ca).norm() < CA_TRACE_MAX,
            };
            breaks[i] = breaks[i - 1] + usize::from(!linked);
        }

        let hydrogens: Vec<Option<Vec3>> = (0..n)
            .map(|i| {
                if i == 0 || res[i].name == "PRO" || breaks[i] != breaks[i - 1] {
                    return None;
                }
                let nn = res[i].n?;
                let dir = res[i - 1].c? - res[i - 1].o?;
                let len = dir.norm();
                (len > 0.0).then(|| nn + dir / len)
            })
            .collect();

        let mut acceptors = vec![[None; 2]; n];
        for d in 0..n {
            let (Some(h), Some(nd)) = (hydrogens[d], res[d].n) else {
                continue;
            };
            for a in 0..n {
                if a == d || d == a + 1 {
                    continue;
                }
                let (Some(c), Some(o)) = (res[a].c, res[a].o) else {
                    continue;
                };
                if (res[a].ca - res[d].ca).norm() > MAX_CA_DISTANCE {
                    continue;
                }
                let e = hbond_energy(&nd, &h, &c, &o);
                let slots = &mut acceptors[d];
                match slots[0] {
                    Some((_, e0)) if e >= e0 => {
                        if slots[1].is_none_or(|(_, e1)| e < e1) {
                            slots[1] = Some((a, e));
                        }
                    }
                    _ => {
                        slots[1] = slots[0];
                        slots[0] = Some((a, e));
                    }
                }
            }
        }
        Backbone { s, breaks, acceptors }
    }

    fn len(&self) -> usize {
        self.s.residues.len()
    }

    /// NH of `donor` bonds to CO of `acceptor`.
    fn bond(&self, donor: usize, acceptor: usize) -> bool {
        self.acceptors[donor]
            .iter()
            .flatten()
            .any(|&(a, e)| a == acceptor && e < HBOND_CUTOFF_KCAL)
    }

    fn unbroken(&self, from: usize, to: usize) -> bool {
        self.breaks[from] == self.breaks[to]
    }

    fn turn(&self, n: usize, i: usize) -> bool {
        i + n < self.len() && self.unbroken(i, i + n) && self.bond(i + n, i)
    }

    fn bridge(&self, i: usize, j: usize) -> Option<BridgeKind> {
        if i == 0 || j + 1 >= self.len() || !self.unbroken(i - 1, i + 1) || !self.unbroken(j - 1, j + 1) {
            return None;
        }
        let b = |d, a| self.bond(d, a);
        if (b(i + 1, j) && b(j, i - 1)) || (b(j + 1, i) && b(i, j - 1)) {
            Some(BridgeKind::Parallel)
        } else if (b(i, j) && b(j, i)) || (b(i + 1, j - 1) && b(j + 1, i - 1)) {
            Some(BridgeKind::Antiparallel)
        } else {
            None
        }
    }

    fn bend(&self, i: usize) -> bool {
        if i < 2 || i + 2 >= self.len() || !self.unbroken(i - 2, i + 2) {
            return false;
        }
        let ca = |k: usize| self.s.residues[k].ca;
        angle_deg(&(ca(i) - ca(i - 2)), &(ca(i + 2) - ca(i))).is_some_and(|k| k > BEND_KAPPA_DEG)
    }
}

/// Assigns one symbol per residue. Needs at least [`MIN_RESIDUES`] residues.
pub fn assign_sse(structure: &ProteinStructure) -> Result<SseSequence> {
    let n = structure.len();
    if n < MIN_RESIDUES {
        return Err(MascotError::DegenerateInput(format!(
            "{} has {n} residues; at least {MIN_RESIDUES} are needed to assign secondary structure",
            structure.id
        )));
    }
    let bb = Backbone::new(structure);

    // helix[k][r]: residue r lies in a minimal helix of turn length 3 + k
    let mut helix = [vec![false; n], vec![false; n], vec![false; n]];
    let mut turn = vec![false; n];
    for (k, span) in [3usize, 4, 5].into_iter().enumerate() {
        for i in 0..n {
            if !bb.turn(span, i) {
                continue;
            }
            for t in &mut turn[i + 1..i + span] {
                *t = true;
            }
            if i > 0 && bb.turn(span, i - 1) {
                for h in &mut helix[k][i..i + span] {
                    *h = true;
                }
            }
        }
    }

    let mut bridges = Vec::new();
    for i in 1..n.saturating_sub(1) {
        for j in i + 3..n.saturating_sub(1) {
            if let Some(kind) = bb.bridge(i, j) {
                bridges.push((i, j, kind));
            }
        }
    }
    let mut bridge = vec![false; n];
    let mut ladder = vec![false; n];
    for &(i, j, kind) in &bridges {
        bridge[i] = true;
        bridge[j] = true;
        let linked = bridges.iter().any(|&(i2, j2, k2)| {
            k2 == kind
                && i2.abs_diff(i) == 1
                && match kind {
                    BridgeKind::Parallel => j2 as isize - j as isize == i2 as isize - i as isize,
                    BridgeKind::Antiparallel => j2 as isize - j as isize == i as isize - i2 as isize,
                }
        });
        if linked {
            ladder[i] = true;
            ladder[j] = true;
        }
    }

    let symbols = (0..n)
        .map(|r| {
            if helix[1][r] {
                SseSymbol::AlphaHelix
            } else if bridge[r] && !ladder[r] {
                SseSymbol::BetaBridge
            } else if ladder[r] {
                SseSymbol::Strand
            } else if helix[0][r] {
                SseSymbol::Helix310
            } else if helix[2][r] {
                SseSymbol::PiHelix
            } else if turn[r] {
                SseSymbol::Turn
            } else if bb.bend(r) {
                SseSymbol::Bend
            } else {
                SseSymbol::NoMotif
            }
        })
        .collect();
    Ok(SseSequence::new(structure.id.clone(), symbols))
}

mod common;

use mascot::align::{align_all_pairs, nw_align, score_alignment, GapParams, SimilarityMatrix};
use mascot::centerstar::{correspondence_from_table, select_center, DistanceMatrix};
use mascot::geometry::{Mat3, Vec3};
use mascot::sse::{SseSequence, SseSymbol};
use mascot::structure::{parse_pdb_bytes, write_pdb, StructureId};
use mascot::superpose::{kabsch, refine_pairs, rmsd, RigidTransform};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn symbol() -> impl Strategy<Value = SseSymbol> {
    (0usize..8).prop_map(|i| SseSymbol::ALL[i])
}

fn sequence(max: usize) -> impl Strategy<Value = Vec<SseSymbol>> {
    prop::collection::vec(symbol(), 1..=max)
}

fn point() -> impl Strategy<Value = Vec3> {
    (-30.0..30.0f64, -30.0..30.0f64, -30.0..30.0f64).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn rotation() -> impl Strategy<Value = Mat3> {
    any::<u64>().prop_map(|seed| common::random_rotation(&mut StdRng::seed_from_u64(seed)))
}

fn gaps() -> impl Strategy<Value = GapParams> {
    (0.0..3.0f64, 0.0..1.0f64).prop_map(|(o, f)| GapParams::new(o, o * f).unwrap())
}

fn moved(points: &[Vec3], r: &Mat3, t: &Vec3) -> Vec<Vec3> {
    points.iter().map(|p| r * p + t).collect()
}

fn residual(target: &[Vec3], mobile: &[Vec3]) -> f64 {
    let t = kabsch(target, mobile).unwrap();
    let m: Vec<Vec3> = mobile.iter().map(|p| t.apply(p)).collect();
    rmsd(target, &m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn alignment_rows_degap_to_inputs(a in sequence(40), b in sequence(40), g in gaps()) {
        let al = nw_align(&a, &b, &SimilarityMatrix::default(), g).unwrap();
        let ra: Vec<_> = al.gapped_a.iter().flatten().copied().collect();
        let rb: Vec<_> = al.gapped_b.iter().flatten().copied().collect();
        prop_assert_eq!(ra, a);
        prop_assert_eq!(rb, b);
        prop_assert!(al.gapped_a.iter().zip(&al.gapped_b).all(|(x, y)| x.is_some() || y.is_some()));
    }

    #[test]
    fn reported_score_matches_rescoring(a in sequence(40), b in sequence(40), g in gaps()) {
        let m = SimilarityMatrix::default();
        let al = nw_align(&a, &b, &m, g).unwrap();
        prop_assert!((al.score - score_alignment(&al.gapped_a, &al.gapped_b, &m, g)).abs() < 1e-9);
    }

    #[test]
    fn score_is_symmetric(a in sequence(40), b in sequence(40), g in gaps()) {
        let m = SimilarityMatrix::default();
        let ab = nw_align(&a, &b, &m, g).unwrap();
        let ba = nw_align(&b, &a, &m, g).unwrap();
        prop_assert!((ab.score - ba.score).abs() < 1e-9);
    }

    #[test]
    fn self_alignment_is_gapless(a in sequence(60), g in gaps()) {
        let al = nw_align(&a, &a, &SimilarityMatrix::default(), g).unwrap();
        prop_assert_eq!(al.score, a.len() as f64);
        prop_assert_eq!(al.edit_distance, 0);
        prop_assert_eq!(al.len(), a.len());
    }

    #[test]
    fn score_matches_exhaustive_search(a in sequence(6), b in sequence(6), g in gaps()) {
        let al = nw_align(&a, &b, &SimilarityMatrix::default(), g).unwrap();
        let best = common::exhaustive_best_score(&a, &b, g.open(), g.extend());
        prop_assert!((al.score - best).abs() < 1e-9, "dp {} vs exhaustive {}", al.score, best);
    }

    #[test]
    fn merged_matrix_satisfies_correspondence_properties(
        seqs in prop::collection::vec(sequence(25), 2..7),
        g in gaps(),
    ) {
        let id = StructureId::new("TEST", None).unwrap();
        let s: Vec<SseSequence> = seqs.iter().map(|x| SseSequence::new(id.clone(), x.clone())).collect();
        let table = align_all_pairs(&s, &SimilarityMatrix::default(), g).unwrap();
        for c in 0..seqs.len() {
            let m = correspondence_from_table(&table, c, &seqs[c]).unwrap();
            let rows: Vec<_> = (0..m.n_rows()).map(|i| m.row(i).to_vec()).collect();
            let v = common::correspondence_violations(&rows, &seqs);
            prop_assert!(v.is_empty(), "{:?}", v);
            prop_assert_eq!(m.center_row(), c);
        }
    }

    #[test]
    fn center_choice_ignores_positive_scaling(
        n in 2usize..9,
        vals in prop::collection::vec(0usize..60, 64),
        k in 1usize..20,
    ) {
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| vals[i * 8 + j]).collect()).collect();
        let scaled: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
        let a = select_center(&DistanceMatrix::from_lower_triangle(&rows).unwrap()).unwrap();
        let b = select_center(&DistanceMatrix::from_lower_triangle(&scaled).unwrap()).unwrap();
        prop_assert_eq!(a.center_index, b.center_index);
        let min = *a.sp_scores.iter().min().unwrap();
        prop_assert_eq!(a.sp_scores[a.center_index], min);
        prop_assert!(a.sp_scores[..a.center_index].iter().all(|&s| s > min));
    }

    #[test]
    fn kabsch_rotation_is_proper(p in prop::collection::vec(point(), 3..40), q in prop::collection::vec(point(), 40)) {
        let q = &q[..p.len()];
        if let Ok(t) = kabsch(&p, q) {
            prop_assert!(t.orthogonality_error() < 1e-9);
            prop_assert!((t.rotation.determinant() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn kabsch_recovers_rigid_motion(p in prop::collection::vec(point(), 4..40), r in rotation(), t in point()) {
        let q = moved(&p, &r, &t);
        prop_assert!(residual(&p, &q) < 1e-9);
    }

    #[test]
    fn residual_is_invariant_under_shared_rigid_motion(
        p in prop::collection::vec(point(), 3..30),
        q in prop::collection::vec(point(), 30),
        r in rotation(),
        t in point(),
    ) {
        let q = &q[..p.len()];
        let base = residual(&p, q);
        let moved_p = moved(&p, &r, &t);
        let moved_q = moved(q, &r, &t);
        prop_assert!((residual(&moved_p, &moved_q) - base).abs() < 1e-9);
    }

    #[test]
    fn refit_never_worsens_the_refined_set(seed in any::<u64>(), noise in 0.1..3.0f64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let center = common::random_cloud(&mut rng, 30, 12.0);
        let r = common::random_rotation(&mut rng);
        let other: Vec<Vec3> = center
            .iter()
            .zip(common::random_cloud(&mut rng, 30, noise))
            .map(|(p, e)| r * (p + e) + Vec3::new(5.0, -3.0, 8.0))
            .collect();
        let seeds: Vec<usize> = (0..10).collect();
        let sp: Vec<Vec3> = seeds.iter().map(|&i| center[i]).collect();
        let sq: Vec<Vec3> = seeds.iter().map(|&i| other[i]).collect();
        let old = kabsch(&sp, &sq).unwrap();
        let refined = refine_pairs(&center, &other, &old, 5.0);
        prop_assume!(refined.len() >= 3);
        let (p, q) = refined.coordinates(&center, &other);
        let Ok(new) = kabsch(&p, &q) else { return Ok(()) };
        let eval = |t: &RigidTransform| rmsd(&p, &q.iter().map(|x| t.apply(x)).collect::<Vec<_>>()).unwrap();
        prop_assert!(eval(&new) <= eval(&old) + 1e-9);
    }

    #[test]
    fn pdb_round_trip_keeps_three_decimals(seed in any::<u64>(), len in 1usize..40) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = common::random_backbone(&mut rng, "1ABC", len);
        let back = parse_pdb_bytes(write_pdb(&s).as_bytes(), s.id.clone(), "mem").unwrap();
        prop_assert_eq!(back.len(), s.len());
        for (a, b) in s.residues.iter().zip(&back.residues) {
            prop_assert!((a.ca - b.ca).amax() <= 5e-4 + 1e-9);
            prop_assert!((a.o.unwrap() - b.o.unwrap()).amax() <= 5e-4 + 1e-9);
            prop_assert_eq!(a.pdb_resseq, b.pdb_resseq);
        }
    }
}

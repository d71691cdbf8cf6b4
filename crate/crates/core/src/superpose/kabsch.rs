use nalgebra::SVD;
use serde::{Serialize, Serializer};

use crate::error::{MascotError, Result};
use crate::geometry::{centroid, Mat3, Vec3};

/// Proper rotation followed by a translation: `x ↦ R·x + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl RigidTransform {
    pub fn identity() -> Self {
        RigidTransform {
            rotation: Mat3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn translation(t: Vec3) -> Self {
        RigidTransform {
            rotation: Mat3::identity(),
            translation: t,
        }
    }

    #[inline]
    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    /// `other` first, then `self`.
    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    /// max |RᵀR − I| over entries.
    pub fn orthogonality_error(&self) -> f64 {
        (self.rotation.transpose() * self.rotation - Mat3::identity()).amax()
    }

    pub fn rotation_rows(&self) -> [[f64; 3]; 3] {
        let r = &self.rotation;
        [
            [r[(0, 0)], r[(0, 1)], r[(0, 2)]],
            [r[(1, 0)], r[(1, 1)], r[(1, 2)]],
            [r[(2, 0)], r[(2, 1)], r[(2, 2)]],
        ]
    }
}

impl Serialize for RigidTransform {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Plain {
            rotation: [[f64; 3]; 3],
            translation: [f64; 3],
        }
        Plain {
            rotation: self.rotation_rows(),
            translation: [self.translation.x, self.translation.y, self.translation.z],
        }
        .serialize(serializer)
    }
}

/// Relative size below which the second singular value marks a collinear set.
const RANK_TOLERANCE: f64 = 1e-10;

/// Least-squares proper rotation and translation carrying `mobile` onto
/// `target`: minimizes Σ‖R·mobile_k + t − target_k‖².
pub fn kabsch(target: &[Vec3], mobile: &[Vec3]) -> Result<RigidTransform> {
    if target.len() != mobile.len() {
        return Err(MascotError::NumericDegeneracy(format!(
            "point sets differ in size ({} vs {})",
            target.len(),
            mobile.len()
        )));
    }
    if target.len() < 3 {
        return Err(MascotError::NumericDegeneracy(format!(
            "superposition needs at least 3 point pairs, got {}",
            target.len()
        )));
    }
    let ct = centroid(target);
    let cm = centroid(mobile);

    // H = Σ (mobile − c_m)(target − c_t)ᵀ
    let mut h = Mat3::zeros();
    for (t, m) in target.iter().zip(mobile) {
        h += (m - cm) * (t - ct).transpose();
    }

    let svd = SVD::new(h, true, true);
    let (Some(u), Some(v_t)) = (svd.u, svd.v_t) else {
        return Err(MascotError::NumericDegeneracy("SVD did not converge".into()));
    };
    let sv = svd.singular_values;
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    let (largest, middle, smallest) = (sv[order[0]], sv[order[1]], order[2]);
    if largest <= 0.0 || middle <= RANK_TOLERANCE * largest {
        return Err(MascotError::NumericDegeneracy(
            "points are collinear or coincident; rotation is undetermined".into(),
        ));
    }

    let v = v_t.transpose();
    let mut d = Mat3::identity();
    if (v * u.transpose()).determinant() < 0.0 {
        d[(smallest, smallest)] = -1.0;
    }
    let rotation = v * d * u.transpose();
    Ok(RigidTransform {
        rotation,
        translation: ct - rotation * cm,
    })
}

/// sqrt(Σ‖p_k − q_k‖² / n).
pub fn rmsd(p: &[Vec3], q: &[Vec3]) -> Result<f64> {
    if p.len() != q.len() || p.is_empty() {
        return Err(MascotError::InvalidParameter(format!(
            "RMSD needs two non-empty point lists of equal size ({} vs {})",
            p.len(),
            q.len()
        )));
    }
    let sum: f64 = p.iter().zip(q).map(|(a, b)| (a - b).norm_squared()).sum();
    Ok((sum / p.len() as f64).sqrt())
}

/// Mean of the per-protein RMSDs against the center.
pub fn center_rmsd(per_protein: &[f64]) -> Result<f64> {
    if per_protein.is_empty() {
        return Err(MascotError::InvalidParameter(
            "centerRMSD needs at least one non-center protein".into(),
        ));
    }
    Ok(per_protein.iter().sum::<f64>() / per_protein.len() as f64)
}

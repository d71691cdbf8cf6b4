use nalgebra::{Matrix3, Vector3};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

pub fn centroid(points: &[Vec3]) -> Vec3 {
    points.iter().fold(Vec3::zeros(), |acc, p| acc + p) / points.len() as f64
}

/// Angle between two vectors in degrees; `None` if either is zero-length.
pub fn angle_deg(a: &Vec3, b: &Vec3) -> Option<f64> {
    let denom = a.norm() * b.norm();
    if denom == 0.0 {
        return None;
    }
    Some((a.dot(b) / denom).clamp(-1.0, 1.0).acos().to_degrees())
}

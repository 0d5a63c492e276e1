//! Triangulated exports of the immersed band for external viewers.
//!
//! The sample grid is rectangular in `(s, theta)` with the circle direction
//! wrapping; every grid quad is split into two triangles. Vertices carry the
//! ambient 4-vector so downstream tools can project however they like.

use crate::error::{Error, Result};
use crate::rotational::AnnulusFamily;
use crate::spaceform::SpaceFormSign;
use serde::{Deserialize, Serialize};

/// A triangle mesh over the band together with the family parameters that
/// produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeshData {
    pub eps: SpaceFormSign,
    pub a: f64,
    pub s0: f64,
    pub vertices: Vec<[f64; 4]>,
    pub faces: Vec<[u32; 3]>,
}

impl MeshData {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Structural soundness: indices in range and no degenerate triangles.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len() as u32;
        for (k, f) in self.faces.iter().enumerate() {
            if f.iter().any(|&v| v >= n) {
                return Err(Error::Geometry(format!(
                    "face {k} references vertex {} of {n}",
                    f.iter().max().unwrap()
                )));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::Geometry(format!("face {k} is degenerate: {f:?}")));
            }
        }
        Ok(())
    }
}

/// Sample the immersion on an `n_s x n_theta` grid over `[-s0, s0]` and
/// triangulate it, wrapping in the circle direction.
pub fn build_mesh(
    family: &AnnulusFamily,
    s0: f64,
    n_s: usize,
    n_theta: usize,
) -> Result<MeshData> {
    if n_s < 2 || n_theta < 3 {
        return Err(Error::ParamRange(format!(
            "mesh grid {n_s} x {n_theta} cannot carry a triangulation"
        )));
    }
    if !(s0 > 0.0) || s0 > family.span() {
        return Err(Error::domain(format!(
            "mesh half-width {s0} outside the band (0, {}]",
            family.span()
        )));
    }
    if n_s.checked_mul(n_theta).map_or(true, |n| n > u32::MAX as usize) {
        return Err(Error::ParamRange("mesh grid exceeds index range".into()));
    }

    let mut vertices = Vec::with_capacity(n_s * n_theta);
    for i in 0..n_s {
        let s = -s0 + 2.0 * s0 * (i as f64) / ((n_s - 1) as f64);
        for j in 0..n_theta {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n_theta as f64);
            let v = *family.immerse(s, theta)?.vector();
            vertices.push([v.x, v.y[0], v.y[1], v.y[2]]);
        }
    }

    let idx = |i: usize, j: usize| (i * n_theta + j) as u32;
    let mut faces = Vec::with_capacity((n_s - 1) * n_theta * 2);
    for i in 0..n_s - 1 {
        for j in 0..n_theta {
            let jn = (j + 1) % n_theta;
            faces.push([idx(i, j), idx(i + 1, j), idx(i + 1, jn)]);
            faces.push([idx(i, j), idx(i + 1, jn), idx(i, jn)]);
        }
    }

    Ok(MeshData {
        eps: family.params().eps(),
        a: family.params().a(),
        s0,
        vertices,
        faces,
    })
}

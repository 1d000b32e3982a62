//! Infinitesimal rigidity of Euclidean polyhedral surfaces with rigid faces
//! hinged along edges.
//!
//! Each face carries a Killing field `x ↦ a + ω × x`. Two faces sharing an
//! edge must agree at both endpoints, which gives six equations per edge.
//! Global Killing fields always solve the system, so the kernel has
//! dimension at least six.

use nalgebra::{DMatrix, Matrix4, Vector3, Vector4};
use rand::Rng;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::forms::{AmbientPoint, FormSpace, SpaceKind};
use crate::hull::{Edge, PolyhedralSurface};
use crate::sampling::MAX_ATTEMPTS;

pub const TRIVIAL_DIM: usize = 6;
/// Singular values below `THRESHOLD · σ_max` count as zero.
pub const THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityReport {
    pub deformation_dim: usize,
    pub trivial_dim: usize,
    pub rigid: bool,
    /// Smallest singular values, ascending, including structural zeros for
    /// underdetermined systems.
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    /// Kernel dimension at a tenth and ten times the threshold agrees.
    pub threshold_stable: bool,
    /// Largest residual of the six global Killing fields in the system.
    pub trivial_residual: f64,
}

fn cross_matrix(x: &Vector3<f64>) -> [[f64; 3]; 3] {
    [[0.0, -x.z, x.y], [x.z, 0.0, -x.x], [-x.y, x.x, 0.0]]
}

/// Deformation space of a face complex given by chart coordinates. Open
/// complexes are allowed; boundary edges add no constraints.
pub fn deformation_space_complex(
    vertices: &[Vector3<f64>],
    faces: &[Vec<usize>],
    edges: &[Edge],
) -> Result<RigidityReport> {
    if vertices.is_empty() || faces.is_empty() {
        return Err(GeomError::Degenerate("empty complex"));
    }
    let centroid = vertices.iter().sum::<Vector3<f64>>() / vertices.len() as f64;
    let rms = (vertices
        .iter()
        .map(|v| (v - centroid).norm_squared())
        .sum::<f64>()
        / vertices.len() as f64)
        .sqrt();
    if !(rms > 0.0) {
        return Err(GeomError::Degenerate("all vertices coincide"));
    }
    let pts: Vec<Vector3<f64>> = vertices.iter().map(|v| (v - centroid) / rms).collect();

    let interior: Vec<&Edge> = edges.iter().filter(|e| e.faces.len() == 2).collect();
    let ncols = 6 * faces.len();
    let nrows = 6 * interior.len();
    let mut m = DMatrix::<f64>::zeros(nrows, ncols);
    for (i, e) in interior.iter().enumerate() {
        let (f, g) = (e.faces[0], e.faces[1]);
        for (j, &x) in [e.a, e.b].iter().enumerate() {
            let r0 = 6 * i + 3 * j;
            let cx = cross_matrix(&pts[x]);
            for r in 0..3 {
                m[(r0 + r, 6 * f + r)] = 1.0;
                m[(r0 + r, 6 * g + r)] = -1.0;
                for c in 0..3 {
                    m[(r0 + r, 6 * f + 3 + c)] = -cx[r][c];
                    m[(r0 + r, 6 * g + 3 + c)] = cx[r][c];
                }
            }
        }
    }

    // trivial motions: a or ω constant across faces
    let mut trivial_residual: f64 = 0.0;
    for k in 0..6 {
        let mut v = nalgebra::DVector::<f64>::zeros(ncols);
        for f in 0..faces.len() {
            v[6 * f + k] = 1.0;
        }
        if nrows > 0 {
            trivial_residual = trivial_residual.max((&m * v).amax());
        }
    }

    let mut sv: Vec<f64> = if nrows == 0 {
        Vec::new()
    } else {
        m.singular_values().iter().copied().collect()
    };
    sv.sort_by(|a, b| b.total_cmp(a));
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let kernel_at = |tau: f64| ncols - sv.iter().filter(|&&s| s > tau * sigma_max).count();
    let deformation_dim = kernel_at(THRESHOLD);
    let threshold_stable =
        kernel_at(THRESHOLD / 10.0) == deformation_dim && kernel_at(THRESHOLD * 10.0) == deformation_dim;
    // pad with the structural zeros of an underdetermined system
    let mut tail: Vec<f64> = vec![0.0; ncols.saturating_sub(sv.len())];
    tail.extend(sv.iter().rev().copied());
    tail.truncate(TRIVIAL_DIM + 6);

    Ok(RigidityReport {
        deformation_dim,
        trivial_dim: TRIVIAL_DIM,
        rigid: deformation_dim == TRIVIAL_DIM,
        singular_values: tail,
        threshold: THRESHOLD,
        threshold_stable,
        trivial_residual,
    })
}

/// Deformation space of a closed polyhedral surface in `R³`.
pub fn deformation_space(surface: &PolyhedralSurface) -> Result<RigidityReport> {
    if surface.space.kind() != SpaceKind::Euclidean {
        return Err(GeomError::Unsupported {
            op: "deformation_space",
            space: surface.space.name(),
        });
    }
    if let Some(e) = surface.edges.iter().find(|e| e.faces.len() != 2) {
        return Err(GeomError::OpenSurface(e.a, e.b));
    }
    deformation_space_complex(&surface.chart()?, &surface.faces, &surface.edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Identity,
    Affine,
    Projective,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectiveTrial {
    pub matrix: [[f64; 4]; 4],
    pub deformation_dim: usize,
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectiveReport {
    pub kind: MapKind,
    pub base_dim: usize,
    pub trials: Vec<ProjectiveTrial>,
    pub passed: bool,
}

/// Smallest homogeneous coordinate allowed for a transformed vertex.
pub const MIN_DENOMINATOR: f64 = 0.1;
/// Entries of the perturbation added to the identity.
pub const PERTURBATION: f64 = 0.2;

fn sample_map<R: Rng>(rng: &mut R, kind: MapKind) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    if kind == MapKind::Identity {
        return m;
    }
    let rows = if kind == MapKind::Affine { 3 } else { 4 };
    for r in 0..rows {
        for c in 0..4 {
            m[(r, c)] += rng.random_range(-PERTURBATION..PERTURBATION);
        }
    }
    m
}

/// Image of chart points under a projective map, or `None` when some vertex
/// comes too close to the plane sent to infinity.
pub fn apply_projective(m: &Matrix4<f64>, pts: &[Vector3<f64>]) -> Option<Vec<Vector3<f64>>> {
    pts.iter()
        .map(|x| {
            let y = m * Vector4::new(x.x, x.y, x.z, 1.0);
            (y.w >= MIN_DENOMINATOR).then(|| Vector3::new(y.x / y.w, y.y / y.w, y.z / y.w))
        })
        .collect()
}

/// Recomputes the deformation space after `n_trials` random maps of the
/// given kind and checks the dimension never changes.
pub fn projective_invariance_check<R: Rng>(
    surface: &PolyhedralSurface,
    n_trials: usize,
    kind: MapKind,
    rng: &mut R,
) -> Result<ProjectiveReport> {
    let base = deformation_space(surface)?;
    let pts = surface.chart()?;
    let mut trials = Vec::with_capacity(n_trials);
    for _ in 0..n_trials {
        let mut attempts = 0;
        let (m, image) = loop {
            attempts += 1;
            if attempts > MAX_ATTEMPTS {
                return Err(GeomError::SamplingExhausted(MAX_ATTEMPTS));
            }
            let m = sample_map(rng, kind);
            if let Some(img) = apply_projective(&m, &pts) {
                break (m, img);
            }
        };
        let vertices: Vec<AmbientPoint> = image
            .iter()
            .map(|x| AmbientPoint::new(FormSpace::EUCLIDEAN, x.as_slice()))
            .collect::<Result<_>>()?;
        let moved = PolyhedralSurface::from_faces(FormSpace::EUCLIDEAN, vertices, surface.faces.clone())?;
        let r = deformation_space(&moved)?;
        let mut matrix = [[0.0; 4]; 4];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = m[(i, j)];
            }
        }
        trials.push(ProjectiveTrial {
            matrix,
            deformation_dim: r.deformation_dim,
            attempts,
        });
    }
    let passed = trials.iter().all(|t| t.deformation_dim == base.deformation_dim);
    Ok(ProjectiveReport {
        kind,
        base_dim: base.deformation_dim,
        trials,
        passed,
    })
}

/// Regular octahedron with vertices `±e_i`.
pub fn octahedron() -> Result<PolyhedralSurface> {
    let mut pts = Vec::new();
    for i in 0..3 {
        for s in [1.0, -1.0] {
            let mut c = [0.0; 3];
            c[i] = s;
            pts.push(AmbientPoint::new(FormSpace::EUCLIDEAN, &c)?);
        }
    }
    crate::hull::convex_hull(&pts)
}

/// Regular tetrahedron in `R³`.
pub fn tetrahedron() -> Result<PolyhedralSurface> {
    let pts: Vec<AmbientPoint> = crate::dual::regular_tetrahedron(1.0)
        .iter()
        .map(|x| AmbientPoint::new(FormSpace::EUCLIDEAN, x.as_slice()))
        .collect::<Result<_>>()?;
    crate::hull::convex_hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::build_edges;
    use crate::sampling::{random_convex_polytope, rng};

    #[test]
    fn platonic_solids_are_rigid() {
        for s in [tetrahedron().unwrap(), octahedron().unwrap()] {
            let r = deformation_space(&s).unwrap();
            assert_eq!(r.deformation_dim, 6);
            assert!(r.rigid && r.threshold_stable);
            assert!(r.trivial_residual < 1e-10);
        }
    }

    #[test]
    fn single_triangle() {
        let pts = [Vector3::new(0., 0., 0.), Vector3::new(1., 0., 0.), Vector3::new(0., 1., 0.)];
        let faces = vec![vec![0, 1, 2]];
        let r = deformation_space_complex(&pts, &faces, &build_edges(&faces)).unwrap();
        assert_eq!(r.deformation_dim, 6);
    }

    #[test]
    fn open_surfaces_are_rejected() {
        let t = tetrahedron().unwrap();
        let open = t.restrict(&[0, 1, 2]);
        assert!(matches!(deformation_space(&open), Err(GeomError::OpenSurface(_, _))));
    }

    #[test]
    fn motions_and_scaling_keep_dimension() {
        let mut r = rng(3);
        let p = random_convex_polytope(&mut r, 10).unwrap();
        let base = deformation_space(&p).unwrap().deformation_dim;
        let pts = p.chart().unwrap();
        let rot = nalgebra::Rotation3::from_euler_angles(0.3, -1.1, 2.0);
        for scale in [1e-3, 1.0, 1e3] {
            let moved: Vec<Vector3<f64>> =
                pts.iter().map(|x| rot * x * scale + Vector3::new(5.0, -2.0, 1.0)).collect();
            let r = deformation_space_complex(&moved, &p.faces, &p.edges).unwrap();
            assert_eq!(r.deformation_dim, base);
        }
    }

    #[test]
    fn identity_map_keeps_dimension() {
        let t = tetrahedron().unwrap();
        let r = projective_invariance_check(&t, 1, MapKind::Identity, &mut rng(0)).unwrap();
        assert!(r.passed);
        assert_eq!(r.trials[0].deformation_dim, 6);
    }

    #[test]
    fn affine_maps_on_tetrahedron() {
        let t = tetrahedron().unwrap();
        let r = projective_invariance_check(&t, 20, MapKind::Affine, &mut rng(11)).unwrap();
        assert!(r.passed);
        assert!(r.trials.iter().all(|t| t.matrix[3] == [0.0, 0.0, 0.0, 1.0]));
    }
}

//! Polar duality with respect to the unit sphere between Klein-model
//! polytopes and de Sitter polyhedral spheres, and generalized hyperbolic
//! polyhedra.

use std::f64::consts::PI;

use nalgebra::{DVector, Vector3};
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::forms::{plane_pole, AmbientPoint, FormSpace, EPS_GEOM};
use crate::hull::{convex_hull, plane_of, PolyhedralSurface};
use crate::metric::{closed_metric, ConeMetricReport};

/// Polar dual of a closed convex polytope whose affine chart contains the
/// origin in its interior.
///
/// Vertex `i` of the result is the pole of face `i`; face `j` of the result
/// collects the poles around vertex `j`, so incidences transpose exactly.
pub fn polar_dual(p: &PolyhedralSurface) -> Result<PolyhedralSurface> {
    if p.space.dim() != 4 {
        return Err(GeomError::Unsupported {
            op: "polar_dual",
            space: p.space.name(),
        });
    }
    if let Some(e) = p.edges.iter().find(|e| e.faces.len() != 2) {
        return Err(GeomError::OpenSurface(e.a, e.b));
    }
    let mut poles = Vec::with_capacity(p.faces.len());
    for f in 0..p.faces.len() {
        let (n, d) = p.face_plane(f)?;
        if d.abs() <= EPS_GEOM {
            return Err(GeomError::PoleAtInfinity);
        }
        if d < 0.0 {
            return Err(GeomError::OriginNotInterior);
        }
        poles.push(plane_pole(&n, d)?);
    }
    let space = poles[0].space();
    if poles.iter().any(|q| q.space() != space) {
        return Err(GeomError::Config(
            "face planes both cut and miss the unit ball".into(),
        ));
    }
    let chart: Vec<Vector3<f64>> = poles.iter().map(|q| q.affine_chart()).collect::<Result<_>>()?;
    let mut faces = Vec::with_capacity(p.vertices.len());
    for v in 0..p.vertices.len() {
        let link = p.link(v);
        if !link.closed {
            return Err(GeomError::Config(format!("vertex {v} has an open link")));
        }
        let mut cyc = link.faces;
        let pts: Vec<Vector3<f64>> = cyc.iter().map(|&f| chart[f]).collect();
        let (n, d) = plane_of(&pts)?;
        if d < 0.0 || (d == 0.0 && n.dot(&pts[0]) < 0.0) {
            cyc.reverse();
        }
        faces.push(cyc);
    }
    PolyhedralSurface::from_faces(space, poles, faces)
}

/// Induced metric of a de Sitter polyhedral sphere.
pub fn dual_metric(pstar: &PolyhedralSurface) -> Result<ConeMetricReport> {
    if pstar.space != FormSpace::DE_SITTER {
        return Err(GeomError::Unsupported {
            op: "dual_metric",
            space: pstar.space.name(),
        });
    }
    closed_metric(pstar)
}

/// Interior dihedral angle of every edge of a Klein-model polytope, measured
/// between tangent vectors at an edge endpoint on the hyperboloid.
pub fn hyperbolic_dihedral_angles(p: &PolyhedralSurface) -> Result<Vec<f64>> {
    let space = p.space;
    let q = |x: &DVector<f64>, y: &DVector<f64>| space.form(x.as_slice(), y.as_slice());
    p.edges
        .iter()
        .map(|e| {
            if e.faces.len() != 2 {
                return Err(GeomError::OpenSurface(e.a, e.b));
            }
            let u = p.vertices[e.a].coords();
            // tangent space projection at u, where <u,u> = -1
            let tangent = |x: &DVector<f64>| x + u * q(x, u);
            let t = tangent(p.vertices[e.b].coords());
            let t = &t / q(&t, &t).sqrt();
            let mut perp = Vec::with_capacity(2);
            for &f in &e.faces {
                let w = p.faces[f]
                    .iter()
                    .copied()
                    .find(|&x| x != e.a && x != e.b)
                    .ok_or(GeomError::Degenerate("face is a digon"))?;
                let s = tangent(p.vertices[w].coords());
                let s = &s - &t * q(&s, &t);
                perp.push(&s / q(&s, &s).sqrt());
            }
            let minus = q(&(&perp[0] - &perp[1]), &(&perp[0] - &perp[1]));
            let plus = q(&(&perp[0] + &perp[1]), &(&perp[0] + &perp[1]));
            Ok(2.0 * minus.max(0.0).sqrt().atan2(plus.max(0.0).sqrt()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexClass {
    Finite,
    Ideal,
    Hyperideal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedVertexClass {
    pub vertex: usize,
    pub class: VertexClass,
    /// Euclidean norm of the chart point.
    pub norm: f64,
    /// Distance of the chart point to the unit sphere.
    pub witness: f64,
}

/// Whether the closed segment `[a, b]` meets the open unit ball.
pub fn segment_meets_open_ball(a: &Vector3<f64>, b: &Vector3<f64>) -> bool {
    let d = b - a;
    let dd = d.norm_squared();
    let t = if dd == 0.0 {
        0.0
    } else {
        (-a.dot(&d) / dd).clamp(0.0, 1.0)
    };
    (a + d * t).norm_squared() < 1.0 - EPS_GEOM
}

/// Classifies the vertices of a projective polytope given in the affine
/// chart, after checking that every edge meets the open unit ball.
pub fn truncate_and_classify(vertices: &[Vector3<f64>]) -> Result<Vec<GeneralizedVertexClass>> {
    let pts: Vec<AmbientPoint> = vertices
        .iter()
        .map(|v| AmbientPoint::new(FormSpace::EUCLIDEAN, v.as_slice()))
        .collect::<Result<_>>()?;
    let hull = convex_hull(&pts)?;
    if hull.vertices.len() != vertices.len() {
        return Err(GeomError::Config("some input points are not vertices of their hull".into()));
    }
    let chart = hull.chart()?;
    for e in &hull.edges {
        if !segment_meets_open_ball(&chart[e.a], &chart[e.b]) {
            return Err(GeomError::EdgeMissesBall(e.a, e.b));
        }
    }
    Ok(chart
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let norm = x.norm();
            let class = if norm < 1.0 - EPS_GEOM {
                VertexClass::Finite
            } else if norm <= 1.0 + EPS_GEOM {
                VertexClass::Ideal
            } else {
                VertexClass::Hyperideal
            };
            GeneralizedVertexClass {
                vertex: i,
                class,
                norm,
                witness: (norm - 1.0).abs(),
            }
        })
        .collect())
}

/// Regular tetrahedron inscribed in the sphere of radius `r`.
pub fn regular_tetrahedron(r: f64) -> Vec<Vector3<f64>> {
    let s = r / 3f64.sqrt();
    [[1., 1., 1.], [1., -1., -1.], [-1., 1., -1.], [-1., -1., 1.]]
        .iter()
        .map(|c| Vector3::new(c[0] * s, c[1] * s, c[2] * s))
        .collect()
}

/// Cube `(±s, ±s, ±s)`.
pub fn cube(s: f64) -> Vec<Vector3<f64>> {
    (0..8)
        .map(|i| {
            let c = |b: usize| if i >> b & 1 == 1 { s } else { -s };
            Vector3::new(c(0), c(1), c(2))
        })
        .collect()
}

/// Klein polytope in `H³` spanned by chart points inside the unit ball.
pub fn klein_polytope(points: &[Vector3<f64>]) -> Result<PolyhedralSurface> {
    let lifted: Vec<AmbientPoint> = points
        .iter()
        .map(|x| crate::forms::klein_lift(x.as_slice()))
        .collect::<Result<_>>()?;
    convex_hull(&lifted)
}

/// Dual edge lengths paired with `π` minus the dihedral angles of the
/// primal edges, as `(dual length, π - θ)`.
pub fn dual_edge_check(p: &PolyhedralSurface, pstar: &PolyhedralSurface) -> Result<Vec<(f64, f64)>> {
    let dihedral = hyperbolic_dihedral_angles(p)?;
    p.edges
        .iter()
        .zip(dihedral)
        .map(|(e, theta)| {
            let a = &pstar.vertices[e.faces[0]];
            let b = &pstar.vertices[e.faces[1]];
            Ok((crate::forms::geodesic_distance(a, b)?, PI - theta))
        })
        .collect()
}
